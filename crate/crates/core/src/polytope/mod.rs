//! Polytope membership by LP and convex decompositions into a nonlocal
//! vertex, a Mermin box and a residual with both discords zero.

pub mod simplex;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boxcore::{vertex, BipartiteBox, BoxError, Lro, VertexId};
use crate::discord2::{bell_discord, chsh_value, mermin_discord, mermin_value};
use crate::tribox::{tri_vertex, TriVertexId, TripartiteBox};
use crate::{EPS, LP_EPS};
pub use simplex::LpError;
use simplex::{solve, LpOutcome};

/// Residual discords below this count as zero.
pub const RESIDUAL_DISCORD_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexSet {
    /// 8 PR boxes and 16 deterministic boxes.
    Ns24,
    Det16,
    /// Tripartite: the 64 deterministic boxes (fully local).
    Det64,
    /// Tripartite: 64 deterministic boxes and 48 bipartite PR embeddings.
    TwoWayLocal112,
    /// Tripartite: the 112 above plus the 16 Svetlichny boxes.
    Svetlichny128,
}

impl VertexSet {
    pub fn parties(&self) -> usize {
        match self {
            VertexSet::Ns24 | VertexSet::Det16 => 2,
            _ => 3,
        }
    }

    pub fn labels(&self) -> Vec<VertexLabel> {
        match self {
            VertexSet::Ns24 => VertexId::ns_vertices().into_iter().map(VertexLabel::Bi).collect(),
            VertexSet::Det16 => VertexId::all_det().map(VertexLabel::Bi).collect(),
            VertexSet::Det64 => TriVertexId::all_det3().map(VertexLabel::Tri).collect(),
            VertexSet::TwoWayLocal112 => TriVertexId::two_way_local().into_iter().map(VertexLabel::Tri).collect(),
            VertexSet::Svetlichny128 => TriVertexId::svetlichny_polytope().into_iter().map(VertexLabel::Tri).collect(),
        }
    }

    pub fn tables(&self) -> Vec<Vec<f64>> {
        self.labels()
            .into_iter()
            .map(|l| match l {
                VertexLabel::Bi(id) => vertex(id).flat().to_vec(),
                VertexLabel::Tri(id) => tri_vertex(id).flat().to_vec(),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Bi(VertexId),
    Tri(TriVertexId),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Bi(v) => v.fmt(f),
            VertexLabel::Tri(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub label: String,
    /// How far the box exceeds the facet bound.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub inside: bool,
    /// Nonzero weights when inside.
    pub weights: Vec<(VertexLabel, f64)>,
    pub violated_facet: Option<Facet>,
    pub reconstruction_error: f64,
}

/// Feasibility LP: is `p` (a flat 16- or 64-entry table) in the hull of `set`?
pub fn lp_vertex_decomposition(p: &[f64], set: VertexSet) -> Result<MembershipResult, LpError> {
    let n_entries = if set.parties() == 2 { 16 } else { 64 };
    if p.len() != n_entries {
        return Err(LpError::NumericalFailure(format!("expected {n_entries} entries, got {}", p.len())));
    }
    let labels = set.labels();
    let tables = set.tables();
    let a: Vec<Vec<f64>> = (0..n_entries).map(|r| tables.iter().map(|t| t[r]).collect()).collect();
    match solve(&a, p, None, LP_EPS * 1e-2)? {
        LpOutcome::Infeasible { .. } => {
            Ok(MembershipResult { inside: false, weights: vec![], violated_facet: None, reconstruction_error: f64::NAN })
        }
        LpOutcome::Optimal { x, .. } => {
            let mut err: f64 = 0.0;
            for (r, row) in a.iter().enumerate() {
                let v: f64 = row.iter().zip(&x).map(|(u, w)| u * w).sum();
                err = err.max((v - p[r]).abs());
            }
            if err > LP_EPS {
                return Err(LpError::NumericalFailure(format!("reconstruction error {err:e}")));
            }
            let weights = labels.into_iter().zip(x).filter(|(_, w)| *w > 1e-12).collect();
            Ok(MembershipResult { inside: true, weights, violated_facet: None, reconstruction_error: err })
        }
    }
}

/// Label and value of the largest signed CHSH operator, ties broken lexicographically on (α,β,γ).
pub fn max_chsh(p: &BipartiteBox) -> ((u8, u8, u8), f64) {
    let mut best = ((0, 0, 0), f64::NEG_INFINITY);
    for k in 0..8u8 {
        let l = (k >> 2 & 1, k >> 1 & 1, k & 1);
        let v = chsh_value(p, l.0, l.1, l.2);
        if v > best.1 + 1e-12 {
            best = (l, v);
        }
    }
    best
}

/// Locality test over the 16 deterministic boxes. Outside the polytope the
/// most violated CHSH facet is reported.
pub fn is_local(p: &BipartiteBox) -> Result<MembershipResult, LpError> {
    let mut r = lp_vertex_decomposition(p.flat(), VertexSet::Det16)?;
    if !r.inside {
        let ((a, b, c), v) = max_chsh(p);
        r.violated_facet = Some(Facet { label: format!("CHSH{a}{b}{c}"), margin: v - 2.0 });
    }
    Ok(r)
}

/// Local test by the eight CHSH inequalities.
pub fn is_local_chsh(p: &BipartiteBox) -> bool {
    max_chsh(p).1 <= 2.0 + EPS
}

/// Check the NS H-representation (positivity, normalization, no-signaling) on a raw table.
pub fn ns_membership(p: &[f64; 16]) -> bool {
    BipartiteBox::new(*p).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Components from the signed-argmax labels.
    Direct,
    /// Components found by relabeling with the given LRO index.
    Frame(usize),
    /// Nonlocal weight reduced until the residual became a valid box.
    Bisection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult<Id, B> {
    pub mu: f64,
    pub nu: f64,
    pub nonlocal_id: Id,
    pub mermin_id: Option<Id>,
    /// `None` when `mu + nu = 1`.
    pub residual: Option<B>,
    pub method: Method,
    pub reconstruction_error: f64,
}

pub type Decomposition2 = DecompositionResult<VertexId, BipartiteBox>;
pub type Decomposition3 = DecompositionResult<TriVertexId, TripartiteBox>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error("no valid residual for mu={mu}, nu={nu}: most negative entry {min_entry:e}, residual discords ({residual_g:e}, {residual_q:e})")]
    ResidualInvalid { mu: f64, nu: f64, min_entry: f64, residual_g: f64, residual_q: f64 },
    #[error("box is outside the Svetlichny-box polytope")]
    NotInPolytope,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Box(#[from] BoxError),
}

/// A candidate set of components for [`search`].
pub(crate) struct Candidate<'a, Id> {
    pub nonlocal: (Id, &'a [f64]),
    pub mermin: Option<(Id, &'a [f64])>,
    pub method: Method,
}

pub(crate) enum Outcome<Id, B> {
    Found(DecompositionResult<Id, B>),
    /// Most negative entry and residual discords of the first candidate.
    Failed(f64, f64, f64),
}

/// Try candidates in order; accept the first whose residual is a valid box with zero discords.
pub(crate) fn search<'a, Id: Copy + 'a, B>(
    p: &[f64],
    mu: f64,
    nu: f64,
    candidates: impl IntoIterator<Item = Candidate<'a, Id>>,
    build: impl Fn(&[f64]) -> Option<B>,
    discords: impl Fn(&B) -> (f64, f64),
) -> Outcome<Id, B> {
    let w = 1.0 - mu - nu;
    let mut first_failure: Option<(f64, f64, f64)> = None;
    for c in candidates {
        let mut r: Vec<f64> = p.to_vec();
        for (i, v) in r.iter_mut().enumerate() {
            *v -= mu * c.nonlocal.1[i];
            if let Some((_, m)) = c.mermin {
                *v -= nu * m[i];
            }
        }
        let min_entry = r.iter().cloned().fold(f64::INFINITY, f64::min);
        let recon_err = |res: &[f64]| -> f64 {
            (0..p.len())
                .map(|i| {
                    let mut v = mu * c.nonlocal.1[i] + w * res[i];
                    if let Some((_, m)) = c.mermin {
                        v += nu * m[i];
                    }
                    (v - p[i]).abs()
                })
                .fold(0.0, f64::max)
        };
        if w <= EPS {
            let err = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
            if err <= LP_EPS {
                return Outcome::Found(DecompositionResult {
                    mu,
                    nu,
                    nonlocal_id: c.nonlocal.0,
                    mermin_id: c.mermin.map(|m| m.0),
                    residual: None,
                    method: c.method,
                    reconstruction_error: err,
                });
            }
            first_failure.get_or_insert((min_entry, f64::NAN, f64::NAN));
            continue;
        }
        if min_entry < -EPS {
            first_failure.get_or_insert((min_entry, f64::NAN, f64::NAN));
            continue;
        }
        let res: Vec<f64> = r.iter().map(|v| v.max(0.0) / w).collect();
        let Some(bx) = build(&res) else {
            first_failure.get_or_insert((min_entry, f64::NAN, f64::NAN));
            continue;
        };
        let (g, q) = discords(&bx);
        if g <= RESIDUAL_DISCORD_TOL && q <= RESIDUAL_DISCORD_TOL {
            return Outcome::Found(DecompositionResult {
                mu,
                nu,
                nonlocal_id: c.nonlocal.0,
                mermin_id: c.mermin.map(|m| m.0),
                reconstruction_error: recon_err(&res),
                residual: Some(bx),
                method: c.method,
            });
        }
        first_failure.get_or_insert((min_entry, g, q));
    }
    let (m, g, q) = first_failure.unwrap_or((f64::NAN, f64::NAN, f64::NAN));
    Outcome::Failed(m, g, q)
}

fn pr_from_label((a, b, c): (u8, u8, u8)) -> VertexId {
    VertexId::Pr(a, b, c)
}

/// Split `P = μ·PR + (1−μ)·L` with `μ = 𝒢/4` and `𝒢(L) = 0`.
///
/// The PR box is the one with the largest signed CHSH value. If that frame
/// gives an invalid residual the other seven PR boxes are tried, then `μ` is
/// reduced by bisection until the residual is a box.
pub fn canonical_2decomposition(p: &BipartiteBox) -> Result<Decomposition2, DecompError> {
    let mu = (bell_discord(p) / 4.0).clamp(0.0, 1.0);
    let (best, _) = max_chsh(p);
    let tables: Vec<(VertexId, BipartiteBox)> = VertexId::all_pr().map(|id| (id, vertex(id))).collect();
    let best_id = pr_from_label(best);
    let mut order: Vec<&(VertexId, BipartiteBox)> = tables.iter().filter(|(id, _)| *id == best_id).collect();
    order.extend(tables.iter().filter(|(id, _)| *id != best_id));

    let build = |r: &[f64]| BipartiteBox::new(r.try_into().ok()?).ok();
    let disc = |b: &BipartiteBox| (bell_discord(b), 0.0);
    let cands = order.iter().map(|(id, bx)| Candidate {
        nonlocal: (*id, &bx.flat()[..]),
        mermin: None,
        method: if *id == best_id { Method::Direct } else { Method::Frame(frame_of_pr(*id)) },
    });
    match search(p.flat(), mu, 0.0, cands, build, disc) {
        Outcome::Found(d) => Ok(d),
        Outcome::Failed(min_entry, rg, _) => {
            let pr = vertex(best_id);
            let (mut lo, mut hi) = (0.0, mu);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let ok = (0..16).all(|i| p.flat()[i] - mid * pr.flat()[i] >= -EPS);
                if ok {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let cand = [Candidate { nonlocal: (best_id, &pr.flat()[..]), mermin: None, method: Method::Bisection }];
            match search(p.flat(), lo, 0.0, cand, build, disc) {
                Outcome::Found(d) => Ok(d),
                Outcome::Failed(..) => {
                    Err(DecompError::ResidualInvalid { mu, nu: 0.0, min_entry, residual_g: rg, residual_q: 0.0 })
                }
            }
        }
    }
}

/// Index of an LRO taking `PR000` to the given PR box.
fn frame_of_pr(id: VertexId) -> usize {
    let target = vertex(id);
    let base = vertex(VertexId::Pr(0, 0, 0));
    Lro::all().find(|g| base.apply_lro(g).max_abs_diff(&target) < 1e-12).map_or(0, |g| g.index())
}

/// Identify a catalog vertex among `ids` by its table.
pub(crate) fn identify(bx: &BipartiteBox, ids: impl Iterator<Item = VertexId>) -> Option<VertexId> {
    ids.into_iter().find(|id| vertex(*id).max_abs_diff(bx) < 1e-12)
}

/// The two Mermin boxes that are even mixtures of `PR(αβγ)` and a `PR(ᾱβ̄·)`.
pub fn canonical_mermin_partners(pr: VertexId) -> [VertexId; 2] {
    let VertexId::Pr(a, b, c) = pr else { panic!("not a PR box: {pr}") };
    // MerminMM(a,b,c) = ½(PR(abc) + PR(āb̄, c⊕b)); the other partner is MerminMM(ā,b̄,c⊕b⊕1).
    [VertexId::MerminMM(a, b, c), VertexId::MerminMM(a ^ 1, b ^ 1, c ^ b ^ 1)]
}

/// Split `P = μ·PR + ν·M + (1−μ−ν)·L` with `μ = 𝒢/4`, `ν = 𝒬/2` and `𝒢(L) = 𝒬(L) = 0`.
///
/// `M` is a Mermin box built from the chosen PR box and its partner; of the two
/// candidates the one with the larger signed Mermin value on `P` is tried
/// first. When the residual is invalid the (PR, Mermin) pair is moved through
/// the whole LRO group.
pub fn three_decomposition(p: &BipartiteBox) -> Result<Decomposition2, DecompError> {
    let mu = (bell_discord(p) / 4.0).clamp(0.0, 1.0);
    let nu = (mermin_discord(p) / 2.0).clamp(0.0, 1.0 - mu);
    let (best, _) = max_chsh(p);
    let best_id = pr_from_label(best);
    let mut partners = canonical_mermin_partners(best_id);
    let sval = |id: VertexId| {
        let VertexId::MerminMM(a, b, c) = id else { unreachable!() };
        mermin_value(p, a, b, c)
    };
    if sval(partners[1]) > sval(partners[0]) + 1e-12 {
        partners.swap(0, 1);
    }

    let mut pairs: Vec<(VertexId, VertexId, Method)> =
        partners.iter().map(|m| (best_id, *m, Method::Direct)).collect();
    let base_pr = vertex(VertexId::Pr(0, 0, 0));
    let base_m = vertex(VertexId::MerminMM(0, 0, 0));
    for g in Lro::all() {
        let pr = identify(&base_pr.apply_lro(&g), VertexId::all_pr());
        let m = identify(&base_m.apply_lro(&g), VertexId::all_mermin_mm());
        if let (Some(pr), Some(m)) = (pr, m) {
            if !pairs.iter().any(|(a, b, _)| *a == pr && *b == m) {
                pairs.push((pr, m, Method::Frame(g.index())));
            }
        }
    }
    let tables: Vec<(BipartiteBox, BipartiteBox)> = pairs.iter().map(|(a, b, _)| (vertex(*a), vertex(*b))).collect();
    let cands = pairs.iter().zip(&tables).map(|((a, b, m), (ta, tb))| Candidate {
        nonlocal: (*a, &ta.flat()[..]),
        mermin: Some((*b, &tb.flat()[..])),
        method: *m,
    });
    let build = |r: &[f64]| BipartiteBox::new(r.try_into().ok()?).ok();
    let disc = |b: &BipartiteBox| (bell_discord(b), mermin_discord(b));
    match search(p.flat(), mu, nu, cands, build, disc) {
        Outcome::Found(d) => Ok(d),
        Outcome::Failed(min_entry, residual_g, residual_q) => {
            Err(DecompError::ResidualInvalid { mu, nu, min_entry, residual_g, residual_q })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxcore::mix;

    #[test]
    fn mermin_partners_are_halves() {
        for pr in VertexId::all_pr() {
            for m in canonical_mermin_partners(pr) {
                let VertexId::Pr(a, b, _) = pr else { unreachable!() };
                let other = (0..2).map(|c| VertexId::Pr(a ^ 1, b ^ 1, c)).find(|o| {
                    mix(&[vertex(pr), vertex(*o)], &[0.5, 0.5]).unwrap().max_abs_diff(&vertex(m)) < 1e-15
                });
                assert!(other.is_some(), "{pr} {m}");
            }
        }
    }

    #[test]
    fn frame_search_reaches_all_flags() {
        let base_pr = vertex(VertexId::Pr(0, 0, 0));
        let base_m = vertex(VertexId::MerminMM(0, 0, 0));
        let mut pairs = std::collections::HashSet::new();
        for g in Lro::all() {
            let pr = identify(&base_pr.apply_lro(&g), VertexId::all_pr()).unwrap();
            let m = identify(&base_m.apply_lro(&g), VertexId::all_mermin_mm()).unwrap();
            pairs.insert((pr, m));
        }
        assert_eq!(pairs.len(), 16);
    }

    #[test]
    fn isotropic_pr_outside_local() {
        let p = mix(&[vertex(VertexId::Pr(0, 0, 0)), vertex(VertexId::Noise)], &[0.6, 0.4]).unwrap();
        let r = is_local(&p).unwrap();
        assert!(!r.inside);
        let f = r.violated_facet.unwrap();
        assert_eq!(f.label, "CHSH000");
        assert!((f.margin - 0.4).abs() < 1e-12);
    }
}

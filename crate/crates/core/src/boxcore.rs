//! Bipartite boxes `P(a,b|x,y)` with two binary inputs and outputs per party.
//!
//! Storage is a flat array indexed `[x][y][a][b]` row-major, so row `(x,y)`
//! and column `(a,b)` of the usual 4x4 matrix notation map to
//! `p[4*(2x+y) + (2a+b)]`. Output bit 0 corresponds to the value +1.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::EPS;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoxError {
    #[error("row (x={x}, y={y}) sums to {sum}, expected 1")]
    NotNormalized { x: u8, y: u8, sum: f64 },
    #[error("entry {index:?} is negative ({value})")]
    Negative { index: Vec<u8>, value: f64 },
    #[error("signaling: marginal of party {party} for input {input}, output {output} changes by {delta} with the other inputs")]
    Signaling { party: char, input: u8, output: u8, delta: f64 },
    #[error("bad mixture weights: {0}")]
    BadWeights(String),
    #[error("malformed table: {0}")]
    Shape(String),
}

#[inline]
pub(crate) fn idx(x: usize, y: usize, a: usize, b: usize) -> usize {
    (x << 3) | (y << 2) | (a << 1) | b
}

#[inline]
pub(crate) fn sign(bit: usize) -> f64 {
    if bit & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A validated bipartite nonsignaling box.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::BoxJson", into = "crate::io::BoxJson")]
pub struct BipartiteBox {
    p: [f64; 16],
}

impl fmt::Debug for BipartiteBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BipartiteBox [")?;
        for row in 0..4 {
            let r = &self.p[4 * row..4 * row + 4];
            writeln!(f, "  xy={}{}: {:.6} {:.6} {:.6} {:.6}", row >> 1, row & 1, r[0], r[1], r[2], r[3])?;
        }
        write!(f, "]")
    }
}

/// Single-party expectations and correlators of a bipartite box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlators {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub ab: [[f64; 2]; 2],
}

impl BipartiteBox {
    /// Validate normalization, nonnegativity and nonsignaling, clamping
    /// entries in `(-EPS, 0)` to zero.
    pub fn new(mut p: [f64; 16]) -> Result<Self, BoxError> {
        for (i, v) in p.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(BoxError::Shape(format!("entry {i} is not finite")));
            }
            if *v < -EPS {
                return Err(BoxError::Negative {
                    index: vec![(i >> 3) as u8 & 1, (i >> 2) as u8 & 1, (i >> 1) as u8 & 1, i as u8 & 1],
                    value: *v,
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        for x in 0..2 {
            for y in 0..2 {
                let sum: f64 = (0..4).map(|k| p[4 * (2 * x + y) + k]).sum();
                if (sum - 1.0).abs() > EPS {
                    return Err(BoxError::NotNormalized { x: x as u8, y: y as u8, sum });
                }
            }
        }
        let bx = BipartiteBox { p };
        for i in 0..2 {
            for o in 0..2 {
                let d = bx.raw_marginal_a(i, 0, o) - bx.raw_marginal_a(i, 1, o);
                if d.abs() > EPS {
                    return Err(BoxError::Signaling { party: 'A', input: i as u8, output: o as u8, delta: d });
                }
                let d = bx.raw_marginal_b(0, i, o) - bx.raw_marginal_b(1, i, o);
                if d.abs() > EPS {
                    return Err(BoxError::Signaling { party: 'B', input: i as u8, output: o as u8, delta: d });
                }
            }
        }
        Ok(bx)
    }

    /// Build from a nested `[x][y][a][b]` table.
    pub fn from_table(t: [[[[f64; 2]; 2]; 2]; 2]) -> Result<Self, BoxError> {
        let mut p = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        p[idx(x, y, a, b)] = t[x][y][a][b];
                    }
                }
            }
        }
        Self::new(p)
    }

    /// Inverse of [`BipartiteBox::correlators`]:
    /// `P = ¼[1 + (-1)^a⟨A_x⟩ + (-1)^b⟨B_y⟩ + (-1)^(a⊕b)⟨A_xB_y⟩]`.
    pub fn from_correlators(c: &Correlators) -> Result<Self, BoxError> {
        let mut p = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        p[idx(x, y, a, b)] = 0.25
                            * (1.0 + sign(a) * c.a[x] + sign(b) * c.b[y] + sign(a ^ b) * c.ab[x][y]);
                    }
                }
            }
        }
        Self::new(p)
    }

    pub fn noise() -> Self {
        BipartiteBox { p: [0.25; 16] }
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.p[idx(x, y, a, b)]
    }

    pub fn flat(&self) -> &[f64; 16] {
        &self.p
    }

    pub fn table(&self) -> [[[[f64; 2]; 2]; 2]; 2] {
        let mut t = [[[[0.0; 2]; 2]; 2]; 2];
        for (i, v) in self.p.iter().enumerate() {
            t[i >> 3][(i >> 2) & 1][(i >> 1) & 1][i & 1] = *v;
        }
        t
    }

    fn raw_marginal_a(&self, x: usize, y: usize, a: usize) -> f64 {
        self.p[idx(x, y, a, 0)] + self.p[idx(x, y, a, 1)]
    }

    fn raw_marginal_b(&self, x: usize, y: usize, b: usize) -> f64 {
        self.p[idx(x, y, 0, b)] + self.p[idx(x, y, 1, b)]
    }

    /// `⟨A_xB_y⟩ = Σ (-1)^(a⊕b) P(a,b|x,y)`.
    pub fn joint_expectation(&self, x: usize, y: usize) -> f64 {
        (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| sign(a ^ b) * self.get(x, y, a, b))
            .sum()
    }

    /// `⟨A_x⟩` or `⟨B_y⟩`, averaged over the other party's input.
    pub fn marginal_expectation(&self, party: Party, input: usize) -> f64 {
        let mut s = 0.0;
        for other in 0..2 {
            s += match party {
                Party::A => self.raw_marginal_a(input, other, 0) - self.raw_marginal_a(input, other, 1),
                Party::B => self.raw_marginal_b(other, input, 0) - self.raw_marginal_b(other, input, 1),
            };
        }
        s / 2.0
    }

    pub fn correlators(&self) -> Correlators {
        let mut c = Correlators { a: [0.0; 2], b: [0.0; 2], ab: [[0.0; 2]; 2] };
        for i in 0..2 {
            c.a[i] = self.marginal_expectation(Party::A, i);
            c.b[i] = self.marginal_expectation(Party::B, i);
            for j in 0..2 {
                c.ab[i][j] = self.joint_expectation(i, j);
            }
        }
        c
    }

    pub fn apply_lro(&self, g: &Lro) -> BipartiteBox {
        let mut q = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        let (x1, a1) = g.a.pull(x, a);
                        let (y1, b1) = g.b.pull(y, b);
                        q[idx(x, y, a, b)] = self.get(x1, y1, a1, b1);
                    }
                }
            }
        }
        let mut out = BipartiteBox { p: q };
        if g.swap {
            out = out.swapped();
        }
        out
    }

    /// Exchange the roles of Alice and Bob.
    pub fn swapped(&self) -> BipartiteBox {
        let mut q = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        q[idx(x, y, a, b)] = self.get(y, x, b, a);
                    }
                }
            }
        }
        BipartiteBox { p: q }
    }

    /// Largest entrywise difference to another box.
    pub fn max_abs_diff(&self, other: &BipartiteBox) -> f64 {
        self.p.iter().zip(other.p.iter()).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
}

/// Convex combination of boxes.
pub fn mix(boxes: &[BipartiteBox], weights: &[f64]) -> Result<BipartiteBox, BoxError> {
    check_weights(boxes.len(), weights)?;
    let mut p = [0.0; 16];
    for (bx, w) in boxes.iter().zip(weights) {
        for (acc, v) in p.iter_mut().zip(bx.p.iter()) {
            *acc += w * v;
        }
    }
    BipartiteBox::new(p)
}

pub(crate) fn check_weights(n: usize, weights: &[f64]) -> Result<(), BoxError> {
    if n == 0 || n != weights.len() {
        return Err(BoxError::BadWeights(format!("{} boxes but {} weights", n, weights.len())));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= -EPS)) {
        return Err(BoxError::BadWeights(format!("negative weight {w}")));
    }
    let s: f64 = weights.iter().sum();
    if (s - 1.0).abs() > EPS {
        return Err(BoxError::BadWeights(format!("weights sum to {s}")));
    }
    Ok(())
}

/// Relabeling for one party: input `x -> x ⊕ flip`, output `a -> a ⊕ slope·x ⊕ offset`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartyOp {
    pub input_flip: bool,
    pub out_by_input: bool,
    pub out_const: bool,
}

impl PartyOp {
    pub fn from_index(i: usize) -> Self {
        PartyOp { input_flip: i & 4 != 0, out_by_input: i & 2 != 0, out_const: i & 1 != 0 }
    }

    pub fn index(&self) -> usize {
        (self.input_flip as usize) << 2 | (self.out_by_input as usize) << 1 | self.out_const as usize
    }

    /// Source (input, output) of the original box feeding new entry `(x, a)`:
    /// `P'(a|x) = P(a ⊕ slope·x ⊕ offset | x ⊕ flip)`.
    #[inline]
    pub fn pull(&self, x: usize, a: usize) -> (usize, usize) {
        let a1 = a ^ (self.out_by_input as usize & x) ^ self.out_const as usize;
        (x ^ self.input_flip as usize, a1)
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &PartyOp) -> PartyOp {
        PartyOp {
            input_flip: self.input_flip ^ first.input_flip,
            out_by_input: self.out_by_input ^ first.out_by_input,
            out_const: self.out_const ^ first.out_const ^ (first.out_by_input & self.input_flip),
        }
    }

    pub fn inverse(&self) -> PartyOp {
        PartyOp {
            input_flip: self.input_flip,
            out_by_input: self.out_by_input,
            out_const: self.out_const ^ (self.out_by_input & self.input_flip),
        }
    }
}

/// Local reversible operation: per-party relabeling followed by an optional party swap.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lro {
    pub swap: bool,
    pub a: PartyOp,
    pub b: PartyOp,
}

impl Lro {
    pub const ORDER: usize = 128;

    pub fn identity() -> Self {
        Lro::default()
    }

    pub fn from_index(i: usize) -> Self {
        Lro { swap: i & 64 != 0, a: PartyOp::from_index((i >> 3) & 7), b: PartyOp::from_index(i & 7) }
    }

    pub fn index(&self) -> usize {
        (self.swap as usize) << 6 | self.a.index() << 3 | self.b.index()
    }

    pub fn all() -> impl Iterator<Item = Lro> {
        (0..Self::ORDER).map(Lro::from_index)
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Lro) -> Lro {
        if first.swap {
            // S(C⊗D) S (A⊗B) = S S (D⊗C)(A⊗B)
            Lro { swap: !self.swap, a: self.b.after(&first.a), b: self.a.after(&first.b) }
        } else {
            Lro { swap: self.swap, a: self.a.after(&first.a), b: self.b.after(&first.b) }
        }
    }

    pub fn inverse(&self) -> Lro {
        if self.swap {
            Lro { swap: true, a: self.b.inverse(), b: self.a.inverse() }
        } else {
            Lro { swap: false, a: self.a.inverse(), b: self.b.inverse() }
        }
    }
}

/// Named extremal and reference boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum VertexId {
    /// `a⊕b = xy ⊕ αx ⊕ βy ⊕ γ`
    Pr(u8, u8, u8),
    /// `a = αx⊕β`, `b = γy⊕ε`
    Det(u8, u8, u8, u8),
    /// Mermin box with maximally mixed marginals.
    MerminMM(u8, u8, u8),
    /// Mermin box with nonmaximally mixed marginals, orbit index 0..32.
    MerminNMM(u8),
    /// `a⊕b = αx ⊕ βy ⊕ γ`
    Cc(u8, u8, u8),
    Tsirelson(u8, u8, u8),
    Noise,
}

impl VertexId {
    pub fn all_pr() -> impl Iterator<Item = VertexId> {
        (0..8u8).map(|i| VertexId::Pr(i >> 2 & 1, i >> 1 & 1, i & 1))
    }

    pub fn all_det() -> impl Iterator<Item = VertexId> {
        (0..16u8).map(|i| VertexId::Det(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1))
    }

    pub fn all_mermin_mm() -> impl Iterator<Item = VertexId> {
        (0..8u8).map(|i| VertexId::MerminMM(i >> 2 & 1, i >> 1 & 1, i & 1))
    }

    /// The 24 vertices of the bipartite NS polytope: 8 PR boxes then 16 deterministic boxes.
    pub fn ns_vertices() -> Vec<VertexId> {
        Self::all_pr().chain(Self::all_det()).collect()
    }

    pub fn parse(s: &str) -> Option<VertexId> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "noise" {
            return Some(VertexId::Noise);
        }
        let split = lower.find(|c: char| c.is_ascii_digit())?;
        let (name, digits) = lower.split_at(split);
        if name == "merminnmm" {
            let k: u8 = digits.parse().ok()?;
            return (k < 32).then_some(VertexId::MerminNMM(k));
        }
        let bits: Vec<u8> = digits
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<_>>()?;
        match (name, bits.as_slice()) {
            ("pr", [a, b, c]) => Some(VertexId::Pr(*a, *b, *c)),
            ("det", [a, b, c, d]) => Some(VertexId::Det(*a, *b, *c, *d)),
            ("merminmm", [a, b, c]) => Some(VertexId::MerminMM(*a, *b, *c)),
            ("cc", [a, b, c]) => Some(VertexId::Cc(*a, *b, *c)),
            ("tsirelson", [a, b, c]) => Some(VertexId::Tsirelson(*a, *b, *c)),
            _ => None,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Pr(a, b, c) => write!(f, "PR{a}{b}{c}"),
            VertexId::Det(a, b, c, d) => write!(f, "Det{a}{b}{c}{d}"),
            VertexId::MerminMM(a, b, c) => write!(f, "MerminMM{a}{b}{c}"),
            VertexId::MerminNMM(k) => write!(f, "MerminNMM{k}"),
            VertexId::Cc(a, b, c) => write!(f, "CC{a}{b}{c}"),
            VertexId::Tsirelson(a, b, c) => write!(f, "Tsirelson{a}{b}{c}"),
            VertexId::Noise => write!(f, "Noise"),
        }
    }
}

fn from_rule(rule: impl Fn(usize, usize, usize, usize) -> bool) -> BipartiteBox {
    let mut p = [0.0; 16];
    for x in 0..2 {
        for y in 0..2 {
            let hits: Vec<(usize, usize)> =
                (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).filter(|&(a, b)| rule(x, y, a, b)).collect();
            for &(a, b) in &hits {
                p[idx(x, y, a, b)] = 1.0 / hits.len() as f64;
            }
        }
    }
    BipartiteBox { p }
}

fn pr(al: u8, be: u8, ga: u8) -> BipartiteBox {
    let (al, be, ga) = (al as usize & 1, be as usize & 1, ga as usize & 1);
    from_rule(|x, y, a, b| a ^ b == (x & y) ^ (al & x) ^ (be & y) ^ ga)
}

fn average(u: &BipartiteBox, v: &BipartiteBox, w: f64) -> BipartiteBox {
    let mut p = [0.0; 16];
    for i in 0..16 {
        p[i] = w * u.p[i] + (1.0 - w) * v.p[i];
    }
    BipartiteBox { p }
}

/// The nonmaximally mixed Mermin box with rows
/// `[1,0,0,0], [½,½,0,0], [½,0,½,0], [0,½,½,0]`.
fn mermin_nmm_base() -> BipartiteBox {
    let h = 0.5;
    BipartiteBox {
        p: [1.0, 0.0, 0.0, 0.0, h, h, 0.0, 0.0, h, 0.0, h, 0.0, 0.0, h, h, 0.0],
    }
}

/// The 32 nonmaximally mixed Mermin boxes, in order of first appearance
/// while scanning the LRO group on the base box (index 0 is the base).
pub fn mermin_nmm_orbit() -> Vec<BipartiteBox> {
    let base = mermin_nmm_base();
    let mut out: Vec<BipartiteBox> = Vec::with_capacity(32);
    for g in Lro::all() {
        let c = base.apply_lro(&g);
        if !out.iter().any(|o| o.max_abs_diff(&c) < 1e-12) {
            out.push(c);
        }
    }
    out
}

/// Exact table of a catalog box.
pub fn vertex(id: VertexId) -> BipartiteBox {
    match id {
        VertexId::Pr(a, b, c) => pr(a, b, c),
        VertexId::Det(al, be, ga, ep) => {
            let (al, be, ga, ep) = (al as usize & 1, be as usize & 1, ga as usize & 1, ep as usize & 1);
            from_rule(|x, y, a, b| a == (al & x) ^ be && b == (ga & y) ^ ep)
        }
        VertexId::MerminMM(a, b, c) => {
            // αβ ∈ {00,10}: ½(PR(αβγ)+PR(ᾱβ̄γ)); αβ ∈ {01,11}: ½(PR(αβγ)+PR(ᾱβ̄γ̄)).
            let partner_c = if b & 1 == 0 { c } else { c ^ 1 };
            average(&pr(a, b, c), &pr(a ^ 1, b ^ 1, partner_c), 0.5)
        }
        VertexId::MerminNMM(k) => mermin_nmm_orbit()[k as usize % 32],
        VertexId::Cc(al, be, ga) => {
            let (al, be, ga) = (al as usize & 1, be as usize & 1, ga as usize & 1);
            from_rule(|x, y, a, b| a ^ b == (al & x) ^ (be & y) ^ ga)
        }
        VertexId::Tsirelson(a, b, c) => average(&pr(a, b, c), &BipartiteBox::noise(), std::f64::consts::FRAC_1_SQRT_2),
        VertexId::Noise => BipartiteBox::noise(),
    }
}

impl From<VertexId> for String {
    fn from(id: VertexId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for VertexId {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        VertexId::parse(&s).ok_or_else(|| format!("unknown box name `{s}`"))
    }
}

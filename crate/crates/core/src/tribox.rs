//! Tripartite boxes `P(a,b,c|x,y,z)`.
//!
//! Flat storage index is `x<<5 | y<<4 | z<<3 | a<<2 | b<<1 | c`.
//! Function arrays over `(α,β,γ)` are indexed `4α + 2β + γ`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::boxcore::{sign, BipartiteBox, BoxError, PartyOp};
use crate::discord2::{bell_discord, mermin_discord, split_classical, ClassicalCorrelation};
use crate::polytope::{
    lp_vertex_decomposition, search, Candidate, DecompError, Decomposition3, Method, Outcome, VertexSet,
};
use crate::EPS;

#[inline]
pub(crate) fn tidx(x: usize, y: usize, z: usize, a: usize, b: usize, c: usize) -> usize {
    (x << 5) | (y << 4) | (z << 3) | (a << 2) | (b << 1) | c
}

#[inline]
fn decode(i: usize) -> ([usize; 3], [usize; 3]) {
    ([(i >> 5) & 1, (i >> 4) & 1, (i >> 3) & 1], [(i >> 2) & 1, (i >> 1) & 1, i & 1])
}

#[inline]
fn encode(xs: [usize; 3], os: [usize; 3]) -> usize {
    tidx(xs[0], xs[1], xs[2], os[0], os[1], os[2])
}

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::BoxJson", into = "crate::io::BoxJson")]
pub struct TripartiteBox {
    p: [f64; 64],
}

impl fmt::Debug for TripartiteBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TripartiteBox [")?;
        for row in 0..8 {
            let r = &self.p[8 * row..8 * row + 8];
            write!(f, "  xyz={}{}{}:", row >> 2, (row >> 1) & 1, row & 1)?;
            for v in r {
                write!(f, " {v:.4}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The 26 expectation values that fix a tripartite NS box.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TriExpectations {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub ab: [[f64; 2]; 2],
    pub ac: [[f64; 2]; 2],
    pub bc: [[f64; 2]; 2],
    pub abc: [[[f64; 2]; 2]; 2],
}

impl TriExpectations {
    /// Full-body correlators flattened as `4i + 2j + k`.
    pub fn abc_flat(&self) -> [f64; 8] {
        std::array::from_fn(|n| self.abc[n >> 2][(n >> 1) & 1][n & 1])
    }
}

impl TripartiteBox {
    pub fn new(mut p: [f64; 64]) -> Result<Self, BoxError> {
        for (i, v) in p.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(BoxError::Shape(format!("entry {i} is not finite")));
            }
            if *v < -EPS {
                let (xs, os) = decode(i);
                return Err(BoxError::Negative {
                    index: xs.iter().chain(os.iter()).map(|b| *b as u8).collect(),
                    value: *v,
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        for row in 0..8 {
            let sum: f64 = p[8 * row..8 * row + 8].iter().sum();
            if (sum - 1.0).abs() > EPS {
                return Err(BoxError::Shape(format!(
                    "row (x,y,z)=({},{},{}) sums to {sum}, expected 1",
                    row >> 2,
                    (row >> 1) & 1,
                    row & 1
                )));
            }
        }
        // Summing out party k must not depend on party k's input.
        for k in 0..3 {
            for i in 0..64 {
                let (xs, os) = decode(i);
                if xs[k] != 0 || os[k] != 0 {
                    continue;
                }
                let sum_for = |input: usize| {
                    let mut s = 0.0;
                    for o in 0..2 {
                        let (mut x2, mut o2) = (xs, os);
                        x2[k] = input;
                        o2[k] = o;
                        s += p[encode(x2, o2)];
                    }
                    s
                };
                let d = sum_for(0) - sum_for(1);
                if d.abs() > EPS {
                    let party = ['A', 'B', 'C'][k];
                    return Err(BoxError::Signaling { party, input: 0, output: 0, delta: d });
                }
            }
        }
        Ok(TripartiteBox { p })
    }

    pub fn noise() -> Self {
        TripartiteBox { p: [0.125; 64] }
    }

    pub fn flat(&self) -> &[f64; 64] {
        &self.p
    }

    pub fn get(&self, x: usize, y: usize, z: usize, a: usize, b: usize, c: usize) -> f64 {
        self.p[tidx(x, y, z, a, b, c)]
    }

    pub fn from_expectations(e: &TriExpectations) -> Result<Self, BoxError> {
        let mut p = [0.0; 64];
        for (i, v) in p.iter_mut().enumerate() {
            let ([x, y, z], [a, b, c]) = decode(i);
            *v = 0.125
                * (1.0
                    + sign(a) * e.a[x]
                    + sign(b) * e.b[y]
                    + sign(c) * e.c[z]
                    + sign(a ^ b) * e.ab[x][y]
                    + sign(a ^ c) * e.ac[x][z]
                    + sign(b ^ c) * e.bc[y][z]
                    + sign(a ^ b ^ c) * e.abc[x][y][z]);
        }
        Self::new(p)
    }

    /// Expectation of the product of the outputs of `parties` (a subset of {0,1,2}),
    /// averaged over the inputs of the remaining parties.
    fn correlator(&self, xs: [usize; 3], parties: &[usize]) -> f64 {
        let free: Vec<usize> = (0..3).filter(|k| !parties.contains(k)).collect();
        let mut total = 0.0;
        let n_free = 1usize << free.len();
        for mask in 0..n_free {
            let mut x2 = xs;
            for (bit, &k) in free.iter().enumerate() {
                x2[k] = (mask >> bit) & 1;
            }
            for o in 0..8 {
                let os = [(o >> 2) & 1, (o >> 1) & 1, o & 1];
                let par = parties.iter().fold(0, |acc, &k| acc ^ os[k]);
                total += sign(par) * self.p[encode(x2, os)];
            }
        }
        total / n_free as f64
    }

    pub fn expectations(&self) -> TriExpectations {
        let mut e = TriExpectations::default();
        for i in 0..2 {
            e.a[i] = self.correlator([i, 0, 0], &[0]);
            e.b[i] = self.correlator([0, i, 0], &[1]);
            e.c[i] = self.correlator([0, 0, i], &[2]);
            for j in 0..2 {
                e.ab[i][j] = self.correlator([i, j, 0], &[0, 1]);
                e.ac[i][j] = self.correlator([i, 0, j], &[0, 2]);
                e.bc[i][j] = self.correlator([0, i, j], &[1, 2]);
                for k in 0..2 {
                    e.abc[i][j][k] = self.correlator([i, j, k], &[0, 1, 2]);
                }
            }
        }
        e
    }

    pub fn apply_lro(&self, g: &TriLro) -> TripartiteBox {
        let mut q = [0.0; 64];
        for (i, v) in q.iter_mut().enumerate() {
            let (xs, os) = decode(i);
            let (mut qx, mut qo) = ([0; 3], [0; 3]);
            for k in 0..3 {
                qx[g.perm[k]] = xs[k];
                qo[g.perm[k]] = os[k];
            }
            let (mut px, mut po) = ([0; 3], [0; 3]);
            for j in 0..3 {
                (px[j], po[j]) = g.ops[j].pull(qx[j], qo[j]);
            }
            *v = self.p[encode(px, po)];
        }
        TripartiteBox { p: q }
    }

    pub fn max_abs_diff(&self, other: &TripartiteBox) -> f64 {
        self.p.iter().zip(other.p.iter()).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
    }
}

/// Convex combination of tripartite boxes.
pub fn mix3(boxes: &[TripartiteBox], weights: &[f64]) -> Result<TripartiteBox, BoxError> {
    crate::boxcore::check_weights(boxes.len(), weights)?;
    let mut p = [0.0; 64];
    for (bx, w) in boxes.iter().zip(weights) {
        for (acc, v) in p.iter_mut().zip(bx.p.iter()) {
            *acc += w * v;
        }
    }
    TripartiteBox::new(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    fn parties(&self) -> (usize, usize, usize) {
        match self {
            Pair::AB => (0, 1, 2),
            Pair::AC => (0, 2, 1),
            Pair::BC => (1, 2, 0),
        }
    }
}

/// Two-party marginal, with the remaining party's input averaged out.
pub fn marginal2(p: &TripartiteBox, pair: Pair) -> BipartiteBox {
    let (i, j, _) = pair.parties();
    let mut q = [0.0; 16];
    for n in 0..64 {
        let (xs, os) = decode(n);
        let bi = (xs[i] << 3) | (xs[j] << 2) | (os[i] << 1) | os[j];
        q[bi] += 0.5 * p.p[n];
    }
    BipartiteBox::new(q).expect("marginal of an NS box is an NS box")
}

/// Local relabeling on each party followed by a permutation of the parties:
/// party `k` of the result is party `perm[k]` of the relabeled box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriLro {
    pub perm: [usize; 3],
    pub ops: [PartyOp; 3],
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl TriLro {
    pub const ORDER: usize = 3072;

    pub fn identity() -> Self {
        TriLro { perm: [0, 1, 2], ops: [PartyOp::default(); 3] }
    }

    pub fn from_index(i: usize) -> Self {
        TriLro {
            perm: PERMUTATIONS[(i >> 9) % 6],
            ops: [PartyOp::from_index((i >> 6) & 7), PartyOp::from_index((i >> 3) & 7), PartyOp::from_index(i & 7)],
        }
    }

    pub fn index(&self) -> usize {
        let pi = PERMUTATIONS.iter().position(|p| *p == self.perm).unwrap_or(0);
        pi << 9 | self.ops[0].index() << 6 | self.ops[1].index() << 3 | self.ops[2].index()
    }

    pub fn all() -> impl Iterator<Item = TriLro> {
        (0..Self::ORDER).map(TriLro::from_index)
    }

    pub fn inverse(&self) -> TriLro {
        let mut inv = [0; 3];
        for k in 0..3 {
            inv[self.perm[k]] = k;
        }
        TriLro { perm: inv, ops: std::array::from_fn(|k| self.ops[self.perm[k]].inverse()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TriVertexId {
    /// `a⊕b⊕c = xy⊕xz⊕yz⊕αx⊕βy⊕γz⊕ε`
    Sv(u8, u8, u8, u8),
    /// `a = αx⊕β`, `b = γy⊕ε`, `c = ζz⊕η`
    Det3(u8, u8, u8, u8, u8, u8),
    /// `a⊕b = xy⊕αx⊕βy⊕γ`, `c = εz`
    PrAB(u8, u8, u8, u8),
    /// `a⊕c = xz⊕αx⊕βz⊕γ`, `b = εy`
    PrAC(u8, u8, u8, u8),
    /// `b⊕c = yz⊕αy⊕βz⊕γ`, `a = εx`
    PrBC(u8, u8, u8, u8),
    /// `½(Sv(αβγε) + Sv(ᾱβ̄γ̄, ε⊕α⊕β⊕γ))`
    Mermin3(u8, u8, u8, u8),
    Class8Rep,
    Noise3,
}

fn bits4(i: u8) -> (u8, u8, u8, u8) {
    (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1)
}

impl TriVertexId {
    pub fn all_sv() -> impl Iterator<Item = TriVertexId> {
        (0..16u8).map(|i| {
            let (a, b, c, d) = bits4(i);
            TriVertexId::Sv(a, b, c, d)
        })
    }

    pub fn all_mermin3() -> impl Iterator<Item = TriVertexId> {
        (0..16u8).map(|i| {
            let (a, b, c, d) = bits4(i);
            TriVertexId::Mermin3(a, b, c, d)
        })
    }

    pub fn all_det3() -> impl Iterator<Item = TriVertexId> {
        (0..64u8).map(|i| TriVertexId::Det3(i >> 5 & 1, i >> 4 & 1, i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1))
    }

    pub fn all_pr_embeddings() -> impl Iterator<Item = TriVertexId> {
        (0..48u8).map(|i| {
            let (a, b, c, d) = bits4(i & 15);
            match i >> 4 {
                0 => TriVertexId::PrAB(a, b, c, d),
                1 => TriVertexId::PrAC(a, b, c, d),
                _ => TriVertexId::PrBC(a, b, c, d),
            }
        })
    }

    /// 64 deterministic boxes and 48 PR embeddings.
    pub fn two_way_local() -> Vec<TriVertexId> {
        Self::all_det3().chain(Self::all_pr_embeddings()).collect()
    }

    /// 16 Svetlichny boxes followed by [`TriVertexId::two_way_local`].
    pub fn svetlichny_polytope() -> Vec<TriVertexId> {
        Self::all_sv().chain(Self::two_way_local()).collect()
    }

    pub fn parse(s: &str) -> Option<TriVertexId> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "noise3" => return Some(TriVertexId::Noise3),
            "class8" | "class8rep" => return Some(TriVertexId::Class8Rep),
            _ => {}
        }
        let split = lower.find(|c: char| c.is_ascii_digit())?;
        let (name, digits) = lower.split_at(split);
        let b: Vec<u8> = digits
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<_>>()?;
        match (name, b.as_slice()) {
            ("sv", [a, b, c, d]) => Some(TriVertexId::Sv(*a, *b, *c, *d)),
            ("det", [a, b, c, d, e, f]) => Some(TriVertexId::Det3(*a, *b, *c, *d, *e, *f)),
            ("prab", [a, b, c, d]) => Some(TriVertexId::PrAB(*a, *b, *c, *d)),
            ("prac", [a, b, c, d]) => Some(TriVertexId::PrAC(*a, *b, *c, *d)),
            ("prbc", [a, b, c, d]) => Some(TriVertexId::PrBC(*a, *b, *c, *d)),
            ("mermin", [a, b, c, d]) => Some(TriVertexId::Mermin3(*a, *b, *c, *d)),
            _ => None,
        }
    }
}

impl fmt::Display for TriVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriVertexId::Sv(a, b, c, d) => write!(f, "Sv{a}{b}{c}{d}"),
            TriVertexId::Det3(a, b, c, d, e, g) => write!(f, "Det{a}{b}{c}{d}{e}{g}"),
            TriVertexId::PrAB(a, b, c, d) => write!(f, "PrAB{a}{b}{c}{d}"),
            TriVertexId::PrAC(a, b, c, d) => write!(f, "PrAC{a}{b}{c}{d}"),
            TriVertexId::PrBC(a, b, c, d) => write!(f, "PrBC{a}{b}{c}{d}"),
            TriVertexId::Mermin3(a, b, c, d) => write!(f, "Mermin{a}{b}{c}{d}"),
            TriVertexId::Class8Rep => write!(f, "Class8"),
            TriVertexId::Noise3 => write!(f, "Noise3"),
        }
    }
}

fn from_rule(rule: impl Fn([usize; 3], [usize; 3]) -> bool) -> TripartiteBox {
    let mut p = [0.0; 64];
    for row in 0..8 {
        let xs = [row >> 2, (row >> 1) & 1, row & 1];
        let hits: Vec<usize> = (0..8).filter(|&o| rule(xs, [o >> 2, (o >> 1) & 1, o & 1])).collect();
        for &o in &hits {
            p[8 * row + o] = 1.0 / hits.len() as f64;
        }
    }
    TripartiteBox { p }
}

fn sv(al: u8, be: u8, ga: u8, ep: u8) -> TripartiteBox {
    let (al, be, ga, ep) = (al as usize & 1, be as usize & 1, ga as usize & 1, ep as usize & 1);
    from_rule(|[x, y, z], [a, b, c]| {
        a ^ b ^ c == (x & y) ^ (x & z) ^ (y & z) ^ (al & x) ^ (be & y) ^ (ga & z) ^ ep
    })
}

/// PR box between parties `i < j` with party `k` answering `ε·input`.
fn pr_embedded(i: usize, j: usize, k: usize, al: u8, be: u8, ga: u8, ep: u8) -> TripartiteBox {
    let (al, be, ga, ep) = (al as usize & 1, be as usize & 1, ga as usize & 1, ep as usize & 1);
    from_rule(|xs, os| os[i] ^ os[j] == (xs[i] & xs[j]) ^ (al & xs[i]) ^ (be & xs[j]) ^ ga && os[k] == ep & xs[k])
}

fn class8_expectations() -> TriExpectations {
    let mut e = TriExpectations::default();
    e.ab[0][0] = 1.0;
    e.ab[0][1] = 1.0;
    e.ac[0][0] = 1.0;
    e.bc[0][0] = 1.0;
    e.bc[1][0] = 1.0;
    e.abc[1][0][1] = 1.0;
    e.abc[1][1][1] = -1.0;
    e
}

/// Exact table of a catalog tripartite box.
pub fn tri_vertex(id: TriVertexId) -> TripartiteBox {
    match id {
        TriVertexId::Sv(a, b, c, d) => sv(a, b, c, d),
        TriVertexId::Det3(al, be, ga, ep, ze, et) => {
            let v = [al, be, ga, ep, ze, et].map(|b| b as usize & 1);
            from_rule(|[x, y, z], [a, b, c]| {
                a == (v[0] & x) ^ v[1] && b == (v[2] & y) ^ v[3] && c == (v[4] & z) ^ v[5]
            })
        }
        TriVertexId::PrAB(a, b, c, d) => pr_embedded(0, 1, 2, a, b, c, d),
        TriVertexId::PrAC(a, b, c, d) => pr_embedded(0, 2, 1, a, b, c, d),
        TriVertexId::PrBC(a, b, c, d) => pr_embedded(1, 2, 0, a, b, c, d),
        TriVertexId::Mermin3(a, b, c, d) => {
            let u = sv(a, b, c, d);
            let v = sv(a ^ 1, b ^ 1, c ^ 1, d ^ a ^ b ^ c);
            let mut p = [0.0; 64];
            for i in 0..64 {
                p[i] = 0.5 * (u.p[i] + v.p[i]);
            }
            TripartiteBox { p }
        }
        TriVertexId::Class8Rep => {
            TripartiteBox::from_expectations(&class8_expectations()).expect("class-8 representative is a valid box")
        }
        TriVertexId::Noise3 => TripartiteBox::noise(),
    }
}

fn svetlichny_from(e: &[f64; 8], al: usize, be: usize, ga: usize) -> f64 {
    (0..8)
        .map(|n| {
            let (i, j, k) = (n >> 2, (n >> 1) & 1, n & 1);
            sign((i & j) ^ (i & k) ^ (j & k) ^ (al & i) ^ (be & j) ^ (ga & k)) * e[n]
        })
        .sum()
}

fn mermin3_from(e: &[f64; 8], al: usize, be: usize, ga: usize) -> f64 {
    let at = |i: usize, j: usize, k: usize| e[4 * i + 2 * j + k];
    if al ^ be ^ ga == 0 {
        sign(ga) * at(0, 0, 1) + sign(be) * at(0, 1, 0) + sign(al) * at(1, 0, 0) + sign(al ^ be ^ ga ^ 1) * at(1, 1, 1)
    } else {
        sign(al ^ be ^ 1) * at(1, 1, 0) + sign(al ^ ga ^ 1) * at(1, 0, 1) + sign(be ^ ga ^ 1) * at(0, 1, 1) + at(0, 0, 0)
    }
}

/// Signed Svetlichny operator; local and two-way-local bound 4, quantum bound 4√2.
pub fn svetlichny_value(p: &TripartiteBox, al: u8, be: u8, ga: u8, ep: u8) -> f64 {
    sign(ep as usize) * svetlichny_from(&p.expectations().abc_flat(), al as usize, be as usize, ga as usize)
}

/// Signed tripartite Mermin operator; local bound 2.
pub fn mermin3_value(p: &TripartiteBox, al: u8, be: u8, ga: u8, ep: u8) -> f64 {
    sign(ep as usize) * mermin3_from(&p.expectations().abc_flat(), al as usize, be as usize, ga as usize)
}

pub fn svetlichny_functions_from(e: &[f64; 8]) -> [f64; 8] {
    std::array::from_fn(|n| svetlichny_from(e, n >> 2, (n >> 1) & 1, n & 1).abs())
}

pub fn mermin3_functions_from(e: &[f64; 8]) -> [f64; 8] {
    std::array::from_fn(|n| mermin3_from(e, n >> 2, (n >> 1) & 1, n & 1).abs())
}

pub fn svetlichny_functions(p: &TripartiteBox) -> [f64; 8] {
    svetlichny_functions_from(&p.expectations().abc_flat())
}

pub fn mermin3_functions(p: &TripartiteBox) -> [f64; 8] {
    mermin3_functions_from(&p.expectations().abc_flat())
}

/// One nesting tree: two quadruples, each split into two pairs.
pub type Tree = [[usize; 4]; 2];

/// The nine trees used by the tripartite discords.
///
/// The innermost pairs differ in one index bit `v1`; the quadruples are the
/// cosets of `{0, v1, v2, v1⊕v2}` for each of the three choices of `v2` modulo `v1`.
pub fn trees() -> &'static [Tree; 9] {
    static TREES: OnceLock<[Tree; 9]> = OnceLock::new();
    TREES.get_or_init(|| {
        let mut out = Vec::with_capacity(9);
        for v1 in [4usize, 2, 1] {
            let mut seen: Vec<usize> = Vec::new();
            for v2 in 1..8 {
                if v2 == v1 || seen.contains(&v2) {
                    continue;
                }
                seen.extend([v2, v2 ^ v1]);
                let w = [0, v1, v2, v1 ^ v2];
                let t0 = (0..8).find(|l| !w.contains(l)).expect("coset exists");
                out.push([w, w.map(|u| u ^ t0)]);
            }
        }
        out.try_into().expect("nine trees")
    })
}

pub fn tree_value(f: &[f64; 8], t: &Tree) -> f64 {
    let q = |c: &[usize; 4]| ((f[c[0]] - f[c[1]]).abs() - (f[c[2]] - f[c[3]]).abs()).abs();
    (q(&t[0]) - q(&t[1])).abs()
}

pub fn tree_min(f: &[f64; 8]) -> f64 {
    trees().iter().map(|t| tree_value(f, t)).fold(f64::INFINITY, f64::min)
}

/// Svetlichny discord, in `[0, 8]`.
pub fn svetlichny_discord(p: &TripartiteBox) -> f64 {
    tree_min(&svetlichny_functions(p))
}

/// Tripartite Mermin discord, in `[0, 4]`.
pub fn mermin3_discord(p: &TripartiteBox) -> f64 {
    tree_min(&mermin3_functions(p))
}

/// `⟨A0B0⟩ + ⟨A0C0⟩ + ⟨B1C0⟩ + ⟨A1B0C1⟩ − ⟨A1B1C1⟩`; two-way-local bound 3.
pub fn class99_value(p: &TripartiteBox) -> f64 {
    let e = p.expectations();
    e.ab[0][0] + e.ac[0][0] + e.bc[1][0] + e.abc[1][0][1] - e.abc[1][1][1]
}

/// Full-body correlators of the product box across a cut, with the single party `single`.
fn cut_correlators(e: &TriExpectations, single: usize) -> [f64; 8] {
    std::array::from_fn(|n| {
        let (i, j, k) = (n >> 2, (n >> 1) & 1, n & 1);
        match single {
            0 => e.a[i] * e.bc[j][k],
            1 => e.b[j] * e.ac[i][k],
            _ => e.c[k] * e.ab[i][j],
        }
    })
}

/// For each cut (A|BC, B|AC, C|AB): `max_{αβγ} |S_αβγ − S^cut_αβγ|`.
pub fn total_correlation_cuts(p: &TripartiteBox) -> [f64; 3] {
    let e = p.expectations();
    let s = svetlichny_functions_from(&e.abc_flat());
    std::array::from_fn(|single| {
        let sc = svetlichny_functions_from(&cut_correlators(&e, single));
        s.iter().zip(sc.iter()).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
    })
}

/// Total genuine correlation: the smallest cut value.
pub fn total_correlation3(p: &TripartiteBox) -> f64 {
    total_correlation_cuts(p).into_iter().fold(f64::INFINITY, f64::min)
}

pub fn classical_correlation3(p: &TripartiteBox) -> ClassicalCorrelation {
    split_classical(total_correlation3(p), svetlichny_discord(p), mermin3_discord(p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport3 {
    /// `8 − (G + 2Q)`
    pub discord_margin: f64,
    /// Smallest `8 − (S_i + S_j)` over distinct pairs.
    pub svetlichny_pair_margin: f64,
    /// `4 − (G_AB + G_AC)`; only guaranteed for quantum boxes.
    pub marginal_bell_margin: f64,
    /// `2 − (Q_AB + Q_AC)`; only guaranteed for quantum boxes.
    pub marginal_mermin_margin: f64,
    /// The two NS-wide relations hold.
    pub holds: bool,
    pub marginal_holds: bool,
}

pub fn monogamy_checks3(p: &TripartiteBox) -> MonogamyReport3 {
    let s = svetlichny_functions(p);
    let mut pair_margin = f64::INFINITY;
    for i in 0..8 {
        for j in i + 1..8 {
            pair_margin = pair_margin.min(8.0 - s[i] - s[j]);
        }
    }
    let discord_margin = 8.0 - svetlichny_discord(p) - 2.0 * mermin3_discord(p);
    let (ab, ac) = (marginal2(p, Pair::AB), marginal2(p, Pair::AC));
    let marginal_bell_margin = 4.0 - bell_discord(&ab) - bell_discord(&ac);
    let marginal_mermin_margin = 2.0 - mermin_discord(&ab) - mermin_discord(&ac);
    MonogamyReport3 {
        discord_margin,
        svetlichny_pair_margin: pair_margin,
        marginal_bell_margin,
        marginal_mermin_margin,
        holds: discord_margin >= -EPS && pair_margin >= -EPS,
        marginal_holds: marginal_bell_margin >= -EPS && marginal_mermin_margin >= -EPS,
    }
}

/// `⟨A0B0C0⟩ = 1` and `⟨A0B1C1⟩ = ⟨A1B0C1⟩ = ⟨A1B1C0⟩ = −1`.
pub fn ghz_paradox_check(p: &TripartiteBox) -> bool {
    let e = p.expectations().abc;
    (e[0][0][0] - 1.0).abs() <= EPS
        && (e[0][1][1] + 1.0).abs() <= EPS
        && (e[1][0][1] + 1.0).abs() <= EPS
        && (e[1][1][0] + 1.0).abs() <= EPS
}

/// Signed-argmax Svetlichny label, ties broken lexicographically on (α,β,γ,ε).
pub fn max_svetlichny(p: &TripartiteBox) -> (TriVertexId, f64) {
    let e = p.expectations().abc_flat();
    let mut best = (TriVertexId::Sv(0, 0, 0, 0), f64::NEG_INFINITY);
    for id in TriVertexId::all_sv() {
        let TriVertexId::Sv(a, b, c, d) = id else { unreachable!() };
        let v = sign(d as usize) * svetlichny_from(&e, a as usize, b as usize, c as usize);
        if v > best.1 + 1e-12 {
            best = (id, v);
        }
    }
    best
}

/// Mermin boxes that are even mixtures of `Sv(v,ε)` with another Svetlichny box.
pub fn mermin3_partners(svid: TriVertexId) -> [TriVertexId; 2] {
    let TriVertexId::Sv(a, b, c, d) = svid else { panic!("not a Svetlichny box: {svid}") };
    [TriVertexId::Mermin3(a, b, c, d), TriVertexId::Mermin3(a ^ 1, b ^ 1, c ^ 1, d ^ a ^ b ^ c ^ 1)]
}

/// Signed Mermin label `(α,β,γ,ε)` on which the Mermin box reaches 4.
fn mermin3_label(id: TriVertexId) -> (usize, usize, usize, usize) {
    let e = tri_vertex(id).expectations().abc_flat();
    for l in 0..16 {
        let (a, b, c, d) = (l >> 3 & 1, l >> 2 & 1, l >> 1 & 1, l & 1);
        if (sign(d) * mermin3_from(&e, a, b, c) - 4.0).abs() < 1e-12 {
            return (a, b, c, d);
        }
    }
    unreachable!("every Mermin box saturates one Mermin operator")
}

fn identify3(bx: &TripartiteBox, ids: impl Iterator<Item = TriVertexId>) -> Option<TriVertexId> {
    ids.into_iter().find(|id| tri_vertex(*id).max_abs_diff(bx) < 1e-12)
}

/// (Svetlichny box, Mermin box, LRO index) for every image of `(Sv0000, Mermin0000)`.
fn frame_pairs() -> &'static [(TriVertexId, TriVertexId, usize)] {
    static PAIRS: OnceLock<Vec<(TriVertexId, TriVertexId, usize)>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        let base_s = tri_vertex(TriVertexId::Sv(0, 0, 0, 0));
        let base_m = tri_vertex(TriVertexId::Mermin3(0, 0, 0, 0));
        let mut out: Vec<(TriVertexId, TriVertexId, usize)> = Vec::new();
        for g in TriLro::all() {
            let s = identify3(&base_s.apply_lro(&g), TriVertexId::all_sv());
            let m = identify3(&base_m.apply_lro(&g), TriVertexId::all_mermin3());
            if let (Some(s), Some(m)) = (s, m) {
                if !out.iter().any(|(a, b, _)| *a == s && *b == m) {
                    out.push((s, m, g.index()));
                }
            }
        }
        out
    })
}

/// Split `P = μ·Sv + ν·M + (1−μ−ν)·L` with `μ = 𝒢/8`, `ν = 𝒬/4` and both discords of `L` zero.
pub fn three_decomposition3(p: &TripartiteBox) -> Result<Decomposition3, DecompError> {
    if !lp_vertex_decomposition(p.flat(), VertexSet::Svetlichny128)?.inside {
        return Err(DecompError::NotInPolytope);
    }
    let mu = (svetlichny_discord(p) / 8.0).clamp(0.0, 1.0);
    let nu = (mermin3_discord(p) / 4.0).clamp(0.0, 1.0 - mu);
    let (best, _) = max_svetlichny(p);
    let e = p.expectations().abc_flat();
    let score = |id: TriVertexId| {
        let (a, b, c, d) = mermin3_label(id);
        sign(d) * mermin3_from(&e, a, b, c)
    };
    let mut partners = mermin3_partners(best);
    if score(partners[1]) > score(partners[0]) + 1e-12 {
        partners.swap(0, 1);
    }
    let mut pairs: Vec<(TriVertexId, TriVertexId, Method)> =
        partners.iter().map(|m| (best, *m, Method::Direct)).collect();
    for &(s, m, g) in frame_pairs() {
        if !pairs.iter().any(|(a, b, _)| *a == s && *b == m) {
            pairs.push((s, m, Method::Frame(g)));
        }
    }
    let tables: Vec<(TripartiteBox, TripartiteBox)> =
        pairs.iter().map(|(a, b, _)| (tri_vertex(*a), tri_vertex(*b))).collect();
    let cands = pairs.iter().zip(&tables).map(|((a, b, m), (ta, tb))| Candidate {
        nonlocal: (*a, &ta.flat()[..]),
        mermin: Some((*b, &tb.flat()[..])),
        method: *m,
    });
    let build = |r: &[f64]| TripartiteBox::new(r.try_into().ok()?).ok();
    let disc = |b: &TripartiteBox| (svetlichny_discord(b), mermin3_discord(b));
    match search(p.flat(), mu, nu, cands, build, disc) {
        Outcome::Found(d) => Ok(d),
        Outcome::Failed(min_entry, residual_g, residual_q) => {
            Err(DecompError::ResidualInvalid { mu, nu, min_entry, residual_g, residual_q })
        }
    }
}

impl From<TriVertexId> for String {
    fn from(id: TriVertexId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for TriVertexId {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        TriVertexId::parse(&s).ok_or_else(|| format!("unknown box name `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        assert_eq!(TriVertexId::two_way_local().len(), 112);
        assert_eq!(TriVertexId::svetlichny_polytope().len(), 128);
    }

    #[test]
    fn all_catalog_boxes_valid() {
        for id in TriVertexId::svetlichny_polytope().into_iter().chain(TriVertexId::all_mermin3()) {
            let b = tri_vertex(id);
            TripartiteBox::new(*b.flat()).unwrap();
        }
        TripartiteBox::new(*tri_vertex(TriVertexId::Class8Rep).flat()).unwrap();
    }

    #[test]
    fn nine_distinct_trees() {
        let t = trees();
        for i in 0..9 {
            for j in i + 1..9 {
                assert_ne!(t[i], t[j]);
            }
        }
        assert_eq!(t.iter().filter(|tr| tr[0] == [0, 1, 2, 3]).count(), 1);
    }

    #[test]
    fn frame_pairs_cover_all_flags() {
        assert_eq!(frame_pairs().len(), 32);
    }

    #[test]
    fn expectation_round_trip() {
        let b = tri_vertex(TriVertexId::Mermin3(1, 0, 1, 1));
        let back = TripartiteBox::from_expectations(&b.expectations()).unwrap();
        assert!(back.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn lro_inverse() {
        let b = tri_vertex(TriVertexId::PrAC(1, 0, 1, 1));
        for i in (0..TriLro::ORDER).step_by(37) {
            let g = TriLro::from_index(i);
            assert!(b.apply_lro(&g).apply_lro(&g.inverse()).max_abs_diff(&b) < 1e-15, "{i}");
        }
    }
}

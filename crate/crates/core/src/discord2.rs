//! Bipartite measures built on the CHSH and Mermin operators.
//!
//! Function arrays are indexed by `2α + β`.

use serde::{Deserialize, Serialize};

use crate::boxcore::{sign, BipartiteBox, Correlators};
use crate::EPS;

/// The three ways to split four labels into two pairs.
pub const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellFunctions {
    pub b: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MerminFunctions {
    pub m: [f64; 4],
}

/// `||f_i − f_j| − |f_k − f_l||` for each pairing.
pub fn pairing_values(f: &[f64; 4]) -> [f64; 3] {
    PAIRINGS.map(|[(i, j), (k, l)]| ((f[i] - f[j]).abs() - (f[k] - f[l]).abs()).abs())
}

pub fn pairing_min(f: &[f64; 4]) -> f64 {
    pairing_values(f).into_iter().fold(f64::INFINITY, f64::min)
}

fn chsh_from(e: &[[f64; 2]; 2], al: usize, be: usize, ga: usize) -> f64 {
    sign(ga) * e[0][0] + sign(be ^ ga) * e[0][1] + sign(al ^ ga) * e[1][0] + sign(al ^ be ^ ga ^ 1) * e[1][1]
}

fn mermin_from(e: &[[f64; 2]; 2], al: usize, be: usize, ga: usize) -> f64 {
    let v = match (al & 1, be & 1) {
        (0, 0) => e[0][0] - e[1][1],
        (0, 1) => e[1][0] - e[0][1],
        (1, 0) => e[0][0] + e[1][1],
        _ => -(e[0][1] + e[1][0]),
    };
    sign(ga) * v
}

fn bell_from(e: &[[f64; 2]; 2]) -> [f64; 4] {
    std::array::from_fn(|k| chsh_from(e, k >> 1, k & 1, 0).abs())
}

fn mermin_fns_from(e: &[[f64; 2]; 2]) -> [f64; 4] {
    std::array::from_fn(|k| mermin_from(e, k >> 1, k & 1, 0).abs())
}

fn correlation_matrix(p: &BipartiteBox) -> [[f64; 2]; 2] {
    std::array::from_fn(|x| std::array::from_fn(|y| p.joint_expectation(x, y)))
}

/// Signed CHSH operator `(-1)^γ[⟨A0B0⟩ + (-1)^β⟨A0B1⟩ + (-1)^α⟨A1B0⟩ + (-1)^(α⊕β⊕1)⟨A1B1⟩]`.
/// Local bound 2, quantum bound 2√2.
pub fn chsh_value(p: &BipartiteBox, al: u8, be: u8, ga: u8) -> f64 {
    chsh_from(&correlation_matrix(p), al as usize, be as usize, ga as usize)
}

/// Signed Mermin operator, bound 2. The Mermin box `MerminMM(α,β,γ)` reaches 2 on `(α,β,γ)`.
pub fn mermin_value(p: &BipartiteBox, al: u8, be: u8, ga: u8) -> f64 {
    mermin_from(&correlation_matrix(p), al as usize, be as usize, ga as usize)
}

pub fn bell_functions(p: &BipartiteBox) -> BellFunctions {
    BellFunctions { b: bell_from(&correlation_matrix(p)) }
}

pub fn mermin_functions(p: &BipartiteBox) -> MerminFunctions {
    MerminFunctions { m: mermin_fns_from(&correlation_matrix(p)) }
}

pub fn bell_discord(p: &BipartiteBox) -> f64 {
    pairing_min(&bell_functions(p).b)
}

pub fn mermin_discord(p: &BipartiteBox) -> f64 {
    pairing_min(&mermin_functions(p).m)
}

/// Correlators of the product box with the same single-party marginals.
pub fn product_correlators(c: &Correlators) -> Correlators {
    Correlators { a: c.a, b: c.b, ab: std::array::from_fn(|i| std::array::from_fn(|j| c.a[i] * c.b[j])) }
}

/// `max_{αβ} |B_αβ − B^prod_αβ|`, where the product terms replace `⟨A_iB_j⟩` by `⟨A_i⟩⟨B_j⟩`.
pub fn total_correlation(p: &BipartiteBox) -> f64 {
    let c = p.correlators();
    let prod = product_correlators(&c);
    (0..4)
        .map(|k| (chsh_from(&c.ab, k >> 1, k & 1, 0) - chsh_from(&prod.ab, k >> 1, k & 1, 0)).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrSign {
    /// `T = G + Q + C`
    Plus,
    /// `T = G + Q − C`
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCorrelation {
    pub value: f64,
    pub sign: CorrSign,
}

pub(crate) fn split_classical(t: f64, g: f64, q: f64) -> ClassicalCorrelation {
    let d = t - g - q;
    ClassicalCorrelation { value: d.abs(), sign: if d > 0.0 { CorrSign::Plus } else { CorrSign::Minus } }
}

/// Part of the total correlation carried by neither discord.
pub fn classical_correlation(p: &BipartiteBox) -> ClassicalCorrelation {
    split_classical(total_correlation(p), bell_discord(p), mermin_discord(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    /// Mermin function `m[2α+β]` exceeds √2.
    pub violates: [bool; 4],
    pub max_mermin: f64,
    /// Correlations compatible with anticommuting qubit observables on Alice's side.
    pub qubit_a: bool,
    pub qubit_b: bool,
    pub steerable: bool,
}

/// Steering test against the Mermin-operator bound √2.
///
/// The bound only certifies steering when one side can be modelled as a
/// qubit measured along orthogonal directions, which requires
/// `⟨A_iB_0⟩² + ⟨A_iB_1⟩² ≤ 1` for Bob's pair (or the transposed condition).
/// Without that, a classically correlated box like `CC000` reaches 2.
pub fn steering_check(p: &BipartiteBox) -> SteeringReport {
    let e = correlation_matrix(p);
    let m = mermin_fns_from(&e);
    let violates = m.map(|v| v > std::f64::consts::SQRT_2 + EPS);
    let qubit_b = (0..2).all(|i| e[i][0].powi(2) + e[i][1].powi(2) <= 1.0 + EPS);
    let qubit_a = (0..2).all(|j| e[0][j].powi(2) + e[1][j].powi(2) <= 1.0 + EPS);
    SteeringReport {
        violates,
        max_mermin: m.into_iter().fold(0.0, f64::max),
        qubit_a,
        qubit_b,
        steerable: violates.iter().any(|v| *v) && (qubit_a || qubit_b),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    /// `4 − (B_i + B_j)` for the six pairs of Bell functions, in order
    /// (00,01), (00,10), (00,11), (01,10), (01,11), (10,11).
    pub bell_pair_margins: [f64; 6],
    /// `4 − (G + 2Q)`
    pub discord_margin: f64,
    pub holds: bool,
}

pub fn monogamy_checks(p: &BipartiteBox) -> MonogamyReport {
    let b = bell_functions(p).b;
    let mut margins = [0.0; 6];
    let mut k = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            margins[k] = 4.0 - b[i] - b[j];
            k += 1;
        }
    }
    let discord_margin = 4.0 - bell_discord(p) - 2.0 * mermin_discord(p);
    let holds = margins.iter().all(|m| *m >= -EPS) && discord_margin >= -EPS;
    MonogamyReport { bell_pair_margins: margins, discord_margin, holds }
}

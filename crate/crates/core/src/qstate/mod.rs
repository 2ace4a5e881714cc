//! Two- and three-qubit states, projective qubit measurements and Born-rule boxes.

pub mod linalg;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boxcore::{BipartiteBox, BoxError};
use crate::tribox::TripartiteBox;
pub use linalg::CMat;
use linalg::{pauli, projector};

const HERMITIAN_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("degenerate state: {0}")]
    DegenerateState(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Box(#[from] BoxError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: CMat,
}

impl DensityMatrix {
    /// Validate a row-major `n×n` matrix, `n ∈ {4, 8}`.
    pub fn new(n: usize, entries: Vec<C>) -> Result<Self, StateError> {
        if entries.len() != n * n {
            return Err(StateError::InvalidState(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Self::from_cmat(CMat { n, a: entries })
    }

    pub fn from_cmat(m: CMat) -> Result<Self, StateError> {
        if m.n != 4 && m.n != 8 {
            return Err(StateError::InvalidState(format!("dimension {}, expected 4 or 8", m.n)));
        }
        let herm = m.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(StateError::InvalidState(format!("not Hermitian (error {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(StateError::InvalidState(format!("trace {tr}, expected 1")));
        }
        let min_ev = m.hermitian_eigenvalues()[0];
        if min_ev < -PSD_TOL {
            return Err(StateError::InvalidState(format!("negative eigenvalue {min_ev:e}")));
        }
        Ok(DensityMatrix { m })
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket of length 4 or 8.
    pub fn pure(psi: &[C]) -> Result<Self, StateError> {
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(StateError::InvalidState(format!("ket has squared norm {norm}")));
        }
        Self::from_cmat(CMat::outer(psi))
    }

    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self, StateError> {
        let Some((_, first)) = parts.first() else {
            return Err(StateError::InvalidState("empty mixture".into()));
        };
        let mut m = CMat::zeros(first.dim());
        for (w, r) in parts {
            if *w < -1e-12 {
                return Err(StateError::BadParameter(format!("negative mixture weight {w}")));
            }
            m = m.add(&r.m.scale(*w));
        }
        Self::from_cmat(m)
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix { m: CMat::identity(n).scale(1.0 / n as f64) }
    }

    pub fn dim(&self) -> usize {
        self.m.n
    }

    pub fn qubits(&self) -> usize {
        self.m.n.trailing_zeros() as usize
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.m.get(r, c)
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    /// `Re Tr(ρ σ_{i1} ⊗ … ⊗ σ_{iq})` for all Pauli strings, flattened base-4
    /// with the first qubit most significant. Index 0 is the identity.
    pub fn pauli_tensor(&self) -> Vec<f64> {
        let q = self.qubits();
        (0..4usize.pow(q as u32))
            .map(|s| {
                let mut op = pauli((s >> (2 * (q - 1))) & 3);
                for k in 1..q {
                    op = op.kron(&pauli((s >> (2 * (q - 1 - k))) & 3));
                }
                self.m.trace_product(&op).re
            })
            .collect()
    }
}

/// Two unit Bloch vectors per party.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSettings {
    pub dirs: Vec<[[f64; 3]; 2]>,
}

impl MeasurementSettings {
    pub fn new(dirs: Vec<[[f64; 3]; 2]>) -> Result<Self, StateError> {
        if dirs.len() != 2 && dirs.len() != 3 {
            return Err(StateError::BadParameter(format!("{} parties, expected 2 or 3", dirs.len())));
        }
        for (k, pair) in dirs.iter().enumerate() {
            for (i, v) in pair.iter().enumerate() {
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if (n - 1.0).abs() > 1e-9 {
                    return Err(StateError::BadParameter(format!("party {k} input {i} has norm {n}")));
                }
            }
        }
        Ok(MeasurementSettings { dirs })
    }

    pub fn parties(&self) -> usize {
        self.dirs.len()
    }
}

#[inline]
fn bloch_weights(n: &[f64; 3], bit: usize) -> [f64; 4] {
    let s = if bit == 0 { 1.0 } else { -1.0 };
    [1.0, s * n[0], s * n[1], s * n[2]]
}

fn check_dims(rho: &DensityMatrix, s: &MeasurementSettings, q: usize) -> Result<(), StateError> {
    if rho.qubits() != q || s.parties() != q {
        return Err(StateError::InvalidState(format!(
            "{q}-party box needs a {q}-qubit state and {q} settings, got {} qubits and {} settings",
            rho.qubits(),
            s.parties()
        )));
    }
    Ok(())
}

/// `P(a,b|x,y) = Tr(ρ Π^a_x ⊗ Π^b_y)`, evaluated through the Pauli correlation tensor.
pub fn born_box2(rho: &DensityMatrix, s: &MeasurementSettings) -> Result<BipartiteBox, StateError> {
    check_dims(rho, s, 2)?;
    Ok(born_box2_tensor(&rho.pauli_tensor(), s)?)
}

/// Same as [`born_box2`] with a precomputed [`DensityMatrix::pauli_tensor`].
pub fn born_box2_tensor(t: &[f64], s: &MeasurementSettings) -> Result<BipartiteBox, BoxError> {
    let mut p = [0.0; 16];
    for (n, v) in p.iter_mut().enumerate() {
        let (x, y, a, b) = (n >> 3, (n >> 2) & 1, (n >> 1) & 1, n & 1);
        let u = bloch_weights(&s.dirs[0][x], a);
        let w = bloch_weights(&s.dirs[1][y], b);
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += u[i] * w[j] * t[4 * i + j];
            }
        }
        *v = 0.25 * acc;
    }
    BipartiteBox::new(p)
}

/// Born rule by explicit projector traces; slower, kept as a cross-check.
pub fn born_box2_direct(rho: &DensityMatrix, s: &MeasurementSettings) -> Result<BipartiteBox, StateError> {
    check_dims(rho, s, 2)?;
    let mut p = [0.0; 16];
    for (n, v) in p.iter_mut().enumerate() {
        let (x, y, a, b) = (n >> 3, (n >> 2) & 1, (n >> 1) & 1, n & 1);
        let op = projector(&s.dirs[0][x], a).kron(&projector(&s.dirs[1][y], b));
        *v = rho.matrix().trace_product(&op).re;
    }
    Ok(BipartiteBox::new(p)?)
}

pub fn born_box3(rho: &DensityMatrix, s: &MeasurementSettings) -> Result<TripartiteBox, StateError> {
    check_dims(rho, s, 3)?;
    Ok(born_box3_tensor(&rho.pauli_tensor(), s)?)
}

pub fn born_box3_tensor(t: &[f64], s: &MeasurementSettings) -> Result<TripartiteBox, BoxError> {
    let mut p = [0.0; 64];
    for (n, v) in p.iter_mut().enumerate() {
        let (x, y, z) = (n >> 5, (n >> 4) & 1, (n >> 3) & 1);
        let (a, b, c) = ((n >> 2) & 1, (n >> 1) & 1, n & 1);
        let u = bloch_weights(&s.dirs[0][x], a);
        let w = bloch_weights(&s.dirs[1][y], b);
        let r = bloch_weights(&s.dirs[2][z], c);
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    acc += u[i] * w[j] * r[k] * t[16 * i + 4 * j + k];
                }
            }
        }
        *v = 0.125 * acc;
    }
    TripartiteBox::new(p)
}

pub fn born_box3_direct(rho: &DensityMatrix, s: &MeasurementSettings) -> Result<TripartiteBox, StateError> {
    check_dims(rho, s, 3)?;
    let mut p = [0.0; 64];
    for (n, v) in p.iter_mut().enumerate() {
        let (x, y, z) = (n >> 5, (n >> 4) & 1, (n >> 3) & 1);
        let (a, b, c) = ((n >> 2) & 1, (n >> 1) & 1, n & 1);
        let op = projector(&s.dirs[0][x], a).kron(&projector(&s.dirs[1][y], b)).kron(&projector(&s.dirs[2][z], c));
        *v = rho.matrix().trace_product(&op).re;
    }
    Ok(TripartiteBox::new(p)?)
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn ket(n: usize, amps: &[(usize, C)]) -> Vec<C> {
    let mut v = vec![C::new(0.0, 0.0); n];
    for (i, a) in amps {
        v[*i] += *a;
    }
    v
}

/// Single-qubit state `½(𝟙 + r·σ)`, `|r| ≤ 1`.
pub fn qubit_state(r: &[f64; 3]) -> Result<CMat, StateError> {
    let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if n > 1.0 + 1e-9 {
        return Err(StateError::BadParameter(format!("Bloch vector length {n} > 1")));
    }
    Ok(projector(r, 0))
}

/// Catalog of state families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum StateFamily {
    /// `cosθ|00⟩ + sinθ|11⟩`
    Schmidt { theta: f64 },
    /// `p|ψ⁺⟩⟨ψ⁺| + (1−p)𝟙/4`, `|ψ⁺⟩ = (|00⟩+|11⟩)/√2`
    Werner2 { p: f64 },
    /// `p|ψ⁺⟩⟨ψ⁺| + (1−p)(|00⟩⟨00| + |11⟩⟨11|)/2`
    BellCC { p: f64 },
    /// `p|n⟩⟨n|⊗χ₀ + (1−p)|−n⟩⟨−n|⊗χ₁`, `χᵢ` given by Bloch vectors.
    Cq { p: f64, axis: [f64; 3], chi0: [f64; 3], chi1: [f64; 3] },
    /// `p χ₀⊗|n⟩⟨n| + (1−p) χ₁⊗|−n⟩⟨−n|`
    Qc { p: f64, axis: [f64; 3], chi0: [f64; 3], chi1: [f64; 3] },
    /// Weights on `(|00⟩ + (−1)^j i^k |11⟩)/√2` then `(|01⟩ + (−1)^j i^k |10⟩)/√2`,
    /// each group ordered `(j,k) = 00, 10, 01, 11`.
    BellDiagonal { weights: [f64; 8] },
    /// `cosθ|000⟩ + sinθ|111⟩`
    Gghz { theta: f64 },
    /// `cosθ|000⟩ + sinθ|11⟩(cosθ₃|0⟩ + sinθ₃|1⟩)`
    GhzClass { theta: f64, theta3: f64 },
    /// `α|100⟩ + β|010⟩ + γ|001⟩`
    WClass { a: f64, b: f64, c: f64 },
    /// `p|GHZ⟩⟨GHZ| + (1−p)𝟙/8`
    Werner3 { p: f64 },
    /// `p|GHZ⟩⟨GHZ| + q|W⟩⟨W|`, `p + q = 1`
    GhzWMix { p: f64, q: f64 },
    /// Equal mixture of `(|100⟩+|010⟩)/√2`, `(|100⟩+|001⟩)/√2`, `(|010⟩+|001⟩)/√2`.
    BisepW,
    /// `b|01⟩ + c|10⟩ + d|11⟩`
    Hardy { b: C, c: C, d: C },
}

fn unit(v: &[f64; 3]) -> Result<[f64; 3], StateError> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n < 1e-12 {
        return Err(StateError::BadParameter("zero axis".into()));
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

fn prob(name: &str, p: f64) -> Result<f64, StateError> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(StateError::BadParameter(format!("{name}={p} outside [0,1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

fn bell_plus() -> Vec<C> {
    ket(4, &[(0, re(FRAC_1_SQRT_2)), (3, re(FRAC_1_SQRT_2))])
}

fn ghz() -> Vec<C> {
    ket(8, &[(0, re(FRAC_1_SQRT_2)), (7, re(FRAC_1_SQRT_2))])
}

impl StateFamily {
    pub fn density(&self) -> Result<DensityMatrix, StateError> {
        match self {
            StateFamily::Schmidt { theta } => {
                DensityMatrix::pure(&ket(4, &[(0, re(theta.cos())), (3, re(theta.sin()))]))
            }
            StateFamily::Werner2 { p } => {
                let p = prob("p", *p)?;
                let psi = DensityMatrix::pure(&bell_plus())?;
                DensityMatrix::mixture(&[(p, &psi), (1.0 - p, &DensityMatrix::maximally_mixed(4))])
            }
            StateFamily::BellCC { p } => {
                let p = prob("p", *p)?;
                let psi = DensityMatrix::pure(&bell_plus())?;
                let mut cc = CMat::zeros(4);
                cc.a[0] = re(0.5);
                cc.a[15] = re(0.5);
                DensityMatrix::mixture(&[(p, &psi), (1.0 - p, &DensityMatrix::from_cmat(cc)?)])
            }
            StateFamily::Cq { p, axis, chi0, chi1 } | StateFamily::Qc { p, axis, chi0, chi1 } => {
                let p = prob("p", *p)?;
                let n = unit(axis)?;
                let plus = projector(&n, 0);
                let minus = projector(&n, 1);
                let (c0, c1) = (qubit_state(chi0)?, qubit_state(chi1)?);
                let m = if matches!(self, StateFamily::Cq { .. }) {
                    plus.kron(&c0).scale(p).add(&minus.kron(&c1).scale(1.0 - p))
                } else {
                    c0.kron(&plus).scale(p).add(&c1.kron(&minus).scale(1.0 - p))
                };
                DensityMatrix::from_cmat(m)
            }
            StateFamily::BellDiagonal { weights } => {
                let s: f64 = weights.iter().sum();
                if weights.iter().any(|w| *w < -1e-12) || (s - 1.0).abs() > 1e-9 {
                    return Err(StateError::BadParameter(format!("Bell-diagonal weights {weights:?}")));
                }
                let mut m = CMat::zeros(4);
                for (n, w) in weights.iter().enumerate() {
                    let (j, k) = (n & 1, (n >> 1) & 1);
                    let phase = C::new(if j == 0 { 1.0 } else { -1.0 }, 0.0) * C::new(0.0, 1.0).powu(k as u32);
                    let (lo, hi) = if n < 4 { (0, 3) } else { (1, 2) };
                    let v = ket(4, &[(lo, re(FRAC_1_SQRT_2)), (hi, phase * FRAC_1_SQRT_2)]);
                    m = m.add(&CMat::outer(&v).scale(*w));
                }
                DensityMatrix::from_cmat(m)
            }
            StateFamily::Gghz { theta } => DensityMatrix::pure(&ket(8, &[(0, re(theta.cos())), (7, re(theta.sin()))])),
            StateFamily::GhzClass { theta, theta3 } => DensityMatrix::pure(&ket(
                8,
                &[(0, re(theta.cos())), (6, re(theta.sin() * theta3.cos())), (7, re(theta.sin() * theta3.sin()))],
            )),
            StateFamily::WClass { a, b, c } => DensityMatrix::pure(&ket(8, &[(4, re(*a)), (2, re(*b)), (1, re(*c))])),
            StateFamily::Werner3 { p } => {
                let p = prob("p", *p)?;
                let g = DensityMatrix::pure(&ghz())?;
                DensityMatrix::mixture(&[(p, &g), (1.0 - p, &DensityMatrix::maximally_mixed(8))])
            }
            StateFamily::GhzWMix { p, q } => {
                let (p, q) = (prob("p", *p)?, prob("q", *q)?);
                if (p + q - 1.0).abs() > 1e-9 {
                    return Err(StateError::BadParameter(format!("p+q={} must be 1", p + q)));
                }
                let g = DensityMatrix::pure(&ghz())?;
                let t = 1.0 / 3f64.sqrt();
                let w = DensityMatrix::pure(&ket(8, &[(4, re(t)), (2, re(t)), (1, re(t))]))?;
                DensityMatrix::mixture(&[(p, &g), (q, &w)])
            }
            StateFamily::BisepW => {
                let h = FRAC_1_SQRT_2;
                let parts: Vec<DensityMatrix> = [(4, 2), (4, 1), (2, 1)]
                    .iter()
                    .map(|&(i, j)| DensityMatrix::pure(&ket(8, &[(i, re(h)), (j, re(h))])))
                    .collect::<Result<_, _>>()?;
                DensityMatrix::mixture(&[(1.0 / 3.0, &parts[0]), (1.0 / 3.0, &parts[1]), (1.0 / 3.0, &parts[2])])
            }
            StateFamily::Hardy { b, c, d } => DensityMatrix::pure(&ket(4, &[(1, *b), (2, *c), (3, *d)])),
        }
    }

    /// Build a family from a name and `key=value` parameters.
    pub fn from_params(name: &str, params: &[(String, f64)]) -> Result<Self, StateError> {
        let get = |k: &str| -> Result<f64, StateError> {
            params
                .iter()
                .find(|(n, _)| n.eq_ignore_ascii_case(k))
                .map(|(_, v)| *v)
                .ok_or_else(|| StateError::BadParameter(format!("family {name} needs parameter {k}")))
        };
        let lower = name.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "schmidt" => StateFamily::Schmidt { theta: get("theta")? },
            "werner2" | "werner" => StateFamily::Werner2 { p: get("p")? },
            "bellcc" => StateFamily::BellCC { p: get("p")? },
            "gghz" => StateFamily::Gghz { theta: get("theta")? },
            "ghz" => StateFamily::Gghz { theta: std::f64::consts::FRAC_PI_4 },
            "ghzclass" => StateFamily::GhzClass { theta: get("theta")?, theta3: get("theta3")? },
            "wclass" => StateFamily::WClass { a: get("a")?, b: get("b")?, c: get("c")? },
            "w" => {
                let t = 1.0 / 3f64.sqrt();
                StateFamily::WClass { a: t, b: t, c: t }
            }
            "werner3" => StateFamily::Werner3 { p: get("p")? },
            "ghzwmix" => {
                let p = get("p")?;
                StateFamily::GhzWMix { p, q: get("q").unwrap_or(1.0 - p) }
            }
            "bisepw" => StateFamily::BisepW,
            "hardy" => StateFamily::Hardy { b: re(get("b")?), c: re(get("c")?), d: re(get("d")?) },
            _ => return Err(StateError::UnknownName(name.to_string())),
        })
    }
}

pub const FAMILY_NAMES: &[&str] =
    &["Schmidt", "Werner2", "BellCC", "GGHZ", "GHZ", "GhzClass", "WClass", "W", "Werner3", "GhzWMix", "BisepW", "Hardy"];

const X: [f64; 3] = [1.0, 0.0, 0.0];
const Y: [f64; 3] = [0.0, 1.0, 0.0];
const Z: [f64; 3] = [0.0, 0.0, 1.0];

fn lin(a: f64, u: [f64; 3], b: f64, v: [f64; 3]) -> [f64; 3] {
    [a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]]
}

fn neg(u: [f64; 3]) -> [f64; 3] {
    [-u[0], -u[1], -u[2]]
}

/// Names accepted by [`settings_catalog`]; a trailing `*` marks a required parameter.
pub const SETTINGS_NAMES: &[&str] = &[
    "BSb", "PRQ*", "MSb", "MSb1", "CSB*", "CSB2", "ZSb1", "meb1*", "0BMSb*", "0BMSb1*", "BMW*", "BMWb1*", "M_N", "M_C",
    "SDxy", "SDxz", "MDxy", "MDxz", "Ghose*", "class99*", "SMDghz*", "SMghz*",
];

/// Named measurement settings. `param` is τ for PRQ and CSB, θ for 0BMSb, 0BMSb1, class99
/// and SMghz, θ₃ for Ghose, and p for meb1, BMW, BMWb1 and SMDghz.
pub fn settings_catalog(name: &str, param: Option<f64>) -> Result<MeasurementSettings, StateError> {
    let need = || param.ok_or_else(|| StateError::BadParameter(format!("settings {name} need a parameter")));
    let h = FRAC_1_SQRT_2;
    let xy_pm = [lin(h, X, -h, Y), lin(h, X, h, Y)];
    let dirs: Vec<[[f64; 3]; 2]> = match name {
        "BSb" | "M_N" => vec![[X, Y], xy_pm],
        "PRQ" | "CSB" => {
            let tau = need()?;
            if !(0.0..=1.0).contains(&tau) {
                return Err(StateError::BadParameter(format!("tau={tau} outside [0,1]")));
            }
            let ct = 1.0 / (1.0 + tau).sqrt();
            let st = (1.0 - ct * ct).sqrt();
            let b = [lin(ct, Z, st, X), lin(ct, Z, -st, X)];
            if name == "PRQ" {
                vec![[Z, X], b]
            } else {
                vec![[lin(h, Z, h, X), lin(h, Z, -h, X)], b]
            }
        }
        "MSb" => vec![[X, Y], [X, Y]],
        "MSb1" => vec![[X, neg(Y)], [Y, X]],
        "CSB2" => vec![[lin(h, Z, h, X), lin(h, Z, -h, X)], [lin(h, Z, -h, X), lin(h, Z, h, X)]],
        "ZSb1" => vec![[Z, X], [lin(h, Z, h, X), lin(h, Z, -h, X)]],
        "meb1" => {
            let p = need()?;
            let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
            vec![[X, Y], [lin(sp, X, -sq, Y), lin(sq, X, sp, Y)]]
        }
        "0BMSb" => {
            let th = need()?;
            let (s, c) = ((2.0 * th).sin(), (2.0 * th).cos());
            vec![[lin(s, X, c, Y), lin(c, X, -s, Y)], [lin(h, X, h, Y), lin(h, X, -h, Y)]]
        }
        "0BMSb1" => {
            let th = need()?;
            let (s, c) = ((2.0 * th).sin(), (2.0 * th).cos());
            vec![[lin(c, X, s, Z), lin(s, X, -c, Z)], [lin(h, X, h, Z), lin(-h, X, h, Z)]]
        }
        "BMW" => {
            let p = need()?;
            let q = (1.0 - p * p).sqrt();
            vec![[lin(p, X, q, Y), lin(q, X, -p, Y)], [lin(h, X, h, Y), lin(h, X, -h, Y)]]
        }
        "BMWb1" => {
            let p = need()?;
            let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
            vec![[lin(sp, X, sq, Y), lin(sq, X, -sp, Y)], [lin(h, X, h, Y), lin(h, X, -h, Y)]]
        }
        "M_C" => vec![[X, Y], [neg(Y), X]],
        "SDxy" => vec![[X, Y], xy_pm, [X, Y]],
        "SDxz" => vec![[Z, X], [lin(h, Z, h, X), lin(h, Z, -h, X)], [Z, X]],
        "MDxy" => vec![[X, Y], [X, Y], [X, Y]],
        "MDxz" => vec![[Z, X], [Z, X], [Z, X]],
        "Ghose" => {
            let th3 = need()?;
            let (s3, c3) = (th3.sin(), th3.cos());
            let n = (1.0 + s3 * s3).sqrt();
            let c = |sy: f64| [s3 / n, sy * s3 / n, c3 / n];
            vec![[lin(h, X, h, Y), lin(h, X, -h, Y)], [lin(h, X, -h, Y), lin(h, X, h, Y)], [c(-1.0), c(1.0)]]
        }
        "class99" => {
            let th = need()?;
            let ct = 1.0 / (1.0 + (2.0 * th).sin().powi(2)).sqrt();
            let st = (1.0 - ct * ct).sqrt();
            vec![[Z, X], [lin(ct, Z, st, X), lin(ct, Z, -st, X)], [Z, X]]
        }
        "SMDghz" => {
            let p = need()?;
            let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
            vec![[X, Y], [lin(sp, X, -sq, Y), lin(sq, X, sp, Y)], [X, Y]]
        }
        "SMghz" => {
            let th = need()?;
            let (s, c) = ((2.0 * th).sin(), (2.0 * th).cos());
            vec![[X, Y], [lin(s, X, -c, Y), lin(c, X, s, Y)], [X, Y]]
        }
        _ => return Err(StateError::UnknownName(name.to_string())),
    };
    MeasurementSettings::new(dirs)
}

/// Parse `"NAME"` or `"NAME(value)"`.
pub fn settings_by_spec(spec: &str) -> Result<MeasurementSettings, StateError> {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        let close = spec.rfind(')').ok_or_else(|| StateError::UnknownName(spec.to_string()))?;
        let v: f64 = spec[open + 1..close]
            .trim()
            .parse()
            .map_err(|_| StateError::BadParameter(format!("cannot parse parameter in {spec}")))?;
        settings_catalog(&spec[..open], Some(v))
    } else {
        settings_catalog(spec, None)
    }
}

fn bloch_of(u: [C; 2]) -> [f64; 3] {
    let cross = u[0].conj() * u[1];
    [2.0 * cross.re, 2.0 * cross.im, u[0].norm_sqr() - u[1].norm_sqr()]
}

/// Hardy test for `b|01⟩ + c|10⟩ + d|11⟩`: `A0 = B0 = σz`, and `A1`, `B1` chosen so that
/// `P(++|A0B0) = P(+−|A1B0) = P(−+|A0B1) = 0`.
pub fn hardy_settings(b: C, c: C, d: C) -> Result<MeasurementSettings, StateError> {
    let na = (b.norm_sqr() + d.norm_sqr()).sqrt();
    let nb = (c.norm_sqr() + d.norm_sqr()).sqrt();
    if na < 1e-12 || nb < 1e-12 {
        return Err(StateError::DegenerateState("Hardy measurement undefined for b=d=0 or c=d=0".into()));
    }
    let a_plus = [d.conj() / na, -b.conj() / na];
    let b_plus = [d.conj() / nb, -c.conj() / nb];
    MeasurementSettings::new(vec![[Z, bloch_of(a_plus)], [Z, bloch_of(b_plus)]])
}

/// Box of the Hardy test on the normalized state `b|01⟩ + c|10⟩ + d|11⟩`.
pub fn hardy_box(b: C, c: C, d: C) -> Result<BipartiteBox, StateError> {
    let norm = b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(StateError::InvalidState(format!("Hardy state has squared norm {norm}")));
    }
    let rho = StateFamily::Hardy { b, c, d }.density()?;
    born_box2(&rho, &hardy_settings(b, c, d)?)
}

/// `P(++|A1B1)` of the Hardy test after checking the three zero constraints.
pub fn hardy_probability(b: C, c: C, d: C) -> Result<f64, StateError> {
    let p = hardy_box(b, c, d)?;
    let zeros = [p.get(0, 0, 0, 0), p.get(1, 0, 0, 1), p.get(0, 1, 1, 0)];
    if let Some(z) = zeros.iter().find(|z| **z > 1e-9) {
        return Err(StateError::InvalidState(format!("Hardy constraint violated by {z:e}")));
    }
    Ok(p.get(1, 1, 0, 0))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EntanglementParams {
    pub tangle: Option<f64>,
    pub concurrence: Option<f64>,
    pub three_tangle: Option<f64>,
    pub c12: Option<f64>,
    pub c13: Option<f64>,
    pub c23: Option<f64>,
    /// Smallest pairwise concurrence of assistance.
    pub c_min: Option<f64>,
}

/// Closed-form entanglement parameters of the catalog families.
pub fn entanglement_params(f: &StateFamily) -> Result<EntanglementParams, StateError> {
    let two = |c: f64| EntanglementParams { tangle: Some(c * c), concurrence: Some(c), ..Default::default() };
    Ok(match f {
        StateFamily::Schmidt { theta } => two((2.0 * theta).sin().abs()),
        StateFamily::Werner2 { p } => two(((3.0 * p - 1.0) / 2.0).max(0.0)),
        StateFamily::BellCC { p } => two(*p),
        StateFamily::BellDiagonal { weights } => {
            two((2.0 * weights.iter().cloned().fold(0.0, f64::max) - 1.0).max(0.0))
        }
        StateFamily::Cq { .. } | StateFamily::Qc { .. } => two(0.0),
        StateFamily::Hardy { b, c, .. } => two(2.0 * (b * c).norm()),
        StateFamily::Gghz { theta } => EntanglementParams {
            three_tangle: Some((2.0 * theta).sin().powi(2)),
            c12: Some(0.0),
            c13: Some(0.0),
            c23: Some(0.0),
            ..Default::default()
        },
        StateFamily::GhzClass { theta, theta3 } => EntanglementParams {
            three_tangle: Some(((2.0 * theta).sin() * theta3.sin()).powi(2)),
            c12: Some((2.0 * theta).sin() * theta3.cos()),
            ..Default::default()
        },
        StateFamily::WClass { a, b, c } => {
            let (c12, c13, c23) = (2.0 * a * b, 2.0 * a * c, 2.0 * b * c);
            EntanglementParams {
                three_tangle: Some(0.0),
                c12: Some(c12.abs()),
                c13: Some(c13.abs()),
                c23: Some(c23.abs()),
                c_min: Some(c12.abs().min(c13.abs()).min(c23.abs())),
                ..Default::default()
            }
        }
        _ => return Err(StateError::Unsupported(format!("no closed form for {f:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_are_unit() {
        for name in SETTINGS_NAMES {
            let (n, param) = match name.strip_suffix('*') {
                Some(n) => (n, Some(0.6)),
                None => (*name, None),
            };
            settings_catalog(n, param).unwrap();
        }
    }

    #[test]
    fn bsb_vectors() {
        let s = settings_catalog("BSb", None).unwrap();
        assert_eq!(s.dirs[0], [X, Y]);
        assert!((s.dirs[1][0][0] - FRAC_1_SQRT_2).abs() < 1e-15 && (s.dirs[1][0][1] + FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut e = vec![C::new(0.0, 0.0); 16];
        e[0] = re(1.0);
        e[1] = re(0.3);
        assert!(DensityMatrix::new(4, e).is_err());
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let mut e = vec![C::new(0.0, 0.0); 16];
        e[0] = re(1.2);
        e[5] = re(-0.2);
        assert!(matches!(DensityMatrix::new(4, e), Err(StateError::InvalidState(_))));
    }

    #[test]
    fn qubit_state_trace_one() {
        let q = qubit_state(&[0.3, 0.0, 0.4]).unwrap();
        assert!((q.trace().re - 1.0).abs() < 1e-15);
        assert!((q.get(0, 0).re - 0.7).abs() < 1e-15);
    }
}

//! Seeded random boxes, states and settings.
//!
//! Random NS boxes are convex mixtures of a vertex set with weights `wᵢ^k / Σ wᵢ^k`,
//! `wᵢ ~ Exp(1)`. `k = 1` is the flat Dirichlet distribution; larger `k` pushes samples
//! toward the polytope boundary.

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::boxcore::{vertex, BipartiteBox, VertexId};
use crate::polytope::VertexSet;
use crate::qstate::linalg::{projector, CMat};
use crate::qstate::{DensityMatrix, MeasurementSettings, StateError};
use crate::tribox::TripartiteBox;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn exp_weights<R: Rng>(rng: &mut R, n: usize, sharpness: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..n)
        .map(|_| {
            let e: f64 = Exp1.sample(rng);
            e.powf(sharpness)
        })
        .collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

fn mix_flat(tables: &[Vec<f64>], w: &[f64], len: usize) -> Vec<f64> {
    let mut p = vec![0.0; len];
    for (t, wi) in tables.iter().zip(w) {
        for (pi, ti) in p.iter_mut().zip(t) {
            *pi += wi * ti;
        }
    }
    p
}

/// Random bipartite NS box over the 24 NS vertices.
pub fn random_ns_box<R: Rng>(rng: &mut R, sharpness: f64) -> BipartiteBox {
    let tables: Vec<Vec<f64>> = VertexId::ns_vertices().into_iter().map(|v| vertex(v).flat().to_vec()).collect();
    let w = exp_weights(rng, tables.len(), sharpness);
    let p = mix_flat(&tables, &w, 16);
    BipartiteBox::new(p.try_into().expect("16 entries")).expect("convex mixture of vertices")
}

/// Random tripartite box over a tripartite vertex set.
pub fn random_tri_box<R: Rng>(rng: &mut R, set: VertexSet, sharpness: f64) -> TripartiteBox {
    let tables = set.tables();
    let w = exp_weights(rng, tables.len(), sharpness);
    let p = mix_flat(&tables, &w, 64);
    TripartiteBox::new(p.try_into().expect("64 entries")).expect("convex mixture of vertices")
}

pub fn random_unit_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Uniform point in the Bloch ball.
pub fn random_bloch_ball<R: Rng>(rng: &mut R) -> [f64; 3] {
    let u = random_unit_vector(rng);
    let r = rng.random::<f64>().cbrt();
    [r * u[0], r * u[1], r * u[2]]
}

pub fn random_settings<R: Rng>(rng: &mut R, parties: usize) -> MeasurementSettings {
    let dirs = (0..parties).map(|_| [random_unit_vector(rng), random_unit_vector(rng)]).collect();
    MeasurementSettings::new(dirs).expect("unit vectors")
}

/// Settings where every party measures the same observable for both inputs.
pub fn random_compatible_settings<R: Rng>(rng: &mut R, parties: usize) -> MeasurementSettings {
    let dirs = (0..parties)
        .map(|_| {
            let v = random_unit_vector(rng);
            [v, v]
        })
        .collect();
    MeasurementSettings::new(dirs).expect("unit vectors")
}

fn gaussian_c<R: Rng>(rng: &mut R) -> C {
    C::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random pure state (normalized complex Gaussian amplitudes).
pub fn random_ket<R: Rng>(rng: &mut R, dim: usize) -> Vec<C> {
    let v: Vec<C> = (0..dim).map(|_| gaussian_c(rng)).collect();
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / n).collect()
}

pub fn random_pure_state<R: Rng>(rng: &mut R, dim: usize) -> DensityMatrix {
    DensityMatrix::pure(&random_ket(rng, dim)).expect("normalized ket")
}

/// Hilbert-Schmidt random mixed state `GG†/Tr(GG†)` with a Ginibre matrix `G`.
pub fn random_mixed_state<R: Rng>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = CMat { n: dim, a: (0..dim * dim).map(|_| gaussian_c(rng)).collect() };
    let mut gd = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            gd.a[i * dim + j] = g.get(j, i).conj();
        }
    }
    let m = g.mul(&gd);
    let tr = m.trace().re;
    let mut m = m.scale(1.0 / tr);
    // Symmetrize away rounding so the Hermiticity check sees an exact Hermitian matrix.
    for i in 0..dim {
        for j in i..dim {
            let v = 0.5 * (m.get(i, j) + m.get(j, i).conj());
            m.a[i * dim + j] = v;
            m.a[j * dim + i] = v.conj();
        }
    }
    DensityMatrix::from_cmat(m).expect("positive by construction")
}

/// Classical-quantum state `Σᵢ pᵢ |eᵢ⟩⟨eᵢ| ⊗ ρᵢ` with a random basis `{|e₀⟩, |e₁⟩}` on the
/// first qubit and random mixed states `ρᵢ` on the remaining `qubits − 1`.
pub fn random_cq<R: Rng>(rng: &mut R, qubits: usize) -> Result<DensityMatrix, StateError> {
    let n = random_unit_vector(rng);
    let p: f64 = rng.random();
    let rest = 1usize << (qubits - 1);
    let (r0, r1) = (random_mixed_state_any(rng, rest), random_mixed_state_any(rng, rest));
    let m = projector(&n, 0).kron(&r0).scale(p).add(&projector(&n, 1).kron(&r1).scale(1.0 - p));
    DensityMatrix::from_cmat(m)
}

/// Quantum-classical state: the classical register is the last qubit.
pub fn random_qc<R: Rng>(rng: &mut R, qubits: usize) -> Result<DensityMatrix, StateError> {
    let n = random_unit_vector(rng);
    let p: f64 = rng.random();
    let rest = 1usize << (qubits - 1);
    let (r0, r1) = (random_mixed_state_any(rng, rest), random_mixed_state_any(rng, rest));
    let m = r0.kron(&projector(&n, 0)).scale(p).add(&r1.kron(&projector(&n, 1)).scale(1.0 - p));
    DensityMatrix::from_cmat(m)
}

fn random_mixed_state_any<R: Rng>(rng: &mut R, dim: usize) -> CMat {
    if dim == 2 {
        return projector(&random_bloch_ball(rng), 0);
    }
    random_mixed_state(rng, dim).matrix().clone()
}

/// Flat Dirichlet weights for the eight Bell-diagonal components.
pub fn random_bell_diagonal_weights<R: Rng>(rng: &mut R) -> [f64; 8] {
    exp_weights(rng, 8, 1.0).try_into().expect("8 weights")
}

//! Dense complex square matrices for up to three qubits.

use num_complex::Complex64 as C;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    /// Row-major.
    pub a: Vec<C>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, a: vec![C::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[C]]) -> Self {
        let n = rows.len();
        CMat { n, a: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    /// `|ψ⟩⟨ψ|`
    pub fn outer(psi: &[C]) -> Self {
        let n = psi.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i * n + j] = psi[i] * psi[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C {
        self.a[r * self.n + c]
    }

    pub fn kron(&self, o: &CMat) -> CMat {
        let n = self.n * o.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let s = self.get(i, j);
                for k in 0..o.n {
                    for l in 0..o.n {
                        m.a[(i * o.n + k) * n + j * o.n + l] = s * o.get(k, l);
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let s = self.get(i, k);
                if s == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m.a[i * n + j] += s * o.get(k, j);
                }
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> CMat {
        CMat { n: self.n, a: self.a.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, o: &CMat) -> CMat {
        CMat { n: self.n, a: self.a.iter().zip(&o.a).map(|(u, v)| u + v).collect() }
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(self · o)` without forming the product.
    pub fn trace_product(&self, o: &CMat) -> C {
        let n = self.n;
        let mut s = C::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                s += self.get(i, k) * o.get(k, i);
            }
        }
        s
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.n;
        let mut e: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                e = e.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        e
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        // [[Re, −Im], [Im, Re]] is real symmetric with each eigenvalue doubled.
        let n = self.n;
        let m = 2 * n;
        let mut s = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                s[i * m + j] = v.re;
                s[(i + n) * m + j + n] = v.re;
                s[i * m + j + n] = -v.im;
                s[(i + n) * m + j] = v.im;
            }
        }
        let mut ev = jacobi_eigenvalues(&mut s, m);
        ev.sort_by(|a, b| a.total_cmp(b));
        ev.into_iter().step_by(2).collect()
    }
}

/// Cyclic Jacobi rotations on a symmetric `m×m` matrix (destroyed).
pub fn jacobi_eigenvalues(s: &mut [f64], m: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    off += s[i * m + j] * s[i * m + j];
                }
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let akp = s[k * m + p];
                    let akq = s[k * m + q];
                    s[k * m + p] = c * akp - sn * akq;
                    s[k * m + q] = sn * akp + c * akq;
                }
                for k in 0..m {
                    let apk = s[p * m + k];
                    let aqk = s[q * m + k];
                    s[p * m + k] = c * apk - sn * aqk;
                    s[q * m + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|i| s[i * m + i]).collect()
}

pub fn pauli(k: usize) -> CMat {
    let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    match k {
        0 => CMat::identity(2),
        1 => CMat::from_rows(&[&[o, l], &[l, o]]),
        2 => CMat::from_rows(&[&[o, -i], &[i, o]]),
        _ => CMat::from_rows(&[&[l, o], &[o, -l]]),
    }
}

/// `½(𝟙 + s n·σ)` with `s = +1` for output bit 0.
pub fn projector(n: &[f64; 3], bit: usize) -> CMat {
    let s = if bit == 0 { 0.5 } else { -0.5 };
    let mut m = pauli(0).scale(0.5);
    for (k, nk) in n.iter().enumerate() {
        m = m.add(&pauli(k + 1).scale(s * nk));
    }
    m
}

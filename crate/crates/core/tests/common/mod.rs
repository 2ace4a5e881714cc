//! Independent reference implementations used as test oracles.
//!
//! Everything here is written from the defining formulas, with explicit loops
//! over (x, y, a, b) and no shared helpers from the library.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type Table2 = [[[[f64; 2]; 2]; 2]; 2];
pub type Table3 = [[[[[[f64; 2]; 2]; 2]; 2]; 2]; 2];

pub fn flat2(t: &Table2) -> [f64; 16] {
    let mut out = [0.0; 16];
    let mut k = 0;
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    out[k] = t[x][y][a][b];
                    k += 1;
                }
            }
        }
    }
    out
}

pub fn flat3(t: &Table3) -> [f64; 64] {
    let mut out = [0.0; 64];
    let mut k = 0;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        for c in 0..2 {
                            out[k] = t[x][y][z][a][b][c];
                            k += 1;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn unflat2(p: &[f64; 16]) -> Table2 {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    t[x][y][a][b] = p[8 * x + 4 * y + 2 * a + b];
                }
            }
        }
    }
    t
}

/// `a⊕b = xy ⊕ αx ⊕ βy ⊕ γ`
pub fn pr(al: usize, be: usize, ga: usize) -> Table2 {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    if a ^ b == (x & y) ^ (al & x) ^ (be & y) ^ ga {
                        t[x][y][a][b] = 0.5;
                    }
                }
            }
        }
    }
    t
}

pub fn det(al: usize, be: usize, ga: usize, ep: usize) -> Table2 {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            t[x][y][(al & x) ^ be][(ga & y) ^ ep] = 1.0;
        }
    }
    t
}

pub fn mix2(parts: &[(f64, Table2)]) -> Table2 {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for (w, p) in parts {
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        t[x][y][a][b] += w * p[x][y][a][b];
                    }
                }
            }
        }
    }
    t
}

pub fn noise2() -> Table2 {
    [[[[0.25; 2]; 2]; 2]; 2]
}

pub fn corr(t: &Table2, x: usize, y: usize) -> f64 {
    t[x][y][0][0] - t[x][y][0][1] - t[x][y][1][0] + t[x][y][1][1]
}

pub fn marg_a(t: &Table2, x: usize) -> f64 {
    (t[x][0][0][0] + t[x][0][0][1]) - (t[x][0][1][0] + t[x][0][1][1])
}

pub fn marg_b(t: &Table2, y: usize) -> f64 {
    (t[0][y][0][0] + t[0][y][1][0]) - (t[0][y][0][1] + t[0][y][1][1])
}

/// Signed CHSH: `Σ_xy (−1)^{xy ⊕ αx ⊕ βy ⊕ γ} ⟨A_xB_y⟩`.
pub fn chsh(t: &Table2, al: usize, be: usize, ga: usize) -> f64 {
    let mut s = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let e = (x & y) ^ (al & x) ^ (be & y) ^ ga;
            s += if e == 0 { 1.0 } else { -1.0 } * corr(t, x, y);
        }
    }
    s
}

/// `|B_αβ0|` in the order 00, 01, 10, 11.
pub fn bell_fns(t: &Table2) -> [f64; 4] {
    [chsh(t, 0, 0, 0).abs(), chsh(t, 0, 1, 0).abs(), chsh(t, 1, 0, 0).abs(), chsh(t, 1, 1, 0).abs()]
}

/// Mermin functions in the order 00, 01, 10, 11 with
/// `m00 = |E00 − E11|`, `m01 = |E01 − E10|`, `m10 = |E00 + E11|`, `m11 = |E01 + E10|`.
pub fn mermin_fns(t: &Table2) -> [f64; 4] {
    let e = |x, y| corr(t, x, y);
    [(e(0, 0) - e(1, 1)).abs(), (e(0, 1) - e(1, 0)).abs(), (e(0, 0) + e(1, 1)).abs(), (e(0, 1) + e(1, 0)).abs()]
}

/// Minimum over all 24 orderings of `||f_a − f_b| − |f_c − f_d||`.
pub fn discord_from(f: &[f64; 4]) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct {
                        best = best.min(((f[a] - f[b]).abs() - (f[c] - f[d]).abs()).abs());
                    }
                }
            }
        }
    }
    best
}

pub fn bell_discord(t: &Table2) -> f64 {
    discord_from(&bell_fns(t))
}

pub fn mermin_discord(t: &Table2) -> f64 {
    discord_from(&mermin_fns(t))
}

/// Fine: local iff every signed CHSH value is at most 2.
pub fn local_by_chsh(t: &Table2) -> bool {
    (0..8).all(|k| chsh(t, k >> 2, (k >> 1) & 1, k & 1) <= 2.0 + 1e-12)
}

/// H-representation of the NS polytope: positivity, normalization, no signaling.
pub fn ns_ok(t: &Table2, tol: f64) -> bool {
    for x in 0..2 {
        for y in 0..2 {
            let s: f64 = t[x][y].iter().flatten().sum();
            if (s - 1.0).abs() > tol || t[x][y].iter().flatten().any(|v| *v < -tol) {
                return false;
            }
        }
    }
    for x in 0..2 {
        for a in 0..2 {
            if ((t[x][0][a][0] + t[x][0][a][1]) - (t[x][1][a][0] + t[x][1][a][1])).abs() > tol {
                return false;
            }
        }
    }
    for y in 0..2 {
        for b in 0..2 {
            if ((t[0][y][0][b] + t[0][y][1][b]) - (t[1][y][0][b] + t[1][y][1][b])).abs() > tol {
                return false;
            }
        }
    }
    true
}

// ---- qubits ----

pub type M2 = [[C; 2]; 2];

pub fn sigma(n: &[f64; 3]) -> M2 {
    [
        [C::new(n[2], 0.0), C::new(n[0], -n[1])],
        [C::new(n[0], n[1]), C::new(-n[2], 0.0)],
    ]
}

/// Projector for outcome bit `bit` of `n·σ`.
pub fn proj(n: &[f64; 3], bit: usize) -> M2 {
    let s = sigma(n);
    let sg = if bit == 0 { 0.5 } else { -0.5 };
    let mut p = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            p[i][j] = s[i][j] * sg + if i == j { C::new(0.5, 0.0) } else { C::new(0.0, 0.0) };
        }
    }
    p
}

/// `⟨ψ| Π_1 ⊗ … ⊗ Π_k |ψ⟩` for a pure state, by explicit index sums.
pub fn expect_pure(psi: &[C], ops: &[M2]) -> f64 {
    let k = ops.len();
    let dim = 1 << k;
    let mut s = C::new(0.0, 0.0);
    for r in 0..dim {
        for c in 0..dim {
            let mut m = C::new(1.0, 0.0);
            for (q, op) in ops.iter().enumerate() {
                let sh = k - 1 - q;
                m *= op[(r >> sh) & 1][(c >> sh) & 1];
            }
            s += psi[r].conj() * m * psi[c];
        }
    }
    s.re
}

/// `Tr(ρ Π_1 ⊗ … ⊗ Π_k)` for a density matrix given row-major.
pub fn expect_mixed(rho: &[C], ops: &[M2]) -> f64 {
    let k = ops.len();
    let dim = 1 << k;
    let mut s = C::new(0.0, 0.0);
    for r in 0..dim {
        for c in 0..dim {
            let mut m = C::new(1.0, 0.0);
            for (q, op) in ops.iter().enumerate() {
                let sh = k - 1 - q;
                m *= op[(c >> sh) & 1][(r >> sh) & 1];
            }
            s += rho[r * dim + c] * m;
        }
    }
    s.re
}

pub fn born2_pure(psi: &[C], a: &[[f64; 3]; 2], b: &[[f64; 3]; 2]) -> Table2 {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for oa in 0..2 {
                for ob in 0..2 {
                    t[x][y][oa][ob] = expect_pure(psi, &[proj(&a[x], oa), proj(&b[y], ob)]);
                }
            }
        }
    }
    t
}

pub fn born3_pure(psi: &[C], s: &[[[f64; 3]; 2]; 3]) -> Table3 {
    let mut t = [[[[[[0.0; 2]; 2]; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        for c in 0..2 {
                            t[x][y][z][a][b][c] =
                                expect_pure(psi, &[proj(&s[0][x], a), proj(&s[1][y], b), proj(&s[2][z], c)]);
                        }
                    }
                }
            }
        }
    }
    t
}

pub fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

// ---- tripartite ----

/// `a⊕b⊕c = xy⊕xz⊕yz⊕αx⊕βy⊕γz⊕ε`
pub fn sv(al: usize, be: usize, ga: usize, ep: usize) -> Table3 {
    let mut t = [[[[[[0.0; 2]; 2]; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        for c in 0..2 {
                            let rhs = (x & y) ^ (x & z) ^ (y & z) ^ (al & x) ^ (be & y) ^ (ga & z) ^ ep;
                            if a ^ b ^ c == rhs {
                                t[x][y][z][a][b][c] = 0.25;
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

pub fn corr3(t: &Table3, x: usize, y: usize, z: usize) -> f64 {
    let mut s = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                s += if (a ^ b ^ c) == 0 { 1.0 } else { -1.0 } * t[x][y][z][a][b][c];
            }
        }
    }
    s
}

/// Signed Svetlichny operator.
pub fn svetlichny(t: &Table3, al: usize, be: usize, ga: usize, ep: usize) -> f64 {
    let mut s = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                let e = (x & y) ^ (x & z) ^ (y & z) ^ (al & x) ^ (be & y) ^ (ga & z) ^ ep;
                s += if e == 0 { 1.0 } else { -1.0 } * corr3(t, x, y, z);
            }
        }
    }
    s
}

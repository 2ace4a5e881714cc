mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use boxlab_core::boxcore::{mix, vertex, VertexId};
use boxlab_core::discord2::{bell_discord, mermin_discord};
use boxlab_core::qstate::*;
use boxlab_core::sample::{random_compatible_settings, random_cq, random_ket, random_mixed_state, random_qc, random_settings, seeded};
use common::{born2_pure, dot, expect_mixed, flat2, proj, Table2};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn rho_entries(rho: &DensityMatrix) -> Vec<C> {
    let d = rho.dim();
    (0..d * d).map(|k| rho.get(k / d, k % d)).collect()
}

fn born2_mixed(rho: &DensityMatrix, s: &MeasurementSettings) -> Table2 {
    let e = rho_entries(rho);
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    t[x][y][a][b] = expect_mixed(&e, &[proj(&s.dirs[0][x], a), proj(&s.dirs[1][y], b)]);
                }
            }
        }
    }
    t
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

#[test]
fn singlet_correlations() {
    let s = [C::new(0.0, 0.0), re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2), C::new(0.0, 0.0)];
    let rho = DensityMatrix::pure(&s).unwrap();
    let mut rng = seeded(7);
    for _ in 0..20 {
        let st = random_settings(&mut rng, 2);
        let b = born_box2(&rho, &st).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let want = -dot(&st.dirs[0][x], &st.dirs[1][y]);
                assert!((b.joint_expectation(x, y) - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn bell_state_catalog_boxes() {
    let rho = StateFamily::Schmidt { theta: FRAC_PI_4 }.density().unwrap();
    let b = born_box2(&rho, &settings_catalog("BSb", None).unwrap()).unwrap();
    assert!(b.max_abs_diff(&vertex(VertexId::Tsirelson(0, 0, 0))) < 1e-12);
    assert!((bell_discord(&b) - 2.0 * SQRT_2).abs() < 1e-12);

    let mc = born_box2(&rho, &settings_catalog("M_C", None).unwrap()).unwrap();
    let half = mix(&[vertex(VertexId::Pr(0, 0, 0)), vertex(VertexId::Pr(1, 1, 1))], &[0.5, 0.5]).unwrap();
    assert!(mc.max_abs_diff(&half) < 1e-12);
    assert!((mermin_discord(&mc) - 2.0).abs() < 1e-12);
    assert!(bell_discord(&mc).abs() < 1e-12);
}

#[test]
fn schmidt_prq_weight() {
    for theta in [0.1, 0.4, 0.7, FRAC_PI_4] {
        let tau = (2.0 * theta).sin().powi(2);
        let rho = StateFamily::Schmidt { theta }.density().unwrap();
        let b = born_box2(&rho, &settings_catalog("PRQ", Some(tau)).unwrap()).unwrap();
        assert!((bell_discord(&b) - 4.0 * tau / (1.0 + tau).sqrt()).abs() < 1e-12, "theta={theta}");
        let best = (0..8u8).map(|k| boxlab_core::discord2::chsh_value(&b, k >> 2, k >> 1 & 1, k & 1)).fold(f64::MIN, f64::max);
        assert!((best - 2.0 * (1.0 + tau).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn correlation_matrix_shortcut() {
    // for a state with vanishing local Bloch vectors, E_xy = a_x·T·b_y
    let mut rng = seeded(19);
    let w = [0.4, 0.1, 0.3, 0.05, 0.05, 0.04, 0.03, 0.03];
    let rho = StateFamily::BellDiagonal { weights: w }.density().unwrap();
    let t = rho.pauli_tensor();
    for _ in 0..10 {
        let st = random_settings(&mut rng, 2);
        let b = born_box2(&rho, &st).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let (u, v) = (st.dirs[0][x], st.dirs[1][y]);
                let mut e = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        e += u[i] * t[4 * (i + 1) + (j + 1)] * v[j];
                    }
                }
                assert!((b.joint_expectation(x, y) - e).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn hardy_examples() {
    let s = re(1.0 / 3f64.sqrt());
    assert!((hardy_probability(s, s, s).unwrap() - 1.0 / 12.0).abs() < 1e-12);
    let h = re(FRAC_1_SQRT_2);
    assert!(hardy_probability(h, h, re(0.0)).unwrap().abs() < 1e-12);
    assert!(hardy_probability(re(0.0), h, h).unwrap().abs() < 1e-12);
    assert!(hardy_box(re(1.0), re(1.0), re(1.0)).is_err());
    assert!(hardy_settings(re(0.0), re(1.0), re(0.0)).is_err());
}

#[test]
fn entanglement_examples() {
    let e = entanglement_params(&StateFamily::Schmidt { theta: FRAC_PI_4 }).unwrap();
    assert!((e.tangle.unwrap() - 1.0).abs() < 1e-12);
    let e = entanglement_params(&StateFamily::Werner2 { p: 0.2 }).unwrap();
    assert_eq!(e.concurrence, Some(0.0));
    let e = entanglement_params(&StateFamily::Gghz { theta: FRAC_PI_4 }).unwrap();
    assert!((e.three_tangle.unwrap() - 1.0).abs() < 1e-12);
    let t = 1.0 / 3f64.sqrt();
    let e = entanglement_params(&StateFamily::WClass { a: t, b: t, c: t }).unwrap();
    assert!((e.c_min.unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(e.three_tangle, Some(0.0));
}

#[test]
fn density_validation() {
    let base = |edits: &[(usize, C)]| {
        let mut e = vec![C::new(0.0, 0.0); 16];
        for i in 0..4 {
            e[5 * i] = re(0.25);
        }
        for (k, v) in edits {
            e[*k] = *v;
        }
        DensityMatrix::new(4, e)
    };
    assert!(base(&[]).is_ok());
    // not Hermitian
    assert!(base(&[(1, re(0.1))]).is_err());
    // trace two
    assert!(base(&[(0, re(1.25))]).is_err());
    // negative eigenvalue
    assert!(base(&[(1, re(0.4)), (4, re(0.4))]).is_err());
    assert!(base(&[(1, C::new(0.0, -0.2)), (4, C::new(0.0, 0.2))]).is_ok());
    assert!(DensityMatrix::new(2, vec![re(0.5), re(0.0), re(0.0), re(0.5)]).is_err());
    assert_eq!(DensityMatrix::maximally_mixed(8).qubits(), 3);
}

#[test]
fn catalog_names_resolve() {
    for name in SETTINGS_NAMES {
        let (n, need) = name.strip_suffix('*').map_or((*name, false), |n| (n, true));
        let p = match n {
            "0BMSb" | "0BMSb1" | "class99" | "SMghz" | "Ghose" => 0.3,
            _ => 0.6,
        };
        assert!(settings_catalog(n, Some(p)).is_ok(), "{n}");
        assert_eq!(settings_catalog(n, None).is_err(), need, "{n}");
    }
    assert!(settings_by_spec("PRQ(0.5)").is_ok());
    assert!(settings_by_spec("PRQ(").is_err());
    assert!(settings_catalog("nope", None).is_err());
    for name in FAMILY_NAMES {
        let params: Vec<(String, f64)> = match name.to_lowercase().as_str() {
            "schmidt" | "gghz" => vec![("theta".into(), 0.3)],
            "werner2" | "bellcc" | "werner3" => vec![("p".into(), 0.4)],
            "ghzclass" => vec![("theta".into(), 0.3), ("theta3".into(), 0.5)],
            "wclass" => vec![("a".into(), 0.6), ("b".into(), 0.6), ("c".into(), 0.28f64.sqrt())],
            "ghzwmix" => vec![("p".into(), 0.4), ("q".into(), 0.6)],
            "hardy" => vec![("b".into(), 0.6), ("c".into(), 0.6), ("d".into(), 0.28f64.sqrt())],
            _ => vec![],
        };
        let f = StateFamily::from_params(name, &params).unwrap_or_else(|e| panic!("{name}: {e}"));
        let rho = f.density().unwrap();
        let tr: f64 = (0..rho.dim()).map(|i| rho.get(i, i).re).sum();
        assert!((tr - 1.0).abs() < 1e-12, "{name}");
    }
}

/// Classical-quantum states with incompatible settings can give nonzero discord:
/// their correlations factor as `E_xy = u_x v_y`, and the pairings then need not cancel.
#[test]
fn cq_states_can_have_bell_discord() {
    let mut rng = seeded(23);
    let (mut g_max, mut q_max): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let rho = if g_max < 0.1 { random_cq(&mut rng, 2) } else { random_qc(&mut rng, 2) }.unwrap();
        let st = random_settings(&mut rng, 2);
        let t = born2_mixed(&rho, &st);
        g_max = g_max.max(common::bell_discord(&t));
        q_max = q_max.max(common::mermin_discord(&t));
        let b = born_box2(&rho, &st).unwrap();
        assert!((bell_discord(&b) - common::bell_discord(&t)).abs() < 1e-12);
    }
    assert!(g_max > 0.1 && q_max > 0.1, "{g_max} {q_max}");
}

#[test]
fn compatible_settings_give_zero_discord() {
    let mut rng = seeded(29);
    for _ in 0..200 {
        let rho = random_mixed_state(&mut rng, 4);
        let st = random_compatible_settings(&mut rng, 2);
        let t = born2_mixed(&rho, &st);
        assert!(common::bell_discord(&t) < 1e-12);
        assert!(common::mermin_discord(&t) < 1e-12);
    }
}

fn arb_pure() -> impl Strategy<Value = Vec<C>> {
    any::<u64>().prop_map(|s| random_ket(&mut seeded(s), 4))
}

proptest! {
    #[test]
    fn born_pure_matches_oracle(psi in arb_pure(), s in any::<u64>()) {
        let st = random_settings(&mut seeded(s), 2);
        let rho = DensityMatrix::pure(&psi).unwrap();
        let want = flat2(&born2_pure(&psi, &st.dirs[0], &st.dirs[1]));
        prop_assert!(max_diff(born_box2(&rho, &st).unwrap().flat(), &want) < 1e-12);
        prop_assert!(max_diff(born_box2_direct(&rho, &st).unwrap().flat(), &want) < 1e-12);
    }

    #[test]
    fn born_mixed_matches_oracle(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let rho = random_mixed_state(&mut rng, 4);
        let st = random_settings(&mut rng, 2);
        let b = born_box2(&rho, &st).unwrap();
        prop_assert!(max_diff(b.flat(), &flat2(&born2_mixed(&rho, &st))) < 1e-12);
        let t = common::unflat2(b.flat());
        prop_assert!(common::ns_ok(&t, 1e-12));
    }

    #[test]
    fn hardy_matches_closed_form(v in prop::array::uniform6(-1.0f64..1.0)) {
        let (b, c, d) = (C::new(v[0], v[1]), C::new(v[2], v[3]), C::new(v[4], v[5]));
        let n = (b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
        prop_assume!(n > 0.1);
        let (b, c, d) = (b / n, c / n, d / n);
        prop_assume!(b.norm_sqr() + d.norm_sqr() > 1e-3 && c.norm_sqr() + d.norm_sqr() > 1e-3);
        let want = (b * c * d).norm_sqr() / ((b.norm_sqr() + d.norm_sqr()) * (c.norm_sqr() + d.norm_sqr()));
        prop_assert!((hardy_probability(b, c, d).unwrap() - want).abs() < 1e-10);
    }
}

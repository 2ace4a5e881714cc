//! Named scalar measures and the `measure` report.

use anyhow::{bail, Result};
use boxlab_core::discord2::*;
use boxlab_core::io::AnyBox;
use boxlab_core::polytope::{is_local, lp_vertex_decomposition, max_chsh, three_decomposition, VertexSet};
use boxlab_core::tribox::*;
use serde_json::{json, Value};

/// Measures accepted by `sweep --measures`.
pub const MEASURES: &[&str] = &["G", "Q", "T", "C", "chsh", "mermin", "svetlichny", "class99", "mu", "nu"];

fn signed(c: ClassicalCorrelation) -> f64 {
    match c.sign {
        CorrSign::Plus => c.value,
        CorrSign::Minus => -c.value,
    }
}

/// One scalar measure of a box. `C` is signed so that `T = G + Q + C`.
pub fn scalar(b: &AnyBox, name: &str) -> Result<f64> {
    Ok(match (b, name) {
        (AnyBox::Bi(p), "G") => bell_discord(p),
        (AnyBox::Bi(p), "Q") => mermin_discord(p),
        (AnyBox::Bi(p), "T") => total_correlation(p),
        (AnyBox::Bi(p), "C") => signed(classical_correlation(p)),
        (AnyBox::Bi(p), "chsh") => max_chsh(p).1,
        (AnyBox::Bi(p), "mermin") => mermin_functions(p).m.into_iter().fold(0.0, f64::max),
        (AnyBox::Bi(p), "mu") => three_decomposition(p)?.mu,
        (AnyBox::Bi(p), "nu") => three_decomposition(p)?.nu,
        (AnyBox::Tri(p), "G") => svetlichny_discord(p),
        (AnyBox::Tri(p), "Q") => mermin3_discord(p),
        (AnyBox::Tri(p), "T") => total_correlation3(p),
        (AnyBox::Tri(p), "C") => signed(classical_correlation3(p)),
        (AnyBox::Tri(p), "svetlichny") => max_svetlichny(p).1,
        (AnyBox::Tri(p), "mermin") => mermin3_functions(p).into_iter().fold(0.0, f64::max),
        (AnyBox::Tri(p), "class99") => class99_value(p),
        (AnyBox::Tri(p), "mu") => three_decomposition3(p)?.mu,
        (AnyBox::Tri(p), "nu") => three_decomposition3(p)?.nu,
        (_, m) if MEASURES.contains(&m) => bail!("measure `{m}` is not defined for this number of parties"),
        (_, m) => bail!("unknown measure `{m}` (known: {})", MEASURES.join(", ")),
    })
}

/// Full report as ordered key/value pairs.
pub fn measure(b: &AnyBox) -> Result<Vec<(String, Value)>> {
    let mut out: Vec<(String, Value)> = Vec::new();
    let mut put = |k: &str, v: Value| out.push((k.to_string(), v));
    match b {
        AnyBox::Bi(p) => {
            put("parties", json!(2));
            put("G", json!(bell_discord(p)));
            put("Q", json!(mermin_discord(p)));
            put("T", json!(total_correlation(p)));
            let c = classical_correlation(p);
            put("C", json!(c.value));
            put("C_sign", json!(c.sign));
            put("bell_functions", json!(bell_functions(p).b));
            put("mermin_functions", json!(mermin_functions(p).m));
            let chsh: Vec<f64> = (0..8u8).map(|k| chsh_value(p, k >> 2, k >> 1 & 1, k & 1)).collect();
            put("chsh", json!(chsh));
            let mermin: Vec<f64> = (0..8u8).map(|k| mermin_value(p, k >> 2, k >> 1 & 1, k & 1)).collect();
            put("mermin", json!(mermin));
            let local = is_local(p)?;
            put("local", json!(local.inside));
            if let Some(f) = local.violated_facet {
                put("violated_facet", json!(f.label));
                put("facet_margin", json!(f.margin));
            }
            put("steerable", json!(steering_check(p).steerable));
            put("monogamy_holds", json!(monogamy_checks(p).holds));
        }
        AnyBox::Tri(p) => {
            put("parties", json!(3));
            put("G", json!(svetlichny_discord(p)));
            put("Q", json!(mermin3_discord(p)));
            put("T", json!(total_correlation3(p)));
            let c = classical_correlation3(p);
            put("C", json!(c.value));
            put("C_sign", json!(c.sign));
            put("svetlichny_functions", json!(svetlichny_functions(p)));
            put("mermin_functions", json!(mermin3_functions(p)));
            put("class99", json!(class99_value(p)));
            let two_way = lp_vertex_decomposition(p.flat(), VertexSet::TwoWayLocal112)?;
            put("two_way_local", json!(two_way.inside));
            let (id, v) = max_svetlichny(p);
            put("max_svetlichny", json!(format!("{id}")));
            put("max_svetlichny_value", json!(v));
            put("ghz_paradox", json!(ghz_paradox_check(p)));
            let m = monogamy_checks3(p);
            put("monogamy_holds", json!(m.holds));
            put("marginal_monogamy_holds", json!(m.marginal_holds));
        }
    }
    Ok(out)
}

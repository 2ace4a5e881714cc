//! Parameter sweeps over a state family.

use anyhow::{anyhow, bail, Result};
use boxlab_core::qstate::{entanglement_params, StateFamily};
use clap::Args;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::input::{load_settings, parse_params, state_box};
use crate::report::scalar;
use crate::{fmt_num, Format};

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub family: String,
    /// Fixed family parameters `k=v`.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    /// Parameter to vary.
    #[arg(long)]
    pub vary: String,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    /// Settings name. Inside the parentheses `x` stands for the swept value and
    /// `tau` for the tangle (three-tangle for three qubits) of the current state,
    /// e.g. `PRQ(tau)`.
    #[arg(long)]
    pub settings: String,
    /// Comma-separated measures: G, Q, T, C, chsh, mermin, svetlichny, class99, mu, nu.
    #[arg(long, default_value = "G,Q,T")]
    pub measures: String,
}

fn settings_for(spec: &str, x: f64, family: &StateFamily) -> Result<String> {
    let Some((name, rest)) = spec.split_once('(') else { return Ok(spec.to_string()) };
    let arg = rest.strip_suffix(')').ok_or_else(|| anyhow!("unbalanced parentheses in `{spec}`"))?.trim();
    let v = match arg {
        "x" => x,
        "tau" => {
            let e = entanglement_params(family)?;
            e.tangle.or(e.three_tangle).ok_or_else(|| anyhow!("no tangle for this family"))?
        }
        _ => return Ok(spec.to_string()),
    };
    Ok(format!("{name}({v:e})"))
}

/// Header and one row per grid point, in grid order.
pub fn run(a: &SweepArgs) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    if a.steps < 2 {
        bail!("--steps must be at least 2");
    }
    let fixed = parse_params(&a.params)?;
    let measures: Vec<String> = a.measures.split(',').map(|m| m.trim().to_string()).filter(|m| !m.is_empty()).collect();
    let grid: Vec<f64> =
        (0..a.steps).map(|i| a.start + (a.stop - a.start) * i as f64 / (a.steps - 1) as f64).collect();
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&x| {
            let mut params = fixed.clone();
            params.retain(|(k, _)| *k != a.vary);
            params.push((a.vary.clone(), x));
            let family = StateFamily::from_params(&a.family, &params)?;
            let settings = load_settings(&settings_for(&a.settings, x, &family)?)?;
            let b = state_box(&family, &settings)?;
            let mut row = vec![x];
            for m in &measures {
                row.push(scalar(&b, m)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut header = vec![a.vary.clone()];
    header.extend(measures);
    Ok((header, rows))
}

pub fn render(header: &[String], rows: &[Vec<f64>], fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(r.iter().map(|v| fmt_num(*v)))?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> = header.iter().cloned().zip(r.iter().map(|v| Value::from(*v))).collect();
                    Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(&list)? + "\n"
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|v| fmt_num(*v)).collect()).collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: &[String]| {
                items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ") + "\n"
            };
            let mut s = line(header);
            for r in &cells {
                s += &line(r);
            }
            s
        }
    })
}

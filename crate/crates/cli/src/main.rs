//! `boxlab`: measures, decompositions and parameter sweeps for nonsignaling boxes.

mod input;
mod report;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use boxlab_core::io::AnyBox;
use boxlab_core::polytope::{canonical_2decomposition, three_decomposition};
use boxlab_core::qstate::StateFamily;
use boxlab_core::tribox::three_decomposition3;
use boxlab_core::verify;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{load_settings, parse_params, state_box, BoxSource};

#[derive(Parser, Debug)]
#[command(name = "boxlab", version, about = "Bell, Mermin and Svetlichny discord of nonsignaling boxes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Two,
    Three,
}

#[derive(clap::Args, Debug)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Discords, correlations, inequality values and locality of one box.
    Measure {
        #[command(flatten)]
        src: BoxSource,
        #[command(flatten)]
        out: Output,
    },
    /// Split a box into PR (or Svetlichny), Mermin and residual parts.
    Decompose {
        #[arg(value_enum)]
        mode: Mode,
        #[command(flatten)]
        src: BoxSource,
        #[command(flatten)]
        out: Output,
    },
    /// Born-rule box of a state family under named settings, as box JSON.
    StateBox {
        #[arg(long)]
        family: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        settings: String,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate measures over a grid of one family parameter.
    Sweep {
        #[command(flatten)]
        spec: sweep::SweepArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria (1-16), repeatable.
        #[arg(long = "only", value_name = "ID")]
        only: Vec<u8>,
        #[command(flatten)]
        out: Output,
    },
}

/// Round to 12 significant digits for text output.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v.abs() < 1e-12 {
        return "0".into();
    }
    let r: f64 = format!("{v:.11e}").parse().expect("formatted float");
    // no "-0" in output
    (r + 0.0).to_string()
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_num),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(fmt_value).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}")),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render_pairs(pairs: &[(String, Value)], fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => {
            let obj: serde_json::Map<String, Value> = pairs.iter().cloned().collect();
            serde_json::to_string_pretty(&obj)? + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])?;
            for (k, v) in pairs {
                w.write_record([k.as_str(), fmt_value(v).as_str()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Table => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            pairs.iter().map(|(k, v)| format!("{k:<width$}  {}\n", fmt_value(v))).collect()
        }
    })
}

fn decompose(mode: Mode, b: &AnyBox) -> Result<Value> {
    Ok(match (mode, b) {
        (Mode::Two, AnyBox::Bi(p)) => serde_json::to_value(canonical_2decomposition(p)?)?,
        (Mode::Three, AnyBox::Bi(p)) => serde_json::to_value(three_decomposition(p)?)?,
        (Mode::Three, AnyBox::Tri(p)) => serde_json::to_value(three_decomposition3(p)?)?,
        (Mode::Two, AnyBox::Tri(_)) => bail!("the two-way split is for two-party boxes; use `three`"),
    })
}

fn flatten_json(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_json(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Measure { src, out } => {
            let pairs = report::measure(&src.resolve()?)?;
            emit(&out, &render_pairs(&pairs, out.format.unwrap_or(Format::Table))?)?;
        }
        Cmd::Decompose { mode, src, out } => {
            let v = decompose(mode, &src.resolve()?)?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&v)? + "\n",
                f => {
                    let mut pairs = Vec::new();
                    flatten_json("", &v, &mut pairs);
                    render_pairs(&pairs, f)?
                }
            };
            emit(&out, &text)?;
        }
        Cmd::StateBox { family, params, settings, out } => {
            let fam = StateFamily::from_params(&family, &parse_params(&params)?)?;
            let b = state_box(&fam, &load_settings(&settings)?)?;
            if out.format.is_some_and(|f| f != Format::Json) {
                bail!("state-box writes JSON only");
            }
            emit(&out, &(serde_json::to_string_pretty(&b.to_json())? + "\n"))?;
        }
        Cmd::Sweep { spec, out } => {
            let (header, rows) = sweep::run(&spec)?;
            emit(&out, &sweep::render(&header, &rows, out.format.unwrap_or(Format::Csv))?)?;
        }
        Cmd::Verify { seed, only, out } => {
            let ids: Vec<u8> = if only.is_empty() { (1..=16).collect() } else { only };
            let mut results = Vec::new();
            for id in ids {
                match verify::run_one(id, seed) {
                    Some(r) => results.push(r),
                    None => bail!("no criterion {id}"),
                }
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            let text = match out.format.unwrap_or(Format::Table) {
                Format::Json => serde_json::to_string_pretty(&json!(results))? + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["id", "name", "pass", "detail"])?;
                    for r in &results {
                        w.write_record([r.id.to_string(), r.name.to_string(), r.pass.to_string(), r.detail.clone()])?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
                Format::Table => {
                    let mut s: String = results
                        .iter()
                        .map(|r| format!("{} [{:>2}] {}: {}\n", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail))
                        .collect();
                    s += &format!("{} of {} criteria passed\n", results.len() - failed, results.len());
                    s
                }
            };
            emit(&out, &text)?;
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

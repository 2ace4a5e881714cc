//! Resolving `--box`, `--catalog` and `--family` into a box.

use anyhow::{anyhow, bail, Context, Result};
use boxlab_core::boxcore::{mix, vertex};
use boxlab_core::io::{parse_box, parse_settings, AnyBox};
use boxlab_core::qstate::{born_box2, born_box3, settings_by_spec, MeasurementSettings, StateFamily};
use boxlab_core::sample::{random_ns_box, random_tri_box, seeded};
use boxlab_core::polytope::VertexSet;
use boxlab_core::tribox::{mix3, tri_vertex, TriVertexId};
use boxlab_core::VertexId;
use clap::Args;

#[derive(Args, Debug, Clone)]
pub struct BoxSource {
    /// Box JSON file.
    #[arg(long = "box", value_name = "FILE", conflicts_with_all = ["catalog", "family"])]
    pub box_file: Option<String>,
    /// Catalog box, or a mixture `NAME:w,NAME:w,...` (e.g. `PR000:0.7,Noise:0.3`).
    /// `random` and `random3` draw a box using `--seed`.
    #[arg(long, value_name = "NAME", conflicts_with = "family")]
    pub catalog: Option<String>,
    /// State family; the box comes from `--settings`.
    #[arg(long, value_name = "NAME")]
    pub family: Option<String>,
    /// Family parameter `k=v`, repeatable.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    /// Named settings such as `BSb` or `PRQ(0.5)`, or a settings JSON file.
    #[arg(long, value_name = "NAME")]
    pub settings: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn parse_params(raw: &[String]) -> Result<Vec<(String, f64)>> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("parameter `{kv}` is not k=v"))?;
            let v: f64 = v.trim().parse().with_context(|| format!("parameter `{kv}`"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

pub fn load_settings(spec: &str) -> Result<MeasurementSettings> {
    if std::path::Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)?;
        return Ok(parse_settings(&text)?);
    }
    Ok(settings_by_spec(spec)?)
}

pub fn state_box(family: &StateFamily, settings: &MeasurementSettings) -> Result<AnyBox> {
    let rho = family.density()?;
    Ok(match settings.parties() {
        2 => AnyBox::Bi(born_box2(&rho, settings)?),
        _ => AnyBox::Tri(born_box3(&rho, settings)?),
    })
}

fn catalog_part(name: &str, seed: u64) -> Result<AnyBox> {
    match name.to_ascii_lowercase().as_str() {
        "random" => return Ok(AnyBox::Bi(random_ns_box(&mut seeded(seed), 1.0))),
        "random3" => return Ok(AnyBox::Tri(random_tri_box(&mut seeded(seed), VertexSet::Svetlichny128, 1.0))),
        _ => {}
    }
    if let Some(id) = VertexId::parse(name) {
        return Ok(AnyBox::Bi(vertex(id)));
    }
    if let Some(id) = TriVertexId::parse(name) {
        return Ok(AnyBox::Tri(tri_vertex(id)));
    }
    bail!("unknown catalog box `{name}`")
}

fn catalog_box(spec: &str, seed: u64) -> Result<AnyBox> {
    let mut parts = Vec::new();
    let mut weights = Vec::new();
    for item in spec.split(',') {
        let (name, w) = match item.split_once(':') {
            Some((n, w)) => (n, w.trim().parse::<f64>().with_context(|| format!("weight in `{item}`"))?),
            None => (item, 1.0),
        };
        parts.push(catalog_part(name.trim(), seed)?);
        weights.push(w);
    }
    if parts.iter().all(|p| matches!(p, AnyBox::Bi(_))) {
        let boxes: Vec<_> = parts.iter().map(|p| if let AnyBox::Bi(b) = p { *b } else { unreachable!() }).collect();
        return Ok(AnyBox::Bi(mix(&boxes, &weights)?));
    }
    if parts.iter().all(|p| matches!(p, AnyBox::Tri(_))) {
        let boxes: Vec<_> = parts.iter().map(|p| if let AnyBox::Tri(b) = p { *b } else { unreachable!() }).collect();
        return Ok(AnyBox::Tri(mix3(&boxes, &weights)?));
    }
    bail!("cannot mix two- and three-party boxes in `{spec}`")
}

impl BoxSource {
    pub fn resolve(&self) -> Result<AnyBox> {
        if let Some(path) = &self.box_file {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            return Ok(parse_box(&text)?);
        }
        if let Some(spec) = &self.catalog {
            return catalog_box(spec, self.seed);
        }
        if let Some(name) = &self.family {
            let family = StateFamily::from_params(name, &parse_params(&self.params)?)?;
            let spec = self.settings.as_deref().ok_or_else(|| anyhow!("--family needs --settings"))?;
            return state_box(&family, &load_settings(spec)?);
        }
        bail!("give one of --box, --catalog or --family")
    }
}

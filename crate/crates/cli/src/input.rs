use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use poisson_forge_core::liealg::{preset, LieJson, RawConstants};
use poisson_forge_core::multivector::MvfJson;
use poisson_forge_core::{LieAlgebraSpec, PolyMVF};
use serde_json::Value;

/// Parsed input file: a multivector field or structure constants. Lie
/// tables are kept unvalidated so `check` can report Jacobi failures.
#[derive(Debug, Clone)]
pub enum Input {
    Field(PolyMVF),
    Lie { raw: RawConstants, json: LieJson },
}

impl Input {
    /// The bivector to work with: the field itself, or the linear bivector of
    /// a Lie table.
    pub fn bivector(&self) -> PolyMVF {
        match self {
            Input::Field(f) => f.clone(),
            Input::Lie { raw, .. } => poisson_forge_core::liealg::linear_bivector(raw),
        }
    }

    /// Validated Lie algebra, when the input is a Lie table.
    pub fn lie_spec(&self) -> Result<Option<LieAlgebraSpec>> {
        match self {
            Input::Field(_) => Ok(None),
            Input::Lie { json, .. } => Ok(Some(LieAlgebraSpec::from_json(json)?)),
        }
    }
}

pub fn parse_str(text: &str, origin: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text).with_context(|| format!("{origin}: invalid JSON"))?;
    let Some(obj) = value.as_object() else {
        bail!("{origin}: expected a JSON object");
    };
    if obj.contains_key("C") {
        let json: LieJson = serde_json::from_value(value).with_context(|| format!("{origin}: bad Lie algebra table"))?;
        let raw = RawConstants::from_json(&json).with_context(|| format!("{origin}: bad Lie algebra table"))?;
        Ok(Input::Lie { raw, json })
    } else if obj.contains_key("terms") {
        let json: MvfJson = serde_json::from_value(value).with_context(|| format!("{origin}: bad multivector field"))?;
        let field = PolyMVF::from_json(&json).with_context(|| format!("{origin}: bad multivector field"))?;
        Ok(Input::Field(field))
    } else {
        Err(anyhow!("{origin}: expected a multivector field (\"terms\") or a Lie algebra table (\"C\")"))
    }
}

pub fn parse_input(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_str(&text, &path.display().to_string())
}

/// Either the file at `path` or the named preset.
pub fn load(path: Option<&Path>, preset_name: Option<&str>) -> Result<Input> {
    match (path, preset_name) {
        (Some(_), Some(_)) => bail!("give either an input file or --preset, not both"),
        (Some(p), None) => parse_input(p),
        (None, Some(name)) => {
            let spec = preset(name)?;
            let json = spec.to_json();
            Ok(Input::Lie { raw: spec.raw(), json })
        }
        (None, None) => bail!("an input file or --preset is required"),
    }
}

pub fn parse_weights(s: &str) -> Result<Vec<u8>> {
    s.split(',')
        .map(|w| match w.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(anyhow!("weights must be 0 or 1, got {other:?}")),
        })
        .collect()
}

//! Run configuration: a JSON object whose admissible keys depend on the command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use wcurv::curvature::Variant;
use wcurv::descriptor::{DensityDesc, MetricDesc};
use wcurv::symmetry::AverageMode;
use wcurv::variation::{Direction, VariationField};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Gallery,
    Certify,
    Synthesize,
    Obstruct,
    GaussBonnet,
    AreaBound,
    Polytope,
    Average,
    Cheeger,
    Oneill,
    IndexForm,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gallery => "gallery",
            Command::Certify => "certify",
            Command::Synthesize => "synthesize",
            Command::Obstruct => "obstruct",
            Command::GaussBonnet => "gauss-bonnet",
            Command::AreaBound => "area-bound",
            Command::Polytope => "polytope",
            Command::Average => "average",
            Command::Cheeger => "cheeger",
            Command::Oneill => "oneill",
            Command::IndexForm => "index-form",
        }
    }

    /// Keys accepted in the config file.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Gallery => &["gallery", "grid"],
            Command::Certify => &["gallery", "metric", "density", "variant", "lambda", "grid"],
            Command::Synthesize => &["gallery", "metric", "variant", "lambda", "nodes", "margin"],
            Command::Obstruct => &["gallery", "metric"],
            Command::GaussBonnet => &["gallery", "metric", "density", "tolerance"],
            Command::AreaBound => &["gallery", "metric", "density", "grid"],
            Command::Polytope => &["gallery", "metric", "density", "r", "eigendata", "grid", "samples", "seed"],
            Command::Average => &["gallery", "metric", "density", "mode", "variant", "grid"],
            Command::Cheeger => &["gallery", "metric", "density", "lambda", "variant", "grid", "samples", "seed"],
            Command::Oneill => &["gallery", "metric", "density", "variant", "grid", "tolerance"],
            Command::IndexForm => &["gallery", "metric", "density", "segment", "field", "variant", "tolerance"],
        }
    }
}

/// Curvature table and Hessian eigenvalues for the polytope command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tables {
    pub lambda: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
    #[serde(default = "outward")]
    pub direction: Direction,
}

fn outward() -> Direction {
    Direction::Outward
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gallery: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<AverageMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigendata: Option<Tables>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment: Option<Segment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<VariationField>,
}

impl Config {
    /// Parses `text` for `command`, naming the first offending field on failure.
    pub fn parse(text: &str, command: Command) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("config is not valid JSON: {e}")))?;
        let Value::Object(map) = &value else {
            return Err(CliError::Input("config must be a JSON object".into()));
        };
        let allowed = command.keys();
        if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::Input(format!(
                "unknown field `{key}` for `{}`; expected one of: {}",
                command.name(),
                allowed.join(", ")
            )));
        }
        serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            CliError::Input(format!("field `{path}`: {}", e.into_inner()))
        })
    }
}

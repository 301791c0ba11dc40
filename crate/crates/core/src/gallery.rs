//! Closed-form examples with known curvature bounds.
//!
//! Every entry is assembled from its JSON descriptors, so the descriptors
//! serialized by [`GalleryEntry`] reproduce the entry exactly. Names take
//! optional parameters, e.g. `cusp(A=4)` or `hemisphere(lambda=3)`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::curvature::{pointwise_eigendata, Variant, DEFAULT_GRID};
use crate::descriptor::{
    make_density, make_metric, Affine, DensityDesc, FiberDesc, MetricDesc, PowerDesc, ProfileDesc,
};
use crate::error::{Error, Result};
use crate::metric::Closure;
use crate::polytope::positivity_scale;
use crate::scalar::linspace;
use crate::{Dens, Metric};

pub const NAMES: [&str; 8] = [
    "gaussian",
    "hemisphere",
    "cusp",
    "hyperbolic-soliton",
    "hyperbolic-quadratic",
    "rotsym-sphere",
    "doubly-warped-sphere",
    "cp1-quotient",
];

/// Margin kept away from the poles and equator by the hemisphere entry.
pub const HEMISPHERE_INSET: f64 = 0.05;
/// Radius of the open examples.
pub const OPEN_RADIUS: f64 = 3.0;

#[derive(Clone, Debug, Serialize)]
pub struct GalleryEntry {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub metric_desc: MetricDesc,
    pub density_desc: DensityDesc,
    /// Lower bound asserted for the entry.
    pub bound: f64,
    /// The pointwise minimum is identically `bound`.
    pub constant: bool,
    pub variant: Variant,
    #[serde(skip)]
    pub metric: Metric,
    #[serde(skip)]
    pub density: Dens,
}

fn affine(domain: [f64; 2], amplitude: f64) -> Affine {
    Affine { domain, amplitude, rate: 1.0, shift: 0.0, offset: 0.0 }
}

fn scaled(s: f64, inner: ProfileDesc, domain: [f64; 2]) -> ProfileDesc {
    ProfileDesc::Product {
        factors: [Box::new(ProfileDesc::Constant { value: s, domain }), Box::new(inner)],
    }
}

/// Splits `name(a=1, b=2)` into the name and its parameters.
pub fn parse_name(text: &str) -> Result<(String, BTreeMap<String, f64>)> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        return Ok((text.to_string(), BTreeMap::new()));
    };
    let body = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::InvalidArgument(format!("unbalanced parentheses in `{text}`")))?;
    let mut params = BTreeMap::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{item}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("parameter `{}` is not a number", k.trim())))?;
        params.insert(k.trim().to_string(), v);
    }
    Ok((text[..open].trim().to_string(), params))
}

struct Params {
    given: BTreeMap<String, f64>,
    allowed: &'static [&'static str],
}

impl Params {
    fn get(&self, key: &str, default: f64) -> f64 {
        self.given.get(key).copied().unwrap_or(default)
    }

    fn check(&self, name: &str) -> Result<()> {
        for k in self.given.keys() {
            if !self.allowed.contains(&k.as_str()) {
                return Err(Error::InvalidArgument(format!("`{name}` has no parameter `{k}`")));
            }
        }
        Ok(())
    }
}

/// Largest certified scale of the weighted curvature on a uniform grid.
fn bridge_scale(metric: &MetricDesc, density: &DensityDesc) -> Result<f64> {
    let g: Metric = make_metric(metric)?;
    let f: Dens = make_density(density)?;
    let (a, b) = g.domain();
    let grid = linspace(a, b, DEFAULT_GRID)
        .into_iter()
        .map(|r| pointwise_eigendata(&g, &f, r))
        .collect::<Result<Vec<_>>>()?;
    positivity_scale(&grid)
        .scale
        .ok_or_else(|| Error::Unsupported("positivity scale hypothesis fails for the bridged sphere".into()))
}

pub fn gallery(text: &str) -> Result<GalleryEntry> {
    let (name, given) = parse_name(text)?;
    let allowed: &'static [&'static str] = match name.as_str() {
        "hemisphere" => &["lambda"],
        "cusp" | "hyperbolic-quadratic" => &["A"],
        _ => &[],
    };
    let params = Params { given, allowed };
    params.check(&name)?;
    let open = [0.0, OPEN_RADIUS];
    let round = [0.0, PI];
    let half = [0.0, FRAC_PI_2];

    let (metric_desc, density_desc, bound, constant, variant) = match name.as_str() {
        "gaussian" => (
            MetricDesc::Flat { n: 3, radius: OPEN_RADIUS },
            DensityDesc::RadialF {
                profile: ProfileDesc::Power(PowerDesc {
                    exponent: 2.0,
                    domain: open,
                    amplitude: 0.5,
                    rate: 1.0,
                    shift: 0.0,
                    offset: 0.0,
                }),
            },
            1.0,
            true,
            Variant::Weighted,
        ),
        "hemisphere" => {
            let lambda = params.get("lambda", 2.0);
            if !(lambda >= 1.0) {
                return Err(Error::ParameterOutOfRange(format!("hemisphere needs lambda ≥ 1, got {lambda}")));
            }
            let d = [HEMISPHERE_INSET, FRAC_PI_2 - HEMISPHERE_INSET];
            (
                MetricDesc::SingleWarped {
                    phi: ProfileDesc::analytic("sin", d)?,
                    fiber: FiberDesc::constant(2, 1.0),
                    closure: Closure::OpenLine,
                },
                DensityDesc::RadialF { profile: ProfileDesc::LogCos(affine(d, -(lambda - 1.0))) },
                lambda,
                false,
                Variant::Weighted,
            )
        }
        "cusp" => {
            let a = params.get("A", 3.0);
            if !(a > 1.0) {
                return Err(Error::ParameterOutOfRange(format!("cusp needs A > 1, got {a}")));
            }
            (
                MetricDesc::SingleWarped {
                    phi: ProfileDesc::analytic("exp", open)?,
                    fiber: FiberDesc::constant(2, 0.0),
                    closure: Closure::OpenLine,
                },
                DensityDesc::RadialU {
                    profile: ProfileDesc::Exp(Affine { domain: open, amplitude: 1.0, rate: a, shift: 0.0, offset: 0.0 }),
                },
                (a * a - 1.0).min(a - 1.0),
                true,
                Variant::Strong,
            )
        }
        "hyperbolic-soliton" => (
            MetricDesc::SingleWarped {
                phi: ProfileDesc::analytic("exp", open)?,
                fiber: FiberDesc::constant(2, 0.0),
                closure: Closure::OpenLine,
            },
            DensityDesc::RadialF { profile: ProfileDesc::analytic("identity", open)? },
            0.0,
            true,
            Variant::Strong,
        ),
        "hyperbolic-quadratic" => {
            let a = params.get("A", 2.0);
            (
                MetricDesc::SingleWarped {
                    phi: ProfileDesc::analytic("sinh", open)?,
                    fiber: FiberDesc::constant(2, 1.0),
                    closure: Closure::PlaneLike,
                },
                DensityDesc::RadialF {
                    profile: ProfileDesc::Power(PowerDesc {
                        exponent: 2.0,
                        domain: open,
                        amplitude: a,
                        rate: 1.0,
                        shift: 0.0,
                        offset: 0.0,
                    }),
                },
                2.0 * a - 1.0,
                false,
                Variant::Weighted,
            )
        }
        "rotsym-sphere" => {
            let metric = MetricDesc::SingleWarped {
                phi: ProfileDesc::RotsymWarping,
                fiber: FiberDesc::constant(2, 1.0),
                closure: Closure::SphereLike,
            };
            let s = bridge_scale(&metric, &DensityDesc::RadialF { profile: ProfileDesc::RotsymDensity })?;
            let density = DensityDesc::RadialF { profile: scaled(s, ProfileDesc::RotsymDensity, round) };
            (metric, density, s, false, Variant::Weighted)
        }
        "doubly-warped-sphere" | "cp1-quotient" => {
            let total = MetricDesc::DoublyWarped {
                phi: ProfileDesc::RotsymHalfWarping,
                psi: ProfileDesc::analytic("cos", half)?,
                k: if name == "cp1-quotient" { 1 } else { 2 },
                m: if name == "cp1-quotient" { 1 } else { 2 },
                closure: Closure::SphereLike,
            };
            let s = bridge_scale(&total, &DensityDesc::RadialF { profile: ProfileDesc::RotsymHalfDensity })?;
            let density = DensityDesc::RadialF { profile: scaled(s, ProfileDesc::RotsymHalfDensity, half) };
            let metric = if name == "cp1-quotient" {
                MetricDesc::SurfaceOfRevolution {
                    phi: ProfileDesc::Hopf {
                        phi: Box::new(ProfileDesc::RotsymHalfWarping),
                        psi: Box::new(ProfileDesc::analytic("cos", half)?),
                    },
                    closure: Closure::SphereLike,
                }
            } else {
                total
            };
            (metric, density, s, false, Variant::Weighted)
        }
        other => {
            return Err(Error::UnknownGallery(format!(
                "`{other}`; known: {}",
                NAMES.join(", ")
            )))
        }
    };
    Ok(GalleryEntry {
        metric: make_metric(&metric_desc)?,
        density: make_density(&density_desc)?,
        name,
        params: params.given,
        metric_desc,
        density_desc,
        bound,
        constant,
        variant,
    })
}

//! JSON descriptors for profiles, metrics and densities.
//!
//! ```json
//! {"kind": "single_warped",
//!  "phi": {"family": "sin", "domain": [0, 3.141592653589793]},
//!  "fiber": {"dim": 2, "kappa": 1.0},
//!  "closure": "sphere_like"}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bridge::{rotsym_density, rotsym_half_density, rotsym_half_warping, rotsym_warping};
use crate::density::{Density, FieldForm, FourierMode, TwoDimDensity};
use crate::error::{Error, Result};
use crate::metric::{Closure, FiberCurvature, FiberSpec, WarpedMetric};
use crate::poly::Polynomial;
use crate::profile::{Analytic, Family, Parity, RadialProfile};
use crate::scalar::Real;
use crate::spline::{CubicSpline, SplineBoundary};

fn one() -> f64 {
    1.0
}

/// `amplitude · g(rate · (r − shift)) + offset` on `domain`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Affine {
    pub domain: [f64; 2],
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "one")]
    pub rate: f64,
    #[serde(default)]
    pub shift: f64,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerDesc {
    pub exponent: f64,
    pub domain: [f64; 2],
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "one")]
    pub rate: f64,
    #[serde(default)]
    pub shift: f64,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDesc {
    /// Ascending coefficients.
    pub coeffs: Vec<f64>,
    pub domain: [f64; 2],
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "one")]
    pub rate: f64,
    #[serde(default)]
    pub shift: f64,
    #[serde(default)]
    pub offset: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityDesc {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileDesc {
    Constant { value: f64, domain: [f64; 2] },
    Identity(Affine),
    Sin(Affine),
    Cos(Affine),
    Sinh(Affine),
    Cosh(Affine),
    Exp(Affine),
    #[serde(alias = "log-cos")]
    LogCos(Affine),
    Bump(Affine),
    Power(PowerDesc),
    Polynomial(PolynomialDesc),
    /// Cubic spline through `(x, y)`; not-a-knot ends by default.
    Samples {
        x: Vec<f64>,
        y: Vec<f64>,
        #[serde(default)]
        boundary: SplineBoundary,
    },
    Sum { terms: Vec<ProfileDesc> },
    Product { factors: [Box<ProfileDesc>; 2] },
    ExpOf { inner: Box<ProfileDesc> },
    Piecewise { pieces: Vec<ProfileDesc> },
    Reflected { inner: Box<ProfileDesc>, parity: ParityDesc },
    /// `φψ / sqrt(φ² + ψ²)`
    Hopf { phi: Box<ProfileDesc>, psi: Box<ProfileDesc> },
    /// `ψ · sqrt(λ / (λ + ψ²))`
    Cheeger { inner: Box<ProfileDesc>, lambda: f64 },
    /// Flat disc, concave bridge and round cap on `[0, π/2]`.
    RotsymHalfWarping,
    /// The same, reflected onto `[0, π]`.
    RotsymWarping,
    /// `r²/2` on `[0, π/3]`, flattened to `f'(π/2) = 0`.
    RotsymHalfDensity,
    /// The same, reflected onto `[0, π]`.
    RotsymDensity,
}

impl ProfileDesc {
    pub fn analytic(family: &str, domain: [f64; 2]) -> Result<Self> {
        let a = Affine { domain, amplitude: 1.0, rate: 1.0, shift: 0.0, offset: 0.0 };
        Ok(match family {
            "identity" => ProfileDesc::Identity(a),
            "sin" => ProfileDesc::Sin(a),
            "cos" => ProfileDesc::Cos(a),
            "sinh" => ProfileDesc::Sinh(a),
            "cosh" => ProfileDesc::Cosh(a),
            "exp" => ProfileDesc::Exp(a),
            "log_cos" => ProfileDesc::LogCos(a),
            "bump" => ProfileDesc::Bump(a),
            other => return Err(Error::InvalidArgument(format!("unknown analytic family `{other}`"))),
        })
    }
}

fn domain<T: Real>(d: [f64; 2]) -> (T, T) {
    (T::lit(d[0]), T::lit(d[1]))
}

fn affine<T: Real>(family: Family<T>, a: &Affine) -> Result<RadialProfile<T>> {
    RadialProfile::analytic(
        Analytic::new(family)
            .amplitude(T::lit(a.amplitude))
            .rate(T::lit(a.rate))
            .shift(T::lit(a.shift))
            .offset(T::lit(a.offset)),
        domain(a.domain),
    )
}

pub fn make_profile<T: Real>(desc: &ProfileDesc) -> Result<RadialProfile<T>> {
    match desc {
        ProfileDesc::Constant { value, domain: d } => RadialProfile::constant(T::lit(*value), domain(*d)),
        ProfileDesc::Identity(a) => affine(Family::Identity, a),
        ProfileDesc::Sin(a) => affine(Family::Sin, a),
        ProfileDesc::Cos(a) => affine(Family::Cos, a),
        ProfileDesc::Sinh(a) => affine(Family::Sinh, a),
        ProfileDesc::Cosh(a) => affine(Family::Cosh, a),
        ProfileDesc::Exp(a) => affine(Family::Exp, a),
        ProfileDesc::LogCos(a) => affine(Family::LogCos, a),
        ProfileDesc::Bump(a) => affine(Family::Bump, a),
        ProfileDesc::Power(p) => affine(
            Family::Power(T::lit(p.exponent)),
            &Affine { domain: p.domain, amplitude: p.amplitude, rate: p.rate, shift: p.shift, offset: p.offset },
        ),
        ProfileDesc::Polynomial(p) => affine(
            Family::Polynomial(Polynomial::new(p.coeffs.iter().map(|&c| T::lit(c)).collect())),
            &Affine { domain: p.domain, amplitude: p.amplitude, rate: p.rate, shift: p.shift, offset: p.offset },
        ),
        ProfileDesc::Samples { x, y, boundary } => {
            let spline = CubicSpline::new(
                x.iter().map(|&v| T::lit(v)).collect(),
                y.iter().map(|&v| T::lit(v)).collect(),
                *boundary,
            )?;
            Ok(RadialProfile::spline(spline))
        }
        ProfileDesc::Sum { terms } => RadialProfile::sum(terms.iter().map(make_profile).collect::<Result<_>>()?),
        ProfileDesc::Product { factors } => {
            RadialProfile::product(make_profile(&factors[0])?, make_profile(&factors[1])?)
        }
        ProfileDesc::ExpOf { inner } => Ok(make_profile(inner)?.exp()),
        ProfileDesc::Piecewise { pieces } => {
            RadialProfile::piecewise(pieces.iter().map(make_profile).collect::<Result<_>>()?)
        }
        ProfileDesc::Reflected { inner, parity } => Ok(make_profile(inner)?.reflected(match parity {
            ParityDesc::Even => Parity::Even,
            ParityDesc::Odd => Parity::Odd,
        })),
        ProfileDesc::Hopf { phi, psi } => RadialProfile::hopf(make_profile(phi)?, make_profile(psi)?),
        ProfileDesc::Cheeger { inner, lambda } => make_profile(inner)?.cheeger(T::lit(*lambda)),
        ProfileDesc::RotsymHalfWarping => Ok(rotsym_half_warping()?.0),
        ProfileDesc::RotsymWarping => Ok(rotsym_warping()?.0),
        ProfileDesc::RotsymHalfDensity => rotsym_half_density(),
        ProfileDesc::RotsymDensity => rotsym_density(),
    }
}

/// Fiber data: either `kappa` or both `kappa_min` and `kappa_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDesc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_max: Option<f64>,
}

impl FiberDesc {
    pub fn constant(dim: usize, kappa: f64) -> Self {
        Self { dim, kappa: Some(kappa), kappa_min: None, kappa_max: None }
    }

    fn spec<T: Real>(&self) -> Result<FiberSpec<T>> {
        let curvature = match (self.kappa, self.kappa_min, self.kappa_max) {
            (Some(k), None, None) => FiberCurvature::Constant(T::lit(k)),
            (None, Some(min), Some(max)) => FiberCurvature::Bounds { min: T::lit(min), max: T::lit(max) },
            _ => {
                return Err(Error::InvalidArgument(
                    "fiber: give either `kappa` or both `kappa_min` and `kappa_max`".into(),
                ))
            }
        };
        Ok(FiberSpec { dim: self.dim, curvature })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricDesc {
    SingleWarped { phi: ProfileDesc, fiber: FiberDesc, closure: Closure },
    DoublyWarped { phi: ProfileDesc, psi: ProfileDesc, k: usize, m: usize, closure: Closure },
    SurfaceOfRevolution { phi: ProfileDesc, closure: Closure },
    Flat { n: usize, radius: f64 },
}

pub fn make_metric<T: Real>(desc: &MetricDesc) -> Result<WarpedMetric<T>> {
    match desc {
        MetricDesc::SingleWarped { phi, fiber, closure } => {
            WarpedMetric::single_warped(make_profile(phi)?, fiber.spec()?, *closure)
        }
        MetricDesc::DoublyWarped { phi, psi, k, m, closure } => {
            WarpedMetric::doubly_warped(make_profile(phi)?, make_profile(psi)?, *k, *m, *closure)
        }
        MetricDesc::SurfaceOfRevolution { phi, closure } => WarpedMetric::surface(make_profile(phi)?, *closure),
        MetricDesc::Flat { n, radius } => WarpedMetric::flat(*n, T::lit(*radius)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldDesc {
    F,
    U,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeDesc {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cos: Option<ProfileDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sin: Option<ProfileDesc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensityDesc {
    /// `f(r) ≡ 0` on the given domain.
    Zero { domain: [f64; 2] },
    RadialF { profile: ProfileDesc },
    RadialU { profile: ProfileDesc },
    TwoDim {
        field: FieldDesc,
        base: ProfileDesc,
        #[serde(default)]
        modes: Vec<ModeDesc>,
    },
}

pub fn make_density<T: Real>(desc: &DensityDesc) -> Result<Density<T>> {
    match desc {
        DensityDesc::Zero { domain: d } => Density::zero(domain(*d)),
        DensityDesc::RadialF { profile } => Ok(Density::RadialF(make_profile(profile)?)),
        DensityDesc::RadialU { profile } => {
            let d = Density::RadialU(make_profile(profile)?);
            d.check_positive(crate::curvature::DEFAULT_GRID)?;
            Ok(d)
        }
        DensityDesc::TwoDim { field, base, modes } => {
            let form = match field {
                FieldDesc::F => FieldForm::F,
                FieldDesc::U => FieldForm::U,
            };
            let modes = modes
                .iter()
                .map(|m| {
                    Ok(FourierMode {
                        k: m.k,
                        cos: m.cos.as_ref().map(make_profile).transpose()?,
                        sin: m.sin.as_ref().map(make_profile).transpose()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Density::TwoDim(Arc::new(TwoDimDensity::new(form, make_profile(base)?, modes)?)))
        }
    }
}

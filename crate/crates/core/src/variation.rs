//! Index forms and second variation of energy along radial geodesics.
//!
//! A radial curve `t ↦ (r(t), p)` is a unit-speed geodesic of every warped
//! product, and `E = φ⁻¹ ∂θ` for a fiber coordinate `θ` is parallel along it.
//! Variation fields are `V = y(t) E`, so every index form reduces to an
//! integral of `y`, `y'` and the radial data of the metric and density.

use serde::{Deserialize, Serialize};

use crate::curvature::{pointwise_eigendata, Variant};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::metric::WarpedMetric;
use crate::quadrature::{integrate, DEFAULT_TOL};
use crate::scalar::{linspace, Real};
use crate::{EPS_END, EPS_POS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Outward,
    Inward,
}

#[derive(Clone, Copy, Debug)]
pub struct GeodesicSegment<'a, T> {
    pub metric: &'a WarpedMetric<T>,
    pub a: T,
    pub b: T,
    pub direction: Direction,
}

impl<'a, T: Real> GeodesicSegment<'a, T> {
    pub fn new(metric: &'a WarpedMetric<T>, a: T, b: T, direction: Direction) -> Result<Self> {
        let (lo, hi) = metric.domain();
        if !(a < b) || a < lo || b > hi {
            return Err(Error::InvalidArgument(format!(
                "segment [{a}, {b}] is not an interval inside [{lo}, {hi}]"
            )));
        }
        Ok(Self { metric, a, b, direction })
    }

    fn sign(&self) -> T {
        match self.direction {
            Direction::Outward => T::one(),
            Direction::Inward => -T::one(),
        }
    }

    /// Radius at parameter `t ∈ [a, b]`.
    fn radius(&self, t: T) -> T {
        match self.direction {
            Direction::Outward => t,
            Direction::Inward => self.a + self.b - t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VariationField {
    /// `V = E`, unit length and parallel.
    Parallel { block: usize },
    /// `V = e^f E`.
    Scaled { block: usize },
}

impl VariationField {
    fn block(&self) -> usize {
        match *self {
            VariationField::Parallel { block } | VariationField::Scaled { block } => block,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// `∫ |V'|² − R(V, γ', γ', V)`
    Classical,
    /// `∫ |V'|² − R_X(V, V) − 2 g(γ', X) g(V, V') + [g(γ', X)|V|²]`
    Weighted,
    /// `∫ |V' − g(γ', X) V|² − R̄_X(V, V) + [g(γ', X)|V|²]`
    Strong,
}

/// Integrand data at one parameter value.
#[derive(Clone, Copy, Debug)]
struct Sample<T> {
    /// `sec(γ', E)`
    k: T,
    /// `Hess f(γ', γ')`
    hess: T,
    /// `g(γ', X)`
    g: T,
    y: T,
    dy: T,
}

fn fiber_index<T: Real>(metric: &WarpedMetric<T>, block: usize) -> Result<usize> {
    let blocks = metric.blocks();
    if block >= blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "variation block {block} out of range (metric has {})",
            blocks.len()
        )));
    }
    Ok(1 + blocks[..block].iter().map(|b| b.dim).sum::<usize>())
}

fn sample<T: Real>(
    seg: &GeodesicSegment<'_, T>,
    density: &Density<T>,
    field: VariationField,
    t: T,
) -> Result<Sample<T>> {
    let j = fiber_index(seg.metric, field.block())?;
    let r = seg.radius(t);
    let data = pointwise_eigendata(seg.metric, density, r)?;
    let g = seg.sign() * data.df[0];
    let (y, dy) = match field {
        VariationField::Parallel { .. } => (T::one(), T::zero()),
        VariationField::Scaled { .. } => {
            let e = density.f_jet(r)?.v.exp();
            (e, g * e)
        }
    };
    Ok(Sample { k: data.lambda[0][j], hess: data.hess[0], g, y, dy })
}

fn integrand<T: Real>(s: &Sample<T>, formulation: Formulation) -> T {
    let two = T::lit(2.0);
    match formulation {
        Formulation::Classical => s.dy * s.dy - s.k * s.y * s.y,
        Formulation::Weighted => s.dy * s.dy - (s.k + s.hess) * s.y * s.y - two * s.g * s.y * s.dy,
        Formulation::Strong => {
            let d = s.dy - s.g * s.y;
            d * d - (s.k + s.hess + s.g * s.g) * s.y * s.y
        }
    }
}

/// Absolute quadrature tolerance scaled to the integrand size. Spline data
/// has derivative jumps at the knots, where the Richardson estimate is
/// optimistic, hence the extra factor below the default.
fn tolerance<T: Real>(seg: &GeodesicSegment<'_, T>, f: &impl Fn(T) -> Result<T>) -> Result<T> {
    let mut scale = T::one();
    for t in linspace(seg.a, seg.b, 17) {
        scale = scale.max(f(t)?.abs());
    }
    Ok(T::lit(DEFAULT_TOL * 1e-2) * scale)
}

/// `g(γ', X)|V|²` evaluated between the endpoints.
fn boundary_term<T: Real>(seg: &GeodesicSegment<'_, T>, density: &Density<T>, field: VariationField) -> Result<T> {
    let at = |t: T| -> Result<T> {
        let s = sample(seg, density, field, t)?;
        Ok(s.g * s.y * s.y)
    };
    Ok(at(seg.b)? - at(seg.a)?)
}

pub fn index_form<T: Real>(
    seg: &GeodesicSegment<'_, T>,
    density: &Density<T>,
    field: VariationField,
    formulation: Formulation,
) -> Result<T> {
    let f = |t: T| -> Result<T> { Ok(integrand(&sample(seg, density, field, t)?, formulation)) };
    let tol = tolerance(seg, &f)?;
    let body = integrate(f, seg.a, seg.b, tol)?;
    Ok(match formulation {
        Formulation::Classical => body,
        Formulation::Weighted | Formulation::Strong => body + boundary_term(seg, density, field)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondVariation<T> {
    pub variant: Variant,
    pub field: VariationField,
    /// `d²E/ds²` of the canonical variation, equal to `I(V, V)` since the
    /// curves `s ↦ exp(sV)` are geodesics.
    pub second_variation: T,
    /// `g(γ', X)|V|²` between the endpoints.
    pub bound: T,
    pub margin: T,
    pub passed: bool,
}

/// Compares the second variation of the canonical field (parallel for the
/// weighted bound, `e^f`-scaled for the strong bound) with the boundary term.
pub fn second_variation_check<T: Real>(
    seg: &GeodesicSegment<'_, T>,
    density: &Density<T>,
    variant: Variant,
) -> Result<SecondVariation<T>> {
    let field = match variant {
        Variant::Weighted => VariationField::Parallel { block: 0 },
        Variant::Strong => VariationField::Scaled { block: 0 },
    };
    let second_variation = index_form(seg, density, field, Formulation::Classical)?;
    let bound = boundary_term(seg, density, field)?;
    let margin = bound - second_variation;
    Ok(SecondVariation { variant, field, second_variation, bound, margin, passed: margin > T::lit(EPS_POS) })
}

/// Largest `|∇_{γ'} E|` over interior samples of the segment, with the
/// derivative of `1/w` and the Christoffel symbol `(w²)'/(2w²)` both taken
/// by fourth-order central differences of the warping values.
pub fn parallel_residual<T: Real>(seg: &GeodesicSegment<'_, T>, block: usize, samples: usize) -> Result<T> {
    let blocks = seg.metric.blocks();
    let w = blocks
        .get(block)
        .ok_or_else(|| Error::InvalidArgument(format!("variation block {block} out of range")))?
        .w;
    let step = T::lit(1e-3);
    let inset = T::lit(EPS_END).max(T::lit(3.0) * step);
    let (lo, hi) = seg.metric.domain();
    let a = seg.a.max(lo + inset);
    let b = seg.b.min(hi - inset);
    if !(a < b) {
        return Err(Error::InvalidArgument("segment too short for the parallel-field check".into()));
    }
    let d1 = |g: &dyn Fn(T) -> Result<T>, r: T, h: T| -> Result<T> {
        let (two, eight, twelve) = (T::lit(2.0), T::lit(8.0), T::lit(12.0));
        Ok((g(r - two * h)? - eight * g(r - h)? + eight * g(r + h)? - g(r + two * h)?) / (twelve * h))
    };
    let mut worst = T::zero();
    for r in linspace(a, b, samples.max(2)) {
        let wr = w.value(r)?;
        // truncation scales like (h / w)⁴
        let h = step * wr.min(T::one());
        let coeff = |s: T| -> Result<T> { Ok(w.value(s)?.recip()) };
        let metric = |s: T| -> Result<T> { Ok(w.value(s)?.powi(2)) };
        let gamma = d1(&metric, r, h)? / (T::lit(2.0) * wr * wr);
        let cov = d1(&coeff, r, h)? + gamma / wr;
        worst = worst.max((wr * cov).abs());
    }
    Ok(worst)
}

//! Circle symmetries: orbit averaging of densities, Cheeger deformation of
//! a circle fiber, and the Hopf quotient of a doubly warped sphere with its
//! weighted O'Neill identity.

use std::sync::Arc;

use serde::Serialize;

use crate::curvature::{pair_value, pointwise_eigendata, Surface, Variant};
use crate::density::{Density, FieldForm};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::metric::{MetricKind, WarpedMetric};
use crate::profile::{MeanKind, RadialProfile};
use crate::sampling::{orthonormal_pair, seeded_rng};
use crate::scalar::{linspace, Real};
use crate::EPS_END;

/// Trapezoidal θ-nodes when the averaged quantity is not a Fourier mode.
pub const AVERAGE_NODES: usize = 256;
/// Hessian directions sampled per grid point in the O'Neill check.
pub const ONEILL_ANGLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AverageMode {
    /// `f̄ = ⟨f⟩_θ`, which preserves `sec_f ≥ λ`.
    F,
    /// `f̃ = log ⟨e^f⟩_θ`, which preserves the strong bound.
    U,
}

/// Averages a density over the rotation `θ ↦ θ + t` of a surface of revolution.
/// Mode-0 extraction is exact when the averaged field is the stored one.
pub fn average_density<T: Real>(metric: &WarpedMetric<T>, density: &Density<T>, mode: AverageMode) -> Result<Density<T>> {
    if !metric.is_surface() {
        return Err(Error::InvalidMetric("averaging needs the rotation of a surface of revolution".into()));
    }
    let d = match density {
        Density::TwoDim(d) => d,
        invariant => return Ok(invariant.clone()),
    };
    Ok(match (mode, d.form()) {
        (AverageMode::F, FieldForm::F) => Density::RadialF(d.base().clone()),
        (AverageMode::U, FieldForm::U) => Density::RadialU(d.base().clone()),
        (AverageMode::F, FieldForm::U) => {
            Density::RadialF(RadialProfile::theta_mean(Arc::clone(d), MeanKind::MeanLog, AVERAGE_NODES)?)
        }
        (AverageMode::U, FieldForm::F) => {
            Density::RadialF(RadialProfile::theta_mean(Arc::clone(d), MeanKind::LogMeanExp, AVERAGE_NODES)?)
        }
    })
}

/// θ-nodes at which non-radial densities are sampled by [`averaging_check`].
pub const SURFACE_THETA_NODES: usize = 32;

/// Smallest weighted curvature over all unit directions on an `(r, θ)` grid,
/// kept `EPS_END` away from the ends of the domain.
pub fn surface_min_sec<T: Real>(metric: &WarpedMetric<T>, density: &Density<T>, variant: Variant, grid: usize) -> Result<T> {
    let (a, b) = metric.domain();
    let inset = T::lit(EPS_END);
    let nodes = if density.is_radial() { 1 } else { SURFACE_THETA_NODES };
    let mut min = T::infinity();
    for r in linspace(a + inset, b - inset, grid) {
        for k in 0..nodes {
            let theta = T::lit(std::f64::consts::TAU * k as f64 / nodes as f64);
            min = min.min(Surface::at(metric, density, r, theta)?.min_weighted(variant));
        }
    }
    Ok(min)
}

#[derive(Clone, Debug, Serialize)]
pub struct AveragingReport<T> {
    pub mode: AverageMode,
    pub variant: Variant,
    pub min_before: T,
    pub min_after: T,
    /// Averaged `f` on the grid.
    pub grid: Vec<T>,
    pub averaged: Vec<T>,
    pub preserved: bool,
}

/// Averages `density` and compares grid minima of the weighted curvature
/// before and after.
pub fn averaging_check<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    mode: AverageMode,
    variant: Variant,
    grid: usize,
) -> Result<AveragingReport<T>> {
    let averaged = average_density(metric, density, mode)?;
    let min_before = surface_min_sec(metric, density, variant, grid)?;
    let min_after = surface_min_sec(metric, &averaged, variant, grid)?;
    let (a, b) = metric.domain();
    let radii = linspace(a, b, grid);
    let values = radii.iter().map(|&r| Ok(averaged.f_jet(r)?.v)).collect::<Result<Vec<_>>>()?;
    Ok(AveragingReport {
        mode,
        variant,
        min_before,
        min_after,
        grid: radii,
        averaged: values,
        preserved: min_after >= min_before - T::lit(1e-8),
    })
}

/// Replaces the circle warping `ψ` by `ψ √(λ / (λ + ψ²))`: the θ-circle of a
/// surface of revolution, or the second fiber of a doubly warped metric with
/// `m = 1`.
pub fn cheeger_deform<T: Real>(metric: &WarpedMetric<T>, lambda: T) -> Result<WarpedMetric<T>> {
    match metric.kind() {
        MetricKind::SurfaceOfRevolution { phi } => metric.with_warpings(phi.clone().cheeger(lambda)?, None),
        MetricKind::DoublyWarped { phi, psi, m: 1, .. } => {
            metric.with_warpings(phi.clone(), Some(psi.clone().cheeger(lambda)?))
        }
        _ => Err(Error::Unsupported(
            "Cheeger deformation needs a circle fiber (surface of revolution, or doubly warped with m = 1)".into(),
        )),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerReport<T> {
    pub lambda: T,
    /// Smallest `deformed − original` over sampled pairs orthogonal to the orbits.
    pub min_gap: T,
    pub samples: usize,
    pub passed: bool,
}

/// Weighted curvature on random orthonormal pairs orthogonal to the circle
/// orbits, before and after deformation, on interior grid points.
pub fn cheeger_horizontal_check<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    lambda: T,
    variant: Variant,
    grid: usize,
    pairs: usize,
    seed: u64,
) -> Result<CheegerReport<T>> {
    let deformed = cheeger_deform(metric, lambda)?;
    let n = metric.dim();
    // the circle is the last frame vector in both supported kinds
    let horizontal = n - 1;
    if horizontal < 2 {
        return Err(Error::Unsupported("no orthonormal pairs orthogonal to the orbits".into()));
    }
    let (a, b) = metric.domain();
    let inset = T::lit(EPS_END);
    let mut rng = seeded_rng(seed);
    let mut min_gap = T::infinity();
    let mut count = 0;
    for r in linspace(a + inset, b - inset, grid) {
        let before = pointwise_eigendata(metric, density, r)?;
        let after = pointwise_eigendata(&deformed, density, r)?;
        for _ in 0..pairs {
            let (mut u, mut v): (Vec<T>, Vec<T>) = orthonormal_pair(&mut rng, horizontal);
            u.push(T::zero());
            v.push(T::zero());
            let gap = pair_value(&after, &u, &v, variant) - pair_value(&before, &u, &v, variant);
            min_gap = min_gap.min(gap);
            count += 1;
        }
    }
    Ok(CheegerReport { lambda, min_gap, samples: count, passed: min_gap >= -T::lit(1e-8) })
}

/// Quotient of `dr² + φ² g_{S^{2n−1}} + ψ² dθ²` by the diagonal circle:
/// `dr² + φ² k + w_h² h` on `CP^n` with `w_h = φψ / √(φ² + ψ²)`.
#[derive(Clone, Debug)]
pub struct QuotientMetric<T> {
    pub n: usize,
    /// `φ` on the `CP^{n−1}` directions; absent for `n = 1`.
    pub w_k: Option<RadialProfile<T>>,
    pub w_h: RadialProfile<T>,
    /// The base as a surface of revolution, for `n = 1`.
    pub base: Option<WarpedMetric<T>>,
}

pub fn hopf_quotient_metric<T: Real>(total: &WarpedMetric<T>) -> Result<QuotientMetric<T>> {
    let (phi, psi, k) = match total.kind() {
        MetricKind::DoublyWarped { phi, psi, k, m: 1 } if k % 2 == 1 => (phi, psi, *k),
        _ => {
            return Err(Error::Unsupported(
                "Hopf quotient needs a doubly warped metric with odd k and a circle second fiber".into(),
            ))
        }
    };
    let n = (k + 1) / 2;
    let w_h = RadialProfile::hopf(phi.clone(), psi.clone())?;
    let base = if n == 1 { Some(WarpedMetric::surface(w_h.clone(), total.closure())?) } else { None };
    Ok(QuotientMetric { n, w_k: (n > 1).then(|| phi.clone()), w_h, base })
}

#[derive(Clone, Debug, Serialize)]
pub struct OneillPoint<T> {
    pub r: T,
    /// Base weighted curvature, worst over sampled Hessian directions.
    pub base: T,
    /// Total-space horizontal weighted curvature at the same direction.
    pub total: T,
    /// `¾ |[Y, Z]^V|²`
    pub bracket: T,
    pub residual: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct OneillReport<T> {
    pub variant: Variant,
    pub points: Vec<OneillPoint<T>>,
    pub max_residual: T,
    /// Base curvature ≥ total-space horizontal curvature everywhere.
    pub lower_bound_holds: bool,
}

/// `|[∂r, H]^V|²` for `H = (ψ²∂θ₁ − φ²∂θ₂) / (φψ√(φ²+ψ²))`. The connection
/// terms of `∇_{∂r} H − ∇_H ∂r` cancel, leaving the coordinate bracket,
/// whose coefficients are differentiated numerically.
fn vertical_bracket<T: Real>(phi: &RadialProfile<T>, psi: &RadialProfile<T>, r: T) -> Result<T> {
    let coeffs = |s: T| -> Result<(T, T)> {
        let (p, q) = (phi.value(s)?, psi.value(s)?);
        let norm = (p * p + q * q).sqrt();
        Ok((q / (p * norm), -p / (q * norm)))
    };
    let (p, q) = (phi.value(r)?, psi.value(r)?);
    let h = T::lit(1e-4) * p.min(q).min(T::one());
    let (two, eight, twelve) = (T::lit(2.0), T::lit(8.0), T::lit(12.0));
    let (m2, m1, p1, p2) = (coeffs(r - two * h)?, coeffs(r - h)?, coeffs(r + h)?, coeffs(r + two * h)?);
    let d = |f: fn(&(T, T)) -> T| (f(&m2) - eight * f(&m1) + eight * f(&p1) - f(&p2)) / (twelve * h);
    let (d1, d2) = (d(|c| c.0), d(|c| c.1));
    // vertical generator W = ∂θ₁ + ∂θ₂ with |W|² = φ² + ψ²
    let along = d1 * p * p + d2 * q * q;
    Ok(along * along / (p * p + q * q))
}

/// Compares the base weighted curvature of the Hopf quotient with the
/// total-space horizontal weighted curvature plus `¾|[Y, Z]^V|²`.
pub fn oneill_check<T: Real>(
    total: &WarpedMetric<T>,
    density: &Density<T>,
    grid: usize,
    variant: Variant,
) -> Result<OneillReport<T>> {
    let (phi, psi) = match total.kind() {
        MetricKind::DoublyWarped { phi, psi, k: 1, m: 1 } => (phi, psi),
        _ => return Err(Error::Unsupported("O'Neill verification is limited to doubly warped S³".into())),
    };
    if !density.is_radial() {
        return Err(Error::InvalidDensity("the density must be radial to descend to the quotient".into()));
    }
    let quotient = hopf_quotient_metric(total)?;
    let base = quotient.base.as_ref().expect("n = 1 has a surface base");
    let (a, b) = total.domain();
    let inset = T::lit(EPS_END);
    let three_quarters = T::lit(0.75);

    let mut points = Vec::with_capacity(grid);
    let mut lower_bound_holds = true;
    for r in linspace(a + inset, b - inset, grid) {
        let (p, q): (Jet<T>, Jet<T>) = (phi.jet(r)?, psi.jet(r)?);
        let f = density.f_jet(r)?;
        let norm2 = p.v * p.v + q.v * q.v;
        // H = α E₁ + β E₂ in the orthonormal fiber frame
        let (alpha2, beta2) = (q.v * q.v / norm2, p.v * p.v / norm2);
        let sec_total = alpha2 * (-p.d2 / p.v) + beta2 * (-q.d2 / q.v);
        let hess_h = f.d1 * (alpha2 * p.d1 / p.v + beta2 * q.d1 / q.v);
        let bracket = three_quarters * vertical_bracket(phi, psi, r)?;
        let surface = Surface::at(base, density, r, T::zero())?;

        let mut worst: Option<OneillPoint<T>> = None;
        for k in 0..ONEILL_ANGLES {
            let t = T::PI() * T::lit(k as f64) / T::lit(ONEILL_ANGLES as f64);
            let (s, c) = t.sin_cos();
            let mut horizontal = sec_total + c * c * f.d2 + s * s * hess_h;
            if variant == Variant::Strong {
                horizontal += c * c * f.d1 * f.d1;
            }
            let down = surface.weighted(c, s, variant);
            if down < horizontal - T::lit(1e-8) {
                lower_bound_holds = false;
            }
            let residual = (down - horizontal - bracket).abs();
            if worst.as_ref().is_none_or(|w| residual > w.residual) {
                worst = Some(OneillPoint { r, base: down, total: horizontal, bracket, residual });
            }
        }
        points.extend(worst);
    }
    let max_residual = points.iter().map(|p| p.residual).fold(T::zero(), T::max);
    Ok(OneillReport { variant, points, max_residual, lower_bound_holds })
}

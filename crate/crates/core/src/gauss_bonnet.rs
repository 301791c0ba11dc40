//! Integral checks on surfaces of revolution: Gauss–Bonnet for the
//! symmetrized weighted curvature, the strong trace identity, and the
//! area bound under `sym sec ≥ 1`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curvature::{Surface, Variant};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::metric::{Closure, WarpedMetric};
use crate::quadrature::{integrate, DEFAULT_TOL};
use crate::scalar::{linspace, Real};
use crate::{EPS_POS, SERIES_COLLAR};

/// θ-nodes of the trapezoidal rule for non-radial densities; exact for
/// Fourier modes of order below this.
pub const THETA_NODES: usize = 64;
pub const AREA_TOL: f64 = 1e-8;

fn euler_characteristic(closure: Closure) -> Result<i32> {
    match closure {
        Closure::SphereLike => Ok(2),
        Closure::Periodic => Ok(0),
        other => Err(Error::Unsupported(format!("Gauss–Bonnet needs a closed surface, got {other:?}"))),
    }
}

fn require_surface<T: Real>(metric: &WarpedMetric<T>) -> Result<()> {
    if metric.is_surface() {
        Ok(())
    } else {
        Err(Error::InvalidMetric("expected a surface of revolution".into()))
    }
}

/// Keeps `r` at least a series collar away from collapsing ends, where
/// polar coordinates degenerate. The integrands carry a factor `φ`, so the
/// substitution changes the integral by `O(collar²)`.
fn clamp_to_collar<T: Real>(metric: &WarpedMetric<T>, r: T) -> T {
    let collar = T::lit(SERIES_COLLAR);
    let (a, b) = metric.domain();
    let ends = metric.closed_ends();
    let mut r = r;
    if ends.iter().any(|&e| e == a) {
        r = r.max(a + collar);
    }
    if ends.iter().any(|&e| e == b) {
        r = r.min(b - collar);
    }
    r
}

/// `∫ g(r, θ) dA` with `dA = φ dr dθ`, for `g` computed from the surface data.
fn area_integral<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    g: impl Fn(&Surface<T>) -> T,
) -> Result<T> {
    let nodes = if density.is_radial() { 1 } else { THETA_NODES };
    let tau = T::lit(2.0 * PI);
    let thetas: Vec<T> = (0..nodes).map(|k| tau * T::lit(k as f64) / T::lit(nodes as f64)).collect();
    let (a, b) = metric.domain();
    integrate(
        |r| {
            let phi = metric.primary().value(r)?;
            let at = clamp_to_collar(metric, r);
            let mut mean = T::zero();
            for &theta in &thetas {
                mean += g(&Surface::at(metric, density, at, theta)?);
            }
            Ok(tau * phi * mean / T::lit(nodes as f64))
        },
        a,
        b,
        T::lit(DEFAULT_TOL),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussBonnetReport<T> {
    pub euler_characteristic: i32,
    /// `∫ sym sec_f dA`
    pub integral: T,
    pub expected: T,
    pub residual: T,
    /// `∫ (scal + Δf + |∇f|²) dA − 4πχ`
    pub strong_trace_excess: T,
    /// `∫ |∇f|² dA`
    pub gradient_energy: T,
    pub strong_residual: T,
}

pub fn gauss_bonnet<T: Real>(metric: &WarpedMetric<T>, density: &Density<T>) -> Result<GaussBonnetReport<T>> {
    require_surface(metric)?;
    let chi = euler_characteristic(metric.closure())?;
    let expected = T::lit(2.0 * PI * chi as f64);
    let integral = area_integral(metric, density, |s| s.sym(Variant::Weighted))?;
    let trace = area_integral(metric, density, |s| {
        let (gr, gt) = s.gradient();
        T::lit(2.0) * s.gauss() + s.laplacian() + gr * gr + gt * gt
    })?;
    let gradient_energy = area_integral(metric, density, |s| {
        let (gr, gt) = s.gradient();
        gr * gr + gt * gt
    })?;
    let strong_trace_excess = trace - T::lit(2.0) * expected;
    Ok(GaussBonnetReport {
        euler_characteristic: chi,
        integral,
        expected,
        residual: (integral - expected).abs(),
        strong_trace_excess,
        gradient_energy,
        strong_residual: (strong_trace_excess - gradient_energy).abs(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AreaBoundReport<T> {
    pub area: T,
    pub bound: T,
    /// Smallest `sym sec_f` on the grid.
    pub min_sym_sec: T,
    pub hypothesis_holds: bool,
    pub passed: bool,
    pub equality: bool,
}

/// Checks `area ≤ 4π` for a sphere-like surface with `sym sec_f ≥ 1` on the grid.
pub fn area_bound_check<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    grid: usize,
) -> Result<AreaBoundReport<T>> {
    require_surface(metric)?;
    if metric.closure() != Closure::SphereLike {
        return Err(Error::Unsupported("area bound needs a sphere-like surface".into()));
    }
    let (a, b) = metric.domain();
    let nodes = if density.is_radial() { 1 } else { THETA_NODES };
    let mut min_sym_sec = T::infinity();
    for r in linspace(a, b, grid) {
        let at = clamp_to_collar(metric, r);
        for k in 0..nodes {
            let theta = T::lit(2.0 * PI * k as f64 / nodes as f64);
            min_sym_sec = min_sym_sec.min(Surface::at(metric, density, at, theta)?.sym(Variant::Weighted));
        }
    }
    let tau = T::lit(2.0 * PI);
    let area = integrate(|r| Ok(tau * metric.primary().value(r)?), a, b, T::lit(DEFAULT_TOL))?;
    let bound = T::lit(4.0 * PI);
    let hypothesis_holds = min_sym_sec >= T::one() - T::lit(EPS_POS);
    Ok(AreaBoundReport {
        area,
        bound,
        min_sym_sec,
        hypothesis_holds,
        passed: hypothesis_holds && area <= bound + T::lit(AREA_TOL),
        equality: (area - bound).abs() <= T::lit(AREA_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Analytic, Family, RadialProfile};
    use std::f64::consts::FRAC_PI_2;

    fn sphere() -> WarpedMetric<f64> {
        WarpedMetric::surface(RadialProfile::family(Family::Sin, (0.0, PI)).unwrap(), Closure::SphereLike)
            .unwrap()
    }

    #[test]
    fn round_sphere_total_is_four_pi() {
        let g = sphere();
        let rep = gauss_bonnet(&g, &Density::zero((0.0, PI)).unwrap()).unwrap();
        assert!(rep.residual < 1e-8, "{}", rep.residual);
        assert!(rep.gradient_energy.abs() < 1e-12);
    }

    #[test]
    fn density_terms_integrate_to_zero() {
        let g = sphere();
        let f = Density::RadialF(RadialProfile::family(Family::Cos, (0.0, PI)).unwrap());
        let rep = gauss_bonnet(&g, &f).unwrap();
        assert!(rep.residual < 1e-6, "{}", rep.residual);
        assert!(rep.strong_residual < 1e-6, "{}", rep.strong_residual);
        assert!(rep.gradient_energy > 1.0);
    }

    #[test]
    fn area_bound_on_spheres() {
        let f = Density::zero((0.0, PI)).unwrap();
        let unit = area_bound_check(&sphere(), &f, 256).unwrap();
        assert!(unit.passed && unit.equality);

        let half = RadialProfile::analytic(Analytic::new(Family::Sin).amplitude(0.5).rate(2.0), (0.0, FRAC_PI_2)).unwrap();
        let small = WarpedMetric::surface(half, Closure::SphereLike).unwrap();
        let rep = area_bound_check(&small, &Density::zero((0.0, FRAC_PI_2)).unwrap(), 256).unwrap();
        assert!((rep.min_sym_sec - 4.0).abs() < 1e-6);
        assert!(rep.passed && !rep.equality);
        assert!((rep.area - PI).abs() < 1e-8);
    }

    #[test]
    fn open_surfaces_rejected() {
        let g = WarpedMetric::surface(RadialProfile::family(Family::Sin, (0.1, 1.0)).unwrap(), Closure::OpenLine)
            .unwrap();
        assert!(gauss_bonnet(&g, &Density::zero((0.1, 1.0)).unwrap()).is_err());
    }
}

//! Necessary conditions for positive weighted curvature on rotationally
//! symmetric spheres.

use serde::Serialize;

use crate::curvature::pointwise_eigendata;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::metric::{Closure, MetricKind, WarpedMetric};
use crate::profile::{Analytic, Family, RadialProfile};
use crate::quadrature::{integrate, DEFAULT_TOL};
use crate::scalar::{linspace, Real};
use crate::EPS_POS;

const SCAN_POINTS: usize = 2049;
const BISECTIONS: usize = 80;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub r: f64,
    /// `−φ''/φ`
    pub radial_curvature: f64,
    /// `(κ − φ'²)/φ²`, absent for surfaces.
    pub fiber_curvature: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    /// `∫ −φ''/φ dr` over the whole domain.
    pub integral: f64,
    pub integral_passed: bool,
    pub critical_points: Vec<CriticalPoint>,
    /// Exactly one critical point, with positive curvature there.
    pub critical_passed: bool,
}

impl ObstructionReport {
    pub fn passed(&self) -> bool {
        self.integral_passed && self.critical_passed
    }
}

/// Interior zeros of `p'`, located by sign changes on a scan grid and
/// refined by bisection.
pub fn critical_points<T: Real>(p: &RadialProfile<T>) -> Result<Vec<T>> {
    let (a, b) = p.domain();
    let grid = linspace(a, b, SCAN_POINTS);
    let inner = &grid[1..grid.len() - 1];
    let d: Vec<T> = inner.iter().map(|&r| p.derivative(r, 1)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..inner.len() {
        if d[k] == T::zero() {
            out.push(inner[k]);
            continue;
        }
        if k + 1 < inner.len() && d[k + 1] != T::zero() && (d[k] < T::zero()) != (d[k + 1] < T::zero()) {
            let (mut lo, mut hi) = (inner[k], inner[k + 1]);
            let lo_neg = d[k] < T::zero();
            for _ in 0..BISECTIONS {
                let mid = T::lit(0.5) * (lo + hi);
                if (p.derivative(mid, 1)? < T::zero()) == lo_neg {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(T::lit(0.5) * (lo + hi));
        }
    }
    Ok(out)
}

pub fn obstruction_checks<T: Real>(metric: &WarpedMetric<T>) -> Result<ObstructionReport> {
    if metric.closure() != Closure::SphereLike {
        return Err(Error::InvalidArgument("obstruction checks need a sphere_like metric".into()));
    }
    if matches!(metric.kind(), MetricKind::DoublyWarped { .. }) {
        return Err(Error::Unsupported("obstruction checks for doubly warped metrics".into()));
    }
    let zero = Density::zero(metric.domain())?;
    let (a, b) = metric.domain();
    let radial = |r: T| -> Result<T> { Ok(pointwise_eigendata(metric, &zero, r)?.lambda[0][1]) };
    let integral = integrate(radial, a, b, T::lit(DEFAULT_TOL))?.to_f64_lossy();

    let phi = metric.primary();
    let surface = metric.dim() == 2;
    let mut points = Vec::new();
    for r in critical_points(phi)? {
        let data = pointwise_eigendata(metric, &zero, r)?;
        points.push(CriticalPoint {
            r: r.to_f64_lossy(),
            radial_curvature: data.lambda[0][1].to_f64_lossy(),
            fiber_curvature: (!surface).then(|| data.lambda[1][2].to_f64_lossy()),
        });
    }
    let critical_passed = points.len() == 1
        && points[0].radial_curvature > EPS_POS
        && points[0].fiber_curvature.map_or(true, |k| k > EPS_POS);
    Ok(ObstructionReport {
        integral,
        integral_passed: integral >= -EPS_POS,
        critical_points: points,
        critical_passed,
    })
}

/// `sin r − depth·sin³ r` on `[0, π]`: for `depth > 1/3` two caps joined by a
/// neck of negative curvature, with three critical points.
pub fn dumbbell_warping<T: Real>(depth: T) -> Result<RadialProfile<T>> {
    if !(depth > T::zero() && depth < T::one()) {
        return Err(Error::ParameterOutOfRange(format!("dumbbell depth must lie in (0, 1), got {depth}")));
    }
    // sin³ r = (3 sin r − sin 3r) / 4
    let quarter = T::lit(0.25);
    let domain = (T::zero(), T::PI());
    RadialProfile::sum(vec![
        RadialProfile::analytic(
            Analytic::new(Family::Sin).amplitude(T::one() - T::lit(3.0) * quarter * depth),
            domain,
        )?,
        RadialProfile::analytic(
            Analytic::new(Family::Sin).amplitude(quarter * depth).rate(T::lit(3.0)),
            domain,
        )?,
    ])
}

use rayon::prelude::*;
use serde::Serialize;

use crate::density::Density;
use crate::error::{Error, Result};
use crate::metric::WarpedMetric;
use crate::scalar::{linspace, Real};
use crate::{EPS_BC, EPS_POS};

use super::{pointwise_eigendata, testpairs_from, TestPair, Variant};

pub const MIN_GRID: usize = 16;
pub const DEFAULT_GRID: usize = 512;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict<T> {
    Certified { lambda: T },
    Violated { r: T, value: T },
}

impl<T> Verdict<T> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord<T> {
    pub r: T,
    pub pairs: Vec<TestPair<T>>,
    pub min: T,
    pub max: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub eps_pos: f64,
    pub eps_bc: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport<T> {
    pub variant: Variant,
    pub lambda: T,
    pub grid: Vec<T>,
    pub per_point: Vec<PointRecord<T>>,
    pub global_min: T,
    pub global_max: T,
    /// Radius of the smallest pointwise minimum.
    pub argmin: T,
    pub verdict: Verdict<T>,
    pub tolerances: Tolerances,
}

/// Certifies `sec_f ≥ λ` (or the strong bound) on a uniform grid of the
/// metric's domain.
pub fn certify_bound<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    lambda: T,
    variant: Variant,
    points: usize,
) -> Result<CurvatureReport<T>> {
    if points < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "certification grid needs at least {MIN_GRID} points, got {points}"
        )));
    }
    let (a, b) = metric.domain();
    certify_on_grid(metric, density, lambda, variant, &linspace(a, b, points))
}

/// Certification on caller-supplied radii.
pub fn certify_on_grid<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    lambda: T,
    variant: Variant,
    grid: &[T],
) -> Result<CurvatureReport<T>> {
    if grid.len() < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "certification grid needs at least {MIN_GRID} points, got {}",
            grid.len()
        )));
    }
    let per_point: Vec<PointRecord<T>> = grid
        .par_iter()
        .map(|&r| {
            let data = pointwise_eigendata(metric, density, r)?;
            let pairs = testpairs_from(&data, variant);
            let min = pairs.iter().map(|p| p.value).fold(T::infinity(), T::min);
            let max = pairs.iter().map(|p| p.value).fold(T::neg_infinity(), T::max);
            Ok(PointRecord { r, pairs, min, max })
        })
        .collect::<Result<_>>()?;

    let (mut global_min, mut argmin) = (T::infinity(), grid[0]);
    let mut global_max = T::neg_infinity();
    for p in &per_point {
        if p.min < global_min || p.min.is_nan() {
            global_min = p.min;
            argmin = p.r;
        }
        global_max = global_max.max(p.max);
    }
    let verdict = if global_min >= lambda - T::lit(EPS_POS) {
        Verdict::Certified { lambda }
    } else {
        Verdict::Violated { r: argmin, value: global_min }
    };
    Ok(CurvatureReport {
        variant,
        lambda,
        grid: grid.to_vec(),
        per_point,
        global_min,
        global_max,
        argmin,
        verdict,
        tolerances: Tolerances { eps_pos: EPS_POS, eps_bc: EPS_BC },
    })
}

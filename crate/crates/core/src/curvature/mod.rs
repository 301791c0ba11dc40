//! Curvature-operator eigenvalues, density Hessians, and weighted sectional
//! curvatures of the model metrics.
//!
//! In the adapted orthonormal frame `{∂r, E_1, …}` of a warped product the
//! curvature operator is diagonal on the wedges `E_i ∧ E_j` and the Hessian of
//! a radial density is diagonal on the vectors, so everything reduces to the
//! tables stored in [`EigenData`].

mod bruteforce;
mod certify;
mod surface;

pub use bruteforce::{bruteforce_min_sec, pair_value};
pub use certify::{certify_bound, certify_on_grid, DEFAULT_GRID, MIN_GRID, CurvatureReport, PointRecord, Verdict};
pub use surface::{sym_sec_2d, weighted_sec_2d, Surface};

use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::metric::{Block, WarpedMetric};
use crate::scalar::Real;
use crate::{EPS_END, SERIES_COLLAR};

/// Weighted `sec + Hess f(V,V)` or strongly weighted `… + df(V)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Weighted,
    Strong,
}

/// Role of a frame vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Radial,
    Fiber { block: usize, index: usize },
}

/// Diagonalized curvature and density data at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenData<T> {
    pub n: usize,
    /// Eigenvalues of `L_X g = 2 Hess f`.
    pub mu: Vec<T>,
    /// Eigenvalues of `Hess f`.
    pub hess: Vec<T>,
    /// `df(E_i)`.
    pub df: Vec<T>,
    /// Symmetric `n × n` table; the diagonal is NaN.
    pub lambda: Vec<Vec<T>>,
    pub labels: Vec<Label>,
}

impl<T: Real> EigenData<T> {
    /// Abstract data with no geometric labels, `Hess = μ / 2`, `df = 0`.
    pub fn from_tables(lambda: Vec<Vec<T>>, mu: Vec<T>) -> Result<Self> {
        let n = mu.len();
        if n < 2 || lambda.len() != n || lambda.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "need an n × n curvature table with n ≥ 2 matching {n} eigenvalues"
            )));
        }
        let mut lambda = lambda;
        for i in 0..n {
            lambda[i][i] = T::nan();
            for j in 0..i {
                if lambda[i][j] != lambda[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "curvature table is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let half = T::lit(0.5);
        Ok(Self {
            n,
            hess: mu.iter().map(|&m| m * half).collect(),
            df: vec![T::zero(); n],
            mu,
            lambda,
            labels: (0..n).map(|index| Label::Fiber { block: 0, index }).collect(),
        })
    }

    /// Per-vector term added to `λ_ij` for the given variant.
    pub fn term(&self, i: usize, variant: Variant) -> T {
        match variant {
            Variant::Weighted => self.hess[i],
            Variant::Strong => self.hess[i] + self.df[i] * self.df[i],
        }
    }

    /// Weighted curvature of the frame pair `(E_i, E_j)`, `E_i` the Hessian direction.
    pub fn pair(&self, i: usize, j: usize, variant: Variant) -> T {
        self.lambda[i][j] + self.term(i, variant)
    }

    /// Copy with `μ` (and the Hessian) scaled by `s`.
    pub fn scaled_density(&self, s: T) -> Self {
        let mut out = self.clone();
        out.mu.iter_mut().for_each(|m| *m = *m * s);
        out.hess.iter_mut().for_each(|h| *h = *h * s);
        out.df.iter_mut().for_each(|d| *d = *d * s);
        out
    }
}

/// A representative ordered frame pair with its weighted curvature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestPair<T> {
    pub label: String,
    pub i: usize,
    pub j: usize,
    pub value: T,
}

const SERIES_CHECK_TOL: f64 = 1e-6;

/// Data of one warping block at a point: `-w''/w`, `(κ - w'²)/w²`, and the
/// Hessian eigenvalue `f' w'/w` on the block.
#[derive(Clone, Copy, Debug)]
struct BlockValues<T> {
    radial: T,
    fiber: T,
    hess: T,
}

fn singularity<T: Real>(r: T, reason: impl Into<String>) -> Error {
    Error::Singularity { r: r.to_f64_lossy(), reason: reason.into() }
}

fn require_small<T: Real>(r: T, value: T, what: &str) -> Result<()> {
    if value.abs() > T::lit(SERIES_CHECK_TOL) {
        Err(singularity(r, format!("{what} = {value} does not vanish at the collapsed end")))
    } else {
        Ok(())
    }
}

/// Point at which warped quantities are evaluated: either the requested
/// radius, or the collapsed end whose limits replace the quotients.
enum Evaluation<T> {
    Direct(T),
    Limit { end: T, block: usize },
}

fn locate<T: Real>(metric: &WarpedMetric<T>, density: &Density<T>, r: T) -> Result<Evaluation<T>> {
    let (a, b) = metric.domain();
    let collar = T::lit(SERIES_COLLAR);
    let excluded = T::lit(EPS_END);
    for (idx, block) in metric.blocks().iter().enumerate() {
        for (closes, end) in [(block.closes.0, a), (block.closes.1, b)] {
            if !closes {
                continue;
            }
            let dist = (r - end).abs();
            let series = block.w.max_order() >= 3 && density.max_order() >= 3;
            if series && dist <= collar {
                return Ok(Evaluation::Limit { end, block: idx });
            }
            if !series && dist < excluded {
                return Err(singularity(
                    r,
                    "within the excluded end collar and third-derivative data is unavailable",
                ));
            }
        }
    }
    Ok(Evaluation::Direct(r))
}

/// Curvature-operator and Hessian eigenvalues at radius `r`.
pub fn pointwise_eigendata<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    r: T,
) -> Result<EigenData<T>> {
    let blocks = metric.blocks();
    let eval = locate(metric, density, r)?;
    let at = match eval {
        Evaluation::Direct(r) => r,
        Evaluation::Limit { end, .. } => end,
    };
    let f = density.f_jet(at)?;
    let jets: Vec<Jet<T>> = blocks.iter().map(|b| b.w.jet(at)).collect::<Result<_>>()?;
    let singular = match eval {
        Evaluation::Limit { block, .. } => Some(block),
        Evaluation::Direct(_) => None,
    };

    let mut values = Vec::with_capacity(blocks.len());
    for (idx, (block, w)) in blocks.iter().zip(&jets).enumerate() {
        values.push(if singular == Some(idx) {
            block_limit(block, w, &f, at)?
        } else {
            BlockValues {
                radial: -w.d2 / w.v,
                fiber: (block.kappa - w.d1 * w.d1) / (w.v * w.v),
                hess: f.d1 * w.d1 / w.v,
            }
        });
    }

    let n = metric.dim();
    let mut labels = Vec::with_capacity(n);
    labels.push(Label::Radial);
    for (block, b) in blocks.iter().enumerate() {
        labels.extend((0..b.dim).map(|index| Label::Fiber { block, index }));
    }

    let mut lambda = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            lambda[i][j] = match (labels[i], labels[j]) {
                _ if i == j => T::nan(),
                (Label::Radial, Label::Fiber { block, .. }) | (Label::Fiber { block, .. }, Label::Radial) => {
                    values[block].radial
                }
                (Label::Fiber { block: p, .. }, Label::Fiber { block: q, .. }) if p == q => values[p].fiber,
                (Label::Fiber { block: p, .. }, Label::Fiber { block: q, .. }) => {
                    cross_term(&jets, p, q, singular, at)?
                }
                (Label::Radial, Label::Radial) => unreachable!(),
            };
        }
    }

    let hess: Vec<T> = labels
        .iter()
        .map(|l| match l {
            Label::Radial => f.d2,
            Label::Fiber { block, .. } => values[*block].hess,
        })
        .collect();
    let df = labels
        .iter()
        .map(|l| if *l == Label::Radial { f.d1 } else { T::zero() })
        .collect();
    let two = T::lit(2.0);
    Ok(EigenData { n, mu: hess.iter().map(|&h| two * h).collect(), hess, df, lambda, labels })
}

/// Limits of the block quantities where `w` collapses, assuming the
/// smooth-closure conditions (checked) hold.
fn block_limit<T: Real>(block: &Block<'_, T>, w: &Jet<T>, f: &Jet<T>, end: T) -> Result<BlockValues<T>> {
    if w.d1.abs() < T::lit(SERIES_CHECK_TOL) {
        return Err(singularity(end, "warping collapses with vanishing derivative"));
    }
    require_small(end, w.d2, "w''")?;
    if block.dim >= 2 {
        require_small(end, block.kappa - w.d1 * w.d1, "κ − w'²")?;
    }
    require_small(end, f.d1, "f'")?;
    let limit = -w.d3 / w.d1;
    Ok(BlockValues { radial: limit, fiber: limit, hess: f.d2 })
}

fn cross_term<T: Real>(jets: &[Jet<T>], p: usize, q: usize, singular: Option<usize>, at: T) -> Result<T> {
    let (wp, wq) = (&jets[p], &jets[q]);
    match singular {
        Some(s) if s == p || s == q => {
            let other = if s == p { wq } else { wp };
            require_small(at, other.d1, "w' of the non-collapsing factor")?;
            Ok(-other.d2 / other.v)
        }
        _ => Ok(-(wp.d1 * wq.d1) / (wp.v * wq.v)),
    }
}

fn vector_name(labels: &[Label], i: usize, two_blocks: bool) -> String {
    match labels[i] {
        Label::Radial => "dr".into(),
        Label::Fiber { block, index } => {
            let base = if two_blocks && block == 1 { "Z" } else { "Y" };
            match (two_blocks, index) {
                (false, 0) => "Y".into(),
                (false, _) => "Z".into(),
                (true, 0) => base.into(),
                (true, _) => format!("{base}'"),
            }
        }
    }
}

/// Representative frame pairs: one per distinct combination of roles.
pub fn representative_pairs(labels: &[Label]) -> Vec<(usize, usize)> {
    let mut starts: Vec<(usize, usize)> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        if let Label::Fiber { block, index: 0 } = l {
            let dim = labels
                .iter()
                .filter(|m| matches!(m, Label::Fiber { block: b, .. } if b == block))
                .count();
            starts.push((i, dim));
        }
    }
    let mut out = Vec::new();
    for (k, &(s, dim)) in starts.iter().enumerate() {
        out.push((0, s));
        out.push((s, 0));
        if dim >= 2 {
            out.push((s, s + 1));
        }
        for &(t, _) in &starts[k + 1..] {
            out.push((s, t));
            out.push((t, s));
        }
    }
    out
}

/// Weighted curvatures of the representative test pairs at `r`.
pub fn testpair_curvatures<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    r: T,
    variant: Variant,
) -> Result<Vec<TestPair<T>>> {
    let data = pointwise_eigendata(metric, density, r)?;
    Ok(testpairs_from(&data, variant))
}

pub fn testpairs_from<T: Real>(data: &EigenData<T>, variant: Variant) -> Vec<TestPair<T>> {
    let two_blocks = data
        .labels
        .iter()
        .any(|l| matches!(l, Label::Fiber { block: 1, .. }));
    representative_pairs(&data.labels)
        .into_iter()
        .map(|(i, j)| TestPair {
            label: format!(
                "({},{})",
                vector_name(&data.labels, i, two_blocks),
                vector_name(&data.labels, j, two_blocks)
            ),
            i,
            j,
            value: data.pair(i, j, variant),
        })
        .collect()
}

/// Pointwise minimum of the weighted curvature: the smallest attained corner
/// `λ_ij + term_i`, which covers every ordered frame pair.
pub fn pointwise_min<T: Real>(data: &EigenData<T>, variant: Variant) -> T {
    let mut m = T::infinity();
    for i in 0..data.n {
        for j in 0..data.n {
            if i != j {
                m = m.min(data.pair(i, j, variant));
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Closure, FiberSpec};
    use crate::profile::{Analytic, Family, RadialProfile};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn round_sphere(dim: usize) -> WarpedMetric<f64> {
        let phi = RadialProfile::family(Family::Sin, (0.0, PI)).unwrap();
        WarpedMetric::single_warped(phi, FiberSpec::sphere(dim), Closure::SphereLike).unwrap()
    }

    #[test]
    fn round_sphere_is_isotropic() {
        let g = round_sphere(3);
        let f = Density::zero((0.0, PI)).unwrap();
        for r in [0.0, FRAC_PI_4, 2.0, PI] {
            let d = pointwise_eigendata(&g, &f, r).unwrap();
            for i in 0..d.n {
                assert_eq!(d.hess[i], 0.0);
                for j in 0..d.n {
                    if i != j {
                        assert!((d.lambda[i][j] - 1.0).abs() < 1e-12, "r = {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_flat_space() {
        let g = WarpedMetric::<f64>::flat(4, 5.0).unwrap();
        let f = Density::RadialF(
            RadialProfile::analytic(
                Analytic::new(Family::Power(2.0)).amplitude(0.5),
                (0.0, 5.0),
            )
            .unwrap(),
        );
        let d = pointwise_eigendata(&g, &f, 2.0).unwrap();
        assert!(d.hess.iter().all(|h| (h - 1.0).abs() < 1e-15));
        assert!(d.lambda.iter().flatten().all(|l| l.is_nan() || *l == 0.0));
        let at_origin = pointwise_eigendata(&g, &f, 0.0).unwrap();
        assert!(at_origin.hess.iter().all(|h| (h - 1.0).abs() < 1e-15));
    }

    #[test]
    fn round_three_sphere_doubly_warped() {
        let phi = RadialProfile::family(Family::Sin, (0.0, FRAC_PI_2)).unwrap();
        let psi = RadialProfile::family(Family::Cos, (0.0, FRAC_PI_2)).unwrap();
        let g = WarpedMetric::doubly_warped(phi, psi, 1, 1, Closure::SphereLike).unwrap();
        let f = Density::zero((0.0, FRAC_PI_2)).unwrap();
        for r in [0.0, FRAC_PI_4, FRAC_PI_2] {
            let d = pointwise_eigendata(&g, &f, r).unwrap();
            let pairs = testpairs_from(&d, Variant::Weighted);
            assert_eq!(pairs.len(), 6);
            assert!(pairs.iter().all(|p| (p.value - 1.0).abs() < 1e-12), "{pairs:?}");
        }
    }

    #[test]
    fn hemisphere_test_pairs() {
        let phi = RadialProfile::family(Family::Sin, (0.05, FRAC_PI_2 - 0.05)).unwrap();
        let g = WarpedMetric::single_warped(phi, FiberSpec::sphere(2), Closure::OpenLine).unwrap();
        let f = Density::RadialF(
            RadialProfile::analytic(
                Analytic::new(Family::LogCos).amplitude(-1.0),
                (0.05, FRAC_PI_2 - 0.05),
            )
            .unwrap(),
        );
        let pairs = testpair_curvatures(&g, &f, FRAC_PI_3, Variant::Weighted).unwrap();
        let labels: Vec<&str> = pairs.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, ["(dr,Y)", "(Y,dr)", "(Y,Z)"]);
        for (p, want) in pairs.iter().zip([5.0, 2.0, 2.0]) {
            assert!((p.value - want).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn singular_end_without_closure_is_reported() {
        let g = round_sphere(2);
        let f = Density::RadialF(RadialProfile::family(Family::Identity, (0.0, PI)).unwrap());
        assert!(matches!(pointwise_eigendata(&g, &f, 0.0), Err(Error::Singularity { .. })));
        assert!(pointwise_eigendata(&g, &f, 0.5).is_ok());
    }
}

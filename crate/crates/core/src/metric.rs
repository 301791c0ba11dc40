//! Model metrics: warped products over an interval of the radial coordinate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{Family, RadialProfile};
use crate::scalar::{linspace, Real};
use crate::EPS_BC;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FiberCurvature<T> {
    Constant(T),
    /// Sectional curvatures of the fiber lie in `[min, max]`.
    Bounds { min: T, max: T },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberSpec<T> {
    pub dim: usize,
    pub curvature: FiberCurvature<T>,
}

impl<T: Real> FiberSpec<T> {
    pub fn sphere(dim: usize) -> Self {
        Self { dim, curvature: FiberCurvature::Constant(T::one()) }
    }

    pub fn flat(dim: usize) -> Self {
        Self { dim, curvature: FiberCurvature::Constant(T::zero()) }
    }

    pub fn constant(dim: usize, kappa: T) -> Self {
        Self { dim, curvature: FiberCurvature::Constant(kappa) }
    }

    /// Curvature entering the minimum of the fiber-plane curvatures.
    pub fn kappa_min(&self) -> T {
        match self.curvature {
            FiberCurvature::Constant(k) => k,
            FiberCurvature::Bounds { min, .. } => min,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    OpenLine,
    Periodic,
    PlaneLike,
    SphereLike,
}

#[derive(Clone, Debug)]
pub enum MetricKind<T> {
    /// `dr² + φ² g_N`
    SingleWarped { phi: RadialProfile<T>, fiber: FiberSpec<T> },
    /// `dr² + φ² g_{S^k} + ψ² g_{S^m}`
    DoublyWarped { phi: RadialProfile<T>, psi: RadialProfile<T>, k: usize, m: usize },
    /// `dr² + φ² dθ²`
    SurfaceOfRevolution { phi: RadialProfile<T> },
    /// Euclidean `R^n` in polar form `dr² + r² g_{S^{n−1}}`.
    Flat { n: usize, phi: RadialProfile<T> },
}

/// One warped factor `w² g_F` with `F` of constant (or lower-bounded) curvature.
#[derive(Clone, Copy, Debug)]
pub struct Block<'a, T> {
    pub w: &'a RadialProfile<T>,
    pub dim: usize,
    pub kappa: T,
    /// Whether `w` vanishes at the left/right end of the domain.
    pub closes: (bool, bool),
}

#[derive(Clone, Debug)]
pub struct WarpedMetric<T> {
    kind: MetricKind<T>,
    closure: Closure,
    closes: Vec<(bool, bool)>,
}

const POSITIVITY_NODES: usize = 257;

impl<T: Real> WarpedMetric<T> {
    pub fn new(kind: MetricKind<T>, closure: Closure) -> Result<Self> {
        let warpings: Vec<&RadialProfile<T>> = match &kind {
            MetricKind::SingleWarped { phi, fiber } => {
                if fiber.dim == 0 {
                    return Err(Error::InvalidMetric("fiber dimension must be at least 1".into()));
                }
                if let FiberCurvature::Bounds { min, max } = fiber.curvature {
                    if min > max {
                        return Err(Error::InvalidMetric(format!(
                            "fiber curvature bounds [{min}, {max}] are reversed"
                        )));
                    }
                }
                vec![phi]
            }
            MetricKind::DoublyWarped { phi, psi, k, m } => {
                if *k == 0 || *m == 0 {
                    return Err(Error::InvalidMetric("fiber dimensions must be at least 1".into()));
                }
                if phi.domain() != psi.domain() {
                    return Err(Error::InvalidMetric("φ and ψ must share a domain".into()));
                }
                vec![phi, psi]
            }
            MetricKind::SurfaceOfRevolution { phi } => vec![phi],
            MetricKind::Flat { n, phi } => {
                if *n < 2 {
                    return Err(Error::InvalidMetric("flat polar model needs n ≥ 2".into()));
                }
                vec![phi]
            }
        };
        let (a, b) = warpings[0].domain();
        let tol = T::lit(EPS_BC);
        let mut closes = Vec::with_capacity(warpings.len());
        for w in &warpings {
            let nodes = linspace(a, b, POSITIVITY_NODES);
            for &r in &nodes[1..nodes.len() - 1] {
                let v = w.value(r)?;
                if !(v > T::zero()) {
                    return Err(Error::InvalidMetric(format!(
                        "warping function must be positive inside the domain, got {v} at r = {r}"
                    )));
                }
            }
            let (wa, wb) = (w.value(a)?, w.value(b)?);
            if wa < -tol || wb < -tol {
                return Err(Error::InvalidMetric("warping function is negative at an endpoint".into()));
            }
            closes.push((wa.abs() <= tol, wb.abs() <= tol));
        }
        let left = closes.iter().any(|c| c.0);
        let right = closes.iter().any(|c| c.1);
        match closure {
            Closure::SphereLike if !(left && right) => {
                return Err(Error::InvalidMetric(format!(
                    "sphere_like closure needs a collapsing warping at r = {a} and r = {b}"
                )));
            }
            Closure::PlaneLike if !left => {
                return Err(Error::InvalidMetric(format!(
                    "plane_like closure needs φ({a}) = 0"
                )));
            }
            Closure::OpenLine | Closure::Periodic if left || right => {
                return Err(Error::InvalidMetric(
                    "a warping function vanishes at an endpoint of an open domain".into(),
                ));
            }
            _ => {}
        }
        if let MetricKind::Flat { .. } = kind {
            if closure != Closure::PlaneLike {
                return Err(Error::InvalidMetric("flat polar model is plane_like".into()));
            }
        }
        Ok(Self { kind, closure, closes })
    }

    pub fn single_warped(phi: RadialProfile<T>, fiber: FiberSpec<T>, closure: Closure) -> Result<Self> {
        Self::new(MetricKind::SingleWarped { phi, fiber }, closure)
    }

    pub fn doubly_warped(
        phi: RadialProfile<T>,
        psi: RadialProfile<T>,
        k: usize,
        m: usize,
        closure: Closure,
    ) -> Result<Self> {
        Self::new(MetricKind::DoublyWarped { phi, psi, k, m }, closure)
    }

    pub fn surface(phi: RadialProfile<T>, closure: Closure) -> Result<Self> {
        Self::new(MetricKind::SurfaceOfRevolution { phi }, closure)
    }

    /// Euclidean `R^n` on the ball of the given radius.
    pub fn flat(n: usize, radius: T) -> Result<Self> {
        let phi = RadialProfile::family(Family::Identity, (T::zero(), radius))?;
        Self::new(MetricKind::Flat { n, phi }, Closure::PlaneLike)
    }

    pub fn kind(&self) -> &MetricKind<T> {
        &self.kind
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn domain(&self) -> (T, T) {
        self.primary().domain()
    }

    /// The first warping function `φ`.
    pub fn primary(&self) -> &RadialProfile<T> {
        match &self.kind {
            MetricKind::SingleWarped { phi, .. }
            | MetricKind::DoublyWarped { phi, .. }
            | MetricKind::SurfaceOfRevolution { phi }
            | MetricKind::Flat { phi, .. } => phi,
        }
    }

    pub fn blocks(&self) -> Vec<Block<'_, T>> {
        let one = T::one();
        match &self.kind {
            MetricKind::SingleWarped { phi, fiber } => vec![Block {
                w: phi,
                dim: fiber.dim,
                kappa: fiber.kappa_min(),
                closes: self.closes[0],
            }],
            MetricKind::DoublyWarped { phi, psi, k, m } => vec![
                Block { w: phi, dim: *k, kappa: one, closes: self.closes[0] },
                Block { w: psi, dim: *m, kappa: one, closes: self.closes[1] },
            ],
            MetricKind::SurfaceOfRevolution { phi } => {
                vec![Block { w: phi, dim: 1, kappa: one, closes: self.closes[0] }]
            }
            MetricKind::Flat { n, phi } => {
                vec![Block { w: phi, dim: n - 1, kappa: one, closes: self.closes[0] }]
            }
        }
    }

    /// Tangent dimension.
    pub fn dim(&self) -> usize {
        1 + self.blocks().iter().map(|b| b.dim).sum::<usize>()
    }

    pub fn is_surface(&self) -> bool {
        matches!(self.kind, MetricKind::SurfaceOfRevolution { .. })
    }

    /// Endpoints at which some warping collapses.
    pub fn closed_ends(&self) -> Vec<T> {
        let (a, b) = self.domain();
        let mut out = Vec::new();
        if self.closes.iter().any(|c| c.0) {
            out.push(a);
        }
        if self.closes.iter().any(|c| c.1) {
            out.push(b);
        }
        out
    }

    /// Replaces the warping functions, keeping fibers and closure flags.
    pub fn with_warpings(&self, phi: RadialProfile<T>, psi: Option<RadialProfile<T>>) -> Result<Self> {
        let kind = match (&self.kind, psi) {
            (MetricKind::SingleWarped { fiber, .. }, None) => MetricKind::SingleWarped { phi, fiber: *fiber },
            (MetricKind::DoublyWarped { k, m, .. }, Some(psi)) => {
                MetricKind::DoublyWarped { phi, psi, k: *k, m: *m }
            }
            (MetricKind::SurfaceOfRevolution { .. }, None) => MetricKind::SurfaceOfRevolution { phi },
            (MetricKind::Flat { n, .. }, None) => MetricKind::Flat { n: *n, phi },
            _ => return Err(Error::InvalidMetric("warping count does not match the metric".into())),
        };
        Self::new(kind, self.closure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn sin_on(a: f64, b: f64) -> RadialProfile<f64> {
        RadialProfile::family(Family::Sin, (a, b)).unwrap()
    }

    #[test]
    fn round_sphere_closes_at_both_ends() {
        let g = WarpedMetric::single_warped(sin_on(0.0, PI), FiberSpec::sphere(2), Closure::SphereLike)
            .unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.closed_ends().len(), 2);
    }

    #[test]
    fn closure_flags_are_validated() {
        let half = sin_on(0.0, FRAC_PI_2);
        assert!(WarpedMetric::surface(half.clone(), Closure::SphereLike).is_err());
        assert!(WarpedMetric::surface(half, Closure::PlaneLike).is_ok());
        let shifted = sin_on(0.5, 2.5);
        assert!(WarpedMetric::surface(shifted.clone(), Closure::OpenLine).is_ok());
        assert!(WarpedMetric::surface(shifted, Closure::PlaneLike).is_err());
    }

    #[test]
    fn interior_zero_is_rejected() {
        let p = sin_on(0.5, 4.0);
        assert!(matches!(
            WarpedMetric::surface(p, Closure::OpenLine),
            Err(Error::InvalidMetric(_))
        ));
    }

    #[test]
    fn three_sphere_as_doubly_warped() {
        let phi = sin_on(0.0, FRAC_PI_2);
        let psi = RadialProfile::family(Family::Cos, (0.0, FRAC_PI_2)).unwrap();
        let g = WarpedMetric::doubly_warped(phi, psi, 1, 1, Closure::SphereLike).unwrap();
        assert_eq!(g.dim(), 3);
        let b = g.blocks();
        assert_eq!(b[0].closes, (true, false));
        assert_eq!(b[1].closes, (false, true));
    }
}

//! Weighted and symmetrized curvature of a surface of revolution
//! `dr² + φ(r)² dθ²` with a density depending on `(r, θ)`.

use crate::density::{Density, PlaneJet};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::metric::WarpedMetric;
use crate::scalar::Real;

use super::Variant;

/// Pointwise geometry of a surface of revolution at `(r, θ)`.
#[derive(Clone, Copy, Debug)]
pub struct Surface<T> {
    pub phi: Jet<T>,
    pub f: PlaneJet<T>,
}

impl<T: Real> Surface<T> {
    pub fn at(metric: &WarpedMetric<T>, density: &Density<T>, r: T, theta: T) -> Result<Self> {
        if !metric.is_surface() {
            return Err(Error::InvalidMetric("expected a surface of revolution".into()));
        }
        let phi = metric.primary().jet(r)?;
        if !(phi.v > T::lit(crate::EPS_BC)) {
            return Err(Error::Singularity {
                r: r.to_f64_lossy(),
                reason: "polar coordinates degenerate on the axis".into(),
            });
        }
        let f = match density {
            Density::TwoDim(d) => d.f_field(r, theta)?,
            radial => {
                let j = radial.f_jet(r)?;
                PlaneJet { v: j.v, r: j.d1, rr: j.d2, ..PlaneJet::default() }
            }
        };
        Ok(Self { phi, f })
    }

    /// Gauss curvature `−φ''/φ`.
    pub fn gauss(&self) -> T {
        -self.phi.d2 / self.phi.v
    }

    /// Hessian of `f` in the orthonormal frame `(∂r, φ⁻¹∂θ)` as `(h_rr, h_rt, h_tt)`.
    pub fn hessian(&self) -> (T, T, T) {
        let (p, f) = (self.phi, self.f);
        let ratio = p.d1 / p.v;
        (
            f.rr,
            (f.rt - ratio * f.t) / p.v,
            (f.tt + p.v * p.d1 * f.r) / (p.v * p.v),
        )
    }

    /// `(df(∂r), df(φ⁻¹∂θ))`
    pub fn gradient(&self) -> (T, T) {
        (self.f.r, self.f.t / self.phi.v)
    }

    pub fn laplacian(&self) -> T {
        let (hrr, _, htt) = self.hessian();
        hrr + htt
    }

    pub fn sym(&self, variant: Variant) -> T {
        let half = T::lit(0.5);
        let mut v = self.gauss() + half * self.laplacian();
        if variant == Variant::Strong {
            let (gr, gt) = self.gradient();
            v += half * (gr * gr + gt * gt);
        }
        v
    }

    /// Weighted curvature with Hessian direction `V = c ∂r + s φ⁻¹∂θ`.
    pub fn weighted(&self, c: T, s: T, variant: Variant) -> T {
        let (hrr, hrt, htt) = self.hessian();
        let two = T::lit(2.0);
        let mut v = self.gauss() + c * c * hrr + two * c * s * hrt + s * s * htt;
        if variant == Variant::Strong {
            let (gr, gt) = self.gradient();
            let d = c * gr + s * gt;
            v += d * d;
        }
        v
    }

    /// Minimum of [`Surface::weighted`] over unit directions: `K` plus the
    /// smaller eigenvalue of `Hess f` (strong: `Hess f + df ⊗ df`).
    pub fn min_weighted(&self, variant: Variant) -> T {
        let (mut a, mut b, mut d) = self.hessian();
        if variant == Variant::Strong {
            let (gr, gt) = self.gradient();
            a += gr * gr;
            b += gr * gt;
            d += gt * gt;
        }
        let half = T::lit(0.5);
        let spread = (half * (a - d)).hypot(b);
        self.gauss() + half * (a + d) - spread
    }
}

/// `K + Hess f(V, V)` (strong: `+ df(V)²`) for a unit vector `V` given by
/// its components in the orthonormal frame `(∂r, φ⁻¹∂θ)`.
pub fn weighted_sec_2d<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    point: (T, T),
    direction: (T, T),
    variant: Variant,
) -> Result<T> {
    let (c, s) = direction;
    let norm = (c * c + s * s).sqrt();
    if (norm - T::one()).abs() > T::lit(1e-9) {
        return Err(Error::InvalidArgument(format!("direction has norm {norm}, expected 1")));
    }
    Ok(Surface::at(metric, density, point.0, point.1)?.weighted(c, s, variant))
}

/// Symmetrized weighted curvature: the mean of the weighted curvature over
/// unit directions, `K + ½Δf` (strong: `+ ½|∇f|²`).
pub fn sym_sec_2d<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    point: (T, T),
    variant: Variant,
) -> Result<T> {
    Ok(Surface::at(metric, density, point.0, point.1)?.sym(variant))
}

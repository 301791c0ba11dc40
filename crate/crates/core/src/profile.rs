//! Radial profiles: scalar functions of the radial coordinate with exact
//! derivatives through third order.

use std::sync::Arc;

use crate::density::{FieldForm, TwoDimDensity};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::Polynomial;
use crate::scalar::Real;
use crate::spline::CubicSpline;

/// Closed-form base functions `g(x)` of an analytic profile.
#[derive(Clone, Debug, PartialEq)]
pub enum Family<T> {
    Constant,
    Identity,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    /// `x^p`; requires `x > 0` unless `p` is a non-negative integer.
    Power(T),
    /// `log(cos x)` on `(-π/2, π/2)`.
    LogCos,
    Polynomial(Polynomial<T>),
    /// `(1 - x²)^4` on `|x| < 1`, zero outside. C³ with compact support.
    Bump,
}

impl<T: Real> Family<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Constant => "constant",
            Family::Identity => "identity",
            Family::Sin => "sin",
            Family::Cos => "cos",
            Family::Sinh => "sinh",
            Family::Cosh => "cosh",
            Family::Exp => "exp",
            Family::Power(_) => "power",
            Family::LogCos => "log_cos",
            Family::Polynomial(_) => "polynomial",
            Family::Bump => "bump",
        }
    }

    /// `[g, g', g'', g''']` at `x`.
    fn derivs(&self, x: T) -> [T; 4] {
        let z = T::zero();
        match self {
            Family::Constant => [T::one(), z, z, z],
            Family::Identity => [x, T::one(), z, z],
            Family::Sin => {
                let (s, c) = x.sin_cos();
                [s, c, -s, -c]
            }
            Family::Cos => {
                let (s, c) = x.sin_cos();
                [c, -s, -c, s]
            }
            Family::Sinh => {
                let (s, c) = (x.sinh(), x.cosh());
                [s, c, s, c]
            }
            Family::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                [c, s, c, s]
            }
            Family::Exp => {
                let e = x.exp();
                [e, e, e, e]
            }
            Family::Power(p) => {
                let p = *p;
                let one = T::one();
                let two = T::lit(2.0);
                let three = T::lit(3.0);
                let pw = |e: T| {
                    if e == z {
                        one
                    } else {
                        x.powf(e)
                    }
                };
                [
                    pw(p),
                    p * pw(p - one),
                    p * (p - one) * pw(p - two),
                    p * (p - one) * (p - two) * pw(p - three),
                ]
            }
            Family::LogCos => {
                let t = x.tan();
                let sec2 = T::one() + t * t;
                [x.cos().ln(), -t, -sec2, T::lit(-2.0) * t * sec2]
            }
            Family::Polynomial(p) => {
                let j = p.jet(x);
                [j.v, j.d1, j.d2, j.d3]
            }
            Family::Bump => {
                if x.abs() >= T::one() {
                    [z, z, z, z]
                } else {
                    let s = T::one() - x * x;
                    let s2 = s * s;
                    let s3 = s2 * s;
                    // d/dx (1-x²)^4 = -8x s³, then differentiate again.
                    let d1 = T::lit(-8.0) * x * s3;
                    let d2 = T::lit(-8.0) * s3 + T::lit(48.0) * x * x * s2;
                    let d3 = T::lit(144.0) * x * s2 - T::lit(192.0) * x * x * x * s;
                    [s2 * s2, d1, d2, d3]
                }
            }
        }
    }

    /// Largest open interval of admissible arguments, if restricted.
    fn admissible(&self) -> Option<(T, T)> {
        match self {
            Family::LogCos => Some((-T::FRAC_PI_2(), T::FRAC_PI_2())),
            Family::Power(p) => {
                let integral = p.fract() == T::zero() && *p >= T::zero();
                (!integral).then(|| (T::zero(), T::infinity()))
            }
            _ => None,
        }
    }
}

/// `amplitude · g(rate · (r − shift)) + offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Analytic<T> {
    pub family: Family<T>,
    pub amplitude: T,
    pub rate: T,
    pub shift: T,
    pub offset: T,
}

impl<T: Real> Analytic<T> {
    pub fn new(family: Family<T>) -> Self {
        Self {
            family,
            amplitude: T::one(),
            rate: T::one(),
            shift: T::zero(),
            offset: T::zero(),
        }
    }

    pub fn amplitude(mut self, a: T) -> Self {
        self.amplitude = a;
        self
    }

    pub fn rate(mut self, k: T) -> Self {
        self.rate = k;
        self
    }

    pub fn shift(mut self, s: T) -> Self {
        self.shift = s;
        self
    }

    pub fn offset(mut self, c: T) -> Self {
        self.offset = c;
        self
    }

    fn jet(&self, r: T) -> Jet<T> {
        let x = self.rate * (r - self.shift);
        let g = self.family.derivs(x);
        let k = self.rate;
        let a = self.amplitude;
        Jet::new(
            a * g[0] + self.offset,
            a * k * g[1],
            a * k * k * g[2],
            a * k * k * k * g[3],
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Which orbit mean a [`Repr::ThetaMean`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeanKind {
    /// `log ⟨e^f⟩_θ`
    LogMeanExp,
    /// `⟨log u⟩_θ`
    MeanLog,
}

#[derive(Clone, Debug)]
pub enum Repr<T> {
    Analytic(Analytic<T>),
    Spline(Arc<CubicSpline<T>>),
    /// Contiguous pieces, each evaluated in the global coordinate.
    Piecewise(Vec<RadialProfile<T>>),
    /// Extension of `inner` past `axis` by `p(axis + s) = ±p(axis − s)`.
    Reflected {
        inner: Arc<RadialProfile<T>>,
        axis: T,
        parity: Parity,
    },
    Sum(Vec<RadialProfile<T>>),
    Product(Arc<RadialProfile<T>>, Arc<RadialProfile<T>>),
    Exp(Arc<RadialProfile<T>>),
    Ln(Arc<RadialProfile<T>>),
    /// `ψ · sqrt(λ / (λ + ψ²))`
    Cheeger {
        inner: Arc<RadialProfile<T>>,
        lambda: T,
    },
    /// `φψ / sqrt(φ² + ψ²)`
    Hopf {
        phi: Arc<RadialProfile<T>>,
        psi: Arc<RadialProfile<T>>,
    },
    /// Trapezoidal θ-mean of a two-dimensional density on uniform nodes.
    ThetaMean {
        density: Arc<TwoDimDensity<T>>,
        kind: MeanKind,
        nodes: usize,
    },
}

#[derive(Clone, Debug)]
pub struct RadialProfile<T> {
    domain: (T, T),
    repr: Repr<T>,
    max_order: usize,
}

fn domain_slack<T: Real>(a: T, b: T) -> T {
    T::lit(1e-12) * (T::one() + (b - a).abs())
}

impl<T: Real> RadialProfile<T> {
    pub fn analytic(analytic: Analytic<T>, domain: (T, T)) -> Result<Self> {
        check_domain(domain)?;
        if let Some((lo, hi)) = analytic.family.admissible() {
            for r in [domain.0, domain.1] {
                let x = analytic.rate * (r - analytic.shift);
                if !(x > lo && x < hi) {
                    return Err(Error::ParameterOutOfRange(format!(
                        "{} argument {} at r = {} leaves ({}, {})",
                        analytic.family.name(),
                        x,
                        r,
                        lo,
                        hi
                    )));
                }
            }
        }
        for v in [analytic.amplitude, analytic.rate, analytic.shift, analytic.offset] {
            if !v.is_finite() {
                return Err(Error::ParameterOutOfRange("non-finite analytic parameter".into()));
            }
        }
        Ok(Self { domain, repr: Repr::Analytic(analytic), max_order: 3 })
    }

    /// Shorthand for `g(r)` with unit parameters.
    pub fn family(family: Family<T>, domain: (T, T)) -> Result<Self> {
        Self::analytic(Analytic::new(family), domain)
    }

    pub fn constant(c: T, domain: (T, T)) -> Result<Self> {
        Self::analytic(Analytic::new(Family::Constant).amplitude(c), domain)
    }

    pub fn spline(spline: CubicSpline<T>) -> Self {
        Self { domain: spline.domain(), repr: Repr::Spline(Arc::new(spline)), max_order: 3 }
    }

    pub fn piecewise(pieces: Vec<RadialProfile<T>>) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::InvalidArgument("piecewise profile needs a piece".into()))?;
        for w in pieces.windows(2) {
            let (end, start) = (w[0].domain.1, w[1].domain.0);
            if (end - start).abs() > domain_slack(end, start) {
                return Err(Error::InvalidArgument(format!(
                    "piecewise profile has a gap between {end} and {start}"
                )));
            }
        }
        let domain = (first.domain.0, pieces[pieces.len() - 1].domain.1);
        let max_order = pieces.iter().map(|p| p.max_order).min().unwrap_or(0);
        Ok(Self { domain, repr: Repr::Piecewise(pieces), max_order })
    }

    /// Extends `self` from `[a, axis]` to `[a, 2·axis − a]`.
    pub fn reflected(self, parity: Parity) -> Self {
        let (a, axis) = self.domain;
        let max_order = self.max_order;
        Self {
            domain: (a, axis + axis - a),
            repr: Repr::Reflected { inner: Arc::new(self), axis, parity },
            max_order,
        }
    }

    pub fn sum(terms: Vec<RadialProfile<T>>) -> Result<Self> {
        let domain = common_domain(terms.iter())?;
        let max_order = terms.iter().map(|p| p.max_order).min().unwrap_or(3);
        Ok(Self { domain, repr: Repr::Sum(terms), max_order })
    }

    pub fn product(a: RadialProfile<T>, b: RadialProfile<T>) -> Result<Self> {
        let domain = common_domain([&a, &b].into_iter())?;
        let max_order = a.max_order.min(b.max_order);
        Ok(Self { domain, repr: Repr::Product(Arc::new(a), Arc::new(b)), max_order })
    }

    pub fn scaled(self, c: T) -> Result<Self> {
        let k = RadialProfile::constant(c, self.domain)?;
        Self::product(k, self)
    }

    pub fn exp(self) -> Self {
        Self { domain: self.domain, max_order: self.max_order, repr: Repr::Exp(Arc::new(self)) }
    }

    pub fn ln(self) -> Self {
        Self { domain: self.domain, max_order: self.max_order, repr: Repr::Ln(Arc::new(self)) }
    }

    pub fn cheeger(self, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(Error::ParameterOutOfRange(format!(
                "Cheeger scale must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self {
            domain: self.domain,
            max_order: self.max_order,
            repr: Repr::Cheeger { inner: Arc::new(self), lambda },
        })
    }

    pub fn hopf(phi: RadialProfile<T>, psi: RadialProfile<T>) -> Result<Self> {
        let domain = common_domain([&phi, &psi].into_iter())?;
        let max_order = phi.max_order.min(psi.max_order);
        Ok(Self { domain, repr: Repr::Hopf { phi: Arc::new(phi), psi: Arc::new(psi) }, max_order })
    }

    pub fn theta_mean(density: Arc<TwoDimDensity<T>>, kind: MeanKind, nodes: usize) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: nodes });
        }
        let domain = density.domain();
        let max_order = density.max_order();
        Ok(Self { domain, repr: Repr::ThetaMean { density, kind, nodes }, max_order })
    }

    /// Caps the derivative order callers may rely on.
    pub fn with_max_order(mut self, order: usize) -> Self {
        self.max_order = order.min(self.max_order);
        self
    }

    pub fn domain(&self) -> (T, T) {
        self.domain
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn repr(&self) -> &Repr<T> {
        &self.repr
    }

    pub fn contains(&self, r: T) -> bool {
        let (a, b) = self.domain;
        let eps = domain_slack(a, b);
        r >= a - eps && r <= b + eps
    }

    pub fn jet(&self, r: T) -> Result<Jet<T>> {
        let (a, b) = self.domain;
        if !r.is_finite() || !self.contains(r) {
            return Err(Error::OutOfDomain { r: r.to_f64_lossy(), a: a.to_f64_lossy(), b: b.to_f64_lossy() });
        }
        let r = r.max(a).min(b);
        self.jet_unchecked(r)
    }

    fn jet_unchecked(&self, r: T) -> Result<Jet<T>> {
        Ok(match &self.repr {
            Repr::Analytic(an) => an.jet(r),
            Repr::Spline(s) => s.jet(r),
            Repr::Piecewise(pieces) => {
                let idx = pieces
                    .iter()
                    .rposition(|p| r >= p.domain.0)
                    .unwrap_or(0);
                let p = &pieces[idx];
                p.jet_unchecked(r.max(p.domain.0).min(p.domain.1))?
            }
            Repr::Reflected { inner, axis, parity } => {
                if r <= *axis {
                    inner.jet_unchecked(r)?
                } else {
                    let m = inner.jet_unchecked((*axis + *axis - r).max(inner.domain.0))?;
                    match parity {
                        Parity::Even => Jet::new(m.v, -m.d1, m.d2, -m.d3),
                        Parity::Odd => Jet::new(-m.v, m.d1, -m.d2, m.d3),
                    }
                }
            }
            Repr::Sum(terms) => {
                let mut acc = Jet::constant(T::zero());
                for t in terms {
                    acc = acc + t.jet_unchecked(r)?;
                }
                acc
            }
            Repr::Product(a, b) => a.jet_unchecked(r)? * b.jet_unchecked(r)?,
            Repr::Exp(inner) => inner.jet_unchecked(r)?.exp(),
            Repr::Ln(inner) => {
                let j = inner.jet_unchecked(r)?;
                if !(j.v > T::zero()) {
                    return Err(Error::NonPositiveU { r: r.to_f64_lossy(), value: j.v.to_f64_lossy() });
                }
                j.ln()
            }
            Repr::Cheeger { inner, lambda } => {
                let psi = inner.jet_unchecked(r)?;
                let l = Jet::constant(*lambda);
                psi * (l / (l + psi * psi)).sqrt()
            }
            Repr::Hopf { phi, psi } => {
                let p = phi.jet_unchecked(r)?;
                let q = psi.jet_unchecked(r)?;
                (p * q) / (p * p + q * q).sqrt()
            }
            Repr::ThetaMean { density, kind, nodes } => {
                let n = *nodes;
                let inv = T::from_usize_lossy(n).recip();
                let mut acc = Jet::constant(T::zero());
                for i in 0..n {
                    let theta = T::TAU() * T::from_usize_lossy(i) * inv;
                    let j = density.radial_jet(r, theta)?;
                    acc = acc
                        + match (kind, density.form()) {
                            (MeanKind::LogMeanExp, FieldForm::F) => j.exp(),
                            (MeanKind::LogMeanExp, FieldForm::U) => j,
                            (MeanKind::MeanLog, FieldForm::U) => {
                                if !(j.v > T::zero()) {
                                    return Err(Error::NonPositiveU {
                                        r: r.to_f64_lossy(),
                                        value: j.v.to_f64_lossy(),
                                    });
                                }
                                j.ln()
                            }
                            (MeanKind::MeanLog, FieldForm::F) => j,
                        };
                }
                let mean = acc.scale(inv);
                match kind {
                    MeanKind::LogMeanExp => {
                        if !(mean.v > T::zero()) {
                            return Err(Error::NonPositiveU {
                                r: r.to_f64_lossy(),
                                value: mean.v.to_f64_lossy(),
                            });
                        }
                        mean.ln()
                    }
                    MeanKind::MeanLog => mean,
                }
            }
        })
    }

    pub fn value(&self, r: T) -> Result<T> {
        Ok(self.jet(r)?.v)
    }

    pub fn derivative(&self, r: T, order: usize) -> Result<T> {
        if order > self.max_order {
            return Err(Error::Unsupported(format!(
                "derivative of order {order} (profile provides {})",
                self.max_order
            )));
        }
        Ok(self.jet(r)?.order(order))
    }
}

fn check_domain<T: Real>(domain: (T, T)) -> Result<()> {
    if !(domain.0.is_finite() && domain.1.is_finite() && domain.1 > domain.0) {
        return Err(Error::InvalidArgument(format!(
            "profile domain [{}, {}] is empty or non-finite",
            domain.0, domain.1
        )));
    }
    Ok(())
}

fn common_domain<'a, T: Real + 'a>(
    mut profiles: impl Iterator<Item = &'a RadialProfile<T>>,
) -> Result<(T, T)> {
    let first = profiles
        .next()
        .ok_or_else(|| Error::InvalidArgument("composite profile needs an operand".into()))?;
    let (mut a, mut b) = first.domain;
    for p in profiles {
        a = a.max(p.domain.0);
        b = b.min(p.domain.1);
    }
    check_domain((a, b))?;
    Ok((a, b))
}

/// Central second-order finite differences `(p', p'')` at `r` with step `h`.
pub fn finite_difference<T: Real>(p: &RadialProfile<T>, r: T, h: T) -> Result<(T, T)> {
    let fm = p.value(r - h)?;
    let f0 = p.value(r)?;
    let fp = p.value(r + h)?;
    let two = T::lit(2.0);
    Ok(((fp - fm) / (two * h), (fp - two * f0 + fm) / (h * h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::linspace;
    use crate::spline::SplineBoundary;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sin_peaks_at_half_pi() {
        let p = RadialProfile::family(Family::Sin, (0.0, PI)).unwrap();
        assert!(close(p.value(FRAC_PI_2).unwrap(), 1.0, 1e-15));
    }

    #[test]
    fn log_cos_range_is_checked() {
        let bad = RadialProfile::family(Family::<f64>::LogCos, (0.0, 1.6));
        assert!(matches!(bad, Err(Error::ParameterOutOfRange(_))));
        let p = RadialProfile::analytic(Analytic::new(Family::LogCos).amplitude(-1.0), (0.0, 1.5))
            .unwrap();
        let r = 1.2_f64;
        let j = p.jet(r).unwrap();
        assert!(close(j.v, -r.cos().ln(), 1e-14));
        assert!(close(j.d1, r.tan(), 1e-13));
        assert!(close(j.d2, 1.0 + r.tan().powi(2), 1e-12));
    }

    #[test]
    fn out_of_domain_is_an_error() {
        let p = RadialProfile::family(Family::<f64>::Exp, (0.0, 1.0)).unwrap();
        assert!(matches!(p.jet(1.5), Err(Error::OutOfDomain { .. })));
        assert!(p.jet(1.0 + 1e-14).is_ok());
    }

    #[test]
    fn analytic_families_match_finite_differences() {
        let fams = vec![
            Family::Identity,
            Family::Sin,
            Family::Cos,
            Family::Sinh,
            Family::Cosh,
            Family::Exp,
            Family::Power(2.5),
            Family::LogCos,
            Family::Polynomial(Polynomial::new(vec![1.0, -2.0, 0.5, 0.3])),
            Family::Bump,
        ];
        for fam in fams {
            let p = RadialProfile::analytic(Analytic::new(fam.clone()).rate(0.7), (0.2, 1.3)).unwrap();
            for r in [0.4, 0.75, 1.1] {
                let j = p.jet(r).unwrap();
                for h in [1e-3, 1e-4] {
                    let (d1, d2) = finite_difference(&p, r, h).unwrap();
                    assert!(close(d1, j.d1, 5.0 * h * h), "{} d1 at {r}", fam.name());
                    assert!(close(d2, j.d2, 5.0 * h * h + 4e-16 / (h * h) * 100.0), "{} d2", fam.name());
                }
                // third derivative against a difference of analytic second derivatives
                let h = 1e-5;
                let d3 = (p.jet(r + h).unwrap().d2 - p.jet(r - h).unwrap().d2) / (2.0 * h);
                assert!(close(d3, j.d3, 1e-6), "{} d3", fam.name());
            }
        }
    }

    #[test]
    fn spline_profile_tracks_exponential() {
        let x = linspace(0.0, 2.0, 64);
        let y = x.iter().map(|v: &f64| v.exp()).collect();
        let s = CubicSpline::new(x, y, SplineBoundary::NotAKnot).unwrap();
        let p = RadialProfile::spline(s);
        assert!(close(p.derivative(1.0, 1).unwrap(), 1.0_f64.exp(), 1e-6));
    }

    #[test]
    fn reflection_builds_even_extension() {
        let half = RadialProfile::family(Family::Sin, (0.0, FRAC_PI_2)).unwrap();
        let full = half.reflected(Parity::Even);
        assert_eq!(full.domain().1, PI);
        for r in [2.0, 2.5, 3.0] {
            let j = full.jet(r).unwrap();
            assert!(close(j.v, r.sin(), 1e-14));
            assert!(close(j.d1, r.cos(), 1e-14));
            assert!(close(j.d2, -r.sin(), 1e-14));
            assert!(close(j.d3, -r.cos(), 1e-14));
        }
    }

    #[test]
    fn cheeger_and_hopf_closed_forms() {
        let one = RadialProfile::constant(1.0, (0.0, 1.0)).unwrap();
        let deformed = one.cheeger(1.0).unwrap();
        assert!(close(deformed.value(0.3).unwrap(), 0.5_f64.sqrt(), 1e-15));

        let phi = RadialProfile::family(Family::Sin, (0.0, FRAC_PI_2)).unwrap();
        let psi = RadialProfile::family(Family::Cos, (0.0, FRAC_PI_2)).unwrap();
        let w = RadialProfile::hopf(phi, psi).unwrap();
        for r in [0.2, 0.7, 1.3] {
            let j = w.jet(r).unwrap();
            assert!(close(j.v, 0.5 * (2.0 * r).sin(), 1e-15));
            assert!(close(-j.d2 / j.v, 4.0, 1e-12));
        }
    }

    #[test]
    fn f32_profiles_evaluate() {
        let p = RadialProfile::family(Family::<f32>::Sin, (0.0, 3.0)).unwrap();
        assert!((p.value(1.0).unwrap() - 1.0_f32.sin()).abs() < 1e-6);
    }
}

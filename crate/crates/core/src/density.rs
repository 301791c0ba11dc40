//! Densities `f` (or `u = e^f`) on the model spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::profile::RadialProfile;
use crate::scalar::Real;

pub const MAX_FOURIER_MODES: usize = 32;

/// Whether a field stores `f` itself or `u = e^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldForm {
    F,
    U,
}

#[derive(Clone, Debug)]
pub struct FourierMode<T> {
    pub k: usize,
    pub cos: Option<RadialProfile<T>>,
    pub sin: Option<RadialProfile<T>>,
}

/// Value and first two partial derivatives of a function of `(r, θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PlaneJet<T> {
    pub v: T,
    pub r: T,
    pub rr: T,
    pub t: T,
    pub tt: T,
    pub rt: T,
}

/// `base(r) + Σ_k [a_k(r) cos kθ + b_k(r) sin kθ]`, read as `f` or as `u`
/// according to `form`.
#[derive(Clone, Debug)]
pub struct TwoDimDensity<T> {
    form: FieldForm,
    base: RadialProfile<T>,
    modes: Vec<FourierMode<T>>,
}

impl<T: Real> TwoDimDensity<T> {
    pub fn new(form: FieldForm, base: RadialProfile<T>, modes: Vec<FourierMode<T>>) -> Result<Self> {
        if modes.len() > MAX_FOURIER_MODES {
            return Err(Error::InvalidDensity(format!(
                "{} Fourier modes exceed the limit of {MAX_FOURIER_MODES}",
                modes.len()
            )));
        }
        let mut seen = Vec::with_capacity(modes.len());
        for m in &modes {
            if m.k == 0 {
                return Err(Error::InvalidDensity("mode 0 belongs in the base profile".into()));
            }
            if seen.contains(&m.k) {
                return Err(Error::InvalidDensity(format!("Fourier mode {} repeated", m.k)));
            }
            seen.push(m.k);
            for p in m.cos.iter().chain(m.sin.iter()) {
                let (a, b) = p.domain();
                let (a0, b0) = base.domain();
                if a > a0 || b < b0 {
                    return Err(Error::InvalidDensity(format!(
                        "mode {} profile domain [{a}, {b}] does not cover [{a0}, {b0}]",
                        m.k
                    )));
                }
            }
        }
        Ok(Self { form, base, modes })
    }

    /// Pure radial field, as a two-dimensional density.
    pub fn radial(form: FieldForm, base: RadialProfile<T>) -> Self {
        Self { form, base, modes: Vec::new() }
    }

    pub fn form(&self) -> FieldForm {
        self.form
    }

    pub fn base(&self) -> &RadialProfile<T> {
        &self.base
    }

    pub fn modes(&self) -> &[FourierMode<T>] {
        &self.modes
    }

    pub fn domain(&self) -> (T, T) {
        self.base.domain()
    }

    pub fn max_order(&self) -> usize {
        self.modes
            .iter()
            .flat_map(|m| m.cos.iter().chain(m.sin.iter()))
            .map(|p| p.max_order())
            .fold(self.base.max_order(), usize::min)
    }

    /// Radial jet of the stored field at fixed `θ`.
    pub fn radial_jet(&self, r: T, theta: T) -> Result<Jet<T>> {
        let mut acc = self.base.jet(r)?;
        for m in &self.modes {
            let (s, c) = (T::from_usize_lossy(m.k) * theta).sin_cos();
            if let Some(p) = &m.cos {
                acc = acc + p.jet(r)?.scale(c);
            }
            if let Some(p) = &m.sin {
                acc = acc + p.jet(r)?.scale(s);
            }
        }
        Ok(acc)
    }

    /// Partial derivatives of the stored field.
    pub fn field(&self, r: T, theta: T) -> Result<PlaneJet<T>> {
        let b = self.base.jet(r)?;
        let mut out = PlaneJet { v: b.v, r: b.d1, rr: b.d2, ..PlaneJet::default() };
        for m in &self.modes {
            let k = T::from_usize_lossy(m.k);
            let (s, c) = (k * theta).sin_cos();
            if let Some(p) = &m.cos {
                let j = p.jet(r)?;
                out.v += j.v * c;
                out.r += j.d1 * c;
                out.rr += j.d2 * c;
                out.t -= k * j.v * s;
                out.tt -= k * k * j.v * c;
                out.rt -= k * j.d1 * s;
            }
            if let Some(p) = &m.sin {
                let j = p.jet(r)?;
                out.v += j.v * s;
                out.r += j.d1 * s;
                out.rr += j.d2 * s;
                out.t += k * j.v * c;
                out.tt -= k * k * j.v * s;
                out.rt += k * j.d1 * c;
            }
        }
        Ok(out)
    }

    /// Partial derivatives of `f`, converting from `u` when needed.
    pub fn f_field(&self, r: T, theta: T) -> Result<PlaneJet<T>> {
        let w = self.field(r, theta)?;
        match self.form {
            FieldForm::F => Ok(w),
            FieldForm::U => {
                if !(w.v > T::zero()) {
                    return Err(Error::NonPositiveU { r: r.to_f64_lossy(), value: w.v.to_f64_lossy() });
                }
                let (ur, ut) = (w.r / w.v, w.t / w.v);
                Ok(PlaneJet {
                    v: w.v.ln(),
                    r: ur,
                    rr: w.rr / w.v - ur * ur,
                    t: ut,
                    tt: w.tt / w.v - ut * ut,
                    rt: w.rt / w.v - ur * ut,
                })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Density<T> {
    RadialF(RadialProfile<T>),
    /// `u = e^f > 0`
    RadialU(RadialProfile<T>),
    TwoDim(Arc<TwoDimDensity<T>>),
}

impl<T: Real> Density<T> {
    pub fn zero(domain: (T, T)) -> Result<Self> {
        Ok(Density::RadialF(RadialProfile::constant(T::zero(), domain)?))
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, Density::TwoDim(_))
    }

    pub fn domain(&self) -> (T, T) {
        match self {
            Density::RadialF(p) | Density::RadialU(p) => p.domain(),
            Density::TwoDim(d) => d.domain(),
        }
    }

    pub fn max_order(&self) -> usize {
        match self {
            Density::RadialF(p) | Density::RadialU(p) => p.max_order(),
            Density::TwoDim(d) => d.max_order(),
        }
    }

    /// Radial jet of `f`; for the `u` form this is `log u`.
    pub fn f_jet(&self, r: T) -> Result<Jet<T>> {
        match self {
            Density::RadialF(p) => p.jet(r),
            Density::RadialU(p) => {
                let u = p.jet(r)?;
                if !(u.v > T::zero()) {
                    return Err(Error::NonPositiveU { r: r.to_f64_lossy(), value: u.v.to_f64_lossy() });
                }
                Ok(u.ln())
            }
            Density::TwoDim(_) => Err(Error::Unsupported(
                "radial evaluation of a two-dimensional density".into(),
            )),
        }
    }

    /// Checks `u > 0` on a grid of the given size (trivially true for the f form).
    pub fn check_positive(&self, points: usize) -> Result<()> {
        if let Density::RadialU(p) = self {
            let (a, b) = p.domain();
            for r in crate::scalar::linspace(a, b, points.max(2)) {
                let v = p.value(r)?;
                if !(v > T::zero()) {
                    return Err(Error::NonPositiveU { r: r.to_f64_lossy(), value: v.to_f64_lossy() });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Analytic, Family};

    #[test]
    fn fourier_partials_match_closed_form() {
        // f = 0.1 cos θ sin² r
        let amp = RadialProfile::product(
            RadialProfile::analytic(Analytic::new(Family::Sin).amplitude(0.1), (0.0, 3.0)).unwrap(),
            RadialProfile::family(Family::Sin, (0.0, 3.0)).unwrap(),
        )
        .unwrap();
        let d = TwoDimDensity::new(
            FieldForm::F,
            RadialProfile::constant(0.0, (0.0, 3.0)).unwrap(),
            vec![FourierMode { k: 1, cos: Some(amp), sin: None }],
        )
        .unwrap();
        let (r, t) = (1.1_f64, 0.4_f64);
        let p = d.field(r, t).unwrap();
        let s2 = r.sin().powi(2);
        assert!((p.v - 0.1 * t.cos() * s2).abs() < 1e-15);
        assert!((p.t + 0.1 * t.sin() * s2).abs() < 1e-15);
        assert!((p.rt + 0.1 * t.sin() * (2.0 * r).sin()).abs() < 1e-15);
        assert!((p.rr - 0.1 * t.cos() * 2.0 * (2.0 * r).cos()).abs() < 1e-14);
    }

    #[test]
    fn u_form_converts_to_logarithmic_derivatives() {
        let u = RadialProfile::family(Family::Exp, (0.0, 1.0)).unwrap();
        let d = TwoDimDensity::radial(FieldForm::U, u);
        let f = d.f_field(0.5_f64, 0.0).unwrap();
        assert!((f.v - 0.5).abs() < 1e-15);
        assert!((f.r - 1.0).abs() < 1e-15);
        assert!(f.rr.abs() < 1e-15);
    }

    #[test]
    fn repeated_modes_are_rejected() {
        let base = RadialProfile::constant(0.0, (0.0, 1.0)).unwrap();
        let m = || FourierMode { k: 2, cos: None, sin: None };
        assert!(TwoDimDensity::new(FieldForm::F, base, vec![m(), m()]).is_err());
    }
}

//! Truncated Taylor jets: a value together with its first three derivatives.
//!
//! Every radial profile evaluates to a [`Jet`], and composite profiles
//! (products, quotients, square roots, Cheeger-deformed and Hopf-quotient
//! warpings) propagate derivatives exactly through jet arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet<T> {
    pub v: T,
    pub d1: T,
    pub d2: T,
    pub d3: T,
}

impl<T: Real> Jet<T> {
    pub fn new(v: T, d1: T, d2: T, d3: T) -> Self {
        Self { v, d1, d2, d3 }
    }

    pub fn constant(v: T) -> Self {
        Self::new(v, T::zero(), T::zero(), T::zero())
    }

    /// Jet of the identity map at `x`.
    pub fn variable(x: T) -> Self {
        Self::new(x, T::one(), T::zero(), T::zero())
    }

    /// Derivative of the requested order (0..=3).
    pub fn order(&self, k: usize) -> T {
        match k {
            0 => self.v,
            1 => self.d1,
            2 => self.d2,
            3 => self.d3,
            _ => T::nan(),
        }
    }

    pub fn scale(self, c: T) -> Self {
        Self::new(self.v * c, self.d1 * c, self.d2 * c, self.d3 * c)
    }

    /// Chain rule: `g ∘ self`, where `g` has derivatives `[g, g', g'', g''']`
    /// evaluated at `self.v`.
    pub fn compose(self, g: [T; 4]) -> Self {
        let (f1, f2, f3) = (self.d1, self.d2, self.d3);
        let three = T::lit(3.0);
        Self::new(
            g[0],
            g[1] * f1,
            g[2] * f1 * f1 + g[1] * f2,
            g[3] * f1 * f1 * f1 + three * g[2] * f1 * f2 + g[1] * f3,
        )
    }

    pub fn recip(self) -> Self {
        let x = self.v;
        let inv = x.recip();
        let inv2 = inv * inv;
        self.compose([inv, -inv2, T::lit(2.0) * inv2 * inv, T::lit(-6.0) * inv2 * inv2])
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let inv = s.recip();
        let x_inv = self.v.recip();
        self.compose([
            s,
            T::lit(0.5) * inv,
            T::lit(-0.25) * inv * x_inv,
            T::lit(0.375) * inv * x_inv * x_inv,
        ])
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.compose([e, e, e, e])
    }

    pub fn ln(self) -> Self {
        let inv = self.v.recip();
        self.compose([self.v.ln(), inv, -inv * inv, T::lit(2.0) * inv * inv * inv])
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        Self::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + two * self.d1 * o.d1 + self.v * o.d2,
            self.d3 * o.v + three * self.d2 * o.d1 + three * self.d1 * o.d2 + self.v * o.d3,
        )
    }
}

impl<T: Real> Div for Jet<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn product_rule_matches_closed_form() {
        // (x^2)(sin x) at x = 0.7
        let x = 0.7_f64;
        let sq = Jet::new(x * x, 2.0 * x, 2.0, 0.0);
        let s = Jet::new(x.sin(), x.cos(), -x.sin(), -x.cos());
        let p = sq * s;
        let d3 = 6.0 * x.cos() - 6.0 * x * x.sin() - x * x * x.cos() + 0.0;
        assert_relative_eq!(p.v, x * x * x.sin(), epsilon = 1e-14);
        assert_relative_eq!(p.d1, 2.0 * x * x.sin() + x * x * x.cos(), epsilon = 1e-14);
        assert_relative_eq!(
            p.d2,
            2.0 * x.sin() + 4.0 * x * x.cos() - x * x * x.sin(),
            epsilon = 1e-14
        );
        assert_relative_eq!(p.d3, d3, epsilon = 1e-13);
    }

    #[test]
    fn sqrt_and_recip_roundtrip() {
        let j = Jet::new(2.0_f64, 0.3, -0.1, 0.05);
        let back = j.sqrt() * j.sqrt();
        assert_relative_eq!(back.v, j.v, epsilon = 1e-14);
        assert_relative_eq!(back.d3, j.d3, epsilon = 1e-13);
        let one = j * j.recip();
        assert_relative_eq!(one.v, 1.0, epsilon = 1e-15);
        assert!(one.d1.abs() < 1e-15 && one.d2.abs() < 1e-14 && one.d3.abs() < 1e-13);
    }

    #[test]
    fn exp_ln_inverse() {
        let j = Jet::new(0.4_f64, 1.2, 0.7, -0.3);
        let r = j.exp().ln();
        assert_relative_eq!(r.d2, j.d2, epsilon = 1e-13);
        assert_relative_eq!(r.d3, j.d3, epsilon = 1e-12);
    }
}

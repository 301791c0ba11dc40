//! Dense univariate polynomials with ascending coefficients.

use crate::jet::Jet;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `a + b t`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == T::zero()) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, t: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::from_usize_lossy(k))
                .collect(),
        )
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn integral(&self) -> Self {
        let mut out = vec![T::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / T::from_usize_lossy(k + 1)),
        );
        Self::new(out)
    }

    pub fn definite_integral(&self, a: T, b: T) -> T {
        let p = self.integral();
        p.eval(b) - p.eval(a)
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[T], i: usize| v.get(i).copied().unwrap_or_else(T::zero);
        Self::new(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn powi(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    /// `p(a + b t)` as a polynomial in `t`.
    pub fn compose_linear(&self, a: T, b: T) -> Self {
        let inner = Self::linear(a, b);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| acc.mul(&inner).add(&Self::constant(c)))
    }

    pub fn jet(&self, t: T) -> Jet<T> {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        Jet::new(self.eval(t), d1.eval(t), d2.eval(t), d3.eval(t))
    }
}

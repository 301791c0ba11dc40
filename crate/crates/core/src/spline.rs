//! C² cubic interpolating splines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Real;

/// End conditions of the interpolating spline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum SplineBoundary {
    /// Third derivative continuous across the first and last interior knots.
    #[default]
    NotAKnot,
    /// Vanishing second derivative at both ends.
    Natural,
    /// Prescribed first derivatives at both ends.
    Clamped { start: f64, end: f64 },
}

#[derive(Clone, Debug)]
pub struct CubicSpline<T> {
    x: Vec<T>,
    y: Vec<T>,
    /// Second derivative at each knot.
    m: Vec<T>,
}

pub const MIN_SAMPLES: usize = 4;

fn solve_tridiagonal<T: Real>(sub: &[T], diag: &[T], sup: &[T], rhs: &[T]) -> Vec<T> {
    let n = diag.len();
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    c[0] = if n > 1 { sup[0] / diag[0] } else { T::zero() };
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        if i + 1 < n {
            c[i] = sup[i] / denom;
        }
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut out = vec![T::zero(); n];
    out[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = d[i] - c[i] * out[i + 1];
    }
    out
}

impl<T: Real> CubicSpline<T> {
    pub fn new(x: Vec<T>, y: Vec<T>, boundary: SplineBoundary) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidArgument(format!(
                "{} abscissae but {} values",
                x.len(),
                y.len()
            )));
        }
        if x.len() < MIN_SAMPLES {
            return Err(Error::TooFewSamples { needed: MIN_SAMPLES, got: x.len() });
        }
        if let Some(index) = x.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::NonMonotoneGrid { index: index + 1 });
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite spline sample".into()));
        }
        let m = Self::second_derivatives(&x, &y, boundary);
        Ok(Self { x, y, m })
    }

    fn second_derivatives(x: &[T], y: &[T], boundary: SplineBoundary) -> Vec<T> {
        let n = x.len();
        let six = T::lit(6.0);
        let two = T::lit(2.0);
        let h: Vec<T> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<T> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        match boundary {
            SplineBoundary::Natural | SplineBoundary::Clamped { .. } => {
                let mut sub = vec![T::zero(); n];
                let mut diag = vec![T::zero(); n];
                let mut sup = vec![T::zero(); n];
                let mut rhs = vec![T::zero(); n];
                for i in 1..n - 1 {
                    sub[i] = h[i - 1];
                    diag[i] = two * (h[i - 1] + h[i]);
                    sup[i] = h[i];
                    rhs[i] = six * (slope[i] - slope[i - 1]);
                }
                match boundary {
                    SplineBoundary::Clamped { start, end } => {
                        let (d0, dn) = (T::lit(start), T::lit(end));
                        diag[0] = two * h[0];
                        sup[0] = h[0];
                        rhs[0] = six * (slope[0] - d0);
                        sub[n - 1] = h[n - 2];
                        diag[n - 1] = two * h[n - 2];
                        rhs[n - 1] = six * (dn - slope[n - 2]);
                    }
                    _ => {
                        diag[0] = T::one();
                        diag[n - 1] = T::one();
                    }
                }
                solve_tridiagonal(&sub, &diag, &sup, &rhs)
            }
            SplineBoundary::NotAKnot => {
                // Unknowns M_1..M_{n-2}; M_0 and M_{n-1} are eliminated through
                // the third-derivative continuity conditions at x_1 and x_{n-2}.
                let k = n - 2;
                let mut sub = vec![T::zero(); k];
                let mut diag = vec![T::zero(); k];
                let mut sup = vec![T::zero(); k];
                let mut rhs = vec![T::zero(); k];
                for j in 0..k {
                    let i = j + 1;
                    sub[j] = h[i - 1];
                    diag[j] = two * (h[i - 1] + h[i]);
                    sup[j] = h[i];
                    rhs[j] = six * (slope[i] - slope[i - 1]);
                }
                // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
                let (h0, h1) = (h[0], h[1]);
                diag[0] += h0 * (h0 + h1) / h1;
                if k > 1 {
                    sup[0] -= h0 * h0 / h1;
                } else {
                    // n == 3 is excluded by MIN_SAMPLES
                    unreachable!();
                }
                // M_{n-1} = ((ha + hb) M_{n-2} - hb M_{n-3}) / ha with
                // ha = h_{n-3}, hb = h_{n-2}
                let (ha, hb) = (h[n - 3], h[n - 2]);
                diag[k - 1] += hb * (ha + hb) / ha;
                sub[k - 1] -= hb * hb / ha;
                let inner = solve_tridiagonal(&sub, &diag, &sup, &rhs);
                let mut m = Vec::with_capacity(n);
                m.push(((h0 + h1) * inner[0] - h0 * inner[1]) / h1);
                m.extend_from_slice(&inner);
                m.push(((ha + hb) * inner[k - 1] - hb * inner[k - 2]) / ha);
                m
            }
        }
    }

    pub fn knots(&self) -> &[T] {
        &self.x
    }

    pub fn values(&self) -> &[T] {
        &self.y
    }

    pub fn domain(&self) -> (T, T) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value and derivatives at `r` (assumed inside the domain).
    pub fn jet(&self, r: T) -> Jet<T> {
        let n = self.x.len();
        let i = self.x.partition_point(|&xi| xi <= r).clamp(1, n - 1) - 1;
        let h = self.x[i + 1] - self.x[i];
        let t = r - self.x[i];
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let six = T::lit(6.0);
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let b = (self.y[i + 1] - self.y[i]) / h - h * (two * m0 + m1) / six;
        let c3 = (m1 - m0) / (six * h);
        Jet::new(
            self.y[i] + t * (b + t * (half * m0 + t * c3)),
            b + t * (m0 + T::lit(3.0) * c3 * t),
            m0 + six * c3 * t,
            six * c3,
        )
    }
}

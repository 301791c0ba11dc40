//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_DEPTH: usize = 48;
const INITIAL_PANELS: usize = 8;

struct Panel<T> {
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

fn refine<T: Real, F>(f: &F, p: Panel<T>, tol: T, depth: usize) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    let half = T::lit(0.5);
    let m = half * (p.a + p.b);
    let (lm, rm) = (half * (p.a + m), half * (m + p.b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let delta = left + right - p.whole;
    if delta.abs() <= T::lit(15.0) * tol {
        return Ok(left + right + delta / T::lit(15.0));
    }
    if depth == 0 || !delta.is_finite() {
        return Err(Error::Quadrature { a: p.a.to_f64_lossy(), b: p.b.to_f64_lossy() });
    }
    let l = refine(f, Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left }, half * tol, depth - 1)?;
    let r = refine(f, Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right }, half * tol, depth - 1)?;
    Ok(l + r)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<T: Real, F>(f: F, a: T, b: T, tol: T) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    if a == b {
        return Ok(T::zero());
    }
    let panels = T::from_usize_lossy(INITIAL_PANELS);
    let width = (b - a) / panels;
    let mut total = T::zero();
    let mut fa = f(a)?;
    for k in 0..INITIAL_PANELS {
        let pa = a + width * T::from_usize_lossy(k);
        let pb = if k + 1 == INITIAL_PANELS { b } else { pa + width };
        let fm = f(T::lit(0.5) * (pa + pb))?;
        let fb = f(pb)?;
        let whole = simpson(pa, pb, fa, fm, fb);
        total += refine(&f, Panel { a: pa, b: pb, fa, fm, fb, whole }, tol / panels, MAX_DEPTH)?;
        fa = fb;
    }
    Ok(total)
}

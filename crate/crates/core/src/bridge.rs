//! Concave monotone bridges between two warping functions, and the
//! rotationally symmetric sphere made of two flat discs joined by a
//! positively curved band.
//!
//! On the gap `t ∈ [0, h]` the second derivative is prescribed as
//!
//! ```text
//! q(t) = ramp_left(t) + ramp_right(t) − A₁ B₁(t) − A₂ B₂(t)
//! ```
//!
//! where the cubic Hermite ramps carry the second and third derivatives of
//! the outer pieces to zero and `B_k = (1 − x²)⁴` are bumps. The default
//! second bump spans the whole gap, so `φ'' < 0` on its interior. The amplitudes
//! are fixed by the two moment conditions that make `φ'` and `φ` match on the
//! right, and the profile is integrated twice exactly. With non-negative
//! amplitudes and non-positive ramps, `φ'' ≤ 0` holds by construction and is
//! re-verified on a grid.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::Polynomial;
use crate::profile::{Analytic, Family, Parity, RadialProfile};
use crate::scalar::{linspace, Real};
use crate::EPS_POS;

/// Shape parameters, as fractions of the gap length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BridgeShape {
    pub ramp_width: f64,
    pub centers: [f64; 2],
    pub bump_widths: [f64; 2],
}

impl Default for BridgeShape {
    fn default() -> Self {
        Self { ramp_width: 0.3, centers: [0.15, 0.5], bump_widths: [0.15, 0.5] }
    }
}

/// Reproducibility record of a constructed bridge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeInfo {
    pub start: f64,
    pub end: f64,
    pub shape: BridgeShape,
    pub amplitudes: [f64; 2],
    pub max_second_derivative: f64,
    pub min_first_derivative: f64,
}

pub const VERIFICATION_POINTS: usize = 1000;

fn bump<T: Real>(center: T, width: T) -> Polynomial<T> {
    let one = Polynomial::new(vec![T::one(), T::zero(), -T::one()]).powi(4);
    one.compose_linear(-center / width, width.recip())
}

/// Cubic Hermite on `[t0, t0 + w]` from `(y0, m0)` to `(y1, m1)`.
fn hermite<T: Real>(t0: T, w: T, y0: T, m0: T, y1: T, m1: T) -> Polynomial<T> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let h00 = Polynomial::new(vec![T::one(), T::zero(), -three, two]);
    let h10 = Polynomial::new(vec![T::zero(), T::one(), -two, T::one()]);
    let h01 = Polynomial::new(vec![T::zero(), T::zero(), three, -two]);
    let h11 = Polynomial::new(vec![T::zero(), T::zero(), -T::one(), T::one()]);
    h00.scale(y0)
        .add(&h10.scale(w * m0))
        .add(&h01.scale(y1))
        .add(&h11.scale(w * m1))
        .compose_linear(-t0 / w, w.recip())
}

struct Component<T> {
    poly: Polynomial<T>,
    support: (T, T),
}

/// Builds the bridge between `left` (jet at `a`) and `right` (jet at `b`),
/// returning one polynomial piece per interval between breakpoints, in the
/// coordinate `t = r − a`.
fn bridge_pieces<T: Real>(
    a: T,
    b: T,
    left: Jet<T>,
    right: Jet<T>,
    shape: BridgeShape,
) -> Result<(Vec<(T, T, Polynomial<T>)>, [T; 2])> {
    let h = b - a;
    if !(h > T::zero()) {
        return Err(Error::InvalidArgument("bridge interval is empty".into()));
    }
    let z = T::zero();
    let we = T::lit(shape.ramp_width) * h;
        let c = shape.centers.map(|c| T::lit(c) * h);

    let fixed = [
        Component { poly: hermite(z, we, left.d2, left.d3, z, z), support: (z, we) },
        Component { poly: hermite(h - we, we, z, z, right.d2, right.d3), support: (h - we, h) },
    ];
    let bumps = [0, 1].map(|k| {
        let wb = T::lit(shape.bump_widths[k]) * h;
        Component { poly: bump(c[k], wb), support: (c[k] - wb, c[k] + wb) }
    });
    for bmp in &bumps {
        if bmp.support.0 < z || bmp.support.1 > h {
            return Err(Error::ParameterOutOfRange("bridge bump leaves the gap".into()));
        }
    }

    // Moments ∫q and ∫(h − t) q of one component.
    let moments = |comp: &Component<T>| {
        let lever = Polynomial::linear(h, -T::one());
        (
            comp.poly.definite_integral(comp.support.0, comp.support.1),
            comp.poly.mul(&lever).definite_integral(comp.support.0, comp.support.1),
        )
    };
    let need_slope = right.d1 - left.d1;
    let need_value = right.v - left.v - left.d1 * h;
    let (mut s0, mut v0) = (z, z);
    for comp in &fixed {
        let (m, l) = moments(comp);
        s0 += m;
        v0 += l;
    }
    let (m1, l1) = moments(&bumps[0]);
    let (m2, l2) = moments(&bumps[1]);
    // −A₁ m1 − A₂ m2 = need_slope − s0,  −A₁ l1 − A₂ l2 = need_value − v0
    let (r1, r2) = (s0 - need_slope, v0 - need_value);
    let det = m1 * l2 - m2 * l1;
    if det.abs() < T::lit(1e-14) {
        return Err(Error::ParameterOutOfRange("bridge bumps are degenerate".into()));
    }
    let amps = [(r1 * l2 - m2 * r2) / det, (m1 * r2 - r1 * l1) / det];
    for (k, &amp) in amps.iter().enumerate() {
        if amp < T::zero() {
            return Err(Error::BridgeConstraint {
                constraint: "non-negative bump amplitude",
                r: (a + c[k]).to_f64_lossy(),
                value: amp.to_f64_lossy(),
            });
        }
    }

    let mut all: Vec<Component<T>> = fixed.into_iter().collect();
    for (bmp, amp) in bumps.into_iter().zip(amps) {
        all.push(Component { poly: bmp.poly.scale(-amp), support: bmp.support });
    }
    let mut cuts: Vec<T> = vec![z, h];
    for comp in &all {
        cuts.push(comp.support.0);
        cuts.push(comp.support.1);
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    cuts.dedup_by(|x, y| (*x - *y).abs() <= T::lit(1e-14));

    let mut pieces = Vec::new();
    let (mut value, mut slope) = (left.v, left.d1);
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mid = (t0 + t1) * T::lit(0.5);
        let q = all
            .iter()
            .filter(|comp| comp.support.0 <= mid && mid <= comp.support.1)
            .fold(Polynomial::zero(), |acc, comp| acc.add(&comp.poly));
        let mut d1 = q.integral();
        d1 = d1.add(&Polynomial::constant(slope - d1.eval(t0)));
        let mut d0 = d1.integral();
        d0 = d0.add(&Polynomial::constant(value - d0.eval(t0)));
        value = d0.eval(t1);
        slope = d1.eval(t1);
        pieces.push((t0, t1, d0));
    }
    Ok((pieces, amps))
}

/// Smooth profile on `[a, b]` agreeing with the given jets to third order at
/// both ends, with `φ'' ≤ 0` and `φ' ≥ 0` verified on a grid.
pub fn build_bridge_profile<T: Real>(
    a: T,
    b: T,
    left: Jet<T>,
    right: Jet<T>,
    shape: BridgeShape,
) -> Result<(RadialProfile<T>, BridgeInfo)> {
    let (pieces, amps) = bridge_pieces(a, b, left, right, shape)?;
    let profiles = pieces
        .into_iter()
        .map(|(t0, t1, p)| {
            RadialProfile::analytic(Analytic::new(Family::Polynomial(p)).shift(a), (a + t0, a + t1))
        })
        .collect::<Result<Vec<_>>>()?;
    let bridge = RadialProfile::piecewise(profiles)?;

    let pos = T::lit(EPS_POS);
    let (mut max_q, mut min_d1) = (T::neg_infinity(), T::infinity());
    let grid = linspace(a, b, VERIFICATION_POINTS + 2);
    for &r in &grid[1..grid.len() - 1] {
        let j = bridge.jet(r)?;
        if j.d2 > pos {
            return Err(Error::BridgeConstraint { constraint: "φ'' ≤ 0", r: r.to_f64_lossy(), value: j.d2.to_f64_lossy() });
        }
        if j.d1 < -pos {
            return Err(Error::BridgeConstraint { constraint: "φ' ≥ 0", r: r.to_f64_lossy(), value: j.d1.to_f64_lossy() });
        }
        max_q = max_q.max(j.d2);
        min_d1 = min_d1.min(j.d1);
    }
    let end = bridge.jet(b)?;
    for (k, (got, want)) in [(end.v, right.v), (end.d1, right.d1), (end.d2, right.d2), (end.d3, right.d3)]
        .into_iter()
        .enumerate()
    {
        if (got - want).abs() > T::lit(1e-9) {
            return Err(Error::BridgeConstraint {
                constraint: ["C⁰ match", "C¹ match", "C² match", "C³ match"][k],
                r: b.to_f64_lossy(),
                value: (got - want).to_f64_lossy(),
            });
        }
    }
    let info = BridgeInfo {
        start: a.to_f64_lossy(),
        end: b.to_f64_lossy(),
        shape,
        amplitudes: amps.map(|x| x.to_f64_lossy()),
        max_second_derivative: max_q.to_f64_lossy(),
        min_first_derivative: min_d1.to_f64_lossy(),
    };
    Ok((bridge, info))
}

/// `φ = r` on `[0, π/6]`, the bridge, `sin r` on `[π/3, π/2]`.
pub fn rotsym_half_warping<T: Real>() -> Result<(RadialProfile<T>, BridgeInfo)> {
    let pi = T::PI();
    let (a, b) = (pi / T::lit(6.0), pi / T::lit(3.0));
    let left = Jet::new(a, T::one(), T::zero(), T::zero());
    let (sb, cb) = b.sin_cos();
    let right = Jet::new(sb, cb, -sb, -cb);
    let (bridge, info) = build_bridge_profile(a, b, left, right, BridgeShape::default())?;
    let profile = RadialProfile::piecewise(vec![
        RadialProfile::family(Family::Identity, (T::zero(), a))?,
        bridge,
        RadialProfile::family(Family::Sin, (b, pi / T::lit(2.0)))?,
    ])?;
    Ok((profile, info))
}

/// Bridged warping reflected about `π/2`, a smooth metric on the sphere.
pub fn rotsym_warping<T: Real>() -> Result<(RadialProfile<T>, BridgeInfo)> {
    let (half, info) = rotsym_half_warping()?;
    Ok((half.reflected(Parity::Even), info))
}

/// `f = r²/2` on `[0, π/3]`, continued on `[π/3, π/2]` by the quartic
/// `f'(s) = π/3 + πs/6 − πs³ + πs⁴/2`, `s = (r − π/3)/(π/6)`, which has
/// `f'(π/2) = f'''(π/2) = 0` and `f'' ≥ −5`.
pub fn rotsym_half_density<T: Real>() -> Result<RadialProfile<T>> {
    let pi = T::PI();
    let third = pi / T::lit(3.0);
    let sixth = pi / T::lit(6.0);
    let slope = Polynomial::new(vec![third, sixth, T::zero(), -pi, pi / T::lit(2.0)]);
    let value = slope
        .integral()
        .scale(sixth)
        .add(&Polynomial::constant(third * third / T::lit(2.0)));
    RadialProfile::piecewise(vec![
        RadialProfile::analytic(Analytic::new(Family::Power(T::lit(2.0))).amplitude(T::lit(0.5)), (T::zero(), third))?,
        RadialProfile::analytic(
            Analytic::new(Family::Polynomial(value)).rate(sixth.recip()).shift(third),
            (third, pi / T::lit(2.0)),
        )?,
    ])
}

pub fn rotsym_density<T: Real>() -> Result<RadialProfile<T>> {
    Ok(rotsym_half_density()?.reflected(Parity::Even))
}

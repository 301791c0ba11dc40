use crate::density::Density;
use crate::error::Result;
use crate::metric::WarpedMetric;
use crate::sampling::{orthonormal_pair, seeded_rng};
use crate::scalar::Real;

use super::{pointwise_eigendata, EigenData, Variant};

/// `sec(U, V) + Hess f(U, U)` (plus `df(U)²` for the strong variant) from the
/// full expansion `Σ_{i<j} λ_ij (U_i V_j − U_j V_i)² + Σ_i term_i U_i²`.
pub fn pair_value<T: Real>(data: &EigenData<T>, u: &[T], v: &[T], variant: Variant) -> T {
    let mut s = T::zero();
    for i in 0..data.n {
        s += data.term(i, variant) * u[i] * u[i];
        for j in i + 1..data.n {
            let w = u[i] * v[j] - u[j] * v[i];
            s += data.lambda[i][j] * w * w;
        }
    }
    s
}

/// Single warped factor: with `U = a∂r + Y`, `V = b∂r + Z`,
/// `sec = −φ''/φ (a² + b²) + (κ − φ'²)/φ² (1 − a² − b²)` and
/// `Hess f(U,U) = a² f'' + (1 − a²) f' φ'/φ`.
fn single_warped_value<T: Real>(data: &EigenData<T>, a: T, b: T, variant: Variant) -> T {
    let one = T::one();
    let radial = data.lambda[0][1];
    let fiber = if data.n >= 3 { data.lambda[1][2] } else { T::zero() };
    let (a2, b2) = (a * a, b * b);
    let mut s = radial * (a2 + b2) + fiber * (one - a2 - b2) + a2 * data.hess[0] + (one - a2) * data.hess[1];
    if variant == Variant::Strong {
        s += data.df[0] * data.df[0] * a2;
    }
    s
}

/// Minimum of the weighted curvature over `samples` random orthonormal pairs.
pub fn bruteforce_min_sec<T: Real>(
    metric: &WarpedMetric<T>,
    density: &Density<T>,
    r: T,
    variant: Variant,
    samples: usize,
    seed: u64,
) -> Result<T> {
    let data = pointwise_eigendata(metric, density, r)?;
    let single = metric.blocks().len() == 1;
    let mut rng = seeded_rng(seed);
    let mut best = T::infinity();
    for _ in 0..samples.max(1) {
        let (u, v) = orthonormal_pair::<T, _>(&mut rng, data.n);
        let value = if single {
            single_warped_value(&data, u[0], v[0], variant)
        } else {
            pair_value(&data, &u, &v, variant)
        };
        best = best.min(value);
    }
    Ok(best)
}

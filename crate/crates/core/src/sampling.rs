//! Random orthonormal frames for Monte Carlo oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::Real;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect()
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Orthonormalizes `(u, v)` in place by Gram–Schmidt. Returns `false` when
/// the pair is numerically dependent.
pub fn gram_schmidt<T: Real>(u: &mut [T], v: &mut [T]) -> bool {
    let tiny = T::lit(1e-12);
    let nu = dot(u, u).sqrt();
    if !(nu > tiny) {
        return false;
    }
    u.iter_mut().for_each(|x| *x = *x / nu);
    let p = dot(u, v);
    v.iter_mut().zip(u.iter()).for_each(|(y, &x)| *y = *y - p * x);
    let nv = dot(v, v).sqrt();
    if !(nv > tiny) {
        return false;
    }
    v.iter_mut().for_each(|y| *y = *y / nv);
    true
}

/// Orthonormal pair in `R^n` (n ≥ 2) obtained by orthonormalizing two
/// standard Gaussian vectors, which is uniform on the Stiefel manifold.
pub fn orthonormal_pair<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 2, "orthonormal pairs need dimension at least 2");
    loop {
        let mut u = gaussian_vector(rng, n);
        let mut v = gaussian_vector(rng, n);
        if gram_schmidt(&mut u, &mut v) {
            return (u, v);
        }
    }
}

//! Extremal values of `S(Y,Z) = ⟨R(Y∧Z), Y∧Z⟩ + ⟨L Y, Y⟩` over orthonormal
//! pairs, for `R` and `L` simultaneously diagonal in a frame `E_i`.
//!
//! Writing `x_i = a_i²` and `z_ij = (a_i b_j − a_j b_i)²` turns `S` into a
//! linear function on a convex polytope, whose corners produce the candidate
//! values `λ_ij + μ_i` and `½(λ_ij + λ_kl + μ_i + μ_j)`.

use serde::Serialize;

use crate::curvature::EigenData;
use crate::sampling::{dot, gram_schmidt, orthonormal_pair, seeded_rng};
use crate::scalar::Real;
use crate::EPS_POS;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate<T> {
    pub value: T,
    /// `[i, j]` for attained corners, `[i, j, k, l]` for half sums.
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateSet<T> {
    pub attained: Vec<Candidate<T>>,
    pub half_sums: Vec<Candidate<T>>,
}

fn extreme<T: Real>(values: impl Iterator<Item = T>, pick: fn(T, T) -> T, start: T) -> T {
    values.fold(start, pick)
}

impl<T: Real> CandidateSet<T> {
    pub fn min_attained(&self) -> T {
        extreme(self.attained.iter().map(|c| c.value), T::min, T::infinity())
    }

    pub fn max_attained(&self) -> T {
        extreme(self.attained.iter().map(|c| c.value), T::max, T::neg_infinity())
    }

    pub fn min_all(&self) -> T {
        extreme(self.half_sums.iter().map(|c| c.value), T::min, self.min_attained())
    }

    pub fn max_all(&self) -> T {
        extreme(self.half_sums.iter().map(|c| c.value), T::max, self.max_attained())
    }

    pub fn all(&self) -> impl Iterator<Item = &Candidate<T>> {
        self.attained.iter().chain(self.half_sums.iter())
    }
}

/// Enumerates both candidate families, using `data.mu` as the eigenvalues of `L`.
pub fn candidate_extrema<T: Real>(data: &EigenData<T>) -> CandidateSet<T> {
    let n = data.n;
    let (lam, mu) = (&data.lambda, &data.mu);
    let mut attained = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                attained.push(Candidate { value: lam[i][j] + mu[i], indices: vec![i, j] });
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let half = T::lit(0.5);
    let mut half_sums = Vec::new();
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            if k == i || k == j || l == i || l == j {
                continue;
            }
            half_sums.push(Candidate {
                value: half * (lam[i][j] + lam[k][l] + mu[i] + mu[j]),
                indices: vec![i, j, k, l],
            });
        }
    }
    CandidateSet { attained, half_sums }
}

/// `S(a, b) = Σ_{i<j} λ_ij w_ij² + Σ_i μ_i a_i²` with `w_ij = a_i b_j − a_j b_i`.
pub fn pair_functional<T: Real>(data: &EigenData<T>, a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for i in 0..data.n {
        s += data.mu[i] * a[i] * a[i];
        for j in i + 1..data.n {
            let w = a[i] * b[j] - a[j] * b[i];
            s += data.lambda[i][j] * w * w;
        }
    }
    s
}

fn gradient<T: Real>(data: &EigenData<T>, a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let n = data.n;
    let two = T::lit(2.0);
    let mut ga = vec![T::zero(); n];
    let mut gb = vec![T::zero(); n];
    for k in 0..n {
        ga[k] = two * data.mu[k] * a[k];
        for j in 0..n {
            if j == k {
                continue;
            }
            let w = a[k] * b[j] - a[j] * b[k];
            ga[k] += two * data.lambda[k][j] * w * b[j];
            gb[k] -= two * data.lambda[k][j] * w * a[j];
        }
    }
    (ga, gb)
}

/// Riemannian gradient descent on the Stiefel manifold of orthonormal pairs,
/// with Armijo backtracking and a Gram–Schmidt retraction. `sign = 1`
/// minimizes, `sign = −1` maximizes.
fn polish<T: Real>(data: &EigenData<T>, mut a: Vec<T>, mut b: Vec<T>, sign: T) -> T {
    let half = T::lit(0.5);
    let mut value = sign * pair_functional(data, &a, &b);
    let mut step = T::one();
    let mut checkpoint = value;
    for iter in 0..POLISH_ITER {
        if iter % 100 == 99 {
            // stalled: less than 1e-13 gained over the last 100 steps
            if checkpoint - value < T::lit(1e-13) * (T::one() + value.abs()) {
                break;
            }
            checkpoint = value;
        }
        let (ga, gb) = gradient(data, &a, &b);
        let (ga, gb): (Vec<T>, Vec<T>) = (
            ga.iter().map(|&g| sign * g).collect(),
            gb.iter().map(|&g| sign * g).collect(),
        );
        // project onto the tangent space: G − X sym(XᵀG)
        let (aa, ab, ba, bb) = (dot(&a, &ga), dot(&a, &gb), dot(&b, &ga), dot(&b, &gb));
        let off = half * (ab + ba);
        let ra: Vec<T> = (0..data.n).map(|i| ga[i] - a[i] * aa - b[i] * off).collect();
        let rb: Vec<T> = (0..data.n).map(|i| gb[i] - a[i] * off - b[i] * bb).collect();
        let g2 = dot(&ra, &ra) + dot(&rb, &rb);
        if g2 < T::lit(1e-20) {
            break;
        }
        step = (step * T::lit(2.0)).min(T::lit(10.0));
        let mut accepted = false;
        for _ in 0..60 {
            let mut na: Vec<T> = (0..data.n).map(|i| a[i] - step * ra[i]).collect();
            let mut nb: Vec<T> = (0..data.n).map(|i| b[i] - step * rb[i]).collect();
            if gram_schmidt(&mut na, &mut nb) {
                let nv = sign * pair_functional(data, &na, &nb);
                if nv <= value - T::lit(1e-4) * step * g2 {
                    a = na;
                    b = nb;
                    value = nv;
                    accepted = true;
                    break;
                }
            }
            step = step * half;
        }
        if !accepted {
            break;
        }
    }
    sign * value
}

const POLISHED: usize = 12;
/// Degenerate minima (a whole valley of zeros) converge slowly; 500 steps
/// left some starts 4e-4 above the corner.
const POLISH_ITER: usize = 5000;
const RESTARTS: usize = 24;

fn keep_best<T: Real>(best: &mut Vec<(T, Vec<T>, Vec<T>)>, score: T, a: &[T], b: &[T]) {
    if best.len() < POLISHED {
        best.push((score, a.to_vec(), b.to_vec()));
    } else if let Some(worst) = best
        .iter_mut()
        .max_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal))
    {
        if score < worst.0 {
            *worst = (score, a.to_vec(), b.to_vec());
        }
    }
}

/// Minimum and maximum of `S` over `samples` random orthonormal pairs,
/// each extreme refined by local descent from the best samples and from a
/// few fresh random starts.
pub fn pair_extrema_bruteforce<T: Real>(data: &EigenData<T>, samples: usize, seed: u64) -> (T, T) {
    let mut rng = seeded_rng(seed);
    let mut lows = Vec::with_capacity(POLISHED);
    let mut highs = Vec::with_capacity(POLISHED);
    let (mut min, mut max) = (T::infinity(), T::neg_infinity());
    for _ in 0..samples.max(1) {
        let (a, b) = orthonormal_pair::<T, _>(&mut rng, data.n);
        let s = pair_functional(data, &a, &b);
        min = min.min(s);
        max = max.max(s);
        keep_best(&mut lows, s, &a, &b);
        keep_best(&mut highs, -s, &a, &b);
    }
    for _ in 0..RESTARTS {
        let (a, b) = orthonormal_pair::<T, _>(&mut rng, data.n);
        lows.push((T::zero(), a.clone(), b.clone()));
        highs.push((T::zero(), a, b));
    }
    for (_, a, b) in lows {
        min = min.min(polish(data, a, b, T::one()));
    }
    for (_, a, b) in highs {
        max = max.max(polish(data, a, b, -T::one()));
    }
    (min, max)
}

/// Grid point and index pair at which the positivity hypothesis fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisViolation<T> {
    pub point: usize,
    pub i: usize,
    pub j: usize,
    pub lambda: T,
    pub mu_i: T,
    pub mu_j: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleResult<T> {
    pub scale: Option<T>,
    pub violation: Option<HypothesisViolation<T>>,
    pub iterations: usize,
}

pub const SCALE_TOL: f64 = 0.01;
pub const SCALE_MAX_ITER: usize = 50;

/// Smallest full candidate over the grid with `μ` replaced by `s μ`.
pub fn scaled_candidate_min<T: Real>(grid: &[EigenData<T>], s: T) -> T {
    grid.iter()
        .map(|d| candidate_extrema(&d.scaled_density(s)).min_all())
        .fold(T::infinity(), T::min)
}

/// Finds `s ∈ (0, 1]` with every scaled candidate above `ε_pos`, when each
/// pair satisfies `λ_ij > 0` or `min(μ_i, μ_j) > 0`.
pub fn positivity_scale<T: Real>(grid: &[EigenData<T>]) -> ScaleResult<T> {
    let pos = T::lit(EPS_POS);
    for (point, d) in grid.iter().enumerate() {
        for i in 0..d.n {
            for j in i + 1..d.n {
                if !(d.lambda[i][j] > pos || d.mu[i].min(d.mu[j]) > pos) {
                    return ScaleResult {
                        scale: None,
                        violation: Some(HypothesisViolation {
                            point,
                            i,
                            j,
                            lambda: d.lambda[i][j],
                            mu_i: d.mu[i],
                            mu_j: d.mu[j],
                        }),
                        iterations: 0,
                    };
                }
            }
        }
    }
    let feasible = |s: T| scaled_candidate_min(grid, s) > pos;
    let mut iterations = 1;
    if feasible(T::one()) {
        return ScaleResult { scale: Some(T::one()), violation: None, iterations };
    }
    let half = T::lit(0.5);
    let mut lo = half;
    while !feasible(lo) {
        iterations += 1;
        if iterations >= SCALE_MAX_ITER {
            return ScaleResult { scale: None, violation: None, iterations };
        }
        lo = lo * half;
    }
    let mut hi = (lo + lo).min(T::one());
    while hi - lo > T::lit(SCALE_TOL) && iterations < SCALE_MAX_ITER {
        iterations += 1;
        let mid = half * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ScaleResult { scale: Some(lo), violation: None, iterations }
}

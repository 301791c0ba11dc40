//! Density synthesis by linear feasibility.
//!
//! The test-pair inequalities are linear in `(f', f'')` for the weighted
//! variant and, after `u = e^f`, linear and homogeneous in `(u, u', u'')` for
//! the strong one. Derivatives are discretized by second-order finite
//! differences on a uniform grid and the resulting system is handed to a
//! simplex solver in phase-one form: every curvature row gets a
//! non-negative slack and the total slack is minimized, so a zero optimum is
//! a feasible point and a positive one is a certificate of infeasibility.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use serde::Serialize;

use crate::curvature::{
    certify_bound, pointwise_eigendata, testpairs_from, CurvatureReport, Label, Variant,
};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::metric::WarpedMetric;
use crate::obstruction::critical_points;
use crate::profile::RadialProfile;
use crate::scalar::linspace;
use crate::spline::{CubicSpline, SplineBoundary};

pub const MIN_NODES: usize = 32;
/// Total slack below which the phase-one optimum counts as zero.
const FEASIBILITY_TOL: f64 = 1e-9;
const REPORTED_VIOLATIONS: usize = 8;

#[derive(Clone, Debug)]
pub struct SynthesisProblem {
    pub metric: WarpedMetric<f64>,
    pub lambda: f64,
    pub variant: Variant,
    /// Interior grid points; the grid has two more nodes at the ends.
    pub nodes: usize,
    /// Overrides the default discretization margin.
    pub margin: Option<f64>,
}

impl SynthesisProblem {
    pub fn new(metric: WarpedMetric<f64>, lambda: f64, variant: Variant, nodes: usize) -> Self {
        Self { metric, lambda, variant, nodes, margin: None }
    }

    fn spacing(&self) -> f64 {
        let (a, b) = self.metric.domain();
        (b - a) / (self.nodes + 1) as f64
    }

    /// `max(1e-3, 10 h² max|φ|)`.
    pub fn default_margin(&self) -> Result<f64> {
        let (a, b) = self.metric.domain();
        let h = self.spacing();
        let mut scale = 0.0_f64;
        for block in self.metric.blocks() {
            for r in linspace(a, b, self.nodes + 2) {
                scale = scale.max(block.w.value(r)?.abs());
            }
        }
        Ok((10.0 * h * h * scale).max(1e-3))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub node: usize,
    pub r: f64,
    pub pair: String,
    pub amount: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Optimal total slack of the phase-one problem.
    pub total_violation: f64,
    /// Largest row violations, in decreasing order.
    pub violations: Vec<Violation>,
    /// Interior critical points of `φ`.
    pub critical_points: Vec<f64>,
    /// Witness `(r, value)` when the discrete solution failed re-certification.
    pub post_check_witness: Option<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SynthesisStatus {
    Feasible,
    Infeasible { diagnostics: Diagnostics },
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthesisResult {
    pub status: SynthesisStatus,
    pub variant: Variant,
    pub lambda: f64,
    pub margin: f64,
    pub grid: Vec<f64>,
    /// `f` (weighted) or `u` (strong) at the grid nodes.
    pub values: Vec<f64>,
    /// Certification of the interpolated density on a 4N grid.
    pub post_check: Option<CurvatureReport<f64>>,
    #[serde(skip)]
    pub density: Option<Density<f64>>,
}

impl SynthesisResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, SynthesisStatus::Feasible)
    }
}

/// Stencil `Σ c_k x_k` for the first or second derivative at `node`.
fn stencil(node: usize, len: usize, order: usize, h: f64) -> Vec<(usize, f64)> {
    let last = len - 1;
    match (order, node) {
        (1, 0) => vec![(0, -1.5 / h), (1, 2.0 / h), (2, -0.5 / h)],
        (1, k) if k == last => vec![(k, 1.5 / h), (k - 1, -2.0 / h), (k - 2, 0.5 / h)],
        (1, k) => vec![(k + 1, 0.5 / h), (k - 1, -0.5 / h)],
        (_, 0) => {
            let s = h * h;
            vec![(0, 2.0 / s), (1, -5.0 / s), (2, 4.0 / s), (3, -1.0 / s)]
        }
        (_, k) if k == last => {
            let s = h * h;
            vec![(k, 2.0 / s), (k - 1, -5.0 / s), (k - 2, 4.0 / s), (k - 3, -1.0 / s)]
        }
        (_, k) => {
            let s = h * h;
            vec![(k - 1, 1.0 / s), (k, -2.0 / s), (k + 1, 1.0 / s)]
        }
    }
}

/// Sorted, de-duplicated terms, as the solver expects.
fn merge(mut terms: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out
}

fn apply(st: &[(usize, f64)], x: &[f64]) -> f64 {
    st.iter().map(|&(k, c)| c * x[k]).sum()
}

/// One curvature inequality `Σ coeffs · x + slack ≥ rhs`.
struct Row {
    node: usize,
    pair: String,
    coeffs: Vec<(usize, f64)>,
    rhs: f64,
}

fn build_rows(problem: &SynthesisProblem, grid: &[f64], target: f64) -> Result<Vec<Row>> {
    let metric = &problem.metric;
    let zero = Density::zero(metric.domain())?;
    let blocks = metric.blocks();
    let h = problem.spacing();
    let (left, right) = closed_ends(metric);
    let mut rows = Vec::new();
    for (k, &r) in grid.iter().enumerate() {
        if (k == 0 && left) || (k + 1 == grid.len() && right) {
            continue;
        }
        let data = pointwise_eigendata(metric, &zero, r)?;
        let log_slopes: Vec<f64> = blocks
            .iter()
            .map(|b| b.w.jet(r).map(|j| j.d1 / j.v))
            .collect::<Result<_>>()?;
        for pair in testpairs_from(&data, problem.variant) {
            let lam = data.lambda[pair.i][pair.j];
            let mut coeffs = match data.labels[pair.i] {
                Label::Radial => stencil(k, grid.len(), 2, h),
                Label::Fiber { block, .. } => {
                    let c = log_slopes[block];
                    stencil(k, grid.len(), 1, h).into_iter().map(|(n, s)| (n, s * c)).collect()
                }
            };
            let rhs = match problem.variant {
                Variant::Weighted => target - lam,
                Variant::Strong => {
                    coeffs.push((k, lam - target));
                    0.0
                }
            };
            rows.push(Row { node: k, pair: pair.label, coeffs: merge(coeffs), rhs });
        }
    }
    Ok(rows)
}

fn closed_ends(metric: &WarpedMetric<f64>) -> (bool, bool) {
    let blocks = metric.blocks();
    (blocks.iter().any(|b| b.closes.0), blocks.iter().any(|b| b.closes.1))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// Minimize total row violation.
    Violation,
    /// Rows hard; minimize `Σ |Δ⁴x|`.
    Smooth,
}

struct Solved {
    objective: f64,
    slacks: Vec<f64>,
}

impl Solved {
    fn objective(&self) -> f64 {
        self.objective
    }
}

fn solve(
    variant: Variant,
    rows: &[Row],
    len: usize,
    h: f64,
    closed: (bool, bool),
    phase: Phase,
) -> Result<(Solved, Vec<f64>)> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = (0..len)
        .map(|k| match variant {
            // f is determined up to a constant
            Variant::Weighted if k == 0 => lp.add_var(0.0, (0.0, 0.0)),
            Variant::Weighted => lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)),
            // the strong system is homogeneous in u
            Variant::Strong => lp.add_var(0.0, (1.0, f64::INFINITY)),
        })
        .collect();
    let slacks: Vec<Option<Variable>> = rows
        .iter()
        .map(|_| (phase == Phase::Violation).then(|| lp.add_var(1.0, (0.0, f64::INFINITY))))
        .collect();
    let jumps: Vec<Variable> = match phase {
        Phase::Smooth => (2..len - 2).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect(),
        Phase::Violation => Vec::new(),
    };
    for (row, s) in rows.iter().zip(&slacks) {
        let mut expr: Vec<(Variable, f64)> = row.coeffs.iter().map(|&(k, c)| (vars[k], c)).collect();
        if let Some(s) = s {
            expr.push((*s, 1.0));
        }
        lp.add_constraint(expr.as_slice(), ComparisonOp::Ge, row.rhs);
    }
    for (is_closed, node) in [(closed.0, 0), (closed.1, len - 1)] {
        if is_closed {
            let expr: Vec<(Variable, f64)> =
                stencil(node, len, 1, h).into_iter().map(|(k, c)| (vars[k], c)).collect();
            lp.add_constraint(expr.as_slice(), ComparisonOp::Eq, 0.0);
        }
    }
    for (k, &t) in (2..len - 2).zip(&jumps) {
        let d4 = [(k - 2, 1.0), (k - 1, -4.0), (k, 6.0), (k + 1, -4.0), (k + 2, 1.0)];
        for sign in [1.0, -1.0] {
            let mut expr: Vec<(Variable, f64)> = d4.iter().map(|&(n, c)| (vars[n], sign * c)).collect();
            expr.push((t, 1.0));
            lp.add_constraint(expr.as_slice(), ComparisonOp::Ge, 0.0);
        }
    }
    let solution = lp.solve().map_err(|e| Error::Solver(e.to_string()))?;
    let values = vars.iter().map(|&v| solution[v]).collect();
    let slacks = slacks.iter().map(|s| s.map_or(0.0, |s| solution[s])).collect();
    Ok((Solved { objective: solution.objective(), slacks }, values))
}

pub fn synthesize_density(problem: &SynthesisProblem) -> Result<SynthesisResult> {
    if problem.nodes < MIN_NODES {
        return Err(Error::InvalidArgument(format!(
            "synthesis needs at least {MIN_NODES} interior nodes, got {}",
            problem.nodes
        )));
    }
    let margin = match problem.margin {
        Some(d) if d > 0.0 => d,
        Some(d) => return Err(Error::InvalidArgument(format!("synthesis margin must be positive, got {d}"))),
        None => problem.default_margin()?,
    };
    let metric = &problem.metric;
    let (a, b) = metric.domain();
    let len = problem.nodes + 2;
    let grid = linspace(a, b, len);
    let h = problem.spacing();
    let rows = build_rows(problem, &grid, problem.lambda + margin)?;
    let (left, right) = closed_ends(metric);

    let (solution, values) = solve(problem.variant, &rows, len, h, (left, right), Phase::Violation)?;
    let total = solution.objective();
    let mut result = SynthesisResult {
        status: SynthesisStatus::Feasible,
        variant: problem.variant,
        lambda: problem.lambda,
        margin,
        grid: grid.clone(),
        values: values.clone(),
        post_check: None,
        density: None,
    };
    let crit = || -> Result<Vec<f64>> { critical_points(metric.primary()) };

    if total > FEASIBILITY_TOL * rows.len().max(1) as f64 {
        let mut violations: Vec<Violation> = rows
            .iter()
            .zip(&solution.slacks)
            .filter(|(_, &s)| s > FEASIBILITY_TOL)
            .map(|(row, &s)| Violation {
                node: row.node,
                r: grid[row.node],
                pair: row.pair.clone(),
                amount: s,
            })
            .collect();
        violations.sort_by(|x, y| y.amount.total_cmp(&x.amount));
        violations.truncate(REPORTED_VIOLATIONS);
        result.status = SynthesisStatus::Infeasible {
            diagnostics: Diagnostics {
                total_violation: total,
                violations,
                critical_points: crit()?,
                post_check_witness: None,
            },
        };
        return Ok(result);
    }

    // smoothest feasible point: least total variation of the third difference
    let (_, values) = solve(problem.variant, &rows, len, h, (left, right), Phase::Smooth)?;
    result.values = values.clone();
    let slope = |node: usize| apply(&stencil(node, len, 1, h), &values);
    let boundary = if left || right {
        SplineBoundary::Clamped {
            start: if left { 0.0 } else { slope(0) },
            end: if right { 0.0 } else { slope(len - 1) },
        }
    } else {
        SplineBoundary::NotAKnot
    };
    let profile = RadialProfile::spline(CubicSpline::new(grid, values, boundary)?);
    let density = match problem.variant {
        Variant::Weighted => Density::RadialF(profile),
        Variant::Strong => Density::RadialU(profile),
    };
    let check = certify_bound(metric, &density, problem.lambda, problem.variant, 4 * problem.nodes)?;
    if !check.verdict.is_certified() {
        result.status = SynthesisStatus::Infeasible {
            diagnostics: Diagnostics {
                total_violation: total,
                violations: Vec::new(),
                critical_points: crit()?,
                post_check_witness: Some((check.argmin, check.global_min)),
            },
        };
    } else {
        result.density = Some(density);
    }
    result.post_check = Some(check);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Closure, FiberSpec};
    use crate::profile::Family;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn sin_metric(a: f64, b: f64, closure: Closure) -> WarpedMetric<f64> {
        WarpedMetric::single_warped(RadialProfile::family(Family::Sin, (a, b)).unwrap(), FiberSpec::sphere(2), closure)
            .unwrap()
    }

    #[test]
    fn stencils_are_exact_on_quadratics() {
        let h = 0.1;
        let x: Vec<f64> = (0..8).map(|k| (k as f64 * h).powi(2) + 3.0 * k as f64 * h).collect();
        for node in 0..8 {
            let t = node as f64 * h;
            assert!((apply(&stencil(node, 8, 1, h), &x) - (2.0 * t + 3.0)).abs() < 1e-9);
            assert!((apply(&stencil(node, 8, 2, h), &x) - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn hemisphere_is_feasible_at_two() {
        let p = SynthesisProblem::new(sin_metric(0.05, 1.5, Closure::OpenLine), 2.0, Variant::Weighted, 64);
        let res = synthesize_density(&p).unwrap();
        assert!(res.is_feasible(), "{:?}", res.status);
        let check = res.post_check.as_ref().unwrap();
        assert!(check.verdict.is_certified());
        assert_eq!(check.grid.len(), 256);
        let f = res.density.as_ref().unwrap();
        for &r in &res.grid[1..res.grid.len() - 1] {
            let d1 = f.f_jet(r).unwrap().d1;
            assert!(d1 / r.tan() >= 1.0 - 1e-2, "f' cot r = {} at {r}", d1 / r.tan());
        }
    }

    #[test]
    fn strong_sphere_fails_at_the_equator() {
        let p = SynthesisProblem::new(sin_metric(0.0, PI, Closure::SphereLike), 1.5, Variant::Strong, 63);
        let res = synthesize_density(&p).unwrap();
        let SynthesisStatus::Infeasible { diagnostics } = &res.status else {
            panic!("expected infeasibility");
        };
        let worst = &diagnostics.violations[0];
        assert!((worst.r - FRAC_PI_2).abs() < 1e-12, "{diagnostics:?}");
        assert!(diagnostics
            .violations
            .iter()
            .any(|v| (v.r - FRAC_PI_2).abs() < 1e-12 && v.pair == "(Y,Z)"));
        assert!((diagnostics.critical_points[0] - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn cusp_is_strongly_feasible() {
        let phi = RadialProfile::family(Family::Exp, (0.0, 3.0)).unwrap();
        let g = WarpedMetric::single_warped(phi, FiberSpec::flat(2), Closure::OpenLine).unwrap();
        let res = synthesize_density(&SynthesisProblem::new(g, 2.0, Variant::Strong, 64)).unwrap();
        assert!(res.is_feasible(), "{:?}", res.status);
        let u = res.density.as_ref().unwrap();
        let slope = u.f_jet(1.5).unwrap().d1;
        assert!(slope >= 3.0 - 1e-2, "log-slope {slope}");
    }

    #[test]
    fn small_grids_are_rejected() {
        let p = SynthesisProblem::new(sin_metric(0.05, 1.5, Closure::OpenLine), 2.0, Variant::Weighted, 8);
        assert!(matches!(synthesize_density(&p), Err(Error::InvalidArgument(_))));
    }
}

//! Independent oracles: finite differences, closed forms and hand-built
//! geodesics, compared against the library outputs.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, TAU};
use std::sync::Arc;

use rand::Rng;

use wcurv::closure::validate_closure;
use wcurv::curvature::{
    bruteforce_min_sec, certify_bound, pointwise_eigendata, sym_sec_2d, testpair_curvatures, weighted_sec_2d,
    EigenData, Variant,
};
use wcurv::density::{Density, FieldForm, FourierMode, TwoDimDensity};
use wcurv::gallery::gallery;
use wcurv::gauss_bonnet::{area_bound_check, gauss_bonnet};
use wcurv::metric::{Closure, FiberSpec, WarpedMetric};
use wcurv::obstruction::{critical_points, dumbbell_warping, obstruction_checks};
use wcurv::polytope::{candidate_extrema, pair_extrema_bruteforce, positivity_scale};
use wcurv::profile::{Analytic, Family, RadialProfile};
use wcurv::sampling::seeded_rng;
use wcurv::spline::{CubicSpline, SplineBoundary};
use wcurv::symmetry::{average_density, cheeger_deform, hopf_quotient_metric, oneill_check, AverageMode};
use wcurv::synthesis::{synthesize_density, SynthesisProblem, SynthesisStatus};
use wcurv::variation::{index_form, second_variation_check, Direction, Formulation, GeodesicSegment, VariationField};
use wcurv::{linspace, EPS_POS};

fn analytic(family: Family<f64>, amplitude: f64, rate: f64, domain: (f64, f64)) -> RadialProfile<f64> {
    RadialProfile::analytic(Analytic::new(family).amplitude(amplitude).rate(rate), domain).unwrap()
}

fn sin_on(a: f64, b: f64) -> RadialProfile<f64> {
    RadialProfile::family(Family::Sin, (a, b)).unwrap()
}

fn round_sphere() -> WarpedMetric<f64> {
    WarpedMetric::surface(sin_on(0.0, PI), Closure::SphereLike).unwrap()
}

fn round_s3() -> WarpedMetric<f64> {
    let d = (0.0, FRAC_PI_2);
    WarpedMetric::doubly_warped(sin_on(d.0, d.1), RadialProfile::family(Family::Cos, d).unwrap(), 1, 1, Closure::SphereLike)
        .unwrap()
}

/// Central differences `(f', f'')` with step `h`.
fn fd(f: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
    ((f(x + h) - f(x - h)) / (2.0 * h), (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h))
}

#[test]
fn spline_derivative_of_exponential() {
    let x = linspace(0.0_f64, 2.0, 64);
    let y = x.iter().map(|r| r.exp()).collect();
    let s = RadialProfile::spline(CubicSpline::new(x, y, SplineBoundary::NotAKnot).unwrap());
    assert!((s.derivative(1.0, 1).unwrap() - std::f64::consts::E).abs() < 1e-6);
}

#[test]
fn bridge_is_concave() {
    let entry = gallery("doubly-warped-sphere").unwrap();
    let phi = entry.metric.primary();
    let points = linspace(FRAC_PI_6, FRAC_PI_3, 1002);
    let mut worst = f64::NEG_INFINITY;
    for &r in &points[1..points.len() - 1] {
        let d2 = phi.derivative(r, 2).unwrap();
        let (_, numeric) = fd(|s| phi.value(s).unwrap(), r, 1e-4);
        assert!((d2 - numeric).abs() < 1e-4, "φ'' = {d2}, differences give {numeric} at {r}");
        worst = worst.max(d2);
    }
    assert!(worst <= EPS_POS, "max φ'' = {worst}");
}

#[test]
fn rotsym_sphere_closes() {
    let entry = gallery("rotsym-sphere").unwrap();
    let rep = validate_closure(&entry.metric, &entry.density);
    assert!(rep.passed, "{:?}", rep.conditions.iter().filter(|c| !c.passed).collect::<Vec<_>>());
}

#[test]
fn hemisphere_test_pairs_by_differences() {
    let r = FRAC_PI_3;
    let ld = (0.0, FRAC_PI_2 - 0.01);
    let g = WarpedMetric::single_warped(sin_on(0.01, FRAC_PI_2 - 0.01), FiberSpec::sphere(2), Closure::OpenLine).unwrap();
    let f = Density::RadialF(analytic(Family::LogCos, -1.0, 1.0, ld));
    let pairs = testpair_curvatures(&g, &f, r, Variant::Weighted).unwrap();
    let values: Vec<f64> = pairs.iter().map(|p| p.value).collect();

    let h = 1e-4;
    let (p1, p2) = fd(f64::sin, r, h);
    let (f1, f2) = fd(|s| -s.cos().ln(), r, h);
    let phi = r.sin();
    let oracle = [-p2 / phi + f2, -p2 / phi + f1 * p1 / phi, (1.0 - p1 * p1) / (phi * phi) + f1 * p1 / phi];
    for ((v, o), exact) in values.iter().zip(oracle).zip([5.0, 2.0, 2.0]) {
        assert!((v - exact).abs() < 1e-12, "{values:?}");
        assert!((v - o).abs() < 1e-6, "{v} vs differences {o}");
    }
}

#[test]
fn cusp_is_constant() {
    let g = WarpedMetric::single_warped(RadialProfile::family(Family::Exp, (0.0, 3.0)).unwrap(), FiberSpec::flat(2), Closure::OpenLine)
        .unwrap();
    let u = Density::RadialU(analytic(Family::Exp, 1.0, 3.0, (0.0, 3.0)));
    for r in [0.3, 1.0, 2.2] {
        let (u1, u2) = fd(|s| (3.0 * s).exp(), r, 1e-5);
        let u0 = (3.0 * r).exp();
        // −1 + u''/u on (∂r, Y); −1 + u'/u on the fiber pairs
        let oracle = [-1.0 + u2 / u0, -1.0 + u1 / u0, -1.0 + u1 / u0];
        let values: Vec<f64> = testpair_curvatures(&g, &u, r, Variant::Strong).unwrap().iter().map(|p| p.value).collect();
        for ((v, o), exact) in values.iter().zip(oracle).zip([8.0, 2.0, 2.0]) {
            assert!((v - exact).abs() < 1e-9, "{values:?} at {r}");
            assert!((v - o).abs() < 1e-4);
        }
    }
}

/// Geodesic of `dr² + φ² dθ²` by RK4: `r'' = φφ'θ'²`, `θ'' = −2(φ'/φ) r'θ'`.
fn geodesic(start: (f64, f64), dir: (f64, f64), t: f64, steps: usize) -> (f64, f64) {
    let rhs = |s: [f64; 4]| {
        let (phi, dphi) = (s[0].sin(), s[0].cos());
        [s[2], s[3], phi * dphi * s[3] * s[3], -2.0 * dphi / phi * s[2] * s[3]]
    };
    let mut s = [start.0, start.1, dir.0, dir.1 / start.0.sin()];
    let h = t / steps as f64;
    for _ in 0..steps {
        let k1 = rhs(s);
        let k2 = rhs(std::array::from_fn(|i| s[i] + 0.5 * h * k1[i]));
        let k3 = rhs(std::array::from_fn(|i| s[i] + 0.5 * h * k2[i]));
        let k4 = rhs(std::array::from_fn(|i| s[i] + h * k3[i]));
        s = std::array::from_fn(|i| s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    (s[0], s[1])
}

fn mode_density() -> (Density<f64>, impl Fn(f64, f64) -> f64) {
    let d = (0.0, PI);
    let sin2 = RadialProfile::product(sin_on(d.0, d.1), sin_on(d.0, d.1)).unwrap().scaled(0.1).unwrap();
    let mode = FourierMode { k: 1, cos: Some(sin2), sin: None };
    let two = TwoDimDensity::new(FieldForm::F, RadialProfile::constant(0.0, d).unwrap(), vec![mode]).unwrap();
    (Density::TwoDim(Arc::new(two)), |r: f64, th: f64| 0.1 * th.cos() * r.sin().powi(2))
}

#[test]
fn hessian_along_geodesics() {
    let g = round_sphere();
    let (f, exact) = mode_density();
    let p = (FRAC_PI_3, 0.0);
    let h = 1e-3;
    for angle in [0.0, 0.4, FRAC_PI_2, 2.0] {
        let dir = (f64::cos(angle), f64::sin(angle));
        let along = |t: f64| {
            let (r, th) = if t == 0.0 { p } else { geodesic(p, (dir.0 * t.signum(), dir.1 * t.signum()), t.abs(), 200) };
            exact(r, th)
        };
        let hess = (along(h) - 2.0 * along(0.0) + along(-h)) / (h * h);
        let value = weighted_sec_2d(&g, &f, p, dir, Variant::Weighted).unwrap();
        assert!((value - (1.0 + hess)).abs() < 1e-6, "angle {angle}: {value} vs {}", 1.0 + hess);
    }
}

#[test]
fn symmetrized_curvature_of_cosine() {
    let g = round_sphere();
    let f = Density::RadialF(RadialProfile::family(Family::Cos, (0.0, PI)).unwrap());
    for r in [FRAC_PI_2, 1.0, 2.5] {
        // Δf = (φ f')' / φ by differences
        let h = 1e-4;
        let flux = |s: f64| s.sin() * -s.sin();
        let lap = (flux(r + h) - flux(r - h)) / (2.0 * h) / r.sin();
        assert!((lap + 2.0 * r.cos()).abs() < 1e-6);
        let value = sym_sec_2d(&g, &f, (r, 0.3), Variant::Weighted).unwrap();
        assert!((value - (1.0 + 0.5 * lap)).abs() < 1e-6);
    }
    assert!((sym_sec_2d(&g, &f, (FRAC_PI_2, 0.0), Variant::Weighted).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn direction_average_is_symmetrized() {
    let g = round_sphere();
    let (f, _) = mode_density();
    for variant in [Variant::Weighted, Variant::Strong] {
        for p in [(0.7, 0.2), (FRAC_PI_3, 0.0), (2.4, 4.0)] {
            let mean = (0..64)
                .map(|k| {
                    let a = TAU * k as f64 / 64.0;
                    weighted_sec_2d(&g, &f, p, (a.cos(), a.sin()), variant).unwrap()
                })
                .sum::<f64>()
                / 64.0;
            let sym = sym_sec_2d(&g, &f, p, variant).unwrap();
            assert!((mean - sym).abs() < 1e-8, "{variant:?} at {p:?}: {mean} vs {sym}");
        }
    }
}

#[test]
fn half_sum_enumeration() {
    let mut lambda = vec![vec![1.0; 4]; 4];
    lambda[0][1] = 0.0;
    lambda[1][0] = 0.0;
    lambda[2][3] = 0.0;
    lambda[3][2] = 0.0;
    let data = EigenData::<f64>::from_tables(lambda, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
    let set = candidate_extrema(&data);
    let hit = set.half_sums.iter().find(|c| c.indices == [0, 1, 2, 3]).expect("half sum over (1,2),(3,4)");
    assert!((hit.value - 1.0).abs() < 1e-15);
}

#[test]
fn random_data_between_candidates() {
    let mut rng = seeded_rng(11);
    for trial in 0..5 {
        let mut lambda = vec![vec![0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..i {
                let v = rng.random_range(-1.0..1.0);
                lambda[i][j] = v;
                lambda[j][i] = v;
            }
        }
        let mu = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let data = EigenData::from_tables(lambda, mu).unwrap();
        let set = candidate_extrema(&data);
        let (min, _): (f64, f64) = pair_extrema_bruteforce(&data, 100_000, trial);
        assert!(min >= set.min_all() - 1e-9, "{min} below {}", set.min_all());
        assert!(min <= set.min_attained() + 1e-9, "{min} above {}", set.min_attained());
    }
}

#[test]
fn round_sphere_scale() {
    let mut rng = seeded_rng(5);
    let grid: Vec<EigenData<f64>> = (0..8)
        .map(|_| {
            let mu = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            EigenData::from_tables(vec![vec![1.0; 3]; 3], mu).unwrap()
        })
        .collect();
    let s = positivity_scale(&grid).scale.expect("hypothesis holds");
    assert!(s >= 0.49, "{s}");
}

#[test]
fn hyperbolic_quadratic_closed_form() {
    let entry = gallery("hyperbolic-quadratic(A=2)").unwrap();
    assert_eq!(entry.bound, 3.0);
    for r in [0.2, 1.0, 2.5] {
        let values: Vec<f64> =
            testpair_curvatures(&entry.metric, &entry.density, r, Variant::Weighted).unwrap().iter().map(|p| p.value).collect();
        let coth = r.cosh() / r.sinh();
        let fiber = -1.0 + 2.0 * 2.0 * r * coth;
        let expected = [-1.0 + 2.0 * 2.0, fiber, fiber];
        for (v, x) in values.iter().zip(expected) {
            assert!((v - x).abs() < 1e-9, "{values:?} vs {expected:?}");
        }
        let bf = bruteforce_min_sec(&entry.metric, &entry.density, r, Variant::Weighted, 20_000, 3).unwrap();
        assert!(bf >= 3.0 - 1e-9, "{bf}");
    }
}

/// Composite Simpson rule, independent of the adaptive library quadrature.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h)).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn gaussian_index_forms() {
    let g = WarpedMetric::<f64>::flat(3, 2.0).unwrap();
    let f = Density::RadialF(analytic(Family::Power(2.0), 0.5, 1.0, (0.0, 2.0)));
    let seg = GeodesicSegment::new(&g, 0.0, 1.0, Direction::Outward).unwrap();
    let field = VariationField::Parallel { block: 0 };
    let classical = index_form(&seg, &f, field, Formulation::Classical).unwrap();
    let weighted = index_form(&seg, &f, field, Formulation::Weighted).unwrap();
    // ∫ −(K + f'') + [f'] = −1 + 1
    let by_hand = simpson(|_| -1.0, 0.0, 1.0, 8) + 1.0;
    assert!(classical.abs() < 1e-12 && (weighted - by_hand).abs() < 1e-10);
    let sv = second_variation_check(&seg, &f, Variant::Weighted).unwrap();
    assert!((sv.margin - 1.0).abs() < 1e-10);
}

#[test]
fn sphere_index_form_by_simpson() {
    let g = WarpedMetric::single_warped(sin_on(0.0, PI), FiberSpec::sphere(2), Closure::SphereLike).unwrap();
    let f = Density::RadialF(analytic(Family::Cos, 0.3, 1.0, (0.0, PI)));
    let (a, b) = (0.4, 2.2);
    let seg = GeodesicSegment::new(&g, a, b, Direction::Outward).unwrap();
    let field = VariationField::Scaled { block: 0 };
    // y = e^f, g = f' = −0.3 sin r, K = 1
    let y = |r: f64| (0.3 * r.cos()).exp();
    let gp = |r: f64| -0.3 * r.sin();
    let classical = simpson(|r| (gp(r) * y(r)).powi(2) - y(r).powi(2), a, b, 2000);
    let value = index_form(&seg, &f, field, Formulation::Classical).unwrap();
    assert!((value - classical).abs() < 1e-8, "{value} vs {classical}");
    for form in [Formulation::Weighted, Formulation::Strong] {
        let v = index_form(&seg, &f, field, form).unwrap();
        assert!((v - classical).abs() < 1e-8, "{form:?}: {v}");
    }
}

#[test]
fn hemisphere_margin_is_positive() {
    let entry = gallery("hemisphere").unwrap();
    let seg = GeodesicSegment::new(&entry.metric, 0.1, 1.4, Direction::Outward).unwrap();
    let sv = second_variation_check(&seg, &entry.density, Variant::Weighted).unwrap();
    assert!(sv.margin > 0.0 && sv.passed, "{sv:?}");
    // ∫ sec_f ≥ 2 over a segment of length 1.3
    assert!(sv.margin >= 2.0 * 1.3 - 1e-6);
}

#[test]
fn strong_sphere_is_infeasible_at_the_equator() {
    let g = WarpedMetric::single_warped(sin_on(0.0, PI), FiberSpec::sphere(2), Closure::SphereLike).unwrap();
    for lambda in [1.5, 2.0] {
        let res = synthesize_density(&SynthesisProblem::new(g.clone(), lambda, Variant::Strong, 63)).unwrap();
        let SynthesisStatus::Infeasible { diagnostics } = res.status else { panic!("feasible at {lambda}") };
        if lambda == 1.5 {
            assert!(diagnostics.violations.iter().any(|v| (v.r - FRAC_PI_2).abs() < PI / 128.0));
        }
    }
}

#[test]
fn synthesis_is_monotone() {
    let g = WarpedMetric::single_warped(sin_on(0.05, FRAC_PI_2 - 0.05), FiberSpec::sphere(2), Closure::OpenLine).unwrap();
    let feasible: Vec<bool> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&l| synthesize_density(&SynthesisProblem::new(g.clone(), l, Variant::Weighted, 48)).unwrap().is_feasible())
        .collect();
    assert_eq!(feasible, [true, true, true]);
}

#[test]
fn dumbbell_obstruction_is_sound() {
    let phi = dumbbell_warping::<f64>(0.5).unwrap();
    assert_eq!(critical_points(&phi).unwrap().len(), 3);
    let g = WarpedMetric::single_warped(phi, FiberSpec::sphere(2), Closure::SphereLike).unwrap();
    let rep = obstruction_checks(&g).unwrap();
    assert!(!rep.critical_passed);
    for lambda in [0.01, 0.1] {
        let res = synthesize_density(&SynthesisProblem::new(g.clone(), lambda, Variant::Strong, 63)).unwrap();
        assert!(!res.is_feasible(), "strong synthesis feasible at {lambda}");
    }
}

#[test]
fn rotsym_area_and_total_curvature() {
    let entry = gallery("rotsym-sphere").unwrap();
    let surface = WarpedMetric::surface(entry.metric.primary().clone(), Closure::SphereLike).unwrap();
    let rep = gauss_bonnet(&surface, &entry.density).unwrap();
    assert!((rep.integral - 4.0 * PI).abs() < 1e-4, "{}", rep.integral);
}

#[test]
fn rescaled_sphere_meets_area_bound() {
    let (eps, c) = (0.05, 0.9_f64.sqrt());
    let d = (0.0, c * PI);
    let g = WarpedMetric::surface(analytic(Family::Sin, c, 1.0 / c, d), Closure::SphereLike).unwrap();
    let f = Density::RadialF(analytic(Family::Cos, eps, 1.0 / c, d));
    let rep = area_bound_check(&g, &f, 512).unwrap();
    // sym sec = (1 − ε cos(r/c)) / c², smallest at the pole r = 0
    assert!((rep.min_sym_sec - (1.0 - eps) / 0.9).abs() < 1e-6, "{}", rep.min_sym_sec);
    assert!(rep.min_sym_sec >= 1.0);
    assert!(rep.passed && (rep.area - 4.0 * PI * 0.9).abs() < 1e-8);
}

#[test]
fn averaging_recovers_the_radial_part() {
    let g = round_sphere();
    let d = (0.0, PI);
    let f0 = analytic(Family::Cos, 0.2, 1.0, d);
    let sin2 = RadialProfile::product(sin_on(d.0, d.1), sin_on(d.0, d.1)).unwrap();
    let mode = FourierMode { k: 1, cos: Some(sin2.clone().scaled(0.1).unwrap()), sin: None };
    let two = TwoDimDensity::new(FieldForm::F, f0.clone(), vec![mode]).unwrap();
    let avg = average_density(&g, &Density::TwoDim(Arc::new(two)), AverageMode::F).unwrap();

    let u0 = f0.clone().exp();
    let umode = FourierMode { k: 1, cos: Some(RadialProfile::product(u0.clone(), sin2).unwrap().scaled(0.1).unwrap()), sin: None };
    let two_u = TwoDimDensity::new(FieldForm::U, u0, vec![umode]).unwrap();
    let avg_u = average_density(&g, &Density::TwoDim(Arc::new(two_u)), AverageMode::U).unwrap();
    for r in linspace(0.1, PI - 0.1, 17) {
        let exact = 0.2 * r.cos();
        assert!((avg.f_jet(r).unwrap().v - exact).abs() < 1e-12);
        assert!((avg_u.f_jet(r).unwrap().v - exact).abs() < 1e-12);
    }
}

#[test]
fn cheeger_shrinks_the_circle() {
    let g = round_sphere();
    for lambda in [0.1, 1.0, 10.0] {
        let deformed = cheeger_deform(&g, lambda).unwrap();
        for r in linspace(0.0, PI, 101) {
            let (before, after) = (g.primary().value(r).unwrap(), deformed.primary().value(r).unwrap());
            assert!(after <= before + 1e-15);
            assert!((after - before * (lambda / (lambda + before * before)).sqrt()).abs() < 1e-14);
        }
    }
}

#[test]
fn hopf_quotient_of_round_s3() {
    let q = hopf_quotient_metric(&round_s3()).unwrap();
    for r in linspace(0.05, FRAC_PI_2 - 0.05, 9) {
        let w = q.w_h.value(r).unwrap();
        assert!((w - 0.5 * (2.0 * r).sin()).abs() < 1e-14);
        let (_, w2) = fd(|s| q.w_h.value(s).unwrap(), r, 1e-4);
        assert!((-w2 / w - 4.0).abs() < 1e-5);
    }
    // ψ = cos vanishes at π/2 and the quotient warping closes with slope −1
    assert!(q.w_h.value(FRAC_PI_2).unwrap().abs() < 1e-12);
    assert!((q.w_h.derivative(FRAC_PI_2, 1).unwrap() + 1.0).abs() < 1e-8);

    let d = (0.2, 1.0);
    let equal = WarpedMetric::doubly_warped(sin_on(d.0, d.1), sin_on(d.0, d.1), 1, 1, Closure::OpenLine).unwrap();
    let half = hopf_quotient_metric(&equal).unwrap();
    for r in [0.2, 0.7] {
        assert!((half.w_h.value(r).unwrap() - r.sin() / 2f64.sqrt()).abs() < 1e-14);
    }
}

#[test]
fn oneill_on_the_family() {
    let total = round_s3();
    let d = (0.0, FRAC_PI_2);
    let zero = Density::zero(d).unwrap();
    let rep = oneill_check(&total, &zero, 64, Variant::Weighted).unwrap();
    for p in &rep.points {
        assert!((p.base - 4.0).abs() < 1e-6 && (p.total - 1.0).abs() < 1e-9 && (p.bracket - 3.0).abs() < 1e-6);
    }
    let wave = Density::RadialF(analytic(Family::Cos, 0.1, 2.0, d));
    assert!(oneill_check(&total, &wave, 64, Variant::Weighted).unwrap().max_residual <= 1e-6);
    for lambda in [0.5, 3.0] {
        let deformed = cheeger_deform(&total, lambda).unwrap();
        let rep = oneill_check(&deformed, &zero, 64, Variant::Weighted).unwrap();
        assert!(rep.max_residual <= 1e-6 && rep.lower_bound_holds, "{lambda}: {}", rep.max_residual);
    }
}

#[test]
fn total_curvature_ignores_the_density() {
    let g = round_sphere();
    let d = (0.0, PI);
    let (mode, _) = mode_density();
    let densities = [
        Density::zero(d).unwrap(),
        Density::RadialF(analytic(Family::Cos, 0.7, 1.0, d)),
        Density::RadialF(analytic(Family::Cos, -1.3, 2.0, d)),
        mode,
    ];
    let totals: Vec<f64> = densities.iter().map(|f| gauss_bonnet(&g, f).unwrap().integral).collect();
    for t in &totals {
        assert!((t - 4.0 * PI).abs() < 1e-6, "{totals:?}");
    }
}

#[test]
fn synthesized_hemisphere_density_recertifies() {
    let g = WarpedMetric::single_warped(sin_on(0.05, FRAC_PI_2 - 0.05), FiberSpec::sphere(2), Closure::OpenLine).unwrap();
    let res = synthesize_density(&SynthesisProblem::new(g.clone(), 2.0, Variant::Weighted, 64)).unwrap();
    let f = res.density.expect("feasible");
    let rep = certify_bound(&g, &f, 2.0, Variant::Weighted, 1024).unwrap();
    assert!(rep.verdict.is_certified(), "{}", rep.global_min);
}

#[test]
fn eigendata_matches_cusp_hessian() {
    let g = WarpedMetric::single_warped(RadialProfile::family(Family::Exp, (0.0, 3.0)).unwrap(), FiberSpec::flat(2), Closure::OpenLine)
        .unwrap();
    let u = Density::RadialU(analytic(Family::Exp, 1.0, 3.0, (0.0, 3.0)));
    let data = pointwise_eigendata(&g, &u, 1.0).unwrap();
    // f = 3r: Hess f = 0 radially and f'φ'/φ = 3 on the fiber
    assert!(data.hess[0].abs() < 1e-12 && (data.hess[1] - 3.0).abs() < 1e-12 && (data.df[0] - 3.0).abs() < 1e-12);
}

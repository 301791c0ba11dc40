//! One function per workflow. Each resolves its defaults, runs the library
//! and returns a verdict with a serializable result.

use serde::Serialize;
use serde_json::{json, Value};

use wcurv::curvature::{certify_bound, pointwise_eigendata, CurvatureReport, EigenData, Variant, DEFAULT_GRID};
use wcurv::descriptor::{make_density, make_metric, DensityDesc, MetricDesc};
use wcurv::gallery::{gallery, GalleryEntry, NAMES};
use wcurv::gauss_bonnet::{area_bound_check, gauss_bonnet};
use wcurv::linspace;
use wcurv::obstruction::obstruction_checks;
use wcurv::polytope::{candidate_extrema, pair_extrema_bruteforce, positivity_scale};
use wcurv::symmetry::{averaging_check, cheeger_horizontal_check, oneill_check, AverageMode};
use wcurv::synthesis::{synthesize_density, SynthesisProblem};
use wcurv::variation::{index_form, second_variation_check, Formulation, GeodesicSegment, VariationField};
use wcurv::{Dens, Metric};

use crate::config::{Command, Config};
use crate::error::{CliError, Context};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_NODES: usize = 64;
/// Grid of the sampled symmetry checks (Cheeger, O'Neill, averaging).
pub const DEFAULT_CHECK_GRID: usize = 64;
pub const DEFAULT_PAIRS: usize = 16;
pub const GB_TOL: f64 = 1e-6;
pub const ONEILL_TOL: f64 = 1e-6;
pub const INDEX_TOL: f64 = 1e-8;
pub const BRACKET_TOL: f64 = 1e-6;

/// Per-point curves for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug)]
pub struct Outcome {
    pub passed: bool,
    pub status: &'static str,
    /// The configuration with every default filled in.
    pub config: Config,
    pub result: Value,
    pub table: Option<Table>,
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("reports serialize")
}

fn missing(field: &str, command: Command) -> CliError {
    CliError::Input(format!("missing field `{field}` for `{}`", command.name()))
}

/// Metric and density from either a gallery entry or explicit descriptors.
struct Source {
    entry: Option<GalleryEntry>,
    metric: Metric,
    density: Dens,
}

fn resolve_source(cfg: &mut Config, command: Command, with_density: bool) -> Result<Source, CliError> {
    let entry = match (&cfg.gallery, &cfg.metric) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input("give either `gallery` or `metric`, not both".into()));
        }
        (Some(name), None) => Some(gallery(name).map_err(|e| CliError::Input(format!("field `gallery`: {e}")))?),
        (None, Some(_)) => None,
        (None, None) => return Err(missing("metric` (or `gallery", command)),
    };
    let metric_desc: MetricDesc = match &entry {
        Some(e) => e.metric_desc.clone(),
        None => cfg.metric.clone().expect("checked above"),
    };
    let metric: Metric = make_metric(&metric_desc).map_err(|e| CliError::Input(format!("field `metric`: {e}")))?;
    let density_desc = match (&cfg.density, &entry) {
        (Some(d), _) => d.clone(),
        (None, Some(e)) if with_density => e.density_desc.clone(),
        _ => {
            let (a, b) = metric.domain();
            DensityDesc::Zero { domain: [a, b] }
        }
    };
    let density: Dens = make_density(&density_desc).map_err(|e| CliError::Input(format!("field `density`: {e}")))?;
    cfg.metric = Some(metric_desc);
    if with_density {
        cfg.density = Some(density_desc);
    }
    Ok(Source { entry, metric, density })
}

fn default_variant(cfg: &mut Config, src: &Source) -> Variant {
    let v = cfg.variant.or(src.entry.as_ref().map(|e| e.variant)).unwrap_or_default();
    cfg.variant = Some(v);
    v
}

fn verdict(passed: bool, ok: &'static str, bad: &'static str) -> &'static str {
    if passed {
        ok
    } else {
        bad
    }
}

fn curvature_table(rep: &CurvatureReport<f64>) -> Table {
    let mut headers = vec!["r".to_string()];
    if let Some(first) = rep.per_point.first() {
        headers.extend(first.pairs.iter().map(|p| p.label.clone()));
    }
    headers.push("min".into());
    let rows = rep
        .per_point
        .iter()
        .map(|p| {
            let mut row = vec![p.r];
            row.extend(p.pairs.iter().map(|t| t.value));
            row.push(p.min);
            row
        })
        .collect();
    Table { headers, rows }
}

pub fn run(command: Command, mut cfg: Config, name: Option<String>) -> Result<Outcome, CliError> {
    match command {
        Command::Gallery => run_gallery(cfg, name),
        Command::Certify => {
            let src = resolve_source(&mut cfg, command, true)?;
            let variant = default_variant(&mut cfg, &src);
            let lambda = cfg.lambda.or(src.entry.as_ref().map(|e| e.bound)).ok_or_else(|| missing("lambda", command))?;
            let grid = *cfg.grid.get_or_insert(DEFAULT_GRID);
            cfg.lambda = Some(lambda);
            let rep = certify_bound(&src.metric, &src.density, lambda, variant, grid).context("certification")?;
            let passed = rep.verdict.is_certified();
            Ok(Outcome {
                passed,
                status: verdict(passed, "certified", "violated"),
                config: cfg,
                table: Some(curvature_table(&rep)),
                result: to_value(&rep),
            })
        }
        Command::Synthesize => {
            let src = resolve_source(&mut cfg, command, false)?;
            let variant = default_variant(&mut cfg, &src);
            let lambda = cfg.lambda.ok_or_else(|| missing("lambda", command))?;
            let nodes = *cfg.nodes.get_or_insert(DEFAULT_NODES);
            let mut problem = SynthesisProblem::new(src.metric, lambda, variant, nodes);
            problem.margin = cfg.margin;
            let res = synthesize_density(&problem).context("synthesis")?;
            let passed = res.is_feasible();
            let table = match &res.post_check {
                Some(post) => curvature_table(post),
                None => Table {
                    headers: vec!["r".into(), if variant == Variant::Strong { "u" } else { "f" }.into()],
                    rows: res.grid.iter().zip(&res.values).map(|(r, v)| vec![*r, *v]).collect(),
                },
            };
            Ok(Outcome {
                passed,
                status: verdict(passed, "feasible", "infeasible"),
                config: cfg,
                table: Some(table),
                result: to_value(&res),
            })
        }
        Command::Obstruct => {
            let src = resolve_source(&mut cfg, command, false)?;
            let rep = obstruction_checks(&src.metric).context("obstruction checks")?;
            let passed = rep.passed();
            Ok(Outcome { passed, status: verdict(passed, "passed", "obstructed"), config: cfg, table: None, result: to_value(&rep) })
        }
        Command::GaussBonnet => {
            let src = resolve_source(&mut cfg, command, true)?;
            let tol = *cfg.tolerance.get_or_insert(GB_TOL);
            let rep = gauss_bonnet(&src.metric, &src.density).context("Gauss–Bonnet integral")?;
            let passed = rep.residual <= tol && rep.strong_residual <= tol;
            Ok(Outcome { passed, status: verdict(passed, "holds", "fails"), config: cfg, table: None, result: to_value(&rep) })
        }
        Command::AreaBound => {
            let src = resolve_source(&mut cfg, command, true)?;
            let grid = *cfg.grid.get_or_insert(DEFAULT_GRID);
            let rep = area_bound_check(&src.metric, &src.density, grid).context("area bound")?;
            let passed = rep.passed;
            Ok(Outcome { passed, status: verdict(passed, "holds", "fails"), config: cfg, table: None, result: to_value(&rep) })
        }
        Command::Polytope => run_polytope(cfg),
        Command::Average => {
            let src = resolve_source(&mut cfg, command, true)?;
            let mode = *cfg.mode.get_or_insert(AverageMode::F);
            let fallback = if mode == AverageMode::U { Variant::Strong } else { Variant::Weighted };
            let variant = *cfg.variant.get_or_insert(fallback);
            let grid = *cfg.grid.get_or_insert(DEFAULT_CHECK_GRID);
            let rep = averaging_check(&src.metric, &src.density, mode, variant, grid).context("averaging")?;
            let table = Table {
                headers: vec!["r".into(), "averaged_f".into()],
                rows: rep.grid.iter().zip(&rep.averaged).map(|(r, f)| vec![*r, *f]).collect(),
            };
            let passed = rep.preserved;
            Ok(Outcome { passed, status: verdict(passed, "preserved", "lost"), config: cfg, table: Some(table), result: to_value(&rep) })
        }
        Command::Cheeger => {
            let src = resolve_source(&mut cfg, command, true)?;
            let variant = default_variant(&mut cfg, &src);
            let lambda = cfg.lambda.ok_or_else(|| missing("lambda", command))?;
            let grid = *cfg.grid.get_or_insert(DEFAULT_CHECK_GRID);
            let pairs = *cfg.samples.get_or_insert(DEFAULT_PAIRS);
            let seed = *cfg.seed.get_or_insert(0);
            let rep = cheeger_horizontal_check(&src.metric, &src.density, lambda, variant, grid, pairs, seed)
                .context("Cheeger deformation")?;
            let passed = rep.passed;
            Ok(Outcome { passed, status: verdict(passed, "holds", "fails"), config: cfg, table: None, result: to_value(&rep) })
        }
        Command::Oneill => {
            let src = resolve_source(&mut cfg, command, true)?;
            let variant = default_variant(&mut cfg, &src);
            let grid = *cfg.grid.get_or_insert(DEFAULT_CHECK_GRID);
            let tol = *cfg.tolerance.get_or_insert(ONEILL_TOL);
            let rep = oneill_check(&src.metric, &src.density, grid, variant).context("O'Neill identity")?;
            let table = Table {
                headers: ["r", "base", "total", "bracket", "residual"].map(String::from).to_vec(),
                rows: rep.points.iter().map(|p| vec![p.r, p.base, p.total, p.bracket, p.residual]).collect(),
            };
            let passed = rep.max_residual <= tol && rep.lower_bound_holds;
            Ok(Outcome { passed, status: verdict(passed, "holds", "fails"), config: cfg, table: Some(table), result: to_value(&rep) })
        }
        Command::IndexForm => {
            let src = resolve_source(&mut cfg, command, true)?;
            let variant = default_variant(&mut cfg, &src);
            let seg_cfg = cfg.segment.ok_or_else(|| missing("segment", command))?;
            let field = *cfg.field.get_or_insert(VariationField::Parallel { block: 0 });
            let tol = *cfg.tolerance.get_or_insert(INDEX_TOL);
            let seg = GeodesicSegment::new(&src.metric, seg_cfg.a, seg_cfg.b, seg_cfg.direction)
                .map_err(|e| CliError::Input(format!("field `segment`: {e}")))?;
            let forms = [Formulation::Classical, Formulation::Weighted, Formulation::Strong]
                .map(|f| index_form(&seg, &src.density, field, f).context("index form"));
            let [classical, weighted, strong] = forms;
            let (classical, weighted, strong) = (classical?, weighted?, strong?);
            let spread = (classical - weighted).abs().max((classical - strong).abs());
            let sv = second_variation_check(&seg, &src.density, variant).context("second variation")?;
            let passed = spread <= tol && sv.passed;
            let result = json!({
                "classical": classical,
                "weighted": weighted,
                "strong": strong,
                "max_disagreement": spread,
                "second_variation": to_value(&sv),
            });
            Ok(Outcome { passed, status: verdict(passed, "holds", "fails"), config: cfg, table: None, result })
        }
    }
}

fn run_gallery(mut cfg: Config, name: Option<String>) -> Result<Outcome, CliError> {
    let name = match (name, cfg.gallery.clone()) {
        (Some(_), Some(_)) => return Err(CliError::Input("give the gallery name either with `--name` or in the config".into())),
        (n, c) => n.or(c),
    };
    let Some(name) = name else {
        let entries = NAMES
            .iter()
            .map(|n| {
                let e = gallery(n).context("gallery")?;
                Ok(json!({ "name": e.name, "bound": e.bound, "variant": e.variant, "constant": e.constant }))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(Outcome { passed: true, status: "listed", config: cfg, table: None, result: json!({ "entries": entries }) });
    };
    let entry = gallery(&name).map_err(|e| CliError::Input(format!("gallery `{name}`: {e}")))?;
    let grid = *cfg.grid.get_or_insert(DEFAULT_GRID);
    cfg.gallery = Some(name);
    let rep = certify_bound(&entry.metric, &entry.density, entry.bound, entry.variant, grid).context("certification")?;
    let passed = rep.verdict.is_certified();
    Ok(Outcome {
        passed,
        status: verdict(passed, "certified", "violated"),
        config: cfg,
        table: Some(curvature_table(&rep)),
        result: json!({ "entry": to_value(&entry), "certification": to_value(&rep) }),
    })
}

/// A ready-to-run `certify` config reproducing a gallery entry.
pub fn gallery_config(name: &str) -> Result<Config, CliError> {
    let entry = gallery(name).map_err(|e| CliError::Input(format!("gallery `{name}`: {e}")))?;
    Ok(Config {
        metric: Some(entry.metric_desc),
        density: Some(entry.density_desc),
        variant: Some(entry.variant),
        lambda: Some(entry.bound),
        grid: Some(DEFAULT_GRID),
        ..Config::default()
    })
}

fn eigendata_report(data: &EigenData<f64>, samples: usize, seed: u64) -> (bool, Value) {
    let set = candidate_extrema(data);
    let (min, max) = pair_extrema_bruteforce(data, samples, seed);
    let passed = min >= set.min_all() - BRACKET_TOL
        && min <= set.min_attained() + BRACKET_TOL
        && max <= set.max_all() + BRACKET_TOL
        && max >= set.max_attained() - BRACKET_TOL;
    let result = json!({
        "data": to_value(data),
        "candidates": to_value(&set),
        "min_attained": set.min_attained(),
        "min_all": set.min_all(),
        "max_attained": set.max_attained(),
        "max_all": set.max_all(),
        "bruteforce": { "min": min, "max": max },
        "bracketed": passed,
    });
    (passed, result)
}

fn run_polytope(mut cfg: Config) -> Result<Outcome, CliError> {
    let command = Command::Polytope;
    let samples = *cfg.samples.get_or_insert(DEFAULT_SAMPLES);
    let seed = *cfg.seed.get_or_insert(0);
    if let Some(t) = &cfg.eigendata {
        if cfg.metric.is_some() || cfg.gallery.is_some() {
            return Err(CliError::Input("give either `eigendata` or a metric, not both".into()));
        }
        let data = EigenData::from_tables(t.lambda.clone(), t.mu.clone())
            .map_err(|e| CliError::Input(format!("field `eigendata`: {e}")))?;
        let (passed, result) = eigendata_report(&data, samples, seed);
        return Ok(Outcome { passed, status: verdict(passed, "bracketed", "outside"), config: cfg, table: None, result });
    }
    let src = resolve_source(&mut cfg, command, true)?;
    if let Some(r) = cfg.r {
        let data = pointwise_eigendata(&src.metric, &src.density, r).map_err(|e| CliError::Input(format!("field `r`: {e}")))?;
        let (passed, result) = eigendata_report(&data, samples, seed);
        return Ok(Outcome { passed, status: verdict(passed, "bracketed", "outside"), config: cfg, table: None, result });
    }
    let grid = *cfg.grid.get_or_insert(DEFAULT_GRID);
    let (a, b) = src.metric.domain();
    let data = linspace(a, b, grid)
        .into_iter()
        .map(|r| pointwise_eigendata(&src.metric, &src.density, r))
        .collect::<wcurv::Result<Vec<_>>>()
        .context("eigendata on the grid")?;
    let rep = positivity_scale(&data);
    let passed = rep.scale.is_some();
    Ok(Outcome { passed, status: verdict(passed, "scaled", "hypothesis_fails"), config: cfg, table: None, result: to_value(&rep) })
}

//! Smooth-closure conditions at collapsing ends and periodic identification.

use serde::Serialize;

use crate::density::Density;
use crate::error::Result;
use crate::metric::{Closure, WarpedMetric};
use crate::scalar::Real;
use crate::EPS_BC;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub r: f64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub conditions: Vec<Condition>,
    pub passed: bool,
}

struct Collector {
    conditions: Vec<Condition>,
}

impl Collector {
    fn push<T: Real>(&mut self, name: String, r: T, residual: Result<T>) {
        let (residual, passed) = match residual {
            Ok(v) => {
                let v = v.abs().to_f64_lossy();
                (v, v <= EPS_BC)
            }
            Err(_) => (f64::NAN, false),
        };
        self.conditions.push(Condition { name, r: r.to_f64_lossy(), residual, passed });
    }
}

/// Lists every closure condition with its residual; never fails.
pub fn validate_closure<T: Real>(metric: &WarpedMetric<T>, density: &Density<T>) -> ClosureReport {
    let mut out = Collector { conditions: Vec::new() };
    let (a, b) = metric.domain();
    let names = ["φ", "ψ"];
    let blocks = metric.blocks();

    for (idx, block) in blocks.iter().enumerate() {
        let w = block.w;
        let name = names[idx.min(1)];
        for (closes, end, sign) in [(block.closes.0, a, T::one()), (block.closes.1, b, -T::one())] {
            if !closes {
                continue;
            }
            let slope = if block.kappa > T::zero() { block.kappa.sqrt() } else { T::one() };
            out.push(format!("{name}({end:.6}) = 0"), end, w.value(end));
            let target = sign * slope;
            out.push(
                format!("{name}'({end:.6}) = {}", target.to_f64_lossy()),
                end,
                w.derivative(end, 1).map(|d| d - target),
            );
            if w.max_order() >= 2 {
                out.push(format!("{name}''({end:.6}) = 0"), end, w.derivative(end, 2));
            }
        }
    }

    let mut ends = Vec::new();
    if blocks.iter().any(|bl| bl.closes.0) {
        ends.push(a);
    }
    if blocks.iter().any(|bl| bl.closes.1) {
        ends.push(b);
    }
    for end in ends {
        match density {
            Density::TwoDim(d) => {
                out.push(format!("∂r f₀({end:.6}) = 0"), end, d.base().derivative(end, 1));
                for m in d.modes() {
                    for (kind, p) in [("cos", &m.cos), ("sin", &m.sin)] {
                        if let Some(p) = p {
                            out.push(format!("{kind} mode {} vanishes at r = {end:.6}", m.k), end, p.value(end));
                        }
                    }
                }
            }
            radial => out.push(format!("f'({end:.6}) = 0"), end, radial.f_jet(end).map(|j| j.d1)),
        }
    }

    if metric.closure() == Closure::Periodic {
        for (idx, block) in blocks.iter().enumerate() {
            let name = names[idx.min(1)];
            out.push(format!("{name}({a}) = {name}({b})"), a, diff(|r| block.w.value(r), a, b));
            out.push(format!("{name}'({a}) = {name}'({b})"), a, diff(|r| block.w.derivative(r, 1), a, b));
        }
        if density.is_radial() {
            out.push(format!("f({a}) = f({b})"), a, diff(|r| density.f_jet(r).map(|j| j.v), a, b));
            out.push(format!("f'({a}) = f'({b})"), a, diff(|r| density.f_jet(r).map(|j| j.d1), a, b));
        }
    }

    let passed = out.conditions.iter().all(|c| c.passed);
    ClosureReport { conditions: out.conditions, passed }
}

fn diff<T: Real>(g: impl Fn(T) -> Result<T>, a: T, b: T) -> Result<T> {
    Ok(g(b)? - g(a)?)
}

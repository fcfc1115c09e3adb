#![allow(dead_code)]

use hyperterm_core::{validate, EvalProblem, SeriesParams, Validated};

pub const GRID_AB: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
pub const GRID_N: [f64; 6] = [-0.4, 0.25, 0.5, 1.0 / 3.0, 1.5, 2.0];

pub fn sp(a: f64, b: f64) -> SeriesParams {
    SeriesParams::new(a, b).unwrap()
}

pub fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

/// Every (a, b, n) grid point, with `None` for the divergent ones.
pub fn grid() -> Vec<(f64, f64, f64, Option<EvalProblem>)> {
    let mut out = Vec::new();
    for a in GRID_AB {
        for b in GRID_AB {
            for n in GRID_N {
                let pr = match validate(sp(a, b), n).unwrap() {
                    Validated::Problem(p) => Some(p),
                    Validated::Divergent(_) => None,
                };
                out.push((a, b, n, pr));
            }
        }
    }
    out
}

pub fn problem(a: f64, b: f64, n: f64) -> EvalProblem {
    validate(sp(a, b), n).unwrap().problem().unwrap()
}

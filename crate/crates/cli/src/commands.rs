//! The four subcommands. Each returns the records to print and an exit code.

use hyperterm_core::{
    eval_half, eval_product, eval_third, gamma_oracle, resolve_alpha, shift, shift_back, validate,
    AlphaStrategy, Error, EvalResult, Method, QuadratureSpec, SeriesParams, TruncationSpec,
    Validated,
};

use crate::output::{Cell, Record};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_DIVERGENT: u8 = 2;

/// Routes agreeing to within this relative difference make `compare` succeed.
pub const COMPARE_THRESHOLD: f64 = 1e-7;
/// Tolerance of the product evaluation that seeds `table`.
pub const TABLE_TOL: f64 = 1e-10;
/// How close the fractional part of `n` must be to ½ or ⅓ for the integral route.
const FRACTION_SLACK: f64 = 1e-12;

pub struct Outcome {
    pub records: Vec<Record>,
    pub single: bool,
    pub code: u8,
}

impl Outcome {
    fn one(record: Record, code: u8) -> Self {
        Self {
            records: vec![record],
            single: true,
            code,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Product,
    Integral,
    Oracle,
    Auto,
}

fn eval_record(a: f64, b: f64, n: f64, r: &EvalResult) -> Record {
    vec![
        ("a", a.into()),
        ("b", b.into()),
        ("n", n.into()),
        ("method", r.method.as_str().into()),
        ("value", r.value.into()),
        ("error_estimate", r.error_estimate.into()),
        ("effort", r.effort.into()),
        ("divergent", r.divergent.into()),
    ]
}

/// `Δ:n` through the ½ or ⅓ integral reduction, shifted by the integer part
/// of `n`. `None` when the fractional part is neither.
fn integral_route(params: SeriesParams, n: f64) -> Result<Option<EvalResult>, Error> {
    let whole = n.floor();
    let frac = n - whole;
    let quad = QuadratureSpec::default();
    let (base_index, base) = if (frac - 0.5).abs() < FRACTION_SLACK {
        (0.5, eval_half(params, quad)?)
    } else if (frac - 1.0 / 3.0).abs() < FRACTION_SLACK {
        (1.0 / 3.0, eval_third(params, quad)?)
    } else {
        return Ok(None);
    };
    let steps = whole.abs() as u64;
    let value = if whole >= 0.0 {
        shift(params, base_index, steps, base.value)?
    } else {
        shift_back(params, base_index, steps, base.value)?
    };
    if !value.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(Some(EvalResult {
        value,
        error_estimate: base.error_estimate * (value / base.value),
        ..base
    }))
}

pub fn eval(
    params: SeriesParams,
    n: f64,
    method: MethodChoice,
    alpha: AlphaStrategy,
    tol: f64,
) -> Result<Outcome, Error> {
    let (a, b) = (params.a(), params.b());
    let tag = match method {
        MethodChoice::Product | MethodChoice::Auto => Method::Product,
        MethodChoice::Integral => Method::Integral,
        MethodChoice::Oracle => Method::Oracle,
    };
    let problem = match validate(params, n)? {
        Validated::Problem(p) => p,
        Validated::Divergent(_) => {
            return Ok(Outcome::one(
                eval_record(a, b, n, &EvalResult::divergent(tag)),
                EXIT_DIVERGENT,
            ));
        }
    };
    let result = match tag {
        Method::Product => eval_product(&problem, alpha, TruncationSpec::adaptive(tol)?)?,
        Method::Integral => integral_route(params, n)?.ok_or_else(|| {
            Error::Param(format!(
                "the integral route needs n with fractional part 1/2 or 1/3, got {n}"
            ))
        })?,
        Method::Oracle => EvalResult {
            value: gamma_oracle(params, n)?,
            method: Method::Oracle,
            effort: 0,
            error_estimate: 0.0,
            divergent: false,
        },
    };
    Ok(Outcome::one(eval_record(a, b, n, &result), EXIT_OK))
}

pub fn table(params: SeriesParams, frac: f64, count: usize) -> Result<Outcome, Error> {
    if !(frac > 0.0 && frac < 1.0) {
        return Err(Error::Param(format!("frac must lie in (0, 1), got {frac}")));
    }
    let problem = validate(params, frac)?.problem()?;
    let base = eval_product(
        &problem,
        AlphaStrategy::DefaultA,
        TruncationSpec::adaptive(TABLE_TOL)?,
    )?;
    let mut records = Vec::with_capacity(count);
    let mut value = base.value;
    for j in 0..count {
        if j > 0 {
            value = shift(params, frac + (j - 1) as f64, 1, value)?;
        }
        if !value.is_finite() {
            return Err(Error::Overflow);
        }
        records.push(vec![
            ("index", (frac + j as f64).into()),
            ("value", value.into()),
        ]);
    }
    Ok(Outcome {
        records,
        single: false,
        code: EXIT_OK,
    })
}

fn strategy_label(s: AlphaStrategy) -> &'static str {
    match s {
        AlphaStrategy::DefaultA => "a",
        AlphaStrategy::Accelerated => "accel",
        AlphaStrategy::Custom(_) => "custom",
    }
}

pub fn converge(
    params: SeriesParams,
    n: f64,
    alphas: &[AlphaStrategy],
    tols: &[f64],
) -> Result<Outcome, Error> {
    let problem = match validate(params, n)? {
        Validated::Problem(p) => p,
        Validated::Divergent(_) => {
            let r = EvalResult::divergent(Method::Product);
            return Ok(Outcome::one(
                eval_record(params.a(), params.b(), n, &r),
                EXIT_DIVERGENT,
            ));
        }
    };
    let oracle = gamma_oracle(params, n)?;
    let mut records = Vec::with_capacity(alphas.len() * tols.len());
    for &s in alphas {
        let alpha = resolve_alpha(s, params, n)?;
        for &tol in tols {
            let r = eval_product(&problem, s, TruncationSpec::adaptive(tol)?)?;
            records.push(vec![
                ("strategy", strategy_label(s).into()),
                ("alpha", alpha.into()),
                ("tol", tol.into()),
                ("terms", r.effort.into()),
                (
                    "abs_rel_error_vs_oracle",
                    ((r.value - oracle) / oracle).abs().into(),
                ),
            ]);
        }
    }
    Ok(Outcome {
        records,
        single: false,
        code: EXIT_OK,
    })
}

fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs())
}

pub fn compare(params: SeriesParams, n: f64, tol: f64) -> Result<Outcome, Error> {
    let (a, b) = (params.a(), params.b());
    let head: Record = vec![("a", a.into()), ("b", b.into()), ("n", n.into())];
    let problem = match validate(params, n)? {
        Validated::Problem(p) => p,
        Validated::Divergent(_) => {
            let mut r = head;
            r.extend([
                ("product", Cell::Num(f64::INFINITY)),
                ("integral", Cell::Num(f64::INFINITY)),
                ("oracle", Cell::Num(f64::INFINITY)),
                ("max_rel_diff", Cell::Num(0.0)),
                ("divergent", true.into()),
            ]);
            return Ok(Outcome::one(r, EXIT_DIVERGENT));
        }
    };
    let product = eval_product(
        &problem,
        AlphaStrategy::DefaultA,
        TruncationSpec::adaptive(tol)?,
    )?
    .value;
    let integral = match integral_route(params, n) {
        Ok(r) => r.map(|r| r.value),
        // ⅓ reduction with a ≤ b/3
        Err(Error::Param(_)) => None,
        Err(e) => return Err(e),
    };
    let oracle = gamma_oracle(params, n)?;
    let values: Vec<f64> = [Some(product), integral, Some(oracle)]
        .into_iter()
        .flatten()
        .collect();
    let mut max_diff: f64 = 0.0;
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            max_diff = max_diff.max(rel_diff(*x, *y));
        }
    }
    let mut r = head;
    r.extend([
        ("product", product.into()),
        (
            "integral",
            integral.map_or(Cell::from("skipped"), Cell::from),
        ),
        ("oracle", oracle.into()),
        ("max_rel_diff", max_diff.into()),
        ("divergent", false.into()),
    ]);
    let code = if max_diff < COMPARE_THRESHOLD {
        EXIT_OK
    } else {
        EXIT_ERROR
    };
    Ok(Outcome::one(r, code))
}

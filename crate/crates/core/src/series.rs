//! Domain types, validation and the integer-index machinery shared by every
//! evaluation route.

use std::fmt;

use crate::error::{param, Error, Result};

/// First term `a` and common difference `b` of the factor progression
/// `a, a+b, a+2b, …`. Both are strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    a: f64,
    b: f64,
}

impl SeriesParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(param(format!("a and b must be finite (a = {a}, b = {b})")));
        }
        if a <= 0.0 {
            return Err(param(format!("a must be positive, got {a}")));
        }
        if b <= 0.0 {
            return Err(param(format!("b must be positive, got {b}")));
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// The factor `a + x·b`.
    #[inline]
    pub fn factor(&self, x: f64) -> f64 {
        self.a + x * self.b
    }
}

/// A pole-checked evaluation request: `a + (n+k)·b > 0` for every `k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalProblem {
    params: SeriesParams,
    n: f64,
}

impl EvalProblem {
    #[inline]
    pub fn params(&self) -> SeriesParams {
        self.params
    }

    #[inline]
    pub fn n(&self) -> f64 {
        self.n
    }
}

/// The index lies at or beyond a pole: `a + n·b ≤ 0` and the term is infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergentMarker {
    pub params: SeriesParams,
    pub n: f64,
    /// The offending leading factor `a + n·b`.
    pub leading_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Validated {
    Problem(EvalProblem),
    Divergent(DivergentMarker),
}

impl Validated {
    pub fn problem(self) -> Result<EvalProblem> {
        match self {
            Validated::Problem(p) => Ok(p),
            Validated::Divergent(d) => Err(Error::Divergent(d.leading_factor)),
        }
    }
}

/// Classifies `(params, n)` as an evaluable problem or a divergent index.
pub fn validate(params: SeriesParams, n: f64) -> Result<Validated> {
    if !n.is_finite() {
        return Err(param(format!("index n must be finite, got {n}")));
    }
    let leading = params.factor(n);
    if leading > 0.0 {
        Ok(Validated::Problem(EvalProblem { params, n }))
    } else {
        Ok(Validated::Divergent(DivergentMarker {
            params,
            n,
            leading_factor: leading,
        }))
    }
}

const SCALE_LIMIT: f64 = 1e150;
const SCALE_EXP: i32 = 498; // 2^498 ≈ 1.6e150

/// `a(a+b)…(a+(k-1)b)`, the product of `k` factors; `1` for `k = 0`.
///
/// The running product is kept as mantissa × 2^exponent so intermediate
/// values never overflow; only a final result outside the `f64` range is an
/// error.
pub fn direct_term(params: SeriesParams, k: u64) -> Result<f64> {
    let mut mantissa = 1.0_f64;
    let mut exponent: i64 = 0;
    for j in 0..k {
        mantissa *= params.factor(j as f64);
        if mantissa > SCALE_LIMIT {
            mantissa *= 2f64.powi(-SCALE_EXP);
            exponent += SCALE_EXP as i64;
        } else if mantissa < 1.0 / SCALE_LIMIT {
            mantissa *= 2f64.powi(SCALE_EXP);
            exponent -= SCALE_EXP as i64;
        }
    }
    scale_by_pow2(mantissa, exponent)
}

fn scale_by_pow2(mut mantissa: f64, mut exponent: i64) -> Result<f64> {
    while exponent != 0 {
        let step = exponent.clamp(-1000, 1000) as i32;
        mantissa *= 2f64.powi(step);
        exponent -= step as i64;
        if !mantissa.is_finite() {
            return Err(Error::Overflow);
        }
        if mantissa == 0.0 {
            return Ok(0.0);
        }
    }
    Ok(mantissa)
}

/// `Δ:(n+m)` from `Δ:n` via the recurrence `Δ:(n+1) = (a + n·b)·Δ:n`.
pub fn shift(params: SeriesParams, n: f64, m: u64, value_at_n: f64) -> Result<f64> {
    let mut value = value_at_n;
    for j in 0..m {
        let f = params.factor(n + j as f64);
        if f <= 0.0 {
            return Err(param(format!(
                "shift factor a + (n+{j})·b = {f} is not positive"
            )));
        }
        value *= f;
    }
    Ok(value)
}

/// `Δ:(n−m)` from `Δ:n`, inverting the recurrence. Fails with
/// [`Error::Divergent`] when the target index is a pole or beyond one.
pub fn shift_back(params: SeriesParams, n: f64, m: u64, value_at_n: f64) -> Result<f64> {
    let target = params.factor(n - m as f64);
    if target <= 0.0 {
        return Err(Error::Divergent(target));
    }
    let mut value = value_at_n;
    for j in 1..=m {
        value /= params.factor(n - j as f64);
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Product,
    Integral,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Product => "product",
            Method::Integral => "integral",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one evaluation route.
///
/// `effort` counts product factors for the product route and quadrature
/// levels for the integral route. A divergent result carries `+∞` for both
/// the value and the error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    pub effort: usize,
    pub error_estimate: f64,
    pub divergent: bool,
}

impl EvalResult {
    pub fn divergent(method: Method) -> Self {
        Self {
            value: f64::INFINITY,
            method,
            effort: 0,
            error_estimate: f64::INFINITY,
            divergent: true,
        }
    }
}

//! Evaluation of `Δ:n` through the merged infinite product
//!
//! ```text
//! Δ:n = αⁿ · ∏_{k≥0} (a+kb)/(a+(n+k)b) · ((α+(k+1)b)/(α+kb))ⁿ
//! ```
//!
//! whose value does not depend on the free parameter `α > 0`. Factors are
//! accumulated as logarithms with compensated summation.

use crate::error::{param, Error, Result};
use crate::series::{EvalProblem, EvalResult, Method, SeriesParams};
use crate::sum::CompensatedSum;

/// How the free parameter `α` is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaStrategy {
    /// `α = a`.
    DefaultA,
    /// `α = a + (n−1)·b/2`, which cancels the `1/k²` term of the log
    /// factors so they decay like `1/k³`. Falls back to `a` when that
    /// value is not positive.
    Accelerated,
    Custom(f64),
}

/// Where to cut the infinite product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationSpec {
    /// Exactly `i` factors, no tail correction.
    FixedTerms(usize),
    /// Sum until the estimated remaining error drops below `tol/2`.
    Adaptive { tol: f64, max_terms: usize },
}

impl TruncationSpec {
    pub const DEFAULT_MAX_TERMS: usize = 20_000_000;
    pub const MIN_ADAPTIVE_TERMS: usize = 16;

    pub fn fixed(terms: usize) -> Result<Self> {
        let t = TruncationSpec::FixedTerms(terms);
        t.check()?;
        Ok(t)
    }

    pub fn adaptive(tol: f64) -> Result<Self> {
        Self::adaptive_with_limit(tol, Self::DEFAULT_MAX_TERMS)
    }

    pub fn adaptive_with_limit(tol: f64, max_terms: usize) -> Result<Self> {
        let t = TruncationSpec::Adaptive { tol, max_terms };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            TruncationSpec::FixedTerms(i) if i < 1 => {
                Err(param("fixed truncation needs at least one term"))
            }
            TruncationSpec::Adaptive { tol, .. } if !(tol > 0.0 && tol < 1.0) => Err(param(
                format!("adaptive tolerance must lie in (0, 1), got {tol}"),
            )),
            TruncationSpec::Adaptive { max_terms, .. } if max_terms < Self::MIN_ADAPTIVE_TERMS => {
                Err(param(format!(
                    "max_terms must be at least {}, got {max_terms}",
                    Self::MIN_ADAPTIVE_TERMS
                )))
            }
            _ => Ok(()),
        }
    }
}

pub fn resolve_alpha(strategy: AlphaStrategy, params: SeriesParams, n: f64) -> Result<f64> {
    match strategy {
        AlphaStrategy::DefaultA => Ok(params.a()),
        AlphaStrategy::Accelerated => {
            let alpha = params.a() + (n - 1.0) * params.b() / 2.0;
            Ok(if alpha > 0.0 { alpha } else { params.a() })
        }
        AlphaStrategy::Custom(alpha) if alpha > 0.0 && alpha.is_finite() => Ok(alpha),
        AlphaStrategy::Custom(alpha) => Err(param(format!("alpha must be positive, got {alpha}"))),
    }
}

/// Log of the `k`-th merged factor
/// `[(a+kb)/(a+(n+k)b)]·[(α+(k+1)b)/(α+kb)]ⁿ`.
pub fn log_factor(params: SeriesParams, n: f64, alpha: f64, k: u64) -> Result<f64> {
    let kf = k as f64;
    let b = params.b();
    let checks = [
        ("a + k·b", params.factor(kf)),
        ("a + (n+k)·b", params.factor(n + kf)),
        ("alpha + k·b", alpha + kf * b),
        ("alpha + (k+1)·b", alpha + (kf + 1.0) * b),
    ];
    for (name, v) in checks {
        if v <= 0.0 || v.is_nan() {
            return Err(param(format!("{name} = {v} is not positive at k = {k}")));
        }
    }
    Ok(log_factor_unchecked(params.a(), b, n, alpha, kf))
}

// ln(a+kb) − ln(a+(n+k)b) + n·[ln(α+(k+1)b) − ln(α+kb)].
//
// With x = b/(α+kb) and y = b/(a+kb) this is n·ln(1+x) − ln(1+n·y), two
// O(1/k) terms whose difference is O(1/k²). It is regrouped as
//   n·[ln(1+x) − ln(1+y)] + [n·ln(1+y) − ln(1+n·y)]
// where the first bracket is ln_1p of an exactly formed O(1/k²) quantity
// and the second is summed as its power series once y is small.
#[inline]
fn log_factor_unchecked(a: f64, b: f64, n: f64, alpha: f64, k: f64) -> f64 {
    let kb = k * b;
    let shift = (b * (a - alpha) / ((alpha + kb) * (a + kb + b))).ln_1p();
    n * shift + power_defect(n, b / (a + kb))
}

/// `n·ln(1+y) − ln(1+n·y) = Σ_{j≥2} (−1)^{j+1} (n − nʲ) yʲ / j`.
#[inline]
fn power_defect(n: f64, y: f64) -> f64 {
    let reach = y * n.abs().max(1.0);
    if reach > 0.125 {
        return n * y.ln_1p() - (n * y).ln_1p();
    }
    let mut sum = 0.0;
    let mut y_pow = y;
    let mut n_pow = n;
    let mut sign = -1.0;
    for j in 2..64 {
        y_pow *= y;
        n_pow *= n;
        let term = sign * (n - n_pow) * y_pow / j as f64;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() || y_pow * n_pow.abs().max(1.0) < 1e-300 {
            break;
        }
        sign = -sign;
    }
    sum
}

/// The finite product `∏_{k<i} (a+kb)/(a+(n+k)b) · (α+ib)ⁿ`.
pub fn partial_product(params: SeriesParams, n: f64, alpha: f64, i: u64) -> Result<f64> {
    if i == 0 {
        return Err(param("partial product needs at least one factor"));
    }
    if alpha <= 0.0 || alpha.is_nan() {
        return Err(param(format!("alpha must be positive, got {alpha}")));
    }
    if params.factor(n) <= 0.0 || params.factor(n).is_nan() {
        return Err(Error::Divergent(params.factor(n)));
    }
    let (a, b) = (params.a(), params.b());
    let mut acc = CompensatedSum::new();
    for k in 0..i {
        acc += -(n * b / (a + k as f64 * b)).ln_1p();
    }
    acc += n * (alpha + i as f64 * b).ln();
    finite_exp(acc.value())
}

pub(crate) fn finite_exp(log_value: f64) -> Result<f64> {
    let v = log_value.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

/// Sum of log factors together with the bookkeeping the caller reports.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    pub log: f64,
    pub terms: usize,
    pub error_estimate: f64,
}

/// Sums `factor(0), factor(1), …` with a tail correction.
///
/// After summing factors `0..=k` the remainder `Σ_{j>k} f(j)` is estimated
/// as `T_k = k·f(k)`, exact to leading order when `f(j) ≈ c/j²`. What is
/// left after that correction decays like `R/k²`, so consecutive corrected
/// sums differ by about `2R/k³` and `(k/2)·|L_k − L_{k−1}|` estimates the
/// residual. Summation stops once this estimate is below `tol/2` at two
/// consecutive `k ≥ min_k`.
pub(crate) fn sum_adaptive<F>(factor: F, tol: f64, max_terms: usize, min_k: usize) -> Result<LogSum>
where
    F: Fn(f64) -> f64,
{
    let mut acc = CompensatedSum::new();
    let mut prev_f = factor(0.0);
    acc += prev_f;
    let mut prev_est = f64::INFINITY;
    let mut est = f64::INFINITY;
    for k in 1..max_terms {
        let kf = k as f64;
        let f = factor(kf);
        acc += f;
        // L_k − L_{k−1} = f(k) + k·f(k) − (k−1)·f(k−1)
        let delta = (kf + 1.0) * f - (kf - 1.0) * prev_f;
        est = 0.5 * kf * delta.abs();
        if k >= min_k && est < tol / 2.0 && prev_est < tol / 2.0 {
            return Ok(LogSum {
                log: acc.value() + kf * f,
                terms: k + 1,
                error_estimate: est,
            });
        }
        prev_est = est;
        prev_f = f;
    }
    Err(Error::NoConvergence {
        effort: max_terms,
        error_estimate: est,
    })
}

/// Sums exactly `terms` factors; the error estimate is `|i·f(i)|`, the
/// leading-order size of the neglected tail.
pub(crate) fn sum_fixed<F>(factor: F, terms: usize) -> LogSum
where
    F: Fn(f64) -> f64,
{
    let acc: CompensatedSum = (0..terms).map(|k| factor(k as f64)).collect();
    let i = terms as f64;
    LogSum {
        log: acc.value(),
        terms,
        error_estimate: (i * factor(i)).abs(),
    }
}

/// Below this index the log factors are not yet in their asymptotic regime,
/// so the residual estimate is not trusted.
pub(crate) fn asymptotic_start(scale: f64) -> usize {
    let guard = (2.0 * scale).ceil();
    if guard.is_finite() && guard > TruncationSpec::MIN_ADAPTIVE_TERMS as f64 {
        guard as usize
    } else {
        TruncationSpec::MIN_ADAPTIVE_TERMS
    }
}

pub fn eval_product(
    problem: &EvalProblem,
    strategy: AlphaStrategy,
    trunc: TruncationSpec,
) -> Result<EvalResult> {
    trunc.check()?;
    let params = problem.params();
    let n = problem.n();
    let alpha = resolve_alpha(strategy, params, n)?;
    if n == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            method: Method::Product,
            effort: 0,
            error_estimate: 0.0,
            divergent: false,
        });
    }
    let (a, b) = (params.a(), params.b());
    let factor = |k: f64| log_factor_unchecked(a, b, n, alpha, k);
    let sum = match trunc {
        TruncationSpec::FixedTerms(i) => sum_fixed(factor, i),
        TruncationSpec::Adaptive { tol, max_terms } => {
            let scale = (a + n.abs() * b + alpha) / b;
            sum_adaptive(factor, tol, max_terms, asymptotic_start(scale))?
        }
    };
    Ok(EvalResult {
        value: finite_exp(n * alpha.ln() + sum.log)?,
        method: Method::Product,
        effort: sum.terms,
        error_estimate: sum.error_estimate,
        divergent: false,
    })
}

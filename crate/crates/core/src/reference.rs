//! Closed-form Gamma oracle and the quotient series `Δ:n / Γ:n`.
//!
//! The oracle uses `Δ:n = bⁿ·Γ(a/b + n)/Γ(a/b)` with a self-contained
//! Lanczos Gamma so it shares no code with the product or integral routes.
//! Integer `n` reduces to the finite product of the functional equation.

use std::f64::consts::PI;

use crate::error::{param, Error, Result};
use crate::integral::{pq_integral, PQSpec};
use crate::product::{asymptotic_start, finite_exp, sum_adaptive, sum_fixed, TruncationSpec};
use crate::quadrature::QuadratureSpec;
use crate::series::{EvalResult, Method, SeriesParams};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEF[0], |acc, (i, c)| {
            acc + c / (x + i as f64 + 1.0)
        })
}

/// Γ(x) for real `x`, `+∞` at the non-positive integers.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // Split tᶻ⁺½ to avoid overflowing before the e^{-t} factor is applied.
    let half_pow = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half_pow * ((-t).exp() * half_pow) * lanczos_sum(z)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// `Δ:n` from the Gamma closed form. Fails with [`Error::Divergent`] when
/// `a + n·b ≤ 0`.
pub fn gamma_oracle(params: SeriesParams, n: f64) -> Result<f64> {
    if !n.is_finite() {
        return Err(param(format!("index n must be finite, got {n}")));
    }
    let lead = params.factor(n);
    if lead <= 0.0 {
        return Err(Error::Divergent(lead));
    }
    if n == n.trunc() && n.abs() <= INTEGER_RATIO_LIMIT {
        return integer_ratio(params, n as i64);
    }
    let b = params.b();
    let u = params.a() / b;
    if u + n < 150.0 && u < 150.0 {
        let v = b.powf(n) * (gamma(u + n) / gamma(u));
        if v.is_finite() && v > 0.0 {
            return Ok(v);
        }
    }
    finite_exp(n * b.ln() + ln_gamma(u + n) - ln_gamma(u))
}

const INTEGER_RATIO_LIMIT: f64 = 170.0;

// Γ(u+m)/Γ(u) for integer m is a finite product by the functional equation.
fn integer_ratio(params: SeriesParams, m: i64) -> Result<f64> {
    let v = if m >= 0 {
        (0..m).map(|j| params.factor(j as f64)).product::<f64>()
    } else {
        1.0 / (1..=-m).map(|j| params.factor(-j as f64)).product::<f64>()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

/// Two progressions with shared difference `b` and first terms `a`
/// (numerator) and `c` (denominator), evaluated at index `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientParams {
    a: f64,
    c: f64,
    b: f64,
    n: f64,
}

impl QuotientParams {
    pub fn new(a: f64, c: f64, b: f64, n: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("c", c), ("b", b)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(param(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !n.is_finite() {
            return Err(param(format!("index n must be finite, got {n}")));
        }
        if a + n * b <= 0.0 {
            return Err(Error::Divergent(a + n * b));
        }
        if c + n * b <= 0.0 {
            return Err(param(format!(
                "denominator term has a pole: c + n*b = {} is not positive",
                c + n * b
            )));
        }
        Ok(Self { a, c, b, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn n(&self) -> f64 {
        self.n
    }
}

/// `Δ:n/Γ:n` as the α-free product
/// `∏_k (a+kb)(c+(n+k)b) / ((a+(n+k)b)(c+kb))`.
pub fn quotient_term_product(qp: QuotientParams, trunc: TruncationSpec) -> Result<EvalResult> {
    trunc.check()?;
    let QuotientParams { a, c, b, n } = qp;
    if n == 0.0 || a == c {
        return Ok(EvalResult {
            value: 1.0,
            method: Method::Product,
            effort: 0,
            error_estimate: 0.0,
            divergent: false,
        });
    }
    // ln[(a+kb)(c+(n+k)b) / ((a+(n+k)b)(c+kb))] = ln_1p(nb(a−c) / ((c+kb)(a+(n+k)b)))
    let nb = n * b;
    let factor = |k: f64| (nb * (a - c) / ((c + k * b) * (a + nb + k * b))).ln_1p();
    let sum = match trunc {
        TruncationSpec::FixedTerms(i) => sum_fixed(factor, i),
        TruncationSpec::Adaptive { tol, max_terms } => {
            let scale = (a.max(c) + n.abs() * b) / b;
            sum_adaptive(factor, tol, max_terms, asymptotic_start(scale))?
        }
    };
    Ok(EvalResult {
        value: finite_exp(sum.log)?,
        method: Method::Product,
        effort: sum.terms,
        error_estimate: sum.error_estimate,
        divergent: false,
    })
}

/// `Δ:n/Γ:n = P/Q` with `P = ∫ x^{c−1}(1−xᵇ)^{n−1}`, `Q = ∫ x^{a−1}(1−xᵇ)^{n−1}`.
/// Only defined for `0 < n < 1`, where `(1−xᵇ)^{n−1}` is an integrable weight.
pub fn quotient_term_integral(qp: QuotientParams, quad: QuadratureSpec) -> Result<f64> {
    let QuotientParams { a, c, b, n } = qp;
    if !(n > 0.0 && n < 1.0) {
        return Err(param(format!(
            "the integral quotient route needs 0 < n < 1, got {n}"
        )));
    }
    let p = pq_integral(PQSpec::new(c, n * b, b)?, quad)?;
    let q = pq_integral(PQSpec::new(a, n * b, b)?, quad)?;
    Ok(p.value / q.value)
}

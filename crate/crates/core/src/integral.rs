//! Beta-type integral reductions of `Δ:½` and `Δ:⅓`.
//!
//! The building block is
//!
//! ```text
//! P(p, m, s) = ∫₀¹ x^{p−1} (1 − xˢ)^{m/s − 1} dx
//! ```
//!
//! whose ratios `P(p, m, s)/P(q, m, s)` equal the infinite product
//! `∏_k (q+ks)(m+p+ks) / ((p+ks)(m+q+ks))`. Matching that product against
//! the squared (or cubed) product form of `Δ:n` gives
//!
//! * `(Δ:½)² = a·P/Q` with `p = 2a+b`, `q = 2a`, `m = b`, `s = 2b`;
//! * `(Δ:⅓)³ = a·P·P′/(Q·Q′)` with `c = b/3`, `s = 3c` and
//!   `P = P(a−c, c)`, `Q = P(a, c)`, `P′ = P(a+c, 2c)`, `Q′ = P(a−c, 2c)`.

use crate::error::{param, Result};
use crate::quadrature::{tanh_sinh, Quadrature, QuadratureSpec};
use crate::series::{EvalResult, Method, SeriesParams};
use crate::sum::CompensatedSum;

/// Parameters of one P-type integral. `step` is the exponent `s` in
/// `(1 − xˢ)`; it is called `n` in the classical notation, renamed here so
/// it does not clash with the series index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQSpec {
    p: f64,
    m: f64,
    step: f64,
}

impl PQSpec {
    pub fn new(p: f64, m: f64, step: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("m", m), ("step", step)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(param(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { p, m, step })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `x^{p−1}(1−x^step)^{m/step−1}`, given `x` and `1−x`.
    pub fn integrand(&self, x: f64, xc: f64) -> f64 {
        let (ln_x, ln_rest) = if x <= 0.5 {
            let ln_x = x.ln();
            (ln_x, (-(self.step * ln_x).exp()).ln_1p())
        } else {
            let ln_x = (-xc).ln_1p();
            (ln_x, (-(self.step * ln_x).exp_m1()).ln())
        };
        ((self.p - 1.0) * ln_x + (self.m / self.step - 1.0) * ln_rest).exp()
    }
}

/// Endpoint exponents below this are lifted before integrating.
const LIFT_BELOW: f64 = 0.5;

/// `P(p, m, s)` by tanh-sinh quadrature.
///
/// Nodes stop about `1e-304` short of each endpoint, so a weight like
/// `(1−x)^{ε−1}` loses mass of order `1e-304^ε`. When `p` or `m/s` is small
/// the integral is first rewritten with `P(p, m, s) = P(p, m+s, s)·(p+m)/m`
/// and `P(p, m, s) = P(p+s, m, s)·(p+m)/p` (the Beta recurrences, i.e. one
/// integration by parts), which leaves an integrand bounded at that end.
pub fn pq_integral(spec: PQSpec, quad: QuadratureSpec) -> Result<Quadrature> {
    let PQSpec { mut p, mut m, step } = spec;
    let mut scale = 1.0;
    if p < LIFT_BELOW {
        scale *= (p + m) / p;
        p += step;
    }
    if m / step < LIFT_BELOW {
        scale *= (p + m) / m;
        m += step;
    }
    let lifted = PQSpec { p, m, step };
    let q = tanh_sinh(|x, xc| lifted.integrand(x, xc), quad)?;
    Ok(Quadrature {
        value: scale * q.value,
        err: scale * q.err,
        ..q
    })
}

/// Truncated product of `terms` factors `(q+ks)(m+p+ks) / ((p+ks)(m+q+ks))`,
/// which tends to `P(p, m, s)/P(q, m, s)`.
pub fn pq_ratio_product(p: f64, q: f64, m: f64, step: f64, terms: u64) -> Result<f64> {
    if terms == 0 {
        return Err(param("ratio product needs at least one term"));
    }
    for (name, v) in [
        ("p", p),
        ("q", q),
        ("m + p", m + p),
        ("m + q", m + q),
        ("step", step),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(param(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let mut acc = CompensatedSum::new();
    for k in 0..terms {
        let ks = k as f64 * step;
        acc += ((q - p) / (p + ks)).ln_1p();
        acc += ((p - q) / (m + q + ks)).ln_1p();
    }
    crate::product::finite_exp(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfIntegrals {
    pub p: Quadrature,
    pub q: Quadrature,
}

pub fn half_integrals(params: SeriesParams, quad: QuadratureSpec) -> Result<HalfIntegrals> {
    let (a, b) = (params.a(), params.b());
    Ok(HalfIntegrals {
        p: pq_integral(PQSpec::new(2.0 * a + b, b, 2.0 * b)?, quad)?,
        q: pq_integral(PQSpec::new(2.0 * a, b, 2.0 * b)?, quad)?,
    })
}

/// `Δ:½ = √(a·P/Q)`.
pub fn eval_half(params: SeriesParams, quad: QuadratureSpec) -> Result<EvalResult> {
    let ints = half_integrals(params, quad)?;
    let value = (params.a() * ints.p.value / ints.q.value).sqrt();
    let rel = 0.5 * (ints.p.err / ints.p.value.abs() + ints.q.err / ints.q.value.abs());
    Ok(EvalResult {
        value,
        method: Method::Integral,
        effort: ints.p.level.max(ints.q.level),
        error_estimate: value * rel,
        divergent: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdIntegrals {
    pub p: Quadrature,
    pub q: Quadrature,
    pub p_prime: Quadrature,
    pub q_prime: Quadrature,
}

impl ThirdIntegrals {
    fn all(&self) -> [&Quadrature; 4] {
        [&self.p, &self.q, &self.p_prime, &self.q_prime]
    }
}

/// The four integrals of the `n = ⅓` reduction. Requires `a > b/3` so that
/// `x^{a−c−1}` is integrable at the origin.
pub fn third_integrals(params: SeriesParams, quad: QuadratureSpec) -> Result<ThirdIntegrals> {
    let (a, b) = (params.a(), params.b());
    let c = b / 3.0;
    let f = a - c;
    if f <= 0.0 {
        return Err(param(format!(
            "the one-third reduction needs a > b/3 (a = {a}, b = {b})"
        )));
    }
    let step = 3.0 * c;
    Ok(ThirdIntegrals {
        p: pq_integral(PQSpec::new(f, c, step)?, quad)?,
        q: pq_integral(PQSpec::new(a, c, step)?, quad)?,
        p_prime: pq_integral(PQSpec::new(a + c, 2.0 * c, step)?, quad)?,
        q_prime: pq_integral(PQSpec::new(f, 2.0 * c, step)?, quad)?,
    })
}

/// `Δ:⅓ = ∛(a·P·P′/(Q·Q′))`.
pub fn eval_third(params: SeriesParams, quad: QuadratureSpec) -> Result<EvalResult> {
    let ints = third_integrals(params, quad)?;
    let value = (params.a() * ints.p.value * ints.p_prime.value
        / (ints.q.value * ints.q_prime.value))
        .cbrt();
    let rel: f64 = ints
        .all()
        .iter()
        .map(|q| q.err / q.value.abs())
        .sum::<f64>()
        / 3.0;
    Ok(EvalResult {
        value,
        method: Method::Integral,
        effort: ints.all().iter().map(|q| q.level).max().unwrap_or(0),
        error_estimate: value * rel,
        divergent: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use std::f64::consts::PI;

    fn pq(p: f64, m: f64, s: f64) -> f64 {
        pq_integral(PQSpec::new(p, m, s).unwrap(), QuadratureSpec::default())
            .unwrap()
            .value
    }

    fn sp(a: f64, b: f64) -> SeriesParams {
        SeriesParams::new(a, b).unwrap()
    }

    #[test]
    fn pq_integral_examples() {
        assert!((pq(2.0, 1.0, 2.0) - 1.0).abs() < 1e-13);
        assert!((pq(3.0, 1.0, 2.0) - PI / 4.0).abs() < 1e-13);
        assert!((pq(1.0, 1.0, 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn strongly_singular_weights() {
        // P(p, m, s) = B(p/s, m/s)/s; B(1, ε) = 1/ε and B(ε, 1) = 1/ε
        for eps in [0.3, 0.05, 0.01, 1e-3] {
            assert!(
                ((pq(1.0, eps, 1.0) - 1.0 / eps) * eps).abs() < 1e-12,
                "m = {eps}"
            );
            assert!(
                ((pq(eps, 1.0, 1.0) - 1.0 / eps) * eps).abs() < 1e-12,
                "p = {eps}"
            );
            assert!(((pq(2.0 * eps, 2.0, 2.0) - 0.5 / eps) * eps).abs() < 1e-12);
        }
        // B(½, ½) = π with both ends singular
        assert!((pq(0.5, 0.5, 1.0) - PI).abs() < 1e-12);
    }

    #[test]
    fn integrand_is_accurate_next_to_one() {
        // (1 − x²)^(−½) with 1 − x = 1e-300: ≈ (2e-300)^(−½)
        let spec = PQSpec::new(1.0, 1.0, 2.0).unwrap();
        let v = spec.integrand(1.0 - 1e-300, 1e-300);
        assert!(((v - (2e-300f64).powf(-0.5)) / v).abs() < 1e-12);
    }

    #[test]
    fn pq_spec_rejects_bad_parameters() {
        assert!(PQSpec::new(0.0, 1.0, 1.0).is_err());
        assert!(PQSpec::new(1.0, -1.0, 1.0).is_err());
        assert!(PQSpec::new(1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn ratio_product_examples() {
        assert_eq!(pq_ratio_product(1.7, 1.7, 0.3, 2.0, 1000).unwrap(), 1.0);
        let v = pq_ratio_product(3.0, 2.0, 1.0, 2.0, 1_000_000).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-5);
        assert!(matches!(
            pq_ratio_product(1.0, 1.0, 1.0, 1.0, 0),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            pq_ratio_product(-1.0, 1.0, 1.0, 1.0, 5),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn eval_half_examples() {
        let q = QuadratureSpec::default();
        let v = eval_half(sp(1.0, 1.0), q).unwrap();
        assert!((v.value - PI.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(v.method, Method::Integral);
        assert!(v.error_estimate >= 0.0);
        let v = eval_half(sp(1.0, 2.0), q).unwrap();
        assert!((v.value - (2.0 / PI).sqrt()).abs() < 1e-12);
        let v = eval_half(sp(2.0, 1.0), q).unwrap();
        assert!((v.value - 0.75 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn third_integrals_for_unit_series() {
        let t = third_integrals(sp(1.0, 1.0), QuadratureSpec::default()).unwrap();
        let r3 = 3f64.sqrt();
        assert!((t.p.value - 2.0 * PI / r3).abs() < 1e-10);
        assert!((t.p_prime.value - 2.0 * PI / (3.0 * r3)).abs() < 1e-10);
        assert!((t.q.value - 3.0).abs() < 1e-10);
    }

    #[test]
    fn eval_third_requires_a_above_b_over_three() {
        let q = QuadratureSpec::default();
        assert!(matches!(eval_third(sp(1.0, 3.0), q), Err(Error::Param(_))));
        assert!(matches!(eval_third(sp(0.5, 2.0), q), Err(Error::Param(_))));
    }
}

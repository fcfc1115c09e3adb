//! Interpolated general term of hypergeometric progressions.
//!
//! A progression `a, a(a+b), a(a+b)(a+2b), …` has an integer-index term
//! `Δ:k = a(a+b)…(a+(k-1)b)`. This crate evaluates `Δ:n` for arbitrary real
//! `n` by three independent routes:
//!
//! * [`product`]: a merged infinite product with a free parameter `α`,
//!   summed in log space with a tail correction.
//! * [`integral`]: Beta-type integral reductions for `n = ½` and `n = ⅓`,
//!   evaluated with tanh-sinh quadrature.
//! * [`reference`]: the closed form `bⁿ·Γ(a/b + n)/Γ(a/b)` with a Lanczos
//!   Gamma, used as a verification oracle.
//!
//! ```
//! use hyperterm_core::{validate, eval_product, AlphaStrategy, SeriesParams, TruncationSpec, Validated};
//!
//! let params = SeriesParams::new(1.0, 1.0).unwrap();
//! let Validated::Problem(problem) = validate(params, 0.5).unwrap() else { unreachable!() };
//! let trunc = TruncationSpec::adaptive(1e-10).unwrap();
//! let res = eval_product(&problem, AlphaStrategy::DefaultA, trunc).unwrap();
//! assert!((res.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod integral;
pub mod product;
pub mod quadrature;
pub mod reference;
pub mod series;
pub mod sum;

pub use error::{Error, Result};
pub use integral::{
    eval_half, eval_third, half_integrals, pq_integral, pq_ratio_product, third_integrals,
    HalfIntegrals, PQSpec, ThirdIntegrals,
};
pub use product::{
    eval_product, log_factor, partial_product, resolve_alpha, AlphaStrategy, TruncationSpec,
};
pub use quadrature::{tanh_sinh, tanh_sinh_levels, LevelEstimate, Quadrature, QuadratureSpec};
pub use reference::{
    gamma, gamma_oracle, ln_gamma, quotient_term_integral, quotient_term_product, QuotientParams,
};
pub use series::{
    direct_term, shift, shift_back, validate, DivergentMarker, EvalProblem, EvalResult, Method,
    SeriesParams, Validated,
};
pub use sum::CompensatedSum;

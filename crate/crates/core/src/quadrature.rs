//! Tanh-sinh (double-exponential) quadrature on the open unit interval.
//!
//! The substitution `x = ½(1 + tanh(π/2·sinh t))` turns algebraic endpoint
//! singularities `xˢ(1−x)ᵗ` with `s, t > −1` into integrands that decay
//! double-exponentially in `t`, after which the trapezoidal rule converges
//! very quickly. Integrands receive both `x` and `1 − x`; the complement is
//! computed directly from `t` so that it keeps full relative precision next
//! to the right endpoint.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{param, Error, Result};

/// Largest `|π/2·sinh t|` sampled; `e^{-2·350} ≈ 1e-304` is the closest
/// approach to either endpoint.
const MAX_S: f64 = 350.0;
/// Non-finite integrand values closer than this to an endpoint are dropped.
const ENDPOINT_ZONE: f64 = 1e-250;
/// Levels before this one are never accepted as converged.
const MIN_LEVEL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    tol: f64,
    max_level: usize,
}

impl QuadratureSpec {
    pub const MAX_LEVEL_LIMIT: usize = 16;

    pub fn new(tol: f64, max_level: usize) -> Result<Self> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(param(format!(
                "quadrature tolerance must lie in (0, 1), got {tol}"
            )));
        }
        if max_level == 0 || max_level > Self::MAX_LEVEL_LIMIT {
            return Err(param(format!(
                "max_level must lie in 1..={}, got {max_level}",
                Self::MAX_LEVEL_LIMIT
            )));
        }
        Ok(Self { tol, max_level })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_level: 12,
        }
    }
}

/// A converged quadrature estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two level estimates.
    pub err: f64,
    /// Level at which the estimate was accepted (level 0 has unit step).
    pub level: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub level: usize,
    pub value: f64,
    /// `|I_L − I_{L−1}|`; infinite at level 0.
    pub diff: f64,
}

struct Sweep<F> {
    integrand: F,
    t_max: f64,
    level: usize,
    sum: f64,
    evaluations: usize,
}

impl<F: Fn(f64, f64) -> f64> Sweep<F> {
    fn new(integrand: F) -> Self {
        Self {
            integrand,
            t_max: (MAX_S / FRAC_PI_2).asinh(),
            level: 0,
            sum: 0.0,
            evaluations: 0,
        }
    }

    fn node(&mut self, t: f64) -> Result<f64> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        let near = e / (1.0 + e);
        let far = 1.0 / (1.0 + e);
        let (x, xc) = if s >= 0.0 { (far, near) } else { (near, far) };
        // dx/dt = ½·sech²(s)·π/2·cosh t = π·cosh t·x·(1−x)
        let w = PI * t.cosh() * x * xc;
        self.evaluations += 1;
        let fx = (self.integrand)(x, xc);
        if fx.is_finite() {
            Ok(fx * w)
        } else if near < ENDPOINT_ZONE {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!(
                "integrand is {fx} at interior point x = {x:e}"
            )))
        }
    }

    /// Adds the nodes of the next level and returns its estimate.
    fn refine(&mut self) -> Result<f64> {
        let h = 0.5f64.powi(self.level as i32);
        if self.level == 0 {
            let k_max = self.t_max.floor() as i64;
            for k in -k_max..=k_max {
                self.sum += self.node(k as f64)?;
            }
        } else {
            let mut t = h;
            while t <= self.t_max {
                self.sum += self.node(t)? + self.node(-t)?;
                t += 2.0 * h;
            }
        }
        self.level += 1;
        Ok(h * self.sum)
    }
}

/// Integrates `f(x, 1−x)` over `(0, 1)`, halving the step each level until
/// successive estimates differ by less than `tol·max(1, |I|)`.
pub fn tanh_sinh<F>(f: F, spec: QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64, f64) -> f64,
{
    let mut sweep = Sweep::new(f);
    let mut prev = sweep.refine()?;
    let mut diff = f64::INFINITY;
    for level in 1..=spec.max_level {
        let cur = sweep.refine()?;
        diff = (cur - prev).abs();
        if level >= MIN_LEVEL.min(spec.max_level) && diff < spec.tol * cur.abs().max(1.0) {
            return Ok(Quadrature {
                value: cur,
                err: diff,
                level,
                evaluations: sweep.evaluations,
            });
        }
        prev = cur;
    }
    Err(Error::NoConvergence {
        effort: spec.max_level,
        error_estimate: diff,
    })
}

/// Every level estimate from 0 to `max_level`, without early stopping.
pub fn tanh_sinh_levels<F>(f: F, max_level: usize) -> Result<Vec<LevelEstimate>>
where
    F: Fn(f64, f64) -> f64,
{
    let mut sweep = Sweep::new(f);
    let mut out: Vec<LevelEstimate> = Vec::with_capacity(max_level + 1);
    for level in 0..=max_level {
        let value = sweep.refine()?;
        let diff = out
            .last()
            .map_or(f64::INFINITY, |p| (value - p.value).abs());
        out.push(LevelEstimate { level, value, diff });
    }
    Ok(out)
}

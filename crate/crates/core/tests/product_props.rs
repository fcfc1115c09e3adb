mod common;

use common::*;
use hyperterm_core::{
    direct_term, eval_product, log_factor, partial_product, resolve_alpha, AlphaStrategy,
    CompensatedSum, TruncationSpec,
};
use proptest::prelude::*;

fn adaptive(tol: f64) -> TruncationSpec {
    TruncationSpec::adaptive(tol).unwrap()
}

#[test]
fn divergent_grid_points_are_exactly_the_poles() {
    for (a, b, n, pr) in grid() {
        assert_eq!(pr.is_none(), a + n * b <= 0.0, "a={a} b={b} n={n}");
    }
}

#[test]
fn alpha_invariance_on_grid() {
    let trunc = adaptive(1e-10);
    for (a, b, n, pr) in grid() {
        let Some(pr) = pr else { continue };
        let lo = eval_product(&pr, AlphaStrategy::Custom(a / 4.0), trunc)
            .unwrap()
            .value;
        let hi = eval_product(&pr, AlphaStrategy::Custom(4.0 * a), trunc)
            .unwrap()
            .value;
        let def = eval_product(&pr, AlphaStrategy::DefaultA, trunc)
            .unwrap()
            .value;
        assert!(rel(lo, hi) <= 5e-10, "a={a} b={b} n={n}: {lo} vs {hi}");
        assert!(rel(def, hi) <= 5e-10, "a={a} b={b} n={n}: {def} vs {hi}");
    }
}

#[test]
fn recurrence_on_grid() {
    let tol = 1e-9;
    for (a, b, n, pr) in grid() {
        let Some(pr) = pr else { continue };
        let here = eval_product(&pr, AlphaStrategy::DefaultA, adaptive(tol))
            .unwrap()
            .value;
        let next = eval_product(
            &problem(a, b, n + 1.0),
            AlphaStrategy::DefaultA,
            adaptive(tol),
        )
        .unwrap()
        .value;
        assert!(
            rel(next, (a + n * b) * here) <= 5.0 * tol,
            "a={a} b={b} n={n}"
        );
    }
}

#[test]
fn integer_index_matches_direct_term() {
    let tol = 1e-10;
    for a in GRID_AB {
        for b in GRID_AB {
            for k in 1..=8u64 {
                let v = eval_product(
                    &problem(a, b, k as f64),
                    AlphaStrategy::DefaultA,
                    adaptive(tol),
                )
                .unwrap()
                .value;
                let d = direct_term(sp(a, b), k).unwrap();
                assert!(rel(v, d) <= 5.0 * tol, "a={a} b={b} k={k}: {v} vs {d}");
            }
        }
    }
}

#[test]
fn telescoping_identity() {
    for (a, b, n, pr) in grid() {
        if pr.is_none() {
            continue;
        }
        let params = sp(a, b);
        for alpha in [a, 0.3 * a + 0.1, 2.5 * a] {
            let mut acc = CompensatedSum::new();
            let mut k = 0u64;
            for i in [10u64, 100, 1000] {
                while k < i {
                    acc += log_factor(params, n, alpha, k).unwrap();
                    k += 1;
                }
                let merged = (n * alpha.ln() + acc.value()).exp();
                let plain = partial_product(params, n, alpha, i).unwrap();
                assert!(
                    rel(merged, plain) <= 1e-12,
                    "a={a} b={b} n={n} alpha={alpha} i={i}"
                );
            }
        }
    }
}

fn sample_ks() -> impl Iterator<Item = u64> {
    (0..40).map(|j| (64.0 * 1.25f64.powi(j)).round() as u64)
}

// Expanding in 1/k: log_factor(k) = c/k² + O(1/k³) with
// c = n(a−α)/b + n(n−1)/2, which vanishes at the accelerated α.
fn leading_coefficient(a: f64, b: f64, n: f64, alpha: f64) -> f64 {
    n * (a - alpha) / b + n * (n - 1.0) / 2.0
}

#[test]
fn log_factors_decay_like_inverse_square() {
    for (a, b, n, pr) in grid() {
        if pr.is_none() {
            continue;
        }
        let params = sp(a, b);
        for alpha in [a, a / 4.0, 4.0 * a] {
            let c = leading_coefficient(a, b, n, alpha);
            if c == 0.0 {
                continue;
            }
            let f = |k: u64| log_factor(params, n, alpha, k).unwrap().abs();
            let fitted = sample_ks()
                .map(|k| f(k) * (k as f64).powi(2))
                .fold(0.0, f64::max);
            assert!(
                fitted <= 1.25 * c.abs(),
                "a={a} b={b} n={n} alpha={alpha}: C={fitted} c={c}"
            );
            let mut prev = f64::INFINITY;
            for k in sample_ks() {
                let v = f(k);
                assert!(
                    v <= prev,
                    "not decreasing at k={k} (a={a} b={b} n={n} alpha={alpha})"
                );
                assert!(v <= (1.0 + 1e-12) * fitted / (k as f64).powi(2));
                prev = v;
            }
            let k = (1u64 << 20) as f64;
            assert!(
                rel(f(1 << 20) * k * k, c.abs()) < 1e-4,
                "a={a} b={b} n={n} alpha={alpha}"
            );
        }
    }
}

#[test]
fn accelerated_log_factors_decay_like_inverse_cube() {
    for (a, b, n, pr) in grid() {
        if pr.is_none() {
            continue;
        }
        let params = sp(a, b);
        let alpha = resolve_alpha(AlphaStrategy::Accelerated, params, n).unwrap();
        if alpha != a + (n - 1.0) * b / 2.0 {
            continue;
        }
        assert!(leading_coefficient(a, b, n, alpha).abs() < 1e-14);
        let f = |k: u64| log_factor(params, n, alpha, k).unwrap().abs();
        let cubed: Vec<f64> = sample_ks().map(|k| f(k) * (k as f64).powi(3)).collect();
        let fitted = cubed.iter().cloned().fold(0.0, f64::max);
        let tail = *cubed.last().unwrap();
        // k³·|f(k)| levels off: neither growing (slower decay) nor vanishing
        assert!(tail > 0.5 * fitted, "a={a} b={b} n={n}: {cubed:?}");
    }
}

#[test]
fn acceleration_regression_counts() {
    let pr = problem(1.0, 1.0, 0.5);
    let count = |s, tol| eval_product(&pr, s, adaptive(tol)).unwrap().effort;
    assert_eq!(count(AlphaStrategy::DefaultA, 1e-8), 5001);
    assert_eq!(count(AlphaStrategy::Accelerated, 1e-8), 1768);
    assert_eq!(count(AlphaStrategy::DefaultA, 1e-6), 501);
    assert_eq!(count(AlphaStrategy::Accelerated, 1e-6), 177);
}

#[test]
fn term_count_grows_as_tolerance_shrinks() {
    let pr = problem(2.0, 3.0, 0.7);
    for s in [
        AlphaStrategy::DefaultA,
        AlphaStrategy::Accelerated,
        AlphaStrategy::Custom(0.9),
    ] {
        let counts: Vec<usize> = [1e-4, 1e-6, 1e-8, 1e-10]
            .iter()
            .map(|&t| eval_product(&pr, s, adaptive(t)).unwrap().effort)
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{s:?}: {counts:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alpha_invariance(a in 0.2f64..6.0, b in 0.2f64..6.0, n in -0.9f64..4.0,
                        s1 in 0.25f64..4.0, s2 in 0.25f64..4.0) {
        prop_assume!(a + n * b > 0.05 * b);
        let pr = problem(a, b, n);
        let trunc = adaptive(1e-10);
        let v1 = eval_product(&pr, AlphaStrategy::Custom(s1 * a), trunc).unwrap().value;
        let v2 = eval_product(&pr, AlphaStrategy::Custom(s2 * a), trunc).unwrap().value;
        prop_assert!(rel(v1, v2) <= 5e-10, "{v1} vs {v2}");
    }

    #[test]
    fn recurrence(a in 0.2f64..6.0, b in 0.2f64..6.0, n in -0.9f64..4.0) {
        prop_assume!(a + n * b > 0.05 * b);
        let tol = 1e-9;
        let here = eval_product(&problem(a, b, n), AlphaStrategy::Accelerated, adaptive(tol)).unwrap();
        let next = eval_product(&problem(a, b, n + 1.0), AlphaStrategy::Accelerated, adaptive(tol)).unwrap();
        prop_assert!(rel(next.value, (a + n * b) * here.value) <= 5.0 * tol);
    }

    #[test]
    fn fixed_truncation_is_the_partial_product(a in 0.2f64..6.0, b in 0.2f64..6.0,
                                                n in -0.9f64..4.0, alpha in 0.1f64..10.0,
                                                i in 1usize..400) {
        prop_assume!(a + n * b > 0.0);
        let v = eval_product(&problem(a, b, n), AlphaStrategy::Custom(alpha), TruncationSpec::fixed(i).unwrap())
            .unwrap()
            .value;
        let pp = partial_product(sp(a, b), n, alpha, i as u64).unwrap();
        prop_assert!(rel(v, pp) <= 1e-12);
    }
}

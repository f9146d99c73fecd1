use std::f64::consts::{PI, TAU};

use postrig::orthosum::{
    binomial_product_coeffs, chebyshev_qk_sum, first_negative_normalized_sum, gegenbauer_all, gegenbauer_c,
    gegenbauer_fejer_sum, gegenbauer_normalized_sum, jacobi_p, jacobi_sum_check, opuc_coeffs,
    opuc_cumulative_positive, opuc_log_derivative_route, opuc_weighted_sum,
};
use postrig::seqkit::{ek_sequence, pochhammer, rising_over_factorial};
use postrig::specfun::gamma_fn;
use postrig::sums::qk_cosine;
use postrig::CoefficientSequence;
use proptest::prelude::*;

fn grid(points: usize) -> Vec<f64> {
    (1..=points).map(|i| -1.0 + 2.0 * i as f64 / (points + 1) as f64).collect()
}

/// Σ_j (−1)^j (λ)_{k−j} / (j! (k−2j)!) (2x)^{k−2j}
fn gegenbauer_explicit(k: usize, lambda: f64, x: f64) -> f64 {
    (0..=k / 2)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * pochhammer(lambda, k - j) / (pochhammer(1.0, j) * pochhammer(1.0, k - 2 * j))
                * (2.0 * x).powi((k - 2 * j) as i32)
        })
        .sum()
}

/// Σ_s binom(k+a, k−s) binom(k+b, s) ((x−1)/2)^s ((x+1)/2)^{k−s}
fn jacobi_explicit(k: usize, a: f64, b: f64, x: f64) -> f64 {
    let binom = |top: f64, m: usize| gamma_fn(top + 1.0).unwrap() / (gamma_fn(m as f64 + 1.0).unwrap() * gamma_fn(top - m as f64 + 1.0).unwrap());
    (0..=k)
        .map(|s| {
            binom(k as f64 + a, k - s) * binom(k as f64 + b, s)
                * ((x - 1.0) / 2.0).powi(s as i32)
                * ((x + 1.0) / 2.0).powi((k - s) as i32)
        })
        .sum()
}

#[test]
fn gegenbauer_at_one() {
    for lambda in [0.05, 0.25, 0.5, 1.0, 2.5] {
        let c1 = gegenbauer_all(50, lambda, 1.0).unwrap();
        for (k, v) in c1.iter().enumerate() {
            let want = rising_over_factorial(2.0 * lambda, k);
            assert!((v - want).abs() <= 1e-12 * want, "lambda={lambda} k={k}");
        }
    }
}

#[test]
fn fejer_type_sums_positive() {
    let xs = grid(1000);
    for lambda in [0.1, 0.3, 0.5] {
        for n in 0..=50 {
            for &x in &xs {
                assert!(gegenbauer_fejer_sum(n, lambda, x).unwrap() > 0.0, "lambda={lambda} n={n} x={x}");
            }
        }
    }
    assert!((gegenbauer_fejer_sum(1, 0.5, 0.3).unwrap() - 1.3).abs() < 1e-15);
}

#[test]
fn normalized_sums() {
    let xs = grid(1000);
    let ones = CoefficientSequence::custom(vec![1.0; 51], 0).unwrap();
    for n in 0..=50 {
        for &x in &xs {
            assert!(gegenbauer_normalized_sum(&ones, n, 0.25, x).unwrap() > 0.0, "n={n} x={x}");
        }
        // ratio-condition coefficients at a small λ
        let e = ek_sequence(n, 0.35, 1.25, 1.0).unwrap();
        for &x in &xs {
            assert!(gegenbauer_normalized_sum(&e, n, 0.05, x).unwrap() > 0.0, "ek n={n} x={x}");
        }
    }
    let hit = first_negative_normalized_sum(0.15, 400, &xs).unwrap().expect("a negative sum below lambda'");
    assert!(hit.2 <= 0.0);
    let check = gegenbauer_normalized_sum(&CoefficientSequence::custom(vec![1.0; hit.0 + 1], 0).unwrap(), hit.0, 0.15, hit.1).unwrap();
    assert!((check - hit.2).abs() < 1e-12);
}

#[test]
fn jacobi_scan_stays_off_zero() {
    assert_eq!(jacobi_sum_check(0, 0.5, 1.0, 1.0, 0.5, 0.2, 1.0).unwrap(), 1.0);
    let xs: Vec<f64> = (0..=40).map(|i| -1.0 + i as f64 / 20.0).collect();
    for lambda in [0.0, 0.75, 1.5] {
        for n in 0..=20 {
            let mut least = f64::INFINITY;
            for &x in &xs {
                for j in 0..64 {
                    least = least.min(jacobi_sum_check(n, lambda, 1.0, 1.0, 0.5, x, TAU * j as f64 / 64.0).unwrap());
                }
            }
            assert!(least > 0.0, "lambda={lambda} n={n}");
        }
    }
}

#[test]
fn opuc_examples() {
    let f = opuc_coeffs(0.0, 0.0, 30).unwrap();
    assert!(f.coeffs.iter().all(|&c| c == 1.0));
    let r = opuc_cumulative_positive(0.0, 0.0, 30).unwrap();
    for (i, s) in r.partial_sums.unwrap().iter().enumerate() {
        assert_eq!(*s, (i + 1) as f64);
    }
    for b in [-0.5, 0.0, 1.3] {
        let f = binomial_product_coeffs(b, 1.0, 40).unwrap();
        for (k, c) in f.coeffs.iter().enumerate() {
            let want = rising_over_factorial(2.0 * b + 2.0, k);
            assert!((c - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
    assert!(opuc_coeffs(0.0, 1.0, 3).is_err());
    assert!(opuc_cumulative_positive(-0.6, 0.0, 3).is_err());
    for b in [-0.49, 0.0, 2.0] {
        for w in [-0.9, 0.4] {
            for n in [0, 5, 30] {
                let e = ek_sequence(n, 0.35, 1.25, 1.0).unwrap();
                assert!(opuc_weighted_sum(&e, b, w).unwrap() > 0.0);
            }
        }
    }
}

proptest! {
    #[test]
    fn chebyshev_pullback(n in 1usize..100, alpha in 0.0f64..5.0, beta in 0.0f64..5.0, lambda in 0.0f64..2.0, mu in 0.0f64..2.0, theta in 0.01f64..3.13) {
        let direct = qk_cosine(n, alpha, beta, lambda, mu).unwrap().eval(theta);
        let pulled = chebyshev_qk_sum(n, alpha, beta, lambda, mu, theta.cos()).unwrap();
        prop_assert!((direct - pulled).abs() <= 1e-12 * (n as f64).max(1.0));
    }

    #[test]
    fn gegenbauer_matches_explicit_sum(k in 0usize..15, lambda in 0.05f64..3.0, x in -0.99f64..0.99) {
        let got = gegenbauer_c(k, lambda, x).unwrap();
        let want = gegenbauer_explicit(k, lambda, x);
        prop_assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()));
    }

    #[test]
    fn jacobi_matches_explicit_sum(k in 0usize..10, a in -0.5f64..3.0, b in -0.5f64..3.0, x in -1.0f64..=1.0) {
        let got = jacobi_p(k, a, b, x).unwrap();
        let want = jacobi_explicit(k, a, b, x);
        prop_assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()));
    }

    #[test]
    fn opuc_routes_agree(b in -0.49f64..3.0, w in -0.99f64..0.99) {
        // (1−z)^{−(b+2)}(1−ωz)^{−(b+1)} is the generating function of the cumulative sums
        let r = opuc_cumulative_positive(b, w, 100).unwrap();
        prop_assert!(r.satisfied, "{:?}", r.warnings);
        let (psi, gamma) = opuc_log_derivative_route(b, w, 100);
        prop_assert!(gamma.iter().all(|&g| g > 0.0));
        for (s, p) in r.partial_sums.unwrap().iter().zip(&psi) {
            prop_assert!((s - p).abs() <= 1e-10 * s.abs().max(1.0));
        }
    }

    #[test]
    fn legendre_values_bounded(theta in 0.0f64..PI) {
        // C_k^{1/2} = P_k (Legendre), |P_k| ≤ 1
        let x = theta.cos();
        for k in 0..30 {
            prop_assert!(gegenbauer_c(k, 0.5, x).unwrap().abs() <= 1.0 + 1e-12);
        }
    }
}

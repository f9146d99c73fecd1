//! Chebyshev, Gegenbauer and Jacobi sums, and OPUC coefficient positivity.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::seqkit::{pochhammer, qk_weight, CoefficientSequence, CriterionReport};

const ROUTE_AGREEMENT: f64 = 1e-10;

fn check_open(x: f64, what: &str) -> Result<()> {
    if !(x > -1.0 && x < 1.0) {
        return domain(format!("{what} = {x} must lie in (-1, 1)"));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return domain(format!("lambda = {lambda} must be > 0"));
    }
    Ok(())
}

fn check_jacobi(a: f64, b: f64) -> Result<()> {
    if !(a > -1.0 && b > -1.0 && a.is_finite() && b.is_finite()) {
        return domain(format!("Jacobi parameters ({a}, {b}) must exceed -1"));
    }
    Ok(())
}

/// T_0(t), ..., T_n(t).
pub fn chebyshev_all(n: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(t);
    }
    for k in 2..=n {
        out.push(2.0 * t * out[k - 1] - out[k - 2]);
    }
    out
}

pub fn chebyshev_t(k: usize, t: f64) -> f64 {
    chebyshev_all(k, t)[k]
}

/// C_0^λ(x), ..., C_n^λ(x).
pub fn gegenbauer_all(n: usize, lambda: f64, x: f64) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(2.0 * lambda * x);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 * x * (kf + lambda) * out[k] - (kf + 2.0 * lambda - 1.0) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    Ok(out)
}

pub fn gegenbauer_c(k: usize, lambda: f64, x: f64) -> Result<f64> {
    Ok(gegenbauer_all(k, lambda, x)?[k])
}

/// P_0^{(a,b)}(x), ..., P_n^{(a,b)}(x).
pub fn jacobi_all(n: usize, a: f64, b: f64, x: f64) -> Result<Vec<f64>> {
    check_jacobi(a, b)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push((a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0));
    }
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        out.push((c2 * out[k - 1] - c3 * out[k - 2]) / c1);
    }
    Ok(out)
}

pub fn jacobi_p(k: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    Ok(jacobi_all(k, a, b, x)?[k])
}

/// T_0(t) + T_1(t) + Σ_{k=2}^{n} T_k(t) / ((k+α)^λ (k+β)^μ).
pub fn chebyshev_qk_sum(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64, t: f64) -> Result<f64> {
    check_open(t, "t")?;
    if alpha < 0.0 || beta < 0.0 {
        return domain("alpha and beta must be >= 0");
    }
    let ts = chebyshev_all(n, t);
    Ok(ts
        .iter()
        .enumerate()
        .map(|(k, tk)| if k < 2 { *tk } else { qk_weight(k, alpha, beta, lambda, mu) * tk })
        .sum())
}

/// Σ_{k=0}^{n} C_k^λ(x).
pub fn gegenbauer_fejer_sum(n: usize, lambda: f64, x: f64) -> Result<f64> {
    check_open(x, "x")?;
    Ok(gegenbauer_all(n, lambda, x)?.iter().sum())
}

/// Σ_{k=0}^{n} a_k C_k^λ(x) / C_k^λ(1).
pub fn gegenbauer_normalized_sum(a: &CoefficientSequence, n: usize, lambda: f64, x: f64) -> Result<f64> {
    check_open(x, "x")?;
    if a.first_index() != 0 || a.max_index() < n {
        return Err(Error::Size(format!("need a_0..a_{n}")));
    }
    let cx = gegenbauer_all(n, lambda, x)?;
    let c1 = gegenbauer_all(n, lambda, 1.0)?;
    Ok((0..=n).map(|k| a.values()[k] * cx[k] / c1[k]).sum())
}

/// Smallest n ≤ n_max for which Σ_{k=0}^{n} C_k^λ(x)/C_k^λ(1) ≤ 0 at some grid x,
/// with that x (the smallest one on ties) and the value.
pub fn first_negative_normalized_sum(lambda: f64, n_max: usize, xs: &[f64]) -> Result<Option<(usize, f64, f64)>> {
    check_lambda(lambda)?;
    for &x in xs {
        check_open(x, "x")?;
    }
    let c1 = gegenbauer_all(n_max, lambda, 1.0)?;
    let per_x: Vec<Option<(usize, f64)>> = xs
        .par_iter()
        .map(|&x| {
            let cx = gegenbauer_all(n_max, lambda, x).expect("lambda checked");
            let mut acc = 0.0;
            for k in 0..=n_max {
                acc += cx[k] / c1[k];
                if acc <= 0.0 {
                    return Some((k, acc));
                }
            }
            None
        })
        .collect();
    let mut best: Option<(usize, f64, f64)> = None;
    for (&x, hit) in xs.iter().zip(per_x) {
        if let Some((n, v)) = hit {
            if best.is_none_or(|(bn, bx, _)| n < bn || (n == bn && x < bx)) {
                best = Some((n, x, v));
            }
        }
    }
    Ok(best)
}

/// Power-series coefficients c_0..c_N from a generating function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients {
    pub coeffs: Vec<f64>,
    pub truncation: usize,
    pub params: BTreeMap<String, f64>,
    /// |c_{N+1}|, the first omitted coefficient (computed exactly).
    pub tail_bound: f64,
}

fn binomial_series(b: f64, arg: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut c = 1.0;
    for m in 0..len {
        out.push(c);
        c *= (b + 1.0 + m as f64) / (m as f64 + 1.0) * arg;
    }
    out
}

fn cauchy(u: &[f64], v: &[f64], len: usize) -> Vec<f64> {
    (0..len).map(|k| (0..=k).map(|m| u[m] * v[k - m]).sum()).collect()
}

/// Coefficients of (1 − ωz)^{−(b+1)} (1 − z)^{−(b+1)} for any finite ω.
pub fn binomial_product_coeffs(b: f64, omega: f64, n: usize) -> Result<SeriesCoefficients> {
    if !(b > -1.0 && b.is_finite()) {
        return domain(format!("b = {b} must exceed -1"));
    }
    if !omega.is_finite() {
        return domain("omega must be finite");
    }
    let u = binomial_series(b, omega, n + 2);
    let v = binomial_series(b, 1.0, n + 2);
    let mut coeffs = cauchy(&u, &v, n + 2);
    let tail_bound = coeffs.pop().unwrap().abs();
    Ok(SeriesCoefficients {
        coeffs,
        truncation: n,
        params: [("b".to_string(), b), ("omega".to_string(), omega)].into_iter().collect(),
        tail_bound,
    })
}

/// F_0^b(ω), ..., F_N^b(ω) for real b > −1 and |ω| < 1.
pub fn opuc_coeffs(b: f64, omega: f64, n: usize) -> Result<SeriesCoefficients> {
    check_open(omega, "omega")?;
    binomial_product_coeffs(b, omega, n)
}

/// Taylor coefficients of (1−z)^{−(b+2)} (1−ωz)^{−(b+1)} from the exponential of
/// its logarithm: n ψ_n = Σ_{m<n} γ_m ψ_{n−1−m}, γ_m = (b+2) + (b+1) ω^{m+1}.
pub fn opuc_log_derivative_route(b: f64, omega: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let gamma: Vec<f64> = (0..n.max(1))
        .map(|m| (b + 2.0) + (b + 1.0) * omega.powi(m as i32 + 1))
        .collect();
    let mut psi = vec![1.0];
    for k in 1..=n {
        let s: f64 = (0..k).map(|m| gamma[m] * psi[k - 1 - m]).sum();
        psi.push(s / k as f64);
    }
    (psi, gamma)
}

/// Checks Σ_{k≤n} F_k^b(ω) > 0 for every n ≤ N by two routes.
pub fn opuc_cumulative_positive(b: f64, omega: f64, n: usize) -> Result<CriterionReport> {
    if !(b > -0.5 && b.is_finite()) {
        return domain(format!("b = {b} must exceed -1/2"));
    }
    let f = opuc_coeffs(b, omega, n)?;
    let cumulative: Vec<f64> = f
        .coeffs
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let (psi, gamma) = opuc_log_derivative_route(b, omega, n);
    let mut warnings = Vec::new();
    let mut violation = cumulative.iter().position(|&s| s <= 0.0);
    if let Some(m) = gamma.iter().position(|&g| g <= 0.0) {
        warnings.push(format!("log-derivative coefficient {m} is not positive"));
        violation = violation.or(Some(m));
    }
    let worst = cumulative
        .iter()
        .zip(&psi)
        .map(|(s, p)| (s - p).abs() / s.abs().max(1.0))
        .fold(0.0, f64::max);
    let routes_agree = worst <= ROUTE_AGREEMENT;
    if !routes_agree {
        warnings.push(format!("routes differ by {worst:e} (relative)"));
    }
    let margin = cumulative.iter().copied().fold(f64::INFINITY, f64::min);
    let satisfied = violation.is_none() && routes_agree;
    Ok(CriterionReport {
        satisfied,
        first_violation_index: if satisfied { None } else { Some(violation.unwrap_or(0)) },
        margin,
        partial_sums: Some(cumulative),
        warnings,
    })
}

/// Σ_{k=0}^{n} a_k F_k^b(ω) with n the largest index of `a`.
pub fn opuc_weighted_sum(a: &CoefficientSequence, b: f64, omega: f64) -> Result<f64> {
    if a.first_index() != 0 {
        return Err(Error::Size("need a_0".into()));
    }
    let f = opuc_coeffs(b, omega, a.max_index())?;
    Ok(a.values().iter().zip(&f.coeffs).map(|(x, y)| x * y).sum())
}

/// |Σ_{k=0}^{n} (1+λ)_{n−k}/(1+δ)_{n−k} · (1+λ)_k/(1+δ)_k · P_k(x)/P_k(1) · z^k| with z = e^{i·angle}.
pub fn jacobi_sum_check(n: usize, lambda: f64, delta: f64, a: f64, b: f64, x: f64, angle: f64) -> Result<f64> {
    check_jacobi(a, b)?;
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("x = {x} must lie in [-1, 1]"));
    }
    if !(delta > -1.0) || !lambda.is_finite() {
        return domain("need delta > -1 and finite lambda");
    }
    let p = jacobi_all(n, a, b, x)?;
    let p1 = jacobi_all(n, a, b, 1.0)?;
    let ratio: Vec<f64> = (0..=n).map(|k| pochhammer(1.0 + lambda, k) / pochhammer(1.0 + delta, k)).collect();
    let (mut re, mut im) = (0.0, 0.0);
    for k in 0..=n {
        let w = ratio[n - k] * ratio[k] * p[k] / p1[k];
        let (s, c) = (k as f64 * angle).sin_cos();
        re += w * c;
        im += w * s;
    }
    Ok(re.hypot(im))
}

//! α₀, α₀′(d), β₀, β₁ and λ′ from their defining equations.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bessel::{bessel_j_scaled, bessel_zero};
use super::gamma::{gamma_fn, recip_gamma};
use super::hyper::hyp2f3;
use super::quad::quad_singular;
use super::roots::brent_root;
use super::KahanSum;
use crate::error::{Error, Result};

/// Upper limit 3π/2 of the cosine integrals.
pub const UPPER: f64 = 1.5 * PI;
/// ₂F₃ argument −9π²/16 = −(3π/4)².
pub const HYP_ARG: f64 = -9.0 * PI * PI / 16.0;
/// Accepted |f| at a reported root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-8;
const QUAD_TOL: f64 = 1e-12;
const ROOT_X_TOL: f64 = 1e-14;
const FIT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantName {
    Alpha0,
    Alpha0Prime,
    Beta0,
    Beta1,
    LambdaPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    QuadratureRoot,
    Hyp2f3Root,
    ExpansionFit,
    BesselQuadratureRoot,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialConstant {
    pub name: ConstantName,
    pub value: f64,
    pub route: Route,
    /// |f| at the root, or the largest fit residual for fitted constants.
    pub residual: f64,
    pub tol: f64,
    /// Inputs and by-products, e.g. `d` for α₀′ or `alpha_prime` for λ′.
    pub params: BTreeMap<String, f64>,
}

impl SpecialConstant {
    fn checked(
        name: ConstantName,
        value: f64,
        route: Route,
        residual: f64,
        tol: f64,
        params: &[(&str, f64)],
    ) -> Result<Self> {
        if !value.is_finite() || !(residual <= tol) {
            return Err(Error::Convergence(format!(
                "{name:?} via {route:?}: residual {residual:e} exceeds {tol:e}"
            )));
        }
        let params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Ok(Self { name, value, route, residual, tol, params })
    }
}

fn check_alpha_d(alpha: f64, d: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in [0, 1)")));
    }
    if !(d >= 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("d = {d} must be finite and >= 0")));
    }
    Ok(())
}

/// ∫₀^{3π/2} t^{−α} cos t dt by quadrature.
pub fn cosine_integral(alpha: f64) -> Result<f64> {
    weighted_cosine_integral(alpha, 0.0)
}

/// ∫₀^{3π/2} t^{−α} cos t (1 − 2t/3π)^d dt by quadrature.
pub fn weighted_cosine_integral(alpha: f64, d: f64) -> Result<f64> {
    check_alpha_d(alpha, d)?;
    let f = |t: f64| {
        let w = if d == 0.0 { 1.0 } else { ((UPPER - t) / UPPER).max(0.0).powf(d) };
        t.powf(-alpha) * t.cos() * w
    };
    Ok(quad_singular(f, 0.0, UPPER, QUAD_TOL)?.value)
}

/// Closed form of the d-weighted integral through ₂F₃.
pub fn p_closed(alpha: f64, d: f64) -> Result<f64> {
    check_alpha_d(alpha, d)?;
    let pre = gamma_fn(1.0 + d)? * gamma_fn(1.0 - alpha)? / gamma_fn(2.0 - alpha + d)?;
    let f = hyp2f3(
        (1.0 - alpha) / 2.0,
        1.0 - alpha / 2.0,
        0.5,
        (2.0 - alpha + d) / 2.0,
        (3.0 - alpha + d) / 2.0,
        HYP_ARG,
    )?;
    Ok(pre * UPPER.powf(1.0 - alpha) * f)
}

/// Closed form of ∫₀^{3π/2} t^{−α} cos t dt.
pub fn k_closed(alpha: f64) -> Result<f64> {
    check_alpha_d(alpha, 0.0)?;
    let pre = gamma_fn(1.0 - alpha)? / gamma_fn(2.0 - alpha)?;
    let f = hyp2f3(
        (1.0 - alpha) / 2.0,
        1.0 - alpha / 2.0,
        0.5,
        (2.0 - alpha) / 2.0,
        (3.0 - alpha) / 2.0,
        HYP_ARG,
    )?;
    Ok(pre * UPPER.powf(1.0 - alpha) * f)
}

/// Series for P(α, d) − K(α).
pub fn h_corr(alpha: f64, d: f64) -> Result<f64> {
    check_alpha_d(alpha, d)?;
    if d == 0.0 {
        return Ok(0.0);
    }
    let g1d = gamma_fn(1.0 + d)?;
    let mut coef = 1.0;
    let mut sum = KahanSum::default();
    let mut small = 0;
    for k in 0..10_000usize {
        let kf = k as f64;
        let diff = g1d * recip_gamma(2.0 - alpha + d + 2.0 * kf) - recip_gamma(2.0 - alpha + 2.0 * kf);
        let term = coef * diff;
        sum.add(term);
        if term == 0.0 || term.abs() < 1e-16 * sum.value().abs() {
            small += 1;
            if small == 5 {
                return Ok(UPPER.powf(1.0 - alpha) * gamma_fn(1.0 - alpha)? * sum.value());
            }
        } else {
            small = 0;
        }
        coef *= ((1.0 - alpha) / 2.0 + kf) * (1.0 - alpha / 2.0 + kf) * 4.0 * HYP_ARG
            / ((0.5 + kf) * (kf + 1.0));
    }
    Err(Error::Convergence("h correction series".into()))
}

/// Root of f in [0, 1): a root at 0 is accepted when |f(0)| ≤ 1e-12, and the
/// bracket is located by stepping α upward in 0.05 increments.
fn root_in_unit<F: Fn(f64) -> Result<f64>>(f: F, what: &str) -> Result<(f64, f64)> {
    let f0 = f(0.0)?;
    if f0.abs() <= 1e-12 {
        return Ok((0.0, f0.abs()));
    }
    if f0 > 0.0 {
        return Err(Error::RootOutOfRange(format!("{what}: integral is already positive at alpha = 0")));
    }
    let mut prev = 0.0;
    for i in 1..=19 {
        let a = 0.05 * i as f64;
        if f(a)? > 0.0 {
            let mut err = None;
            let root = brent_root(
                |x| {
                    f(x).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        f64::NAN
                    })
                },
                prev,
                a,
                ROOT_X_TOL,
            );
            if let Some(e) = err {
                return Err(e);
            }
            let root = root?;
            return Ok((root, f(root)?.abs()));
        }
        prev = a;
    }
    Err(Error::RootOutOfRange(format!("{what}: no sign change in [0, 0.95]")))
}

/// α₀: zero of ∫₀^{3π/2} t^{−α} cos t dt, by quadrature and Brent.
pub fn alpha0() -> Result<SpecialConstant> {
    let (root, res) = root_in_unit(cosine_integral, "alpha0")?;
    SpecialConstant::checked(ConstantName::Alpha0, root, Route::QuadratureRoot, res, ROOT_RESIDUAL_TOL, &[])
}

/// α₀ as the zero of the closed form K(α).
pub fn alpha0_hyp2f3() -> Result<SpecialConstant> {
    let (root, res) = root_in_unit(k_closed, "alpha0")?;
    SpecialConstant::checked(ConstantName::Alpha0, root, Route::Hyp2f3Root, res, ROOT_RESIDUAL_TOL, &[])
}

fn check_d(d: f64) -> Result<()> {
    check_alpha_d(0.0, d)
}

/// α₀′(d): zero in [0, 1) of the d-weighted cosine integral.
pub fn alpha0_prime(d: f64) -> Result<SpecialConstant> {
    check_d(d)?;
    let (root, res) = root_in_unit(|a| weighted_cosine_integral(a, d), "alpha0_prime")?;
    SpecialConstant::checked(
        ConstantName::Alpha0Prime,
        root,
        Route::QuadratureRoot,
        res,
        ROOT_RESIDUAL_TOL,
        &[("d", d)],
    )
}

/// α₀′(d) as the zero of the closed form P(α, d).
pub fn alpha0_prime_hyp2f3(d: f64) -> Result<SpecialConstant> {
    check_d(d)?;
    let (root, res) = root_in_unit(|a| p_closed(a, d), "alpha0_prime")?;
    SpecialConstant::checked(
        ConstantName::Alpha0Prime,
        root,
        Route::Hyp2f3Root,
        res,
        ROOT_RESIDUAL_TOL,
        &[("d", d)],
    )
}

/// Cubic least-squares fit of α₀′(d) on d = 0, 0.02, ..., 0.2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionFit {
    pub beta0: SpecialConstant,
    pub beta1: SpecialConstant,
    /// Fitted polynomial coefficients, constant term first.
    pub coefficients: [f64; 4],
    pub samples: Vec<(f64, f64)>,
}

/// Solves A x = b for a small dense system by Gaussian elimination with partial pivoting.
fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Result<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Domain("singular least-squares system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let tail: f64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

/// β₀ and β₁ in α₀′(d) ≈ α₀ − β₀ d − β₁ d².
pub fn expansion_fit() -> Result<ExpansionFit> {
    const SPAN: f64 = 0.2;
    let samples = (0..=10)
        .map(|i| {
            let d = 0.02 * i as f64;
            alpha0_prime(d).map(|c| (d, c.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ata = [[0.0; 4]; 4];
    let mut atb = [0.0; 4];
    for &(d, y) in &samples {
        let u = d / SPAN;
        let row = [1.0, u, u * u, u * u * u];
        for i in 0..4 {
            atb[i] += row[i] * y;
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let g = solve_dense(ata, atb)?;
    let coefficients = [g[0], g[1] / SPAN, g[2] / (SPAN * SPAN), g[3] / (SPAN * SPAN * SPAN)];
    let fit = |d: f64| coefficients.iter().rev().fold(0.0, |acc, c| acc * d + c);
    let residual = samples.iter().map(|&(d, y)| (fit(d) - y).abs()).fold(0.0, f64::max);
    let extra = [("fit_constant", coefficients[0])];
    Ok(ExpansionFit {
        beta0: SpecialConstant::checked(ConstantName::Beta0, -coefficients[1], Route::ExpansionFit, residual, FIT_TOL, &extra)?,
        beta1: SpecialConstant::checked(ConstantName::Beta1, -coefficients[2], Route::ExpansionFit, residual, FIT_TOL, &extra)?,
        coefficients,
        samples,
    })
}

/// ∫₀^{j_{α,2}} t^{−α} J_α(t) dt.
pub fn bessel_integral(alpha: f64) -> Result<f64> {
    let upper = bessel_zero(alpha, 2)?;
    let err = RefCell::new(None);
    let q = quad_singular(
        |t| {
            bessel_j_scaled(alpha, t).unwrap_or_else(|e| {
                err.borrow_mut().get_or_insert(e);
                f64::NAN
            })
        },
        0.0,
        upper,
        QUAD_TOL,
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(q?.value)
}

/// λ′ = α′ + 1/2 where α′ ∈ (−1/2, 1/2) zeroes the Bessel integral.
pub fn lambda_prime() -> Result<SpecialConstant> {
    let mut err = None;
    let root = brent_root(
        |a| {
            bessel_integral(a).unwrap_or_else(|e| {
                err.get_or_insert(e);
                f64::NAN
            })
        },
        -0.49,
        0.49,
        ROOT_X_TOL,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let root = root?;
    let residual = bessel_integral(root)?.abs();
    SpecialConstant::checked(
        ConstantName::LambdaPrime,
        root + 0.5,
        Route::BesselQuadratureRoot,
        residual,
        ROOT_RESIDUAL_TOL,
        &[("alpha_prime", root), ("j_alpha_2", bessel_zero(root, 2)?)],
    )
}

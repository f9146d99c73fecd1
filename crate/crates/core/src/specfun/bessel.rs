//! Bessel J of real order by its ascending series, and its positive zeros.

use super::gamma::recip_gamma;
use super::roots::brent_root;
use super::KahanSum;
use crate::error::{Error, Result};

/// Largest argument accepted by the series.
pub const T_MAX: f64 = 30.0;
const ZERO_SCAN_STEP: f64 = 0.05;

fn check(nu: f64, t: f64) -> Result<()> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("Bessel order must exceed -1, got {nu}")));
    }
    if !(0.0..=T_MAX).contains(&t) {
        return Err(Error::Range { arg: t, range: format!("[0, {T_MAX}]") });
    }
    Ok(())
}

/// t^{−ν} J_ν(t) = 2^{−ν} Σ_m (−t²/4)^m / (m! Γ(ν+m+1)), an entire function of t.
///
/// Cancellation in the alternating series costs about e^t·ε in absolute terms.
pub fn bessel_j_scaled(nu: f64, t: f64) -> Result<f64> {
    check(nu, t)?;
    let x = -0.25 * t * t;
    let mut term = recip_gamma(nu + 1.0);
    let mut sum = KahanSum::default();
    let mut m = 0usize;
    loop {
        sum.add(term);
        let mf = m as f64;
        term *= x / ((mf + 1.0) * (nu + mf + 1.0));
        m += 1;
        if mf > 0.5 * t && term.abs() <= 1e-17 * sum.value().abs().max(1e-300) {
            break;
        }
        if m > 500 {
            return Err(Error::Convergence("Bessel series".into()));
        }
    }
    Ok(sum.value() * 2f64.powf(-nu))
}

/// J_ν(t) for ν > −1 and 0 ≤ t ≤ 30.
pub fn bessel_j(nu: f64, t: f64) -> Result<f64> {
    check(nu, t)?;
    if t == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    Ok(bessel_j_scaled(nu, t)? * t.powf(nu))
}

/// m-th positive zero j_{ν,m}, found by scanning t^{−ν}J_ν on a 0.05 grid and
/// polishing with Brent.
pub fn bessel_zero(nu: f64, m: usize) -> Result<f64> {
    check(nu, 0.0)?;
    if m == 0 {
        return Err(Error::Domain("zero index starts at 1".into()));
    }
    let f = |t: f64| bessel_j_scaled(nu, t).unwrap_or(f64::NAN);
    let mut prev_t = 0.0;
    let mut prev = f(0.0);
    let mut seen = 0;
    let steps = (T_MAX / ZERO_SCAN_STEP).round() as usize;
    for i in 1..=steps {
        let t = i as f64 * ZERO_SCAN_STEP;
        let v = f(t);
        if v == 0.0 || v.signum() != prev.signum() {
            seen += 1;
            if seen == m {
                return brent_root(f, prev_t, t, 1e-14);
            }
        }
        prev_t = t;
        prev = v;
    }
    Err(Error::RootOutOfRange(format!("zero {m} of J_{nu} beyond t = {T_MAX}")))
}

//! ₂F₃ by its power series.

use super::KahanSum;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 10_000;

fn check_lower(b: f64) -> Result<()> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Pole(b));
    }
    Ok(())
}

/// ₂F₃(a1, a2; b1, b2, b3; z), summed until five consecutive terms fall
/// below 1e-16 of the running sum.
pub fn hyp2f3(a1: f64, a2: f64, b1: f64, b2: f64, b3: f64, z: f64) -> Result<f64> {
    for b in [b1, b2, b3] {
        check_lower(b)?;
    }
    let mut sum = KahanSum::default();
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        sum.add(term);
        if term.abs() < 1e-16 * sum.value().abs() || term == 0.0 {
            small += 1;
            if small == 5 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
        let kf = k as f64;
        term *= (a1 + kf) * (a2 + kf) / ((b1 + kf) * (b2 + kf) * (b3 + kf) * (kf + 1.0)) * z;
        if !term.is_finite() {
            break;
        }
    }
    Err(Error::Convergence("2F3 series".into()))
}

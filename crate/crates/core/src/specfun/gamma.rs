//! Γ by the Lanczos approximation (g = 7, nine terms) with reflection.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x here is the shifted argument z − 1
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0))
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x). Non-positive integers are poles.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() || is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    // split the power to stay finite up to x ≈ 171
    let p = t.powf((z + 0.5) / 2.0);
    Ok((2.0 * PI).sqrt() * p * (p * (-t).exp()) * lanczos_sum(z))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// 1/Γ(x); zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if x > 20.0 {
        return (-ln_gamma(x).expect("positive argument")).exp();
    }
    1.0 / gamma_fn(x).expect("pole excluded above")
}

//! Turns flags into polynomials and coefficient sequences.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use postrig::seqkit::{ck_sequence, ek_sequence, koumandos_bk, qk_sequence, vietoris_gamma};
use postrig::sums;
use postrig::trigeval::half_angle_derivative_negated;
use postrig::{CoefficientSequence, TrigKind, TrigPolynomial};

use crate::args::{Params, SeqFamily, SumFamily};
use crate::Failure;

fn need(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
}

fn need_n(n: Option<usize>) -> Result<usize, Failure> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(Failure::Usage("--n must be at least 1".into())),
        None => Err(Failure::Usage("--n is required for this family".into())),
    }
}

/// A sum to certify, its default interval and the parameters that built it.
pub struct Built {
    pub poly: TrigPolynomial,
    pub hi: f64,
    pub params: BTreeMap<String, f64>,
}

pub fn build_sum(family: SumFamily, n: Option<usize>, p: &Params) -> Result<Built, Failure> {
    use SumFamily::*;
    let mut params = BTreeMap::new();
    let mut record = |name: &str, v: f64| {
        params.insert(name.to_string(), v);
        v
    };
    let mut hi = PI;
    let poly = match family {
        QkSine | QkCosine | RatioSine | HalfAngleDerivative => {
            let n = record("n", need_n(n)? as f64) as usize;
            let a = record("alpha", need(p.alpha, "alpha")?);
            let b = record("beta", need(p.beta, "beta")?);
            let l = record("lambda", need(p.lambda, "lambda")?);
            let m = record("mu", need(p.mu, "mu")?);
            match family {
                QkSine => sums::qk_sine(n, a, b, l, m),
                QkCosine => sums::qk_cosine(n, a, b, l, m),
                RatioSine => sums::ratio_sine(n, a, b, l, m),
                _ => half_angle_derivative_negated(n, a, b, l, m),
            }
        }
        CkCosine | CkSineOdd | CkSineEven | EkHalfAngle | ShiftedCosine | ShiftedSine => {
            let n = record("n", need_n(n)? as f64) as usize;
            let a = record("alpha", need(p.alpha, "alpha")?);
            let b = record("b", need(p.b, "b")?);
            let c = record("c", need(p.c, "c")?);
            match family {
                CkCosine => sums::ck_cosine(n, a, b, c),
                CkSineOdd => sums::ck_sine(n, a, b, c, true),
                CkSineEven => sums::ck_sine(n, a, b, c, false),
                EkHalfAngle => sums::ck_half_angle_factor(n, a, b, c),
                _ => {
                    hi = 2.0 * PI;
                    let shift = record("shift", need(p.shift, "shift")?);
                    let kind = if family == ShiftedCosine { TrigKind::Cosine } else { TrigKind::Sine };
                    ek_sequence(n, a, b, c).and_then(|e| sums::shifted_sum(&e, kind, shift))
                }
            }
        }
        RawSine => {
            let coeffs = p.coeffs.clone().ok_or_else(|| Failure::Usage("--coeffs is required".into()))?;
            TrigPolynomial::sine(coeffs)
        }
        RawCosine => {
            // a_0 + Σ a_k cos kθ
            let coeffs = p.coeffs.clone().ok_or_else(|| Failure::Usage("--coeffs is required".into()))?;
            if coeffs.is_empty() {
                return Err(Failure::Usage("--coeffs is empty".into()));
            }
            TrigPolynomial::cosine(2.0 * coeffs[0], coeffs[1..].to_vec())
        }
    };
    let poly = poly.map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Built { poly, hi, params })
}

pub fn build_sequence(family: Option<SeqFamily>, n: Option<usize>, first_index: usize, p: &Params) -> Result<CoefficientSequence, Failure> {
    let usage = |e: postrig::Error| Failure::Usage(e.to_string());
    let Some(family) = family else {
        let coeffs = p.coeffs.clone().ok_or_else(|| Failure::Usage("give --family or --coeffs".into()))?;
        return CoefficientSequence::custom(coeffs, first_index).map_err(usage);
    };
    let n = need_n(n)?;
    match family {
        SeqFamily::Vietoris => Ok(vietoris_gamma(n)),
        SeqFamily::Qk => qk_sequence(n, need(p.alpha, "alpha")?, need(p.beta, "beta")?, need(p.lambda, "lambda")?, need(p.mu, "mu")?).map_err(usage),
        SeqFamily::Koumandos => koumandos_bk(n, need(p.alpha, "alpha")?).map_err(usage),
        SeqFamily::Ck => ck_sequence(n, need(p.alpha, "alpha")?, need(p.b, "b")?, need(p.c, "c")?).map_err(usage),
        SeqFamily::Ek => ek_sequence(n, need(p.alpha, "alpha")?, need(p.b, "b")?, need(p.c, "c")?).map_err(usage),
    }
}

//! The concrete trigonometric sums, assembled from coefficient families.

use crate::error::{Error, Result};
use crate::seqkit::{ck_sequence, ek_sequence, qk_sequence, ratio_qk_sequence, CoefficientSequence};
use crate::trigeval::{TrigKind, TrigPolynomial};

/// Ŝ_n(θ) = sin θ + Σ_{k=2}^{n} q_k sin kθ.
pub fn qk_sine(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<TrigPolynomial> {
    let q = qk_sequence(n, alpha, beta, lambda, mu)?;
    TrigPolynomial::sine(q.values()[1..].to_vec())
}

/// Ĉ_n(θ) = 1 + cos θ + Σ_{k=2}^{n} q_k cos kθ (q_0 = 2 under the a0/2 convention).
pub fn qk_cosine(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<TrigPolynomial> {
    let q = qk_sequence(n, alpha, beta, lambda, mu)?;
    TrigPolynomial::cosine(q.values()[0], q.values()[1..].to_vec())
}

/// S̃_n(θ) = sin θ + Σ_{k=2}^{n} (k+α)^λ/(k+β)^μ sin kθ.
pub fn ratio_sine(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<TrigPolynomial> {
    let r = ratio_qk_sequence(n, alpha, beta, lambda, mu)?;
    TrigPolynomial::sine(r.values().to_vec())
}

/// Σ_{k=0}^{2n+1} c_k cos kθ.
pub fn ck_cosine(n: usize, alpha: f64, b: f64, c: f64) -> Result<TrigPolynomial> {
    full_cosine(&ck_sequence(n, alpha, b, c)?)
}

/// Σ_{k=1}^{m} c_k sin kθ for m = 2n (even) or 2n + 1 (odd).
pub fn ck_sine(n: usize, alpha: f64, b: f64, c: f64, odd: bool) -> Result<TrigPolynomial> {
    let seq = ck_sequence(n, alpha, b, c)?;
    let top = if odd { 2 * n + 1 } else { 2 * n };
    if top == 0 {
        return Err(Error::Size("even sine sum needs n >= 1".into()));
    }
    TrigPolynomial::sine(seq.values()[1..=top].to_vec())
}

/// G(θ) = Σ_{j=0}^{n} e_j cos((2j + ½)θ). The paired cosine sum equals 2cos(θ/2)·G(θ),
/// and the odd sine sum satisfies S(π − θ) = 2 sin(θ/2)·G(θ).
pub fn ck_half_angle_factor(n: usize, alpha: f64, b: f64, c: f64) -> Result<TrigPolynomial> {
    half_angle_cosine(&ek_sequence(n, alpha, b, c)?)
}

/// Σ_{k=0}^{n} e_k cos((2k + ½)θ) for any e_0..e_n.
pub fn half_angle_cosine(e: &CoefficientSequence) -> Result<TrigPolynomial> {
    TrigPolynomial::shifted(e.dense_from_zero(), TrigKind::Cosine, 0.5, 2)
}

/// Σ_{k=0}^{n} e_k trig((k + shift)θ).
pub fn shifted_sum(e: &CoefficientSequence, kind: TrigKind, shift: f64) -> Result<TrigPolynomial> {
    TrigPolynomial::shifted(e.dense_from_zero(), kind, shift, 1)
}

/// Σ_{k=0}^{n} a_k cos kθ with a full a_0 term.
pub fn full_cosine(a: &CoefficientSequence) -> Result<TrigPolynomial> {
    TrigPolynomial::shifted(a.dense_from_zero(), TrigKind::Cosine, 0.0, 1)
}

/// a_0/2 + Σ_{k≥1} a_k cos kθ.
pub fn half_constant_cosine(a: &CoefficientSequence) -> Result<TrigPolynomial> {
    let dense = a.dense_from_zero();
    TrigPolynomial::cosine(dense[0], dense[1..].to_vec())
}

/// Σ_{k≥1} a_k sin kθ (a_0, if present, is ignored).
pub fn sine_from(a: &CoefficientSequence) -> Result<TrigPolynomial> {
    let dense = a.dense_from_zero();
    if dense.len() < 2 {
        return Err(Error::Size("sine sum needs a_1".into()));
    }
    TrigPolynomial::sine(dense[1..].to_vec())
}

//! Stable evaluation of finite trigonometric sums.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::seqkit::qk_weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrigKind {
    Cosine,
    Sine,
}

/// a0/2 + Σ_j [a_j cos(ω_j θ) + b_j sin(ω_j θ)] with ω_j = stride·(first_k + j) + shift.
///
/// The usual Fourier layout has `first_k = 1` and `shift = 0`. Sums written
/// from k = 0, such as Σ e_k cos(k + ¼)θ, use `first_k = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    a0: f64,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
    shift: f64,
    stride: u32,
    first_k: usize,
}

impl TrigPolynomial {
    /// General constructor; validates every invariant.
    pub fn with_layout(
        a0: f64,
        cos_coeffs: Vec<f64>,
        sin_coeffs: Vec<f64>,
        shift: f64,
        stride: u32,
        first_k: usize,
    ) -> Result<Self> {
        if !(stride == 1 || stride == 2) {
            return domain(format!("stride must be 1 or 2, got {stride}"));
        }
        if !(0.0..1.0).contains(&shift) {
            return domain(format!("shift must lie in [0, 1), got {shift}"));
        }
        if cos_coeffs.is_empty() && sin_coeffs.is_empty() && a0 == 0.0 {
            return Err(Error::Size("polynomial has no terms".into()));
        }
        if !a0.is_finite() || cos_coeffs.iter().chain(&sin_coeffs).any(|c| !c.is_finite()) {
            return domain("coefficients must be finite");
        }
        Ok(Self { a0, cos_coeffs, sin_coeffs, shift, stride, first_k })
    }

    /// a0/2 + Σ_{k=1}^{n} (a_k cos kθ + b_k sin kθ).
    pub fn new(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        Self::with_layout(a0, cos_coeffs, sin_coeffs, 0.0, 1, 1)
    }

    /// Σ_{k=1}^{n} b_k sin kθ.
    pub fn sine(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(0.0, Vec::new(), coeffs)
    }

    /// a0/2 + Σ_{k=1}^{n} a_k cos kθ.
    pub fn cosine(a0: f64, coeffs: Vec<f64>) -> Result<Self> {
        Self::new(a0, coeffs, Vec::new())
    }

    /// Σ_{k=0}^{n} e_k trig((stride·k + shift)θ).
    pub fn shifted(coeffs: Vec<f64>, kind: TrigKind, shift: f64, stride: u32) -> Result<Self> {
        match kind {
            TrigKind::Cosine => Self::with_layout(0.0, coeffs, Vec::new(), shift, stride, 0),
            TrigKind::Sine => Self::with_layout(0.0, Vec::new(), coeffs, shift, stride, 0),
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos_coeffs
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin_coeffs
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn stride(&self) -> u32 {
        self.stride
    }

    pub fn first_k(&self) -> usize {
        self.first_k
    }

    /// Frequency of the j-th stored coefficient.
    pub fn frequency(&self, j: usize) -> f64 {
        self.stride as f64 * (self.first_k + j) as f64 + self.shift
    }

    /// Highest frequency carried by a nonzero slot.
    pub fn degree(&self) -> f64 {
        let n = self.cos_coeffs.len().max(self.sin_coeffs.len());
        if n == 0 {
            0.0
        } else {
            self.frequency(n - 1)
        }
    }

    /// Σ ω^p (|a| + |b|), plus |a0|/2 when p = 0.
    pub fn weighted_abs_sum(&self, p: i32) -> f64 {
        let pair = |coeffs: &[f64]| -> f64 {
            coeffs.iter().enumerate().map(|(j, c)| self.frequency(j).powi(p) * c.abs()).sum()
        };
        let constant = if p == 0 { self.a0.abs() / 2.0 } else { 0.0 };
        constant + pair(&self.cos_coeffs) + pair(&self.sin_coeffs)
    }

    /// θ-derivative, in the same layout.
    pub fn derivative(&self) -> Self {
        let scaled = |coeffs: &[f64], sign: f64| -> Vec<f64> {
            coeffs.iter().enumerate().map(|(j, c)| sign * self.frequency(j) * c).collect()
        };
        Self {
            a0: 0.0,
            cos_coeffs: scaled(&self.sin_coeffs, 1.0),
            sin_coeffs: scaled(&self.cos_coeffs, -1.0),
            shift: self.shift,
            stride: self.stride,
            first_k: self.first_k,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mul = |v: &[f64]| v.iter().map(|c| c * factor).collect();
        Self {
            a0: self.a0 * factor,
            cos_coeffs: mul(&self.cos_coeffs),
            sin_coeffs: mul(&self.sin_coeffs),
            ..self.clone()
        }
    }

    /// Value at θ.
    pub fn eval(&self, theta: f64) -> f64 {
        let phi = (self.stride as f64 * theta).rem_euclid(TAU);
        let (cc, cs) = clenshaw(&self.cos_coeffs, self.first_k, phi);
        let (sc, ss) = clenshaw(&self.sin_coeffs, self.first_k, phi);
        let mut value = self.a0 / 2.0;
        if self.shift == 0.0 {
            value += cc + ss;
        } else {
            let (s, c) = (self.shift * theta).sin_cos();
            value += c * cc - s * cs + s * sc + c * ss;
        }
        value
    }
}

/// Returns (Σ c_k cos kφ, Σ c_k sin kφ) where `coeffs[j]` is c_{first_k + j}.
///
/// One backward pass serves both sums. Reinsch's modification is used away
/// from φ = π/2 to keep the recurrence accurate near φ = 0 and φ = π.
pub fn clenshaw(coeffs: &[f64], first_k: usize, phi: f64) -> (f64, f64) {
    let n = first_k + coeffs.len();
    if coeffs.is_empty() {
        return (0.0, 0.0);
    }
    let c = |k: usize| if k < first_k { 0.0 } else { coeffs[k - first_k] };
    let c0 = c(0);
    if n == 1 {
        return (c0, 0.0);
    }
    let (sin_phi, cos_phi) = phi.sin_cos();
    let mut b1 = 0.0;
    let cos_sum = if cos_phi >= 0.0 {
        let s = (phi / 2.0).sin();
        let lambda = -4.0 * s * s;
        let mut d = 0.0;
        for k in (1..n).rev() {
            d += c(k) + lambda * b1;
            b1 += d;
        }
        c0 + (d + 0.5 * lambda * b1)
    } else {
        let h = (phi / 2.0).cos();
        let mu = 4.0 * h * h;
        let mut e = 0.0;
        for k in (1..n).rev() {
            e = c(k) + mu * b1 - e;
            b1 = e - b1;
        }
        c0 + (0.5 * mu * b1 - e)
    };
    (cos_sum, b1 * sin_phi)
}

/// Σ_{k=1}^{n} coeffs[k−1] sin kθ.
pub fn eval_sine_sum(coeffs: &[f64], theta: f64) -> f64 {
    clenshaw(coeffs, 1, theta.rem_euclid(TAU)).1
}

/// a0/2 + Σ_{k=1}^{n} coeffs[k−1] cos kθ.
pub fn eval_cosine_sum(a0: f64, coeffs: &[f64], theta: f64) -> f64 {
    a0 / 2.0 + clenshaw(coeffs, 1, theta.rem_euclid(TAU)).0
}

/// Evaluates the cosine or sine part of `poly` at θ, through the
/// angle-addition split into unshifted sums.
pub fn eval_shifted_sum(poly: &TrigPolynomial, theta: f64, kind: TrigKind) -> f64 {
    let part = match kind {
        TrigKind::Cosine => TrigPolynomial { sin_coeffs: Vec::new(), ..poly.clone() },
        TrigKind::Sine => TrigPolynomial { a0: 0.0, cos_coeffs: Vec::new(), ..poly.clone() },
    };
    part.eval(theta)
}

/// Coefficients of C(θ) (from k = 0) and S(θ) (from k = 1).
fn half_angle_parts(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> (Vec<f64>, Vec<f64>) {
    let mut c = vec![1.0, 1.0];
    let mut s = vec![1.0];
    for k in 2..=n {
        let q = qk_weight(k, alpha, beta, lambda, mu);
        c.push(q / k as f64);
        s.push(q);
    }
    c.truncate(n + 1);
    s.truncate(n);
    (c, s)
}

/// d/dθ of cos(θ/2)·C(θ), computed in closed form as −½ sin(θ/2)C(θ) − cos(θ/2)S(θ).
///
/// C(θ) = 1 + cos θ + Σ_{k=2}^{n} cos kθ / (k (k+α)^λ (k+β)^μ) and S = −C′.
pub fn eval_half_angle_derivative(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64, theta: f64) -> f64 {
    let (c, s) = half_angle_parts(n.max(1), alpha, beta, lambda, mu);
    let cc = clenshaw(&c, 0, theta.rem_euclid(TAU)).0;
    let ss = eval_sine_sum(&s, theta);
    let (sh, ch) = (theta / 2.0).sin_cos();
    -0.5 * sh * cc - ch * ss
}

/// The negated derivative above as a pure sine sum Σ_{j=0}^{n} d_j sin((j+½)θ).
pub fn half_angle_derivative_negated(
    n: usize,
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
) -> Result<TrigPolynomial> {
    if n < 1 {
        return Err(Error::Size("n must be >= 1".into()));
    }
    let (c, s) = half_angle_parts(n, alpha, beta, lambda, mu);
    let mut d = vec![0.0; n + 1];
    d[0] += 0.5 * c[0];
    for k in 1..=n {
        d[k] += 0.25 * c[k] + 0.5 * s[k - 1];
        d[k - 1] += -0.25 * c[k] + 0.5 * s[k - 1];
    }
    TrigPolynomial::shifted(d, TrigKind::Sine, 0.5, 1)
}

/// σ_k(x) = Σ_{j=1}^{k} (k−j+1) sin jx.
pub fn fejer_sigma(k: usize, x: f64) -> f64 {
    (1..=k).map(|j| (k - j + 1) as f64 * (j as f64 * x).sin()).sum()
}

/// h_k(x) = Σ_{j=1}^{k−1} sin jx + ½ sin kx.
pub fn fejer_h(k: usize, x: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    (1..k).map(|j| (j as f64 * x).sin()).sum::<f64>() + 0.5 * (k as f64 * x).sin()
}

/// Right side of the Abel summation identity
/// Σ_{k=0}^{n−1} (b_k − b_{k+1}) Σ_{j≤k} c_j + b_n Σ_{j≤n} c_j.
pub fn abel_resum(b: &[f64], c: &[f64]) -> Result<f64> {
    if b.len() != c.len() || b.is_empty() {
        return Err(Error::Size(format!(
            "abel_resum needs equal non-empty lengths, got {} and {}",
            b.len(),
            c.len()
        )));
    }
    let n = b.len() - 1;
    let mut partial = 0.0;
    let mut total = 0.0;
    for k in 0..n {
        partial += c[k];
        total += (b[k] - b[k + 1]) * partial;
    }
    partial += c[n];
    Ok(total + b[n] * partial)
}

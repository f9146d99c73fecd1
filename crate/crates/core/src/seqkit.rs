//! Coefficient families and the coefficient-side positivity criteria.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Slack below which an inequality counts as violated.
pub const CRITERION_TOL: f64 = -1e-12;

/// Which construction produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Vietoris,
    Qk,
    RatioQk,
    Koumandos,
    Ck,
    /// The unpaired B_{n−k}/B_n·(1−α)_k/k! sequence, i.e. every other c_k.
    Ek,
    Custom,
}

/// Finite real coefficients a_{first_index}, a_{first_index+1}, ...
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    values: Vec<f64>,
    family: Family,
    params: BTreeMap<String, f64>,
    first_index: usize,
}

impl CoefficientSequence {
    /// User-supplied coefficients starting at index `first_index`.
    pub fn custom(values: Vec<f64>, first_index: usize) -> Result<Self> {
        Self::build(values, Family::Custom, BTreeMap::new(), first_index)
    }

    fn build(
        values: Vec<f64>,
        family: Family,
        params: BTreeMap<String, f64>,
        first_index: usize,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Size("coefficient sequence is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("coefficient at position {i} is not finite"));
        }
        if family != Family::Custom {
            if let Some(i) = values.iter().position(|&v| v <= 0.0) {
                return domain(format!(
                    "{family:?} coefficient a_{} = {} is not positive",
                    i + first_index,
                    values[i]
                ));
            }
        }
        Ok(Self { values, family, params, first_index })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    /// Index of `values()[0]`.
    pub fn first_index(&self) -> usize {
        self.first_index
    }

    /// Largest index carried.
    pub fn max_index(&self) -> usize {
        self.first_index + self.values.len() - 1
    }

    /// Coefficient a_k, if stored.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(self.first_index).and_then(|i| self.values.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coefficients re-indexed from zero, padding missing low indices with zero.
    pub fn dense_from_zero(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.first_index];
        out.extend_from_slice(&self.values);
        out
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// (x)_k / k! by forward product.
pub fn rising_over_factorial(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64) / (j as f64 + 1.0))
}

/// Rising factorial (x)_k by forward product.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

/// Expands per-pair values p_0, p_1, ... into [p_0, p_0, p_1, p_1, ...] truncated to `len`.
fn paired(pairs: impl Iterator<Item = f64>, len: usize) -> Vec<f64> {
    pairs.flat_map(|p| [p, p]).take(len).collect()
}

/// (x)_k/k! for k = 0..count, each from the previous one.
fn pochhammer_ratios(x: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).scan(1.0, move |acc, k| {
        let cur = *acc;
        *acc *= (x + k as f64) / (k as f64 + 1.0);
        Some(cur)
    })
}

/// γ_0..γ_n with γ_{2k} = γ_{2k+1} = (1/2)_k / k!.
pub fn vietoris_gamma(n: usize) -> CoefficientSequence {
    let values = paired(pochhammer_ratios(0.5, n / 2 + 1), n + 1);
    CoefficientSequence::build(values, Family::Vietoris, params(&[("n", n as f64)]), 0)
        .expect("vietoris coefficients are positive")
}

fn check_nonneg_shifts(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite()) {
        return domain("alpha and beta must be finite");
    }
    if alpha < 0.0 || beta < 0.0 {
        return domain(format!("alpha = {alpha} and beta = {beta} must be >= 0"));
    }
    Ok(())
}

/// (k+α)^{−λ}(k+β)^{−μ}.
pub fn qk_weight(k: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> f64 {
    (k as f64 + alpha).powf(-lambda) * (k as f64 + beta).powf(-mu)
}

/// [q_0 = 2, q_1 = 1, q_2, ..., q_n], q_k = (k+α)^{−λ}(k+β)^{−μ}.
pub fn qk_sequence(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<CoefficientSequence> {
    if n < 1 {
        return Err(Error::Size("qk sequence needs n >= 1".into()));
    }
    check_nonneg_shifts(alpha, beta)?;
    if !(lambda.is_finite() && mu.is_finite()) {
        return domain("lambda and mu must be finite");
    }
    let mut values = vec![2.0, 1.0];
    values.extend((2..=n).map(|k| qk_weight(k, alpha, beta, lambda, mu)));
    CoefficientSequence::build(
        values,
        Family::Qk,
        params(&[("n", n as f64), ("alpha", alpha), ("beta", beta), ("lambda", lambda), ("mu", mu)]),
        0,
    )
}

/// [1, r_2, ..., r_n] with r_k = (k+α)^λ/(k+β)^μ, indexed from 1.
pub fn ratio_qk_sequence(
    n: usize,
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
) -> Result<CoefficientSequence> {
    if n < 1 {
        return Err(Error::Size("ratio-qk sequence needs n >= 1".into()));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta), ("lambda", lambda), ("mu", mu)] {
        if !(v.is_finite() && v > 0.0) {
            return domain(format!("{name} = {v} must be > 0"));
        }
    }
    if alpha >= beta {
        return domain(format!("alpha < beta violated ({alpha} >= {beta})"));
    }
    if mu < 1.0 + lambda {
        return domain(format!("mu >= 1 + lambda violated ({mu} < {})", 1.0 + lambda));
    }
    if lambda * beta - alpha * mu >= 0.0 {
        return domain(format!(
            "lambda*beta - alpha*mu < 0 violated ({})",
            lambda * beta - alpha * mu
        ));
    }
    let mut values = vec![1.0];
    values.extend((2..=n).map(|k| (k as f64 + alpha).powf(lambda) / (k as f64 + beta).powf(mu)));
    CoefficientSequence::build(
        values,
        Family::RatioQk,
        params(&[("n", n as f64), ("alpha", alpha), ("beta", beta), ("lambda", lambda), ("mu", mu)]),
        1,
    )
}

fn check_open_unit(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("alpha = {alpha} must lie in (0, 1)"));
    }
    Ok(())
}

/// b_0..b_n with b_{2k} = b_{2k+1} = (1−α)_k / k!.
pub fn koumandos_bk(n: usize, alpha: f64) -> Result<CoefficientSequence> {
    check_open_unit(alpha)?;
    let values = paired(pochhammer_ratios(1.0 - alpha, n / 2 + 1), n + 1);
    CoefficientSequence::build(
        values,
        Family::Koumandos,
        params(&[("n", n as f64), ("alpha", alpha)]),
        0,
    )
}

fn check_bc(b: f64, c: f64) -> Result<()> {
    if !(b.is_finite() && c.is_finite()) {
        return domain("b and c must be finite");
    }
    if c <= 0.0 {
        return domain(format!("c = {c} must be > 0"));
    }
    if b < c {
        return domain(format!("b >= c violated ({b} < {c})"));
    }
    Ok(())
}

/// B_0..B_n with B_0 = 1 and B_k = (b)_k/(c)_k·(1+b−c)/b.
pub fn b_weights(n: usize, b: f64, c: f64) -> Vec<f64> {
    let tail = (1.0 + b - c) / b;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut ratio = 1.0;
    for k in 1..=n {
        ratio *= (b + (k - 1) as f64) / (c + (k - 1) as f64);
        out.push(ratio * tail);
    }
    out
}

fn e_values(n: usize, alpha: f64, b: f64, c: f64) -> Vec<f64> {
    let big_b = b_weights(n, b, c);
    pochhammer_ratios(1.0 - alpha, n + 1)
        .enumerate()
        .map(|(k, p)| big_b[n - k] / big_b[n] * p)
        .collect()
}

/// e_0..e_n with e_k = B_{n−k}/B_n · (1−α)_k/k!.
pub fn ek_sequence(n: usize, alpha: f64, b: f64, c: f64) -> Result<CoefficientSequence> {
    check_open_unit(alpha)?;
    check_bc(b, c)?;
    CoefficientSequence::build(
        e_values(n, alpha, b, c),
        Family::Ek,
        params(&[("n", n as f64), ("alpha", alpha), ("b", b), ("c", c)]),
        0,
    )
}

/// c_0..c_{2n+1} with c_{2k} = c_{2k+1} = e_k.
pub fn ck_sequence(n: usize, alpha: f64, b: f64, c: f64) -> Result<CoefficientSequence> {
    check_open_unit(alpha)?;
    check_bc(b, c)?;
    let values = paired(e_values(n, alpha, b, c).into_iter(), 2 * n + 2);
    CoefficientSequence::build(
        values,
        Family::Ck,
        params(&[("n", n as f64), ("alpha", alpha), ("b", b), ("c", c)]),
        0,
    )
}

/// Outcome of a coefficient criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub satisfied: bool,
    pub first_violation_index: Option<usize>,
    /// Smallest slack over all checked inequalities. Roundoff-level negative
    /// slack inside the tolerance is reported as 0.
    pub margin: f64,
    /// Belov-type partial sums; entry i belongs to n = i + 1.
    pub partial_sums: Option<Vec<f64>>,
    pub warnings: Vec<String>,
}

/// Collects slacks and remembers the smallest violating index.
struct Slack {
    min: f64,
    violation: Option<usize>,
}

impl Slack {
    fn new() -> Self {
        Self { min: f64::INFINITY, violation: None }
    }

    fn push(&mut self, index: usize, slack: f64) {
        self.min = self.min.min(slack);
        if slack < CRITERION_TOL && self.violation.is_none_or(|v| index < v) {
            self.violation = Some(index);
        }
    }

    fn finish(self, partial_sums: Option<Vec<f64>>, warnings: Vec<String>) -> CriterionReport {
        let satisfied = self.violation.is_none();
        let margin = match (satisfied, self.min) {
            (_, m) if m.is_infinite() => 0.0,
            (true, m) => m.max(0.0),
            (false, m) => m,
        };
        CriterionReport { satisfied, first_violation_index: self.violation, margin, partial_sums, warnings }
    }
}

fn require_positive(seq: &CoefficientSequence) -> Result<()> {
    for (i, &v) in seq.values().iter().enumerate() {
        if v <= 0.0 {
            return domain(format!("a_{} = {v} is not positive", i + seq.first_index()));
        }
    }
    Ok(())
}

fn push_monotone(seq: &CoefficientSequence, slack: &mut Slack) {
    for k in seq.first_index() + 1..=seq.max_index() {
        slack.push(k, seq.get(k - 1).unwrap() - seq.get(k).unwrap());
    }
}

/// Non-increasing coefficients with 2k·a_{2k} ≤ (2k−1)·a_{2k−1}.
pub fn check_vietoris(seq: &CoefficientSequence) -> Result<CriterionReport> {
    require_positive(seq)?;
    let mut slack = Slack::new();
    push_monotone(seq, &mut slack);
    for k in 1..=seq.max_index() / 2 {
        if let (Some(odd), Some(even)) = (seq.get(2 * k - 1), seq.get(2 * k)) {
            let m = 2.0 * k as f64;
            slack.push(2 * k, (m - 1.0) * odd - m * even);
        }
    }
    Ok(slack.finish(None, Vec::new()))
}

/// Belov partial sums Σ_{k=1}^{n} (−1)^{k−1} k a_k, required ≥ 0 for n ≥ 2.
pub fn check_belov(seq: &CoefficientSequence) -> Result<CriterionReport> {
    let first = seq.first_index().max(1);
    if seq.max_index() < 2 || seq.max_index() + 1 - first < 2 {
        return Err(Error::Size("Belov check needs a_1 and a_2 at least".into()));
    }
    require_positive(seq)?;
    let mut warnings = Vec::new();
    if (first + 1..=seq.max_index()).any(|k| seq.get(k).unwrap() > seq.get(k - 1).unwrap()) {
        warnings.push("coefficients are not non-increasing; the Belov criterion assumes they are".into());
    }
    let mut slack = Slack::new();
    let mut sums = Vec::with_capacity(seq.max_index());
    let mut acc = 0.0;
    for k in 1..=seq.max_index() {
        let a = seq.get(k).unwrap_or(0.0);
        let term = k as f64 * a;
        acc += if k % 2 == 1 { term } else { -term };
        sums.push(acc);
        if k >= 2 {
            slack.push(k, acc);
        }
    }
    Ok(slack.finish(Some(sums), warnings))
}

/// Weighted chain w_k = (k+α)^λ(k+β)^μ a_k non-increasing from k = 2, a_2 weight ≤ a_1, a_1 ≤ a_0/2.
pub fn check_chain_condition(
    seq: &CoefficientSequence,
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
) -> Result<CriterionReport> {
    check_nonneg_shifts(alpha, beta)?;
    require_positive(seq)?;
    if seq.first_index() != 0 || seq.len() < 2 {
        return Err(Error::Size("chain condition needs a_0 and a_1".into()));
    }
    let a = seq.values();
    let mut slack = Slack::new();
    slack.push(1, a[0] / 2.0 - a[1]);
    let mut prev = a[1];
    for (k, &ak) in a.iter().enumerate().skip(2) {
        let w = ak / qk_weight(k, alpha, beta, lambda, mu);
        slack.push(k, prev - w);
        prev = w;
    }
    Ok(slack.finish(None, Vec::new()))
}

/// Non-increasing and (b+n−k)k·a_k ≤ (c+n−k)(k−α)·a_{k−1} for 1 ≤ k ≤ n = max index.
pub fn check_bc_ratio_condition(
    seq: &CoefficientSequence,
    b: f64,
    c: f64,
    alpha: f64,
) -> Result<CriterionReport> {
    check_bc(b, c)?;
    check_open_unit(alpha)?;
    require_positive(seq)?;
    if seq.first_index() != 0 {
        return Err(Error::Size("condition needs a_0".into()));
    }
    let a = seq.values();
    let n = seq.max_index() as f64;
    let mut slack = Slack::new();
    push_monotone(seq, &mut slack);
    for k in 1..a.len() {
        let kf = k as f64;
        slack.push(k, (c + n - kf) * (kf - alpha) * a[k - 1] - (b + n - kf) * kf * a[k]);
    }
    Ok(slack.finish(None, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vietoris_small_cases() {
        assert_eq!(vietoris_gamma(1).values(), &[1.0, 1.0]);
        assert_eq!(vietoris_gamma(3).values(), &[1.0, 1.0, 0.5, 0.5]);
        assert_eq!(vietoris_gamma(5).values(), &[1.0, 1.0, 0.5, 0.5, 0.375, 0.375]);
        assert_eq!(vietoris_gamma(0).values(), &[1.0]);
    }

    #[test]
    fn qk_examples() {
        assert_eq!(qk_sequence(2, 0.0, 0.0, 1.0, 0.0).unwrap().values(), &[2.0, 1.0, 0.5]);
        assert_eq!(qk_sequence(3, 0.0, 0.0, 0.0, 0.0).unwrap().values(), &[2.0, 1.0, 1.0, 1.0]);
        let q = qk_sequence(4, 0.2, 0.4, 0.3, 0.7).unwrap();
        let via_logs = (-0.3 * 2.2f64.ln() - 0.7 * 2.4f64.ln()).exp();
        assert!((q.values()[2] - via_logs).abs() < 1e-15);
        assert!(qk_sequence(0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(qk_sequence(3, -0.1, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn ratio_qk_examples() {
        let r = ratio_qk_sequence(3, 1.0, 2.0, 0.5, 1.5).unwrap();
        assert_eq!(r.first_index(), 1);
        assert_eq!(r.values()[1], 3f64.sqrt() / 4f64.powf(1.5));
        assert_eq!(r.values()[2], 2.0 / 5f64.powf(1.5));
        assert!(r.values().windows(2).all(|w| w[1] < w[0]));
        let err = ratio_qk_sequence(3, 2.0, 1.0, 0.5, 1.5).unwrap_err();
        assert!(err.to_string().contains("alpha < beta"));
        assert!(ratio_qk_sequence(3, 1.0, 2.0, 0.5, 1.2).is_err());
    }

    #[test]
    fn koumandos_examples() {
        assert_eq!(koumandos_bk(3, 0.5).unwrap().values(), &[1.0, 1.0, 0.5, 0.5]);
        let near = koumandos_bk(3, 1.0 - 1e-12).unwrap();
        assert!((near.values()[2] - 1e-12).abs() < 1e-16);
        let b = koumandos_bk(5, 0.3084437).unwrap();
        let expect = 0.6915563 * 1.6915563 / 2.0;
        assert!((b.values()[4] - expect).abs() < 1e-15);
        assert_eq!(b.values()[4], b.values()[5]);
        assert!(koumandos_bk(3, 1.0).is_err());
        assert!(koumandos_bk(3, 0.0).is_err());
    }

    #[test]
    fn ck_examples() {
        let c = ck_sequence(1, 0.5, 2.0, 1.0).unwrap();
        assert_eq!(c.values(), &[1.0, 1.0, 0.25, 0.25]);
        let w = b_weights(4, 2.0, 2.0);
        assert_eq!(w, vec![1.0, 0.5, 0.5, 0.5, 0.5]);
        let c = ck_sequence(3, 0.3, 2.0, 2.0).unwrap();
        let k = koumandos_bk(7, 0.3).unwrap();
        for j in 0..3 {
            assert!((c.values()[2 * j] - k.values()[2 * j]).abs() < 1e-15);
        }
        assert!((c.values()[6] - 2.0 * k.values()[6]).abs() < 1e-15);
        assert!(ck_sequence(2, 0.3, 1.0, 2.0).is_err());
        assert!(ck_sequence(2, 0.3, 1.0, 0.0).is_err());
    }

    #[test]
    fn vietoris_check_examples() {
        let r = check_vietoris(&vietoris_gamma(5)).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.margin, 0.0);
        let bad = CoefficientSequence::custom(vec![1.0, 1.0, 0.9], 0).unwrap();
        let r = check_vietoris(&bad).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_violation_index, Some(2));
        let harmonic = CoefficientSequence::custom((1..=50).map(|k| 1.0 / k as f64).collect(), 1).unwrap();
        assert!(check_vietoris(&harmonic).unwrap().satisfied);
        let neg = CoefficientSequence::custom(vec![1.0, -1.0], 0).unwrap();
        assert!(matches!(check_vietoris(&neg), Err(Error::Domain(_))));
    }

    #[test]
    fn belov_examples() {
        let harmonic = CoefficientSequence::custom((1..=8).map(|k| 1.0 / k as f64).collect(), 1).unwrap();
        let r = check_belov(&harmonic).unwrap();
        assert!(r.satisfied);
        let sums = r.partial_sums.unwrap();
        for (i, s) in sums.iter().enumerate() {
            let expect = if i % 2 == 0 { 1.0 } else { 0.0 };
            assert!((s - expect).abs() < 1e-15);
        }
        let r = check_belov(&CoefficientSequence::custom(vec![1.0, 1.0], 1).unwrap()).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_violation_index, Some(2));
        assert_eq!(r.partial_sums.unwrap()[1], -1.0);
        assert!(check_belov(&ck_sequence(20, 0.6, 2.0, 1.0).unwrap()).unwrap().satisfied);
        assert!(matches!(
            check_belov(&CoefficientSequence::custom(vec![1.0], 1).unwrap()),
            Err(Error::Size(_))
        ));
        let up = CoefficientSequence::custom(vec![1.0, 2.0, 0.1], 1).unwrap();
        assert!(!check_belov(&up).unwrap().warnings.is_empty());
    }

    #[test]
    fn chain_examples() {
        let q = qk_sequence(30, 0.2, 0.4, 0.3, 0.7).unwrap();
        let r = check_chain_condition(&q, 0.2, 0.4, 0.3, 0.7).unwrap();
        assert!(r.satisfied);
        assert!(r.margin < 1e-14);
        let bad = CoefficientSequence::custom(vec![2.0, 1.0, 1.0], 0).unwrap();
        let r = check_chain_condition(&bad, 0.0, 0.0, 1.0, 0.0).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_violation_index, Some(2));
        let geo = CoefficientSequence::custom((0..20).map(|k| 2.0 * 4f64.powi(-k)).collect(), 0).unwrap();
        assert!(check_chain_condition(&geo, 0.0, 0.0, 0.5, 0.5).unwrap().satisfied);
    }

    #[test]
    fn bc_ratio_examples() {
        let e = ek_sequence(12, 0.35, 1.5, 1.0).unwrap();
        assert!(check_bc_ratio_condition(&e, 1.5, 1.0, 0.35).unwrap().satisfied);
        let k = CoefficientSequence::custom(
            (0..=10).map(|j| rising_over_factorial(1.0 - 0.31, j)).collect(),
            0,
        )
        .unwrap();
        assert!(check_bc_ratio_condition(&k, 1.0, 1.0, 0.31).unwrap().satisfied);
        let bad = CoefficientSequence::custom(vec![1.0, 1.0], 0).unwrap();
        let r = check_bc_ratio_condition(&bad, 1.0, 1.0, 0.5).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_violation_index, Some(1));
        assert!(check_bc_ratio_condition(&bad, 1.0, 2.0, 0.5).is_err());
    }
}

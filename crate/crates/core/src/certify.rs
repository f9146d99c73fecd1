//! Grid certificates of strict positivity, minimisation and zero bracketing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::roots::{brent_root, golden_min};
use crate::trigeval::TrigPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// Cells in the initial grid.
    pub initial_grid: usize,
    /// Maximum number of bisections of a cell.
    pub max_depth: u32,
    /// Margin trimmed at endpoints where the sum vanishes.
    pub boundary_margin: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { initial_grid: 4096, max_depth: 8, boundary_margin: 1e-4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedPositive,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub theta: f64,
    pub value: f64,
}

/// Analytic check of the trimmed zone next to an endpoint where the sum vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointCheck {
    pub theta: f64,
    /// Derivative in the inward direction.
    pub inward_slope: f64,
    /// Second derivative at the endpoint.
    pub curvature: f64,
    /// Order of the first derivative that does not vanish at the endpoint.
    pub order: u32,
    /// That derivative, taken in the inward direction.
    pub leading: f64,
    /// Width of the trimmed zone.
    pub zone: f64,
    /// The Taylor bound proves positivity on the whole trimmed zone.
    pub settled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub verdict: Verdict,
    /// Certified lower bound on the working interval. Meaningful only for
    /// certified-positive.
    pub lower_bound: f64,
    pub witness: Option<Witness>,
    /// Number of evaluations spent on the grid and its refinements.
    pub grid_points: usize,
    pub refinement_depth: u32,
    pub lipschitz: f64,
    /// Σ ω² (|a| + |b|), a bound on |p″|.
    pub curvature_bound: f64,
    pub interval: (f64, f64),
    pub working_interval: (f64, f64),
    pub endpoints: Vec<EndpointCheck>,
    pub boundary_notes: String,
}

/// Σ ω (|a_k| + |b_k|), a bound on |p′| over the whole line.
pub fn lipschitz_bound(poly: &TrigPolynomial) -> f64 {
    poly.weighted_abs_sum(1)
}

fn vanish_tol(poly: &TrigPolynomial) -> f64 {
    64.0 * f64::EPSILON * poly.weighted_abs_sum(0).max(f64::MIN_POSITIVE)
}

fn validate_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Interval { lo, hi, reason: "need finite lo < hi".into() });
    }
    Ok(())
}

fn vanishes_at(poly: &TrigPolynomial, x: f64) -> bool {
    poly.eval(x).abs() <= vanish_tol(poly)
}

fn grid_nodes(lo: f64, hi: f64, cells: usize) -> Vec<f64> {
    let h = (hi - lo) / cells as f64;
    (0..=cells).map(|i| if i == cells { hi } else { lo + i as f64 * h }).collect()
}

fn eval_all(poly: &TrigPolynomial, xs: &[f64]) -> Vec<f64> {
    xs.par_iter().map(|&x| poly.eval(x)).collect()
}

/// Index of the smallest value, earliest x on ties (xs ascending within each batch).
fn argmin(xs: &[f64], fs: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..fs.len() {
        if fs[i] < fs[best] || (fs[i] == fs[best] && xs[i] < xs[best]) {
            best = i;
        }
    }
    best
}

#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    x1: f64,
    f0: f64,
    f1: f64,
}

impl Cell {
    fn lower_bound(&self, lip: f64, curv: f64) -> f64 {
        let h = self.x1 - self.x0;
        let first = 0.5 * (self.f0 + self.f1) - 0.5 * lip * h;
        let second = self.f0.min(self.f1) - curv * h * h / 8.0;
        first.max(second)
    }
}

/// Certifies p > 0 on (lo, hi).
///
/// Samples p on a closed uniform grid of the working interval and bounds the
/// dip inside each cell by both the first-order bound (f0+f1)/2 − L·h/2 and
/// the second-order bound min(f0, f1) − M₂h²/8. Cells whose bound is not
/// positive are bisected up to `max_depth` times. A sample ≤ 0 refutes.
///
/// At an endpoint where p vanishes the working interval is shortened by ε and
/// the trimmed zone is judged by a Taylor bound at the endpoint:
/// p(e + t) ≥ t·(s + p″(e) t/2 − M₃t²/6) for inward slope s. When the slope
/// itself vanishes, the first nonzero inward derivative s_m of order m ≤ 4
/// takes over, p(e + t) ≥ t^m/m!·(s_m − M_{m+1}t/(m+1)), and the zone widens
/// to the half of the range where that bound holds.
pub fn certify_positive(
    poly: &TrigPolynomial,
    lo: f64,
    hi: f64,
    opts: &CertifyOptions,
) -> Result<PositivityReport> {
    validate_interval(lo, hi)?;
    let eps = opts.boundary_margin;
    if !(eps >= 0.0) || eps >= (hi - lo) / 4.0 {
        return domain(format!("boundary margin {eps} must lie in [0, (hi - lo)/4)"));
    }
    if opts.initial_grid == 0 {
        return Err(Error::Size("initial grid must have at least one cell".into()));
    }
    let lip = lipschitz_bound(poly);
    let curv = poly.weighted_abs_sum(2);
    let max_zone = (hi - lo) / 8.0;
    let checks: Vec<(f64, Option<EndpointCheck>)> = [(lo, 1.0), (hi, -1.0)]
        .into_iter()
        .map(|(e, dir)| (dir, vanishes_at(poly, e).then(|| endpoint_check(poly, e, dir, eps, max_zone))))
        .collect();
    let zone = |c: &Option<EndpointCheck>| c.map_or(0.0, |c| c.zone);
    let (wlo, whi) = (lo + zone(&checks[0].1), hi - zone(&checks[1].1));

    let mut report = PositivityReport {
        verdict: Verdict::Inconclusive,
        lower_bound: f64::NEG_INFINITY,
        witness: None,
        grid_points: 0,
        refinement_depth: 0,
        lipschitz: lip,
        curvature_bound: curv,
        interval: (lo, hi),
        working_interval: (wlo, whi),
        endpoints: Vec::new(),
        boundary_notes: String::new(),
    };

    let xs = grid_nodes(wlo, whi, opts.initial_grid);
    let fs = eval_all(poly, &xs);
    report.grid_points = xs.len();
    let best = argmin(&xs, &fs);
    let mut min_sample = Witness { theta: xs[best], value: fs[best] };

    let mut notes = Vec::new();
    for &(dir, check) in &checks {
        let Some(check) = check else { continue };
        let e = check.theta;
        notes.push(format!(
            "p({e}) = 0; inward slope {:.6e}, p'' {:.6e}, order {}: {}",
            check.inward_slope,
            check.curvature,
            check.order,
            if check.settled { "positive on the trimmed zone" } else { "trimmed zone not settled" }
        ));
        if check.leading < 0.0 {
            if let Some(w) = endpoint_witness(poly, e, dir, check.zone) {
                report.endpoints.push(check);
                report.boundary_notes = notes.join("; ");
                return Ok(refuted(report, w));
            }
        }
        report.endpoints.push(check);
    }
    report.boundary_notes = notes.join("; ");

    if min_sample.value <= 0.0 {
        return Ok(refuted(report, min_sample));
    }

    let mut pending: Vec<Cell> = Vec::new();
    let mut bound = f64::INFINITY;
    for i in 0..xs.len() - 1 {
        let cell = Cell { x0: xs[i], x1: xs[i + 1], f0: fs[i], f1: fs[i + 1] };
        let lb = cell.lower_bound(lip, curv);
        if lb > 0.0 {
            bound = bound.min(lb);
        } else {
            pending.push(cell);
        }
    }

    let mut depth = 0;
    while !pending.is_empty() && depth < opts.max_depth {
        depth += 1;
        let mids: Vec<f64> = pending.iter().map(|c| 0.5 * (c.x0 + c.x1)).collect();
        let fm = eval_all(poly, &mids);
        report.grid_points += mids.len();
        let b = argmin(&mids, &fm);
        if fm[b] < min_sample.value || (fm[b] == min_sample.value && mids[b] < min_sample.theta) {
            min_sample = Witness { theta: mids[b], value: fm[b] };
        }
        if min_sample.value <= 0.0 {
            report.refinement_depth = depth;
            return Ok(refuted(report, min_sample));
        }
        let mut next = Vec::new();
        for (c, (&xm, &f)) in pending.iter().zip(mids.iter().zip(&fm)) {
            for half in [
                Cell { x0: c.x0, x1: xm, f0: c.f0, f1: f },
                Cell { x0: xm, x1: c.x1, f0: f, f1: c.f1 },
            ] {
                let lb = half.lower_bound(lip, curv);
                if lb > 0.0 {
                    bound = bound.min(lb);
                } else {
                    next.push(half);
                }
            }
        }
        pending = next;
    }
    report.refinement_depth = depth;
    if pending.is_empty() {
        report.verdict = Verdict::CertifiedPositive;
        report.lower_bound = bound;
    } else {
        let worst = pending
            .iter()
            .map(|c| c.lower_bound(lip, curv))
            .fold(f64::INFINITY, f64::min);
        report.lower_bound = bound.min(worst);
        report.witness = None;
    }
    Ok(report)
}

fn refuted(mut report: PositivityReport, w: Witness) -> PositivityReport {
    report.verdict = Verdict::Refuted;
    report.lower_bound = w.value;
    report.witness = Some(w);
    report
}

const MAX_ENDPOINT_ORDER: u32 = 4;

fn endpoint_check(poly: &TrigPolynomial, e: f64, dir: f64, eps: f64, max_zone: f64) -> EndpointCheck {
    // inward derivatives of orders 1..=MAX_ENDPOINT_ORDER
    let mut inward = Vec::new();
    let mut d = poly.clone();
    for j in 1..=MAX_ENDPOINT_ORDER {
        d = d.derivative();
        inward.push(dir.powi(j as i32) * d.eval(e));
    }
    let order = (1..=MAX_ENDPOINT_ORDER)
        .find(|&j| inward[j as usize - 1].abs() > 64.0 * f64::EPSILON * poly.weighted_abs_sum(j as i32))
        .unwrap_or(MAX_ENDPOINT_ORDER);
    let leading = inward[order as usize - 1];
    let next = poly.weighted_abs_sum(order as i32 + 1);
    let (zone, settled) = if order == 1 {
        let ok = leading > 0.0 && leading + 0.5 * inward[1] * eps - next * eps * eps / 6.0 > 0.0;
        (eps, ok)
    } else {
        let reach = if leading > 0.0 { 0.5 * (order + 1) as f64 * leading / next } else { 0.0 };
        let zone = reach.min(max_zone);
        if zone >= eps {
            (zone, true)
        } else {
            (eps, false)
        }
    };
    EndpointCheck {
        theta: e,
        inward_slope: inward[0],
        curvature: inward[1],
        order,
        zone,
        settled,
        leading,
    }
}

fn endpoint_witness(poly: &TrigPolynomial, e: f64, dir: f64, eps: f64) -> Option<Witness> {
    (0..60).find_map(|j| {
        let x = e + dir * eps * 0.5f64.powi(j);
        let v = poly.eval(x);
        (v < 0.0).then_some(Witness { theta: x, value: v })
    })
}

/// Approximate minimiser of p on [lo, hi] (trimmed like `certify_positive`).
/// Ties resolve to the smallest θ.
pub fn find_min(poly: &TrigPolynomial, lo: f64, hi: f64) -> Result<(f64, f64)> {
    validate_interval(lo, hi)?;
    let eps = CertifyOptions::default().boundary_margin.min((hi - lo) / 8.0);
    let wlo = if vanishes_at(poly, lo) { lo + eps } else { lo };
    let whi = if vanishes_at(poly, hi) { hi - eps } else { hi };
    let cells = 4096;
    let xs = grid_nodes(wlo, whi, cells);
    let fs = eval_all(poly, &xs);
    let i = argmin(&xs, &fs);
    let a = xs[i.saturating_sub(1)];
    let b = xs[(i + 1).min(cells)];
    let (x, v) = golden_min(|t| poly.eval(t), a, b, 1e-10);
    if v < fs[i] {
        Ok((x, v))
    } else {
        Ok((xs[i], fs[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    /// p(θ) = Σ a_k cos((n−k)θ), n = len − 1.
    P,
    /// q(θ) = Σ a_k sin((n−k)θ), n = len.
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
    pub sign_lo: i8,
    pub sign_hi: i8,
    /// Brent refinement inside the bracket.
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroBracketList {
    pub polynomial_kind: ZeroKind,
    pub brackets: Vec<ZeroBracket>,
}

/// The reversed-coefficient polynomial p or q as a `TrigPolynomial`.
pub fn reversed_polynomial(kind: ZeroKind, coeffs: &[f64]) -> Result<TrigPolynomial> {
    if coeffs.is_empty() {
        return Err(Error::Size("need at least one coefficient".into()));
    }
    let reversed: Vec<f64> = coeffs.iter().rev().copied().collect();
    match kind {
        // frequency m = n − k carries a_{n−m}
        ZeroKind::P => TrigPolynomial::with_layout(0.0, reversed, Vec::new(), 0.0, 1, 0),
        ZeroKind::Q => TrigPolynomial::sine(reversed),
    }
}

/// Sign-change brackets of p or q on [lo, hi] using `grid` cells.
pub fn bracket_zeros(kind: ZeroKind, coeffs: &[f64], lo: f64, hi: f64, grid: usize) -> Result<ZeroBracketList> {
    validate_interval(lo, hi)?;
    if coeffs.is_empty() {
        return Err(Error::Size("need at least one coefficient".into()));
    }
    if coeffs.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return domain("coefficients must be positive and finite");
    }
    if coeffs.len() >= 2 && coeffs[0] <= coeffs[1] {
        return domain("need a_0 > a_1");
    }
    if coeffs.windows(2).skip(1).any(|w| w[1] > w[0]) {
        return domain("need a_1 >= a_2 >= ... >= a_n");
    }
    let n = match kind {
        ZeroKind::P => coeffs.len() - 1,
        ZeroKind::Q => coeffs.len(),
    };
    let needed = 16 * n.max(1);
    if grid < needed {
        return domain(format!("grid {grid} too coarse; need at least {needed} cells"));
    }
    let poly = reversed_polynomial(kind, coeffs)?;
    let tol = vanish_tol(&poly);
    let xs = grid_nodes(lo, hi, grid);
    let fs = eval_all(&poly, &xs);
    let sign = |v: f64| if v.abs() <= tol { 0 } else if v > 0.0 { 1i8 } else { -1 };
    let mut brackets = Vec::new();
    let mut last: Option<(f64, i8)> = None;
    for (&x, &f) in xs.iter().zip(&fs) {
        let s = sign(f);
        if s == 0 {
            continue;
        }
        if let Some((xl, sl)) = last {
            if sl != s {
                let root = brent_root(|t| poly.eval(t), xl, x, 1e-14)?;
                brackets.push(ZeroBracket { lo: xl, hi: x, sign_lo: sl, sign_hi: s, root });
            }
        }
        last = Some((x, s));
    }
    Ok(ZeroBracketList { polynomial_kind: kind, brackets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lipschitz_examples() {
        assert_eq!(lipschitz_bound(&TrigPolynomial::sine(vec![1.0, 0.5]).unwrap()), 2.0);
        assert_eq!(lipschitz_bound(&TrigPolynomial::cosine(3.0, vec![]).unwrap()), 0.0);
    }

    #[test]
    fn sine_is_certified() {
        let p = TrigPolynomial::sine(vec![1.0]).unwrap();
        let r = certify_positive(&p, 0.0, PI, &CertifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedPositive);
        assert!(r.lower_bound > 0.99 * 1e-4f64.sin());
        assert_eq!(r.endpoints.len(), 2);
        assert!(r.endpoints.iter().all(|e| e.settled));
    }

    #[test]
    fn two_sines_are_refuted() {
        let p = TrigPolynomial::sine(vec![1.0, 1.0]).unwrap();
        let r = certify_positive(&p, 0.0, PI, &CertifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        let w = r.witness.unwrap();
        assert!(w.value <= 0.0 && w.theta > 2.0 * PI / 3.0);
        assert!(p.eval(w.theta) <= 0.0);
    }

    #[test]
    fn interval_errors() {
        let p = TrigPolynomial::sine(vec![1.0]).unwrap();
        assert!(certify_positive(&p, 1.0, 0.0, &CertifyOptions::default()).is_err());
        let opts = CertifyOptions { boundary_margin: 1.0, ..Default::default() };
        assert!(certify_positive(&p, 0.0, PI, &opts).is_err());
    }

    #[test]
    fn minima() {
        let (t, m) = find_min(&TrigPolynomial::sine(vec![1.0]).unwrap(), 0.0, PI).unwrap();
        assert!((m - 1e-4f64.sin()).abs() < 1e-12);
        assert!((t - 1e-4).abs() < 1e-12);
        let (t, m) = find_min(&TrigPolynomial::cosine(0.0, vec![1.0]).unwrap(), 0.0, PI).unwrap();
        assert!((t - PI).abs() < 1e-8 && (m + 1.0).abs() < 1e-12);
    }

    #[test]
    fn bracket_examples() {
        let z = bracket_zeros(ZeroKind::P, &[1.0], 0.0, 2.0 * PI, 64).unwrap();
        assert!(z.brackets.is_empty());
        let z = bracket_zeros(ZeroKind::Q, &[1.0], 0.0, 2.0 * PI, 64).unwrap();
        assert_eq!(z.brackets.len(), 1);
        assert!((z.brackets[0].root - PI).abs() < 1e-12);
        let z = bracket_zeros(ZeroKind::P, &[2.0, 1.0], 0.0, 2.0 * PI, 64).unwrap();
        let roots: Vec<f64> = z.brackets.iter().map(|b| b.root).collect();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((roots[1] - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!(bracket_zeros(ZeroKind::P, &[1.0, 2.0], 0.0, 2.0 * PI, 64).is_err());
        assert!(bracket_zeros(ZeroKind::P, &[2.0, 1.0], 0.0, 2.0 * PI, 8).is_err());
    }
}

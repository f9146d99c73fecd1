#![allow(dead_code)]

use std::f64::consts::PI;

use postrig::seqkit::{check_chain_condition, check_bc_ratio_condition, ck_sequence, ek_sequence, qk_weight, CoefficientSequence};
use postrig::specfun::constants::{alpha0, alpha0_prime};
use postrig::sums;
use postrig::trigeval::{half_angle_derivative_negated, TrigKind, TrigPolynomial};
use postrig::{certify_positive, CertifyOptions, Error, PositivityReport, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const FIG_PARAMS: (f64, f64, f64, f64) = (0.2, 0.4, 0.3, 0.7);

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub label: String,
    pub report: PositivityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: String,
    pub cases: Vec<Case>,
}

impl Suite {
    pub fn failures(&self) -> Vec<&Case> {
        self.cases.iter().filter(|c| c.report.verdict != Verdict::CertifiedPositive).collect()
    }
}

fn certify(poly: &TrigPolynomial, hi: f64) -> PositivityReport {
    certify_positive(poly, 0.0, hi, &CertifyOptions::default()).expect("valid interval")
}

/// α₀′(d), or 0 once the root has left [0, 1).
pub fn alpha0_prime_or_zero(d: f64) -> f64 {
    match alpha0_prime(d) {
        Ok(c) => c.value,
        Err(Error::RootOutOfRange(_)) => 0.0,
        Err(e) => panic!("alpha0_prime({d}): {e}"),
    }
}

pub fn qk_figure_suite() -> Suite {
    let (a, b, l, m) = FIG_PARAMS;
    let mut cases = Vec::new();
    for n in [20, 30, 40] {
        cases.push(Case { label: format!("sine n={n}"), report: certify(&sums::qk_sine(n, a, b, l, m).unwrap(), PI) });
        cases.push(Case { label: format!("cosine n={n}"), report: certify(&sums::qk_cosine(n, a, b, l, m).unwrap(), PI) });
    }
    Suite { name: "qk sums at alpha=.2 beta=.4 lambda=.3 mu=.7".into(), cases }
}

const NS: [usize; 3] = [5, 20, 100];

fn qk_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut cases = Vec::new();
    for _ in 0..50 {
        let (alpha, beta) = (rng.random_range(0.0..=5.0), rng.random_range(0.0..=5.0));
        let (lambda, mu) = loop {
            let (l, m) = (rng.random_range(0.0..=2.0), rng.random_range(0.0..=2.0));
            if l + m >= 1.0 {
                break (l, m);
            }
        };
        for n in NS {
            let tag = format!("n={n} a={alpha:.4} b={beta:.4} l={lambda:.4} m={mu:.4}");
            let s = sums::qk_sine(n, alpha, beta, lambda, mu).unwrap();
            let c = sums::qk_cosine(n, alpha, beta, lambda, mu).unwrap();
            cases.push(Case { label: format!("sine {tag}"), report: certify(&s, PI) });
            cases.push(Case { label: format!("cosine {tag}"), report: certify(&c, PI) });
        }
    }
    Suite { name: "qk sine and cosine sums, lambda+mu >= 1".into(), cases }
}

fn ratio_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut cases = Vec::new();
    for _ in 0..20 {
        let lambda: f64 = rng.random_range(0.05..=2.0);
        let mu: f64 = rng.random_range(1.0 + lambda..=3.0 + lambda);
        let alpha: f64 = rng.random_range(0.05..=5.0);
        let beta = rng.random_range(alpha..(alpha * mu / lambda).min(10.0));
        if !(beta > alpha && lambda * beta < alpha * mu) {
            continue;
        }
        for n in NS {
            let p = sums::ratio_sine(n, alpha, beta, lambda, mu).unwrap();
            let label = format!("n={n} a={alpha:.4} b={beta:.4} l={lambda:.4} m={mu:.4}");
            cases.push(Case { label, report: certify(&p, PI) });
        }
    }
    Suite { name: "ratio sine sums, mu >= 1+lambda and lambda*beta < alpha*mu".into(), cases }
}

fn half_angle_derivative_suite(rng: &mut ChaCha8Rng) -> Suite {
    let (a, b, l, m) = FIG_PARAMS;
    let mut cases = Vec::new();
    for n in 1..=100 {
        let p = half_angle_derivative_negated(n, a, b, l, m).unwrap();
        cases.push(Case { label: format!("figure params n={n}"), report: certify(&p, PI) });
    }
    for _ in 0..10 {
        let (alpha, beta) = (rng.random_range(0.0..=5.0), rng.random_range(0.0..=5.0));
        let (lambda, mu) = (rng.random_range(0.0..=2.0), rng.random_range(0.0..=2.0));
        for n in NS {
            let p = half_angle_derivative_negated(n, alpha, beta, lambda, mu).unwrap();
            let label = format!("n={n} a={alpha:.4} b={beta:.4} l={lambda:.4} m={mu:.4}");
            cases.push(Case { label, report: certify(&p, PI) });
        }
    }
    Suite { name: "minus d/dtheta of cos(theta/2)(1+cos theta+...)".into(), cases }
}

/// Positive sequence meeting the weighted chain condition with random slack.
pub fn random_chain_sequence(rng: &mut ChaCha8Rng, n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> CoefficientSequence {
    let a0 = rng.random_range(1.0..=3.0);
    let a1 = a0 / 2.0 * rng.random_range(0.5..=1.0);
    let mut values = vec![a0, a1];
    let mut w = a1;
    for k in 2..=n {
        w *= rng.random_range(0.5..=1.0);
        values.push(w * qk_weight(k, alpha, beta, lambda, mu));
    }
    CoefficientSequence::custom(values, 0).unwrap()
}

fn chain_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut cases = Vec::new();
    for _ in 0..20 {
        let (alpha, beta) = (rng.random_range(0.0..=5.0), rng.random_range(0.0..=5.0));
        let (lambda, mu) = loop {
            let (l, m) = (rng.random_range(0.0..=2.0), rng.random_range(0.0..=2.0));
            if l + m >= 1.0 {
                break (l, m);
            }
        };
        for n in [5, 20, 60] {
            let seq = random_chain_sequence(rng, n, alpha, beta, lambda, mu);
            assert!(check_chain_condition(&seq, alpha, beta, lambda, mu).unwrap().satisfied);
            let tag = format!("n={n} a={alpha:.4} b={beta:.4} l={lambda:.4} m={mu:.4}");
            cases.push(Case { label: format!("cosine {tag}"), report: certify(&sums::half_constant_cosine(&seq).unwrap(), PI) });
            cases.push(Case { label: format!("sine {tag}"), report: certify(&sums::sine_from(&seq).unwrap(), PI) });
        }
    }
    Suite { name: "sums with weighted-chain coefficients".into(), cases }
}

pub const D_GRID: [f64; 4] = [0.0, 0.25, 0.5, 1.0];

fn ck_cosine_suite() -> Suite {
    let mut cases = Vec::new();
    for d in D_GRID {
        let alpha = alpha0_prime_or_zero(d) + 0.01;
        for n in NS {
            // Σ_{k=0}^{2n+1} c_k cos kθ = 2cos(θ/2)·G(θ); G carries the sign on (0, π)
            let g = sums::ck_half_angle_factor(n, alpha, 1.0 + d, 1.0).unwrap();
            cases.push(Case { label: format!("d={d} alpha={alpha:.6} n={n}"), report: certify(&g, PI) });
        }
    }
    Suite { name: "paired c_k cosine sums, alpha = alpha0'(b-c) + 0.01".into(), cases }
}

fn ck_odd_sine_suite() -> Suite {
    let mut cases = Vec::new();
    for d in D_GRID {
        let alpha = alpha0_prime_or_zero(d) + 0.01;
        for n in NS {
            let p = sums::ck_sine(n, alpha, 1.0 + d, 1.0, true).unwrap();
            cases.push(Case { label: format!("d={d} alpha={alpha:.6} n={n}"), report: certify(&p, PI) });
        }
    }
    Suite { name: "c_k sine sums to 2n+1, alpha = alpha0'(b-c) + 0.01".into(), cases }
}

fn ck_even_sine_suite() -> Suite {
    let mut cases = Vec::new();
    for d in D_GRID {
        // 3/2 − (1+b)/(2c) with b = 1+d, c = 1
        let alpha = ((1.0 - d) / 2.0).max(0.0) + 0.01;
        for n in NS {
            let p = sums::ck_sine(n, alpha, 1.0 + d, 1.0, false).unwrap();
            cases.push(Case { label: format!("d={d} alpha={alpha:.4} n={n}"), report: certify(&p, PI) });
        }
    }
    Suite { name: "c_k sine sums to 2n, alpha = 3/2 - (1+b)/(2c) + 0.01".into(), cases }
}

/// Non-increasing sequence meeting (b+n−k)k a_k ≤ (c+n−k)(k−α)a_{k−1} with random slack.
pub fn random_bc_ratio_sequence(rng: &mut ChaCha8Rng, n: usize, alpha: f64, b: f64, c: f64) -> CoefficientSequence {
    let nf = n as f64;
    let mut values = vec![rng.random_range(1.0..=2.0)];
    for k in 1..=n {
        let kf = k as f64;
        let r = ((c + nf - kf) * (kf - alpha) / ((b + nf - kf) * kf)).min(1.0);
        values.push(values[k - 1] * r * rng.random_range(0.6..=1.0));
    }
    CoefficientSequence::custom(values, 0).unwrap()
}

fn bc_ratio_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut cases = Vec::new();
    for d in [0.0, 0.25, 0.5] {
        let alpha = alpha0_prime_or_zero(d) + 0.01;
        for n in NS {
            let seq = random_bc_ratio_sequence(rng, n, alpha, 1.0 + d, 1.0);
            assert!(check_bc_ratio_condition(&seq, 1.0 + d, 1.0, alpha).unwrap().satisfied);
            let p = sums::full_cosine(&seq).unwrap();
            cases.push(Case { label: format!("random d={d} alpha={alpha:.6} n={n}"), report: certify(&p, PI) });
        }
    }
    Suite { name: "cosine sums with (b+n-k)k a_k <= (c+n-k)(k-alpha)a_(k-1)".into(), cases }
}

fn e_half_angle_suite(rng: &mut ChaCha8Rng, a0: f64) -> Suite {
    let mut cases = Vec::new();
    for alpha in [a0 + 0.01, 0.5] {
        for d in [0.0, 0.5, 1.0] {
            for n in NS {
                let e = ek_sequence(n, alpha, 1.0 + d, 1.0).unwrap();
                let p = sums::half_angle_cosine(&e).unwrap();
                cases.push(Case { label: format!("e_k d={d} alpha={alpha:.6} n={n}"), report: certify(&p, PI) });
                let r = random_bc_ratio_sequence(rng, n, alpha, 1.0 + d, 1.0);
                let p = sums::half_angle_cosine(&r).unwrap();
                cases.push(Case { label: format!("random d={d} alpha={alpha:.6} n={n}"), report: certify(&p, PI) });
            }
        }
    }
    Suite { name: "sum e_k cos((2k+1/2)theta), alpha >= alpha0".into(), cases }
}

fn shifted_suite(a0: f64) -> Suite {
    let mut cases = Vec::new();
    let alpha = a0 + 0.01;
    for d in [0.0, 0.5] {
        for n in NS {
            let e = ek_sequence(n, alpha, 1.0 + d, 1.0).unwrap();
            for (kind, shift) in [
                (TrigKind::Cosine, 0.0),
                (TrigKind::Cosine, 0.125),
                (TrigKind::Cosine, 0.25),
                (TrigKind::Sine, 0.25),
                (TrigKind::Sine, 0.375),
                (TrigKind::Sine, 0.5),
            ] {
                let p = sums::shifted_sum(&e, kind, shift).unwrap();
                let label = format!("{kind:?} shift={shift} d={d} n={n}");
                cases.push(Case { label, report: certify(&p, 2.0 * PI) });
            }
        }
    }
    Suite { name: "shifted e_k sums on (0, 2pi)".into(), cases }
}

/// Every in-hypothesis suite, deterministic for a fixed seed.
pub fn hypothesis_suites() -> Vec<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let a0 = alpha0().unwrap().value;
    vec![
        qk_suite(&mut rng),
        ratio_suite(&mut rng),
        half_angle_derivative_suite(&mut rng),
        chain_suite(&mut rng),
        ck_cosine_suite(),
        ck_odd_sine_suite(),
        ck_even_sine_suite(),
        bc_ratio_suite(&mut rng),
        e_half_angle_suite(&mut rng, a0),
        shifted_suite(a0),
    ]
}

/// Smallest n ≤ 500 whose Belov partial sum of c_k (b = c = 1, α = 0.45) is
/// negative, with the certification of S_{2n}.
pub fn vietoris_sharpness() -> Option<(usize, PositivityReport)> {
    let seq = ck_sequence(250, 0.45, 1.0, 1.0).unwrap();
    let report = postrig::seqkit::check_belov(&seq).unwrap();
    let sums = report.partial_sums.unwrap();
    let m = (2..=500).find(|&m| m % 2 == 0 && sums[m - 1] < 0.0)?;
    let n = m / 2;
    let p = sums::ck_sine(n, 0.45, 1.0, 1.0, false).unwrap();
    Some((n, certify(&p, PI)))
}

pub fn open_grid(points: usize, lo: f64, hi: f64) -> Vec<f64> {
    (1..=points).map(|i| lo + (hi - lo) * i as f64 / (points + 1) as f64).collect()
}

mod args;
mod families;

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use postrig::certify::ZeroKind;
use postrig::seqkit::{check_belov, check_chain_condition, check_bc_ratio_condition, check_vietoris};
use postrig::specfun::constants::{
    alpha0, alpha0_hyp2f3, alpha0_prime, alpha0_prime_hyp2f3, expansion_fit, lambda_prime,
};
use postrig::sums::{qk_cosine, qk_sine};
use postrig::{
    bracket_zeros, certify_positive, CertifyOptions, CriterionReport, Error, PositivityReport, SpecialConstant,
    Verdict, ZeroBracketList,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use args::{Check, Cli, Command, CertifyArgs, ConstantsArgs, CriteriaArgs, Figure, PlotArgs, ZeroPoly, ZerosArgs};

/// Why a command stopped; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Solver(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Solver(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Solver(m) | Failure::Io(m) => m,
        }
    }
}

fn solver(e: Error) -> Failure {
    match e {
        Error::Domain(_) | Error::Size(_) | Error::Interval { .. } => Failure::Usage(e.to_string()),
        _ => Failure::Solver(e.to_string()),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// JSON to `out`, or to stdout when no path is given.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialise");
    text.push('\n');
    match out {
        Some(path) => write_file(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertifyOutput {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub report: PositivityReport,
}

fn family_name<T: clap::ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn cmd_certify(a: CertifyArgs) -> Result<u8, Failure> {
    let built = families::build_sum(a.family, a.n, &a.params)?;
    let (lo, hi) = (a.lo.unwrap_or(0.0), a.hi.unwrap_or(built.hi));
    let opts = CertifyOptions { initial_grid: a.grid, max_depth: a.depth, boundary_margin: a.margin };
    let report = certify_positive(&built.poly, lo, hi, &opts).map_err(solver)?;
    let code = match report.verdict {
        Verdict::CertifiedPositive => 0,
        Verdict::Refuted => 2,
        Verdict::Inconclusive => 3,
    };
    let summary = match (&report.verdict, report.witness) {
        (Verdict::Refuted, Some(w)) => format!("refuted: value {:e} at theta = {}", w.value, w.theta),
        (Verdict::CertifiedPositive, _) => format!("certified positive, lower bound {:e}", report.lower_bound),
        _ => "inconclusive".to_string(),
    };
    let out = CertifyOutput { family: family_name(a.family), params: built.params, report };
    if a.out.is_some() {
        println!("{summary}");
    }
    emit(&out, a.out.as_deref())?;
    Ok(code)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConstantsOutput {
    pub alpha0: SpecialConstant,
    pub alpha0_closed_form: SpecialConstant,
    pub alpha0_prime: Vec<SpecialConstant>,
    pub alpha0_prime_closed_form: Vec<SpecialConstant>,
    pub beta0: SpecialConstant,
    pub beta1: SpecialConstant,
    /// Cubic fit of alpha0'(d), constant term first.
    pub expansion_coefficients: [f64; 4],
    pub lambda_prime: SpecialConstant,
}

fn cmd_constants(a: ConstantsArgs) -> Result<u8, Failure> {
    let mut primes = Vec::new();
    let mut closed = Vec::new();
    for &d in &a.d {
        primes.push(alpha0_prime(d).map_err(solver)?);
        closed.push(alpha0_prime_hyp2f3(d).map_err(solver)?);
    }
    let fit = expansion_fit().map_err(solver)?;
    let out = ConstantsOutput {
        alpha0: alpha0().map_err(solver)?,
        alpha0_closed_form: alpha0_hyp2f3().map_err(solver)?,
        alpha0_prime: primes,
        alpha0_prime_closed_form: closed,
        beta0: fit.beta0,
        beta1: fit.beta1,
        expansion_coefficients: fit.coefficients,
        lambda_prime: lambda_prime().map_err(solver)?,
    };
    if a.out.is_some() {
        println!("alpha0 = {}", out.alpha0.value);
        for c in &out.alpha0_prime {
            println!("alpha0'({}) = {}", c.params["d"], c.value);
        }
        println!("beta0 = {}, beta1 = {}", out.beta0.value, out.beta1.value);
        println!("lambda' = {}", out.lambda_prime.value);
    }
    emit(&out, a.out.as_deref())?;
    Ok(0)
}

fn cmd_plotdata(a: PlotArgs) -> Result<u8, Failure> {
    let ns = a.n.clone().unwrap_or_else(|| match a.figure {
        Figure::Fig1 => vec![20, 30, 40],
        Figure::Fig2 => vec![75, 100, 125],
    });
    if ns.is_empty() || ns.contains(&0) {
        return Err(Failure::Usage("--n needs at least one degree, each >= 1".into()));
    }
    if a.samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let polys = ns
        .iter()
        .map(|&n| {
            Ok((
                qk_cosine(n, a.alpha, a.beta, a.lambda, a.mu)?,
                qk_sine(n, a.alpha, a.beta, a.lambda, a.mu)?,
            ))
        })
        .collect::<postrig::Result<Vec<_>>>()
        .map_err(solver)?;
    let header: Vec<String> = ns.iter().map(|n| format!("n{n}")).collect();
    match a.figure {
        Figure::Fig1 => {
            // open grid of (0, π)
            let thetas: Vec<f64> = (1..=a.samples).map(|i| PI * i as f64 / (a.samples + 1) as f64).collect();
            for (name, pick) in [("cosine", 0usize), ("sine", 1)] {
                let rows: Vec<Vec<f64>> = thetas
                    .par_iter()
                    .map(|&t| polys.iter().map(|p| if pick == 0 { p.0.eval(t) } else { p.1.eval(t) }).collect())
                    .collect();
                let mut csv = format!("theta,{}\n", header.join(","));
                for (t, row) in thetas.iter().zip(&rows) {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    csv.push_str(&format!("{t},{}\n", cells.join(",")));
                }
                let path = a.out_dir.join(format!("fig1_{name}.csv"));
                write_file(&path, &csv)?;
                let least = rows.iter().flatten().copied().fold(f64::INFINITY, f64::min);
                println!("wrote {} (smallest value {least:e})", path.display());
            }
        }
        Figure::Fig2 => {
            // Σ q_k z^k on |z| = 1 has real part C_n and imaginary part S_n
            let angles: Vec<f64> = (0..a.samples).map(|j| TAU * j as f64 / a.samples as f64).collect();
            let mut csv = String::from("n,angle,re,im\n");
            for (n, (c, s)) in ns.iter().zip(&polys) {
                let pts: Vec<(f64, f64)> = angles.par_iter().map(|&t| (c.eval(t), s.eval(t))).collect();
                for (t, (re, im)) in angles.iter().zip(pts) {
                    csv.push_str(&format!("{n},{t},{re},{im}\n"));
                }
            }
            let path = a.out_dir.join("fig2.csv");
            write_file(&path, &csv)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(0)
}

fn cmd_zeros(a: ZerosArgs) -> Result<u8, Failure> {
    let kind = match a.kind {
        ZeroPoly::P => ZeroKind::P,
        ZeroPoly::Q => ZeroKind::Q,
    };
    let n = a.coeffs.len();
    let grid = a.grid.unwrap_or((16 * n).max(4096));
    let list: ZeroBracketList =
        bracket_zeros(kind, &a.coeffs, a.lo.unwrap_or(0.0), a.hi.unwrap_or(TAU), grid).map_err(solver)?;
    if a.out.is_some() {
        let roots: Vec<String> = list.brackets.iter().map(|b| format!("{:.12}", b.root)).collect();
        println!("{} sign change(s): {}", list.brackets.len(), roots.join(", "));
    }
    emit(&list, a.out.as_deref())?;
    Ok(0)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CriteriaOutput {
    pub check: String,
    pub first_index: usize,
    pub values: Vec<f64>,
    pub report: CriterionReport,
}

fn cmd_criteria(a: CriteriaArgs) -> Result<u8, Failure> {
    let seq = families::build_sequence(a.family, a.n, a.first_index, &a.params)?;
    let p = &a.params;
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this check")));
    let report = match a.check {
        Check::Vietoris => check_vietoris(&seq),
        Check::Belov => check_belov(&seq),
        Check::Chain => check_chain_condition(
            &seq,
            need(p.alpha, "alpha")?,
            need(p.beta, "beta")?,
            need(p.lambda, "lambda")?,
            need(p.mu, "mu")?,
        ),
        Check::BcRatio => check_bc_ratio_condition(&seq, need(p.b, "b")?, need(p.c, "c")?, need(p.alpha, "alpha")?),
    }
    .map_err(solver)?;
    let code = if report.satisfied { 0 } else { 2 };
    if a.out.is_some() {
        match report.first_violation_index {
            None => println!("satisfied, margin {:e}", report.margin),
            Some(k) => println!("violated first at index {k}, margin {:e}", report.margin),
        }
    }
    let out = CriteriaOutput {
        check: family_name(a.check),
        first_index: seq.first_index(),
        values: seq.values().to_vec(),
        report,
    };
    emit(&out, a.out.as_deref())?;
    Ok(code)
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var("POSTRIG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("POSTRIG_THREADS = `{v}` is not a positive integer"))),
        },
        Err(_) => match flag {
            Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
            other => Ok(other),
        },
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Certify(a) => cmd_certify(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Plotdata(a) => cmd_plotdata(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Criteria(a) => cmd_criteria(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("postrig: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

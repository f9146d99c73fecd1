use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Accepts `12`, `-0.5`, `.2`, `3.` and nothing else: no exponents, no inf/nan.
pub fn plain_decimal(s: &str) -> Result<f64, String> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if body.is_empty() || body == "." || !digits(int) || !digits(frac) {
        return Err(format!("`{s}` is not a plain decimal number"));
    }
    s.parse().map_err(|_| format!("`{s}` is not a plain decimal number"))
}

#[derive(Debug, Parser)]
#[command(name = "postrig", version, about = "Certify positivity of trigonometric sums and compute their constants")]
pub struct Cli {
    /// Worker threads (POSTRIG_THREADS takes precedence).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify that a sum is positive on an interval.
    Certify(CertifyArgs),
    /// Solve for alpha0, alpha0'(d), beta0, beta1 and lambda'.
    Constants(ConstantsArgs),
    /// Write the figure data as CSV.
    Plotdata(PlotArgs),
    /// Bracket the zeros of p or q.
    Zeros(ZerosArgs),
    /// Check a coefficient criterion.
    Criteria(CriteriaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumFamily {
    QkSine,
    QkCosine,
    RatioSine,
    HalfAngleDerivative,
    CkCosine,
    CkSineOdd,
    CkSineEven,
    EkHalfAngle,
    ShiftedCosine,
    ShiftedSine,
    RawSine,
    RawCosine,
}

#[derive(Debug, Args, Default, Clone)]
pub struct Params {
    #[arg(long, value_parser = plain_decimal)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub beta: Option<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub mu: Option<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub b: Option<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub c: Option<f64>,
    /// Frequency shift of the shifted families.
    #[arg(long, value_parser = plain_decimal)]
    pub shift: Option<f64>,
    /// Comma-separated coefficients for the raw families.
    #[arg(long, value_delimiter = ',', value_parser = plain_decimal)]
    pub coeffs: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub family: SumFamily,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub params: Params,
    /// Interval start (default 0).
    #[arg(long, value_parser = plain_decimal)]
    pub lo: Option<f64>,
    /// Interval end (default pi, or 2pi for the shifted families).
    #[arg(long, value_parser = plain_decimal)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
    #[arg(long, value_parser = plain_decimal, default_value = "0.0001")]
    pub margin: f64,
    /// JSON report path; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// d values for alpha0'(d).
    #[arg(long, value_delimiter = ',', value_parser = plain_decimal, default_value = "0,0.1,0.25,0.5")]
    pub d: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// C_n and S_n on (0, pi).
    Fig1,
    /// The curve of sum q_k z^k on |z| = 1.
    Fig2,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub figure: Figure,
    /// Comma-separated degrees (default 20,30,40 for fig1 and 75,100,125 for fig2).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, value_parser = plain_decimal, default_value = "0.2")]
    pub alpha: f64,
    #[arg(long, value_parser = plain_decimal, default_value = "0.4")]
    pub beta: f64,
    #[arg(long, value_parser = plain_decimal, default_value = "0.3")]
    pub lambda: f64,
    #[arg(long, value_parser = plain_decimal, default_value = "0.7")]
    pub mu: f64,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZeroPoly {
    P,
    Q,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, value_enum)]
    pub kind: ZeroPoly,
    /// a_0, a_1, ..., a_n with a_0 > a_1 >= ... >= a_n > 0.
    #[arg(long, value_delimiter = ',', value_parser = plain_decimal)]
    pub coeffs: Vec<f64>,
    #[arg(long, value_parser = plain_decimal)]
    pub lo: Option<f64>,
    /// Interval end (default 2pi).
    #[arg(long, value_parser = plain_decimal)]
    pub hi: Option<f64>,
    /// Grid cells (default max(4096, 16n)).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Vietoris,
    Belov,
    Chain,
    BcRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqFamily {
    Vietoris,
    Qk,
    Koumandos,
    Ck,
    Ek,
}

#[derive(Debug, Args)]
pub struct CriteriaArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Generated sequence; otherwise --coeffs is used.
    #[arg(long, value_enum)]
    pub family: Option<SeqFamily>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Index of the first value given in --coeffs.
    #[arg(long, default_value_t = 0)]
    pub first_index: usize,
    #[command(flatten)]
    pub params: Params,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

//! Subcommand implementations for the `ialt` binary. Each `cmd_*` returns
//! its output as a string so it can be tested without a process.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use ialt_core::bounds::{self, BoundValue, CodeParams, KoptMode, MaxSumForm};
use ialt_core::codes::{dimension_bounds, AlternantCode, GrsSpec, InterleavedMatrix};
use ialt_core::decoder::{decode, max_decoding_radius, DecodeOptions, DecodeOutcome};
use ialt_core::simkit::{self, CodewordMode, TrialConfig};
use ialt_core::{Felt, FieldTower};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const DAT_HEADER: &str = "t RS Thm1 WoKopt L01 LargeEll LowerIE Miscorrection Sim";

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Base field size, a power of two.
    #[arg(long)]
    pub q: u64,
    /// Extension degree.
    #[arg(long)]
    pub m: u32,
    /// Designed distance.
    #[arg(long)]
    pub d: u64,
    /// Interleaving order.
    #[arg(long)]
    pub ell: u64,
    /// Code length; defaults to q^m - 1.
    #[arg(long)]
    pub n: Option<u64>,
    /// Seed for random column multipliers. Without it all multipliers are 1,
    /// which gives a BCH-like code.
    #[arg(long)]
    pub v_seed: Option<u64>,
}

impl CodeArgs {
    fn s(&self) -> Result<u32> {
        ensure!(
            self.q >= 2 && self.q.is_power_of_two(),
            "q must be a power of two >= 2, got {}",
            self.q
        );
        Ok(self.q.trailing_zeros())
    }

    fn field_order(&self) -> Result<u64> {
        let s = self.s()?;
        ensure!(
            self.m >= 1 && s * self.m <= 20,
            "need 1 <= log2(q) * m <= 20, got {}",
            s * self.m
        );
        Ok((1u64 << (s * self.m)) - 1)
    }

    pub fn length(&self) -> Result<u64> {
        Ok(self.n.unwrap_or(self.field_order()?))
    }

    pub fn params(&self, t: u64) -> Result<CodeParams> {
        ensure!(self.ell >= 1, "ell must be at least 1");
        Ok(CodeParams::new(self.q, self.m, self.length()?, self.d, self.ell, t)?)
    }

    pub fn build(&self) -> Result<Arc<AlternantCode>> {
        let field = Arc::new(FieldTower::new(self.s()?, self.m)?);
        let n = self.length()? as usize;
        let mut spec = GrsSpec::with_length(field, n, self.d as usize)?;
        if let Some(seed) = self.v_seed {
            spec = spec.with_random_multipliers(seed);
        }
        Ok(Arc::new(AlternantCode::new(spec)?))
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub t_min: Option<u64>,
    #[arg(long)]
    pub t_max: Option<u64>,
    /// Trials per t for the decoding-threshold search; omit to leave Sim empty.
    #[arg(long)]
    pub sim_trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the looser `+1` closed form of the convex-sum majorant in
    /// Thm1, WoKopt and L01, which matches previously published curves.
    #[arg(long)]
    pub loose_majorant: bool,
    /// Output path; defaults to boundsData_q={q}_m={m}_r={d-1}_l={ell}.dat.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl BoundsArgs {
    pub fn default_path(&self) -> PathBuf {
        let c = &self.code;
        PathBuf::from(format!("boundsData_q={}_m={}_r={}_l={}.dat", c.q, c.m, c.d - 1, c.ell))
    }

    pub fn out_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| self.default_path())
    }
}

/// Scientific notation with six significant digits, computed from `log10`
/// so values far below the `f64` range still print.
pub fn format_log10(log10: f64) -> String {
    if log10 == f64::NEG_INFINITY {
        return "0".to_string();
    }
    if !log10.is_finite() {
        return "nan".to_string();
    }
    let mut exp = log10.floor();
    let mut mant = 10f64.powf(log10 - exp);
    if format!("{mant:.5}").starts_with("10") {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{mant:.5}e{}", exp as i64)
}

fn cell(v: Option<&BoundValue>) -> String {
    v.map_or_else(|| "nan".to_string(), |b| format_log10(b.log10_clamped()))
}

/// One table row, without the Sim column.
pub fn bounds_row(params: &CodeParams, form: MaxSumForm) -> Result<Vec<String>> {
    let rs = bounds::lb_rs(params);
    let thm1 = bounds::lb_alternant_with(params, KoptMode::Full, form)?;
    let wo = bounds::lb_alternant_with(params, KoptMode::Singleton, form)?;
    let l01 = bounds::lb_alternant_simple_with(params, form)?;
    let large = bounds::lb_high_order(params);
    let lower = bounds::ub_success(params)?;
    let misc = bounds::misc_bound(params);
    Ok(vec![
        params.t.to_string(),
        cell(Some(&rs)),
        cell(Some(&thm1)),
        cell(Some(&wo)),
        cell(Some(&l01)),
        cell(large.as_ref()),
        cell(Some(&lower)),
        cell(Some(&misc)),
    ])
}

/// Renders the bounds table.
pub fn cmd_bounds(args: &BoundsArgs) -> Result<String> {
    let c = &args.code;
    ensure!(c.d >= 2, "need d >= 2, got {}", c.d);
    ensure!(c.ell >= 1, "need ell >= 1");
    let radius = max_decoding_radius(c.ell as usize, c.d as usize) as u64;
    let t_min = args.t_min.unwrap_or((c.d - 1) / 2);
    let t_max = args.t_max.unwrap_or(radius + 1);
    ensure!(t_min <= t_max, "empty t range {t_min}..={t_max}");
    for t in [t_min, t_max] {
        c.params(t)?;
    }

    let threshold = match args.sim_trials {
        Some(trials) => Some(simkit::find_threshold(
            c.build()?,
            c.ell as usize,
            trials,
            0.9,
            args.seed,
        )? as u64),
        None => None,
    };

    let form = if args.loose_majorant { MaxSumForm::Loose } else { MaxSumForm::Ceil };
    let rows: Vec<Vec<String>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| bounds_row(&c.params(t)?, form))
        .collect::<Result<_>>()?;

    let mut out = String::from(DAT_HEADER);
    out.push('\n');
    for (t, mut row) in (t_min..=t_max).zip(rows) {
        row.push(if threshold == Some(t) { "1".into() } else { "nan".into() });
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodewordArg {
    Zero,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Number of erroneous columns.
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    pub codeword: CodewordArg,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let z = 1.959963984540054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<Value> {
    let c = &args.code;
    let code = c.build()?;
    let mut cfg = TrialConfig::new(code, c.ell as usize, args.t as usize, args.trials, args.seed);
    cfg.codeword_mode = match args.codeword {
        CodewordArg::Zero => CodewordMode::Zero,
        CodewordArg::Random => CodewordMode::Random,
    };
    let stats = simkit::run_trials(&cfg)?;
    let (lo, hi) = wilson_interval(stats.successes, stats.trials());
    Ok(json!({
        "params": {
            "q": c.q,
            "m": c.m,
            "n": c.length()?,
            "d": c.d,
            "ell": c.ell,
            "t": args.t,
            "trials": args.trials,
            "seed": args.seed,
            "v_seed": c.v_seed,
            "codeword": match args.codeword { CodewordArg::Zero => "zero", CodewordArg::Random => "random" },
        },
        "successes": stats.successes,
        "miscorrections": stats.miscorrections,
        "failures": stats.failures,
        "failure_reasons": stats.reasons,
        "rate_ci95": [lo, hi],
    }))
}

#[derive(Debug, Clone, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// File with ell lines of n whitespace-separated integers (field bit
    /// patterns of subfield elements).
    #[arg(long = "in")]
    pub input: PathBuf,
}

pub fn parse_matrix(text: &str, ell: usize, n: usize, field: &FieldTower) -> Result<InterleavedMatrix> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    ensure!(rows.len() == ell, "expected {ell} rows, found {}", rows.len());
    let mut out = Vec::with_capacity(ell);
    for (i, line) in rows.iter().enumerate() {
        let row: Vec<Felt> = line
            .split_whitespace()
            .map(|tok| {
                let bits: u32 = tok.parse().with_context(|| format!("row {}: bad entry {tok:?}", i + 1))?;
                let x = field.element(bits)?;
                ensure!(field.in_subfield(x), "row {}: {bits} is not a subfield element", i + 1);
                Ok(x)
            })
            .collect::<Result<_>>()?;
        ensure!(row.len() == n, "row {}: expected {n} entries, found {}", i + 1, row.len());
        out.push(row);
    }
    Ok(InterleavedMatrix::from_rows(out))
}

pub fn format_matrix(m: &InterleavedMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.ell() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.bits().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn cmd_decode(args: &DecodeArgs, input: &str) -> Result<String> {
    let code = args.code.build()?;
    let r = parse_matrix(input, args.code.ell as usize, code.n(), code.field())?;
    Ok(match decode(&r, &code, DecodeOptions::default())? {
        DecodeOutcome::Decoded { codeword, .. } => format_matrix(&codeword),
        DecodeOutcome::Failure(reason) => format!("FAILURE:{reason}\n"),
    })
}

#[derive(Debug, Clone, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub code: CodeArgs,
}

pub fn cmd_info(args: &InfoArgs) -> Result<Value> {
    let c = &args.code;
    let code = c.build()?;
    let n = code.n() as u64;
    if c.d > n {
        bail!("need d <= n");
    }
    let (lo, hi) = dimension_bounds(n, c.d, c.q, c.m as u64)?;
    Ok(json!({
        "q": c.q,
        "m": c.m,
        "n": n,
        "d": c.d,
        "ell": c.ell,
        "k_A": code.dimension(),
        "k_lower": lo,
        "k_upper": hi,
        "t_max": max_decoding_radius(c.ell as usize, c.d as usize),
    }))
}

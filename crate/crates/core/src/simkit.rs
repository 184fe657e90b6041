//! Monte Carlo estimation of decoding outcomes under uniform burst errors.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{AlternantCode, InterleavedMatrix};
use crate::decoder::{classify, decode, Classification, DecodeOptions, DecodeOutcome};
use crate::error::{invalid, Result};
use crate::gf2m::Felt;
use crate::linalg::Matrix;

/// A uniform `t`-subset of `0..n` and a uniform `ell x t` matrix over the
/// subfield with no all-zero column.
pub fn sample_error<R: Rng + ?Sized>(
    ell: usize,
    t: usize,
    n: usize,
    subfield: &[Felt],
    rng: &mut R,
) -> (Vec<usize>, Matrix) {
    assert!(t <= n, "cannot place {t} errors in length {n}");
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..t {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(t);

    let mut e = Matrix::zeros(ell, t);
    for k in 0..t {
        loop {
            let mut nonzero = false;
            for i in 0..ell {
                let x = subfield[rng.gen_range(0..subfield.len())];
                nonzero |= !x.is_zero();
                e.set(i, k, x);
            }
            if nonzero {
                break;
            }
        }
    }
    (idx, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CodewordMode {
    Zero,
    #[default]
    Random,
}

#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub code: Arc<AlternantCode>,
    pub ell: usize,
    pub t: usize,
    pub trials: u64,
    pub seed: u64,
    pub codeword_mode: CodewordMode,
    pub options: DecodeOptions,
}

impl TrialConfig {
    pub fn new(code: Arc<AlternantCode>, ell: usize, t: usize, trials: u64, seed: u64) -> TrialConfig {
        TrialConfig {
            code,
            ell,
            t,
            trials,
            seed,
            codeword_mode: CodewordMode::default(),
            options: DecodeOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.ell == 0 || self.t > self.code.n() {
            return Err(invalid(format!(
                "need trials >= 1, ell >= 1, t <= n (trials={}, ell={}, t={}, n={})",
                self.trials,
                self.ell,
                self.t,
                self.code.n()
            )));
        }
        Ok(())
    }
}

/// Everything about a single trial.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub support: Vec<usize>,
    /// Error restricted to `support`.
    pub error: Matrix,
    pub sent: InterleavedMatrix,
    pub outcome: DecodeOutcome,
    pub class: Classification,
}

/// Trial `index` draws its error from ChaCha stream `2 index` and its
/// codeword from stream `2 index + 1`, so the zero and random codeword modes
/// see identical errors.
pub fn run_trial(cfg: &TrialConfig, index: u64) -> TrialRecord {
    let code = &*cfg.code;
    let mut err_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    err_rng.set_stream(2 * index);
    let (support, error) = sample_error(cfg.ell, cfg.t, code.n(), code.field().subfield_elements(), &mut err_rng);
    let sent = match cfg.codeword_mode {
        CodewordMode::Zero => InterleavedMatrix::zeros(cfg.ell, code.n()),
        CodewordMode::Random => {
            let mut cw_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            cw_rng.set_stream(2 * index + 1);
            code.random_codeword(cfg.ell, &mut cw_rng)
        }
    };
    let received = sent.add(&InterleavedMatrix::scatter(code.n(), &support, &error));
    let outcome = decode(&received, code, cfg.options).expect("received word matches the code");
    let class = classify(&outcome, &sent);
    TrialRecord {
        support,
        error,
        sent,
        outcome,
        class,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrialStats {
    pub successes: u64,
    pub miscorrections: u64,
    pub failures: u64,
    /// Failure reason name to count.
    pub reasons: BTreeMap<String, u64>,
}

impl TrialStats {
    pub fn trials(&self) -> u64 {
        self.successes + self.miscorrections + self.failures
    }

    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials() as f64
    }

    fn record(&mut self, rec: &TrialRecord) {
        match rec.class {
            Classification::Success => self.successes += 1,
            Classification::Miscorrection => self.miscorrections += 1,
            Classification::Failure => self.failures += 1,
        }
        if let DecodeOutcome::Failure(reason) = rec.outcome {
            *self.reasons.entry(reason.to_string()).or_default() += 1;
        }
    }

    fn merge(mut self, other: TrialStats) -> TrialStats {
        self.successes += other.successes;
        self.miscorrections += other.miscorrections;
        self.failures += other.failures;
        for (k, v) in other.reasons {
            *self.reasons.entry(k).or_default() += v;
        }
        self
    }
}

/// Runs all trials in parallel; the result depends only on the config.
pub fn run_trials(cfg: &TrialConfig) -> Result<TrialStats> {
    cfg.validate()?;
    Ok((0..cfg.trials)
        .into_par_iter()
        .fold(TrialStats::default, |mut stats, i| {
            stats.record(&run_trial(cfg, i));
            stats
        })
        .reduce(TrialStats::default, TrialStats::merge))
}

/// Largest `t` such that every `t'` from `floor((d-1)/2)` to `t` decodes
/// with empirical success rate above `target`.
pub fn find_threshold(code: Arc<AlternantCode>, ell: usize, trials: u64, target: f64, seed: u64) -> Result<usize> {
    let start = (code.d() - 1) / 2;
    let mut threshold = start;
    for t in start..=code.n() {
        let cfg = TrialConfig::new(Arc::clone(&code), ell, t, trials, seed);
        if run_trials(&cfg)?.success_rate() > target {
            threshold = t;
        } else {
            break;
        }
    }
    Ok(threshold)
}

//! Collaborative syndrome decoding of interleaved alternant codes, plus the
//! rank conditions that characterize when it is unsuccessful.

use std::fmt;

use crate::codes::{AlternantCode, InterleavedMatrix};
use crate::error::{Error, Result};
use crate::gf2m::{Felt, FieldTower};
use crate::linalg::{Matrix, Solution};

/// `S = R (H diag(v))^T`, an `ell x (d-1)` matrix over the top field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeSheet(Matrix);

impl SyndromeSheet {
    pub fn ell(&self) -> usize {
        self.0.rows()
    }

    /// Number of syndromes per row, `d - 1`.
    pub fn len(&self) -> usize {
        self.0.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.0.cols() == 0
    }

    /// Syndrome `r` (0-based) of row `i`.
    pub fn get(&self, i: usize, r: usize) -> Felt {
        self.0.get(i, r)
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        self.0.row(i)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }
}

pub fn syndromes(r: &InterleavedMatrix, code: &AlternantCode) -> Result<SyndromeSheet> {
    if r.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} columns", code.n()),
            found: r.n().to_string(),
        });
    }
    let h = code.parity_ext();
    Ok(SyndromeSheet(r.as_matrix().mul(&h.transpose(), code.field())))
}

/// The stacked Hankel system `S(t) Lambda = T(t)` with unknowns ordered
/// `(Lambda_t, ..., Lambda_1)`.
#[derive(Debug, Clone)]
pub struct KeySystem {
    pub t: usize,
    pub lhs: Matrix,
    pub rhs: Vec<Felt>,
}

impl KeySystem {
    pub fn new(s: &SyndromeSheet, t: usize) -> KeySystem {
        let per_row = s.len().saturating_sub(t);
        let mut rows = Vec::with_capacity(s.ell() * per_row);
        let mut rhs = Vec::with_capacity(s.ell() * per_row);
        for i in 0..s.ell() {
            for r in 0..per_row {
                rows.push((0..t).map(|c| s.get(i, r + c)).collect());
                rhs.push(s.get(i, r + t));
            }
        }
        let lhs = if rows.is_empty() {
            Matrix::zeros(0, t)
        } else {
            Matrix::from_rows(rows)
        };
        KeySystem { t, lhs, rhs }
    }

    pub fn rank(&self, field: &FieldTower) -> usize {
        self.lhs.rank(field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailureReason {
    NoConsistentT,
    NonUniqueSolution,
    RootCountMismatch,
    RootNotALocator,
    NoErrorValues,
    NotInSubfield,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::NoConsistentT => "NoConsistentT",
            FailureReason::NonUniqueSolution => "NonUniqueSolution",
            FailureReason::RootCountMismatch => "RootCountMismatch",
            FailureReason::RootNotALocator => "RootNotALocator",
            FailureReason::NoErrorValues => "NoErrorValues",
            FailureReason::NotInSubfield => "NotInSubfield",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    /// `t_star` is 0 when the syndromes vanish.
    Decoded {
        codeword: InterleavedMatrix,
        error: InterleavedMatrix,
        t_star: usize,
    },
    Failure(FailureReason),
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&InterleavedMatrix> {
        match self {
            DecodeOutcome::Decoded { codeword, .. } => Some(codeword),
            DecodeOutcome::Failure(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    /// Per-row overdetermined linear solve.
    #[default]
    LinearSolve,
    /// Forney's formula, then a syndrome check.
    Forney,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecodeOptions {
    pub evaluation: Evaluation,
    /// Report `NotInSubfield` when the error estimate leaves the base field.
    pub strict_subfield: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Success,
    Miscorrection,
    Failure,
}

/// `floor(ell (d-1) / (ell+1))`.
pub fn max_decoding_radius(ell: usize, d: usize) -> usize {
    ell * (d - 1) / (ell + 1)
}

pub fn decode(r: &InterleavedMatrix, code: &AlternantCode, options: DecodeOptions) -> Result<DecodeOutcome> {
    let f = code.field();
    let s = syndromes(r, code)?;
    if s.is_zero() {
        return Ok(DecodeOutcome::Decoded {
            codeword: r.clone(),
            error: InterleavedMatrix::zeros(r.ell(), r.n()),
            t_star: 0,
        });
    }
    let d = code.d();
    let t_max = max_decoding_radius(r.ell(), d);
    let mut found = None;
    for t in 1..=t_max {
        if r.ell() * (d - 1 - t) < t {
            continue;
        }
        let system = KeySystem::new(&s, t);
        match system.lhs.solve(&system.rhs, f) {
            Solution::Inconsistent => continue,
            Solution::Many { .. } => return Ok(DecodeOutcome::Failure(FailureReason::NonUniqueSolution)),
            Solution::Unique(sol) => {
                found = Some((t, sol));
                break;
            }
        }
    }
    let Some((t_star, sol)) = found else {
        return Ok(DecodeOutcome::Failure(FailureReason::NoConsistentT));
    };

    // Lambda(x) = 1 + Lambda_1 x + ... with Lambda_k = sol[t - k].
    let mut lambda = vec![Felt::ONE];
    lambda.extend((1..=t_star).map(|k| sol[t_star - k]));

    let alpha = code.grs().alpha();
    let positions: Vec<usize> = (0..code.n())
        .filter(|&j| {
            let x = f.inv(alpha[j]).expect("locators are nonzero");
            f.eval_poly(&lambda, x).is_zero()
        })
        .collect();
    if positions.len() != t_star {
        return Ok(DecodeOutcome::Failure(classify_roots(f, &lambda, t_star, code.n())));
    }

    let values = match options.evaluation {
        Evaluation::LinearSolve => error_values(&positions, &s, code),
        Evaluation::Forney => forney_values(&positions, &lambda, &s, code),
    };
    let Some(values) = values else {
        return Ok(DecodeOutcome::Failure(FailureReason::NoErrorValues));
    };
    let error = InterleavedMatrix::scatter(code.n(), &positions, &values);
    if options.strict_subfield && !error.is_over_subfield(f) {
        return Ok(DecodeOutcome::Failure(FailureReason::NotInSubfield));
    }
    Ok(DecodeOutcome::Decoded {
        codeword: r.add(&error),
        error,
        t_star,
    })
}

/// When too few locators are roots: if `Lambda` still has `t_star` roots in
/// the whole field, some are not locators.
fn classify_roots(f: &FieldTower, lambda: &[Felt], t_star: usize, n: usize) -> FailureReason {
    if n == f.order() as usize {
        return FailureReason::RootCountMismatch;
    }
    let roots = f
        .elements()
        .filter(|&x| f.eval_poly(lambda, x).is_zero())
        .count();
    if roots == t_star {
        FailureReason::RootNotALocator
    } else {
        FailureReason::RootCountMismatch
    }
}

/// Solves `sum_k e_{i,k} v_{j_k} alpha_{j_k}^r = S_{i,r}` for every row `i`;
/// `None` if some row is inconsistent.
pub fn error_values(positions: &[usize], s: &SyndromeSheet, code: &AlternantCode) -> Option<Matrix> {
    let f = code.field();
    let alpha = code.grs().alpha();
    let v = code.grs().multipliers();
    let system = Matrix::from_fn(s.len(), positions.len(), |r, k| {
        let j = positions[k];
        f.mul(v[j], f.pow(alpha[j], r as u64))
    });
    let mut rows = Vec::with_capacity(s.ell());
    for i in 0..s.ell() {
        match system.solve(s.row(i), f) {
            Solution::Unique(x) => rows.push(x),
            Solution::Many { particular, .. } => rows.push(particular),
            Solution::Inconsistent => return None,
        }
    }
    Some(Matrix::from_fn(s.ell(), positions.len(), |i, k| rows[i][k]))
}

/// Forney's formula `e = alpha Omega(alpha^-1) / (v Lambda'(alpha^-1))` with
/// `Omega = S(x) Lambda(x) mod x^(d-1)`, accepted only if the resulting error
/// reproduces the syndromes.
fn forney_values(positions: &[usize], lambda: &[Felt], s: &SyndromeSheet, code: &AlternantCode) -> Option<Matrix> {
    let f = code.field();
    let alpha = code.grs().alpha();
    let v = code.grs().multipliers();
    // Formal derivative in characteristic 2 keeps only odd-degree terms.
    let deriv: Vec<Felt> = (1..lambda.len())
        .map(|k| if k % 2 == 1 { lambda[k] } else { Felt::ZERO })
        .collect();
    let len = s.len();
    let mut values = Matrix::zeros(s.ell(), positions.len());
    for i in 0..s.ell() {
        let mut omega = vec![Felt::ZERO; len];
        for (a, &sa) in s.row(i).iter().enumerate() {
            if sa.is_zero() {
                continue;
            }
            for (b, &lb) in lambda.iter().enumerate().take(len - a) {
                omega[a + b] = f.add(omega[a + b], f.mul(sa, lb));
            }
        }
        for (k, &j) in positions.iter().enumerate() {
            let x = f.inv(alpha[j]).ok()?;
            let den = f.mul(v[j], f.eval_poly(&deriv, x));
            let num = f.mul(alpha[j], f.eval_poly(&omega, x));
            values.set(i, k, f.div(num, den).ok()?);
        }
    }
    let error = InterleavedMatrix::scatter(code.n(), positions, &values);
    let check = syndromes(&error, code).ok()?;
    (check.0 == s.0).then_some(values)
}

pub fn classify(outcome: &DecodeOutcome, sent: &InterleavedMatrix) -> Classification {
    match outcome {
        DecodeOutcome::Decoded { codeword, .. } if codeword == sent => Classification::Success,
        DecodeOutcome::Decoded { .. } => Classification::Miscorrection,
        DecodeOutcome::Failure(_) => Classification::Failure,
    }
}

fn check_restricted(e: &Matrix, support: &[usize], code: &AlternantCode, t: usize) -> Result<()> {
    if e.cols() != t || support.len() != t {
        return Err(Error::DimensionMismatch {
            expected: format!("{t} columns and support positions"),
            found: format!("{} columns, {} positions", e.cols(), support.len()),
        });
    }
    if let Some(&j) = support.iter().find(|&&j| j >= code.n()) {
        return Err(Error::InvalidParameters(format!("position {j} outside the code length")));
    }
    Ok(())
}

/// `rank(S(t)) < t` for the syndromes of the error `e` placed on `support`.
pub fn rank_condition(e: &Matrix, support: &[usize], code: &AlternantCode, t: usize) -> Result<bool> {
    check_restricted(e, support, code, t)?;
    let full = InterleavedMatrix::scatter(code.n(), support, e);
    let s = syndromes(&full, code)?;
    Ok(KeySystem::new(&s, t).rank(code.field()) < t)
}

/// Whether some nonzero `u` satisfies `H_{d-t} diag(u) E^T = 0`, where
/// `H_{d-t}` is the `(d-t-1) x t` Vandermonde matrix on the error locators.
pub fn crux_condition(e: &Matrix, support: &[usize], code: &AlternantCode, t: usize) -> Result<bool> {
    check_restricted(e, support, code, t)?;
    let f = code.field();
    let alpha = code.grs().alpha();
    let per_row = code.d().saturating_sub(t + 1);
    let rows = e.rows() * per_row;
    if rows == 0 {
        return Ok(t > 0);
    }
    let m = Matrix::from_fn(rows, t, |row, k| {
        let (i, r) = (row / per_row, row % per_row);
        f.mul(f.pow(alpha[support[k]], r as u64), e.get(i, k))
    });
    Ok(m.rank(f) < t)
}

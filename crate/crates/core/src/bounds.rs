//! Closed-form bounds on unsuccessful decoding and miscorrection, evaluated
//! exactly.
//!
//! Every [`BoundValue`] holds the probability of *unsuccessful* decoding
//! (`1 - P_suc`), except [`misc_bound`] which holds `P_misc`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::counting::{self, big, binom, pow_u};
use crate::decoder::max_decoding_radius;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Rs,
    Alternant,
    AlternantSingleton,
    AlternantSimple,
    HighOrder,
    UpperSuccess,
    Miscorrection,
    Asymptotic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub kind: BoundKind,
    /// Clamped to `[0, 1]`.
    pub p: BigRational,
    /// `log10` of the value before clamping; `-inf` for zero.
    pub log10: f64,
}

impl BoundValue {
    fn new(kind: BoundKind, raw: BigRational) -> BoundValue {
        let log10 = counting::log10_rational(&raw);
        let p = if raw.is_negative() {
            BigRational::zero()
        } else if raw > BigRational::one() {
            BigRational::one()
        } else {
            raw
        };
        BoundValue { kind, p, log10 }
    }

    /// `log10` of the clamped value.
    pub fn log10_clamped(&self) -> f64 {
        self.log10.min(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub d: u64,
    pub ell: u64,
    pub t: u64,
}

impl CodeParams {
    /// Full length `n = q^m - 1`.
    pub fn full_length(q: u64, m: u32, d: u64, ell: u64, t: u64) -> Result<CodeParams> {
        CodeParams::new(q, m, q.pow(m) - 1, d, ell, t)
    }

    pub fn new(q: u64, m: u32, n: u64, d: u64, ell: u64, t: u64) -> Result<CodeParams> {
        if !q.is_power_of_two() || q < 2 || m == 0 {
            return Err(invalid(format!("q must be a power of two >= 2 and m >= 1 (q={q}, m={m})")));
        }
        if d < 2 || d > n || n > q.pow(m) - 1 {
            return Err(invalid(format!("need 2 <= d <= n <= q^m - 1 (n={n}, d={d})")));
        }
        if ell == 0 || t > n {
            return Err(invalid(format!("need ell >= 1 and t <= n (ell={ell}, t={t})")));
        }
        Ok(CodeParams { q, m, n, d, ell, t })
    }

    pub fn t_max(&self) -> u64 {
        max_decoding_radius(self.ell as usize, self.d as usize) as u64
    }

    fn qm(&self) -> u64 {
        self.q.pow(self.m)
    }

    /// `q^ell - 1`, the number of nonzero columns.
    fn nonzero_cols(&self) -> BigInt {
        pow_u(self.q, self.ell) - 1
    }
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// L.RS: `((q^{m ell} - q^-m)/(q^{m ell} - 1))^t q^{-m(ell(d-1) - (ell+1)t)} / (q^m - 1)`.
pub fn lb_rs(p: &CodeParams) -> BoundValue {
    let qml = pow_u(p.q, p.m as u64 * p.ell);
    let qm = big(p.qm());
    let base = (rat(qml.clone()) - BigRational::new(BigInt::one(), qm.clone())) / rat(qml - 1);
    let mut value = Pow::pow(base, p.t as u32) / rat(qm - 1);
    let exponent = p.m as i64 * (p.ell as i64 * (p.d as i64 - 1) - (p.ell as i64 + 1) * p.t as i64);
    let factor = rat(pow_u(p.q, exponent.unsigned_abs()));
    if exponent >= 0 {
        value /= factor;
    } else {
        value *= factor;
    }
    BoundValue::new(BoundKind::Rs, value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KoptMode {
    /// Least of Singleton, Griesmer, Hamming, Plotkin and Elias-Bassalygo.
    Full,
    /// Singleton only.
    Singleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxSumForm {
    /// `ceil((B - ca)/(b - a))`.
    #[default]
    Ceil,
    /// `(B - ca)/(b - a) + 1`.
    Loose,
}

struct AlternantTerm {
    weight: BigRational,
    deduction: BigRational,
    maxsum: BigRational,
    c: BigRational,
}

fn alternant_terms(p: &CodeParams, kopt: KoptMode, form: MaxSumForm) -> Result<Vec<AlternantTerm>> {
    let (q, m, d, t) = (p.q, p.m, p.d, p.t);
    if d - t > t {
        return Ok(Vec::new());
    }
    let dt = d - t;
    let qm1 = big(p.qm() - 1);
    let ql1 = p.nonzero_cols();
    let ratio = BigRational::new(ql1.clone(), big(q - 1));
    let mut terms = Vec::new();
    for w in dt..=t {
        let c = Pow::pow(&qm1, w as u32);
        let lower_exp = w as i64 - (dt as i64 - 1) * m as i64;
        let a = if lower_exp > 0 { pow_u(q, lower_exp as u64) } else { BigInt::one() };
        let k = match kopt {
            KoptMode::Full => counting::k_opt(q, w, dt),
            KoptMode::Singleton => w - dt + 1,
        };
        let b = pow_u(q, k).max(a.clone());
        let total = counting::b_total(w, dt, q, m)?;
        let full_weight = counting::b_sum(w, dt, w, q, m)?;
        let maxsum = match form {
            MaxSumForm::Ceil => rat(counting::maximize_convex_sum(&a, &b, &c, &total, p.ell as u32)?),
            MaxSumForm::Loose => counting::maximize_convex_sum_loose(&a, &b, &c, &total, p.ell as u32)?,
        };
        let deduction = ratio.clone() * rat(&c + full_weight - total);
        let weight = BigRational::new(binom(t, w), &qm1 * Pow::pow(&ql1, w as u32));
        terms.push(AlternantTerm {
            weight,
            deduction,
            maxsum,
            c: rat(c),
        });
    }
    Ok(terms)
}

/// With `d - t < 2` the punctured codes have no parity checks and the bound
/// is trivial.
fn beyond_distance(p: &CodeParams) -> bool {
    p.t + 2 > p.d
}

/// L.A (`KoptMode::Full`) and L.A1 (`KoptMode::Singleton`).
pub fn lb_alternant(p: &CodeParams, kopt: KoptMode) -> Result<BoundValue> {
    lb_alternant_with(p, kopt, MaxSumForm::Ceil)
}

pub fn lb_alternant_with(p: &CodeParams, kopt: KoptMode, form: MaxSumForm) -> Result<BoundValue> {
    let kind = match kopt {
        KoptMode::Full => BoundKind::Alternant,
        KoptMode::Singleton => BoundKind::AlternantSingleton,
    };
    if beyond_distance(p) {
        return Ok(BoundValue::new(kind, BigRational::one()));
    }
    let sum = alternant_terms(p, kopt, form)?
        .into_iter()
        .map(|x| x.weight * (x.deduction - x.c + x.maxsum))
        .fold(BigRational::zero(), |acc, x| acc + x);
    Ok(BoundValue::new(kind, sum))
}

/// L.A2: the L.A sum without the full-weight deduction term.
pub fn lb_alternant_simple(p: &CodeParams) -> Result<BoundValue> {
    lb_alternant_simple_with(p, MaxSumForm::Ceil)
}

pub fn lb_alternant_simple_with(p: &CodeParams, form: MaxSumForm) -> Result<BoundValue> {
    if beyond_distance(p) {
        return Ok(BoundValue::new(BoundKind::AlternantSimple, BigRational::one()));
    }
    let sum = alternant_terms(p, KoptMode::Full, form)?
        .into_iter()
        .map(|x| x.weight * (x.maxsum - x.c))
        .fold(BigRational::zero(), |acc, x| acc + x);
    Ok(BoundValue::new(BoundKind::AlternantSimple, sum))
}

/// L.T; `None` when `ell < t`.
pub fn lb_high_order(p: &CodeParams) -> Option<BoundValue> {
    if p.ell < p.t {
        return None;
    }
    let from = (2 * p.t + 2).saturating_sub(p.d);
    let good: BigInt = (from..=p.t)
        .map(|s| counting::rank_count_no_zero_cols(p.ell, p.t, s, p.q))
        .sum();
    let all = Pow::pow(p.nonzero_cols(), p.t as u32);
    let value = BigRational::one() - BigRational::new(good, all);
    Some(BoundValue::new(BoundKind::HighOrder, value))
}

/// U, as a lower bound on `1 - P_suc`: `max_xi Z^xi / (q^ell - 1)^t` over
/// `d - t <= xi <= t`.
pub fn ub_success(p: &CodeParams) -> Result<BoundValue> {
    let lo = p.d.saturating_sub(p.t).max(1);
    let mut best = BigInt::zero();
    for xi in lo..=p.t {
        best = best.max(counting::bad_matrix_count(p.q, p.ell, p.t, xi)?);
    }
    let all = Pow::pow(p.nonzero_cols(), p.t as u32);
    Ok(BoundValue::new(BoundKind::UpperSuccess, BigRational::new(best, all)))
}

/// Bound on the number of weight-`w` codewords of a length-`n`,
/// distance-`d` linear code over a field of size `field`.
pub fn weight_bound(n: u64, d: u64, w: u64, field: u64) -> BigInt {
    if w == 0 {
        return BigInt::one();
    }
    if w < d || w > n {
        return BigInt::zero();
    }
    constant_weight_bound(n, d, w, field)
}

/// Bound on a code of constant weight `w` and distance `d`: Johnson where its
/// denominator is positive, otherwise the puncturing recursion
/// `A(n, w) <= n (Q-1) / w * A(n-1, w-1)`.
fn constant_weight_bound(n: u64, d: u64, w: u64, field: u64) -> BigInt {
    if w > n {
        return BigInt::zero();
    }
    if w == 0 || 2 * w < d {
        return BigInt::one();
    }
    let trivial = binom(n, w) * pow_u(field - 1, w);
    let (bn, bd, bw, bq) = (big(n), big(d), big(w), big(field));
    let den = &bq * &bw * &bw - big(field - 1) * &bn * (big(2) * &bw - &bd);
    let value = if den.is_positive() {
        big(field - 1) * &bd * &bn / den
    } else {
        bn * big(field - 1) * constant_weight_bound(n - 1, d, w - 1, field) / bw
    };
    value.min(trivial)
}

/// `U(Q, t, w, rho)`: words of weight `t` at distance `rho` from a fixed
/// weight-`w` word.
pub fn u_count(field: u64, n: u64, t: u64, w: u64, rho: u64) -> BigInt {
    let top = t + w;
    if rho > top {
        return BigInt::zero();
    }
    let hi = top - rho;
    let lo = hi.div_ceil(2);
    let mut sum = BigInt::zero();
    for i in lo..=hi {
        if i > w || i > t || t - i > n.saturating_sub(w) {
            continue;
        }
        let changed = rho + 2 * i - top;
        if changed > i {
            continue;
        }
        let q2 = if changed == 0 { BigInt::one() } else { pow_u(field - 2, changed) };
        sum += binom(w, i) * binom(i, changed) * binom(n - w, t - i) * q2 * pow_u(field - 1, t - i);
    }
    sum
}

/// M, with the interleaved code viewed as a code over `GF(q^ell)`.
pub fn misc_bound(p: &CodeParams) -> BoundValue {
    let field = p.q.pow(p.ell as u32);
    let t_max = p.t_max();
    let upper = (p.t + t_max).min(p.n);
    let mut sum = BigInt::zero();
    for w in p.d..=upper {
        let a = weight_bound(p.n, p.d, w, field);
        if a.is_zero() {
            continue;
        }
        let inner: BigInt = (0..=p.t.min(t_max))
            .map(|rho| u_count(field, p.n, p.t, w, rho))
            .sum();
        sum += a * inner;
    }
    let den = binom(p.n, p.t) * pow_u(field - 1, p.t);
    BoundValue::new(BoundKind::Miscorrection, BigRational::new(sum, den))
}

/// Leading term `q^{-(ell + d - 1 - 2t)(d - 1 - t)}`; `None` when `ell < t`.
pub fn asymptotic_high_order(p: &CodeParams) -> Option<BoundValue> {
    if p.ell < p.t {
        return None;
    }
    let e = (p.ell as i64 + p.d as i64 - 1 - 2 * p.t as i64) * (p.d as i64 - 1 - p.t as i64);
    let power = rat(pow_u(p.q, e.unsigned_abs()));
    let value = if e >= 0 { power.recip() } else { power };
    Some(BoundValue::new(BoundKind::Asymptotic, value))
}

//! Exact combinatorial counts consumed by the bounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

pub fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

pub fn pow_u(base: u64, e: u64) -> BigInt {
    Pow::pow(big(base), e as u32)
}

/// `C(n, k)` for an arbitrary nonnegative integer `n`; zero when `k > n`.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || big(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - big(i);
        acc /= big(i + 1);
    }
    acc
}

pub fn binom(n: u64, k: u64) -> BigInt {
    binomial(&big(n), k)
}

/// Number of weight-`w` codewords of a length-`n` MDS code with minimum
/// distance `d` over a field of size `field_size`.
pub fn mds_weight_enum(n: u64, d: u64, w: u64, field_size: u64) -> Result<BigInt> {
    if d == 0 || d > n + 1 || w > n || field_size < 2 {
        return Err(invalid(format!(
            "MDS enumerator needs 1 <= d <= n+1, w <= n, Q >= 2 (n={n}, d={d}, w={w}, Q={field_size})"
        )));
    }
    if w == 0 {
        return Ok(BigInt::one());
    }
    if w < d {
        return Ok(BigInt::zero());
    }
    let mut sum = BigInt::zero();
    for j in 0..=(w - d) {
        let term = binom(w, j) * (pow_u(field_size, w - d + 1 - j) - 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(binom(n, w) * sum)
}

/// Summed over all nonzero multiplier vectors `v`, the number of weight-`w`
/// words of `MDS * diag(v)` lying in `GF(q)^n`.
pub fn b_sum(n: u64, d: u64, w: u64, q: u64, m: u32) -> Result<BigInt> {
    let qm = q.pow(m);
    Ok(mds_weight_enum(n, d, w, qm)? * pow_u(qm - 1, n - w) * pow_u(q - 1, w))
}

pub fn b_total(n: u64, d: u64, q: u64, m: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for w in 0..=n {
        total += b_sum(n, d, w, q, m)?;
    }
    Ok(total)
}

/// Size of a Hamming ball of radius `r` in `GF(q)^n`.
pub fn ball_volume(q: u64, n: u64, r: u64) -> BigInt {
    (0..=r.min(n))
        .map(|i| binom(n, i) * pow_u(q - 1, i))
        .sum()
}

/// Largest `k` with `q^k <= x`, for `x >= 1`.
fn floor_log(q: u64, x: &BigInt) -> u64 {
    let mut k = 0;
    let mut p = big(q);
    while p <= *x {
        k += 1;
        p *= q;
    }
    k
}

fn griesmer(q: u64, n: u64, d: u64) -> u64 {
    let mut total = 0u64;
    let mut k = 0u64;
    let mut qi = BigInt::one();
    loop {
        let term: BigInt = (big(d) + &qi - 1) / &qi;
        let term = term.to_u64().unwrap_or(u64::MAX);
        if total.saturating_add(term) > n {
            return k;
        }
        total += term;
        k += 1;
        qi *= q;
    }
}

fn hamming(q: u64, n: u64, d: u64) -> u64 {
    let bound = pow_u(q, n) / ball_volume(q, n, (d - 1) / 2);
    floor_log(q, &bound)
}

fn plotkin(q: u64, n: u64, d: u64) -> Option<u64> {
    let (qd, qn) = (q as u128 * d as u128, (q - 1) as u128 * n as u128);
    if qd <= qn {
        return None;
    }
    let bound = qd / (qd - qn);
    Some(floor_log(q, &BigInt::from(bound)))
}

fn elias_bassalygo(q: u64, n: u64, d: u64) -> Option<u64> {
    let (bq, bn, bd) = (big(q), big(n), big(d));
    let qn = pow_u(q, n);
    let mut vol = BigInt::zero();
    let mut best: Option<BigInt> = None;
    for r in 0..=n {
        vol += binom(n, r) * pow_u(q - 1, r);
        if q * r > (q - 1) * n {
            break;
        }
        let br = big(r);
        let den = &bq * &br * &br - big(2 * (q - 1)) * &bn * &br + big(q - 1) * &bn * &bd;
        if !den.is_positive() {
            continue;
        }
        let bound = big(q - 1) * &bn * &bd * &qn / (den * &vol);
        if best.as_ref().is_none_or(|b| bound < *b) {
            best = Some(bound);
        }
    }
    best.map(|b| floor_log(q, &b))
}

/// Upper bound on the dimension of a `q`-ary linear code of length `n` and
/// minimum distance `d`: the least of the Singleton, Griesmer, Hamming,
/// Plotkin and Elias-Bassalygo bounds.
pub fn k_opt(q: u64, n: u64, d: u64) -> u64 {
    assert!(q >= 2 && d >= 1 && d <= n, "k_opt needs 1 <= d <= n");
    let mut k = (n - d + 1).min(griesmer(q, n, d)).min(hamming(q, n, d));
    if let Some(p) = plotkin(q, n, d) {
        k = k.min(p);
    }
    if let Some(e) = elias_bassalygo(q, n, d) {
        k = k.min(e);
    }
    k
}

fn check_convex_args(a: &BigInt, b: &BigInt, c: &BigInt, total: &BigInt) -> Result<()> {
    if a.is_negative() || b < a || *c < BigInt::one() {
        return Err(invalid(format!("need a >= 0, b >= a, c >= 1 (a={a}, b={b}, c={c})")));
    }
    if *total < c * a || *total > c * b {
        return Err(invalid(format!(
            "sum {total} outside [{}, {}]",
            c * a,
            c * b
        )));
    }
    Ok(())
}

/// Majorant of `max sum M^ell` over multisets of `c` values in `[a, b]`
/// summing to `total`: `ceil((total - ca)/(b - a)) (b^ell - a^ell) + c a^ell`.
pub fn maximize_convex_sum(a: &BigInt, b: &BigInt, c: &BigInt, total: &BigInt, ell: u32) -> Result<BigInt> {
    check_convex_args(a, b, c, total)?;
    let fa = Pow::pow(a, ell);
    if a == b {
        return Ok(c * fa);
    }
    let heavy = (total - c * a).div_ceil(&(b - a));
    Ok(heavy * (Pow::pow(b, ell) - &fa) + c * fa)
}

/// The looser closed form `((total - ca)/(b - a) + 1)(b^ell - a^ell) + c a^ell`.
pub fn maximize_convex_sum_loose(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    total: &BigInt,
    ell: u32,
) -> Result<BigRational> {
    check_convex_args(a, b, c, total)?;
    let fa = Pow::pow(a, ell);
    if a == b {
        return Ok(BigRational::from_integer(c * fa));
    }
    let heavy = BigRational::new(total - c * a, b - a) + BigRational::one();
    Ok(heavy * BigRational::from_integer(Pow::pow(b, ell) - &fa) + BigRational::from_integer(c * fa))
}

/// `M(ell, t, s)`: matrices in `GF(q)^{ell x t}` of rank `s`.
pub fn rank_count(ell: u64, t: u64, s: u64, q: u64) -> BigInt {
    if s > ell.min(t) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..s {
        let qi = pow_u(q, i);
        num *= (pow_u(q, ell) - &qi) * (pow_u(q, t) - &qi);
        den *= pow_u(q, s) - &qi;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero(), "rank count must be integral");
    quot
}

/// `N(ell, t, s)`: matrices of rank `s` with no all-zero column.
pub fn rank_count_no_zero_cols(ell: u64, t: u64, s: u64, q: u64) -> BigInt {
    if s > ell.min(t) {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for j in 0..=(t - s) {
        let term = binom(t, j) * rank_count(ell, t - j, s, q);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `Z^xi`: matrices in `GF(q)^{ell x t}` without zero columns in which some
/// projective column class occurs exactly `xi` times.
pub fn bad_matrix_count(q: u64, ell: u64, t: u64, xi: u64) -> Result<BigInt> {
    if xi == 0 || xi > t {
        return Err(invalid(format!("need 1 <= xi <= t (xi={xi}, t={t})")));
    }
    let classes = (pow_u(q, ell) - 1) / big(q - 1);
    let mut sum = BigInt::zero();
    for j in 1..=(t / xi) {
        let choose = binomial(&classes, j);
        if choose.is_zero() {
            break;
        }
        let mut placements = BigInt::one();
        for z in 0..j {
            placements *= binom(t - z * xi, xi);
        }
        // Remaining columns avoid the j chosen classes: q^ell - 1 - j(q-1) vectors.
        let others = pow_u(q, ell) - 1 - big(j * (q - 1));
        let dj = placements * pow_u(q - 1, j * xi) * Pow::pow(others, (t - j * xi) as u32);
        if j % 2 == 1 {
            sum += choose * dj;
        } else {
            sum -= choose * dj;
        }
    }
    Ok(sum)
}

/// Upper bound on the probability that every row of a uniform matrix in
/// `GF(q)^{ell x n}` without zero columns lies in a fixed `[n, k]` code
/// having `a_n` full-weight codewords.
pub fn row_membership_bound(q: u64, ell: u64, n: u64, k: u64, a_n: &BigInt) -> Result<BigRational> {
    if k > n || a_n.is_negative() {
        return Err(invalid(format!("need 0 <= k <= n and A_n >= 0 (k={k}, n={n})")));
    }
    let ql = pow_u(q, ell) - 1;
    let num = pow_u(q, k * ell) * big(q - 1) - &ql * (pow_u(q, k) - 1 - a_n) - big(q - 1);
    let den = big(q - 1) * Pow::pow(ql, n as u32);
    Ok(BigRational::new(num, den))
}

/// The simplified form `(q^{k ell} - 1) / (q^ell - 1)^n`.
pub fn row_membership_bound_simple(q: u64, ell: u64, n: u64, k: u64) -> BigRational {
    let ql = pow_u(q, ell) - 1;
    BigRational::new(pow_u(q, k * ell) - 1, Pow::pow(ql, n as u32))
}

/// Base-10 logarithm of a positive big integer.
pub fn log10_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Base-10 logarithm of a rational: `-inf` for zero, `NaN` for negatives.
pub fn log10_rational(x: &BigRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    if x.is_negative() {
        return f64::NAN;
    }
    log10_biguint(x.numer().magnitude()) - log10_biguint(x.denom().magnitude())
}

//! Table-driven arithmetic in GF(2^(s*m)) with its base subfield GF(2^s).
//!
//! Elements are stored as bit patterns of polynomials over GF(2) reduced
//! modulo a fixed primitive polynomial. The polynomial is the numerically
//! smallest primitive polynomial of the required degree, so a tower built
//! for `(s, m)` is identical across runs and machines.
//!
//! The base field GF(2^s) is the set of Frobenius fixed points
//! `x^(2^s) = x`, which in log form is `{0} ∪ {g^(e*i)}` with
//! `e = (2^(s*m) - 1) / (2^s - 1)`.

use crate::error::{Error, Result};

/// Largest supported extension degree over GF(2).
pub const MAX_DEGREE: u32 = 20;

/// An element of GF(2^(s*m)), stored as its polynomial-basis bit pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Wraps a raw bit pattern. The caller is responsible for range; use
    /// [`FieldTower::element`] for a checked conversion.
    pub const fn from_bits(bits: u32) -> Felt {
        Felt(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Felt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(2^(s*m)) together with its subfield GF(2^s).
///
/// Immutable after construction; share it behind an `Arc` between workers.
#[derive(Debug, Clone)]
pub struct FieldTower {
    s: u32,
    m: u32,
    degree: u32,
    modulus: u32,
    order: u32,
    log: Vec<u32>,
    // exp has 2*order entries so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    subfield_step: u32,
    subfield: Vec<Felt>,
}

impl FieldTower {
    /// Builds GF(2^(s*m)) over the lexicographically least primitive
    /// polynomial of degree `s*m`.
    pub fn new(s: u32, m: u32) -> Result<FieldTower> {
        let degree = s.checked_mul(m).filter(|&d| (1..=MAX_DEGREE).contains(&d));
        let Some(degree) = degree else {
            return Err(Error::FieldDegree { s, m });
        };
        let order = (1u32 << degree) - 1;
        let top = 1u32 << degree;

        // Only polynomials with a nonzero constant term can be primitive.
        let mut candidate = top | 1;
        let exp_cycle = loop {
            if let Some(cycle) = primitive_cycle(candidate, degree) {
                break cycle;
            }
            candidate += 2;
            assert!(candidate < top << 1, "no primitive polynomial of degree {degree}");
        };

        let mut log = vec![0u32; (order + 1) as usize];
        let mut exp = Vec::with_capacity(2 * order as usize);
        for (i, &x) in exp_cycle.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        exp.extend_from_slice(&exp_cycle);
        exp.extend_from_slice(&exp_cycle);

        let sub_order = (1u32 << s) - 1;
        let subfield_step = order / sub_order;
        let mut subfield: Vec<Felt> = std::iter::once(Felt::ZERO)
            .chain((0..sub_order).map(|i| Felt(exp[(i * subfield_step) as usize])))
            .collect();
        subfield.sort_unstable();

        Ok(FieldTower {
            s,
            m,
            degree,
            modulus: candidate,
            order,
            log,
            exp,
            subfield_step,
            subfield,
        })
    }

    /// Base-field exponent: the subfield has `2^s` elements.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Extension degree of the top field over the subfield.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Size of the top field, `2^(s*m)`.
    pub fn size(&self) -> u32 {
        self.order + 1
    }

    /// Size of the subfield, `q = 2^s`.
    pub fn subfield_size(&self) -> u32 {
        1 << self.s
    }

    /// Multiplicative order of the top field, `2^(s*m) - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The reducing polynomial as a bit vector (bit i is the x^i coefficient).
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `(2^(s*m) - 1) / (2^s - 1)`: `g^subfield_step` generates the subfield.
    pub fn subfield_step(&self) -> u32 {
        self.subfield_step
    }

    /// The fixed primitive element `g` (the class of `x`).
    pub fn generator(&self) -> Felt {
        Felt(self.exp[1 % self.order as usize])
    }

    pub fn element(&self, bits: u32) -> Result<Felt> {
        if bits > self.order {
            return Err(Error::InvalidParameters(format!(
                "{bits} is not an element of GF(2^{})",
                self.degree
            )));
        }
        Ok(Felt(bits))
    }

    /// `g^k`.
    pub fn exp(&self, k: u64) -> Felt {
        Felt(self.exp[(k % self.order as u64) as usize])
    }

    /// Discrete log base `g`; `None` for zero.
    pub fn log(&self, a: Felt) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        Felt(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        Felt(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Felt(self.exp[(self.order - self.log[a.0 as usize]) as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.is_zero() {
            return Felt::ZERO;
        }
        let k = (self.log[a.0 as usize] as u64 * (e % self.order as u64)) % self.order as u64;
        Felt(self.exp[k as usize])
    }

    /// Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
    pub fn eval_poly(&self, coeffs: &[Felt], x: Felt) -> Felt {
        coeffs
            .iter()
            .rev()
            .fold(Felt::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Subfield elements in increasing bit-pattern order.
    pub fn subfield_elements(&self) -> &[Felt] {
        &self.subfield
    }

    pub fn in_subfield(&self, a: Felt) -> bool {
        match self.log(a) {
            None => true,
            Some(k) => k % self.subfield_step == 0,
        }
    }

    /// All elements of the top field, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..=self.order).map(Felt)
    }

    /// Coordinates of top-field elements over the subfield with respect to
    /// `basis`, or `None` if `basis` is not a subfield-basis of length `m`.
    pub fn coordinates(&self, basis: &[Felt]) -> Option<SubfieldCoordinates> {
        SubfieldCoordinates::new(self, basis)
    }
}

/// Walks the powers of `x` modulo `poly`; returns them if `x` has full order.
fn primitive_cycle(poly: u32, degree: u32) -> Option<Vec<u32>> {
    let order = (1u32 << degree) - 1;
    let top = 1u32 << degree;
    let mut cycle = Vec::with_capacity(order as usize);
    let mut x = 1u32;
    for i in 0..order {
        if i > 0 && x == 1 {
            return None;
        }
        cycle.push(x);
        x <<= 1;
        if x & top != 0 {
            x ^= poly;
        }
    }
    (x == 1).then_some(cycle)
}

/// Expansion of top-field elements over a subfield basis.
///
/// Built by inverting the GF(2) matrix whose columns are `beta^a * b_j`,
/// where `beta = g^subfield_step` and `b_j` are the basis elements; the pairs
/// `(a, j)` with `a < s` form a GF(2)-basis of the top field exactly when the
/// `b_j` are independent over the subfield.
#[derive(Debug, Clone)]
pub struct SubfieldCoordinates {
    s: u32,
    m: u32,
    // Row k of the inverse; coordinate k of x is parity(inverse[k] & x).
    inverse: Vec<u32>,
    beta_powers: Vec<Felt>,
}

impl SubfieldCoordinates {
    fn new(field: &FieldTower, basis: &[Felt]) -> Option<SubfieldCoordinates> {
        let (s, m, deg) = (field.s, field.m, field.degree as usize);
        if basis.len() != m as usize {
            return None;
        }
        let beta = field.exp(field.subfield_step as u64);
        let beta_powers: Vec<Felt> = (0..s).map(|a| field.pow(beta, a as u64)).collect();
        let columns: Vec<u32> = basis
            .iter()
            .flat_map(|&b| beta_powers.iter().map(move |&p| (b, p)))
            .map(|(b, p)| field.mul(b, p).0)
            .collect();

        // Gauss-Jordan on [A | I], rows indexed by bit position.
        let mut rows: Vec<u64> = (0..deg)
            .map(|r| {
                let a_row = columns
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &c)| acc | ((((c >> r) & 1) as u64) << k));
                a_row | (1u64 << (deg + r))
            })
            .collect();
        for col in 0..deg {
            let pivot = (col..deg).find(|&r| (rows[r] >> col) & 1 == 1)?;
            rows.swap(col, pivot);
            for r in 0..deg {
                if r != col && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[col];
                }
            }
        }
        let inverse = rows.iter().map(|&row| (row >> deg) as u32).collect();
        Some(SubfieldCoordinates {
            s,
            m,
            inverse,
            beta_powers,
        })
    }

    /// Subfield coefficients `c_0..c_{m-1}` with `x = sum c_j b_j`.
    pub fn expand(&self, field: &FieldTower, x: Felt) -> Vec<Felt> {
        (0..self.m as usize)
            .map(|j| {
                (0..self.s as usize).fold(Felt::ZERO, |acc, a| {
                    let k = j * self.s as usize + a;
                    if (self.inverse[k] & x.0).count_ones() & 1 == 1 {
                        field.add(acc, self.beta_powers[a])
                    } else {
                        acc
                    }
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn towers_up_to_8() -> Vec<FieldTower> {
        let mut out = Vec::new();
        for s in 1..=8 {
            for m in 1..=8 {
                if s * m <= 8 {
                    out.push(FieldTower::new(s, m).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn rejects_out_of_range_degree() {
        assert_eq!(
            FieldTower::new(1, 21).unwrap_err(),
            Error::FieldDegree { s: 1, m: 21 }
        );
        assert!(FieldTower::new(0, 3).is_err());
        assert!(FieldTower::new(4, 5).is_ok());
    }

    #[test]
    fn binary_prime_subfield() {
        let f = FieldTower::new(1, 4).unwrap();
        assert_eq!(f.size(), 16);
        assert_eq!(f.subfield_elements(), &[Felt::ZERO, Felt::ONE]);
        // x^4 + x + 1 is the least primitive quartic.
        assert_eq!(f.modulus(), 0b10011);
    }

    #[test]
    fn gf4_inside_gf16_is_closed() {
        let f = FieldTower::new(2, 2).unwrap();
        let sub = f.subfield_elements().to_vec();
        assert_eq!(sub.len(), 4);
        // Independent route: enumerate {0} ∪ {g^(5i)} directly.
        let mut direct: Vec<Felt> = (0..3).map(|i| f.exp(5 * i)).collect();
        direct.push(Felt::ZERO);
        direct.sort();
        assert_eq!(direct, sub);
        for &a in &sub {
            assert_eq!(f.pow(a, 4), a);
            for &b in &sub {
                assert!(sub.contains(&f.add(a, b)));
                assert!(sub.contains(&f.mul(a, b)));
            }
        }
    }

    #[test]
    fn subfield_is_exactly_the_frobenius_fixed_points() {
        for f in towers_up_to_8() {
            let q = f.subfield_size() as u64;
            let fixed: Vec<Felt> = f.elements().filter(|&x| f.pow(x, q) == x).collect();
            assert_eq!(fixed, f.subfield_elements(), "s={} m={}", f.s(), f.m());
            for &x in f.subfield_elements() {
                assert!(f.in_subfield(x));
            }
            assert_eq!(f.elements().filter(|&x| f.in_subfield(x)).count(), q as usize);
        }
    }

    #[test]
    fn q32_over_degree_two() {
        let f = FieldTower::new(5, 2).unwrap();
        assert_eq!(f.subfield_elements().len(), 32);
        assert_eq!(f.size(), 1024);
    }

    #[test]
    fn generator_has_full_order() {
        for f in towers_up_to_8() {
            let g = f.generator();
            assert_eq!(f.pow(g, f.order() as u64), Felt::ONE);
            let mut x = Felt::ONE;
            for k in 1..f.order() {
                x = f.mul(x, g);
                assert_ne!(x, Felt::ONE, "g^{k} = 1 in GF(2^{})", f.degree());
            }
        }
    }

    #[test]
    fn log_exp_round_trip() {
        for f in towers_up_to_8() {
            for x in f.elements().skip(1) {
                assert_eq!(f.exp(f.log(x).unwrap() as u64), x);
            }
            assert_eq!(f.log(Felt::ZERO), None);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (s, m) in [(1, 4), (2, 2), (1, 3)] {
            let f = FieldTower::new(s, m).unwrap();
            let els: Vec<Felt> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, a), Felt::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mul_matches_carryless_reference() {
        fn clmul_mod(mut a: u32, mut b: u32, poly: u32, deg: u32) -> u32 {
            let mut acc = 0;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> deg & 1 == 1 {
                    a ^= poly;
                }
            }
            acc
        }
        for f in towers_up_to_8() {
            for a in f.elements() {
                for b in f.elements() {
                    let want = clmul_mod(a.bits(), b.bits(), f.modulus(), f.degree());
                    assert_eq!(f.mul(a, b).bits(), want);
                }
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = FieldTower::new(1, 4).unwrap();
        assert_eq!(f.inv(Felt::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn horner_evaluation() {
        let f = FieldTower::new(1, 4).unwrap();
        let g = f.generator();
        // 1 + g x + x^2 at x = g: 1 + g^2 + g^2 = 1
        let p = [Felt::ONE, g, Felt::ONE];
        assert_eq!(f.eval_poly(&p, g), Felt::ONE);
        assert_eq!(f.eval_poly(&[], g), Felt::ZERO);
    }

    #[test]
    fn degree_twenty_builds() {
        let f = FieldTower::new(1, 20).unwrap();
        assert_eq!(f.order(), (1 << 20) - 1);
        let g = f.generator();
        assert_eq!(f.pow(g, f.order() as u64), Felt::ONE);
    }

    #[test]
    fn power_basis_coordinates_reconstruct() {
        for (s, m) in [(1, 4), (2, 2), (2, 3), (3, 2), (1, 1), (4, 2)] {
            let f = FieldTower::new(s, m).unwrap();
            let g = f.generator();
            let basis: Vec<Felt> = (0..m).map(|j| f.pow(g, j as u64)).collect();
            let coords = f.coordinates(&basis).expect("power basis is independent");
            for x in f.elements() {
                let c = coords.expand(&f, x);
                assert!(c.iter().all(|&ci| f.in_subfield(ci)));
                let back = c
                    .iter()
                    .zip(&basis)
                    .fold(Felt::ZERO, |acc, (&ci, &b)| f.add(acc, f.mul(ci, b)));
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let f = FieldTower::new(2, 2).unwrap();
        // Two subfield elements are dependent over the subfield.
        let beta = f.exp(f.subfield_step() as u64);
        assert!(f.coordinates(&[Felt::ONE, beta]).is_none());
    }
}

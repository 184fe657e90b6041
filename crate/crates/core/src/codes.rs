//! GRS codes, their alternant subfield subcodes, and interleaved words.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting;
use crate::error::{invalid, Error, Result};
use crate::gf2m::{Felt, FieldTower, SubfieldCoordinates};
use crate::linalg::Matrix;

/// Locators, column multipliers and designed distance of a GRS code
/// `{c : H diag(v) c = 0}` with `H` the `(d-1) x n` Vandermonde matrix.
#[derive(Debug, Clone)]
pub struct GrsSpec {
    field: Arc<FieldTower>,
    d: usize,
    alpha: Vec<Felt>,
    v: Vec<Felt>,
}

impl GrsSpec {
    pub fn new(field: Arc<FieldTower>, d: usize, alpha: Vec<Felt>, v: Vec<Felt>) -> Result<GrsSpec> {
        let n = alpha.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} multipliers"),
                found: v.len().to_string(),
            });
        }
        if n > field.order() as usize {
            return Err(Error::InvalidCode(format!(
                "length {n} exceeds the {} nonzero field elements",
                field.order()
            )));
        }
        if d < 2 || d > n {
            return Err(Error::InvalidCode(format!("need 2 <= d <= n, got d={d}, n={n}")));
        }
        let mut seen = vec![false; field.size() as usize];
        for &a in &alpha {
            if a.is_zero() || a.bits() > field.order() {
                return Err(Error::InvalidCode(format!("locator {a} is zero or out of range")));
            }
            if std::mem::replace(&mut seen[a.bits() as usize], true) {
                return Err(Error::InvalidCode(format!("locator {a} repeated")));
            }
        }
        if let Some(bad) = v.iter().find(|x| x.is_zero() || x.bits() > field.order()) {
            return Err(Error::InvalidCode(format!("multiplier {bad} is zero or out of range")));
        }
        Ok(GrsSpec { field, d, alpha, v })
    }

    /// Locators `g^0, g^1, ..., g^(n-1)` and all-ones multipliers.
    pub fn with_length(field: Arc<FieldTower>, n: usize, d: usize) -> Result<GrsSpec> {
        if n > field.order() as usize {
            return Err(Error::InvalidCode(format!(
                "length {n} exceeds the {} nonzero field elements",
                field.order()
            )));
        }
        let alpha = (0..n as u64).map(|i| field.exp(i)).collect();
        GrsSpec::new(field, d, alpha, vec![Felt::ONE; n])
    }

    /// Full length `n = 2^(s*m) - 1`: every nonzero element is a locator.
    pub fn full_length(field: Arc<FieldTower>, d: usize) -> Result<GrsSpec> {
        let n = field.order() as usize;
        GrsSpec::with_length(field, n, d)
    }

    /// Replaces the multipliers with uniform nonzero elements drawn from `seed`.
    pub fn with_random_multipliers(mut self, seed: u64) -> GrsSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = self.field.order();
        for v in &mut self.v {
            *v = Felt::from_bits(rng.gen_range(1..=order));
        }
        self
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> &[Felt] {
        &self.alpha
    }

    pub fn multipliers(&self) -> &[Felt] {
        &self.v
    }

    /// `H diag(v)`: row `j` holds `v_i alpha_i^j` for `j = 0..d-2`.
    pub fn parity_matrix(&self) -> Matrix {
        let f = &*self.field;
        Matrix::from_fn(self.d - 1, self.n(), |j, i| {
            f.mul(self.v[i], f.pow(self.alpha[i], j as u64))
        })
    }
}

/// The subfield subcode `GRS ∩ GF(q)^n`.
#[derive(Debug, Clone)]
pub struct AlternantCode {
    grs: GrsSpec,
    parity_ext: Matrix,
    basis: Vec<Felt>,
    parity_q: Matrix,
    generator: Matrix,
}

impl AlternantCode {
    /// Expands `H diag(v)` over a subfield basis of the top field, then takes
    /// the kernel over GF(q).
    pub fn new(grs: GrsSpec) -> Result<AlternantCode> {
        let field = Arc::clone(grs.field());
        let f = &*field;
        let (basis, coords) = expansion_basis(f);
        let parity_ext = grs.parity_matrix();
        let m = f.m() as usize;
        let mut parity_q = Matrix::zeros(parity_ext.rows() * m, grs.n());
        for j in 0..parity_ext.rows() {
            for i in 0..grs.n() {
                for (c, x) in coords.expand(f, parity_ext.get(j, i)).into_iter().enumerate() {
                    parity_q.set(j * m + c, i, x);
                }
            }
        }
        let generator = parity_q.nullspace(f);
        Ok(AlternantCode {
            grs,
            parity_ext,
            basis,
            parity_q,
            generator,
        })
    }

    pub fn grs(&self) -> &GrsSpec {
        &self.grs
    }

    pub fn field(&self) -> &FieldTower {
        self.grs.field()
    }

    pub fn n(&self) -> usize {
        self.grs.n()
    }

    pub fn d(&self) -> usize {
        self.grs.d()
    }

    /// Dimension over GF(q).
    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// `H diag(v)` over the top field.
    pub fn parity_ext(&self) -> &Matrix {
        &self.parity_ext
    }

    /// The `m(d-1) x n` expansion of `H diag(v)` over GF(q).
    pub fn parity_q(&self) -> &Matrix {
        &self.parity_q
    }

    pub fn expansion_basis(&self) -> &[Felt] {
        &self.basis
    }

    /// `k_A x n` generator over GF(q), in reduced row echelon form.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Whether `word` lies in the ambient GRS code.
    pub fn satisfies_parity(&self, word: &[Felt]) -> bool {
        self.parity_ext
            .mul_vec(word, self.field())
            .iter()
            .all(|x| x.is_zero())
    }

    /// Encodes each message row (length `k_A`) into a codeword row.
    pub fn encode(&self, messages: &[Vec<Felt>]) -> Result<InterleavedMatrix> {
        let k = self.dimension();
        let f = self.field();
        let mut rows = Vec::with_capacity(messages.len());
        for msg in messages {
            if msg.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: format!("message length {k}"),
                    found: msg.len().to_string(),
                });
            }
            if let Some(bad) = msg.iter().find(|&&x| !f.in_subfield(x)) {
                return Err(Error::NotInSubfield(bad.bits()));
            }
            rows.push(if k == 0 {
                vec![Felt::ZERO; self.n()]
            } else {
                self.generator.left_mul_vec(msg, f)
            });
        }
        Ok(InterleavedMatrix::from_matrix(Matrix::from_fn(
            rows.len(),
            self.n(),
            |r, c| rows[r][c],
        )))
    }

    /// A uniformly random interleaved codeword with `ell` rows.
    pub fn random_codeword<R: Rng + ?Sized>(&self, ell: usize, rng: &mut R) -> InterleavedMatrix {
        let sub = self.field().subfield_elements();
        let messages: Vec<Vec<Felt>> = (0..ell)
            .map(|_| {
                (0..self.dimension())
                    .map(|_| sub[rng.gen_range(0..sub.len())])
                    .collect()
            })
            .collect();
        self.encode(&messages).expect("messages are well formed")
    }
}

/// Powers of the primitive element when they are independent over the
/// subfield (always the case, since `g` generates the top field over the
/// subfield); otherwise a seeded random search.
fn expansion_basis(field: &FieldTower) -> (Vec<Felt>, SubfieldCoordinates) {
    let m = field.m() as u64;
    let power: Vec<Felt> = (0..m).map(|j| field.exp(j)).collect();
    if let Some(c) = field.coordinates(&power) {
        return (power, c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    loop {
        let cand: Vec<Felt> = (0..m)
            .map(|_| Felt::from_bits(rng.gen_range(1..=field.order())))
            .collect();
        if let Some(c) = field.coordinates(&cand) {
            return (cand, c);
        }
    }
}

/// `(max{n - m(d-1), 0}, min{n - d + 1, k_opt(q, n, d)})`.
pub fn dimension_bounds(n: u64, d: u64, q: u64, m: u64) -> Result<(u64, u64)> {
    if d == 0 || d > n {
        return Err(invalid(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    let lower = n.saturating_sub(m * (d - 1));
    let upper = (n - d + 1).min(counting::k_opt(q, n, d));
    Ok((lower, upper))
}

/// An `ell x n` matrix: a stack of codewords, an error, or a received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleavedMatrix(Matrix);

impl InterleavedMatrix {
    pub fn zeros(ell: usize, n: usize) -> InterleavedMatrix {
        InterleavedMatrix(Matrix::zeros(ell, n))
    }

    pub fn from_matrix(m: Matrix) -> InterleavedMatrix {
        InterleavedMatrix(m)
    }

    pub fn from_rows(rows: Vec<Vec<Felt>>) -> InterleavedMatrix {
        InterleavedMatrix(Matrix::from_rows(rows))
    }

    pub fn ell(&self) -> usize {
        self.0.rows()
    }

    pub fn n(&self) -> usize {
        self.0.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.0.get(i, j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Felt) {
        self.0.set(i, j, x)
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        self.0.row(i)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    /// Entry-wise sum (equivalently difference) of two words.
    pub fn add(&self, other: &InterleavedMatrix) -> InterleavedMatrix {
        assert_eq!((self.ell(), self.n()), (other.ell(), other.n()));
        InterleavedMatrix(Matrix::from_fn(self.ell(), self.n(), |i, j| {
            Felt::from_bits(self.get(i, j).bits() ^ other.get(i, j).bits())
        }))
    }

    /// Indices of nonzero columns.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| (0..self.ell()).any(|i| !self.get(i, j).is_zero()))
            .collect()
    }

    pub fn is_over_subfield(&self, field: &FieldTower) -> bool {
        (0..self.ell()).all(|i| self.row(i).iter().all(|&x| field.in_subfield(x)))
    }

    /// Columns `support` as an `ell x |support|` matrix.
    pub fn restrict(&self, support: &[usize]) -> Matrix {
        Matrix::from_fn(self.ell(), support.len(), |i, k| self.get(i, support[k]))
    }

    /// Places `columns` (an `ell x t` matrix) at positions `support` of an
    /// otherwise zero `ell x n` word.
    pub fn scatter(n: usize, support: &[usize], columns: &Matrix) -> InterleavedMatrix {
        assert_eq!(support.len(), columns.cols());
        let mut out = InterleavedMatrix::zeros(columns.rows(), n);
        for (k, &j) in support.iter().enumerate() {
            for i in 0..columns.rows() {
                out.set(i, j, columns.get(i, k));
            }
        }
        out
    }
}

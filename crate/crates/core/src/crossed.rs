//! Cyclic crossed-product algebras `B_[a] = M<S>/(S^n = a, S x = x^sigma S)`.
//!
//! `M` is the fixed field of `H_M` inside some `Q(zeta_N)`, `K` the fixed
//! field of `H_K >= H_M`, and `sigma` generates the cyclic quotient
//! `H_K / H_M`. Elements are coefficient vectors over `M` in the basis
//! `1, S, ..., S^{n-1}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{mul_mod, pow_mod, RationalModOne};
use crate::cyclotomic::{CycloError, CycloNumber, CyclotomicField, GaloisElement, SubfieldDatum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossedError {
    Cyclo(CycloError),
    /// `H_M` is not contained in `H_K`.
    NotATower,
    /// `sigma` does not generate `H_K / H_M` cyclically.
    NotAGenerator { exponent: u64 },
    /// `a` is zero or not fixed by `H_K`.
    BadScalar,
    /// A coefficient is not fixed by `H_M`.
    NotInTopField,
    AlgebraMismatch,
    /// The element has no inverse.
    ZeroDivisor,
}

impl fmt::Display for CrossedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossedError::Cyclo(e) => write!(f, "{e}"),
            CrossedError::NotATower => write!(f, "top fixing subgroup is not inside the base one"),
            CrossedError::NotAGenerator { exponent } => {
                write!(f, "sigma = [{exponent}] does not generate the cyclic quotient")
            }
            CrossedError::BadScalar => write!(f, "the scalar a must be a nonzero element of the base field"),
            CrossedError::NotInTopField => write!(f, "coefficient is not in the top field"),
            CrossedError::AlgebraMismatch => write!(f, "elements belong to different algebras"),
            CrossedError::ZeroDivisor => write!(f, "element is a zero divisor"),
        }
    }
}

impl core::error::Error for CrossedError {}

impl From<CycloError> for CrossedError {
    fn from(e: CycloError) -> Self {
        CrossedError::Cyclo(e)
    }
}

/// A cyclic extension `M / K` of subfields of `Q(zeta_N)` with a chosen
/// generator `sigma` of its Galois group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGaloisDatum {
    base: SubfieldDatum,
    top: SubfieldDatum,
    sigma: GaloisElement,
    n: usize,
    /// `sigma^i` as exponents mod `N`, for `0 <= i < n`.
    sigma_powers: Vec<u64>,
}

impl CyclicGaloisDatum {
    pub fn new(base: SubfieldDatum, top: SubfieldDatum, sigma_exponent: u64) -> Result<Self, CrossedError> {
        if !top.is_subgroup_of(&base) {
            return Err(CrossedError::NotATower);
        }
        let field = top.field().clone();
        let big_n = field.conductor();
        let sigma = field.galois(sigma_exponent as i64)?;
        let s = sigma.exponent();
        let n = base.subgroup().len() / top.subgroup().len();
        let not_gen = CrossedError::NotAGenerator { exponent: s };
        if base.subgroup().binary_search(&s).is_err() {
            return Err(not_gen);
        }
        let in_top = |x: u64| top.subgroup().binary_search(&x).is_ok();
        let sigma_powers: Vec<u64> = (0..n as u64).map(|i| pow_mod(s, i, big_n)).collect();
        if sigma_powers.iter().skip(1).any(|&x| in_top(x)) || !in_top(pow_mod(s, n as u64, big_n)) {
            return Err(not_gen);
        }
        Ok(CyclicGaloisDatum { base, top, sigma, n, sigma_powers })
    }

    pub fn field(&self) -> &CyclotomicField {
        self.top.field()
    }

    pub fn conductor(&self) -> u64 {
        self.field().conductor()
    }

    pub fn base(&self) -> &SubfieldDatum {
        &self.base
    }

    pub fn top(&self) -> &SubfieldDatum {
        &self.top
    }

    pub fn sigma(&self) -> GaloisElement {
        self.sigma
    }

    /// `n = [M : K]`.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Exponent mod `N` of `sigma^i`, `i` read mod `n`.
    pub fn sigma_power(&self, i: usize) -> u64 {
        self.sigma_powers[i % self.n]
    }

    /// Applies `sigma^i` to `x`.
    pub fn act(&self, i: usize, x: &CycloNumber) -> CycloNumber {
        x.galois_image(self.sigma_power(i))
    }

    /// The lifted character on `sigma^i`: `i/n` in `[0, 1)`.
    pub fn chi_tilde(&self, i: usize) -> RationalModOne {
        RationalModOne::new((i % self.n) as i64, self.n as i64)
    }

    /// The `i` with `g H_M = sigma^i H_M`, if `g` lies in `H_K`.
    pub fn log_sigma(&self, g: u64) -> Option<usize> {
        let big_n = self.conductor();
        let g = g % big_n;
        (0..self.n).find(|&i| {
            let ratio = mul_mod(g, crate::arith::inv_mod(self.sigma_powers[i], big_n).unwrap_or(0), big_n);
            self.top.subgroup().binary_search(&ratio).is_ok()
        })
    }
}

/// `phi(sigma^i, sigma^j) = chi(sigma^j) - chi(sigma^{i+j}) + chi(sigma^i)`
/// with the lift valued in `[0, 1)`; either `0` or `1`.
pub fn cocycle_phi(i: usize, j: usize, n: usize) -> u32 {
    let (i, j) = (i % n, j % n);
    // n * (chi(j) - chi(i+j) + chi(i)), exactly divisible by n
    let scaled = j + i - (i + j) % n;
    (scaled / n) as u32
}

/// `B_[a]` over a cyclic datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProductAlgebra {
    datum: CyclicGaloisDatum,
    a: CycloNumber,
}

/// `sum_i x_i S^i` with `x_i` in `M`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossedElement {
    coeffs: Vec<CycloNumber>,
}

impl CrossedElement {
    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &CycloNumber {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<CycloNumber> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNumber::is_zero)
    }
}

/// Element `(x, sigma^g)` of the extension `1 -> M^x -> E_a -> Gal(M/K) -> 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionElement {
    pub x: CycloNumber,
    pub g: usize,
}

/// Square matrix over `Q(zeta_N)`, row-major.
pub type FieldMatrix = Vec<Vec<CycloNumber>>;

impl CrossedProductAlgebra {
    pub fn new(datum: CyclicGaloisDatum, a: CycloNumber) -> Result<Self, CrossedError> {
        if a.is_zero() || a.field() != datum.field() || !datum.base.contains(&a) {
            return Err(CrossedError::BadScalar);
        }
        Ok(CrossedProductAlgebra { datum, a })
    }

    pub fn datum(&self) -> &CyclicGaloisDatum {
        &self.datum
    }

    pub fn field(&self) -> &CyclotomicField {
        self.datum.field()
    }

    pub fn a(&self) -> &CycloNumber {
        &self.a
    }

    /// `n`; the algebra has dimension `n^2` over `K`.
    pub fn degree(&self) -> usize {
        self.datum.n
    }

    pub fn element(&self, coeffs: Vec<CycloNumber>) -> Result<CrossedElement, CrossedError> {
        if coeffs.len() != self.degree() {
            return Err(CycloError::WrongLength { expected: self.degree(), found: coeffs.len() }.into());
        }
        for c in &coeffs {
            if c.field() != self.field() {
                return Err(CrossedError::AlgebraMismatch);
            }
            if !self.datum.top.contains(c) {
                return Err(CrossedError::NotInTopField);
            }
        }
        Ok(CrossedElement { coeffs })
    }

    pub fn zero(&self) -> CrossedElement {
        CrossedElement { coeffs: vec![self.field().zero(); self.degree()] }
    }

    pub fn one(&self) -> CrossedElement {
        self.scalar(&self.field().one())
    }

    /// `x * S^0`; `x` is trusted to lie in `M`.
    pub fn scalar(&self, x: &CycloNumber) -> CrossedElement {
        self.monomial(x, 0)
    }

    /// `x * S^i`, `i` read mod `n` (no factor of `a` is introduced).
    pub fn monomial(&self, x: &CycloNumber, i: usize) -> CrossedElement {
        let mut e = self.zero();
        e.coeffs[i % self.degree()] = x.clone();
        e
    }

    /// The generator `S`.
    pub fn s(&self) -> CrossedElement {
        self.monomial(&self.field().one(), 1 % self.degree())
    }

    fn check(&self, x: &CrossedElement) -> Result<(), CrossedError> {
        if x.coeffs.len() != self.degree() || x.coeffs.first().map(|c| c.field() != self.field()).unwrap_or(true) {
            return Err(CrossedError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement, CrossedError> {
        self.check(x)?;
        self.check(y)?;
        Ok(CrossedElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(u, v)| u + v).collect() })
    }

    pub fn sub(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement, CrossedError> {
        self.check(x)?;
        self.check(y)?;
        Ok(CrossedElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(u, v)| u - v).collect() })
    }

    pub fn neg(&self, x: &CrossedElement) -> CrossedElement {
        CrossedElement { coeffs: x.coeffs.iter().map(|c| -c).collect() }
    }

    /// Left multiplication by a scalar of `M`.
    pub fn scale(&self, c: &CycloNumber, x: &CrossedElement) -> CrossedElement {
        CrossedElement { coeffs: x.coeffs.iter().map(|v| c * v).collect() }
    }

    /// Product under `S^n = a`, `S x = sigma(x) S`.
    pub fn multiply(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement, CrossedError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &CrossedElement, y: &CrossedElement) -> CrossedElement {
        let n = self.degree();
        let mut low = vec![self.field().zero(); n];
        let mut wrapped = vec![self.field().zero(); n];
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let term = xi * &self.datum.act(i, yj);
                let k = i + j;
                if k < n {
                    low[k] = &low[k] + &term;
                } else {
                    wrapped[k - n] = &wrapped[k - n] + &term;
                }
            }
        }
        let coeffs = low
            .into_iter()
            .zip(wrapped)
            .map(|(l, w)| if w.is_zero() { l } else { &l + &(&self.a * &w) })
            .collect();
        CrossedElement { coeffs }
    }

    pub fn pow(&self, x: &CrossedElement, mut e: u64) -> CrossedElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Product in `E_a`:
    /// `(x1, g1)(x2, g2) = (x1 g1(x2) a^{phi(g1, g2)}, g1 g2)`.
    pub fn extension_multiply(&self, e1: &ExtensionElement, e2: &ExtensionElement) -> ExtensionElement {
        let n = self.degree();
        let mut x = &e1.x * &self.datum.act(e1.g, &e2.x);
        if cocycle_phi(e1.g, e2.g, n) == 1 {
            x = &x * &self.a;
        }
        ExtensionElement { x, g: (e1.g + e2.g) % n }
    }

    pub fn extension_identity(&self) -> ExtensionElement {
        ExtensionElement { x: self.field().one(), g: 0 }
    }

    /// `(x, sigma^g) -> x S^g`, the inclusion `E_a -> B_[a]^x`.
    pub fn extension_to_algebra(&self, e: &ExtensionElement) -> CrossedElement {
        self.monomial(&e.x, e.g)
    }

    /// Matrix of `z -> z y` on coefficient vectors: `R[r][i]` is
    /// `sigma^i(y_{r-i})` for `i <= r` and `a sigma^i(y_{r-i+n})` above the
    /// diagonal.
    pub fn regular_rep(&self, y: &CrossedElement) -> Result<FieldMatrix, CrossedError> {
        self.check(y)?;
        let n = self.degree();
        let mut rows = vec![vec![self.field().zero(); n]; n];
        for (r, row) in rows.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                *entry = if i <= r {
                    self.datum.act(i, &y.coeffs[r - i])
                } else {
                    &self.a * &self.datum.act(i, &y.coeffs[r + n - i])
                };
            }
        }
        Ok(rows)
    }

    /// Two-sided inverse, found by solving `R_y c = e_0`.
    pub fn inverse(&self, y: &CrossedElement) -> Result<CrossedElement, CrossedError> {
        let mut rhs = vec![self.field().zero(); self.degree()];
        rhs[0] = self.field().one();
        let coeffs = solve(self.regular_rep(y)?, rhs).ok_or(CrossedError::ZeroDivisor)?;
        Ok(CrossedElement { coeffs })
    }

    /// `M_k(B)` presented by a twisted shift; `k = 1` returns `B` itself.
    pub fn matrix_induction(&self, k: usize) -> Result<InducedAlgebra, CrossedError> {
        if k == 0 {
            return Err(CycloError::WrongLength { expected: 1, found: 0 }.into());
        }
        let zero = self.zero();
        let mut shift = vec![vec![zero; k]; k];
        for r in 0..k - 1 {
            shift[r][r + 1] = self.one();
        }
        shift[k - 1][0] = self.s();
        Ok(InducedAlgebra { base: self.clone(), k, shift })
    }
}

// ---------------------------------------------------------------------------
// Linear algebra over Q(zeta_N)

pub fn mat_mul(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    let n = a.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    let zero = a[0][0].field().zero();
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| {
                    a[r].iter().zip(b.iter()).fold(zero.clone(), |acc, (x, row)| {
                        if x.is_zero() || row[c].is_zero() { acc } else { &acc + &(x * &row[c]) }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &FieldMatrix, v: &[CycloNumber]) -> Vec<CycloNumber> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(v[0].field().zero(), |acc, (x, y)| &acc + &(x * y)))
        .collect()
}

pub fn mat_trace(a: &FieldMatrix) -> CycloNumber {
    a.iter().enumerate().fold(a[0][0].field().zero(), |acc, (i, row)| &acc + &row[i])
}

/// Gaussian elimination; `None` if the matrix is singular.
pub fn solve(mut a: FieldMatrix, mut b: Vec<CycloNumber>) -> Option<Vec<CycloNumber>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inverse().ok()?;
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Some(b)
}

// ---------------------------------------------------------------------------
// Matrix induction

/// `M_k(B_[a])` realized as `k x k` matrices over `B_[a]`, with the twisted
/// shift `S'` (identity blocks above the diagonal, `S` in the corner). It
/// satisfies `S'^{nk} = (a, ..., a)` and `S' x = sigma'(x) S'` for diagonal
/// `x = (m_1, ..., m_k)`, where `sigma'(m_1, ..., m_k) = (m_2, ..., m_k, m_1^sigma)`.
#[derive(Debug, Clone)]
pub struct InducedAlgebra {
    base: CrossedProductAlgebra,
    k: usize,
    shift: Vec<Vec<CrossedElement>>,
}

pub type BlockMatrix = Vec<Vec<CrossedElement>>;

impl InducedAlgebra {
    pub fn base(&self) -> &CrossedProductAlgebra {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shift(&self) -> &BlockMatrix {
        &self.shift
    }

    /// Order of the induced cyclic action, `n k`.
    pub fn cyclic_order(&self) -> usize {
        self.base.degree() * self.k
    }

    /// Dimension over `K`: `(n k)^2`.
    pub fn dimension_over_base(&self) -> usize {
        self.cyclic_order() * self.cyclic_order()
    }

    pub fn twist(&self, x: &[CycloNumber]) -> Vec<CycloNumber> {
        let mut out: Vec<CycloNumber> = x[1..].to_vec();
        out.push(self.base.datum.act(1, &x[0]));
        out
    }

    pub fn diagonal(&self, x: &[CycloNumber]) -> BlockMatrix {
        let mut m = vec![vec![self.base.zero(); self.k]; self.k];
        for (i, xi) in x.iter().enumerate() {
            m[i][i] = self.base.scalar(xi);
        }
        m
    }

    pub fn block_mul(&self, x: &BlockMatrix, y: &BlockMatrix) -> BlockMatrix {
        let b = &self.base;
        (0..self.k)
            .map(|r| {
                (0..self.k)
                    .map(|c| {
                        (0..self.k).fold(b.zero(), |acc, j| {
                            if x[r][j].is_zero() || y[j][c].is_zero() {
                                acc
                            } else {
                                b.add(&acc, &b.mul(&x[r][j], &y[j][c])).expect("same algebra")
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn block_pow(&self, x: &BlockMatrix, e: usize) -> BlockMatrix {
        let mut acc = self.diagonal(&vec![self.base.field().one(); self.k]);
        for _ in 0..e {
            acc = self.block_mul(&acc, x);
        }
        acc
    }

    /// `S'^{nk}` computed by repeated multiplication, compared with
    /// `diag(a, ..., a)`.
    pub fn verify_power_relation(&self) -> bool {
        let power = self.block_pow(&self.shift, self.cyclic_order());
        power == self.diagonal(&vec![self.base.a.clone(); self.k])
    }

    /// `S' x = sigma'(x) S'` for the diagonal matrix of `x`.
    pub fn verify_twist_relation(&self, x: &[CycloNumber]) -> bool {
        let left = self.block_mul(&self.shift, &self.diagonal(x));
        let right = self.block_mul(&self.diagonal(&self.twist(x)), &self.shift);
        left == right
    }
}

//! The involution of the second kind on `D'` fixed by `x -> conj(x)` on `M`
//! and `T -> T^-1 = omega^-1 T^{p-2}`, its positivity, and the hermitian
//! form bookkeeping for the unitary similitude groups.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::artin::{self, LocalPlace, NormClass, NormClassGroupDatum};
use crate::crossed::{mat_trace, CrossedElement, CrossedError, CrossedProductAlgebra};
use crate::cyclotomic::{complex_embed, rel_norm, tower_trace, CycloNumber, CyclotomicField, SubfieldDatum};
use crate::hewett::DPrime;
use crate::numeric::ComplexInterval;

/// `D'` with its involution.
#[derive(Debug, Clone)]
pub struct InvolutedAlgebra {
    dprime: DPrime,
    omega_inv: CycloNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    NotPositive,
    /// Some interval contains zero at the requested precision.
    Inconclusive,
}

impl fmt::Display for Positivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Positivity::Positive => "positive",
            Positivity::NotPositive => "not positive",
            Positivity::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PositivityReport {
    /// `Tr(x x^dagger) = Tr_{M/L}(sum x_i conj(x_i))` holds exactly.
    pub identity_holds: bool,
    /// `Tr_{M/L}(sum x_i conj(x_i))`, an element of `L`.
    pub trace: CycloNumber,
    /// The trace under each complex embedding of `L`, keyed by exponent.
    pub values: Vec<(u64, ComplexInterval)>,
    pub verdict: Positivity,
}

impl InvolutedAlgebra {
    pub fn new(dprime: DPrime) -> Result<Self, CrossedError> {
        let omega_inv = dprime.omega().inverse()?;
        Ok(InvolutedAlgebra { dprime, omega_inv })
    }

    pub fn dprime(&self) -> &DPrime {
        &self.dprime
    }

    pub fn algebra(&self) -> &CrossedProductAlgebra {
        self.dprime.algebra()
    }

    /// `(x_i T^i)^dagger = (T^-1)^i conj(x_i) = omega^-1 sigma^{n-i}(conj x_i) T^{n-i}`.
    pub fn dagger(&self, x: &CrossedElement) -> CrossedElement {
        let alg = self.algebra();
        let n = alg.degree();
        let datum = alg.datum();
        let mut coeffs = vec![alg.field().zero(); n];
        for (i, xi) in x.coeffs().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let c = xi.conj();
            if i == 0 {
                coeffs[0] = c;
            } else {
                coeffs[n - i] = &self.omega_inv * &datum.act(n - i, &c);
            }
        }
        alg.element(coeffs).expect("conjugation preserves M")
    }

    /// `(T^dagger)^i conj(x_i)` summed through the algebra product; the slow
    /// path used to cross-check [`Self::dagger`].
    pub fn dagger_by_products(&self, x: &CrossedElement) -> CrossedElement {
        let alg = self.algebra();
        let n = alg.degree();
        let t_dag = alg.monomial(&self.omega_inv, n - 1);
        let mut acc = alg.zero();
        let mut power = alg.one();
        for xi in x.coeffs() {
            let term = alg.multiply(&power, &alg.scalar(&xi.conj())).expect("same algebra");
            acc = alg.add(&acc, &term).expect("same algebra");
            power = alg.multiply(&power, &t_dag).expect("same algebra");
        }
        acc
    }

    /// `Tr_{D'/L}(y) = Tr_{M/L}(y_0)`.
    pub fn reduced_trace(&self, y: &CrossedElement) -> CycloNumber {
        tower_trace(y.coeff(0), self.dprime.top(), self.dprime.center()).expect("y_0 lies in M")
    }

    /// Trace of the regular representation, `sum_i sigma^i(y_0)`.
    pub fn matrix_trace(&self, y: &CrossedElement) -> Result<CycloNumber, CrossedError> {
        Ok(mat_trace(&self.algebra().regular_rep(y)?))
    }

    pub fn is_unitary(&self, g: &CrossedElement) -> Result<bool, CrossedError> {
        let alg = self.algebra();
        alg.inverse(g)?;
        Ok(alg.multiply(&self.dagger(g), g)? == alg.one())
    }

    /// Exact reduction of `Tr(x x^dagger)` followed by interval evaluation at
    /// every complex embedding of `L`.
    pub fn positivity_report(&self, x: &CrossedElement, digits: u32) -> Result<PositivityReport, CrossedError> {
        if x.is_zero() {
            return Err(CrossedError::ZeroDivisor);
        }
        let alg = self.algebra();
        let xx = alg.multiply(x, &self.dagger(x))?;
        let lhs = self.reduced_trace(&xx);
        let sum = x.coeffs().iter().fold(alg.field().zero(), |acc, xi| &acc + &(xi * &xi.conj()));
        let trace = tower_trace(&sum, self.dprime.top(), self.dprime.center())?;
        let identity_holds = lhs == trace;
        let mut values = Vec::new();
        let mut verdict = Positivity::Positive;
        for s in self.dprime.center().embedding_exponents() {
            let v = complex_embed(&trace, s, digits)?;
            if !v.is_positive_real() {
                let definitely_bad = !v.is_real() || v.real_sign() == Some(core::cmp::Ordering::Less);
                verdict = match (verdict, definitely_bad) {
                    (Positivity::NotPositive, _) | (_, true) => Positivity::NotPositive,
                    _ => Positivity::Inconclusive,
                };
            }
            values.push((s, v));
        }
        if !identity_holds {
            verdict = Positivity::NotPositive;
        }
        Ok(PositivityReport { identity_holds, trace, values, verdict })
    }
}

// ---------------------------------------------------------------------------
// Hermitian forms

/// A diagonal hermitian form over `F = Q(sqrt d0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianFormDatum {
    pub entries: Vec<BigRational>,
    pub d0: i64,
    /// The alternating-form scalar data, recorded only.
    pub beta: Option<Vec<BigRational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittIndex {
    Index(usize),
    /// Odd dimension: all forms lie in one similitude class.
    SimilitudeClassUnique,
}

impl fmt::Display for WittIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittIndex::Index(k) => write!(f, "{k}"),
            WittIndex::SimilitudeClassUnique => f.write_str("similitude class unique"),
        }
    }
}

impl HermitianFormDatum {
    pub fn new(entries: Vec<BigRational>, d0: i64) -> Result<Self, artin::ArtinError> {
        if entries.iter().any(Zero::is_zero) {
            return Err(artin::ArtinError::ZeroArgument);
        }
        NormClassGroupDatum::new(LocalPlace::Infinite, d0)?;
        Ok(HermitianFormDatum { entries, d0, beta: None })
    }

    /// `diag(1, -1, ..., -1)` of dimension `d`.
    pub fn reference(d: usize, d0: i64) -> Result<Self, artin::ArtinError> {
        let mut entries = vec![-BigRational::one(); d];
        if let Some(first) = entries.first_mut() {
            *first = BigRational::one();
        }
        Self::new(entries, d0)
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn disc(&self) -> BigRational {
        self.entries.iter().fold(BigRational::one(), |acc, e| acc * e)
    }

    /// `(positive, negative)` entries: the signature at the real place.
    pub fn signature(&self) -> (usize, usize) {
        let pos = self.entries.iter().filter(|e| e.is_positive()).count();
        (pos, self.dimension() - pos)
    }

    pub fn disc_class(&self, place: LocalPlace) -> Result<NormClass, artin::ArtinError> {
        artin::norm_class(&self.disc(), &NormClassGroupDatum::new(place, self.d0)?)
    }

    /// `d/2` when `disc (-1)^{d/2}` is a norm, else `d/2 - 1`.
    pub fn witt_index(&self, place: LocalPlace) -> Result<WittIndex, artin::ArtinError> {
        let d = self.dimension();
        if d % 2 == 1 {
            return Ok(WittIndex::SimilitudeClassUnique);
        }
        let sign = if (d / 2) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let datum = NormClassGroupDatum::new(place, self.d0)?;
        Ok(match artin::norm_class(&(self.disc() * sign), &datum)? {
            NormClass::Trivial => WittIndex::Index(d / 2),
            NormClass::Nontrivial => WittIndex::Index((d / 2).saturating_sub(1)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceInvariants {
    pub place: LocalPlace,
    pub ramified: bool,
    pub disc_class: NormClass,
    pub witt_index: WittIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuReference {
    pub p: u64,
    /// Dimension `n = p - 1`.
    pub n: usize,
    pub d0: i64,
    pub form: HermitianFormDatum,
    pub signature: (usize, usize),
    /// Non-split finite places up to the search bound.
    pub places: Vec<PlaceInvariants>,
}

/// `d0` with `F = Q(sqrt d0)` for `p` in `{3, 5, 7}`.
pub fn reference_d0(p: u64) -> Option<i64> {
    match p {
        3 => Some(-2),
        5 => Some(-1),
        7 => Some(-3),
        _ => None,
    }
}

/// Primes below this bound are listed by [`gu_reference_invariants`].
pub const PLACE_SEARCH_BOUND: u64 = 60;

/// Disc classes and Witt indices of `diag(1, -1, ..., -1)` at the non-split
/// finite places of `F`.
pub fn gu_reference_invariants(p: u64) -> Result<GuReference, artin::ArtinError> {
    let d0 = reference_d0(p).ok_or(artin::ArtinError::NotPrime(p))?;
    gu_invariants_for(p, (p - 1) as usize, d0)
}

/// Same as [`gu_reference_invariants`] for any dimension and field.
pub fn gu_invariants_for(p: u64, d: usize, d0: i64) -> Result<GuReference, artin::ArtinError> {
    let form = HermitianFormDatum::reference(d, d0)?;
    let mut places = Vec::new();
    for l in (2..PLACE_SEARCH_BOUND).filter(|&l| crate::arith::is_prime_u64(l)) {
        let place = LocalPlace::Finite(l);
        let datum = NormClassGroupDatum::new(place, d0)?;
        if datum.is_split() {
            continue;
        }
        places.push(PlaceInvariants {
            place,
            ramified: datum.is_ramified(),
            disc_class: form.disc_class(place)?,
            witt_index: form.witt_index(place)?,
        });
    }
    Ok(GuReference { p, n: d, d0, signature: form.signature(), form, places })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormXiCheck {
    /// `N_{M/F}((1+i) zeta_5 + (1-i) zeta_5^-1)` with `M = Q(zeta_20)`, `F = Q(i)`.
    pub value: BigRational,
    pub expected: BigRational,
    /// Class of the value in `Q_2^x / N(Q_2(i)^x)`.
    pub class_at_2: NormClass,
}

impl NormXiCheck {
    pub fn passed(&self) -> bool {
        self.value == self.expected && self.class_at_2 == NormClass::Nontrivial
    }
}

/// The determinant of the form at `p = 5`, computed as an exact norm.
pub fn norm_xi_check() -> Result<NormXiCheck, String> {
    let k = CyclotomicField::new(20).map_err(|e| alloc::format!("{e}"))?;
    let i = k.zeta_power(5);
    let z5 = k.zeta_power(4);
    let one = k.one();
    let xi = &(&(&one + &i) * &z5) + &(&(&one - &i) * &z5.pow(-1).map_err(|e| alloc::format!("{e}"))?);
    let f = SubfieldDatum::new(&k, &[9, 13]).map_err(|e| alloc::format!("{e}"))?;
    let value = rel_norm(&xi, &f)
        .map_err(|e| alloc::format!("{e}"))?
        .as_rational()
        .ok_or_else(|| String::from("norm is not rational"))?;
    let datum = NormClassGroupDatum::new(LocalPlace::Finite(2), -1).map_err(|e| alloc::format!("{e}"))?;
    let class_at_2 = artin::norm_class(&value, &datum).map_err(|e| alloc::format!("{e}"))?;
    Ok(NormXiCheck { value, expected: BigRational::from_integer(BigInt::from(-4)), class_at_2 })
}

// ---------------------------------------------------------------------------
// Block companion matrices over Z[C_n]

/// An element of `Z[sigma]/(sigma^n - 1)` as coefficients of `sigma^k`.
pub type GroupRingElement = Vec<i64>;
pub type GroupRingMatrix = Vec<Vec<GroupRingElement>>;

fn gr_zero(n: usize) -> GroupRingElement {
    vec![0; n]
}

fn gr_monomial(n: usize, k: usize) -> GroupRingElement {
    let mut e = gr_zero(n);
    e[k % n] = 1;
    e
}

fn gr_mul(x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
    let n = x.len();
    let mut out = gr_zero(n);
    for (i, a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
        for (j, b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
            out[(i + j) % n] += a * b;
        }
    }
    out
}

/// `sigma^k -> sigma^{-k}`.
fn gr_bar(x: &GroupRingElement) -> GroupRingElement {
    let n = x.len();
    (0..n).map(|k| x[(n - k) % n]).collect()
}

fn grm_mul(a: &GroupRingMatrix, b: &GroupRingMatrix, n: usize) -> GroupRingMatrix {
    let m = a.len();
    (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    (0..m).fold(gr_zero(n), |acc, j| {
                        let t = gr_mul(&a[r][j], &b[j][c]);
                        acc.iter().zip(&t).map(|(u, v)| u + v).collect()
                    })
                })
                .collect()
        })
        .collect()
}

fn grm_pow(a: &GroupRingMatrix, e: usize, n: usize) -> GroupRingMatrix {
    let m = a.len();
    let mut acc: GroupRingMatrix =
        (0..m).map(|r| (0..m).map(|c| if r == c { gr_monomial(n, 0) } else { gr_zero(n) }).collect()).collect();
    for _ in 0..e {
        acc = grm_mul(&acc, a, n);
    }
    acc
}

/// Replaces `sigma` by the `n x n` cyclic permutation matrix.
fn expand(a: &GroupRingMatrix, n: usize) -> Vec<Vec<i64>> {
    let m = a.len();
    let mut big = vec![vec![0i64; n * m]; n * m];
    for (r, row) in a.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            for (k, coef) in e.iter().enumerate() {
                // sigma^k sends basis vector j to j + k
                for j in 0..n {
                    big[r * n + (j + k) % n][c * n + j] += coef;
                }
            }
        }
    }
    big
}

fn int_mat_pow(a: &[Vec<i64>], e: usize) -> Vec<Vec<i64>> {
    let d = a.len();
    let mut acc: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| i64::from(r == c)).collect()).collect();
    for _ in 0..e {
        acc = (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|j| acc[r][j] * a[j][c]).sum()).collect())
            .collect();
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrixModel {
    pub n: usize,
    pub m: usize,
    pub s: GroupRingMatrix,
    /// `S^m = sigma I`.
    pub power_m_is_sigma: bool,
    /// `S^{nm} = I`.
    pub power_nm_is_identity: bool,
    /// `conj(S)^T = S^{nm - 1}` over `Z[C_n]` with `sigma -> sigma^-1`.
    pub conjugate_transpose_holds: bool,
    /// The literal transpose of the `nm x nm` integer matrix equals `S^{nm-1}`.
    pub integer_transpose_holds: bool,
}

impl BlockMatrixModel {
    pub fn passed(&self) -> bool {
        self.power_m_is_sigma && self.power_nm_is_identity && self.conjugate_transpose_holds && self.integer_transpose_holds
    }
}

/// The `m x m` block companion matrix with identity blocks above the
/// diagonal and `sigma` in the corner, checked as a formal identity.
pub fn block_matrix_model(n: usize, m: usize) -> Option<BlockMatrixModel> {
    if n == 0 || m == 0 {
        return None;
    }
    let mut s: GroupRingMatrix = vec![vec![gr_zero(n); m]; m];
    for r in 0..m - 1 {
        s[r][r + 1] = gr_monomial(n, 0);
    }
    s[m - 1][0] = gr_add(&s[m - 1][0], &gr_monomial(n, 1));
    let scalar = |k: usize| -> GroupRingMatrix {
        (0..m).map(|r| (0..m).map(|c| if r == c { gr_monomial(n, k) } else { gr_zero(n) }).collect()).collect()
    };
    let power_m_is_sigma = grm_pow(&s, m, n) == scalar(1);
    let power_nm_is_identity = grm_pow(&s, n * m, n) == scalar(0);
    let inverse = grm_pow(&s, n * m - 1, n);
    let conj_t: GroupRingMatrix = (0..m).map(|r| (0..m).map(|c| gr_bar(&s[c][r])).collect()).collect();
    let conjugate_transpose_holds = conj_t == inverse;
    let big = expand(&s, n);
    let d = n * m;
    let big_t: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| big[c][r]).collect()).collect();
    let integer_transpose_holds = big_t == int_mat_pow(&big, d - 1) && big_t == expand(&inverse, n);
    Some(BlockMatrixModel {
        n,
        m,
        s,
        power_m_is_sigma,
        power_nm_is_identity,
        conjugate_transpose_holds,
        integer_transpose_holds,
    })
}

fn gr_add(x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hewett::build_dprime;

    #[test]
    fn dagger_examples() {
        let inv = InvolutedAlgebra::new(build_dprime(5, 1, 1).unwrap()).unwrap();
        let alg = inv.algebra().clone();
        assert_eq!(inv.dagger(&alg.one()), alg.one());
        let t = alg.s();
        assert_eq!(alg.multiply(&inv.dagger(&t), &t).unwrap(), alg.one());
        let w = alg.scalar(inv.dprime().omega());
        assert_eq!(alg.multiply(&inv.dagger(&w), &w).unwrap(), alg.one());
        assert!(inv.is_unitary(&t).unwrap());
        assert!(inv.is_unitary(&w).unwrap());
        assert!(!inv.is_unitary(&alg.scalar(&alg.field().from_integer(2))).unwrap());
        assert!(inv.is_unitary(&alg.zero()).is_err());
    }

    #[test]
    fn dagger_of_t_for_p3_is_minus_t() {
        let inv = InvolutedAlgebra::new(build_dprime(3, 1, 1).unwrap()).unwrap();
        let alg = inv.algebra();
        assert_eq!(inv.dagger(&alg.s()), alg.neg(&alg.s()));
    }

    #[test]
    fn trace_examples() {
        let inv = InvolutedAlgebra::new(build_dprime(5, 1, 1).unwrap()).unwrap();
        let alg = inv.algebra();
        assert_eq!(inv.reduced_trace(&alg.one()), alg.field().from_integer(4));
        assert!(inv.reduced_trace(&alg.s()).is_zero());
        let r = inv.positivity_report(&alg.s(), 50).unwrap();
        assert!(r.identity_holds);
        assert_eq!(r.trace, alg.field().from_integer(4));
        assert_eq!(r.verdict, Positivity::Positive);
        assert_eq!(r.values.len(), 2);
    }

    #[test]
    fn reference_forms() {
        let two = LocalPlace::Finite(2);
        let g5 = gu_reference_invariants(5).unwrap();
        let at2 = g5.places.iter().find(|p| p.place == two).unwrap();
        assert_eq!(at2.witt_index, WittIndex::Index(1));
        for p in [3, 7] {
            let g = gu_reference_invariants(p).unwrap();
            assert!(!g.places.is_empty());
            assert!(g.places.iter().all(|pl| pl.witt_index == WittIndex::Index((p as usize - 1) / 2)));
        }
        let odd = HermitianFormDatum::reference(3, -1).unwrap();
        assert_eq!(odd.witt_index(two).unwrap(), WittIndex::SimilitudeClassUnique);
        assert_eq!(g5.signature, (1, 3));
    }

    #[test]
    fn norm_xi() {
        let r = norm_xi_check().unwrap();
        assert_eq!(r.value, BigRational::from_integer((-4).into()));
        assert_eq!(r.class_at_2, NormClass::Nontrivial);
        assert!(r.passed());
    }

    #[test]
    fn block_models() {
        for (n, m) in [(1, 1), (3, 1), (2, 2), (4, 3)] {
            let b = block_matrix_model(n, m).unwrap();
            assert!(b.passed(), "{n} {m}: {b:?}");
        }
        let b = block_matrix_model(1, 1).unwrap();
        assert_eq!(b.s, vec![vec![vec![1]]]);
        assert!(block_matrix_model(0, 2).is_none());
    }
}

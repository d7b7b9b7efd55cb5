//! Exact arithmetic in `Q(zeta_N)`.
//!
//! Elements live in the power basis `{zeta^j : 0 <= j < phi(N)}` modulo the
//! `N`-th cyclotomic polynomial, stored as an integer numerator vector over a
//! single positive denominator. The representation is canonical, so equality
//! is structural.
//!
//! Subfields are never given by primitive elements. A subfield is named by
//! the subgroup `H <= (Z/N)^x` fixing it, and norms and traces down a tower
//! are products and sums over coset representatives.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, gcd_u64, mul_mod, pow_mod, ArithError, UnitGroupData};

/// Largest conductor a [`CyclotomicField`] is built for.
pub const MAX_CONDUCTOR: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycloError {
    ConductorMismatch { left: u64, right: u64 },
    ConductorTooLarge(u64),
    NotAUnit { exponent: u64, conductor: u64 },
    WrongLength { expected: usize, found: usize },
    DivisionByZero,
    NotInSubfield,
    NotASubgroup,
    Arith(ArithError),
}

impl fmt::Display for CycloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloError::ConductorMismatch { left, right } => {
                write!(f, "conductor mismatch: {left} vs {right}")
            }
            CycloError::ConductorTooLarge(n) => {
                write!(f, "conductor {n} exceeds the limit {MAX_CONDUCTOR}")
            }
            CycloError::NotAUnit { exponent, conductor } => {
                write!(f, "{exponent} is not a unit modulo {conductor}")
            }
            CycloError::WrongLength { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            CycloError::DivisionByZero => write!(f, "division by zero"),
            CycloError::NotInSubfield => write!(f, "element is not fixed by the subgroup"),
            CycloError::NotASubgroup => write!(f, "subgroups are not nested"),
            CycloError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CycloError {}

impl From<ArithError> for CycloError {
    fn from(e: ArithError) -> Self {
        CycloError::Arith(e)
    }
}

/// The `N`-th cyclotomic polynomial, coefficients from the constant term up.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order zero");
    // x^n - 1 = prod_{d | n} Phi_d
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

/// Quotient of integer polynomials when the divisor is monic and divides exactly.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

struct FieldData {
    conductor: u64,
    degree: usize,
    /// `x^k mod Phi_N` for `0 <= k < N`.
    powers: Vec<Vec<BigInt>>,
    units: UnitGroupData,
}

/// Shared handle to `Q(zeta_N)` with its reduction tables.
#[derive(Clone)]
pub struct CyclotomicField(Arc<FieldData>);

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.conductor)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.0.conductor == other.0.conductor
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(ArithError::ZeroModulus.into());
        }
        if conductor > MAX_CONDUCTOR {
            return Err(CycloError::ConductorTooLarge(conductor));
        }
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..conductor {
            powers.push(current.clone());
            // multiply by x and reduce the overflow with the monic Phi_N
            let top = current[degree - 1].clone();
            for j in (1..degree).rev() {
                current[j] = current[j - 1].clone();
            }
            current[0] = BigInt::zero();
            if !top.is_zero() {
                for j in 0..degree {
                    current[j] -= &top * &phi[j];
                }
            }
        }
        let units = UnitGroupData::new(conductor)?;
        Ok(CyclotomicField(Arc::new(FieldData { conductor, degree, powers, units })))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    /// `phi(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// `(Z/N)^x`, which is also the Galois group.
    pub fn units(&self) -> &UnitGroupData {
        &self.0.units
    }

    fn raw(&self, num: Vec<BigInt>, den: BigInt) -> CycloNumber {
        let mut x = CycloNumber { field: self.clone(), num, den };
        x.normalize();
        x
    }

    pub fn zero(&self) -> CycloNumber {
        CycloNumber { field: self.clone(), num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }

    pub fn one(&self) -> CycloNumber {
        self.from_integer(BigInt::one())
    }

    pub fn from_integer(&self, k: impl Into<BigInt>) -> CycloNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = k.into();
        self.raw(num, BigInt::one())
    }

    pub fn from_rational(&self, q: &BigRational) -> CycloNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        self.raw(num, q.denom().clone())
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_power(&self, k: i64) -> CycloNumber {
        let idx = k.rem_euclid(self.conductor() as i64) as usize;
        self.raw(self.0.powers[idx].clone(), BigInt::one())
    }

    pub fn zeta(&self) -> CycloNumber {
        self.zeta_power(1)
    }

    /// The element with the given power-basis coefficients.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<CycloNumber, CycloError> {
        if coeffs.len() != self.degree() {
            return Err(CycloError::WrongLength { expected: self.degree(), found: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(self.raw(num, den))
    }

    pub fn from_integer_coeffs(&self, coeffs: &[BigInt]) -> Result<CycloNumber, CycloError> {
        if coeffs.len() != self.degree() {
            return Err(CycloError::WrongLength { expected: self.degree(), found: coeffs.len() });
        }
        Ok(self.raw(coeffs.to_vec(), BigInt::one()))
    }

    /// `sum c_k zeta^k` over arbitrary exponents, reduced to canonical form.
    pub fn from_exponent_terms(&self, terms: &[(i64, BigRational)]) -> CycloNumber {
        terms.iter().fold(self.zero(), |acc, (k, c)| acc + self.zeta_power(*k).scale(c))
    }

    pub fn galois(&self, exponent: i64) -> Result<GaloisElement, CycloError> {
        GaloisElement::new(self.conductor(), exponent)
    }

    /// Complex conjugation, `[-1]`.
    pub fn conjugation(&self) -> GaloisElement {
        GaloisElement { conductor: self.conductor(), exponent: (self.conductor() - 1) % self.conductor().max(1) }
    }
}

/// An element of `Q(zeta_N)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycloNumber {
    field: CyclotomicField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.num[j].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|j| self.coeff(j)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// `Some(q)` when the element is the rational number `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn check_same(&self, other: &CycloNumber) -> Result<(), CycloError> {
        if self.field != other.field {
            return Err(CycloError::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        self.check_same(other)?;
        let den = &self.den * &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(self.field.raw(num, den))
    }

    pub fn try_mul(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        let d = self.field.degree();
        let n = self.field.conductor() as usize;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (j, p) in self.field.0.powers[k % n].iter().enumerate() {
                if !p.is_zero() {
                    num[j] += c * p;
                }
            }
        }
        Ok(self.field.raw(num, &self.den * &other.den))
    }

    pub fn scale(&self, q: &BigRational) -> CycloNumber {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        self.field.raw(num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> CycloNumber {
        let num = self.num.iter().map(|c| c * k).collect();
        self.field.raw(num, self.den.clone())
    }

    /// Image under `zeta -> zeta^s`.
    pub fn galois_image(&self, s: u64) -> CycloNumber {
        let n = self.field.conductor();
        let d = self.field.degree();
        let mut num = vec![BigInt::zero(); d];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = mul_mod(j as u64, s % n, n) as usize;
            for (i, p) in self.field.0.powers[k].iter().enumerate() {
                if !p.is_zero() {
                    num[i] += c * p;
                }
            }
        }
        self.field.raw(num, self.den.clone())
    }

    pub fn conj(&self) -> CycloNumber {
        let n = self.field.conductor();
        self.galois_image((n - 1) % n.max(1))
    }

    /// Norm down to `Q`, as a rational.
    pub fn absolute_norm(&self) -> BigRational {
        let mut acc = self.field.one();
        for &s in self.field.units().elements() {
            acc = &acc * &self.galois_image(s);
        }
        acc.as_rational().expect("the absolute norm is rational")
    }

    /// Multiplicative inverse via the product of the non-trivial conjugates.
    pub fn inverse(&self) -> Result<CycloNumber, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let identity = 1 % self.field.conductor();
        let mut adj = self.field.one();
        for &s in self.field.units().elements() {
            if s != identity {
                adj = &adj * &self.galois_image(s);
            }
        }
        let norm = (&adj * self).as_rational().expect("the absolute norm is rational");
        Ok(adj.scale(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<CycloNumber, CycloError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &b;
            }
            exp >>= 1;
            if exp > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNumber {}

impl Ord for CycloNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.den.cmp(&other.den))
            .then_with(|| self.num.cmp(&other.num))
    }
}

impl PartialOrd for CycloNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl core::hash::Hash for CycloNumber {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{a}*z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_add(rhs).expect("conductor mismatch in addition")
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: CycloNumber) -> CycloNumber {
        &self + &rhs
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_add(&-rhs).expect("conductor mismatch in subtraction")
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: CycloNumber) -> CycloNumber {
        &self - &rhs
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_mul(rhs).expect("conductor mismatch in multiplication")
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: CycloNumber) -> CycloNumber {
        &self * &rhs
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Galois action

/// The automorphism `zeta_N -> zeta_N^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisElement {
    conductor: u64,
    exponent: u64,
}

impl GaloisElement {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(ArithError::ZeroModulus.into());
        }
        let s = exponent.rem_euclid(conductor as i64) as u64;
        if gcd_u64(s, conductor) != 1 && conductor != 1 {
            return Err(CycloError::NotAUnit { exponent: s, conductor });
        }
        Ok(GaloisElement { conductor, exponent: s })
    }

    pub fn identity(conductor: u64) -> Self {
        GaloisElement { conductor, exponent: 1 % conductor }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        assert_eq!(self.conductor, other.conductor);
        GaloisElement {
            conductor: self.conductor,
            exponent: mul_mod(self.exponent, other.exponent, self.conductor),
        }
    }

    pub fn pow(&self, k: u64) -> GaloisElement {
        GaloisElement { conductor: self.conductor, exponent: pow_mod(self.exponent, k, self.conductor) }
    }

    pub fn inverse(&self) -> GaloisElement {
        let inv = arith::inv_mod(self.exponent, self.conductor).expect("unit");
        GaloisElement { conductor: self.conductor, exponent: inv }
    }

    pub fn order(&self) -> u64 {
        if self.conductor == 1 {
            return 1;
        }
        arith::mult_order_u64(self.exponent, self.conductor).expect("unit")
    }

    pub fn apply(&self, x: &CycloNumber) -> Result<CycloNumber, CycloError> {
        if x.conductor() != self.conductor {
            return Err(CycloError::ConductorMismatch { left: self.conductor, right: x.conductor() });
        }
        Ok(x.galois_image(self.exponent))
    }
}

pub fn galois_apply(g: &GaloisElement, x: &CycloNumber) -> Result<CycloNumber, CycloError> {
    g.apply(x)
}

// ---------------------------------------------------------------------------
// Subfields

/// The subfield of `Q(zeta_N)` fixed by a subgroup `H <= (Z/N)^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldDatum {
    field: CyclotomicField,
    generators: Vec<u64>,
    subgroup: Vec<u64>,
}

impl SubfieldDatum {
    pub fn new(field: &CyclotomicField, generators: &[u64]) -> Result<Self, CycloError> {
        let subgroup = field.units().subgroup(generators)?;
        let n = field.conductor();
        let generators = generators.iter().map(|g| g % n).collect();
        Ok(SubfieldDatum { field: field.clone(), generators, subgroup })
    }

    /// The subfield with the given fixing subgroup, listed in full.
    pub fn from_subgroup(field: &CyclotomicField, subgroup: &[u64]) -> Result<Self, CycloError> {
        let closed = field.units().subgroup(subgroup)?;
        let mut listed: Vec<u64> = subgroup.iter().map(|g| g % field.conductor()).collect();
        listed.sort_unstable();
        listed.dedup();
        if closed != listed {
            return Err(CycloError::NotASubgroup);
        }
        Ok(SubfieldDatum { field: field.clone(), generators: closed.clone(), subgroup: closed })
    }

    /// `Q(zeta_N)` itself.
    pub fn whole(field: &CyclotomicField) -> Self {
        SubfieldDatum {
            field: field.clone(),
            generators: Vec::new(),
            subgroup: vec![1 % field.conductor()],
        }
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    /// Degree of the fixed field over `Q`.
    pub fn degree(&self) -> usize {
        self.field.degree() / self.subgroup.len()
    }

    pub fn contains(&self, x: &CycloNumber) -> bool {
        x.field == self.field && self.generators.iter().all(|&g| x.galois_image(g) == *x)
    }

    pub fn is_subgroup_of(&self, other: &SubfieldDatum) -> bool {
        self.field == other.field
            && self.subgroup.iter().all(|h| other.subgroup.binary_search(h).is_ok())
    }

    /// Orthogonal projection onto the fixed field (trace divided by `|H|`).
    pub fn project(&self, x: &CycloNumber) -> CycloNumber {
        let t = self.trace_from_top(x);
        t.scale(&BigRational::new(BigInt::one(), BigInt::from(self.subgroup.len())))
    }

    fn trace_from_top(&self, x: &CycloNumber) -> CycloNumber {
        self.subgroup.iter().fold(x.field.zero(), |acc, &h| &acc + &x.galois_image(h))
    }

    /// Coset representatives of `H` in `(Z/N)^x`, minimal in each coset. Each
    /// one names a complex embedding of the fixed field.
    pub fn embedding_exponents(&self) -> Vec<u64> {
        coset_representatives(self.field.units().elements(), &self.subgroup, self.field.conductor())
    }
}

fn coset_representatives(group: &[u64], sub: &[u64], n: u64) -> Vec<u64> {
    let mut covered = alloc::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for &x in group {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        for &h in sub {
            covered.insert(mul_mod(x, h, n));
        }
    }
    reps
}

/// `prod_{h in H} h(x)`: the norm from `Q(zeta_N)` to the fixed field of `H`.
pub fn rel_norm(x: &CycloNumber, sub: &SubfieldDatum) -> Result<CycloNumber, CycloError> {
    if x.field != sub.field {
        return Err(CycloError::ConductorMismatch { left: x.conductor(), right: sub.field.conductor() });
    }
    Ok(sub.subgroup.iter().fold(x.field.one(), |acc, &h| &acc * &x.galois_image(h)))
}

/// `sum_{h in H} h(x)`: the trace from `Q(zeta_N)` to the fixed field of `H`.
pub fn rel_trace(x: &CycloNumber, sub: &SubfieldDatum) -> Result<CycloNumber, CycloError> {
    if x.field != sub.field {
        return Err(CycloError::ConductorMismatch { left: x.conductor(), right: sub.field.conductor() });
    }
    Ok(sub.trace_from_top(x))
}

fn tower_reps(top: &SubfieldDatum, bottom: &SubfieldDatum) -> Result<Vec<u64>, CycloError> {
    if !top.is_subgroup_of(bottom) {
        return Err(CycloError::NotASubgroup);
    }
    Ok(coset_representatives(&bottom.subgroup, &top.subgroup, top.field.conductor()))
}

/// Norm from the fixed field of `top` down to the fixed field of `bottom`.
pub fn tower_norm(
    x: &CycloNumber,
    top: &SubfieldDatum,
    bottom: &SubfieldDatum,
) -> Result<CycloNumber, CycloError> {
    if !top.contains(x) {
        return Err(CycloError::NotInSubfield);
    }
    let reps = tower_reps(top, bottom)?;
    Ok(reps.iter().fold(x.field.one(), |acc, &h| &acc * &x.galois_image(h)))
}

/// Trace from the fixed field of `top` down to the fixed field of `bottom`.
pub fn tower_trace(
    x: &CycloNumber,
    top: &SubfieldDatum,
    bottom: &SubfieldDatum,
) -> Result<CycloNumber, CycloError> {
    if !top.contains(x) {
        return Err(CycloError::NotInSubfield);
    }
    let reps = tower_reps(top, bottom)?;
    Ok(reps.iter().fold(x.field.zero(), |acc, &h| &acc + &x.galois_image(h)))
}

/// Numeric value of `x` at the embedding `zeta_N -> exp(2 pi i s / N)`.
pub fn complex_embed(
    x: &CycloNumber,
    s: u64,
    digits: u32,
) -> Result<crate::numeric::ComplexInterval, CycloError> {
    let n = x.conductor();
    if gcd_u64(s % n, n) != 1 && n != 1 {
        return Err(CycloError::NotAUnit { exponent: s, conductor: n });
    }
    let terms: Vec<(u64, &BigInt)> = x
        .num
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (mul_mod(j as u64, s % n, n), c))
        .collect();
    Ok(crate::numeric::evaluate_root_sum(&terms, &x.den, n, digits))
}

impl CycloNumber {
    /// Readable coefficient list, used in error messages and reports.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| alloc::format!("{}/{}", c.numer(), c.denom())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() - 1, 48);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn zeta_to_the_conductor_is_one() {
        for n in [1u64, 2, 3, 8, 12, 15, 20, 24] {
            let k = CyclotomicField::new(n).unwrap();
            assert_eq!(k.zeta().pow(n as i64).unwrap(), k.one(), "n = {n}");
            assert_eq!(k.zeta_power(n as i64), k.one());
        }
    }

    #[test]
    fn galois_examples() {
        let k4 = CyclotomicField::new(4).unwrap();
        let z = k4.zeta();
        assert_eq!(galois_apply(&k4.galois(1).unwrap(), &z).unwrap(), z);
        assert_eq!(galois_apply(&k4.galois(-1).unwrap(), &z).unwrap(), -&z);
        let k5 = CyclotomicField::new(5).unwrap();
        assert_eq!(galois_apply(&k5.galois(2).unwrap(), &k5.zeta()).unwrap(), k5.zeta_power(2));
        assert!(k5.galois(5).is_err());
        let wrong = k4.galois(3).unwrap();
        assert!(wrong.apply(&k5.zeta()).is_err());
    }

    #[test]
    fn norm_and_trace_examples() {
        let k5 = CyclotomicField::new(5).unwrap();
        let all = SubfieldDatum::new(&k5, &[2]).unwrap();
        let trivial = SubfieldDatum::whole(&k5);
        let x = &k5.one() - &k5.zeta();
        assert_eq!(rel_norm(&x, &trivial).unwrap(), x);
        assert_eq!(rel_norm(&x, &all).unwrap(), k5.from_integer(5));
        assert_eq!(rel_norm(&k5.zeta(), &all).unwrap(), k5.one());
        assert_eq!(rel_trace(&x, &trivial).unwrap(), x);
        assert_eq!(rel_trace(&k5.zeta(), &all).unwrap(), k5.from_integer(-1));
        let k12 = CyclotomicField::new(12).unwrap();
        let h = SubfieldDatum::new(&k12, &[5]).unwrap();
        assert_eq!(rel_trace(&k12.one(), &h).unwrap(), k12.from_integer(2));
    }

    #[test]
    fn inverse_round_trips() {
        let k = CyclotomicField::new(15).unwrap();
        let x = &(&k.zeta() + &k.from_integer(3)) - &k.zeta_power(4);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, k.one());
        assert_eq!(k.zero().inverse(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn tower_norm_composes() {
        // Q(zeta_20) > Q(i) > Q
        let k = CyclotomicField::new(20).unwrap();
        let top = SubfieldDatum::whole(&k);
        let mid = SubfieldDatum::new(&k, &[9, 13]).unwrap();
        let bottom = SubfieldDatum::new(&k, &[3, 11]).unwrap();
        let x = &k.zeta_power(3) + &k.from_integer(2);
        let step = tower_norm(&x, &top, &mid).unwrap();
        assert!(mid.contains(&step));
        let full = tower_norm(&step, &mid, &bottom).unwrap();
        assert_eq!(full, rel_norm(&x, &bottom).unwrap());
        assert_eq!(full.as_rational().unwrap(), x.absolute_norm());
    }

    #[test]
    fn display_is_readable() {
        let k = CyclotomicField::new(5).unwrap();
        let x = &k.from_integer(2) - &k.zeta_power(2);
        assert_eq!(x.to_string(), "2 - z^2");
        assert_eq!(k.zero().to_string(), "0");
    }
}

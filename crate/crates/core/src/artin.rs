//! Local class field theory bookkeeping: invariants of unramified cyclic
//! algebras, the action of units on `p`-power roots of unity, Hilbert
//! symbols and norm classes of quadratic extensions of `Q_l`.
//!
//! Conventions: uniformizers act as Frobenius on unramified extensions, and
//! a unit `u` acts on `p`-power roots of unity by `zeta -> zeta^{u^-1}`.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, inv_mod, pow_mod, RationalModOne};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArtinError {
    NotPrime(u64),
    NotAUnit { value: u64, prime: u64 },
    ZeroArgument,
    NotSquarefree(i64),
    ZeroDegree,
    Overflow,
}

impl fmt::Display for ArtinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArtinError::NotPrime(l) => write!(f, "{l} is not prime"),
            ArtinError::NotAUnit { value, prime } => write!(f, "{value} is divisible by {prime}"),
            ArtinError::ZeroArgument => write!(f, "argument must be nonzero"),
            ArtinError::NotSquarefree(d) => write!(f, "{d} is not a squarefree integer other than 1"),
            ArtinError::ZeroDegree => write!(f, "degree must be positive"),
            ArtinError::Overflow => write!(f, "modulus overflows 64 bits"),
        }
    }
}

impl core::error::Error for ArtinError {}

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalPlace {
    Finite(u64),
    Infinite,
}

impl LocalPlace {
    pub fn finite(l: u64) -> Result<Self, ArtinError> {
        if arith::is_prime_u64(l) {
            Ok(LocalPlace::Finite(l))
        } else {
            Err(ArtinError::NotPrime(l))
        }
    }
}

impl fmt::Display for LocalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalPlace::Finite(l) => write!(f, "{l}"),
            LocalPlace::Infinite => write!(f, "inf"),
        }
    }
}

/// Invariant of `B_[a]` over a local field with `M` unramified of degree `n`
/// and `v(a) = valuation`: `valuation / n` mod 1.
pub fn unramified_invariant(valuation: i64, n: u64) -> Result<RationalModOne, ArtinError> {
    if n == 0 {
        return Err(ArtinError::ZeroDegree);
    }
    Ok(RationalModOne::new(valuation, n as i64))
}

/// `g^{p^{alpha-1}} mod p^alpha`: the root of unity of order dividing `p - 1`
/// congruent to `g` mod `p`.
pub fn teichmuller_lift(g: u64, p: u64, alpha: u32) -> Result<u64, ArtinError> {
    if !arith::is_prime_u64(p) {
        return Err(ArtinError::NotPrime(p));
    }
    if g % p == 0 {
        return Err(ArtinError::NotAUnit { value: g, prime: p });
    }
    let pa = p.checked_pow(alpha).ok_or(ArtinError::Overflow)?;
    let e = p.checked_pow(alpha.saturating_sub(1)).ok_or(ArtinError::Overflow)?;
    Ok(pow_mod(g % pa, e, pa))
}

/// Exponent `s` with which the unit `u` acts on `mu_{p^alpha}`: `u^-1 mod p^alpha`.
pub fn cyclotomic_artin_exponent(u: u64, p: u64, alpha: u32) -> Result<u64, ArtinError> {
    if !arith::is_prime_u64(p) {
        return Err(ArtinError::NotPrime(p));
    }
    if u % p == 0 {
        return Err(ArtinError::NotAUnit { value: u, prime: p });
    }
    let pa = p.checked_pow(alpha).ok_or(ArtinError::Overflow)?;
    Ok(inv_mod(u % pa, pa).expect("prime to p"))
}

/// Smallest primitive root mod an odd prime `p`.
pub fn smallest_primitive_root(p: u64) -> Result<u64, ArtinError> {
    if !arith::is_prime_u64(p) {
        return Err(ArtinError::NotPrime(p));
    }
    Ok((1..p.max(2)).find(|&g| arith::mult_order_u64(g, p).ok() == Some(p - 1)).unwrap_or(1))
}

// ---------------------------------------------------------------------------
// Hilbert symbols

/// `x` up to squares as an integer: `n/d ~ n d`.
fn square_class_integer(x: &BigRational) -> BigInt {
    x.numer() * x.denom()
}

/// `(v, u)` with `x = l^v u`, `l` not dividing `u`.
fn split_valuation(x: &BigInt, l: u64) -> (u64, BigInt) {
    let l = BigInt::from(l);
    let mut u = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = u.div_rem(&l);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Legendre symbol of a unit mod an odd prime, as `0` (residue) or `1`.
fn legendre_bit(u: &BigInt, l: u64) -> u64 {
    if pow_mod(residue(u, l), (l - 1) / 2, l) == 1 {
        0
    } else {
        1
    }
}

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nonzero solution over
/// the completion of `Q` at `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: LocalPlace) -> Result<i8, ArtinError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArtinError::ZeroArgument);
    }
    if let LocalPlace::Finite(l) = v {
        LocalPlace::finite(l)?;
    }
    let (a, b) = (square_class_integer(a), square_class_integer(b));
    let bit = match v {
        LocalPlace::Infinite => u64::from(a.is_negative() && b.is_negative()),
        LocalPlace::Finite(2) => {
            let (alpha, u) = split_valuation(&a, 2);
            let (beta, w) = split_valuation(&b, 2);
            let eps = |x: &BigInt| (residue(x, 4) - 1) / 2;
            let omega = |x: &BigInt| {
                let r = residue(x, 8);
                ((r * r - 1) / 8) % 2
            };
            eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u)
        }
        LocalPlace::Finite(l) => {
            let (alpha, u) = split_valuation(&a, l);
            let (beta, w) = split_valuation(&b, l);
            let eps_l = (l - 1) / 2;
            alpha * beta * eps_l + beta * legendre_bit(&u, l) + alpha * legendre_bit(&w, l)
        }
    };
    Ok(if bit % 2 == 0 { 1 } else { -1 })
}

/// Convenience wrapper on integers.
pub fn hilbert_symbol_int(a: i64, b: i64, v: LocalPlace) -> Result<i8, ArtinError> {
    hilbert_symbol(&BigRational::from_integer(a.into()), &BigRational::from_integer(b.into()), v)
}

/// Whether `x` is a square in the completion of `Q` at `v`.
pub fn is_local_square(x: &BigRational, v: LocalPlace) -> Result<bool, ArtinError> {
    if x.is_zero() {
        return Err(ArtinError::ZeroArgument);
    }
    let n = square_class_integer(x);
    Ok(match v {
        LocalPlace::Infinite => n.is_positive(),
        LocalPlace::Finite(2) => {
            let (e, u) = split_valuation(&n, 2);
            e % 2 == 0 && residue(&u, 8) == 1
        }
        LocalPlace::Finite(l) => {
            let (e, u) = split_valuation(&n, l);
            e % 2 == 0 && legendre_bit(&u, l) == 0
        }
    })
}

// ---------------------------------------------------------------------------
// Norm classes

/// The quadratic extension `Q_l(sqrt d) / Q_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormClassGroupDatum {
    place: LocalPlace,
    d: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormClass {
    Trivial,
    Nontrivial,
}

impl fmt::Display for NormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormClass::Trivial => "trivial",
            NormClass::Nontrivial => "nontrivial",
        })
    }
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl NormClassGroupDatum {
    pub fn new(place: LocalPlace, d: i64) -> Result<Self, ArtinError> {
        if d == 1 || !is_squarefree(d) {
            return Err(ArtinError::NotSquarefree(d));
        }
        if let LocalPlace::Finite(l) = place {
            LocalPlace::finite(l)?;
        }
        Ok(NormClassGroupDatum { place, d })
    }

    pub fn place(&self) -> LocalPlace {
        self.place
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `d` is a square in `Q_l`, so the extension is split.
    pub fn is_split(&self) -> bool {
        is_local_square(&BigRational::from_integer(self.d.into()), self.place).expect("d is nonzero")
    }

    /// `|Q_l^x / N|`: 1 when split, 2 otherwise.
    pub fn class_group_order(&self) -> usize {
        if self.is_split() {
            1
        } else {
            2
        }
    }

    /// `l` divides the discriminant of `Q(sqrt d)`.
    pub fn is_ramified(&self) -> bool {
        match self.place {
            LocalPlace::Infinite => self.d < 0,
            LocalPlace::Finite(2) => self.d.rem_euclid(4) != 1,
            LocalPlace::Finite(l) => self.d.unsigned_abs() % l == 0,
        }
    }
}

/// Class of `x` in `Q_l^x / N(Q_l(sqrt d)^x)`, via `(x, d)_l`.
pub fn norm_class(x: &BigRational, datum: &NormClassGroupDatum) -> Result<NormClass, ArtinError> {
    let d = BigRational::from_integer(datum.d.into());
    Ok(if hilbert_symbol(x, &d, datum.place)? == 1 { NormClass::Trivial } else { NormClass::Nontrivial })
}

// ---------------------------------------------------------------------------
// Norms of roots of unity in unramified extensions

/// A root of unity `beta = zeta^e` in the degree-`d` unramified extension of
/// the field with residue field `F_{l^t}`, where `zeta` generates
/// `mu_{l^{dt} - 1}`. Its norm is `beta^K` with `K = (l^{dt}-1)/(l^t-1)`,
/// and `omega_0 = zeta^K` generates `mu_{l^t - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitNormPreimage {
    pub e: u64,
    /// `l^{dt} - 1`.
    pub big_order: u64,
    /// `l^t - 1`.
    pub small_order: u64,
    /// `K`.
    pub norm_exponent: u64,
    /// The target `omega = omega_0^{omega_exp}`.
    pub omega_exp: u64,
}

impl UnitNormPreimage {
    /// `e K = omega_exp K mod (l^{dt} - 1)`, i.e. `N(beta) = omega`.
    pub fn satisfies_congruence(&self) -> bool {
        let n = self.big_order;
        arith::mul_mod(self.e, self.norm_exponent, n) == arith::mul_mod(self.omega_exp, self.norm_exponent, n)
    }
}

/// Finds `beta = zeta^e` with norm `omega_0^{omega_exp}`.
pub fn unit_norm_preimage(l: u64, t: u32, d: u32, omega_exp: u64) -> Result<UnitNormPreimage, ArtinError> {
    if !arith::is_prime_u64(l) {
        return Err(ArtinError::NotPrime(l));
    }
    if t == 0 || d == 0 {
        return Err(ArtinError::ZeroDegree);
    }
    let small = l.checked_pow(t).ok_or(ArtinError::Overflow)? - 1;
    let dt = d.checked_mul(t).ok_or(ArtinError::Overflow)?;
    let big = l.checked_pow(dt).ok_or(ArtinError::Overflow)? - 1;
    let k = big / small;
    // The norm restricted to mu is e -> e K on exponents; relative to
    // omega_0 = zeta^K it is reduction mod l^t - 1, which is onto.
    let omega_exp = omega_exp % small;
    let e = omega_exp;
    Ok(UnitNormPreimage { e, big_order: big, small_order: small, norm_exponent: k, omega_exp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a: i64, b: i64, v: LocalPlace) -> i8 {
        hilbert_symbol_int(a, b, v).unwrap()
    }

    #[test]
    fn invariant_examples() {
        assert!(unramified_invariant(0, 5).unwrap().is_zero());
        assert_eq!(unramified_invariant(1, 4).unwrap(), RationalModOne::new(1, 4));
        assert_eq!(unramified_invariant(7, 4).unwrap(), RationalModOne::new(3, 4));
        assert_eq!(unramified_invariant(-1, 4).unwrap(), RationalModOne::new(3, 4));
        assert!(unramified_invariant(1, 0).is_err());
    }

    #[test]
    fn artin_exponent_examples() {
        assert_eq!(cyclotomic_artin_exponent(1, 5, 2).unwrap(), 1);
        assert_eq!(cyclotomic_artin_exponent(2, 5, 1).unwrap(), 3);
        assert!(cyclotomic_artin_exponent(10, 5, 1).is_err());
        for (p, alpha) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let pa = p.pow(alpha);
            let g = smallest_primitive_root(p).unwrap();
            let u = teichmuller_lift(g, p, alpha).unwrap();
            assert_eq!(u % p, g % p);
            assert_eq!(arith::mult_order_u64(u, pa).unwrap(), p - 1);
            let s = cyclotomic_artin_exponent(u, p, alpha).unwrap();
            assert_eq!(arith::mult_order_u64(s, pa).unwrap(), p - 1);
        }
    }

    #[test]
    fn hilbert_examples() {
        for v in [LocalPlace::Infinite, LocalPlace::Finite(2), LocalPlace::Finite(3), LocalPlace::Finite(7)] {
            for b in [-7, -1, 2, 3, 10] {
                assert_eq!(h(1, b, v), 1);
            }
        }
        assert_eq!(h(-1, -1, LocalPlace::Infinite), -1);
        assert_eq!(h(-1, -1, LocalPlace::Finite(2)), -1);
        assert_eq!(h(-1, -1, LocalPlace::Finite(3)), 1);
        assert_eq!(h(2, 3, LocalPlace::Finite(3)), -1);
        assert_eq!(h(2, 5, LocalPlace::Finite(5)), -1);
        let half = BigRational::new(1.into(), 2.into());
        let two = BigRational::from_integer(2.into());
        let m1 = BigRational::from_integer((-1).into());
        assert_eq!(
            hilbert_symbol(&half, &m1, LocalPlace::Finite(2)).unwrap(),
            hilbert_symbol(&two, &m1, LocalPlace::Finite(2)).unwrap()
        );
        assert!(hilbert_symbol(&BigRational::zero(), &two, LocalPlace::Infinite).is_err());
    }

    #[test]
    fn norm_class_examples() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let two = NormClassGroupDatum::new(LocalPlace::Finite(2), -1).unwrap();
        assert_eq!(norm_class(&q(1), &two).unwrap(), NormClass::Trivial);
        assert_eq!(norm_class(&q(-1), &two).unwrap(), NormClass::Nontrivial);
        assert_eq!(norm_class(&q(2), &two).unwrap(), NormClass::Trivial);
        assert_eq!(norm_class(&q(-4), &two).unwrap(), NormClass::Nontrivial);
        assert!(two.is_ramified());
        assert_eq!(two.class_group_order(), 2);
        // -7 = 1 mod 8 is a 2-adic square
        let split = NormClassGroupDatum::new(LocalPlace::Finite(2), -7).unwrap();
        assert!(split.is_split());
        assert_eq!(split.class_group_order(), 1);
        assert!(NormClassGroupDatum::new(LocalPlace::Finite(2), 12).is_err());
        assert!(NormClassGroupDatum::new(LocalPlace::Finite(4), -1).is_err());
    }

    #[test]
    fn local_squares() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert!(is_local_square(&q(17), LocalPlace::Finite(2)).unwrap());
        assert!(!is_local_square(&q(5), LocalPlace::Finite(2)).unwrap());
        assert!(is_local_square(&q(-2), LocalPlace::Finite(3)).unwrap());
        assert!(!is_local_square(&q(3), LocalPlace::Finite(3)).unwrap());
        assert!(is_local_square(&q(9), LocalPlace::Finite(3)).unwrap());
        assert!(!is_local_square(&q(-1), LocalPlace::Infinite).unwrap());
    }

    #[test]
    fn unit_norm_preimage_examples() {
        assert_eq!(unit_norm_preimage(3, 1, 2, 0).unwrap().e, 0);
        let r = unit_norm_preimage(2, 2, 2, 1).unwrap();
        assert_eq!((r.big_order, r.small_order, r.norm_exponent), (15, 3, 5));
        assert!(r.satisfies_congruence());
        let r = unit_norm_preimage(3, 1, 2, 1).unwrap();
        assert!(r.satisfies_congruence());
        // the norm of zeta^e is zeta^{e K}, which must equal omega_0 = zeta^K
        assert_eq!(arith::mul_mod(r.e, r.norm_exponent, r.big_order), r.norm_exponent);
        assert!(unit_norm_preimage(4, 1, 1, 0).is_err());
    }
}

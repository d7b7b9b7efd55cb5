//! Number-theoretic kernel: Euler's phi, multiplicative orders, the Chinese
//! remainder theorem, unit groups `(Z/N)^x` and rationals modulo one.
//!
//! Anything whose size is governed by the input (moduli, orders, CRT
//! solutions) is carried as a big integer. Unit groups are enumerated
//! explicitly, so their moduli are plain `u64` and every product goes
//! through `u128`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division stops here; anything left over is tested for primality.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Largest modulus for which [`UnitGroupData`] enumerates its elements.
pub const MAX_ENUMERATED_MODULUS: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    ZeroModulus,
    NotCoprime { value: BigInt, modulus: BigUint },
    NonCoprimeModuli { first: BigUint, second: BigUint },
    /// A composite cofactor survived trial division and is too large to split.
    FactorizationLimit(BigUint),
    /// The modulus is too large to enumerate `(Z/N)^x` explicitly.
    ModulusTooLarge(u64),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroModulus => write!(f, "modulus must be positive"),
            ArithError::NotCoprime { value, modulus } => {
                write!(f, "{value} is not a unit modulo {modulus}")
            }
            ArithError::NonCoprimeModuli { first, second } => {
                write!(f, "moduli {first} and {second} are not coprime")
            }
            ArithError::FactorizationLimit(n) => {
                write!(f, "cannot factor {n} by trial division up to {TRIAL_DIVISION_BOUND}")
            }
            ArithError::ModulusTooLarge(n) => {
                write!(f, "modulus {n} exceeds the enumeration limit {MAX_ENUMERATED_MODULUS}")
            }
        }
    }
}

impl core::error::Error for ArithError {}

// ---------------------------------------------------------------------------
// Machine-word modular helpers

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

/// `base^exp` with overflow reported as `None`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

// ---------------------------------------------------------------------------
// Primality and factorization

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases. This is a proof of
/// primality below 3.3 * 10^24 and a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in SMALL_PRIMES.iter() {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigUint::from(n))
}

/// Prime factorization by trial division up to [`TRIAL_DIVISION_BOUND`]; a
/// leftover cofactor is accepted as prime when it is below the square of the
/// bound or passes [`is_probable_prime`].
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroModulus);
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let bound = BigUint::from(TRIAL_DIVISION_BOUND);
        if rest < &bound * &bound || is_probable_prime(&rest) {
            out.push((rest, 1));
        } else {
            return Err(ArithError::FactorizationLimit(rest));
        }
    }
    Ok(out)
}

pub fn euler_phi(n: &BigUint) -> Result<BigUint, ArithError> {
    let mut phi = BigUint::one();
    for (p, e) in factorize(n)? {
        phi *= (&p - 1u32) * p.pow(e - 1);
    }
    Ok(phi)
}

pub fn euler_phi_u64(n: u64) -> Result<u64, ArithError> {
    euler_phi(&BigUint::from(n)).map(|v| v.to_u64().expect("phi(n) <= n"))
}

/// Smallest `k >= 1` with `a^k = 1 mod n`.
pub fn mult_order(a: &BigInt, n: &BigUint) -> Result<BigUint, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroModulus);
    }
    let nn = BigInt::from(n.clone());
    let a_red = a.mod_floor(&nn).to_biguint().expect("non-negative residue");
    if !a_red.gcd(n).is_one() {
        return Err(ArithError::NotCoprime { value: a.clone(), modulus: n.clone() });
    }
    let phi = euler_phi(n)?;
    let mut order = phi.clone();
    for (p, _) in factorize(&phi)? {
        while (&order % &p).is_zero() {
            let candidate = &order / &p;
            if a_red.modpow(&candidate, n).is_one() || n.is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

pub fn mult_order_u64(a: u64, n: u64) -> Result<u64, ArithError> {
    mult_order(&BigInt::from(a), &BigUint::from(n)).map(|v| v.to_u64().expect("order <= n"))
}

/// Solves the system `x = r_i mod n_i` for pairwise coprime moduli, returning
/// the minimal non-negative solution and the product of the moduli.
pub fn crt_solve(congruences: &[(BigInt, BigUint)]) -> Result<(BigUint, BigUint), ArithError> {
    let mut x = BigInt::zero();
    let mut modulus = BigUint::one();
    for (r, n) in congruences {
        if n.is_zero() {
            return Err(ArithError::ZeroModulus);
        }
        if !modulus.gcd(n).is_one() {
            return Err(ArithError::NonCoprimeModuli { first: modulus, second: n.clone() });
        }
        let m = BigInt::from(modulus.clone());
        let nn = BigInt::from(n.clone());
        // x + m * k = r (mod n)
        let inv = m.extended_gcd(&nn).x;
        let k = ((r - &x) * inv).mod_floor(&nn);
        x += &m * k;
        modulus *= n;
        x = x.mod_floor(&BigInt::from(modulus.clone()));
    }
    Ok((x.to_biguint().expect("reduced residue"), modulus))
}

pub fn crt_solve_u64(congruences: &[(u64, u64)]) -> Result<u64, ArithError> {
    let big: Vec<(BigInt, BigUint)> =
        congruences.iter().map(|&(r, n)| (BigInt::from(r), BigUint::from(n))).collect();
    crt_solve(&big).map(|(x, _)| x.to_u64().expect("solution fits the product of u64 moduli"))
}

// ---------------------------------------------------------------------------
// Unit groups

/// The unit group `(Z/N)^x`, elements sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupData {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitGroupData {
    pub fn new(modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        if modulus > MAX_ENUMERATED_MODULUS {
            return Err(ArithError::ModulusTooLarge(modulus));
        }
        let elements = if modulus == 1 {
            alloc::vec![0]
        } else {
            (1..modulus).filter(|&k| gcd_u64(k, modulus) == 1).collect()
        };
        Ok(UnitGroupData { modulus, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    /// The subgroup generated by `gens`, sorted ascending.
    pub fn subgroup(&self, gens: &[u64]) -> Result<Vec<u64>, ArithError> {
        let n = self.modulus;
        let one = 1 % n;
        for &g in gens {
            if gcd_u64(g % n, n) != 1 && n != 1 {
                return Err(ArithError::NotCoprime {
                    value: BigInt::from(g),
                    modulus: BigUint::from(n),
                });
            }
        }
        let mut members = alloc::vec![one];
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(one);
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = mul_mod(x, g % n, n);
                if seen.insert(y) {
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Ok(members)
    }
}

/// A subgroup of `(Z/N)^x` with one representative per coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosets {
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    /// Minimal positive element of each coset, ascending; the identity coset
    /// is labelled by 1.
    pub representatives: Vec<u64>,
}

impl Cosets {
    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: u64) -> Option<usize> {
        let x = x % self.modulus;
        self.representatives.iter().position(|&r| {
            self.subgroup.iter().any(|&h| mul_mod(r, h, self.modulus) == x)
        })
    }
}

pub fn subgroup_cosets(modulus: u64, gens: &[u64]) -> Result<Cosets, ArithError> {
    let group = UnitGroupData::new(modulus)?;
    let subgroup = group.subgroup(gens)?;
    let mut covered = alloc::collections::BTreeSet::new();
    let mut representatives = Vec::new();
    for &x in group.elements() {
        if covered.contains(&x) {
            continue;
        }
        representatives.push(if modulus == 1 { 1 } else { x });
        for &h in &subgroup {
            covered.insert(mul_mod(x, h, modulus));
        }
    }
    Ok(Cosets { modulus, subgroup, representatives })
}

// ---------------------------------------------------------------------------
// Q/Z

/// A class in `Q/Z`, stored as the reduced fraction in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalModOne(BigRational);

impl RationalModOne {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let floor = q.floor();
        RationalModOne(q - floor)
    }

    pub fn zero() -> Self {
        RationalModOne(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// `k * self` in `Q/Z`.
    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_rational(&self.0 * BigRational::from_integer(k.clone()))
    }

    /// Parses `"num/den"` or a bare integer.
    pub fn parse(s: &str) -> Option<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(Self::new(n, d))
    }
}

impl fmt::Display for RationalModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for RationalModOne {
    type Output = RationalModOne;
    fn add(self, rhs: Self) -> Self {
        Self::from_rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a RationalModOne> for &'a RationalModOne {
    type Output = RationalModOne;
    fn add(self, rhs: &RationalModOne) -> RationalModOne {
        RationalModOne::from_rational(&self.0 + &rhs.0)
    }
}

impl AddAssign for RationalModOne {
    fn add_assign(&mut self, rhs: Self) {
        *self = RationalModOne::from_rational(&self.0 + rhs.0);
    }
}

impl Neg for RationalModOne {
    type Output = RationalModOne;
    fn neg(self) -> Self {
        Self::from_rational(-self.0)
    }
}

impl Sub for RationalModOne {
    type Output = RationalModOne;
    fn sub(self, rhs: Self) -> Self {
        Self::from_rational(self.0 - rhs.0)
    }
}

impl core::iter::Sum for RationalModOne {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalModOne::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi_u64(1).unwrap(), 1);
        assert_eq!(euler_phi_u64(4).unwrap(), 2);
        assert_eq!(euler_phi_u64(8).unwrap(), 4);
    }

    #[test]
    fn phi_matches_brute_force_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            assert_eq!(euler_phi_u64(n).unwrap(), brute_phi(n), "n = {n}");
        }
    }

    #[test]
    fn phi_of_large_semiprime_uses_cofactor_test() {
        // 1_000_003 * 1_000_033 has no factor below the trial bound.
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let n = big(p) * big(q);
        assert_eq!(factorize(&n), Err(ArithError::FactorizationLimit(n.clone())));
        let n = big(p) * big(7);
        assert_eq!(euler_phi(&n).unwrap(), big((p - 1) * 6));
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order_u64(1, 7).unwrap(), 1);
        assert_eq!(mult_order_u64(5, 4).unwrap(), 1);
        assert_eq!(mult_order_u64(3, 8).unwrap(), 2);
        assert!(mult_order_u64(2, 4).is_err());
    }

    #[test]
    fn order_divides_phi_and_is_minimal() {
        for n in 2..300u64 {
            let phi = euler_phi_u64(n).unwrap();
            for a in 1..n {
                if gcd_u64(a, n) != 1 {
                    continue;
                }
                let k = mult_order_u64(a, n).unwrap();
                assert_eq!(phi % k, 0);
                let brute = (1..=n).find(|&e| pow_mod(a, e, n) == 1).unwrap();
                assert_eq!(k, brute, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_solve_u64(&[(0, 1)]).unwrap(), 0);
        assert_eq!(crt_solve_u64(&[(1, 4), (0, 5)]).unwrap(), 5);
        assert_eq!(crt_solve_u64(&[(1, 2), (2, 3)]).unwrap(), 5);
        assert!(matches!(
            crt_solve_u64(&[(1, 4), (1, 6)]),
            Err(ArithError::NonCoprimeModuli { .. })
        ));
    }

    #[test]
    fn coset_examples() {
        let c = subgroup_cosets(4, &[1]).unwrap();
        assert_eq!(c.subgroup, [1]);
        assert_eq!(c.representatives, [1, 3]);
        let c = subgroup_cosets(8, &[3, 5, 7]).unwrap();
        assert_eq!(c.subgroup, [1, 3, 5, 7]);
        assert_eq!(c.representatives, [1]);
        let c = subgroup_cosets(2, &[1]).unwrap();
        assert_eq!(c.subgroup, [1]);
        assert_eq!(c.representatives, [1]);
    }

    #[test]
    fn unit_group_is_closed() {
        for n in 1..60u64 {
            let g = UnitGroupData::new(n).unwrap();
            assert_eq!(g.order() as u64, brute_phi(n));
            for &a in g.elements() {
                for &b in g.elements() {
                    assert!(g.contains(g.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn rational_mod_one_normalizes() {
        assert_eq!(RationalModOne::new(5, 4), RationalModOne::new(1, 4));
        assert_eq!(RationalModOne::new(-1, 4), RationalModOne::new(3, 4));
        assert_eq!(RationalModOne::new(0, 7).to_string(), "0/1");
        let q = RationalModOne::new(3, 10);
        assert!((q.clone() + (-q)).is_zero());
        assert_eq!(RationalModOne::parse("6/8"), Some(RationalModOne::new(3, 4)));
    }
}

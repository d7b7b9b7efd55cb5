//! Global data: the realizability classifier, CM coset data, invariant
//! profiles of the global division algebras, and the explicit algebra
//! `D' = M<T>/(T^{p-1} = omega, T x = x^sigma T)` into whose unit group
//! `G_alpha` embeds via `a -> omega zeta`, `b -> T`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use crate::arith::{self, crt_solve_u64, pow_mod, RationalModOne};
use crate::artin;
use crate::crossed::{CrossedElement, CrossedError, CrossedProductAlgebra, CyclicGaloisDatum};
use crate::cyclotomic::{CycloError, CycloNumber, CyclotomicField, SubfieldDatum};
use crate::groups::{self, GroupError, IsoOutcome, MetacyclicPresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HewettError {
    InvalidParameters(&'static str),
    /// `-1` lies in `<p>` mod `p^m - 1`, so the fixed field is not CM.
    NotCm { p: u64, m: u32 },
    /// `p^m - 1 <= 2`; only `(3, 1)` hits this and it is handled separately.
    Degenerate { p: u64, m: u32 },
    Overflow,
    Arith(arith::ArithError),
    Cyclo(CycloError),
    Crossed(CrossedError),
    Group(GroupError),
}

impl fmt::Display for HewettError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HewettError::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            HewettError::NotCm { p, m } => write!(f, "-1 lies in <{p}> mod {p}^{m}-1; the field is not CM"),
            HewettError::Degenerate { p, m } => write!(f, "{p}^{m}-1 <= 2 has no CM coset structure"),
            HewettError::Overflow => write!(f, "parameters overflow 64 bits"),
            HewettError::Arith(e) => write!(f, "{e}"),
            HewettError::Cyclo(e) => write!(f, "{e}"),
            HewettError::Crossed(e) => write!(f, "{e}"),
            HewettError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HewettError {}

impl From<arith::ArithError> for HewettError {
    fn from(e: arith::ArithError) -> Self {
        HewettError::Arith(e)
    }
}

impl From<CycloError> for HewettError {
    fn from(e: CycloError) -> Self {
        HewettError::Cyclo(e)
    }
}

impl From<CrossedError> for HewettError {
    fn from(e: CrossedError) -> Self {
        HewettError::Crossed(e)
    }
}

impl From<GroupError> for HewettError {
    fn from(e: GroupError) -> Self {
        HewettError::Group(e)
    }
}

impl From<artin::ArtinError> for HewettError {
    fn from(_: artin::ArtinError) -> Self {
        HewettError::InvalidParameters("p must be prime")
    }
}

fn check_odd_prime(p: u64, m: u32) -> Result<(), HewettError> {
    if p < 3 || !arith::is_prime_u64(p) {
        return Err(HewettError::InvalidParameters("p must be an odd prime"));
    }
    if m == 0 || (m as u64) % p == 0 {
        return Err(HewettError::InvalidParameters("m must be positive and prime to p"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Classifier

/// `phi(p^m - 1)` is `m` or `2m`.
pub fn realizability_condition(p: u64, m: u32) -> Result<bool, HewettError> {
    check_odd_prime(p, m)?;
    let q = BigUint::from(p).pow(m) - 1u32;
    // phi(q) >= sqrt(q / 2), so large q cannot qualify and need not be factored.
    let bound = BigUint::from(2 * m as u64);
    if q > &bound * &bound * 2u32 {
        return Ok(false);
    }
    let phi = arith::euler_phi(&q)?;
    Ok(phi == BigUint::from(m) || phi == BigUint::from(2 * m as u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierRow {
    pub p: u64,
    /// For `p = 2` this is the height `n = 2^{r-1}`.
    pub m: u64,
    /// For `p = 2` this is `r`.
    pub alpha: u32,
    pub condition: bool,
    pub verdict: bool,
    pub note: Option<String>,
}

impl ClassifierRow {
    pub fn is_discrepancy(&self) -> bool {
        self.condition && !self.verdict
    }
}

pub const DEFAULT_P_MAX: u64 = 100;
pub const DEFAULT_M_MAX: u32 = 6;
pub const DEFAULT_ALPHA_MAX: u32 = 4;

/// One row per odd prime `p <= p_max`, `m <= m_max` prime to `p` and
/// `alpha <= alpha_max`, then the `p = 2` rows for `r = 1..=alpha_max`.
pub fn classify(p_max: u64, m_max: u32, alpha_max: u32) -> Result<Vec<ClassifierRow>, HewettError> {
    if p_max == 0 || m_max == 0 || alpha_max == 0 {
        return Err(HewettError::InvalidParameters("bounds must be at least 1"));
    }
    let mut rows = Vec::new();
    for p in (3..=p_max).filter(|&p| arith::is_prime_u64(p)) {
        for m in (1..=m_max).filter(|&m| (m as u64) % p != 0) {
            let condition = realizability_condition(p, m)?;
            let verdict = matches!(p, 3 | 5 | 7) && m == 1;
            let note = (condition && !verdict).then(|| {
                format!("discrepancy: phi({p}^{m}-1) lies in {{m, 2m}} but the stated classification excludes it")
            });
            for alpha in 1..=alpha_max {
                rows.push(ClassifierRow { p, m: m as u64, alpha, condition, verdict, note: note.clone() });
            }
        }
    }
    for r in 1..=alpha_max {
        let realizable = r > 2;
        let n = 1u64.checked_shl(r - 1).ok_or(HewettError::Overflow)?;
        let note = if realizable {
            format!("n = {n}: maximal finite subgroup mu_{{2^{r}}} is cyclic")
        } else {
            format!("n = {n}: r <= 2 is outside the cyclic-subgroup range")
        };
        rows.push(ClassifierRow { p: 2, m: n, alpha: r, condition: realizable, verdict: realizable, note: Some(note) });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Cosets and invariant profiles

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetData {
    /// Number of `[-1]`-conjugate pairs of cosets of `<p>`.
    pub k: usize,
    /// Minimal representative of one coset in each pair; `t[0] = 1`.
    pub t_list: Vec<u64>,
    pub cm_check: bool,
    /// `p^m - 1`.
    pub modulus: u64,
}

/// Cosets of `<p>` in `(Z/(p^m-1))^x`, grouped into pairs swapped by `-1`.
pub fn coset_data(p: u64, m: u32) -> Result<CosetData, HewettError> {
    check_odd_prime(p, m)?;
    let q = p.checked_pow(m).ok_or(HewettError::Overflow)? - 1;
    if q <= 2 {
        return Err(HewettError::Degenerate { p, m });
    }
    let cosets = arith::subgroup_cosets(q, &[p % q])?;
    let minus_one = cosets.coset_of(q - 1).expect("-1 is a unit");
    if minus_one == cosets.coset_of(1).expect("1 is a unit") {
        return Err(HewettError::NotCm { p, m });
    }
    let mut taken = BTreeSet::new();
    let mut t_list = Vec::new();
    for (idx, &rep) in cosets.representatives.iter().enumerate() {
        if taken.contains(&idx) {
            continue;
        }
        let partner = cosets.coset_of(q - rep).expect("unit");
        taken.insert(idx);
        taken.insert(partner);
        t_list.push(rep);
    }
    Ok(CosetData { k: t_list.len(), t_list, cm_check: true, modulus: q })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfilePlace {
    pub t: u64,
    pub conjugate: bool,
    pub inv: RationalModOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    pub p: u64,
    pub m: u32,
    pub alpha: u32,
    /// `(p - 1) p^{alpha-1} m`.
    pub n: u64,
    pub places: Vec<ProfilePlace>,
}

impl InvariantProfile {
    pub fn total(&self) -> RationalModOne {
        self.places.iter().map(|pl| pl.inv.clone()).sum()
    }
}

/// `Inv_{y_i} = t_i / n` and `Inv_{conj y_i} = -t_i / n`.
pub fn invariant_profile(p: u64, m: u32, alpha: u32) -> Result<InvariantProfile, HewettError> {
    check_odd_prime(p, m)?;
    if alpha == 0 {
        return Err(HewettError::InvalidParameters("alpha must be positive"));
    }
    let t_list = if (p, m) == (3, 1) { vec![1] } else { coset_data(p, m)?.t_list };
    let n = (p - 1)
        .checked_mul(p.checked_pow(alpha - 1).ok_or(HewettError::Overflow)?)
        .and_then(|x| x.checked_mul(m as u64))
        .ok_or(HewettError::Overflow)?;
    let mut places = Vec::new();
    for &t in &t_list {
        let inv = RationalModOne::new(t as i64, n as i64);
        places.push(ProfilePlace { t, conjugate: false, inv: inv.clone() });
        places.push(ProfilePlace { t, conjugate: true, inv: -inv });
    }
    Ok(InvariantProfile { p, m, alpha, n, places })
}

// ---------------------------------------------------------------------------
// The algebra D'

/// `D'` together with the fields and roots of unity it is built from.
#[derive(Debug, Clone)]
pub struct DPrime {
    pub p: u64,
    pub m: u32,
    pub alpha: u32,
    algebra: CrossedProductAlgebra,
    center_f: SubfieldDatum,
    /// `omega`, or `-1` when `(p, m) = (3, 1)`.
    omega: CycloNumber,
    /// A primitive `p^alpha`-th root of unity.
    zeta: CycloNumber,
    /// The exponent of `sigma` on `zeta`.
    s: u64,
    /// `t = s mod p^alpha`, `t = 1 mod (p^m - 1)`.
    t: u64,
}

impl DPrime {
    pub fn algebra(&self) -> &CrossedProductAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &CyclotomicField {
        self.algebra.field()
    }

    /// The subfield `M` of `Q(zeta_N)`.
    pub fn top(&self) -> &SubfieldDatum {
        self.algebra.datum().top()
    }

    /// The center `L` of `D'`.
    pub fn center(&self) -> &SubfieldDatum {
        self.algebra.datum().base()
    }

    /// The CM field `F`.
    pub fn cm_field(&self) -> &SubfieldDatum {
        &self.center_f
    }

    pub fn omega(&self) -> &CycloNumber {
        &self.omega
    }

    pub fn zeta(&self) -> &CycloNumber {
        &self.zeta
    }

    pub fn local_twist(&self) -> u64 {
        self.s
    }

    pub fn twist(&self) -> u64 {
        self.t
    }

    pub fn p_alpha(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    /// `p^alpha (p^m - 1)`, the order of `a`.
    pub fn order_a(&self) -> u64 {
        self.p_alpha() * (self.p.pow(self.m) - 1)
    }

    pub fn expected_group_order(&self) -> u64 {
        self.order_a() * (self.p - 1)
    }

    /// Image of `a`: `omega zeta`.
    pub fn image_a(&self) -> CrossedElement {
        self.algebra.scalar(&(&self.omega * &self.zeta))
    }

    /// Image of `b`: `T`.
    pub fn image_b(&self) -> CrossedElement {
        self.algebra.s()
    }

    /// The abstract group whose twist matches `sigma`.
    pub fn matching_presentation(&self) -> Result<MetacyclicPresentation, HewettError> {
        Ok(groups::hewett_group_with_local_twist(self.p, self.m, self.alpha, self.s)?)
    }

    /// An element of `M` from integer power-basis coefficients (projected
    /// onto `M` when `M` is a proper subfield of `Q(zeta_N)`).
    pub fn element_of_m(&self, coeffs: &[i64]) -> Result<CycloNumber, HewettError> {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let x = self.field().from_integer_coeffs(&big)?;
        Ok(if self.top().subgroup().len() == 1 { x } else { self.top().project(&x) })
    }

    /// An element of `D'` from one integer coefficient vector per power of `T`.
    pub fn element_from_integers(&self, coeffs: &[Vec<i64>]) -> Result<CrossedElement, HewettError> {
        let xs = coeffs.iter().map(|c| self.element_of_m(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.algebra.element(xs)?)
    }
}

/// `D'` for `(p, m, alpha)` with `sigma` derived from the local Artin map.
pub fn build_dprime(p: u64, m: u32, alpha: u32) -> Result<DPrime, HewettError> {
    build_dprime_with_sigma(p, m, alpha, None)
}

/// The exponent `s` of `sigma` on `zeta_{p^alpha}`: the action of the
/// Teichmuller lift of the smallest primitive root mod `p`.
pub fn artin_sigma_exponent(p: u64, alpha: u32) -> Result<u64, HewettError> {
    let g = artin::smallest_primitive_root(p)?;
    let u = artin::teichmuller_lift(g, p, alpha)?;
    Ok(artin::cyclotomic_artin_exponent(u, p, alpha)?)
}

/// As [`build_dprime`], optionally replacing the exponent of `sigma` on
/// `zeta_{p^alpha}` by any `s` of order `p - 1` mod `p^alpha`.
pub fn build_dprime_with_sigma(
    p: u64,
    m: u32,
    alpha: u32,
    sigma_override: Option<u64>,
) -> Result<DPrime, HewettError> {
    check_odd_prime(p, m)?;
    if alpha == 0 {
        return Err(HewettError::InvalidParameters("alpha must be positive"));
    }
    let pa = p.checked_pow(alpha).ok_or(HewettError::Overflow)?;
    let q = p.checked_pow(m).ok_or(HewettError::Overflow)? - 1;
    let s = match sigma_override {
        Some(s) => s % pa,
        None => artin_sigma_exponent(p, alpha)?,
    };
    if s % p == 0 || arith::mult_order_u64(s, pa)? != p - 1 {
        return Err(HewettError::InvalidParameters("sigma must have order p-1 on zeta_{p^alpha}"));
    }
    let special = (p, m) == (3, 1);
    // The omega-part of the conductor: q, or 8 for F = Q(sqrt -2).
    let q_part = if special { 8 } else { q };
    let big_n = q_part.checked_mul(pa).ok_or(HewettError::Overflow)?;
    let field = CyclotomicField::new(big_n)?;
    let units = field.units().elements().to_vec();
    let crt = |x: u64, y: u64| crt_solve_u64(&[(x % pa, pa), (y % q_part, q_part)]);

    // Residues mod q_part fixing F: <p> mod q, or {1, 3} mod 8.
    let f_residues: Vec<u64> = if special {
        vec![1, 3]
    } else {
        arith::UnitGroupData::new(q)?.subgroup(&[p % q])?
    };
    let h_f: Vec<u64> = units.iter().copied().filter(|u| f_residues.contains(&(u % q_part))).collect();
    let top_residues: &[u64] = if special { &[1, 3] } else { &[1] };
    let h_m: Vec<u64> =
        units.iter().copied().filter(|u| u % pa == 1 && top_residues.contains(&(u % q_part))).collect();
    let h_l: Vec<u64> = units
        .iter()
        .copied()
        .filter(|u| top_residues.contains(&(u % q_part)) && pow_mod(u % pa, p - 1, pa) == 1)
        .collect();
    let center_f = SubfieldDatum::from_subgroup(&field, &h_f)?;
    let top = SubfieldDatum::from_subgroup(&field, &h_m)?;
    let base = SubfieldDatum::from_subgroup(&field, &h_l)?;
    let sigma = crt(s, 1)?;
    let datum = CyclicGaloisDatum::new(base, top, sigma)?;

    let omega = if special { field.from_integer(-1) } else { field.zeta_power(pa as i64) };
    let zeta = field.zeta_power(q_part as i64);
    let algebra = CrossedProductAlgebra::new(datum, omega.clone())?;
    let t = crt_solve_u64(&[(s, pa), (1 % q, q)])?;
    Ok(DPrime { p, m, alpha, algebra, center_f, omega, zeta, s, t })
}

// ---------------------------------------------------------------------------
// Embedding verification

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub p: u64,
    pub m: u32,
    pub alpha: u32,
    pub sigma_exponent: u64,
    pub t: u64,
    pub order_a: Option<u64>,
    pub subgroup_order: Option<usize>,
    pub expected_order: u64,
    pub isomorphism: Option<IsoOutcome>,
    pub checks: Vec<CheckOutcome>,
    /// The closure of `{omega zeta, T}`, when it could be computed.
    pub subgroup: Option<Vec<CrossedElement>>,
}

impl EmbeddingReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn element_order_in(alg: &CrossedProductAlgebra, x: &CrossedElement, cap: u64) -> Option<u64> {
    let one = alg.one();
    let mut y = x.clone();
    for k in 1..=cap {
        if y == one {
            return Some(k);
        }
        y = alg.multiply(&y, x).ok()?;
    }
    None
}

/// Maps `a -> omega zeta`, `b -> T` and checks the defining relations, the
/// order of the generated subgroup and its isomorphism type.
pub fn verify_embedding(p: u64, m: u32, alpha: u32) -> Result<EmbeddingReport, HewettError> {
    verify_embedding_with_sigma(p, m, alpha, None)
}

pub fn verify_embedding_with_sigma(
    p: u64,
    m: u32,
    alpha: u32,
    sigma_override: Option<u64>,
) -> Result<EmbeddingReport, HewettError> {
    let d = build_dprime_with_sigma(p, m, alpha, sigma_override)?;
    Ok(verify_embedding_in(&d))
}

pub fn verify_embedding_in(d: &DPrime) -> EmbeddingReport {
    let alg = d.algebra();
    let (a, b) = (d.image_a(), d.image_b());
    let mut checks = Vec::new();

    let order_a = element_order_in(alg, &a, d.order_a() + 1);
    checks.push(CheckOutcome {
        name: "order_of_a",
        passed: order_a == Some(d.order_a()),
        detail: format!("expected {}, found {:?}", d.order_a(), order_a),
    });

    let conj = alg.inverse(&b).map(|b_inv| alg.mul(&alg.mul(&b, &a), &b_inv));
    let a_t = alg.pow(&a, d.twist());
    checks.push(CheckOutcome {
        name: "conjugation_relation",
        passed: conj.as_ref().map(|c| *c == a_t).unwrap_or(false),
        detail: format!("b a b^-1 = a^{}", d.twist()),
    });

    let b_pow = alg.pow(&b, d.p - 1);
    let (k, detail) = if d.m == 1 {
        (d.p_alpha(), format!("b^{} = a^{}", d.p - 1, d.p_alpha()))
    } else {
        // a^k with k = 0 mod p^alpha and 1 mod p^m - 1; equal to p^alpha only when m = 1
        let q = d.p.pow(d.m) - 1;
        let k = crt_solve_u64(&[(0, d.p_alpha()), (1, q)]).unwrap_or(0);
        (k, format!("b^{} = a^{} (variant exponent; isomorphism checked separately)", d.p - 1, k))
    };
    checks.push(CheckOutcome { name: "power_relation", passed: b_pow == alg.pow(&a, k), detail });

    let closure = groups::generated_subgroup(
        alg.one(),
        &[a.clone(), b.clone()],
        |x, y| alg.mul(x, y),
        groups::DEFAULT_CLOSURE_CAP,
    );
    let subgroup_order = closure.as_ref().ok().map(|c| c.order());
    checks.push(CheckOutcome {
        name: "subgroup_order",
        passed: subgroup_order == Some(d.expected_group_order() as usize),
        detail: format!("expected {}, found {:?}", d.expected_group_order(), subgroup_order),
    });

    let iso = closure.as_ref().ok().and_then(|c| {
        let concrete = c.multiplication_table().ok()?;
        let abstract_group = groups::make_hewett_group(d.p, d.m, d.alpha).ok()?;
        groups::isomorphic(&concrete, &abstract_group.multiplication_table().ok()?).ok()
    });
    checks.push(CheckOutcome {
        name: "isomorphism",
        passed: iso.as_ref().map(IsoOutcome::is_isomorphic).unwrap_or(false),
        detail: match &iso {
            Some(IsoOutcome::Isomorphic { .. }) => String::from("isomorphic to the abstract presentation"),
            Some(IsoOutcome::NotIsomorphic(r)) => format!("refuted: {r:?}"),
            None => String::from("not computed (subgroup too large or closure failed)"),
        },
    });

    EmbeddingReport {
        p: d.p,
        m: d.m,
        alpha: d.alpha,
        sigma_exponent: d.local_twist(),
        t: d.twist(),
        order_a,
        subgroup_order,
        expected_order: d.expected_group_order(),
        isomorphism: iso,
        checks,
        subgroup: closure.ok().map(|c| c.elements().to_vec()),
    }
}

use hewett_core::arith::{self, RationalModOne};
use hewett_core::artin::{
    hilbert_symbol_int, norm_class, unit_norm_preimage, unramified_invariant, LocalPlace, NormClassGroupDatum,
};
use hewett_core::cyclotomic::{CycloNumber, CyclotomicField};
use hewett_core::groups::make_hewett_group;
use hewett_core::hewett::{build_dprime, invariant_profile, DPrime};
use hewett_core::involution::{HermitianFormDatum, InvolutedAlgebra, Positivity};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-10_000i64..=-1, 1i64..=10_000]
}

fn primes_dividing(n: i64) -> Vec<u64> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn places() -> impl Strategy<Value = LocalPlace> {
    prop_oneof![
        Just(LocalPlace::Infinite),
        Just(LocalPlace::Finite(2)),
        Just(LocalPlace::Finite(3)),
        Just(LocalPlace::Finite(5)),
        Just(LocalPlace::Finite(7)),
        Just(LocalPlace::Finite(101)),
    ]
}

proptest! {
    #[test]
    fn hilbert_product_formula(a in nonzero(), b in nonzero()) {
        let mut places = vec![LocalPlace::Infinite];
        places.extend(primes_dividing(2 * a * b).into_iter().map(LocalPlace::Finite));
        let product: i64 = places.iter().map(|&v| i64::from(hilbert_symbol_int(a, b, v).unwrap())).product();
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn hilbert_bimultiplicative(a1 in nonzero(), a2 in nonzero(), b in nonzero(), v in places()) {
        let lhs = hilbert_symbol_int(a1 * a2, b, v).unwrap();
        let rhs = hilbert_symbol_int(a1, b, v).unwrap() * hilbert_symbol_int(a2, b, v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hilbert_a_minus_a(a in nonzero(), v in places()) {
        prop_assert_eq!(hilbert_symbol_int(a, -a, v).unwrap(), 1);
        prop_assert_eq!(hilbert_symbol_int(a, 1 - a, v).unwrap_or(1), 1);
    }

    #[test]
    fn hilbert_symmetric(a in nonzero(), b in nonzero(), v in places()) {
        prop_assert_eq!(hilbert_symbol_int(a, b, v).unwrap(), hilbert_symbol_int(b, a, v).unwrap());
    }

    #[test]
    fn unramified_invariant_additive(v1 in -1000i64..1000, v2 in -1000i64..1000, n in 1u64..50) {
        let lhs = unramified_invariant(v1 + v2, n).unwrap();
        let rhs = unramified_invariant(v1, n).unwrap() + unramified_invariant(v2, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_class_is_a_homomorphism(x in nonzero(), y in nonzero(), d in prop::sample::select(vec![-1i64, -2, -3, 5, 7, -5])) {
        for l in [2u64, 3, 5, 7] {
            let datum = NormClassGroupDatum::new(LocalPlace::Finite(l), d).unwrap();
            let q = |n: i64| BigRational::from_integer(n.into());
            let cx = norm_class(&q(x), &datum).unwrap();
            let cy = norm_class(&q(y), &datum).unwrap();
            let cxy = norm_class(&q(x * y), &datum).unwrap();
            prop_assert_eq!(cxy == hewett_core::artin::NormClass::Trivial, cx == cy);
        }
    }

    #[test]
    fn unit_norm_preimage_congruence(
        l in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        t in 1u32..=3,
        d in 1u32..=3,
        w in 0u64..10_000,
    ) {
        let r = unit_norm_preimage(l, t, d, w).unwrap();
        prop_assert!(r.satisfies_congruence());
        // Frobenius form of the norm: sum_j e l^{t j} = e K
        let n = r.big_order;
        let frob: u64 = (0..d).fold(0, |acc, j| (acc + arith::mul_mod(r.e, arith::pow_mod(l, (t * j) as u64, n), n)) % n);
        prop_assert_eq!(frob, arith::mul_mod(w % r.small_order, r.norm_exponent, n));
    }

    #[test]
    fn rational_mod_one_group_laws(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
        let x = RationalModOne::new(a, b);
        let y = RationalModOne::new(c, d);
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert!((x.clone() - x.clone()).is_zero());
        prop_assert_eq!(-(-x.clone()), x);
    }

    #[test]
    fn crt_solution_satisfies_congruences(a in 0u64..1000, b in 0u64..1000, m1 in 1u64..200, m2 in 1u64..200) {
        prop_assume!(arith::gcd_u64(m1, m2) == 1);
        let x = arith::crt_solve_u64(&[(a % m1, m1), (b % m2, m2)]).unwrap();
        prop_assert!(x < m1 * m2);
        prop_assert_eq!(x % m1, a % m1);
        prop_assert_eq!(x % m2, b % m2);
    }
}

fn field(n: u64) -> CyclotomicField {
    CyclotomicField::new(n).unwrap()
}

fn cyclo(k: &CyclotomicField, coeffs: &[i64]) -> CycloNumber {
    let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    k.from_integer_coeffs(&big[..k.degree()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(
        n in prop::sample::select(vec![5u64, 8, 12, 15, 20]),
        xs in prop::collection::vec(-5i64..=5, 8),
        ys in prop::collection::vec(-5i64..=5, 8),
        zs in prop::collection::vec(-5i64..=5, 8),
        s in 1u64..40,
    ) {
        let k = field(n);
        let (x, y, z) = (cyclo(&k, &xs), cyclo(&k, &ys), cyclo(&k, &zs));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assume!(arith::gcd_u64(s, n) == 1);
        prop_assert_eq!((&x * &y).galois_image(s), &x.galois_image(s) * &y.galois_image(s));
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn group_multiply_associative(
        cfg in prop::sample::select(vec![(3u64, 1u32, 2u32), (5, 1, 2), (7, 1, 2), (5, 2, 1)]),
        a in (0u64..10_000, 0u64..6), b in (0u64..10_000, 0u64..6), c in (0u64..10_000, 0u64..6),
    ) {
        let g = make_hewett_group(cfg.0, cfg.1, cfg.2).unwrap();
        let e = |(i, j): (u64, u64)| g.element(i, j);
        let (x, y, z) = (e(a), e(b), e(c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
    }

    #[test]
    fn profiles_sum_to_zero(
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
        m in 1u32..=4,
        alpha in 1u32..=3,
    ) {
        prop_assume!(m as u64 % p != 0);
        let pr = invariant_profile(p, m, alpha).unwrap();
        prop_assert!(pr.total().is_zero());
        for pl in &pr.places {
            prop_assert_eq!(BigInt::from(pr.n) % pl.inv.denominator(), BigInt::from(0));
        }
        prop_assert_eq!(&pr.places[0].inv, &RationalModOne::new(1, pr.n as i64));
    }

    #[test]
    fn disc_class_is_norm_invariant(
        d0 in prop::sample::select(vec![-1i64, -2, -3]),
        x in -20i64..=20, y in -20i64..=20, slot in 0usize..4,
    ) {
        let norm = x * x - d0 * y * y;
        prop_assume!(norm != 0);
        let form = HermitianFormDatum::reference(4, d0).unwrap();
        let mut entries = form.entries.clone();
        entries[slot] *= BigRational::from_integer(norm.into());
        let scaled = HermitianFormDatum::new(entries, d0).unwrap();
        for l in [2u64, 3, 5, 7, 11] {
            let v = LocalPlace::Finite(l);
            prop_assert_eq!(form.disc_class(v).unwrap(), scaled.disc_class(v).unwrap());
        }
    }
}

fn involuted(p: u64, alpha: u32) -> &'static InvolutedAlgebra {
    static CACHE: OnceLock<Vec<((u64, u32), InvolutedAlgebra)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]
            .into_iter()
            .map(|(p, a)| ((p, a), InvolutedAlgebra::new(build_dprime(p, 1, a).unwrap()).unwrap()))
            .collect()
    });
    &all.iter().find(|(k, _)| *k == (p, alpha)).unwrap().1
}

fn element(d: &DPrime, raw: &[Vec<i64>]) -> hewett_core::crossed::CrossedElement {
    let deg = d.field().degree();
    let rows: Vec<Vec<i64>> = raw.iter().take(d.algebra().degree()).map(|r| r[..deg].to_vec()).collect();
    d.element_from_integers(&rows).unwrap()
}

fn raw_element() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 48), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn involution_axioms(
        cfg in prop::sample::select(vec![(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1)]),
        rx in raw_element(), ry in raw_element(),
    ) {
        let inv = involuted(cfg.0, cfg.1);
        let alg = inv.algebra();
        let (x, y) = (element(inv.dprime(), &rx), element(inv.dprime(), &ry));
        prop_assert_eq!(inv.dagger(&inv.dagger(&x)), x.clone());
        prop_assert_eq!(inv.dagger(&alg.add(&x, &y).unwrap()), alg.add(&inv.dagger(&x), &inv.dagger(&y)).unwrap());
        let xy = alg.multiply(&x, &y).unwrap();
        prop_assert_eq!(inv.dagger(&xy), alg.multiply(&inv.dagger(&y), &inv.dagger(&x)).unwrap());
        prop_assert_eq!(inv.dagger(&x), inv.dagger_by_products(&x));
        prop_assert_eq!(inv.reduced_trace(&x), inv.matrix_trace(&x).unwrap());
    }

    #[test]
    fn positivity(cfg in prop::sample::select(vec![(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1)]), rx in raw_element()) {
        let inv = involuted(cfg.0, cfg.1);
        let x = element(inv.dprime(), &rx);
        prop_assume!(!x.is_zero());
        let r = inv.positivity_report(&x, 50).unwrap();
        prop_assert!(r.identity_holds);
        prop_assert_eq!(r.verdict, Positivity::Positive);
    }
}

//! Report builders behind each subcommand.

use crate::report::{Check, Envelope, Status};
use hewett_core::artin::LocalPlace;
use hewett_core::crossed::CrossedElement;
use hewett_core::cyclotomic::CycloNumber;
use hewett_core::groups::{IsoOutcome, Refutation};
use hewett_core::hewett::{self, ClassifierRow, DPrime};
use hewett_core::involution::{self, InvolutedAlgebra, Positivity, WittIndex};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_SAMPLES: usize = 20;

pub const MAX_P: u64 = 1000;
pub const MAX_M: u32 = 8;
pub const MAX_ALPHA: u32 = 16;

/// Rejected input, reported with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub precision: u32,
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, precision: DEFAULT_PRECISION, samples: DEFAULT_SAMPLES }
    }
}

#[derive(Serialize)]
struct CycloJson {
    conductor: u64,
    coefficients: Vec<String>,
}

fn cyclo_json(x: &CycloNumber) -> CycloJson {
    CycloJson { conductor: x.conductor(), coefficients: x.coeff_strings() }
}

fn element_json(x: &CrossedElement) -> Value {
    json!(x.coeffs().iter().map(cyclo_json).collect::<Vec<_>>())
}

fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn check_prime(p: u64) -> Result<(), UsageError> {
    if !hewett_core::arith::is_prime_u64(p) {
        return Err(usage(format!("p = {p} is not prime")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// classify

fn row_json(r: &ClassifierRow) -> Value {
    json!({
        "p": r.p,
        "m": r.m,
        "alpha": r.alpha,
        "condition": r.condition,
        "verdict": r.verdict,
        "note": r.note,
    })
}

/// Discrepancy rows are reported as inconclusive checks.
pub fn classify(p_max: u64, m_max: u32, alpha_max: u32) -> Result<Envelope, UsageError> {
    if p_max > MAX_P || m_max > MAX_M || alpha_max > MAX_ALPHA {
        return Err(usage(format!("bounds exceed p <= {MAX_P}, m <= {MAX_M}, alpha <= {MAX_ALPHA}")));
    }
    let rows = hewett::classify(p_max, m_max, alpha_max).map_err(|e| usage(e.to_string()))?;
    let mut env = Envelope::new("classify", json!({"p_max": p_max, "m_max": m_max, "alpha_max": alpha_max}));
    env.results = json!({ "rows": rows.iter().map(row_json).collect::<Vec<_>>() });

    let realizable: Vec<(u64, u64)> = rows.iter().filter(|r| r.p != 2 && r.verdict && r.alpha == 1).map(|r| (r.p, r.m)).collect();
    env.push(Check::new("odd_realizable", Status::Pass, format!("{realizable:?}")));
    let mut seen = Vec::new();
    for r in rows.iter().filter(|r| r.is_discrepancy()) {
        if seen.contains(&(r.p, r.m)) {
            continue;
        }
        seen.push((r.p, r.m));
        env.push(Check::new(
            format!("discrepancy_p{}_m{}", r.p, r.m),
            Status::Inconclusive,
            r.note.clone().unwrap_or_default(),
        ));
    }
    Ok(env)
}

// ---------------------------------------------------------------------------
// profile

pub fn profile(p: u64, m: u32, alpha: u32) -> Result<Envelope, UsageError> {
    check_prime(p)?;
    let pr = hewett::invariant_profile(p, m, alpha).map_err(|e| usage(e.to_string()))?;
    let mut env = Envelope::new("profile", json!({"p": p, "m": m, "alpha": alpha}));
    let places: Vec<Value> = pr
        .places
        .iter()
        .map(|pl| json!({"t": pl.t, "conjugate": pl.conjugate, "inv": pl.inv.to_string()}))
        .collect();
    let total = pr.total();
    env.results = json!({"p": p, "m": m, "alpha": alpha, "n": pr.n, "places": places, "total": total.to_string()});
    env.push(Check::new("total_is_zero", Status::from_bool(total.is_zero()), format!("sum = {total}")));
    let conj_ok = pr
        .places
        .chunks(2)
        .all(|c| c.len() == 2 && (&c[0].inv + &c[1].inv).is_zero() && c[0].t == c[1].t && c[1].conjugate);
    env.push(Check::new("conjugates_negated", Status::from_bool(conj_ok), ""));
    Ok(env)
}

// ---------------------------------------------------------------------------
// verify

fn iso_string(iso: &Option<IsoOutcome>) -> String {
    match iso {
        None => "not computed".into(),
        Some(IsoOutcome::Isomorphic { .. }) => "isomorphic".into(),
        Some(IsoOutcome::NotIsomorphic(Refutation::OrderMismatch { left, right })) => {
            format!("order mismatch {left} vs {right}")
        }
        Some(IsoOutcome::NotIsomorphic(Refutation::OrderSpectrum { element_order, left, right })) => {
            format!("{left} vs {right} elements of order {element_order}")
        }
        Some(IsoOutcome::NotIsomorphic(Refutation::SearchExhausted { nodes })) => {
            format!("search exhausted after {nodes} nodes")
        }
    }
}

/// A random element of `D'` with small integer coefficients.
pub fn random_element(d: &DPrime, rng: &mut ChaCha8Rng) -> CrossedElement {
    let deg = d.field().degree();
    let rows: Vec<Vec<i64>> =
        (0..d.algebra().degree()).map(|_| (0..deg).map(|_| rng.gen_range(-3i64..=3)).collect()).collect();
    d.element_from_integers(&rows).expect("integer coefficients project into M")
}

/// Builds `D'`, checks the embedding, the involution axioms, unitarity of
/// the embedded group and positivity on seeded random samples.
pub fn verify(p: u64, m: u32, alpha: u32, opts: SuiteOptions) -> Result<Envelope, UsageError> {
    check_prime(p)?;
    if p == 2 || m == 0 || alpha == 0 || (m as u64) % p == 0 {
        return Err(usage(format!("unsupported configuration ({p},{m},{alpha})")));
    }
    let mut env = Envelope::new(
        "verify",
        json!({"p": p, "m": m, "alpha": alpha, "seed": opts.seed, "precision": opts.precision, "samples": opts.samples}),
    );
    let verdict = hewett::realizability_condition(p, m).ok().map(|_| matches!(p, 3 | 5 | 7) && m == 1);

    let d = match hewett::build_dprime(p, m, alpha) {
        Ok(d) => d,
        Err(e) => {
            env.results = json!({"error": e.to_string()});
            env.push(Check::new("build", Status::Fail, e.to_string()));
            return Ok(env);
        }
    };
    let rep = hewett::verify_embedding_in(&d);
    env.results = json!({
        "conductor": d.field().conductor(),
        "degree": d.algebra().degree(),
        "sigma_exponent": rep.sigma_exponent,
        "t": rep.t,
        "order_a": rep.order_a,
        "subgroup_order": rep.subgroup_order,
        "expected_order": rep.expected_order,
        "isomorphism": iso_string(&rep.isomorphism),
        "shimura_realizable": verdict,
        "image_a": element_json(&d.image_a()),
        "image_b": element_json(&d.image_b()),
    });
    for c in &rep.checks {
        env.push(Check::new(c.name, Status::from_bool(c.passed), c.detail.clone()));
    }

    let inv = match InvolutedAlgebra::new(d) {
        Ok(inv) => inv,
        Err(e) => {
            env.push(Check::new("involution", Status::Fail, e.to_string()));
            return Ok(env);
        }
    };
    involution_suite(&inv, opts, &mut env);
    match &rep.subgroup {
        Some(els) => {
            let bad = els.iter().filter(|g| !inv.is_unitary(g).unwrap_or(false)).count();
            env.push(Check::new(
                "subgroup_unitary",
                Status::from_bool(bad == 0),
                format!("{} elements, {bad} not unitary", els.len()),
            ));
        }
        None => env.push(Check::new("subgroup_unitary", Status::Fail, "subgroup not computed")),
    }
    positivity_suite(&inv, opts, &mut env);
    Ok(env)
}

fn involution_suite(inv: &InvolutedAlgebra, opts: SuiteOptions, env: &mut Envelope) {
    let alg = inv.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut fails = [0usize; 5];
    for _ in 0..opts.samples {
        let x = random_element(inv.dprime(), &mut rng);
        let y = random_element(inv.dprime(), &mut rng);
        let dx = inv.dagger(&x);
        fails[0] += usize::from(inv.dagger(&dx) != x);
        let sum = alg.add(&x, &y).expect("same algebra");
        fails[1] += usize::from(inv.dagger(&sum) != alg.add(&dx, &inv.dagger(&y)).expect("same algebra"));
        let xy = alg.multiply(&x, &y).expect("same algebra");
        let rhs = alg.multiply(&inv.dagger(&y), &dx).expect("same algebra");
        fails[2] += usize::from(inv.dagger(&xy) != rhs);
        fails[3] += usize::from(dx != inv.dagger_by_products(&x));
        fails[4] += usize::from(inv.matrix_trace(&x).ok() != Some(inv.reduced_trace(&x)));
    }
    let names = ["dagger_involution", "dagger_additive", "dagger_antimultiplicative", "dagger_formula", "reduced_trace"];
    for (name, f) in names.iter().zip(fails) {
        env.push(Check::new(*name, Status::from_bool(f == 0), format!("{f} of {} samples failed", opts.samples)));
    }
}

fn positivity_suite(inv: &InvolutedAlgebra, opts: SuiteOptions, env: &mut Envelope) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let (mut pos, mut neg, mut unknown, mut identity_fail) = (0, 0, 0, 0);
    let mut drawn = 0;
    while drawn < opts.samples {
        let x = random_element(inv.dprime(), &mut rng);
        if x.is_zero() {
            continue;
        }
        drawn += 1;
        match inv.positivity_report(&x, opts.precision) {
            Ok(r) => {
                identity_fail += usize::from(!r.identity_holds);
                match r.verdict {
                    Positivity::Positive => pos += 1,
                    Positivity::NotPositive => neg += 1,
                    Positivity::Inconclusive => unknown += 1,
                }
            }
            Err(_) => neg += 1,
        }
    }
    let status = if neg > 0 || identity_fail > 0 {
        Status::Fail
    } else if unknown > 0 {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    env.push(Check::new(
        "positivity",
        status,
        format!("{pos} positive, {neg} not positive, {unknown} inconclusive at {} digits", opts.precision),
    ));
}

// ---------------------------------------------------------------------------
// hermitian

fn place_string(v: LocalPlace) -> String {
    v.to_string()
}

fn witt_json(w: WittIndex) -> Value {
    match w {
        WittIndex::Index(k) => json!(k),
        WittIndex::SimilitudeClassUnique => json!("similitude class unique"),
    }
}

/// Expected Witt index of the reference form at a non-split place.
pub fn expected_witt_index(p: u64, n: usize, place: LocalPlace) -> usize {
    if p == 5 && place == LocalPlace::Finite(2) {
        n / 2 - 1
    } else {
        n / 2
    }
}

pub fn hermitian(p: u64) -> Result<Envelope, UsageError> {
    if !matches!(p, 3 | 5 | 7) {
        return Err(usage(format!("hermitian data is available for p in {{3, 5, 7}}, got {p}")));
    }
    let g = involution::gu_reference_invariants(p).map_err(|e| usage(e.to_string()))?;
    let mut env = Envelope::new("hermitian", json!({"p": p}));
    let places: Vec<Value> = g
        .places
        .iter()
        .map(|pl| {
            json!({
                "place": place_string(pl.place),
                "ramified": pl.ramified,
                "disc_class": pl.disc_class.to_string(),
                "witt_index": witt_json(pl.witt_index),
            })
        })
        .collect();
    let mut results = json!({
        "p": p,
        "n": g.n,
        "d0": g.d0,
        "form": g.form.entries.iter().map(rational_string).collect::<Vec<_>>(),
        "signature": [g.signature.0, g.signature.1],
        "place_bound": involution::PLACE_SEARCH_BOUND,
        "places": places,
    });
    let wrong: Vec<String> = g
        .places
        .iter()
        .filter(|pl| pl.witt_index != WittIndex::Index(expected_witt_index(p, g.n, pl.place)))
        .map(|pl| format!("{} has {}", pl.place, pl.witt_index))
        .collect();
    env.push(Check::new(
        "witt_index",
        Status::from_bool(wrong.is_empty() && !g.places.is_empty()),
        if wrong.is_empty() { format!("{} non-split places checked", g.places.len()) } else { wrong.join(", ") },
    ));
    if p == 5 {
        match involution::norm_xi_check() {
            Ok(c) => {
                results["norm_check"] = json!({
                    "value": rational_string(&c.value),
                    "expected": rational_string(&c.expected),
                    "class_at_2": c.class_at_2.to_string(),
                });
                env.push(Check::new(
                    "norm_check",
                    Status::from_bool(c.passed()),
                    format!("norm {} with class {} at 2", c.value, c.class_at_2),
                ));
            }
            Err(e) => env.push(Check::new("norm_check", Status::Fail, e)),
        }
    }
    env.results = results;
    Ok(env)
}

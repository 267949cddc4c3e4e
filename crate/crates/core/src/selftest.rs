//! The built-in verification suite behind the `selftest` CLI command.
//!
//! Runs every check of the acceptance gate programmatically and returns a
//! deterministic, serializable report: fixed RNG seeds, ordered containers,
//! and work-unit counts instead of wall-clock timings, so identical inputs
//! produce byte-identical JSON.

use crate::algebra::{grassmann, matrix_algebra, TracedAlgebra};
use crate::groebner::Budget;
use crate::identities::{
    cayley_hamilton_m2, is_supertrace_identity, is_trace_identity, theta, theta_inverse, Letter,
    SupertracePolynomial, VarKind, Word,
};
use crate::scalar::{ratio, Rat};
use crate::smooth::{is_smooth, SmoothVerdict, SuperPresentation};
use crate::superpoly::{EvenVar, OddVar, Parity, SuperMonomial, SuperPolynomial};
use crate::tensor::supertrace_axioms;
use crate::universal::{
    build_universal, check_embedding, gk_bound_report, krull_dim_even, power_inclusion_check,
    universal_property_check, Presentation,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema: u32,
    pub command: String,
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
    /// Deterministic cost measure: reduction steps consumed.
    pub work_units: u64,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Runs the verification suite. The determinism criterion executes the other
/// checks twice and compares the serialized outcomes byte for byte.
pub fn run_selftest() -> SelftestReport {
    let (first, work1) = run_once();
    let (second, _) = run_once();
    let deterministic = serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();
    let mut criteria = first;
    criteria.push(CriterionResult {
        id: "11".into(),
        name: "determinism: two runs produce byte-identical results".into(),
        passed: deterministic,
        detail: if deterministic {
            "criteria 1-10 serialized identically on both runs".into()
        } else {
            "serialized criterion results differed between runs".into()
        },
    });
    let all_passed = criteria.iter().all(|c| c.passed);
    SelftestReport {
        schema: 1,
        command: "selftest".into(),
        criteria,
        all_passed,
        work_units: work1,
    }
}

fn run_once() -> (Vec<CriterionResult>, u64) {
    let mut budget = Budget::new(u64::MAX / 4);
    let results = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5a(),
        criterion_5b(),
        criterion_6(),
        criterion_7(&mut budget),
        criterion_8(&mut budget),
        criterion_9(&mut budget),
        criterion_10(&mut budget),
    ];
    (results, budget.used)
}

// ---------------------------------------------------------------------------
// random polynomial sampling
// ---------------------------------------------------------------------------

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = 0i64;
    while n == 0 {
        n = rng.gen_range(-3..=3);
    }
    ratio(n, rng.gen_range(1..=3))
}

/// Random parity-homogeneous polynomial over <= 4 even and <= 6 odd vars.
fn random_homogeneous(rng: &mut ChaCha8Rng, parity: Parity) -> SuperPolynomial {
    let mut p = SuperPolynomial::zero();
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let mut even = BTreeMap::new();
        for v in 0..4u32 {
            let e = rng.gen_range(0..=2u32);
            if e > 0 && rng.gen_bool(0.5) {
                even.insert(EvenVar(v), e);
            }
        }
        let want_odd = match parity {
            Parity::Even => 2 * rng.gen_range(0..=3usize),
            Parity::Odd => 2 * rng.gen_range(0..=2usize) + 1,
        };
        let mut pool: Vec<u32> = (0..6).collect();
        let mut odd = Vec::new();
        for _ in 0..want_odd.min(pool.len()) {
            let i = rng.gen_range(0..pool.len());
            odd.push(OddVar(pool.remove(i)));
        }
        odd.sort();
        if odd.len() % 2 != parity.bit() as usize {
            continue;
        }
        p.add_term(SuperMonomial::from_parts(even, odd), random_rat(rng));
    }
    if p.is_zero() {
        // keep the sample homogeneous and nonzero
        match parity {
            Parity::Even => p.add_term(SuperMonomial::even_var(EvenVar(0), 1), Rat::one()),
            Parity::Odd => p.add_term(SuperMonomial::odd_var(OddVar(0)), Rat::one()),
        }
    }
    p
}

fn criterion_1() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let pp = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let qp = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let rp = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let p = random_homogeneous(&mut rng, pp);
        let q = random_homogeneous(&mut rng, qp);
        let r = random_homogeneous(&mut rng, rp);
        let pq = p.mul(&q);
        let qp_ = q.mul(&p);
        let expected = if pp == Parity::Odd && qp == Parity::Odd {
            qp_.negate()
        } else {
            qp_
        };
        if pq != expected {
            failures.push(format!("supercommutativity failed on trial {trial}"));
            break;
        }
        if p.mul(&q).mul(&r) != p.mul(&q.mul(&r)) {
            failures.push(format!("associativity failed on trial {trial}"));
            break;
        }
    }
    for v in 0..6u32 {
        let th = SuperPolynomial::odd_var(OddVar(v));
        if !th.mul(&th).is_zero() {
            failures.push(format!("th{v}^2 != 0"));
        }
    }
    CriterionResult {
        id: "1".into(),
        name: "supercommutativity, associativity, theta^2 = 0 on 1000 random homogeneous samples"
            .into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "1000 random triples verified exactly".into()
        } else {
            failures.join("; ")
        },
    }
}

fn criterion_2() -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();
    let m2 = matrix_algebra(2, &[0, 0]);
    match m2.generic_minimal_polynomial() {
        Ok(t) => {
            let xi = |k: u32| SuperPolynomial::even_var(EvenVar(k));
            let trace = xi(0).add(&xi(3));
            let det = xi(0).mul(&xi(3)).sub(&xi(1).mul(&xi(2)));
            if t.degree != 2 || t.sigma[0] != trace || t.sigma[1] != det {
                ok = false;
                details.push("M2: sigma mismatch".into());
            } else {
                details.push("M2: s = 2, sigma1 = trace, sigma2 = det, m_v(v) = 0".into());
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("M2: {e}"));
        }
    }
    let m3 = matrix_algebra(3, &[0, 0, 0]);
    match m3.generic_minimal_polynomial() {
        Ok(t) => {
            let diag: Vec<usize> = m3
                .labels()
                .iter()
                .enumerate()
                .filter(|(_, l)| ["e11", "e22", "e33"].contains(&l.as_str()))
                .map(|(i, _)| i)
                .collect();
            let trace_ok = t.trd.iter().enumerate().all(|(i, c)| {
                if diag.contains(&i) {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            });
            if t.degree != 3 || !trace_ok {
                ok = false;
                details.push("M3: degree or trace mismatch".into());
            } else {
                details.push("M3: s = 3, sigma1 = trace, m_v(v) = 0".into());
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("M3: {e}"));
        }
    }
    CriterionResult {
        id: "2".into(),
        name: "generic Cayley-Hamilton for M2 and M3".into(),
        passed: ok,
        detail: details.join("; "),
    }
}

fn criterion_3() -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();
    for alg in [
        matrix_algebra(2, &[0, 0]),
        matrix_algebra(3, &[0, 0, 0]),
        grassmann(2),
    ] {
        match alg.generic_minimal_polynomial() {
            Ok(t) => {
                let v = t.trd_of(alg.unit().unwrap());
                let expect = Rat::from_integer((t.degree as i64).into());
                if v != expect {
                    ok = false;
                }
                details.push(format!("{}: Trd(1) = {} = s", alg.name, v));
            }
            Err(e) => {
                ok = false;
                details.push(format!("{}: {e}", alg.name));
            }
        }
    }
    CriterionResult {
        id: "3".into(),
        name: "Trd(1) = s for M2, M3, E2".into(),
        passed: ok,
        detail: details.join("; "),
    }
}

fn criterion_4() -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();
    for (alg, expect_nondeg) in [
        (matrix_algebra(2, &[0, 0]), true),
        (matrix_algebra(3, &[0, 0, 0]), true),
        (grassmann(2), false),
    ] {
        match alg.generic_minimal_polynomial() {
            Ok(t) => match alg.check_trace_nondegenerate(&t.trd) {
                Ok(nd) => {
                    if nd != expect_nondeg {
                        ok = false;
                    }
                    details.push(format!(
                        "{}: Gram {}",
                        alg.name,
                        if nd { "nondegenerate" } else { "degenerate" }
                    ));
                }
                Err(e) => {
                    ok = false;
                    details.push(format!("{}: {e}", alg.name));
                }
            },
            Err(e) => {
                ok = false;
                details.push(format!("{}: {e}", alg.name));
            }
        }
    }
    CriterionResult {
        id: "4".into(),
        name: "trace-form nondegeneracy: M2, M3 nondegenerate; E2 degenerate".into(),
        passed: ok,
        detail: details.join("; "),
    }
}

fn criterion_5a() -> CriterionResult {
    let ta = TracedAlgebra::new(matrix_algebra(2, &[0, 0])).unwrap();
    let rep = supertrace_axioms(&ta);
    CriterionResult {
        id: "5a".into(),
        name: "supertrace axioms on generics over M2, trivial grading".into(),
        passed: rep.pass(),
        detail: format!(
            "commutator failures {:?}, associator failures {:?}",
            rep.commutator_failures, rep.associator_failures
        ),
    }
}

fn criterion_5b() -> CriterionResult {
    // As specified, the axioms are asserted for the elementary (0,1)
    // grading as well. The generic trace of M2 is the matrix trace, which
    // does not vanish on [e12 (x) 1, e21 (x) 1]_s = 1 (x) 1; the check
    // honestly reports the failing parity patterns instead of passing.
    let ta = TracedAlgebra::new(matrix_algebra(2, &[0, 1])).unwrap();
    let rep = supertrace_axioms(&ta);
    CriterionResult {
        id: "5b".into(),
        name: "supertrace axioms on generics over M2, elementary (0,1) grading".into(),
        passed: rep.pass(),
        detail: format!(
            "commutator failures {:?}, associator failures {:?}; the generic trace (matrix trace) is not a supertrace for this grading: Strd([e12,e21]_s) = Trd(1) = 2",
            rep.commutator_failures, rep.associator_failures
        ),
    }
}

/// Random multilinear supertrace polynomial of total degree <= 4 with at
/// most 2 odd variables.
fn random_multilinear(rng: &mut ChaCha8Rng) -> SupertracePolynomial {
    let degree = rng.gen_range(2..=4usize);
    let odd_count = rng.gen_range(0..=2usize).min(degree);
    let letters: Vec<Letter> = (0..degree)
        .map(|i| {
            if i < odd_count {
                Letter::y(i as u32 + 1)
            } else {
                Letter::x((i - odd_count) as u32 + 1)
            }
        })
        .collect();
    let mut f = SupertracePolynomial::zero();
    let num_terms = rng.gen_range(1..=4usize);
    for _ in 0..num_terms {
        // random permutation of the letters
        let mut perm = letters.clone();
        for i in (1..perm.len()).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        // random split into supertrace factors and an optional head
        let mut factors = Vec::new();
        let mut rest: &[Letter] = &perm;
        while rest.len() > 1 && rng.gen_bool(0.6) {
            let cut = rng.gen_range(1..rest.len());
            factors.push(Word::left_normed(&rest[..cut]));
            rest = &rest[cut..];
        }
        let head = if !rest.is_empty() && rng.gen_bool(0.5) {
            Some(Word::left_normed(rest))
        } else if rest.is_empty() {
            None
        } else {
            factors.push(Word::left_normed(rest));
            None
        };
        f.add_raw_term(random_rat(rng), head, factors);
    }
    f
}

fn criterion_6() -> CriterionResult {
    let ta = TracedAlgebra::new(matrix_algebra(2, &[0, 0])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut agree = 0usize;
    let mut total = 0usize;
    let mut failures = Vec::new();

    let check = |f: &SupertracePolynomial, label: &str, failures: &mut Vec<String>| {
        if !f.is_multilinear() || f.is_zero() {
            return (0, 0);
        }
        let lhs = is_supertrace_identity(f, &ta);
        let g = theta(f);
        match (lhs, g) {
            (Ok(l), Ok(g)) => match is_trace_identity(&g, &ta) {
                Ok(r) => {
                    if l != r {
                        failures.push(format!("{label}: supertrace {l} vs trace {r}"));
                    }
                    (usize::from(l == r), 1)
                }
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    (0, 1)
                }
            },
            (Err(e), _) => {
                failures.push(format!("{label}: {e}"));
                (0, 1)
            }
            (_, Err(e)) => {
                failures.push(format!("{label}: {e}"));
                (0, 1)
            }
        }
    };

    for i in 0..24 {
        let f = random_multilinear(&mut rng);
        let (a, t) = check(&f, &format!("sample {i}"), &mut failures);
        agree += a;
        total += t;
    }

    // crafted positives: the Cayley-Hamilton lift and its odd-variable lift
    let ch = cayley_hamilton_m2();
    let (a, t) = check(&ch, "f_CH2", &mut failures);
    agree += a;
    total += t;
    let ch_odd = {
        // replace x1, x2 by yb1, yb2 and pull back through theta
        let renamed = {
            let mut g = SupertracePolynomial::zero();
            for (shape, c) in ch.terms() {
                let rename = |l: Letter| -> Letter {
                    if l.kind == VarKind::X {
                        Letter::ybar(l.index)
                    } else {
                        l
                    }
                };
                let factors: Vec<Word> =
                    shape.factors.iter().map(|w| w.map_letters(&rename)).collect();
                let head = shape.head.as_ref().map(|h| h.map_letters(&rename));
                g.add_raw_term(c.clone(), head, factors);
            }
            g
        };
        theta_inverse(&renamed).unwrap()
    };
    let (a, t) = check(&ch_odd, "theta-lift of f_CH2", &mut failures);
    agree += a;
    total += t;

    // crafted negatives: perturbed coefficient
    let mut perturbed = ch.clone();
    perturbed.add_raw_term(
        Rat::one(),
        None,
        vec![
            Word::Letter(Letter::x(1)),
            Word::Letter(Letter::x(2)),
        ],
    );
    let (a, t) = check(&perturbed, "perturbed f_CH2", &mut failures);
    agree += a;
    total += t;
    let perturbed_odd = ch_odd.scale(&ratio(1, 1)).add(&{
        let mut e = SupertracePolynomial::zero();
        e.add_raw_term(
            ratio(1, 2),
            Some(Word::Letter(Letter::y(1))),
            vec![Word::Letter(Letter::y(2))],
        );
        e
    });
    let (a, t) = check(&perturbed_odd, "perturbed lift", &mut failures);
    agree += a;
    total += t;

    CriterionResult {
        id: "6".into(),
        name: "theta-correspondence over M2: supertrace identity iff trace identity of theta(f)"
            .into(),
        passed: failures.is_empty() && total >= 20,
        detail: format!("{agree}/{total} agreements; failures: {failures:?}"),
    }
}

fn criterion_7(budget: &mut Budget) -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();

    // (a) free on two generators over M2: J = 0, layout 8 + 8
    let ta = TracedAlgebra::new(matrix_algebra(2, &[0, 0])).unwrap();
    let free = Presentation::new(
        vec![
            ("x".to_string(), Parity::Even),
            ("y".to_string(), Parity::Odd),
        ],
        Vec::new(),
    );
    match build_universal(&ta, &free, budget) {
        Ok(u) => {
            let layout_ok = u.layout_even_vars().len() == 8 && u.layout_odd_vars().len() == 8;
            if !u.j_gens.is_empty() || !layout_ok {
                ok = false;
                details.push("free case: J != 0 or wrong layout".into());
            } else {
                details.push("free case: J = 0, 8 even + 8 odd layout variables".into());
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("free case: {e}"));
        }
    }

    // (b) B = M2 with the (0,1) grading by structure constants: injective
    let a11 = matrix_algebra(2, &[0, 1]);
    let p11 = Presentation::of_algebra(&a11);
    let ta11 = TracedAlgebra::new(a11).unwrap();
    match build_universal(&ta11, &p11, budget) {
        Ok(u) => match check_embedding(&u, 2, budget) {
            Ok(rep) => {
                if rep.injective {
                    details.push(format!(
                        "structure-constant case: injective at degree 2 (dims {} = {})",
                        rep.free_dim, rep.image_dim
                    ));
                } else {
                    ok = false;
                    details.push("structure-constant case: not injective".into());
                }
            }
            Err(e) => {
                ok = false;
                details.push(format!("embedding: {e}"));
            }
        },
        Err(e) => {
            ok = false;
            details.push(format!("build: {e}"));
        }
    }

    // (c) universal property on the idempotent example
    let tak = TracedAlgebra::new(matrix_algebra(1, &[0])).unwrap();
    let gens = vec![("x".to_string(), Parity::Even)];
    let rel = crate::expr::parse_supertrace_with("x*x - x", crate::expr::generator_resolver(&gens))
        .unwrap();
    let idem = Presentation::new(gens, vec![rel]);
    match build_universal(&tak, &idem, budget) {
        Ok(u) => {
            let f = grassmann(0);
            match universal_property_check(&u, &f, &[vec![Rat::one()]]) {
                Ok(rep) if rep.pass() => {
                    details.push("kappa(x) = 1: universal property verified".into())
                }
                Ok(_) => {
                    ok = false;
                    details.push("kappa(x) = 1: factorization failed".into());
                }
                Err(e) => {
                    ok = false;
                    details.push(format!("kappa(x) = 1: {e}"));
                }
            }
            match universal_property_check(&u, &f, &[vec![ratio(1, 2)]]) {
                Err(crate::universal::UniversalError::KappaViolatesRelation(0)) => {
                    details.push("kappa(x) = 1/2: correctly rejected".into())
                }
                other => {
                    ok = false;
                    details.push(format!("kappa(x) = 1/2: expected rejection, got {other:?}"));
                }
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("idempotent build: {e}"));
        }
    }

    CriterionResult {
        id: "7".into(),
        name: "universal supermap: free layout, embedding of M2(0,1), universal property".into(),
        passed: ok,
        detail: details.join("; "),
    }
}

fn criterion_8(budget: &mut Budget) -> CriterionResult {
    let tak = TracedAlgebra::new(matrix_algebra(1, &[0])).unwrap();
    let gens = vec![("x".to_string(), Parity::Even)];
    let rel =
        crate::expr::parse_supertrace_with("x*x*x", crate::expr::generator_resolver(&gens)).unwrap();
    let mut p = Presentation::new(gens.clone(), vec![rel]);
    p.str_bound = Some(2);
    let (passed, detail) = match build_universal(&tak, &p, budget) {
        Ok(u) => {
            let ideal =
                vec![crate::expr::parse_supertrace_with("x", crate::expr::generator_resolver(&gens))
                    .unwrap()];
            match power_inclusion_check(&u, &ideal, 1, 2, 4, budget) {
                Ok(rep) => (
                    rep.holds,
                    format!(
                        "(I)^2 cap B in I verified up to degree 4 (intersection dimension {})",
                        rep.intersection_dim
                    ),
                ),
                Err(e) => (false, e.to_string()),
            }
        }
        Err(e) => (false, e.to_string()),
    };
    CriterionResult {
        id: "8".into(),
        name: "power inclusion at k = 1 for x^3 = 0, c = 2, d = 4".into(),
        passed,
        detail,
    }
}

fn criterion_9(budget: &mut Budget) -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();
    let parse = |even: &[&str], odd: &[&str], rels: &[&str]| -> SuperPresentation {
        let even_names: Vec<String> = even.iter().map(|s| s.to_string()).collect();
        let odd_names: Vec<String> = odd.iter().map(|s| s.to_string()).collect();
        let relations = rels
            .iter()
            .map(|r| {
                crate::expr::parse_poly_with(r, crate::expr::list_resolver(&even_names, &odd_names))
                    .unwrap()
            })
            .collect();
        SuperPresentation {
            even_names,
            odd_names,
            relations,
        }
    };

    // S2: cuspidal cubic, not smooth, origin witness
    let s2 = parse(&["x1", "x2"], &["th1", "th2"], &["x2^3 - x1^2"]);
    match is_smooth(&s2, budget) {
        Ok(rep) => {
            let origin = rep
                .witness
                .as_ref()
                .map(|w| w.iter().all(|(_, v)| v == "0"))
                .unwrap_or(false);
            if rep.verdict != SmoothVerdict::NotSmooth || !origin {
                ok = false;
                details.push("S2: expected not-smooth with origin witness".into());
            } else {
                details.push("S2 (cuspidal cubic): not smooth, singular at the origin".into());
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("S2: {e}"));
        }
    }

    // free superring: smooth
    let free = parse(&["x1"], &["th1", "th2"], &[]);
    match is_smooth(&free, budget) {
        Ok(rep) if rep.verdict == SmoothVerdict::Smooth => {
            details.push("free superring: smooth".into())
        }
        Ok(_) => {
            ok = false;
            details.push("free superring: expected smooth".into());
        }
        Err(e) => {
            ok = false;
            details.push(format!("free: {e}"));
        }
    }

    // affine sphere: smooth

    let sphere = parse(
        &["x1", "x2", "x3"],
        &["th1", "th2"],
        &["x1^2 + x2^2 + x3^2 - 1"],
    );
    match is_smooth(&sphere, budget) {
        Ok(rep) if rep.verdict == SmoothVerdict::Smooth => {
            details.push("affine sphere: smooth".into())
        }
        Ok(_) => {
            ok = false;
            details.push("sphere: expected smooth".into());
        }
        Err(e) => {
            ok = false;
            details.push(format!("sphere: {e}"));
        }
    }

    // S1: affine cone, not smooth at the origin, with the conic note
    let s1 = parse(&["x1", "x2", "x3"], &["th1", "th2"], &["x1^2 - x2*x3"]);
    match is_smooth(&s1, budget) {
        Ok(rep) => {
            let origin = rep
                .witness
                .as_ref()
                .map(|w| w.iter().all(|(_, v)| v == "0"))
                .unwrap_or(false);
            let note = rep.notes.iter().any(|n| n.contains("non-degenerate conic"));
            if rep.verdict != SmoothVerdict::NotSmooth || !origin || !note {
                ok = false;
                details.push("S1: expected affine not-smooth verdict with conic note".into());
            } else {
                details.push(
                    "S1 (quadric cone): affinely singular at the origin; projective conic note attached"
                        .into(),
                );
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("S1: {e}"));
        }
    }

    CriterionResult {
        id: "9".into(),
        name: "Jacobian smoothness: S2 singular, free and sphere smooth, S1 affine verdict + note"
            .into(),
        passed: ok,
        detail: details.join("; "),
    }
}

fn criterion_10(budget: &mut Budget) -> CriterionResult {
    let mut ok = true;
    let mut details = Vec::new();

    // free case: krull dim = k dim(A) = 8
    let ta = TracedAlgebra::new(matrix_algebra(2, &[0, 0])).unwrap();
    let free = Presentation::new(
        vec![
            ("x".to_string(), Parity::Even),
            ("y".to_string(), Parity::Odd),
        ],
        Vec::new(),
    );
    match build_universal(&ta, &free, budget) {
        Ok(u) => match krull_dim_even(&u, budget) {
            Ok(Some(8)) => details.push("free case: even Krull dimension 8 = k dim(A)".into()),
            other => {
                ok = false;
                details.push(format!("free case: expected dimension 8, got {other:?}"));
            }
        },
        Err(e) => {
            ok = false;
            details.push(format!("free build: {e}"));
        }
    }

    // cone ideal: dimension 2
    {
        let gens: Vec<SuperPolynomial> = vec![crate::expr::parse_poly("x1^2 - x2*x3").unwrap()];
        let engine = crate::groebner::even_ideal_engine(&gens, budget).unwrap();
        let leads: Vec<SuperMonomial> = engine
            .basis()
            .iter()
            .map(|g| g.leading_term().unwrap().0.clone())
            .collect();
        let vars: Vec<EvenVar> = (1..=3).map(EvenVar).collect();
        match crate::groebner::staircase_dimension(&leads, &vars) {
            Some(2) => details.push("cone ideal: dimension 2".into()),
            other => {
                ok = false;
                details.push(format!("cone ideal: expected 2, got {other:?}"));
            }
        }
    }

    // idempotent example over K: dimension 0, GK bound chain
    let tak = TracedAlgebra::new(matrix_algebra(1, &[0])).unwrap();
    let gens = vec![("x".to_string(), Parity::Even)];
    let rel = crate::expr::parse_supertrace_with("x*x - x", crate::expr::generator_resolver(&gens))
        .unwrap();
    let idem = Presentation::new(gens, vec![rel]);
    match build_universal(&tak, &idem, budget) {
        Ok(u) => {
            match krull_dim_even(&u, budget) {
                Ok(Some(0)) => details.push("idempotent example: dimension 0".into()),
                other => {
                    ok = false;
                    details.push(format!("idempotent: expected 0, got {other:?}"));
                }
            }
            match gk_bound_report(&u, budget) {
                Ok(gk) if gk.bound_holds => details.push(format!(
                    "GK bound: dim {} <= k dim(A) = {}",
                    gk.krull_dim_even.unwrap_or(0),
                    gk.bound
                )),
                Ok(_) => {
                    ok = false;
                    details.push("GK bound violated".into());
                }
                Err(e) => {
                    ok = false;
                    details.push(format!("GK report: {e}"));
                }
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("idempotent build: {e}"));
        }
    }

    CriterionResult {
        id: "10".into(),
        name: "dimension chain: free = k dim(A), cone = 2, idempotent = 0, GK bound".into(),
        passed: ok,
        detail: details.join("; "),
    }
}

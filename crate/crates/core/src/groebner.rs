//! Normal forms in Delta_S modulo a finitely generated ideal.
//!
//! Delta_S = K[S] (x) Lambda(T) is a supercommutative ring with zero
//! divisors among the odd variables, so ideal membership is decided by a
//! Groebner basis in the exterior-algebra sense, under the term order of
//! `SuperMonomial` (odd part by length-then-lex, then degrevlex on the even
//! part):
//!
//! - divisibility is signed: g reduces a term t when the leading odd part of
//!   g is contained in t's odd part and the leading even part divides t's;
//!   the reducer is theta^beta . m . g for the complementary odd monomial
//!   beta (disjoint from the lead, so the lead survives) and an even
//!   monomial m;
//! - S-pairs join any two basis elements through the union of their leading
//!   odd parts and the lcm of their leading even parts;
//! - each basis element g additionally owes annihilator pairs theta_k . g
//!   for every theta_k in its leading odd part (the lead dies, the tail
//!   must reduce to zero).
//!
//! Completion terminates (2^|T| positions over a Noetherian coefficient
//! ring) and is guarded by an explicit work budget: exceeding the budget is
//! an error, never a silent truncation.

use crate::scalar::Rat;
use crate::superpoly::{EvenVar, OddVar, SuperMonomial, SuperPolynomial};
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerError {
    BudgetExceeded { used: u64, limit: u64 },
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::BudgetExceeded { used, limit } => {
                write!(
                    f,
                    "work budget exceeded: {used} reduction steps (limit {limit})"
                )
            }
        }
    }
}

impl std::error::Error for GroebnerError {}

/// Reduction-step budget shared across a computation.
#[derive(Clone, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn step(&mut self, cost: u64) -> Result<(), GroebnerError> {
        self.used += cost;
        if self.used > self.limit {
            Err(GroebnerError::BudgetExceeded {
                used: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}

/// Completed normal-form data for an ideal of Delta_S.
#[derive(Clone, Debug)]
pub struct NormalFormEngine {
    /// Monic, interreduced, sorted by leading monomial.
    basis: Vec<SuperPolynomial>,
    /// Cached leading monomials, aligned with `basis`.
    leads: Vec<SuperMonomial>,
}

/// Signed divisibility: the reducer monomial for term `t` modulo lead `lg`,
/// when `lg`'s odd part is contained in `t`'s and its even part divides.
/// Returns the odd complement beta as a monomial.
fn lead_divides(lg: &SuperMonomial, t: &SuperMonomial) -> Option<SuperMonomial> {
    let lo = lg.odd_part();
    let to = t.odd_part();
    if lo.len() > to.len() || !lg.even_divides(t) {
        return None;
    }
    let mut beta = Vec::with_capacity(to.len() - lo.len());
    let mut i = 0;
    for v in to {
        if i < lo.len() && lo[i] == *v {
            i += 1;
        } else {
            beta.push(*v);
        }
    }
    if i < lo.len() {
        return None; // some lead odd variable is missing from t
    }
    Some(SuperMonomial::from_parts(BTreeMap::new(), beta))
}

fn even_quotient_mono(t: &SuperMonomial, lg: &SuperMonomial) -> SuperMonomial {
    let mut even = BTreeMap::new();
    for (v, e) in t.even_part() {
        let q = e - lg.exponent(*v);
        if q > 0 {
            even.insert(*v, q);
        }
    }
    SuperMonomial::from_parts(even, Vec::new())
}

impl NormalFormEngine {
    /// Runs completion over the given generators. The `odd_layout` argument
    /// names the ambient odd variables for callers that track layouts; the
    /// algorithm itself only ever touches odd variables occurring in the
    /// data.
    pub fn complete(
        gens: &[SuperPolynomial],
        _odd_layout: &[OddVar],
        budget: &mut Budget,
    ) -> Result<Self, GroebnerError> {
        let mut engine = NormalFormEngine {
            basis: Vec::new(),
            leads: Vec::new(),
        };
        // (cost, kind, i, j): kind 0 = S-pair (i, j), kind 1 = annihilator
        // pair theta_j . basis[i]; Reverse for a min-heap.
        let mut queue: BinaryHeap<std::cmp::Reverse<(u64, u8, usize, u64)>> = BinaryHeap::new();

        let add_element =
            |engine: &mut NormalFormEngine,
             queue: &mut BinaryHeap<std::cmp::Reverse<(u64, u8, usize, u64)>>,
             p: SuperPolynomial| {
                let lc = p.leading_term().expect("nonzero").1.clone();
                let monic = p.scale(&lc.recip());
                let lm = monic.leading_term().unwrap().0.clone();
                let idx = engine.basis.len();
                for (i, lg) in engine.leads.iter().enumerate() {
                    // generalized lcm: union of odd parts, lcm of even parts
                    let mut odd: Vec<OddVar> = lg.odd_part().to_vec();
                    for v in lm.odd_part() {
                        if !odd.contains(v) {
                            odd.push(*v);
                        }
                    }
                    let cost = lg.even_lcm(&lm).total_degree() + odd.len() as u64;
                    queue.push(std::cmp::Reverse((cost, 0, i, idx as u64)));
                }
                for v in lm.odd_part() {
                    queue.push(std::cmp::Reverse((
                        lm.total_degree() + 1,
                        1,
                        idx,
                        v.0 as u64,
                    )));
                }
                engine.leads.push(lm);
                engine.basis.push(monic);
            };

        for g in gens {
            let r = engine.reduce(g, budget)?;
            if !r.is_zero() {
                add_element(&mut engine, &mut queue, r);
            }
        }

        while let Some(std::cmp::Reverse((_, kind, i, j))) = queue.pop() {
            budget.step(1)?;
            let s = match kind {
                0 => engine.s_polynomial(i, j as usize),
                _ => SuperPolynomial::odd_var(OddVar(j as u32)).mul(&engine.basis[i]),
            };
            if s.is_zero() {
                continue;
            }
            let r = engine.reduce(&s, budget)?;
            if !r.is_zero() {
                add_element(&mut engine, &mut queue, r);
            }
        }

        engine.interreduce(budget)?;
        Ok(engine)
    }

    /// S-polynomial through the generalized lcm of the two leads.
    fn s_polynomial(&self, i: usize, j: usize) -> SuperPolynomial {
        let (li, lj) = (&self.leads[i], &self.leads[j]);
        let beta_i = odd_complement(lj.odd_part(), li.odd_part());
        let beta_j = odd_complement(li.odd_part(), lj.odd_part());
        let lcm_even = li.even_lcm(lj);
        let one = Rat::one();
        let mi = even_quotient_mono(&lcm_even, li);
        let mj = even_quotient_mono(&lcm_even, lj);
        let a = lift(&self.basis[i], &beta_i, &mi, &one);
        let b = lift(&self.basis[j], &beta_j, &mj, &one);
        // normalize both to a monic top and cancel it
        let na = match a.leading_term() {
            Some((_, c)) => a.scale(&c.recip()),
            None => return b,
        };
        let nb = match b.leading_term() {
            Some((_, c)) => b.scale(&c.recip()),
            None => return na,
        };
        na.sub(&nb)
    }

    /// Full normal form with the signed divisibility rule.
    pub fn reduce(
        &self,
        p: &SuperPolynomial,
        budget: &mut Budget,
    ) -> Result<SuperPolynomial, GroebnerError> {
        let mut work = p.clone();
        let mut done = SuperPolynomial::zero();
        'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone()))
        {
            budget.step(1)?;
            for (gi, lg) in self.leads.iter().enumerate() {
                if let Some(beta) = lead_divides(lg, &lm) {
                    let m = even_quotient_mono(&lm, lg);
                    let h = lift(&self.basis[gi], &beta, &m, &Rat::one());
                    let hc = h
                        .leading_term()
                        .expect("lifted reducer keeps its lead")
                        .1
                        .clone();
                    debug_assert_eq!(h.leading_term().unwrap().0, &lm);
                    work = work.sub(&h.scale(&(lc.clone() / hc)));
                    continue 'outer;
                }
            }
            done.add_term(lm.clone(), lc.clone());
            work.add_term(lm, -lc);
        }
        Ok(done)
    }

    fn interreduce(&mut self, budget: &mut Budget) -> Result<(), GroebnerError> {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.basis.len() {
                let g = self.basis.remove(i);
                self.leads.remove(i);
                let r = self.reduce(&g, budget)?;
                if r.is_zero() {
                    changed = true;
                    continue;
                }
                let monic = r.scale(&r.leading_term().unwrap().1.recip());
                if monic != g {
                    changed = true;
                }
                self.leads.insert(i, monic.leading_term().unwrap().0.clone());
                self.basis.insert(i, monic);
                i += 1;
            }
            if !changed {
                break;
            }
        }
        let mut paired: Vec<(SuperMonomial, SuperPolynomial)> = self
            .basis
            .drain(..)
            .map(|g| (g.leading_term().unwrap().0.clone(), g))
            .collect();
        paired.sort_by(|a, b| a.0.cmp(&b.0));
        self.leads = paired.iter().map(|(l, _)| l.clone()).collect();
        self.basis = paired.into_iter().map(|(_, g)| g).collect();
        Ok(())
    }

    pub fn basis(&self) -> &[SuperPolynomial] {
        &self.basis
    }

    /// nf(p) = 0 iff p lies in the ideal.
    pub fn contains(
        &self,
        p: &SuperPolynomial,
        budget: &mut Budget,
    ) -> Result<bool, GroebnerError> {
        Ok(self.reduce(p, budget)?.is_zero())
    }

    /// The ideal contains 1 (equivalently, the reduced basis is {1}).
    pub fn is_trivial(&self) -> bool {
        self.leads.iter().any(|m| m.is_one())
    }

    /// Generators of the even projection pi(J): the coefficients of the odd
    /// monomial 1 across the basis. pi is K[S]-linear and the basis
    /// generates J over K[S] together with its odd multiples, whose
    /// projections vanish, so these generate pi(J).
    pub fn even_projection_gens(&self) -> Vec<SuperPolynomial> {
        let mut out = Vec::new();
        for g in &self.basis {
            let mut proj = SuperPolynomial::zero();
            for (m, c) in g.terms() {
                if m.odd_part().is_empty() {
                    proj.add_term(m.clone(), c.clone());
                }
            }
            if !proj.is_zero() {
                out.push(proj);
            }
        }
        out
    }
}

/// theta^beta . m . g with beta disjoint from g's leading odd part; the lead
/// of the result is theta^beta . m . lead(g) (other terms may die).
fn lift(
    g: &SuperPolynomial,
    beta: &SuperMonomial,
    even: &SuperMonomial,
    coeff: &Rat,
) -> SuperPolynomial {
    let shifted = if beta.is_one() {
        g.clone()
    } else {
        SuperPolynomial::from_monomial(beta.clone(), Rat::one()).mul(g)
    };
    shifted.mul_monomial(even, coeff)
}

fn odd_complement(of: &[OddVar], minus: &[OddVar]) -> SuperMonomial {
    let set: BTreeSet<OddVar> = minus.iter().copied().collect();
    let beta: Vec<OddVar> = of.iter().copied().filter(|v| !set.contains(v)).collect();
    SuperMonomial::from_parts(BTreeMap::new(), beta)
}

/// Krull dimension of K[vars]/ideal from the initial-ideal staircase:
/// the maximal number of variables supporting no leading monomial.
/// `None` when the ideal is the whole ring.
pub fn staircase_dimension(leading: &[SuperMonomial], vars: &[EvenVar]) -> Option<usize> {
    if leading.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<BTreeSet<EvenVar>> = leading
        .iter()
        .map(|m| m.even_part().keys().copied().collect())
        .collect();
    let touched: BTreeSet<EvenVar> = supports.iter().flatten().copied().collect();
    let free = vars.iter().filter(|v| !touched.contains(v)).count();
    let active: Vec<EvenVar> = vars.iter().copied().filter(|v| touched.contains(v)).collect();
    let mut best = 0usize;
    for mask in 0u64..(1u64 << active.len()) {
        let subset: BTreeSet<EvenVar> = active
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| *v)
            .collect();
        if supports.iter().any(|s| s.is_subset(&subset)) {
            continue;
        }
        best = best.max(subset.len());
    }
    Some(free + best)
}

/// Completed Groebner data for an ideal of K[vars] (no odd variables), as
/// used by the Nullstellensatz-style emptiness test.
pub fn even_ideal_engine(
    gens: &[SuperPolynomial],
    budget: &mut Budget,
) -> Result<NormalFormEngine, GroebnerError> {
    NormalFormEngine::complete(gens, &[], budget)
}

/// 1 lies in the ideal iff its reduced Groebner basis is {1} iff the variety
/// is empty over the algebraic closure.
pub fn radical_trivial(
    gens: &[SuperPolynomial],
    budget: &mut Budget,
) -> Result<bool, GroebnerError> {
    Ok(even_ideal_engine(gens, budget)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use num_traits::Zero;

    fn engine(polys: &[&str]) -> NormalFormEngine {
        let gens: Vec<SuperPolynomial> = polys.iter().map(|s| parse_poly(s).unwrap()).collect();
        NormalFormEngine::complete(&gens, &[], &mut Budget::default()).unwrap()
    }

    #[test]
    fn univariate_reduction() {
        let e = engine(&["x1^2 - x1"]);
        let mut b = Budget::default();
        assert!(e.contains(&parse_poly("x1^2 - x1").unwrap(), &mut b).unwrap());
        assert!(e.contains(&parse_poly("x1^3 - x1").unwrap(), &mut b).unwrap());
        let nf = e.reduce(&parse_poly("x1^5").unwrap(), &mut b).unwrap();
        assert_eq!(nf, parse_poly("x1").unwrap());
        assert_eq!(e.reduce(&nf, &mut b).unwrap(), nf);
    }

    #[test]
    fn buchberger_finds_hidden_elements() {
        let e = engine(&["x1*x2 - 1", "x1^2 - x2"]);
        let mut b = Budget::default();
        assert!(e.contains(&parse_poly("x1^3 - 1").unwrap(), &mut b).unwrap());
        assert!(e.contains(&parse_poly("x2^2 - x1").unwrap(), &mut b).unwrap());
        assert!(!e.contains(&parse_poly("x1 - 1").unwrap(), &mut b).unwrap());
    }

    #[test]
    fn radical_triviality_cases() {
        let mut b = Budget::default();
        let gens = |ss: &[&str]| -> Vec<SuperPolynomial> {
            ss.iter().map(|s| parse_poly(s).unwrap()).collect()
        };
        assert!(radical_trivial(&gens(&["x1", "x1 - 1"]), &mut b).unwrap());
        assert!(!radical_trivial(
            &gens(&["x1^2 - x2*x3", "2*x1", "x2", "x3"]),
            &mut b
        )
        .unwrap());
        assert!(!radical_trivial(&gens(&["x1^2 + 1"]), &mut b).unwrap());
        assert!(radical_trivial(
            &gens(&["x1^2 + x2^2 + x3^2 - 1", "2*x1", "2*x2", "2*x3"]),
            &mut b
        )
        .unwrap());
    }

    #[test]
    fn odd_ideal_membership() {
        // J = (th1 + th2): contains th1 th2 but not th1
        let g = parse_poly("th1 + th2").unwrap();
        let layout = [OddVar(1), OddVar(2)];
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&[g], &layout, &mut b).unwrap();
        assert!(e.contains(&parse_poly("th1*th2").unwrap(), &mut b).unwrap());
        assert!(!e.contains(&parse_poly("th1").unwrap(), &mut b).unwrap());
        let p = parse_poly("th1 - th2").unwrap();
        let nf = e.reduce(&p, &mut b).unwrap();
        assert_eq!(e.reduce(&nf, &mut b).unwrap(), nf);
        assert!(!nf.is_zero());
        // th1 * (th1 + th2) = th1 th2 is in the ideal as well
        assert!(e
            .contains(&parse_poly("th2*th1").unwrap(), &mut b)
            .unwrap());
    }

    #[test]
    fn mixed_even_odd_ideal() {
        // J = (x1 th1): contains x1 th1 th2, not th1 or x1
        let g = parse_poly("x1*th1").unwrap();
        let layout = [OddVar(1), OddVar(2)];
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&[g], &layout, &mut b).unwrap();
        assert!(e
            .contains(&parse_poly("x1*th1*th2").unwrap(), &mut b)
            .unwrap());
        assert!(!e.contains(&parse_poly("th1").unwrap(), &mut b).unwrap());
        assert!(!e.contains(&parse_poly("x1").unwrap(), &mut b).unwrap());
        assert!(!e.contains(&parse_poly("x1*th2").unwrap(), &mut b).unwrap());
    }

    #[test]
    fn annihilator_pairs_fire() {
        // g = x1 th1 + th2: lead th2 (position length 1, lex). The
        // annihilator pair th2 g = x1 th1 th2 must be in the ideal, and the
        // completed basis must expose it.
        let g = parse_poly("x1*th1 + th2").unwrap();
        let layout = [OddVar(1), OddVar(2)];
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&[g], &layout, &mut b).unwrap();
        assert!(e
            .contains(&parse_poly("x1*th1*th2").unwrap(), &mut b)
            .unwrap());
        // and th1 g = x1 th1 th2 - th1 th2... check th1-multiple too
        assert!(e
            .contains(&parse_poly("th1*th2").unwrap(), &mut b)
            .unwrap());
    }

    #[test]
    fn staircase_dimensions() {
        let vars: Vec<EvenVar> = (1..=3).map(EvenVar).collect();
        let e = engine(&["x1^2 - x2*x3"]);
        let leads: Vec<_> = e
            .basis()
            .iter()
            .map(|g| g.leading_term().unwrap().0.clone())
            .collect();
        assert_eq!(staircase_dimension(&leads, &vars), Some(2));
        assert_eq!(staircase_dimension(&[], &vars), Some(3));
        let e = engine(&["x1^2 - x1"]);
        let leads: Vec<_> = e
            .basis()
            .iter()
            .map(|g| g.leading_term().unwrap().0.clone())
            .collect();
        assert_eq!(staircase_dimension(&leads, &[EvenVar(1)]), Some(0));
        let e = engine(&["x1", "x1 - 1"]);
        let leads: Vec<_> = e
            .basis()
            .iter()
            .map(|g| g.leading_term().unwrap().0.clone())
            .collect();
        assert_eq!(staircase_dimension(&leads, &[EvenVar(1)]), None);
    }

    #[test]
    fn budget_is_enforced() {
        let gens: Vec<SuperPolynomial> = ["x1^4 - x2", "x2^4 - x3", "x3^4 - x1"]
            .iter()
            .map(|s| parse_poly(s).unwrap())
            .collect();
        let mut tiny = Budget::new(3);
        let r = NormalFormEngine::complete(&gens, &[], &mut tiny);
        assert!(matches!(r, Err(GroebnerError::BudgetExceeded { .. })));
    }

    #[test]
    fn nf_respects_grading() {
        let g1 = parse_poly("x1*th1 - th2").unwrap();
        let g2 = parse_poly("x1^2 - x1").unwrap();
        let layout = [OddVar(1), OddVar(2)];
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&[g1, g2], &layout, &mut b).unwrap();
        for g in e.basis() {
            assert!(g.parity().is_ok(), "basis element not parity-homogeneous: {g}");
        }
    }

    #[test]
    fn membership_matches_brute_force_on_random_ideals() {
        use crate::linalg::SpanBuilder;
        use rand::{Rng, SeedableRng};

        // randomized cross-validation: ideals with <= 2 generators over
        // K[x1, x2] (x) Lambda(th1..th3), generator degree <= 2. The oracle
        // spans m * g over all monomials m with a generous degree slack and
        // decides membership of low-degree candidates by linear algebra.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let all_monos = |max_even: u32| -> Vec<SuperMonomial> {
            let mut out = Vec::new();
            for e1 in 0..=max_even {
                for e2 in 0..=max_even.saturating_sub(e1) {
                    for mask in 0u32..8 {
                        let mut even = std::collections::BTreeMap::new();
                        if e1 > 0 {
                            even.insert(EvenVar(1), e1);
                        }
                        if e2 > 0 {
                            even.insert(EvenVar(2), e2);
                        }
                        let odd: Vec<OddVar> = (0..3)
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| OddVar(i + 1))
                            .collect();
                        out.push(SuperMonomial::from_parts(even, odd));
                    }
                }
            }
            out
        };
        let low = all_monos(2);
        let big = all_monos(6);
        let index: std::collections::BTreeMap<SuperMonomial, usize> = big
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        for _case in 0..12 {
            let mut gens = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                let mut g = SuperPolynomial::zero();
                for _ in 0..rng.gen_range(1..=3) {
                    let m = &low[rng.gen_range(0..low.len())];
                    if m.total_degree() > 2 {
                        continue;
                    }
                    let c = rng.gen_range(-2..=2i64);
                    g.add_term(m.clone(), Rat::from_integer(c.into()));
                }
                if !g.is_zero() {
                    gens.push(g);
                }
            }
            if gens.is_empty() {
                continue;
            }
            let layout: Vec<OddVar> = (1..=3).map(OddVar).collect();
            let mut b = Budget::default();
            let e = NormalFormEngine::complete(&gens, &layout, &mut b).unwrap();

            // oracle span: m * g for every monomial m with slack
            let mut span = SpanBuilder::new(big.len());
            for g in &gens {
                for m in &big {
                    let p = SuperPolynomial::from_monomial(m.clone(), Rat::one()).mul(g);
                    if p.is_zero()
                        || p.terms().any(|(mm, _)| !index.contains_key(mm))
                    {
                        continue;
                    }
                    let mut v = vec![Rat::zero(); big.len()];
                    for (mm, c) in p.terms() {
                        v[index[mm]] = c.clone();
                    }
                    span.insert(v);
                }
            }
            // compare on candidates of degree <= 2 (slack 4 in the oracle)
            for m in &low {
                if m.total_degree() > 2 {
                    continue;
                }
                let p = SuperPolynomial::from_monomial(m.clone(), Rat::one());
                let mut v = vec![Rat::zero(); big.len()];
                v[index[m]] = Rat::one();
                let by_span = span.contains(&v);
                let by_engine = e.contains(&p, &mut b).unwrap();
                // the oracle is a truncation: it can only miss memberships,
                // never invent them
                if by_span {
                    assert!(by_engine, "oracle in, engine out: {p} mod {gens:?}");
                } else {
                    assert!(
                        !by_engine,
                        "engine claims membership the degree-6 oracle cannot see: {p} mod {gens:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn membership_matches_brute_force_on_small_exterior_ideal() {
        // brute-force oracle in Lambda(th1..th3) (x) K[x1]_{<=2}: the ideal
        // as a K-vector space, spanned by m * g over all monomials m
        let gens = [
            parse_poly("x1*th1 + th2*th3 + th1").unwrap(),
            parse_poly("x1*th2 - th3").unwrap(),
        ];
        let layout = [OddVar(1), OddVar(2), OddVar(3)];
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&gens, &layout, &mut b).unwrap();

        // enumerate monomials x1^a * theta^S with a <= 4
        let mut monos = Vec::new();
        for a in 0..=4u32 {
            for mask in 0..8u32 {
                let odd: Vec<OddVar> = (0..3)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| OddVar(i + 1))
                    .collect();
                let mut even = BTreeMap::new();
                if a > 0 {
                    even.insert(EvenVar(1), a);
                }
                monos.push(SuperMonomial::from_parts(even, odd));
            }
        }
        // span of m*g truncated to x1-degree <= 4 (drop overflow products)
        let mut span_vecs: Vec<SuperPolynomial> = Vec::new();
        for g in &gens {
            for m in &monos {
                let p = SuperPolynomial::from_monomial(m.clone(), Rat::one()).mul(g);
                if !p.is_zero() && p.terms().all(|(mm, _)| mm.even_degree() <= 4) {
                    span_vecs.push(p);
                }
            }
        }
        let index: BTreeMap<SuperMonomial, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = crate::linalg::SpanBuilder::new(monos.len());
        for p in &span_vecs {
            let mut v = vec![Rat::zero(); monos.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            span.insert(v);
        }
        // compare engine membership with the vector-space span on low-degree
        // candidates (degree low enough that truncation is exact)
        for m in &monos {
            if m.even_degree() > 2 {
                continue;
            }
            let p = SuperPolynomial::from_monomial(m.clone(), Rat::one());
            let mut v = vec![Rat::zero(); monos.len()];
            v[index[m]] = Rat::one();
            let by_span = span.contains(&v);
            let by_engine = e.contains(&p, &mut b).unwrap();
            assert_eq!(
                by_engine, by_span,
                "membership mismatch on {p}"
            );
        }
    }
}

//! The A-universal supermap of a finitely presented graded algebra.
//!
//! Given a presentation B = K{X;Y}/(relations) and a graded-simple central
//! algebra A with nondegenerate generic trace, the universal superring
//! S_A(B) is Delta_S/J where generator i maps to the generic superelement of
//! slot i+1 and J is the coordinate ideal: the ideal of Delta_S generated by
//! the basis coordinates of every evaluated relation. For (graded-)central-
//! simple A the multiplication algebra acts densely, so the ideal generated
//! by sum b_i (x) p_i equals A (x) (p_1, ..., p_n); this is what makes
//! coordinate extraction exact.
//!
//! Everything degree-bounded (embedding checks, power inclusion) is reported
//! as "verified up to degree d", never as unconditional.

use crate::algebra::{tensor_product, AlgebraElement, AlgebraError, GradedAlgebra, TracedAlgebra};
use crate::groebner::{staircase_dimension, Budget, GroebnerError, NormalFormEngine};
use crate::identities::{evaluate, IdentityError, Letter, SupertracePolynomial, Word};
use crate::linalg::{QMatrix, SpanBuilder};
use crate::scalar::{fmt_rat, Rat};
use crate::superpoly::{EvenVar, OddVar, Parity, SuperMonomial, SuperPolynomial};
use crate::tensor::{generic_even, generic_odd, GenericNames, TensorElement};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;


#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalError {
    /// A named structural precondition on A failed.
    Precondition(String),
    Groebner(GroebnerError),
    Algebra(AlgebraError),
    Identity(IdentityError),
    Unsupported(String),
    Malformed(String),
    VariableOutsideLayout(String),
    KappaViolatesRelation(usize),
    KappaParity(String),
}

impl fmt::Display for UniversalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalError::Precondition(s) => write!(f, "precondition failed: {s}"),
            UniversalError::Groebner(e) => write!(f, "{e}"),
            UniversalError::Algebra(e) => write!(f, "{e}"),
            UniversalError::Identity(e) => write!(f, "{e}"),
            UniversalError::Unsupported(s) => write!(f, "unsupported: {s}"),
            UniversalError::Malformed(s) => write!(f, "malformed presentation: {s}"),
            UniversalError::VariableOutsideLayout(s) => {
                write!(f, "variable outside the layout: {s}")
            }
            UniversalError::KappaViolatesRelation(i) => {
                write!(f, "kappa does not satisfy relation #{i}")
            }
            UniversalError::KappaParity(s) => write!(f, "kappa parity violation: {s}"),
        }
    }
}

impl std::error::Error for UniversalError {}

impl From<GroebnerError> for UniversalError {
    fn from(e: GroebnerError) -> Self {
        UniversalError::Groebner(e)
    }
}

impl From<AlgebraError> for UniversalError {
    fn from(e: AlgebraError) -> Self {
        UniversalError::Algebra(e)
    }
}

impl From<IdentityError> for UniversalError {
    fn from(e: IdentityError) -> Self {
        UniversalError::Identity(e)
    }
}

/// A finite presentation of a graded algebra: named generators with
/// parities and relations in the generators (supertrace polynomials; plain
/// words are the Str-free case).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<(String, Parity)>,
    pub relations: Vec<SupertracePolynomial>,
    pub degree_bound: Option<u32>,
    pub str_bound: Option<u32>,
}

impl Presentation {
    pub fn new(generators: Vec<(String, Parity)>, relations: Vec<SupertracePolynomial>) -> Self {
        Presentation {
            generators,
            relations,
            degree_bound: None,
            str_bound: None,
        }
    }

    /// The letter standing for generator `i` in relation expressions.
    pub fn letter(&self, i: usize) -> Letter {
        match self.generators[i].1 {
            Parity::Even => Letter::x(i as u32),
            Parity::Odd => Letter::y(i as u32),
        }
    }

    /// Reads `{ "generators": [{"name","parity"}...], "relations": [...],
    /// "degree_bound": d, "str_bound": c }`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, UniversalError> {
        let obj = v
            .as_object()
            .ok_or_else(|| UniversalError::Malformed("top level must be an object".into()))?;
        let gens_json = obj
            .get("generators")
            .and_then(|x| x.as_array())
            .ok_or_else(|| UniversalError::Malformed("field `generators` must be an array".into()))?;
        let mut generators = Vec::with_capacity(gens_json.len());
        for g in gens_json {
            let name = g
                .get("name")
                .and_then(|x| x.as_str())
                .ok_or_else(|| UniversalError::Malformed("generator field `name` missing".into()))?;
            let parity = match g.get("parity").and_then(|x| x.as_u64()) {
                Some(0) => Parity::Even,
                Some(1) => Parity::Odd,
                _ => {
                    return Err(UniversalError::Malformed(
                        "generator field `parity` must be 0 or 1".into(),
                    ))
                }
            };
            generators.push((name.to_string(), parity));
        }
        let names: Vec<&str> = generators.iter().map(|(n, _)| n.as_str()).collect();
        if names.len()
            != names
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len()
        {
            return Err(UniversalError::Malformed(
                "generator names must be distinct".into(),
            ));
        }
        let rel_json = obj
            .get("relations")
            .and_then(|x| x.as_array())
            .ok_or_else(|| UniversalError::Malformed("field `relations` must be an array".into()))?;
        let mut relations = Vec::with_capacity(rel_json.len());
        for (i, r) in rel_json.iter().enumerate() {
            let s = r.as_str().ok_or_else(|| {
                UniversalError::Malformed(format!("relation #{i} must be a string"))
            })?;
            let parsed =
                crate::expr::parse_supertrace_with(s, crate::expr::generator_resolver(&generators))
                    .map_err(|e| UniversalError::Malformed(format!("relation #{i}: {e}")))?;
            relations.push(parsed);
        }
        let degree_bound = obj.get("degree_bound").and_then(|x| x.as_u64()).map(|x| x as u32);
        let str_bound = obj.get("str_bound").and_then(|x| x.as_u64()).map(|x| x as u32);
        Ok(Presentation {
            generators,
            relations,
            degree_bound,
            str_bound,
        })
    }

    pub fn from_file(path: &str) -> Result<Self, UniversalError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UniversalError::Malformed(format!("cannot read `{path}`: {e}")))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| UniversalError::Malformed(format!("invalid JSON in `{path}`: {e}")))?;
        Presentation::from_json(&v)
    }

    /// Presents an algebra by its own structure constants: one generator per
    /// basis element, one relation g_i g_j - sum_k c_ij^k g_k per pair.
    pub fn of_algebra(a: &GradedAlgebra) -> Presentation {
        let generators: Vec<(String, Parity)> = a
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), a.degree(i)))
            .collect();
        let letter = |i: usize| -> Letter {
            match a.degree(i) {
                Parity::Even => Letter::x(i as u32),
                Parity::Odd => Letter::y(i as u32),
            }
        };
        let mut relations = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut f = SupertracePolynomial::zero();
                f.add_raw_term(
                    Rat::one(),
                    Some(Word::left_normed(&[letter(i), letter(j)])),
                    Vec::new(),
                );
                for (k, c) in a.structure_constant_rows(i, j) {
                    f.add_raw_term(-c.clone(), Some(Word::Letter(letter(*k))), Vec::new());
                }
                if !f.is_zero() {
                    relations.push(f);
                }
            }
        }
        Presentation::new(generators, relations)
    }
}

/// The constructed universal supermap: layout, generator images, coordinate
/// ideal with a completed normal-form engine.
#[derive(Debug)]
pub struct UniversalSupermap {
    pub traced: TracedAlgebra,
    pub presentation: Presentation,
    pub rho: Vec<TensorElement>,
    pub j_gens: Vec<SuperPolynomial>,
    pub engine: NormalFormEngine,
}

impl UniversalSupermap {
    pub fn dim_a(&self) -> usize {
        self.traced.algebra.dim()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.generators.len()
    }

    /// All even layout variables s_{i,j}, i = 1..dim(A), j = 1..#generators.
    pub fn layout_even_vars(&self) -> Vec<EvenVar> {
        (0..(self.dim_a() * self.num_generators()) as u32)
            .map(EvenVar)
            .collect()
    }

    pub fn layout_odd_vars(&self) -> Vec<OddVar> {
        (0..(self.dim_a() * self.num_generators()) as u32)
            .map(OddVar)
            .collect()
    }

    /// Layout variables actually occurring in the generator images.
    pub fn used_vars(&self) -> (Vec<EvenVar>, Vec<OddVar>) {
        let mut ev = std::collections::BTreeSet::new();
        let mut ov = std::collections::BTreeSet::new();
        for t in &self.rho {
            for p in &t.coords {
                let (e, o) = p.vars_used();
                ev.extend(e);
                ov.extend(o);
            }
        }
        (ev.into_iter().collect(), ov.into_iter().collect())
    }

    pub fn names(&self) -> GenericNames {
        GenericNames { dim: self.dim_a() }
    }

    /// Canonical representative modulo J; nf(p) = 0 iff p lies in J.
    pub fn normal_form(
        &self,
        p: &SuperPolynomial,
        budget: &mut Budget,
    ) -> Result<SuperPolynomial, UniversalError> {
        let n = (self.dim_a() * self.num_generators()) as u32;
        let (ev, ov) = p.vars_used();
        if let Some(v) = ev.iter().find(|v| v.0 >= n) {
            return Err(UniversalError::VariableOutsideLayout(format!(
                "even variable #{}",
                v.0
            )));
        }
        if let Some(v) = ov.iter().find(|v| v.0 >= n) {
            return Err(UniversalError::VariableOutsideLayout(format!(
                "odd variable #{}",
                v.0
            )));
        }
        Ok(self.engine.reduce(p, budget)?)
    }

    /// rho applied to a word polynomial in the generators.
    pub fn rho_eval(
        &self,
        f: &SupertracePolynomial,
    ) -> Result<TensorElement, UniversalError> {
        let assignment = self.generator_assignment();
        Ok(evaluate(f, &assignment, &self.traced)?)
    }

    fn generator_assignment(&self) -> BTreeMap<Letter, TensorElement> {
        (0..self.num_generators())
            .map(|i| (self.presentation.letter(i), self.rho[i].clone()))
            .collect()
    }

    /// nf applied coordinatewise.
    pub fn normal_form_tensor(
        &self,
        t: &TensorElement,
        budget: &mut Budget,
    ) -> Result<TensorElement, UniversalError> {
        let coords = t
            .coords
            .iter()
            .map(|p| self.engine.reduce(p, budget))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TensorElement::from_coords(&self.traced.algebra, coords))
    }
}

/// Named structural preconditions on A for the universal construction.
pub fn check_preconditions(ta: &TracedAlgebra) -> Result<(), UniversalError> {
    let a = &ta.algebra;
    if !a.check_graded().is_empty() {
        return Err(UniversalError::Precondition(
            "grading consistency (check_graded)".into(),
        ));
    }
    if !a.check_power_associative().pass() {
        return Err(UniversalError::Precondition(
            "power associativity (check_power_associative)".into(),
        ));
    }
    if !a.check_graded_simple().pass() {
        return Err(UniversalError::Precondition(
            "graded simplicity (check_graded_simple)".into(),
        ));
    }
    if !a.check_central().is_central() {
        return Err(UniversalError::Precondition(
            "centrality (check_central)".into(),
        ));
    }
    match a.check_trace_nondegenerate(&ta.trace.trd) {
        Ok(true) => {}
        Ok(false) => {
            return Err(UniversalError::Precondition(
                "nondegenerate generic trace (check_trace_nondegenerate)".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Builds (S_A(B), rho_B): generic images per generator, coordinate ideal J,
/// and a completed normal-form engine for Delta_S/J.
pub fn build_universal(
    ta: &TracedAlgebra,
    presentation: &Presentation,
    budget: &mut Budget,
) -> Result<UniversalSupermap, UniversalError> {
    check_preconditions(ta)?;
    let a = &ta.algebra;
    let rho: Vec<TensorElement> = presentation
        .generators
        .iter()
        .enumerate()
        .map(|(i, (_, parity))| match parity {
            Parity::Even => generic_even(a, (i + 1) as u32),
            Parity::Odd => generic_odd(a, (i + 1) as u32),
        })
        .collect();
    let assignment: BTreeMap<Letter, TensorElement> = (0..presentation.generators.len())
        .map(|i| (presentation.letter(i), rho[i].clone()))
        .collect();
    let mut j_gens = Vec::new();
    for rel in &presentation.relations {
        let value = evaluate(rel, &assignment, ta)?;
        for p in value.coords {
            if !p.is_zero() {
                debug_assert!(
                    p.parity().is_ok(),
                    "coordinate of a graded relation must be parity-homogeneous"
                );
                j_gens.push(p);
            }
        }
    }
    let n = a.dim() * presentation.generators.len();
    let layout_odd: Vec<OddVar> = (0..n as u32).map(OddVar).collect();
    let engine = NormalFormEngine::complete(&j_gens, &layout_odd, budget)?;
    Ok(UniversalSupermap {
        traced: ta.clone(),
        presentation: presentation.clone(),
        rho,
        j_gens,
        engine,
    })
}

// ---------------------------------------------------------------------------
// embedding check
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub degree: u32,
    pub word_count: usize,
    pub free_dim: usize,
    pub image_dim: usize,
    pub injective: bool,
    /// A combination of words with rho-image zero that is nonzero modulo the
    /// truncated relation ideal, when injectivity fails.
    pub kernel_witness: Option<String>,
}

fn relation_word_vector(
    rel: &SupertracePolynomial,
) -> Result<Vec<(Vec<usize>, Rat)>, UniversalError> {
    let mut out = Vec::new();
    for (shape, c) in rel.terms() {
        if !shape.factors.is_empty() {
            return Err(UniversalError::Unsupported(
                "embedding bookkeeping needs word relations (no Str factors)".into(),
            ));
        }
        let Some(h) = &shape.head else {
            return Err(UniversalError::Unsupported(
                "embedding bookkeeping needs word relations (no scalar terms)".into(),
            ));
        };
        let word: Vec<usize> = h.leaves().iter().map(|l| l.index as usize).collect();
        out.push((word, c.clone()));
    }
    Ok(out)
}

fn enumerate_words(k: usize, dmin: usize, dmax: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() >= dmin && !w.is_empty() {
            out.push(w.clone());
        }
        if w.len() < dmax {
            for g in 0..k {
                let mut w2 = w.clone();
                w2.push(g);
                stack.push(w2);
            }
        }
    }
    // deterministic order: by length, then lexicographic
    out.sort();
    out.sort_by_key(|w| w.len());
    out
}

/// Compares the K-dimension of the degree-d truncation of B (free words
/// modulo the truncated relation ideal) with the dimension of the span of
/// normal-formed rho images. Equality certifies injectivity up to degree d.
pub fn check_embedding(
    u: &UniversalSupermap,
    d: u32,
    budget: &mut Budget,
) -> Result<EmbeddingReport, UniversalError> {
    if !u.traced.algebra.is_associative() {
        return Err(UniversalError::Unsupported(
            "embedding bookkeeping flattens words and needs an associative A".into(),
        ));
    }
    let k = u.num_generators();
    let d = d as usize;
    let rel_vectors: Vec<Vec<(Vec<usize>, Rat)>> = u
        .presentation
        .relations
        .iter()
        .map(relation_word_vector)
        .collect::<Result<_, _>>()?;
    let max_rel_deg = rel_vectors
        .iter()
        .flat_map(|r| r.iter().map(|(w, _)| w.len()))
        .max()
        .unwrap_or(0);
    // slack for cancellations dropping into low degree
    let big_d = d + max_rel_deg;

    // column order: degree descending, so echelon rows with pivots in the
    // low-degree block are supported there entirely
    let mut all_words = enumerate_words(k, 1, big_d);
    all_words.sort();
    all_words.sort_by_key(|w| std::cmp::Reverse(w.len()));
    let col_of: BTreeMap<Vec<usize>, usize> = all_words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let ncols = all_words.len();

    // span of u . r . v with |u| + deg(r) + |v| <= big_d
    let mut ideal_rows: Vec<Vec<Rat>> = Vec::new();
    for (ri, rel) in rel_vectors.iter().enumerate() {
        let m_r = u.presentation.relations[ri].degree();
        if m_r > big_d {
            continue;
        }
        let wrap_budget = big_d - m_r;
        let mut wrappers = enumerate_words(k, 1, wrap_budget);
        wrappers.push(Vec::new());
        for left in &wrappers {
            for right in &wrappers {
                if left.len() + right.len() > wrap_budget {
                    continue;
                }
                budget.step(1)?;
                let mut row = vec![Rat::zero(); ncols];
                for (w, c) in rel {
                    let mut full = left.clone();
                    full.extend_from_slice(w);
                    full.extend_from_slice(right);
                    row[col_of[&full]] += c.clone();
                }
                ideal_rows.push(row);
            }
        }
    }
    let low_dim = {
        let mut m = QMatrix::from_rows(ideal_rows.clone());
        let pivots = m.rref();
        // rows with pivot at a word of degree <= d form a basis of
        // (ideal span) intersected with the degree-<= d slice
        pivots
            .iter()
            .filter(|&&c| all_words[c].len() <= d)
            .count()
    };
    let words_low: Vec<Vec<usize>> = enumerate_words(k, 1, d);
    let free_dim = words_low.len() - low_dim;

    // rho-image side
    let mut flat: Vec<BTreeMap<(usize, SuperMonomial), Rat>> = Vec::new();
    for w in &words_low {
        budget.step(1)?;
        let mut val = u.rho[w[0]].clone();
        for &g in &w[1..] {
            val = val.mul(&u.rho[g]).map_err(IdentityError::from)?;
        }
        let val = u.normal_form_tensor(&val, budget)?;
        let mut entry = BTreeMap::new();
        for (i, p) in val.coords.iter().enumerate() {
            for (m, c) in p.terms() {
                entry.insert((i, m.clone()), c.clone());
            }
        }
        flat.push(entry);
    }
    let mut dict: BTreeMap<(usize, SuperMonomial), usize> = BTreeMap::new();
    for e in &flat {
        for key in e.keys() {
            let next = dict.len();
            dict.entry(key.clone()).or_insert(next);
        }
    }
    let img_cols = dict.len().max(1);
    let img_rows: Vec<Vec<Rat>> = flat
        .iter()
        .map(|e| {
            let mut row = vec![Rat::zero(); img_cols];
            for (key, c) in e {
                row[dict[key]] = c.clone();
            }
            row
        })
        .collect();
    let img_matrix = QMatrix::from_rows(img_rows);
    let image_dim = img_matrix.rank();
    debug_assert!(image_dim <= free_dim, "image cannot exceed the free quotient");

    let injective = image_dim == free_dim;
    let mut kernel_witness = None;
    if !injective {
        // nullspace vectors of the image matrix are combinations with
        // rho-image zero; pick one outside the truncated relation span
        let mut rel_span = SpanBuilder::new(words_low.len());
        let low_cols: BTreeMap<&Vec<usize>, usize> = words_low
            .iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        {
            let mut m = QMatrix::from_rows(ideal_rows);
            let pivots = m.rref();
            for (r, &c) in pivots.iter().enumerate() {
                if all_words[c].len() <= d {
                    let mut v = vec![Rat::zero(); words_low.len()];
                    for (col, w) in all_words.iter().enumerate() {
                        if w.len() <= d && !m.at(r, col).is_zero() {
                            v[low_cols[w]] = m.at(r, col).clone();
                        }
                    }
                    rel_span.insert(v);
                }
            }
        }
        // transpose: solve lambda^T . img_matrix = 0
        let mut cols = Vec::with_capacity(img_cols);
        for j in 0..img_cols {
            cols.push(
                (0..words_low.len())
                    .map(|i| img_matrix.at(i, j).clone())
                    .collect::<Vec<_>>(),
            );
        }
        let t = QMatrix::from_rows(cols);
        for lambda in t.nullspace() {
            if !rel_span.contains(&lambda) {
                let names: Vec<&str> = u
                    .presentation
                    .generators
                    .iter()
                    .map(|(n, _)| n.as_str())
                    .collect();
                let mut parts = Vec::new();
                for (i, c) in lambda.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let word: Vec<&str> = words_low[i].iter().map(|&g| names[g]).collect();
                    parts.push(format!("({})*{}", fmt_rat(c), word.join("*")));
                }
                kernel_witness = Some(parts.join(" + "));
                break;
            }
        }
    }

    Ok(EmbeddingReport {
        degree: d as u32,
        word_count: words_low.len(),
        free_dim,
        image_dim,
        injective,
        kernel_witness,
    })
}

// ---------------------------------------------------------------------------
// universal property
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct UnivPropReport {
    /// zeta on the layout variables that occur in generator images,
    /// rendered as (variable, image in F) pairs.
    pub zeta: Vec<(String, String)>,
    pub relations_hold: bool,
    pub zeta_kills_ideal: bool,
    pub factorization_holds: bool,
    /// Uniqueness of zeta holds by construction: the entries of the
    /// generator images generate S_A(B).
    pub unique: bool,
}

impl UnivPropReport {
    pub fn pass(&self) -> bool {
        self.relations_hold && self.zeta_kills_ideal && self.factorization_holds
    }
}

/// Evaluates a supertrace polynomial in A (x) F under a generator
/// assignment, with Str = Trd (x) id_F.
fn evaluate_in_af(
    f: &SupertracePolynomial,
    assignment: &BTreeMap<Letter, AlgebraElement>,
    ta: &TracedAlgebra,
    f_alg: &GradedAlgebra,
    af: &GradedAlgebra,
) -> Result<AlgebraElement, UniversalError> {
    let na = ta.algebra.dim();
    let nf = f_alg.dim();
    let unit_af = af.unit()?.clone();
    let strd_af = |x: &AlgebraElement| -> AlgebraElement {
        // F-component of Trd (x) id applied to x
        let mut out = vec![Rat::zero(); nf];
        for i in 0..na {
            let t = &ta.trace.trd[i];
            if t.is_zero() {
                continue;
            }
            for j in 0..nf {
                out[j] += t.clone() * &x[i * nf + j];
            }
        }
        out
    };
    let embed_f = |x: &AlgebraElement| -> Result<AlgebraElement, UniversalError> {
        // 1_A (x) x
        let ua = ta.algebra.unit()?;
        let mut out = vec![Rat::zero(); na * nf];
        for i in 0..na {
            if ua[i].is_zero() {
                continue;
            }
            for j in 0..nf {
                out[i * nf + j] = ua[i].clone() * &x[j];
            }
        }
        Ok(out)
    };
    fn eval_word_af(
        w: &Word,
        assignment: &BTreeMap<Letter, AlgebraElement>,
        af: &GradedAlgebra,
    ) -> Result<AlgebraElement, UniversalError> {
        match w {
            Word::Letter(l) => assignment
                .get(l)
                .cloned()
                .ok_or(UniversalError::Identity(IdentityError::MissingVariable(*l))),
            Word::Prod(a, b) => {
                let va = eval_word_af(a, assignment, af)?;
                let vb = eval_word_af(b, assignment, af)?;
                Ok(af.mul_elem(&va, &vb)?)
            }
        }
    }
    let mut total = vec![Rat::zero(); na * nf];
    for (shape, c) in f.terms() {
        let mut scalar = f_alg.unit()?.clone();
        for w in &shape.factors {
            let v = eval_word_af(w, assignment, af)?;
            scalar = f_alg.mul_elem(&scalar, &strd_af(&v))?;
        }
        let head_val = match &shape.head {
            Some(h) => eval_word_af(h, assignment, af)?,
            None => unit_af.clone(),
        };
        let term = af.mul_elem(&embed_f(&scalar)?, &head_val)?;
        for (i, t) in term.into_iter().enumerate() {
            total[i] += t * c;
        }
    }
    Ok(total)
}

fn parity_of_af_element(
    x: &AlgebraElement,
    af: &GradedAlgebra,
) -> Result<Option<Parity>, UniversalError> {
    let mut found = None;
    for (i, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = af.degree(i);
        match found {
            None => found = Some(d),
            Some(f) if f == d => {}
            Some(_) => {
                return Err(UniversalError::KappaParity(
                    "image is not parity-homogeneous".into(),
                ))
            }
        }
    }
    Ok(found)
}

/// Verifies the universal property against a concrete graded map
/// kappa: B -> A (x) F (one coordinate vector per generator, over the
/// tensor-product basis b_i (x) f_j). Reads zeta off the coordinates,
/// checks that zeta kills J and that zeta_A . rho = kappa.
pub fn universal_property_check(
    u: &UniversalSupermap,
    f_alg: &GradedAlgebra,
    kappa: &[AlgebraElement],
) -> Result<UnivPropReport, UniversalError> {
    let ta = &u.traced;
    let na = ta.algebra.dim();
    let nf = f_alg.dim();
    let af = tensor_product(&ta.algebra, f_alg, "A(x)F");
    if kappa.len() != u.num_generators() {
        return Err(UniversalError::Malformed(format!(
            "kappa gives {} images for {} generators",
            kappa.len(),
            u.num_generators()
        )));
    }
    for (g, x) in kappa.iter().enumerate() {
        if x.len() != na * nf {
            return Err(UniversalError::Malformed(format!(
                "kappa image #{g} has length {}, expected {}",
                x.len(),
                na * nf
            )));
        }
        let p = parity_of_af_element(x, &af)?;
        let want = u.presentation.generators[g].1;
        if let Some(p) = p {
            if p != want {
                return Err(UniversalError::KappaParity(format!(
                    "generator `{}` is {:?} but its image is {:?}",
                    u.presentation.generators[g].0, want, p
                )));
            }
        }
    }

    // kappa must kill the relations
    let assignment: BTreeMap<Letter, AlgebraElement> = (0..u.num_generators())
        .map(|i| (u.presentation.letter(i), kappa[i].clone()))
        .collect();
    for (ri, rel) in u.presentation.relations.iter().enumerate() {
        let v = evaluate_in_af(rel, &assignment, ta, f_alg, &af)?;
        if v.iter().any(|c| !c.is_zero()) {
            return Err(UniversalError::KappaViolatesRelation(ri));
        }
    }

    // read zeta off the coordinates of kappa
    let n_layout = na * u.num_generators();
    let mut zeta_even: Vec<AlgebraElement> = vec![vec![Rat::zero(); nf]; n_layout];
    let mut zeta_odd: Vec<AlgebraElement> = vec![vec![Rat::zero(); nf]; n_layout];
    for (g, x) in kappa.iter().enumerate() {
        let gp = u.presentation.generators[g].1;
        for row in 0..na {
            let slice: AlgebraElement = (0..nf).map(|j| x[row * nf + j].clone()).collect();
            let id = g * na + row;
            if ta.algebra.degree(row) == gp {
                zeta_even[id] = slice;
            } else {
                zeta_odd[id] = slice;
            }
        }
    }

    // evaluate a Delta_S polynomial at zeta inside F
    let eval_poly = |p: &SuperPolynomial| -> Result<AlgebraElement, UniversalError> {
        let mut total = vec![Rat::zero(); nf];
        for (m, c) in p.terms() {
            let mut acc = f_alg.unit()?.clone();
            for (v, e) in m.even_part() {
                for _ in 0..*e {
                    acc = f_alg.mul_elem(&acc, &zeta_even[v.0 as usize])?;
                }
            }
            for v in m.odd_part() {
                acc = f_alg.mul_elem(&acc, &zeta_odd[v.0 as usize])?;
            }
            for (j, a) in acc.into_iter().enumerate() {
                total[j] += a * c;
            }
        }
        Ok(total)
    };

    let mut zeta_kills_ideal = true;
    for g in &u.j_gens {
        if eval_poly(g)?.iter().any(|c| !c.is_zero()) {
            zeta_kills_ideal = false;
            break;
        }
    }

    // zeta_A(rho(g)) = kappa(g)
    let mut factorization_holds = true;
    for (g, x) in kappa.iter().enumerate() {
        let mut image = vec![Rat::zero(); na * nf];
        for row in 0..na {
            let f_val = eval_poly(&u.rho[g].coords[row])?;
            for j in 0..nf {
                image[row * nf + j] = f_val[j].clone();
            }
        }
        if image != *x {
            factorization_holds = false;
            break;
        }
    }

    let names = u.names();
    let mut zeta_rendered = Vec::new();
    let (used_even, used_odd) = u.used_vars();
    for v in used_even {
        let val = &zeta_even[v.0 as usize];
        zeta_rendered.push((
            crate::superpoly::VarNames::even_name(&names, v),
            render_f_element(val, f_alg),
        ));
    }
    for v in used_odd {
        let val = &zeta_odd[v.0 as usize];
        zeta_rendered.push((
            crate::superpoly::VarNames::odd_name(&names, v),
            render_f_element(val, f_alg),
        ));
    }

    Ok(UnivPropReport {
        zeta: zeta_rendered,
        relations_hold: true,
        zeta_kills_ideal,
        factorization_holds,
        unique: true,
    })
}

fn render_f_element(x: &AlgebraElement, f_alg: &GradedAlgebra) -> String {
    let parts: Vec<String> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            if f_alg.labels()[j] == "1" {
                fmt_rat(c)
            } else if c.is_one() {
                f_alg.labels()[j].clone()
            } else {
                format!("{}*{}", fmt_rat(c), f_alg.labels()[j])
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// power inclusion
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PowerInclusionReport {
    pub k: u32,
    pub c: u32,
    pub degree: u32,
    pub intersection_dim: usize,
    pub holds: bool,
}

/// Verifies (I)^{kc} cap rho(B) subset of I^k up to degree d, where I is the
/// ideal of B generated by the given word polynomials and (I) = A (x) J_I.
pub fn power_inclusion_check(
    u: &UniversalSupermap,
    ideal_gens: &[SupertracePolynomial],
    k: u32,
    c: u32,
    d: u32,
    budget: &mut Budget,
) -> Result<PowerInclusionReport, UniversalError> {
    if !u.traced.algebra.is_associative() {
        return Err(UniversalError::Unsupported(
            "power inclusion enumeration flattens words and needs an associative A".into(),
        ));
    }
    for g in ideal_gens {
        relation_word_vector(g)?; // word polynomials only
    }
    let d = d as usize;
    let kc = (k * c) as usize;

    // J_I generators: normal-formed coordinates of the rho images
    let mut p_gens: Vec<SuperPolynomial> = Vec::new();
    for g in ideal_gens {
        let v = u.rho_eval(g)?;
        let v = u.normal_form_tensor(&v, budget)?;
        for p in v.coords {
            if !p.is_zero() {
                p_gens.push(p);
            }
        }
    }
    if p_gens.is_empty() {
        return Ok(PowerInclusionReport {
            k,
            c,
            degree: d as u32,
            intersection_dim: 0,
            holds: true,
        });
    }

    // spanning set of J_I^{kc} up to degree d (with slack c for reductions)
    let slack = c as usize;
    let mut pow_elems: Vec<SuperPolynomial> = Vec::new();
    let mut products: Vec<SuperPolynomial> = vec![SuperPolynomial::one()];
    for _ in 0..kc {
        let mut next = Vec::new();
        for prod in &products {
            for q in &p_gens {
                budget.step(1)?;
                let r = u.engine.reduce(&prod.mul(q), budget)?;
                if !r.is_zero() && min_term_degree(&r) <= (d + slack) as u64 {
                    next.push(r);
                }
            }
        }
        products = dedup_polys(next);
    }
    let layout_monomials = monomials_up_to(
        &u.layout_even_vars(),
        &u.layout_odd_vars(),
        d + slack,
    );
    for prod in &products {
        let base = min_term_degree(prod);
        for m in &layout_monomials {
            if m.total_degree() + base > (d + slack) as u64 {
                continue;
            }
            budget.step(1)?;
            let r = u
                .engine
                .reduce(&prod.mul_monomial(m, &Rat::one()), budget)?;
            if !r.is_zero() {
                pow_elems.push(r);
            }
        }
    }
    let pow_elems = dedup_polys(pow_elems);

    // rho(B) spanning set up to degree d
    let words = enumerate_words(u.num_generators(), 1, d);
    let mut rho_elems: Vec<TensorElement> = Vec::new();
    for w in &words {
        budget.step(1)?;
        let mut val = u.rho[w[0]].clone();
        for &g in &w[1..] {
            val = val.mul(&u.rho[g]).map_err(IdentityError::from)?;
        }
        rho_elems.push(u.normal_form_tensor(&val, budget)?);
    }

    // flatten both sides over a common dictionary of (coordinate, monomial)
    let mut dict: BTreeMap<(usize, SuperMonomial), usize> = BTreeMap::new();
    let na = u.dim_a();
    let add_tensor = |dict: &mut BTreeMap<(usize, SuperMonomial), usize>,
                          t: &TensorElement| {
        for (i, p) in t.coords.iter().enumerate() {
            for (m, _) in p.terms() {
                let nxt = dict.len();
                dict.entry((i, m.clone())).or_insert(nxt);
            }
        }
    };
    let add_poly_rows =
        |dict: &mut BTreeMap<(usize, SuperMonomial), usize>, p: &SuperPolynomial| {
            // a Delta_S scalar q corresponds to A (x) q with every coordinate
            for i in 0..na {
                for (m, _) in p.terms() {
                    let nxt = dict.len();
                    dict.entry((i, m.clone())).or_insert(nxt);
                }
            }
        };
    for t in &rho_elems {
        add_tensor(&mut dict, t);
    }
    for p in &pow_elems {
        add_poly_rows(&mut dict, p);
    }
    let dim = dict.len().max(1);
    let flatten_tensor = |t: &TensorElement| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (i, p) in t.coords.iter().enumerate() {
            for (m, cc) in p.terms() {
                v[dict[&(i, m.clone())]] = cc.clone();
            }
        }
        v
    };

    // membership of x in A (x) span(pow_elems): every coordinate of x lies
    // in the K-span of the pow_elems
    let mut pow_span = SpanBuilder::new(dim);
    for p in &pow_elems {
        for i in 0..na {
            let mut v = vec![Rat::zero(); dim];
            for (m, cc) in p.terms() {
                v[dict[&(i, m.clone())]] = cc.clone();
            }
            pow_span.insert(v);
        }
    }

    // intersection of span(rho_elems) with the pow span: nullspace of the
    // stacked column matrix [R | -P]
    let rho_vecs: Vec<Vec<Rat>> = rho_elems.iter().map(&flatten_tensor).collect();
    let mut rho_span = SpanBuilder::new(dim);
    let mut rho_basis: Vec<Vec<Rat>> = Vec::new();
    for v in rho_vecs {
        if rho_span.insert(v.clone()) {
            rho_basis.push(v);
        }
    }
    let pow_basis: Vec<Vec<Rat>> = pow_span.basis().to_vec();
    let p_len = rho_basis.len();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    cols.extend(rho_basis.iter().cloned());
    cols.extend(pow_basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let intersection: Vec<Vec<Rat>> = if cols.is_empty() {
        Vec::new()
    } else {
        let m = {
            // columns as rows, then transpose by solving on the row matrix
            let rows: Vec<Vec<Rat>> = (0..dim)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            QMatrix::from_rows(rows)
        };
        m.nullspace()
            .into_iter()
            .map(|lambda| {
                let mut v = vec![Rat::zero(); dim];
                for (i, b) in rho_basis.iter().enumerate() {
                    if !lambda[i].is_zero() {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += lambda[i].clone() * y;
                        }
                    }
                }
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    };
    let _ = p_len;

    // I^k span inside rho(B): words with k ideal-generator insertions
    let mut t_span = SpanBuilder::new(dim);
    let gen_count = u.num_generators();
    // interleavings: w0 p w1 p ... p wk with total degree <= d
    let mut stack: Vec<(usize, TensorElement, usize)> = Vec::new(); // (inserted, value, degree)
    let idents: Vec<TensorElement> = {
        let mut v = Vec::new();
        for g in ideal_gens {
            v.push(u.rho_eval(g)?);
        }
        v
    };
    let gen_deg: Vec<usize> = ideal_gens.iter().map(|g| g.degree()).collect();
    let unit = TensorElement::unit(&u.traced.algebra)?;
    stack.push((0, unit, 0));
    while let Some((inserted, val, deg)) = stack.pop() {
        budget.step(1)?;
        if inserted == k as usize {
            let nf = u.normal_form_tensor(&val, budget)?;
            t_span.insert(flatten_tensor(&nf));
            // optionally extend by trailing words
            for w in enumerate_words(gen_count, 1, d.saturating_sub(deg)) {
                budget.step(1)?;
                let mut v2 = val.clone();
                for &g in &w {
                    v2 = v2.mul(&u.rho[g]).map_err(IdentityError::from)?;
                }
                let nf = u.normal_form_tensor(&v2, budget)?;
                t_span.insert(flatten_tensor(&nf));
            }
            continue;
        }
        // choose a (possibly empty) word then an ideal generator
        let mut prefixes = enumerate_words(gen_count, 1, d.saturating_sub(deg));
        prefixes.push(Vec::new());
        for w in prefixes {
            for (qi, q) in idents.iter().enumerate() {
                let ndeg = deg + w.len() + gen_deg[qi];
                if ndeg > d {
                    continue;
                }
                let mut v2 = val.clone();
                for &g in &w {
                    v2 = v2.mul(&u.rho[g]).map_err(IdentityError::from)?;
                }
                v2 = v2.mul(q).map_err(IdentityError::from)?;
                stack.push((inserted + 1, v2, ndeg));
            }
        }
    }

    let mut holds = true;
    for v in &intersection {
        if !t_span.contains(v) {
            holds = false;
            break;
        }
    }

    Ok(PowerInclusionReport {
        k,
        c,
        degree: d as u32,
        intersection_dim: intersection.len(),
        holds,
    })
}

fn min_term_degree(p: &SuperPolynomial) -> u64 {
    p.terms().map(|(m, _)| m.total_degree()).min().unwrap_or(0)
}

fn dedup_polys(v: Vec<SuperPolynomial>) -> Vec<SuperPolynomial> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for p in v {
        let key = format!("{p}");
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

fn monomials_up_to(even: &[EvenVar], odd: &[OddVar], d: usize) -> Vec<SuperMonomial> {
    // all monomials of total degree <= d over the given variables
    let mut out: Vec<SuperMonomial> = vec![SuperMonomial::one()];
    let mut frontier: Vec<SuperMonomial> = vec![SuperMonomial::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for v in even {
                let mut e = m.even_part().clone();
                *e.entry(*v).or_insert(0) += 1;
                next.push(SuperMonomial::from_parts(e, m.odd_part().to_vec()));
            }
            for v in odd {
                if m.contains_odd(*v) {
                    continue;
                }
                // only extend by larger odd ids to avoid duplicates
                if m.odd_part().last().map_or(false, |l| l >= v) {
                    continue;
                }
                let mut o = m.odd_part().to_vec();
                o.push(*v);
                next.push(SuperMonomial::from_parts(m.even_part().clone(), o));
            }
        }
        // dedup
        let set: std::collections::BTreeSet<SuperMonomial> = next.into_iter().collect();
        frontier = set.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    let set: std::collections::BTreeSet<SuperMonomial> = out.into_iter().collect();
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// dimensions
// ---------------------------------------------------------------------------

/// Krull dimension of the even part of S_A(B): the dimension of
/// K[S]/pi(J) from the initial-ideal staircase. `None` when pi(J) = (1).
pub fn krull_dim_even(
    u: &UniversalSupermap,
    budget: &mut Budget,
) -> Result<Option<usize>, UniversalError> {
    let proj = u.engine.even_projection_gens();
    let engine = NormalFormEngine::complete(&proj, &[], budget)?;
    let leads: Vec<SuperMonomial> = engine
        .basis()
        .iter()
        .map(|g| g.leading_term().unwrap().0.clone())
        .collect();
    Ok(staircase_dimension(&leads, &u.layout_even_vars()))
}

#[derive(Clone, Debug)]
pub struct GkBoundReport {
    pub num_generators: usize,
    pub dim_a: usize,
    pub krull_dim_even: Option<usize>,
    /// k . dim(A), the free upper bound
    pub bound: usize,
    pub bound_holds: bool,
}

/// GK(B) <= GK(S_A(B)^(0)) = Krull dim of the even part <= k dim(A).
pub fn gk_bound_report(
    u: &UniversalSupermap,
    budget: &mut Budget,
) -> Result<GkBoundReport, UniversalError> {
    let kd = krull_dim_even(u, budget)?;
    let bound = u.num_generators() * u.dim_a();
    Ok(GkBoundReport {
        num_generators: u.num_generators(),
        dim_a: u.dim_a(),
        krull_dim_even: kd,
        bound,
        bound_holds: kd.map_or(true, |d| d <= bound),
    })
}

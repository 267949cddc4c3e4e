//! Supertrace polynomials and exact identity checking.
//!
//! Elements of the algebra of generalized supertrace polynomials are sums of
//! terms `c . Str(w_1)...Str(w_t) . w_0`, where the `w_i` are bracketed words
//! in even variables `x_k` and odd variables `y_k` (and, after the theta
//! transform, even markers `yb_k`). Words carry explicit bracketing so the
//! same engine serves nonassociative varieties.
//!
//! Canonical form: the Str factors are sorted by a fixed total order on
//! words; swapping two odd-parity factors flips the sign, and a repeated
//! odd factor kills the term. Evaluation and the theta transform both read a
//! term left to right in canonical order (factors first, then the head), so
//! the sign conventions stay aligned.
//!
//! Identity checking substitutes the generic superelements X_j / Y_j and
//! tests for the exact zero of the resulting tensor element; in
//! characteristic 0 this decides supertrace identities of A (x) E on
//! multilinear inputs.

use crate::algebra::TracedAlgebra;
use crate::scalar::Rat;
use crate::superpoly::{Parity, SuperPolynomial};
use crate::tensor::{generic_even, generic_odd, strd, supertrace_axioms, TensorElement};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Variable species: `X` even, `Y` odd, `Ybar` the even markers produced by
/// the theta transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    X,
    Y,
    Ybar,
}

impl VarKind {
    pub fn parity(self) -> Parity {
        match self {
            VarKind::X | VarKind::Ybar => Parity::Even,
            VarKind::Y => Parity::Odd,
        }
    }
}

/// A variable letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: VarKind,
    pub index: u32,
}

impl Letter {
    pub fn x(i: u32) -> Letter {
        Letter {
            kind: VarKind::X,
            index: i,
        }
    }
    pub fn y(i: u32) -> Letter {
        Letter {
            kind: VarKind::Y,
            index: i,
        }
    }
    pub fn ybar(i: u32) -> Letter {
        Letter {
            kind: VarKind::Ybar,
            index: i,
        }
    }
    pub fn parity(self) -> Parity {
        self.kind.parity()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x{}", self.index),
            VarKind::Y => write!(f, "y{}", self.index),
            VarKind::Ybar => write!(f, "yb{}", self.index),
        }
    }
}

/// Bracketed word: a binary tree with variable leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    Letter(Letter),
    Prod(Box<Word>, Box<Word>),
}

impl Word {
    pub fn prod(a: Word, b: Word) -> Word {
        Word::Prod(Box::new(a), Box::new(b))
    }

    /// Left-normed word l1 * l2 * ... * lk.
    pub fn left_normed(letters: &[Letter]) -> Word {
        assert!(!letters.is_empty(), "words are nonempty");
        let mut w = Word::Letter(letters[0]);
        for l in &letters[1..] {
            w = Word::prod(w, Word::Letter(*l));
        }
        w
    }

    pub fn parity(&self) -> Parity {
        match self {
            Word::Letter(l) => l.parity(),
            Word::Prod(a, b) => a.parity().add(b.parity()),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Word::Letter(_) => 1,
            Word::Prod(a, b) => a.degree() + b.degree(),
        }
    }

    /// Leaves in reading order.
    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            Word::Letter(l) => out.push(*l),
            Word::Prod(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> Word {
        match self {
            Word::Letter(l) => Word::Letter(f(*l)),
            Word::Prod(a, b) => Word::prod(a.map_letters(f), b.map_letters(f)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Letter(l) => write!(f, "{l}"),
            Word::Prod(a, b) => {
                write!(f, "{a}*")?;
                match **b {
                    Word::Letter(_) => write!(f, "{b}"),
                    Word::Prod(..) => write!(f, "({b})"),
                }
            }
        }
    }
}

/// Shape of a supertrace term: sorted Str factors and an optional head word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermShape {
    pub factors: Vec<Word>,
    pub head: Option<Word>,
}

impl TermShape {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|w| w.degree()).sum::<usize>()
            + self.head.as_ref().map_or(0, |w| w.degree())
    }

    /// All letters in reading order: factors first, then the head.
    fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for w in &self.factors {
            w.collect_leaves(&mut out);
        }
        if let Some(h) = &self.head {
            h.collect_leaves(&mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityError {
    NotMultilinear,
    ParityViolation(String),
    TraceAxiomsFailed(String),
    StrOfScalar,
    UnsupportedDegree(usize),
    MissingVariable(Letter),
    OddVariableInTraceContext,
    Tensor(crate::tensor::TensorError),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::NotMultilinear => write!(f, "polynomial is not multilinear"),
            IdentityError::ParityViolation(s) => write!(f, "parity violation: {s}"),
            IdentityError::TraceAxiomsFailed(s) => {
                write!(f, "generic trace fails the supertrace axioms: {s}")
            }
            IdentityError::StrOfScalar => write!(f, "Str of a term without a word"),
            IdentityError::UnsupportedDegree(n) => {
                write!(f, "fundamental trace identity unsupported for n = {n}")
            }
            IdentityError::MissingVariable(l) => write!(f, "no substitution for variable {l}"),
            IdentityError::OddVariableInTraceContext => {
                write!(f, "odd variable in an ordinary trace polynomial")
            }
            IdentityError::Tensor(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IdentityError {}

impl From<crate::tensor::TensorError> for IdentityError {
    fn from(e: crate::tensor::TensorError) -> Self {
        IdentityError::Tensor(e)
    }
}

/// Formal sum of supertrace terms in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SupertracePolynomial {
    terms: BTreeMap<TermShape, Rat>,
}

impl SupertracePolynomial {
    pub fn zero() -> Self {
        SupertracePolynomial::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SupertracePolynomial::zero();
        p.add_raw_term(c, None, Vec::new());
        p
    }

    pub fn one() -> Self {
        SupertracePolynomial::constant(Rat::one())
    }

    pub fn from_word(w: Word) -> Self {
        let mut p = SupertracePolynomial::zero();
        p.add_raw_term(Rat::one(), Some(w), Vec::new());
        p
    }

    pub fn from_letter(l: Letter) -> Self {
        SupertracePolynomial::from_word(Word::Letter(l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermShape, &Rat)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|t| t.degree()).max().unwrap_or(0)
    }

    /// Adds `c * Str(factors...) * head`, canonicalizing the factor order.
    /// Sorting swaps two odd factors at the price of a sign; a repeated odd
    /// factor kills the term.
    pub fn add_raw_term(&mut self, mut c: Rat, head: Option<Word>, mut factors: Vec<Word>) {
        if c.is_zero() {
            return;
        }
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j] < factors[j - 1] {
                if factors[j].parity() == Parity::Odd && factors[j - 1].parity() == Parity::Odd {
                    c = -c;
                }
                factors.swap(j, j - 1);
                j -= 1;
            }
        }
        for pair in factors.windows(2) {
            if pair[0] == pair[1] && pair[0].parity() == Parity::Odd {
                return; // Str(f)^2 = 0 for odd f
            }
        }
        let shape = TermShape { factors, head };
        match self.terms.entry(shape) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SupertracePolynomial) -> SupertracePolynomial {
        let mut r = self.clone();
        for (shape, c) in &other.terms {
            r.add_raw_term(c.clone(), shape.head.clone(), shape.factors.clone());
        }
        r
    }

    pub fn sub(&self, other: &SupertracePolynomial) -> SupertracePolynomial {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> SupertracePolynomial {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> SupertracePolynomial {
        if c.is_zero() {
            return SupertracePolynomial::zero();
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    /// Product in the generalized supertrace algebra. Str factors are
    /// supercentral: moving an odd factor of the right operand across an odd
    /// head of the left operand flips the sign.
    pub fn mul(&self, other: &SupertracePolynomial) -> SupertracePolynomial {
        let mut r = SupertracePolynomial::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let mut c = c1.clone() * c2;
                if let Some(h1) = &s1.head {
                    if h1.parity() == Parity::Odd {
                        for f in &s2.factors {
                            if f.parity() == Parity::Odd {
                                c = -c;
                            }
                        }
                    }
                }
                let head = match (&s1.head, &s2.head) {
                    (None, None) => None,
                    (Some(h), None) => Some(h.clone()),
                    (None, Some(h)) => Some(h.clone()),
                    (Some(a), Some(b)) => Some(Word::prod(a.clone(), b.clone())),
                };
                let mut factors = s1.factors.clone();
                factors.extend(s2.factors.iter().cloned());
                r.add_raw_term(c, head, factors);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> SupertracePolynomial {
        let mut r = SupertracePolynomial::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Wraps every term in Str: the head moves into the factor list
    /// (`Str(Str(f) g) = Str(f) Str(g)`). Errors on purely scalar terms.
    pub fn str_of(&self) -> Result<SupertracePolynomial, IdentityError> {
        let mut r = SupertracePolynomial::zero();
        for (shape, c) in &self.terms {
            let Some(h) = &shape.head else {
                return Err(IdentityError::StrOfScalar);
            };
            let mut factors = shape.factors.clone();
            factors.push(h.clone());
            r.add_raw_term(c.clone(), None, factors);
        }
        Ok(r)
    }

    /// The set of letters appearing anywhere.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for shape in self.terms.keys() {
            out.extend(shape.letters());
        }
        out
    }

    /// Every letter occurring in the polynomial occurs exactly once in every
    /// term.
    pub fn is_multilinear(&self) -> bool {
        let all = self.letters();
        for shape in self.terms.keys() {
            let ls = shape.letters();
            if ls.len() != all.len() {
                return false;
            }
            let set: BTreeSet<Letter> = ls.iter().copied().collect();
            if set.len() != ls.len() || set != all {
                return false;
            }
        }
        true
    }

    /// Renders with the given trace symbol, e.g. `Str` or `Tr`.
    pub fn render(&self, trace_symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (shape, c)) in self.terms.iter().enumerate() {
            let cs = crate::scalar::fmt_rat(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            let scalar_term = shape.head.is_none() && shape.factors.is_empty();
            if mag != "1" || scalar_term {
                parts.push(mag);
            }
            for w in &shape.factors {
                parts.push(format!("{trace_symbol}({w})"));
            }
            if let Some(h) = &shape.head {
                parts.push(h.to_string());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Display for SupertracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("Str"))
    }
}

/// An ordinary trace polynomial: a supertrace polynomial whose letters are
/// all even (`x`/`yb`).
pub type TracePolynomial = SupertracePolynomial;

pub fn is_trace_polynomial(f: &SupertracePolynomial) -> bool {
    f.letters().iter().all(|l| l.parity() == Parity::Even)
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

fn eval_word(
    w: &Word,
    assignment: &BTreeMap<Letter, TensorElement>,
) -> Result<TensorElement, IdentityError> {
    match w {
        Word::Letter(l) => assignment
            .get(l)
            .cloned()
            .ok_or(IdentityError::MissingVariable(*l)),
        Word::Prod(a, b) => {
            let va = eval_word(a, assignment)?;
            let vb = eval_word(b, assignment)?;
            Ok(va.mul(&vb)?)
        }
    }
}

/// Evaluates `f` under an admissible (parity-respecting) substitution into
/// A (x) Delta_S, with Str realized by the supertrace Strd. Str factors are
/// multiplied into the head from the left in canonical order.
pub fn evaluate(
    f: &SupertracePolynomial,
    assignment: &BTreeMap<Letter, TensorElement>,
    ta: &TracedAlgebra,
) -> Result<TensorElement, IdentityError> {
    for (l, v) in assignment {
        if !v.is_zero() {
            let d = v.degree()?;
            if d != l.parity() {
                return Err(IdentityError::ParityViolation(format!(
                    "variable {l} requires a {:?} element, got {:?}",
                    l.parity(),
                    d
                )));
            }
        }
    }
    let unit = TensorElement::unit(&ta.algebra)
        .map_err(|e| IdentityError::ParityViolation(e.to_string()))?;
    let mut total = TensorElement::zero(&ta.algebra);
    for (shape, c) in f.terms() {
        let mut scalar = SuperPolynomial::one();
        for w in &shape.factors {
            let v = eval_word(w, assignment)?;
            scalar = scalar.mul(&strd(ta, &v)?);
        }
        let head_val = match &shape.head {
            Some(h) => eval_word(h, assignment)?,
            None => unit.clone(),
        };
        let term_val = head_val.scale_poly(&scalar).scale(c);
        total = total.add(&term_val)?;
    }
    Ok(total)
}

/// Deterministic generic substitution: letters in canonical order get slots
/// 1, 2, ...; even letters receive X_j, odd letters Y_j.
pub fn generic_assignment(
    f: &SupertracePolynomial,
    ta: &TracedAlgebra,
) -> BTreeMap<Letter, TensorElement> {
    let mut assignment = BTreeMap::new();
    for (i, l) in f.letters().into_iter().enumerate() {
        let slot = (i + 1) as u32;
        let v = match l.parity() {
            Parity::Even => generic_even(&ta.algebra, slot),
            Parity::Odd => generic_odd(&ta.algebra, slot),
        };
        assignment.insert(l, v);
    }
    assignment
}

fn require_axioms(ta: &TracedAlgebra) -> Result<(), IdentityError> {
    let rep = supertrace_axioms(ta);
    if !rep.pass() {
        return Err(IdentityError::TraceAxiomsFailed(format!(
            "commutator failures {:?}, associator failures {:?}",
            rep.commutator_failures, rep.associator_failures
        )));
    }
    Ok(())
}

/// Exact decision of membership in Id_Str(A (x) E) for multilinear `f`:
/// substitute generics and test for the zero tensor element.
pub fn is_supertrace_identity(
    f: &SupertracePolynomial,
    ta: &TracedAlgebra,
) -> Result<bool, IdentityError> {
    if !f.is_multilinear() {
        return Err(IdentityError::NotMultilinear);
    }
    require_axioms(ta)?;
    let assignment = generic_assignment(f, ta);
    Ok(evaluate(f, &assignment, ta)?.is_zero())
}

/// Trace-identity test over an ungraded trace algebra: all letters must be
/// even and the algebra trivially graded.
pub fn is_trace_identity(g: &TracePolynomial, ta: &TracedAlgebra) -> Result<bool, IdentityError> {
    if !is_trace_polynomial(g) {
        return Err(IdentityError::OddVariableInTraceContext);
    }
    if ta.algebra.degrees().iter().any(|d| *d == Parity::Odd) {
        return Err(IdentityError::ParityViolation(
            "trace identities are tested over a trivially graded algebra".into(),
        ));
    }
    if !g.is_multilinear() {
        return Err(IdentityError::NotMultilinear);
    }
    require_axioms(ta)?;
    let assignment = generic_assignment(g, ta);
    Ok(evaluate(g, &assignment, ta)?.is_zero())
}

// ---------------------------------------------------------------------------
// theta transform
// ---------------------------------------------------------------------------

/// The theta transform of a multilinear supertrace polynomial: substitutes
/// `y_i = e_i yb_i` with supercentral odd units `e_i`, moves all `e_i` to
/// the front in increasing index order collecting signs, and strips the
/// product `e_1...e_m`. Terms are read in canonical order, factors first.
pub fn theta(f: &SupertracePolynomial) -> Result<TracePolynomial, IdentityError> {
    if !f.is_multilinear() {
        return Err(IdentityError::NotMultilinear);
    }
    let mut out = SupertracePolynomial::zero();
    for (shape, c) in f.terms() {
        let odd_indices: Vec<u32> = shape
            .letters()
            .into_iter()
            .filter(|l| l.kind == VarKind::Y)
            .map(|l| l.index)
            .collect();
        // sign of the permutation sorting the e_i to the front in index order
        let mut sign = 1i32;
        for i in 0..odd_indices.len() {
            for j in i + 1..odd_indices.len() {
                if odd_indices[i] > odd_indices[j] {
                    sign = -sign;
                }
            }
        }
        let rename = |l: Letter| -> Letter {
            if l.kind == VarKind::Y {
                Letter::ybar(l.index)
            } else {
                l
            }
        };
        let factors: Vec<Word> = shape.factors.iter().map(|w| w.map_letters(&rename)).collect();
        let head = shape.head.as_ref().map(|h| h.map_letters(&rename));
        let mut coeff = c.clone();
        if sign < 0 {
            coeff = -coeff;
        }
        out.add_raw_term(coeff, head, factors);
    }
    Ok(out)
}

/// Inverse of theta on multilinear trace polynomials in `x`/`yb` letters:
/// each trace monomial lifts to the unique supertrace monomial (with `yb_i`
/// replaced by `y_i`) whose theta image is the given one, with the sign
/// adjusted accordingly.
pub fn theta_inverse(g: &TracePolynomial) -> Result<SupertracePolynomial, IdentityError> {
    if !is_trace_polynomial(g) {
        return Err(IdentityError::OddVariableInTraceContext);
    }
    if !g.is_multilinear() {
        return Err(IdentityError::NotMultilinear);
    }
    let mut out = SupertracePolynomial::zero();
    for (shape, c) in g.terms() {
        let rename = |l: Letter| -> Letter {
            if l.kind == VarKind::Ybar {
                Letter::y(l.index)
            } else {
                l
            }
        };
        let factors: Vec<Word> = shape.factors.iter().map(|w| w.map_letters(&rename)).collect();
        let head = shape.head.as_ref().map(|h| h.map_letters(&rename));
        let mut candidate = SupertracePolynomial::zero();
        candidate.add_raw_term(Rat::one(), head, factors);
        let image = theta(&candidate)?;
        debug_assert_eq!(image.num_terms(), 1);
        let (img_shape, img_coeff) = image.terms().next().unwrap();
        debug_assert_eq!(img_shape, shape);
        let (cand_shape, cand_coeff) = candidate.terms().next().unwrap();
        out.add_raw_term(
            c.clone() * cand_coeff / img_coeff,
            cand_shape.head.clone(),
            cand_shape.factors.clone(),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// stock polynomials
// ---------------------------------------------------------------------------

/// The multilinearized degree-2 Cayley-Hamilton polynomial
/// `x1 x2 + x2 x1 - Str(x1) x2 - Str(x2) x1 - Str(x1 x2) + Str(x1) Str(x2)`.
pub fn cayley_hamilton_m2() -> SupertracePolynomial {
    let x1 = Letter::x(1);
    let x2 = Letter::x(2);
    let w12 = Word::left_normed(&[x1, x2]);
    let w21 = Word::left_normed(&[x2, x1]);
    let mut f = SupertracePolynomial::zero();
    f.add_raw_term(Rat::one(), Some(w12.clone()), Vec::new());
    f.add_raw_term(Rat::one(), Some(w21), Vec::new());
    f.add_raw_term(-Rat::one(), Some(Word::Letter(x2)), vec![Word::Letter(x1)]);
    f.add_raw_term(-Rat::one(), Some(Word::Letter(x1)), vec![Word::Letter(x2)]);
    f.add_raw_term(-Rat::one(), None, vec![w12]);
    f.add_raw_term(Rat::one(), None, vec![Word::Letter(x1), Word::Letter(x2)]);
    f
}

/// The multilinear fundamental trace identity of M_n for n in {1, 2, 3}:
/// sum over S_{n+1} of sgn(sigma) times the product of Tr over sigma's
/// cycles, each cycle written starting from its least element.
pub fn fundamental_trace_identity(n: usize) -> Result<TracePolynomial, IdentityError> {
    if !(1..=3).contains(&n) {
        return Err(IdentityError::UnsupportedDegree(n));
    }
    let k = n + 1;
    let mut f = SupertracePolynomial::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut seen = vec![false; k];
        let mut factors = Vec::new();
        let mut transpositions = 0usize;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = perm[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = perm[cur];
            }
            transpositions += cycle.len() - 1;
            let letters: Vec<Letter> = cycle.iter().map(|&i| Letter::x(i as u32 + 1)).collect();
            factors.push(Word::left_normed(&letters));
        }
        let sign = if transpositions % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        f.add_raw_term(sign, None, factors);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(f)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// multilinearization helper
// ---------------------------------------------------------------------------

/// Splits into multihomogeneous components and fully polarizes each letter
/// of degree >= 2. In characteristic 0 the input is an identity iff every
/// returned multilinear polynomial is.
pub fn multilinearize(f: &SupertracePolynomial) -> Vec<SupertracePolynomial> {
    let mut components: BTreeMap<BTreeMap<Letter, usize>, SupertracePolynomial> = BTreeMap::new();
    for (shape, c) in f.terms() {
        let mut deg: BTreeMap<Letter, usize> = BTreeMap::new();
        for l in shape.letters() {
            *deg.entry(l).or_insert(0) += 1;
        }
        components
            .entry(deg)
            .or_default()
            .add_raw_term(c.clone(), shape.head.clone(), shape.factors.clone());
    }
    let mut out = Vec::new();
    for (deg, mut comp) in components {
        let mut next_fresh: BTreeMap<VarKind, u32> = BTreeMap::new();
        for l in comp.letters() {
            let e = next_fresh.entry(l.kind).or_insert(0);
            *e = (*e).max(l.index + 1);
        }
        for (l, m) in deg {
            if m < 2 {
                continue;
            }
            let base = *next_fresh.get(&l.kind).unwrap_or(&0);
            let fresh: Vec<Letter> = (0..m)
                .map(|i| Letter {
                    kind: l.kind,
                    index: base + i as u32,
                })
                .collect();
            next_fresh.insert(l.kind, base + m as u32);
            comp = polarize(&comp, l, &fresh);
        }
        if !comp.is_zero() {
            out.push(comp);
        }
    }
    out
}

/// Replaces the occurrences of `l` by the fresh letters in all possible
/// orders (full polarization of a degree-m component).
fn polarize(f: &SupertracePolynomial, l: Letter, fresh: &[Letter]) -> SupertracePolynomial {
    let m = fresh.len();
    let mut out = SupertracePolynomial::zero();
    for (shape, c) in f.terms() {
        debug_assert_eq!(shape.letters().iter().filter(|&&x| x == l).count(), m);
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let mut counter = 0usize;
            let assign = |x: Letter, counter: &mut usize| -> Letter {
                if x == l {
                    let r = fresh[perm[*counter]];
                    *counter += 1;
                    r
                } else {
                    x
                }
            };
            let mut factors = Vec::with_capacity(shape.factors.len());
            for w in &shape.factors {
                factors.push(replace_letters(w, &assign, &mut counter));
            }
            let head = shape
                .head
                .as_ref()
                .map(|h| replace_letters(h, &assign, &mut counter));
            out.add_raw_term(c.clone(), head, factors);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

fn replace_letters(
    w: &Word,
    assign: &impl Fn(Letter, &mut usize) -> Letter,
    counter: &mut usize,
) -> Word {
    match w {
        Word::Letter(l) => Word::Letter(assign(*l, counter)),
        Word::Prod(a, b) => {
            let l = replace_letters(a, assign, counter);
            let r = replace_letters(b, assign, counter);
            Word::prod(l, r)
        }
    }
}

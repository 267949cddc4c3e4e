//! Exact sparse elements of the free supercommutative algebra
//! Delta_S = K[S] (x) Lambda(T).
//!
//! Representation: a polynomial is a `BTreeMap` from `SuperMonomial` to a
//! nonzero rational coefficient. A monomial is an exponent map on even
//! variables together with a strictly increasing list of odd variables; the
//! sign of any reordering of odd letters is absorbed into the coefficient at
//! construction time and never stored on the monomial.
//!
//! The `Ord` on monomials is position-over-term: odd parts first (by length,
//! then lexicographically), then degree-reverse-lexicographic on the even
//! exponents. The maximal term of a polynomial under this order is the
//! leading term used by the normal-form machinery downstream.

use crate::scalar::{fmt_rat, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identifier of a commuting (even) variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenVar(pub u32);

/// Identifier of an anticommuting (odd) variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddVar(pub u32);

/// Z2 parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

/// A reference to a variable of either parity, used by word normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarRef {
    Even(EvenVar),
    Odd(OddVar),
}

/// Monomial in Delta_S: even exponents and a strictly increasing odd part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SuperMonomial {
    even: BTreeMap<EvenVar, u32>,
    odd: Vec<OddVar>,
}

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial::default()
    }

    pub fn even_var(v: EvenVar, exp: u32) -> Self {
        let mut m = SuperMonomial::one();
        if exp > 0 {
            m.even.insert(v, exp);
        }
        m
    }

    pub fn odd_var(v: OddVar) -> Self {
        SuperMonomial {
            even: BTreeMap::new(),
            odd: vec![v],
        }
    }

    /// Builds a monomial from parts; odd ids must be strictly increasing.
    pub fn from_parts(even: BTreeMap<EvenVar, u32>, odd: Vec<OddVar>) -> Self {
        debug_assert!(odd.windows(2).all(|w| w[0] < w[1]), "odd part not canonical");
        let even = even.into_iter().filter(|(_, e)| *e > 0).collect();
        SuperMonomial { even, odd }
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit((self.odd.len() % 2) as u8)
    }

    pub fn total_degree(&self) -> u64 {
        self.even.values().map(|&e| e as u64).sum::<u64>() + self.odd.len() as u64
    }

    pub fn even_degree(&self) -> u64 {
        self.even.values().map(|&e| e as u64).sum()
    }

    pub fn even_part(&self) -> &BTreeMap<EvenVar, u32> {
        &self.even
    }

    pub fn odd_part(&self) -> &[OddVar] {
        &self.odd
    }

    pub fn exponent(&self, v: EvenVar) -> u32 {
        self.even.get(&v).copied().unwrap_or(0)
    }

    pub fn contains_odd(&self, v: OddVar) -> bool {
        self.odd.binary_search(&v).is_ok()
    }

    /// Product of monomials; `None` when an odd variable repeats (theta^2 = 0).
    /// The sign is (-1)^(number of odd-odd transpositions needed to merge).
    pub fn mul(&self, other: &SuperMonomial) -> Option<(SuperMonomial, i32)> {
        let mut even = self.even.clone();
        for (v, e) in &other.even {
            *even.entry(*v).or_insert(0) += e;
        }
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut sign = 1i32;
        let mut i = 0;
        for &b in &other.odd {
            while i < self.odd.len() && self.odd[i] < b {
                odd.push(self.odd[i]);
                i += 1;
            }
            if i < self.odd.len() && self.odd[i] == b {
                return None;
            }
            // b jumps left over the remaining odd letters of `self`
            if (self.odd.len() - i) % 2 == 1 {
                sign = -sign;
            }
            odd.push(b);
        }
        odd.extend_from_slice(&self.odd[i..]);
        Some((SuperMonomial { even, odd }, sign))
    }

    /// Whether the even part of `self` divides the even part of `other`.
    pub fn even_divides(&self, other: &SuperMonomial) -> bool {
        self.even.iter().all(|(v, e)| other.exponent(*v) >= *e)
    }

    /// Even-part quotient `other / self` (odd parts must be equal).
    pub fn even_quotient(&self, other: &SuperMonomial) -> Option<SuperMonomial> {
        if self.odd != other.odd || !self.even_divides(other) {
            return None;
        }
        let mut even = BTreeMap::new();
        for (v, e) in &other.even {
            let q = e - self.exponent(*v);
            if q > 0 {
                even.insert(*v, q);
            }
        }
        Some(SuperMonomial {
            even,
            odd: Vec::new(),
        })
    }

    /// Least common multiple of the even parts (positions ignored).
    pub fn even_lcm(&self, other: &SuperMonomial) -> SuperMonomial {
        let mut even = self.even.clone();
        for (v, e) in &other.even {
            let entry = even.entry(*v).or_insert(0);
            *entry = (*entry).max(*e);
        }
        SuperMonomial {
            even,
            odd: Vec::new(),
        }
    }
}

fn cmp_degrevlex(a: &BTreeMap<EvenVar, u32>, b: &BTreeMap<EvenVar, u32>) -> Ordering {
    let da: u64 = a.values().map(|&e| e as u64).sum();
    let db: u64 = b.values().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    // Equal degree: scan from the largest variable id downward; the monomial
    // with the smaller exponent at the first difference is the larger one.
    let mut ia = a.iter().rev().peekable();
    let mut ib = b.iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va > vb {
                    return Ordering::Less;
                }
                if vb > va {
                    return Ordering::Greater;
                }
                if ea > eb {
                    return Ordering::Less;
                }
                if eb > ea {
                    return Ordering::Greater;
                }
                ia.next();
                ib.next();
            }
        }
    }
}

impl Ord for SuperMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.odd
            .len()
            .cmp(&other.odd.len())
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| cmp_degrevlex(&self.even, &other.even))
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts a word of variables into canonical form.
///
/// Returns `None` when an odd variable repeats; otherwise the canonical
/// monomial together with the sign (-1)^(odd-odd inversions).
pub fn normalize_word(vars: &[VarRef]) -> Option<(SuperMonomial, i32)> {
    let mut m = SuperMonomial::one();
    let mut sign = 1i32;
    for v in vars {
        match v {
            VarRef::Even(x) => *m.even.entry(*x).or_insert(0) += 1,
            VarRef::Odd(t) => {
                // insert t into the increasing odd list, counting crossings
                let pos = m.odd.partition_point(|&u| u < *t);
                if pos < m.odd.len() && m.odd[pos] == *t {
                    return None;
                }
                if (m.odd.len() - pos) % 2 == 1 {
                    sign = -sign;
                }
                m.odd.insert(pos, *t);
            }
        }
    }
    Some((m, sign))
}

/// Errors from parity-sensitive polynomial operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Parity queried on a parity-mixed element.
    MixedParity,
    /// A substitution image has the wrong parity for its variable.
    ParityViolation(String),
    /// An odd variable survived where only even data is allowed.
    OddUnsupported(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::MixedParity => write!(f, "element is not parity-homogeneous"),
            PolyError::ParityViolation(s) => write!(f, "parity-violating substitution: {s}"),
            PolyError::OddUnsupported(s) => write!(f, "odd variables not supported here: {s}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Sparse polynomial in Delta_S with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, Rat>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        SuperPolynomial::default()
    }

    pub fn one() -> Self {
        SuperPolynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SuperPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(SuperMonomial::one(), c);
        }
        p
    }

    pub fn even_var(v: EvenVar) -> Self {
        SuperPolynomial::from_monomial(SuperMonomial::even_var(v, 1), Rat::one())
    }

    pub fn odd_var(v: OddVar) -> Self {
        SuperPolynomial::from_monomial(SuperMonomial::odd_var(v), Rat::one())
    }

    pub fn from_monomial(m: SuperMonomial, c: Rat) -> Self {
        let mut p = SuperPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading (maximal) term under the position-over-term order.
    pub fn leading_term(&self) -> Option<(&SuperMonomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the monomial 1 (the "body" at the origin of odd space).
    pub fn constant_term(&self) -> Rat {
        self.coefficient(&SuperMonomial::one())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn negate(&self) -> SuperPolynomial {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> SuperPolynomial {
        if c.is_zero() {
            return SuperPolynomial::zero();
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    /// Distributive product with supercommutative sign normalization.
    pub fn mul(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut r = SuperPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    let mut c = ca.clone() * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    r.add_term(m, c);
                }
            }
        }
        r
    }

    /// Multiplies by `monomial * c` on the left.
    pub fn mul_monomial(&self, monomial: &SuperMonomial, c: &Rat) -> SuperPolynomial {
        let mut r = SuperPolynomial::zero();
        if c.is_zero() {
            return r;
        }
        for (m, coeff) in &self.terms {
            if let Some((prod, sign)) = monomial.mul(m) {
                let mut v = coeff.clone() * c;
                if sign < 0 {
                    v = -v;
                }
                r.add_term(prod, v);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> SuperPolynomial {
        let mut r = SuperPolynomial::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `true` when every term has the given parity (the zero polynomial is
    /// homogeneous of every parity).
    pub fn is_homogeneous(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// Parity of a homogeneous element; zero reports as even.
    pub fn parity(&self) -> Result<Parity, PolyError> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Ok(Parity::Even);
        };
        let p = first.parity();
        if it.all(|m| m.parity() == p) {
            Ok(p)
        } else {
            Err(PolyError::MixedParity)
        }
    }

    pub fn is_even_only(&self) -> bool {
        self.terms.keys().all(|m| m.odd_part().is_empty())
    }

    /// Formal derivative with respect to an even variable.
    pub fn partial_even(&self, v: EvenVar) -> SuperPolynomial {
        let mut r = SuperPolynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut even = m.even_part().clone();
            if e == 1 {
                even.remove(&v);
            } else {
                even.insert(v, e - 1);
            }
            r.add_term(
                SuperMonomial::from_parts(even, m.odd_part().to_vec()),
                c.clone() * Rat::from_integer(e.into()),
            );
        }
        r
    }

    /// Left derivative with respect to an odd variable: move theta to the
    /// front of the odd word collecting a sign per transposition, then
    /// delete it.
    pub fn partial_odd(&self, v: OddVar) -> SuperPolynomial {
        let mut r = SuperPolynomial::zero();
        for (m, c) in &self.terms {
            let Ok(pos) = m.odd_part().binary_search(&v) else {
                continue;
            };
            let mut odd = m.odd_part().to_vec();
            odd.remove(pos);
            let mut coeff = c.clone();
            if pos % 2 == 1 {
                coeff = -coeff;
            }
            r.add_term(SuperMonomial::from_parts(m.even_part().clone(), odd), coeff);
        }
        r
    }

    /// Algebra-homomorphism extension of a parity-preserving substitution.
    /// Variables absent from the maps are left untouched.
    pub fn substitute(
        &self,
        even_map: &BTreeMap<EvenVar, SuperPolynomial>,
        odd_map: &BTreeMap<OddVar, SuperPolynomial>,
    ) -> Result<SuperPolynomial, PolyError> {
        for (v, img) in even_map {
            if !img.is_homogeneous(Parity::Even) {
                return Err(PolyError::ParityViolation(format!(
                    "even variable #{} mapped to a non-even image",
                    v.0
                )));
            }
        }
        for (v, img) in odd_map {
            if !img.is_homogeneous(Parity::Odd) {
                return Err(PolyError::ParityViolation(format!(
                    "odd variable #{} mapped to a non-odd image",
                    v.0
                )));
            }
        }
        let mut r = SuperPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = SuperPolynomial::constant(c.clone());
            for (v, e) in m.even_part() {
                let img = match even_map.get(v) {
                    Some(p) => p.pow(*e),
                    None => SuperPolynomial::from_monomial(
                        SuperMonomial::even_var(*v, *e),
                        Rat::one(),
                    ),
                };
                acc = acc.mul(&img);
            }
            for v in m.odd_part() {
                let img = match odd_map.get(v) {
                    Some(p) => p.clone(),
                    None => SuperPolynomial::odd_var(*v),
                };
                acc = acc.mul(&img);
            }
            r = r.add(&acc);
        }
        Ok(r)
    }

    /// Evaluates an even-only polynomial at a rational point. Variables
    /// missing from `point` evaluate to 0.
    pub fn eval_even(&self, point: &BTreeMap<EvenVar, Rat>) -> Result<Rat, PolyError> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            if !m.odd_part().is_empty() {
                return Err(PolyError::OddUnsupported(
                    "numeric evaluation of an odd monomial".into(),
                ));
            }
            let mut v = c.clone();
            for (var, e) in m.even_part() {
                let x = point.get(var).cloned().unwrap_or_else(Rat::zero);
                for _ in 0..*e {
                    v *= &x;
                }
                if v.is_zero() {
                    break;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact division of even-only polynomials; `None` when not divisible.
    pub fn exact_div(&self, divisor: &SuperPolynomial) -> Option<SuperPolynomial> {
        assert!(
            self.is_even_only() && divisor.is_even_only(),
            "exact_div is for even-only polynomials"
        );
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = SuperPolynomial::zero();
        while let Some((lm, lc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let q = dm.even_quotient(&lm)?;
            let qc = lc / &dc;
            quot.add_term(q.clone(), qc.clone());
            rem = rem.sub(&divisor.mul_monomial(&q, &qc));
        }
        Some(quot)
    }

    /// The even and odd variables appearing in this polynomial.
    pub fn vars_used(&self) -> (BTreeSet<EvenVar>, BTreeSet<OddVar>) {
        let mut ev = BTreeSet::new();
        let mut ov = BTreeSet::new();
        for m in self.terms.keys() {
            ev.extend(m.even_part().keys().copied());
            ov.extend(m.odd_part().iter().copied());
        }
        (ev, ov)
    }

    /// Renders the polynomial with a custom variable namer, leading term first.
    pub fn render(&self, names: &dyn VarNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = fmt_rat(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (v, e) in m.even_part() {
                if *e == 1 {
                    factors.push(names.even_name(*v));
                } else {
                    factors.push(format!("{}^{}", names.even_name(*v), e));
                }
            }
            for v in m.odd_part() {
                factors.push(names.odd_name(*v));
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&DefaultNames))
    }
}

/// Naming scheme for rendering variables.
pub trait VarNames {
    fn even_name(&self, v: EvenVar) -> String;
    fn odd_name(&self, v: OddVar) -> String;
}

/// CLI-facing default: `x<k>` for even, `th<k>` for odd.
pub struct DefaultNames;

impl VarNames for DefaultNames {
    fn even_name(&self, v: EvenVar) -> String {
        format!("x{}", v.0)
    }
    fn odd_name(&self, v: OddVar) -> String {
        format!("th{}", v.0)
    }
}

/// Names drawn from explicit lists, indexed by variable id.
pub struct ListNames {
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

impl VarNames for ListNames {
    fn even_name(&self, v: EvenVar) -> String {
        self.even
            .get(v.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("x{}", v.0))
    }
    fn odd_name(&self, v: OddVar) -> String {
        self.odd
            .get(v.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("th{}", v.0))
    }
}

impl std::ops::Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, other: Self) -> SuperPolynomial {
        SuperPolynomial::add(self, other)
    }
}

impl std::ops::Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, other: Self) -> SuperPolynomial {
        SuperPolynomial::sub(self, other)
    }
}

impl std::ops::Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, other: Self) -> SuperPolynomial {
        SuperPolynomial::mul(self, other)
    }
}

impl std::ops::Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(k: u32) -> SuperPolynomial {
        SuperPolynomial::even_var(EvenVar(k))
    }

    fn th(k: u32) -> SuperPolynomial {
        SuperPolynomial::odd_var(OddVar(k))
    }

    #[test]
    fn normalize_word_sorts_and_signs() {
        // (th3, th1, th2): permutation has 2 inversions, sign +1
        let (m, s) = normalize_word(&[
            VarRef::Odd(OddVar(3)),
            VarRef::Odd(OddVar(1)),
            VarRef::Odd(OddVar(2)),
        ])
        .unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.odd_part(), &[OddVar(1), OddVar(2), OddVar(3)]);

        // repeated odd variable kills the word
        assert!(normalize_word(&[VarRef::Odd(OddVar(1)), VarRef::Odd(OddVar(1))]).is_none());

        // even variables pass through odd ones freely
        let (m, s) = normalize_word(&[
            VarRef::Even(EvenVar(1)),
            VarRef::Odd(OddVar(2)),
            VarRef::Even(EvenVar(3)),
        ])
        .unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.exponent(EvenVar(1)), 1);
        assert_eq!(m.exponent(EvenVar(3)), 1);
        assert_eq!(m.odd_part(), &[OddVar(2)]);
    }

    #[test]
    fn odd_variables_anticommute() {
        let a = th(1).mul(&th(2));
        let b = th(2).mul(&th(1));
        assert_eq!(b, a.negate());
        assert!(th(1).mul(&th(1)).is_zero());
    }

    #[test]
    fn unit_law_and_cross_terms() {
        let p = x(1).add(&th(1));
        assert_eq!(SuperPolynomial::one().mul(&p), p);
        // (x1 + th1)(x1 - th1) = x1^2 since x1 th1 = th1 x1 and th1^2 = 0
        let q = x(1).sub(&th(1));
        assert_eq!(p.mul(&q), x(1).mul(&x(1)));
    }

    #[test]
    fn partials() {
        // d/dx1 (x1^2 - x2 x3) = 2 x1
        let f = x(1).pow(2).sub(&x(2).mul(&x(3)));
        assert_eq!(f.partial_even(EvenVar(1)), x(1).scale(&rat(2)));
        assert_eq!(f.partial_even(EvenVar(2)), x(3).negate());
        // d/dth2 (th1 th2) = -th1
        let g = th(1).mul(&th(2));
        assert_eq!(g.partial_odd(OddVar(2)), th(1).negate());
        assert_eq!(g.partial_odd(OddVar(1)), th(2));
        // th2 absent
        assert!(x(1).mul(&th(1)).partial_odd(OddVar(2)).is_zero());
    }

    #[test]
    fn substitution() {
        let g = th(1).mul(&th(2));
        // th1 -> th2 collapses to zero
        let mut omap = BTreeMap::new();
        omap.insert(OddVar(1), th(2));
        assert!(g.substitute(&BTreeMap::new(), &omap).unwrap().is_zero());

        // x1 -> 2, th1 -> th3 in x1 th1
        let f = x(1).mul(&th(1));
        let mut emap = BTreeMap::new();
        emap.insert(EvenVar(1), SuperPolynomial::constant(rat(2)));
        let mut omap = BTreeMap::new();
        omap.insert(OddVar(1), th(3));
        assert_eq!(
            f.substitute(&emap, &omap).unwrap(),
            th(3).scale(&rat(2))
        );

        // swap th1 <-> th2 in th1 th2 gives -th1 th2
        let mut omap = BTreeMap::new();
        omap.insert(OddVar(1), th(2));
        omap.insert(OddVar(2), th(1));
        assert_eq!(g.substitute(&BTreeMap::new(), &omap).unwrap(), g.negate());

        // parity violation is rejected
        let mut bad = BTreeMap::new();
        bad.insert(EvenVar(1), th(1));
        assert!(f.substitute(&bad, &BTreeMap::new()).is_err());
    }

    #[test]
    fn signed_leibniz_for_odd_partial() {
        let p = th(1); // odd
        let q = x(1).mul(&th(2)).add(&th(3));
        let v = OddVar(2);
        let lhs = p.mul(&q).partial_odd(v);
        // d(pq) = d(p) q + (-1)^{|p|} p d(q)
        let rhs = p
            .partial_odd(v)
            .mul(&q)
            .add(&p.mul(&q.partial_odd(v)).negate());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let f = x(1).pow(2).sub(&x(2).pow(2));
        let d = x(1).add(&x(2));
        let q = f.exact_div(&d).unwrap();
        assert_eq!(q, x(1).sub(&x(2)));
        assert!(x(1).exact_div(&x(2)).is_none());
    }

    #[test]
    fn degrevlex_order() {
        // x1^2 > x2 x3 in degrevlex with x1 > x2 > x3
        let a = SuperMonomial::even_var(EvenVar(1), 2);
        let (b, _) = normalize_word(&[VarRef::Even(EvenVar(2)), VarRef::Even(EvenVar(3))]).unwrap();
        assert!(a > b);
        // higher total degree wins
        let c = SuperMonomial::even_var(EvenVar(3), 3);
        assert!(c > a);
    }

    #[test]
    fn render_is_stable() {
        let p = x(1).pow(2).sub(&x(2).mul(&x(3))).add(&th(1).mul(&th(2)));
        assert_eq!(p.render(&DefaultNames), "th1*th2 + x1^2 - x2*x3");
    }
}

//! Textual expression grammars.
//!
//! Two recursive-descent parsers over one tokenizer, both
//! whitespace-insensitive with `+ - * ^` and parentheses:
//!
//! - polynomial grammar for Delta_S: variables `x<k>` (even) and `th<k>`
//!   (odd) or names drawn from explicit lists, with integer/rational
//!   literals `p/q`;
//! - supertrace grammar: variables `x<k>`, `y<k>`, `yb<k>` (or presentation
//!   generator names), `Str(...)` / `Tr(...)`, parenthesized subexpressions
//!   doubling as word bracketing.

use crate::identities::{Letter, SupertracePolynomial, VarKind};
use crate::scalar::Rat;
use crate::superpoly::{EvenVar, OddVar, Parity, SuperPolynomial, VarRef};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::from_str(&input[start..i]).unwrap();
                out.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
            }
            other => return err(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// Resolves an identifier of the default polynomial grammar: `x<k>` even,
/// `th<k>` odd.
pub fn default_poly_resolver(name: &str) -> Option<VarRef> {
    if let Some(d) = name.strip_prefix("th") {
        if let Ok(k) = d.parse::<u32>() {
            return Some(VarRef::Odd(OddVar(k)));
        }
    }
    if let Some(d) = name.strip_prefix('x') {
        if let Ok(k) = d.parse::<u32>() {
            return Some(VarRef::Even(EvenVar(k)));
        }
    }
    None
}

/// Resolver over explicit name lists; ids are list positions.
pub fn list_resolver<'a>(
    even: &'a [String],
    odd: &'a [String],
) -> impl Fn(&str) -> Option<VarRef> + 'a {
    move |name: &str| {
        if let Some(i) = even.iter().position(|n| n == name) {
            return Some(VarRef::Even(EvenVar(i as u32)));
        }
        odd.iter()
            .position(|n| n == name)
            .map(|i| VarRef::Odd(OddVar(i as u32)))
    }
}

/// Default supertrace-grammar resolver: `x<k>`, `y<k>`, `yb<k>`.
pub fn default_letter_resolver(name: &str) -> Option<Letter> {
    if let Some(d) = name.strip_prefix("yb") {
        if let Ok(k) = d.parse::<u32>() {
            return Some(Letter::ybar(k));
        }
    }
    if let Some(d) = name.strip_prefix('y') {
        if let Ok(k) = d.parse::<u32>() {
            return Some(Letter::y(k));
        }
    }
    if let Some(d) = name.strip_prefix('x') {
        if let Ok(k) = d.parse::<u32>() {
            return Some(Letter::x(k));
        }
    }
    None
}

/// Resolver mapping presentation generator names to letters: generator `i`
/// of the given parity becomes `x_i` or `y_i`.
pub fn generator_resolver<'a>(
    generators: &'a [(String, Parity)],
) -> impl Fn(&str) -> Option<Letter> + 'a {
    move |name: &str| {
        generators
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| match generators[i].1 {
                Parity::Even => Letter::x(i as u32),
                Parity::Odd => Letter::y(i as u32),
            })
    }
}

// ---------------------------------------------------------------------------
// polynomial parser
// ---------------------------------------------------------------------------

struct PolyParser<'a, R: Fn(&str) -> Option<VarRef>> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    resolve: &'a R,
}

impl<'a, R: Fn(&str) -> Option<VarRef>> PolyParser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPolynomial, ParseError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let p = self.here();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError {
                            position: p,
                            message: "exponent out of range".into(),
                        })?;
                    return Ok(base.pow(e));
                }
                _ => return err(p, "expected a natural-number exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SuperPolynomial, ParseError> {
        let p = self.here();
        match self.next() {
            Some(Tok::Int(n)) => {
                // optional /q immediately after an integer literal
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    let q = self.here();
                    match self.next() {
                        Some(Tok::Int(d)) if !num_traits::Zero::is_zero(&d) => {
                            Ok(SuperPolynomial::constant(Rat::new(n, d)))
                        }
                        _ => err(q, "expected a nonzero integer denominator"),
                    }
                } else {
                    Ok(SuperPolynomial::constant(Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match (self.resolve)(&name) {
                Some(VarRef::Even(v)) => Ok(SuperPolynomial::even_var(v)),
                Some(VarRef::Odd(v)) => Ok(SuperPolynomial::odd_var(v)),
                None => err(p, format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let q = self.here();
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(q, "expected `)`"),
                }
            }
            Some(t) => err(p, format!("unexpected token {t:?}")),
            None => err(p, "unexpected end of input"),
        }
    }
}

/// Parses a Delta_S polynomial with the given variable resolver.
pub fn parse_poly_with(
    input: &str,
    resolve: impl Fn(&str) -> Option<VarRef>,
) -> Result<SuperPolynomial, ParseError> {
    let toks = tokenize(input)?;
    let mut p = PolyParser {
        toks,
        pos: 0,
        end: input.len(),
        resolve: &resolve,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in the default `x<k>` / `th<k>` naming.
pub fn parse_poly(input: &str) -> Result<SuperPolynomial, ParseError> {
    parse_poly_with(input, default_poly_resolver)
}

// ---------------------------------------------------------------------------
// supertrace parser
// ---------------------------------------------------------------------------

struct StrParser<'a, R: Fn(&str) -> Option<Letter>> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    resolve: &'a R,
}

impl<'a, R: Fn(&str) -> Option<Letter>> StrParser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SupertracePolynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SupertracePolynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SupertracePolynomial, ParseError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let p = self.here();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        position: p,
                        message: "exponent out of range".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => return err(p, "expected a natural-number exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SupertracePolynomial, ParseError> {
        let p = self.here();
        match self.next() {
            Some(Tok::Int(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    let q = self.here();
                    match self.next() {
                        Some(Tok::Int(d)) if !num_traits::Zero::is_zero(&d) => {
                            Ok(SupertracePolynomial::constant(Rat::new(n, d)))
                        }
                        _ => err(q, "expected a nonzero integer denominator"),
                    }
                } else {
                    Ok(SupertracePolynomial::constant(Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) if name == "Str" || name == "Tr" => {
                let q = self.here();
                match self.next() {
                    Some(Tok::LParen) => {}
                    _ => return err(q, format!("expected `(` after `{name}`")),
                }
                let inner = self.expr()?;
                let q = self.here();
                match self.next() {
                    Some(Tok::RParen) => {}
                    _ => return err(q, "expected `)`"),
                }
                inner.str_of().map_err(|e| ParseError {
                    position: p,
                    message: e.to_string(),
                })
            }
            Some(Tok::Ident(name)) => match (self.resolve)(&name) {
                Some(l) => Ok(SupertracePolynomial::from_letter(l)),
                None => err(p, format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let q = self.here();
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(q, "expected `)`"),
                }
            }
            Some(t) => err(p, format!("unexpected token {t:?}")),
            None => err(p, "unexpected end of input"),
        }
    }
}

/// Parses a supertrace polynomial with the given letter resolver.
pub fn parse_supertrace_with(
    input: &str,
    resolve: impl Fn(&str) -> Option<Letter>,
) -> Result<SupertracePolynomial, ParseError> {
    let toks = tokenize(input)?;
    let mut p = StrParser {
        toks,
        pos: 0,
        end: input.len(),
        resolve: &resolve,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input");
    }
    Ok(v)
}

/// Parses with the default `x<k>` / `y<k>` / `yb<k>` naming.
pub fn parse_supertrace(input: &str) -> Result<SupertracePolynomial, ParseError> {
    parse_supertrace_with(input, default_letter_resolver)
}

/// Letters actually usable in a trace context.
pub fn letter_kind_name(kind: VarKind) -> &'static str {
    match kind {
        VarKind::X => "x",
        VarKind::Y => "y",
        VarKind::Ybar => "yb",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{cayley_hamilton_m2, Word};
    use crate::scalar::{rat, ratio};

    #[test]
    fn poly_grammar() {
        let p = parse_poly("x1^2 - x2*x3").unwrap();
        let x = |k: u32| SuperPolynomial::even_var(EvenVar(k));
        assert_eq!(p, x(1).pow(2).sub(&x(2).mul(&x(3))));

        let q = parse_poly("3/2*th1*th2 + 1").unwrap();
        let th = |k: u32| SuperPolynomial::odd_var(OddVar(k));
        assert_eq!(
            q,
            th(1).mul(&th(2)).scale(&ratio(3, 2)).add(&SuperPolynomial::one())
        );

        // whitespace-insensitive; odd squares vanish exactly
        assert_eq!(parse_poly(" th1 * th1 ").unwrap(), SuperPolynomial::zero());
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("z9").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn named_variables() {
        let even = vec!["a".to_string(), "b".to_string()];
        let odd = vec!["u".to_string()];
        let p = parse_poly_with("a*b - 2*u", list_resolver(&even, &odd)).unwrap();
        let a = SuperPolynomial::even_var(EvenVar(0));
        let b = SuperPolynomial::even_var(EvenVar(1));
        let u = SuperPolynomial::odd_var(OddVar(0));
        assert_eq!(p, a.mul(&b).sub(&u.scale(&rat(2))));
    }

    #[test]
    fn supertrace_grammar() {
        let f = parse_supertrace("Str(x1*x2 - x2*x1)").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert!(f.is_multilinear());

        // the Cayley-Hamilton polynomial round-trips through its rendering
        let ch = cayley_hamilton_m2();
        let reparsed = parse_supertrace(&ch.render("Str")).unwrap();
        assert_eq!(reparsed, ch);

        // Tr is accepted as a synonym, bracketing is preserved
        let g = parse_supertrace("Tr(x1*(x2*x3))").unwrap();
        let (shape, _) = g.terms().next().unwrap();
        assert_eq!(shape.factors.len(), 1);
        assert!(matches!(&shape.factors[0], Word::Prod(a, _) if matches!(**a, Word::Letter(_))));

        // Str of a bare scalar is rejected
        assert!(parse_supertrace("Str(2)").is_err());
        // nested Str flattens: Str(Str(x1)*x2) = Str(x1)*Str(x2)
        let h = parse_supertrace("Str(Str(x1)*x2)").unwrap();
        assert_eq!(h, parse_supertrace("Str(x1)*Str(x2)").unwrap());
    }

    #[test]
    fn generator_names() {
        let gens = vec![
            ("p".to_string(), Parity::Even),
            ("q".to_string(), Parity::Odd),
        ];
        let f = parse_supertrace_with("p*q - q*p", generator_resolver(&gens)).unwrap();
        assert!(f.is_multilinear());
        let letters: Vec<Letter> = f.letters().into_iter().collect();
        assert_eq!(letters, vec![Letter::x(0), Letter::y(1)]);
    }
}

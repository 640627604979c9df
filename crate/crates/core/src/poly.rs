//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Exponents = Vec<u32>;

/// Polynomial over named variables. Terms are keyed by exponent vector; no zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: &[String]) -> Self {
        Polynomial { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, BigRational::one())
    }

    pub fn monomial(vars: &[String], exponents: Exponents, coefficient: BigRational) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !coefficient.is_zero() {
            p.terms.insert(exponents, coefficient);
        }
        p
    }

    /// Sum of `coefficient * monomial` pairs; repeated monomials are combined.
    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with exponent vectors in descending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> Vec<Exponents> {
        self.terms().map(|(e, _)| e.clone()).collect()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::IncompatibleVariables)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Self::from_terms(&self.vars, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Self::one(&self.vars);
        for _ in 0..n {
            out = out.try_mul(self).expect("same ring");
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; the images share the target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => Vec::new(),
        };
        for p in images {
            if p.vars != target {
                return Err(Error::IncompatibleVariables);
            }
        }
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.try_mul(&img.pow(k))?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Common weighted degree of all terms; `None` for the zero polynomial.
    pub fn weighted_degree(&self, weights: &[BigInt]) -> Result<Option<BigInt>> {
        if weights.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} variables",
                weights.len(),
                self.vars.len()
            )));
        }
        let mut degree: Option<BigInt> = None;
        for e in self.terms.keys() {
            let d: BigInt = e.iter().zip(weights).map(|(&a, w)| w * BigInt::from(a)).sum();
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return Err(Error::Inhomogeneous),
            }
        }
        Ok(degree)
    }

    /// Renders one exponent vector as `x^2*y`, or `1` for the constant monomial.
    pub fn monomial_string(vars: &[String], e: &[u32]) -> String {
        let parts: Vec<String> = vars
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `+ - * ^ ( )` expressions over the given variable names. Constants are
    /// integers or `a/b` rationals.
    pub fn parse(text: &str, vars: &[String]) -> Result<Polynomial> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0, vars };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse { line: 1, message: format!("unexpected `{}`", p.tokens[p.pos]) });
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = Self::monomial_string(&self.vars, e);
            if mono == "1" {
                write!(f, "{}", crate::exact::rational_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", crate::exact::rational_string(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

// Operators panic on mismatched variable sets; the `try_` forms report it instead.
impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over different variables")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over different variables")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over different variables")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(n) => write!(f, "{n}"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let err = |message: String| Error::Parse { line: 1, message };
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().map_err(|_| err(format!("bad number `{s}`")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()/".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: 1, message: message.into() }
    }

    fn peek_sym(&self, c: char) -> bool {
        self.tokens.get(self.pos) == Some(&Token::Sym(c))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.peek_sym('-') {
            self.pos += 1;
            -&self.term()?
        } else {
            if self.peek_sym('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = &acc * &self.power()?;
            } else if self.peek_sym('/') {
                self.pos += 1;
                match self.tokens.get(self.pos) {
                    Some(Token::Num(n)) if !n.is_zero() => {
                        let d = BigRational::from_integer(n.clone());
                        self.pos += 1;
                        acc = acc.scale(&d.recip());
                    }
                    _ => return Err(self.err("division only by a nonzero integer")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let k: u32 = n.try_into().map_err(|_| self.err(format!("exponent {n} too large")))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.err(format!("unknown variable `{name}`")))?;
                Ok(Polynomial::var(self.vars, i))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(t) => Err(self.err(format!("unexpected `{t}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Variable names from string literals.
pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, vars: &[String]) -> Polynomial {
        Polynomial::parse(text, vars).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn difference_of_squares() {
        let v = names(&["x", "y"]);
        let prod = &p("x + y", &v) * &p("x - y", &v);
        assert_eq!(prod, p("x^2 - y^2", &v));
        assert_eq!(prod.to_string(), "x^2 - y^2");
    }

    #[test]
    fn quotient_relation_vanishes_under_substitution() {
        let gens = names(&["A", "B", "C", "D"]);
        let xyz = names(&["x", "y", "z"]);
        let images = vec![p("x^2", &xyz), p("x*z", &xyz), p("z^2", &xyz), p("y", &xyz)];
        assert!(p("A*C - B^2", &gens).substitute(&images).unwrap().is_zero());
        let e7 = p("B^2 + C*(C^2 + D^3)", &gens).substitute(&images).unwrap();
        assert_eq!(e7, p("x^2*z^2 + z^6 + y^3*z^2", &xyz));
    }

    #[test]
    fn weighted_degrees() {
        let v = names(&["z1", "z2", "z3", "z4"]);
        let f = p("z1^2 + z2^3 + z3*z4", &v);
        assert_eq!(f.weighted_degree(&ints(&[21, 14, 12, 30])).unwrap(), Some(42.into()));
        assert_eq!(p("z1^2 + z2", &v).weighted_degree(&ints(&[21, 14, 12, 30])), Err(Error::Inhomogeneous));
        assert_eq!(Polynomial::zero(&v).weighted_degree(&ints(&[1, 1, 1, 1])).unwrap(), None);
    }

    #[test]
    fn display_forms() {
        let v = names(&["x", "y", "z"]);
        assert_eq!(p("2*x^2 - 3/2*y*z + 1 - x", &v).to_string(), "2*x^2 - x - 3/2*y*z + 1");
        assert_eq!(p("-x", &v).to_string(), "-x");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
        assert_eq!(p("(x + 1)^2 - x^2 - 2*x", &v).to_string(), "1");
    }

    #[test]
    fn parse_errors() {
        let v = names(&["x"]);
        assert!(Polynomial::parse("x + w", &v).is_err());
        assert!(Polynomial::parse("x^", &v).is_err());
        assert!(Polynomial::parse("(x", &v).is_err());
        assert!(Polynomial::parse("x / 0", &v).is_err());
        assert!(Polynomial::parse("x $ 2", &v).is_err());
    }

    #[test]
    fn ring_mismatch() {
        let a = Polynomial::var(&names(&["x"]), 0);
        let b = Polynomial::var(&names(&["y"]), 0);
        assert_eq!(a.try_add(&b), Err(Error::IncompatibleVariables));
        assert_eq!(a.try_mul(&b), Err(Error::IncompatibleVariables));
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), -5i64..=5), 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                &names(&["x", "y", "z"]),
                ts.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a + &b) - &b == a));
            prop_assert!(!(&a - &a).terms().any(|(_, c)| c.is_zero()));
        }

        #[test]
        fn display_parses_back(a in poly_strategy()) {
            prop_assert_eq!(Polynomial::parse(&a.to_string(), a.vars()).unwrap(), a);
        }
    }
}

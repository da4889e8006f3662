//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`ExponentVector`], whose ordering is
//! graded lexicographic. Zero coefficients are never stored, so two
//! polynomials are equal exactly when their term maps are equal.
//!
//! # Text format
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := ['+' | '-'] factor ('*' factor)*
//! factor := number | var ['^' digits]
//! number := digits ['.' digits] ['/' digits]
//! var    := 'x' digits            (x1 .. xn, 1-based)
//! ```
//!
//! Whitespace is ignored everywhere. Example: `21*x1^4 + 24*x1^3*x2 - 36*x1^3`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Exponents of one monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(num_vars: usize) -> Self {
        ExponentVector(vec![0; num_vars])
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(ExponentVector::zero(num_vars), c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable index out of range");
        let mut p = Self::zero(num_vars);
        p.add_term(ExponentVector::unit(num_vars, var), Rational::one());
        p
    }

    /// `c * x^exponents`.
    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(ExponentVector(exponents), c);
        p
    }

    /// Affine polynomial `constant + sum(linear[k] * x_k)`.
    pub fn affine(constant: Rational, linear: &[Rational]) -> Self {
        let n = linear.len();
        let mut p = Self::constant(n, constant);
        for (k, c) in linear.iter().enumerate() {
            p.add_term(ExponentVector::unit(n, k), c.clone());
        }
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree over stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .next_back()
            .map_or(0, ExponentVector::total_degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&ExponentVector(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Adds `c * x^e` in place, keeping the canonical form.
    pub fn add_term(&mut self, e: ExponentVector, c: Rational) {
        debug_assert_eq!(e.0.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `self^k` by repeated squaring; `p^0 == 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `x_k := subs[k]`. All substitutes must share one variable
    /// count, which becomes the variable count of the result.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self> {
        if subs.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: subs.len(),
            });
        }
        let m = subs.first().map_or(0, |s| s.num_vars);
        if let Some(bad) = subs.iter().find(|s| s.num_vars != m) {
            return Err(Error::VarCountMismatch {
                left: m,
                right: bad.num_vars,
            });
        }
        let mut max_exp = vec![0u32; self.num_vars];
        for e in self.terms.keys() {
            for (slot, &k) in max_exp.iter_mut().zip(&e.0) {
                *slot = (*slot).max(k);
            }
        }
        let powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .zip(&max_exp)
            .map(|(s, &top)| {
                let mut ps = vec![Polynomial::one(m)];
                for k in 1..=top as usize {
                    let next = &ps[k - 1] * s;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for (var, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[var][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multiplies every homogeneous part of degree `m` by
    /// `(x_1 + ... + x_n)^(d - m)`. Since the variables here are barycentric
    /// coordinates summing to one, the value is unchanged.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        if self.degree() > d {
            return Err(Error::DegreeTooLow {
                required: self.degree(),
                given: d,
            });
        }
        let n = self.num_vars;
        let sum = (0..n).fold(Polynomial::zero(n), |acc, k| &acc + &Polynomial::var(n, k));
        let mut sum_powers = vec![Polynomial::one(n)];
        for k in 1..=d as usize {
            let next = &sum_powers[k - 1] * &sum;
            sum_powers.push(next);
        }
        let mut out = Polynomial::zero(n);
        for (e, c) in &self.terms {
            let gap = (d - e.total_degree()) as usize;
            let mono = Polynomial {
                num_vars: n,
                terms: BTreeMap::from([(e.clone(), c.clone())]),
            };
            out = &out + &(&mono * &sum_powers[gap]);
        }
        Ok(out)
    }

    pub fn parse(text: &str, num_vars: usize) -> Result<Self> {
        Parser::new(text, num_vars).parse()
    }

    /// Parses with the variable count inferred from the largest `x<i>` seen
    /// (at least one variable).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let mut max_var = 1usize;
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'x' {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = text[start..j].parse::<usize>() {
                    max_var = max_var.max(v);
                }
                i = j;
            } else {
                i += 1;
            }
        }
        Self::parse(text, max_var)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on a variable-count mismatch; use [`Polynomial::try_add`] to
    /// get an error instead.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.total_degree() == 0;
            if !abs.is_one() || is_const {
                factors.push(format_rational(&abs));
            }
            for (var, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", var + 1)),
                    _ => factors.push(format!("x{}^{}", var + 1, k)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: Vec<(usize, u8)>,
    pos: usize,
    num_vars: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, num_vars: usize) -> Self {
        Parser {
            src: text
                .bytes()
                .enumerate()
                .filter(|(_, b)| !b.is_ascii_whitespace())
                .collect(),
            pos: 0,
            num_vars,
            text,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).map(|&(_, b)| b)
    }

    fn offset(&self) -> usize {
        self.src.get(self.pos).map_or(self.text.len(), |&(o, _)| o)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.offset(), msg)
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.src.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut out = Polynomial::zero(self.num_vars);
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(ExponentVector, Rational)> {
        let mut exps = ExponentVector::zero(self.num_vars);
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let var = self.digits()?;
                    let var: usize = var.parse().map_err(|_| self.err("bad variable index"))?;
                    if var == 0 || var > self.num_vars {
                        return Err(self.err(format!(
                            "variable x{var} out of range x1..x{}",
                            self.num_vars
                        )));
                    }
                    let mut k = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self
                            .digits()?
                            .parse()
                            .map_err(|_| self.err("bad exponent"))?;
                    }
                    exps.0[var - 1] += k;
                }
                Some(b) if b.is_ascii_digit() || b == b'.' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.' || b == b'/')
                    {
                        self.pos += 1;
                    }
                    let lit: String = self.src[start..self.pos].iter().map(|&(_, b)| b as char).collect();
                    let at = self.src[start].0;
                    let value = parse_rational(&lit).map_err(|_| Error::parse(at, format!("bad number {lit:?}")))?;
                    coeff *= value;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].iter().map(|&(_, b)| b as char).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    num_vars: usize,
    text: String,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            num_vars: self.num_vars,
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(d)?;
        Polynomial::parse(&raw.text, raw.num_vars).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(text: &str) -> Polynomial {
        Polynomial::parse(text, 2).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let sum = &p("x1^2") + &p("-x1^2");
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), 0);
        assert_eq!(sum.to_string(), "0");
    }

    #[test]
    fn builds_example_polynomial_by_addition() {
        let sum = &p("x1^2 + x2^2") + &p("-x1*x2");
        assert_eq!(sum, p("x1^2+x2^2-x1*x2"));
        assert_eq!(sum.num_terms(), 3);
    }

    #[test]
    fn difference_of_squares_and_identity() {
        let prod = &p("x1 - x2") * &p("x1 + x2");
        assert_eq!(prod, p("x1^2 - x2^2"));
        let q = p("3*x1^2*x2 - 1/2");
        assert_eq!(&Polynomial::one(2) * &q, q);
    }

    #[test]
    fn power_edge_cases() {
        assert_eq!(p("x1 + 7").pow(0), Polynomial::one(2));
        assert_eq!(p("x1 + x2").pow(2), p("x1^2 + 2*x1*x2 + x2^2"));
        assert!(Polynomial::zero(2).pow(3).is_zero());
    }

    #[test]
    fn evaluates_counterexample_points() {
        let q = p("21*x1^4 + 24*x1^3*x2 - 36*x1^3 + 18*x1^2*x2^2 - 24*x1^2*x2 + 18*x1^2 \
                   + 12*x1*x2^3 - 12*x1*x2^2 + 30*x2^4");
        assert_eq!(q.evaluate(&[int(0), int(0)]).unwrap(), int(0));
        assert_eq!(q.evaluate(&[int(1), int(0)]).unwrap(), int(3));
        assert_eq!(
            Polynomial::zero(2).evaluate(&[rat(1, 3), int(5)]).unwrap(),
            int(0)
        );
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Polynomial::one(2);
        let b = Polynomial::one(3);
        assert_eq!(
            a.try_add(&b),
            Err(Error::VarCountMismatch { left: 2, right: 3 })
        );
        assert!(a.try_mul(&b).is_err());
        assert_eq!(
            a.evaluate(&[int(1)]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn parser_accepts_documented_forms() {
        let q = p(" 21 * x1^4+24*x1^3*x2 -36*x1^3 ");
        assert_eq!(q.coeff(&[4, 0]), int(21));
        assert_eq!(q.coeff(&[3, 1]), int(24));
        assert_eq!(q.coeff(&[3, 0]), int(-36));
        assert_eq!(p("0.5*x1").coeff(&[1, 0]), rat(1, 2));
        assert_eq!(p("-3/4").coeff(&[0, 0]), rat(-3, 4));
        assert_eq!(p("x1*x1*2").coeff(&[2, 0]), int(2));
        assert!(p("x1 - x1").is_zero());
    }

    #[test]
    fn parser_rejects_bad_input() {
        for bad in ["", "x3", "x0", "1 +", "x1^", "2 x1", "x1 ** 2", "y", "1/0"] {
            assert!(Polynomial::parse(bad, 2).is_err(), "{bad}");
        }
        assert_eq!(Polynomial::parse_infer("x1 + x4").unwrap().num_vars(), 4);
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let q = p("1/10 - x1*x2 + x2^2 + x1^2");
        assert_eq!(q.to_string(), "x1^2 - x1*x2 + x2^2 + 1/10");
        assert_eq!(p("-x1 + 2").to_string(), "-x1 + 2");
    }

    #[test]
    fn compose_and_homogenize() {
        // (x1 + x2)^2 with x1 := y1 + y2, x2 := -y2 gives y1^2.
        let q = p("x1^2 + 2*x1*x2 + x2^2");
        let subs = [p("x1 + x2"), p("-x2")];
        assert_eq!(q.compose(&subs).unwrap(), p("x1^2"));
        let h = p("x1 + 1").homogenize(2).unwrap();
        assert_eq!(h, p("x1^2 + x1*x2 + x1^2 + 2*x1*x2 + x2^2"));
        assert!(p("x1^3").homogenize(2).is_err());
    }
}

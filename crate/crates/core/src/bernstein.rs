//! Bernstein bases on simplices and polynomials in Bernstein form.
//!
//! For barycentric coordinates `lambda` of a simplex and `|alpha| = d`, the
//! basis polynomial is `B_alpha = d!/(alpha_0! .. alpha_n!) * lambda^alpha`.
//! Every polynomial of degree at most `d` has a unique coefficient vector
//! `b` with `P = sum(b_alpha * B_alpha)`. All `B_alpha` are nonnegative on
//! the simplex and sum to one, so the coefficient signs certify the sign of
//! `P` there.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::poly::{ExponentVector, Polynomial};
use crate::rational::{factorial, format_rational, multinomial, Rational, RationalText};
use crate::simplex::{BarycentricSystem, Simplex};

/// Multi-index `(alpha_0, .., alpha_n)` over the `n + 1` barycentric
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        MultiIndex(entries.into())
    }

    /// `|alpha|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All multi-indices with `parts` entries summing to `d`, in graded-lex
/// order, largest first: `(d,0,0), (d-1,1,0), (d-1,0,1), ..., (0,0,d)`.
pub fn multi_indices(parts: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(prefix: &mut Vec<u32>, parts: usize, rest: u32, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == parts {
            prefix.push(rest);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=rest).rev() {
            prefix.push(k);
            rec(prefix, parts, rest - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(&mut Vec::with_capacity(parts), parts, d, &mut out);
    }
    out
}

fn check_index(alpha: &[u32], parts: usize, d: u32) -> Result<()> {
    if alpha.len() != parts {
        return Err(Error::IndexLength {
            expected: parts,
            found: alpha.len(),
        });
    }
    let order: u32 = alpha.iter().sum();
    if order != d {
        return Err(Error::IndexDegree {
            expected: d,
            found: order,
        });
    }
    Ok(())
}

/// `B_alpha^d` on the simplex of `bs`, expanded in the monomial basis.
pub fn basis_polynomial(bs: &BarycentricSystem, d: u32, alpha: &MultiIndex) -> Result<Polynomial> {
    check_index(&alpha.0, bs.dim() + 1, d)?;
    let n = bs.dim();
    let mut out = Polynomial::constant(n, Rational::from_integer(multinomial(&alpha.0)));
    for (lambda, &k) in bs.coords().iter().zip(&alpha.0) {
        if k > 0 {
            out = &out * &lambda.pow(k);
        }
    }
    Ok(out)
}

/// Sign classification of a coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertStatus {
    /// Every coefficient is strictly positive.
    Positive,
    /// Every coefficient is nonnegative and at least one is zero.
    Nonnegative,
    /// Some coefficient is negative; `witness` lists those indices.
    Indeterminate { witness: Vec<MultiIndex> },
}

impl CertStatus {
    pub fn is_positive(&self) -> bool {
        matches!(self, CertStatus::Positive)
    }

    pub fn is_nonnegative(&self) -> bool {
        !matches!(self, CertStatus::Indeterminate { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertStatus::Positive => "positive",
            CertStatus::Nonnegative => "nonnegative",
            CertStatus::Indeterminate { .. } => "indeterminate",
        }
    }
}

/// A polynomial written in the degree-`d` Bernstein basis of a simplex.
/// Zero coefficients are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormJson", into = "FormJson")]
pub struct BernsteinForm {
    system: BarycentricSystem,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl BernsteinForm {
    pub fn new(
        system: BarycentricSystem,
        degree: u32,
        coeffs: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self> {
        let parts = system.dim() + 1;
        let mut map = BTreeMap::new();
        for (alpha, value) in coeffs {
            check_index(&alpha.0, parts, degree)?;
            if !value.is_zero() {
                map.insert(alpha, value);
            }
        }
        Ok(BernsteinForm {
            system,
            degree,
            coeffs: map,
        })
    }

    pub fn system(&self) -> &BarycentricSystem {
        &self.system
    }

    pub fn simplex(&self) -> &Simplex {
        self.system.simplex()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    /// Coefficient at `alpha`; absent indices read as zero.
    pub fn coeff(&self, alpha: &[u32]) -> Rational {
        self.coeffs
            .get(&MultiIndex(alpha.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored (nonzero) coefficients.
    pub fn nonzero(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    /// Every index `|alpha| = d` with its coefficient, in graded-lex order.
    pub fn all_coeffs(&self) -> Vec<(MultiIndex, Rational)> {
        multi_indices(self.dim() + 1, self.degree)
            .into_iter()
            .map(|a| {
                let v = self.coeffs.get(&a).cloned().unwrap_or_else(Rational::zero);
                (a, v)
            })
            .collect()
    }

    /// `sum(b_alpha * d!/alpha! * l^alpha)` as a homogeneous polynomial in the
    /// `n + 1` barycentric variables `l_0 .. l_n`.
    pub fn barycentric_polynomial(&self) -> Polynomial {
        let parts = self.dim() + 1;
        let mut out = Polynomial::zero(parts);
        for (alpha, b) in &self.coeffs {
            let weight = Rational::from_integer(multinomial(&alpha.0));
            out.add_term(ExponentVector(alpha.0.clone()), b * weight);
        }
        out
    }

    /// Reads a form off a homogeneous degree-`d` polynomial in barycentric
    /// variables: `b_alpha = coeff(l^alpha) * alpha! / d!`.
    pub(crate) fn from_barycentric_polynomial(
        system: BarycentricSystem,
        degree: u32,
        h: &Polynomial,
    ) -> Result<Self> {
        let d_fact = factorial(degree);
        let coeffs = h.terms().map(|(e, c)| {
            let alpha_fact = e.0.iter().fold(num_bigint::BigInt::one(), |acc, &k| acc * factorial(k));
            (
                MultiIndex(e.0.clone()),
                c * Rational::new(alpha_fact, d_fact.clone()),
            )
        });
        Self::new(system, degree, coeffs.collect::<Vec<_>>())
    }

    /// Monomial-basis expansion `sum(b_alpha * B_alpha)`.
    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.dim();
        let mut out = Polynomial::zero(n);
        for (alpha, b) in &self.coeffs {
            let basis = basis_polynomial(&self.system, self.degree, alpha)
                .expect("stored indices are valid");
            out = &out + &basis.scale(b);
        }
        out
    }

    /// The same polynomial in the degree `d + r` basis, via the one-step
    /// recurrence `b'_g = sum_i g_i/(d+1) * b_{g - e_i}` applied `r` times.
    pub fn elevate(&self, r: u32) -> BernsteinForm {
        let parts = self.dim() + 1;
        let mut current = self.clone();
        for _ in 0..r {
            let d1 = current.degree + 1;
            let denom = Rational::from_integer(d1.into());
            let mut next = BTreeMap::new();
            for gamma in multi_indices(parts, d1) {
                let mut v = Rational::zero();
                for i in 0..parts {
                    if gamma.0[i] == 0 {
                        continue;
                    }
                    let mut prev = gamma.0.clone();
                    prev[i] -= 1;
                    if let Some(b) = current.coeffs.get(&MultiIndex(prev)) {
                        v += b * Rational::from_integer(gamma.0[i].into());
                    }
                }
                if !v.is_zero() {
                    next.insert(gamma, v / &denom);
                }
            }
            current = BernsteinForm {
                system: current.system,
                degree: d1,
                coeffs: next,
            };
        }
        current
    }

    pub fn status(&self) -> CertStatus {
        let mut witness = Vec::new();
        let mut any_zero = false;
        for (alpha, v) in self.all_coeffs() {
            if v.is_negative() {
                witness.push(alpha);
            } else if v.is_zero() {
                any_zero = true;
            }
        }
        if !witness.is_empty() {
            CertStatus::Indeterminate { witness }
        } else if any_zero {
            CertStatus::Nonnegative
        } else {
            CertStatus::Positive
        }
    }

    /// `(min, max)` over all coefficients; the polynomial takes values in
    /// this interval on the simplex.
    pub fn enclosure(&self) -> (Rational, Rational) {
        let all = self.all_coeffs();
        let mut it = all.into_iter().map(|(_, v)| v);
        let first = it.next().expect("at least one index");
        it.fold((first.clone(), first), |(lo, hi), v| {
            let lo = if v < lo { v.clone() } else { lo };
            let hi = if v > hi { v } else { hi };
            (lo, hi)
        })
    }

    /// Index of the smallest coefficient, first in graded-lex order on ties.
    pub fn argmin(&self) -> (MultiIndex, Rational) {
        let mut best: Option<(MultiIndex, Rational)> = None;
        for (a, v) in self.all_coeffs() {
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((a, v));
            }
        }
        best.expect("at least one index")
    }
}

/// Unique Bernstein coefficients of `p` of degree `d` on the simplex of `bs`.
///
/// Substitutes `x = sum(l_j v_j)`, lifts every homogeneous part of degree
/// `m` by `(sum l_j)^(d-m)` and reads the coefficients off the result.
pub fn to_bernstein(p: &Polynomial, bs: &BarycentricSystem, d: u32) -> Result<BernsteinForm> {
    check_conversion(p, bs, d)?;
    let n = bs.dim();
    let parts = n + 1;
    let subs: Vec<Polynomial> = (0..n)
        .map(|k| {
            let mut lin = Polynomial::zero(parts);
            for (j, v) in bs.simplex().vertices().iter().enumerate() {
                lin.add_term(ExponentVector::unit(parts, j), v[k].clone());
            }
            lin
        })
        .collect();
    let h = p.compose(&subs)?.homogenize(d)?;
    BernsteinForm::from_barycentric_polynomial(bs.clone(), d, &h)
}

/// Same result as [`to_bernstein`], computed by solving the square linear
/// system that matches monomial coefficients of `sum(b_alpha * B_alpha)`
/// against `p`. Slower; kept as an independent cross-check.
pub fn to_bernstein_by_solve(
    p: &Polynomial,
    bs: &BarycentricSystem,
    d: u32,
) -> Result<BernsteinForm> {
    check_conversion(p, bs, d)?;
    let n = bs.dim();
    let alphas = multi_indices(n + 1, d);
    // Exponents of degree <= d in n variables: drop the leading entry.
    let rows: Vec<Vec<u32>> = alphas.iter().map(|a| a.0[1..].to_vec()).collect();
    let columns: Vec<Polynomial> = alphas
        .iter()
        .map(|a| basis_polynomial(bs, d, a))
        .collect::<Result<_>>()?;
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|e| columns.iter().map(|b| b.coeff(e)).collect())
        .collect();
    let rhs: Vec<Vec<Rational>> = rows.iter().map(|e| vec![p.coeff(e)]).collect();
    let sol = solve(&matrix, &rhs)?.expect("Bernstein basis is a basis");
    BernsteinForm::new(
        bs.clone(),
        d,
        alphas.into_iter().zip(sol.into_iter().map(|mut r| r.remove(0))),
    )
}

fn check_conversion(p: &Polynomial, bs: &BarycentricSystem, d: u32) -> Result<()> {
    if p.num_vars() != bs.dim() {
        return Err(Error::DimensionMismatch {
            expected: bs.dim(),
            found: p.num_vars(),
        });
    }
    if p.degree() > d {
        return Err(Error::DegreeTooLow {
            required: p.degree(),
            given: d,
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    index: Vec<u32>,
    value: RationalText,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    degree: u32,
    simplex: Simplex,
    coeffs: Vec<CoeffJson>,
}

impl From<BernsteinForm> for FormJson {
    fn from(f: BernsteinForm) -> Self {
        FormJson {
            degree: f.degree,
            coeffs: f
                .all_coeffs()
                .into_iter()
                .map(|(a, v)| CoeffJson {
                    index: a.0,
                    value: RationalText(v),
                })
                .collect(),
            simplex: f.system.simplex().clone(),
        }
    }
}

impl TryFrom<FormJson> for BernsteinForm {
    type Error = Error;

    fn try_from(raw: FormJson) -> Result<Self> {
        BernsteinForm::new(
            raw.simplex.barycentric_system(),
            raw.degree,
            raw.coeffs
                .into_iter()
                .map(|c| (MultiIndex(c.index), c.value.0))
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for BernsteinForm {
    /// Aligned `index value` table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, String)> = self
            .all_coeffs()
            .into_iter()
            .map(|(a, v)| (a.to_string(), format_rational(&v)))
            .collect();
        let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        writeln!(f, "degree {} on simplex {}", self.degree, render_simplex(self.simplex()))?;
        for (a, v) in rows {
            writeln!(f, "  {a:<w$}  {v}")?;
        }
        Ok(())
    }
}

pub fn render_simplex(s: &Simplex) -> String {
    let vs: Vec<String> = s
        .vertices()
        .iter()
        .map(|v| {
            let cs: Vec<String> = v.iter().map(format_rational).collect();
            format!("({})", cs.join(", "))
        })
        .collect();
    vs.join(" ")
}

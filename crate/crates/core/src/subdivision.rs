//! Moving Bernstein coefficients between the bases of a simplex and of a
//! smaller simplex.
//!
//! Two closed-form transfers cover the planar vertex moves used to cut a
//! corner of a triangle:
//!
//! * [`transfer_edge_v2`] slides `v2` along the edge towards `v0`:
//!   `v2' = rho*v0 + (1-rho)*v2`,
//! * [`transfer_vertex_v1`] moves `v1` into the triangle:
//!   `v1' = beta0*v0 + beta1*v1 + beta2*v2`,
//!
//! and [`transfer_combined`] does both at once. [`restrict_general`] is the
//! dimension-generic route (expand, then convert on the subsimplex) that the
//! closed forms are checked against. [`reexpress`] is the fast generic route
//! used by the certifier: it substitutes the old barycentric coordinates as
//! linear forms in the new ones.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bernstein::{multi_indices, to_bernstein, BernsteinForm, MultiIndex};
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial};
use crate::rational::{binomial, factorial, format_rational, Rational};
use crate::simplex::Simplex;

/// `rho` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubdivisionParam {
    rho: Rational,
}

impl EdgeSubdivisionParam {
    pub fn new(rho: Rational) -> Result<Self> {
        if rho.is_negative() || rho >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in [0, 1), got {}",
                format_rational(&rho)
            )));
        }
        Ok(EdgeSubdivisionParam { rho })
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }
}

/// `(beta0, beta1, beta2)` with `beta0 + beta1 + beta2 = 1`,
/// `beta0, beta2 >= 0` and `beta1 > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMoveParam {
    beta: [Rational; 3],
}

impl VertexMoveParam {
    pub fn new(beta0: Rational, beta1: Rational, beta2: Rational) -> Result<Self> {
        let shown = || {
            format!(
                "({}, {}, {})",
                format_rational(&beta0),
                format_rational(&beta1),
                format_rational(&beta2)
            )
        };
        if &beta0 + &beta1 + &beta2 != Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "beta must sum to 1, got {}",
                shown()
            )));
        }
        if beta0.is_negative() || beta2.is_negative() || !beta1.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "beta needs beta0, beta2 >= 0 and beta1 > 0, got {}",
                shown()
            )));
        }
        Ok(VertexMoveParam {
            beta: [beta0, beta1, beta2],
        })
    }

    pub fn identity() -> Self {
        VertexMoveParam {
            beta: [Rational::zero(), Rational::one(), Rational::zero()],
        }
    }

    pub fn beta(&self) -> &[Rational; 3] {
        &self.beta
    }
}

fn require_planar(f: &BernsteinForm) -> Result<()> {
    if f.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: f.dim(),
        });
    }
    Ok(())
}

fn combine(s: &Simplex, weights: &[Rational]) -> Vec<Rational> {
    s.point_at(weights).expect("weights sized to the simplex")
}

fn moved_v1(s: &Simplex, beta: &VertexMoveParam) -> Vec<Rational> {
    combine(s, &beta.beta)
}

fn moved_v2(s: &Simplex, rho: &EdgeSubdivisionParam) -> Vec<Rational> {
    combine(s, &[rho.rho.clone(), Rational::zero(), Rational::one() - &rho.rho])
}

fn powi(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

fn ratio_of_factorials(num: u32, dens: &[u32]) -> Rational {
    let den = dens.iter().fold(num_bigint::BigInt::one(), |acc, &k| acc * factorial(k));
    Rational::new(factorial(num), den)
}

fn with_simplex(
    vertices: Vec<Vec<Rational>>,
    degree: u32,
    coeffs: Vec<(MultiIndex, Rational)>,
) -> Result<BernsteinForm> {
    let simplex = Simplex::new(vertices)?;
    BernsteinForm::new(simplex.barycentric_system(), degree, coeffs)
}

/// Coefficients on `(v0, v1, rho*v0 + (1-rho)*v2)`:
/// `b'_g = sum_{k=0}^{g2} C(g2, g2-k) rho^(g2-k) (1-rho)^k b_(g0+g2-k, g1, k)`.
pub fn transfer_edge_v2(f: &BernsteinForm, rho: &EdgeSubdivisionParam) -> Result<BernsteinForm> {
    require_planar(f)?;
    let d = f.degree();
    let r = &rho.rho;
    let one_minus = Rational::one() - r;
    let coeffs = multi_indices(3, d)
        .into_iter()
        .map(|g| {
            let [g0, g1, g2] = [g.0[0], g.0[1], g.0[2]];
            let mut v = Rational::zero();
            for k in 0..=g2 {
                let b = f.coeff(&[g0 + g2 - k, g1, k]);
                if b.is_zero() {
                    continue;
                }
                v += Rational::from_integer(binomial(g2, g2 - k))
                    * powi(r, g2 - k)
                    * powi(&one_minus, k)
                    * b;
            }
            (g, v)
        })
        .collect();
    let s = f.simplex();
    with_simplex(
        vec![s.vertex(0).to_vec(), s.vertex(1).to_vec(), moved_v2(s, rho)],
        d,
        coeffs,
    )
}

/// Coefficients on `(v0, beta0*v0 + beta1*v1 + beta2*v2, v2)`:
/// `b'_g = sum_{a0 >= g0, a2 >= g2} g1!/((a0-g0)! a1! (a2-g2)!)
///         beta0^(a0-g0) beta1^a1 beta2^(a2-g2) b_a`.
pub fn transfer_vertex_v1(f: &BernsteinForm, beta: &VertexMoveParam) -> Result<BernsteinForm> {
    require_planar(f)?;
    let d = f.degree();
    let [b0, b1, b2] = &beta.beta;
    let coeffs = multi_indices(3, d)
        .into_iter()
        .map(|g| {
            let [g0, g1, g2] = [g.0[0], g.0[1], g.0[2]];
            let mut v = Rational::zero();
            for (a, b) in f.nonzero() {
                let [a0, a1, a2] = [a.0[0], a.0[1], a.0[2]];
                if a0 < g0 || a2 < g2 {
                    continue;
                }
                v += ratio_of_factorials(g1, &[a0 - g0, a1, a2 - g2])
                    * powi(b0, a0 - g0)
                    * powi(b1, a1)
                    * powi(b2, a2 - g2)
                    * b;
            }
            (g, v)
        })
        .collect();
    let s = f.simplex();
    with_simplex(
        vec![s.vertex(0).to_vec(), moved_v1(s, beta), s.vertex(2).to_vec()],
        d,
        coeffs,
    )
}

/// Coefficients on `(v0, v1', v2')` with both vertex moves applied, from the
/// double sum
///
/// ```text
/// b'_g = sum_{k=0}^{g2} C(g2, g2-k) rho^(g2-k) (1-rho)^k
///        sum_{a0 >= g0+g2-k, a2 >= k} g1! beta0^(a0-(g0+g2-k)) beta1^a1 beta2^(a2-k)
///            / ((a0-(g0+g2-k))! a1! (a2-k)!) * b_a
/// ```
pub fn transfer_combined(
    f: &BernsteinForm,
    beta: &VertexMoveParam,
    rho: &EdgeSubdivisionParam,
) -> Result<BernsteinForm> {
    require_planar(f)?;
    let d = f.degree();
    let [b0, b1, b2] = &beta.beta;
    let r = &rho.rho;
    let one_minus = Rational::one() - r;
    let coeffs = multi_indices(3, d)
        .into_iter()
        .map(|g| {
            let [g0, g1, g2] = [g.0[0], g.0[1], g.0[2]];
            let mut v = Rational::zero();
            for k in 0..=g2 {
                let lead = g0 + g2 - k;
                let mut inner = Rational::zero();
                for (a, b) in f.nonzero() {
                    let [a0, a1, a2] = [a.0[0], a.0[1], a.0[2]];
                    if a0 < lead || a2 < k {
                        continue;
                    }
                    inner += ratio_of_factorials(g1, &[a0 - lead, a1, a2 - k])
                        * powi(b0, a0 - lead)
                        * powi(b1, a1)
                        * powi(b2, a2 - k)
                        * b;
                }
                if inner.is_zero() {
                    continue;
                }
                v += Rational::from_integer(binomial(g2, g2 - k))
                    * powi(r, g2 - k)
                    * powi(&one_minus, k)
                    * inner;
            }
            (g, v)
        })
        .collect();
    let s = f.simplex();
    with_simplex(
        vec![s.vertex(0).to_vec(), moved_v1(s, beta), moved_v2(s, rho)],
        d,
        coeffs,
    )
}

fn require_same_dim(f: &BernsteinForm, sub: &Simplex) -> Result<()> {
    if sub.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: sub.dim(),
        });
    }
    Ok(())
}

/// Coefficients of the same polynomial and degree on `sub`, by expanding to
/// the monomial basis and converting again.
pub fn restrict_general(f: &BernsteinForm, sub: &Simplex) -> Result<BernsteinForm> {
    require_same_dim(f, sub)?;
    to_bernstein(&f.to_polynomial(), &sub.barycentric_system(), f.degree())
}

/// Same result as [`restrict_general`] without leaving barycentric
/// coordinates: `lambda_i = sum_j lambda_i(w_j) * mu_j` where `w_j` are the
/// vertices of `sub` and `mu` its coordinates.
pub fn reexpress(f: &BernsteinForm, sub: &Simplex) -> Result<BernsteinForm> {
    require_same_dim(f, sub)?;
    let parts = f.dim() + 1;
    let system = f.system();
    let columns: Vec<Vec<Rational>> = sub
        .vertices()
        .iter()
        .map(|w| system.at(w))
        .collect::<Result<_>>()?;
    let subs: Vec<Polynomial> = (0..parts)
        .map(|i| {
            let mut lin = Polynomial::zero(parts);
            for (j, col) in columns.iter().enumerate() {
                lin.add_term(ExponentVector::unit(parts, j), col[i].clone());
            }
            lin
        })
        .collect();
    let h = f.barycentric_polynomial().compose(&subs)?;
    BernsteinForm::from_barycentric_polynomial(sub.barycentric_system(), f.degree(), &h)
}

/// Which edge was cut and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub edge: (usize, usize),
    #[serde(with = "crate::rational::serde_str")]
    pub theta: Rational,
}

/// Cuts edge `v_i v_j` at `w = (1-theta)*v_i + theta*v_j`. The first child
/// has `w` in slot `j`, the second has `w` in slot `i`.
pub fn split_edge(s: &Simplex, i: usize, j: usize, theta: &Rational) -> Result<(Simplex, Simplex)> {
    let count = s.vertices().len();
    if i == j || i >= count || j >= count {
        return Err(Error::InvalidParameter(format!(
            "edge ({i}, {j}) is not an edge of a simplex with {count} vertices"
        )));
    }
    if !theta.is_positive() || *theta >= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1), got {}",
            format_rational(theta)
        )));
    }
    let w: Vec<Rational> = s
        .vertex(i)
        .iter()
        .zip(s.vertex(j))
        .map(|(a, b)| (Rational::one() - theta) * a + theta * b)
        .collect();
    let mut first = s.vertices().to_vec();
    first[j] = w.clone();
    let mut second = s.vertices().to_vec();
    second[i] = w;
    Ok((Simplex::new(first)?, Simplex::new(second)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn form(text: &str, d: u32) -> BernsteinForm {
        let p = Polynomial::parse(text, 2).unwrap();
        to_bernstein(&p, &Simplex::standard(2).barycentric_system(), d).unwrap()
    }

    #[test]
    fn identity_parameters_keep_coefficients() {
        let f = form("3*x1^3 - x1*x2 + 2/5*x2 - 1", 3);
        let rho0 = EdgeSubdivisionParam::new(int(0)).unwrap();
        let same = |g: &BernsteinForm| g.all_coeffs() == f.all_coeffs() && g.simplex() == f.simplex();
        assert!(same(&transfer_edge_v2(&f, &rho0).unwrap()));
        assert!(same(&transfer_vertex_v1(&f, &VertexMoveParam::identity()).unwrap()));
        assert!(same(&transfer_combined(&f, &VertexMoveParam::identity(), &rho0).unwrap()));
        assert!(same(&restrict_general(&f, f.simplex()).unwrap()));
    }

    #[test]
    fn parameter_validation() {
        assert!(EdgeSubdivisionParam::new(int(1)).is_err());
        assert!(EdgeSubdivisionParam::new(rat(-1, 5)).is_err());
        assert!(EdgeSubdivisionParam::new(rat(99, 100)).is_ok());
        assert!(VertexMoveParam::new(rat(1, 2), int(0), rat(1, 2)).is_err());
        assert!(VertexMoveParam::new(rat(1, 2), rat(1, 2), rat(1, 2)).is_err());
        assert!(VertexMoveParam::new(rat(-1, 2), int(1), rat(1, 2)).is_err());
        assert!(VertexMoveParam::new(int(0), int(1), int(0)).is_ok());
    }

    #[test]
    fn planar_only() {
        let p = Polynomial::parse("x1 + x3", 3).unwrap();
        let f = to_bernstein(&p, &Simplex::standard(3).barycentric_system(), 1).unwrap();
        let rho = EdgeSubdivisionParam::new(rat(1, 2)).unwrap();
        assert_eq!(
            transfer_edge_v2(&f, &rho),
            Err(Error::UnsupportedDimension {
                expected: 2,
                found: 3
            })
        );
        assert!(transfer_vertex_v1(&f, &VertexMoveParam::identity()).is_err());
        // The generic routes work in any dimension.
        let sub = Simplex::new(vec![
            vec![int(0), int(0), int(0)],
            vec![rat(1, 2), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), rat(1, 3)],
        ])
        .unwrap();
        assert_eq!(restrict_general(&f, &sub).unwrap(), reexpress(&f, &sub).unwrap());
    }

    #[test]
    fn example_split_children() {
        let s = Simplex::standard(2);
        let (a, b) = split_edge(&s, 1, 2, &rat(1, 2)).unwrap();
        let w = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(a.vertices(), &[vec![int(0), int(0)], vec![int(1), int(0)], w.clone()]);
        assert_eq!(b.vertices(), &[vec![int(0), int(0)], w, vec![int(0), int(1)]]);
        assert_eq!(a.edge_determinant().abs(), b.edge_determinant().abs());
        assert_eq!(a.volume() + b.volume(), s.volume());
    }

    #[test]
    fn split_rejects_bad_arguments() {
        let s = Simplex::standard(2);
        assert!(split_edge(&s, 1, 1, &rat(1, 2)).is_err());
        assert!(split_edge(&s, 0, 3, &rat(1, 2)).is_err());
        assert!(split_edge(&s, 0, 1, &int(0)).is_err());
        assert!(split_edge(&s, 0, 1, &int(1)).is_err());
    }

    #[test]
    fn example_restriction_at_half() {
        let f = form("x1^2 + x2^2 - x1*x2", 2);
        let sub = Simplex::new(vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![rat(1, 2), rat(1, 2)],
        ])
        .unwrap();
        let g = restrict_general(&f, &sub).unwrap();
        assert_eq!(g.coeff(&[0, 2, 0]), int(1));
        assert_eq!(g.coeff(&[0, 1, 1]), rat(1, 4));
        // Equals P at the new vertex, (1/2)^2 + (1/2)^2 - 1/4.
        assert_eq!(g.coeff(&[0, 0, 2]), rat(1, 4));
        assert_eq!(reexpress(&f, &sub).unwrap(), g);
    }
}

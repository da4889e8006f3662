//! Simplices in Q^n and their barycentric coordinate systems.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse};
use crate::poly::Polynomial;
use crate::rational::{factorial, Rational, RationalText};

/// A nondegenerate simplex given by `n + 1` affinely independent vertices.
///
/// Serialized as an array of vertex arrays, e.g. `[["0","0"],["1","0"],["0","1"]]`;
/// plain JSON numbers are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<RationalText>>", into = "Vec<Vec<RationalText>>")]
pub struct Simplex {
    vertices: Vec<Vec<Rational>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let n = vertices.len().checked_sub(1).filter(|&n| n > 0).ok_or_else(|| {
            Error::InvalidSimplex(format!("need at least 2 vertices, got {}", vertices.len()))
        })?;
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::InvalidSimplex(format!(
                "{} vertices need {n} coordinates each, found a vertex with {}",
                n + 1,
                v.len()
            )));
        }
        let s = Simplex { vertices };
        let det = s.edge_determinant();
        if det.is_zero() {
            return Err(Error::DegenerateSimplex { determinant: det });
        }
        Ok(s)
    }

    /// Origin plus the unit points.
    pub fn standard(n: usize) -> Self {
        let mut vertices = vec![vec![Rational::zero(); n]];
        for k in 0..n {
            let mut v = vec![Rational::zero(); n];
            v[k] = Rational::one();
            vertices.push(v);
        }
        Simplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[Rational] {
        &self.vertices[i]
    }

    /// Determinant of the matrix whose rows are `v_i - v_0`, `i = 1..n`.
    pub fn edge_determinant(&self) -> Rational {
        let v0 = &self.vertices[0];
        let rows: Vec<Vec<Rational>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        determinant(&rows).expect("square by construction")
    }

    pub fn volume(&self) -> Rational {
        self.edge_determinant().abs() / Rational::from_integer(factorial(self.dim() as u32))
    }

    /// Squared Euclidean length of the edge `v_i v_j`.
    pub fn edge_length_sq(&self, i: usize, j: usize) -> Rational {
        self.vertices[i]
            .iter()
            .zip(&self.vertices[j])
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    }

    pub fn barycentric_system(&self) -> BarycentricSystem {
        BarycentricSystem::new(self.clone())
    }

    /// Closed membership test: every barycentric coordinate is `>= 0`.
    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        self.barycentric_system().contains(point)
    }

    /// Point with the given barycentric coordinates.
    pub fn point_at(&self, weights: &[Rational]) -> Result<Vec<Rational>> {
        if weights.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vertices.len(),
                found: weights.len(),
            });
        }
        let n = self.dim();
        let mut x = vec![Rational::zero(); n];
        for (w, v) in weights.iter().zip(&self.vertices) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += w * vk;
            }
        }
        Ok(x)
    }
}

impl TryFrom<Vec<Vec<RationalText>>> for Simplex {
    type Error = Error;

    fn try_from(raw: Vec<Vec<RationalText>>) -> Result<Self> {
        Simplex::new(
            raw.into_iter()
                .map(|v| v.into_iter().map(|q| q.0).collect())
                .collect(),
        )
    }
}

impl From<Simplex> for Vec<Vec<RationalText>> {
    fn from(s: Simplex) -> Self {
        s.vertices
            .into_iter()
            .map(|v| v.into_iter().map(RationalText).collect())
            .collect()
    }
}

/// Affine polynomials `lambda_0 .. lambda_n` with `sum(lambda_i) = 1` and
/// `x = sum(lambda_i(x) v_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricSystem {
    simplex: Simplex,
    /// Row `i` holds `[c_i, a_i1, .., a_in]` with `lambda_i = c_i + a_i . x`.
    affine: Vec<Vec<Rational>>,
    coords: Vec<Polynomial>,
}

impl BarycentricSystem {
    /// Solves `lambda_i(v_j) = delta_ij` exactly. The vertex matrix has rows
    /// `[1, v_j]`; the coefficient rows of the lambdas are the columns of
    /// its inverse.
    pub fn new(simplex: Simplex) -> Self {
        let n = simplex.dim();
        let vm: Vec<Vec<Rational>> = simplex
            .vertices
            .iter()
            .map(|v| std::iter::once(Rational::one()).chain(v.iter().cloned()).collect())
            .collect();
        let inv = inverse(&vm)
            .expect("square by construction")
            .expect("nondegenerate simplex has an invertible vertex matrix");
        let affine: Vec<Vec<Rational>> = (0..=n)
            .map(|i| (0..=n).map(|r| inv[r][i].clone()).collect())
            .collect();
        let coords = affine
            .iter()
            .map(|row| Polynomial::affine(row[0].clone(), &row[1..]))
            .collect();
        BarycentricSystem {
            simplex,
            affine,
            coords,
        }
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn at(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        if point.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: point.len(),
            });
        }
        Ok(self
            .affine
            .iter()
            .map(|row| {
                let mut v = row[0].clone();
                for (a, x) in row[1..].iter().zip(point) {
                    v += a * x;
                }
                v
            })
            .collect())
    }

    pub fn contains(&self, point: &[Rational]) -> Result<bool> {
        Ok(self.at(point)?.iter().all(|l| !l.is_negative()))
    }
}

//! The nonnegative quartic whose Bernstein coefficient at `(1,1,2)` stays
//! negative under every corner cut at `v0`, together with the warm-up
//! quadratic `x1^2 + x2^2 - x1*x2`, and a report that recomputes every
//! published number for both.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bernstein::{to_bernstein, BernsteinForm, CertStatus, MultiIndex};
use crate::certifier::{certify, CertifyConfig, Strategy, Target};
use crate::error::{Error, Result};
use crate::linalg::{determinant, is_symmetric, ldl_pivots, Matrix};
use crate::poly::Polynomial;
use crate::rational::{format_rational, int, rat, Rational, RationalText};
use crate::simplex::Simplex;
use crate::subdivision::{
    restrict_general, transfer_combined, EdgeSubdivisionParam, VertexMoveParam,
};

/// `21x1^4 + 24x1^3x2 - 36x1^3 + 18x1^2x2^2 - 24x1^2x2 + 18x1^2 + 12x1x2^3
/// - 12x1x2^2 + 30x2^4`: nonnegative, zero only at the origin.
pub fn counterexample_polynomial() -> Polynomial {
    Polynomial::from_terms(
        2,
        [
            (vec![4, 0], int(21)),
            (vec![3, 1], int(24)),
            (vec![3, 0], int(-36)),
            (vec![2, 2], int(18)),
            (vec![2, 1], int(-24)),
            (vec![2, 0], int(18)),
            (vec![1, 3], int(12)),
            (vec![1, 2], int(-12)),
            (vec![0, 4], int(30)),
        ],
    )
    .expect("two variables")
}

/// `x1^2 + x2^2 - x1*x2`.
pub fn quadratic_example() -> Polynomial {
    Polynomial::from_terms(
        2,
        [
            (vec![2, 0], int(1)),
            (vec![0, 2], int(1)),
            (vec![1, 1], int(-1)),
        ],
    )
    .expect("two variables")
}

/// `p = z^T M z` for a vector of monomials `z` and symmetric `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramDecomposition {
    monomials: Vec<Polynomial>,
    matrix: Matrix,
}

impl GramDecomposition {
    pub fn new(monomials: Vec<Polynomial>, matrix: Matrix) -> Result<Self> {
        let k = monomials.len();
        if matrix.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: row.len(),
            });
        }
        if !is_symmetric(&matrix) {
            return Err(Error::NotSymmetric);
        }
        if let Some(first) = monomials.first() {
            if let Some(bad) = monomials.iter().find(|m| m.num_vars() != first.num_vars()) {
                return Err(Error::VarCountMismatch {
                    left: first.num_vars(),
                    right: bad.num_vars(),
                });
            }
        }
        Ok(GramDecomposition { monomials, matrix })
    }

    pub fn monomials(&self) -> &[Polynomial] {
        &self.monomials
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `sum_ij M_ij z_i z_j`.
    pub fn expand(&self) -> Polynomial {
        let n = self.monomials.first().map_or(1, Polynomial::num_vars);
        let mut out = Polynomial::zero(n);
        for (i, zi) in self.monomials.iter().enumerate() {
            for (j, zj) in self.monomials.iter().enumerate() {
                if !self.matrix[i][j].is_zero() {
                    out = &out + &(zi * zj).scale(&self.matrix[i][j]);
                }
            }
        }
        out
    }
}

/// The Gram matrix of the counterexample over `z = [x1, x1^2, x1*x2, x2^2]`.
pub fn counterexample_gram() -> GramDecomposition {
    let m = |e: [u32; 2]| Polynomial::monomial(e.to_vec(), int(1));
    let rows = [
        [18, -18, -12, -6],
        [-18, 21, 12, 0],
        [-12, 12, 18, 6],
        [-6, 0, 6, 30],
    ];
    GramDecomposition::new(
        vec![m([1, 0]), m([2, 0]), m([1, 1]), m([0, 2])],
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
    )
    .expect("symmetric 4x4")
}

pub fn verify_gram(p: &Polynomial, g: &GramDecomposition) -> Result<bool> {
    if let Some(z) = g.monomials.first() {
        if z.num_vars() != p.num_vars() {
            return Err(Error::VarCountMismatch {
                left: p.num_vars(),
                right: z.num_vars(),
            });
        }
    }
    Ok(g.expand() == *p)
}

/// Exact `L D L^T` test; every pivot must be strictly positive.
pub fn is_positive_definite(m: &Matrix) -> Result<bool> {
    crate::linalg::is_positive_definite(m)
}

/// Closed form of the `(1,1,2)` coefficient after the corner cut:
/// `beta1 * (1 - rho)^2 * b_(1,1,2)` with `b_(1,1,2) = -1`.
pub fn persistence_value(beta1: &Rational, rho: &Rational) -> Result<Rational> {
    if !beta1.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "beta1 must be positive, got {}",
            format_rational(beta1)
        )));
    }
    let rho = EdgeSubdivisionParam::new(rho.clone())?;
    let gap = Rational::from_integer(1.into()) - rho.rho();
    Ok(-(beta1 * &gap * &gap))
}

/// The `(1,1,2)` coefficient computed three ways for one parameter pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PersistenceRow {
    pub beta: [RationalText; 3],
    pub rho: RationalText,
    pub closed_form: RationalText,
    pub combined: RationalText,
    pub general: RationalText,
}

impl PersistenceRow {
    pub fn consistent(&self) -> bool {
        self.closed_form == self.combined && self.combined == self.general
    }

    pub fn negative(&self) -> bool {
        self.closed_form.0.is_negative()
    }
}

pub fn counterexample_form() -> BernsteinForm {
    to_bernstein(
        &counterexample_polynomial(),
        &Simplex::standard(2).barycentric_system(),
        4,
    )
    .expect("degree 4 fits")
}

pub fn persistence_check(beta: &VertexMoveParam, rho: &EdgeSubdivisionParam) -> Result<PersistenceRow> {
    let f = counterexample_form();
    let closed = persistence_value(&beta.beta()[1], rho.rho())?;
    let combined = transfer_combined(&f, beta, rho)?;
    let general = restrict_general(&f, combined.simplex())?;
    let idx = [1, 1, 2];
    Ok(PersistenceRow {
        beta: beta.beta().clone().map(RationalText),
        rho: RationalText(rho.rho().clone()),
        closed_form: RationalText(closed),
        combined: RationalText(combined.coeff(&idx)),
        general: RationalText(general.coeff(&idx)),
    })
}

/// `beta1` in {1/4, 1/2, 3/4, 1} with `beta0 = beta2 = (1 - beta1)/2`,
/// crossed with `rho` in {0, 1/4, 1/2, 3/4}.
pub fn persistence_grid() -> Result<Vec<PersistenceRow>> {
    let mut rows = Vec::new();
    for b1 in [rat(1, 4), rat(1, 2), rat(3, 4), int(1)] {
        let side = (int(1) - &b1) / int(2);
        let beta = VertexMoveParam::new(side.clone(), b1, side)?;
        for r in [int(0), rat(1, 4), rat(1, 2), rat(3, 4)] {
            rows.push(persistence_check(&beta, &EdgeSubdivisionParam::new(r)?)?);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flag {
    Match,
    Mismatch,
    /// The reference value is wrong and the computed value passed an
    /// independent check.
    Erratum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub flag: Flag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn compare(label: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let flag = if expected == computed {
            Flag::Match
        } else {
            Flag::Mismatch
        };
        Check {
            label: label.into(),
            expected,
            computed,
            flag,
            note: None,
        }
    }

    fn rational(label: impl Into<String>, expected: &Rational, computed: &Rational) -> Self {
        Self::compare(label, format_rational(expected), format_rational(computed))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GramSection {
    pub verdict: bool,
    pub pivots: Vec<RationalText>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PersistenceSection {
    pub grid: Vec<PersistenceRow>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub ok: bool,
    pub example1: Vec<Check>,
    pub counterexample: Vec<Check>,
    pub gram: GramSection,
    pub persistence: PersistenceSection,
}

impl Report {
    pub fn checks(&self) -> impl Iterator<Item = (&'static str, &Check)> {
        self.example1
            .iter()
            .map(|c| ("example1", c))
            .chain(self.counterexample.iter().map(|c| ("counterexample", c)))
            .chain(self.gram.checks.iter().map(|c| ("gram", c)))
            .chain(self.persistence.checks.iter().map(|c| ("persistence", c)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn erratum_or_mismatch(mut check: Check, confirmed: bool, note: String) -> Check {
    if check.flag == Flag::Mismatch && confirmed {
        check.flag = Flag::Erratum;
        check.note = Some(note);
    }
    check
}

fn example1_checks() -> Result<Vec<Check>> {
    let p = quadratic_example();
    let std2 = Simplex::standard(2);
    let f = to_bernstein(&p, &std2.barycentric_system(), 2)?;
    let mut out = vec![
        Check::rational("b(0,2,0) on std2", &int(1), &f.coeff(&[0, 2, 0])),
        Check::rational("b(0,1,1) on std2", &rat(-1, 2), &f.coeff(&[0, 1, 1])),
        Check::rational("b(0,0,2) on std2", &int(1), &f.coeff(&[0, 0, 2])),
        Check::compare("nonzero coefficients", 3, f.nonzero().count()),
        Check::compare(
            "status on std2",
            "indeterminate (0,1,1)",
            status_text(&f.status()),
        ),
    ];

    let theta = rat(1, 2);
    let w = vec![int(1) - &theta, theta.clone()];
    let v = std2.vertices();
    let tilde = Simplex::new(vec![v[0].clone(), v[1].clone(), w.clone()])?;
    let hat = Simplex::new(vec![v[0].clone(), v[2].clone(), w.clone()])?;
    let ft = restrict_general(&f, &tilde)?;
    let fh = restrict_general(&f, &hat)?;
    let at_w = p.evaluate(&w)?;
    // (1/8)(1 - theta) theta + 1/4, as printed for both children.
    let printed = rat(1, 8) * (int(1) - &theta) * &theta + rat(1, 4);
    let note = format!(
        "reference formula gives {}; the (0,0,2) coefficient must equal P at the new vertex, which is {}",
        format_rational(&printed),
        format_rational(&at_w)
    );
    for (name, g, mid) in [
        ("tilde", &ft, -rat(3, 2) * &theta + int(1)),
        ("hat", &fh, rat(3, 2) * &theta - rat(1, 2)),
    ] {
        out.push(Check::rational(
            format!("{name} b(0,2,0), theta=1/2"),
            &int(1),
            &g.coeff(&[0, 2, 0]),
        ));
        out.push(Check::rational(
            format!("{name} b(0,1,1), theta=1/2"),
            &mid,
            &g.coeff(&[0, 1, 1]),
        ));
        let c = g.coeff(&[0, 0, 2]);
        out.push(erratum_or_mismatch(
            Check::rational(format!("{name} b(0,0,2), theta=1/2"), &printed, &c),
            c == at_w,
            note.clone(),
        ));
    }
    let cfg = CertifyConfig {
        max_depth: 1,
        max_degree: 2,
        strategy: Strategy::EdgeBisection,
        target: Target::Nonnegative,
        theta,
    };
    let t = certify(&p, &std2, &cfg)?;
    out.push(Check::compare(
        "nonnegativity certified by one split at theta=1/2",
        "certified at depth 1",
        format!(
            "{} at depth {}",
            if t.is_certified() { "certified" } else { "exhausted" },
            t.depth()
        ),
    ));
    Ok(out)
}

fn status_text(s: &CertStatus) -> String {
    match s {
        CertStatus::Indeterminate { witness } => {
            let w: Vec<String> = witness.iter().map(MultiIndex::to_string).collect();
            format!("indeterminate {}", w.join(" "))
        }
        other => other.label().to_string(),
    }
}

fn counterexample_checks() -> Result<Vec<Check>> {
    let p = counterexample_polynomial();
    let f = counterexample_form();
    let mut out = vec![
        Check::rational("P coefficient of x1^4", &int(21), &p.coeff(&[4, 0])),
        Check::rational("P coefficient of x2^4", &int(30), &p.coeff(&[0, 4])),
        Check::rational("P(0,0)", &int(0), &p.evaluate(&[int(0), int(0)])?),
    ];
    for (idx, v) in [
        ([2, 2, 0], 3),
        ([1, 2, 1], 1),
        ([1, 1, 2], -1),
        ([0, 4, 0], 3),
        ([0, 0, 4], 30),
    ] {
        out.push(Check::rational(
            format!("b{} on std2, d=4", MultiIndex::new(idx)),
            &int(v),
            &f.coeff(&idx),
        ));
    }
    out.push(Check::compare("nonzero coefficients", 5, f.nonzero().count()));
    out.push(Check::compare(
        "status on std2",
        "indeterminate (1,1,2)",
        status_text(&f.status()),
    ));
    let (lo, hi) = f.enclosure();
    out.push(Check::compare(
        "coefficient range",
        "[-1, 30]",
        format!("[{}, {}]", format_rational(&lo), format_rational(&hi)),
    ));
    Ok(out)
}

fn gram_section() -> Result<GramSection> {
    let p = counterexample_polynomial();
    let g = counterexample_gram();
    let identity = verify_gram(&p, &g)?;
    let pivots = ldl_pivots(g.matrix())?;
    let pd = is_positive_definite(g.matrix())?;
    let minor = |k: usize| -> Result<Rational> {
        let sub: Matrix = g.matrix()[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&sub)
    };
    let mut checks = vec![
        Check::compare("z^T M z - P == 0", true, identity),
        Check::compare("M positive definite", true, pd),
        Check::compare("positive pivots", 4, pivots.iter().filter(|d| d.is_positive()).count()),
        Check::rational("leading minor 1", &int(18), &minor(1)?),
        Check::rational("leading minor 2", &int(54), &minor(2)?),
    ];
    for (k, d) in pivots.iter().enumerate() {
        checks.push(Check::compare(format!("pivot {} > 0", k + 1), true, d.is_positive()));
    }
    Ok(GramSection {
        verdict: identity && pd,
        pivots: pivots.into_iter().map(RationalText).collect(),
        checks,
    })
}

fn persistence_section() -> Result<PersistenceSection> {
    let grid = persistence_grid()?;
    let checks = vec![
        Check::compare("grid points", 16, grid.len()),
        Check::compare(
            "closed form = combined = general",
            16,
            grid.iter().filter(|r| r.consistent()).count(),
        ),
        Check::compare(
            "strictly negative (1,1,2)",
            16,
            grid.iter().filter(|r| r.negative()).count(),
        ),
    ];
    Ok(PersistenceSection { grid, checks })
}

/// Recomputes every reference value and flags each against it.
pub fn reproduce_report() -> Result<Report> {
    let mut report = Report {
        ok: false,
        example1: example1_checks()?,
        counterexample: counterexample_checks()?,
        gram: gram_section()?,
        persistence: persistence_section()?,
    };
    let ok = report.checks().all(|(_, c)| c.flag != Flag::Mismatch);
    report.ok = ok;
    Ok(report)
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<[String; 5]> = self
            .checks()
            .map(|(section, c)| {
                let flag = match c.flag {
                    Flag::Match => "MATCH",
                    Flag::Mismatch => "MISMATCH",
                    Flag::Erratum => "ERRATUM",
                };
                [
                    section.to_string(),
                    c.label.clone(),
                    c.expected.clone(),
                    c.computed.clone(),
                    flag.to_string(),
                ]
            })
            .collect();
        let header = ["section", "check", "expected", "computed", "flag"].map(String::from);
        let mut widths = [0usize; 5];
        for row in std::iter::once(&header).chain(&rows) {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |f: &mut fmt::Formatter<'_>, row: &[String; 5]| {
            let cells: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "{}", cells.join("  ").trim_end())
        };
        line(f, &header)?;
        for row in &rows {
            line(f, row)?;
        }
        writeln!(f)?;
        writeln!(f, "LDL pivots of M: {}", self.gram.pivots.iter().map(|p| format_rational(&p.0)).collect::<Vec<_>>().join(", "))?;
        writeln!(f)?;
        writeln!(f, "persistence of b(1,1,2) = -beta1 (1 - rho)^2:")?;
        writeln!(f, "  {:<16} {:<5} {:<10} {:<10} {:<10}", "beta", "rho", "closed", "combined", "general")?;
        for r in &self.persistence.grid {
            let beta: Vec<String> = r.beta.iter().map(|b| format_rational(&b.0)).collect();
            writeln!(
                f,
                "  {:<16} {:<5} {:<10} {:<10} {:<10}",
                beta.join(","),
                format_rational(&r.rho.0),
                format_rational(&r.closed_form.0),
                format_rational(&r.combined.0),
                format_rational(&r.general.0)
            )?;
        }
        for c in self.checks().map(|(_, c)| c).filter(|c| c.note.is_some()) {
            writeln!(f, "note [{}]: {}", c.label, c.note.as_deref().unwrap_or_default())?;
        }
        writeln!(f, "\n{}", if self.ok { "ALL CHECKS PASS" } else { "SOME CHECKS FAILED" })
    }
}

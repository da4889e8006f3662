//! Certificate search by simplex subdivision and degree elevation.
//!
//! The search is depth-first with a fixed child order, so identical inputs
//! always produce identical trees. Sibling subtrees are built on the rayon
//! pool and joined in index order.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bernstein::{render_simplex, to_bernstein, BernsteinForm, CertStatus, MultiIndex};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{format_rational, rat, Rational, RationalText};
use crate::simplex::Simplex;
use crate::subdivision::{reexpress, restrict_general, split_edge, SplitRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Bisect the longest edge.
    EdgeBisection,
    /// Bisect the edge picked from the most negative coefficient's index.
    WitnessGuidedSplit,
    /// Raise the degree one step at a time; never subdivide.
    ElevationOnly,
    /// Elevate the root to the degree cap, then split as `WitnessGuidedSplit`.
    ElevationThenSplit,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::EdgeBisection,
        Strategy::WitnessGuidedSplit,
        Strategy::ElevationOnly,
        Strategy::ElevationThenSplit,
    ];
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" | "edge-bisection" => Ok(Strategy::EdgeBisection),
            "witness" | "witness-guided" => Ok(Strategy::WitnessGuidedSplit),
            "elevation" | "elevation-only" => Ok(Strategy::ElevationOnly),
            "elevation-split" | "elevation-then-split" => Ok(Strategy::ElevationThenSplit),
            other => Err(Error::Config(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Positive,
    Nonnegative,
}

impl Target {
    pub fn accepts(self, status: &CertStatus) -> bool {
        match self {
            Target::Positive => status.is_positive(),
            Target::Nonnegative => status.is_nonnegative(),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" | "positive" => Ok(Target::Positive),
            "nonneg" | "nonnegative" => Ok(Target::Nonnegative),
            other => Err(Error::Config(format!("unknown target {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub max_depth: u32,
    pub max_degree: u32,
    pub strategy: Strategy,
    pub target: Target,
    /// Cut position used by every split.
    #[serde(with = "crate::rational::serde_str")]
    pub theta: Rational,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            max_depth: 6,
            max_degree: 8,
            strategy: Strategy::WitnessGuidedSplit,
            target: Target::Nonnegative,
            theta: rat(1, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Certified,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub form: BernsteinForm,
    pub status: CertStatus,
    /// Degree before elevation, when this node was elevated.
    pub elevated_from: Option<u32>,
    pub split: Option<SplitRecord>,
    pub children: Vec<CertNode>,
}

impl CertNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn simplex(&self) -> &Simplex {
        self.form.simplex()
    }

    /// Leaves in depth-first order with their child-index paths.
    pub fn leaves(&self) -> Vec<(Vec<usize>, &CertNode)> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |path, node| {
            if node.is_leaf() {
                out.push((path.to_vec(), node));
            }
        });
        out
    }

    fn walk<'a>(&'a self, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], &'a CertNode)) {
        visit(path, self);
        for (i, child) in self.children.iter().enumerate() {
            path.push(i);
            child.walk(path, visit);
            path.pop();
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(CertNode::node_count).sum::<usize>()
    }
}

/// A leaf that failed the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierLeaf {
    pub path: Vec<usize>,
    pub simplex: Simplex,
    pub degree: u32,
    pub witness: Vec<MultiIndex>,
    pub min_coeff: RationalText,
}

impl FrontierLeaf {
    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTree {
    pub polynomial: Polynomial,
    pub config: CertifyConfig,
    pub outcome: Outcome,
    pub root: CertNode,
    /// Failing leaves in depth-first order; empty when certified.
    pub frontier: Vec<FrontierLeaf>,
}

impl CertificateTree {
    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Certified
    }

    /// Depth of the deepest leaf.
    pub fn depth(&self) -> usize {
        self.root
            .leaves()
            .iter()
            .map(|(p, _)| p.len())
            .max()
            .unwrap_or(0)
    }

    /// First failing leaf of maximal depth.
    pub fn deepest_failing(&self) -> Option<&FrontierLeaf> {
        let max = self.frontier.iter().map(FrontierLeaf::depth).max()?;
        self.frontier.iter().find(|l| l.depth() == max)
    }

    /// Paths of nodes whose coefficient range is not inside their parent's.
    pub fn enclosure_violations(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), &self.root)];
        while let Some((path, node)) = stack.pop() {
            let (lo, hi) = node.form.enclosure();
            for (i, child) in node.children.iter().enumerate() {
                let (clo, chi) = child.form.enclosure();
                let mut cp = path.clone();
                cp.push(i);
                if clo < lo || chi > hi {
                    out.push(cp.clone());
                }
                stack.push((cp, child));
            }
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(0, e.to_string()))
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let outcome = match self.outcome {
            Outcome::Certified => "CERTIFIED",
            Outcome::Exhausted => "EXHAUSTED",
        };
        s += &format!(
            "{outcome}: {} nodes, {} leaves, depth {}, root degree {}\n",
            self.root.node_count(),
            self.root.leaves().len(),
            self.depth(),
            self.root.form.degree()
        );
        for (path, leaf) in self.root.leaves() {
            let (lo, hi) = leaf.form.enclosure();
            s += &format!(
                "  leaf {:<14} deg {} {:<13} range [{}, {}]  {}\n",
                format!("{path:?}"),
                leaf.form.degree(),
                leaf.status.label(),
                format_rational(&lo),
                format_rational(&hi),
                render_simplex(leaf.simplex())
            );
        }
        s
    }
}

impl fmt::Display for CertificateTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

fn validate(p: &Polynomial, s: &Simplex, cfg: &CertifyConfig) -> Result<()> {
    if p.num_vars() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: p.num_vars(),
        });
    }
    if cfg.max_degree < p.degree() {
        return Err(Error::DegreeTooLow {
            required: p.degree(),
            given: cfg.max_degree,
        });
    }
    if cfg.theta <= Rational::zero() || cfg.theta >= Rational::from_integer(1.into()) {
        return Err(Error::Config(format!(
            "theta must lie in (0, 1), got {}",
            format_rational(&cfg.theta)
        )));
    }
    Ok(())
}

/// Tries to certify `p` on `s` according to `cfg`.
pub fn certify(p: &Polynomial, s: &Simplex, cfg: &CertifyConfig) -> Result<CertificateTree> {
    validate(p, s, cfg)?;
    let start = match cfg.strategy {
        Strategy::ElevationThenSplit => cfg.max_degree,
        _ => p.degree(),
    };
    let form = to_bernstein(p, &s.barycentric_system(), start)?;
    let mut root = build(form, 0, cfg)?;
    if cfg.strategy == Strategy::ElevationThenSplit && start != p.degree() {
        root.elevated_from = Some(p.degree());
    }
    let frontier = frontier(&root, cfg.target);
    Ok(CertificateTree {
        polynomial: p.clone(),
        config: cfg.clone(),
        outcome: if frontier.is_empty() {
            Outcome::Certified
        } else {
            Outcome::Exhausted
        },
        root,
        frontier,
    })
}

fn leaf(form: BernsteinForm, status: CertStatus) -> CertNode {
    CertNode {
        form,
        status,
        elevated_from: None,
        split: None,
        children: Vec::new(),
    }
}

fn build(form: BernsteinForm, depth: u32, cfg: &CertifyConfig) -> Result<CertNode> {
    let status = form.status();
    if cfg.target.accepts(&status) {
        return Ok(leaf(form, status));
    }
    match cfg.strategy {
        Strategy::ElevationOnly => {
            let from = form.degree();
            let mut current = form;
            let mut status = status;
            while !cfg.target.accepts(&status) && current.degree() < cfg.max_degree {
                current = current.elevate(1);
                status = current.status();
            }
            let elevated = current.degree() != from;
            let mut node = leaf(current, status);
            node.elevated_from = elevated.then_some(from);
            Ok(node)
        }
        _ if depth >= cfg.max_depth => Ok(leaf(form, status)),
        strategy => {
            let edge = match strategy {
                Strategy::EdgeBisection => longest_edge(form.simplex()),
                _ => witness_edge(&form),
            };
            let (a, b) = split_edge(form.simplex(), edge.0, edge.1, &cfg.theta)?;
            let (left, right) = rayon::join(
                || reexpress(&form, &a).and_then(|f| build(f, depth + 1, cfg)),
                || reexpress(&form, &b).and_then(|f| build(f, depth + 1, cfg)),
            );
            Ok(CertNode {
                form,
                status,
                elevated_from: None,
                split: Some(SplitRecord {
                    edge,
                    theta: cfg.theta.clone(),
                }),
                children: vec![left?, right?],
            })
        }
    }
}

/// Longest edge by exact squared length; ties go to the first `(i, j)`.
pub fn longest_edge(s: &Simplex) -> (usize, usize) {
    let count = s.vertices().len();
    let mut best = (0, 1);
    let mut best_len = s.edge_length_sq(0, 1);
    for i in 0..count {
        for j in i + 1..count {
            let len = s.edge_length_sq(i, j);
            if len > best_len {
                best = (i, j);
                best_len = len;
            }
        }
    }
    best
}

/// The two coordinate axes carrying the largest entries of the smallest
/// coefficient's index (ties to the lower axis), as an ordered edge.
pub fn witness_edge(form: &BernsteinForm) -> (usize, usize) {
    let (alpha, _) = form.argmin();
    let mut axes: Vec<usize> = (0..alpha.len()).collect();
    axes.sort_by(|&a, &b| alpha.0[b].cmp(&alpha.0[a]).then(a.cmp(&b)));
    let (i, j) = (axes[0], axes[1]);
    (i.min(j), i.max(j))
}

fn frontier(root: &CertNode, target: Target) -> Vec<FrontierLeaf> {
    root.leaves()
        .into_iter()
        .filter(|(_, node)| !target.accepts(&node.status))
        .map(|(path, node)| FrontierLeaf {
            path,
            simplex: node.simplex().clone(),
            degree: node.form.degree(),
            witness: match &node.status {
                CertStatus::Indeterminate { witness } => witness.clone(),
                _ => Vec::new(),
            },
            min_coeff: RationalText(node.form.argmin().1),
        })
        .collect()
}

/// Re-checks a tree from scratch.
///
/// Every node's coefficients are recomputed from the root polynomial with
/// [`restrict_general`] and its status re-derived; the outcome and frontier
/// are rebuilt from the leaves. Returns `Ok(false)` on any disagreement and
/// an error when a node's children are not the split of their parent.
pub fn verify_tree(t: &CertificateTree) -> Result<bool> {
    let p = &t.polynomial;
    let root_simplex = t.root.simplex();
    if p.num_vars() != root_simplex.dim() {
        return Err(Error::MalformedTree(
            "polynomial and root simplex disagree on dimension".into(),
        ));
    }
    let root_system = root_simplex.barycentric_system();
    let mut reference: HashMap<u32, BernsteinForm> = HashMap::new();
    let mut ok = true;
    let mut stack = vec![&t.root];
    while let Some(node) = stack.pop() {
        check_partition(node)?;
        let d = node.form.degree();
        if d < p.degree() {
            return Ok(false);
        }
        let base = match reference.entry(d) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(to_bernstein(p, &root_system, d)?),
        };
        let expected = restrict_general(base, node.simplex())?;
        if expected != node.form || expected.status() != node.status {
            ok = false;
        }
        stack.extend(node.children.iter());
    }
    let rebuilt = frontier(&t.root, t.config.target);
    let outcome = if rebuilt.is_empty() {
        Outcome::Certified
    } else {
        Outcome::Exhausted
    };
    Ok(ok && rebuilt == t.frontier && outcome == t.outcome)
}

fn check_partition(node: &CertNode) -> Result<()> {
    match (&node.split, node.children.as_slice()) {
        (None, []) => Ok(()),
        (None, _) => Err(Error::MalformedTree("children without a split record".into())),
        (Some(rec), [a, b]) => {
            let (ea, eb) = split_edge(node.simplex(), rec.edge.0, rec.edge.1, &rec.theta)
                .map_err(|e| Error::MalformedTree(format!("bad split record: {e}")))?;
            if a.simplex() != &ea || b.simplex() != &eb {
                return Err(Error::MalformedTree(
                    "children do not partition their parent".into(),
                ));
            }
            if a.simplex().volume() + b.simplex().volume() != node.simplex().volume() {
                return Err(Error::MalformedTree("child volumes do not add up".into()));
            }
            Ok(())
        }
        (Some(_), children) => Err(Error::MalformedTree(format!(
            "split node has {} children, expected 2",
            children.len()
        ))),
    }
}

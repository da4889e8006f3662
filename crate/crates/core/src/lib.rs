//! Exact simplicial Bernstein forms and certificates of polynomial
//! positivity.
//!
//! * [`poly`]: sparse multivariate polynomials over the rationals,
//! * [`simplex`]: simplices and barycentric coordinates,
//! * [`bernstein`]: Bernstein bases, conversion, degree elevation, sign
//!   certificates,
//! * [`subdivision`]: coefficient transfer to subsimplices,
//! * [`certifier`]: search for a certificate by subdivision and elevation,
//! * [`counterexample`]: the nonnegative quartic that no subdivision can
//!   certify, with its Gram matrix and a full reproduction report.
//!
//! Everything is exact; there is no floating-point code path.

pub mod bernstein;
pub mod certifier;
pub mod counterexample;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod simplex;
pub mod subdivision;

pub use bernstein::{
    basis_polynomial, multi_indices, to_bernstein, to_bernstein_by_solve, BernsteinForm,
    CertStatus, MultiIndex,
};
pub use certifier::{
    certify, verify_tree, CertNode, CertificateTree, CertifyConfig, FrontierLeaf, Outcome,
    Strategy, Target,
};
pub use error::{Error, Result};
pub use poly::{ExponentVector, Polynomial};
pub use rational::{format_rational, parse_rational, Rational};
pub use simplex::{BarycentricSystem, Simplex};
pub use subdivision::{
    reexpress, restrict_general, split_edge, transfer_combined, transfer_edge_v2,
    transfer_vertex_v1, EdgeSubdivisionParam, SplitRecord, VertexMoveParam,
};

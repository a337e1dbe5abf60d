//! Formal planar power series indexed by reduced planar rooted trees.
//!
//! The crate covers tree combinatorics ([`trees`]), truncated series
//! arithmetic ([`series`]), change of base point ([`rebase`]), planar
//! analytic functions given by germ generators ([`analytic`]), the k-ary
//! planar exponential ([`expfam`]), planar zeta and Gamma germs
//! ([`special`]) and radius-of-convergence estimation ([`radius`]).

pub mod analytic;
pub mod checks;
pub mod error;
pub mod expfam;
pub mod radius;
pub mod rebase;
pub mod scalar;
pub mod series;
pub mod special;
pub mod trees;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar, ScalarKind};
pub use series::TruncatedPlanarSeries;
pub use trees::{LeafSubset, PlanarMonomial};

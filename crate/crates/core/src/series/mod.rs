//! Exact arithmetic foundation: rationals, multivariate polynomials,
//! truncated Laurent series and matrices over both.

pub mod charpoly;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod truncated;

pub use charpoly::{char_poly, eigenvalues, rational_roots, RootSplit};
pub use matrix::{QMatrix, SeriesMatrix};
pub use poly::{vars, Monomial, MultiPoly, Vars};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use truncated::{TruncatedSeries, Var};

//! Gap-probability generating functions at the soft and hard spectrum edges
//! of random matrix theory.
//!
//! The crate evaluates the generating functions `E_beta(J; xi)` for the
//! number of eigenvalues in an interval `J` at the Airy (soft) and Bessel
//! (hard) scaling limits, for the three Dyson symmetry classes
//! `beta = 1, 2, 4`, through two independent routes:
//!
//! * Fredholm determinants of Airy/Bessel-kernel integral operators,
//!   discretized by Nyström quadrature ([`fredholm`]);
//! * Painlevé-transcendent formulas built from endpoint resolvent values
//!   ([`transcendents`]).
//!
//! The [`edgelaws`] module assembles both routes into the `beta = 1, 4`
//! laws and the odd/even decompositions that relate them, and the
//! [`ensembles`] module cross-checks the underlying superposition and
//! decimation identities by finite-`N` Monte Carlo sampling of tridiagonal
//! beta-ensemble models.
//!
//! Grid sweeps and replicate streams are data-parallel. The `parallel`
//! feature (default) runs them on a rayon pool; without it the same entry
//! points run sequentially.

// Comparisons like `!(s > 0.0)` are deliberate: they reject NaN along
// with the out-of-range values, which `s <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
pub mod edgelaws;
pub mod ensembles;
pub mod fredholm;
mod linalg;
pub mod parallel;
pub mod quad;
pub mod specfun;
pub mod suites;
pub mod transcendents;

pub use config::EvalConfig;
pub use edgelaws::{Beta, Edge, GapQuery, GeneratingFunctionValue, Route};
pub use quad::{Domain, QuadratureRule};

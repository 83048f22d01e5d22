//! Exact computation of orbifold Euler characteristics of the moduli spaces
//! of stable curves, together with their refinement by a formal variable
//! counting boundary strata codimension.
//!
//! Everything is computed in exact rational arithmetic along several
//! independent routes that must agree coefficient for coefficient:
//!
//! * [`chi`] — the production recursions (linear add-a-point, quadratic
//!   integral, and a closed genus recursion in the n = 0 column);
//! * [`graph`] — a brute-force sum over isomorphism classes of stable graphs
//!   with automorphism factors, the ground-truth oracle for small types;
//! * [`gk`] — fixed-edge-count generating polynomials computed three ways
//!   (derivation recursion, raising-operator recursion, Wick expansion);
//! * [`closed`] and [`shor`] — closed-form series solutions of the linear
//!   recursion and the tree-polynomial connection;
//! * [`funceq`] — functional equations satisfied by the generating series.
//!
//! The [`verify`] module packages the cross-checks as named suites; the
//! companion CLI exposes them as `verify --suite <name>`.

pub mod chi;
pub mod closed;
mod error;
pub mod expoly;
pub mod funceq;
pub mod gk;
pub mod graph;
pub mod initial;
pub mod kpoly;
pub mod rat;
pub mod series;
pub mod shor;
pub mod verify;
pub mod vpoly;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

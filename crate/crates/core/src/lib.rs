//! Exact mould-calculus corrections for planar polynomial vector fields.
//!
//! A real planar field near a linear center is written in complex form as
//! `X = i(x∂x − y∂y) + Σ_r X_r` with `y = x̄`, and each homogeneous component
//! is decomposed into operators `B_n = x^{n1} y^{n2}(p_n x∂x + q_n y∂y)`.
//! The correction `Carr(X)` vanishes exactly when the field is linearizable,
//! and for real analytic centers linearizability is isochronicity.
//!
//! The crate computes the depth-graded correction terms in exact
//! Gaussian-rational arithmetic by two independent routes (nested brackets
//! with a projection factor, and plain operator composition), decides
//! nonisochronicity up to a bounded depth, and exports the polynomial
//! generators of the isochronous variety.

pub mod alphabet;
pub mod analysis;
pub mod arith;
pub mod constraints;
pub mod correction;
pub mod error;
pub mod io;
pub mod mould;
pub mod operators;
pub mod poly;
pub mod selftest;
pub mod variety;

pub use alphabet::{Letter, Word};
pub use arith::{BigRat, GaussRat};
pub use constraints::{Chart, Component, FieldSpec};
pub use correction::CorrectionTerm;
pub use error::{Error, Result};
pub use poly::{CoeffVar, SymPoly, VarKind};

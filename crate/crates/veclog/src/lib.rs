//! Matrix-vector propositional calculus.
//!
//! Truth values are orthonormal column vectors (`s` for true, `n` for
//! false); connectives are matrices acting through Kronecker products, so a
//! formula evaluation is a chain of matrix-vector products. Feeding the same
//! matrices probabilistic mixtures `αs + (1−α)n` yields a many-valued logic
//! for free, and on top of it a differential and integral calculus of
//! logical operations:
//!
//! - [`matrix`] / [`vector`]: dense matrices, the Kronecker product, the
//!   basis, and the probabilistic vector set Π;
//! - [`gates`]: the eleven named gate matrices built from their
//!   outer-product formulas, plus the operator-level identities;
//! - [`formula`] / [`parser`]: the propositional syntax tree and its
//!   concrete syntax;
//! - [`eval`]: classical binary semantics, matrix-vector semantics, and the
//!   exhaustive truth-table oracle every symbolic result is checked against;
//! - [`derivative`]: Boolean partial, cross, and successive derivatives;
//! - [`integral`]: general antiderivatives and the particular-integral
//!   search by substitution and detachment;
//! - [`analysis`]: the tautology hierarchy, sensitivity reports, and
//!   probabilistic bound scans.
//!
//! The crate is `no_std` (with `alloc`); all types are immutable after
//! construction and all operations are pure.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod derivative;
pub mod eval;
pub mod formula;
pub mod gates;
pub mod integral;
pub mod matrix;
pub mod parser;
pub mod vector;

/// Tolerance for structurally exact identities (all gate entries are 0/1,
/// so error enters only through weight arithmetic).
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance for accumulated probabilistic arithmetic.
pub const NUMERIC_TOL: f64 = 1e-9;

pub use derivative::{cross_diff, diff, diff_numeric, second_diff_numeric, Derivative};
pub use eval::{
    equivalent, eval_binary, eval_scalar, eval_vector, is_tautology, truth_table, Assignment,
    TruthTable,
};
pub use formula::{BinOp, Formula, VariableSet};
pub use gates::{build_gate, check_identity, Gate, GateIdentity};
pub use integral::{general_integral, particular_integral_search, verify_integral, IntegralVersion};
pub use matrix::Mat;
pub use parser::{parse, ParseError};
pub use vector::{scalar_project, vec_eq, Basis, LogicMatrix, TruthVector};

//! Solver for systems of Boolean equations over `{0,1}` by orthonormal
//! expansion.
//!
//! A system `f_i(X) = g_i(X)` is split along an orthonormal set of terms into
//! independent subsystems, each searched only on the support of its term.
//! The same machinery drives a generalized DPLL procedure for CNF and a
//! front-end for polynomial equations over `GF(2^k)`.
//!
//! Modules:
//! - [`boolalg`]: functions, assignments, zero sets, dual and cofactor.
//! - [`onset`]: orthonormal sets of functions and terms.
//! - [`expansion`]: expansion coefficients and consistency conditions.
//! - [`solver`]: the decomposition engine for general systems.
//! - [`cnf`]: DIMACS I/O and the CNF driver.
//! - [`gf2k`]: binary-field arithmetic and elliptic-curve enumeration.

pub mod boolalg;
pub mod cnf;
pub mod error;
pub mod expansion;
pub mod gf2k;
pub mod identities;
pub mod onset;
pub mod random;
pub mod solver;

pub use boolalg::{Assignment, BoolFunc, PartialAssignment, Polarity, Symbols, Term, VarId};
pub use error::{Error, OnViolation, Result};
pub use onset::OnSet;
pub use solver::{BoolSystem, Equation, Mode, Solution, SolveOutcome, SolverConfig, Status};

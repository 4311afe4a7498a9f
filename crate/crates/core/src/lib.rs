//! Finite-model workbench for footprints of local functions on separation
//! algebras.
//!
//! - [`algebra`]: finite separation algebras, law validation, order structure.
//! - [`local`]: outcomes, local functions, program combinators, footprints.
//! - [`spec`]: specifications, best local actions, bases, small specifications.
//! - [`models`]: heap models and integers modulo `n`, with primitive commands.
//! - [`program`]: program expressions.
//! - [`proof`]: inference rules and derivation checking.

pub mod algebra;
pub mod local;
pub mod models;
pub mod program;
pub mod proof;
pub mod spec;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use algebra::{
    validate, AlgebraError, CompositionTable, ElementId, Law, Predicate, SeparationAlgebra, TableError,
    ValidationReport, Violation, DEFAULT_MAX_ELEMENTS,
};
pub use local::{LocalError, LocalFunction, LocalityCheck, Outcome};
pub use models::{Command, HeapState, Model, ModelConfig, ModelError, ModelKind};
pub use program::{parse_program, ParseError, Program};
pub use proof::{check_derivation, derive_via_bla, Derivation, DerivationDoc, DerivationError, Rule};
pub use spec::{SmallSpecResult, Specification, Statement, StatementDoc};

//! Analysis toolkit for first-order logic programs under the stable model
//! semantics.
//!
//! The crate is organized as a pipeline over a shared syntax core:
//!
//! * [`syntax`]: terms, formulas, rules, programs, and the structural
//!   transformations (rectification, normal form, completion, grounding).
//! * [`parse`]: the concrete input language for programs, formulas, and
//!   interpretation files.
//! * [`analysis`]: predicate and atom dependency machinery, first-order
//!   loops, and the syntactic finiteness conditions.
//! * [`generate`]: external-support and loop-formula construction, selectable
//!   per strategy, plus the theorem pipelines that bundle them.
//! * [`oracle`]: finite-model evaluation, stable-model checking and
//!   enumeration, and graph analysis relative to an interpretation.
//! * [`tptp`]: first-order prover output and result parsing.

pub mod analysis;
pub mod generate;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod syntax;
pub mod tptp;

//! Bottom-up evaluation and verification for propositional LO and LO1
//! linear logic programs.
//!
//! * [`multiset`]: facts and their algebra.
//! * [`syntax`]: program and goal syntax, parser and printer.
//! * [`ground`]: brute-force ground semantics over bounded fact sets.
//! * [`symbolic`]: antichain-based saturation for LO (always terminates).
//! * [`constraint`]: counting-constraint saturation for LO1 (semi-decision).
//! * [`prover`]: goal-directed sequent prover with a proof checker.
//! * [`dlp`]: disjunctive logic programs and the set abstraction of LO.
//! * [`petri`]: Petri nets, their encoding, and coverability.

pub mod constraint;
pub mod dlp;
pub mod error;
pub mod ground;
pub mod multiset;
pub mod petri;
pub mod prover;
pub mod symbolic;
pub mod syntax;

pub use error::{DialectError, ParseError, ParseErrorKind, PetriError, SignatureError, TranslateError};
pub use multiset::{Fact, Signature};
pub use syntax::{parse_goal, parse_program, Clause, Context, Dialect, Goal, Program};

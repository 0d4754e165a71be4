//! Classical and four-valued semantics for tetralemma tuples.
//!
//! - [`formula`]: propositional syntax, parsing and rendering.
//! - [`semantics`]: valuations and exhaustive decision procedures.
//! - [`koti`]: tuple constructions, quadrant partitions and tuple-level checks.
//! - [`many_valued`]: the pairing semantics and its comparison with FDE and B4.
//! - [`predicate`]: monadic predicate formulas over finite models.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod koti;
mod lexer;
pub mod many_valued;
pub mod predicate;
pub mod semantics;

pub use error::{Error, Result};
pub use formula::{parse, Formula, SentenceLetter};
pub use semantics::{Checker, SemanticStatus, Valuation, Verdict};

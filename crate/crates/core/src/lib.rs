//! Boolean operator fragments of the description logic ALC.
//!
//! The crate is organised bottom-up:
//!
//! - [`boolfun`]: truth tables, clone closure and identification in Post's lattice.
//! - [`syntax`]: concepts, axioms, problem instances, the text format and finite semantics.
//! - [`transforms`]: satisfiability-preserving rewrites between fragments.
//! - [`classifier`]: complexity verdicts for (problem, quantifiers, operators).
//! - [`solvers`]: decision procedures and a dispatcher with cross-checking.
//! - [`generators`]: hardness constructions and random instances.

pub mod boolfun;
pub mod classifier;
pub mod error;
pub mod generators;
pub mod limits;
pub mod solvers;
pub mod syntax;
pub mod transforms;

pub use error::{Error, Result};

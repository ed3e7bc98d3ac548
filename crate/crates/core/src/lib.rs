//! Incomplete abstract and structured argumentation.
//!
//! Abstract frameworks and their semantics, argument-incomplete frameworks
//! with dependencies, ASPIC+ theories with uncertain rules or premises,
//! translations between these formalisms and completion-set equivalence.

pub mod af;
pub mod aspic;
pub mod config;
pub mod document;
pub mod dot;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod incomplete;
pub mod isaf;
pub mod text;
pub mod translate;

pub use config::Bounds;
pub use error::{Error, Result};

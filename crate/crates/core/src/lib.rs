//! Cyclic string rewriting over monoid presentations.

pub mod analysis;
pub mod cli;
pub mod completion;
pub mod conjugacy;
pub mod cyclic;
pub mod error;
pub mod format;
pub mod rewriting;
pub mod words;

pub use error::{Error, Result};
pub use rewriting::{RewritingSystem, Rule, RuleId, Semantics};
pub use words::{Alphabet, Symbol, Word};

//! Exact computations with finite presentations of linear and DG categories carrying
//! finite group actions: equivariant objects, (co)monads of adjunctions and their comparison
//! functors, idempotent completion, dual-group reversion, and twisted complexes.

pub mod action;
pub mod cli;
pub mod descent;
pub mod dg;
pub mod equivar;
pub mod error;
pub mod field;
pub mod group;
pub mod instances;
pub mod karoubi;
pub mod lincat;
pub mod matrix;
pub mod monadic;
pub mod reversion;
pub mod search;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use search::{Budget, Search};

//! Finite linear categories, their additive envelopes, and functors between them.

pub mod category;
pub mod envelope;
pub mod equivalence;
pub mod functor;
pub mod presentation;

pub use category::{find_iso, materialize, Category, Iso, Materialized};
pub use envelope::{combination, Envelope, Mor, Obj};
pub use functor::{Component, Functor};
pub use presentation::{Presentation, SparseVec, ValidationReport, Violation};

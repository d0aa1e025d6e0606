//! DG categories, twisted complexes, equivariant DG objects and the homotopy-level
//! constructions built from them.

pub mod equivariant;
pub mod graded;
pub mod homotopy;
pub mod presentation;
pub mod twisted;

pub use presentation::{cohomology_of, Cohomology, DgPresentation, DgReport, DgViolation, H0};
pub use twisted::{HomLayout, Pretr, TwistedComplex};
pub use equivariant::{DgAction, DgEquivariant, EquivariantPresentation, EquivariantPretr};
pub use homotopy::{EquivariantHomotopy, HomotopyCategory, HomotopyComparison};
pub use graded::{Construction, GradedSwap, ParityReport};

//! Exact computations for basic finite-dimensional algebras with a
//! semi-simple grading: normal-form bases, graded modules, minimal graded
//! projective resolutions, graded and ungraded Ext, Cartan matrices, Smith
//! normal forms and K₀ of the perfect, bounded and singularity categories.
//!
//! Everything is exact. Scalars live in ℚ or a prime field.

pub mod algebra;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod ktheory;
pub mod lemma;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod ungraded;

pub use algebra::{validate_grading, GradedAlgebra, GradingReport, Presentation};
pub use error::{Error, Result};
pub use field::{Field, Scalar};

//! Exact computations with finite A∞ categories: bar constructions and
//! their duals, Hochschild and cyclic complexes, the double Poisson bracket
//! on dual bar algebras and the Lie bracket it induces on cyclic cochains.

pub mod ainfty;
pub mod bar;
pub mod catalog;
pub mod error;
pub mod graded;
pub mod hochschild;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod poisson;
pub mod report;

pub use ainfty::{Category, CategoryData, SignConvention};
pub use error::Error;
pub use graded::{LinComb, Scalar, Word};
pub use report::{CheckOutcome, ValidationReport, Violation};

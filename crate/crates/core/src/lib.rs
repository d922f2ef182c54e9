//! Exact Chevalley-Eilenberg cohomology, hard Lefschetz and `dd^Λ`-lemma
//! checks for symplectic Lie algebras, with almost-Kähler and parametric
//! extensions.

pub mod almostkaehler;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod liealgebra;
pub mod linalg;
pub mod parametric;
pub mod poly;
pub mod scalar;
pub mod symplectic;

pub use error::{Error, Result};
pub use exterior::Form;
pub use liealgebra::{catalog_get, LieAlgebra};
pub use poly::Poly;
pub use scalar::Scalar;

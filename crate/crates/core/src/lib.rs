//! Graded modules over `Q[x0, ..., xn]`, bounded complexes of them, and the
//! sheaf-level computations on projective space built on top: generators,
//! the cotangent sheaf, sheaf Hom, Čech cohomology, Atiyah classes and the
//! gauge-field counting pipeline.

pub mod cech;
pub mod complex;
pub mod error;
pub mod gauge;
pub mod homcomplex;
pub mod module;
pub mod projective;
pub mod resolution;
pub mod saturation;
pub mod triangle;

pub use error::{CoreError, Result};

//! Exact commutative algebra over the rationals for graded polynomial rings
//! `Q[x0, ..., xn]`: polynomial arithmetic, the textual polynomial syntax,
//! homogeneous matrices, Buchberger's algorithm for ideals and submodules of
//! free modules, syzygies, and dense rational linear algebra.

pub mod error;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod syzygy;

pub use error::AlgebraError;
pub use groebner::{buchberger, normal_form, ModuleOrder};
pub use linalg::DenseMatrix;
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::ParseError;
pub use poly::{Polynomial, Rational};
pub use syzygy::{minimal_columns, syzygy_basis, Lifter, ModuleBasis};

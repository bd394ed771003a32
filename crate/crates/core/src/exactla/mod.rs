//! Exact linear algebra over ℚ and ℚ(i).

pub mod linsys;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use linsys::{flatten, ParamBlock, ParamLayout, Restriction};
pub use matrix::Matrix;
pub use scalar::{Field, Gaussian, Rational};
pub use subspace::{Echelon, Quotient, Subspace};

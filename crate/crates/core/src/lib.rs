pub mod error;
pub mod exactla;
pub mod filtered;
pub mod format;
pub mod diagrams;
pub mod hodge;
pub mod homotopy;
pub mod random;

pub use error::{Error, Result};
pub use exactla::{Field, Gaussian, Matrix, Rational, Subspace};

pub type QMatrix = Matrix<Rational>;
pub type CMatrix = Matrix<Gaussian>;
pub type QSubspace = Subspace<Rational>;
pub type CSubspace = Subspace<Gaussian>;

//! Dense complex matrices and a Hermitian eigensolver, sized for the
//! single-sink matrix models (dimension = number of paths to the sink).

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, min_eigenvalue, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;

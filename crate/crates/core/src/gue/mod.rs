//! Gaussian Unitary Ensemble with the scale `a = 1/(2N)`: diagonal entries
//! `N(0, N)`, off-diagonal real and imaginary parts `N(0, N/2)`.

mod eigen;
mod kernel;
mod matrix;
mod minors;

pub use eigen::{eigen_decompose, eigenvalues, tridiagonalize, EigenDecomposition, MAX_QL_ITERATIONS};
pub use kernel::{
    finite_rank_kernel, gue_kernel, largest_eigenvalue_cdf, quadrature_window, rescale_spectrum, semicircle_density,
    MAX_CDF_SIZE,
};
pub use matrix::{sample_gue, HermitianMatrix, Spectrum};
pub use minors::{minor_eigenvalues, minors_kernel, minors_phi, minors_psi, minors_shift, MinorArray, MinorsKernel};

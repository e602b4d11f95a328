//! Dense complex linear algebra generic over double and multiprecision reals.

pub mod eigh;
pub mod expm;
pub mod jacobi;
pub mod matrix;
pub mod scalar;

pub use eigh::{eigh, hermitian_function, matrix_log_pd, HermitianEigen};
pub use expm::{matrix_exp, matrix_exp_bounded, matrix_exp_series, DEFAULT_MAX_NORM};
pub use matrix::{CMat, CMat64};
pub use scalar::{mp_precision, with_mp_precision, Cx, Mp, Real};
pub use jacobi::{jacobi_diagonalize, jacobi_diagonalize_image, root_scale, JacobiOptions, JacobiResult, Rotation};

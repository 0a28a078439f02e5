//! Dense complex matrices and the linear algebra needed for quantum
//! entropies: a cyclic Jacobi eigensolver for Hermitian matrices, tensor
//! products, partial traces, unitary conjugation, and seeded random density
//! matrices and Haar unitaries.

mod density;
mod eigen;
mod matrix;
mod random;

pub use density::{
    conjugate_by_unitary, partial_trace, tensor, BipartiteDims, DensityMatrix, Subsystem,
    TripartiteDims,
};
pub use eigen::{hermitian_spectrum, Spectrum};
pub use matrix::ComplexMatrix;
pub use random::{random_density, random_unitary};

pub(crate) use random::{sample_density, sample_ginibre, sample_pure_state, sample_unitary};

/// Max entrywise deviation from `M = M^dag` accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Max deviation of the trace from 1 accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues above `-PSD_TOL` count as nonnegative; anything in
/// `[-PSD_TOL, 0)` is clipped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Max entrywise deviation of `U^dag U` from the identity accepted as
/// unitary.
pub const UNITARY_TOL: f64 = 1e-9;
/// The eigensolver stops once the off-diagonal Frobenius norm falls below
/// this, scaled by the matrix norm (with a floor of 1 for small matrices).
pub const EIGEN_OFF_TOL: f64 = 1e-14;
/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const EIGEN_MAX_SWEEPS: usize = 100;

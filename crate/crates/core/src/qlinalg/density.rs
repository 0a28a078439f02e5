use num_complex::Complex64;

use super::eigen::{hermitian_spectrum, Spectrum};
use super::matrix::ComplexMatrix;
use super::{HERMITICITY_TOL, PSD_TOL, TRACE_TOL, UNITARY_TOL};
use crate::error::{Error, Result};
use crate::probdist::Distribution;

/// Dimensions of a bipartite system `A (x) B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidConfig(
                "subsystem dimensions must be at least 1".into(),
            ));
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn total(self) -> usize {
        self.dim_a * self.dim_b
    }
}

/// Dimensions of a tripartite system `A (x) B (x) C`, with helpers for the
/// two bipartite groupings used when peeling off one subsystem at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
}

impl TripartiteDims {
    pub fn new(dim_a: usize, dim_b: usize, dim_c: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_c == 0 {
            return Err(Error::InvalidConfig(
                "subsystem dimensions must be at least 1".into(),
            ));
        }
        Ok(Self {
            dim_a,
            dim_b,
            dim_c,
        })
    }

    pub fn total(self) -> usize {
        self.dim_a * self.dim_b * self.dim_c
    }

    /// View the system as `(A B) (x) C`.
    pub fn ab_c(self) -> BipartiteDims {
        BipartiteDims {
            dim_a: self.dim_a * self.dim_b,
            dim_b: self.dim_c,
        }
    }

    /// View the system as `A (x) (B C)`.
    pub fn a_bc(self) -> BipartiteDims {
        BipartiteDims {
            dim_a: self.dim_a,
            dim_b: self.dim_b * self.dim_c,
        }
    }
}

/// Which half of a bipartite system to keep when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A density matrix: Hermitian, unit trace, positive semidefinite — each
/// within the module tolerances. The eigendecomposition is computed at
/// construction; eigenvalues in `[-PSD_TOL, 0)` are clipped to zero and the
/// spectrum renormalized to sum exactly to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        let spectrum = hermitian_spectrum(&matrix)?;
        let min_eigenvalue = *spectrum
            .eigenvalues()
            .last()
            .expect("density matrix has dimension at least 1");
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        let clipped: Vec<f64> = spectrum
            .eigenvalues()
            .iter()
            .map(|ev| ev.max(0.0))
            .collect();
        let sum: f64 = clipped.iter().sum();
        let eigenvalues = clipped.into_iter().map(|ev| ev / sum).collect();
        let spectrum = Spectrum::from_parts(eigenvalues, spectrum.eigenvectors().clone());
        Ok(Self { matrix, spectrum })
    }

    /// The rank-one projector onto a state vector; the vector is normalized
    /// here, so any nonzero amplitude list works.
    pub fn pure(state: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::ZeroStateVector);
        }
        let n = state.len();
        let m = ComplexMatrix::from_fn(n, n, |i, j| state[i] * state[j].conj() / norm_sq);
        Self::new(m)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        Self::new(ComplexMatrix::diagonal(&vec![1.0 / dim as f64; dim]))
    }

    /// Embeds a classical distribution as a diagonal density matrix.
    pub fn from_classical(dist: &Distribution) -> Self {
        Self::new(ComplexMatrix::diagonal(dist.probs()))
            .expect("diagonal matrix of probabilities is a valid state")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Clipped, renormalized eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }
}

/// Tensor product of two states, revalidated as a density matrix.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(a.matrix().kron(b.matrix()))
}

/// Traces out one subsystem of a bipartite state.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: BipartiteDims,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    if dims.total() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            got: rho.dim(),
        });
    }
    let (da, db) = (dims.dim_a, dims.dim_b);
    let m = rho.matrix();
    let reduced = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i1, i2| {
            (0..db).map(|j| m[(i1 * db + j, i2 * db + j)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |j1, j2| {
            (0..da).map(|i| m[(i * db + j1, i * db + j2)]).sum()
        }),
    };
    DensityMatrix::new(reduced)
}

/// `U rho U^dag` for a unitary `U`, revalidated as a density matrix.
pub fn conjugate_by_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if !u.is_square() || u.rows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: u.rows(),
        });
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    DensityMatrix::new(u.mul(rho.matrix()).mul(&u.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_state_keeps_its_eigenvalues() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[0.7, 0.3])).unwrap();
        assert_eq!(rho.eigenvalues(), &[0.7, 0.3]);
    }

    #[test]
    fn validation_rejects_bad_states() {
        let skew = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::diagonal(&[0.7, 0.7])),
            Err(Error::InvalidTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::diagonal(&[1.5, -0.5])),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clipped_to_zero() {
        let eps = 5e-11;
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[1.0 + eps, -eps])).unwrap();
        assert_eq!(rho.eigenvalues()[1], 0.0);
        assert_eq!(rho.eigenvalues()[0], 1.0);
    }

    #[test]
    fn pure_state_is_rank_one() {
        let plus = [c(1.0, 0.0), c(1.0, 0.0)]; // normalized internally
        let rho = DensityMatrix::pure(&plus).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.eigenvalues()[0], 1.0, epsilon = 1e-12);
        assert!(rho.eigenvalues()[1].abs() < 1e-12);
        assert!(matches!(
            DensityMatrix::pure(&[Complex64::ZERO]),
            Err(Error::ZeroStateVector)
        ));
    }

    #[test]
    fn bell_state_marginal_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)];
        let rho = DensityMatrix::pure(&bell).unwrap();
        let dims = BipartiteDims::new(2, 2).unwrap();
        for keep in [Subsystem::A, Subsystem::B] {
            let reduced = partial_trace(&rho, dims, keep).unwrap();
            assert_abs_diff_eq!(reduced.eigenvalues()[0], 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(reduced.eigenvalues()[1], 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_recovers_the_factor() {
        let a = DensityMatrix::new(ComplexMatrix::diagonal(&[0.9, 0.1])).unwrap();
        let b = DensityMatrix::pure(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let dims = BipartiteDims::new(2, 2).unwrap();
        let got_a = partial_trace(&ab, dims, Subsystem::A).unwrap();
        let got_b = partial_trace(&ab, dims, Subsystem::B).unwrap();
        assert!(got_a.matrix().max_abs_diff(a.matrix()) < 1e-12);
        assert!(got_b.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_checks_dimensions() {
        let rho = DensityMatrix::maximally_mixed(6).unwrap();
        let dims = BipartiteDims::new(2, 2).unwrap();
        assert!(matches!(
            partial_trace(&rho, dims, Subsystem::A),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 6
            })
        ));
    }

    #[test]
    fn conjugation_preserves_the_spectrum() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = ComplexMatrix::from_rows(vec![
            vec![c(inv, 0.0), c(inv, 0.0)],
            vec![c(inv, 0.0), c(-inv, 0.0)],
        ])
        .unwrap();
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[0.7, 0.3])).unwrap();
        let rotated = conjugate_by_unitary(&rho, &hadamard).unwrap();
        assert_abs_diff_eq!(rotated.eigenvalues()[0], 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(rotated.eigenvalues()[1], 0.3, epsilon = 1e-12);

        let not_unitary = hadamard.scaled(2.0);
        assert!(matches!(
            conjugate_by_unitary(&rho, &not_unitary),
            Err(Error::NotUnitary { .. })
        ));
        let wrong_dim = ComplexMatrix::identity(3);
        assert!(matches!(
            conjugate_by_unitary(&rho, &wrong_dim),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tripartite_groupings() {
        let dims = TripartiteDims::new(2, 3, 4).unwrap();
        assert_eq!(dims.total(), 24);
        assert_eq!(dims.ab_c(), BipartiteDims { dim_a: 6, dim_b: 4 });
        assert_eq!(
            dims.a_bc(),
            BipartiteDims {
                dim_a: 2,
                dim_b: 12
            }
        );
        assert!(TripartiteDims::new(2, 0, 2).is_err());
    }

    #[test]
    fn classical_embedding_is_diagonal() {
        let d = Distribution::new(vec![0.2, 0.8]).unwrap();
        let rho = DensityMatrix::from_classical(&d);
        assert_eq!(rho.matrix()[(0, 0)].re, 0.2);
        assert_eq!(rho.matrix()[(0, 1)], Complex64::ZERO);
        assert_eq!(rho.eigenvalues(), &[0.8, 0.2]);
    }
}

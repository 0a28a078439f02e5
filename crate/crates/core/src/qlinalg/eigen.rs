use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::{EIGEN_MAX_SWEEPS, EIGEN_OFF_TOL, HERMITICITY_TOL};
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted in
/// descending order, with the matching orthonormal eigenvectors as the
/// columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// The k-th eigenvector as a column vector.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub(crate) fn from_parts(eigenvalues: Vec<f64>, eigenvectors: ComplexMatrix) -> Self {
        Self {
            eigenvalues,
            eigenvectors,
        }
    }
}

/// Squared Frobenius norm of the strictly off-diagonal part.
fn off_diag_sq(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// The input must be square and Hermitian within [`HERMITICITY_TOL`]; it is
/// symmetrized once up front so the iteration works on an exactly Hermitian
/// matrix. Rotations sweep the upper triangle until the off-diagonal
/// Frobenius norm drops below [`EIGEN_OFF_TOL`] (relative to the matrix
/// norm, floored at 1), or fail after [`EIGEN_MAX_SWEEPS`] sweeps.
pub fn hermitian_spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    // Exact symmetrization removes the sub-tolerance asymmetry.
    let mut a = m.add(&m.adjoint()).scaled(0.5);
    let mut vecs = ComplexMatrix::identity(n);

    if n > 1 {
        let threshold = EIGEN_OFF_TOL * a.frobenius_norm().max(1.0);
        let threshold_sq = threshold * threshold;
        let mut converged = off_diag_sq(&a) <= threshold_sq;
        let mut sweeps = 0;
        while !converged {
            if sweeps == EIGEN_MAX_SWEEPS {
                return Err(Error::EigenNoConvergence {
                    sweeps: EIGEN_MAX_SWEEPS,
                });
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut vecs, p, q);
                }
            }
            sweeps += 1;
            converged = off_diag_sq(&a) <= threshold_sq;
        }
    }

    // Diagonal entries are real up to rotation roundoff; sort descending,
    // keeping the original order on ties so the output is deterministic.
    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&i| raw[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| vecs[(i, order[j])]);
    Ok(Spectrum::from_parts(eigenvalues, eigenvectors))
}

/// One Jacobi rotation annihilating the (p, q) entry: `A <- V^dag A V` with
/// the accumulated eigenvector matrix updated as `E <- E V`. The 2x2 core
/// of `V` is `[[c, -s e^{i phi}], [s e^{-i phi}, c]]` where `phi` is the
/// phase of `a_pq`.
fn rotate(a: &mut ComplexMatrix, vecs: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let theta = (a[(p, p)].re - a[(q, q)].re) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = s * phase; // s e^{i phi}
    let spc = s * phase.conj(); // s e^{-i phi}

    let n = a.rows();
    // Column update (A <- A V).
    for j in 0..n {
        let ajp = a[(j, p)];
        let ajq = a[(j, q)];
        a[(j, p)] = c * ajp + spc * ajq;
        a[(j, q)] = -sp * ajp + c * ajq;
    }
    // Row update (A <- V^dag A).
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = c * apj + sp * aqj;
        a[(q, j)] = -spc * apj + c * aqj;
    }
    // The rotation zeroes these analytically; store the exact zero rather
    // than the leftover roundoff.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;

    for j in 0..n {
        let ejp = vecs[(j, p)];
        let ejq = vecs[(j, q)];
        vecs[(j, p)] = c * ejp + spc * ejq;
        vecs[(j, q)] = -sp * ejp + c * ejq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruct(spec: &Spectrum) -> ComplexMatrix {
        let v = spec.eigenvectors();
        v.mul(&ComplexMatrix::diagonal(spec.eigenvalues()))
            .mul(&v.adjoint())
    }

    #[test]
    fn real_symmetric_two_by_two() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let spec = hermitian_spectrum(&m).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues()[0], 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 1.0, epsilon = 1e-13);
        assert!(reconstruct(&spec).max_abs_diff(&m) < 1e-12);
        assert!(spec.eigenvectors().unitarity_deviation() < 1e-13);
    }

    #[test]
    fn complex_hermitian_pair() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let spec = hermitian_spectrum(&m).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues()[0], 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 0.0, epsilon = 1e-13);
        assert!(reconstruct(&spec).max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn diagonal_input_passes_through_sorted() {
        let m = ComplexMatrix::diagonal(&[3.0, 1.0, 2.0]);
        let spec = hermitian_spectrum(&m).unwrap();
        assert_eq!(spec.eigenvalues(), &[3.0, 2.0, 1.0]);
        // One rotation-free pass: eigenvectors are permutation columns.
        assert_eq!(spec.eigenvectors()[(0, 0)], Complex64::ONE);
        assert_eq!(spec.eigenvectors()[(2, 1)], Complex64::ONE);
        assert_eq!(spec.eigenvectors()[(1, 2)], Complex64::ONE);
    }

    #[test]
    fn dense_hermitian_reconstructs() {
        let n = 5;
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            let (fi, fj) = (i as f64, j as f64);
            c(1.0 / (1.0 + fi + fj), 0.1 * (fi - fj))
        });
        assert_eq!(m.hermiticity_deviation(), 0.0);
        let spec = hermitian_spectrum(&m).unwrap();
        assert!(reconstruct(&spec).max_abs_diff(&m) < 1e-12);
        assert!(spec.eigenvectors().unitarity_deviation() < 1e-12);
        for w in spec.eigenvalues().windows(2) {
            assert!(w[0] >= w[1]);
        }
        // Trace is preserved by similarity.
        assert_abs_diff_eq!(
            spec.eigenvalues().iter().sum::<f64>(),
            m.trace().re,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let skew = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            hermitian_spectrum(&skew),
            Err(Error::NotHermitian { .. })
        ));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_spectrum(&rect),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn degenerate_spectrum_is_handled() {
        let m = ComplexMatrix::identity(4).scaled(0.25);
        let spec = hermitian_spectrum(&m).unwrap();
        for &ev in spec.eigenvalues() {
            assert_eq!(ev, 0.25);
        }
        assert_eq!(spec.eigenvectors(), &ComplexMatrix::identity(4));
    }
}

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// A matrix of independent standard complex Gaussians (real and imaginary
/// parts each N(0, 1)).
pub(crate) fn sample_ginibre<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("sampled data length matches shape")
}

/// A normalized state vector with Gaussian amplitudes (Haar-uniform on the
/// unit sphere).
pub(crate) fn sample_pure_state<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let g = sample_ginibre(rng, dim, 1);
    let norm = g.frobenius_norm();
    g.data().iter().map(|z| z / norm).collect()
}

pub(crate) fn sample_density<R: Rng>(rng: &mut R, dim: usize, rank: usize) -> DensityMatrix {
    let g = sample_ginibre(rng, dim, rank);
    let w = g.mul(&g.adjoint());
    let trace = w.trace().re;
    DensityMatrix::new(w.scaled(1.0 / trace)).expect("normalized Wishart matrix is a valid state")
}

pub(crate) fn sample_unitary<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = sample_ginibre(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        // Modified Gram-Schmidt with a second pass; the repeat keeps the
        // result orthonormal to machine precision even for nearly aligned
        // columns.
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qi = &done[i];
                let vj = &mut rest[0];
                let proj: Complex64 = qi.iter().zip(vj.iter()).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in vj.iter_mut().zip(qi) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // Dividing by the positive norm fixes the phase convention that
        // makes the resulting distribution Haar.
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// A seeded random density matrix of the given dimension and rank, built as
/// `G G^dag / tr(G G^dag)` from a `dim x rank` complex Gaussian `G`.
///
/// The same seed always yields the same state, bit for bit.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_density(&mut rng, dim, rank))
}

/// A seeded Haar-random unitary: a complex Gaussian matrix orthonormalized
/// column by column.
pub fn random_unitary(dim: usize, seed: u64) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_unitary(&mut rng, dim))
}

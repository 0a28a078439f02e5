//! Seeded random inputs for the check suites: simplex-uniform
//! distributions, joints, Markov chains, ensembles, and POVMs. Every
//! public generator takes an explicit seed and is reproducible bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::probdist::{Distribution, Joint2, Joint3, MarkovChain3};
use crate::qentropy::{Ensemble, Povm};
use crate::qlinalg::{hermitian_spectrum, ComplexMatrix};
use crate::qlinalg::{sample_density, sample_ginibre};

/// Exponential weights normalized to the simplex: uniform over all
/// distributions on `n` outcomes.
pub(crate) fn sample_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let sum: f64 = w.iter().sum();
    for x in &mut w {
        *x /= sum;
    }
    w
}

pub(crate) fn sample_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    Distribution::new(sample_simplex(rng, n)).expect("normalized weights form a distribution")
}

pub(crate) fn sample_joint2<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Joint2 {
    Joint2::new(rows, cols, sample_simplex(rng, rows * cols))
        .expect("normalized weights form a joint")
}

pub(crate) fn sample_joint3<R: Rng>(rng: &mut R, da: usize, db: usize, dc: usize) -> Joint3 {
    Joint3::new(da, db, dc, sample_simplex(rng, da * db * dc))
        .expect("normalized weights form a joint")
}

/// An independent product `p(a) q(b)` laid out as a joint.
pub(crate) fn sample_product_joint<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Joint2 {
    let p = sample_simplex(rng, rows);
    let q = sample_simplex(rng, cols);
    let cells = p
        .iter()
        .flat_map(|&pi| q.iter().map(move |&qj| pi * qj))
        .collect();
    Joint2::new(rows, cols, cells).expect("product of distributions is a joint")
}

pub(crate) fn sample_markov<R: Rng>(rng: &mut R, na: usize, nb: usize, nc: usize) -> MarkovChain3 {
    let source = sample_distribution(rng, na);
    let trans_ab = (0..na).map(|_| sample_distribution(rng, nb)).collect();
    let trans_bc = (0..nb).map(|_| sample_distribution(rng, nc)).collect();
    MarkovChain3::new(source, trans_ab, trans_bc).expect("row counts match by construction")
}

pub(crate) fn sample_ensemble<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Ensemble {
    sample_ensemble_ranked(rng, dim, count, dim)
}

pub(crate) fn sample_ensemble_ranked<R: Rng>(
    rng: &mut R,
    dim: usize,
    count: usize,
    max_rank: usize,
) -> Ensemble {
    let probs = sample_distribution(rng, count);
    let states = (0..count)
        .map(|_| {
            let rank = rng.gen_range(1..=max_rank);
            sample_density(rng, dim, rank)
        })
        .collect();
    Ensemble::new(probs, states).expect("sampled states share a dimension")
}

/// A random POVM: PSD blocks `A_j = G_j G_j^dag` whitened by the inverse
/// square root of their sum, so the elements add to the identity.
pub(crate) fn sample_povm<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Povm {
    let blocks: Vec<ComplexMatrix> = (0..count)
        .map(|_| {
            let g = sample_ginibre(rng, dim, dim);
            g.mul(&g.adjoint())
        })
        .collect();
    let mut total = ComplexMatrix::zeros(dim, dim);
    for b in &blocks {
        total = total.add(b);
    }
    let spec = hermitian_spectrum(&total).expect("sum of PSD blocks is Hermitian");
    let inv_roots: Vec<f64> = spec.eigenvalues().iter().map(|&m| 1.0 / m.sqrt()).collect();
    let v = spec.eigenvectors();
    let whitener = v
        .mul(&ComplexMatrix::diagonal(&inv_roots))
        .mul(&v.adjoint());
    let elements = blocks
        .iter()
        .map(|b| whitener.mul(b).mul(&whitener))
        .collect();
    Povm::new(elements).expect("whitened blocks form a POVM")
}

/// A seeded distribution uniform on the `n`-outcome simplex.
pub fn random_distribution(n: usize, seed: u64) -> Result<Distribution> {
    if n == 0 {
        return Err(Error::EmptyDistribution);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_distribution(&mut rng, n))
}

/// A random joint over two or three axes, depending on how many dimensions
/// are given.
#[derive(Debug, Clone, PartialEq)]
pub enum RandomJoint {
    Two(Joint2),
    Three(Joint3),
}

pub fn random_joint(dims: &[usize], seed: u64) -> Result<RandomJoint> {
    if dims.contains(&0) {
        return Err(Error::EmptyDistribution);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *dims {
        [rows, cols] => Ok(RandomJoint::Two(sample_joint2(&mut rng, rows, cols))),
        [da, db, dc] => Ok(RandomJoint::Three(sample_joint3(&mut rng, da, db, dc))),
        _ => Err(Error::UnsupportedArity { arity: dims.len() }),
    }
}

/// A seeded Markov chain with uniform-simplex source and transition rows.
pub fn random_markov_chain(dims: (usize, usize, usize), seed: u64) -> Result<MarkovChain3> {
    let (na, nb, nc) = dims;
    if na == 0 || nb == 0 || nc == 0 {
        return Err(Error::EmptyDistribution);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_markov(&mut rng, na, nb, nc))
}

/// A seeded ensemble of `n_states` random states of the given dimension,
/// with ranks drawn uniformly from `1..=max_rank`.
pub fn random_ensemble(
    n_states: usize,
    dim: usize,
    max_rank: usize,
    seed: u64,
) -> Result<Ensemble> {
    if dim == 0 || n_states == 0 || max_rank == 0 {
        return Err(Error::InvalidConfig(
            "ensemble needs n_states, dim, and max_rank all >= 1".into(),
        ));
    }
    if max_rank > dim {
        return Err(Error::RankOutOfRange {
            rank: max_rank,
            dim,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_ensemble_ranked(&mut rng, dim, n_states, max_rank))
}

/// A seeded random POVM with `count` outcomes on a `dim`-level system.
pub fn random_povm(dim: usize, count: usize, seed: u64) -> Result<Povm> {
    if dim == 0 || count == 0 {
        return Err(Error::InvalidConfig(
            "POVM needs dim >= 1 and count >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_povm(&mut rng, dim, count))
}

#[allow(unused_imports)]
pub(crate) use crate::qlinalg::{sample_pure_state, sample_unitary};

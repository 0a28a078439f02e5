//! Finite discrete probability distributions and the Shannon quantities
//! defined on them: entropy, joint/conditional entropy, mutual information,
//! and relative entropy, together with axis-merging for three-variable
//! joints and a three-step Markov chain model.
//!
//! All entropies are computed internally in nats and converted once at the
//! end, so identities like `H(A|B) = H(A,B) - H(B)` cancel exactly in
//! degenerate cases.

use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;

/// Tolerance on `|sum - 1|` accepted at construction; inputs inside the
/// tolerance are renormalized exactly once.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// Logarithm base for entropy values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    /// Base 2; entropies in bits.
    Bits,
    /// Base e; entropies in nats.
    Nats,
}

impl LogBase {
    /// Converts a value measured in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Bits => nats / std::f64::consts::LN_2,
            LogBase::Nats => nats,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
        }
    }
}

/// `x ln x` with the continuity convention `0 ln 0 = 0`.
pub(crate) fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `-sum x ln x` over the given probabilities, in nats.
pub(crate) fn entropy_nats<I: IntoIterator<Item = f64>>(probs: I) -> f64 {
    -probs.into_iter().map(x_ln_x).sum::<f64>()
}

fn validate_probs(probs: &[f64]) -> Result<f64> {
    if probs.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    for (index, &value) in probs.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteProbability { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeProbability { index, value });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::ProbabilitySum { sum });
    }
    Ok(sum)
}

/// A probability distribution over finitely many outcomes.
///
/// Entries are validated to be nonnegative and to sum to 1 within
/// [`PROB_SUM_TOL`]; the residual is divided out once and remembered.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
    adjustment: f64,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::build(probs, None)
    }

    /// Like [`Distribution::new`] but attaches one outcome label per entry.
    pub fn with_labels(probs: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if probs.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: probs.len(),
                right: labels.len(),
            });
        }
        Self::build(probs, Some(labels))
    }

    fn build(mut probs: Vec<f64>, labels: Option<Vec<String>>) -> Result<Self> {
        let sum = validate_probs(&probs)?;
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self {
            probs,
            labels,
            adjustment: sum - 1.0,
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
            labels: None,
            adjustment: 0.0,
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one outcome by construction
    }

    /// How far the raw input sum was from 1 before renormalization.
    pub fn normalization_adjustment(&self) -> f64 {
        self.adjustment
    }
}

/// Which axis of a two-variable joint to act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis2 {
    A,
    B,
}

/// A joint distribution over two finite variables, stored row-major with
/// the A outcome indexing rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint2 {
    probs: Vec<f64>,
    rows: usize,
    cols: usize,
    adjustment: f64,
}

impl Joint2 {
    pub fn new(rows: usize, cols: usize, mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() != rows * cols {
            return Err(Error::LengthMismatch {
                left: probs.len(),
                right: rows * cols,
            });
        }
        let sum = validate_probs(&probs)?;
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self {
            probs,
            rows,
            cols,
            adjustment: sum - 1.0,
        })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: ncols,
                });
            }
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    fn from_normalized(rows: usize, cols: usize, probs: Vec<f64>) -> Self {
        Self {
            probs,
            rows,
            cols,
            adjustment: 0.0,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.cols + j]
    }

    /// (number of A outcomes, number of B outcomes)
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn normalization_adjustment(&self) -> f64 {
        self.adjustment
    }

    /// Swaps the two axes. A pure reindexing: the cell values and their sum
    /// are preserved exactly.
    pub fn transpose(&self) -> Joint2 {
        let mut out = vec![0.0; self.probs.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.get(i, j);
            }
        }
        Joint2::from_normalized(self.cols, self.rows, out)
    }
}

/// A joint distribution over three finite variables A, B, C, stored with C
/// fastest: `probs[(i * db + j) * dc + k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint3 {
    probs: Vec<f64>,
    da: usize,
    db: usize,
    dc: usize,
    adjustment: f64,
}

impl Joint3 {
    pub fn new(da: usize, db: usize, dc: usize, mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() != da * db * dc {
            return Err(Error::LengthMismatch {
                left: probs.len(),
                right: da * db * dc,
            });
        }
        let sum = validate_probs(&probs)?;
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self {
            probs,
            da,
            db,
            dc,
            adjustment: sum - 1.0,
        })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.probs[(i * self.db + j) * self.dc + k]
    }

    /// (A outcomes, B outcomes, C outcomes)
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.da, self.db, self.dc)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn normalization_adjustment(&self) -> f64 {
        self.adjustment
    }
}

/// Which pair of axes of a [`Joint3`] to fuse into one composite axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergePair {
    /// Fuse A and B; the result has axes ((A,B), C).
    AB,
    /// Fuse A and C; the result has axes ((A,C), B).
    AC,
    /// Fuse B and C; the result has axes (A, (B,C)).
    BC,
}

/// Fuses two axes of a three-variable joint into a single composite axis.
///
/// This is a pure relabeling of cells — every probability is moved, not
/// recomputed — so the total mass is preserved exactly and entropies of the
/// fused joint equal those of the original grouping.
pub fn merge_axes(joint: &Joint3, pair: MergePair) -> Joint2 {
    let (da, db, dc) = joint.dims();
    match pair {
        MergePair::AB => {
            let mut out = vec![0.0; da * db * dc];
            for i in 0..da {
                for j in 0..db {
                    for k in 0..dc {
                        out[(i * db + j) * dc + k] = joint.get(i, j, k);
                    }
                }
            }
            Joint2::from_normalized(da * db, dc, out)
        }
        MergePair::AC => {
            let mut out = vec![0.0; da * db * dc];
            for i in 0..da {
                for k in 0..dc {
                    for j in 0..db {
                        out[(i * dc + k) * db + j] = joint.get(i, j, k);
                    }
                }
            }
            Joint2::from_normalized(da * dc, db, out)
        }
        MergePair::BC => {
            let mut out = vec![0.0; da * db * dc];
            for i in 0..da {
                for j in 0..db {
                    for k in 0..dc {
                        out[i * (db * dc) + j * dc + k] = joint.get(i, j, k);
                    }
                }
            }
            Joint2::from_normalized(da, db * dc, out)
        }
    }
}

/// A three-variable Markov chain A -> B -> C: a source distribution over A
/// and row-stochastic transition matrices for each hop.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain3 {
    source: Distribution,
    trans_ab: Vec<Distribution>,
    trans_bc: Vec<Distribution>,
}

impl MarkovChain3 {
    /// Builds a chain from a source and per-state transition rows. Each row
    /// is itself a distribution over the next variable's outcomes; row
    /// counts must match the previous variable's outcome count and all rows
    /// of a matrix must agree on length.
    pub fn new(
        source: Distribution,
        trans_ab: Vec<Distribution>,
        trans_bc: Vec<Distribution>,
    ) -> Result<Self> {
        if trans_ab.len() != source.len() {
            return Err(Error::LengthMismatch {
                left: trans_ab.len(),
                right: source.len(),
            });
        }
        let nb = trans_ab
            .first()
            .map(Distribution::len)
            .ok_or(Error::EmptyDistribution)?;
        for row in &trans_ab {
            if row.len() != nb {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: nb,
                });
            }
        }
        if trans_bc.len() != nb {
            return Err(Error::LengthMismatch {
                left: trans_bc.len(),
                right: nb,
            });
        }
        let nc = trans_bc
            .first()
            .map(Distribution::len)
            .ok_or(Error::EmptyDistribution)?;
        for row in &trans_bc {
            if row.len() != nc {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: nc,
                });
            }
        }
        Ok(Self {
            source,
            trans_ab,
            trans_bc,
        })
    }

    /// Convenience constructor from raw probability rows.
    pub fn from_rows(
        source: Vec<f64>,
        trans_ab: Vec<Vec<f64>>,
        trans_bc: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let source = Distribution::new(source)?;
        let trans_ab = trans_ab
            .into_iter()
            .map(Distribution::new)
            .collect::<Result<Vec<_>>>()?;
        let trans_bc = trans_bc
            .into_iter()
            .map(Distribution::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, trans_ab, trans_bc)
    }

    pub fn source(&self) -> &Distribution {
        &self.source
    }

    pub fn trans_ab(&self) -> &[Distribution] {
        &self.trans_ab
    }

    pub fn trans_bc(&self) -> &[Distribution] {
        &self.trans_bc
    }

    /// (A outcomes, B outcomes, C outcomes)
    pub fn dims(&self) -> (usize, usize, usize) {
        (
            self.source.len(),
            self.trans_ab[0].len(),
            self.trans_bc[0].len(),
        )
    }
}

/// Expands a Markov chain into the full joint
/// `p(a,b,c) = p(a) p(b|a) p(c|b)`.
pub fn markov_joint(chain: &MarkovChain3) -> Joint3 {
    let (na, nb, nc) = chain.dims();
    let mut probs = Vec::with_capacity(na * nb * nc);
    for a in 0..na {
        let pa = chain.source().probs()[a];
        for b in 0..nb {
            let pab = pa * chain.trans_ab()[a].probs()[b];
            for c in 0..nc {
                probs.push(pab * chain.trans_bc()[b].probs()[c]);
            }
        }
    }
    // The sum is a product of row sums, each exactly 1 after row
    // renormalization, so it stays within the construction tolerance.
    Joint3::new(na, nb, nc, probs).expect("product of normalized rows is normalized")
}

/// `H(p) = -sum p_i log p_i`.
pub fn shannon_entropy(dist: &Distribution, base: LogBase) -> f64 {
    base.from_nats(entropy_nats(dist.probs().iter().copied()))
}

/// Sums out one axis of a two-variable joint, keeping the other.
pub fn marginal(joint: &Joint2, keep: Axis2) -> Distribution {
    let (rows, cols) = joint.dims();
    let probs = match keep {
        Axis2::A => (0..rows)
            .map(|i| (0..cols).map(|j| joint.get(i, j)).sum())
            .collect(),
        Axis2::B => (0..cols)
            .map(|j| (0..rows).map(|i| joint.get(i, j)).sum())
            .collect(),
    };
    // Sums of validated cells can drift from 1 only by accumulated rounding,
    // far inside the construction tolerance.
    Distribution::new(probs).expect("marginal of a normalized joint is normalized")
}

/// `H(A,B)`: the entropy of the joint read as one distribution over pairs.
pub fn joint_entropy(joint: &Joint2, base: LogBase) -> f64 {
    base.from_nats(entropy_nats(joint.probs().iter().copied()))
}

/// `H(A|B)` when `given` is B, or `H(B|A)` when `given` is A, via the
/// difference `H(A,B) - H(given)`.
pub fn conditional_entropy(joint: &Joint2, given: Axis2, base: LogBase) -> f64 {
    let h_joint = entropy_nats(joint.probs().iter().copied());
    let h_given = entropy_nats(marginal(joint, given).probs().iter().copied());
    base.from_nats(h_joint - h_given)
}

/// `H(A:B) = H(A) + H(B) - H(A,B)`.
pub fn mutual_information(joint: &Joint2, base: LogBase) -> f64 {
    let h_a = entropy_nats(marginal(joint, Axis2::A).probs().iter().copied());
    let h_b = entropy_nats(marginal(joint, Axis2::B).probs().iter().copied());
    let h_ab = entropy_nats(joint.probs().iter().copied());
    base.from_nats(h_a + h_b - h_ab)
}

/// `H(p||q) = sum p_i log(p_i / q_i)`, infinite when some `p_i > 0` sits on
/// `q_i = 0`. Terms with `p_i = 0` contribute nothing regardless of `q_i`.
pub fn relative_entropy(p: &Distribution, q: &Distribution, base: LogBase) -> Result<ExtendedReal> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let mut nats = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Ok(ExtendedReal::PosInfinity);
            }
            nats += pi * (pi / qi).ln();
        }
    }
    Ok(ExtendedReal::Finite(base.from_nats(nats)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_of_biased_coin() {
        let d = Distribution::new(vec![0.9, 0.1]).unwrap();
        assert_abs_diff_eq!(
            shannon_entropy(&d, LogBase::Bits),
            0.468995593589,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            shannon_entropy(&d, LogBase::Nats),
            0.468995593589 * std::f64::consts::LN_2,
            epsilon = 1e-10
        );
    }

    #[test]
    fn entropy_edge_cases() {
        let point = Distribution::new(vec![1.0]).unwrap();
        assert_eq!(shannon_entropy(&point, LogBase::Bits), 0.0);

        let with_zero = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&with_zero, LogBase::Bits), 0.0);

        let u8th = Distribution::uniform(8).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&u8th, LogBase::Bits), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(matches!(
            Distribution::new(vec![]),
            Err(Error::EmptyDistribution)
        ));
        assert!(matches!(
            Distribution::new(vec![0.5, -0.5, 1.0]),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
        assert!(matches!(
            Distribution::new(vec![0.5, 0.4]),
            Err(Error::ProbabilitySum { .. })
        ));
        assert!(matches!(
            Distribution::new(vec![0.5, f64::NAN]),
            Err(Error::NonFiniteProbability { index: 1, .. })
        ));
    }

    #[test]
    fn renormalization_is_recorded() {
        let d = Distribution::new(vec![0.5 + 4e-13, 0.5]).unwrap();
        assert!((d.normalization_adjustment() - 4e-13).abs() < 1e-15);
        assert_abs_diff_eq!(d.probs().iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn grouping_recursion_holds() {
        // H(1/2, 1/4, 1/4) = H(3/4, 1/4)-style regrouping on the first two.
        let p = Distribution::new(vec![0.5, 0.25, 0.25]).unwrap();
        let lhs = shannon_entropy(&p, LogBase::Bits);
        let merged = Distribution::new(vec![0.75, 0.25]).unwrap();
        let inner = Distribution::new(vec![0.5 / 0.75, 0.25 / 0.75]).unwrap();
        let rhs =
            shannon_entropy(&merged, LogBase::Bits) + 0.75 * shannon_entropy(&inner, LogBase::Bits);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        assert_abs_diff_eq!(lhs, 1.5, epsilon = 1e-12);
    }

    fn sample_joint() -> Joint2 {
        Joint2::from_rows(vec![vec![0.4, 0.1], vec![0.2, 0.3]]).unwrap()
    }

    #[test]
    fn joint_quantities_match_hand_computed_values() {
        let j = sample_joint();
        assert_abs_diff_eq!(
            joint_entropy(&j, LogBase::Bits),
            1.84643934467,
            epsilon = 1e-10
        );
        let ma = marginal(&j, Axis2::A);
        let mb = marginal(&j, Axis2::B);
        assert_abs_diff_eq!(ma.probs()[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mb.probs()[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(
            conditional_entropy(&j, Axis2::B, LogBase::Bits),
            0.875488750216,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            mutual_information(&j, LogBase::Bits),
            0.124511249784,
            epsilon = 1e-10
        );
    }

    #[test]
    fn conditional_entropy_of_perfect_correlation_is_exactly_zero() {
        let j = Joint2::from_rows(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(conditional_entropy(&j, Axis2::B, LogBase::Bits), 0.0);
        assert_abs_diff_eq!(mutual_information(&j, LogBase::Bits), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn transpose_swaps_axes_exactly() {
        let j = sample_joint();
        let t = j.transpose();
        assert_eq!(t.get(1, 0), j.get(0, 1));
        // Cells move without rounding; the entropy sum may still differ in
        // the last bit because the terms are added in a different order.
        assert_abs_diff_eq!(
            joint_entropy(&j, LogBase::Nats),
            joint_entropy(&t, LogBase::Nats),
            epsilon = 1e-15
        );
    }

    #[test]
    fn relative_entropy_values() {
        let p = Distribution::new(vec![0.5, 0.5]).unwrap();
        let q = Distribution::new(vec![0.25, 0.75]).unwrap();
        let kl = relative_entropy(&p, &q, LogBase::Bits).unwrap();
        assert_abs_diff_eq!(kl.finite().unwrap(), 0.207518749639, epsilon = 1e-10);

        assert_eq!(
            relative_entropy(&p, &p, LogBase::Bits).unwrap(),
            ExtendedReal::Finite(0.0)
        );

        let q0 = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(
            relative_entropy(&p, &q0, LogBase::Bits).unwrap(),
            ExtendedReal::PosInfinity
        );
        // ...but a zero in p where q has mass stays finite.
        assert!(relative_entropy(&q0, &p, LogBase::Bits)
            .unwrap()
            .is_finite());

        let r = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!(matches!(
            relative_entropy(&p, &r, LogBase::Bits),
            Err(Error::LengthMismatch { .. })
        ));
    }

    fn sample_joint3() -> Joint3 {
        let probs = vec![0.10, 0.05, 0.02, 0.08, 0.20, 0.05, 0.15, 0.35];
        Joint3::new(2, 2, 2, probs).unwrap()
    }

    #[test]
    fn merge_axes_is_an_exact_relabeling() {
        let j3 = sample_joint3();
        for pair in [MergePair::AB, MergePair::AC, MergePair::BC] {
            let j2 = merge_axes(&j3, pair);
            assert_eq!(
                j2.probs().iter().sum::<f64>(),
                j3.probs().iter().sum::<f64>()
            );
            assert_eq!(
                joint_entropy(&j2, LogBase::Nats),
                entropy_nats(j3.probs().iter().copied())
            );
        }
        // Index conventions, probed at cell (a,b,c) = (1,0,1) of a 2x2x2
        // joint: the fused pair flattens with its second axis fastest.
        let ab = merge_axes(&j3, MergePair::AB);
        assert_eq!(ab.get(2, 1), j3.get(1, 0, 1)); // (a,b) -> a*2+b = 2
        let ac = merge_axes(&j3, MergePair::AC);
        assert_eq!(ac.get(3, 0), j3.get(1, 0, 1)); // (a,c) -> a*2+c = 3
        let bc = merge_axes(&j3, MergePair::BC);
        assert_eq!(bc.get(1, 1), j3.get(1, 0, 1)); // (b,c) -> b*2+c = 1
    }

    #[test]
    fn binary_symmetric_chain_information_drops_per_hop() {
        let flip = vec![vec![0.9, 0.1], vec![0.1, 0.9]];
        let chain = MarkovChain3::from_rows(vec![0.5, 0.5], flip.clone(), flip).unwrap();
        let j3 = markov_joint(&chain);
        let ab = marginal_pair_ab(&j3);
        // H(A:C): sum out B by fusing (A,C) into one axis, then marginalize.
        let fused = merge_axes(&j3, MergePair::AC);
        let pac = marginal(&fused, Axis2::A);
        let jac = Joint2::new(2, 2, pac.probs().to_vec()).unwrap();
        assert_abs_diff_eq!(
            mutual_information(&ab, LogBase::Bits),
            0.531004406411,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            mutual_information(&jac, LogBase::Bits),
            0.319922954272,
            epsilon = 1e-10
        );
    }

    fn marginal_pair_ab(j3: &Joint3) -> Joint2 {
        let (da, db, dc) = j3.dims();
        let mut probs = vec![0.0; da * db];
        for i in 0..da {
            for j in 0..db {
                for k in 0..dc {
                    probs[i * db + j] += j3.get(i, j, k);
                }
            }
        }
        Joint2::new(da, db, probs).unwrap()
    }

    #[test]
    fn markov_chain_shape_validation() {
        let bad = MarkovChain3::from_rows(
            vec![0.5, 0.5],
            vec![vec![1.0]], // wrong row count for a binary source
            vec![vec![1.0]],
        );
        assert!(matches!(bad, Err(Error::LengthMismatch { .. })));
    }
}

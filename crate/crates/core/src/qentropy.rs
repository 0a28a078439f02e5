//! Entropic quantities of density matrices: von Neumann entropy,
//! subentropy, conditional and mutual entropies of bipartite states,
//! relative entropy with its support condition, Holevo's bound, and the
//! accessible information of a measured ensemble.

use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;
use crate::probdist::mutual_information;
use crate::probdist::{entropy_nats, x_ln_x, Distribution, Joint2, LogBase};
use crate::qlinalg::{
    partial_trace, BipartiteDims, ComplexMatrix, DensityMatrix, Subsystem, HERMITICITY_TOL, PSD_TOL,
};

/// Eigenvalues of the reference state at or below this are treated as its
/// kernel when testing the support condition of the relative entropy.
pub const SUPPORT_EIGENVALUE_TOL: f64 = 1e-10;
/// The relative entropy is declared infinite when the state puts more than
/// this much weight on a kernel direction of the reference.
pub const SUPPORT_OVERLAP_TOL: f64 = 1e-9;
/// Spectral gaps below this count as degenerate for the subentropy, and
/// degenerate clusters are re-spaced at exactly this distance.
pub const DEGENERACY_GAP: f64 = 1e-7;
/// Max entrywise deviation of a POVM's element sum from the identity.
pub const POVM_COMPLETENESS_TOL: f64 = 1e-9;
/// Max deviation from 1 tolerated for the total outcome probability of a
/// measured ensemble before it is rejected as inconsistent.
pub const OUTCOME_SUM_TOL: f64 = 1e-6;

/// A finite ensemble of states with preparation probabilities. The average
/// state is formed and validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    probs: Distribution,
    states: Vec<DensityMatrix>,
    average: DensityMatrix,
}

impl Ensemble {
    pub fn new(probs: Distribution, states: Vec<DensityMatrix>) -> Result<Self> {
        if probs.len() != states.len() {
            return Err(Error::InvalidEnsemble(format!(
                "{} probabilities for {} states",
                probs.len(),
                states.len()
            )));
        }
        let dim = states[0].dim();
        for (i, state) in states.iter().enumerate() {
            if state.dim() != dim {
                return Err(Error::InvalidEnsemble(format!(
                    "state {i} has dimension {}, expected {dim}",
                    state.dim()
                )));
            }
        }
        let mut avg = ComplexMatrix::zeros(dim, dim);
        for (&p, state) in probs.probs().iter().zip(&states) {
            avg = avg.add(&state.matrix().scaled(p));
        }
        let average = DensityMatrix::new(avg)?;
        Ok(Self {
            probs,
            states,
            average,
        })
    }

    pub fn probs(&self) -> &Distribution {
        &self.probs
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// The mixture `sum_i p_i rho_i`.
    pub fn average(&self) -> &DensityMatrix {
        &self.average
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one member by construction
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }
}

/// A positive operator-valued measure: Hermitian PSD elements summing to
/// the identity within [`POVM_COMPLETENESS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match elements.first() {
            Some(e) => e.rows(),
            None => return Err(Error::InvalidPovm("needs at least one element".into())),
        };
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (j, e) in elements.iter().enumerate() {
            if !e.is_square() || e.rows() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {j} is {}x{}, expected {dim}x{dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            let dev = e.hermiticity_deviation();
            if dev > HERMITICITY_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {j} is not Hermitian (deviation {dev})"
                )));
            }
            let spec = crate::qlinalg::hermitian_spectrum(e)?;
            let min = spec.eigenvalues().last().copied().unwrap_or(0.0);
            if min < -PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {j} has negative eigenvalue {min}"
                )));
            }
            sum = sum.add(e);
        }
        let completeness = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if completeness > POVM_COMPLETENESS_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {completeness}"
            )));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one element by construction
    }
}

/// `S(rho) = -tr(rho ln rho)`, evaluated on the eigenvalues.
pub fn von_neumann(rho: &DensityMatrix, base: LogBase) -> f64 {
    base.from_nats(entropy_nats(rho.eigenvalues().iter().copied()))
}

/// Re-spaces degenerate eigenvalue clusters so the subentropy's products
/// over pairwise differences stay finite. Clusters chained by gaps below
/// [`DEGENERACY_GAP`] are spread symmetrically around their mean (which
/// preserves the total), then re-merged and re-spread if the spreading made
/// neighbors collide.
fn spread_spectrum(evs: &[f64]) -> Vec<f64> {
    let n = evs.len();
    let mut vals = evs.to_vec();
    if n <= 1 {
        return vals;
    }
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..n {
        if vals[i - 1] - vals[i] >= DEGENERACY_GAP {
            clusters.push((start, i));
            start = i;
        }
    }
    clusters.push((start, n));

    loop {
        for &(s, e) in &clusters {
            let m = e - s;
            if m > 1 {
                let mean = vals[s..e].iter().sum::<f64>() / m as f64;
                for (idx, v) in vals[s..e].iter_mut().enumerate() {
                    *v = mean + DEGENERACY_GAP * ((m as f64 - 1.0) / 2.0 - idx as f64);
                }
            }
        }
        // Spreading may have pushed a cluster into its neighbor; merge any
        // colliding pair and go again. Each pass strictly reduces the
        // cluster count, so this terminates.
        let mut merged = Vec::with_capacity(clusters.len());
        let mut any = false;
        let mut cur = clusters[0];
        for &next in &clusters[1..] {
            let gap = vals[cur.1 - 1] - vals[next.0];
            if gap < DEGENERACY_GAP / 2.0 {
                cur = (cur.0, next.1);
                any = true;
            } else {
                merged.push(cur);
                cur = next;
            }
        }
        merged.push(cur);
        if !any {
            return vals;
        }
        clusters = merged;
    }
}

/// The subentropy
/// `Q(rho) = -sum_j [prod_{k != j} lam_j / (lam_j - lam_k)] lam_j ln lam_j`
/// in nats, evaluated over the full spectrum with degenerate clusters
/// re-spaced by [`spread_spectrum`]. Terms at non-positive (spread)
/// eigenvalues vanish in the confluent limit and are skipped.
///
/// Accuracy tracks the degeneracy structure: distinct or pairwise-degenerate
/// spectra evaluate to ~1e-9, triple degeneracies to ~1e-4, and higher
/// multiplicities of positive eigenvalues lose all precision — a direct
/// consequence of the fixed re-spacing distance. Zero eigenvalues (from
/// rank deficiency) are benign at any multiplicity.
pub fn subentropy(rho: &DensityMatrix) -> f64 {
    let lam = spread_spectrum(rho.eigenvalues());
    let mut q = 0.0;
    for (j, &lj) in lam.iter().enumerate() {
        if lj <= 0.0 {
            continue;
        }
        let mut coef = 1.0;
        for (k, &lk) in lam.iter().enumerate() {
            if k != j {
                coef *= lj / (lj - lk);
            }
        }
        q -= coef * x_ln_x(lj);
    }
    q
}

/// The three entropies of a bipartite state: the joint and both marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEntropies {
    pub s_ab: f64,
    pub s_a: f64,
    pub s_b: f64,
}

/// `S(A,B)`, `S(A)`, and `S(B)` of a bipartite state.
pub fn quantum_joint_marginals(
    rho_ab: &DensityMatrix,
    dims: BipartiteDims,
    base: LogBase,
) -> Result<JointEntropies> {
    let rho_a = partial_trace(rho_ab, dims, Subsystem::A)?;
    let rho_b = partial_trace(rho_ab, dims, Subsystem::B)?;
    Ok(JointEntropies {
        s_ab: von_neumann(rho_ab, base),
        s_a: von_neumann(&rho_a, base),
        s_b: von_neumann(&rho_b, base),
    })
}

/// `S(A|B) = S(A,B) - S(B)`. Unlike its classical counterpart this can be
/// negative; it reaches `-S(A)` on pure entangled states.
pub fn s_conditional(rho_ab: &DensityMatrix, dims: BipartiteDims, base: LogBase) -> Result<f64> {
    let rho_b = partial_trace(rho_ab, dims, Subsystem::B)?;
    let nats = entropy_nats(rho_ab.eigenvalues().iter().copied())
        - entropy_nats(rho_b.eigenvalues().iter().copied());
    Ok(base.from_nats(nats))
}

/// `S(A:B) = S(A) + S(B) - S(A,B)`.
pub fn s_mutual(rho_ab: &DensityMatrix, dims: BipartiteDims, base: LogBase) -> Result<f64> {
    let rho_a = partial_trace(rho_ab, dims, Subsystem::A)?;
    let rho_b = partial_trace(rho_ab, dims, Subsystem::B)?;
    let nats = entropy_nats(rho_a.eigenvalues().iter().copied())
        + entropy_nats(rho_b.eigenvalues().iter().copied())
        - entropy_nats(rho_ab.eigenvalues().iter().copied());
    Ok(base.from_nats(nats))
}

/// `S(rho||sigma) = tr(rho ln rho) - tr(rho ln sigma)` in nats.
///
/// Infinite when `rho` puts more than [`SUPPORT_OVERLAP_TOL`] of weight on
/// any eigenvector of `sigma` whose eigenvalue is at most
/// [`SUPPORT_EIGENVALUE_TOL`]; otherwise the kernel directions simply drop
/// out of the sum.
pub fn quantum_relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<ExtendedReal> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            got: rho.dim(),
        });
    }
    let spec = sigma.spectrum();
    let mut tr_rho_ln_sigma = 0.0;
    for (k, &mu) in spec.eigenvalues().iter().enumerate() {
        let v = spec.eigenvector(k);
        let overlap = rho.matrix().expectation(&v).re;
        if mu <= SUPPORT_EIGENVALUE_TOL {
            if overlap > SUPPORT_OVERLAP_TOL {
                return Ok(ExtendedReal::PosInfinity);
            }
        } else {
            tr_rho_ln_sigma += mu.ln() * overlap;
        }
    }
    let tr_rho_ln_rho: f64 = rho.eigenvalues().iter().map(|&l| x_ln_x(l)).sum();
    Ok(ExtendedReal::Finite(tr_rho_ln_rho - tr_rho_ln_sigma))
}

/// `chi = S(avg) - sum_i p_i S(rho_i)`: the Holevo bound on accessible
/// information.
pub fn holevo_chi(ensemble: &Ensemble, base: LogBase) -> f64 {
    let s_avg = entropy_nats(ensemble.average().eigenvalues().iter().copied());
    let avg_s: f64 = ensemble
        .probs()
        .probs()
        .iter()
        .zip(ensemble.states())
        .map(|(&p, rho)| p * entropy_nats(rho.eigenvalues().iter().copied()))
        .sum();
    base.from_nats(s_avg - avg_s)
}

/// The mutual information between preparation and outcome when measuring an
/// ensemble with a POVM: `p(i, j) = p_i tr(rho_i E_j)`.
///
/// Numerical slack in the POVM can leave the outcome probabilities summing
/// slightly off 1; the joint is renormalized, but a total further than
/// [`OUTCOME_SUM_TOL`] from 1 is rejected as inconsistent.
pub fn measured_mutual_info(ensemble: &Ensemble, povm: &Povm, base: LogBase) -> Result<f64> {
    if povm.dim() != ensemble.dim() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.dim(),
            got: povm.dim(),
        });
    }
    let n = ensemble.len();
    let k = povm.len();
    let mut cells = Vec::with_capacity(n * k);
    for (&p, rho) in ensemble.probs().probs().iter().zip(ensemble.states()) {
        for e in povm.elements() {
            let outcome = rho.matrix().trace_product(e).re;
            cells.push((p * outcome).max(0.0));
        }
    }
    let total: f64 = cells.iter().sum();
    if (total - 1.0).abs() > OUTCOME_SUM_TOL {
        return Err(Error::InvalidPovm(format!(
            "outcome probabilities sum to {total}"
        )));
    }
    for c in &mut cells {
        *c /= total;
    }
    let joint = Joint2::new(n, k, cells)?;
    Ok(mutual_information(&joint, base))
}

/// The three quantities of the mixing-entropy bound
/// `S(avg) <= H(p) + sum_i p_i S(rho_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingBoundTerms {
    /// Entropy of the mixture.
    pub s_avg: f64,
    /// Shannon entropy of the mixing weights.
    pub h_p: f64,
    /// Average entropy of the members.
    pub avg_s: f64,
}

pub fn mixing_bound_terms(ensemble: &Ensemble, base: LogBase) -> MixingBoundTerms {
    let s_avg = entropy_nats(ensemble.average().eigenvalues().iter().copied());
    let h_p = entropy_nats(ensemble.probs().probs().iter().copied());
    let avg_s: f64 = ensemble
        .probs()
        .probs()
        .iter()
        .zip(ensemble.states())
        .map(|(&p, rho)| p * entropy_nats(rho.eigenvalues().iter().copied()))
        .sum();
    MixingBoundTerms {
        s_avg: base.from_nats(s_avg),
        h_p: base.from_nats(h_p),
        avg_s: base.from_nats(avg_s),
    }
}

/// Embeds an ensemble block-diagonally, one orthogonal sector per member:
/// the state `sum_i p_i |i><i| (x) rho_i` whose entropy is exactly
/// `H(p) + sum_i p_i S(rho_i)`.
pub fn orthogonal_embedding(ensemble: &Ensemble) -> Result<DensityMatrix> {
    let n = ensemble.len();
    let d = ensemble.dim();
    let mut m = ComplexMatrix::zeros(n * d, n * d);
    for (i, (&p, rho)) in ensemble
        .probs()
        .probs()
        .iter()
        .zip(ensemble.states())
        .enumerate()
    {
        for r in 0..d {
            for c in 0..d {
                m[(i * d + r, i * d + c)] = rho.matrix()[(r, c)] * p;
            }
        }
    }
    DensityMatrix::new(m)
}

/// The large-deviation estimate `exp(-N S(rho||sigma))` for the probability
/// of confusing `N` copies of `sigma` for `rho`, clamped into `[0, 1]`.
/// Zero when the relative entropy is infinite.
pub fn sanov_confusion_probability(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    copies: u64,
) -> Result<f64> {
    if copies == 0 {
        return Err(Error::InvalidConfig(
            "number of copies must be at least 1".into(),
        ));
    }
    Ok(match quantum_relative_entropy(rho, sigma)? {
        ExtendedReal::PosInfinity => 0.0,
        ExtendedReal::Finite(s) => (-(copies as f64) * s).exp().min(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probdist::shannon_entropy;
    use crate::qlinalg::{random_density, tensor};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(entries: &[f64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::diagonal(entries)).unwrap()
    }

    #[test]
    fn von_neumann_matches_hand_values() {
        let rho = diag(&[0.7, 0.3]);
        assert_abs_diff_eq!(
            von_neumann(&rho, LogBase::Nats),
            0.610864302055,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            von_neumann(&rho, LogBase::Bits),
            0.610864302055 / LN_2,
            epsilon = 1e-10
        );
        let pure = DensityMatrix::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(von_neumann(&pure, LogBase::Nats).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert_abs_diff_eq!(von_neumann(&mixed, LogBase::Nats), LN_2, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_states_reduce_to_shannon() {
        let p = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let rho = DensityMatrix::from_classical(&p);
        assert_abs_diff_eq!(
            von_neumann(&rho, LogBase::Nats),
            shannon_entropy(&p, LogBase::Nats),
            epsilon = 1e-12
        );
    }

    #[test]
    fn subentropy_reference_values() {
        assert_abs_diff_eq!(
            subentropy(&diag(&[0.7, 0.3])),
            0.166032925352,
            epsilon = 1e-10
        );
        // Degenerate pair: Q(I/2) = ln 2 - 1/2, reached through spreading.
        assert_abs_diff_eq!(
            subentropy(&DensityMatrix::maximally_mixed(2).unwrap()),
            LN_2 - 0.5,
            epsilon = 1e-8
        );
        // A pure state has Q = 0 exactly: the zero eigenvalue drops out.
        let pure = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(subentropy(&pure), 0.0);
        // Triple degeneracy is inherently ill-conditioned for the spread
        // evaluation; it is still good to ~1e-4.
        let exact3 = 3.0f64.ln() - (0.5 + 1.0 / 3.0);
        assert_abs_diff_eq!(
            subentropy(&DensityMatrix::maximally_mixed(3).unwrap()),
            exact3,
            epsilon = 1e-3
        );
    }

    #[test]
    fn subentropy_ignores_exact_zero_eigenvalues() {
        // Rank-2 state in dimension 4: the clipped zeros spread
        // symmetrically around 0 and cancel to second order.
        let padded = diag(&[0.6, 0.4, 0.0, 0.0]);
        let support = diag(&[0.6, 0.4]);
        assert_abs_diff_eq!(subentropy(&padded), subentropy(&support), epsilon = 1e-8);
    }

    #[test]
    fn subentropy_is_below_entropy_on_random_states() {
        for seed in 0..20 {
            let rho = random_density(4, 4, seed).unwrap();
            let q = subentropy(&rho);
            let s = von_neumann(&rho, LogBase::Nats);
            assert!(q <= s + 1e-9, "seed {seed}: Q={q} S={s}");
            assert!(q >= -1e-9, "seed {seed}: Q={q}");
        }
    }

    #[test]
    fn pure_entangled_state_has_negative_conditional_entropy() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            DensityMatrix::pure(&[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)]).unwrap();
        let dims = BipartiteDims::new(2, 2).unwrap();
        let parts = quantum_joint_marginals(&bell, dims, LogBase::Nats).unwrap();
        assert!(parts.s_ab.abs() < 1e-9);
        assert_abs_diff_eq!(parts.s_a, LN_2, epsilon = 1e-9);
        assert_abs_diff_eq!(
            s_conditional(&bell, dims, LogBase::Nats).unwrap(),
            -LN_2,
            epsilon = 1e-9
        );
        // Mutual information doubles the classical maximum.
        assert_abs_diff_eq!(
            s_mutual(&bell, dims, LogBase::Nats).unwrap(),
            2.0 * LN_2,
            epsilon = 1e-9
        );
    }

    #[test]
    fn product_state_has_classical_conditional_entropy() {
        let a = diag(&[0.9, 0.1]);
        let b = diag(&[0.6, 0.4]);
        let ab = tensor(&a, &b).unwrap();
        let dims = BipartiteDims::new(2, 2).unwrap();
        assert_abs_diff_eq!(
            s_conditional(&ab, dims, LogBase::Nats).unwrap(),
            von_neumann(&a, LogBase::Nats),
            epsilon = 1e-10
        );
        assert!(s_mutual(&ab, dims, LogBase::Nats).unwrap().abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_of_commuting_states_is_classical() {
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[0.25, 0.75]);
        let expected = 0.5 * (0.5f64 / 0.25).ln() + 0.5 * (0.5f64 / 0.75).ln();
        assert_abs_diff_eq!(
            quantum_relative_entropy(&rho, &sigma)
                .unwrap()
                .finite()
                .unwrap(),
            expected,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            quantum_relative_entropy(&rho, &rho)
                .unwrap()
                .finite()
                .unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn relative_entropy_supports() {
        let pure0 = diag(&[1.0, 0.0]);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        // rho outside supp(sigma): infinite.
        assert_eq!(
            quantum_relative_entropy(&mixed, &pure0).unwrap(),
            ExtendedReal::PosInfinity
        );
        // supp(rho) inside supp(sigma): finite, = ln 2 here.
        assert_abs_diff_eq!(
            quantum_relative_entropy(&pure0, &mixed)
                .unwrap()
                .finite()
                .unwrap(),
            LN_2,
            epsilon = 1e-12
        );
        let big = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            quantum_relative_entropy(&mixed, &big),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn two_state_ensemble() -> Ensemble {
        // {1/2 |0><0|, 1/2 |+><+|}
        let zero = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let plus = DensityMatrix::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        Ensemble::new(Distribution::new(vec![0.5, 0.5]).unwrap(), vec![zero, plus]).unwrap()
    }

    #[test]
    fn holevo_chi_of_nonorthogonal_pure_states() {
        // Average state eigenvalues (1 +/- 1/sqrt(2))/2; chi = S(avg).
        let chi = holevo_chi(&two_state_ensemble(), LogBase::Nats);
        assert_abs_diff_eq!(chi, 0.416495530727, epsilon = 1e-10);
    }

    #[test]
    fn holevo_chi_extremes() {
        // Identical members: no information, chi = 0.
        let rho = diag(&[0.6, 0.4]);
        let same = Ensemble::new(
            Distribution::new(vec![0.3, 0.7]).unwrap(),
            vec![rho.clone(), rho],
        )
        .unwrap();
        assert!(holevo_chi(&same, LogBase::Nats).abs() < 1e-12);
        // Orthogonal pure members: chi = H(p).
        let e = Ensemble::new(
            Distribution::new(vec![0.5, 0.5]).unwrap(),
            vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])],
        )
        .unwrap();
        assert_abs_diff_eq!(holevo_chi(&e, LogBase::Nats), LN_2, epsilon = 1e-12);
    }

    #[test]
    fn projective_measurement_of_orthogonal_states_extracts_everything() {
        let e = Ensemble::new(
            Distribution::new(vec![0.5, 0.5]).unwrap(),
            vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])],
        )
        .unwrap();
        let povm = Povm::new(vec![
            ComplexMatrix::diagonal(&[1.0, 0.0]),
            ComplexMatrix::diagonal(&[0.0, 1.0]),
        ])
        .unwrap();
        let info = measured_mutual_info(&e, &povm, LogBase::Nats).unwrap();
        assert_abs_diff_eq!(info, LN_2, epsilon = 1e-12);
    }

    #[test]
    fn measurement_in_computational_basis_of_mixed_preparations() {
        // p(i, j) = [[1/2, 0], [1/4, 1/4]]: 0.311278 bits of information.
        let e = Ensemble::new(
            Distribution::new(vec![0.5, 0.5]).unwrap(),
            vec![
                diag(&[1.0, 0.0]),
                DensityMatrix::maximally_mixed(2).unwrap(),
            ],
        )
        .unwrap();
        let povm = Povm::new(vec![
            ComplexMatrix::diagonal(&[1.0, 0.0]),
            ComplexMatrix::diagonal(&[0.0, 1.0]),
        ])
        .unwrap();
        let info = measured_mutual_info(&e, &povm, LogBase::Bits).unwrap();
        assert_abs_diff_eq!(info, 0.311278124459, epsilon = 1e-10);
        // The Holevo bound holds with room to spare.
        assert!(info * LN_2 <= holevo_chi(&e, LogBase::Nats) + 1e-9);
    }

    #[test]
    fn mixing_bound_and_embedding_agree() {
        let e = two_state_ensemble();
        let terms = mixing_bound_terms(&e, LogBase::Nats);
        assert!(terms.s_avg <= terms.h_p + terms.avg_s + 1e-9);
        let embedded = orthogonal_embedding(&e).unwrap();
        assert_eq!(embedded.dim(), 4);
        assert_abs_diff_eq!(
            von_neumann(&embedded, LogBase::Nats),
            terms.h_p + terms.avg_s,
            epsilon = 1e-8
        );
    }

    #[test]
    fn povm_validation() {
        assert!(matches!(Povm::new(vec![]), Err(Error::InvalidPovm(_))));
        // Elements that do not sum to the identity.
        let bad = Povm::new(vec![
            ComplexMatrix::diagonal(&[0.5, 0.5]),
            ComplexMatrix::diagonal(&[0.4, 0.4]),
        ]);
        assert!(matches!(bad, Err(Error::InvalidPovm(_))));
        // A negative element.
        let neg = Povm::new(vec![
            ComplexMatrix::diagonal(&[1.5, 0.5]),
            ComplexMatrix::diagonal(&[-0.5, 0.5]),
        ]);
        assert!(matches!(neg, Err(Error::InvalidPovm(_))));
    }

    #[test]
    fn ensemble_validation() {
        let d2 = diag(&[0.5, 0.5]);
        let d3 = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            Ensemble::new(Distribution::new(vec![0.5, 0.5]).unwrap(), vec![d2.clone()]),
            Err(Error::InvalidEnsemble(_))
        ));
        assert!(matches!(
            Ensemble::new(
                Distribution::new(vec![0.5, 0.5]).unwrap(),
                vec![d2.clone(), d3]
            ),
            Err(Error::InvalidEnsemble(_))
        ));
    }

    #[test]
    fn confusion_probability_decays_with_copies() {
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[0.25, 0.75]);
        let s = quantum_relative_entropy(&rho, &sigma)
            .unwrap()
            .finite()
            .unwrap();
        let p1 = sanov_confusion_probability(&rho, &sigma, 1).unwrap();
        let p10 = sanov_confusion_probability(&rho, &sigma, 10).unwrap();
        assert_abs_diff_eq!(p1, (-s).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(p10, (-10.0 * s).exp(), epsilon = 1e-12);
        assert!(p10 < p1);
        // Identical states are maximally confusable.
        assert_eq!(sanov_confusion_probability(&rho, &rho, 5).unwrap(), 1.0);
        // Disjoint supports are never confused.
        let pure0 = diag(&[1.0, 0.0]);
        let pure1 = diag(&[0.0, 1.0]);
        assert_eq!(sanov_confusion_probability(&pure0, &pure1, 1).unwrap(), 0.0);
        assert!(sanov_confusion_probability(&rho, &sigma, 0).is_err());
    }
}

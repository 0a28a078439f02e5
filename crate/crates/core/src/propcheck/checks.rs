//! The check registry: each entry pairs a seeded input generator with an
//! evaluator that measures how badly the identity or inequality under test
//! is violated. Evaluators always work from the serialized input form, so a
//! recorded counterexample replays to exactly the numbers seen live.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generators::{
    sample_ensemble, sample_joint2, sample_joint3, sample_markov, sample_povm,
    sample_product_joint, sample_simplex,
};
use super::DimCaps;
use crate::error::{Error, Result};
use crate::extreal::ExtendedReal;
use crate::formats::{
    DistributionFile, EnsembleFile, Joint3File, JointFile, MarkovFile, MatrixFile, PovmFile,
};
use crate::probdist::{
    conditional_entropy, entropy_nats, marginal, markov_joint, merge_axes, mutual_information,
    shannon_entropy, Axis2, Joint2, Joint3, LogBase, MergePair,
};
use crate::qentropy::{
    holevo_chi, measured_mutual_info, mixing_bound_terms, orthogonal_embedding,
    quantum_joint_marginals, quantum_relative_entropy, s_conditional, s_mutual, subentropy,
    von_neumann,
};
use crate::qlinalg::{
    conjugate_by_unitary, partial_trace, sample_density, sample_pure_state, sample_unitary, tensor,
    BipartiteDims, DensityMatrix, Subsystem, TripartiteDims,
};
use rand::Rng;

/// Which suite a check belongs to. `SelfTest` checks are deliberately wrong
/// and are excluded from every normal selection; they exist to prove the
/// harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Quantum,
    SelfTest,
}

/// Outcome of evaluating one check on one input: the worst violation
/// magnitude across its assertions, and whether any assertion failed.
///
/// For inequalities the magnitude is `max(0, lhs - rhs - tol)`; for
/// equalities it is `|lhs - rhs|` (reported even when passing).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eval {
    pub violation: f64,
    pub failed: bool,
}

/// Accumulates assertion results for one trial.
struct Checker {
    tol: f64,
    worst: f64,
    failed: bool,
}

impl Checker {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            worst: 0.0,
            failed: false,
        }
    }

    /// Asserts `lhs <= rhs` within tolerance.
    fn le(&mut self, lhs: f64, rhs: f64) {
        let excess = lhs - rhs - self.tol;
        if excess > 0.0 {
            self.failed = true;
            self.worst = self.worst.max(excess);
        }
    }

    /// Asserts `lhs = rhs` within tolerance.
    fn eq(&mut self, lhs: f64, rhs: f64) {
        let diff = (lhs - rhs).abs();
        self.worst = self.worst.max(diff);
        if diff > self.tol {
            self.failed = true;
        }
    }

    /// Records an unconditional failure of the given magnitude.
    fn violated(&mut self, magnitude: f64) {
        self.failed = true;
        self.worst = self.worst.max(magnitude);
    }

    fn finish(self) -> Eval {
        Eval {
            violation: self.worst,
            failed: self.failed,
        }
    }
}

/// The serialized input of one trial, stored verbatim in counterexample
/// records so a failure can be replayed on the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckInput {
    Distribution {
        dist: DistributionFile,
    },
    Joint {
        joint: JointFile,
    },
    Joint3 {
        joint: Joint3File,
    },
    Markov {
        chain: MarkovFile,
    },
    ProductJoint {
        a: DistributionFile,
        b: DistributionFile,
    },
    State {
        state: MatrixFile,
    },
    StateUnitary {
        state: MatrixFile,
        unitary: MatrixFile,
    },
    BipartiteState {
        state: MatrixFile,
        dim_a: usize,
        dim_b: usize,
    },
    TripartiteState {
        state: MatrixFile,
        dim_a: usize,
        dim_b: usize,
        dim_c: usize,
    },
    StatePair {
        rho: MatrixFile,
        sigma: MatrixFile,
    },
    MixturePair {
        weight: f64,
        rho1: MatrixFile,
        rho2: MatrixFile,
        sigma1: MatrixFile,
        sigma2: MatrixFile,
    },
    MixtureSingle {
        weight: f64,
        rho1: MatrixFile,
        rho2: MatrixFile,
        sigma: MatrixFile,
    },
    ProductPair {
        a: MatrixFile,
        b: MatrixFile,
    },
    EnsembleInput {
        ensemble: EnsembleFile,
    },
    MeasuredEnsemble {
        ensemble: EnsembleFile,
        povm: PovmFile,
    },
    ClassicalState {
        dist: DistributionFile,
    },
}

/// One registered check.
pub struct CheckDef {
    pub name: &'static str,
    /// Primary coverage tag, echoed in reports.
    pub eq: &'static str,
    /// Every coverage tag this check contributes to.
    pub labels: &'static [&'static str],
    pub suite: Suite,
    /// Default tolerance; overridable per check name in the trial config.
    pub tolerance: f64,
    pub(crate) generate: fn(&mut ChaCha8Rng, &DimCaps) -> CheckInput,
    pub(crate) evaluate: fn(&CheckInput, f64) -> Result<Eval>,
}

fn mismatch(check: &str) -> Error {
    Error::ReplayMismatch {
        check: check.into(),
    }
}

// ---------------------------------------------------------------------------
// Classical helpers

fn classical_size(rng: &mut ChaCha8Rng, caps: &DimCaps) -> usize {
    rng.gen_range(2..=caps.max_classical)
}

fn quantum_dim(rng: &mut ChaCha8Rng, caps: &DimCaps) -> usize {
    rng.gen_range(2..=caps.max_quantum)
}

fn h_nats(probs: &[f64]) -> f64 {
    entropy_nats(probs.iter().copied())
}

/// The (A,B) pair marginal of a three-variable joint, as a joint.
fn pair_ab(j3: &Joint3) -> Joint2 {
    let (da, db, _) = j3.dims();
    let d = marginal(&merge_axes(j3, MergePair::AB), Axis2::A);
    Joint2::new(da, db, d.probs().to_vec()).expect("marginal cells form a joint")
}

fn pair_ac(j3: &Joint3) -> Joint2 {
    let (da, _, dc) = j3.dims();
    let d = marginal(&merge_axes(j3, MergePair::AC), Axis2::A);
    Joint2::new(da, dc, d.probs().to_vec()).expect("marginal cells form a joint")
}

fn pair_bc(j3: &Joint3) -> Joint2 {
    let (_, db, dc) = j3.dims();
    let d = marginal(&merge_axes(j3, MergePair::BC), Axis2::B);
    Joint2::new(db, dc, d.probs().to_vec()).expect("marginal cells form a joint")
}

// ---------------------------------------------------------------------------
// Classical generators and evaluators

fn gen_distribution(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    // The grouping identity needs at least three outcomes to merge two.
    let n = rng.gen_range(3..=caps.max_classical.max(3));
    CheckInput::Distribution {
        dist: DistributionFile {
            probs: sample_simplex(rng, n),
            labels: None,
        },
    }
}

/// H(p_1..p_n) = H(p_1+p_2, p_3..p_n) + (p_1+p_2) H(p_1/s, p_2/s).
fn eval_grouping(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Distribution { dist } = input else {
        return Err(mismatch("eq2_grouping_axiom"));
    };
    let p = dist.to_distribution()?;
    let probs = p.probs();
    let mut ck = Checker::new(tol);
    let lhs = h_nats(probs);
    let s = probs[0] + probs[1];
    let mut merged = vec![s];
    merged.extend_from_slice(&probs[2..]);
    let rhs = if s > 0.0 {
        h_nats(&merged) + s * h_nats(&[probs[0] / s, probs[1] / s])
    } else {
        h_nats(&merged)
    };
    ck.eq(lhs, rhs);
    Ok(ck.finish())
}

fn gen_joint(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let rows = classical_size(rng, caps);
    let cols = classical_size(rng, caps);
    CheckInput::Joint {
        joint: JointFile::from_joint(&sample_joint2(rng, rows, cols)),
    }
}

/// H(A,B) = H(B,A) and H(A:B) = H(B:A).
fn eval_joint_symmetry(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("item1_joint_symmetry"));
    };
    let j = joint.to_joint()?;
    let t = j.transpose();
    let mut ck = Checker::new(tol);
    ck.eq(h_nats(j.probs()), h_nats(t.probs()));
    ck.eq(
        mutual_information(&j, LogBase::Nats),
        mutual_information(&t, LogBase::Nats),
    );
    Ok(ck.finish())
}

/// H(B|A) >= 0 and H(A:B) <= min(H(A), H(B)).
fn eval_information_bounds(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("item2_information_bounds"));
    };
    let j = joint.to_joint()?;
    let mut ck = Checker::new(tol);
    let cond_b = conditional_entropy(&j, Axis2::A, LogBase::Nats);
    let mi = mutual_information(&j, LogBase::Nats);
    ck.le(-cond_b, 0.0);
    ck.le(mi, h_nats(marginal(&j, Axis2::A).probs()));
    ck.le(mi, h_nats(marginal(&j, Axis2::B).probs()));
    Ok(ck.finish())
}

/// H(A) <= H(A,B) and H(B) <= H(A,B).
fn eval_joint_monotonicity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("item3_joint_monotonicity"));
    };
    let j = joint.to_joint()?;
    let mut ck = Checker::new(tol);
    let h_ab = h_nats(j.probs());
    ck.le(h_nats(marginal(&j, Axis2::A).probs()), h_ab);
    ck.le(h_nats(marginal(&j, Axis2::B).probs()), h_ab);
    Ok(ck.finish())
}

/// H(A,B) <= H(A) + H(B).
fn eval_subadditivity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("item4_subadditivity"));
    };
    let j = joint.to_joint()?;
    let mut ck = Checker::new(tol);
    ck.le(
        h_nats(j.probs()),
        h_nats(marginal(&j, Axis2::A).probs()) + h_nats(marginal(&j, Axis2::B).probs()),
    );
    Ok(ck.finish())
}

fn gen_product_joint(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let rows = classical_size(rng, caps);
    let cols = classical_size(rng, caps);
    let j = sample_product_joint(rng, rows, cols);
    let a = marginal(&j, Axis2::A);
    let b = marginal(&j, Axis2::B);
    CheckInput::ProductJoint {
        a: DistributionFile::from_distribution(&a),
        b: DistributionFile::from_distribution(&b),
    }
}

/// Subadditivity is tight for independent variables.
fn eval_product_additivity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::ProductJoint { a, b } = input else {
        return Err(mismatch("item4_product_additivity"));
    };
    let pa = a.to_distribution()?;
    let pb = b.to_distribution()?;
    let cells: Vec<f64> = pa
        .probs()
        .iter()
        .flat_map(|&pi| pb.probs().iter().map(move |&qj| pi * qj))
        .collect();
    let j = Joint2::new(pa.len(), pb.len(), cells)?;
    let mut ck = Checker::new(tol);
    ck.eq(
        h_nats(j.probs()),
        shannon_entropy(&pa, LogBase::Nats) + shannon_entropy(&pb, LogBase::Nats),
    );
    Ok(ck.finish())
}

/// H(B|A) <= H(B), so H(A:B) >= 0.
fn eval_conditioning_reduces(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("item5_conditioning_reduces_entropy"));
    };
    let j = joint.to_joint()?;
    let mut ck = Checker::new(tol);
    ck.le(
        conditional_entropy(&j, Axis2::A, LogBase::Nats),
        h_nats(marginal(&j, Axis2::B).probs()),
    );
    ck.le(-mutual_information(&j, LogBase::Nats), 0.0);
    Ok(ck.finish())
}

/// The summand-level definitions agree with the difference forms on joints
/// with every cell positive.
fn eval_summand_forms(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("eq6_summand_forms"));
    };
    let j = joint.to_joint()?;
    let (rows, cols) = j.dims();
    let pa = marginal(&j, Axis2::A);
    let pb = marginal(&j, Axis2::B);
    let mut cond_direct = 0.0; // -sum p(a,b) ln p(a|b)
    let mut mi_direct = 0.0; // sum p(a,b) ln [p(a,b) / p(a)p(b)]
    for i in 0..rows {
        for jj in 0..cols {
            let p = j.get(i, jj);
            if p > 0.0 {
                cond_direct -= p * (p / pb.probs()[jj]).ln();
                mi_direct += p * (p / (pa.probs()[i] * pb.probs()[jj])).ln();
            }
        }
    }
    let mut ck = Checker::new(tol);
    ck.eq(
        cond_direct,
        conditional_entropy(&j, Axis2::B, LogBase::Nats),
    );
    ck.eq(mi_direct, mutual_information(&j, LogBase::Nats));
    Ok(ck.finish())
}

fn gen_joint3(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let da = classical_size(rng, caps);
    let db = classical_size(rng, caps);
    let dc = classical_size(rng, caps);
    CheckInput::Joint3 {
        joint: Joint3File::from_joint3(&sample_joint3(rng, da, db, dc)),
    }
}

/// H(A|B,C) <= H(A|B): a second conditioning variable never hurts.
fn eval_conditioning_extra(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint3 { joint } = input else {
        return Err(mismatch("eq11_conditioning_extra_variable"));
    };
    let j3 = joint.to_joint3()?;
    let h_abc = h_nats(j3.probs());
    let h_bc = h_nats(pair_bc(&j3).probs());
    let ab = pair_ab(&j3);
    let h_ab = h_nats(ab.probs());
    let h_b = h_nats(marginal(&ab, Axis2::B).probs());
    let mut ck = Checker::new(tol);
    ck.le(h_abc - h_bc, h_ab - h_b);
    Ok(ck.finish())
}

/// H(A,C|B) = H(A|B) + H(C|A,B), assembled through three different
/// marginalization routes.
fn eval_chain_rule(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint3 { joint } = input else {
        return Err(mismatch("eq12_chain_rule"));
    };
    let j3 = joint.to_joint3()?;
    let lhs = conditional_entropy(&merge_axes(&j3, MergePair::AC), Axis2::B, LogBase::Nats);
    let h_a_given_b = conditional_entropy(&pair_ab(&j3), Axis2::B, LogBase::Nats);
    let h_c_given_ab =
        conditional_entropy(&merge_axes(&j3, MergePair::AB), Axis2::A, LogBase::Nats);
    let mut ck = Checker::new(tol);
    ck.eq(lhs, h_a_given_b + h_c_given_ab);
    Ok(ck.finish())
}

/// H(A,B,C) + H(B) <= H(A,B) + H(B,C).
fn eval_strong_subadditivity_classical(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint3 { joint } = input else {
        return Err(mismatch("item6_strong_subadditivity"));
    };
    let j3 = joint.to_joint3()?;
    let ab = pair_ab(&j3);
    let h_b = h_nats(marginal(&ab, Axis2::B).probs());
    let mut ck = Checker::new(tol);
    ck.le(
        h_nats(j3.probs()) + h_b,
        h_nats(ab.probs()) + h_nats(pair_bc(&j3).probs()),
    );
    Ok(ck.finish())
}

fn gen_markov(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let na = classical_size(rng, caps);
    let nb = classical_size(rng, caps);
    let nc = classical_size(rng, caps);
    CheckInput::Markov {
        chain: MarkovFile::from_chain(&sample_markov(rng, na, nb, nc)),
    }
}

/// Along A -> B -> C: H(A:C) <= H(A:B) <= H(A).
fn eval_data_processing(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Markov { chain } = input else {
        return Err(mismatch("eq13_data_processing"));
    };
    let j3 = markov_joint(&chain.to_chain()?);
    let ab = pair_ab(&j3);
    let i_ab = mutual_information(&ab, LogBase::Nats);
    let i_ac = mutual_information(&pair_ac(&j3), LogBase::Nats);
    let h_a = h_nats(marginal(&ab, Axis2::A).probs());
    let mut ck = Checker::new(tol);
    ck.le(i_ac, i_ab);
    ck.le(i_ab, h_a);
    Ok(ck.finish())
}

/// Along A -> B -> C, looking backwards: H(C:A) <= H(C:B).
fn eval_data_pipelining(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Markov { chain } = input else {
        return Err(mismatch("eq14_data_pipelining"));
    };
    let j3 = markov_joint(&chain.to_chain()?);
    let mut ck = Checker::new(tol);
    ck.le(
        mutual_information(&pair_ac(&j3), LogBase::Nats),
        mutual_information(&pair_bc(&j3), LogBase::Nats),
    );
    Ok(ck.finish())
}

/// Deliberately reversed subadditivity; fails on any correlated joint.
fn eval_mutant_reversed(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::Joint { joint } = input else {
        return Err(mismatch("mutant_subadditivity_reversed"));
    };
    let j = joint.to_joint()?;
    let mut ck = Checker::new(tol);
    ck.le(
        h_nats(marginal(&j, Axis2::A).probs()) + h_nats(marginal(&j, Axis2::B).probs()),
        h_nats(j.probs()),
    );
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// Quantum generators and evaluators

fn gen_state(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    let rank = rng.gen_range(1..=dim);
    CheckInput::State {
        state: MatrixFile::from_density(&sample_density(rng, dim, rank)),
    }
}

fn gen_state_unitary(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    let rank = rng.gen_range(1..=dim);
    CheckInput::StateUnitary {
        state: MatrixFile::from_density(&sample_density(rng, dim, rank)),
        unitary: MatrixFile::from_matrix(&sample_unitary(rng, dim)),
    }
}

/// S(U rho U^dag) = S(rho).
fn eval_unitary_invariance(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::StateUnitary { state, unitary } = input else {
        return Err(mismatch("eq17_unitary_invariance"));
    };
    let rho = state.to_density()?;
    let u = unitary.to_matrix()?;
    let rotated = conjugate_by_unitary(&rho, &u)?;
    let mut ck = Checker::new(tol);
    ck.eq(
        von_neumann(&rho, LogBase::Nats),
        von_neumann(&rotated, LogBase::Nats),
    );
    Ok(ck.finish())
}

fn gen_pure_bipartite(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let da = quantum_dim(rng, caps);
    let db = quantum_dim(rng, caps);
    let psi = sample_pure_state(rng, da * db);
    let rho = DensityMatrix::pure(&psi).expect("sampled vector is nonzero");
    CheckInput::BipartiteState {
        state: MatrixFile::from_density(&rho),
        dim_a: da,
        dim_b: db,
    }
}

/// For a pure joint state the two marginals have equal entropy and the
/// joint entropy vanishes.
fn eval_pure_marginal_symmetry(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::BipartiteState {
        state,
        dim_a,
        dim_b,
    } = input
    else {
        return Err(mismatch("pure_bipartite_symmetry"));
    };
    let rho = state.to_density()?;
    let dims = BipartiteDims::new(*dim_a, *dim_b)?;
    let parts = quantum_joint_marginals(&rho, dims, LogBase::Nats)?;
    let mut ck = Checker::new(tol);
    ck.eq(parts.s_a, parts.s_b);
    ck.eq(parts.s_ab, 0.0);
    Ok(ck.finish())
}

fn gen_ensemble_input(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    let count = rng.gen_range(2..=4);
    CheckInput::EnsembleInput {
        ensemble: EnsembleFile::from_ensemble(&sample_ensemble(rng, dim, count)),
    }
}

/// S(avg) <= H(p) + sum p_i S(rho_i).
fn eval_mixing_bound(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::EnsembleInput { ensemble } = input else {
        return Err(mismatch("eq18_mixing_entropy_bound"));
    };
    let e = ensemble.to_ensemble()?;
    let terms = mixing_bound_terms(&e, LogBase::Nats);
    let mut ck = Checker::new(tol);
    ck.le(terms.s_avg, terms.h_p + terms.avg_s);
    Ok(ck.finish())
}

/// The block-diagonal embedding attains the mixing bound exactly.
fn eval_embedding_entropy(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::EnsembleInput { ensemble } = input else {
        return Err(mismatch("eq19_orthogonal_embedding"));
    };
    let e = ensemble.to_ensemble()?;
    let embedded = orthogonal_embedding(&e)?;
    let terms = mixing_bound_terms(&e, LogBase::Nats);
    let mut ck = Checker::new(tol);
    ck.eq(
        von_neumann(&embedded, LogBase::Nats),
        terms.h_p + terms.avg_s,
    );
    Ok(ck.finish())
}

/// sum p_i S(rho_i) <= S(avg): entropy is concave.
fn eval_concavity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::EnsembleInput { ensemble } = input else {
        return Err(mismatch("eq20_entropy_concavity"));
    };
    let e = ensemble.to_ensemble()?;
    let terms = mixing_bound_terms(&e, LogBase::Nats);
    let mut ck = Checker::new(tol);
    ck.le(terms.avg_s, terms.s_avg);
    Ok(ck.finish())
}

fn gen_measured_ensemble(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    let count = rng.gen_range(2..=4);
    let outcomes = rng.gen_range(2..=4);
    CheckInput::MeasuredEnsemble {
        ensemble: EnsembleFile::from_ensemble(&sample_ensemble(rng, dim, count)),
        povm: PovmFile::from_povm(&sample_povm(rng, dim, outcomes)),
    }
}

/// Accessible information <= chi <= H(p), and likewise <= S(avg) <= ln d.
fn eval_holevo_sandwich(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::MeasuredEnsemble { ensemble, povm } = input else {
        return Err(mismatch("eq22_holevo_sandwich"));
    };
    let e = ensemble.to_ensemble()?;
    let m = povm.to_povm()?;
    let measured = measured_mutual_info(&e, &m, LogBase::Nats)?;
    let chi = holevo_chi(&e, LogBase::Nats);
    let terms = mixing_bound_terms(&e, LogBase::Nats);
    let mut ck = Checker::new(tol);
    ck.le(measured, chi);
    ck.le(chi, terms.h_p);
    ck.le(measured, terms.s_avg);
    ck.le(terms.s_avg, (e.dim() as f64).ln());
    Ok(ck.finish())
}

fn gen_bipartite_state(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let da = quantum_dim(rng, caps);
    let db = quantum_dim(rng, caps);
    let total = da * db;
    let rank = rng.gen_range(1..=total);
    CheckInput::BipartiteState {
        state: MatrixFile::from_density(&sample_density(rng, total, rank)),
        dim_a: da,
        dim_b: db,
    }
}

/// S(A:B) agrees with both S(A) - S(A|B) and S(B) - S(B|A).
fn eval_mutual_consistency(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::BipartiteState {
        state,
        dim_a,
        dim_b,
    } = input
    else {
        return Err(mismatch("eq25_27_mutual_info_consistency"));
    };
    let rho = state.to_density()?;
    let dims = BipartiteDims::new(*dim_a, *dim_b)?;
    let parts = quantum_joint_marginals(&rho, dims, LogBase::Nats)?;
    let s_mut = s_mutual(&rho, dims, LogBase::Nats)?;
    let cond_a_given_b = s_conditional(&rho, dims, LogBase::Nats)?;
    let cond_b_given_a = parts.s_ab - parts.s_a;
    let mut ck = Checker::new(tol);
    ck.eq(s_mut, parts.s_a - cond_a_given_b);
    ck.eq(s_mut, parts.s_b - cond_b_given_a);
    Ok(ck.finish())
}

fn gen_product_pair(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let da = quantum_dim(rng, caps);
    let db = quantum_dim(rng, caps);
    let ra = rng.gen_range(1..=da);
    let rb = rng.gen_range(1..=db);
    CheckInput::ProductPair {
        a: MatrixFile::from_density(&sample_density(rng, da, ra)),
        b: MatrixFile::from_density(&sample_density(rng, db, rb)),
    }
}

/// S(rho (x) sigma) = S(rho) + S(sigma).
fn eval_additivity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::ProductPair { a, b } = input else {
        return Err(mismatch("eq28_entropy_additivity"));
    };
    let rho_a = a.to_density()?;
    let rho_b = b.to_density()?;
    let ab = tensor(&rho_a, &rho_b)?;
    let mut ck = Checker::new(tol);
    ck.eq(
        von_neumann(&ab, LogBase::Nats),
        von_neumann(&rho_a, LogBase::Nats) + von_neumann(&rho_b, LogBase::Nats),
    );
    Ok(ck.finish())
}

fn gen_tripartite(rng: &mut ChaCha8Rng, _caps: &DimCaps) -> CheckInput {
    // Three qubits: big enough to be nontrivial, small enough to stay fast.
    let rank = rng.gen_range(1..=8);
    CheckInput::TripartiteState {
        state: MatrixFile::from_density(&sample_density(rng, 8, rank)),
        dim_a: 2,
        dim_b: 2,
        dim_c: 2,
    }
}

/// S(A,B,C) + S(B) <= S(A,B) + S(B,C).
fn eval_strong_subadditivity_quantum(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::TripartiteState {
        state,
        dim_a,
        dim_b,
        dim_c,
    } = input
    else {
        return Err(mismatch("eq29_strong_subadditivity"));
    };
    let rho = state.to_density()?;
    let dims = TripartiteDims::new(*dim_a, *dim_b, *dim_c)?;
    let rho_ab = partial_trace(&rho, dims.ab_c(), Subsystem::A)?;
    let rho_bc = partial_trace(&rho, dims.a_bc(), Subsystem::B)?;
    let rho_b = partial_trace(&rho_bc, BipartiteDims::new(*dim_b, *dim_c)?, Subsystem::A)?;
    let mut ck = Checker::new(tol);
    ck.le(
        von_neumann(&rho, LogBase::Nats) + von_neumann(&rho_b, LogBase::Nats),
        von_neumann(&rho_ab, LogBase::Nats) + von_neumann(&rho_bc, LogBase::Nats),
    );
    Ok(ck.finish())
}

/// S(A,B) <= S(A) + S(B).
fn eval_subadditivity_quantum(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::BipartiteState {
        state,
        dim_a,
        dim_b,
    } = input
    else {
        return Err(mismatch("eq30_subadditivity"));
    };
    let rho = state.to_density()?;
    let parts = quantum_joint_marginals(&rho, BipartiteDims::new(*dim_a, *dim_b)?, LogBase::Nats)?;
    let mut ck = Checker::new(tol);
    ck.le(parts.s_ab, parts.s_a + parts.s_b);
    Ok(ck.finish())
}

/// |S(A) - S(B)| <= S(A,B).
fn eval_triangle(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::BipartiteState {
        state,
        dim_a,
        dim_b,
    } = input
    else {
        return Err(mismatch("eq31_triangle_inequality"));
    };
    let rho = state.to_density()?;
    let parts = quantum_joint_marginals(&rho, BipartiteDims::new(*dim_a, *dim_b)?, LogBase::Nats)?;
    let mut ck = Checker::new(tol);
    ck.le((parts.s_a - parts.s_b).abs(), parts.s_ab);
    Ok(ck.finish())
}

fn gen_state_pair(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    let rank = rng.gen_range(1..=dim);
    CheckInput::StatePair {
        rho: MatrixFile::from_density(&sample_density(rng, dim, rank)),
        // Full rank, so the relative entropy stays finite.
        sigma: MatrixFile::from_density(&sample_density(rng, dim, dim)),
    }
}

/// S(rho||sigma) >= 0, with equality at rho = sigma.
fn eval_relative_nonnegativity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::StatePair { rho, sigma } = input else {
        return Err(mismatch("klein_prop1_nonnegativity"));
    };
    let r = rho.to_density()?;
    let s = sigma.to_density()?;
    let mut ck = Checker::new(tol);
    match quantum_relative_entropy(&r, &s)? {
        ExtendedReal::Finite(v) => ck.le(-v, 0.0),
        ExtendedReal::PosInfinity => {} // infinity is nonnegative
    }
    match quantum_relative_entropy(&r, &r)? {
        ExtendedReal::Finite(v) => ck.eq(v, 0.0),
        ExtendedReal::PosInfinity => ck.violated(f64::MAX),
    }
    Ok(ck.finish())
}

fn gen_mixture_pair(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    CheckInput::MixturePair {
        weight: rng.gen(),
        rho1: MatrixFile::from_density(&sample_density(rng, dim, dim)),
        rho2: MatrixFile::from_density(&sample_density(rng, dim, dim)),
        sigma1: MatrixFile::from_density(&sample_density(rng, dim, dim)),
        sigma2: MatrixFile::from_density(&sample_density(rng, dim, dim)),
    }
}

fn mix(w: f64, a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(a.matrix().scaled(w).add(&b.matrix().scaled(1.0 - w)))
}

fn relative_or(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Option<f64>> {
    Ok(quantum_relative_entropy(rho, sigma)?.finite())
}

/// S(w rho1 + (1-w) rho2 || w sigma1 + (1-w) sigma2)
///   <= w S(rho1||sigma1) + (1-w) S(rho2||sigma2), on full-rank inputs.
fn eval_joint_convexity(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::MixturePair {
        weight,
        rho1,
        rho2,
        sigma1,
        sigma2,
    } = input
    else {
        return Err(mismatch("eq33_joint_convexity"));
    };
    let (w, r1, r2) = (*weight, rho1.to_density()?, rho2.to_density()?);
    let (s1, s2) = (sigma1.to_density()?, sigma2.to_density()?);
    let mixed_rho = mix(w, &r1, &r2)?;
    let mixed_sigma = mix(w, &s1, &s2)?;
    let mut ck = Checker::new(tol);
    match (
        relative_or(&mixed_rho, &mixed_sigma)?,
        relative_or(&r1, &s1)?,
        relative_or(&r2, &s2)?,
    ) {
        (Some(lhs), Some(a), Some(b)) => ck.le(lhs, w * a + (1.0 - w) * b),
        (None, Some(_), Some(_)) => ck.violated(f64::MAX),
        _ => {} // an infinite right side makes the bound vacuous
    }
    Ok(ck.finish())
}

fn gen_mixture_single(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let dim = quantum_dim(rng, caps);
    CheckInput::MixtureSingle {
        weight: rng.gen(),
        rho1: MatrixFile::from_density(&sample_density(rng, dim, dim)),
        rho2: MatrixFile::from_density(&sample_density(rng, dim, dim)),
        sigma: MatrixFile::from_density(&sample_density(rng, dim, dim)),
    }
}

/// Convexity in the first argument against a fixed reference.
fn eval_convexity_first(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::MixtureSingle {
        weight,
        rho1,
        rho2,
        sigma,
    } = input
    else {
        return Err(mismatch("eq34_convexity_first"));
    };
    let (w, r1, r2) = (*weight, rho1.to_density()?, rho2.to_density()?);
    let s = sigma.to_density()?;
    let mixed = mix(w, &r1, &r2)?;
    let mut ck = Checker::new(tol);
    match (
        relative_or(&mixed, &s)?,
        relative_or(&r1, &s)?,
        relative_or(&r2, &s)?,
    ) {
        (Some(lhs), Some(a), Some(b)) => ck.le(lhs, w * a + (1.0 - w) * b),
        (None, Some(_), Some(_)) => ck.violated(f64::MAX),
        _ => {}
    }
    Ok(ck.finish())
}

/// 0 <= Q(rho) <= S(rho).
fn eval_subentropy_bound(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::State { state } = input else {
        return Err(mismatch("eq21_subentropy_bound"));
    };
    let rho = state.to_density()?;
    let q = subentropy(&rho);
    let mut ck = Checker::new(tol);
    ck.le(q, von_neumann(&rho, LogBase::Nats));
    ck.le(-q, 0.0);
    Ok(ck.finish())
}

fn gen_classical_state(rng: &mut ChaCha8Rng, caps: &DimCaps) -> CheckInput {
    let n = quantum_dim(rng, caps);
    CheckInput::ClassicalState {
        dist: DistributionFile {
            probs: sample_simplex(rng, n),
            labels: None,
        },
    }
}

/// A diagonal embedding has von Neumann entropy equal to the Shannon
/// entropy of its diagonal.
fn eval_shannon_reduction(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::ClassicalState { dist } = input else {
        return Err(mismatch("shannon_reduction"));
    };
    let p = dist.to_distribution()?;
    let rho = DensityMatrix::from_classical(&p);
    let mut ck = Checker::new(tol);
    ck.eq(
        von_neumann(&rho, LogBase::Nats),
        shannon_entropy(&p, LogBase::Nats),
    );
    Ok(ck.finish())
}

/// On a pure joint state, S(A|B) = -S(A): a flag no classical joint can
/// raise.
fn eval_witness_pure(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::BipartiteState {
        state,
        dim_a,
        dim_b,
    } = input
    else {
        return Err(mismatch("entanglement_witness_pure"));
    };
    let rho = state.to_density()?;
    let dims = BipartiteDims::new(*dim_a, *dim_b)?;
    let parts = quantum_joint_marginals(&rho, dims, LogBase::Nats)?;
    let cond = s_conditional(&rho, dims, LogBase::Nats)?;
    let mut ck = Checker::new(tol);
    ck.eq(cond, -parts.s_a);
    Ok(ck.finish())
}

/// On a product state, S(A|B) = S(A) >= 0.
fn eval_witness_product(input: &CheckInput, tol: f64) -> Result<Eval> {
    let CheckInput::ProductPair { a, b } = input else {
        return Err(mismatch("entanglement_witness_product"));
    };
    let rho_a = a.to_density()?;
    let rho_b = b.to_density()?;
    let ab = tensor(&rho_a, &rho_b)?;
    let dims = BipartiteDims::new(rho_a.dim(), rho_b.dim())?;
    let cond = s_conditional(&ab, dims, LogBase::Nats)?;
    let mut ck = Checker::new(tol);
    ck.eq(cond, von_neumann(&rho_a, LogBase::Nats));
    ck.le(-cond, 0.0);
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// The registry

static CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "eq2_grouping_axiom",
        eq: "eq2",
        labels: &["eq2"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_distribution,
        evaluate: eval_grouping,
    },
    CheckDef {
        name: "item1_joint_symmetry",
        eq: "item1",
        labels: &["item1"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_joint_symmetry,
    },
    CheckDef {
        name: "item2_information_bounds",
        eq: "item2",
        labels: &["item2"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_information_bounds,
    },
    CheckDef {
        name: "item3_joint_monotonicity",
        eq: "item3",
        labels: &["item3"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_joint_monotonicity,
    },
    CheckDef {
        name: "item4_subadditivity",
        eq: "item4",
        labels: &["item4"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_subadditivity,
    },
    CheckDef {
        name: "item4_product_additivity",
        eq: "item4",
        labels: &["item4"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_product_joint,
        evaluate: eval_product_additivity,
    },
    CheckDef {
        name: "item5_conditioning_reduces_entropy",
        eq: "item5",
        labels: &["item5"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_conditioning_reduces,
    },
    CheckDef {
        name: "eq6_summand_forms",
        eq: "eq6",
        labels: &["eq6", "eq7"],
        suite: Suite::Classical,
        tolerance: 1e-10,
        generate: gen_joint,
        evaluate: eval_summand_forms,
    },
    CheckDef {
        name: "eq11_conditioning_extra_variable",
        eq: "eq11",
        labels: &["eq11"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint3,
        evaluate: eval_conditioning_extra,
    },
    CheckDef {
        name: "eq12_chain_rule",
        eq: "eq12",
        labels: &["eq12"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint3,
        evaluate: eval_chain_rule,
    },
    CheckDef {
        name: "eq13_data_processing",
        eq: "eq13",
        labels: &["eq13"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_markov,
        evaluate: eval_data_processing,
    },
    CheckDef {
        name: "eq14_data_pipelining",
        eq: "eq14",
        labels: &["eq14"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_markov,
        evaluate: eval_data_pipelining,
    },
    CheckDef {
        name: "item6_strong_subadditivity",
        eq: "item6",
        labels: &["item6"],
        suite: Suite::Classical,
        tolerance: 1e-12,
        generate: gen_joint3,
        evaluate: eval_strong_subadditivity_classical,
    },
    CheckDef {
        name: "eq17_unitary_invariance",
        eq: "eq17",
        labels: &["eq17"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_state_unitary,
        evaluate: eval_unitary_invariance,
    },
    CheckDef {
        name: "pure_bipartite_symmetry",
        eq: "pure_symmetry",
        labels: &["pure_symmetry"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_pure_bipartite,
        evaluate: eval_pure_marginal_symmetry,
    },
    CheckDef {
        name: "eq18_mixing_entropy_bound",
        eq: "eq18",
        labels: &["eq18"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_ensemble_input,
        evaluate: eval_mixing_bound,
    },
    CheckDef {
        name: "eq19_orthogonal_embedding",
        eq: "eq19",
        labels: &["eq19"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_ensemble_input,
        evaluate: eval_embedding_entropy,
    },
    CheckDef {
        name: "eq20_entropy_concavity",
        eq: "eq20",
        labels: &["eq20"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_ensemble_input,
        evaluate: eval_concavity,
    },
    CheckDef {
        name: "eq22_holevo_sandwich",
        eq: "eq22",
        labels: &["eq22", "eq23"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_measured_ensemble,
        evaluate: eval_holevo_sandwich,
    },
    CheckDef {
        name: "eq25_27_mutual_info_consistency",
        eq: "eq25_27_consistency",
        labels: &["eq25_27_consistency"],
        suite: Suite::Quantum,
        tolerance: 1e-10,
        generate: gen_bipartite_state,
        evaluate: eval_mutual_consistency,
    },
    CheckDef {
        name: "eq28_entropy_additivity",
        eq: "eq28",
        labels: &["eq28"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_product_pair,
        evaluate: eval_additivity,
    },
    CheckDef {
        name: "eq29_strong_subadditivity",
        eq: "eq29",
        labels: &["eq29"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_tripartite,
        evaluate: eval_strong_subadditivity_quantum,
    },
    CheckDef {
        name: "eq30_subadditivity",
        eq: "eq30",
        labels: &["eq30"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_bipartite_state,
        evaluate: eval_subadditivity_quantum,
    },
    CheckDef {
        name: "eq31_triangle_inequality",
        eq: "eq31",
        labels: &["eq31"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_bipartite_state,
        evaluate: eval_triangle,
    },
    CheckDef {
        name: "klein_prop1_nonnegativity",
        eq: "klein_prop1",
        labels: &["klein_prop1"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_state_pair,
        evaluate: eval_relative_nonnegativity,
    },
    CheckDef {
        name: "eq33_joint_convexity",
        eq: "eq33",
        labels: &["eq33"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_mixture_pair,
        evaluate: eval_joint_convexity,
    },
    CheckDef {
        name: "eq34_convexity_first",
        eq: "eq34",
        labels: &["eq34"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_mixture_single,
        evaluate: eval_convexity_first,
    },
    CheckDef {
        name: "eq21_subentropy_bound",
        eq: "eq21_subentropy_bound",
        labels: &["eq21_subentropy_bound"],
        suite: Suite::Quantum,
        tolerance: 1e-9,
        generate: gen_state,
        evaluate: eval_subentropy_bound,
    },
    CheckDef {
        name: "shannon_reduction",
        eq: "shannon_reduction",
        labels: &["shannon_reduction"],
        suite: Suite::Quantum,
        tolerance: 1e-10,
        generate: gen_classical_state,
        evaluate: eval_shannon_reduction,
    },
    CheckDef {
        name: "entanglement_witness_pure",
        eq: "entanglement_witness",
        labels: &["entanglement_witness"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_pure_bipartite,
        evaluate: eval_witness_pure,
    },
    CheckDef {
        name: "entanglement_witness_product",
        eq: "entanglement_witness",
        labels: &["entanglement_witness"],
        suite: Suite::Quantum,
        tolerance: 1e-8,
        generate: gen_product_pair,
        evaluate: eval_witness_product,
    },
    CheckDef {
        name: "mutant_subadditivity_reversed",
        eq: "selftest",
        labels: &["selftest"],
        suite: Suite::SelfTest,
        tolerance: 1e-12,
        generate: gen_joint,
        evaluate: eval_mutant_reversed,
    },
];

pub fn all_checks() -> &'static [CheckDef] {
    CHECKS
}

pub fn find_check(name: &str) -> Result<&'static CheckDef> {
    CHECKS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCheck { name: name.into() })
}

//! Command-line front end: reads distributions, density matrices,
//! ensembles, and POVMs from JSON files, prints entropy quantities with
//! six-decimal precision and explicit unit labels, and drives the
//! randomized check suite.
//!
//! Exit codes: 0 success, 1 check-suite failure, 2 malformed file or
//! unknown check name, 3 input that parses but violates an invariant
//! (e.g. a matrix that is not a density matrix), 4 dimension mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use entrolab_core::formats::{
    parse_json, DistributionFile, EnsembleFile, JointFile, MatrixFile, PovmFile,
};
use entrolab_core::probdist::{
    conditional_entropy, joint_entropy, marginal, mutual_information, relative_entropy,
    shannon_entropy, Axis2,
};
use entrolab_core::propcheck::{run_suite, Selection, Suite, TrialConfig};
use entrolab_core::qentropy::{
    holevo_chi, measured_mutual_info, mixing_bound_terms, quantum_relative_entropy, s_conditional,
    s_mutual, sanov_confusion_probability, subentropy, von_neumann,
};
use entrolab_core::qlinalg::{partial_trace, Subsystem};
use entrolab_core::{BipartiteDims, Error, ExtendedReal, LogBase, TripartiteDims};

#[derive(Parser)]
#[command(
    name = "entrolab",
    version,
    about = "Classical and quantum entropy calculations on JSON inputs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropies of a two-variable joint distribution, or the relative
    /// entropy between two distributions
    Classical(ClassicalArgs),
    /// Entropies of a density matrix, with optional subsystem splits
    Quantum(QuantumArgs),
    /// The Holevo bound of an ensemble, optionally against a measurement
    Holevo(HolevoArgs),
    /// Asymptotic probability of confusing two states over N copies
    Sanov(SanovArgs),
    /// Run the randomized invariant checks
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Bits,
    Nats,
}

impl BaseArg {
    fn log(self) -> LogBase {
        match self {
            BaseArg::Bits => LogBase::Bits,
            BaseArg::Nats => LogBase::Nats,
        }
    }

    fn unit(self) -> &'static str {
        match self {
            BaseArg::Bits => "bits",
            BaseArg::Nats => "nats",
        }
    }
}

#[derive(Args)]
struct ClassicalArgs {
    /// JSON file with a joint distribution {"probs": [[..], ..]}
    #[arg(required_unless_present = "relative", conflicts_with = "relative")]
    joint: Option<PathBuf>,
    /// Print only the conditional entropies
    #[arg(long)]
    given: bool,
    /// Print only the mutual information
    #[arg(long)]
    mutual: bool,
    /// Relative entropy H(p||q) between two distribution files
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    relative: Option<Vec<PathBuf>>,
    /// Logarithm base for printed values
    #[arg(long, value_enum, default_value_t = BaseArg::Bits)]
    base: BaseArg,
}

#[derive(Args)]
struct QuantumArgs {
    /// JSON file with a density matrix {"dims": [d, d], "entries": [[re, im], ..]}
    state: PathBuf,
    /// Subsystem dimensions, e.g. 2,2 or 2,2,2; product must match the state
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Also print the subentropy Q
    #[arg(long)]
    subentropy: bool,
    /// Relative entropy against a second state file
    #[arg(long, value_name = "SIGMA")]
    relative: Option<PathBuf>,
    /// Logarithm base for printed values
    #[arg(long, value_enum, default_value_t = BaseArg::Nats)]
    base: BaseArg,
}

#[derive(Args)]
struct HolevoArgs {
    /// JSON file with an ensemble {"probs": [..], "states": [..]}
    ensemble: PathBuf,
    /// Optional POVM file {"elements": [..]}; prints the measured mutual
    /// information and checks it against chi
    povm: Option<PathBuf>,
    /// Logarithm base for printed values
    #[arg(long, value_enum, default_value_t = BaseArg::Nats)]
    base: BaseArg,
}

#[derive(Args)]
struct SanovArgs {
    /// The state actually prepared
    rho: PathBuf,
    /// The state the test tries to rule out
    sigma: PathBuf,
    /// Number of copies measured
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// all, classical, quantum, or a single check name
    #[arg(long, default_value = "all")]
    suite: String,
    /// Trials per check; defaults to 1000 classical / 300 quantum
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    trials: Option<u32>,
    /// Master seed for the trial generators
    #[arg(long, env = "ENTROLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the full JSON report to this path
    #[arg(long, value_name = "OUT")]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> ExitCode {
    let code = match err {
        Error::InvalidFormat(_) | Error::UnknownCheck { .. } | Error::UnsupportedArity { .. } => 2,
        Error::DimensionMismatch { .. } => 4,
        _ => 3,
    };
    ExitCode::from(code)
}

/// Six-decimal rendering with `-0.000000` normalized to `0.000000`, so
/// entropies that are zero up to rounding never print a stray sign.
fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        s[1..].to_string()
    } else {
        s
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidFormat(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Classical(args) => cmd_classical(args),
        Command::Quantum(args) => cmd_quantum(args),
        Command::Holevo(args) => cmd_holevo(args),
        Command::Sanov(args) => cmd_sanov(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn cmd_classical(args: ClassicalArgs) -> Result<ExitCode, Error> {
    let base = args.base.log();
    let unit = args.base.unit();

    if let Some(files) = &args.relative {
        let p = load::<DistributionFile>(&files[0])?.to_distribution()?;
        let q = load::<DistributionFile>(&files[1])?.to_distribution()?;
        match relative_entropy(&p, &q, base)? {
            ExtendedReal::Finite(v) => println!("H(p||q) = {} {unit}", fmt6(v)),
            ExtendedReal::PosInfinity => println!("H(p||q) = inf"),
        }
        return Ok(ExitCode::SUCCESS);
    }

    let path = args
        .joint
        .as_ref()
        .expect("clap requires a joint file here");
    let joint = load::<JointFile>(path)?.to_joint()?;
    let everything = !args.given && !args.mutual;
    if everything {
        let h_a = shannon_entropy(&marginal(&joint, Axis2::A), base);
        let h_b = shannon_entropy(&marginal(&joint, Axis2::B), base);
        println!("H(A) = {} {unit}", fmt6(h_a));
        println!("H(B) = {} {unit}", fmt6(h_b));
        println!("H(A,B) = {} {unit}", fmt6(joint_entropy(&joint, base)));
    }
    if everything || args.given {
        let h_a_given_b = conditional_entropy(&joint, Axis2::B, base);
        let h_b_given_a = conditional_entropy(&joint, Axis2::A, base);
        println!("H(A|B) = {} {unit}", fmt6(h_a_given_b));
        println!("H(B|A) = {} {unit}", fmt6(h_b_given_a));
    }
    if everything || args.mutual {
        println!("H(A:B) = {} {unit}", fmt6(mutual_information(&joint, base)));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_quantum(args: QuantumArgs) -> Result<ExitCode, Error> {
    let base = args.base.log();
    let unit = args.base.unit();
    let rho = load::<MatrixFile>(&args.state)?.to_density()?;

    println!("S = {} {unit}", fmt6(von_neumann(&rho, base)));

    if let Some(dims) = &args.dims {
        match dims[..] {
            [dim_a, dim_b] => {
                let split = BipartiteDims::new(dim_a, dim_b)?;
                if split.total() != rho.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: rho.dim(),
                        got: split.total(),
                    });
                }
                let rho_a = partial_trace(&rho, split, Subsystem::A)?;
                let rho_b = partial_trace(&rho, split, Subsystem::B)?;
                println!("S(A) = {} {unit}", fmt6(von_neumann(&rho_a, base)));
                println!("S(B) = {} {unit}", fmt6(von_neumann(&rho_b, base)));
                println!("S(A,B) = {} {unit}", fmt6(von_neumann(&rho, base)));
                println!(
                    "S(A|B) = {} {unit}",
                    fmt6(s_conditional(&rho, split, base)?)
                );
                println!("S(A:B) = {} {unit}", fmt6(s_mutual(&rho, split, base)?));
            }
            [dim_a, dim_b, dim_c] => {
                let tri = TripartiteDims::new(dim_a, dim_b, dim_c)?;
                if tri.total() != rho.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: rho.dim(),
                        got: tri.total(),
                    });
                }
                let rho_ab = partial_trace(&rho, tri.ab_c(), Subsystem::A)?;
                let rho_bc = partial_trace(&rho, tri.a_bc(), Subsystem::B)?;
                let rho_b =
                    partial_trace(&rho_bc, BipartiteDims::new(dim_b, dim_c)?, Subsystem::A)?;
                let s_abc = von_neumann(&rho, base);
                let s_ab = von_neumann(&rho_ab, base);
                let s_bc = von_neumann(&rho_bc, base);
                let s_b = von_neumann(&rho_b, base);
                println!("S(A,B,C) = {} {unit}", fmt6(s_abc));
                println!("S(A,B) = {} {unit}", fmt6(s_ab));
                println!("S(B,C) = {} {unit}", fmt6(s_bc));
                println!("S(B) = {} {unit}", fmt6(s_b));
                // Strong subadditivity guarantees this is nonnegative.
                println!("SSA slack = {} {unit}", fmt6(s_ab + s_bc - s_abc - s_b));
            }
            _ => {
                return Err(Error::UnsupportedArity { arity: dims.len() });
            }
        }
    }

    if args.subentropy {
        println!("Q = {} {unit}", fmt6(base.from_nats(subentropy(&rho))));
    }

    if let Some(sigma_path) = &args.relative {
        let sigma = load::<MatrixFile>(sigma_path)?.to_density()?;
        match quantum_relative_entropy(&rho, &sigma)? {
            ExtendedReal::Finite(v) => {
                println!("S(rho||sigma) = {} {unit}", fmt6(base.from_nats(v)));
            }
            ExtendedReal::PosInfinity => println!("S(rho||sigma) = inf"),
        }
    }

    Ok(ExitCode::SUCCESS)
}

fn cmd_holevo(args: HolevoArgs) -> Result<ExitCode, Error> {
    let base = args.base.log();
    let unit = args.base.unit();
    let ensemble = load::<EnsembleFile>(&args.ensemble)?.to_ensemble()?;

    let chi = holevo_chi(&ensemble, base);
    let terms = mixing_bound_terms(&ensemble, base);
    let log_dim = base.from_nats((ensemble.dim() as f64).ln());
    println!("chi = {} {unit}", fmt6(chi));
    println!("H(p) = {} {unit}", fmt6(terms.h_p));
    println!("S(avg) = {} {unit}", fmt6(terms.s_avg));
    println!("log d = {} {unit}", fmt6(log_dim));

    if let Some(povm_path) = &args.povm {
        let povm = load::<PovmFile>(povm_path)?.to_povm()?;
        let measured = measured_mutual_info(&ensemble, &povm, base)?;
        if measured <= chi + 1e-9 {
            println!("measured = {} ≤ chi", fmt6(measured));
        } else {
            println!(
                "measured = {} EXCEEDS chi by {:.2e}",
                fmt6(measured),
                measured - chi
            );
        }
    }

    Ok(ExitCode::SUCCESS)
}

fn format_probability(p: f64) -> String {
    if p == 0.0 {
        "0".to_string()
    } else if p >= 1e-3 {
        format!("{p:.6}")
    } else {
        format!("{p:.4e}")
    }
}

fn cmd_sanov(args: SanovArgs) -> Result<ExitCode, Error> {
    let rho = load::<MatrixFile>(&args.rho)?.to_density()?;
    let sigma = load::<MatrixFile>(&args.sigma)?.to_density()?;
    match quantum_relative_entropy(&rho, &sigma)? {
        ExtendedReal::Finite(v) => println!("S(rho||sigma) = {} nats", fmt6(v)),
        ExtendedReal::PosInfinity => println!("S(rho||sigma) = inf"),
    }
    let p = sanov_confusion_probability(&rho, &sigma, args.n)?;
    println!("P_N = {}", format_probability(p));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Error> {
    let selection = match args.suite.as_str() {
        "all" => Selection::All,
        "classical" => Selection::Suite(Suite::Classical),
        "quantum" => Selection::Suite(Suite::Quantum),
        name => Selection::Check(name.to_string()),
    };
    let config = TrialConfig {
        master_seed: args.seed,
        trials_per_check: args.trials,
        ..TrialConfig::default()
    };
    let report = run_suite(&config, &selection)?;

    if let Some(path) = &args.report {
        fs::write(path, report.render_json())
            .map_err(|e| Error::InvalidFormat(format!("{}: {e}", path.display())))?;
    }
    for check in &report.checks {
        println!(
            "{}: {} trials, {} failures, worst violation {:.3e}",
            check.name, check.trials, check.failures, check.worst_violation
        );
    }
    if report.pass {
        println!("pass");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("fail");
        Ok(ExitCode::FAILURE)
    }
}

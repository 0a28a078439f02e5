//! Classical and quantum information quantities over finite alphabets and
//! finite-dimensional density matrices, plus a seeded randomized harness
//! that exercises the standard entropy identities and inequalities.
//!
//! The crate is organized as:
//!
//! - [`probdist`]: discrete distributions, joints, Markov chains, and the
//!   Shannon entropy calculus.
//! - [`qlinalg`]: dense complex matrices, a Hermitian eigensolver, tensor
//!   and partial-trace plumbing, and seeded random states/unitaries.
//! - [`qentropy`]: von Neumann entropy and friends — subentropy, relative
//!   entropy, Holevo's bound, accessible-information experiments.
//! - [`propcheck`]: the randomized check suites with replayable
//!   counterexamples.
//! - [`formats`]: JSON on-disk forms shared by the CLI and the harness.

pub mod error;
pub mod extreal;
pub mod formats;
pub mod probdist;
pub mod propcheck;
pub mod qentropy;
pub mod qlinalg;

pub use error::{Error, Result};
pub use extreal::ExtendedReal;
pub use probdist::LogBase;
pub use qlinalg::{BipartiteDims, ComplexMatrix, DensityMatrix, Spectrum, TripartiteDims};

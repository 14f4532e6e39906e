//! FCSR l-sequences and primitive sequences over `Z/(p^e)`.
//!
//! * [`numtheory`]: prime powers, multiplicative orders, primitive roots.
//! * [`fcsr`]: l-sequence generation by three independent routes.
//! * [`seqops`]: decimation, shifts, cyclic equivalence, arithmetic
//!   cross-correlation.
//! * [`ring`]: order-1 primitive sequences, their p-adic levels and the
//!   level-structure checks built on them.
//! * [`verify`]: exhaustive distinctness checks, counterexample search and
//!   sweeps over many moduli.
//!
//! Arithmetic is generic over the unsigned word type ([`Word`]); the aliases
//! below fix it to `u64`, which is what the command-line tool uses.

pub mod error;
pub mod fcsr;
pub mod numtheory;
pub mod ring;
pub mod seqops;
pub mod verify;

pub use error::{Error, Result};
pub use fcsr::{dyadic_expansion, fcsr_run, lseq_dyadic, lseq_exponential, BinarySequence, DyadicExpansion, Fcsr};
pub use numtheory::{eligible_moduli, is_primitive_root, multiplicative_order, primitive_roots, Modulus, Word};
pub use ring::{Lemma2Instance, LevelStructure, ResidueSequence};
pub use seqops::{
    arithmetic_crosscorrelation, cyclic_match, decimate, ideal_crosscorrelation, minimal_period, shift,
    CorrelationResult,
};
pub use verify::{Lemma5Diagnostics, Status, SweepReport, VerificationReport, Witness};

pub type Modulus64 = Modulus<u64>;
pub type Modulus32 = Modulus<u32>;
pub type ResidueSequence64 = ResidueSequence<u64>;
pub type ResidueSequence32 = ResidueSequence<u32>;
pub type LevelStructure64 = LevelStructure<u64>;
pub type DyadicExpansion64 = DyadicExpansion<i64>;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// FCSR l-sequences, decimations, arithmetic correlation and exhaustive
/// distinctness checks.
#[derive(Debug, Parser)]
#[command(name = "lseq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The modulus `q = p^e`, either directly or by its prime and exponent.
#[derive(Debug, Clone, Args)]
pub struct ModulusArgs {
    /// Odd prime power, factored on input.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub e: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SinkArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Zero `elapsed_ms` so that repeated runs produce identical reports.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BitsFormat {
    /// One line of '0'/'1', t = 0 first.
    Bits,
    /// `t,bit` per line.
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    /// Distinct primitive roots give distinct sequences mod 2.
    Theorem1,
    /// Decimations of the l-sequence are cyclically distinct.
    Conjecture,
    /// Top-level sum condition for p = 3, e = 3 or p > 3, e = 2.
    Lemma5,
    /// Zero arithmetic cross-correlation between distinct decimations.
    Ideal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// l-sequence `(A 2^-t mod q) mod 2`.
    Gen {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// Number of bits; one period by default.
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, value_enum, default_value_t = BitsFormat::Bits)]
        format: BitsFormat,
    },
    /// Same sequence, clocked out of a Fibonacci FCSR with connection integer q.
    Fcsr {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, value_enum, default_value_t = BitsFormat::Bits)]
        format: BitsFormat,
    },
    /// `a(d t)` of one period of bits, read from --bits or standard input.
    Decimate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, value_enum, default_value_t = BitsFormat::Bits)]
        format: BitsFormat,
    },
    /// `a(t + tau)` of one period of bits, read from --bits or standard input.
    Shift {
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, value_enum, default_value_t = BitsFormat::Bits)]
        format: BitsFormat,
    },
    /// Arithmetic cross-correlation of the decimations `a^(c)` and `a^(d)`.
    Acorr {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, conflicts_with = "all")]
        tau: Option<usize>,
        /// Print `tau,value` for every shift.
        #[arg(long)]
        all: bool,
    },
    /// Run one exhaustive check and print its report as JSON.
    Verify {
        #[arg(value_enum)]
        subject: Subject,
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        sink: SinkArgs,
    },
    /// All `(c, d, tau)` with `c < d` whose decimations are cyclically equal.
    Counterexamples {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, value_enum, default_value_t = SweepFormat::Json)]
        format: SweepFormat,
    },
    /// Decimation check over every eligible modulus up to --max-q.
    Sweep {
        /// 2000 for --e 1, 243 otherwise.
        #[arg(long)]
        max_q: Option<u64>,
        /// Only moduli with this exponent.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Json)]
        format: SweepFormat,
        /// Worker threads; all cores by default.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        sink: SinkArgs,
    },
}

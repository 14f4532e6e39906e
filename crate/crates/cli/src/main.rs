mod args;
mod output;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use lseq_core::fcsr::{fcsr_run, lseq_exponential};
use lseq_core::seqops::{arithmetic_crosscorrelation, correlation_profile, decimate, shift};
use lseq_core::verify::{
    default_sweep_bound, find_counterexamples, ideal_correlation_report, sweep_with_jobs,
    verify_conjecture_decimation_form, verify_lemma5, verify_theorem1_root_form,
};
use lseq_core::{BinarySequence, Error, Modulus64};

use args::{Cli, Command, ModulusArgs, Subject, SweepFormat};
use output::{write_bits, Document, Sink};

const MAX_SWEEP_Q: u64 = 100_000;

/// Failure of a command, mapped onto the exit status.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        if err.is_internal() {
            Failure::Internal(err.to_string())
        } else {
            Failure::Input(err.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Input(err.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn modulus(args: &ModulusArgs) -> Result<Modulus64, Failure> {
    let from_q = args.q.map(Modulus64::from_q).transpose()?;
    let from_pe = match (args.p, args.e) {
        (Some(p), Some(e)) => Some(Modulus64::new(p, e)?),
        (None, None) => None,
        _ => return Err(Failure::Input("--p and --e must be given together".into())),
    };
    match (from_q, from_pe) {
        (Some(a), Some(b)) if a.q() != b.q() => {
            Err(Failure::Input(format!("--q {} conflicts with --p {} --e {}", a.q(), b.p(), b.e())))
        }
        (Some(m), _) | (None, Some(m)) => Ok(m),
        (None, None) => Err(Failure::Input("a modulus is required: --q Q or --p P --e E".into())),
    }
}

fn read_bits(input: Option<&str>) -> Result<BinarySequence, Failure> {
    let text = match input {
        Some(bits) => bits.to_string(),
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(text.trim().parse::<BinarySequence>()?)
}

fn lsequence_decimations(m: &Modulus64, c: u64, d: u64) -> Result<(BinarySequence, BinarySequence), Failure> {
    let a = lseq_exponential(m, 1, m.period())?;
    Ok((decimate(&a, c as usize)?, decimate(&a, d as usize)?))
}

fn run(cli: Cli) -> CmdResult {
    let stdout = io::stdout();
    match cli.command {
        Command::Gen { modulus: margs, a, len, format } => {
            let m = modulus(&margs)?;
            m.require_unit(a % m.q())?;
            let bits = lseq_exponential(&m, a, len.unwrap_or(m.period()))?;
            write_bits(&mut stdout.lock(), &bits, format)?;
        }
        Command::Fcsr { modulus: margs, a, len, format } => {
            let m = modulus(&margs)?;
            m.require_unit(a % m.q())?;
            let bits = fcsr_run(&m, a, len.unwrap_or(m.period()))?;
            write_bits(&mut stdout.lock(), &bits, format)?;
        }
        Command::Decimate { d, bits, format } => {
            let seq = read_bits(bits.as_deref())?;
            write_bits(&mut stdout.lock(), &decimate(&seq, d)?, format)?;
        }
        Command::Shift { tau, bits, format } => {
            let seq = read_bits(bits.as_deref())?;
            write_bits(&mut stdout.lock(), &shift(&seq, tau), format)?;
        }
        Command::Acorr { modulus: margs, c, d, tau, all } => {
            let m = modulus(&margs)?;
            let (x, y) = lsequence_decimations(&m, c, d)?;
            let mut out = stdout.lock();
            if all {
                for r in correlation_profile(&x, &y)? {
                    writeln!(out, "{},{}", r.tau, r.value)?;
                }
            } else {
                let tau = tau.ok_or_else(|| Failure::Input("one of --tau or --all is required".into()))?;
                writeln!(out, "{}", arithmetic_crosscorrelation(&x, &y, tau)?.value)?;
            }
        }
        Command::Verify { subject, modulus: margs, sink } => {
            let sink = Sink::from_args(&sink);
            match subject {
                Subject::Theorem1 => {
                    let r = verify_theorem1_root_form(&modulus(&margs)?)?;
                    sink.write_json(&Document::new(sink.timed(r, |r| r.without_timing())))?;
                }
                Subject::Conjecture => {
                    let r = verify_conjecture_decimation_form(&modulus(&margs)?)?;
                    sink.write_json(&Document::new(sink.timed(r, |r| r.without_timing())))?;
                }
                Subject::Ideal => {
                    let r = ideal_correlation_report(&modulus(&margs)?)?;
                    sink.write_json(&Document::new(sink.timed(r, |r| r.without_timing())))?;
                }
                Subject::Lemma5 => {
                    let m = modulus(&margs)?;
                    let r = verify_lemma5(m.p(), m.e())?;
                    sink.write_json(&Document::new(sink.timed(r, |r| r.without_timing())))?;
                }
            }
        }
        Command::Counterexamples { modulus: margs, format } => {
            let m = modulus(&margs)?;
            let found = find_counterexamples(&m)?;
            output::write_counterexamples(&mut stdout.lock(), m.q(), &found, format)?;
        }
        Command::Sweep { max_q, e, format, jobs, sink } => {
            let max_q = max_q.unwrap_or_else(|| default_sweep_bound(e));
            if max_q > MAX_SWEEP_Q {
                return Err(Failure::Input(format!("--max-q {max_q} exceeds the sweep budget {MAX_SWEEP_Q}")));
            }
            if jobs == Some(0) {
                return Err(Failure::Input("--jobs must be at least 1".into()));
            }
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let sink = Sink::from_args(&sink);
            let report = sink.timed(sweep_with_jobs(max_q, e, jobs)?, |r| r.without_timing());
            match format {
                SweepFormat::Json => sink.write_json(&Document::new(report))?,
                SweepFormat::Csv => sink.write_with(|w| output::write_sweep_csv(w, &report))?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

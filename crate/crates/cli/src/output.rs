use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use lseq_core::verify::{SweepReport, SCHEMA_VERSION};
use lseq_core::{BinarySequence, Status};
use serde::Serialize;

use crate::args::{BitsFormat, SinkArgs, SweepFormat};

/// A report with the schema version stamped on top.
#[derive(Serialize)]
pub struct Document<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: T,
}

impl<T> Document<T> {
    pub fn new(report: T) -> Self {
        Document { schema_version: SCHEMA_VERSION, report }
    }
}

pub struct Sink {
    out: Option<PathBuf>,
    no_timing: bool,
}

impl Sink {
    pub fn from_args(args: &SinkArgs) -> Self {
        Sink { out: args.out.clone(), no_timing: args.no_timing }
    }

    pub fn timed<T>(&self, report: T, strip: impl FnOnce(T) -> T) -> T {
        if self.no_timing {
            strip(report)
        } else {
            report
        }
    }

    pub fn write_with(&self, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<()> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                body(&mut w)?;
                w.flush()
            }
            None => body(&mut io::stdout().lock()),
        }
    }

    pub fn write_json<T: Serialize>(&self, doc: &T) -> io::Result<()> {
        self.write_with(|w| {
            serde_json::to_writer_pretty(&mut *w, doc)?;
            writeln!(w)
        })
    }
}

pub fn write_bits(w: &mut impl Write, bits: &BinarySequence, format: BitsFormat) -> io::Result<()> {
    match format {
        BitsFormat::Bits => writeln!(w, "{bits}"),
        BitsFormat::Csv => {
            for (t, b) in bits.bits().iter().enumerate() {
                writeln!(w, "{t},{b}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Triple {
    c: usize,
    d: usize,
    tau: usize,
}

#[derive(Serialize)]
struct CounterexampleList {
    q: u64,
    counterexamples: Vec<Triple>,
}

pub fn write_counterexamples(
    w: &mut impl Write,
    q: u64,
    found: &[(usize, usize, usize)],
    format: SweepFormat,
) -> io::Result<()> {
    let triples = found.iter().map(|&(c, d, tau)| Triple { c, d, tau });
    match format {
        SweepFormat::Json => {
            let doc = Document::new(CounterexampleList { q, counterexamples: triples.collect() });
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        }
        SweepFormat::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            if found.is_empty() {
                csv.write_record(["c", "d", "tau"])?;
            }
            for t in triples {
                csv.serialize(t)?;
            }
            csv.flush()
        }
    }
}

#[derive(Serialize)]
struct SweepRow {
    q: u64,
    p: u64,
    e: u32,
    period: usize,
    roots_count: usize,
    pairs_checked: u64,
    sequences_compared: u64,
    counterexamples: usize,
    status: Status,
    elapsed_ms: u64,
}

pub fn write_sweep_csv(w: &mut dyn Write, report: &SweepReport) -> io::Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    if report.reports.is_empty() {
        csv.write_record([
            "q",
            "p",
            "e",
            "period",
            "roots_count",
            "pairs_checked",
            "sequences_compared",
            "counterexamples",
            "status",
            "elapsed_ms",
        ])?;
    }
    for r in &report.reports {
        csv.serialize(SweepRow {
            q: r.q,
            p: r.p,
            e: r.e,
            period: r.period,
            roots_count: r.roots_count,
            pairs_checked: r.pairs_checked,
            sequences_compared: r.sequences_compared,
            counterexamples: r.counterexamples.len(),
            status: r.status,
            elapsed_ms: r.elapsed_ms,
        })?;
    }
    csv.flush()
}

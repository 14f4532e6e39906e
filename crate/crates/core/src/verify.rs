//! Exhaustive checks of decimation distinctness and the supporting lemmas.
//!
//! Every check is finite: it enumerates primitive roots, seeds, decimation
//! factors and shifts of one modulus and reports the witnesses it finds.
//! Reports are deterministic apart from `elapsed_ms`.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fcsr::{lseq_exponential, BinarySequence};
use crate::numtheory::{is_prime, primitive_roots, to_index, word, Modulus, Word};
use crate::ring::{
    alpha_is_negated_beta, find_distinguishing_j, generate, level_structure, mod2_projection, same_modulus,
    Lemma2Instance, ResidueSequence,
};
use crate::seqops::{arithmetic_crosscorrelation, canonical_rotation, cyclic_match, decimate, shift};

pub const SCHEMA_VERSION: u32 = 1;

fn narrow<W: Word>(w: W) -> u64 {
    w.to_u64().expect("residue exceeds u64")
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn units_mod(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|&c| gcd(c, n) == 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Error,
}

/// A pair of cyclically equal sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Witness {
    /// `shift(a^(c), tau) == a^(d)`, `c < d`, least `tau`.
    Decimation { c: usize, d: usize, tau: usize },
    /// `(A ξ^t mod q) mod 2 == (B ζ^t mod q) mod 2` for all `t`.
    Roots { xi: u64, zeta: u64, a: u64, b: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub period: usize,
    pub roots_count: usize,
    pub pairs_checked: u64,
    pub sequences_compared: u64,
    pub counterexamples: Vec<Witness>,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    fn new<W: Word>(modulus: &Modulus<W>, roots_count: usize) -> Self {
        VerificationReport {
            q: narrow(modulus.q()),
            p: narrow(modulus.p()),
            e: modulus.e(),
            period: modulus.period(),
            roots_count,
            pairs_checked: 0,
            sequences_compared: 0,
            counterexamples: Vec::new(),
            status: Status::Verified,
            elapsed_ms: 0,
            error: None,
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.counterexamples.sort();
        self.status = if self.counterexamples.is_empty() { Status::Verified } else { Status::Refuted };
        self.elapsed_ms = elapsed_ms(start);
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Zeroes the timing field so that identical runs serialize identically.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

/// Distinct primitive roots `ξ ≠ ζ` never give the same sequence mod 2.
///
/// `A` is fixed to 1: every unit is `ζ^k`, so `B` over all units is the
/// same as all rotations of the `B = 1` projection for `ζ`.
pub fn verify_theorem1_root_form<W: Word>(modulus: &Modulus<W>) -> Result<VerificationReport> {
    modulus.require_two_primitive()?;
    let start = Instant::now();
    let roots = primitive_roots(modulus);
    let period = modulus.period();
    let mut report = VerificationReport::new(modulus, roots.len());

    let projections: Vec<BinarySequence> = roots
        .par_iter()
        .map(|&r| generate(modulus, r, W::one()).map(|u| mod2_projection(&u)))
        .collect::<Result<_>>()?;

    let found: Vec<Vec<Witness>> = roots
        .par_iter()
        .zip(&projections)
        .map(|(&zeta, base)| {
            // rotation k of the ζ projection is the B = ζ^k sequence
            let mut by_rotation: HashMap<BinarySequence, usize> = HashMap::with_capacity(period);
            for k in 0..period {
                by_rotation.entry(shift(base, k as i64)).or_insert(k);
            }
            roots
                .iter()
                .zip(&projections)
                .filter(|(&xi, _)| xi != zeta)
                .filter_map(|(&xi, u)| {
                    by_rotation.get(u).map(|&k| Witness::Roots {
                        xi: narrow(xi),
                        zeta: narrow(zeta),
                        a: 1,
                        b: narrow(modulus.pow(zeta, word(k as u64))),
                    })
                })
                .collect()
        })
        .collect();

    let pairs = (roots.len() * roots.len().saturating_sub(1)) as u64;
    report.pairs_checked = pairs;
    report.sequences_compared = pairs * period as u64;
    report.counterexamples = found.into_iter().flatten().collect();
    Ok(report.finish(start))
}

/// Root-form check over every `(ξ, ζ, A, B)` without the fixed-seed reduction.
pub fn verify_theorem1_exhaustive<W: Word>(modulus: &Modulus<W>) -> Result<VerificationReport> {
    modulus.require_two_primitive()?;
    let start = Instant::now();
    let roots = primitive_roots(modulus);
    let seeds: Vec<W> =
        (1..modulus.q().to_usize().unwrap_or(0)).map(|s| word::<W>(s as u64)).filter(|&s| modulus.is_unit(s)).collect();
    let mut report = VerificationReport::new(modulus, roots.len());

    let mut by_projection: HashMap<BinarySequence, Vec<(W, W)>> = HashMap::new();
    for &r in &roots {
        for &s in &seeds {
            let proj = mod2_projection(&generate(modulus, r, s)?);
            by_projection.entry(proj).or_default().push((r, s));
        }
    }
    for group in by_projection.values() {
        for &(xi, a) in group {
            for &(zeta, b) in group {
                if xi != zeta {
                    report.counterexamples.push(Witness::Roots {
                        xi: narrow(xi),
                        zeta: narrow(zeta),
                        a: narrow(a),
                        b: narrow(b),
                    });
                }
            }
        }
    }
    let pairs = (roots.len() * roots.len().saturating_sub(1)) as u64;
    report.pairs_checked = pairs;
    report.sequences_compared = pairs * (seeds.len() * seeds.len()) as u64;
    Ok(report.finish(start))
}

/// Decimations `a^(c)`, `a^(d)` of the l-sequence for all units `c < d` mod `T`,
/// grouped by least rotation; each group of two or more is a set of witnesses.
fn decimation_witnesses<W: Word>(modulus: &Modulus<W>) -> Result<(Vec<Witness>, usize)> {
    modulus.require_two_primitive()?;
    let period = modulus.period();
    let a = lseq_exponential(modulus, W::one(), period)?;
    let units = units_mod(period);

    let decimations: Vec<(usize, BinarySequence, BinarySequence)> = units
        .par_iter()
        .map(|&c| {
            let dec = decimate(&a, c)?;
            let canon = canonical_rotation(&dec);
            Ok((c, dec, canon))
        })
        .collect::<Result<_>>()?;

    let mut groups: HashMap<&BinarySequence, Vec<usize>> = HashMap::new();
    for (i, (_, _, canon)) in decimations.iter().enumerate() {
        groups.entry(canon).or_default().push(i);
    }
    let mut witnesses = Vec::new();
    for members in groups.values().filter(|m| m.len() > 1) {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let (c, dc, _) = &decimations[i];
                let (d, dd, _) = &decimations[j];
                let tau = cyclic_match(dc, dd)?
                    .ok_or_else(|| Error::Invariant(format!("equal least rotations but no match for c={c} d={d}")))?;
                witnesses.push(Witness::Decimation { c: *c, d: *d, tau });
            }
        }
    }
    witnesses.sort();
    Ok((witnesses, units.len()))
}

/// All `(c, d, tau)` with `c < d` units mod `T` and `shift(a^(c), tau) == a^(d)`.
pub fn find_counterexamples<W: Word>(modulus: &Modulus<W>) -> Result<Vec<(usize, usize, usize)>> {
    Ok(decimation_witnesses(modulus)?
        .0
        .into_iter()
        .filter_map(|w| match w {
            Witness::Decimation { c, d, tau } => Some((c, d, tau)),
            Witness::Roots { .. } => None,
        })
        .collect())
}

/// All decimations of the l-sequence are pairwise cyclically distinct.
pub fn verify_conjecture_decimation_form<W: Word>(modulus: &Modulus<W>) -> Result<VerificationReport> {
    let start = Instant::now();
    let (witnesses, k) = decimation_witnesses(modulus)?;
    let mut report = VerificationReport::new(modulus, k);
    report.pairs_checked = (k * k.saturating_sub(1) / 2) as u64;
    report.sequences_compared = k as u64;
    report.counterexamples = witnesses;
    Ok(report.finish(start))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma5Pair {
    pub xi: u64,
    pub zeta: u64,
    /// Common residue of `ξ` and `ζ` mod `p`.
    pub g: u64,
    /// `ξ mod p^2 = g + k1 p`.
    pub k1: u64,
    /// `ζ mod p^2 = g + k2 p`.
    pub k2: u64,
    /// `(k1 + k2) mod p`.
    pub eq4_lhs: u64,
    /// `(g - 1) mod p`.
    pub eq4_rhs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma5Violation {
    pub xi: u64,
    pub zeta: u64,
    pub a: u64,
    pub b: u64,
}

/// Search for `u`, `v` with `u_0 = v_0` and `u_L + v_L ≡ p - 1`, where
/// `L = 1` for `p > 3` (`e = 2`) and `L = 2` for `p = 3` (`e = 3`).
///
/// `combined_violations` counts the stronger condition where the sum is
/// `p - 1` on every level `1 ..= e - 1` at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma5Diagnostics {
    pub p: u64,
    pub e: u32,
    pub level: u32,
    pub pairs_checked: u64,
    pub sequences_compared: u64,
    pub pairs: Vec<Lemma5Pair>,
    pub violating_pairs: Vec<Lemma5Violation>,
    pub combined_violations: Vec<Lemma5Violation>,
    pub status: Status,
    pub elapsed_ms: u64,
}

impl Lemma5Diagnostics {
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

pub fn verify_lemma5(p: u64, e: u32) -> Result<Lemma5Diagnostics> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p as u128));
    }
    let level = match (p, e) {
        (3, 3) => 2,
        (p, 2) if p > 3 => 1,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "the top-level sum scan covers p = 3 with e = 3 and p > 3 with e = 2, not p = {p}, e = {e}"
            )))
        }
    };
    let start = Instant::now();
    let modulus = Modulus::<u64>::new(p, e)?;
    let q = modulus.q();
    let p2 = p * p;
    let roots = primitive_roots(&modulus);
    let seeds: Vec<u64> = (1..q).filter(|s| s % p != 0).collect();

    let sequences: HashMap<(u64, u64), ResidueSequence<u64>> = roots
        .par_iter()
        .flat_map_iter(|&r| seeds.iter().map(move |&s| (r, s)))
        .map(|(r, s)| generate(&modulus, r, s).map(|u| ((r, s), u)))
        .collect::<Result<_>>()?;

    let mut pairs = Vec::new();
    let mut violating = Vec::new();
    let mut combined = Vec::new();
    let mut compared = 0u64;
    for &xi in &roots {
        for &zeta in roots.iter().filter(|&&z| z != xi && z % p == xi % p) {
            let g = xi % p;
            let k1 = (xi % p2 - g) / p;
            let k2 = (zeta % p2 - g) / p;
            pairs.push(Lemma5Pair { xi, zeta, g, k1, k2, eq4_lhs: (k1 + k2) % p, eq4_rhs: (g + p - 1) % p });
            for &a in &seeds {
                for &b in seeds.iter().filter(|&&b| b % p == a % p) {
                    let u = &sequences[&(xi, a)];
                    let v = &sequences[&(zeta, b)];
                    if u.level(0) != v.level(0) {
                        return Err(Error::Invariant(format!("u_0 != v_0 for ξ={xi} ζ={zeta} A={a} B={b}")));
                    }
                    compared += 1;
                    let sums_to_top = |i: usize| u.level(i).iter().zip(v.level(i)).all(|(x, y)| (x + y) % p == p - 1);
                    let found = Lemma5Violation { xi, zeta, a, b };
                    if sums_to_top(level as usize) {
                        violating.push(found);
                    }
                    if (1..e as usize).all(sums_to_top) {
                        combined.push(found);
                    }
                }
            }
        }
    }
    Ok(Lemma5Diagnostics {
        p,
        e,
        level,
        pairs_checked: pairs.len() as u64,
        sequences_compared: compared,
        status: if violating.is_empty() { Status::Verified } else { Status::Refuted },
        pairs,
        violating_pairs: violating,
        combined_violations: combined,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Index where the highest levels of `u` and `v` differ in parity, found the
/// constructive way: pick `t0 < P` (`P = p^(e-2)(p-1)`) with
/// `α(t0) ≢ -β(t0)`, move along `t0 + jP` until `u_{e-1} = 0`, and if the
/// parities still agree use a separating `j` for the resulting `(λ, δ)`.
///
/// `Ok(None)` means every candidate `t0` hit the `λ = 1, δ = 0` corner, where
/// no separating `j` exists.
pub fn theorem2_witness<W: Word>(u: &ResidueSequence<W>, v: &ResidueSequence<W>) -> Result<Option<usize>> {
    same_modulus(u, v)?;
    let m = u.modulus();
    let p = narrow(m.p());
    let alpha: Vec<u64> = level_structure(u)?.alpha.into_iter().map(narrow).collect();
    let beta: Vec<u64> = level_structure(v)?.alpha.into_iter().map(narrow).collect();
    if alpha_is_negated_beta(&alpha, &beta, p) {
        return Err(Error::InvalidArgument("α ≡ (p - 1)β: the highest-level construction does not apply".into()));
    }
    let n = u.period();
    let step = to_index(m.p_pow(m.e() - 2)) * to_index(m.t0());
    let top_u: Vec<u64> = u.highest_level().iter().map(|&x| narrow(x)).collect();
    let top_v: Vec<u64> = v.highest_level().iter().map(|&x| narrow(x)).collect();

    let t_low = (p - 1) as usize;
    for t0 in 0..step {
        let (a, b) = (alpha[t0 % t_low], beta[t0 % t_low]);
        if (a + b) % p == 0 {
            continue;
        }
        if top_u[t0] % 2 != top_v[t0] % 2 {
            return Ok(Some(t0));
        }
        let t1 = (0..p as usize)
            .map(|j| t0 + j * step)
            .find(|&t| top_u[t] == 0)
            .ok_or_else(|| Error::Invariant(format!("u_(e-1) never vanishes along t0 = {t0} + jP")))?;
        let delta = top_v[t1];
        if delta % 2 == 1 {
            return Ok(Some(t1));
        }
        let inst = match Lemma2Instance::new(p, a, b, delta) {
            Ok(inst) => inst,
            Err(_) if a == b && delta == 0 => continue,
            Err(err) => return Err(err),
        };
        let j0 = find_distinguishing_j(&inst)? as usize;
        let t = (t1 + j0 * step) % n;
        if top_u[t] % 2 == top_v[t] % 2 {
            return Err(Error::Invariant(format!("constructed t = {t} does not separate the highest levels")));
        }
        return Ok(Some(t));
    }
    Ok(None)
}

/// Where `u mod 2` and `v mod 2` differ, found by descending through levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DescentWitness {
    /// Number of top levels whose parities agree everywhere.
    pub agreeing_levels: u32,
    /// Index with `u(t) ≢ v(t) (mod 2)`.
    pub t: usize,
}

/// Strips the top levels on which `u` and `v` agree mod 2 and locates a
/// parity difference of the truncations `u mod p^i`, `v mod p^i`. Since `p`
/// is odd, `u ≡ Σ u_i (mod 2)`, so such an index also separates `u` and `v`.
///
/// `Ok(None)` when every level agrees mod 2.
pub fn mod2_descent_witness<W: Word>(u: &ResidueSequence<W>, v: &ResidueSequence<W>) -> Result<Option<DescentWitness>> {
    same_modulus(u, v)?;
    let m = u.modulus();
    let e = m.e();
    let two = word::<W>(2);
    let agree = |i: usize| u.level(i).iter().zip(v.level(i)).all(|(&x, &y)| x % two == y % two);
    let k = (0..e as usize).rev().take_while(|&i| agree(i)).count() as u32;
    if k == e {
        return Ok(None);
    }
    let scale = m.p_pow(e - k);
    let t = u
        .values()
        .iter()
        .zip(v.values())
        .position(|(&x, &y)| (x % scale) % two != (y % scale) % two)
        .ok_or_else(|| Error::Invariant(format!("truncations mod p^{} agree mod 2", e - k)))?;
    if u.values()[t] % two == v.values()[t] % two {
        return Err(Error::Invariant(format!("descent index {t} does not separate u and v")));
    }
    Ok(Some(DescentWitness { agreeing_levels: k, t }))
}

/// Per-modulus reports in ascending `q` plus the refuted moduli.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_q: u64,
    pub e_filter: Option<u32>,
    pub moduli_checked: usize,
    pub refuted: Vec<u64>,
    pub reports: Vec<VerificationReport>,
}

impl SweepReport {
    pub fn without_timing(mut self) -> Self {
        self.reports = self.reports.into_iter().map(VerificationReport::without_timing).collect();
        self
    }
}

/// Default sweep bound: 2000 for prime moduli, `3^5` otherwise.
pub fn default_sweep_bound(e_filter: Option<u32>) -> u64 {
    match e_filter {
        Some(1) => 2000,
        _ => 243,
    }
}

pub fn sweep<W: Word>(max_q: W, e_filter: Option<u32>) -> SweepReport {
    let moduli = crate::numtheory::eligible_moduli(max_q, e_filter);
    let reports: Vec<VerificationReport> = moduli
        .par_iter()
        .map(|m| {
            verify_conjecture_decimation_form(m).unwrap_or_else(|err| {
                let mut r = VerificationReport::new(m, 0);
                r.status = Status::Error;
                r.error = Some(err.to_string());
                r
            })
        })
        .collect();
    let refuted = reports.iter().filter(|r| r.status == Status::Refuted).map(|r| r.q).collect();
    SweepReport { max_q: narrow(max_q), e_filter, moduli_checked: reports.len(), refuted, reports }
}

/// [`sweep`] on a dedicated pool of `jobs` threads.
pub fn sweep_with_jobs<W: Word>(max_q: W, e_filter: Option<u32>, jobs: usize) -> Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|err| Error::InvalidArgument(format!("cannot build thread pool: {err}")))?;
    Ok(pool.install(|| sweep(max_q, e_filter)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorrelationFailure {
    pub c: usize,
    pub d: usize,
    pub tau: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCorrelationReport {
    pub q: u64,
    pub period: usize,
    /// Cyclically distinct decimation pairs whose full profile was computed.
    pub pairs_tested: u64,
    /// Pairs left out because they are cyclic shifts of each other.
    pub pairs_skipped: u64,
    pub failures: Vec<CorrelationFailure>,
    pub status: Status,
    pub elapsed_ms: u64,
}

impl IdealCorrelationReport {
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

/// Full correlation profile of every cyclically distinct pair of decimations.
pub fn ideal_correlation_report<W: Word>(modulus: &Modulus<W>) -> Result<IdealCorrelationReport> {
    modulus.require_two_primitive()?;
    let start = Instant::now();
    let period = modulus.period();
    let a = lseq_exponential(modulus, W::one(), period)?;
    let units = units_mod(period);
    let decimations: Vec<BinarySequence> = units.iter().map(|&c| decimate(&a, c)).collect::<Result<_>>()?;

    let pairs: Vec<(usize, usize)> = (0..units.len()).flat_map(|i| (i + 1..units.len()).map(move |j| (i, j))).collect();
    let outcomes: Vec<Option<Vec<CorrelationFailure>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&decimations[i], &decimations[j]);
            if cyclic_match(x, y)?.is_some() {
                return Ok(None);
            }
            let mut failures = Vec::new();
            for tau in 0..period {
                let r = arithmetic_crosscorrelation(x, y, tau)?;
                if r.value != 0 {
                    failures.push(CorrelationFailure { c: units[i], d: units[j], tau, value: r.value });
                }
            }
            Ok(Some(failures))
        })
        .collect::<Result<_>>()?;

    let pairs_tested = outcomes.iter().filter(|o| o.is_some()).count() as u64;
    let failures: Vec<CorrelationFailure> = outcomes.into_iter().flatten().flatten().collect();
    Ok(IdealCorrelationReport {
        q: narrow(modulus.q()),
        period,
        pairs_tested,
        pairs_skipped: pairs.len() as u64 - pairs_tested,
        status: if failures.is_empty() { Status::Verified } else { Status::Refuted },
        failures,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Every cyclically distinct pair of decimations has zero arithmetic
/// cross-correlation at every shift.
pub fn verify_ideal_correlation<W: Word>(modulus: &Modulus<W>) -> Result<bool> {
    Ok(ideal_correlation_report(modulus)?.status == Status::Verified)
}

//! Acceptance suite. Each test prints one `PASS`/`FAIL` line with its
//! measurement and then asserts on it.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use lseq_core::fcsr::{fcsr_run, lseq_dyadic, lseq_exponential};
use lseq_core::numtheory::{eligible_moduli, is_prime, primitive_roots};
use lseq_core::ring::{
    check_lemma1, check_prop2, compute_hf, find_distinguishing_j, generate, lemma2_brute_force, Lemma2Instance,
};
use lseq_core::verify::{
    find_counterexamples, ideal_correlation_report, sweep, verify_conjecture_decimation_form, verify_lemma5,
    verify_theorem1_root_form,
};
use lseq_core::{Modulus64, Status};

fn verdict(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let took = start.elapsed();
    (took < budget, format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs()))
}

fn units(m: &Modulus64) -> impl Iterator<Item = u64> + '_ {
    (1..m.q()).filter(|&a| m.is_unit(a))
}

fn modulus(q: u64) -> Modulus64 {
    Modulus64::from_q(q).unwrap()
}

#[test]
fn c01_generator_equivalence() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for m in eligible_moduli(200u64, None) {
        let n = 2 * m.period();
        for a in units(&m) {
            let exp = lseq_exponential(&m, a, n).unwrap();
            if fcsr_run(&m, a, n).unwrap() != exp || lseq_dyadic(&m, a, n).unwrap() != exp {
                mismatches.push((m.q(), a));
            }
            checked += 1;
        }
    }
    let (fast, time) = within(start, Duration::from_secs(10));
    verdict(
        "c01 generator equivalence q <= 200",
        mismatches.is_empty() && fast && checked > 0,
        format!("{checked} (q, A) pairs, mismatches {mismatches:?}, {time}"),
    );
}

#[test]
fn c02_known_sequences() {
    let five = lseq_exponential(&modulus(5), 1, 4).unwrap().to_ascii();
    let nine = lseq_exponential(&modulus(9), 1, 6).unwrap().to_ascii();
    verdict("c02 known sequences", five == "1100" && nine == "111000", format!("q=5 -> {five}, q=9 -> {nine}"));
}

#[test]
fn c03_ideal_correlation() {
    let start = Instant::now();
    let mut summary = Vec::new();
    let mut ok = true;
    for q in [11u64, 13, 19, 25, 27, 29] {
        let r = ideal_correlation_report(&modulus(q)).unwrap();
        ok &= r.failures.is_empty() && r.status == Status::Verified;
        summary.push(format!("q={q}: {} pairs, {} nonzero", r.pairs_tested, r.failures.len()));
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    verdict("c03 ideal correlation", ok && fast, format!("{}; {time}", summary.join(", ")));
}

#[test]
fn c04_excluded_set_counterexamples() {
    let mut nonempty = BTreeSet::new();
    for m in eligible_moduli(100u64, None) {
        if !find_counterexamples(&m).unwrap().is_empty() {
            nonempty.insert(m.q());
        }
    }
    let five = find_counterexamples(&modulus(5)).unwrap();
    let nine = find_counterexamples(&modulus(9)).unwrap();
    let expected: BTreeSet<u64> = [5, 9, 11, 13].into();
    verdict(
        "c04 excluded-set counterexamples q <= 100",
        nonempty == expected && five.contains(&(1, 3, 1)) && nine.contains(&(1, 5, 2)),
        format!("nonempty for {nonempty:?}; q=5 {five:?}; q=9 {nine:?}"),
    );
}

#[test]
fn c05_root_and_decimation_forms() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for q in [25u64, 27, 81, 121, 125] {
        let m = modulus(q);
        let roots = verify_theorem1_root_form(&m).unwrap();
        let decimations = verify_conjecture_decimation_form(&m).unwrap();
        if !roots.is_verified() || !decimations.is_verified() {
            bad.push(q);
        }
    }
    let mut disagree = Vec::new();
    let moduli = eligible_moduli(200u64, None);
    for m in &moduli {
        let roots = verify_theorem1_root_form(m).unwrap().status;
        let decimations = verify_conjecture_decimation_form(m).unwrap().status;
        if roots != decimations {
            disagree.push(m.q());
        }
    }
    let (fast, time) = within(start, Duration::from_secs(300));
    verdict(
        "c05 root and decimation forms",
        bad.is_empty() && disagree.is_empty() && fast,
        format!("not verified {bad:?}; status disagreement over {} moduli {disagree:?}; {time}", moduli.len()),
    );
}

#[test]
fn c06_top_level_sum_scan() {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut ok = true;
    for (p, e) in [(3u64, 3u32), (5, 2), (7, 2)] {
        let d = verify_lemma5(p, e).unwrap();
        ok &= d.violating_pairs.is_empty();
        counts.push(format!(
            "({p},{e}) level {}: {} violating, {} on all levels",
            d.level,
            d.violating_pairs.len(),
            d.combined_violations.len()
        ));
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    verdict("c06 top-level sum scan", ok && fast, format!("{}; {time}", counts.join(", ")));
}

#[test]
fn c07_level_structure_suites() {
    let mut roots_checked = 0usize;
    let mut hf_failures = Vec::new();
    for m in eligible_moduli(2187u64, None).into_iter().filter(|m| m.e() >= 2) {
        for xi in primitive_roots(&m) {
            match compute_hf(&m, xi) {
                Ok(h) if h != 0 => {}
                other => hf_failures.push((m.q(), xi, format!("{other:?}"))),
            }
            roots_checked += 1;
        }
    }
    let mut sequences = 0usize;
    let mut shift_failures = Vec::new();
    let mut moduli = Vec::new();
    for m in eligible_moduli(125u64, None).into_iter().filter(|m| m.e() >= 2) {
        moduli.push(m.q());
        for xi in primitive_roots(&m) {
            for a in units(&m) {
                let check = check_prop2(&generate(&m, xi, a).unwrap()).unwrap();
                if !check.holds() {
                    shift_failures.push((m.q(), xi, a, check));
                }
                sequences += 1;
            }
        }
    }
    verdict(
        "c07 level structure suites",
        hf_failures.is_empty() && shift_failures.is_empty() && roots_checked > 0 && sequences > 0,
        format!(
            "h_f over {roots_checked} roots (q <= 2187) failures {hf_failures:?}; \
             shift structure over {sequences} sequences for q in {moduli:?} failures {shift_failures:?}"
        ),
    );
}

#[test]
fn c08_separating_j_oracle() {
    let start = Instant::now();
    let mut instances = 0usize;
    let mut failures = Vec::new();
    for p in (3u64..=31).filter(|&p| is_prime(p)) {
        for lambda in 1..=p - 2 {
            for beta in 1..p {
                for delta in (0..p).step_by(2) {
                    let Ok(inst) = Lemma2Instance::from_lambda(p, lambda, beta, delta) else {
                        continue;
                    };
                    instances += 1;
                    let constructed = find_distinguishing_j(&inst);
                    let brute = lemma2_brute_force(&inst);
                    let good = matches!(constructed, Ok(j) if inst.separates(j)) && brute.is_ok();
                    if !good {
                        failures.push((p, lambda, beta, delta));
                    }
                }
            }
        }
    }
    let (fast, time) = within(start, Duration::from_secs(10));
    verdict(
        "c08 separating j against brute force p <= 31",
        failures.is_empty() && fast && instances > 0,
        format!("{instances} admissible instances, failures {failures:?}, {time}"),
    );
}

#[test]
fn c09_prime_sweep() {
    let start = Instant::now();
    let report = sweep(1999u64, Some(1));
    let errors: Vec<u64> = report.reports.iter().filter(|r| r.status == Status::Error).map(|r| r.q).collect();
    let (fast, time) = within(start, Duration::from_secs(30 * 60));
    verdict(
        "c09 prime sweep p < 2000",
        report.refuted == vec![5, 11, 13] && errors.is_empty() && fast,
        format!("{} primes, refuted {:?}, errors {errors:?}, {time}", report.moduli_checked, report.refuted),
    );
}

#[test]
fn c10_mod2_injectivity() {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for p in (3u64..=101).filter(|&p| is_prime(p)) {
        let m = Modulus64::new(p, 1).unwrap();
        for xi in primitive_roots(&m) {
            if !check_lemma1(p, xi).unwrap() {
                failures.push((p, xi));
            }
            checked += 1;
        }
    }
    verdict(
        "c10 mod 2 injectivity p <= 101",
        failures.is_empty() && checked > 0,
        format!("{checked} (p, ξ) pairs, failures {failures:?}"),
    );
}

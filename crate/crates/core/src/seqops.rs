//! Decimation, shifts, cyclic equivalence and arithmetic cross-correlation
//! of periodic bit sequences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fcsr::BinarySequence;

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn same_period(a: &BinarySequence, b: &BinarySequence) -> Result<usize> {
    if a.period() != b.period() {
        return Err(Error::PeriodMismatch { left: a.period(), right: b.period() });
    }
    Ok(a.period())
}

/// `a(d t)` for `t` in one period. `d` must be coprime to the period.
pub fn decimate(a: &BinarySequence, d: usize) -> Result<BinarySequence> {
    let period = a.period();
    let d = d % period;
    if gcd(d, period) != 1 {
        return Err(Error::NotCoprime { d, period });
    }
    let bits = (0..period).map(|t| a.bits()[d * t % period]).collect();
    Ok(BinarySequence::from_bits_unchecked(bits))
}

/// `a(t + tau)`; `tau` is taken modulo the period and may be negative.
pub fn shift(a: &BinarySequence, tau: i64) -> BinarySequence {
    let period = a.period();
    let tau = tau.rem_euclid(period as i64) as usize;
    let mut bits = Vec::with_capacity(period);
    bits.extend_from_slice(&a.bits()[tau..]);
    bits.extend_from_slice(&a.bits()[..tau]);
    BinarySequence::from_bits_unchecked(bits)
}

/// Least `tau` in `[0, T)` with `shift(a, tau) == b`, or `None` when the two
/// are cyclically distinct. `tau = 0` counts as a match.
pub fn cyclic_match(a: &BinarySequence, b: &BinarySequence) -> Result<Option<usize>> {
    let period = same_period(a, b)?;
    let pattern = b.bits();

    let mut fail = vec![0usize; period];
    let mut k = 0;
    for i in 1..period {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }

    // Search b in a·a truncated to 2T - 1 symbols.
    let mut k = 0;
    for i in 0..2 * period - 1 {
        let c = a.bits()[i % period];
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == period {
            return Ok(Some(i + 1 - period));
        }
    }
    Ok(None)
}

/// Start index of the lexicographically least rotation.
///
/// Two sequences of equal period are cyclically equal iff their least
/// rotations coincide.
pub fn least_rotation(a: &BinarySequence) -> usize {
    let s = a.bits();
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (x, y) = (s[(i + k) % n], s[(j + k) % n]);
        if x == y {
            k += 1;
            continue;
        }
        if x > y {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub fn canonical_rotation(a: &BinarySequence) -> BinarySequence {
    shift(a, least_rotation(a) as i64)
}

pub fn minimal_period(a: &BinarySequence) -> usize {
    let n = a.period();
    let bits = a.bits();
    (1..=n).filter(|d| n.is_multiple_of(*d)).find(|&d| (0..n - d).all(|t| bits[t] == bits[t + d])).unwrap_or(n)
}

/// One arithmetic cross-correlation value `C_{a,b}(tau)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationResult {
    pub tau: usize,
    /// Zeros minus ones over `difference_bits`.
    pub value: i64,
    /// First time index inside the periodic part of the difference stream.
    pub preperiod: usize,
    pub window_period: usize,
    /// `c(preperiod) .. c(preperiod + T - 1)` of `α - β_τ`.
    pub difference_bits: BinarySequence,
}

/// Subtracts `β_τ = Σ b(t + τ) 2^t` from `α = Σ a(t) 2^t` bit by bit with a
/// borrow and counts zeros minus ones over one period of the result.
///
/// The state `(t mod T, borrow)` has `2T` values, so it repeats; the first
/// repeat marks the start of the periodic part.
pub fn arithmetic_crosscorrelation(a: &BinarySequence, b: &BinarySequence, tau: usize) -> Result<CorrelationResult> {
    let period = same_period(a, b)?;
    let tau = tau % period;
    let (abits, bbits) = (a.bits(), b.bits());

    let step = |t: usize, borrow: i8| -> (u8, i8) {
        let diff = abits[t % period] as i8 - bbits[(t + tau) % period] as i8 - borrow;
        (diff.rem_euclid(2) as u8, (diff < 0) as i8)
    };

    let mut first_seen = vec![usize::MAX; 2 * period];
    let mut stream = Vec::with_capacity(2 * period);
    let mut borrow = 0i8;
    let mut t = 0usize;
    let preperiod = loop {
        let state = (t % period) * 2 + borrow as usize;
        if first_seen[state] != usize::MAX {
            break first_seen[state];
        }
        first_seen[state] = t;
        let (c, next) = step(t, borrow);
        stream.push(c);
        borrow = next;
        t += 1;
    };
    while stream.len() < preperiod + period {
        let (c, next) = step(t, borrow);
        stream.push(c);
        borrow = next;
        t += 1;
    }

    let window = stream[preperiod..preperiod + period].to_vec();
    let ones = window.iter().filter(|&&c| c == 1).count() as i64;
    Ok(CorrelationResult {
        tau,
        value: period as i64 - 2 * ones,
        preperiod,
        window_period: period,
        difference_bits: BinarySequence::from_bits_unchecked(window),
    })
}

/// All `T` correlation values, `tau = 0 .. T - 1`.
pub fn correlation_profile(a: &BinarySequence, b: &BinarySequence) -> Result<Vec<CorrelationResult>> {
    let period = same_period(a, b)?;
    (0..period).map(|tau| arithmetic_crosscorrelation(a, b, tau)).collect()
}

/// True iff `C_{a,b}(tau) = 0` for every shift.
pub fn ideal_crosscorrelation(a: &BinarySequence, b: &BinarySequence) -> Result<bool> {
    let period = same_period(a, b)?;
    for tau in 0..period {
        if arithmetic_crosscorrelation(a, b, tau)?.value != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

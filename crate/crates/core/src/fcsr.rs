//! l-sequence generation.
//!
//! Three independent constructions of the same bit stream:
//!
//! * [`lseq_exponential`]: `a(t) = (A * 2^-t mod q) mod 2`;
//! * [`dyadic_expansion`]: the 2-adic expansion of a rational `r / q`,
//!   computed by repeated halving of the remainder;
//! * [`fcsr_run`]: a Fibonacci-mode feedback-with-carry shift register with
//!   connection integer `q`, an `r`-cell register and an integer carry.
//!
//! With seed `A` all three produce the expansion of `-A / q`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{wide, Modulus, Word};

/// A periodic bit sequence stored as one period, `t = 0` first.
///
/// The stored length is the declared period; it need not be minimal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinarySequence {
    bits: Vec<u8>,
}

impl BinarySequence {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidArgument("empty bit sequence".into()));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("bit value {b} is not 0 or 1")));
        }
        Ok(BinarySequence { bits })
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        BinarySequence { bits }
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Bit at time `t`, read periodically.
    #[inline]
    pub fn at(&self, t: usize) -> u8 {
        self.bits[t % self.bits.len()]
    }

    pub fn complement(&self) -> Self {
        BinarySequence { bits: self.bits.iter().map(|b| 1 - b).collect() }
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    /// ASCII rendering, one `'0'`/`'1'` per bit.
    pub fn to_ascii(&self) -> String {
        self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({})", self.to_ascii())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidArgument(format!("unexpected character {other:?} in bit stream"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BinarySequence::new(bits)
    }
}

impl Serialize for BinarySequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ascii())
    }
}

fn check_lseq_input<W: Word>(modulus: &Modulus<W>, seed: W, count: usize) -> Result<()> {
    modulus.require_two_primitive()?;
    modulus.require_unit(seed)?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    Ok(())
}

/// `count` bits of `a(t) = (A * 2^-t mod q) mod 2`.
pub fn lseq_exponential<W: Word>(modulus: &Modulus<W>, seed: W, count: usize) -> Result<BinarySequence> {
    check_lseq_input(modulus, seed, count)?;
    let q = modulus.q();
    let half = modulus.inverse(W::one() + W::one())?;
    let mut x = seed % q;
    let mut bits = Vec::with_capacity(count);
    for _ in 0..count {
        bits.push(if (x & W::one()).is_zero() { 0 } else { 1 });
        x = modulus.mul(x, half);
    }
    Ok(BinarySequence::from_bits_unchecked(bits))
}

/// 2-adic expansion of `numerator / denominator` with the detected
/// pre-period and period of the remainder sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicExpansion<S> {
    pub numerator: S,
    pub denominator: S,
    pub bits: Vec<u8>,
    pub preperiod: usize,
    pub period: usize,
}

/// Expands `numerator / denominator` as a 2-adic number.
///
/// The remainders follow `u_0 = numerator`, `u_{t+1} = (u_t - b_t * denominator) / 2`
/// with `b_t = u_t mod 2`. They stay within `|numerator| + denominator`, so the
/// sequence revisits a state; the first revisit fixes the pre-period and period.
/// Iteration continues past `count` if needed to find it.
pub fn dyadic_expansion<S>(numerator: S, denominator: S, count: usize) -> Result<DyadicExpansion<S>>
where
    S: PrimInt + Signed + std::hash::Hash,
{
    let two = S::one() + S::one();
    if denominator <= S::zero() || (denominator % two).is_zero() {
        return Err(Error::EvenDenominator(denominator.to_i128().unwrap_or(i128::MIN)));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let bound = numerator
        .abs()
        .checked_add(&denominator)
        .ok_or_else(|| Error::InvalidArgument("numerator too large for the state bound".into()))?;

    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut cycle: Option<(usize, usize)> = None;
    let mut bits = Vec::with_capacity(count);
    let mut u = numerator;
    let mut t = 0usize;
    loop {
        if cycle.is_none() {
            match seen.get(&u) {
                Some(&first) => cycle = Some((first, t - first)),
                None => {
                    seen.insert(u, t);
                }
            }
        }
        if cycle.is_some() && bits.len() >= count {
            break;
        }
        if u.abs() > bound {
            return Err(Error::Invariant(format!("dyadic state escaped the bound at t = {t}")));
        }
        let bit = if (u % two).is_zero() { S::zero() } else { S::one() };
        if bits.len() < count {
            bits.push(if bit.is_zero() { 0 } else { 1 });
        }
        u = (u - bit * denominator) / two;
        t += 1;
    }
    let (preperiod, period) = cycle.expect("loop exits only after a revisit");
    Ok(DyadicExpansion { numerator, denominator, bits, preperiod, period })
}

/// Fibonacci-mode FCSR.
///
/// Connection integer `q = -1 + q_1 2 + ... + q_r 2^r`. Each clock computes
/// `σ = Σ q_i a_{n-i} + m`, shifts in `σ mod 2`, keeps `σ div 2` as the new
/// carry and emits the oldest register cell.
#[derive(Debug, Clone)]
pub struct Fcsr {
    taps: Vec<u8>,
    register: VecDeque<u8>,
    memory: i128,
}

impl Fcsr {
    /// Register and carry loaded so the output is the expansion of `-seed / q`.
    pub fn for_lsequence<W: Word>(modulus: &Modulus<W>, seed: W) -> Result<Self> {
        modulus.require_two_primitive()?;
        modulus.require_unit(seed)?;
        let q = wide(modulus.q());
        let a = wide(seed % modulus.q());
        let q_plus_one = q + 1;
        let r = 127 - q_plus_one.leading_zeros() as usize;
        // taps[i - 1] = q_i
        let taps: Vec<u8> = (1..=r).map(|i| ((q_plus_one >> i) & 1) as u8).collect();

        // First r output bits: (-A / q) mod 2^r.
        let mut q_inv: u128 = q;
        for _ in 0..7 {
            q_inv = q_inv.wrapping_mul(2u128.wrapping_sub(q.wrapping_mul(q_inv)));
        }
        let prefix = a.wrapping_neg().wrapping_mul(q_inv);
        let register: VecDeque<u8> = (0..r).map(|k| ((prefix >> k) & 1) as u8).collect();

        // The register/carry pair encodes p / q with
        // p = Σ_{k<r} Σ_{i<=k} q_i a_{k-i} 2^k - m 2^r, q_0 = -1. Solve for m.
        let coeff = |i: usize| -> i128 {
            if i == 0 {
                -1
            } else {
                taps[i - 1] as i128
            }
        };
        let mut partial: i128 = 0;
        for k in 0..r {
            let s: i128 = (0..=k).map(|i| coeff(i) * register[k - i] as i128).sum();
            partial += s << k;
        }
        let target = -(a as i128);
        let diff = partial - target;
        if diff.rem_euclid(1i128 << r) != 0 {
            return Err(Error::Invariant("FCSR carry does not divide evenly".into()));
        }
        Ok(Fcsr { taps, register, memory: diff >> r })
    }

    pub fn register_len(&self) -> usize {
        self.register.len()
    }

    pub fn memory(&self) -> i128 {
        self.memory
    }

    /// One clock: returns the output bit.
    pub fn clock(&mut self) -> u8 {
        let r = self.taps.len();
        // register[r - i] holds a_{n-i}
        let mut sigma = self.memory;
        for (i, &tap) in self.taps.iter().enumerate() {
            if tap == 1 {
                sigma += self.register[r - 1 - i] as i128;
            }
        }
        let out = self.register.pop_front().expect("register is never empty");
        self.register.push_back(sigma.rem_euclid(2) as u8);
        self.memory = sigma.div_euclid(2);
        out
    }
}

impl Iterator for Fcsr {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.clock())
    }
}

/// `count` output bits of the FCSR with connection integer `q` keyed by `seed`.
pub fn fcsr_run<W: Word>(modulus: &Modulus<W>, seed: W, count: usize) -> Result<BinarySequence> {
    check_lseq_input(modulus, seed, count)?;
    let reg = Fcsr::for_lsequence(modulus, seed)?;
    Ok(BinarySequence::from_bits_unchecked(reg.take(count).collect()))
}

/// The exponential-form bits obtained through [`dyadic_expansion`] of `-seed / q`.
pub fn lseq_dyadic<W: Word>(modulus: &Modulus<W>, seed: W, count: usize) -> Result<BinarySequence> {
    check_lseq_input(modulus, seed, count)?;
    let q = wide(modulus.q()) as i128;
    let a = wide(seed % modulus.q()) as i128;
    let exp = dyadic_expansion(-a, q, count)?;
    Ok(BinarySequence::from_bits_unchecked(exp.bits))
}

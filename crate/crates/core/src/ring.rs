//! Primitive sequences of order 1 over `Z/(p^e)`.
//!
//! A sequence generated by `x - ξ` with `ξ` a primitive root is
//! `u(t) = A ξ^t mod p^e`. Its p-adic digits `u_0 .. u_{e-1}` are the level
//! sequences; the highest level carries the structure used to separate two
//! such sequences modulo 2.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fcsr::BinarySequence;
use crate::numtheory::{from_index, is_prime, is_primitive_root, pow_mod, to_index, wide, word, Modulus, Word};

/// One period of `u(t) = A ξ^t mod q` with its p-adic levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSequence<W> {
    modulus: Modulus<W>,
    xi: W,
    seed: W,
    values: Vec<W>,
    levels: Vec<Vec<W>>,
}

impl<W: Word> ResidueSequence<W> {
    pub fn modulus(&self) -> &Modulus<W> {
        &self.modulus
    }

    pub fn xi(&self) -> W {
        self.xi
    }

    pub fn seed(&self) -> W {
        self.seed
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// Level `i` (p-adic digit `i`), one period.
    pub fn level(&self, i: usize) -> &[W] {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Vec<W>] {
        &self.levels
    }

    pub fn highest_level(&self) -> &[W] {
        self.levels.last().expect("at least one level")
    }

    /// `x^k u`. Equal to the sequence seeded with `A ξ^k`.
    pub fn shifted(&self, k: usize) -> Self {
        let n = self.period();
        let k = k % n;
        let rotate = |v: &[W]| -> Vec<W> { v[k..].iter().chain(&v[..k]).copied().collect() };
        ResidueSequence {
            modulus: self.modulus,
            xi: self.xi,
            seed: self.values[k],
            values: rotate(&self.values),
            levels: self.levels.iter().map(|l| rotate(l)).collect(),
        }
    }

    /// `u mod p^i`, a primitive sequence over `Z/(p^i)` generated by `x - (ξ mod p^i)`.
    pub fn truncate(&self, i: u32) -> Result<Self> {
        let lower = self.modulus.truncate(i)?;
        generate(&lower, self.xi % lower.q(), self.seed % lower.q())
    }
}

/// Full period of `A ξ^t mod q` and its level decomposition.
pub fn generate<W: Word>(modulus: &Modulus<W>, xi: W, seed: W) -> Result<ResidueSequence<W>> {
    let q = modulus.q();
    let xi = xi % q;
    if !modulus.is_unit(xi) || !is_primitive_root(xi, modulus)? {
        return Err(Error::NotPrimitiveRoot { value: wide(xi), modulus: wide(q) });
    }
    modulus.require_unit(seed)?;

    let n = modulus.period();
    let mut values = Vec::with_capacity(n);
    let mut x = seed % q;
    for _ in 0..n {
        values.push(x);
        x = modulus.mul(x, xi);
    }
    let p = modulus.p();
    let levels = (0..modulus.e())
        .map(|i| {
            let scale = modulus.p_pow(i);
            values.iter().map(|&v| v / scale % p).collect()
        })
        .collect();
    Ok(ResidueSequence { modulus: *modulus, xi, seed: seed % q, values, levels })
}

/// `h_f` for `f(x) = x - ξ`: the constant with
/// `ξ^(p^(i-1) (p-1)) ≡ 1 + p^i h_f (mod p^(i+1))` for `i = 1 .. e-1`.
///
/// Every level is computed and the values must agree.
pub fn compute_hf<W: Word>(modulus: &Modulus<W>, xi: W) -> Result<W> {
    let (p, e) = (modulus.p(), modulus.e());
    if e < 2 {
        return Err(Error::InvalidArgument(format!("h_f needs e >= 2, got e = {e}")));
    }
    if !is_primitive_root(xi % modulus.q(), modulus)? {
        return Err(Error::NotPrimitiveRoot { value: wide(xi), modulus: wide(modulus.q()) });
    }
    let mut common: Option<W> = None;
    for i in 1..e {
        let m = modulus.p_pow(i + 1);
        let exp = modulus.p_pow(i - 1) * modulus.t0();
        let x = pow_mod(xi, exp, m);
        let pi = modulus.p_pow(i);
        let lifted = (x + m - W::one()) % m;
        if !(lifted % pi).is_zero() {
            return Err(Error::Invariant(format!("ξ^{exp} - 1 not divisible by {pi} modulo {m}")));
        }
        let h = lifted / pi % p;
        if h.is_zero() {
            return Err(Error::Invariant(format!("h_f vanishes at level {i} for ξ = {xi}")));
        }
        match common {
            None => common = Some(h),
            Some(c) if c != h => {
                return Err(Error::Invariant(format!("h_f differs across levels: {c} vs {h} at level {i}")));
            }
            Some(_) => {}
        }
    }
    Ok(common.expect("e >= 2 gives at least one level"))
}

/// `h_f` together with the m-sequence `α = h_f u_0 mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelStructure<W> {
    pub h_f: W,
    /// One period (`p - 1` terms) of `α`.
    pub alpha: Vec<W>,
}

/// `α(t) = h u_0(t) mod p` over one period of length `p - 1`.
pub fn alpha_sequence<W: Word>(u: &ResidueSequence<W>, h: W) -> Vec<W> {
    let p = u.modulus.p();
    let t0 = to_index(u.modulus.t0());
    u.level(0)[..t0].iter().map(|&x| h * x % p).collect()
}

pub fn level_structure<W: Word>(u: &ResidueSequence<W>) -> Result<LevelStructure<W>> {
    let h_f = compute_hf(&u.modulus, u.xi)?;
    Ok(LevelStructure { h_f, alpha: alpha_sequence(u, h_f) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Prop2Check {
    Holds,
    Violated { t: usize, j: usize },
}

impl Prop2Check {
    pub fn holds(&self) -> bool {
        matches!(self, Prop2Check::Holds)
    }
}

/// Checks the highest-level shift structure of `u`: with `P = p^(e-2)(p-1)`,
/// `u_{e-1}(t + jP) ≡ u_{e-1}(t) + j α(t) (mod p)` for every `t < P` and
/// `j < p`, and `{u_{e-1}(t + jP) : j < p}` is all of `Z/(p)`.
pub fn check_prop2<W: Word>(u: &ResidueSequence<W>) -> Result<Prop2Check> {
    let structure = level_structure(u)?;
    let m = &u.modulus;
    let p = m.p();
    let pn = to_index(p);
    let t0 = to_index(m.t0());
    let step = to_index(m.p_pow(m.e() - 2)) * t0;
    let top = u.highest_level();

    for t in 0..step {
        let alpha = structure.alpha[t % t0];
        let mut seen = vec![false; pn];
        for j in 0..pn {
            let got = top[t + j * step];
            let expect = (top[t] + from_index::<W>(j) * alpha) % p;
            if got != expect {
                return Ok(Prop2Check::Violated { t, j });
            }
            let slot = &mut seen[to_index(got)];
            if *slot {
                return Ok(Prop2Check::Violated { t, j });
            }
            *slot = true;
        }
    }
    Ok(Prop2Check::Holds)
}

pub fn mod2_projection<W: Word>(u: &ResidueSequence<W>) -> BinarySequence {
    let bits = u.values.iter().map(|&v| if (v & W::one()).is_zero() { 0 } else { 1 }).collect();
    BinarySequence::from_bits_unchecked(bits)
}

/// Parameters of the parity-separation statement over `Z/(p)`:
/// `α ≡ λ β`, `δ` even, `1 <= λ <= p - 2`.
///
/// The corner `λ = 1, δ = 0` forces the two streams `jα` and `jβ + δ` to
/// coincide and is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma2Instance {
    pub p: u64,
    pub lambda: u64,
    pub alpha: u64,
    pub beta: u64,
    pub delta: u64,
}

impl Lemma2Instance {
    pub fn new(p: u64, alpha: u64, beta: u64, delta: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p as u128));
        }
        if alpha == 0 || alpha >= p || beta == 0 || beta >= p {
            return Err(Error::InvalidArgument(format!("α = {alpha}, β = {beta} must be nonzero residues mod {p}")));
        }
        let beta_inv = pow_mod(beta, p - 2, p);
        Self::from_lambda(p, alpha * beta_inv % p, beta, delta)
    }

    pub fn from_lambda(p: u64, lambda: u64, beta: u64, delta: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p as u128));
        }
        if beta == 0 || beta >= p {
            return Err(Error::InvalidArgument(format!("β = {beta} must be a nonzero residue mod {p}")));
        }
        if lambda == 0 || lambda > p - 2 {
            return Err(Error::InvalidArgument(format!("λ = {lambda} outside 1..={}", p - 2)));
        }
        if delta >= p || !delta.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("δ = {delta} must be an even residue mod {p}")));
        }
        if lambda == 1 && delta == 0 {
            return Err(Error::InvalidArgument("λ = 1 with δ = 0 admits no separating j".into()));
        }
        Ok(Lemma2Instance { p, lambda, alpha: lambda * beta % p, beta, delta })
    }

    /// `(jα mod p) mod 2 ≠ ((jβ + δ) mod p) mod 2`.
    pub fn separates(&self, j: u64) -> bool {
        parities_differ(self.p, self.alpha, self.beta, self.delta, j)
    }
}

pub fn parities_differ(p: u64, alpha: u64, beta: u64, delta: u64, j: u64) -> bool {
    (j * alpha % p) % 2 != ((j * beta + delta) % p) % 2
}

/// A separating `j` in `1 ..= p - 1`, built by case analysis on `λ` and `δ`.
///
/// The construction works on the normalised pair `(jλ, j + δ)` and maps
/// back through `j = j' β^-1`. Not necessarily the least such `j`.
pub fn find_distinguishing_j(inst: &Lemma2Instance) -> Result<u64> {
    let Lemma2Instance { p, lambda, delta, .. } = *inst;
    let normalised = |j: u64| parities_differ(p, lambda, 1, delta, j);

    let j_norm = if lambda == 1 {
        p - delta
    } else if delta < p - 1 {
        if lambda % 2 == 0 {
            1
        } else {
            // least k1 with (k1 - 1)λ < p < k1 λ, likewise k2 for 2p
            let k1 = p / lambda + 1;
            let k2 = 2 * p / lambda + 1;
            match k1.cmp(&(p - delta)) {
                std::cmp::Ordering::Less => k1,
                std::cmp::Ordering::Equal => k2,
                std::cmp::Ordering::Greater => p - delta,
            }
        }
    } else if lambda % 2 == 1 {
        1
    } else {
        // least k with kλ mod p < p - λ; one of k, k + 1 separates
        let k = (1..p)
            .find(|&k| k * lambda % p < p - lambda)
            .ok_or_else(|| Error::Invariant(format!("no k with kλ mod p < p - λ for {inst:?}")))?;
        if normalised(k) {
            k
        } else {
            k + 1
        }
    };

    if j_norm == 0 || j_norm >= p || !normalised(j_norm) {
        return Err(Error::Invariant(format!("constructed j' = {j_norm} does not separate {inst:?}")));
    }
    let j = j_norm * pow_mod(inst.beta, p - 2, p) % p;
    if !inst.separates(j) {
        return Err(Error::Invariant(format!("mapped j = {j} does not separate {inst:?}")));
    }
    Ok(j)
}

/// Least separating `j` by scanning `1 ..= p - 1`.
pub fn lemma2_brute_force(inst: &Lemma2Instance) -> Result<u64> {
    (1..inst.p)
        .find(|&j| inst.separates(j))
        .ok_or_else(|| Error::Invariant(format!("no separating j exists for {inst:?}")))
}

/// Whether reduction mod 2 is injective on the `p - 1` sequences `A ξ^t mod p`.
pub fn check_lemma1<W: Word>(p: W, xi: W) -> Result<bool> {
    let modulus = Modulus::new(p, 1)?;
    let mut seen = HashSet::new();
    let mut seed = W::one();
    while seed < p {
        let u = generate(&modulus, xi, seed)?;
        if !seen.insert(mod2_projection(&u)) {
            return Ok(false);
        }
        seed = seed + W::one();
    }
    Ok(true)
}

pub(crate) fn same_modulus<W: Word>(u: &ResidueSequence<W>, v: &ResidueSequence<W>) -> Result<()> {
    if u.modulus != v.modulus {
        return Err(Error::ModulusMismatch { left: wide(u.modulus.q()), right: wide(v.modulus.q()) });
    }
    if u.modulus.e() < 2 {
        return Err(Error::InvalidArgument("highest-level comparison needs e >= 2".into()));
    }
    Ok(())
}

/// Least `t` where the highest levels of `u` and `v` differ in parity.
pub fn highest_level_mod2_witness<W: Word>(u: &ResidueSequence<W>, v: &ResidueSequence<W>) -> Result<Option<usize>> {
    same_modulus(u, v)?;
    let two = word::<W>(2);
    Ok(u.highest_level().iter().zip(v.highest_level()).position(|(&a, &b)| a % two != b % two))
}

/// `α ≡ (p - 1) β (mod p)` termwise.
pub fn alpha_is_negated_beta<W: Word>(alpha: &[W], beta: &[W], p: W) -> bool {
    alpha.iter().zip(beta).all(|(&a, &b)| ((a + b) % p).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Lemma4Verdict {
    NotApplicable,
    Holds,
    Violated { t: usize },
}

/// When `α ≡ (p - 1) β` and the highest levels agree mod 2, checks
/// `u_{e-1}(t) + v_{e-1}(t) ≡ p - 1 (mod p)` for all `t`.
pub fn check_lemma4<W: Word>(u: &ResidueSequence<W>, v: &ResidueSequence<W>) -> Result<Lemma4Verdict> {
    same_modulus(u, v)?;
    let p = u.modulus.p();
    let alpha = level_structure(u)?.alpha;
    let beta = level_structure(v)?.alpha;
    if !alpha_is_negated_beta(&alpha, &beta, p) || highest_level_mod2_witness(u, v)?.is_some() {
        return Ok(Lemma4Verdict::NotApplicable);
    }
    let target = p - W::one();
    match u.highest_level().iter().zip(v.highest_level()).position(|(&a, &b)| (a + b) % p != target) {
        Some(t) => Ok(Lemma4Verdict::Violated { t }),
        None => Ok(Lemma4Verdict::Holds),
    }
}

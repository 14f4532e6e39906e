//! Exact modular arithmetic over unsigned machine words, prime powers and
//! primitive roots.
//!
//! Every routine is generic over [`Word`] (`u32`, `u64`, `u128`, ...). A
//! modulus is accepted only if its square stays below half the word range,
//! so products of two reduced residues never wrap.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};
use serde::Serialize;

use crate::error::{Error, Result};

/// Unsigned integer type usable as a residue.
pub trait Word: PrimInt + Unsigned + Hash + Debug + Display + Send + Sync + 'static {}

impl<T> Word for T where T: PrimInt + Unsigned + Hash + Debug + Display + Send + Sync + 'static {}

pub(crate) fn wide<W: Word>(w: W) -> u128 {
    w.to_u128().unwrap_or(u128::MAX)
}

pub(crate) fn to_index<W: Word>(w: W) -> usize {
    w.to_usize().expect("value does not fit in usize")
}

pub(crate) fn from_index<W: Word>(i: usize) -> W {
    W::from(i).expect("index does not fit in word")
}

pub(crate) fn word<W: Word>(n: u64) -> W {
    W::from(n).expect("constant does not fit in word")
}

/// Rejects `m` if `m * m` exceeds half of the word range.
fn check_budget<W: Word>(m: W) -> Result<()> {
    match m.checked_mul(&m) {
        Some(sq) if sq <= W::max_value() >> 1 => Ok(()),
        _ => Err(Error::Overflow(wide(m))),
    }
}

pub fn gcd<W: Word>(mut a: W, mut b: W) -> W {
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[inline]
pub fn mul_mod<W: Word>(a: W, b: W, m: W) -> W {
    (a % m) * (b % m) % m
}

pub fn pow_mod<W: Word>(base: W, mut exp: W, m: W) -> W {
    let mut result = W::one() % m;
    let mut b = base % m;
    while !exp.is_zero() {
        if (exp & W::one()) == W::one() {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp = exp >> 1;
    }
    result
}

/// Deterministic trial division.
pub fn is_prime<W: Word>(n: W) -> bool {
    let two = word::<W>(2);
    if n < two {
        return false;
    }
    if n % two == W::zero() {
        return n == two;
    }
    let mut d = word::<W>(3);
    while d <= n / d {
        if (n % d).is_zero() {
            return false;
        }
        d = d + two;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize<W: Word>(mut n: W) -> Vec<(W, u32)> {
    let mut out = Vec::new();
    let mut d = word::<W>(2);
    while d <= n / d {
        if (n % d).is_zero() {
            let mut k = 0;
            while (n % d).is_zero() {
                n = n / d;
                k += 1;
            }
            out.push((d, k));
        }
        d = d + W::one();
    }
    if n > W::one() {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi<W: Word>(n: W) -> W {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - W::one()))
}

/// Order of `a` in the unit group modulo `m`.
///
/// Starts from `φ(m)` and strips prime factors while the power still
/// reaches 1.
pub fn multiplicative_order<W: Word>(a: W, m: W) -> Result<W> {
    if m < word(2) {
        return Err(Error::InvalidArgument(format!("modulus {m} must be at least 2")));
    }
    check_budget(m)?;
    if gcd(a % m, m) != W::one() {
        return Err(Error::NotUnit { value: wide(a), modulus: wide(m) });
    }
    let mut order = euler_phi(m);
    for (l, _) in factorize(order) {
        while (order % l).is_zero() && pow_mod(a, order / l, m) == W::one() {
            order = order / l;
        }
    }
    Ok(order)
}

/// An odd prime power `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus<W> {
    p: W,
    e: u32,
    q: W,
    phi: W,
    t0: W,
    two_primitive: bool,
}

impl<W: Word> Modulus<W> {
    pub fn new(p: W, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1".into()));
        }
        if !is_prime(p) || p == word(2) {
            return Err(Error::NotOddPrime(wide(p)));
        }
        let mut q = W::one();
        for _ in 0..e {
            q = q.checked_mul(&p).ok_or(Error::Overflow(u128::MAX))?;
        }
        check_budget(q)?;
        let t0 = p - W::one();
        let phi = q / p * t0;
        let two_primitive = pow_is_primitive(word(2), q, phi, t0, p);
        Ok(Modulus { p, e, q, phi, t0, two_primitive })
    }

    /// Factors `q` as `p^e`, rejecting anything that is not an odd prime power.
    pub fn from_q(q: W) -> Result<Self> {
        let factors = factorize(q);
        match factors.as_slice() {
            [(p, e)] if *p != word(2) => Modulus::new(*p, *e),
            _ => Err(Error::NotOddPrimePower(wide(q))),
        }
    }

    pub fn p(&self) -> W {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> W {
        self.q
    }

    /// `φ(q) = p^(e-1) (p - 1)`.
    pub fn phi(&self) -> W {
        self.phi
    }

    /// `T0 = p - 1`, the period of the lowest level.
    pub fn t0(&self) -> W {
        self.t0
    }

    /// Whether 2 generates the unit group modulo `q`.
    pub fn two_primitive(&self) -> bool {
        self.two_primitive
    }

    /// `φ(q)` as an index.
    pub fn period(&self) -> usize {
        to_index(self.phi)
    }

    /// `p^i` for `i <= e`.
    pub fn p_pow(&self, i: u32) -> W {
        self.p.pow(i)
    }

    /// The modulus `p^i` for `1 <= i <= e`.
    pub fn truncate(&self, i: u32) -> Result<Self> {
        if i == 0 || i > self.e {
            return Err(Error::InvalidArgument(format!("level {i} outside 1..={}", self.e)));
        }
        Modulus::new(self.p, i)
    }

    pub fn require_two_primitive(&self) -> Result<()> {
        if self.two_primitive {
            Ok(())
        } else {
            Err(Error::TwoNotPrimitive(wide(self.q)))
        }
    }

    pub fn is_unit(&self, a: W) -> bool {
        !(a % self.p).is_zero()
    }

    pub fn require_unit(&self, a: W) -> Result<()> {
        if self.is_unit(a) {
            Ok(())
        } else {
            Err(Error::NotUnit { value: wide(a), modulus: wide(self.q) })
        }
    }

    pub fn mul(&self, a: W, b: W) -> W {
        mul_mod(a, b, self.q)
    }

    pub fn pow(&self, a: W, exp: W) -> W {
        pow_mod(a, exp, self.q)
    }

    /// Inverse of a unit, `a^(φ(q) - 1)`.
    pub fn inverse(&self, a: W) -> Result<W> {
        self.require_unit(a)?;
        Ok(self.pow(a, self.phi - W::one()))
    }
}

impl<W: Word> Display for Modulus<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

// For a prime power, the unit group is cyclic of order phi = p^(e-1)(p-1).
// `a` generates it iff a^(phi/l) != 1 for every prime l | phi.
fn pow_is_primitive<W: Word>(a: W, q: W, phi: W, t0: W, p: W) -> bool {
    if (a % p).is_zero() {
        return false;
    }
    let mut primes: Vec<W> = factorize(t0).into_iter().map(|(l, _)| l).collect();
    if phi != t0 {
        primes.push(p);
    }
    primes.into_iter().all(|l| pow_mod(a, phi / l, q) != W::one())
}

pub fn is_primitive_root<W: Word>(a: W, modulus: &Modulus<W>) -> Result<bool> {
    modulus.require_unit(a)?;
    Ok(pow_is_primitive(a, modulus.q, modulus.phi, modulus.t0, modulus.p))
}

/// All primitive roots modulo `q`, ascending. There are `φ(φ(q))` of them.
pub fn primitive_roots<W: Word>(modulus: &Modulus<W>) -> Vec<W> {
    let q = modulus.q;
    let mut roots = Vec::new();
    let mut a = W::one();
    while a < q {
        if modulus.is_unit(a) && pow_is_primitive(a, q, modulus.phi, modulus.t0, modulus.p) {
            roots.push(a);
        }
        a = a + W::one();
    }
    roots
}

/// Every odd prime power `q <= max_q` for which 2 is a primitive root,
/// ascending, optionally restricted to one exponent.
pub fn eligible_moduli<W: Word>(max_q: W, e_filter: Option<u32>) -> Vec<Modulus<W>> {
    let mut out = Vec::new();
    let mut p = word::<W>(3);
    let two = word::<W>(2);
    while p <= max_q {
        if is_prime(p) {
            let mut e = 1u32;
            let mut q = p;
            loop {
                if e_filter.is_none_or(|f| f == e) {
                    if let Ok(m) = Modulus::new(p, e) {
                        if m.two_primitive() {
                            out.push(m);
                        }
                    }
                }
                match q.checked_mul(&p) {
                    Some(next) if next <= max_q => {
                        q = next;
                        e += 1;
                    }
                    _ => break,
                }
            }
        }
        p = p + two;
    }
    out.sort_by_key(|a| a.q);
    out
}

//! Exact integer and rational primitives: `lcm(1..=n)`, binomials,
//! factorials, Bernoulli numbers.
//!
//! Everything here is arbitrary precision. `Int` is a signed bignum and
//! `Rat` a bignum rational kept in lowest terms with a positive
//! denominator, so equality of values is equality of representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer used for every exact integer quantity.
pub type Int = BigInt;

/// Arbitrary-precision rational, canonical form (lowest terms, positive
/// denominator) enforced on construction by `num-rational`.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be at least 1, got 0")]
    ZeroArgument,
}

/// Shorthand for an `Int` from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for the rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Embed an `Int` as a `Rat`.
pub fn rat_int(v: Int) -> Rat {
    Rat::from_integer(v)
}

/// d_n = lcm(1, 2, ..., n), computed by incremental pairwise lcm.
pub fn lcm_upto(n: u32) -> Result<Int, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut d = Int::one();
    for m in 2..=n {
        d = d.lcm(&Int::from(m));
    }
    Ok(d)
}

/// d_n by the prime-power route: product over primes p <= n of the largest
/// p^a <= n. Independent of [`lcm_upto`]; the two are cross-checked in tests.
pub fn lcm_upto_sieve(n: u32) -> Result<Int, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut d = Int::one();
    for p in primes_upto(n) {
        let mut pk = u64::from(p);
        while pk * u64::from(p) <= u64::from(n) {
            pk *= u64::from(p);
        }
        d *= Int::from(pk);
    }
    Ok(d)
}

/// Primes up to and including `n`, by the classic sieve.
pub fn primes_upto(n: u32) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u32);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Binomial coefficient with the out-of-range convention C(n, k) = 0 for
/// k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> Int {
    if k < 0 || k as u64 > n {
        return Int::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * Int::from(n - j) / Int::from(j + 1);
    }
    acc
}

/// n! as an exact integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for j in 2..=n {
        acc *= Int::from(j);
    }
    acc
}

/// Bernoulli numbers B_0..=B_m under the convention B_1 = -1/2, from the
/// recurrence sum_{j=0..m} C(m+1, j) B_j = 0.
///
/// The convention matters: the zeta evaluator's remainder bound assumes it.
pub fn bernoulli_list(m: usize) -> Vec<Rat> {
    let mut bs: Vec<Rat> = Vec::with_capacity(m + 1);
    bs.push(Rat::one());
    bernoulli_extend(&mut bs, m);
    bs
}

/// Grow a Bernoulli list in place up to index `m`; the binomial row is
/// carried incrementally, so extension is quadratic overall.
pub fn bernoulli_extend(bs: &mut Vec<Rat>, m: usize) {
    if bs.is_empty() {
        bs.push(Rat::one());
    }
    for r in bs.len()..=m {
        // B_r = -1/(r+1) * sum_{j<r} C(r+1, j) B_j
        let mut acc = Rat::zero();
        let mut binom = Int::one(); // C(r+1, j), starting at j = 0
        for (j, b) in bs.iter().enumerate() {
            if j > 0 {
                binom = binom * int((r + 2 - j) as i64) / int(j as i64);
            }
            if !b.is_zero() {
                acc += Rat::from_integer(binom.clone()) * b;
            }
        }
        acc /= -rat_int(int(r as i64 + 1));
        bs.push(acc);
    }
}

/// Integer power of a rational.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Integer power of an integer.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// True iff q is an exact integer.
pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Natural log of a positive bignum, accurate to well below 1e-9 relative
/// error; used only for trend diagnostics, never for certified bounds.
pub fn ln_int_approx(v: &Int) -> f64 {
    assert!(v.is_positive(), "ln of non-positive integer");
    let bits = v.bits();
    if bits <= 53 {
        let (_, digits) = v.to_u64_digits();
        return (digits[0] as f64).ln();
    }
    let shift = bits - 53;
    let top: Int = v >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

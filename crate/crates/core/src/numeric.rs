//! Exact scalar arithmetic: arbitrary-precision rationals plus the small
//! combinatorial functions (harmonic numbers, factorials, binomials) used by
//! the series engine and the table builders.

use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

use crate::{Error, Result};

/// The scalar field everything is computed in: arbitrary-precision fractions,
/// always in lowest terms with a positive denominator and zero as `0/1`.
pub type Rational = BigRational;

/// `n/d` as a canonical [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational with zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the canonical rational grammar: `"a"` or `"a/b"` where `a` is a
/// decimal integer with an optional leading `-` and `b` is an unsigned
/// decimal integer `> 0`. The result is reduced to lowest terms, so
/// non-canonical inputs such as `"2/4"` are accepted and normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let invalid = || Error::InvalidRational(s.to_string());
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let numer_ok = digits(numer.strip_prefix('-').unwrap_or(numer));
    if !numer_ok {
        return Err(invalid());
    }
    let n = BigInt::from_str(numer).map_err(|_| invalid())?;
    match denom {
        None => Ok(Rational::from_integer(n)),
        Some(d) if digits(d) => {
            let d = BigInt::from_str(d).map_err(|_| invalid())?;
            if d.is_zero() {
                return Err(invalid());
            }
            Ok(Rational::new(n, d))
        }
        Some(_) => Err(invalid()),
    }
}

// Memo tables grow on demand and are never evicted; at the table sizes this
// crate works with (a few hundred entries) that is negligible. RwLock keeps
// concurrent readers cheap and ensures every thread sees the same values.
static FACTORIALS: LazyLock<RwLock<Vec<BigInt>>> =
    LazyLock::new(|| RwLock::new(vec![BigInt::one()]));
static HARMONICS: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::zero()]));

/// `n!` as an arbitrary-precision integer, memoized.
pub fn factorial(n: u32) -> BigInt {
    let n = n as usize;
    {
        let cache = FACTORIALS.read().unwrap();
        if let Some(value) = cache.get(n) {
            return value.clone();
        }
    }
    let mut cache = FACTORIALS.write().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// The n-th harmonic number `H_n = 1 + 1/2 + ... + 1/n`, memoized.
///
/// `H_0 = 0` by the empty-sum convention; the closed-form generating
/// function relies on this at `p = 0`, where `t - H_0` must reduce to `t`.
pub fn harmonic(n: u32) -> Rational {
    let n = n as usize;
    {
        let cache = HARMONICS.read().unwrap();
        if let Some(value) = cache.get(n) {
            return value.clone();
        }
    }
    let mut cache = HARMONICS.write().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() + rat(1, cache.len() as i64);
        cache.push(next);
    }
    cache[n].clone()
}

/// The binomial coefficient `C(n, k)`, with the usual convention that
/// out-of-range `k` (negative or above `n`) gives 0.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = k as u32;
    // Exact by construction: k!(n-k)! divides n!.
    factorial(n) / (factorial(k) * factorial(n - k))
}

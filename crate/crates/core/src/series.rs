//! Truncated formal Laurent series over [`Rational`].
//!
//! A [`Series`] stores the coefficients of `t^valuation .. t^(order-1)` and
//! records nothing beyond `order`: coefficients past the truncation order are
//! *unknown*, not zero, and asking for one is an error. Every operation
//! computes the exact order its result is guaranteed to, so precision loss
//! through products, inversions and pole shifts is tracked rather than
//! silent. Valuation is first-class (it may be negative), which lets callers
//! assert that a sum of individually singular terms really collapses to a
//! power series.

use std::fmt;

use num::{One, Zero};

use crate::numeric::{factorial, Rational};
use crate::{Error, Result};

/// A truncated Laurent series `c_v t^v + ... + c_{N-1} t^(N-1) + O(t^N)`.
///
/// Invariants (maintained by every constructor and operation):
/// * the leading stored coefficient is nonzero (leading zeros are stripped
///   and the valuation raised accordingly);
/// * `order() == valuation() + coeffs.len()`;
/// * the zero series stores no coefficients and reports its valuation as
///   equal to its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    valuation: i64,
    coeffs: Vec<Rational>,
}

impl Series {
    /// Series with the given coefficients starting at exponent `valuation`.
    /// The truncation order is `valuation + coeffs.len()`.
    pub fn new(valuation: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = Series { valuation, coeffs };
        s.normalize();
        s
    }

    /// The zero series, known to be zero up to (not including) `order`.
    pub fn zero(order: i64) -> Self {
        Series { valuation: order, coeffs: Vec::new() }
    }

    /// The constant series `1 + O(t^order)`.
    pub fn one(order: i64) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The constant series `c + O(t^order)`.
    pub fn constant(c: Rational, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// The single-term series `c t^exponent + O(t^order)`.
    pub fn monomial(c: Rational, exponent: i64, order: i64) -> Self {
        if exponent >= order {
            return Self::zero(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - exponent) as usize];
        coeffs[0] = c;
        Self::new(exponent, coeffs)
    }

    /// `e^(c t)` truncated: `sum_{n < order} c^n t^n / n!`.
    pub fn exp_linear(c: &Rational, order: i64) -> Self {
        assert!(order >= 0, "exp_linear needs order >= 0, got {order}");
        let mut coeffs = Vec::with_capacity(order as usize);
        let mut term = Rational::one();
        for n in 0..order {
            if n > 0 {
                term = term * c / Rational::from_integer(n.into());
            }
            coeffs.push(term.clone());
        }
        Self::new(0, coeffs)
    }

    /// `e^t - 1` truncated: valuation 1, coefficient of `t^n` is `1/n!`.
    pub fn expm1(order: i64) -> Self {
        assert!(order >= 1, "expm1 needs order >= 1, got {order}");
        let mut coeffs = Vec::with_capacity(order as usize - 1);
        let mut term = Rational::one();
        for n in 1..order {
            term = term / Rational::from_integer(n.into());
            coeffs.push(term.clone());
        }
        Self::new(1, coeffs)
    }

    /// Exponent of the lowest retained power of `t`. For the zero series this
    /// is by convention equal to the order.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Absolute truncation order: coefficients of `t^m` with `m >= order()`
    /// are unknown.
    pub fn order(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(&mut self) {
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.valuation += leading_zeros as i64;
        }
    }

    /// Coefficient of `t^m` for any `m` below the order (zero below the
    /// valuation). `m` at or past the order is unknown and reported as
    /// [`Error::OrderExceeded`] rather than silently answered with 0.
    pub fn coefficient(&self, m: i64) -> Result<Rational> {
        if m >= self.order() {
            return Err(Error::OrderExceeded { requested: m, order: self.order() });
        }
        if m < self.valuation {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(m - self.valuation) as usize].clone())
    }

    /// `n! * coefficient(n)`: recovers the sequence value from an exponential
    /// generating function.
    pub fn egf_coefficient(&self, n: u32) -> Result<Rational> {
        let c = self.coefficient(n as i64)?;
        Ok(Rational::from_integer(factorial(n)) * c)
    }

    /// Like [`coefficient`](Self::coefficient) but restricted to the known
    /// window, for internal loops that already checked the order.
    fn coeff_at(&self, m: i64) -> Rational {
        debug_assert!(m < self.order());
        if m < self.valuation {
            Rational::zero()
        } else {
            self.coeffs[(m - self.valuation) as usize].clone()
        }
    }

    /// Coefficientwise sum, known up to the smaller of the two orders.
    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let valuation = self.valuation.min(other.valuation).min(order);
        let coeffs = (valuation..order)
            .map(|m| self.coeff_at(m) + other.coeff_at(m))
            .collect();
        Series::new(valuation, coeffs)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Scalar multiple. Multiplying by the zero scalar yields the zero series
    /// at the same order.
    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.order());
        }
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product. The result's valuation is the sum of the valuations
    /// and its guaranteed order is
    /// `min(a.order + b.valuation, b.order + a.valuation)`: each factor's
    /// unknown tail is shifted by the other factor's valuation, and the
    /// smaller bound wins.
    pub fn mul(&self, other: &Series) -> Series {
        let order = (self.order() + other.valuation).min(other.order() + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Series::zero(order);
        }
        let valuation = self.valuation + other.valuation;
        let len = (order - valuation) as usize; // = min of the two known-lengths
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Series::new(valuation, coeffs)
    }

    /// Multiplicative inverse in the Laurent field: factors out `t^valuation`,
    /// inverts the remaining unit series by the standard coefficient solve,
    /// and shifts back. `mul(a, invert(a))` is exactly 1 up to the guaranteed
    /// order. Fails on the zero series.
    pub fn invert(&self) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead = &self.coeffs[0]; // nonzero by the normalization invariant
        let len = self.coeffs.len();
        let mut inv: Vec<Rational> = Vec::with_capacity(len);
        inv.push(Rational::one() / lead);
        for n in 1..len {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv.push(-(acc / lead));
        }
        Ok(Series::new(-self.valuation, inv))
    }

    /// `k`-th power by repeated squaring; negative `k` inverts first.
    /// `pow(a, 0)` is `1` at `a`'s order.
    pub fn pow(&self, k: i32) -> Result<Series> {
        if k < 0 {
            return self.invert()?.pow(k.checked_neg().expect("exponent overflow"));
        }
        if k == 0 {
            return Ok(Series::one(self.order()));
        }
        let mut base = self.clone();
        let mut exp = k as u32;
        let mut acc: Option<Series> = None;
        loop {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.expect("k > 0 sets the accumulator"))
    }

    /// Formal derivative `d/dt`; the order drops by one.
    pub fn derivative(&self) -> Series {
        let order = self.order() - 1;
        if self.is_zero() {
            return Series::zero(order);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.valuation + i as i64).into()))
            .collect();
        Series::new(self.valuation - 1, coeffs)
    }

    /// Drops all knowledge at and above `order` (a no-op if the series is
    /// already truncated below it).
    pub fn truncate(&self, order: i64) -> Series {
        let order = order.min(self.order());
        if order <= self.valuation {
            return Series::zero(order);
        }
        Series::new(
            self.valuation,
            self.coeffs[..(order - self.valuation) as usize].to_vec(),
        )
    }

    /// True when the two series have identical coefficients for every
    /// exponent below `upto`. Both series must be known at least that far.
    pub fn agrees_to(&self, other: &Series, upto: i64) -> bool {
        assert!(
            self.order() >= upto && other.order() >= upto,
            "agrees_to({upto}) on series of orders {} and {}",
            self.order(),
            other.order()
        );
        let lo = self.valuation.min(other.valuation).min(upto);
        (lo..upto).all(|m| self.coeff_at(m) == other.coeff_at(m))
    }
}

impl fmt::Display for Series {
    /// Debug rendering `t^v: c0, c1, ..., O(t^order)`. Not a stable format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}:", self.valuation)?;
        for c in &self.coeffs {
            write!(f, " {c},")?;
        }
        write!(f, " O(t^{})", self.order())
    }
}

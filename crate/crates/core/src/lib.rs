//! Exact computation of the two-parameter Bernoulli numbers `B_{n,p}`.
//!
//! The family is pinned down by the classical column `B_{n,0} = B_n`
//! (the coefficients of `t/(e^t - 1)`) together with the recurrence
//!
//! ```text
//! B_{n+1,p} = p B_{n,p} - (p+1)^2/(p+2) B_{n,p+1}        for n, p >= 0.
//! ```
//!
//! Two independent routes produce the same table of values:
//!
//! * [`recurrence_table`] seeds the `p = 0` column from `t/(e^t - 1)` and
//!   sweeps the recurrence across columns, and
//! * [`closed_form_egf`] expands the closed form of the exponential
//!   generating function `f_p(t) = sum B_{n,p} t^n/n!`,
//!
//!   ```text
//!   f_p(t) = (p+1)(t - H_p) e^{pt} / (e^t - 1)^{p+1}
//!          + (p+1) sum_{k=1..p} C(p,k) H_k / (e^t - 1)^{k+1},
//!   ```
//!
//!   where `H_n` is the n-th harmonic number.
//!
//! Everything is exact: the scalar field is arbitrary-precision rationals
//! ([`Rational`]) and series are truncated Laurent series over it
//! ([`Series`]). The [`verify`] module cross-checks the two routes, the
//! differential identity `f_p' = p f_p - (p+1)^2/(p+2) f_{p+1}`, and the
//! cancellation of the poles that the individual closed-form terms carry.
//!
//! With the default `parallel` feature the closed-form route and the
//! verification suite fan out across `p` with rayon; disabling it yields a
//! fully sequential build with identical results.

pub mod numeric;
pub mod series;
pub mod table;
pub mod verify;

pub use numeric::{binomial, factorial, harmonic, parse_rational, Rational};
pub use series::Series;
pub use table::{
    classical_bernoulli, closed_form_egf, closed_form_table, closed_form_table_serial,
    recurrence_table, PBernTable, Route,
};
pub use verify::{
    compare_tables, run_verification_suite, verify_base_case, verify_ode,
    verify_pole_cancellation, verify_theorem, Mismatch, VerifyKind, VerifyReport,
};

/// Errors shared by the scalar layer, the series engine, and the table
/// builders.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Multiplicative inverse of the zero series requested.
    #[error("division by zero: the zero series has no multiplicative inverse")]
    DivisionByZero,
    /// A coefficient beyond the truncation order was requested. Coefficients
    /// past the order are unknown, not zero, so this is never answered with 0.
    #[error("coefficient of t^{requested} requested, but the series is only known up to O(t^{order})")]
    OrderExceeded { requested: i64, order: i64 },
    /// A string that does not match the rational grammar ("a" or "a/b" with
    /// the sign on the numerator and b > 0).
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    /// The closed-form sum kept a pole instead of collapsing to a power
    /// series. This signals an arithmetic bug, never a legitimate input.
    #[error("closed-form sum for p={p} has negative valuation {valuation}: pole did not cancel")]
    ResidualPole { p: u32, valuation: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Maps `f` over `0..=max`, in parallel when the `parallel` feature is
/// enabled. Results are collected in index order either way, so callers see
/// identical output regardless of scheduling.
#[cfg(feature = "parallel")]
pub(crate) fn map_over_p<T, F>(max: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..=max).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_over_p<T, F>(max: u32, f: F) -> Vec<T>
where
    F: Fn(u32) -> T,
{
    (0..=max).map(f).collect()
}

//! Machine verification of the identities the tables rest on: agreement of
//! the two routes, the differential identity relating consecutive generating
//! functions, cancellation of the closed form's poles, and the classical
//! base column. All comparisons are exact rational equality; there are no
//! tolerances anywhere.

use num::Zero;

use crate::numeric::{rat, Rational};
use crate::table::{
    classical_bernoulli, closed_form_egf, closed_form_laurent_sum, closed_form_table,
    recurrence_table, PBernTable,
};

/// Which identity a [`VerifyReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyKind {
    /// Recurrence route vs closed-form route, cell for cell.
    Theorem,
    /// `f_p' = p f_p - (p+1)^2/(p+2) f_{p+1}`, coefficient for coefficient.
    Ode,
    /// Negative-exponent coefficients of the closed-form sum are all zero.
    PoleCancellation,
    /// Closed form at `p = 0` equals the classical `t/(e^t - 1)` expansion.
    BaseCase,
}

impl VerifyKind {
    /// Wire name used in serialized reports.
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyKind::Theorem => "theorem",
            VerifyKind::Ode => "ode",
            VerifyKind::PoleCancellation => "pole_cancellation",
            VerifyKind::BaseCase => "base_case",
        }
    }
}

/// First point where two routes disagreed: the exponent/row `n` (negative
/// for pole coefficients), the column `p`, and the two conflicting values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: i64,
    pub p: u32,
    pub value_left: Rational,
    pub value_right: Rational,
}

/// Outcome of one verification run. `passed()` holds exactly when no
/// mismatch was found; the constructor enforces that coupling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    kind: VerifyKind,
    max_n: u32,
    max_p: u32,
    passed: bool,
    first_mismatch: Option<Mismatch>,
}

impl VerifyReport {
    fn new(kind: VerifyKind, max_n: u32, max_p: u32, first_mismatch: Option<Mismatch>) -> Self {
        VerifyReport {
            kind,
            max_n,
            max_p,
            passed: first_mismatch.is_none(),
            first_mismatch,
        }
    }

    pub fn kind(&self) -> VerifyKind {
        self.kind
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn max_p(&self) -> u32 {
        self.max_p
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.first_mismatch.as_ref()
    }
}

/// Compares two tables of equal dimensions cell for cell, scanning in
/// lexicographic `(p, n)` order so the smallest failing column is identified
/// first. `value_left` comes from `left`, `value_right` from `right`.
pub fn compare_tables(left: &PBernTable, right: &PBernTable) -> VerifyReport {
    assert_eq!(left.max_n(), right.max_n(), "table heights differ");
    assert_eq!(left.max_p(), right.max_p(), "table widths differ");
    let mut first = None;
    'scan: for p in 0..=left.max_p() {
        for n in 0..=left.max_n() {
            let (l, r) = (left.value(n, p), right.value(n, p));
            if l != r {
                first = Some(Mismatch {
                    n: n as i64,
                    p,
                    value_left: l.clone(),
                    value_right: r.clone(),
                });
                break 'scan;
            }
        }
    }
    VerifyReport::new(VerifyKind::Theorem, left.max_n(), left.max_p(), first)
}

/// Checks that the two routes agree exactly on the whole rectangle
/// `n <= max_n`, `p <= max_p`. A mismatch is a report outcome, not an error.
pub fn verify_theorem(max_n: u32, max_p: u32) -> VerifyReport {
    compare_tables(
        &recurrence_table(max_n, max_p),
        &closed_form_table(max_n, max_p),
    )
}

/// Checks the closed form at `p = 0` against the direct `t/(e^t - 1)`
/// expansion, coefficients `0..=max_n`.
pub fn verify_base_case(max_n: u32) -> VerifyReport {
    let classical = classical_bernoulli(max_n);
    let f0 = closed_form_egf(0, max_n).expect("closed-form poles must cancel");
    let mut first = None;
    for (n, expected) in classical.iter().enumerate() {
        let got = f0
            .egf_coefficient(n as u32)
            .expect("working order covers 0..=max_n");
        if &got != expected {
            first = Some(Mismatch {
                n: n as i64,
                p: 0,
                value_left: expected.clone(),
                value_right: got,
            });
            break;
        }
    }
    VerifyReport::new(VerifyKind::BaseCase, max_n, 0, first)
}

/// Checks `f_p' = p f_p - (p+1)^2/(p+2) f_{p+1}` coefficientwise for
/// exponents `0..max_n`. Requires `max_n >= 1` (there must be at least one
/// coefficient to compare).
pub fn verify_ode(p: u32, max_n: u32) -> VerifyReport {
    assert!(max_n >= 1, "verify_ode needs max_n >= 1");
    let f_p = closed_form_egf(p, max_n).expect("closed-form poles must cancel");
    let f_next = closed_form_egf(p + 1, max_n).expect("closed-form poles must cancel");
    let lhs = f_p.derivative();
    let pi = p as i64;
    let rhs = f_p
        .scale(&rat(pi, 1))
        .sub(&f_next.scale(&rat((pi + 1) * (pi + 1), pi + 2)));
    let mut first = None;
    for m in 0..max_n as i64 {
        let l = lhs.coefficient(m).expect("derivative keeps order max_n");
        let r = rhs.coefficient(m).expect("combination keeps order max_n");
        if l != r {
            first = Some(Mismatch { n: m, p, value_left: l, value_right: r });
            break;
        }
    }
    VerifyReport::new(VerifyKind::Ode, max_n, p, first)
}

/// Assembles the closed-form Laurent sum without assuming regularity and
/// checks that every coefficient of `t^-(p+1) .. t^-1` is exactly zero, i.e.
/// that the individually singular terms cancel to a power series.
pub fn verify_pole_cancellation(p: u32) -> VerifyReport {
    let sum = closed_form_laurent_sum(p, 1);
    let mut first = None;
    for m in -(p as i64 + 1)..0 {
        let c = sum.coefficient(m).expect("window reaches the deepest pole");
        if !c.is_zero() {
            first = Some(Mismatch { n: m, p, value_left: c, value_right: Rational::zero() });
            break;
        }
    }
    debug_assert!(first.is_some() || sum.valuation() >= 0);
    VerifyReport::new(VerifyKind::PoleCancellation, 0, p, first)
}

/// Runs the full battery for one rectangle: the route comparison, then the
/// differential identity for each `p <= max_p`, then pole cancellation for
/// each `p <= max_p`. The per-`p` checks run in parallel when the `parallel`
/// feature is enabled; reports are always assembled in this fixed order, so
/// the output is identical regardless of scheduling.
///
/// The differential identity compares coefficients `0..max_n`, so it is
/// skipped entirely when `max_n = 0` (only the base rectangle is checked).
pub fn run_verification_suite(max_n: u32, max_p: u32) -> Vec<VerifyReport> {
    let mut reports = vec![verify_theorem(max_n, max_p)];
    if max_n >= 1 {
        reports.extend(crate::map_over_p(max_p, |p| verify_ode(p, max_n)));
    }
    reports.extend(crate::map_over_p(max_p, verify_pole_cancellation));
    reports
}

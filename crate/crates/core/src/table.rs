//! The rectangular table of `B_{n,p}` values and the two routes that fill
//! it: the column sweep driven by the recurrence, and coefficient extraction
//! from the closed-form generating function.

use num::One;

use crate::numeric::{binomial, harmonic, rat, Rational};
use crate::series::Series;
use crate::verify::Mismatch;
use crate::{Error, Result};

/// Which route produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Column sweep of the recurrence, seeded from the classical column.
    Recurrence,
    /// Coefficient extraction from the closed-form generating function.
    ClosedForm,
}

impl Route {
    /// Wire name used in serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Recurrence => "recurrence",
            Route::ClosedForm => "egf",
        }
    }
}

/// Rectangular grid of exact `B_{n,p}` values for `0 <= n <= max_n`,
/// `0 <= p <= max_p`, tagged with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PBernTable {
    max_n: u32,
    max_p: u32,
    /// Row-major by `n`: `values[n][p]`.
    values: Vec<Vec<Rational>>,
    route: Route,
}

impl PBernTable {
    fn from_columns(columns: Vec<Vec<Rational>>, route: Route) -> Self {
        let max_p = columns.len() as u32 - 1;
        let max_n = columns[0].len() as u32 - 1;
        let values = (0..=max_n as usize)
            .map(|n| columns.iter().map(|col| col[n].clone()).collect())
            .collect();
        PBernTable { max_n, max_p, values, route }
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn max_p(&self) -> u32 {
        self.max_p
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// The value `B_{n,p}`. Panics outside the table bounds.
    pub fn value(&self, n: u32, p: u32) -> &Rational {
        assert!(
            n <= self.max_n && p <= self.max_p,
            "index (n={n}, p={p}) outside table bounds ({}, {})",
            self.max_n,
            self.max_p
        );
        &self.values[n as usize][p as usize]
    }

    /// Row `n` of the table, indexed by `p`.
    pub fn row(&self, n: u32) -> &[Rational] {
        &self.values[n as usize]
    }

    /// Overwrites one cell. Intended for harness-sensitivity tests that
    /// inject a corrupted value and assert the verifiers catch it.
    pub fn set(&mut self, n: u32, p: u32, value: Rational) {
        assert!(n <= self.max_n && p <= self.max_p);
        self.values[n as usize][p as usize] = value;
    }

    /// Re-checks the defining recurrence in the forward direction:
    /// `B_{n+1,p} = p B_{n,p} - (p+1)^2/(p+2) B_{n,p+1}` for every cell where
    /// all three entries lie in the table. Scans in lexicographic `(p, n)`
    /// order and reports the first violated equation, identified by the cell
    /// `(n+1, p)` on its left-hand side.
    pub fn first_recurrence_violation(&self) -> Option<Mismatch> {
        for p in 0..self.max_p {
            for n in 0..self.max_n {
                let expected = recurrence_step(p, self.value(n, p), self.value(n, p + 1));
                let actual = self.value(n + 1, p);
                if *actual != expected {
                    return Some(Mismatch {
                        n: n as i64 + 1,
                        p,
                        value_left: actual.clone(),
                        value_right: expected,
                    });
                }
            }
        }
        None
    }
}

/// Right-hand side of the recurrence: `p B_{n,p} - (p+1)^2/(p+2) B_{n,p+1}`.
fn recurrence_step(p: u32, b_n_p: &Rational, b_n_p1: &Rational) -> Rational {
    let p = p as i64;
    rat(p, 1) * b_n_p - rat((p + 1) * (p + 1), p + 2) * b_n_p1
}

/// The classical Bernoulli numbers `B_0 .. B_max_n` (with `B_1 = -1/2`),
/// read off as EGF coefficients of `t / (e^t - 1)`.
pub fn classical_bernoulli(max_n: u32) -> Vec<Rational> {
    let w = max_n as i64 + 2;
    let egf = Series::monomial(Rational::one(), 1, w)
        .mul(&Series::expm1(w).invert().expect("e^t - 1 is not the zero series"));
    (0..=max_n)
        .map(|n| egf.egf_coefficient(n).expect("working order covers 0..=max_n"))
        .collect()
}

/// Fills the rectangle `n <= max_n`, `p <= max_p` by the recurrence route.
///
/// The recurrence only fixes a column once the column to its *right* is
/// known, so it is swept in the rearranged form
/// `B_{n,p+1} = (p+2)/(p+1)^2 (p B_{n,p} - B_{n+1,p})`, starting from the
/// classical column. Each sweep step consumes one row, so the seed column is
/// computed to depth `max_n + max_p`, which guarantees the full rectangle.
pub fn recurrence_table(max_n: u32, max_p: u32) -> PBernTable {
    let mut column = classical_bernoulli(max_n + max_p);
    let mut columns = Vec::with_capacity(max_p as usize + 1);
    columns.push(column.clone());
    for p in 0..max_p as i64 {
        let factor = rat(p + 2, (p + 1) * (p + 1));
        let next: Vec<Rational> = (0..column.len() - 1)
            .map(|n| &factor * (rat(p, 1) * &column[n] - &column[n + 1]))
            .collect();
        columns.push(next.clone());
        column = next;
    }
    for col in &mut columns {
        col.truncate(max_n as usize + 1);
    }
    PBernTable::from_columns(columns, Route::Recurrence)
}

/// The Laurent-series sum of the closed form for `f_p`, assembled term by
/// term *without* assuming the poles cancel:
///
/// ```text
/// (p+1)(t - H_p) e^{pt} (e^t - 1)^{-(p+1)}
///   + (p+1) sum_{k=1..p} C(p,k) H_k (e^t - 1)^{-(k+1)}
/// ```
///
/// Every intermediate is built at working order `W = count + p + 2`, which
/// guarantees at least `count` coefficients of the sum: the deepest pole
/// `(e^t - 1)^{-(p+1)}` shifts the valuation down by `p + 1` and division by
/// `e^t - 1` itself costs one more order.
pub(crate) fn closed_form_laurent_sum(p: u32, count: u32) -> Series {
    let w = (count + p) as i64 + 2;
    let inv_em1 = Series::expm1(w)
        .invert()
        .expect("e^t - 1 is not the zero series");

    // inv_pows[k] = (e^t - 1)^{-(k+1)} for k = 0..=p.
    let mut inv_pows = Vec::with_capacity(p as usize + 1);
    inv_pows.push(inv_em1.clone());
    for _ in 0..p {
        inv_pows.push(inv_pows.last().unwrap().mul(&inv_em1));
    }

    let p_plus_1 = rat(p as i64 + 1, 1);
    let linear = Series::monomial(Rational::one(), 1, w)
        .sub(&Series::constant(harmonic(p), w));
    let mut sum = linear
        .mul(&Series::exp_linear(&rat(p as i64, 1), w))
        .mul(&inv_pows[p as usize])
        .scale(&p_plus_1);
    for k in 1..=p {
        let weight =
            &p_plus_1 * Rational::from_integer(binomial(p, k as i64)) * harmonic(k);
        sum = sum.add(&inv_pows[k as usize].scale(&weight));
    }
    sum
}

/// The generating function `f_p(t) = sum B_{n,p} t^n / n!` from the closed
/// form, guaranteed to be a true power series (valuation >= 0) with at least
/// the coefficients `0..=max_n` known. A residual pole is reported as
/// [`Error::ResidualPole`]; it would indicate an arithmetic bug, not a
/// legitimate input condition.
pub fn closed_form_egf(p: u32, max_n: u32) -> Result<Series> {
    let sum = closed_form_laurent_sum(p, max_n + 1);
    if sum.valuation() < 0 {
        return Err(Error::ResidualPole { p, valuation: sum.valuation() });
    }
    debug_assert!(sum.order() >= max_n as i64 + 1);
    Ok(sum)
}

fn closed_form_column(p: u32, max_n: u32) -> Vec<Rational> {
    let egf = closed_form_egf(p, max_n).expect("closed-form poles must cancel");
    (0..=max_n)
        .map(|n| egf.egf_coefficient(n).expect("working order covers 0..=max_n"))
        .collect()
}

/// Fills the rectangle by the closed-form route. Columns are independent
/// and are computed in parallel when the `parallel` feature is enabled.
pub fn closed_form_table(max_n: u32, max_p: u32) -> PBernTable {
    let columns = crate::map_over_p(max_p, |p| closed_form_column(p, max_n));
    PBernTable::from_columns(columns, Route::ClosedForm)
}

/// Sequential variant of [`closed_form_table`], kept available for
/// benchmarking the parallel fan-out against a single-threaded baseline.
/// Produces identical output.
pub fn closed_form_table_serial(max_n: u32, max_p: u32) -> PBernTable {
    let columns = (0..=max_p).map(|p| closed_form_column(p, max_n)).collect();
    PBernTable::from_columns(columns, Route::ClosedForm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn classical_bernoulli_leading_values() {
        assert_eq!(
            classical_bernoulli(4),
            vec![rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30)]
        );
    }

    #[test]
    fn classical_odd_indices_vanish() {
        let b = classical_bernoulli(13);
        for n in (3..=13).step_by(2) {
            assert!(b[n].is_zero(), "B_{n} = {}", b[n]);
        }
    }

    #[test]
    fn recurrence_sweep_small_values() {
        let table = recurrence_table(3, 2);
        assert_eq!(*table.value(0, 0), rat(1, 1));
        assert_eq!(*table.value(0, 1), rat(1, 1));
        assert_eq!(*table.value(1, 1), rat(-1, 3));
        assert_eq!(*table.value(2, 1), rat(0, 1));
        assert_eq!(*table.value(3, 1), rat(1, 15));
        assert_eq!(*table.value(0, 2), rat(1, 1));
        assert_eq!(*table.value(1, 2), rat(-1, 4));
    }

    #[test]
    fn recurrence_table_dimensions_and_route() {
        let table = recurrence_table(5, 3);
        assert_eq!(table.max_n(), 5);
        assert_eq!(table.max_p(), 3);
        assert_eq!(table.row(0).len(), 4);
        assert_eq!(table.route(), Route::Recurrence);
        assert_eq!(table.route().as_str(), "recurrence");
    }

    #[test]
    fn closed_form_base_column_is_classical() {
        let f0 = closed_form_egf(0, 8).unwrap();
        let classical = classical_bernoulli(8);
        for (n, b) in classical.iter().enumerate() {
            assert_eq!(&f0.egf_coefficient(n as u32).unwrap(), b);
        }
    }

    #[test]
    fn closed_form_p1_matches_direct_expansion() {
        // Independent assembly of f_1 = 2(t-1)e^t/(e^t-1)^2 + 2/(e^t-1)^2
        // straight from series primitives, bypassing the shared builder.
        let w = 12;
        let numerator = Series::monomial(Rational::one(), 1, w)
            .sub(&Series::one(w))
            .mul(&Series::exp_linear(&Rational::one(), w));
        let pole = Series::expm1(w).invert().unwrap().pow(2).unwrap();
        let direct = numerator.mul(&pole).add(&pole).scale(&rat(2, 1));

        let f1 = closed_form_egf(1, 6).unwrap();
        assert_eq!(f1.egf_coefficient(0).unwrap(), rat(1, 1));
        assert_eq!(f1.egf_coefficient(1).unwrap(), rat(-1, 3));
        for n in 0..=6u32 {
            assert_eq!(
                f1.egf_coefficient(n).unwrap(),
                direct.egf_coefficient(n).unwrap(),
                "coefficient {n}"
            );
        }
    }

    #[test]
    fn closed_form_p2_constant_term() {
        let f2 = closed_form_egf(2, 0).unwrap();
        assert_eq!(f2.egf_coefficient(0).unwrap(), rat(1, 1));
    }

    #[test]
    fn closed_form_is_regular_with_enough_coefficients() {
        for (p, n) in [(0u32, 0u32), (0, 9), (3, 5), (7, 1), (12, 16)] {
            let f = closed_form_egf(p, n).unwrap();
            assert!(f.valuation() >= 0, "p={p}");
            assert!(f.order() >= n as i64 + 1, "p={p}, n={n}");
        }
    }

    #[test]
    fn routes_agree_on_small_rectangle() {
        let by_recurrence = recurrence_table(6, 4);
        let by_closed_form = closed_form_table(6, 4);
        for n in 0..=6 {
            for p in 0..=4 {
                assert_eq!(by_recurrence.value(n, p), by_closed_form.value(n, p));
            }
        }
        assert_eq!(by_closed_form.route().as_str(), "egf");
    }

    #[test]
    fn serial_and_parallel_builders_agree() {
        assert_eq!(closed_form_table(5, 3), closed_form_table_serial(5, 3));
    }

    #[test]
    fn forward_recurrence_holds_on_both_routes() {
        assert!(recurrence_table(8, 4).first_recurrence_violation().is_none());
        assert!(closed_form_table(8, 4).first_recurrence_violation().is_none());
    }

    #[test]
    fn forward_recurrence_check_detects_corruption() {
        let mut table = recurrence_table(6, 3);
        table.set(2, 1, rat(99, 1));
        assert!(table.first_recurrence_violation().is_some());
    }
}

//! Memoized recurrences for `12...(m-1) m^a` refined by the smallest
//! repeated letter.
//!
//! `a^(ℓ)(n, i)` weighs members of `NC_n` with smallest repeated letter `i`
//! by `q` to the number of occurrences in `12...ℓ (π + ℓ)`, and `a^(ℓ)(n)`
//! sums over all of `NC_n`.

use std::collections::HashMap;

use num::BigRational;

use crate::algebra::{MultiPoly, TruncatedSeries};
use crate::error::{Error, Result};
use crate::partition::{catalan, EnumConfig, PatternFamily, SubwordPattern};
use crate::stats::{count_occurrences, nc_histogram, rep_of};
use crate::verify::{Cell, VerifyReport};

fn catalan_poly(n: usize) -> MultiPoly {
    MultiPoly::constant(BigRational::from_integer(catalan(n).into()))
}

#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    m: usize,
    a: usize,
    clamp: bool,
    cells: HashMap<(usize, usize, usize), MultiPoly>,
    totals: HashMap<(usize, usize), MultiPoly>,
}

impl RecurrenceTable {
    /// Table with `ℓ` clamped at `m` in memo keys.
    pub fn new(m: usize, a: usize) -> Result<Self> {
        Self::with_clamp(m, a, true)
    }

    pub fn with_clamp(m: usize, a: usize, clamp: bool) -> Result<Self> {
        PatternFamily::StaircaseTail { m, a }.validate()?;
        Ok(RecurrenceTable { m, a, clamp, cells: HashMap::new(), totals: HashMap::new() })
    }

    pub fn pattern(&self) -> SubwordPattern {
        SubwordPattern::staircase_tail(self.m, self.a)
    }

    fn key_level(&self, l: usize) -> usize {
        if self.clamp {
            l.min(self.m)
        } else {
            l
        }
    }

    fn check_cell(&self, n: usize, i: usize) -> Result<()> {
        if n < self.a || i == 0 || i + self.a > n + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "cell (n = {n}, i = {i}) needs n >= {} and 1 <= i <= n - {}",
                self.a,
                self.a - 1
            )));
        }
        Ok(())
    }

    /// `[i + ℓ >= m] (q - 1) a^(0)(n - i - a + 2)`.
    fn boundary(&mut self, l: usize, n: usize, i: usize) -> MultiPoly {
        if i + l >= self.m {
            &MultiPoly::q_minus_one() * &self.a_total(0, n + 2 - i - self.a)
        } else {
            MultiPoly::zero()
        }
    }

    /// `a^(ℓ)(n, i)`, summing over the position `j` of the second `i`.
    pub fn a_cell(&mut self, l: usize, n: usize, i: usize) -> Result<MultiPoly> {
        self.check_cell(n, i)?;
        let key = (self.key_level(l), n, i);
        if let Some(v) = self.cells.get(&key) {
            return Ok(v.clone());
        }
        let mut acc = self.boundary(l, n, i);
        for j in (i + 1)..=n {
            let inner = self.a_total(l + i, j - i - 1);
            let outer = self.a_total(0, n - j + 1);
            acc += &(&inner * &outer);
        }
        self.cells.insert(key, acc.clone());
        Ok(acc)
    }

    /// The same cell with the `j = i + 1` term split out as `a^(0)(n - i)`.
    pub fn a_cell_split(&mut self, l: usize, n: usize, i: usize) -> Result<MultiPoly> {
        self.check_cell(n, i)?;
        let mut acc = &self.a_total(0, n - i) + &self.boundary(l, n, i);
        for j in (i + 2)..=n {
            let inner = self.a_total(l + i, j - i - 1);
            let outer = self.a_total(0, n - j + 1);
            acc += &(&inner * &outer);
        }
        Ok(acc)
    }

    /// `a^(ℓ)(n) = C_{a-1} + Σ_i a^(ℓ)(n, i)` for `n >= a`, `C_n` below.
    pub fn a_total(&mut self, l: usize, n: usize) -> MultiPoly {
        if n < self.a {
            return catalan_poly(n);
        }
        let key = (self.key_level(l), n);
        if let Some(v) = self.totals.get(&key) {
            return v.clone();
        }
        let mut acc = catalan_poly(self.a - 1);
        for i in 1..=(n + 1 - self.a) {
            acc += &self.a_cell(l, n, i).expect("index in range");
        }
        self.totals.insert(key, acc.clone());
        acc
    }

    /// `Σ_n a^(0)(n) x^n` to the given order.
    pub fn series(&mut self, order: usize) -> TruncatedSeries {
        let coeffs = (0..order).map(|n| self.a_total(0, n)).collect();
        TruncatedSeries::from_coeffs(coeffs, order)
    }

    pub fn memo_size(&self) -> usize {
        self.cells.len() + self.totals.len()
    }
}

/// `a^(0)(n, i)` for each `i` against brute force split by `rep`, with
/// every partition whose smallest repeated letter exceeds `n - a + 1`
/// (including the increasing one) reconciled with `C_{a-1}`.
pub fn rep_refined_check(m: usize, a: usize, n: usize) -> Result<VerifyReport> {
    let mut table = RecurrenceTable::new(m, a)?;
    let tau = table.pattern();
    let hist = nc_histogram(n, &EnumConfig::default(), |w| {
        (rep_of(w).unwrap_or(0) as usize, count_occurrences(w, tau.word()) as u32)
    })?;
    let mut by_rep: HashMap<usize, MultiPoly> = HashMap::new();
    let mut boundary = MultiPoly::zero();
    let last = (n + 1).saturating_sub(a);
    for ((r, e), c) in hist {
        let term = MultiPoly::term(BigRational::from_integer(c.into()), crate::algebra::Monomial::of(crate::algebra::Marker::Q, e));
        if r >= 1 && r <= last && n >= a {
            *by_rep.entry(r).or_insert_with(MultiPoly::zero) += &term;
        } else {
            boundary += &term;
        }
    }
    let params = |what: &str| format!("m={m} a={a} {what}");
    let mut cells = Vec::new();
    if n >= a {
        for i in 1..=last {
            let want = by_rep.remove(&i).unwrap_or_else(MultiPoly::zero);
            cells.push(Cell::compare(&params(&format!("i={i}")), Some(n), want, table.a_cell(0, n, i)?));
        }
        cells.push(Cell::compare(&params("boundary"), Some(n), boundary, catalan_poly(a - 1)));
    } else {
        cells.push(Cell::compare(&params("below a"), Some(n), boundary, table.a_total(0, n)));
    }
    Ok(VerifyReport::new("rep-refined", cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Marker};
    use crate::formulas::gf_staircase_tail;
    use crate::stats::distribution;

    const CASES: [(usize, usize); 4] = [(2, 2), (3, 2), (2, 3), (3, 3)];

    #[test]
    fn small_example() {
        let mut t = RecurrenceTable::new(2, 2).unwrap();
        let q = MultiPoly::marker(Marker::Q);
        let sum = &(&t.a_cell(0, 3, 1).unwrap() + &t.a_cell(0, 3, 2).unwrap()) + &catalan_poly(1);
        assert_eq!(sum, MultiPoly::from_int(4) + q);
        assert_eq!(t.a_total(0, 3), sum);
    }

    #[test]
    fn initial_values_are_catalan() {
        let mut t = RecurrenceTable::new(3, 4).unwrap();
        for l in 0..5 {
            for n in 0..4 {
                assert_eq!(t.a_total(l, n), catalan_poly(n));
            }
        }
    }

    #[test]
    fn out_of_range_cells() {
        let mut t = RecurrenceTable::new(2, 3).unwrap();
        assert!(matches!(t.a_cell(0, 2, 1), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(t.a_cell(0, 5, 0), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(t.a_cell(0, 5, 4), Err(Error::IndexOutOfRange(_))));
        assert!(t.a_cell(0, 5, 3).is_ok());
    }

    #[test]
    fn agrees_with_brute_force_and_series() {
        for (m, a) in CASES {
            let mut t = RecurrenceTable::new(m, a).unwrap();
            let series = gf_staircase_tail(m, a, 11).unwrap();
            let tau = SubwordPattern::staircase_tail(m, a);
            for n in 0..=10 {
                let got = t.a_total(0, n);
                assert_eq!(got, distribution(n, &tau).unwrap(), "m = {m}, a = {a}, n = {n}");
                assert_eq!(&got, series.coeff(n));
            }
        }
    }

    #[test]
    fn two_forms_agree() {
        for (m, a) in CASES {
            let mut t = RecurrenceTable::new(m, a).unwrap();
            for l in 0..=m + 1 {
                for n in a..=10 {
                    for i in 1..=(n + 1 - a) {
                        assert_eq!(t.a_cell(l, n, i).unwrap(), t.a_cell_split(l, n, i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn clamp_is_sound() {
        for (m, a) in CASES {
            let mut free = RecurrenceTable::with_clamp(m, a, false).unwrap();
            for n in 0..=10 {
                let at_m = free.a_total(m, n);
                for l in m + 1..=m + 3 {
                    assert_eq!(free.a_total(l, n), at_m, "m = {m}, a = {a}, l = {l}, n = {n}");
                }
            }
            let mut clamped = RecurrenceTable::new(m, a).unwrap();
            for n in 0..=10 {
                assert_eq!(clamped.a_total(0, n), free.a_total(0, n));
            }
            assert!(clamped.memo_size() <= free.memo_size());
        }
    }

    #[test]
    fn rows_sum_to_catalan_at_one() {
        let mut t = RecurrenceTable::new(3, 2).unwrap();
        for l in 0..4 {
            for n in 0..=10 {
                let v = t.a_total(l, n).specialize(Marker::Q, &rat(1));
                assert_eq!(v, catalan_poly(n));
            }
        }
    }

    #[test]
    fn refined_by_rep() {
        for (m, a) in CASES {
            for n in 0..=9 {
                let r = rep_refined_check(m, a, n).unwrap();
                assert!(r.passed(), "{}", r.to_table());
            }
        }
    }
}

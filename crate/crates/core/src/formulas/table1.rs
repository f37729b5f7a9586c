//! Length-three patterns with a repeated letter: each row's quadratic
//! equation, checked against the closed forms and brute force.

use rayon::prelude::*;

use super::{gf_1a_rho_1b, gf_1m, gf_1m2, gf_rho_1b, gf_staircase_tail};
use crate::algebra::{catalan_series, quadratic_residual, MultiPoly, TruncatedSeries};
use crate::error::Result;
use crate::partition::SubwordPattern;
use crate::stats::distribution;
use crate::verify::{Cell, VerifyReport};

/// `E2 F^2 = E1 F - E0`, with each `E` a polynomial in `x` given densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub pattern: String,
    pub e2: Vec<MultiPoly>,
    pub e1: Vec<MultiPoly>,
    pub e0: Vec<MultiPoly>,
}

fn q() -> MultiPoly {
    MultiPoly::marker(crate::algebra::Marker::Q)
}

fn int(n: i64) -> MultiPoly {
    MultiPoly::from_int(n)
}

impl Table1Row {
    fn new(pattern: &str, e2: Vec<MultiPoly>, e1: Vec<MultiPoly>, e0: Vec<MultiPoly>) -> Self {
        Table1Row { pattern: pattern.into(), e2, e1, e0 }
    }

    /// The seven rows in pattern order.
    pub fn rows() -> Vec<Table1Row> {
        let qm1 = MultiPoly::q_minus_one();
        let z = MultiPoly::zero;
        // 111: x(1-qx+(q-1)x^2) F^2 = (1-qx+(q-1)x^3)(F-1)
        let e111 = vec![int(1), -q(), z(), qm1.clone()];
        // 112, 122: x(1+(q-1)x) F^2 = (1+(q-1)x^2) F - 1
        let two_e2 = vec![z(), int(1), qm1.clone()];
        let two_e1 = vec![int(1), z(), qm1.clone()];
        // 121: x F^2 = (1-(q-1)x^2)(F-1)
        let e121 = vec![int(1), z(), -qm1.clone()];
        // 211, 221: x(1+(q-1)x) F^2 = (1+2(q-1)x^2) F - 1 - (q-1)x^2
        let desc_e1 = vec![int(1), z(), qm1.scale(&crate::algebra::rat(2))];
        let desc_e0 = vec![int(1), z(), qm1.clone()];
        vec![
            Self::new("111", vec![z(), int(1), -q(), qm1.clone()], e111.clone(), e111),
            Self::new("112", two_e2.clone(), two_e1.clone(), vec![int(1)]),
            Self::new("121", vec![z(), int(1)], e121.clone(), e121),
            Self::new("122", two_e2.clone(), two_e1, vec![int(1)]),
            Self::new("211", two_e2.clone(), desc_e1.clone(), desc_e0.clone()),
            Self::new("212", vec![z(), int(1)], vec![int(1)], vec![int(1)]),
            Self::new("221", two_e2, desc_e1, desc_e0),
        ]
    }

    /// The closed-form series for this row's pattern.
    pub fn series(&self, order: usize) -> Result<TruncatedSeries> {
        let nc = |s: &str| s.parse().expect("literal partition");
        match self.pattern.as_str() {
            "111" => gf_1m(3, order),
            "112" => gf_1m2(2, order),
            "121" => gf_1a_rho_1b(1, &nc("1"), 1, order),
            "122" => gf_staircase_tail(2, 2, order),
            "211" => gf_rho_1b(&nc("1"), 2, order),
            "221" => gf_rho_1b(&nc("11"), 1, order),
            _ => Ok(catalan_series(order)),
        }
    }

    fn coeff_series(poly: &[MultiPoly], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(poly.iter().cloned().enumerate(), order)
    }

    /// `E2 F^2 - E1 F + E0` mod `x^order`.
    pub fn residual(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let order = f.order();
        quadratic_residual(
            &Self::coeff_series(&self.e2, order),
            &Self::coeff_series(&self.e1, order),
            &Self::coeff_series(&self.e0, order),
            f,
        )
    }
}

/// Checks all seven rows to order `order`.
pub fn verify_table1(order: usize) -> VerifyReport {
    verify_table1_rows(&Table1Row::rows(), order)
}

/// Per row: the closed-form series satisfies the row equation mod
/// `x^order`, and its coefficients equal brute force for
/// `n <= min(order - 1, 12)`.
pub fn verify_table1_rows(rows: &[Table1Row], order: usize) -> VerifyReport {
    let n_max = order.saturating_sub(1).min(12);
    let per_row: Vec<Vec<Cell>> = rows
        .par_iter()
        .map(|row| {
            let params = format!("tau={}", row.pattern);
            let f = match row.series(order) {
                Ok(f) => f,
                Err(e) => return vec![Cell::failed(&params, None, e.to_string())],
            };
            let mut cells = Vec::new();
            let residual = row.residual(&f);
            let first_bad = (0..order).find(|&k| !residual.coeff(k).is_zero());
            cells.push(match first_bad {
                None => Cell::check(&format!("{params} equation"), None, true, None),
                Some(k) => Cell::compare(
                    &format!("{params} equation"),
                    Some(k),
                    MultiPoly::zero(),
                    residual.coeff(k).clone(),
                ),
            });
            let tau: SubwordPattern = row.pattern.parse().expect("row pattern");
            for n in 0..=n_max {
                match distribution(n, &tau) {
                    Ok(d) => cells.push(Cell::compare(&params, Some(n), d, f.coeff(n).clone())),
                    Err(e) => cells.push(Cell::failed(&params, Some(n), e.to_string())),
                }
            }
            cells
        })
        .collect();
    VerifyReport::new("table1", per_row.into_iter().flatten().collect())
}

//! Cross-checks between closed forms, the recurrence, bijections and brute
//! force, collected into serializable reports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One comparison. `n` is absent for whole-series checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub params: String,
    pub n: Option<usize>,
    pub status: Status,
    pub expected: Option<MultiPoly>,
    pub actual: Option<MultiPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    pub fn compare(params: &str, n: Option<usize>, expected: MultiPoly, actual: MultiPoly) -> Cell {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Cell { params: params.into(), n, status, expected: Some(expected), actual: Some(actual), note: None }
    }

    pub fn check(params: &str, n: Option<usize>, ok: bool, note: Option<String>) -> Cell {
        let status = if ok { Status::Pass } else { Status::Fail };
        Cell { params: params.into(), n, status, expected: None, actual: None, note }
    }

    pub fn failed(params: &str, n: Option<usize>, note: String) -> Cell {
        Cell::check(params, n, false, Some(note))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub target: String,
    pub cells: Vec<Cell>,
}

impl VerifyReport {
    pub fn new(target: &str, cells: Vec<Cell>) -> Self {
        VerifyReport { target: target.into(), cells }
    }

    pub fn passed(&self) -> bool {
        self.cells.iter().all(Cell::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.passed())
    }

    /// Human-readable table, one line per cell plus a summary line.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let n = c.n.map_or("-".to_string(), |n| n.to_string());
            let status = if c.passed() { "pass" } else { "FAIL" };
            let _ = write!(out, "{:<10} {:<4} {:<4} {}", self.target, status, n, c.params);
            if !c.passed() {
                if let (Some(e), Some(a)) = (&c.expected, &c.actual) {
                    let _ = write!(out, "  expected {e}, got {a}");
                }
            }
            if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let bad = self.failures().count();
        let _ = writeln!(out, "{}: {} cells, {} failed", self.target, self.cells.len(), bad);
        out
    }

    /// Concatenates reports under a combined target name, keeping order.
    pub fn merge(target: &str, parts: Vec<VerifyReport>) -> VerifyReport {
        let cells = parts
            .into_iter()
            .flat_map(|r| {
                let t = r.target;
                r.cells.into_iter().map(move |mut c| {
                    c.params = format!("{t}: {}", c.params);
                    c
                })
            })
            .collect();
        VerifyReport::new(target, cells)
    }
}

/// Runs independent cell producers in parallel and concatenates their
/// output in input order.
pub fn run_cells<T, F>(jobs: &[T], f: F) -> Vec<Cell>
where
    T: Sync,
    F: Fn(&T) -> Vec<Cell> + Sync + Send,
{
    jobs.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

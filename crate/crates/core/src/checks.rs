//! Verification targets: each one cross-checks a closed form, the recurrence
//! or a bijection against brute force and returns a [`VerifyReport`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num::{BigRational, BigUint, One};
use serde::{Deserialize, Serialize};

use crate::algebra::{quadratic_residual, rat, Marker, MultiPoly, TruncatedSeries};
use crate::bijections::{
    descent_bottoms, map_descent_code, map_equiv, map_equiv_inverse, map_f, map_f_inverse, map_g, map_runrev,
};
use crate::error::{Error, Result};
use crate::formulas::{
    gf_1a_rho_1b, gf_1m, gf_1m2, gf_joint_1a_1b2, gf_rho_1b, gf_staircase_joint_rep, gf_staircase_tail,
    joint_1a_1b2_equation, staircase_kernel_a0, total_occurrences, verify_table1,
};
use crate::partition::{classify_pattern, enumerate_nc, Letter, NCPartition, PatternFamily, SubwordPattern};
use crate::recurrence::{rep_refined_check, RecurrenceTable};
use crate::stats::{block_count, count_subword, distribution, joint_distribution, rep_joint_distribution};
use crate::verify::{run_cells, Cell, VerifyReport};

/// Largest `n` brute-forced by the series targets.
pub const BRUTE_N_MAX: usize = 12;
/// Largest `n` for the exhaustive bijection checks.
pub const BIJECTION_N_MAX: usize = 10;
/// Largest `n` for the rep-refined joint series.
pub const REP_N_MAX: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// The seven length-three patterns with a repeated letter.
    Table,
    /// Joint `1^a` / `1^b2` series and its one-marker specializations.
    JointRun,
    /// `(ρ+1)1^b` series.
    RhoTail,
    /// `1^a(ρ+1)1^b` series.
    Sandwich,
    /// `12...(m-1)m^a`: brute force, recurrence and functional equation.
    Staircase,
    /// The same pattern jointly with the smallest repeated letter.
    StaircaseRep,
    /// Recurrence cells refined by the smallest repeated letter.
    Recurrence,
    /// Closed-form totals against brute force.
    Totals,
    /// `1^a23...m` against `12...(m-1)m^a`.
    Equivalence,
    /// Exhaustive bijection checks.
    Bijections,
    All,
}

impl Target {
    pub const EACH: [Target; 10] = [
        Target::Table,
        Target::JointRun,
        Target::RhoTail,
        Target::Sandwich,
        Target::Staircase,
        Target::StaircaseRep,
        Target::Recurrence,
        Target::Totals,
        Target::Equivalence,
        Target::Bijections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Table => "table",
            Target::JointRun => "joint-run",
            Target::RhoTail => "rho-tail",
            Target::Sandwich => "sandwich",
            Target::Staircase => "staircase",
            Target::StaircaseRep => "staircase-rep",
            Target::Recurrence => "recurrence",
            Target::Totals => "totals",
            Target::Equivalence => "equivalence",
            Target::Bijections => "bijections",
            Target::All => "all",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::EACH
            .into_iter()
            .chain([Target::All])
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Target::EACH.iter().map(|t| t.name()).chain(["all"]).collect();
                Error::Parse(format!("unknown target {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Runs one target with series truncated at `x^order`. Brute force covers
/// `n <= min(order - 1, 12)` (10 for bijections, 9 for the rep series).
pub fn run_target(target: Target, order: usize) -> VerifyReport {
    let n_max = order.saturating_sub(1).min(BRUTE_N_MAX);
    match target {
        Target::Table => {
            let mut r = verify_table1(order);
            r.target = target.name().into();
            r
        }
        Target::JointRun => joint_run(order, n_max),
        Target::RhoTail => rho_tail(order, n_max),
        Target::Sandwich => sandwich(order, n_max),
        Target::Staircase => staircase(order, n_max),
        Target::StaircaseRep => staircase_rep(order, n_max.min(REP_N_MAX)),
        Target::Recurrence => recurrence(n_max),
        Target::Totals => totals(n_max),
        Target::Equivalence => equivalence(n_max),
        Target::Bijections => bijections(n_max.min(BIJECTION_N_MAX)),
        Target::All => {
            let parts = Target::EACH.iter().map(|&t| run_target(t, order)).collect();
            VerifyReport::merge("all", parts)
        }
    }
}

fn pat(s: &str) -> SubwordPattern {
    s.parse().expect("built-in pattern")
}

fn nc(s: &str) -> NCPartition {
    s.parse().expect("built-in partition")
}

/// Coefficients `0..=n_max` of `series` against brute-force rows.
fn series_cells<F>(params: &str, series: Result<TruncatedSeries>, n_max: usize, brute: F) -> Vec<Cell>
where
    F: Fn(usize) -> Result<MultiPoly>,
{
    let s = match series {
        Ok(s) => s,
        Err(e) => return vec![Cell::failed(params, None, e.to_string())],
    };
    (0..=n_max.min(s.order().saturating_sub(1)))
        .map(|n| match brute(n) {
            Ok(want) => Cell::compare(params, Some(n), want, s.coeff(n).clone()),
            Err(e) => Cell::failed(params, Some(n), e.to_string()),
        })
        .collect()
}

/// Whole-series equality cell.
fn same_series(params: &str, left: Result<TruncatedSeries>, right: Result<TruncatedSeries>) -> Cell {
    match (left, right) {
        (Ok(l), Ok(r)) => match (0..l.order().min(r.order())).find(|&k| l.coeff(k) != r.coeff(k)) {
            None => Cell::check(params, None, true, None),
            Some(k) => Cell::compare(params, Some(k), l.coeff(k).clone(), r.coeff(k).clone()),
        },
        (Err(e), _) | (_, Err(e)) => Cell::failed(params, None, e.to_string()),
    }
}

/// Cell asserting `s ≡ 0 mod x^order`.
fn vanishes(params: &str, s: &TruncatedSeries) -> Cell {
    match (0..s.order()).find(|&k| !s.coeff(k).is_zero()) {
        None => Cell::check(params, None, true, None),
        Some(k) => Cell::compare(params, Some(k), MultiPoly::zero(), s.coeff(k).clone()),
    }
}

fn joint_run(order: usize, n_max: usize) -> VerifyReport {
    let pairs = [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3)];
    let mut cells = run_cells(&pairs, |&(a, b)| {
        let params = format!("a={a} b={b}");
        let (t1, t2) = (SubwordPattern::run(a), SubwordPattern::run_ascent(b));
        let series = gf_joint_1a_1b2(a, b, order);
        let mut out = Vec::new();
        if let (Ok(f), Ok((ea, eb, ec))) = (&series, joint_1a_1b2_equation(a, b, order)) {
            out.push(vanishes(&format!("{params} equation"), &quadratic_residual(&ea, &eb, &ec, f)));
        }
        out.extend(series_cells(&params, series, n_max, |n| joint_distribution(n, &t1, &t2)));
        out
    });
    let ms: Vec<usize> = (1..=4).collect();
    cells.extend(run_cells(&ms, |&m| {
        let one = BigRational::one();
        let run = gf_joint_1a_1b2(m, 1, order).map(|s| s.specialize(Marker::Q, &one).rename(Marker::P, Marker::Q));
        let asc = gf_joint_1a_1b2(1, m, order).map(|s| s.specialize(Marker::P, &one));
        vec![
            same_series(&format!("1^{m} is the p-part of the joint series"), gf_1m(m, order), run),
            same_series(&format!("1^{m}2 is the q-part of the joint series"), gf_1m2(m, order), asc),
        ]
    }));
    VerifyReport::new(Target::JointRun.name(), cells)
}

fn rho_tail(order: usize, n_max: usize) -> VerifyReport {
    let cases = [("1", 2), ("11", 1), ("12", 1), ("1", 3), ("12", 2)];
    let mut cells = run_cells(&cases, |&(rho, b)| {
        let rho = nc(rho);
        let tau = match (PatternFamily::RhoTail { rho: rho.clone(), b }).pattern() {
            Ok(t) => t,
            Err(e) => return vec![Cell::failed(&format!("rho={rho} b={b}"), None, e.to_string())],
        };
        series_cells(&format!("tau={tau}"), gf_rho_1b(&rho, b, order), n_max, |n| distribution(n, &tau))
    });
    for (i, &(r1, b1)) in cases.iter().enumerate() {
        for &(r2, b2) in &cases[i + 1..] {
            if r1.len() + b1 == r2.len() + b2 {
                cells.push(same_series(
                    &format!("rho={r1} b={b1} equals rho={r2} b={b2}"),
                    gf_rho_1b(&nc(r1), b1, order),
                    gf_rho_1b(&nc(r2), b2, order),
                ));
            }
        }
    }
    VerifyReport::new(Target::RhoTail.name(), cells)
}

fn sandwich_of(tau: &SubwordPattern) -> Option<(usize, NCPartition, usize)> {
    classify_pattern(tau).matches.into_iter().find_map(|f| match f {
        PatternFamily::Sandwich { a, rho, b } => Some((a, rho, b)),
        _ => None,
    })
}

fn sandwich(order: usize, n_max: usize) -> VerifyReport {
    let taus = ["121", "1121", "1211", "1221", "1231", "11211", "12311"];
    let mut cells = run_cells(&taus, |&t| {
        let tau = pat(t);
        let params = format!("tau={tau}");
        let Some((a, rho, b)) = sandwich_of(&tau) else {
            return vec![Cell::failed(&params, None, "not of the form 1^a(rho+1)1^b".into())];
        };
        let mut out = series_cells(&params, gf_1a_rho_1b(a, &rho, b, order), n_max, |n| distribution(n, &tau));
        out.push(same_series(
            &format!("{params} symmetric in a and b"),
            gf_1a_rho_1b(a, &rho, b, order),
            gf_1a_rho_1b(b, &rho, a, order),
        ));
        out
    });
    let same = ["1121", "1211", "1221", "1231"];
    for t in &same[1..] {
        let series = |s: &str| {
            let (a, rho, b) = sandwich_of(&pat(s)).expect("sandwich pattern");
            gf_1a_rho_1b(a, &rho, b, order)
        };
        cells.push(same_series(&format!("tau={} equals tau={t}", same[0]), series(same[0]), series(t)));
    }
    VerifyReport::new(Target::Sandwich.name(), cells)
}

const STAIRCASES: [(usize, usize); 4] = [(2, 2), (3, 2), (2, 3), (3, 3)];

fn staircase(order: usize, n_max: usize) -> VerifyReport {
    let cells = run_cells(&STAIRCASES, |&(m, a)| {
        let tau = SubwordPattern::staircase_tail(m, a);
        let params = format!("m={m} a={a}");
        let mut table = match RecurrenceTable::new(m, a) {
            Ok(t) => t,
            Err(e) => return vec![Cell::failed(&params, None, e.to_string())],
        };
        let brute: Vec<Result<MultiPoly>> = (0..=n_max).map(|n| distribution(n, &tau)).collect();
        let get = |n: usize| brute[n].clone();
        let mut out = series_cells(&format!("{params} equation"), gf_staircase_tail(m, a, order), n_max, get);
        out.extend(series_cells(&format!("{params} recurrence"), Ok(table.series(n_max + 1)), n_max, get));
        out.push(same_series(
            &format!("{params} kernel A(x,0) = y"),
            staircase_kernel_a0(m, a, order),
            gf_staircase_tail(m, a, order),
        ));
        out
    });
    VerifyReport::new(Target::Staircase.name(), cells)
}

fn staircase_rep(order: usize, n_max: usize) -> VerifyReport {
    let mut jobs = Vec::new();
    for (m, a) in [(2, 2), (2, 3), (3, 2)] {
        for v in [0, 2, 3, 1, -1] {
            jobs.push((m, a, v));
        }
    }
    let cells = run_cells(&jobs, |&(m, a, v)| {
        let tau = SubwordPattern::staircase_tail(m, a);
        let v = rat(v);
        let params = format!("m={m} a={a} v={v}");
        let series = gf_staircase_joint_rep(m, a, order, &v);
        let mut out =
            series_cells(&params, series.clone(), n_max, |n| Ok(rep_joint_distribution(n, &tau)?.specialize(Marker::V, &v)));
        if v.is_one() {
            out.push(same_series(&format!("{params} forgets rep"), series, gf_staircase_tail(m, a, order)));
        }
        out
    });
    VerifyReport::new(Target::StaircaseRep.name(), cells)
}

fn recurrence(n_max: usize) -> VerifyReport {
    let mut jobs = Vec::new();
    for (m, a) in STAIRCASES {
        for n in 0..=n_max {
            jobs.push((m, a, n));
        }
    }
    let mut cells = run_cells(&jobs, |&(m, a, n)| match rep_refined_check(m, a, n) {
        Ok(r) => r.cells,
        Err(e) => vec![Cell::failed(&format!("m={m} a={a}"), Some(n), e.to_string())],
    });
    cells.extend(run_cells(&STAIRCASES, |&(m, a)| {
        let mut t = RecurrenceTable::new(m, a).expect("valid parameters");
        let mut out = Vec::new();
        for n in a..=n_max {
            let ok = (1..=n + 1 - a).all(|i| t.a_cell(0, n, i).ok() == t.a_cell_split(0, n, i).ok());
            out.push(Cell::check(&format!("m={m} a={a} split form"), Some(n), ok, None));
        }
        out
    }));
    VerifyReport::new(Target::Recurrence.name(), cells)
}

/// Every family instance covered by the total formulas, up to the sizes
/// checked here.
pub fn total_instances() -> Vec<PatternFamily> {
    let mut out = Vec::new();
    for m in 1..=4 {
        out.push(PatternFamily::Run { a: m });
        out.push(PatternFamily::RunAscent { a: m });
    }
    for k in 1..=4 {
        for rho in enumerate_nc(k).expect("small n") {
            for b in 1..=5 - k {
                let f = PatternFamily::RhoTail { rho: rho.clone(), b };
                if f.validate().is_ok() {
                    out.push(f);
                }
            }
            for a in 1..=5 - k {
                for b in 1..=5usize.saturating_sub(k + a) {
                    out.push(PatternFamily::Sandwich { a, rho: rho.clone(), b });
                }
            }
        }
    }
    for m in 2..=4 {
        for a in 2..=6 - m {
            out.push(PatternFamily::StaircaseTail { m, a });
        }
    }
    out
}

fn totals(n_max: usize) -> VerifyReport {
    let instances = total_instances();
    let cells = run_cells(&instances, |family| {
        let tau = family.pattern().expect("valid instance");
        let params = format!("{family} tau={tau}");
        (0..=n_max)
            .map(|n| {
                let brute = match distribution(n, &tau) {
                    Ok(d) => d.derivative(Marker::Q).specialize(Marker::Q, &BigRational::one()),
                    Err(e) => return Cell::failed(&params, Some(n), e.to_string()),
                };
                match total_occurrences(family, n) {
                    Ok(Some(t)) => Cell::compare(&params, Some(n), brute, big(&t)),
                    Ok(None) => Cell::check(&params, Some(n), true, Some(format!("below range, brute force {brute}"))),
                    Err(e) => Cell::failed(&params, Some(n), e.to_string()),
                }
            })
            .collect()
    });
    VerifyReport::new(Target::Totals.name(), cells)
}

fn big(t: &BigUint) -> MultiPoly {
    MultiPoly::constant(BigRational::from_integer(t.clone().into()))
}

fn equivalence(n_max: usize) -> VerifyReport {
    let cases = [(2, 2), (2, 3), (3, 2), (3, 3)];
    let mut cells = run_cells(&cases, |&(a, m)| {
        let run = SubwordPattern::run_staircase(a, m);
        let stair = SubwordPattern::staircase_tail(m, a);
        let params = format!("{run} vs {stair}");
        (0..=n_max)
            .map(|n| match (distribution(n, &run), distribution(n, &stair)) {
                (Ok(x), Ok(y)) => Cell::compare(&params, Some(n), x, y),
                (Err(e), _) | (_, Err(e)) => Cell::failed(&params, Some(n), e.to_string()),
            })
            .collect()
    });
    let bij_n = n_max.min(BIJECTION_N_MAX);
    let jobs: Vec<(usize, usize, usize)> =
        cases.iter().flat_map(|&(a, m)| (1..=bij_n).map(move |n| (a, m, n))).collect();
    cells.extend(run_cells(&jobs, |&(a, m, n)| {
        let run = SubwordPattern::run_staircase(a, m);
        let stair = SubwordPattern::staircase_tail(m, a);
        let params = format!("{run} vs {stair} descent-code exchange");
        let mut before = BTreeMap::new();
        let mut after = BTreeMap::new();
        for pi in enumerate_nc(n).expect("small n") {
            let img = match map_descent_code(&pi) {
                Ok(img) => img,
                Err(e) => return vec![Cell::failed(&params, Some(n), e.to_string())],
            };
            *before.entry((count_subword(&pi, &run), count_subword(&pi, &stair))).or_insert(0u64) += 1;
            *after.entry((count_subword(&img, &stair), count_subword(&img, &run))).or_insert(0u64) += 1;
        }
        vec![Cell::check(&params, Some(n), before == after, None)]
    }));
    VerifyReport::new(Target::Equivalence.name(), cells)
}

type PiMap<'a> = Box<dyn Fn(&NCPartition) -> Result<NCPartition> + Sync + 'a>;
type PiCheck<'a> = Box<dyn Fn(&NCPartition, &NCPartition) -> bool + Sync + 'a>;

/// One map under test with the statistic pairs it should carry over.
struct MapCase<'a> {
    name: String,
    map: PiMap<'a>,
    inverse: PiMap<'a>,
    /// `(τ, τ')` with `μ_τ(π) = μ_τ'(map(π))`.
    carries: Vec<(SubwordPattern, SubwordPattern)>,
    preserves: Option<(&'static str, PiCheck<'a>)>,
}

fn check_case(case: &MapCase, n: usize) -> Vec<Cell> {
    let params = |what: &str| format!("{} {what}", case.name);
    let all = match enumerate_nc(n) {
        Ok(all) => all,
        Err(e) => return vec![Cell::failed(&params("bijective"), Some(n), e.to_string())],
    };
    let mut seen = HashSet::with_capacity(all.len());
    let mut bad_inverse = None;
    let mut bad_carry = None;
    let mut bad_keep = None;
    for pi in &all {
        let img = match (case.map)(pi) {
            Ok(img) if img.len() == n => img,
            Ok(img) => return vec![Cell::failed(&params("bijective"), Some(n), format!("{pi} -> {img}"))],
            Err(e) => return vec![Cell::failed(&params("bijective"), Some(n), format!("{pi}: {e}"))],
        };
        if bad_inverse.is_none() && (case.inverse)(&img).ok().as_ref() != Some(pi) {
            bad_inverse = Some(format!("{pi} -> {img}"));
        }
        if bad_carry.is_none() {
            if let Some((t1, t2)) = case.carries.iter().find(|(t1, t2)| count_subword(pi, t1) != count_subword(&img, t2)) {
                bad_carry = Some(format!("{t1} in {pi} vs {t2} in {img}"));
            }
        }
        if let Some((_, keep)) = &case.preserves {
            if bad_keep.is_none() && !keep(pi, &img) {
                bad_keep = Some(format!("{pi} -> {img}"));
            }
        }
        seen.insert(img);
    }
    let mut cells = vec![
        Cell::check(&params("bijective"), Some(n), seen.len() == all.len(), None),
        Cell::check(&params("inverse"), Some(n), bad_inverse.is_none(), bad_inverse),
        Cell::check(&params("exchange"), Some(n), bad_carry.is_none(), bad_carry),
    ];
    if let Some((what, _)) = &case.preserves {
        cells.push(Cell::check(&params(what), Some(n), bad_keep.is_none(), bad_keep));
    }
    cells
}

fn swap_pairs(t1: &SubwordPattern, t2: &SubwordPattern) -> Vec<(SubwordPattern, SubwordPattern)> {
    vec![(t1.clone(), t2.clone()), (t2.clone(), t1.clone())]
}

fn bijection_cases() -> Vec<MapCase<'static>> {
    let mut cases = Vec::new();
    for (a, b) in [("231", "221"), ("2231", "2341"), ("2321", "2331"), ("2221", "2341")] {
        let (t1, t2) = (pat(a), pat(b));
        let (f1, f2, i1, i2) = (t1.clone(), t2.clone(), t1.clone(), t2.clone());
        cases.push(MapCase {
            name: format!("f {a}/{b}"),
            map: Box::new(move |pi| map_f(pi, &f1, &f2)),
            inverse: Box::new(move |pi| map_f_inverse(pi, &i1, &i2)),
            carries: swap_pairs(&t1, &t2),
            preserves: None,
        });
    }
    let sigmas: [(&[Letter], usize); 4] = [(&[], 2), (&[], 3), (&[3], 2), (&[3, 4], 2)];
    for (sigma, b) in sigmas {
        let mut wa = vec![2];
        wa.extend_from_slice(sigma);
        let mut wb = vec![2; b];
        wb.extend_from_slice(sigma);
        wb.push(1);
        wa.extend(std::iter::repeat_n(1, b));
        let (ta, tb) = (SubwordPattern::new(wa).expect("pattern"), SubwordPattern::new(wb).expect("pattern"));
        cases.push(MapCase {
            name: format!("g {ta}/{tb}"),
            map: Box::new(move |pi| map_g(pi, sigma, b)),
            inverse: Box::new(move |pi| map_g(pi, sigma, b)),
            carries: swap_pairs(&ta, &tb),
            preserves: Some(("blocks", Box::new(|x, y| block_count(x.letters()) == block_count(y.letters())))),
        });
    }
    for (a, b) in [("211", "221"), ("211", "231"), ("2311", "2221"), ("2111", "2341"), ("2311", "2111")] {
        let (t1, t2) = (pat(a), pat(b));
        let (f1, f2, i1, i2) = (t1.clone(), t2.clone(), t1.clone(), t2.clone());
        cases.push(MapCase {
            name: format!("equiv {a}/{b}"),
            map: Box::new(move |pi| map_equiv(pi, &f1, &f2)),
            inverse: Box::new(move |pi| map_equiv_inverse(pi, &i1, &i2)),
            carries: vec![(t1, t2)],
            preserves: None,
        });
    }
    for (a, rho, b) in [(2, "1", 1), (3, "1", 1), (2, "12", 1), (1, "121", 2), (3, "1", 2)] {
        let rho = nc(rho);
        let left = PatternFamily::Sandwich { a, rho: rho.clone(), b }.pattern().expect("pattern");
        let right = PatternFamily::Sandwich { a: b, rho: rho.clone(), b: a }.pattern().expect("pattern");
        let (r1, r2) = (rho.clone(), rho);
        cases.push(MapCase {
            name: format!("runrev {left}/{right}"),
            map: Box::new(move |pi| map_runrev(pi, a, &r1, b)),
            inverse: Box::new(move |pi| map_runrev(pi, a, &r2, b)),
            carries: swap_pairs(&left, &right),
            preserves: None,
        });
    }
    let mut carries = Vec::new();
    for (a, m) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        carries.extend(swap_pairs(&SubwordPattern::run_staircase(a, m), &SubwordPattern::staircase_tail(m, a)));
    }
    cases.push(MapCase {
        name: "descent code".into(),
        map: Box::new(map_descent_code),
        inverse: Box::new(map_descent_code),
        carries,
        preserves: Some(("bottoms", Box::new(|x, y| descent_bottoms(x.letters()) == descent_bottoms(y.letters())))),
    });
    cases
}

fn bijections(n_max: usize) -> VerifyReport {
    let cases = bijection_cases();
    let jobs: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|c| {
            let start = usize::from(cases[c].name == "descent code");
            (start..=n_max).map(move |n| (c, n))
        })
        .collect();
    let mut cells = run_cells(&jobs, |&(c, n)| check_case(&cases[c], n));

    let f_pi = NCPartition::new(vec![1, 2, 3, 1, 1, 4, 5, 1, 6, 7, 8, 6, 6, 1, 9]).expect("example");
    let f_want = NCPartition::new(vec![1, 2, 2, 1, 1, 3, 3, 1, 4, 5, 5, 4, 6, 1, 7]).expect("example");
    let f_got = map_f(&f_pi, &pat("231"), &pat("221"));
    cells.push(example_cell("f example", f_got, &f_want));
    let g_got = map_g(&nc("122322114115"), &[], 2);
    cells.push(example_cell("g example", g_got, &nc("122332214415")));
    VerifyReport::new(Target::Bijections.name(), cells)
}

fn example_cell(params: &str, got: Result<NCPartition>, want: &NCPartition) -> Cell {
    match got {
        Ok(g) if &g == want => Cell::check(params, Some(want.len()), true, None),
        Ok(g) => Cell::failed(params, Some(want.len()), format!("expected {want}, got {g}")),
        Err(e) => Cell::failed(params, Some(want.len()), e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Target::EACH.into_iter().chain([Target::All]) {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!(matches!("nope".parse::<Target>(), Err(Error::Parse(_))));
    }

    #[test]
    fn small_targets_pass() {
        for t in Target::EACH {
            let r = run_target(t, 7);
            assert!(r.passed(), "{}", r.to_table());
            assert!(!r.cells.is_empty());
        }
    }

    #[test]
    fn total_instances_cover_families() {
        let inst = total_instances();
        assert!(inst.contains(&PatternFamily::StaircaseTail { m: 2, a: 4 }));
        assert!(inst.contains(&PatternFamily::RhoTail { rho: nc("1"), b: 2 }));
        assert!(inst.iter().all(|f| f.pattern().unwrap().len() <= 5));
    }
}

//! Closed-form generating functions for the pattern families, as truncated
//! series, and closed-form totals.

pub mod table1;

use std::fmt;

use num::{BigRational, BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, solve_poly_functional, solve_quadratic, Marker, MultiPoly, TruncatedSeries};
use crate::error::{Error, Result};
use crate::partition::{binomial, catalan, classify_pattern, NCPartition, PatternFamily, SubwordPattern};

pub use table1::{verify_table1, verify_table1_rows, Table1Row};

/// Identifies which closed form produced a series or total.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormulaId {
    JointRunAndRunAscent { a: usize, b: usize },
    Run { m: usize },
    RunAscent { m: usize },
    RhoTail { rho_len: usize, b: usize },
    Sandwich { a: usize, m: usize, b: usize },
    StaircaseTail { m: usize, a: usize },
    StaircaseTailRep { m: usize, a: usize },
    Table1 { pattern: String },
    TotalRun,
    TotalRunAscent,
    TotalRhoTail,
    TotalSandwich,
    TotalStaircaseTail,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaId::JointRunAndRunAscent { a, b } => write!(f, "joint 1^{a} / 1^{b}2"),
            FormulaId::Run { m } => write!(f, "1^{m}"),
            FormulaId::RunAscent { m } => write!(f, "1^{m}2"),
            FormulaId::RhoTail { rho_len, b } => write!(f, "(rho+1)1^{b}, |rho|={rho_len}"),
            FormulaId::Sandwich { a, m, b } => write!(f, "1^{a}(rho+1)1^{b}, |rho|={m}"),
            FormulaId::StaircaseTail { m, a } => write!(f, "12..{}{m}^{a}", m - 1),
            FormulaId::StaircaseTailRep { m, a } => write!(f, "rep x 12..{}{m}^{a}", m - 1),
            FormulaId::Table1 { pattern } => write!(f, "row {pattern}"),
            FormulaId::TotalRun => f.write_str("total 1^m"),
            FormulaId::TotalRunAscent => f.write_str("total 1^m2"),
            FormulaId::TotalRhoTail => f.write_str("total (rho+1)1^b"),
            FormulaId::TotalSandwich => f.write_str("total 1^a(rho+1)1^b"),
            FormulaId::TotalStaircaseTail => f.write_str("total 12..(m-1)m^a"),
        }
    }
}

fn q() -> MultiPoly {
    MultiPoly::marker(Marker::Q)
}

fn p() -> MultiPoly {
    MultiPoly::marker(Marker::P)
}

/// `Σ c_k x^k` from sparse terms.
pub(crate) fn xpoly<I: IntoIterator<Item = (usize, MultiPoly)>>(terms: I, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(terms, order)
}

fn xk(k: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::x_pow(k, order)
}

fn one(order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order)
}

/// `(N - sqrt(R)) / (2 x D)`, evaluated one order higher so that the
/// division by `x` leaves `order` exact coefficients.
fn radical_over_2x(n: &TruncatedSeries, r: &TruncatedSeries, d: &TruncatedSeries) -> Result<TruncatedSeries> {
    let numer = n - &r.sqrt()?;
    let half = BigRational::new(1.into(), 2.into());
    numer.shift_down(1)?.div(d).map(|s| s.scale_rat(&half))
}

fn ensure_counting(s: TruncatedSeries, what: &str) -> Result<TruncatedSeries> {
    if s.is_counting_series() {
        Ok(s)
    } else {
        Err(Error::InvariantViolation(format!("{what} has a non-integral or negative coefficient")))
    }
}

/// Joint series in `p` (occurrences of `1^a`) and `q` (occurrences of
/// `1^b 2`), from the quadratic `A F^2 - B F + C = 0`.
pub fn gf_joint_1a_1b2(a: usize, b: usize, order: usize) -> Result<TruncatedSeries> {
    let (a_eq, b_eq, c_eq) = joint_1a_1b2_equation(a, b, order)?;
    ensure_counting(solve_quadratic(&a_eq, &b_eq, &c_eq)?, "joint 1^a / 1^b2 series")
}

/// Coefficients `(A, B, C)` of `A F^2 - B F + C = 0` for the joint series.
pub fn joint_1a_1b2_equation(
    a: usize,
    b: usize,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    if a == 0 || b == 0 {
        return Err(Error::FamilyViolation(format!("need a, b >= 1, got a = {a}, b = {b}")));
    }
    let pm1 = &p() - &MultiPoly::one();
    let qm1 = MultiPoly::q_minus_one();
    let shared = if a >= b {
        // q(p-1)x^a + (q-1)(1-px)x^b
        xpoly([(a, &q() * &pm1), (b, qm1.clone()), (b + 1, -(&qm1 * &p()))], order)
    } else {
        // (p-1)x^a + (q-1)(1-x)p^{b-a+1}x^b
        let w = &qm1 * &p().pow((b - a + 1) as u32);
        xpoly([(a, pm1.clone()), (b, w.clone()), (b + 1, -w)], order)
    };
    let a_eq = &xpoly([(1, MultiPoly::one()), (2, -p())], order) + &shared;
    let b_eq = &xpoly([(0, MultiPoly::one()), (1, -p())], order) + &shared;
    let c_eq = xpoly([(0, MultiPoly::one()), (1, -p()), (a, pm1)], order);
    Ok((a_eq, b_eq, c_eq))
}

/// Series in `q` counting occurrences of `1^m`.
pub fn gf_1m(m: usize, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        return Err(Error::FamilyViolation("m must be at least 1".into()));
    }
    let w = order + 1;
    let qm1 = MultiPoly::q_minus_one();
    // N = 1 - qx + (q-1)x^m
    let n = xpoly([(0, MultiPoly::one()), (1, -q()), (m, qm1.clone())], w);
    // (1-4x)(1-qx) - 3(q-1)x^m
    let inner = &(&xpoly([(0, MultiPoly::one()), (1, MultiPoly::from_int(-4))], w)
        * &xpoly([(0, MultiPoly::one()), (1, -q())], w))
        - &xk(m, w).scale(&qm1.scale(&rat(3)));
    let r = &n * &inner;
    let d = xpoly([(0, MultiPoly::one()), (1, -q()), (m - 1, qm1)], w);
    ensure_counting(radical_over_2x(&n, &r, &d)?, "1^m series")
}

/// Series in `q` counting occurrences of `1^m 2`.
pub fn gf_1m2(m: usize, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        return Err(Error::FamilyViolation("m must be at least 1".into()));
    }
    let w = order + 1;
    let qm1 = MultiPoly::q_minus_one();
    let n = xpoly([(0, MultiPoly::one()), (m, qm1.clone())], w);
    let t = xpoly([(0, MultiPoly::one()), (m, -qm1.clone())], w);
    let r = &(&t * &t) - &xk(1, w).scale_rat(&rat(4));
    let d = xpoly([(0, MultiPoly::one()), (m - 1, qm1)], w);
    ensure_counting(radical_over_2x(&n, &r, &d)?, "1^m2 series")
}

/// Series in `q` for `(ρ+1) 1^b`; only `|ρ| + b` enters.
pub fn gf_rho_1b(rho: &NCPartition, b: usize, order: usize) -> Result<TruncatedSeries> {
    PatternFamily::RhoTail { rho: rho.clone(), b }.validate()?;
    gf_rho_1b_by_length(rho.len() + b, order)
}

fn gf_rho_1b_by_length(k: usize, order: usize) -> Result<TruncatedSeries> {
    let w = order + 1;
    let qm1 = MultiPoly::q_minus_one();
    // (1 + 2(q-1)x^{k-1} - sqrt(1 - 4x - 4(q-1)x^k)) / (2x(1 + (q-1)x^{k-2}))
    let n = xpoly([(0, MultiPoly::one()), (k - 1, qm1.scale(&rat(2)))], w);
    let r = xpoly([(0, MultiPoly::one()), (1, MultiPoly::from_int(-4)), (k, qm1.scale(&rat(-4)))], w);
    let d = xpoly([(0, MultiPoly::one()), (k - 2, qm1)], w);
    ensure_counting(radical_over_2x(&n, &r, &d)?, "(rho+1)1^b series")
}

/// Series in `q` for `1^a (ρ+1) 1^b`; only `|ρ|`, `min(a,b)`, `max(a,b)` enter.
pub fn gf_1a_rho_1b(a: usize, rho: &NCPartition, b: usize, order: usize) -> Result<TruncatedSeries> {
    PatternFamily::Sandwich { a, rho: rho.clone(), b }.validate()?;
    let (m, s, t) = (rho.len(), a.min(b), a.max(b));
    let general = sandwich_nested(m, s, t, order)?;
    if s == 1 {
        let simple = sandwich_single_side(m, t, order)?;
        if simple != general {
            return Err(Error::InvariantViolation(format!(
                "nested and simplified radicals disagree for m = {m}, t = {t}"
            )));
        }
    }
    ensure_counting(general, "1^a(rho+1)1^b series")
}

/// `F = D1 (1 - sqrt(1 - 4x D2/D1)) / (2x D2)` with
/// `D1 = 1 - x + (1-q)(1-x^s)x^{m+t}`, `D2 = 1 - x + (1-q)(1-x^{s-1})x^{m+t}`.
fn sandwich_nested(m: usize, s: usize, t: usize, order: usize) -> Result<TruncatedSeries> {
    let w = order + 1;
    let omq = -MultiPoly::q_minus_one();
    let d = |e: usize| {
        let base = xpoly([(0, MultiPoly::one()), (1, MultiPoly::from_int(-1))], w);
        let corr = &(&one(w) - &xk(e, w)) * &xk(m + t, w).scale(&omq);
        &base + &corr
    };
    let (d1, d2) = (d(s), d(s - 1));
    let r = &one(w) - &xk(1, w).scale_rat(&rat(4)) * &d2.div(&d1)?;
    let f_over = radical_over_2x(&one(w), &r, &d2)?;
    Ok(&f_over * &d1.truncate(order))
}

/// The one-sided simplification
/// `(1 + (1-q)x^{t+m} - sqrt((1 + (1-q)x^{t+m})(1 - 4x + (1-q)x^{t+m}))) / (2x)`.
fn sandwich_single_side(m: usize, t: usize, order: usize) -> Result<TruncatedSeries> {
    let w = order + 1;
    let omq = -MultiPoly::q_minus_one();
    let e = xpoly([(0, MultiPoly::one()), (t + m, omq.clone())], w);
    let r = &e * &xpoly([(0, MultiPoly::one()), (1, MultiPoly::from_int(-4)), (t + m, omq)], w);
    radical_over_2x(&e, &r, &one(w))
}

/// Coefficients (in `y`) of `x y^2 - y + 1 + (q-1) x^{a+m-2} (y^m - y^{m-1})`.
pub fn staircase_equation(m: usize, a: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    PatternFamily::StaircaseTail { m, a }.validate()?;
    let mut p = vec![TruncatedSeries::zero(order); m.max(2) + 1];
    p[0] = one(order);
    p[1] = -one(order);
    p[2] = xk(1, order);
    let corr = xk(a + m - 2, order).scale(&MultiPoly::q_minus_one());
    p[m] = &p[m] + &corr;
    p[m - 1] = &p[m - 1] - &corr;
    Ok(p)
}

/// Series in `q` for `12...(m-1) m^a`, the root of [`staircase_equation`]
/// with `y(0) = 1`.
pub fn gf_staircase_tail(m: usize, a: usize, order: usize) -> Result<TruncatedSeries> {
    let p = staircase_equation(m, a, order)?;
    ensure_counting(solve_poly_functional(&p, &BigRational::one())?, "staircase series")
}

fn catalan_rat(n: usize) -> BigRational {
    BigRational::from_integer(catalan(n).into())
}

fn rat_series<I: IntoIterator<Item = (usize, BigRational)>>(terms: I, order: usize) -> TruncatedSeries {
    xpoly(terms.into_iter().map(|(k, c)| (k, MultiPoly::constant(c))), order)
}

/// `1 / (1 - c x)`.
fn geometric(c: &BigRational, order: usize) -> TruncatedSeries {
    let mut acc = BigRational::one();
    let mut terms = Vec::with_capacity(order);
    for k in 0..order {
        terms.push((k, acc.clone()));
        acc = &acc * c;
    }
    rat_series(terms, order)
}

/// Pieces shared by the kernel-method formulas for `12...(m-1) m^a`.
struct Kernel {
    m: usize,
    a: usize,
    order: usize,
    y: TruncatedSeries,
    /// `Σ_{j<a} C_j x^j`
    head: TruncatedSeries,
    /// `x Σ_{j=0}^{a-3} Σ_{i=1}^{a-2-j} C_i C_j x^{i+j}`, zero when `a = 2`
    m_sum: TruncatedSeries,
    /// `x^a C_{a-1}`
    boundary: TruncatedSeries,
}

impl Kernel {
    fn new(m: usize, a: usize, order: usize) -> Result<Self> {
        let y = gf_staircase_tail(m, a, order)?;
        let head = rat_series((0..a).map(|j| (j, catalan_rat(j))), order);
        let mut m_terms = Vec::new();
        for j in 0..a.saturating_sub(2) {
            for i in 1..=(a - 2 - j) {
                m_terms.push((i + j + 1, &catalan_rat(i) * &catalan_rat(j)));
            }
        }
        let m_sum = rat_series(m_terms, order);
        let boundary = rat_series([(a, catalan_rat(a - 1))], order);
        Ok(Kernel { m, a, order, y, head, m_sum, boundary })
    }

    fn one(&self) -> TruncatedSeries {
        one(self.order)
    }

    fn x(&self, k: usize) -> TruncatedSeries {
        xk(k, self.order)
    }

    fn qm1(&self) -> MultiPoly {
        MultiPoly::q_minus_one()
    }

    /// `A(x, x)` from the kernel root `u = x y`.
    fn a_xx(&self) -> Result<TruncatedSeries> {
        let (m, a) = (self.m, self.a);
        let xy = &self.x(1) * &self.y;
        let one_m_x = &self.one() - &self.x(1);
        let one_m_xy = &self.one() - &xy;
        let den = &one_m_x * &one_m_xy;
        // (q-1) x^{a-2} ((xy)^m (1-x) - x^m (1-xy)) / ((1-x)(1-xy))
        let bracket = &(&xy.pow(m as u32) * &one_m_x) - &(&self.x(m) * &one_m_xy);
        let t1 = (&self.x(a - 2) * &bracket).scale(&self.qm1()).div(&den)?;
        let m_part = self.m_sum.div(&den)?;
        let t3 = self.boundary.div(&den)?;
        let l_part = self.head.div(&one_m_xy)?;
        Ok(&(&(&t1 - &m_part) + &t3) + &l_part)
    }

    /// `A(x, v x)` for a rational `v ≠ 1`.
    fn a_at(&self, v: &BigRational) -> Result<TruncatedSeries> {
        if v.is_one() {
            return self.a_xx();
        }
        let (m, a) = (self.m, self.a);
        let vx = self.x(1).scale_rat(v);
        let one_m_x = &self.one() - &self.x(1);
        let one_m_vx = &self.one() - &vx;
        let den = &one_m_vx * &one_m_x;
        let y_m_v = &self.y - &self.one().scale_rat(v);
        if y_m_v.coeff(0).is_zero() {
            return Err(Error::VSpecializationSingular(format!("y - v vanishes at x = 0 for v = {v}")));
        }
        let ym1 = &self.y - &self.one();
        // (1-v) [x^a C_{a-1} / ((1-vx)(1-x)) + L(x,vx) - M(x,vx,1)]
        let inner = &(&self.boundary.div(&den)? + &self.head.div(&one_m_vx)?) - &self.m_sum.div(&den)?;
        let t1 = inner.scale_rat(&(BigRational::one() - v));
        // (1-q) x^{a-2} ((vx)^m (1-x) - x^m (1-vx)) (y-1) / ((1-vx)(1-x)) + (y-1) A(x,x)
        let bracket = &(&vx.pow(m as u32) * &one_m_x) - &(&self.x(m) * &one_m_vx);
        let t2 = (&(&self.x(a - 2) * &bracket) * &ym1).scale(&-self.qm1()).div(&den)?;
        let t3 = &ym1 * &self.a_xx()?;
        (&(&t1 + &t2) + &t3).div(&y_m_v)
    }

    /// `v A(x, 0, v)`.
    fn v_a0(&self, v: &BigRational) -> Result<TruncatedSeries> {
        let (m, a) = (self.m, self.a);
        let ym1 = &self.y - &self.one();
        let one_m_vx = &self.one() - &self.x(1).scale_rat(v);
        let t1 = &ym1 * &(&self.a_at(v)? - &self.y);
        let t2 = self.m_sum.div(&one_m_vx)?.scale_rat(v);
        let vm = num::pow::pow(v.clone(), m);
        let t3 = (&self.x(a + m - 2) * &ym1).scale(&self.qm1()).scale_rat(&vm).div(&one_m_vx)?;
        Ok(&(&t1 - &t2) + &t3)
    }

    /// Partitions whose smallest repeated letter exceeds `n - a + 1`.
    fn high_rep_terms(&self, v: &BigRational) -> TruncatedSeries {
        let a = self.a;
        let c = |k: usize| catalan_rat(k);
        let mut terms = Vec::new();
        for n in 2..self.order {
            let lo = if n < a { 1 } else { n - a + 2 };
            let mut acc = BigRational::zero();
            for k in lo..=n {
                acc += num::pow::pow(v.clone(), k) * (c(n - k + 1) - c(n - k));
            }
            terms.push((n, acc));
        }
        rat_series(terms, self.order)
    }
}

/// Joint series of `(rep, μ_τ)` for `τ = 12...(m-1) m^a`, with the `rep`
/// marker specialized to `v`; coefficients are polynomials in `q`.
pub fn gf_staircase_joint_rep(m: usize, a: usize, order: usize, v: &BigRational) -> Result<TruncatedSeries> {
    let k = Kernel::new(m, a, order)?;
    let mut out = &k.v_a0(v)? + &geometric(&BigRational::one(), order);
    if a >= 3 {
        out = &out + &k.high_rep_terms(v);
    }
    Ok(out)
}

/// `A(x, 0)` recovered from the `u = v x` route at `v = 0`; must equal `y`.
pub fn staircase_kernel_a0(m: usize, a: usize, order: usize) -> Result<TruncatedSeries> {
    Kernel::new(m, a, order)?.a_at(&BigRational::zero())
}

/// Closed-form total `Σ_{π ∈ NC_n} μ_τ(π)`. `Ok(None)` below the range
/// where the formula is stated; brute force is authoritative there.
pub fn total_occurrences(family: &PatternFamily, n: usize) -> Result<Option<BigUint>> {
    family.validate()?;
    let b = |top: usize, k: usize| binomial(top, k);
    let out = match family {
        PatternFamily::Run { a: m } => (n >= *m).then(|| {
            let r = n - m + 1;
            b(2 * r, r + 1)
        }),
        PatternFamily::RunAscent { a: m } => (n >= *m).then(|| {
            let r = n - m + 1;
            b(2 * r - 1, r + 1)
        }),
        PatternFamily::RhoTail { rho, b: tail } => {
            let k = rho.len() + tail;
            (n + 1 >= k).then(|| {
                let r = n + 2 - k;
                b(2 * r - 2, r + 1)
            })
        }
        PatternFamily::Sandwich { a, rho, b: tail } => {
            let k = rho.len() + a + tail;
            (n + 1 >= k).then(|| {
                let r = n + 1 - k;
                b(2 * r, r + 1)
            })
        }
        PatternFamily::StaircaseTail { m, a } | PatternFamily::RunStaircase { a, m } => (n + 1 >= a + m).then(|| {
            let r = n + 2 - a - m;
            b(2 * r + m, r) - b(2 * r + m - 1, r)
        }),
        PatternFamily::Generic => {
            return Err(Error::UnsupportedFamily {
                what: "total of a generic pattern".into(),
                hint: "use the brute-force distribution".into(),
            })
        }
    };
    Ok(out)
}

/// Closed-form series for any pattern in a covered family.
pub fn series_for_pattern(tau: &SubwordPattern, order: usize) -> Result<(FormulaId, TruncatedSeries)> {
    series_for_family(&classify_pattern(tau).principal, order)
}

pub fn series_for_family(family: &PatternFamily, order: usize) -> Result<(FormulaId, TruncatedSeries)> {
    Ok(match family {
        PatternFamily::Run { a } => (FormulaId::Run { m: *a }, gf_1m(*a, order)?),
        PatternFamily::RunAscent { a } => (FormulaId::RunAscent { m: *a }, gf_1m2(*a, order)?),
        PatternFamily::RhoTail { rho, b } => {
            (FormulaId::RhoTail { rho_len: rho.len(), b: *b }, gf_rho_1b(rho, *b, order)?)
        }
        PatternFamily::Sandwich { a, rho, b } => {
            (FormulaId::Sandwich { a: *a, m: rho.len(), b: *b }, gf_1a_rho_1b(*a, rho, *b, order)?)
        }
        PatternFamily::StaircaseTail { m, a } | PatternFamily::RunStaircase { a, m } => {
            (FormulaId::StaircaseTail { m: *m, a: *a }, gf_staircase_tail(*m, *a, order)?)
        }
        PatternFamily::Generic => {
            return Err(Error::UnsupportedFamily {
                what: "closed form for a generic pattern".into(),
                hint: "use --method brute".into(),
            })
        }
    })
}

/// `d/dq` at `q = 1`, coefficientwise.
pub fn derivative_at_one(s: &TruncatedSeries) -> Vec<BigRational> {
    s.derivative(Marker::Q).specialize(Marker::Q, &BigRational::one()).sums()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalan_series;
    use crate::stats::{distribution, joint_distribution, rep_joint_distribution, total_by_enumeration};

    const N: usize = 11;

    fn nc(s: &str) -> NCPartition {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> SubwordPattern {
        s.parse().unwrap()
    }

    fn all_ones(s: &TruncatedSeries) -> TruncatedSeries {
        let one = BigRational::one();
        s.specialize(Marker::Q, &one).specialize(Marker::P, &one)
    }

    fn assert_matches_brute(s: &TruncatedSeries, tau: &str, n_max: usize) {
        for n in 0..=n_max.min(s.order() - 1) {
            assert_eq!(s.coeff(n), &distribution(n, &pat(tau)).unwrap(), "{tau}, n = {n}");
        }
    }

    #[test]
    fn joint_collapses_to_catalan() {
        let s = gf_joint_1a_1b2(1, 1, N).unwrap();
        assert_eq!(all_ones(&s), catalan_series(N));
    }

    #[test]
    fn joint_matches_brute_force() {
        for (a, b) in [(2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (1, 1)] {
            let s = gf_joint_1a_1b2(a, b, 9).unwrap();
            for n in 0..9 {
                let want = joint_distribution(n, &SubwordPattern::run(a), &SubwordPattern::run_ascent(b)).unwrap();
                assert_eq!(s.coeff(n), &want, "a = {a}, b = {b}, n = {n}");
            }
        }
    }

    #[test]
    fn run_series_examples() {
        assert_eq!(gf_1m(3, 5).unwrap().coeff(3), &(MultiPoly::from_int(4) + q()));
        assert_eq!(gf_1m2(2, 5).unwrap().coeff(3), &(MultiPoly::from_int(4) + q()));
        for m in 1..=4 {
            assert_eq!(all_ones(&gf_1m(m, N).unwrap()), catalan_series(N));
            assert_eq!(all_ones(&gf_1m2(m, N).unwrap()), catalan_series(N));
            assert_matches_brute(&gf_1m(m, N).unwrap(), &SubwordPattern::run(m).to_string(), 10);
            assert_matches_brute(&gf_1m2(m, N).unwrap(), &SubwordPattern::run_ascent(m).to_string(), 10);
        }
    }

    #[test]
    fn run_series_are_joint_specializations() {
        let one = BigRational::one();
        for m in 1..=4 {
            let runs = gf_joint_1a_1b2(m, 1, N).unwrap().specialize(Marker::Q, &one).rename(Marker::P, Marker::Q);
            assert_eq!(runs, gf_1m(m, N).unwrap());
            for a in [1, m, m + 1] {
                let asc = gf_joint_1a_1b2(a, m, N).unwrap().specialize(Marker::P, &one);
                assert_eq!(asc, gf_1m2(m, N).unwrap(), "a = {a}, m = {m}");
            }
        }
    }

    #[test]
    fn rho_tail_series() {
        let s211 = gf_rho_1b(&nc("1"), 2, N).unwrap();
        assert_eq!(s211, gf_rho_1b(&nc("11"), 1, N).unwrap());
        assert_eq!(s211, gf_rho_1b(&nc("12"), 1, N).unwrap());
        assert_eq!(all_ones(&s211), catalan_series(N));
        assert_matches_brute(&s211, "211", 10);
        assert_matches_brute(&s211, "221", 10);
        assert_matches_brute(&gf_rho_1b(&nc("1"), 1, N).unwrap(), "21", 10);
        assert!(matches!(gf_rho_1b(&nc("11"), 2, N), Err(Error::FamilyViolation(_))));
    }

    #[test]
    fn sandwich_series() {
        let base = gf_1a_rho_1b(1, &nc("1"), 1, N).unwrap();
        assert_matches_brute(&base, "121", 10);
        let s = gf_1a_rho_1b(2, &nc("1"), 1, N).unwrap();
        for (a, rho, b) in [(1, "1", 2), (1, "11", 1), (1, "12", 1)] {
            assert_eq!(gf_1a_rho_1b(a, &nc(rho), b, N).unwrap(), s);
        }
        for tau in ["1121", "1211", "1221", "1231"] {
            assert_matches_brute(&s, tau, 10);
        }
        let wide = gf_1a_rho_1b(2, &nc("1"), 3, N).unwrap();
        assert_eq!(wide, gf_1a_rho_1b(3, &nc("1"), 2, N).unwrap());
        assert_matches_brute(&wide, "112111", 10);
        assert_matches_brute(&gf_1a_rho_1b(2, &nc("12"), 2, N).unwrap(), "112311", 10);
        assert_eq!(all_ones(&wide), catalan_series(N));
    }

    #[test]
    fn sandwich_satisfies_row_equation() {
        // x F^2 = (1 - (q-1)x^2)(F - 1)
        let f = gf_1a_rho_1b(1, &nc("1"), 1, N).unwrap();
        let e = xpoly([(0, MultiPoly::one()), (2, -MultiPoly::q_minus_one())], N);
        let lhs = &xk(1, N) * &(&f * &f);
        assert_eq!(lhs, &e * &(&f - &one(N)));
    }

    #[test]
    fn staircase_series() {
        let s = gf_staircase_tail(2, 2, N).unwrap();
        assert_matches_brute(&s, "122", 10);
        assert_matches_brute(&gf_staircase_tail(3, 2, N).unwrap(), "1233", 10);
        assert_matches_brute(&gf_staircase_tail(2, 3, N).unwrap(), "1222", 10);
        assert_matches_brute(&gf_staircase_tail(3, 3, N).unwrap(), "12333", 10);
        assert_matches_brute(&gf_staircase_tail(3, 2, N).unwrap(), "1123", 10);
        assert_eq!(all_ones(&s), catalan_series(N));
    }

    #[test]
    fn staircase_equation_matches_row_122() {
        // x(1+(q-1)x) F^2 = (1+(q-1)x^2) F - 1
        let p = staircase_equation(2, 2, N).unwrap();
        let qm1 = MultiPoly::q_minus_one();
        assert_eq!(p[0], one(N));
        assert_eq!(p[1], -xpoly([(0, MultiPoly::one()), (2, qm1.clone())], N));
        assert_eq!(p[2], xpoly([(1, MultiPoly::one()), (2, qm1)], N));
    }

    #[test]
    fn staircase_avoiders_at_q_zero() {
        let zero = BigRational::zero();
        let s = gf_staircase_tail(3, 2, N).unwrap().specialize(Marker::Q, &zero);
        for n in 0..N {
            let want = distribution(n, &pat("1233")).unwrap().specialize(Marker::Q, &zero);
            assert_eq!(s.coeff(n), &want);
        }
    }

    #[test]
    fn kernel_route_recovers_y() {
        for (m, a) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
            assert_eq!(staircase_kernel_a0(m, a, N).unwrap(), gf_staircase_tail(m, a, N).unwrap());
        }
    }

    #[test]
    fn joint_rep_matches_brute_force() {
        for (m, a) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
            let tau = SubwordPattern::staircase_tail(m, a);
            for v in [0, 1, 2, 3, -1] {
                let vr = rat(v);
                let s = gf_staircase_joint_rep(m, a, 9, &vr).unwrap();
                for n in 0..9 {
                    let want = rep_joint_distribution(n, &tau).unwrap().specialize(Marker::V, &vr);
                    assert_eq!(s.coeff(n), &want, "m = {m}, a = {a}, v = {v}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn joint_rep_collapses_at_one() {
        let s = gf_staircase_joint_rep(2, 2, N, &BigRational::one()).unwrap();
        assert_eq!(s, gf_staircase_tail(2, 2, N).unwrap());
    }

    #[test]
    fn totals_examples() {
        let t = |fam: PatternFamily, n| total_occurrences(&fam, n).unwrap();
        assert_eq!(t(PatternFamily::Run { a: 2 }, 4), Some(BigUint::from(15u32)));
        assert_eq!(t(PatternFamily::RhoTail { rho: nc("1"), b: 2 }, 4), Some(BigUint::from(1u32)));
        assert_eq!(t(PatternFamily::StaircaseTail { m: 2, a: 2 }, 3), Some(BigUint::from(1u32)));
        assert_eq!(t(PatternFamily::Run { a: 3 }, 2), None);
        assert!(matches!(total_occurrences(&PatternFamily::Generic, 4), Err(Error::UnsupportedFamily { .. })));
    }

    #[test]
    fn totals_match_brute_force_and_derivatives() {
        let fams = [
            PatternFamily::Run { a: 1 },
            PatternFamily::Run { a: 3 },
            PatternFamily::RunAscent { a: 1 },
            PatternFamily::RunAscent { a: 2 },
            PatternFamily::RhoTail { rho: nc("1"), b: 1 },
            PatternFamily::RhoTail { rho: nc("12"), b: 2 },
            PatternFamily::Sandwich { a: 1, rho: nc("1"), b: 2 },
            PatternFamily::StaircaseTail { m: 3, a: 2 },
            PatternFamily::RunStaircase { a: 2, m: 3 },
        ];
        for fam in fams {
            let tau = fam.pattern().unwrap();
            let (_, s) = series_for_family(&fam, N).unwrap();
            let d = derivative_at_one(&s);
            for (n, dn) in d.iter().enumerate() {
                let brute = BigUint::from(total_by_enumeration(n, &tau).unwrap());
                assert_eq!(&BigRational::from_integer(brute.clone().into()), dn, "{fam}, n = {n}");
                if let Some(v) = total_occurrences(&fam, n).unwrap() {
                    assert_eq!(v, brute, "{fam}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn generic_has_no_closed_form() {
        assert!(matches!(series_for_pattern(&pat("212"), 5), Err(Error::UnsupportedFamily { .. })));
    }
}

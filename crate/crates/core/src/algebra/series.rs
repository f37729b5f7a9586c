//! Power series in `x` truncated at a fixed order, with [`MultiPoly`]
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Marker, MultiPoly};
use crate::error::{Error, Result};

/// `coeffs[k]` is the coefficient of `x^k`; everything at or above
/// `order = coeffs.len()` is unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson")]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

#[derive(Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = Error;
    fn try_from(s: SeriesJson) -> Result<Self> {
        if s.coeffs.len() != s.order {
            return Err(Error::Parse(format!("series of order {} has {} coefficients", s.order, s.coeffs.len())));
        }
        Ok(TruncatedSeries { order: s.order, coeffs: s.coeffs })
    }
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![MultiPoly::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(MultiPoly::one(), order)
    }

    pub fn constant(c: MultiPoly, order: usize) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `x^k` with unit coefficient.
    pub fn x_pow(k: usize, order: usize) -> Self {
        Self::monomial(k, MultiPoly::one(), order)
    }

    /// Builds `sum c_k x^k` from `(k, c_k)` pairs; repeated powers add.
    pub fn from_terms<I: IntoIterator<Item = (usize, MultiPoly)>>(terms: I, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            if k < order {
                s.coeffs[k] += &c;
            }
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<MultiPoly>, order: usize) -> Self {
        coeffs.resize(order, MultiPoly::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries { order, coeffs: self.coeffs[..order].to_vec() }
    }

    /// Pads with zero coefficients. Only valid when the series is known to be
    /// a polynomial of degree below its current order.
    pub(crate) fn extend_polynomial(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order.max(self.order))
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiplication by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order);
        for i in 0..self.order.saturating_sub(k) {
            s.coeffs[i + k] = self.coeffs[i].clone();
        }
        s
    }

    /// Exact division by `x^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::NoSeriesSolution(format!("cannot divide order-{} series by x^{k}", self.order)));
        }
        if let Some(i) = (0..k).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(Error::NoSeriesSolution(format!(
                "division by x^{k} leaves a remainder at x^{i}: {}",
                self.coeffs[i]
            )));
        }
        Ok(TruncatedSeries { order: self.order - k, coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs.first().cloned().unwrap_or_else(MultiPoly::zero);
        match c0.as_constant() {
            Some(c) if !c.is_zero() => Self::one(self.order).div_by_const(self, &c),
            _ => Err(Error::NonInvertibleConstantTerm(c0.to_string())),
        }
    }

    /// `self / t`. The divisor's constant term must be a nonzero rational,
    /// or a single term `c * monomial` provided every quotient coefficient
    /// divides exactly.
    pub fn div(&self, t: &Self) -> Result<Self> {
        let order = self.order.min(t.order);
        let num = self.truncate(order);
        let den = t.truncate(order);
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let d0 = &den.coeffs[0];
        if let Some(c) = d0.as_constant() {
            if c.is_zero() {
                return Err(Error::NonInvertibleConstantTerm("0".into()));
            }
            return num.div_by_const(&den, &c);
        }
        let (c, mono) = d0
            .as_single_term()
            .ok_or_else(|| Error::NonInvertibleConstantTerm(d0.to_string()))?;
        let mut out = Self::zero(order);
        for k in 0..order {
            let mut acc = num.coeffs[k].clone();
            for j in 1..=k {
                acc -= &(&den.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = acc.div_term(&c, mono).ok_or_else(|| {
                Error::NonInvertibleConstantTerm(format!("{d0} does not divide the coefficient of x^{k}"))
            })?;
        }
        Ok(out)
    }

    fn div_by_const(&self, den: &Self, c0: &BigRational) -> Result<Self> {
        let order = self.order.min(den.order);
        let inv_c0 = c0.recip();
        let mut out = Self::zero(order);
        for k in 0..order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !den.coeffs[j].is_zero() {
                    acc -= &(&den.coeffs[j] * &out.coeffs[k - j]);
                }
            }
            out.coeffs[k] = acc.scale(&inv_c0);
        }
        Ok(out)
    }

    /// Square root with constant term 1, by Newton iteration
    /// `t <- (t + s/t) / 2` with doubling precision.
    pub fn sqrt(&self) -> Result<Self> {
        let order = self.order;
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[0] != MultiPoly::one() {
            return Err(Error::ConstantTermNotOne(self.coeffs[0].to_string()));
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut t = Self::one(1);
        let mut prec = 1;
        while prec < order {
            let next = (2 * prec).min(order);
            let s = self.truncate(next);
            let t_ext = t.extend_polynomial(next);
            let updated = (&t_ext + &s.div(&t_ext)?).scale_rat(&half);
            let residual = &s - &(&updated * &updated);
            if !residual.is_zero() {
                return Err(Error::NoConvergence(format!("square root stalled at precision {prec} -> {next}")));
            }
            t = updated;
            prec = next;
        }
        Ok(t)
    }

    pub fn specialize(&self, marker: Marker, value: &BigRational) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.specialize(marker, value)).collect(),
        }
    }

    /// Formal derivative of every coefficient with respect to a marker.
    pub fn derivative(&self, marker: Marker) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.derivative(marker)).collect() }
    }

    pub fn rename(&self, from: Marker, to: Marker) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.rename(from, to)).collect() }
    }

    /// Coefficients with every marker set to 1.
    pub fn sums(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(MultiPoly::sum_of_coefficients).collect()
    }

    /// Every coefficient is a polynomial with nonnegative integer coefficients.
    pub fn is_counting_series(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integral() && c.is_nonnegative())
    }

    /// Evaluates `sum_i poly[i] * self^i` by Horner's rule.
    pub fn compose_polynomial(&self, poly: &[TruncatedSeries]) -> Self {
        let order = poly.iter().map(|p| p.order).fold(self.order, usize::min);
        let y = self.truncate(order);
        let mut acc = Self::zero(order);
        for c in poly.iter().rev() {
            acc = &(&acc * &y) + &c.truncate(order);
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            let needs_parens = c.num_terms() > 1 && k > 0;
            let body = if needs_parens { format!("({c})") } else { c.to_string() };
            match k {
                0 => write!(f, "{body}")?,
                1 if c.is_one_poly() => f.write_str("x")?,
                1 => write!(f, "{body}*x")?,
                _ if c.is_one_poly() => write!(f, "x^{k}")?,
                _ => write!(f, "{body}*x^{k}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order)
    }
}

impl MultiPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries { order, coeffs: (0..order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries { order, coeffs: (0..order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let mut out = TruncatedSeries::zero(order);
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_series_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                (&self).$method(rhs)
            }
        }
        impl $tr<TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                self.$method(&rhs)
            }
        }
    };
}

forward_series_binop!(Add, add);
forward_series_binop!(Sub, sub);
forward_series_binop!(Mul, mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    fn ints(s: &TruncatedSeries) -> Vec<BigRational> {
        s.coeffs().iter().map(|c| c.as_constant().expect("constant")).collect()
    }

    fn x(order: usize) -> TruncatedSeries {
        TruncatedSeries::x_pow(1, order)
    }

    #[test]
    fn product_of_conjugates() {
        let one = TruncatedSeries::one(5);
        let got = (&one + &x(5)) * (&one - &x(5));
        assert_eq!(got, &one - &TruncatedSeries::x_pow(2, 5));
        assert!((TruncatedSeries::zero(5) * &got).is_zero());
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(7);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn geometric_inverses() {
        let one = TruncatedSeries::one(8);
        let g = (&one - &x(8)).inv().unwrap();
        assert_eq!(ints(&g), vec![rat(1); 8]);
        let q = MultiPoly::marker(Marker::Q);
        let gq = (&one - &x(8).scale(&q)).inv().unwrap();
        for k in 0..8 {
            assert_eq!(gq.coeff(k), &q.pow(k as u32));
        }
        // x / (1-x)^2 has coefficient k at x^k
        let d = x(8).div(&(&g.inv().unwrap() * &g.inv().unwrap())).unwrap();
        assert_eq!(ints(&d), (0..8).map(rat).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_rejects_marker_constant() {
        let s = TruncatedSeries::constant(MultiPoly::marker(Marker::Q), 4);
        assert!(matches!(s.inv(), Err(Error::NonInvertibleConstantTerm(_))));
        let zero = TruncatedSeries::zero(4);
        assert!(matches!(zero.inv(), Err(Error::NonInvertibleConstantTerm(_))));
    }

    #[test]
    fn exact_division_by_marker_constant() {
        let q = MultiPoly::marker(Marker::Q);
        let den = TruncatedSeries::from_terms([(0, q.clone()), (1, -q.clone())], 6);
        let num = &den * &TruncatedSeries::from_terms([(0, MultiPoly::one()), (2, q.clone())], 6);
        let quo = num.div(&den).unwrap();
        assert_eq!(quo, TruncatedSeries::from_terms([(0, MultiPoly::one()), (2, q.clone())], 6));
        assert!(TruncatedSeries::one(6).div(&den).is_err());
    }

    #[test]
    fn sqrt_of_one_minus_four_x() {
        let s = TruncatedSeries::one(6) - x(6).scale_rat(&rat(4));
        let r = s.sqrt().unwrap();
        assert_eq!(ints(&r), vec![rat(1), rat(-2), rat(-2), rat(-4), rat(-10), rat(-28)]);
        assert_eq!(&r * &r, s);
        assert_eq!(TruncatedSeries::one(5).sqrt().unwrap(), TruncatedSeries::one(5));
        assert!(matches!(TruncatedSeries::constant(MultiPoly::from_int(4), 3).sqrt(), Err(Error::ConstantTermNotOne(_))));
    }

    #[test]
    fn shift_down_requires_divisibility() {
        assert!(TruncatedSeries::one(4).shift_down(1).is_err());
        let s = x(4).shift_down(1).unwrap();
        assert_eq!(s, TruncatedSeries::one(3));
    }

    #[test]
    fn json_form() {
        let s = TruncatedSeries::from_terms([(1, MultiPoly::marker(Marker::Q))], 2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":[[],[{"exponents":{"q":1},"coeff":"1"}]]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}

//! Exact polynomials in the markers `q`, `p`, `v` over the big rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A formal marker variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    Q,
    P,
    V,
}

impl Marker {
    pub const ALL: [Marker; 3] = [Marker::Q, Marker::P, Marker::V];

    fn index(self) -> usize {
        match self {
            Marker::Q => 0,
            Marker::P => 1,
            Marker::V => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::Q => "q",
            Marker::P => "p",
            Marker::V => "v",
        }
    }

    fn from_name(s: &str) -> Option<Marker> {
        Marker::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Exponent vector over `(q, p, v)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 3]);

    pub fn new(q: u32, p: u32, v: u32) -> Self {
        Monomial([q, p, v])
    }

    pub fn of(marker: Marker, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.0[marker.index()] = e;
        m
    }

    pub fn exponent(&self, marker: Marker) -> u32 {
        self.0[marker.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 3]
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    fn checked_div(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial([
            self.0[0].checked_sub(other.0[0])?,
            self.0[1].checked_sub(other.0[1])?,
            self.0[2].checked_sub(other.0[2])?,
        ]))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in [Marker::P, Marker::Q, Marker::V] {
            let e = self.exponent(m);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(m.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomial with canonical term order and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        MultiPoly::term(c, Monomial::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(rat(n))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// The marker itself.
    pub fn marker(m: Marker) -> Self {
        MultiPoly::term(BigRational::one(), Monomial::of(m, 1))
    }

    /// `q - 1`, which appears in nearly every formula.
    pub fn q_minus_one() -> Self {
        MultiPoly::marker(Marker::Q) - MultiPoly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::ONE)
    }

    /// The value if the polynomial has no marker dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// `(coefficient, monomial)` if the polynomial is a single nonzero term.
    pub fn as_single_term(&self) -> Option<(BigRational, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), *m))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &BigRational, mono: Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect() }
    }

    /// Exact quotient by `c * mono`, `None` if some term is not divisible.
    pub fn div_term(&self, c: &BigRational, mono: Monomial) -> Option<MultiPoly> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            terms.insert(m.checked_div(mono)?, a / c);
        }
        Some(MultiPoly { terms })
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes a rational value for one marker.
    pub fn specialize(&self, marker: Marker, value: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(marker);
            let mut rest = *m;
            rest.0[marker.index()] = 0;
            let factor = num::pow::pow(value.clone(), e as usize);
            out.add_term(rest, c * factor);
        }
        out
    }

    /// Value with every marker set to 1.
    pub fn sum_of_coefficients(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, marker: Marker) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(marker);
            if e == 0 {
                continue;
            }
            let mut lower = *m;
            lower.0[marker.index()] = e - 1;
            out.add_term(lower, c * rat(e as i64));
        }
        out
    }

    /// Renames one marker to another (the target must be absent).
    pub fn rename(&self, from: Marker, to: Marker) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut r = *m;
            r.0[to.index()] += r.0[from.index()];
            r.0[from.index()] = 0;
            out.add_term(r, c.clone());
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn degree(&self, marker: Marker) -> u32 {
        self.terms.keys().map(|m| m.exponent(marker)).max().unwrap_or(0)
    }

    /// Builds a polynomial from `exponent -> count` pairs in one marker.
    pub fn from_counts<I: IntoIterator<Item = (Monomial, u64)>>(counts: I) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in counts {
            out.add_term(m, BigRational::from_integer(BigInt::from(c)));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let show_coeff = m.is_one() || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            if !m.is_one() {
                if show_coeff {
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::from_int(n)
    }
}

/// JSON term: `{"exponents": {"q": 1}, "coeff": "4"}`.
#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: BTreeMap<String, u32>,
    coeff: String,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: Marker::ALL
                    .into_iter()
                    .filter(|mk| m.exponent(*mk) > 0)
                    .map(|mk| (mk.name().to_string(), m.exponent(mk)))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = MultiPoly::zero();
        for t in terms {
            let mut m = Monomial::ONE;
            for (name, e) in t.exponents {
                let mk = Marker::from_name(&name)
                    .ok_or_else(|| D::Error::custom(format!("unknown marker {name:?}")))?;
                m.0[mk.index()] = e;
            }
            let c: BigRational = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::marker(Marker::Q)
    }

    #[test]
    fn ring_basics() {
        let a = q() + MultiPoly::one();
        let b = q() - MultiPoly::one();
        assert_eq!(&a * &b, q().pow(2) - MultiPoly::one());
        assert!((&a - &a).is_zero());
        assert_eq!(MultiPoly::zero() * &a, MultiPoly::zero());
    }

    #[test]
    fn display_matches_cli_form() {
        let d = MultiPoly::from_int(4) + q();
        assert_eq!(d.to_string(), "4 + q");
        let p = MultiPoly::marker(Marker::P);
        let pq = p.pow(2) * q() + p.pow(2);
        assert_eq!(pq.to_string(), "p^2 + p^2*q");
        assert_eq!((-(q() * MultiPoly::from_int(3))).to_string(), "-3*q");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn specialize_and_differentiate() {
        let f = MultiPoly::from_int(4) + q().pow(3).scale(&rat(2));
        assert_eq!(f.specialize(Marker::Q, &rat(1)), MultiPoly::from_int(6));
        assert_eq!(f.derivative(Marker::Q), q().pow(2).scale(&rat(6)));
        assert_eq!(f.sum_of_coefficients(), rat(6));
    }

    #[test]
    fn exact_term_division() {
        let f = q().pow(2) + q();
        assert_eq!(f.div_term(&rat(1), Monomial::of(Marker::Q, 1)).unwrap(), q() + MultiPoly::one());
        assert!((q() + MultiPoly::one()).div_term(&rat(1), Monomial::of(Marker::Q, 1)).is_none());
    }

    #[test]
    fn json_round_trip() {
        let f = MultiPoly::from_int(4) + q() * MultiPoly::marker(Marker::V).scale(&BigRational::new(1.into(), 2.into()));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"[{"exponents":{},"coeff":"4"},{"exponents":{"q":1,"v":1},"coeff":"1/2"}]"#);
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}

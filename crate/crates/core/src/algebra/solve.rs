//! Series solutions of quadratic and polynomial functional equations.

use num::{BigRational, Zero};

use super::poly::{rat, MultiPoly};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::partition::catalan;

/// Solves `A F^2 - B F + C = 0` for the series with `F(0) = C(0)/B(0)` when
/// `A(0) = 0`, or `F(0) = 1` otherwise. Each coefficient of the equation at
/// `x^k` is linear in `F_k` with factor `2 A(0) F(0) - B(0)`.
pub fn solve_quadratic(a: &TruncatedSeries, b: &TruncatedSeries, c: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = a.order().min(b.order()).min(c.order());
    if order == 0 {
        return Ok(TruncatedSeries::zero(0));
    }
    let (a0, b0, c0) = (a.coeff(0), b.coeff(0), c.coeff(0));
    let f0 = if a0.is_zero() {
        let b0 = b0
            .as_constant()
            .filter(|v| !v.is_zero())
            .ok_or_else(|| Error::NoSeriesSolution(format!("B(0) = {b0} is not a nonzero constant")))?;
        c0.scale(&b0.recip())
    } else {
        let one = MultiPoly::one();
        if !(a0 - b0 + c0).is_zero() {
            return Err(Error::NoSeriesSolution("F(0) = 1 does not satisfy the constant term".into()));
        }
        one
    };
    let linear = &(a0 * &f0).scale(&rat(2)) - b0;
    let linear = linear
        .as_constant()
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::NoSeriesSolution(format!("linear coefficient {linear} is not invertible")))?;
    let neg_inv = -linear.recip();

    let mut f = vec![MultiPoly::zero(); order];
    let mut sq = vec![MultiPoly::zero(); order];
    f[0] = f0.clone();
    sq[0] = &f0 * &f0;
    for k in 1..order {
        // [x^k] of A F^2 - B F + C with F_k = 0
        let mut partial_sq = MultiPoly::zero();
        for j in 1..k {
            partial_sq += &(&f[j] * &f[k - j]);
        }
        let mut r = a0 * &partial_sq;
        for i in 1..=k {
            if !a.coeff(i).is_zero() {
                r += &(a.coeff(i) * &sq[k - i]);
            }
        }
        for i in 1..=k {
            if !b.coeff(i).is_zero() {
                r -= &(b.coeff(i) * &f[k - i]);
            }
        }
        r += c.coeff(k);
        f[k] = r.scale(&neg_inv);
        sq[k] = &partial_sq + &(&f[0] * &f[k]).scale(&rat(2));
    }
    Ok(TruncatedSeries::from_coeffs(f, order))
}

/// Residual `A F^2 - B F + C`.
pub fn quadratic_residual(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    c: &TruncatedSeries,
    f: &TruncatedSeries,
) -> TruncatedSeries {
    &(&(a * &(f * f)) - &(b * f)) + c
}

fn formal_derivative(p: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    p.iter().enumerate().skip(1).map(|(i, c)| c.scale_rat(&rat(i as i64))).collect()
}

/// Solves `P(y) = 0` where `p[i]` is the coefficient of `y^i`, for the series
/// with `y(0) = y0`, by Newton iteration `y <- y - P(y)/P'(y)` with doubling
/// precision.
pub fn solve_poly_functional(p: &[TruncatedSeries], y0: &BigRational) -> Result<TruncatedSeries> {
    let order = p.iter().map(TruncatedSeries::order).min().unwrap_or(0);
    if order == 0 {
        return Ok(TruncatedSeries::zero(0));
    }
    let dp = formal_derivative(p);
    let mut y = TruncatedSeries::constant(MultiPoly::constant(y0.clone()), 1);

    let r0 = y.compose_polynomial(&p.iter().map(|c| c.truncate(1)).collect::<Vec<_>>());
    if !r0.is_zero() {
        return Err(Error::NoConvergence(format!("P(y0)(0) = {} is not zero", r0.coeff(0))));
    }
    let d0 = y.compose_polynomial(&dp.iter().map(|c| c.truncate(1)).collect::<Vec<_>>());
    match d0.coeff(0).as_constant() {
        Some(v) if !v.is_zero() => {}
        _ => return Err(Error::SingularDerivative(d0.coeff(0).to_string())),
    }

    let mut prec = 1;
    while prec < order {
        let next = (2 * prec).min(order);
        let pn: Vec<_> = p.iter().map(|c| c.truncate(next)).collect();
        let dpn: Vec<_> = dp.iter().map(|c| c.truncate(next)).collect();
        let y_ext = y.extend_polynomial(next);
        let value = y_ext.compose_polynomial(&pn);
        let slope = y_ext.compose_polynomial(&dpn);
        let updated = &y_ext - &value.div(&slope)?;
        if !updated.compose_polynomial(&pn).is_zero() {
            return Err(Error::NoConvergence(format!("precision {prec} -> {next}")));
        }
        y = updated;
        prec = next;
    }
    Ok(y)
}

/// `C(x) = sum C_n x^n` to order `order`, computed from the radical
/// `(1 - sqrt(1 - 4x)) / (2x)` and checked against the convolution recurrence.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let wide = order + 1;
    let radicand = &TruncatedSeries::one(wide) - &TruncatedSeries::x_pow(1, wide).scale_rat(&rat(4));
    let root = radicand.sqrt().expect("1 - 4x has constant term 1");
    let by_radical = (&TruncatedSeries::one(wide) - &root)
        .shift_down(1)
        .expect("numerator vanishes at 0")
        .scale_rat(&BigRational::new(1.into(), 2.into()));

    let mut conv: Vec<BigRational> = Vec::with_capacity(order);
    for n in 0..order {
        let v = if n == 0 {
            rat(1)
        } else {
            (0..n).fold(BigRational::zero(), |acc, i| acc + &conv[i] * &conv[n - 1 - i])
        };
        conv.push(v);
    }
    let by_recurrence = TruncatedSeries::from_coeffs(conv.into_iter().map(MultiPoly::constant).collect(), order);
    assert_eq!(by_radical, by_recurrence, "Catalan series routes disagree");
    debug_assert!((0..order).all(|n| by_recurrence.coeff(n).constant_term() == BigRational::from_integer(catalan(n).into())));
    by_recurrence
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Marker;

    fn x(k: usize, order: usize) -> TruncatedSeries {
        TruncatedSeries::x_pow(k, order)
    }

    fn constants(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                let v = c.as_constant().unwrap();
                assert!(v.is_integer());
                i64::try_from(v.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(constants(&catalan_series(5)), vec![1, 1, 2, 5, 14]);
        assert_eq!(constants(&catalan_series(13))[12], 208012);
        let c = catalan_series(3);
        assert_eq!((&c * &c).coeff(2).constant_term(), rat(5));
    }

    #[test]
    fn quadratic_catalan() {
        let n = 10;
        let f = solve_quadratic(&x(1, n), &TruncatedSeries::one(n), &TruncatedSeries::one(n)).unwrap();
        assert_eq!(f, catalan_series(n));
    }

    #[test]
    fn quadratic_with_marker() {
        // x(1+(q-1)x) F^2 = (1+(q-1)x^2) F - 1
        let n = 8;
        let qm1 = MultiPoly::q_minus_one();
        let a = &x(1, n) + &x(2, n).scale(&qm1);
        let b = &TruncatedSeries::one(n) + &x(2, n).scale(&qm1);
        let c = TruncatedSeries::one(n);
        let f = solve_quadratic(&a, &b, &c).unwrap();
        assert_eq!(f.coeff(3), &(MultiPoly::from_int(4) + MultiPoly::marker(Marker::Q)));
        assert!(quadratic_residual(&a, &b, &c, &f).is_zero());
        assert_eq!(f.specialize(Marker::Q, &rat(1)), catalan_series(n));
    }

    #[test]
    fn quadratic_rejects_marker_leading_coefficient() {
        let n = 4;
        let b = TruncatedSeries::constant(MultiPoly::marker(Marker::Q), n);
        assert!(solve_quadratic(&x(1, n), &b, &TruncatedSeries::one(n)).is_err());
    }

    #[test]
    fn functional_catalan() {
        let n = 12;
        let p = vec![TruncatedSeries::one(n), -TruncatedSeries::one(n), x(1, n)];
        let y = solve_poly_functional(&p, &rat(1)).unwrap();
        assert_eq!(y, catalan_series(n));
        assert!(y.compose_polynomial(&p).is_zero());
    }

    #[test]
    fn functional_rejects_bad_start() {
        let n = 5;
        let p = vec![TruncatedSeries::one(n), -TruncatedSeries::one(n), x(1, n)];
        assert!(matches!(solve_poly_functional(&p, &rat(2)), Err(Error::NoConvergence(_))));
        let flat = vec![TruncatedSeries::zero(n), TruncatedSeries::zero(n), x(1, n)];
        assert!(matches!(solve_poly_functional(&flat, &rat(0)), Err(Error::SingularDerivative(_))));
    }
}

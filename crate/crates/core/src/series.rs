//! Truncated formal power series over the rationals.
//!
//! A [`PowerSeries`] knows its coefficients through `x^order` and nothing
//! beyond; binary operations keep the smaller order so that no coefficient is
//! ever reported past what the inputs determine.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{factorial, int, pow_signed, ratio, Rational};
use crate::error::{Error, Result};
use crate::volume::ck_sequence;

pub const DEFAULT_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
    order: usize,
}

impl PowerSeries {
    /// Series with the given leading coefficients, padded with zeros or cut
    /// to `order + 1` terms.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs, order }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coeffs[..=order.min(self.order)].to_vec(),
            order.min(self.order),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
            order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| &self.coeffs[k] * &other.coeffs[n - k])
                    .sum()
            })
            .collect();
        Self::new(coeffs, order)
    }

    /// Multiplication by `x`; raises the known order by one.
    pub fn shift(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.order + 1)
    }

    /// `self(inner(x))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series(format!(
                "composition needs a zero constant term in the inner series, got {}",
                inner.coeffs[0]
            )));
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner).add(&Self::constant(c.clone(), order));
        }
        Ok(acc)
    }

    /// `exp(self)`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(format!(
                "exp needs a zero constant term, got {}",
                self.coeffs[0]
            )));
        }
        let mut e = vec![Rational::one()];
        for n in 1..=self.order {
            let s: Rational = (1..=n)
                .map(|k| int(k as i64) * &self.coeffs[k] * &e[n - k])
                .sum();
            e.push(s / int(n as i64));
        }
        Ok(Self::new(e, self.order))
    }

    /// The square root with constant term 1; requires constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(format!(
                "sqrt needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let mut r = vec![Rational::one()];
        for n in 1..=self.order {
            let cross: Rational = (1..n).map(|k| &r[k] * &r[n - k]).sum();
            r.push((&self.coeffs[n] - cross) / int(2));
        }
        Ok(Self::new(r, self.order))
    }

    /// `1 / self`; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "reciprocal needs a nonzero constant term".into(),
            ));
        }
        let c0 = self.coeffs[0].recip();
        let mut r = vec![c0.clone()];
        for n in 1..=self.order {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &r[n - k]).sum();
            r.push(-s * &c0);
        }
        Ok(Self::new(r, self.order))
    }

    /// Formal derivative; the known order drops by one.
    pub fn derive(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::Series(
                "derivative of an order-0 series is unknown".into(),
            ));
        }
        let coeffs = (1..=self.order)
            .map(|k| int(k as i64) * &self.coeffs[k])
            .collect();
        Ok(Self::new(coeffs, self.order - 1))
    }

    /// Antiderivative with zero constant term; the known order rises by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Self::new(coeffs, self.order + 1)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.is_integer() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match k {
                0 => write!(f, "{coef}")?,
                _ if c.is_one() => {}
                _ => write!(f, "{coef}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

/// `g_b(x) = sum_{n>=1} (bn)^(n-1) / n! x^n`, the solution of `g = x e^(b g)`.
pub fn g_b_series(b: i64, order: usize) -> PowerSeries {
    let coeffs = (0..=order as i64)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                pow_signed(&int(b * n), n - 1) / Rational::from_integer(factorial(n as u64))
            }
        })
        .collect();
    PowerSeries::new(coeffs, order)
}

/// Whether `g = x exp(b g)` holds through the order of `g`.
pub fn satisfies_functional_equation(g: &PowerSeries, b: i64) -> Result<bool> {
    let rhs = g.scale(&int(b)).exp()?.shift();
    Ok(rhs.truncate(g.order()) == *g)
}

pub fn verify_functional_equation(b: i64, order: usize) -> bool {
    satisfies_functional_equation(&g_b_series(b, order), b).unwrap_or(false)
}

/// `(1 - b g_b)^(-1/2) exp((a - b/2 - 1) g_b)`; its `x^n` coefficient is the
/// Euclidean volume of `X_n(a, b)` divided by `n!`.
pub fn f_ab_series(a: i64, b: i64, order: usize) -> Result<PowerSeries> {
    let g = g_b_series(b, order);
    let one = PowerSeries::constant(Rational::one(), order);
    let root = one.sub(&g.scale(&int(b))).sqrt()?.recip()?;
    let expo = g.scale(&ratio(2 * a - b - 2, 2)).exp()?;
    Ok(root.mul(&expo))
}

/// `k! [x^k] sqrt(1 - 2x) e^x` for `k = 0..=order`.
pub fn ck_from_egf(order: usize) -> Result<Vec<Rational>> {
    let root = PowerSeries::new(vec![Rational::one(), int(-2)], order).sqrt()?;
    let egf = root.mul(&PowerSeries::x(order).exp()?);
    Ok(egf
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * Rational::from_integer(factorial(k as u64)))
        .collect())
}

/// Whether the EGF coefficients satisfy `c_0 = 1` and
/// `c_k = 2(k-1)(c_{k-1} - c_{k-2})` for `2 <= k <= order`, and match the
/// sequence computed from the recurrence alone.
pub fn ck_egf_check(order: usize) -> Result<bool> {
    if order < 2 {
        return Err(Error::InvalidParams(format!(
            "need order >= 2, got {order}"
        )));
    }
    let c = ck_from_egf(order)?;
    let recurrence_ok = c[0].is_one()
        && (2..=order).all(|k| c[k] == int(2 * (k as i64 - 1)) * (&c[k - 1] - &c[k - 2]));
    let seq = ck_sequence(order);
    let matches = seq
        .values()
        .iter()
        .zip(&c)
        .all(|(s, e)| Rational::from_integer(s.clone()) == *e);
    Ok(recurrence_ok && matches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ser(v: &[(i64, i64)], order: usize) -> PowerSeries {
        PowerSeries::new(v.iter().map(|&(p, q)| ratio(p, q)).collect(), order)
    }

    #[test]
    fn exp_of_x() {
        let e = PowerSeries::x(3).exp().unwrap();
        assert_eq!(e, ser(&[(1, 1), (1, 1), (1, 2), (1, 6)], 3));
        assert_eq!(e.to_string(), "1 + x + (1/2)x^2 + (1/6)x^3 + O(x^4)");
    }

    #[test]
    fn sqrt_binomial() {
        let s = ser(&[(1, 1), (-2, 1)], 2).sqrt().unwrap();
        assert_eq!(s, ser(&[(1, 1), (-1, 1), (-1, 2)], 2));
    }

    #[test]
    fn compose_square() {
        let y2 = ser(&[(0, 1), (0, 1), (1, 1)], 3);
        let inner = ser(&[(0, 1), (1, 1), (1, 1)], 3);
        assert_eq!(
            y2.compose(&inner).unwrap(),
            ser(&[(0, 1), (0, 1), (1, 1), (2, 1)], 3)
        );
    }

    #[test]
    fn preconditions() {
        let one_plus_x = ser(&[(1, 1), (1, 1)], 4);
        assert!(one_plus_x.exp().is_err());
        assert!(PowerSeries::x(4).sqrt().is_err());
        assert!(PowerSeries::x(4).recip().is_err());
        assert!(one_plus_x.compose(&one_plus_x).is_err());
        assert!(PowerSeries::constant(int(1), 0).derive().is_err());
    }

    #[test]
    fn orders_propagate() {
        let a = PowerSeries::x(5);
        let b = PowerSeries::x(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.derive().unwrap().order(), 4);
        assert_eq!(a.integrate().order(), 6);
        assert_eq!(a.coeff(6), None);
    }

    #[test]
    fn g_b_coefficients() {
        assert_eq!(g_b_series(1, 3), ser(&[(0, 1), (1, 1), (1, 1), (3, 2)], 3));
        assert_eq!(g_b_series(2, 2), ser(&[(0, 1), (1, 1), (2, 1)], 2));
        for b in 1..6 {
            assert_eq!(g_b_series(b, 4).coeff(1), Some(&int(1)));
        }
    }

    #[test]
    fn functional_equation() {
        assert!(verify_functional_equation(1, 8));
        assert!(verify_functional_equation(3, 6));
        let mut coeffs = g_b_series(2, 6).coeffs().to_vec();
        coeffs[4] += ratio(1, 7);
        let perturbed = PowerSeries::new(coeffs, 6);
        assert!(!satisfies_functional_equation(&perturbed, 2).unwrap());
    }

    #[test]
    fn f_ab_coefficients() {
        let f = f_ab_series(1, 1, 4).unwrap();
        assert_eq!(f.coeff(0), Some(&int(1)));
        assert_eq!(f.coeff(2), Some(&ratio(1, 4)));
        for (a, b) in [(1, 1), (2, 3), (5, 2)] {
            assert_eq!(f_ab_series(a, b, 3).unwrap().coeff(1), Some(&int(a - 1)));
        }
    }

    #[test]
    fn ck_egf() {
        let c = ck_from_egf(4).unwrap();
        assert_eq!(c[1], int(0));
        assert_eq!(c[2], int(-2));
        assert!(ck_egf_check(10).unwrap());
        assert!(ck_egf_check(1).is_err());
    }

    fn arb_series(order: usize) -> impl Strategy<Value = PowerSeries> {
        proptest::collection::vec((-20i64..20, 1i64..6), order + 1)
            .prop_map(move |v| ser(&v, order))
    }

    proptest! {
        #[test]
        fn derive_undoes_integrate(s in arb_series(6)) {
            prop_assert_eq!(s.integrate().derive().unwrap(), s);
        }

        #[test]
        fn integrate_undoes_derive_without_constant(s in arb_series(6)) {
            let mut c = s.coeffs().to_vec();
            c[0] = Rational::zero();
            let s = PowerSeries::new(c, 6);
            let back = s.derive().unwrap().integrate();
            prop_assert_eq!(back, s.clone());
            let e1 = s.exp().unwrap();
            let e2 = s.derive().unwrap().integrate().exp().unwrap();
            prop_assert_eq!(e1, e2);
        }

        #[test]
        fn exp_log_derivative(s in arb_series(6)) {
            // (e^s)' = s' e^s for zero-constant s.
            let mut c = s.coeffs().to_vec();
            c[0] = Rational::zero();
            let s = PowerSeries::new(c, 6);
            let e = s.exp().unwrap();
            prop_assert_eq!(e.derive().unwrap(), s.derive().unwrap().mul(&e));
        }

        #[test]
        fn recip_is_inverse(s in arb_series(5)) {
            let mut c = s.coeffs().to_vec();
            c[0] = int(1);
            let s = PowerSeries::new(c, 5);
            let prod = s.mul(&s.recip().unwrap());
            prop_assert_eq!(prod, PowerSeries::constant(int(1), 5));
            let r = s.sqrt().unwrap();
            prop_assert_eq!(r.mul(&r), s);
        }
    }
}

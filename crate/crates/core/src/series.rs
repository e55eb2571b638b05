//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients `c_0..=c_N` of an
//! analytic function at the origin. Binary operations between series of
//! different orders truncate to the smaller order instead of zero-padding,
//! so a result never claims more accuracy than its least accurate input.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

/// Default truncation order used throughout the crate.
pub const DEFAULT_ORDER: usize = 64;

/// Taylor coefficients `c_0..=c_N` of an analytic function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients. At least one coefficient is
    /// required and all of them must be finite.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The series of `z` (the identity function).
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, Complex64::new(1.0, 0.0), order)
    }

    /// `coeff * z^power`, truncated to `order` (zero if `power > order`).
    pub fn monomial(power: usize, coeff: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Builds a series coefficientwise from `f(k)` for `k = 0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self { coeffs: (0..=order).map(f).collect() }
    }

    /// Truncation degree `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `k`, or zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Real parts of all coefficients.
    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    /// Drops coefficients above `order`. Never extends the series.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self { coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Multiplies coefficient `k` by `weight(k)`.
    pub fn weighted(&self, mut weight: impl FnMut(usize) -> Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().map(|(k, c)| c * weight(k)).collect() }
    }

    /// Substitutes `z -> factor * z`.
    pub fn dilate(&self, factor: Complex64) -> Self {
        let mut power = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * power;
                power *= factor;
                out
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplies by `z^shift`, keeping the order (top coefficients fall off).
    pub fn shift_up(&self, shift: usize) -> Self {
        Self::from_fn(self.order(), |k| if k >= shift { self.coeffs[k - shift] } else { Complex64::default() })
    }

    /// Divides by `z^shift`, dropping the first `shift` coefficients. The
    /// order shrinks by `shift`. Coefficients below `shift` are expected to be
    /// zero; they are discarded without a check.
    pub fn shift_down(&self, shift: usize) -> Result<Self, SeriesError> {
        if shift > self.order() {
            return Err(SeriesError::ShiftTooLarge { shift, order: self.order() });
        }
        Ok(Self { coeffs: self.coeffs[shift..].to_vec() })
    }

    /// Quotient `self / other` via the reciprocal recurrence.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let b0 = other.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(SeriesError::DivisionByZeroConstantTerm);
        }
        let n = self.order().min(other.order());
        let mut q = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q.push(acc / b0);
        }
        Ok(Self { coeffs: q })
    }

    /// `exp(self)`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.require_constant(0.0, "exp")?;
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(Complex64::new(1.0, 0.0));
        for k in 1..=n {
            let mut acc = Complex64::default();
            for j in 1..=k {
                acc += self.coeffs[j] * e[k - j] * j as f64;
            }
            e.push(acc / k as f64);
        }
        Ok(Self { coeffs: e })
    }

    /// Principal `log(self)`; requires constant term 1.
    pub fn ln(&self) -> Result<Self, SeriesError> {
        self.require_constant(1.0, "log")?;
        let n = self.order();
        let mut l = vec![Complex64::default(); n + 1];
        for k in 1..=n {
            let mut acc = Complex64::default();
            for j in 1..k {
                acc += l[j] * self.coeffs[k - j] * j as f64;
            }
            l[k] = self.coeffs[k] - acc / k as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// Principal `self^alpha` for real `alpha`; requires constant term 1.
    ///
    /// Uses the recurrence from `a P' = alpha a' P`, which is valid for any
    /// real exponent.
    pub fn powf(&self, alpha: f64) -> Result<Self, SeriesError> {
        self.require_constant(1.0, "pow")?;
        let n = self.order();
        let mut p = Vec::with_capacity(n + 1);
        p.push(Complex64::new(1.0, 0.0));
        for k in 1..=n {
            let mut acc = Complex64::default();
            for j in 1..=k {
                acc += self.coeffs[j] * p[k - j] * (j as f64 * (alpha + 1.0) - k as f64);
            }
            p.push(acc / k as f64);
        }
        Ok(Self { coeffs: p })
    }

    /// Term-by-term derivative, order `N - 1` (the zero series for `N = 0`).
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect() }
    }

    /// Antiderivative vanishing at 0, order `N + 1`.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::default());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Self { coeffs }
    }

    /// `z * self'(z)`, same order.
    pub fn z_derive(&self) -> Self {
        self.weighted(|k| Complex64::new(k as f64, 0.0))
    }

    /// Hadamard (coefficientwise) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect() }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::default(), |acc, c| acc * z + c)
    }

    /// `sum |c_k| r^k`, the majorant series at radius `r`.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Largest coefficientwise distance to `other` over the common range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn require_constant(&self, expected: f64, op: &'static str) -> Result<(), SeriesError> {
        let c0 = self.coeffs[0];
        if (c0 - Complex64::new(expected, 0.0)).norm() > 1e-14 {
            return Err(SeriesError::BadConstantTerm { op, expected, found: c0 });
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

/// Cauchy product truncated to the smaller order.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: Self) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The four arithmetic operations as a value, for callers that dispatch on
/// an operation chosen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn series_arith(a: &TruncatedSeries, b: &TruncatedSeries, op: ArithOp) -> Result<TruncatedSeries, SeriesError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(s: &TruncatedSeries) -> Vec<f64> {
        s.real_coeffs()
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let b = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(real(&(&a * &b)), vec![1.0, 0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn geometric_reciprocal() {
        let one = TruncatedSeries::one(3);
        let b = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(real(&one.div(&b).unwrap()), vec![1.0; 4]);
    }

    #[test]
    fn division_by_zero_constant_term() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::identity(3);
        assert!(matches!(a.div(&b), Err(SeriesError::DivisionByZeroConstantTerm)));
        assert!(matches!(series_arith(&a, &b, ArithOp::Div), Err(SeriesError::DivisionByZeroConstantTerm)));
    }

    #[test]
    fn squared_koebe_numerator_over_cube() {
        // z(1+z) * (1-z)^{-3} = z + 4z^2 + 9z^3 + ...
        let num = TruncatedSeries::from_real(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let inv = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0]).unwrap().powf(-3.0).unwrap();
        let f = &num * &inv;
        for (k, v) in real(&f).iter().enumerate() {
            assert!((v - (k * k) as f64).abs() < 1e-12, "k={k} v={v}");
        }
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = TruncatedSeries::one(7);
        let b = TruncatedSeries::one(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!(a.hadamard(&b).order(), 3);
        assert_eq!(a.div(&b).unwrap().order(), 3);
    }

    #[test]
    fn exp_of_log_series_gives_inverse_square() {
        let s = TruncatedSeries::from_fn(5, |n| if n == 0 { c(0.0) } else { c(2.0 / n as f64) });
        let e = s.exp().unwrap();
        for (k, v) in real(&e).iter().enumerate() {
            assert!((v - (k + 1) as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn binomial_pow() {
        let a = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        let p = a.powf(-2.0).unwrap();
        for (k, v) in real(&p).iter().enumerate() {
            assert!((v - (k + 1) as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn bad_constant_terms() {
        let one = TruncatedSeries::one(4);
        let z = TruncatedSeries::identity(4);
        assert!(matches!(one.exp(), Err(SeriesError::BadConstantTerm { op: "exp", .. })));
        assert!(matches!(z.ln(), Err(SeriesError::BadConstantTerm { op: "log", .. })));
        assert!(matches!(z.powf(0.5), Err(SeriesError::BadConstantTerm { op: "pow", .. })));
    }

    #[test]
    fn calculus_pair() {
        let a = TruncatedSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(real(&a.derive()), vec![1.0, 2.0]);
        let b = TruncatedSeries::from_real(&[1.0, 2.0]).unwrap();
        assert_eq!(real(&b.integrate()), vec![0.0, 1.0, 1.0]);
        assert_eq!(TruncatedSeries::one(0).derive(), TruncatedSeries::zero(0));
    }

    #[test]
    fn horner_values() {
        let a = TruncatedSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(a.eval(c(0.5)), c(0.75));
        let k = TruncatedSeries::from_real(&[1.0]).unwrap();
        assert_eq!(k.eval(Complex64::new(0.3, -2.0)), c(1.0));
        let geo = TruncatedSeries::from_fn(64, |_| c(1.0));
        assert!((geo.eval(c(0.3)) - c(1.0 / 0.7)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            TruncatedSeries::from_real(&[0.0, f64::NAN]),
            Err(SeriesError::NonFinite { index: 1 })
        ));
        assert!(matches!(TruncatedSeries::new(vec![]), Err(SeriesError::Empty)));
    }

    #[test]
    fn koebe_hadamard_square() {
        let koebe = TruncatedSeries::from_fn(5, |k| c(k as f64));
        assert_eq!(real(&koebe.hadamard(&koebe)), vec![0.0, 1.0, 4.0, 9.0, 16.0, 25.0]);
    }
}

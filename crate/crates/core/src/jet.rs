//! Second-order jets over the complex numbers.
//!
//! A [`Jet2`] carries `(g(z), g'(z), g''(z))` through arithmetic and the
//! elementary functions, so any closed-form evaluator written against it
//! yields exact first and second derivatives alongside the value.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet2 {
    pub fn variable(z: Complex64) -> Self {
        Self { v: z, d1: Complex64::new(1.0, 0.0), d2: Complex64::default() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { v: c, d1: Complex64::default(), d2: Complex64::default() }
    }

    pub fn real(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `self.v`.
    fn chain(self, f: Complex64, df: Complex64, d2f: Complex64) -> Self {
        Self { v: f, d1: df * self.d1, d2: d2f * self.d1 * self.d1 + df * self.d2 }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(s, c, -s)
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    /// Principal power `self^p` for real `p`. At `v = 0` the value is 0 and
    /// the derivatives are whatever IEEE arithmetic produces.
    pub fn powf(self, p: f64) -> Self {
        if self.v == Complex64::default() {
            return Self { v: Complex64::default(), d1: Complex64::new(f64::NAN, 0.0), d2: Complex64::new(f64::NAN, 0.0) };
        }
        let ln = self.v.ln();
        let f = (ln * p).exp();
        let df = (ln * (p - 1.0)).exp() * p;
        let d2f = (ln * (p - 2.0)).exp() * (p * (p - 1.0));
        self.chain(f, df, d2f)
    }

    pub fn recip(self) -> Self {
        Self::real(1.0) / self
    }

    pub fn scale(self, k: f64) -> Self {
        Self { v: self.v * k, d1: self.d1 * k, d2: self.d2 * k }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + self.d1 * o.d1 * 2.0 + self.v * o.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        let q = self.v / o.v;
        let q1 = (self.d1 - q * o.d1) / o.v;
        let q2 = (self.d2 - q1 * o.d1 * 2.0 - q * o.d2) / o.v;
        Jet2 { v: q, d1: q1, d2: q2 }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, c: f64) -> Jet2 {
        Jet2 { v: self.v + c, ..self }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, k: f64) -> Jet2 {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn derivatives_of_z_exp_z() {
        let z0 = Complex64::new(0.3, -0.4);
        let z = Jet2::variable(z0);
        let g = z * z.exp();
        let e = z0.exp();
        assert!(close(g.v, z0 * e, 1e-15));
        assert!(close(g.d1, (z0 + 1.0) * e, 1e-15));
        assert!(close(g.d2, (z0 + 2.0) * e, 1e-15));
    }

    #[test]
    fn quotient_and_power_rules() {
        let z0 = Complex64::new(-0.2, 0.5);
        let z = Jet2::variable(z0);
        // (1+z)/(1-z)
        let m = (z + 1.0) / (Jet2::real(1.0) - z);
        let d = Complex64::new(1.0, 0.0) - z0;
        assert!(close(m.d1, 2.0 / (d * d), 1e-14));
        assert!(close(m.d2, 4.0 / (d * d * d), 1e-14));
        let s = (z + 1.0).sqrt();
        let w = (z0 + 1.0).sqrt();
        assert!(close(s.d1, 0.5 / w, 1e-14));
        assert!(close(s.d2, -0.25 / (w * w * w), 1e-14));
    }
}

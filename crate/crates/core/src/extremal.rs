//! The extremal function `f0(z) = z exp(int_0^z (psi(t) - 1)/t dt)` of
//! `S*(psi)`, its Koebe radius and its coefficient majorant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, NumericsError, Result};
use crate::numerics::adaptive_simpson;
use crate::psi::PsiSpec;
use crate::series::TruncatedSeries;

/// Minimum truncation order accepted by [`build_extremal`].
pub const MIN_ORDER: usize = 8;
/// Two truncations must agree to this before a value is trusted.
pub const CONVERGENCE_TOL: f64 = 1e-10;
pub const QUADRATURE_TOL: f64 = 1e-12;
pub const QUADRATURE_DEPTH: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    Koebe,
    Janowski,
    Alpha,
    Cardioid,
    Lemniscate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalFunction {
    /// `f0` to order `N`.
    pub series: TruncatedSeries,
    /// `f0` to order `2N`, used to certify truncated sums.
    check: TruncatedSeries,
    pub spec: PsiSpec,
    pub closed_form: Option<ClosedForm>,
}

fn extremal_series(spec: &PsiSpec, n: usize) -> TruncatedSeries {
    // log(f0/z) = sum B_k z^k / k
    let b = spec.series(n);
    let log = TruncatedSeries::from_fn(n, |k| if k == 0 { Complex64::default() } else { b.coeff(k) / k as f64 });
    let e = log.exp().expect("zero constant term");
    e.shift_up(1).truncate(n)
}

pub fn closed_form_tag(spec: &PsiSpec) -> Option<ClosedForm> {
    match *spec {
        PsiSpec::Janowski { d, e } if d == 1.0 && e == -1.0 => Some(ClosedForm::Koebe),
        PsiSpec::Janowski { .. } => Some(ClosedForm::Janowski),
        PsiSpec::AlphaHalfplane { .. } => Some(ClosedForm::Alpha),
        PsiSpec::Cardioid => Some(ClosedForm::Cardioid),
        PsiSpec::Lemniscate => Some(ClosedForm::Lemniscate),
        _ => None,
    }
}

/// Builds `f0` for `spec` to order `n >= 8`.
pub fn build_extremal(spec: &PsiSpec, n: usize) -> Result<ExtremalFunction> {
    if n < MIN_ORDER {
        return Err(Error::Precondition(format!("extremal order must be at least {MIN_ORDER}, got {n}")));
    }
    spec.validate()?;
    Ok(ExtremalFunction {
        series: extremal_series(spec, n),
        check: extremal_series(spec, 2 * n),
        spec: *spec,
        closed_form: closed_form_tag(spec),
    })
}

impl ExtremalFunction {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficient `t_n` of `z^n`.
    pub fn t(&self, n: usize) -> f64 {
        self.series.coeff(n).re
    }

    /// Whether every computed `t_n` is strictly positive.
    pub fn coefficients_positive(&self) -> bool {
        (1..=self.order()).all(|n| self.t(n) > 0.0)
    }

    /// Closed-form `f0(z)` when the generator has one.
    pub fn closed_form_value(&self, z: Complex64) -> Option<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let v = match (self.closed_form?, self.spec) {
            (ClosedForm::Koebe, _) => z / ((one - z) * (one - z)),
            (ClosedForm::Janowski, PsiSpec::Janowski { d, e }) if e == 0.0 => z * (z * d).exp(),
            (ClosedForm::Janowski, PsiSpec::Janowski { d, e }) => z * ((one + z * e).ln() * ((d - e) / e)).exp(),
            (ClosedForm::Alpha, PsiSpec::AlphaHalfplane { alpha }) => z * ((one - z).ln() * (-2.0 * (1.0 - alpha))).exp(),
            (ClosedForm::Cardioid, _) => z * (z.exp() - one).exp(),
            (ClosedForm::Lemniscate, _) => {
                let s = (one + z).sqrt();
                z * 4.0 * (s * 2.0 - 2.0).exp() / ((one + s) * (one + s))
            }
            _ => return None,
        };
        Some(v)
    }

    /// `f0(z)`, from the closed form when tagged, otherwise from the series
    /// with the order-doubling check.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        if let Some(v) = self.closed_form_value(z) {
            return Ok(v);
        }
        let (a, b) = (self.series.eval(z), self.check.eval(z));
        let delta = (a - b).norm();
        if !(delta < CONVERGENCE_TOL) {
            return Err(NumericsError::TruncationNotConverged { r: z.norm(), delta }.into());
        }
        Ok(b)
    }

    /// `r + sum |t_n| r^n`, certified against the doubled truncation.
    pub fn majorant(&self, r: f64) -> Result<f64> {
        let (a, b) = (self.series.abs_eval(r), self.check.abs_eval(r));
        let delta = (a - b).abs();
        if !(delta < CONVERGENCE_TOL) {
            return Err(NumericsError::TruncationNotConverged { r, delta }.into());
        }
        Ok(b)
    }
}

/// `f0_hat(r) = r + sum |t_n| r^n`.
pub fn majorant_eval(f0: &ExtremalFunction, r: f64) -> Result<f64> {
    f0.majorant(r)
}

/// Closed-form Koebe radius `-f0(-1)` where known.
pub fn koebe_radius_closed_form(spec: &PsiSpec) -> Option<f64> {
    match *spec {
        PsiSpec::Janowski { d, e } if e == 0.0 => Some((-d).exp()),
        PsiSpec::Janowski { d, e } => Some((1.0 - e).powf((d - e) / e)),
        PsiSpec::AlphaHalfplane { alpha } => Some(2f64.powf(-2.0 * (1.0 - alpha))),
        PsiSpec::Cardioid => Some((1.0 / std::f64::consts::E - 1.0).exp()),
        PsiSpec::Lemniscate => Some(4.0 * (-2f64).exp()),
        _ => None,
    }
}

/// `exp(int_0^1 (psi(-u) - 1)/u du)` by adaptive Simpson.
///
/// The substitution `u = 1 - s^2` smooths square-root behaviour at `u = 1`.
pub fn koebe_radius_quadrature(spec: &PsiSpec) -> Result<f64> {
    let b1 = spec.taylor(1)[0];
    let g = |u: f64| {
        if u <= 0.0 {
            -b1
        } else {
            (spec.jet(Complex64::new(-u, 0.0)).v.re - 1.0) / u
        }
    };
    let integral = adaptive_simpson(|s| 2.0 * s * g(1.0 - s * s), 0.0, 1.0, QUADRATURE_TOL, QUADRATURE_DEPTH)?;
    Ok(integral.exp())
}

/// Koebe radius `r*`: closed form when available, quadrature otherwise.
pub fn koebe_radius(spec: &PsiSpec) -> Result<f64> {
    spec.validate()?;
    match koebe_radius_closed_form(spec) {
        Some(r) => Ok(r),
        None => koebe_radius_quadrature(spec),
    }
}

/// `t_n` of the Janowski extremal `z (1 + E z)^((D - E)/E)`:
/// `prod_{k=1}^{n-1} (D - k E) / (n - 1)!`.
pub fn janowski_tn(d: f64, e: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut t = 1.0;
    for k in 1..n {
        t *= (d - k as f64 * e) / k as f64;
    }
    t
}

/// The product `prod_{k=2}^{upper} (D - (k-1)E) / (k-1)!` as it is
/// sometimes printed for `t_n`. It does not depend on `n` at all.
pub fn janowski_tn_printed(d: f64, e: f64, upper: usize) -> f64 {
    let mut t = 1.0;
    let mut fact = 1.0;
    for k in 2..=upper {
        fact *= (k - 1) as f64;
        t *= (d - (k - 1) as f64 * e) / fact;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koebe_coefficients() {
        let f0 = build_extremal(&PsiSpec::Janowski { d: 1.0, e: -1.0 }, 64).unwrap();
        for n in 1..=64 {
            assert!((f0.t(n) - n as f64).abs() < 1e-12);
        }
        assert_eq!(f0.closed_form, Some(ClosedForm::Koebe));
        assert!((f0.majorant(1.0 / 3.0).unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(f0.majorant(0.0).unwrap(), 0.0);
    }

    #[test]
    fn cardioid_coefficients_and_majorant() {
        let f0 = build_extremal(&PsiSpec::Cardioid, 64).unwrap();
        assert!((f0.t(2) - 1.0).abs() < 1e-15);
        // exp(e^z - 1) = 1 + z + z^2 + 5z^3/6 + ...
        assert!((f0.t(3) - 1.0).abs() < 1e-15);
        assert!((f0.t(4) - 5.0 / 6.0).abs() < 1e-15);
        let r: f64 = 1.0 / 3.0;
        let expected = r * (r.exp() - 1.0).exp();
        assert!((f0.majorant(r).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.495098).abs() < 1e-6);
    }

    #[test]
    fn janowski_binomial_coefficients() {
        let (d, e) = (0.7, -0.4);
        let f0 = build_extremal(&PsiSpec::Janowski { d, e }, 32).unwrap();
        for n in 1..=32 {
            assert!((f0.t(n) - janowski_tn(d, e, n)).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn koebe_radius_closed_forms_match_quadrature() {
        for spec in [
            PsiSpec::Janowski { d: 1.0, e: -1.0 },
            PsiSpec::Janowski { d: 0.6, e: 0.0 },
            PsiSpec::Janowski { d: 0.5, e: -0.5 },
            PsiSpec::AlphaHalfplane { alpha: 0.3 },
            PsiSpec::Cardioid,
            PsiSpec::Lemniscate,
        ] {
            let closed = koebe_radius_closed_form(&spec).unwrap();
            let quad = koebe_radius_quadrature(&spec).unwrap();
            assert!((closed - quad).abs() < 1e-10, "{spec}: {closed} vs {quad}");
        }
        assert!((koebe_radius(&PsiSpec::Cardioid).unwrap() - 0.531464).abs() < 1e-6);
        assert!((koebe_radius(&PsiSpec::Lemniscate).unwrap() - 0.541341).abs() < 1e-6);
        assert!((koebe_radius(&PsiSpec::Janowski { d: 1.0, e: -1.0 }).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn every_catalog_koebe_radius_is_finite() {
        for spec in PsiSpec::catalog() {
            let r = koebe_radius(&spec).unwrap();
            assert!(r > 0.0 && r < 1.0, "{spec}: {r}");
        }
    }

    #[test]
    fn closed_forms_agree_with_series() {
        let z = Complex64::new(-0.3, 0.2);
        for spec in [
            PsiSpec::Janowski { d: 0.5, e: -0.5 },
            PsiSpec::Janowski { d: 0.8, e: 0.0 },
            PsiSpec::AlphaHalfplane { alpha: 0.25 },
            PsiSpec::Cardioid,
            PsiSpec::Lemniscate,
        ] {
            let f0 = build_extremal(&spec, 64).unwrap();
            let closed = f0.closed_form_value(z).unwrap();
            assert!((closed - f0.series.eval(z)).norm() < 1e-12, "{spec}");
        }
    }

    #[test]
    fn truncation_error_is_reported() {
        let f0 = build_extremal(&PsiSpec::Sine, 8).unwrap();
        assert!(matches!(
            f0.majorant(0.99),
            Err(Error::Numerics(NumericsError::TruncationNotConverged { .. }))
        ));
        assert!(build_extremal(&PsiSpec::Sine, 4).is_err());
    }

    #[test]
    fn printed_product_ignores_n() {
        let a = janowski_tn_printed(1.0, -1.0, 60);
        assert!(a.abs() < 1e-12);
        assert!((janowski_tn(1.0, -1.0, 5) - 5.0).abs() < 1e-12);
    }
}

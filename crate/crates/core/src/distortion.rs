//! Distortion bounds for `S*(psi)`:
//! `min|psi| (-f0(-r)/r) <= |f'(z)| <= (f0(r)/r) max|psi|` on `|z| = r`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{build_extremal, ExtremalFunction};
use crate::numerics::{circle_extremum, ExtremumMode};
use crate::psi::PsiSpec;
use crate::series::DEFAULT_ORDER;

/// Radius below which the cardioid attains `min |psi|` on the negative axis.
pub fn cardioid_transition_radius() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistortionRow {
    pub r: f64,
    pub theta1: f64,
    pub min_mod: f64,
    /// `m(r, theta1) = min_mod * (-f0(-r)/r)`.
    pub lower: f64,
    pub upper: f64,
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::ParameterOutOfRange(format!("radius must lie in (0, 1], got {r}")));
    }
    Ok(())
}

fn modulus_on_circle(spec: &PsiSpec, r: f64) -> impl Fn(f64) -> f64 + '_ {
    move |theta| match spec.eval(Complex64::from_polar(r, theta)) {
        Ok(w) => w.norm(),
        Err(_) => f64::INFINITY,
    }
}

/// `(theta1, min_{|z|=r} |psi(z)|)` with `theta1` in `[0, pi]`.
pub fn min_mod_psi(spec: &PsiSpec, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    spec.validate()?;
    let m = circle_extremum(modulus_on_circle(spec, r), r, ExtremumMode::Min, true);
    Ok((m.theta, m.value))
}

/// `(theta2, max_{|z|=r} |psi(z)|)` with `theta2` in `[0, pi]`.
pub fn max_mod_psi(spec: &PsiSpec, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    spec.validate()?;
    let m = circle_extremum(modulus_on_circle(spec, r), r, ExtremumMode::Max, true);
    Ok((m.theta, m.value))
}

/// Closed-form `|1 + z e^z|` at `z = r e^{i theta}`.
pub fn cardioid_mod_formula(r: f64, theta: f64) -> f64 {
    let a = r * (r * theta.cos()).exp();
    (1.0 + a * (a + 2.0 * (theta + r * theta.sin()).cos())).sqrt()
}

fn bounds_with(f0: &ExtremalFunction, spec: &PsiSpec, r: f64) -> Result<DistortionRow> {
    let (theta1, min_mod) = min_mod_psi(spec, r)?;
    let (_, max_mod) = max_mod_psi(spec, r)?;
    let minus = f0.value(Complex64::new(-r, 0.0))?.re;
    let plus = f0.value(Complex64::new(r, 0.0))?.re;
    Ok(DistortionRow { r, theta1, min_mod, lower: min_mod * (-minus / r), upper: plus / r * max_mod })
}

/// `(lower, upper)` bounds on `|f'(z)|` for `|z| = r`.
pub fn distortion_bounds(spec: &PsiSpec, r: f64) -> Result<(f64, f64)> {
    let f0 = build_extremal(spec, DEFAULT_ORDER)?;
    let row = bounds_with(&f0, spec, r)?;
    Ok((row.lower, row.upper))
}

/// One row per radius.
pub fn distortion_table(spec: &PsiSpec, radii: &[f64]) -> Result<Vec<DistortionRow>> {
    let f0 = build_extremal(spec, DEFAULT_ORDER)?;
    radii.iter().map(|&r| bounds_with(&f0, spec, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn cardioid_rows() {
        let (t, m) = min_mod_psi(&PsiSpec::Cardioid, 0.5).unwrap();
        assert!((t - 2.58169).abs() < 1e-3 && (m - 0.693287).abs() < 1e-4);
        let (t, m) = min_mod_psi(&PsiSpec::Cardioid, 0.3).unwrap();
        assert_eq!(t, PI);
        assert!((m - (1.0 - 0.3 * (-0.3f64).exp())).abs() < 1e-12);
        let (lower, upper) = distortion_bounds(&PsiSpec::Cardioid, 0.5).unwrap();
        assert!((lower - 0.467769).abs() < 1e-4);
        let expected = (0.5f64.exp() - 1.0).exp() * (1.0 + 0.5 * 0.5f64.exp());
        assert!((upper - expected).abs() < 1e-10);
    }

    #[test]
    fn koebe_bounds() {
        let (lower, upper) = distortion_bounds(&PsiSpec::Janowski { d: 1.0, e: -1.0 }, 0.5).unwrap();
        assert!((lower - 0.5 / 3.375).abs() < 1e-12);
        assert!((upper - 1.5 / 0.125).abs() < 1e-10);
    }

    #[test]
    fn cardioid_formula_matches_evaluator() {
        assert!((cardioid_mod_formula(1.0, 0.0) - (1.0 + E)).abs() < 1e-14);
        assert!((cardioid_mod_formula(1.0, PI) - (1.0 - 1.0 / E)).abs() < 1e-14);
        for j in 0..1000 {
            let (r, t) = (0.001 * j as f64, 0.0063 * j as f64);
            let w = PsiSpec::Cardioid.eval(Complex64::from_polar(r, t)).unwrap();
            assert!((w.norm() - cardioid_mod_formula(r, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn radius_is_checked() {
        assert!(min_mod_psi(&PsiSpec::Cardioid, 0.0).is_err());
        assert!(distortion_bounds(&PsiSpec::Cardioid, 1.5).is_err());
    }
}

//! Radius constants.
//!
//! * `F(z) = z(1+z)/(1-z)^3 = z + sum n^2 z^n`: the largest `r` with
//!   `zF'/F(|z| = r)` inside `psi(D)`, which bounds the radius of `f * g`.
//! * `H(z) = z/((1 - qz)(1 - z))`: the same for the Jackson `q`-derivative.
//! * Sections `g_k = z + ... + z^k`.
//! * The radius of convexity `r_c` of `psi` itself.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{circle_extremum, radius_by_bisection, ExtremumMode, RadiusMethod, RadiusResult};
use crate::psi::PsiSpec;
use crate::region::{spec_region, Region};
use crate::series::TruncatedSeries;

/// Bisection tolerance for every radius in this module.
pub const RADIUS_TOL: f64 = 1e-12;
/// Radii this close to 1 that still satisfy the predicate are reported as 1.
pub const UNIT_EDGE: f64 = 1e-9;
const SCAN_CELLS: usize = 32;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RadiusFamily {
    FFunction,
    HFunction { q: f64 },
    Section { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionVariant {
    Convexity,
    Starlike,
}

/// `zF'/F = (1 + 4z + z^2)/(1 - z^2)`.
pub fn f_quotient(z: Complex64) -> Complex64 {
    (ONE + z * 4.0 + z * z) / (ONE - z * z)
}

/// `zH'/H = 1 + z/(1 - z) + qz/(1 - qz)`.
pub fn h_quotient(z: Complex64, q: f64) -> Complex64 {
    ONE + z / (ONE - z) + z * q / (ONE - z * q)
}

/// Lower bound `(1 - 4r + r^2)/(1 - r^2)` on `Re zF'/F`.
pub fn f_re_lower_bound(r: f64) -> f64 {
    (1.0 - 4.0 * r + r * r) / (1.0 - r * r)
}

/// Upper bound `2r(2 + r)/(1 - r^2)` on `|zF'/F - 1|`.
pub fn f_dev_upper_bound(r: f64) -> f64 {
    2.0 * r * (2.0 + r) / (1.0 - r * r)
}

/// Disk `|w - (1 + r^2)/(1 - r^2)| <= 4r/(1 - r^2)` containing `zF'/F`.
pub fn f_disk(r: f64) -> (f64, f64) {
    ((1.0 + r * r) / (1.0 - r * r), 4.0 * r / (1.0 - r * r))
}

/// Lower bound `(1 - q r^2)/((1 + r)(1 + q r))` on `Re zH'/H`.
pub fn h_re_lower_bound(r: f64, q: f64) -> f64 {
    (1.0 - q * r * r) / ((1.0 + r) * (1.0 + q * r))
}

/// Upper bound `r(1 + q - 2qr)/((1 - r)(1 - qr))` on `|zH'/H - 1|`.
pub fn h_dev_upper_bound(r: f64, q: f64) -> f64 {
    r * (1.0 + q - 2.0 * q * r) / ((1.0 - r) * (1.0 - q * r))
}

/// `min_{|z| = r} margin(quotient(z))` for a real-symmetric quotient.
pub fn circle_margin(region: &Region, quotient: impl Fn(Complex64) -> Complex64, r: f64) -> f64 {
    let obj = |theta: f64| region.signed_margin(quotient(Complex64::from_polar(r, theta)));
    circle_extremum(obj, r, ExtremumMode::Min, true).value
}

/// First `r` where `margin` turns non-positive: a coarse upward scan, then
/// bisection inside the first failing cell.
fn solve_radius(margin: impl Fn(f64) -> f64) -> Result<RadiusResult> {
    let top = 1.0 - UNIT_EDGE;
    let mut lo = 0.0;
    for i in 1..=SCAN_CELLS {
        let r = top * i as f64 / SCAN_CELLS as f64;
        if margin(r) <= 0.0 {
            return Ok(radius_by_bisection(|r| margin(r) > 0.0, lo, r, RADIUS_TOL)?);
        }
        lo = r;
    }
    Ok(RadiusResult::exact(1.0, RadiusMethod::ClosedForm))
}

/// Signed margin of `zF'/F` on `|z| = r` against `psi(D)`.
pub fn f_margin(spec: &PsiSpec, r: f64) -> Result<f64> {
    let region = spec_region(spec)?;
    Ok(circle_margin(&region, f_quotient, r))
}

/// Signed margin of `zH'/H` on `|z| = r` against `psi(D)`.
pub fn h_margin(spec: &PsiSpec, q: f64, r: f64) -> Result<f64> {
    check_q(q)?;
    let region = spec_region(spec)?;
    Ok(circle_margin(&region, |z| h_quotient(z, q), r))
}

/// Radius of convexity of `psi`: largest `r` with
/// `min_{|z| = r} Re(1 + z psi''/psi') > 0`.
pub fn convexity_radius(spec: &PsiSpec) -> Result<RadiusResult> {
    spec.validate()?;
    let margin = |r: f64| {
        let obj = |t: f64| spec.convexity_quotient(Complex64::from_polar(r, t)).re;
        circle_extremum(obj, r, ExtremumMode::Min, true).value
    };
    let res = solve_radius(margin)?;
    let closed = match spec {
        PsiSpec::Cardioid => Some((3.0 - 5f64.sqrt()) / 2.0),
        _ if spec.is_convex() => Some(1.0),
        _ => None,
    };
    Ok(res.with_cross_check(closed))
}

/// Closed-form radius for `F` where one is known.
pub fn f_radius_closed_form(spec: &PsiSpec) -> Option<f64> {
    let e = std::f64::consts::E;
    let from_dev = |b: f64| (-2.0 + (4.0 + b * (2.0 + b)).sqrt()) / (2.0 + b);
    match *spec {
        PsiSpec::AlphaHalfplane { alpha } => Some((2.0 - (3.0 + alpha * alpha).sqrt()) / (1.0 + alpha)),
        PsiSpec::Janowski { d, e } if e == -1.0 => {
            let alpha = (1.0 - d) / 2.0;
            Some((2.0 - (3.0 + alpha * alpha).sqrt()) / (1.0 + alpha))
        }
        PsiSpec::Lemniscate => Some((-2.0 + 5f64.sqrt()) / (1.0 + 2f64.sqrt())),
        PsiSpec::Sigmoid => Some(from_dev((e - 1.0) / (e + 1.0))),
        PsiSpec::PowerHalfplane { gamma } => {
            let b = (PI * gamma / 2.0).sin();
            Some((2.0 - (4.0 - b * b).sqrt()) / b)
        }
        PsiSpec::Cardioid => Some((2.0 * e - (4.0 * e * e - 2.0 * e + 1.0).sqrt()) / (2.0 * e - 1.0)),
        PsiSpec::Sine => Some(from_dev(1f64.sin())),
        _ => None,
    }
}

/// Largest `r` with `zF'/F(|z| < r)` in `psi(D)`; for non-convex `psi` the
/// result is capped by the radius of convexity of `psi`.
pub fn f_radius(spec: &PsiSpec) -> Result<RadiusResult> {
    let region = spec_region(spec)?;
    let res = solve_radius(|r| circle_margin(&region, f_quotient, r))?;
    let res = if spec.is_convex() {
        res
    } else {
        let rc = convexity_radius(spec)?;
        if rc.value < res.value {
            rc
        } else {
            res
        }
    };
    Ok(res.with_cross_check(f_radius_closed_form(spec)))
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("q must lie in (0, 1), got {q}")));
    }
    Ok(())
}

/// `(1 - q)/(2(1 + q))`: at or below this `alpha` the `H` radius is 1.
pub fn h_alpha_threshold(q: f64) -> f64 {
    (1.0 - q) / (2.0 * (1.0 + q))
}

/// Root of `(1 - q r^2) = alpha (1 + r)(1 + q r)`:
/// `[-alpha(1 + q) + sqrt(alpha^2 (1 - q)^2 + 4q)] / (2q(1 + alpha))`.
pub fn h_radius_alpha_closed_form(alpha: f64, q: f64) -> f64 {
    if alpha <= h_alpha_threshold(q) {
        return 1.0;
    }
    (-alpha * (1.0 + q) + (alpha * alpha * (1.0 - q).powi(2) + 4.0 * q).sqrt()) / (2.0 * q * (1.0 + alpha))
}

/// The same root with the discriminant written `alpha^2 (1 - q^2) + 4q`.
pub fn h_radius_alpha_printed(alpha: f64, q: f64) -> f64 {
    ((alpha * alpha * (1.0 - q * q) + 4.0 * q).sqrt() - alpha * (q + 1.0)) / (2.0 * q * (1.0 + alpha))
}

/// Root of `h_dev_upper_bound(r, q) = b`.
fn h_dev_root(b: f64, q: f64) -> f64 {
    let s = (1.0 + q) * (1.0 + b);
    (s - (s * s - 4.0 * b * q * (2.0 + b)).sqrt()) / (2.0 * q * (2.0 + b))
}

pub fn h_radius_closed_form(spec: &PsiSpec, q: f64) -> Option<f64> {
    let e = std::f64::consts::E;
    match *spec {
        PsiSpec::AlphaHalfplane { alpha } => Some(h_radius_alpha_closed_form(alpha, q)),
        PsiSpec::Janowski { d, e } if e == -1.0 => Some(h_radius_alpha_closed_form((1.0 - d) / 2.0, q)),
        PsiSpec::Lemniscate => Some(((1.0 + q) - (1.0 + q * q).sqrt()) / (q * 2f64.sqrt() * (2f64.sqrt() + 1.0))),
        PsiSpec::Sigmoid => Some(h_dev_root((e - 1.0) / (e + 1.0), q)),
        _ => None,
    }
}

/// Largest `r` with `zH'/H(|z| < r)` in `psi(D)`.
pub fn h_radius(spec: &PsiSpec, q: f64) -> Result<RadiusResult> {
    check_q(q)?;
    let region = spec_region(spec)?;
    let res = solve_radius(|r| circle_margin(&region, |z| h_quotient(z, q), r))?;
    Ok(res.with_cross_check(h_radius_closed_form(spec, q)))
}

/// `g_k = z + z^2 + ... + z^k` with its first two derivatives.
fn section_series(k: usize) -> (TruncatedSeries, TruncatedSeries, TruncatedSeries) {
    let g = TruncatedSeries::from_fn(k, |n| if n == 0 { Complex64::default() } else { ONE });
    let g1 = g.derive();
    let g2 = g1.derive();
    (g, g1, g2)
}

/// Radius of convexity of `g_k`, or its radius of starlikeness with
/// respect to `psi`.
pub fn section_radius(k: usize, spec: &PsiSpec, variant: SectionVariant) -> Result<RadiusResult> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange("section index k must be at least 1".into()));
    }
    spec.validate()?;
    let (g, g1, g2) = section_series(k);
    match variant {
        SectionVariant::Convexity => {
            let region = Region::half_plane(0.0);
            solve_radius(|r| circle_margin(&region, |z| ONE + z * g2.eval(z) / g1.eval(z), r))
        }
        SectionVariant::Starlike => {
            let region = spec_region(spec)?;
            let g_over_z = g.shift_down(1)?;
            solve_radius(|r| circle_margin(&region, |z| g1.eval(z) / g_over_z.eval(z), r))
        }
    }
}

/// `[n]_q = (1 - q^n)/(1 - q)`.
pub fn q_number(n: usize, q: f64) -> f64 {
    (0..n).map(|j| q.powi(j as i32)).sum()
}

/// `z d_q f(z) = z + sum [n]_q a_n z^n`.
pub fn q_transform(f: &TruncatedSeries, q: f64) -> Result<TruncatedSeries> {
    check_q(q)?;
    Ok(f.weighted(|n| Complex64::new(q_number(n, q), 0.0)))
}

/// Taylor series of `z/((1 - qz)(1 - z)) = sum [n]_q z^n`.
pub fn h_series(q: f64, n: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(n, |k| Complex64::new(q_number(k, q), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_f_radius() {
        let res = f_radius(&PsiSpec::AlphaHalfplane { alpha: 0.0 }).unwrap();
        assert!((res.value - (2.0 - 3f64.sqrt())).abs() < 1e-10);
        assert!((res.cross_check.unwrap() - res.value).abs() < 1e-10);
        assert!(res.bracket.0 <= res.value && res.value <= res.bracket.1);
    }

    #[test]
    fn bound_identities() {
        for &r in &[0.1, 0.3, 0.5] {
            let re_min = circle_extremum(|t| f_quotient(Complex64::from_polar(r, t)).re, r, ExtremumMode::Min, true);
            assert!((re_min.value - f_re_lower_bound(r)).abs() < 1e-9);
            let dev = circle_extremum(|t| (f_quotient(Complex64::from_polar(r, t)) - ONE).norm(), r, ExtremumMode::Max, true);
            assert!((dev.value - f_dev_upper_bound(r)).abs() < 1e-9);
        }
    }

    #[test]
    fn cardioid_convexity_radius() {
        let res = convexity_radius(&PsiSpec::Cardioid).unwrap();
        assert!((res.value - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert_eq!(convexity_radius(&PsiSpec::Lemniscate).unwrap().value, 1.0);
    }

    #[test]
    fn h_radius_alpha() {
        let res = h_radius(&PsiSpec::AlphaHalfplane { alpha: 0.5 }, 0.5).unwrap();
        assert!((res.value - 0.457427).abs() < 1e-6);
        assert!((h_radius_alpha_closed_form(0.5, 0.5) - res.value).abs() < 1e-10);
        assert!((h_radius_alpha_printed(0.5, 0.5) - 0.486013).abs() < 1e-6);
        let one = h_radius(&PsiSpec::AlphaHalfplane { alpha: 0.1 }, 0.5).unwrap();
        assert_eq!(one.value, 1.0);
        assert_eq!(one.method, RadiusMethod::ClosedForm);
        assert!(h_radius(&PsiSpec::Lemniscate, 1.0).is_err());
    }

    #[test]
    fn lemniscate_h_radius() {
        let q = 0.5;
        let res = h_radius(&PsiSpec::Lemniscate, q).unwrap();
        assert!((h_dev_upper_bound(res.value, q) - (2f64.sqrt() - 1.0)).abs() < 1e-7);
        assert!((res.cross_check.unwrap() - res.value).abs() < 1e-7);
    }

    #[test]
    fn sections() {
        let any = PsiSpec::Janowski { d: 1.0, e: -1.0 };
        assert_eq!(section_radius(1, &any, SectionVariant::Convexity).unwrap().value, 1.0);
        assert!((section_radius(2, &any, SectionVariant::Convexity).unwrap().value - 0.25).abs() < 1e-10);
        assert!((section_radius(2, &any, SectionVariant::Starlike).unwrap().value - 0.5).abs() < 1e-10);
        assert!(section_radius(0, &any, SectionVariant::Starlike).is_err());
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_number(1, 0.3), 1.0);
        assert_eq!(q_number(2, 0.5), 1.5);
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        let g = q_transform(&f, 0.5).unwrap();
        assert_eq!(g.coeff(2).re, 1.5);
        assert!(q_transform(&f, 1.0).is_err());
    }
}

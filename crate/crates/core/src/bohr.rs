//! Bohr radii for the class of functions subordinate to members of
//! `S*(psi)`.
//!
//! With `r*` the Koebe radius and `f0_hat(r) = r + sum |t_n| r^n`, the Bohr
//! radius is `r_b = min(r0, 1/3)` where `r0` is the least positive root of
//! `f0_hat(r) = r*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, NumericsError, Result};
use crate::extremal::{build_extremal, koebe_radius, ExtremalFunction};
use crate::numerics::find_root_bracketed;
use crate::psi::PsiSpec;

pub const MIN_BOHR_ORDER: usize = 32;
/// Order used when the requested one fails to converge before the root.
pub const ESCALATED_ORDER: usize = 256;
const SCAN_STEP: f64 = 0.01;
const SCAN_MAX: f64 = 0.999;
const ROOT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BohrResult {
    pub r_star: f64,
    pub r0: f64,
    pub r_b: f64,
    /// `r_b = r0` and every `t_n > 0`.
    pub sharp_flag: bool,
    /// Whether every computed `t_n` is positive, i.e. `f0_hat = f0`.
    pub coefficients_positive: bool,
}

impl BohrResult {
    fn new(r_star: f64, r0: f64, coefficients_positive: bool) -> Self {
        let r_b = r0.min(1.0 / 3.0);
        Self { r_star, r0, r_b, sharp_flag: r0 <= 1.0 / 3.0 && coefficients_positive, coefficients_positive }
    }
}

/// Scans upward for the first sign change of `f0_hat(r) - r*`, then refines
/// it with Brent's method.
fn majorant_root(f0: &ExtremalFunction, r_star: f64) -> Result<f64> {
    let g = |r: f64| f0.majorant(r).map(|m| m - r_star);
    let mut lo = 0.0;
    let mut k = 1;
    loop {
        let hi = (k as f64 * SCAN_STEP).min(SCAN_MAX);
        let g_hi = g(hi)?;
        if g_hi >= 0.0 {
            let root = find_root_bracketed(|r| g(r).unwrap_or(f64::NAN), lo, hi, ROOT_TOL)?;
            return Ok(root);
        }
        if hi >= SCAN_MAX {
            return Err(NumericsError::NoSignChange { lo: 0.0, hi, f_lo: -r_star, f_hi: g_hi }.into());
        }
        lo = hi;
        k += 1;
    }
}

/// Bohr radius from the series majorant of the extremal function.
pub fn bohr_radius(spec: &PsiSpec, order: usize) -> Result<BohrResult> {
    if order < MIN_BOHR_ORDER {
        return Err(Error::Precondition(format!("Bohr order must be at least {MIN_BOHR_ORDER}, got {order}")));
    }
    let r_star = koebe_radius(spec)?;
    let f0 = build_extremal(spec, order)?;
    let (f0, r0) = match majorant_root(&f0, r_star) {
        Ok(r0) => (f0, r0),
        Err(Error::Numerics(NumericsError::TruncationNotConverged { .. } | NumericsError::NoSignChange { .. }))
            if order < ESCALATED_ORDER =>
        {
            let f0 = build_extremal(spec, ESCALATED_ORDER)?;
            let r0 = majorant_root(&f0, r_star)?;
            (f0, r0)
        }
        Err(e) => return Err(e),
    };
    Ok(BohrResult::new(r_star, r0, f0.coefficients_positive()))
}

/// Koebe radius of the Janowski class, `(1 - E)^((D - E)/E)` or `e^{-D}`.
pub fn janowski_koebe_radius(d: f64, e: f64) -> f64 {
    if e == 0.0 {
        (-d).exp()
    } else {
        (1.0 - e).powf((d - e) / e)
    }
}

/// `r0` condition: `r0 <= 1/3`, written in closed form.
pub fn janowski_sharp_condition(d: f64, e: f64) -> bool {
    if e == 0.0 {
        d >= 0.75 * 3f64.ln()
    } else {
        let x = (d - e) / e;
        3.0 * (1.0 - e).powf(x) <= (1.0 + e / 3.0).powf(x)
    }
}

/// Bohr radius of the Janowski class from its closed-form equation
/// `r* = f0(r)`.
pub fn bohr_janowski(d: f64, e: f64) -> Result<BohrResult> {
    let spec = PsiSpec::janowski(d, e)?;
    let r_star = janowski_koebe_radius(d, e);
    let eq = |r: f64| {
        if e == 0.0 {
            1.0 - r * (d * (1.0 + r)).exp()
        } else {
            r_star - r * (1.0 + e * r).powf((d - e) / e)
        }
    };
    let r0 = find_root_bracketed(eq, 0.0, 1.0 - 1e-12, ROOT_TOL)?;
    let positive = build_extremal(&spec, 64)?.coefficients_positive();
    let mut res = BohrResult::new(r_star, r0, positive);
    res.sharp_flag = janowski_sharp_condition(d, e) && positive;
    Ok(res)
}

/// `r0` for `alpha_halfplane(alpha)`: root of
/// `(1 - r)^{2(1-alpha)} / r = 2^{2(1-alpha)}`.
pub fn bohr_alpha_r0(alpha: f64) -> Result<f64> {
    PsiSpec::alpha_halfplane(alpha)?;
    let p = 2.0 * (1.0 - alpha);
    let g = |r: f64| (1.0 - r).powf(p) - r * 2f64.powf(p);
    Ok(find_root_bracketed(g, 0.0, 1.0, ROOT_TOL)?)
}

/// Roots in `(0, 1)` of `r e^{e^r} = e^{1/e}` (cardioid) and
/// `e^2 r exp(2 sqrt(1+r) - 2) = (1 + sqrt(1+r))^2` (lemniscate).
pub fn conjecture_roots() -> (f64, f64) {
    let card = |r: f64| r * r.exp().exp() - (1.0 / std::f64::consts::E).exp();
    let lem = |r: f64| {
        let s = (1.0 + r).sqrt();
        std::f64::consts::E.powi(2) * r * (2.0 * s - 2.0).exp() - (1.0 + s).powi(2)
    };
    let a = find_root_bracketed(card, 0.0, 1.0, ROOT_TOL).expect("sign change on [0, 1]");
    let b = find_root_bracketed(lem, 0.0, 1.0, ROOT_TOL).expect("sign change on [0, 1]");
    (a, b)
}

//! Catalog of Ma-Minda generators `psi`.
//!
//! Every entry is analytic and univalent in the unit disk with `psi(0) = 1`,
//! `psi'(0) > 0`, real Taylor coefficients and an image in the right
//! half-plane.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PsiError;
use crate::jet::Jet2;
use crate::series::TruncatedSeries;

/// Evaluation is allowed up to this far outside the closed unit disk.
pub const DISK_SLACK: f64 = 1e-9;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum PsiSpec {
    /// `(1 + D z) / (1 + E z)`, `-1 <= E < D <= 1`.
    Janowski { d: f64, e: f64 },
    /// `(1 + (1 - 2 alpha) z) / (1 - z)`.
    AlphaHalfplane { alpha: f64 },
    /// `sqrt(1 + z)`.
    Lemniscate,
    /// `1 + z e^z`.
    Cardioid,
    /// `1 + sin z`.
    Sine,
    /// `2 / (1 + e^{-z})`.
    Sigmoid,
    /// `((1 + z) / (1 - z))^gamma`.
    PowerHalfplane { gamma: f64 },
    /// `z + sqrt(1 + z^2)`.
    Crescent,
    /// `e^{lambda z}`.
    ExpLambda { lambda: f64 },
    /// `((1 + D z) / (1 + E z))^beta`.
    JanowskiPower { d: f64, e: f64, beta: f64 },
}

/// Optional numeric parameters used when resolving a spec by name.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PsiParams {
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    pub beta: Option<f64>,
}

fn out_of_range(msg: String) -> PsiError {
    PsiError::ParameterOutOfRange(msg)
}

fn check_janowski(d: f64, e: f64) -> Result<(), PsiError> {
    if !(d.is_finite() && e.is_finite() && -1.0 <= e && e < d && d <= 1.0) {
        return Err(out_of_range(format!("need -1 <= E < D <= 1, got D = {d}, E = {e}")));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64, closed_low: bool, closed_high: bool) -> Result<(), PsiError> {
    let low = if closed_low { x >= 0.0 } else { x > 0.0 };
    let high = if closed_high { x <= 1.0 } else { x < 1.0 };
    if !(x.is_finite() && low && high) {
        let l = if closed_low { '[' } else { '(' };
        let h = if closed_high { ']' } else { ')' };
        return Err(out_of_range(format!("{name} must lie in {l}0, 1{h}, got {x}")));
    }
    Ok(())
}

impl PsiSpec {
    pub fn janowski(d: f64, e: f64) -> Result<Self, PsiError> {
        check_janowski(d, e)?;
        Ok(Self::Janowski { d, e })
    }

    pub fn alpha_halfplane(alpha: f64) -> Result<Self, PsiError> {
        check_unit("alpha", alpha, true, false)?;
        Ok(Self::AlphaHalfplane { alpha })
    }

    pub fn power_halfplane(gamma: f64) -> Result<Self, PsiError> {
        check_unit("gamma", gamma, false, true)?;
        Ok(Self::PowerHalfplane { gamma })
    }

    pub fn exp_lambda(lambda: f64) -> Result<Self, PsiError> {
        check_unit("lambda", lambda, false, true)?;
        Ok(Self::ExpLambda { lambda })
    }

    pub fn janowski_power(d: f64, e: f64, beta: f64) -> Result<Self, PsiError> {
        check_janowski(d, e)?;
        check_unit("beta", beta, false, true)?;
        Ok(Self::JanowskiPower { d, e, beta })
    }

    /// Re-runs the constructor checks, for specs built from literals or
    /// deserialized input.
    pub fn validate(&self) -> Result<(), PsiError> {
        match *self {
            Self::Janowski { d, e } => check_janowski(d, e),
            Self::AlphaHalfplane { alpha } => check_unit("alpha", alpha, true, false),
            Self::PowerHalfplane { gamma } => check_unit("gamma", gamma, false, true),
            Self::ExpLambda { lambda } => check_unit("lambda", lambda, false, true),
            Self::JanowskiPower { d, e, beta } => {
                check_janowski(d, e)?;
                check_unit("beta", beta, false, true)
            }
            _ => Ok(()),
        }
    }

    /// Resolves a catalog name. Missing parameters fall back to the classical
    /// choice (`D = 1, E = -1`, `alpha = 0`, `gamma = 1`, `lambda = 1`,
    /// `beta = 1`).
    pub fn from_name(name: &str, p: &PsiParams) -> Result<Self, PsiError> {
        let key = name.trim().to_ascii_lowercase().replace('-', "_");
        match key.as_str() {
            "janowski" => Self::janowski(p.d.unwrap_or(1.0), p.e.unwrap_or(-1.0)),
            "alpha_halfplane" | "alpha" => Self::alpha_halfplane(p.alpha.unwrap_or(0.0)),
            "lemniscate" => Ok(Self::Lemniscate),
            "cardioid" => Ok(Self::Cardioid),
            "sine" => Ok(Self::Sine),
            "sigmoid" => Ok(Self::Sigmoid),
            "power_halfplane" | "power" => Self::power_halfplane(p.gamma.unwrap_or(1.0)),
            "crescent" => Ok(Self::Crescent),
            "exp_lambda" | "exp" => Self::exp_lambda(p.lambda.unwrap_or(1.0)),
            "janowski_power" => Self::janowski_power(p.d.unwrap_or(1.0), p.e.unwrap_or(-1.0), p.beta.unwrap_or(1.0)),
            _ => Err(PsiError::UnknownName(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Janowski { .. } => "janowski",
            Self::AlphaHalfplane { .. } => "alpha_halfplane",
            Self::Lemniscate => "lemniscate",
            Self::Cardioid => "cardioid",
            Self::Sine => "sine",
            Self::Sigmoid => "sigmoid",
            Self::PowerHalfplane { .. } => "power_halfplane",
            Self::Crescent => "crescent",
            Self::ExpLambda { .. } => "exp_lambda",
            Self::JanowskiPower { .. } => "janowski_power",
        }
    }

    /// One representative of every catalog entry.
    pub fn catalog() -> Vec<PsiSpec> {
        vec![
            Self::Janowski { d: 1.0, e: -1.0 },
            Self::Janowski { d: 0.5, e: -0.5 },
            Self::Janowski { d: 1.0, e: 0.0 },
            Self::Janowski { d: 0.8, e: 0.3 },
            Self::AlphaHalfplane { alpha: 0.5 },
            Self::Lemniscate,
            Self::Cardioid,
            Self::Sine,
            Self::Sigmoid,
            Self::PowerHalfplane { gamma: 0.5 },
            Self::Crescent,
            Self::ExpLambda { lambda: 0.7 },
            Self::JanowskiPower { d: 1.0, e: -1.0, beta: 0.5 },
            Self::JanowskiPower { d: 0.9, e: -0.4, beta: 0.7 },
        ]
    }

    /// `psi` with its first two derivatives at `z`, no domain checks.
    pub fn jet(&self, z: Complex64) -> Jet2 {
        let x = Jet2::variable(z);
        let one = Jet2::real(1.0);
        match *self {
            Self::Janowski { d, e } => (x * d + 1.0) / (x * e + 1.0),
            Self::AlphaHalfplane { alpha } => (x * (1.0 - 2.0 * alpha) + 1.0) / (one - x),
            Self::Lemniscate => (x + 1.0).sqrt(),
            Self::Cardioid => x * x.exp() + 1.0,
            Self::Sine => x.sin() + 1.0,
            Self::Sigmoid => (one + (-x).exp()).recip() * 2.0,
            Self::PowerHalfplane { gamma } => ((x + 1.0) / (one - x)).powf(gamma),
            Self::Crescent => x + (x * x + 1.0).sqrt(),
            Self::ExpLambda { lambda } => (x * lambda).exp(),
            Self::JanowskiPower { d, e, beta } => ((x * d + 1.0) / (x * e + 1.0)).powf(beta),
        }
    }

    /// Principal-branch value `psi(z)` for `|z| <= 1 + 1e-9`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, PsiError> {
        let modulus = z.norm();
        if !(modulus <= 1.0 + DISK_SLACK) {
            return Err(PsiError::OutsideDisk { modulus });
        }
        let w = self.jet(z).v;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(PsiError::BranchCutHit { z });
        }
        Ok(w)
    }

    /// `psi(z)` as a projective pair `(num, den)` with `psi = num / den`.
    ///
    /// Both parts stay finite on the closed disk, including the pole of the
    /// unbounded generators at `z = 1`.
    pub fn eval_homogeneous(&self, z: Complex64) -> (Complex64, Complex64) {
        match *self {
            Self::Janowski { d, e } => (ONE + z * d, ONE + z * e),
            Self::AlphaHalfplane { alpha } => (ONE + z * (1.0 - 2.0 * alpha), ONE - z),
            Self::PowerHalfplane { gamma } => (principal_pow(ONE + z, gamma), principal_pow(ONE - z, gamma)),
            Self::JanowskiPower { d, e, beta } => (principal_pow(ONE + z * d, beta), principal_pow(ONE + z * e, beta)),
            _ => (self.jet(z).v, ONE),
        }
    }

    /// `1 + z psi''(z) / psi'(z)`.
    pub fn convexity_quotient(&self, z: Complex64) -> Complex64 {
        let j = self.jet(z);
        ONE + z * j.d2 / j.d1
    }

    /// Taylor series of `psi` to order `n`.
    pub fn series(&self, n: usize) -> TruncatedSeries {
        let from_real = |f: &dyn Fn(usize) -> f64| TruncatedSeries::from_fn(n, |k| Complex64::new(f(k), 0.0));
        let z = TruncatedSeries::identity(n);
        // The compositions below all start from constant term 0 or 1, so the
        // transcendental operations cannot fail.
        let ok = |s: Result<TruncatedSeries, _>| s.expect("constant term fixed by construction");
        match *self {
            Self::Janowski { d, e } => from_real(&|k| if k == 0 { 1.0 } else { (d - e) * (-e).powi(k as i32 - 1) }),
            Self::AlphaHalfplane { alpha } => Self::Janowski { d: 1.0 - 2.0 * alpha, e: -1.0 }.series(n),
            Self::Lemniscate => ok((&TruncatedSeries::one(n) + &z).powf(0.5)),
            Self::Cardioid => &TruncatedSeries::one(n) + &(&z * &ok(z.exp())),
            Self::Sine => from_real(&|k| match k {
                0 => 1.0,
                k if k % 2 == 1 => {
                    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    sign / factorial(k)
                }
                _ => 0.0,
            }),
            Self::Sigmoid => {
                let denom = &TruncatedSeries::one(n) + &ok((-&z).exp());
                ok(TruncatedSeries::constant(Complex64::new(2.0, 0.0), n).div(&denom))
            }
            Self::PowerHalfplane { gamma } => {
                let log_ratio = from_real(&|k| if k % 2 == 1 { 2.0 * gamma / k as f64 } else { 0.0 });
                ok(log_ratio.exp())
            }
            Self::Crescent => &z + &ok((&TruncatedSeries::one(n) + &(&z * &z)).powf(0.5)),
            Self::ExpLambda { lambda } => from_real(&|k| lambda.powi(k as i32) / factorial(k)),
            Self::JanowskiPower { d, e, beta } => ok(Self::Janowski { d, e }.series(n).powf(beta)),
        }
    }

    /// `B_1..=B_n`, the Taylor coefficients of `psi - 1`.
    pub fn taylor(&self, n: usize) -> Vec<f64> {
        self.series(n).real_coeffs().into_iter().skip(1).collect()
    }

    /// Whether `psi(D)` is convex.
    pub fn is_convex(&self) -> bool {
        match self {
            Self::Cardioid | Self::Sine | Self::Crescent => false,
            Self::JanowskiPower { .. } => convex_by_scan(self),
            _ => true,
        }
    }

    /// Whether `psi(D)` is a bounded domain.
    pub fn is_bounded(&self) -> bool {
        match *self {
            Self::Janowski { e, .. } | Self::JanowskiPower { e, .. } => e > -1.0,
            Self::AlphaHalfplane { .. } | Self::PowerHalfplane { .. } => false,
            _ => true,
        }
    }

    /// `(t_j, psi(e^{i t_j}))` for `t_j = 2 pi j / samples`.
    ///
    /// For unbounded generators the pole is skipped; for bounded ones an
    /// undefined value is an error.
    pub fn boundary_samples(&self, samples: usize) -> Result<Vec<(f64, Complex64)>, PsiError> {
        if samples < 64 {
            return Err(PsiError::ParameterOutOfRange(format!("need at least 64 boundary samples, got {samples}")));
        }
        let bounded = self.is_bounded();
        let mut out = Vec::with_capacity(samples);
        for j in 0..samples {
            let t = 2.0 * PI * j as f64 / samples as f64;
            match self.eval(Complex64::from_polar(1.0, t)) {
                Ok(w) => out.push((t, w)),
                Err(_) if !bounded => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// `psi(e^{i t_j})`, `t_j = 2 pi j / samples`.
    pub fn boundary_curve(&self, samples: usize) -> Result<Vec<Complex64>, PsiError> {
        Ok(self.boundary_samples(samples)?.into_iter().map(|(_, w)| w).collect())
    }
}

impl fmt::Display for PsiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Janowski { d, e } => write!(f, "janowski(D={d}, E={e})"),
            Self::AlphaHalfplane { alpha } => write!(f, "alpha_halfplane(alpha={alpha})"),
            Self::PowerHalfplane { gamma } => write!(f, "power_halfplane(gamma={gamma})"),
            Self::ExpLambda { lambda } => write!(f, "exp_lambda(lambda={lambda})"),
            Self::JanowskiPower { d, e, beta } => write!(f, "janowski_power(D={d}, E={e}, beta={beta})"),
            _ => f.write_str(self.name()),
        }
    }
}

/// Principal `w^p`, with `0^p = 0`.
pub(crate) fn principal_pow(w: Complex64, p: f64) -> Complex64 {
    if w == Complex64::default() {
        Complex64::default()
    } else {
        (w.ln() * p).exp()
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

fn convex_by_scan(spec: &PsiSpec) -> bool {
    const ANGLES: usize = 720;
    for &r in &[0.5, 0.9, 0.99, 0.999] {
        for j in 0..ANGLES {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / ANGLES as f64);
            if spec.convexity_quotient(z).re < -1e-12 {
                return false;
            }
        }
    }
    true
}

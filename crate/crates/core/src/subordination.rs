//! Sufficient conditions of the form `f f''/(f')^2 ≺ h` for `S*(psi)`.
//!
//! The hypotheses on `h` are `Re(1 + z h''/h') > -1/2` and
//! `(1/z) int_0^z h ≺ (psi - 1)/psi`. Both are checked on sampled circles,
//! so a pass is numerical evidence and not a proof.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::numerics::find_root_bracketed;
use crate::region::{Region, RegionState};

/// Angles per circle in both grid checks.
pub const GRID_ANGLES: usize = 512;
/// Largest radius accepted by [`check_bul_condition`].
pub const MAX_GRID_RADIUS: f64 = 0.999;
/// Slack added to `-1/2` before a grid infimum counts as passing.
pub const BUL_SLACK: f64 = 1e-9;
/// Tolerance on `g(0) = f(0)`.
pub const ORIGIN_TOL: f64 = 1e-10;
/// Radius of the circle traced by [`Target::from_boundary`].
pub const BOUNDARY_RADIUS: f64 = 1.0 - 1e-6;
/// Largest neighbour gap in [`Target::from_boundary`], relative to `1 + |w|`.
pub const RELATIVE_GAP: f64 = 0.02;
const MAX_REFINE_DEPTH: usize = 40;
const MEAN_INTERVALS: usize = 128;
const SINGULAR_TOL: f64 = 1e-14;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum HSpec {
    JanPower { d: f64, e: f64, beta: f64 },
    LemniscateH { c: f64 },
    ExpH { lambda: f64 },
    AlphaH { alpha: f64 },
}

impl HSpec {
    pub fn janpower(d: f64, e: f64, beta: f64) -> Result<Self> {
        let h = Self::JanPower { d, e, beta };
        h.validate()?;
        Ok(h)
    }

    pub fn lemniscate_h(c: f64) -> Result<Self> {
        let h = Self::LemniscateH { c };
        h.validate()?;
        Ok(h)
    }

    pub fn exp_h(lambda: f64) -> Result<Self> {
        let h = Self::ExpH { lambda };
        h.validate()?;
        Ok(h)
    }

    pub fn alpha_h(alpha: f64) -> Result<Self> {
        let h = Self::AlphaH { alpha };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::JanPower { d, e, beta } => -1.0 <= e && e < d && d <= 1.0 && beta > 0.0 && beta <= 1.0,
            Self::LemniscateH { c } => c > 0.0 && c <= 1.0,
            Self::ExpH { lambda } => lambda > 0.0 && lambda <= 1.0,
            Self::AlphaH { alpha } => (0.0..1.0).contains(&alpha),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterOutOfRange(format!("{self:?}")))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::JanPower { .. } => "janpower",
            Self::LemniscateH { .. } => "lemniscate_h",
            Self::ExpH { .. } => "exp_h",
            Self::AlphaH { .. } => "alpha_h",
        }
    }

    /// `(h, h', h'')` at `z`.
    pub fn jet(&self, z: Complex64) -> Jet2 {
        let z = Jet2::variable(z);
        let one = Jet2::real(1.0);
        match *self {
            Self::JanPower { d, e, beta } => {
                let (pd, pe) = (z * d + 1.0, z * e + 1.0);
                let u = (pe / pd).powf(beta);
                let poly = z * (d + e - beta * (d - e)) + z * z * (d * e) + 1.0;
                one - u * poly / (pd * pe)
            }
            Self::LemniscateH { c } => {
                let w = z * c + 1.0;
                one - (z * c + 2.0) / (w.powf(1.5) * 2.0)
            }
            Self::ExpH { lambda } => one - (one - z * lambda) * (z * -lambda).exp(),
            Self::AlphaH { alpha } => {
                let a = 1.0 - 2.0 * alpha;
                let den = z * a + 1.0;
                (z * z * a + z * 2.0) * (2.0 * (1.0 - alpha)) / (den * den)
            }
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.jet(z).v
    }

    /// The generator `psi` paired with `h`, so that
    /// `h = (z (1 - 1/psi))'`.
    pub fn psi(&self, z: Complex64) -> Complex64 {
        match *self {
            Self::JanPower { d, e, beta } => ((ONE + z * d) / (ONE + z * e)).powf(beta),
            Self::LemniscateH { c } => (ONE + z * c).sqrt(),
            Self::ExpH { lambda } => (z * lambda).exp(),
            Self::AlphaH { alpha } => (ONE + z * (1.0 - 2.0 * alpha)) / (ONE - z),
        }
    }

    /// `(psi(z) - 1)/psi(z)`.
    pub fn p_target(&self, z: Complex64) -> Complex64 {
        ONE - self.psi(z).inv()
    }

    /// `(1/z) int_0^z h(t) dt = int_0^1 h(sz) ds` by composite Simpson.
    pub fn mean(&self, z: Complex64) -> Complex64 {
        if z == Complex64::default() {
            return Complex64::default();
        }
        let n = MEAN_INTERVALS;
        let step = 1.0 / n as f64;
        let mut acc = self.eval(Complex64::default()) + self.eval(z);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += self.eval(z * (i as f64 * step)) * w;
        }
        acc * (step / 3.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BulCheck {
    pub inf_value: f64,
    /// Grid point attaining the infimum.
    pub at: Complex64,
    pub passes: bool,
}

fn grid_radii(r_max: f64) -> Vec<f64> {
    let mut radii: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).filter(|&r| r <= r_max + 1e-12).collect();
    if radii.last().map_or(true, |&r| r < r_max - 1e-12) {
        radii.push(r_max);
    }
    radii
}

/// Infimum of `Re(1 + z h''/h')` over radii `0.1, 0.2, ..., r_max` and
/// [`GRID_ANGLES`] angles; passes when it exceeds `-1/2`.
pub fn check_bul_condition(h: &HSpec, r_max: f64) -> Result<BulCheck> {
    h.validate()?;
    if !(r_max > 0.0 && r_max <= MAX_GRID_RADIUS) {
        return Err(Error::Precondition(format!("r_max must lie in (0, {MAX_GRID_RADIUS}], got {r_max}")));
    }
    let mut best = BulCheck { inf_value: f64::INFINITY, at: Complex64::default(), passes: false };
    for r in grid_radii(r_max) {
        for j in 0..GRID_ANGLES {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / GRID_ANGLES as f64);
            let jet = h.jet(z);
            if !(jet.d1.norm() > SINGULAR_TOL) {
                return Err(Error::EvaluatorSingularity { z });
            }
            let v = (ONE + z * jet.d2 / jet.d1).re;
            if v < best.inf_value {
                best.inf_value = v;
                best.at = z;
            }
        }
    }
    best.passes = best.inf_value > -0.5 + BUL_SLACK;
    Ok(best)
}

/// Value of `Re(1 + z h''/h')` for `exp_h(lambda)` at `z = 1`.
pub fn exp_h_boundary_value(lambda: f64) -> f64 {
    (2.0 - 4.0 * lambda + lambda * lambda) / (2.0 - lambda)
}

/// Right-hand side of a subordination check: the image region of a
/// univalent function together with its value at the origin.
#[derive(Clone, Debug)]
pub struct Target {
    pub region: Region,
    pub origin: Complex64,
}

impl Target {
    pub fn new(region: Region, origin: Complex64) -> Self {
        Self { region, origin }
    }

    /// Polyline through `f(rho e^{it})`, `rho = BOUNDARY_RADIUS`, at
    /// `samples` half-step offset angles, with midpoints inserted until
    /// neighbours lie within a relative gap of [`RELATIVE_GAP`]. Staying
    /// inside the circle keeps half-plane images from collapsing onto a line.
    pub fn from_boundary(f: impl Fn(Complex64) -> Complex64, samples: usize) -> Self {
        let at = |t: f64| f(Complex64::from_polar(BOUNDARY_RADIUS, t));
        let step = 2.0 * PI / samples as f64;
        let base: Vec<(f64, Complex64)> = (0..samples)
            .map(|j| {
                let t = step * (j as f64 + 0.5);
                (t, at(t))
            })
            .collect();
        let mut points = Vec::with_capacity(samples);
        for j in 0..samples {
            let (t0, w0) = base[j];
            let (t1, w1) = if j + 1 == samples { (base[0].0 + 2.0 * PI, base[0].1) } else { base[j + 1] };
            points.push(w0);
            refine(&at, (t0, w0), (t1, w1), 0, &mut points);
        }
        Self { region: Region::from_curve(points), origin: f(Complex64::default()) }
    }
}

fn refine(at: &impl Fn(f64) -> Complex64, a: (f64, Complex64), b: (f64, Complex64), depth: usize, out: &mut Vec<Complex64>) {
    let limit = RELATIVE_GAP * (1.0 + a.1.norm().min(b.1.norm()));
    if depth >= MAX_REFINE_DEPTH || !((b.1 - a.1).norm() > limit) {
        return;
    }
    let tm = 0.5 * (a.0 + b.0);
    let m = (tm, at(tm));
    refine(at, a, m, depth + 1, out);
    out.push(m.1);
    refine(at, m, b, depth + 1, out);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubordinationVerdict {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubordinationReport {
    pub verdict: SubordinationVerdict,
    /// First failing sample, or the first undecided one.
    pub witness: Option<Complex64>,
    pub min_margin: f64,
    pub samples: usize,
}

/// Checks `g(0) = f(0)` and `g(r e^{i theta})` inside `f(D)` on every grid
/// circle.
pub fn subordination_check(g: impl Fn(Complex64) -> Complex64, target: &Target, radii: &[f64]) -> Result<SubordinationReport> {
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::Precondition("radii must lie in (0, 1)".into()));
    }
    let zero = Complex64::default();
    if (g(zero) - target.origin).norm() > ORIGIN_TOL {
        return Ok(SubordinationReport {
            verdict: SubordinationVerdict::Fail,
            witness: Some(zero),
            min_margin: f64::NEG_INFINITY,
            samples: 1,
        });
    }
    let mut report = SubordinationReport { verdict: SubordinationVerdict::Pass, witness: None, min_margin: f64::INFINITY, samples: 0 };
    for &r in radii {
        for j in 0..GRID_ANGLES {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / GRID_ANGLES as f64);
            let w = g(z);
            let verdict = target.region.contains(w);
            report.samples += 1;
            report.min_margin = report.min_margin.min(target.region.signed_margin(w));
            match verdict.state {
                RegionState::Inside => {}
                RegionState::Outside => {
                    report.verdict = SubordinationVerdict::Fail;
                    report.witness = Some(z);
                    return Ok(report);
                }
                RegionState::Indeterminate => {
                    if report.verdict == SubordinationVerdict::Pass {
                        report.verdict = SubordinationVerdict::Indeterminate;
                        report.witness = Some(z);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Checks `(1/z) int_0^z h ≺ (psi - 1)/psi` for the `psi` paired with `h`.
pub fn check_p_condition(h: &HSpec, radii: &[f64], samples: usize) -> Result<SubordinationReport> {
    h.validate()?;
    let target = Target::from_boundary(|z| h.p_target(z), samples);
    subordination_check(|z| h.mean(z), &target, radii)
}

/// For `|s| <= 1`, `f` with `z f'/f = 1/(1 - (1/z) int_0^z h(st) dt)`
/// satisfies `f f''/(f')^2 = h(sz)`. Checks that its `z f'/f` stays inside
/// `psi(D)`.
pub fn spot_check(h: &HSpec, s: Complex64, radii: &[f64], samples: usize) -> Result<SubordinationReport> {
    h.validate()?;
    if s.norm() > 1.0 {
        return Err(Error::Precondition(format!("|s| must be at most 1, got {}", s.norm())));
    }
    let target = Target::from_boundary(|z| h.psi(z), samples);
    subordination_check(|z| (ONE - h.mean(z * s)).inv(), &target, radii)
}

/// Positive root of `30 - 75/2 c^2 - 201/32 c^4`.
pub fn constant_c0() -> f64 {
    find_root_bracketed(c0_quartic, 0.0, 1.0, 1e-15).expect("sign change on [0, 1]")
}

pub fn c0_quartic(c: f64) -> f64 {
    let c2 = c * c;
    30.0 - 37.5 * c2 - 201.0 / 32.0 * c2 * c2
}

/// `(9 - sqrt 33)/4`, the largest `lambda` with `exp_h_boundary_value >= -1/2`.
pub fn constant_lambda0() -> f64 {
    (9.0 - 33f64.sqrt()) / 4.0
}

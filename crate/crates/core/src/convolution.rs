//! Convolution characterisations of `S*(psi)` and `C(psi)`.
//!
//! `f` lies in `S*(psi)` iff `z f'(z) - w f(z) != 0` for every `z` in the
//! disk and every boundary value `w = psi(e^{it})`, and in `C(psi)` iff
//! `(1 - w) f'(z) + z f''(z) != 0`. Boundary values are carried as
//! projective pairs `w = num / den`, so unbounded generators need no special
//! casing and no division by `1 - w` ever happens.
//!
//! Both forms equal a Hadamard product with a kernel
//! `(z + mu z^2)/(1 - z)^2` (resp. `(z + (1 + 2 mu) z^2)/(1 - z)^3`),
//! `mu = w/(1 - w)`, up to the factor `1 - w`.
//!
//! A sampled test can certify failure with a witness; a pass is evidence
//! on the grid only.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{circle_extremum, ExtremumMode};
use crate::psi::PsiSpec;
use crate::region::{spec_region, RegionState};
use crate::series::TruncatedSeries;

/// Adjacent boundary samples must be closer than this in the chordal metric.
pub const MAX_CHORDAL_GAP: f64 = 0.05;
/// `|Phi| < ZERO_TOL` on the grid counts as a zero.
pub const ZERO_TOL: f64 = 1e-9;
pub const DEFAULT_T_SAMPLES: usize = 512;
const MAX_T_SAMPLES: usize = 1 << 16;
const NEWTON_STEPS: usize = 50;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Starlike,
    Convex,
}

/// Which sign convention a kernel uses for its `z^2` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelForm {
    /// `mu = w/(1 - w)` enters with a plus sign; equals the direct form.
    Corrected,
    /// `z - lambda z^2` with `lambda = w/(1 - w)`.
    Printed,
}

/// Polar sample grid in the disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZGrid {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl Default for ZGrid {
    fn default() -> Self {
        Self { radii: (1..=9).map(|k| k as f64 / 10.0).collect(), angles: 256 }
    }
}

impl ZGrid {
    fn circle(&self, r: f64) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.angles).map(move |j| Complex64::from_polar(r, 2.0 * PI * j as f64 / self.angles as f64))
    }
}

/// One boundary sample `w = psi(e^{it}) = num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub t: f64,
    pub num: Complex64,
    pub den: Complex64,
}

impl KernelSample {
    /// `w`, infinite at a pole.
    pub fn w(&self) -> Complex64 {
        self.num / self.den
    }

    /// `mu = w/(1 - w) = num/(den - num)`.
    pub fn mu(&self) -> Complex64 {
        self.num / (self.den - self.num)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub z: Complex64,
    pub t: f64,
    pub modulus: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Smallest `|Phi_t(z)| / |den - num|` seen on the grid.
    pub min_modulus: f64,
    /// Largest gap between the direct form and the corrected kernel form.
    pub kernel_discrepancy: f64,
    pub t_samples: usize,
}

fn chordal(a: &KernelSample, b: &KernelSample) -> f64 {
    let cross = (a.num * b.den - b.num * a.den).norm();
    let na = (a.num.norm_sqr() + a.den.norm_sqr()).sqrt();
    let nb = (b.num.norm_sqr() + b.den.norm_sqr()).sqrt();
    cross / (na * nb)
}

/// `T` boundary samples with the chordal gap check.
pub fn kernel_samples(spec: &PsiSpec, t_samples: usize) -> Result<Vec<KernelSample>> {
    spec.validate()?;
    if t_samples < 2 {
        return Err(Error::ParameterOutOfRange(format!("need at least 2 t-samples, got {t_samples}")));
    }
    let samples: Vec<KernelSample> = (0..t_samples)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / t_samples as f64;
            let (num, den) = spec.eval_homogeneous(Complex64::from_polar(1.0, t));
            KernelSample { t, num, den }
        })
        .collect();
    let gap = (0..t_samples).map(|j| chordal(&samples[j], &samples[(j + 1) % t_samples])).fold(0.0, f64::max);
    if gap > MAX_CHORDAL_GAP {
        return Err(Error::GridTooCoarse { gap, limit: MAX_CHORDAL_GAP });
    }
    Ok(samples)
}

fn check_normalised(f: &TruncatedSeries) -> Result<()> {
    if f.order() < 1 || f.coeff(0).norm() > 1e-12 || (f.coeff(1) - ONE).norm() > 1e-12 {
        return Err(Error::Precondition("f must be normalised: f(0) = 0, f'(0) = 1".into()));
    }
    Ok(())
}

/// Series pair `(P, Q)` with `Phi_t = den P - num Q`.
fn form_series(f: &TruncatedSeries, variant: Variant) -> (TruncatedSeries, TruncatedSeries) {
    let fp = f.derive();
    match variant {
        // z f' - w f, divided by z
        Variant::Starlike => (fp, f.shift_down(1).expect("order >= 1")),
        // (1 - w) f' + z f''
        Variant::Convex => (&fp + &fp.z_derive(), fp),
    }
}

/// Direct form `Phi_t(z)` for one boundary sample.
pub fn direct_form_value(f: &TruncatedSeries, s: &KernelSample, z: Complex64, variant: Variant) -> Complex64 {
    let (p, q) = form_series(f, variant);
    s.den * p.eval(z) - s.num * q.eval(z)
}

/// Taylor coefficients of the kernel for `mu` (or `lambda`) at order `n`.
pub fn kernel_series(mu: Complex64, n: usize, variant: Variant, form: KernelForm) -> TruncatedSeries {
    let c = match form {
        KernelForm::Corrected => mu,
        KernelForm::Printed => -mu,
    };
    TruncatedSeries::from_fn(n, |k| {
        if k == 0 {
            return Complex64::default();
        }
        let k = k as f64;
        let base = ONE * k + c * (k - 1.0);
        match variant {
            Variant::Starlike => base,
            Variant::Convex => base * k,
        }
    })
}

/// `(den - num) (f * K)(z) / z`, which equals `Phi_t(z)` for the corrected
/// kernel.
pub fn kernel_form_value(f: &TruncatedSeries, s: &KernelSample, z: Complex64, variant: Variant, form: KernelForm) -> Complex64 {
    let k = kernel_series(s.mu(), f.order(), variant, form);
    let h = f.hadamard(&k).shift_down(1).expect("order >= 1");
    (s.den - s.num) * h.eval(z)
}

/// Winding number of `values` (a closed sampled loop) about the origin.
fn winding(values: &[Complex64]) -> i64 {
    let n = values.len();
    let mut total = 0.0;
    for j in 0..n {
        total += (values[(j + 1) % n] / values[j]).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

fn newton_refine(p: &TruncatedSeries, q: &TruncatedSeries, s: &KernelSample, z0: Complex64) -> Complex64 {
    let phi = &p.scale(s.den) - &q.scale(s.num);
    let dphi = phi.derive();
    let mut z = z0;
    for _ in 0..NEWTON_STEPS {
        let d = dphi.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = phi.eval(z) / d;
        let next = z - step;
        if !(next.norm() < 1.0) {
            break;
        }
        z = next;
        if step.norm() < 1e-15 {
            break;
        }
    }
    if phi.eval(z).norm() <= phi.eval(z0).norm() {
        z
    } else {
        z0
    }
}

fn nonvanishing(f: &TruncatedSeries, spec: &PsiSpec, grid: &ZGrid, t_samples: usize, variant: Variant) -> Result<MembershipReport> {
    check_normalised(f)?;
    let samples = kernel_samples(spec, t_samples)?;
    let (p, q) = form_series(f, variant);

    let mut circles: Vec<(Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)> = Vec::with_capacity(grid.radii.len());
    for &r in &grid.radii {
        let zs: Vec<Complex64> = grid.circle(r).collect();
        let pv: Vec<Complex64> = zs.iter().map(|&z| p.eval(z)).collect();
        let qv: Vec<Complex64> = zs.iter().map(|&z| q.eval(z)).collect();
        if variant == Variant::Starlike && qv.iter().any(|v| v.norm() < 1e-12) {
            return Err(Error::Precondition(format!("f(z)/z vanishes on the circle |z| = {r}")));
        }
        circles.push((zs, pv, qv));
    }

    let mut min_modulus = f64::INFINITY;
    let mut failure: Option<(f64, usize, Complex64, f64)> = None;
    let mut values = vec![Complex64::default(); grid.angles];
    for (si, s) in samples.iter().enumerate() {
        let scale = (s.den - s.num).norm();
        for (zs, pv, qv) in &circles {
            let mut local = (f64::INFINITY, Complex64::default());
            for j in 0..grid.angles {
                values[j] = s.den * pv[j] - s.num * qv[j];
                let m = values[j].norm() / scale;
                if m < local.0 {
                    local = (m, zs[j]);
                }
            }
            min_modulus = min_modulus.min(local.0);
            let fails = local.0 < ZERO_TOL || winding(&values) != 0;
            if fails && failure.map_or(true, |(m, ..)| local.0 < m) {
                failure = Some((local.0, si, local.1, s.t));
            }
        }
    }

    let witness = failure.map(|(_, si, z0, t)| {
        let s = &samples[si];
        let z = newton_refine(&p, &q, s, z0);
        let modulus = (s.den * p.eval(z) - s.num * q.eval(z)).norm() / (s.den - s.num).norm();
        Witness { z, t, modulus }
    });

    let mut kernel_discrepancy: f64 = 0.0;
    let probe_r = grid.radii.iter().copied().fold(0.0, f64::max) / 2.0;
    for s in samples.iter().step_by((t_samples / 32).max(1)) {
        for k in 0..8 {
            let z = Complex64::from_polar(probe_r, 2.0 * PI * k as f64 / 8.0 + 0.1);
            let direct = s.den * p.eval(z) - s.num * q.eval(z);
            let kernel = kernel_form_value(f, s, z, variant, KernelForm::Corrected);
            kernel_discrepancy = kernel_discrepancy.max((direct - kernel).norm());
        }
    }

    Ok(MembershipReport {
        verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
        witness,
        min_modulus,
        kernel_discrepancy,
        t_samples,
    })
}

/// Sampled test of `(1/z)(z f' - psi(e^{it}) f) != 0`.
pub fn starlike_nonvanishing(f: &TruncatedSeries, spec: &PsiSpec, grid: &ZGrid, t_samples: usize) -> Result<MembershipReport> {
    nonvanishing(f, spec, grid, t_samples, Variant::Starlike)
}

/// Sampled test of `(1 - psi(e^{it})) f' + z f'' != 0`.
pub fn convex_nonvanishing(f: &TruncatedSeries, spec: &PsiSpec, grid: &ZGrid, t_samples: usize) -> Result<MembershipReport> {
    nonvanishing(f, spec, grid, t_samples, Variant::Convex)
}

/// As the nonvanishing tests, doubling the t-grid from 512 until the
/// chordal gap check passes.
pub fn nonvanishing_adaptive(f: &TruncatedSeries, spec: &PsiSpec, grid: &ZGrid, variant: Variant) -> Result<MembershipReport> {
    let mut t = DEFAULT_T_SAMPLES;
    loop {
        match nonvanishing(f, spec, grid, t, variant) {
            Err(Error::GridTooCoarse { .. }) if t < MAX_T_SAMPLES => t *= 2,
            other => return other,
        }
    }
}

/// Whether `z f'/f` (or `1 + z f''/f'`) maps every grid circle inside
/// `psi(D)`, judged by the refined minimum of the signed margin on each
/// circle; `None` when that minimum is indeterminate.
pub fn membership_by_region(f: &TruncatedSeries, spec: &PsiSpec, grid: &ZGrid, variant: Variant) -> Result<Option<bool>> {
    check_normalised(f)?;
    let region = spec_region(spec)?;
    let fp = f.derive();
    let fpp = fp.derive();
    let margin = |z: Complex64| {
        let w = match variant {
            Variant::Starlike => z * fp.eval(z) / f.eval(z),
            Variant::Convex => ONE + z * fpp.eval(z) / fp.eval(z),
        };
        let v = region.contains(w);
        match v.state {
            RegionState::Inside => v.margin,
            RegionState::Outside => -v.margin,
            RegionState::Indeterminate => 0.0,
        }
    };
    let mut undecided = false;
    for &r in &grid.radii {
        let m = circle_extremum(|t| margin(Complex64::from_polar(r, t)), r, ExtremumMode::Min, false);
        if m.value < 0.0 {
            return Ok(Some(false));
        }
        undecided |= m.value == 0.0;
    }
    Ok(if undecided { None } else { Some(true) })
}

/// `sup_t sum_k w_k(t) |a_k|` with `w_k = |k den - num| / |den - num|`
/// (times `k` for the convex variant). `a[0]` is the coefficient of `z^2`.
pub fn coeff_sufficiency(a: &[Complex64], spec: &PsiSpec, variant: Variant) -> Result<f64> {
    spec.validate()?;
    if a.iter().all(|c| c.norm() == 0.0) {
        return Ok(0.0);
    }
    let obj = |t: f64| {
        let (num, den) = spec.eval_homogeneous(Complex64::from_polar(1.0, t));
        let scale = (den - num).norm();
        a.iter()
            .enumerate()
            .map(|(i, c)| {
                let k = (i + 2) as f64;
                let w = (den * k - num).norm() / scale;
                let w = if variant == Variant::Convex { w * k } else { w };
                w * c.norm()
            })
            .sum::<f64>()
    };
    Ok(circle_extremum(obj, 1.0, ExtremumMode::Max, false).value)
}

/// Janowski coefficient weight `[(1 + |D|) + k (1 + |D| - E + D)] / (D - E)`
/// (times `k` for the convex variant).
pub fn janowski_weight(d: f64, e: f64, k: usize, variant: Variant) -> f64 {
    let k = k as f64;
    let w = ((1.0 + d.abs()) + k * (1.0 + d.abs() - e + d)) / (d - e);
    if variant == Variant::Convex {
        w * k
    } else {
        w
    }
}

/// `sum_k janowski_weight(k) |a_k|`, `a[0]` the coefficient of `z^2`.
pub fn janowski_coeff_sufficiency(a: &[Complex64], d: f64, e: f64, variant: Variant) -> Result<f64> {
    PsiSpec::janowski(d, e)?;
    Ok(a.iter().enumerate().map(|(i, c)| janowski_weight(d, e, i + 2, variant) * c.norm()).sum())
}

/// Second-coefficient kernel `z + c z^2` over `(1 - z)^2` (starlike) or
/// `(1 - z)^3` (convex) for the Janowski class at `zeta = e^{-it}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JanowskiKernel {
    pub c: Complex64,
    pub variant: Variant,
}

impl JanowskiKernel {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let power = match self.variant {
            Variant::Starlike => 2,
            Variant::Convex => 3,
        };
        (z + self.c * z * z) / (ONE - z).powi(power)
    }

    pub fn series(&self, n: usize) -> TruncatedSeries {
        let numer = TruncatedSeries::from_fn(n, |k| match k {
            1 => ONE,
            2 => self.c,
            _ => Complex64::default(),
        });
        let p = match self.variant {
            Variant::Starlike => -2.0,
            Variant::Convex => -3.0,
        };
        let one_minus_z = TruncatedSeries::from_fn(n, |k| match k {
            0 => ONE,
            1 => -ONE,
            _ => Complex64::default(),
        });
        &numer * &one_minus_z.powf(p).expect("constant term 1")
    }
}

pub fn janowski_kernel(d: f64, e: f64, zeta: Complex64, variant: Variant, form: KernelForm) -> Result<JanowskiKernel> {
    PsiSpec::janowski(d, e)?;
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange(format!("|zeta| must be 1, got {}", zeta.norm())));
    }
    let c = match (variant, form) {
        (Variant::Starlike, KernelForm::Printed) => (zeta + d) / (d - e),
        (Variant::Starlike, KernelForm::Corrected) => -(zeta + d) / (d - e),
        (Variant::Convex, KernelForm::Printed) => (zeta * 2.0 + (3.0 * d - e)) / (d - e),
        (Variant::Convex, KernelForm::Corrected) => -(zeta * 2.0 + (d + e)) / (d - e),
    };
    Ok(JanowskiKernel { c, variant })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(c).unwrap()
    }

    fn koebe(n: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(n, |k| Complex64::new(k as f64, 0.0))
    }

    #[test]
    fn koebe_is_starlike() {
        let rep = starlike_nonvanishing(&koebe(512), &PsiSpec::Janowski { d: 1.0, e: -1.0 }, &ZGrid::default(), 512).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.kernel_discrepancy < 1e-9);
    }

    #[test]
    fn small_perturbation_in_cardioid() {
        let rep = starlike_nonvanishing(&poly(&[0.0, 1.0, 0.05]), &PsiSpec::Cardioid, &ZGrid::default(), 512).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn non_starlike_has_witness() {
        let f = poly(&[0.0, 1.0, 0.9]);
        let rep = starlike_nonvanishing(&f, &PsiSpec::Janowski { d: 1.0, e: -1.0 }, &ZGrid::default(), 512).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witness.unwrap();
        assert!(w.modulus < 1e-9);
        let z = w.z;
        let q = z * (ONE + z * 1.8) / (z * (ONE + z * 0.9));
        assert!(q.re.abs() < 1e-8);
    }

    #[test]
    fn convex_examples() {
        let spec = PsiSpec::Janowski { d: 1.0, e: -1.0 };
        let g = ZGrid::default();
        assert_eq!(convex_nonvanishing(&poly(&[0.0, 1.0]), &spec, &g, 512).unwrap().verdict, Verdict::Pass);
        let geo = TruncatedSeries::from_fn(512, |k| Complex64::new(if k == 0 { 0.0 } else { 1.0 }, 0.0));
        assert_eq!(convex_nonvanishing(&geo, &spec, &g, 512).unwrap().verdict, Verdict::Pass);
        assert_eq!(convex_nonvanishing(&poly(&[0.0, 1.0, 0.6]), &spec, &g, 512).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let f = poly(&[0.0, 1.0]);
        let err = starlike_nonvanishing(&f, &PsiSpec::Cardioid, &ZGrid::default(), 16).unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse { .. }));
        let rep = nonvanishing_adaptive(&f, &PsiSpec::Cardioid, &ZGrid::default(), Variant::Starlike).unwrap();
        assert_eq!(rep.t_samples, 512);
    }

    #[test]
    fn janowski_weights() {
        assert_eq!(janowski_weight(1.0, 0.0, 2, Variant::Starlike), 8.0);
        let a = [Complex64::new(0.1, 0.0)];
        assert!((janowski_coeff_sufficiency(&a, 1.0, 0.0, Variant::Starlike).unwrap() - 0.8).abs() < 1e-15);
        let generic = coeff_sufficiency(&[ONE], &PsiSpec::Janowski { d: 1.0, e: 0.0 }, Variant::Starlike).unwrap();
        assert!((generic - 2.0).abs() < 1e-9);
        assert_eq!(coeff_sufficiency(&[Complex64::default(); 3], &PsiSpec::Cardioid, Variant::Starlike).unwrap(), 0.0);
    }

    #[test]
    fn janowski_kernel_examples() {
        let k = janowski_kernel(1.0, -1.0, ONE, Variant::Starlike, KernelForm::Printed).unwrap();
        assert!((k.c - ONE).norm() < 1e-15);
        let s = k.series(4);
        let expected = [0.0, 1.0, 3.0, 5.0, 7.0];
        for (i, e) in expected.iter().enumerate() {
            assert!((s.coeff(i).re - e).abs() < 1e-12);
        }
        let k = janowski_kernel(1.0, 0.0, -ONE, Variant::Starlike, KernelForm::Printed).unwrap();
        assert!(k.c.norm() < 1e-15);
        assert!(janowski_kernel(1.0, 0.0, ONE * 2.0, Variant::Starlike, KernelForm::Printed).is_err());
    }

    #[test]
    fn kernel_forms() {
        let f = poly(&[0.0, 1.0, 0.3, -0.2, 0.1]);
        let s = KernelSample { t: 1.0, num: Complex64::new(0.7, 0.4), den: ONE };
        let z = Complex64::new(0.2, -0.3);
        for v in [Variant::Starlike, Variant::Convex] {
            let d = direct_form_value(&f, &s, z, v);
            let c = kernel_form_value(&f, &s, z, v, KernelForm::Corrected);
            let p = kernel_form_value(&f, &s, z, v, KernelForm::Printed);
            assert!((d - c).norm() < 1e-13);
            assert!((d - p).norm() > 1e-3);
        }
    }
}

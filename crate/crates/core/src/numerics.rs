//! One-dimensional numerics shared by every radius and bound computation:
//! global extrema over a circle, bracketed roots, monotone bisection and
//! adaptive quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::NumericsError;

/// Coarse grid size for circle scans.
pub const CIRCLE_GRID: usize = 2048;
/// Angular tolerance of the golden-section refinement.
pub const THETA_TOL: f64 = 1e-10;
/// Grid cells whose value is within this of the best are always refined.
pub const NEAR_BEST: f64 = 1e-9;
/// Extra discrete local extrema refined beyond the near-best ones.
const EXTRA_CANDIDATES: usize = 8;

pub const BRENT_MAX_ITER: usize = 200;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-9;
const MONOTONE_SCAN_POINTS: usize = 16;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumMode {
    Min,
    Max,
}

/// Location and value of a global extremum of an objective on `|z| = r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleExtremum {
    pub theta: f64,
    pub value: f64,
    pub r: f64,
}

/// How a radius constant was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    ClosedForm,
    Bisection,
    Brent,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub value: f64,
    pub bracket: (f64, f64),
    pub tolerance: f64,
    pub method: RadiusMethod,
    pub cross_check: Option<f64>,
}

impl RadiusResult {
    pub fn exact(value: f64, method: RadiusMethod) -> Self {
        Self { value, bracket: (value, value), tolerance: 0.0, method, cross_check: None }
    }

    pub fn with_cross_check(mut self, value: Option<f64>) -> Self {
        self.cross_check = value;
        self
    }
}

/// Global extremum of `obj(theta)` over the circle of radius `r`.
///
/// `obj` receives the angle only; `r` is recorded in the result. With
/// `symmetric = true` the objective must satisfy `obj(t) = obj(2pi - t)` and
/// only `[0, pi]` is scanned.
pub fn circle_extremum(obj: impl Fn(f64) -> f64, r: f64, mode: ExtremumMode, symmetric: bool) -> CircleExtremum {
    let sign = match mode {
        ExtremumMode::Min => 1.0,
        ExtremumMode::Max => -1.0,
    };
    // Work with a minimisation of `g`; NaN is pushed to +inf so it never wins.
    let g = |t: f64| {
        let v = sign * obj(t);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let (lo, hi, n, periodic) = if symmetric {
        (0.0, PI, CIRCLE_GRID, false)
    } else {
        (0.0, 2.0 * PI, CIRCLE_GRID, true)
    };
    let step = if periodic { (hi - lo) / n as f64 } else { (hi - lo) / (n - 1) as f64 };
    let thetas: Vec<f64> = (0..n).map(|j| lo + step * j as f64).collect();
    let values: Vec<f64> = thetas.iter().map(|&t| g(t)).collect();

    let (best_idx, best_val) =
        values.iter().copied().enumerate().fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });

    // Discrete local minima, best first.
    let neighbour = |i: usize, d: isize| -> Option<usize> {
        let j = i as isize + d;
        if periodic {
            Some(j.rem_euclid(n as isize) as usize)
        } else if j < 0 || j >= n as isize {
            None
        } else {
            Some(j as usize)
        }
    };
    let mut locals: Vec<usize> = (0..n)
        .filter(|&i| {
            let l = neighbour(i, -1).map_or(true, |j| values[i] <= values[j]);
            let r = neighbour(i, 1).map_or(true, |j| values[i] <= values[j]);
            l && r
        })
        .collect();
    locals.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let mut candidates: Vec<usize> = Vec::new();
    for (rank, &i) in locals.iter().enumerate() {
        if rank < EXTRA_CANDIDATES || values[i] <= best_val + NEAR_BEST {
            candidates.push(i);
        }
    }
    if !candidates.contains(&best_idx) {
        candidates.push(best_idx);
    }

    let mut best = (thetas[best_idx], best_val);
    for &i in &candidates {
        let a = match neighbour(i, -1) {
            Some(_) => thetas[i] - step,
            None => thetas[i],
        };
        let b = match neighbour(i, 1) {
            Some(_) => thetas[i] + step,
            None => thetas[i],
        };
        let a = if symmetric { a.max(lo) } else { a };
        let b = if symmetric { b.min(hi) } else { b };
        let (t, v) = golden_section_min(&g, a, b, THETA_TOL);
        // A refined point must beat the incumbent by more than rounding.
        if v < best.1 - 4.0 * f64::EPSILON * best.1.abs().max(1.0) {
            best = (t, v);
        }
    }

    let mut theta = best.0;
    if periodic {
        theta = theta.rem_euclid(2.0 * PI);
    }
    CircleExtremum { theta, value: sign * best.1, r }
}

/// Golden-section search for a minimum of `f` on `[a, b]`. Returns the best
/// abscissa seen together with its value; the endpoints are included as
/// candidates so boundary minima are found exactly.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let (fa0, fb0) = (f(a), f(b));
    let mut best = if fa0 <= fb0 { (a, fa0) } else { (b, fb0) };
    if b - a <= tol {
        return best;
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v < best.1 {
            best = (t, v);
        }
    }
    best
}

/// Brent's method on a sign-changing bracket.
pub fn find_root_bracketed(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..BRENT_MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(NumericsError::MaxIterationsExceeded(BRENT_MAX_ITER))
}

/// Largest `r` in `[lo, hi]` where a monotone predicate still holds.
///
/// `pred(lo)` must be true and `pred(hi)` false. A 16-point scan first checks
/// that no true value follows a false one.
pub fn radius_by_bisection(pred: impl Fn(f64) -> bool, lo: f64, hi: f64, tol: f64) -> Result<RadiusResult, NumericsError> {
    let mut last_false: Option<f64> = None;
    for i in 0..MONOTONE_SCAN_POINTS {
        let r = lo + (hi - lo) * i as f64 / (MONOTONE_SCAN_POINTS - 1) as f64;
        let ok = pred(r);
        if i == 0 && !ok {
            return Err(NumericsError::BadBracket);
        }
        if i == MONOTONE_SCAN_POINTS - 1 && ok {
            return Err(NumericsError::BadBracket);
        }
        match (ok, last_false) {
            (true, Some(false_at)) => return Err(NumericsError::PredicateNotMonotone { false_at, true_at: r }),
            (false, None) => last_false = Some(r),
            _ => {}
        }
    }
    // Start from the tightest bracket the scan produced.
    let step = (hi - lo) / (MONOTONE_SCAN_POINTS - 1) as f64;
    let first_false = last_false.unwrap_or(hi);
    let mut a = (first_false - step).max(lo);
    let mut b = first_false;
    while b - a > tol {
        let m = 0.5 * (a + b);
        if pred(m) {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(RadiusResult { value: 0.5 * (a + b), bracket: (a, b), tolerance: tol, method: RadiusMethod::Bisection, cross_check: None })
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`, recursing at most `max_depth` levels.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<f64, NumericsError> {
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> Result<f64, NumericsError> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(NumericsError::QuadratureFailure(depth));
        }
        Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, max_depth).map_err(|_| NumericsError::QuadratureFailure(max_depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn circle_min_of_shifted_unit_circle() {
        let obj = |t: f64| (Complex64::new(1.0, 0.0) + Complex64::from_polar(0.5, t)).norm();
        let m = circle_extremum(obj, 0.5, ExtremumMode::Min, true);
        assert!((m.theta - PI).abs() < 1e-9);
        assert!((m.value - 0.5).abs() < 1e-12);
        let full = circle_extremum(obj, 0.5, ExtremumMode::Min, false);
        assert!((full.value - m.value).abs() < 1e-10);
        let mx = circle_extremum(obj, 0.5, ExtremumMode::Max, true);
        assert!((mx.value - 1.5).abs() < 1e-12);
        assert!(m.value <= mx.value);
    }

    #[test]
    fn circle_extremum_value_matches_objective() {
        let obj = |t: f64| (3.0 * t).sin() + 0.1 * t.cos();
        let m = circle_extremum(obj, 1.0, ExtremumMode::Min, false);
        assert!((m.value - obj(m.theta)).abs() < 1e-12);
    }

    #[test]
    fn brent_roots() {
        let r = find_root_bracketed(|r| r * r - 6.0 * r + 1.0, 0.0, 1.0, 1e-14).unwrap();
        assert!((r - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-13);
        let r = find_root_bracketed(|r| r - 0.5, 0.0, 1.0, 1e-14).unwrap();
        assert!((r - 0.5).abs() < 1e-14);
        let c = find_root_bracketed(|r| r * r.exp().exp() - (1f64 / std::f64::consts::E).exp(), 0.0, 1.0, 1e-14).unwrap();
        assert!((c - 0.349681).abs() < 1e-6);
    }

    #[test]
    fn brent_no_sign_change() {
        assert!(matches!(find_root_bracketed(|r| r * r + 1.0, -1.0, 1.0, 1e-12), Err(NumericsError::NoSignChange { .. })));
    }

    #[test]
    fn bisection_threshold() {
        let res = radius_by_bisection(|r| r < 0.3, 0.0, 1.0, 1e-9).unwrap();
        assert!((res.value - 0.3).abs() < 1e-9);
        assert!(res.bracket.0 <= res.value && res.value <= res.bracket.1);
        assert!(res.bracket.1 - res.bracket.0 <= res.tolerance);
    }

    #[test]
    fn bisection_rejects_non_monotone() {
        let pred = |r: f64| !(0.3..0.5).contains(&r) && r < 0.8;
        assert!(matches!(radius_by_bisection(pred, 0.0, 1.0, 1e-9), Err(NumericsError::PredicateNotMonotone { .. })));
        assert!(matches!(radius_by_bisection(|_| true, 0.0, 1.0, 1e-9), Err(NumericsError::BadBracket)));
    }

    #[test]
    fn simpson_integrates_smooth_functions() {
        let v = adaptive_simpson(|x| (-x).exp(), 0.0, 1.0, 1e-12, 40).unwrap();
        assert!((v - (1.0 - (-1f64).exp())).abs() < 1e-12);
        let v = adaptive_simpson(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, 1e-12, 40).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-12);
        assert!(adaptive_simpson(|x| (1.0 - x).sqrt(), 0.0, 1.0, 1e-12, 40).is_err());
    }

    #[test]
    fn golden_finds_endpoint_minimum() {
        let (t, v) = golden_section_min(|x| x, 0.0, 1.0, 1e-10);
        assert_eq!(t, 0.0);
        assert_eq!(v, 0.0);
    }
}

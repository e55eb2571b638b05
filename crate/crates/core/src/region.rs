//! Membership tests `w in psi(D)` and for general plane regions.
//!
//! Bounded catalog regions are represented by a sampled boundary polyline
//! and decided by winding number. Unbounded ones (half-planes, sectors and
//! their powers) always use an analytic description.

use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PsiError;
use crate::psi::{principal_pow, PsiSpec};

/// Points closer than this to the boundary are reported as indeterminate.
pub const BOUNDARY_TOLERANCE: f64 = 1e-7;
/// Default number of boundary samples for bounded regions.
pub const BOUNDARY_SAMPLES: usize = 4096;
/// Successive samples farther apart than this get a midpoint inserted.
pub const REFINE_GAP: f64 = 1e-2;
const CHUNK: usize = 32;
const CACHE_SIZE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionState {
    Inside,
    Outside,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub state: RegionState,
    /// Distance estimate from `w` to the boundary.
    pub margin: f64,
}

#[derive(Clone, Copy, Debug)]
struct Chunk {
    start: usize,
    end: usize,
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

/// Closed polyline with bounding boxes over runs of segments.
#[derive(Clone, Debug)]
pub struct Polyline {
    points: Vec<Complex64>,
    chunks: Vec<Chunk>,
}

impl Polyline {
    /// The segment from the last point back to the first closes the curve.
    pub fn new(points: Vec<Complex64>) -> Self {
        let n = points.len();
        let mut chunks = Vec::with_capacity(n / CHUNK + 1);
        let mut start = 0;
        while start < n {
            let end = (start + CHUNK).min(n);
            let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
            for i in start..=end {
                let p = points[i % n];
                min_x = min_x.min(p.re);
                max_x = max_x.max(p.re);
                min_y = min_y.min(p.im);
                max_y = max_y.max(p.im);
            }
            chunks.push(Chunk { start, end, min_x, max_x, min_y, max_y });
            start = end;
        }
        Self { points, chunks }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    fn segment(&self, i: usize) -> (Complex64, Complex64) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    /// Winding number of the closed polyline around `p`.
    pub fn winding_number(&self, p: Complex64) -> i64 {
        let mut wn = 0;
        for c in &self.chunks {
            if c.max_y <= p.im || c.min_y > p.im || c.max_x < p.re {
                continue;
            }
            for i in c.start..c.end {
                let (a, b) = self.segment(i);
                let side = (b.re - a.re) * (p.im - a.im) - (p.re - a.re) * (b.im - a.im);
                if a.im <= p.im {
                    if b.im > p.im && side > 0.0 {
                        wn += 1;
                    }
                } else if b.im <= p.im && side < 0.0 {
                    wn -= 1;
                }
            }
        }
        wn
    }

    /// Euclidean distance from `p` to the polyline.
    pub fn distance(&self, p: Complex64) -> f64 {
        let mut order: Vec<(f64, usize)> = self
            .chunks
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let dx = (c.min_x - p.re).max(p.re - c.max_x).max(0.0);
                let dy = (c.min_y - p.im).max(p.im - c.max_y).max(0.0);
                (dx.hypot(dy), k)
            })
            .collect();
        order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = f64::INFINITY;
        for (lower, k) in order {
            if lower >= best {
                break;
            }
            let c = &self.chunks[k];
            for i in c.start..c.end {
                let (a, b) = self.segment(i);
                best = best.min(segment_distance(p, a, b));
            }
        }
        best
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[derive(Clone, Debug)]
pub enum RegionShape {
    Disk { center: Complex64, radius: f64 },
    HalfPlane { re_min: f64 },
    /// `|arg w| < half_angle`.
    Sector { half_angle: f64 },
    /// `w^(1/beta)` lies in `Re > re_min`.
    PowerHalfPlane { re_min: f64, beta: f64 },
    Curve(Polyline),
}

/// A plane region with a signed boundary-distance estimate.
#[derive(Clone, Debug)]
pub struct Region {
    shape: RegionShape,
    /// Everything with `Re w <= 0` is outside.
    right_half_plane: bool,
}

impl Region {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Self { shape: RegionShape::Disk { center, radius }, right_half_plane: false }
    }

    pub fn half_plane(re_min: f64) -> Self {
        Self { shape: RegionShape::HalfPlane { re_min }, right_half_plane: false }
    }

    pub fn sector(half_angle: f64) -> Self {
        Self { shape: RegionShape::Sector { half_angle }, right_half_plane: false }
    }

    /// Interior of a closed curve given by its samples.
    pub fn from_curve(points: Vec<Complex64>) -> Self {
        Self { shape: RegionShape::Curve(Polyline::new(points)), right_half_plane: false }
    }

    /// `psi(D)` with the default boundary resolution.
    pub fn for_spec(spec: &PsiSpec) -> Result<Self, PsiError> {
        Self::for_spec_with_samples(spec, BOUNDARY_SAMPLES)
    }

    pub fn for_spec_with_samples(spec: &PsiSpec, samples: usize) -> Result<Self, PsiError> {
        spec.validate()?;
        let shape = match *spec {
            PsiSpec::Janowski { d, e } if e == -1.0 => RegionShape::HalfPlane { re_min: (1.0 - d) / 2.0 },
            PsiSpec::Janowski { d, e } => {
                let s = 1.0 - e * e;
                RegionShape::Disk { center: Complex64::new((1.0 - d * e) / s, 0.0), radius: (d - e) / s }
            }
            PsiSpec::AlphaHalfplane { alpha } => RegionShape::HalfPlane { re_min: alpha },
            PsiSpec::PowerHalfplane { gamma } => RegionShape::Sector { half_angle: PI * gamma / 2.0 },
            PsiSpec::JanowskiPower { d, e, beta } if e == -1.0 => RegionShape::PowerHalfPlane { re_min: (1.0 - d) / 2.0, beta },
            _ => RegionShape::Curve(Polyline::new(refined_boundary(spec, samples)?)),
        };
        Ok(Self { shape, right_half_plane: true })
    }

    pub fn shape(&self) -> &RegionShape {
        &self.shape
    }

    /// Signed distance estimate: positive inside, negative outside.
    pub fn signed_margin(&self, w: Complex64) -> f64 {
        match &self.shape {
            RegionShape::Disk { center, radius } => radius - (w - center).norm(),
            RegionShape::HalfPlane { re_min } => w.re - re_min,
            RegionShape::Sector { half_angle } => sector_margin(w, *half_angle),
            RegionShape::PowerHalfPlane { re_min, beta } => {
                if w == Complex64::default() {
                    return -re_min.max(0.0);
                }
                let u = principal_pow(w, 1.0 / beta);
                (u.re - re_min) * beta * u.norm().powf(beta - 1.0)
            }
            RegionShape::Curve(poly) => {
                let d = poly.distance(w);
                if poly.winding_number(w) != 0 {
                    d
                } else {
                    -d
                }
            }
        }
    }

    pub fn contains(&self, w: Complex64) -> RegionVerdict {
        let m = self.signed_margin(w);
        let margin = m.abs();
        if self.right_half_plane && w.re <= 0.0 {
            return RegionVerdict { state: RegionState::Outside, margin };
        }
        let state = if !(margin >= BOUNDARY_TOLERANCE) {
            RegionState::Indeterminate
        } else if m > 0.0 {
            RegionState::Inside
        } else {
            RegionState::Outside
        };
        RegionVerdict { state, margin }
    }
}

fn sector_margin(w: Complex64, half: f64) -> f64 {
    let rho = w.norm();
    if rho == 0.0 {
        return 0.0;
    }
    let gap = half - w.arg().abs();
    if gap.abs() >= PI / 2.0 {
        gap.signum() * rho
    } else {
        rho * gap.sin()
    }
}

/// Boundary samples with one pass of midpoint insertion across wide gaps.
fn refined_boundary(spec: &PsiSpec, samples: usize) -> Result<Vec<Complex64>, PsiError> {
    let base = spec.boundary_samples(samples)?;
    let n = base.len();
    let mut out = Vec::with_capacity(n + n / 4);
    for i in 0..n {
        let (t0, w0) = base[i];
        out.push(w0);
        let (t1, w1) = base[(i + 1) % n];
        if (w1 - w0).norm() > REFINE_GAP {
            let t1 = if i + 1 == n { t1 + 2.0 * PI } else { t1 };
            out.push(spec.eval(Complex64::from_polar(1.0, 0.5 * (t0 + t1)))?);
        }
    }
    Ok(out)
}

fn cache() -> &'static Mutex<Vec<(PsiSpec, Arc<Region>)>> {
    static CACHE: OnceLock<Mutex<Vec<(PsiSpec, Arc<Region>)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Shared default-resolution region for `spec`, built once per process.
pub fn spec_region(spec: &PsiSpec) -> Result<Arc<Region>, PsiError> {
    if let Some((_, r)) = cache().lock().unwrap().iter().find(|(s, _)| s == spec) {
        return Ok(Arc::clone(r));
    }
    let region = Arc::new(Region::for_spec(spec)?);
    let mut guard = cache().lock().unwrap();
    if guard.len() >= CACHE_SIZE {
        guard.remove(0);
    }
    guard.push((*spec, Arc::clone(&region)));
    Ok(region)
}

/// Decides `w in psi(D)`.
pub fn region_contains(spec: &PsiSpec, w: Complex64) -> Result<RegionVerdict, PsiError> {
    Ok(spec_region(spec)?.contains(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_is_always_inside() {
        for spec in PsiSpec::catalog() {
            assert_eq!(region_contains(&spec, c(1.0, 0.0)).unwrap().state, RegionState::Inside, "{spec}");
        }
    }

    #[test]
    fn lemniscate_examples() {
        let s = PsiSpec::Lemniscate;
        assert_eq!(region_contains(&s, c(0.0, 0.0)).unwrap().state, RegionState::Outside);
        assert_eq!(region_contains(&s, c(1.45, 0.0)).unwrap().state, RegionState::Outside);
        assert_eq!(region_contains(&s, c(1.40, 0.0)).unwrap().state, RegionState::Inside);
        assert_eq!(region_contains(&s, c(2f64.sqrt(), 0.0)).unwrap().state, RegionState::Indeterminate);
    }

    #[test]
    fn janowski_fast_paths() {
        let half = Region::for_spec(&PsiSpec::Janowski { d: 1.0, e: -1.0 }).unwrap();
        assert_eq!(half.contains(c(0.01, 50.0)).state, RegionState::Inside);
        let disk = Region::for_spec(&PsiSpec::Janowski { d: 1.0, e: 0.0 }).unwrap();
        assert!((disk.signed_margin(c(1.5, 0.0)) - 0.5).abs() < 1e-15);
        let alpha = Region::for_spec(&PsiSpec::AlphaHalfplane { alpha: 0.3 }).unwrap();
        assert_eq!(alpha.contains(c(0.29, 0.0)).state, RegionState::Outside);
    }

    #[test]
    fn sector_margin_is_distance_to_rays() {
        let r = Region::sector(PI / 4.0);
        assert!((r.signed_margin(c(1.0, 0.0)) - (PI / 4.0).sin()).abs() < 1e-15);
        assert!(r.signed_margin(c(1.0, 2.0)) < 0.0);
    }

    #[test]
    fn power_half_plane_matches_image() {
        let spec = PsiSpec::JanowskiPower { d: 0.6, e: -1.0, beta: 0.5 };
        let region = Region::for_spec(&spec).unwrap();
        for k in 1..40 {
            let t = 2.0 * PI * k as f64 / 40.0;
            let w = spec.eval(Complex64::from_polar(0.95, t)).unwrap();
            assert_eq!(region.contains(w).state, RegionState::Inside);
            let edge = spec.eval(Complex64::from_polar(1.0, t)).unwrap();
            assert!(region.signed_margin(edge).abs() < 1e-12);
        }
    }

    #[test]
    fn polyline_square() {
        let sq = Region::from_curve(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        assert!((sq.signed_margin(c(0.5, 0.25)) - 0.25).abs() < 1e-15);
        assert!((sq.signed_margin(c(2.0, 0.5)) + 1.0).abs() < 1e-15);
    }
}

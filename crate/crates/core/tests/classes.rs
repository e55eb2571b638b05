use mindakit::bohr::{bohr_janowski, bohr_radius, janowski_koebe_radius};
use mindakit::distortion::{distortion_bounds, distortion_table};
use mindakit::extremal::{build_extremal, koebe_radius_closed_form, koebe_radius_quadrature};
use mindakit::psi::PsiSpec;
use mindakit::region::{region_contains, RegionState};
use num_complex::Complex64;
use std::f64::consts::PI;

#[test]
fn catalog_generators_are_normalised() {
    for spec in PsiSpec::catalog() {
        let w = spec.eval(Complex64::default()).unwrap();
        assert!((w - 1.0).norm() < 1e-14, "{spec}");
        let b = spec.taylor(4);
        assert!(b[0] > 0.0, "{spec}: psi'(0) = {}", b[0]);
        let z = Complex64::new(0.3, 0.4);
        assert!((spec.eval(z.conj()).unwrap() - spec.eval(z).unwrap().conj()).norm() < 1e-14, "{spec}");
    }
}

#[test]
fn interior_values_lie_in_region() {
    for spec in PsiSpec::catalog() {
        for j in 0..32 {
            let z = Complex64::from_polar(0.7, 2.0 * PI * j as f64 / 32.0);
            let v = region_contains(&spec, spec.eval(z).unwrap()).unwrap();
            assert_eq!(v.state, RegionState::Inside, "{spec} at {z}");
        }
    }
}

#[test]
fn extremal_matches_closed_forms() {
    for spec in PsiSpec::catalog() {
        let f0 = build_extremal(&spec, 64).unwrap();
        let z = Complex64::new(0.2, -0.3);
        if let Some(v) = f0.closed_form_value(z) {
            assert!((f0.value(z).unwrap() - v).norm() < 1e-12, "{spec}");
        }
    }
}

#[test]
fn koebe_quadrature_agrees_with_closed_forms() {
    for spec in PsiSpec::catalog() {
        if let Some(exact) = koebe_radius_closed_form(&spec) {
            let q = koebe_radius_quadrature(&spec).unwrap();
            assert!((q - exact).abs() < 1e-9, "{spec}: {q} vs {exact}");
        }
    }
}

#[test]
fn bohr_radius_agrees_with_janowski_equation() {
    for (d, e) in [(1.0, -1.0), (0.5, -0.5), (1.0, 0.0), (0.8, -0.2)] {
        let closed = bohr_janowski(d, e).unwrap();
        let series = bohr_radius(&PsiSpec::Janowski { d, e }, 64).unwrap();
        assert!((closed.r0 - series.r0).abs() < 1e-9, "({d},{e}): {} vs {}", closed.r0, series.r0);
        assert!((closed.r_star - janowski_koebe_radius(d, e)).abs() < 1e-15);
        assert!(closed.r_b <= 1.0 / 3.0);
    }
}

#[test]
fn bohr_majorant_is_monotone_through_root() {
    let res = bohr_radius(&PsiSpec::Cardioid, 64).unwrap();
    let f0 = build_extremal(&PsiSpec::Cardioid, 64).unwrap();
    assert!(f0.majorant(res.r0 - 1e-6).unwrap() < res.r_star);
    assert!(f0.majorant(res.r0 + 1e-6).unwrap() > res.r_star);
}

#[test]
fn distortion_bounds_bracket_extremal_derivative() {
    for spec in [PsiSpec::Cardioid, PsiSpec::Lemniscate, PsiSpec::Janowski { d: 0.5, e: -0.5 }] {
        let f0 = build_extremal(&spec, 128).unwrap();
        let fp = f0.series.derive();
        for r in [0.2, 0.5, 0.7] {
            let (lower, upper) = distortion_bounds(&spec, r).unwrap();
            for j in 0..64 {
                let m = fp.eval(Complex64::from_polar(r, 2.0 * PI * j as f64 / 64.0)).norm();
                assert!(lower - 1e-9 <= m && m <= upper + 1e-9, "{spec} r = {r}: {lower} <= {m} <= {upper}");
            }
        }
    }
}

#[test]
fn distortion_rows_are_ordered() {
    let rows = distortion_table(&PsiSpec::Cardioid, &[0.1, 0.3, 0.5, 0.7, 0.9]).unwrap();
    for w in rows.windows(2) {
        assert!(w[0].min_mod > w[1].min_mod);
        assert!(w[0].upper < w[1].upper);
    }
    for row in &rows {
        assert!(row.lower < row.upper);
    }
}

use mindakit::TruncatedSeries;
use num_complex::Complex64;
use proptest::prelude::*;

const N: usize = 20;

fn coeffs(scale: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-scale..scale, -scale..scale).prop_map(|(re, im)| Complex64::new(re, im)), N + 1)
}

fn with_constant(mut c: Vec<Complex64>, c0: f64) -> TruncatedSeries {
    c[0] = Complex64::new(c0, 0.0);
    TruncatedSeries::new(c).unwrap()
}

proptest! {
    #[test]
    fn exp_ln_roundtrip(c in coeffs(0.5)) {
        let g = with_constant(c, 0.0);
        prop_assert!(g.exp().unwrap().ln().unwrap().max_abs_diff(&g) < 1e-12);
        let p = &g + &TruncatedSeries::one(N);
        prop_assert!(p.ln().unwrap().exp().unwrap().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn mul_div_roundtrip(a in coeffs(1.0), b in coeffs(0.3)) {
        let a = TruncatedSeries::new(a).unwrap();
        let b = with_constant(b, 1.0);
        let q = (&a * &b).div(&b).unwrap();
        prop_assert!(q.max_abs_diff(&a) < 1e-10);
    }

    #[test]
    fn hadamard_units(c in coeffs(1.0)) {
        let f = with_constant(c, 0.0);
        let geo = TruncatedSeries::from_fn(N, |k| if k == 0 { Complex64::default() } else { Complex64::new(1.0, 0.0) });
        let koebe = TruncatedSeries::from_fn(N, |k| Complex64::new(k as f64, 0.0));
        prop_assert!(f.hadamard(&geo).max_abs_diff(&f) < 1e-13);
        prop_assert!(f.hadamard(&koebe).max_abs_diff(&f.z_derive()) < 1e-13);
    }

    #[test]
    fn integrate_then_derive(c in coeffs(1.0)) {
        let f = TruncatedSeries::new(c).unwrap();
        let back = f.integrate().derive();
        prop_assert!(back.truncate(N - 1).max_abs_diff(&f.truncate(N - 1)) < 1e-13);
    }

    #[test]
    fn power_laws(c in coeffs(0.3), a in 0.1f64..2.0, b in 0.1f64..2.0) {
        let p = with_constant(c, 1.0);
        let lhs = &p.powf(a).unwrap() * &p.powf(b).unwrap();
        prop_assert!(lhs.max_abs_diff(&p.powf(a + b).unwrap()) < 1e-10);
    }

    #[test]
    fn dilate_matches_eval(c in coeffs(1.0), s in -0.9f64..0.9, x in -0.5f64..0.5) {
        let f = TruncatedSeries::new(c).unwrap();
        let z = Complex64::new(x, 0.3 * x);
        let lhs = f.dilate(Complex64::new(s, 0.0)).eval(z);
        prop_assert!((lhs - f.eval(z * s)).norm() < 1e-12);
    }
}

#[test]
fn empty_series_is_rejected() {
    assert!(TruncatedSeries::new(Vec::new()).is_err());
    assert!(TruncatedSeries::one(4).exp().is_err());
    assert!(TruncatedSeries::zero(4).ln().is_err());
}

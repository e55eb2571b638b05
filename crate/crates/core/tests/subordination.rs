use mindakit::subordination::{
    check_bul_condition, check_p_condition, constant_c0, constant_lambda0, spot_check, subordination_check, HSpec,
    SubordinationVerdict, Target, MAX_GRID_RADIUS,
};
use mindakit::{Error, PsiSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RADII: [f64; 3] = [0.3, 0.6, 0.9];

#[test]
fn catalogued_h_satisfy_both_hypotheses() {
    let hs = [
        HSpec::alpha_h(0.0).unwrap(),
        HSpec::alpha_h(0.5).unwrap(),
        HSpec::exp_h(0.5).unwrap(),
        HSpec::exp_h(constant_lambda0()).unwrap(),
        HSpec::lemniscate_h(0.5).unwrap(),
        HSpec::lemniscate_h(0.8).unwrap(),
    ];
    for h in hs {
        assert!(check_bul_condition(&h, MAX_GRID_RADIUS).unwrap().passes, "{h:?}");
        assert_eq!(check_p_condition(&h, &RADII, 4096).unwrap().verdict, SubordinationVerdict::Pass, "{h:?}");
    }
}

#[test]
fn exp_h_fails_beyond_lambda0() {
    let res = check_bul_condition(&HSpec::exp_h(0.95).unwrap(), MAX_GRID_RADIUS).unwrap();
    assert!(!res.passes);
    assert!(res.at.re > 0.9);
}

#[test]
fn spot_checks_with_random_schwarz_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for h in [HSpec::lemniscate_h(0.5).unwrap(), HSpec::exp_h(0.5).unwrap(), HSpec::alpha_h(0.25).unwrap()] {
        for _ in 0..10 {
            let s = Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU));
            let rep = spot_check(&h, s, &RADII, 4096).unwrap();
            assert_eq!(rep.verdict, SubordinationVerdict::Pass, "{h:?} s = {s}");
        }
    }
}

#[test]
fn scaled_function_is_subordinate() {
    let spec = PsiSpec::Lemniscate;
    let f = |z: Complex64| spec.eval(z).unwrap();
    let target = Target::from_boundary(f, 4096);
    for s in [0.1, 0.5, 0.99] {
        let rep = subordination_check(|z| f(z * s), &target, &RADII).unwrap();
        assert_eq!(rep.verdict, SubordinationVerdict::Pass);
        assert!(rep.min_margin > 0.0);
    }
    let escaped = subordination_check(|z| f(z) * 1.5 - 0.5, &target, &RADII).unwrap();
    assert_eq!(escaped.verdict, SubordinationVerdict::Fail);
}

#[test]
fn janpower_hypothesis_is_reported_not_assumed() {
    let mixed: Vec<bool> = [(1.0, -1.0, 0.5), (0.5, -0.5, 1.0)]
        .iter()
        .map(|&(d, e, b)| check_bul_condition(&HSpec::janpower(d, e, b).unwrap(), MAX_GRID_RADIUS).unwrap().passes)
        .collect();
    assert_eq!(mixed, vec![false, true]);
}

#[test]
fn preconditions() {
    assert!(matches!(check_bul_condition(&HSpec::exp_h(0.5).unwrap(), 1.0), Err(Error::Precondition(_))));
    assert!(spot_check(&HSpec::exp_h(0.5).unwrap(), Complex64::new(1.5, 0.0), &RADII, 256).is_err());
    assert!((constant_c0() - 0.845276).abs() < 1e-5);
}

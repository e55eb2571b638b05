//! `table-all` report and the `verify bulextn` suite.

use mindakit::bohr::{bohr_janowski, bohr_radius, conjecture_roots, BohrResult};
use mindakit::distortion::{cardioid_transition_radius, distortion_table};
use mindakit::extremal::koebe_radius;
use mindakit::radius::{
    convexity_radius, f_margin, f_radius, h_radius, h_radius_alpha_closed_form, h_radius_alpha_printed,
};
use mindakit::subordination::{
    c0_quartic, check_bul_condition, check_p_condition, constant_c0, constant_lambda0, exp_h_boundary_value,
    spot_check, HSpec, SubordinationVerdict, MAX_GRID_RADIUS,
};
use mindakit::{PsiSpec, Result};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

pub const TABLE_RADII: [f64; 4] = [1.0, 0.8, 2.0 / 3.0, 0.5];
const P_RADII: [f64; 3] = [0.3, 0.6, 0.9];
const P_SAMPLES: usize = 4096;

fn bohr_entry(spec: PsiSpec, res: BohrResult) -> Value {
    json!({ "psi": spec, "result": res })
}

pub fn table_all() -> Result<Value> {
    let rows: Vec<Value> = distortion_table(&PsiSpec::Cardioid, &TABLE_RADII)?
        .into_iter()
        .map(|r| json!({ "r": r.r, "theta1": r.theta1, "min_mod": r.min_mod, "m": r.lower, "upper": r.upper }))
        .collect();

    let koebe = PsiSpec::Janowski { d: 1.0, e: -1.0 };
    let half = PsiSpec::AlphaHalfplane { alpha: 0.5 };
    let bohr = vec![
        bohr_entry(koebe, bohr_janowski(1.0, -1.0)?),
        bohr_entry(PsiSpec::Cardioid, bohr_radius(&PsiSpec::Cardioid, 64)?),
        bohr_entry(PsiSpec::Lemniscate, bohr_radius(&PsiSpec::Lemniscate, 64)?),
        bohr_entry(half, bohr_radius(&half, 64)?),
    ];
    let (card_root, lem_root) = conjecture_roots();

    let mut f_specs: Vec<PsiSpec> = [0.0, 0.25, 0.5].iter().map(|&alpha| PsiSpec::AlphaHalfplane { alpha }).collect();
    f_specs.extend([0.25, 0.5, 0.75].iter().map(|&gamma| PsiSpec::PowerHalfplane { gamma }));
    f_specs.extend([PsiSpec::Lemniscate, PsiSpec::Sigmoid, PsiSpec::Cardioid, PsiSpec::Sine]);
    let mut f_radii = Vec::new();
    for spec in f_specs {
        let res = f_radius(&spec)?;
        let margin = f_margin(&spec, res.value)?;
        f_radii.push(json!({ "psi": spec, "numeric": res.value, "closed_form": res.cross_check, "boundary_margin": margin }));
    }

    let mut h_radii = Vec::new();
    for alpha in [0.25, 0.5, 0.75] {
        for q in [0.25, 0.5, 0.75] {
            let res = h_radius(&PsiSpec::AlphaHalfplane { alpha }, q)?;
            h_radii.push(json!({
                "alpha": alpha,
                "q": q,
                "numeric": res.value,
                "closed_form": h_radius_alpha_closed_form(alpha, q),
                "printed_closed_form": h_radius_alpha_printed(alpha, q),
            }));
        }
    }

    let lambda0 = constant_lambda0();
    Ok(json!({
        "distortion": { "psi": PsiSpec::Cardioid, "rows": rows, "transition_radius": cardioid_transition_radius() },
        "koebe_radius": {
            "cardioid": koebe_radius(&PsiSpec::Cardioid)?,
            "lemniscate": koebe_radius(&PsiSpec::Lemniscate)?,
        },
        "bohr": bohr,
        "bohr_conjecture_roots": { "cardioid": card_root, "lemniscate": lem_root },
        "f_radius": f_radii,
        "cardioid_convexity_radius": convexity_radius(&PsiSpec::Cardioid)?.value,
        "h_radius": h_radii,
        "constants": {
            "c0": constant_c0(),
            "lambda0": lambda0,
            "exp_h_boundary_value_at_lambda0": exp_h_boundary_value(lambda0),
        },
    }))
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct JanpowerRow {
    pub d: f64,
    pub e: f64,
    pub beta: f64,
    pub inf_value: f64,
    pub bul_condition: bool,
}

#[derive(Debug, Serialize)]
pub struct BulextnSuite {
    pub c0: f64,
    pub lambda0: f64,
    pub checks: Vec<Check>,
    /// Whether each sampled Janowski-power `h` satisfies the
    /// `Re(1 + z h''/h') > -1/2` hypothesis; informational only.
    pub janpower: Vec<JanpowerRow>,
}

fn check(name: &str, pass: bool, value: f64) -> Check {
    Check { name: name.to_string(), pass, value }
}

pub fn verify_bulextn(tol: Option<f64>) -> Result<BulextnSuite> {
    let tol = tol.unwrap_or(1e-10);
    let c0 = constant_c0();
    let lambda0 = constant_lambda0();
    let mut checks = vec![
        check("c0_residual", c0_quartic(c0).abs() < tol, c0_quartic(c0)),
        check("lambda0_boundary_value", (exp_h_boundary_value(lambda0) + 0.5).abs() < tol, exp_h_boundary_value(lambda0)),
    ];

    let a = HSpec::janpower(1.0, -1.0, 1.0)?;
    let b = HSpec::alpha_h(0.0)?;
    let gap = (0..256)
        .map(|j| {
            let z = Complex64::from_polar(0.9, j as f64 * std::f64::consts::PI / 128.0);
            (a.eval(z) - b.eval(z)).norm()
        })
        .fold(0.0, f64::max);
    checks.push(check("janpower_reduces_to_alpha_h", gap < 1e-12, gap));

    for h in [HSpec::alpha_h(0.0)?, HSpec::exp_h(0.5)?, HSpec::exp_h(lambda0)?, HSpec::lemniscate_h(0.5)?] {
        let bul = check_bul_condition(&h, MAX_GRID_RADIUS)?;
        checks.push(check(&format!("{}_bul_condition", label(&h)), bul.passes, bul.inf_value));
    }
    for h in [HSpec::alpha_h(0.0)?, HSpec::exp_h(0.5)?, HSpec::lemniscate_h(0.5)?] {
        let p = check_p_condition(&h, &P_RADII, P_SAMPLES)?;
        checks.push(check(&format!("{}_p_condition", label(&h)), p.verdict == SubordinationVerdict::Pass, p.min_margin));
        for (i, s) in [Complex64::new(1.0, 0.0), Complex64::from_polar(0.8, 2.0)].into_iter().enumerate() {
            let sc = spot_check(&h, s, &P_RADII, P_SAMPLES)?;
            checks.push(check(
                &format!("{}_spot_check_{i}", label(&h)),
                sc.verdict == SubordinationVerdict::Pass,
                sc.min_margin,
            ));
        }
    }

    let mut janpower = Vec::new();
    for (d, e) in [(1.0, -1.0), (1.0, 0.0), (0.5, -0.5), (0.8, 0.2)] {
        for beta in [0.5, 1.0] {
            let bul = check_bul_condition(&HSpec::janpower(d, e, beta)?, MAX_GRID_RADIUS)?;
            janpower.push(JanpowerRow { d, e, beta, inf_value: bul.inf_value, bul_condition: bul.passes });
        }
    }
    Ok(BulextnSuite { c0, lambda0, checks, janpower })
}

fn label(h: &HSpec) -> String {
    match *h {
        HSpec::JanPower { d, e, beta } => format!("janpower({d},{e},{beta})"),
        HSpec::LemniscateH { c } => format!("lemniscate_h({c})"),
        HSpec::ExpH { lambda } => format!("exp_h({})", output_round(lambda)),
        HSpec::AlphaH { alpha } => format!("alpha_h({alpha})"),
    }
}

fn output_round(x: f64) -> f64 {
    crate::output::round_sig(x, 6)
}

//! `mindakit` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! verification suite reports a failed check.

mod output;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mindakit::bohr::{bohr_janowski, bohr_radius};
use mindakit::convolution::{coeff_sufficiency, membership_by_region, nonvanishing_adaptive, Variant, ZGrid};
use mindakit::distortion::distortion_table;
use mindakit::radius::{
    convexity_radius, f_margin, f_radius, h_margin, h_radius, h_radius_alpha_printed, h_radius_closed_form, section_radius,
    SectionVariant,
};
use mindakit::{PsiParams, PsiSpec, TruncatedSeries};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "mindakit", version, about = "Numerical toolkit for Ma-Minda starlike and convex classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Generator name, e.g. cardioid, lemniscate, janowski, alpha_halfplane.
    #[arg(long, global = true)]
    psi: Option<String>,
    #[arg(long = "D", global = true, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long = "E", global = true, allow_negative_numbers = true)]
    e: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Jackson parameter; selects the q-derivative radius.
    #[arg(long, global = true)]
    q: Option<f64>,
    /// Section degree; selects the section radius.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    c: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Comma-separated radii.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    radii: Option<Vec<f64>>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Series truncation order.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; its directory must exist. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for verification checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bohr radius of the class.
    Bohr,
    /// Radius constant: F by default, H with --q, a section with --k.
    Radius {
        #[arg(long, value_enum, default_value_t = SectionKind::Convexity)]
        variant: SectionKind,
    },
    /// Distortion bounds on |f'| at each radius.
    Distortion,
    /// Membership test for a polynomial z + a_2 z^2 + ...
    Member {
        /// JSON array of coefficients a_1, a_2, ... (numbers or [re, im]
        /// pairs), inline or as a file path.
        coeffs: String,
        /// Test the convex class instead of the starlike one.
        #[arg(long)]
        convex: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Boundary curve psi(e^{it}).
    Curve,
    /// Distortion table and every constant in one report.
    TableAll,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SectionKind {
    Convexity,
    Starlike,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bulextn,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
}

impl From<mindakit::Error> for CliError {
    fn from(e: mindakit::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<mindakit::PsiError> for CliError {
    fn from(e: mindakit::PsiError) -> Self {
        Self::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

impl Opts {
    fn spec(&self) -> CliResult<PsiSpec> {
        let Some(name) = &self.psi else {
            return usage("--psi is required");
        };
        let params = PsiParams { d: self.d, e: self.e, alpha: self.alpha, gamma: self.gamma, lambda: self.lambda, beta: self.beta };
        Ok(PsiSpec::from_name(name, &params)?)
    }

    fn check_out(&self) -> CliResult<()> {
        if let Some(path) = &self.out {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            if !dir.is_dir() {
                return usage(format!("output directory {} does not exist", dir.display()));
            }
        }
        Ok(())
    }

    fn only(&self, allowed: &[Format]) -> CliResult<()> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            usage(format!("format {:?} is not supported by this command", self.format).to_lowercase())
        }
    }
}

fn emit(opts: &Opts, text: &str) -> CliResult<()> {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DistortionOut {
    r: f64,
    theta1: f64,
    min_mod: f64,
    m: f64,
    upper: f64,
}

fn distortion_rows(spec: &PsiSpec, radii: &[f64]) -> CliResult<Vec<DistortionOut>> {
    Ok(distortion_table(spec, radii)?
        .into_iter()
        .map(|row| DistortionOut { r: row.r, theta1: row.theta1, min_mod: row.min_mod, m: row.lower, upper: row.upper })
        .collect())
}

fn distortion_csv(rows: &[DistortionOut]) -> String {
    output::csv(&["r", "theta1", "min_mod", "m", "upper"], rows.iter().map(|r| vec![r.r, r.theta1, r.min_mod, r.m, r.upper]))
}

fn cmd_bohr(opts: &Opts) -> CliResult<String> {
    opts.only(&[Format::Json, Format::Csv])?;
    let spec = opts.spec()?;
    let (res, method) = match spec {
        PsiSpec::Janowski { d, e } => (bohr_janowski(d, e)?, "closed_form"),
        _ => (bohr_radius(&spec, opts.order.unwrap_or(64))?, "series"),
    };
    Ok(match opts.format {
        Format::Csv => output::csv(
            &["r_star", "r0", "r_b", "sharp_flag"],
            [vec![res.r_star, res.r0, res.r_b, f64::from(u8::from(res.sharp_flag))]],
        ),
        _ => output::json(&json!({ "psi": spec, "method": method, "result": res })),
    })
}

fn cmd_radius(opts: &Opts, variant: SectionKind) -> CliResult<String> {
    opts.only(&[Format::Json, Format::Csv])?;
    let spec = opts.spec()?;
    let (family, res, closed, margin, extra) = if let Some(q) = opts.q {
        let res = h_radius(&spec, q)?;
        let closed = h_radius_closed_form(&spec, q);
        let margin = if res.value < 1.0 { Some(h_margin(&spec, q, res.value)?) } else { None };
        let printed = match spec {
            PsiSpec::AlphaHalfplane { alpha } => Some(h_radius_alpha_printed(alpha, q)),
            _ => None,
        };
        (json!({ "family": "h", "q": q }), res, closed, margin, json!({ "printed_closed_form": printed }))
    } else if let Some(k) = opts.k {
        let v = match variant {
            SectionKind::Convexity => SectionVariant::Convexity,
            SectionKind::Starlike => SectionVariant::Starlike,
        };
        let res = section_radius(k, &spec, v)?;
        (json!({ "family": "section", "k": k, "variant": v }), res, res.cross_check, None, json!({}))
    } else {
        let res = f_radius(&spec)?;
        let margin = if res.value < 1.0 { Some(f_margin(&spec, res.value)?) } else { None };
        let rc = convexity_radius(&spec)?;
        (json!({ "family": "f" }), res, res.cross_check, margin, json!({ "psi_convexity_radius": rc.value }))
    };
    Ok(match opts.format {
        Format::Csv => output::csv(&["radius", "closed_form"], [vec![res.value, closed.unwrap_or(f64::NAN)]]),
        _ => output::json(&json!({
            "psi": spec,
            "family": family,
            "radius": res,
            "closed_form": closed,
            "boundary_margin": margin,
            "extra": extra,
        })),
    })
}

fn cmd_distortion(opts: &Opts) -> CliResult<String> {
    opts.only(&[Format::Json, Format::Csv])?;
    let spec = opts.spec()?;
    let radii = opts.radii.clone().unwrap_or_else(|| vec![1.0, 0.8, 2.0 / 3.0, 0.5]);
    let rows = distortion_rows(&spec, &radii)?;
    Ok(match opts.format {
        Format::Csv => distortion_csv(&rows),
        _ => output::json(&json!({ "psi": spec, "rows": rows })),
    })
}

fn parse_coeffs(arg: &str) -> CliResult<Vec<Complex64>> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let values: Vec<serde_json::Value> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("coefficients must be a JSON array: {e}")))?;
    values
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n.as_f64().map(|x| Complex64::new(x, 0.0)),
            serde_json::Value::Array(p) if p.len() == 2 => Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?)),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Usage("each coefficient must be a number or a [re, im] pair".into()))
}

fn cmd_member(opts: &Opts, coeffs: &str, convex: bool) -> CliResult<String> {
    opts.only(&[Format::Json])?;
    let spec = opts.spec()?;
    let a = parse_coeffs(coeffs)?;
    if a.is_empty() {
        return usage("at least the coefficient a_1 = 1 is required");
    }
    let mut full = vec![Complex64::default()];
    full.extend_from_slice(&a);
    let f = TruncatedSeries::new(full).map_err(|e| CliError::Usage(e.to_string()))?;
    let variant = if convex { Variant::Convex } else { Variant::Starlike };
    let mut grid = ZGrid::default();
    if let Some(radii) = &opts.radii {
        grid.radii = radii.clone();
    }
    if let Some(n) = opts.samples {
        grid.angles = n;
    }
    let report = nonvanishing_adaptive(&f, &spec, &grid, variant)?;
    let region = membership_by_region(&f, &spec, &grid, variant)?;
    let sum = coeff_sufficiency(&a[1..], &spec, variant)?;
    Ok(output::json(&json!({
        "psi": spec,
        "variant": variant,
        "nonvanishing": report,
        "region_verdict": region,
        "coefficient_sum": sum,
        "coefficient_condition": sum <= 1.0,
    })))
}

fn cmd_curve(opts: &Opts) -> CliResult<String> {
    let spec = opts.spec()?;
    let samples = opts.samples.unwrap_or(4096);
    let pts = spec.boundary_samples(samples)?;
    Ok(match opts.format {
        Format::Csv => output::csv(&["t", "re", "im"], pts.iter().map(|&(t, w)| vec![t, w.re, w.im])),
        Format::Svg => output::svg(&pts.iter().map(|&(_, w)| (w.re, w.im)).collect::<Vec<_>>()),
        Format::Json => {
            let points: Vec<_> = pts.iter().map(|&(t, w)| json!({ "t": t, "re": w.re, "im": w.im })).collect();
            output::json(&json!({ "psi": spec, "samples": samples, "points": points }))
        }
    })
}

fn run(cli: &Cli) -> CliResult<()> {
    let opts = &cli.opts;
    opts.check_out()?;
    let text = match &cli.command {
        Command::Bohr => cmd_bohr(opts)?,
        Command::Radius { variant } => cmd_radius(opts, *variant)?,
        Command::Distortion => cmd_distortion(opts)?,
        Command::Member { coeffs, convex } => cmd_member(opts, coeffs, *convex)?,
        Command::Curve => cmd_curve(opts)?,
        Command::TableAll => {
            opts.only(&[Format::Json, Format::Csv])?;
            if opts.format == Format::Csv {
                distortion_csv(&distortion_rows(&PsiSpec::Cardioid, &report::TABLE_RADII)?)
            } else {
                output::json(&report::table_all()?)
            }
        }
        Command::Verify { suite: Suite::Bulextn } => {
            opts.only(&[Format::Json])?;
            let suite = report::verify_bulextn(opts.tol)?;
            emit(opts, &output::json(&suite))?;
            if suite.checks.iter().any(|c| !c.pass) {
                return Err(CliError::Verification("bulextn suite reported failures".into()));
            }
            return Ok(());
        }
    };
    emit(opts, &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

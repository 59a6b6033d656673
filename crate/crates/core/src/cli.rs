//! The `contactlab` command line: argument parsing, the module pipelines
//! behind each subcommand, and text or JSON reports.
//!
//! Exit codes: 0 success, 1 the mathematics says no (a nonzero residual, a
//! failed identity, an unsupported singularity), 2 bad input.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::contactcurves::{
    bryant_map, catalog_curves, horizontal_lift, involution_check, random_smooth_curve, swapped_components,
    curve_image_report, verify_contact_symbolic, verify_contact_with, ContactError, ImageReport,
};
use crate::contactforms::{contact_form_from_matrix, nonintegrability_volume, AntisymMatrix4, PolyForm};
use crate::contactlines::{
    contact_line_family_dimensions, equivalence_experiment, pfaffian, quadric_at_coefficients, random_antisymmetric,
    random_structure, ContactStructure, ExperimentReport, LinesError,
};
use crate::exactpoly::{rat, MultiPoly, PolyError, Rat, Vars};
use crate::invariants::{
    catalog, euler_identity_check, load_catalog, lookup, perturbations, symbolic_identity_check, InvariantsError,
    ThreefoldInvariants,
};
use crate::planecurves::{
    dual_curve, is_good, parse_curve, CurveError, DualCurve, DualOptions, GoodnessFailure, PlaneCurve, SingularPoint,
};
use crate::projective::{parse_rat, ProjPoint};
use crate::seed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "contactlab", version, about = "Exact computations with contact curves and contact structures on CP^3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run seed; every randomized step derives its own seed from it.
    #[arg(long, global = true, env = "CONTACTLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for floating-point cross-checks (exact paths ignore it).
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest curve degree accepted by the dual curve computation.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel experiments.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Singularities, duality, degree and genus of the contact image, and the contact check.
    Report {
        #[arg(long)]
        curve: String,
    },
    /// The dual curve.
    Dual {
        #[arg(long)]
        curve: String,
    },
    /// Horizontal lift of a point and its image under Bryant's map.
    Lift {
        #[arg(long)]
        curve: String,
        /// A point of the curve, e.g. "[3, 4, 5]".
        #[arg(long)]
        point: String,
    },
    /// Symbolic contact check, with the swapped-component control.
    Verify {
        #[arg(long)]
        curve: String,
    },
    /// Contact lines of a null-correlation structure against the Plücker hyperplane section.
    Lines {
        /// Upper triangle "A01 A02 A03 A12 A13 A23"; Bryant's structure if omitted.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// The Euler characteristic identity for contact threefolds.
    Euler {
        /// Catalog entry; all entries if omitted.
        #[arg(long)]
        name: Option<String>,
        /// Extra catalog entries (JSON array).
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// The whole fixed suite of checks.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub tol: f64,
    pub max_degree: u32,
    pub format: OutputFormat,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            seed: 0,
            tol: 1e-8,
            max_degree: 6,
            format: OutputFormat::Json,
            jobs: None,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            seed: cli.seed,
            tol: cli.tol,
            max_degree: cli.max_degree,
            format: if cli.json { OutputFormat::Json } else { OutputFormat::Text },
            jobs: cli.jobs,
        }
    }
}

/// Exit status and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }

    fn math(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_MATH,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

/// Parses command-line arguments (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&RunConfig::from(cli)),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    if !(config.tol > 0.0) {
        return Outcome::input("--tol must be positive");
    }
    if config.max_degree < 1 {
        return Outcome::input("--max-degree must be at least 1");
    }
    if config.jobs == Some(0) {
        return Outcome::input("--jobs must be at least 1");
    }
    let result = match &config.command {
        Command::Report { curve } => report(config, curve),
        Command::Dual { curve } => dual(config, curve),
        Command::Lift { curve, point } => lift(curve, point),
        Command::Verify { curve } => verify(curve),
        Command::Lines { matrix, count } => lines(config, matrix.as_deref(), *count),
        Command::Euler { name, catalog } => euler(name.as_deref(), catalog.as_ref()),
        Command::Catalog => full_catalog(config),
    };
    match result {
        Ok((code, value)) => Outcome {
            code,
            stdout: render(&value, config.format),
            stderr: String::new(),
        },
        Err(o) => o,
    }
}

type Step = Result<(i32, Value), Outcome>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn render(value: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut out = String::new();
            render_text(value, "", &mut out);
            out
        }
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn curve_input_error(e: CurveError) -> Outcome {
    match e {
        CurveError::Poly(PolyError::Parse { offset, message }) => {
            Outcome::input(format!("parse error at offset {offset}: {message}"))
        }
        CurveError::Poly(PolyError::NotHomogeneous) => Outcome::input("curve equation is not homogeneous"),
        CurveError::Poly(PolyError::ZeroPolynomial) => Outcome::input("curve equation is zero"),
        CurveError::NotACurve(_) => Outcome::input(e.to_string()),
        other => Outcome::math(other.to_string()),
    }
}

fn contact_error(e: ContactError) -> Outcome {
    match e {
        ContactError::Curve(c) => curve_input_error(c),
        ContactError::NotOnCurve | ContactError::NotIncident => Outcome::input(e.to_string()),
        other => Outcome::math(other.to_string()),
    }
}

fn parse(curve: &str) -> Result<crate::exactpoly::HomogPoly, Outcome> {
    parse_curve(curve).map_err(curve_input_error)
}

#[derive(Serialize)]
struct CurveReport {
    curve: String,
    #[serde(flatten)]
    image: ImageReport,
    singularities: Vec<SingularPoint>,
    goodness_failures: Vec<GoodnessFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hint: Option<String>,
}

fn curve_report(curve: &PlaneCurve, seed: u64) -> Result<CurveReport, Outcome> {
    let image = curve_image_report(curve, seed).map_err(contact_error)?;
    let goodness = is_good(curve.poly());
    let hint = (!goodness.good).then(|| {
        "the curve is not good; apply a random projectivity to get the degree formula".to_string()
    });
    Ok(CurveReport {
        curve: curve.poly().to_string(),
        image,
        singularities: curve.singularities().to_vec(),
        goodness_failures: goodness.reasons,
        hint,
    })
}

fn report(config: &RunConfig, text: &str) -> Step {
    let f = parse(text)?;
    let curve = PlaneCurve::new(f, config.seed).map_err(curve_input_error)?;
    let r = curve_report(&curve, config.seed)?;
    let code = if r.image.consistent() { EXIT_OK } else { EXIT_MATH };
    Ok((code, to_value(&r)))
}

#[derive(Serialize)]
struct DualReport {
    curve: String,
    nstar: u32,
    dual: Option<String>,
    dual_point: Option<ProjPoint>,
}

fn dual_options(config: &RunConfig) -> DualOptions {
    DualOptions {
        seed: config.seed,
        max_degree: config.max_degree,
    }
}

fn dual(config: &RunConfig, text: &str) -> Step {
    let f = parse(text)?;
    let d = dual_curve(&f, &dual_options(config)).map_err(curve_input_error)?;
    let (dual, dual_point) = match &d {
        DualCurve::Curve(g) => (Some(g.to_string()), None),
        DualCurve::Point(p) => (None, Some(p.clone())),
    };
    Ok((
        EXIT_OK,
        to_value(&DualReport {
            curve: f.to_string(),
            nstar: d.degree(),
            dual,
            dual_point,
        }),
    ))
}

#[derive(Serialize)]
struct LiftReport {
    point: ProjPoint,
    tangent: ProjPoint,
    image: ProjPoint,
}

fn lift(text: &str, point: &str) -> Step {
    let f = parse(text)?;
    let p = ProjPoint::parse(point).map_err(|e| Outcome::input(e.to_string()))?;
    if p.dim() != 3 {
        return Err(Outcome::input("the point needs three coordinates"));
    }
    let flag = horizontal_lift(&f, &p).map_err(contact_error)?;
    let image = bryant_map(&flag).map_err(contact_error)?;
    Ok((
        EXIT_OK,
        to_value(&LiftReport {
            point: flag.x().clone(),
            tangent: flag.y().clone(),
            image,
        }),
    ))
}

#[derive(Serialize)]
struct VerifyReport {
    curve: String,
    chart: usize,
    residual: String,
    contact: bool,
    control_residual_zero: bool,
}

fn verify(text: &str) -> Step {
    let f = parse(text)?;
    let check = verify_contact_symbolic(&f).map_err(contact_error)?;
    let control = verify_contact_with(&f, &swapped_components(&f)).map_err(contact_error)?;
    let r = VerifyReport {
        curve: f.to_string(),
        chart: check.chart,
        residual: check.residual.to_string(),
        contact: check.is_contact(),
        control_residual_zero: control.is_contact(),
    };
    let code = if r.contact { EXIT_OK } else { EXIT_MATH };
    Ok((code, to_value(&r)))
}

/// Reads `A01 A02 A03 A12 A13 A23`.
pub fn parse_matrix(text: &str) -> Result<AntisymMatrix4, String> {
    let parts: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    if parts.len() != 6 {
        return Err(format!("expected 6 entries A01 A02 A03 A12 A13 A23, got {}", parts.len()));
    }
    let mut upper: [Rat; 6] = Default::default();
    for (k, p) in parts.iter().enumerate() {
        upper[k] = parse_rat(p).ok_or_else(|| format!("entry {} ('{p}') is not a rational number", k + 1))?;
    }
    Ok(AntisymMatrix4::from_upper(upper))
}

#[derive(Serialize)]
struct LinesReport {
    matrix: Vec<String>,
    #[serde(flatten)]
    experiment: ExperimentReport,
    family_dimensions: Vec<usize>,
}

fn lines_report(phi: &ContactStructure, count: usize, seed: u64, jobs: Option<usize>) -> Result<LinesReport, Outcome> {
    let experiment = equivalence_experiment(phi, count, seed, jobs).map_err(|e| Outcome::math(e.to_string()))?;
    Ok(LinesReport {
        matrix: phi.matrix().upper().iter().map(ToString::to_string).collect(),
        experiment,
        family_dimensions: contact_line_family_dimensions(phi, 20, seed),
    })
}

fn lines(config: &RunConfig, matrix: Option<&str>, count: usize) -> Step {
    let a = match matrix {
        Some(m) => parse_matrix(m).map_err(Outcome::input)?,
        None => AntisymMatrix4::bryant(),
    };
    let phi = ContactStructure::new(a).map_err(|e| match e {
        LinesError::SingularStructure => Outcome::input(e.to_string()),
        other => Outcome::math(other.to_string()),
    })?;
    let r = lines_report(&phi, count, config.seed, config.jobs)?;
    let ok = r.experiment.agreements == r.experiment.lines_tested && r.family_dimensions.iter().all(|&d| d == 3);
    Ok((if ok { EXIT_OK } else { EXIT_MATH }, to_value(&r)))
}

#[derive(Serialize)]
struct EulerEntry {
    #[serde(flatten)]
    invariants: ThreefoldInvariants,
    /// `12 chi(O) - c1^3 / 8`, when defined.
    rhs: Option<i64>,
    pass: bool,
}

fn euler_entry(inv: &ThreefoldInvariants) -> EulerEntry {
    let check = euler_identity_check(inv);
    EulerEntry {
        invariants: inv.clone(),
        rhs: check.as_ref().ok().map(|_| 12 * inv.chi_o - inv.c1_cubed / 8),
        pass: check.unwrap_or(false),
    }
}

#[derive(Serialize)]
struct EulerReport {
    entries: Vec<EulerEntry>,
    symbolic_identity: bool,
}

fn euler(name: Option<&str>, file: Option<&PathBuf>) -> Step {
    let extra = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))?;
            load_catalog(&text).map_err(|e| Outcome::input(e.to_string()))?
        }
        None => Vec::new(),
    };
    let entries: Vec<ThreefoldInvariants> = match name {
        Some(n) => vec![lookup(n, &extra).map_err(|e| match e {
            InvariantsError::UnknownName(_) => Outcome::input(e.to_string()),
            other => Outcome::math(other.to_string()),
        })?],
        None => catalog().into_iter().chain(extra).collect(),
    };
    let r = EulerReport {
        entries: entries.iter().map(euler_entry).collect(),
        symbolic_identity: symbolic_identity_check(),
    };
    let ok = r.symbolic_identity && r.entries.iter().all(|e| e.pass);
    Ok((if ok { EXIT_OK } else { EXIT_MATH }, to_value(&r)))
}

#[derive(Serialize)]
struct CatalogCurveEntry {
    name: String,
    source: String,
    #[serde(flatten)]
    report: CurveReport,
    dual: Option<String>,
    involution: Option<bool>,
}

#[derive(Serialize)]
struct RandomContactEntry {
    curve: String,
    contact: bool,
}

#[derive(Serialize)]
struct FormEntry {
    name: String,
    form: String,
    volume: String,
}

#[derive(Serialize)]
struct PfaffianAgreement {
    matrices: usize,
    agreements: usize,
}

#[derive(Serialize)]
struct CatalogReport {
    seed: u64,
    curves: Vec<CatalogCurveEntry>,
    random_contact: Vec<RandomContactEntry>,
    control_residual_zero: bool,
    forms: Vec<FormEntry>,
    lines: Vec<LinesReport>,
    pfaffian_quadric: PfaffianAgreement,
    euler: EulerReport,
    euler_perturbations_failing: usize,
    euler_perturbations_total: usize,
    all_passed: bool,
}

/// Forms whose non-integrability is checked: Bryant's chart form, `dy + l dx`,
/// the two glued forms `dy + z1 dx` and `z2 dy + dx`, and the closed `dx`.
pub fn form_catalog() -> Vec<(String, PolyForm)> {
    let mut out = vec![(
        "bryant".to_string(),
        contact_form_from_matrix(&AntisymMatrix4::bryant(), 0).expect("chart 0"),
    )];
    let one_form = |names: [&str; 3], coeffs: [(i64, Option<usize>); 3]| {
        let v = Vars::new(names);
        let c: Vec<MultiPoly> = coeffs
            .iter()
            .map(|&(k, var)| match var {
                Some(i) => MultiPoly::var(&v, i).scale(&rat(k)),
                None => MultiPoly::constant(&v, rat(k)),
            })
            .collect();
        PolyForm::one_form(&v, &c)
    };
    out.push(("dy + l dx".into(), one_form(["x", "y", "l"], [(1, Some(2)), (1, None), (0, None)])));
    out.push(("dy + z1 dx".into(), one_form(["x", "y", "z1"], [(1, Some(2)), (1, None), (0, None)])));
    out.push(("z2 dy + dx".into(), one_form(["x", "y", "z2"], [(1, None), (1, Some(2)), (0, None)])));
    out.push(("dx".into(), one_form(["x", "y", "z"], [(1, None), (0, None), (0, None)])));
    out
}

fn full_catalog(config: &RunConfig) -> Step {
    let seed = config.seed;
    let opts = dual_options(config);
    let mut all_passed = true;
    let mut curves = Vec::new();
    for c in catalog_curves(seed).map_err(contact_error)? {
        let curve = PlaneCurve::new(c.curve.clone(), seed).map_err(curve_input_error)?;
        let report = curve_report(&curve, seed)?;
        all_passed &= report.image.consistent();
        let dual = dual_curve(curve.poly(), &opts).map_err(curve_input_error)?;
        let involution = if curve.degree() >= 2 {
            let holds = involution_check(&curve, &opts).map_err(contact_error)?.holds();
            all_passed &= holds;
            Some(holds)
        } else {
            None
        };
        curves.push(CatalogCurveEntry {
            name: c.name.to_string(),
            source: c.source.to_string(),
            report,
            dual: match dual {
                DualCurve::Curve(g) => Some(g.to_string()),
                DualCurve::Point(p) => Some(p.to_string()),
            },
            involution,
        });
    }
    let mut random_contact = Vec::new();
    for i in 0..10u64 {
        let degree = if i % 2 == 0 { 2 } else { 3 };
        let f = random_smooth_curve(degree, seed::derive_indexed(seed, "catalog-random", i));
        let (g, _) = crate::contactcurves::make_good(&f, seed::derive_indexed(seed, "catalog-good", i))
            .map_err(contact_error)?;
        let contact = verify_contact_symbolic(&g).map_err(contact_error)?.is_contact();
        all_passed &= contact;
        random_contact.push(RandomContactEntry {
            curve: g.to_string(),
            contact,
        });
    }
    let conic = parse_curve("x0^2 + x1^2 - x2^2").map_err(curve_input_error)?;
    let control_residual_zero = verify_contact_with(&conic, &swapped_components(&conic))
        .map_err(contact_error)?
        .is_contact();
    all_passed &= !control_residual_zero;
    let forms: Vec<FormEntry> = form_catalog()
        .into_iter()
        .map(|(name, form)| {
            let volume = nonintegrability_volume(&form).expect("three-variable one-forms");
            FormEntry {
                name,
                form: form.to_string(),
                volume: volume.to_string(),
            }
        })
        .collect();
    let mut lines = Vec::new();
    for k in 0..5u64 {
        let phi = random_structure(seed::derive_indexed(seed, "catalog-structure", k));
        let r = lines_report(&phi, 1000, seed::derive_indexed(seed, "catalog-lines", k), config.jobs)?;
        all_passed &= r.experiment.agreements == r.experiment.lines_tested;
        all_passed &= r.family_dimensions.iter().all(|&d| d == 3);
        lines.push(r);
    }
    let pf_agree = (0..100u64)
        .filter(|&k| {
            let a = random_antisymmetric(seed::derive_indexed(seed, "catalog-pfaffian", k));
            pfaffian(&a) == quadric_at_coefficients(&a)
        })
        .count();
    all_passed &= pf_agree == 100;
    let entries: Vec<ThreefoldInvariants> = catalog();
    let euler = EulerReport {
        entries: entries.iter().map(euler_entry).collect(),
        symbolic_identity: symbolic_identity_check(),
    };
    all_passed &= euler.symbolic_identity && euler.entries.iter().all(|e| e.pass);
    let perturbed: Vec<ThreefoldInvariants> = entries.iter().flat_map(perturbations).collect();
    let failing = perturbed
        .iter()
        .filter(|p| !euler_identity_check(p).unwrap_or(false))
        .count();
    all_passed &= failing == perturbed.len();
    let report = CatalogReport {
        seed,
        curves,
        random_contact,
        control_residual_zero,
        forms,
        lines,
        pfaffian_quadric: PfaffianAgreement {
            matrices: 100,
            agreements: pf_agree,
        },
        euler,
        euler_perturbations_failing: failing,
        euler_perturbations_total: perturbed.len(),
        all_passed,
    };
    Ok((if all_passed { EXIT_OK } else { EXIT_MATH }, to_value(&report)))
}

//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime, and the process exits nonzero if any criterion fails.
//!
//! Runs without the libtest harness: `cargo test --test acceptance`.

use std::time::{Duration, Instant};

use contactlab::cli::{form_catalog, run, Command, OutputFormat, RunConfig};
use contactlab::contactcurves::{
    catalog_curves, image_degree, make_good, random_smooth_curve, swapped_components, curve_image_report,
    verify_contact_symbolic, verify_contact_with,
};
use contactlab::contactforms::nonintegrability_volume;
use contactlab::contactlines::{
    equivalence_experiment, pfaffian, quadric_at_coefficients, random_antisymmetric, random_structure,
};
use contactlab::exactpoly::{dual_plane_vars, parse_poly, rat, HomogPoly};
use contactlab::invariants::{catalog, euler_identity_check, perturbations, symbolic_identity_check};
use contactlab::planecurves::{dual_curve, is_good, parse_curve, DualCurve, DualOptions, PlaneCurve};
use contactlab::seed;

const SEED: u64 = 0;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> (Verdict, Duration, bool) {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed < l);
    (v, elapsed, in_time)
}

fn dual_of(f: &HomogPoly) -> Option<HomogPoly> {
    match dual_curve(f, &DualOptions::default()) {
        Ok(DualCurve::Curve(g)) => Some(g),
        _ => None,
    }
}

fn conic_dual() -> Verdict {
    let f = parse_curve("x0^2+x1^2-x2^2").unwrap();
    let expected = HomogPoly::new(parse_poly("y0^2+y1^2-y2^2", &dual_plane_vars()).unwrap()).unwrap();
    match dual_of(&f) {
        Some(g) => verdict(g.is_proportional(&expected), format!("dual = {g}")),
        None => verdict(false, "no dual curve"),
    }
}

/// Biduality, each curve timed separately against the 10 s budget.
fn biduality() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for text in ["x0^2+x1^2-x2^2", "x0^2*x2 - x1^3 - x1^2*x2", "x0^3 - x1^2*x2"] {
        let start = Instant::now();
        let f = parse_curve(text).unwrap();
        let ok = dual_of(&f)
            .and_then(|g| dual_of(&g.rename(f.vars())))
            .is_some_and(|h| h.rename(f.vars()).is_proportional(&f));
        let t = start.elapsed();
        let ok = ok && t < Duration::from_secs(10);
        pass &= ok;
        notes.push(format!("{text}: {} in {:.2?}", if ok { "ok" } else { "failed" }, t));
    }
    verdict(pass, notes.join("; "))
}

fn degree_and_genus() -> Verdict {
    let expected = [("line", 1), ("conic", 4), ("nodal-cubic", 7), ("cuspidal-cubic", 6)];
    let curves = catalog_curves(SEED).unwrap();
    let mut pass = curves.len() == expected.len();
    let mut notes = Vec::new();
    for (c, (name, d)) in curves.iter().zip(expected) {
        let curve = PlaneCurve::new(c.curve.clone(), SEED).unwrap();
        let r = curve_image_report(&curve, SEED).unwrap();
        let independent = image_degree(&curve, SEED).unwrap().degree;
        let n = r.n as i64;
        let genus = (n - 1) * (n - 2) / 2 - r.delta as i64 - r.kappa as i64;
        let ok = c.name == name
            && is_good(curve.poly()).good
            && r.d_formula == r.n + r.nstar
            && r.d_formula == d
            && independent == d
            && r.genus as i64 == genus;
        pass &= ok;
        notes.push(format!("{name}: n+n*={} independent={independent} g={}", r.d_formula, r.genus));
    }
    verdict(pass, notes.join("; "))
}

fn contact_identity() -> Verdict {
    let mut checked = 0;
    let mut pass = true;
    for c in catalog_curves(SEED).unwrap() {
        pass &= verify_contact_symbolic(&c.curve).unwrap().is_contact();
        checked += 1;
    }
    for i in 0..10u64 {
        let degree = if i % 2 == 0 { 2 } else { 3 };
        let f = random_smooth_curve(degree, seed::derive_indexed(SEED, "acceptance-random", i));
        let (g, _) = make_good(&f, seed::derive_indexed(SEED, "acceptance-good", i)).unwrap();
        pass &= is_good(&g).good;
        pass &= verify_contact_symbolic(&g).unwrap().is_contact();
        checked += 1;
    }
    let conic = parse_curve("x0^2+x1^2-x2^2").unwrap();
    let control = verify_contact_with(&conic, &swapped_components(&conic)).unwrap();
    let control_nonzero = !control.is_contact();
    verdict(
        pass && control_nonzero,
        format!("{checked} curves with zero residual; control residual {}", control.residual),
    )
}

fn nonintegrability() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, form) in form_catalog() {
        let vol = nonintegrability_volume(&form).unwrap();
        let c = vol.constant_value();
        let ok = match name.as_str() {
            "bryant" => c == Some(rat(2)),
            "dx" => vol.is_zero(),
            _ => c.is_some_and(|c| c != rat(0)),
        };
        pass &= ok;
        notes.push(format!("{name}: {vol}"));
    }
    verdict(pass, notes.join("; "))
}

fn lines_equivalence() -> Verdict {
    let mut agreements = 0;
    let mut total = 0;
    for k in 0..5u64 {
        let phi = random_structure(seed::derive_indexed(SEED, "acceptance-structure", k));
        let r = equivalence_experiment(&phi, 1000, seed::derive_indexed(SEED, "acceptance-lines", k), None).unwrap();
        agreements += r.agreements;
        total += r.lines_tested;
    }
    let pf_ok = (0..100u64)
        .filter(|&k| {
            let a = random_antisymmetric(seed::derive_indexed(SEED, "acceptance-pfaffian", k));
            pfaffian(&a) == quadric_at_coefficients(&a)
        })
        .count();
    verdict(
        agreements == 5000 && total == 5000 && pf_ok == 100,
        format!("{agreements}/{total} lines agree; Pfaffian = quadric on {pf_ok}/100"),
    )
}

fn euler_identity() -> Verdict {
    let entries = catalog();
    let base = entries.iter().all(|e| euler_identity_check(e) == Ok(true));
    let perturbed: Vec<_> = entries.iter().flat_map(perturbations).collect();
    let failing = perturbed.iter().filter(|p| euler_identity_check(p) != Ok(true)).count();
    let symbolic = symbolic_identity_check();
    let names: Vec<String> = entries
        .iter()
        .map(|e| format!("{}: {} = {} - {}", e.name, e.chi_top, 12 * e.chi_o, e.c1_cubed / 8))
        .collect();
    verdict(
        base && failing == perturbed.len() && symbolic,
        format!("{}; {failing}/{} perturbations fail; symbolic {symbolic}", names.join(", "), perturbed.len()),
    )
}

fn determinism() -> Verdict {
    let config = RunConfig {
        seed: SEED,
        format: OutputFormat::Json,
        ..RunConfig::new(Command::Catalog)
    };
    let a = run(&config);
    let b = run(&RunConfig { jobs: Some(3), ..config.clone() });
    verdict(
        a.code == 0 && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!("{} bytes, exit {}, identical: {}", a.stdout.len(), a.code, a.stdout == b.stdout),
    )
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: Vec<(&str, Option<Duration>, fn() -> Verdict)> = vec![
        ("1 dual of the circle conic", secs(1), conic_dual),
        ("2 biduality", secs(30), biduality),
        ("3 contact image degree and genus", secs(30), degree_and_genus),
        ("4 contact identity", secs(30), contact_identity),
        ("5 non-integrability catalog", None, nonintegrability),
        ("6 contact lines and the Plucker hyperplane", secs(5), lines_equivalence),
        ("7 Euler characteristic identity", None, euler_identity),
        ("8 determinism", None, determinism),
    ];
    let total = criteria.len();
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let (v, elapsed, in_time) = timed(limit, f);
        let pass = v.pass && in_time;
        let budget = limit.map_or(String::new(), |l| format!(", limit {l:?}"));
        println!(
            "{} criterion {name} ({elapsed:.2?}{budget}): {}",
            if pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !pass {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {total} criteria passed");
    } else {
        eprintln!("acceptance: failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

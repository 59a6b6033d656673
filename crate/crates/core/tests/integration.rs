//! Cross-module checks on plane curves, their duals and contact images.

use contactlab::contactcurves::{contact_image, make_good, curve_image_report};
use contactlab::exactpoly::{dual_plane_vars, is_squarefree, plane_vars, rat, HomogPoly, MultiPoly, Rat};
use contactlab::planecurves::{
    dual_curve, intersection_multiplicity_at, parse_curve, singular_points, tangency_discriminant, DualCurve,
    DualOptions, PlaneCurve,
};
use contactlab::projective::{random_projectivity, ProjPoint, RatMatrix};
use contactlab::seed;
use rand::Rng;

fn quadratic_form(m: &RatMatrix, vars: &contactlab::exactpoly::Vars) -> HomogPoly {
    let mut q = MultiPoly::zero(vars);
    for i in 0..3 {
        for j in 0..3 {
            let t = &MultiPoly::var(vars, i) * &MultiPoly::var(vars, j);
            q = q + t.scale(&m.rows[i][j]);
        }
    }
    HomogPoly::new(q).unwrap()
}

#[test]
fn random_conic_duals_are_inverse_forms() {
    let mut rng = seed::rng(seed::derive(0, "conics"));
    let mut tested = 0;
    while tested < 20 {
        let mut rows = vec![vec![Rat::from_integer(0.into()); 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v = rat(rng.gen_range(-6..=6));
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        let m = RatMatrix { rows };
        let Ok(inv) = m.inverse() else { continue };
        let f = quadratic_form(&m, &plane_vars());
        let dual = dual_curve(&f, &DualOptions::default()).unwrap();
        let expected = quadratic_form(&inv, &dual_plane_vars());
        assert!(dual.curve().unwrap().is_proportional(&expected), "{f}");
        tested += 1;
    }
}

fn normalized(points: &[ProjPoint]) -> Vec<Vec<num_bigint::BigInt>> {
    let mut v: Vec<_> = points.iter().map(ProjPoint::primitive).collect();
    v.sort();
    v
}

#[test]
fn singular_points_are_equivariant() {
    for text in ["x0^2*x2 - x1^3 - x1^2*x2", "x0^3 - x1^2*x2", "x0*x1*x2", "x0^2*x1^2 + x1^2*x2^2 + x0^2*x2^2"] {
        let f = parse_curve(text).unwrap();
        let sing = singular_points(&f, 1).unwrap();
        for k in 0..3 {
            let p = random_projectivity(seed::derive_indexed(5, "equivariance", k));
            let g = p.act_on_curve(&f);
            let moved = singular_points(&g, 2).unwrap();
            let image: Vec<ProjPoint> = sing.iter().map(|s| p.map_point(&s.point)).collect();
            let got: Vec<ProjPoint> = moved.iter().map(|s| s.point.clone()).collect();
            assert_eq!(normalized(&image), normalized(&got), "{text}");
            let mut kinds_a: Vec<_> = sing.iter().map(|s| s.kind).collect();
            let mut kinds_b: Vec<_> = moved.iter().map(|s| s.kind).collect();
            kinds_a.sort();
            kinds_b.sort();
            assert_eq!(kinds_a, kinds_b);
        }
    }
}

#[test]
fn duals_are_squarefree() {
    for text in [
        "x0^2 + x1^2 - x2^2",
        "x0^3 + x1^3 + x2^3",
        "x0^2*x2 - x1^3 - x1^2*x2",
        "x0^3 - x1^2*x2",
    ] {
        let f = parse_curve(text).unwrap();
        let DualCurve::Curve(g) = dual_curve(&f, &DualOptions::default()).unwrap() else {
            panic!("{text}: dual is a point")
        };
        assert!(is_squarefree(g.poly()), "{text}");
    }
}

#[test]
fn node_factor_leaves_the_discriminant() {
    let f = parse_curve("x0^2*x2 - x1^3 - x1^2*x2").unwrap();
    let disc = tangency_discriminant(&f).unwrap();
    assert_eq!(disc.total_degree(), 6);
    let y2 = MultiPoly::var(disc.vars(), 2);
    let (rest, k) = disc.remove_factor(&y2);
    assert_eq!(k, 2);
    assert_eq!(rest.total_degree(), 4);
    let dual = dual_curve(&f, &DualOptions::default()).unwrap();
    assert!(rest.is_proportional(dual.curve().unwrap().poly()));
}

#[test]
fn base_points_absorb_two_delta_plus_three_kappa() {
    for (k, text) in ["x0^2*x2 - x1^3 - x1^2*x2", "x0^3 - x1^2*x2", "x0^2 + x1^2 - x2^2"].iter().enumerate() {
        let (g, _) = make_good(&parse_curve(text).unwrap(), seed::derive_indexed(3, "base", k as u64)).unwrap();
        let curve = PlaneCurve::new(g, 0).unwrap();
        let map = contact_image(&curve).unwrap();
        let mut rng = seed::rng(seed::derive_indexed(3, "section", k as u64));
        let h: Vec<Rat> = (0..4).map(|_| rat(rng.gen_range(-1000..=1000))).collect();
        let section = map
            .components()
            .iter()
            .zip(&h)
            .fold(MultiPoly::zero(curve.poly().vars()), |acc, (c, hi)| acc + c.scale(hi));
        let section = HomogPoly::new(section).unwrap();
        let lost: u32 = map
            .base_locus()
            .iter()
            .map(|p| intersection_multiplicity_at(curve.poly(), &section, p, 11).unwrap())
            .sum();
        assert_eq!(lost, 2 * curve.delta() + 3 * curve.kappa(), "{text}");
    }
}

#[test]
fn genus_is_passed_through() {
    for (text, genus) in [("x0^2 + x1^2 - x2^2", 0), ("x0^3 + x1^3 + x2^3", 1), ("x0^3 - x1^2*x2", 0)] {
        let curve = PlaneCurve::parse(text, 0).unwrap();
        let report = curve_image_report(&curve, 0).unwrap();
        assert_eq!(report.genus, genus, "{text}");
        assert_eq!(report.genus, curve.plucker_numbers().unwrap().genus);
    }
}

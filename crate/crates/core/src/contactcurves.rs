//! Plane curves lifted to the flag variety and carried into CP^3 by Bryant's
//! map; exact verification that the image is a contact curve, its degree,
//! and the duality involution.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::contactforms::{contact_form_from_matrix, pullback, AntisymMatrix4, FormError, RationalMap};
use crate::exactpoly::{gcd, plane_vars, rat, HomogPoly, MultiPoly, PolyError, Rat, UniPoly};
use crate::planecurves::{
    dual_curve, intersection_multiplicity_at, is_good, CurveError, DualCurve, DualOptions, PlaneCurve,
};
use crate::projective::{random_projectivity, ProjPoint, Projectivity, ProjectiveError};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("gradient vanishes at the point")]
    GradientVanishes,
    #[error("point and line are not incident")]
    NotIncident,
    #[error("Bryant's map is undefined at this flag")]
    IndeterminatePoint,
    #[error("all components of the contact image vanish identically")]
    DegenerateImage,
    #[error("every CP^3 chart coordinate vanishes on the curve")]
    ChartUnavailable,
    #[error("no generic hyperplane found in {0} draws")]
    NonGenericHyperplane(usize),
    #[error("no projectivity making the curve good in {0} attempts")]
    NoGoodProjectivity(usize),
    #[error("the involution is not defined for lines")]
    NotApplicable,
}

/// A point of the flag variety: `x` in CP^2, `y` a line through it.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagPoint {
    x: ProjPoint,
    y: ProjPoint,
}

impl FlagPoint {
    pub fn new(x: ProjPoint, y: ProjPoint) -> Result<Self, ContactError> {
        if x.dim() != 3 || y.dim() != 3 {
            return Err(ProjectiveError::WrongDimension(x.dim().max(y.dim())).into());
        }
        if !x.dot(&y).is_zero() {
            return Err(ContactError::NotIncident);
        }
        Ok(FlagPoint { x, y })
    }

    pub fn x(&self) -> &ProjPoint {
        &self.x
    }

    pub fn y(&self) -> &ProjPoint {
        &self.y
    }
}

/// `p -> (p, [grad F(p)])`, the point with its tangent line.
pub fn horizontal_lift(f: &HomogPoly, p: &ProjPoint) -> Result<FlagPoint, ContactError> {
    if p.dim() != 3 {
        return Err(ProjectiveError::WrongDimension(p.dim()).into());
    }
    if !f.eval(p.coords()).is_zero() {
        return Err(ContactError::NotOnCurve);
    }
    let grad: Vec<Rat> = f.gradient().iter().map(|d| d.eval(p.coords())).collect();
    let y = ProjPoint::new(grad).map_err(|_| ContactError::GradientVanishes)?;
    FlagPoint::new(p.clone(), y)
}

fn bryant_vector(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let two = rat(2);
    vec![
        &two * &x[2] * &y[0],
        &two * &x[0] * &y[0] + &x[1] * &y[1],
        &two * &x[1] * &y[0],
        -(&x[2] * &y[1]),
    ]
}

/// `([x], [y]) -> [2 x2 y0, 2 x0 y0 + x1 y1, 2 x1 y0, -x2 y1]`.
pub fn bryant_map(pt: &FlagPoint) -> Result<ProjPoint, ContactError> {
    ProjPoint::new(bryant_vector(pt.x.coords(), pt.y.coords())).map_err(|_| ContactError::IndeterminatePoint)
}

/// Components of Bryant's map composed with the lift, `y = grad F`.
pub fn bryant_components(f: &HomogPoly) -> [MultiPoly; 4] {
    let g = f.gradient();
    let v = f.vars();
    let x = |i| MultiPoly::var(v, i);
    let two = rat(2);
    [
        (&x(2) * &g[0]).scale(&two),
        (&x(0) * &g[0]).scale(&two) + &x(1) * &g[1],
        (&x(1) * &g[0]).scale(&two),
        -(&x(2) * &g[1]),
    ]
}

/// The contact curve `f(D~)` carried as a map on `D`.
#[derive(Clone, Debug)]
pub struct SpaceCurveMap {
    source: PlaneCurve,
    components: [MultiPoly; 4],
    base_locus: Vec<ProjPoint>,
}

impl SpaceCurveMap {
    pub fn source(&self) -> &PlaneCurve {
        &self.source
    }

    pub fn components(&self) -> &[MultiPoly; 4] {
        &self.components
    }

    /// Rational points of `D` where all four components vanish: the
    /// singular points, plus points on `x2 = 0` for curves that are not good.
    pub fn base_locus(&self) -> &[ProjPoint] {
        &self.base_locus
    }

    pub fn eval(&self, p: &ProjPoint) -> Option<ProjPoint> {
        ProjPoint::new(self.components.iter().map(|c| c.eval(p.coords())).collect()).ok()
    }
}

pub fn contact_image(curve: &PlaneCurve) -> Result<SpaceCurveMap, ContactError> {
    let components = bryant_components(curve.poly());
    if components.iter().all(MultiPoly::is_zero) {
        return Err(ContactError::DegenerateImage);
    }
    let mut base_locus: Vec<ProjPoint> = curve.singularities().iter().map(|s| s.point.clone()).collect();
    for p in base_points_at_infinity(curve.poly(), &components)? {
        if !base_locus.contains(&p) {
            base_locus.push(p);
        }
    }
    base_locus.sort_by_key(ProjPoint::sort_key);
    Ok(SpaceCurveMap {
        source: curve.clone(),
        components,
        base_locus,
    })
}

/// Rational common zeros of `F` and the components on the line `x2 = 0`.
fn base_points_at_infinity(f: &HomogPoly, comps: &[MultiPoly; 4]) -> Result<Vec<ProjPoint>, ContactError> {
    let zero = Rat::zero();
    let mut h = f.poly().specialize(2, &zero);
    for c in comps {
        h = gcd(&h, &c.specialize(2, &zero));
    }
    if h.is_zero() || h.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    if h.coefficient(&[h.total_degree(), 0, 0]).is_zero() {
        out.push(ProjPoint::basis(3, 0));
    }
    let affine = UniPoly::from_multi(&h.specialize(1, &Rat::one()), 0)?;
    for a in affine.rational_roots()? {
        out.push(ProjPoint::new(vec![a, Rat::one(), zero.clone()])?);
    }
    Ok(out)
}

/// Outcome of the symbolic contact check.
#[derive(Clone, Debug)]
pub struct ContactCheck {
    /// `theta(D Phi . v)` with denominators cleared, reduced modulo `F~`.
    pub residual: MultiPoly,
    /// CP^3 chart `z_chart = 1` in which the check was done.
    pub chart: usize,
}

impl ContactCheck {
    pub fn is_contact(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Checks that `Phi(D)` is a contact curve for Bryant's structure.
pub fn verify_contact_symbolic(f: &HomogPoly) -> Result<ContactCheck, ContactError> {
    verify_contact_with(f, &bryant_components(f))
}

/// The contact check for an arbitrary map `D -> CP^3` given by four
/// homogeneous components; used for control experiments.
///
/// In the chart `x2 = 1`, with `F~(x, y) = F(x, y, 1)` and tangent field
/// `v = (F~_y, -F~_x)`, the chart form of Bryant's structure is pulled back
/// through `z_k = phi_k / phi_c` and evaluated on `v`. The numerator is
/// reduced modulo `F~`; it vanishes iff the image is contact.
pub fn verify_contact_with(f: &HomogPoly, components: &[MultiPoly; 4]) -> Result<ContactCheck, ContactError> {
    let one = Rat::one();
    let ft = f.poly().specialize(2, &one);
    if ft.is_constant() {
        return Err(ContactError::ChartUnavailable);
    }
    let phi: Vec<MultiPoly> = components.iter().map(|c| c.specialize(2, &one)).collect();
    let chart = (0..4)
        .find(|&c| !phi[c].div_rem(&ft).map(|(_, r)| r.is_zero()).unwrap_or(true))
        .ok_or(ContactError::ChartUnavailable)?;
    let theta = contact_form_from_matrix(&AntisymMatrix4::bryant(), chart)?;
    let map = RationalMap {
        numerators: (0..4).filter(|&k| k != chart).map(|k| phi[k].clone()).collect(),
        denominator: phi[chart].clone(),
    };
    let pulled = pullback(&theta, &map)?;
    let v = [ft.derivative(1), -ft.derivative(0), MultiPoly::zero(ft.vars())];
    let value = pulled.numerator.contract(&v)?;
    let (_, residual) = value.div_rem(&ft)?;
    Ok(ContactCheck { residual, chart })
}

/// The control map: Bryant's components with `Phi2` and `Phi3` swapped.
pub fn swapped_components(f: &HomogPoly) -> [MultiPoly; 4] {
    let [a, b, c, d] = bryant_components(f);
    [a, b, d, c]
}

pub const HYPERPLANE_DRAWS: usize = 10;
const HYPERPLANE_AGREEMENT: usize = 3;
const HYPERPLANE_RANGE: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEstimate {
    pub degree: u32,
    /// False when the curve is not good; the number is then only an
    /// estimate.
    pub good: bool,
    pub draws: Vec<u32>,
}

/// Degree of the contact image, counted as `n^2` minus the intersection
/// multiplicities of `F` and `H o Phi` at the base points, for seeded
/// random hyperplanes `H`.
///
/// Special hyperplanes can only raise the multiplicities, so the count is
/// accepted once its maximum has been seen three times.
pub fn image_degree(curve: &PlaneCurve, seed: u64) -> Result<DegreeEstimate, ContactError> {
    let map = contact_image(curve)?;
    let f = curve.poly();
    let n = f.degree();
    let vars = f.vars();
    let mut draws = Vec::new();
    for k in 0..HYPERPLANE_DRAWS {
        let draw_seed = seed::derive_indexed(seed, "hyperplane", k as u64);
        let mut rng = seed::rng(draw_seed);
        let h: Vec<Rat> = (0..4)
            .map(|_| rat(rng.gen_range(-HYPERPLANE_RANGE..=HYPERPLANE_RANGE)))
            .collect();
        let section = map
            .components()
            .iter()
            .zip(&h)
            .fold(MultiPoly::zero(vars), |acc, (c, hi)| acc + c.scale(hi));
        if section.is_zero() || !gcd(f.poly(), &section).is_constant() {
            continue;
        }
        let section = HomogPoly::new(section)?;
        let mut lost = 0;
        for p in map.base_locus() {
            lost += intersection_multiplicity_at(f, &section, p, draw_seed)?;
        }
        draws.push((n * n).saturating_sub(lost));
        let best = *draws.iter().max().expect("nonempty");
        if draws.iter().filter(|&&d| d == best).count() >= HYPERPLANE_AGREEMENT {
            return Ok(DegreeEstimate {
                degree: best,
                good: is_good(f).good,
                draws,
            });
        }
    }
    Err(ContactError::NonGenericHyperplane(HYPERPLANE_DRAWS))
}

pub const GOOD_PROJECTIVITY_ATTEMPTS: usize = 32;

/// A seeded random projectivity `M` such that `M(D)` is good, with the
/// transformed equation `F o M^-1`.
pub fn make_good(f: &HomogPoly, seed: u64) -> Result<(HomogPoly, Projectivity), ContactError> {
    for k in 0..GOOD_PROJECTIVITY_ATTEMPTS {
        let m = random_projectivity(seed::derive_indexed(seed, "good-projectivity", k as u64));
        let g = m.act_on_curve(f);
        let g = HomogPoly::new(g.poly().primitive_integer())?;
        if is_good(&g).good {
            return Ok((g, m));
        }
    }
    Err(ContactError::NoGoodProjectivity(GOOD_PROJECTIVITY_ATTEMPTS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    /// `dual(dual(F))` is proportional to `F`.
    pub biduality: bool,
    /// `deg C = n + n*` equals `deg sigma(C) = n* + n**`.
    pub degree_match: bool,
    /// `g(D) = g(D*)`, with `g(D*)` from the dual Plücker formulas.
    pub genus_match: bool,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        self.biduality && self.degree_match && self.genus_match
    }
}

/// Checks that `sigma`, which swaps the roles of `CP^2` and `CP^2*`, is an
/// involution on the contact image: the dual of the dual is the curve again,
/// and `sigma(C)` has the degree and genus of `C`.
pub fn involution_check(curve: &PlaneCurve, opts: &DualOptions) -> Result<InvolutionReport, ContactError> {
    let n = curve.degree();
    if n < 2 {
        return Err(ContactError::NotApplicable);
    }
    let dual = dual_curve(curve.poly(), opts)?;
    let DualCurve::Curve(g) = &dual else {
        return Err(ContactError::NotApplicable);
    };
    let g_plane = g.rename(&plane_vars());
    let back = dual_curve(&g_plane, opts)?;
    let back = back.curve().ok_or(ContactError::NotApplicable)?;
    let back = back.rename(&plane_vars());
    let biduality = back.is_proportional(curve.poly());
    let nstar = g.degree() as i64;
    let nn = back.degree() as i64;
    let degree_match = n as i64 + nstar == nstar + nn;
    let (ni, d, k) = (n as i64, curve.delta() as i64, curve.kappa() as i64);
    let genus = (ni - 1) * (ni - 2) / 2 - d - k;
    let kappa_star = 3 * ni * (ni - 2) - 6 * d - 8 * k;
    let twice_delta_star = nstar * (nstar - 1) - ni - 3 * kappa_star;
    let genus_match = twice_delta_star >= 0
        && twice_delta_star % 2 == 0
        && (nstar - 1) * (nstar - 2) / 2 - twice_delta_star / 2 - kappa_star == genus;
    Ok(InvolutionReport {
        biduality,
        degree_match,
        genus_match,
    })
}

/// `d = n + n*` against the independent degree count, together with the
/// genus and the contact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub n: u32,
    pub delta: u32,
    pub kappa: u32,
    pub nstar: u32,
    pub d_formula: u32,
    /// `None` when the curve is not good.
    pub d_independent: Option<u32>,
    pub genus: u32,
    pub good: bool,
    pub contact_residual_zero: bool,
}

impl ImageReport {
    /// The degree formula holds (vacuously for curves that are not good)
    /// and the image is contact.
    pub fn consistent(&self) -> bool {
        self.contact_residual_zero && (!self.good || self.d_independent == Some(self.d_formula))
    }
}

pub fn curve_image_report(curve: &PlaneCurve, seed: u64) -> Result<ImageReport, ContactError> {
    let p = curve.plucker_numbers()?;
    let good = is_good(curve.poly()).good;
    let d_independent = if good {
        Some(image_degree(curve, seed)?.degree)
    } else {
        None
    };
    let contact_residual_zero = match verify_contact_symbolic(curve.poly()) {
        Ok(check) => check.is_contact(),
        Err(ContactError::ChartUnavailable) => false,
        Err(e) => return Err(e),
    };
    Ok(ImageReport {
        n: p.n,
        delta: p.delta,
        kappa: p.kappa,
        nstar: p.nstar,
        d_formula: p.n + p.nstar,
        d_independent,
        genus: p.genus,
        good,
        contact_residual_zero,
    })
}

/// A named curve of the standard catalog.
#[derive(Clone, Debug)]
pub struct CatalogCurve {
    pub name: &'static str,
    /// The equation as written, before any change of coordinates.
    pub source: HomogPoly,
    /// The good curve actually used.
    pub curve: HomogPoly,
}

const CATALOG: [(&str, &str, bool); 4] = [
    ("line", "x0 + x1 + x2", false),
    ("conic", "x0^2 + x1^2 - x2^2", false),
    ("nodal-cubic", "x1^2*x2 - x0^3 - x0^2*x2", true),
    ("cuspidal-cubic", "x1^2*x2 - x0^3", true),
];

/// Line, circle conic, and the nodal and cuspidal cubics moved by a seeded
/// projectivity until they are good.
pub fn catalog_curves(seed: u64) -> Result<Vec<CatalogCurve>, ContactError> {
    CATALOG
        .iter()
        .map(|&(name, text, randomize)| {
            let source = crate::planecurves::parse_curve(text)?;
            let curve = if randomize {
                make_good(&source, seed::derive(seed, name))?.0
            } else {
                source.clone()
            };
            Ok(CatalogCurve { name, source, curve })
        })
        .collect()
}

/// Seeded random smooth plane curve of the given degree with coefficients
/// in `{-5, ..., 5}`.
pub fn random_smooth_curve(degree: u32, seed: u64) -> HomogPoly {
    let vars = plane_vars();
    let monomials: Vec<Vec<u32>> = (0..=degree)
        .flat_map(|a| (0..=degree - a).map(move |b| vec![a, b, degree - a - b]))
        .collect();
    for k in 0u64.. {
        let mut rng = seed::rng(seed::derive_indexed(seed, "random-curve", k));
        let p = monomials.iter().fold(MultiPoly::zero(&vars), |acc, e| {
            acc + MultiPoly::monomial(&vars, e.clone(), rat(rng.gen_range(-5..=5)))
        });
        let Ok(f) = HomogPoly::new(p) else { continue };
        if f.degree() != degree {
            continue;
        }
        if crate::planecurves::singular_points(&f, seed).is_ok_and(|s| s.is_empty()) {
            return f;
        }
    }
    unreachable!("smooth curves are dense")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planecurves::parse_curve;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn curve(text: &str) -> PlaneCurve {
        PlaneCurve::parse(text, 0).unwrap()
    }

    #[test]
    fn lift_of_circle() {
        let f = parse_curve("x0^2+x1^2-x2^2").unwrap();
        let lift = horizontal_lift(&f, &pt(&[0, 1, 1])).unwrap();
        assert_eq!(lift.y(), &pt(&[0, 1, -1]));
        assert_eq!(horizontal_lift(&f, &pt(&[1, 1, 1])), Err(ContactError::NotOnCurve));
        let nodal = parse_curve("x1^2*x2 - x0^3 - x0^2*x2").unwrap();
        assert_eq!(horizontal_lift(&nodal, &pt(&[0, 0, 1])), Err(ContactError::GradientVanishes));
    }

    #[test]
    fn bryant_map_values() {
        let a = FlagPoint::new(pt(&[0, 0, 1]), pt(&[1, 0, 0])).unwrap();
        assert_eq!(bryant_map(&a).unwrap(), pt(&[1, 0, 0, 0]));
        let b = FlagPoint::new(pt(&[1, 1, 1]), pt(&[-1, 0, 1])).unwrap();
        assert_eq!(bryant_map(&b).unwrap(), pt(&[1, 1, 1, 0]));
        let c = FlagPoint::new(pt(&[1, 0, 0]), pt(&[0, 0, 1])).unwrap();
        assert_eq!(bryant_map(&c), Err(ContactError::IndeterminatePoint));
        assert_eq!(FlagPoint::new(pt(&[1, 0, 0]), pt(&[1, 0, 0])), Err(ContactError::NotIncident));
    }

    #[test]
    fn affine_chart_agreement() {
        // [l1, x l1 - y l2 / 2, y l1, l2 / 2] with x = x0/x2, y = x1/x2 and
        // [l1, l2] = [-y0, y1].
        let mut rng = seed::rng(7);
        for _ in 0..50 {
            let x: Vec<Rat> = (0..2).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let y1 = rat(rng.gen_range(-9..=9));
            let y0 = rat(rng.gen_range(1..=9));
            let y2 = -(&x[0] * &y0 + &x[1] * &y1);
            let flag = FlagPoint::new(
                ProjPoint::new(vec![x[0].clone(), x[1].clone(), Rat::one()]).unwrap(),
                ProjPoint::new(vec![y0.clone(), y1.clone(), y2]).unwrap(),
            )
            .unwrap();
            let (l1, l2) = (-y0, y1);
            let half = crate::exactpoly::rat_frac(1, 2);
            let affine = ProjPoint::new(vec![
                l1.clone(),
                &x[0] * &l1 - &x[1] * &l2 * &half,
                &x[1] * &l1,
                &l2 * &half,
            ])
            .unwrap();
            assert_eq!(bryant_map(&flag).unwrap(), affine);
        }
    }

    #[test]
    fn circle_components() {
        let f = parse_curve("x0^2+x1^2-x2^2").unwrap();
        let texts: Vec<String> = bryant_components(&f).iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, ["4*x0*x2", "4*x0^2 + 2*x1^2", "4*x0*x1", "-2*x1*x2"]);
    }

    #[test]
    fn image_matches_lift() {
        let c = curve("x0^2+x1^2-x2^2");
        let map = contact_image(&c).unwrap();
        let p = pt(&[3, 4, 5]);
        let direct = bryant_map(&horizontal_lift(c.poly(), &p).unwrap()).unwrap();
        assert_eq!(map.eval(&p).unwrap(), direct);
        assert!(map.base_locus().is_empty());
    }

    #[test]
    fn contact_residuals() {
        for text in ["x0^2+x1^2-x2^2", "x1^2*x2 - x0^3 - x0^2*x2", "x1^2*x2 - x0^3"] {
            let f = parse_curve(text).unwrap();
            assert!(verify_contact_symbolic(&f).unwrap().is_contact(), "{text}");
        }
        let f = parse_curve("x0^2+x1^2-x2^2").unwrap();
        let control = verify_contact_with(&f, &swapped_components(&f)).unwrap();
        assert!(!control.is_contact());
    }

    #[test]
    fn degrees() {
        assert_eq!(image_degree(&curve("x0^2+x1^2-x2^2"), 0).unwrap().degree, 4);
        let (nodal, _) = make_good(&parse_curve("x1^2*x2 - x0^3 - x0^2*x2").unwrap(), 0).unwrap();
        let nodal = PlaneCurve::new(nodal, 0).unwrap();
        assert_eq!(image_degree(&nodal, 0).unwrap().degree, 7);
        let (cusp, _) = make_good(&parse_curve("x1^2*x2 - x0^3").unwrap(), 0).unwrap();
        let cusp = PlaneCurve::new(cusp, 0).unwrap();
        assert_eq!(image_degree(&cusp, 0).unwrap().degree, 6);
    }

    #[test]
    fn reports() {
        let r = curve_image_report(&curve("x0^2+x1^2-x2^2"), 0).unwrap();
        assert_eq!((r.n, r.nstar, r.d_formula, r.d_independent, r.genus), (2, 2, 4, Some(4), 0));
        assert!(r.good && r.contact_residual_zero && r.consistent());
        let line = curve_image_report(&curve("x0+x1+x2"), 0).unwrap();
        assert_eq!((line.n, line.nstar, line.d_formula, line.d_independent), (1, 0, 1, Some(1)));
        let bad = curve_image_report(&curve("x1^2*x2 - x0^3 - x0^2*x2"), 0).unwrap();
        assert!(!bad.good);
        assert_eq!(bad.d_independent, None);
    }

    #[test]
    fn involution() {
        let opts = DualOptions::default();
        for text in ["x0^2+x1^2-x2^2", "x1^2*x2 - x0^3", "x1^2*x2 - x0^3 - x0^2*x2"] {
            assert!(involution_check(&curve(text), &opts).unwrap().holds(), "{text}");
        }
        assert_eq!(involution_check(&curve("x0"), &opts), Err(ContactError::NotApplicable));
    }
}

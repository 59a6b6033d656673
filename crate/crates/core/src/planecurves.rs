//! Reduced plane curves: singular points and their node/cusp type, the
//! dual curve, the goodness test, Plücker numbers and local intersection
//! multiplicities.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{
    binary_discriminant, dual_plane_vars, gcd, is_squarefree, plane_vars, rat, resultant_in,
    squarefree_decomposition, squarefree_part, valuation_in, HomogPoly, MultiPoly, PolyError, Rat,
    UniPoly, Vars,
};
use crate::projective::{random_projectivity, ProjPoint};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected a homogeneous polynomial in x0, x1, x2 of degree at least {0}")]
    NotACurve(u32),
    #[error("a singular point has irrational coordinates")]
    IrrationalSingularity,
    #[error("singular point {0} is neither a node nor a cusp")]
    UnsupportedSingularity(String),
    #[error("dual curve has degree {got}, expected {expected}")]
    DualDegreeMismatch { expected: i64, got: i64 },
    #[error("the dual of this curve is a finite set of points")]
    DegenerateDual,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("singularity counts make n* = {nstar} or g = {genus} negative")]
    ContradictorySingularityData { nstar: i64, genus: i64 },
    #[error("the curves share a component through the point")]
    NonIsolatedIntersection,
    #[error("no generic coordinate system found after {0} attempts")]
    GenericityFailed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularityKind {
    Node,
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub kind: SingularityKind,
}

/// A squarefree plane curve together with its (rational) singular points.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: HomogPoly,
    singularities: Vec<SingularPoint>,
}

impl PlaneCurve {
    /// Replaces `f` by its squarefree part if needed and locates the
    /// singular points.
    pub fn new(f: HomogPoly, seed: u64) -> Result<Self, CurveError> {
        let f = reduce(f)?;
        let singularities = singular_points(&f, seed)?;
        Ok(PlaneCurve { f, singularities })
    }

    pub fn parse(text: &str, seed: u64) -> Result<Self, CurveError> {
        Self::new(parse_curve(text)?, seed)
    }

    pub fn poly(&self) -> &HomogPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn singularities(&self) -> &[SingularPoint] {
        &self.singularities
    }

    pub fn delta(&self) -> u32 {
        self.count(SingularityKind::Node)
    }

    pub fn kappa(&self) -> u32 {
        self.count(SingularityKind::Cusp)
    }

    fn count(&self, kind: SingularityKind) -> u32 {
        self.singularities.iter().filter(|s| s.kind == kind).count() as u32
    }

    pub fn plucker_numbers(&self) -> Result<PluckerNumbers, CurveError> {
        plucker_numbers(self.degree(), self.delta(), self.kappa())
    }
}

/// Parses curve text in the variables `x0, x1, x2`.
pub fn parse_curve(text: &str) -> Result<HomogPoly, CurveError> {
    let p = crate::exactpoly::parse_poly(text, &plane_vars())?;
    let f = HomogPoly::new(p)?;
    if f.degree() == 0 {
        return Err(CurveError::NotACurve(1));
    }
    Ok(f)
}

fn reduce(f: HomogPoly) -> Result<HomogPoly, CurveError> {
    if f.vars().len() != 3 {
        return Err(CurveError::NotACurve(1));
    }
    if f.degree() == 0 {
        return Err(CurveError::NotACurve(1));
    }
    if is_squarefree(f.poly()) {
        return Ok(f);
    }
    Ok(HomogPoly::new(squarefree_part(f.poly()).primitive_integer())?)
}

const SINGULAR_ATTEMPTS: usize = 8;

/// Singular points of `F = 0` with their type, sorted canonically.
///
/// The curve is moved by a seeded random projectivity until no singular
/// point lies on `x2 = 0` and every partial derivative has full degree in
/// `x1`. The `x0`-coordinates of the singular points are then the common
/// roots of resultants of random combinations of the partials.
pub fn singular_points(f: &HomogPoly, seed: u64) -> Result<Vec<SingularPoint>, CurveError> {
    if f.degree() < 2 {
        return Ok(Vec::new());
    }
    for attempt in 0..SINGULAR_ATTEMPTS {
        let m = random_projectivity(seed::derive_indexed(seed, "singular-projectivity", attempt as u64));
        let g = m.pull_back_curve(f);
        let Some(found) = affine_singular_points(&g, seed::derive_indexed(seed, "singular-combos", attempt as u64))?
        else {
            continue;
        };
        let grads = f.gradient();
        let points: Vec<ProjPoint> = found.iter().map(|q| m.map_point(q)).collect();
        if !points
            .iter()
            .all(|p| grads.iter().all(|d| d.eval(p.coords()).is_zero()))
        {
            continue;
        }
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            let kind = classify(f, &p)?;
            out.push(SingularPoint { point: p, kind });
        }
        out.sort_by(|a, b| a.point.sort_key().cmp(&b.point.sort_key()));
        return Ok(out);
    }
    Err(CurveError::GenericityFailed(SINGULAR_ATTEMPTS))
}

/// Singular points of `g` in the chart `x2 = 1`, or `None` if the
/// coordinates are not generic enough.
fn affine_singular_points(g: &HomogPoly, seed: u64) -> Result<Option<Vec<ProjPoint>>, CurveError> {
    let grads = g.gradient();
    let vars = g.vars().clone();
    let n = g.degree();
    let at_y = [Rat::zero(), Rat::one(), Rat::zero()];
    if grads.iter().any(|d| d.eval(&at_y).is_zero()) {
        return Ok(None);
    }
    // No singular point on x2 = 0.
    let mut at_infinity = MultiPoly::zero(&vars);
    for d in &grads {
        at_infinity = gcd(&at_infinity, &d.specialize(2, &Rat::zero()));
    }
    if at_infinity.is_zero() || !at_infinity.is_constant() {
        return Ok(None);
    }
    let h: Vec<MultiPoly> = grads.iter().map(|d| d.specialize(2, &Rat::one())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combo = |rng: &mut ChaCha8Rng| -> MultiPoly {
        loop {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
            let p = h
                .iter()
                .zip(&c)
                .fold(MultiPoly::zero(&vars), |acc, (hi, &ci)| acc + hi.scale(&rat(ci)));
            if p.degree_in(1) == n - 1 {
                return p;
            }
        }
    };
    let x_poly = |rng: &mut ChaCha8Rng, acc: UniPoly| -> Result<Option<UniPoly>, CurveError> {
        let c: Vec<MultiPoly> = (0..3).map(|_| combo(rng)).collect();
        let mut acc = acc;
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let r = resultant_in(&c[a], &c[b], 1)?;
            if r.is_zero() {
                return Ok(None);
            }
            acc = if acc.is_zero() {
                UniPoly::from_multi(&r, 0)?
            } else {
                acc.gcd(&UniPoly::from_multi(&r, 0)?)
            };
        }
        Ok(Some(acc))
    };
    let Some(r) = x_poly(&mut rng, UniPoly::zero())? else {
        return Ok(None);
    };
    let r = r.squarefree_part();
    let mut points = Vec::new();
    let mut leftover = r.clone();
    for a in r.rational_roots()? {
        leftover = leftover.div_rem(&UniPoly::linear_root(&a)).0;
        let mut gy = UniPoly::zero();
        for hi in &h {
            let u = UniPoly::from_multi(&hi.specialize(0, &a), 1)?;
            gy = if gy.is_zero() { u } else { gy.gcd(&u) };
        }
        let gy = gy.squarefree_part();
        let deg = gy.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        let roots = gy.rational_roots()?;
        if roots.len() < deg {
            return Err(CurveError::IrrationalSingularity);
        }
        for b in roots {
            points.push(ProjPoint::new(vec![a.clone(), b, Rat::one()]).expect("affine point"));
        }
    }
    if leftover.degree().unwrap_or(0) > 0 {
        // Either irrational singular x-coordinates or an accidental common
        // root of the chosen combinations; fresh combinations separate them.
        match x_poly(&mut rng, leftover)? {
            Some(rest) if rest.degree().unwrap_or(0) > 0 => return Err(CurveError::IrrationalSingularity),
            Some(_) => {}
            None => return Ok(None),
        }
    }
    Ok(Some(points))
}

/// Node or cusp, from the 2-jet and 3-jet of `f` at the singular point `p`.
fn classify(f: &HomogPoly, p: &ProjPoint) -> Result<SingularityKind, CurveError> {
    let vars = f.vars().clone();
    let c = p.pivot();
    let pc = &p.coords()[c];
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            if i == c {
                MultiPoly::one(&vars)
            } else {
                MultiPoly::constant(&vars, &p.coords()[i] / pc) + MultiPoly::var(&vars, i)
            }
        })
        .collect();
    let local = f.poly().compose(&images);
    let [u, v]: [usize; 2] = match c {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let coeff = |eu: u32, ev: u32| {
        let mut e = [0u32; 3];
        e[u] = eu;
        e[v] = ev;
        local.coefficient(&e)
    };
    let (a, b, cc) = (coeff(2, 0), coeff(1, 1), coeff(0, 2));
    let disc = &b * &b - rat(4) * &a * &cc;
    if !disc.is_zero() {
        return Ok(SingularityKind::Node);
    }
    let unsupported = || CurveError::UnsupportedSingularity(p.to_string());
    if a.is_zero() && b.is_zero() && cc.is_zero() {
        return Err(unsupported());
    }
    // Kernel direction of the square 2-jet.
    let (wu, wv) = if !a.is_zero() { (-b, rat(2) * &a) } else { (Rat::one(), Rat::zero()) };
    let mut cubic = Rat::zero();
    for k in 0..=3u32 {
        let t = coeff(3 - k, k);
        if !t.is_zero() {
            cubic += t * num_traits::pow(wu.clone(), (3 - k) as usize) * num_traits::pow(wv.clone(), k as usize);
        }
    }
    if cubic.is_zero() {
        Err(unsupported())
    } else {
        Ok(SingularityKind::Cusp)
    }
}

/// The dual of a plane curve: a curve in the dual plane, or a point when
/// the input is a line.
#[derive(Clone, Debug)]
pub enum DualCurve {
    Curve(HomogPoly),
    Point(ProjPoint),
}

impl DualCurve {
    /// `n*`, with a point counted as degree zero.
    pub fn degree(&self) -> u32 {
        match self {
            DualCurve::Curve(g) => g.degree(),
            DualCurve::Point(_) => 0,
        }
    }

    pub fn curve(&self) -> Option<&HomogPoly> {
        match self {
            DualCurve::Curve(g) => Some(g),
            DualCurve::Point(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DualOptions {
    pub seed: u64,
    pub max_degree: u32,
}

impl Default for DualOptions {
    fn default() -> Self {
        DualOptions { seed: 0, max_degree: 6 }
    }
}

/// Tangency discriminant of `F`: the polynomial in `y` vanishing when the
/// line `y . x = 0` meets the curve in a repeated point, of degree
/// `n(n-1)`.
///
/// The line is parametrized by `s a + t b` with `a = (y1, -y0, 0)` and
/// `b = (y2, 0, -y0)`. Since `a x b = y0 y`, the binary discriminant
/// carries an extra factor `y0^(n(n-1))`, which is divided out.
pub fn tangency_discriminant(f: &HomogPoly) -> Result<MultiPoly, CurveError> {
    let n = f.degree();
    if n < 2 {
        return Err(CurveError::NotACurve(2));
    }
    let ring = Vars::new(["y0", "y1", "y2", "s", "t"]);
    let v = |i| MultiPoly::var(&ring, i);
    let images = [&v(3) * &v(1) + &v(4) * &v(2), -(&v(3) * &v(0)), -(&v(4) * &v(0))];
    let form = f.poly().compose(&images);
    let disc = binary_discriminant(&form, "s", "t")?;
    if disc.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let delta = disc.exact_divide(&v(0).pow(n * (n - 1)))?;
    Ok(delta.embed(&dual_plane_vars())?)
}

/// Dual curve `G(y0, y1, y2)`, normalized to a primitive integer polynomial.
///
/// With rational singular points, each spurious factor `p . y` is divided
/// out as often as it goes and the squarefree part of what remains is `G`.
/// When a singular point is irrational the spurious factors cannot be
/// written down; `G` is then the multiplicity-one part of the squarefree
/// decomposition of the tangency discriminant, in which nodes appear
/// squared and cusps cubed. Either way the degree is checked against
/// `n(n-1) - 2 delta - 3 kappa`.
pub fn dual_curve(f: &HomogPoly, opts: &DualOptions) -> Result<DualCurve, CurveError> {
    let f = reduce(f.clone())?;
    let n = f.degree();
    if n > opts.max_degree {
        return Err(CurveError::DegreeCapExceeded {
            degree: n,
            cap: opts.max_degree,
        });
    }
    if n == 1 {
        let coeffs = (0..3)
            .map(|i| {
                let mut e = [0u32; 3];
                e[i] = 1;
                f.poly().coefficient(&e)
            })
            .collect();
        return Ok(DualCurve::Point(ProjPoint::new(coeffs).expect("line has a coefficient")));
    }
    let delta = tangency_discriminant(&f)?;
    let full = (n * (n - 1)) as i64;
    let (g, expected) = match singular_points(&f, opts.seed) {
        Ok(sing) => {
            let mut rest = delta;
            let yv = dual_plane_vars();
            let (mut nodes, mut cusps) = (0i64, 0i64);
            for s in &sing {
                match s.kind {
                    SingularityKind::Node => nodes += 1,
                    SingularityKind::Cusp => cusps += 1,
                }
                let l = (0..3).fold(MultiPoly::zero(&yv), |acc, i| {
                    acc + MultiPoly::var(&yv, i).scale(&s.point.coords()[i])
                });
                rest = rest.remove_factor(&l).0;
            }
            (squarefree_part(&rest), full - 2 * nodes - 3 * cusps)
        }
        Err(CurveError::IrrationalSingularity) => {
            let parts = squarefree_decomposition(&delta);
            let mut g = MultiPoly::one(&dual_plane_vars());
            let mut weighted = 0i64;
            for (factor, k) in &parts {
                match k {
                    1 => g = factor.clone(),
                    2 | 3 => weighted += *k as i64 * factor.total_degree() as i64,
                    _ => return Err(CurveError::UnsupportedSingularity("(irrational point)".into())),
                }
            }
            (g, full - weighted)
        }
        Err(e) => return Err(e),
    };
    if expected <= 0 {
        return Err(CurveError::DegenerateDual);
    }
    let got = g.total_degree() as i64;
    if got != expected {
        return Err(CurveError::DualDegreeMismatch { expected, got });
    }
    Ok(DualCurve::Curve(HomogPoly::new(g.primitive_integer())?))
}

/// Why a curve fails to be good.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GoodnessFailure {
    /// `F(1, 0, 0) = 0`.
    ContainsPointAtInfinity,
    /// `x2` divides `F`.
    ContainsLineAtInfinity,
    /// `F(x0, x1, 0)` has a repeated factor.
    TangentToLineAtInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Goodness {
    pub good: bool,
    pub reasons: Vec<GoodnessFailure>,
}

/// A curve is good if it avoids `[1, 0, 0]` and is transverse to
/// `x2 = 0`, so that its dual avoids `[0, 0, 1]`.
pub fn is_good(f: &HomogPoly) -> Goodness {
    let mut reasons = Vec::new();
    if f.eval(&[Rat::one(), Rat::zero(), Rat::zero()]).is_zero() {
        reasons.push(GoodnessFailure::ContainsPointAtInfinity);
    }
    let at_infinity = f.poly().specialize(2, &Rat::zero());
    if at_infinity.is_zero() {
        reasons.push(GoodnessFailure::ContainsLineAtInfinity);
    } else if f.degree() >= 2 && !is_squarefree(&at_infinity) {
        reasons.push(GoodnessFailure::TangentToLineAtInfinity);
    }
    Goodness {
        good: reasons.is_empty(),
        reasons,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerNumbers {
    pub n: u32,
    pub delta: u32,
    pub kappa: u32,
    pub nstar: u32,
    pub genus: u32,
}

/// `n* = n(n-1) - 2 delta - 3 kappa` and `g = (n-1)(n-2)/2 - delta - kappa`.
pub fn plucker_numbers(n: u32, delta: u32, kappa: u32) -> Result<PluckerNumbers, CurveError> {
    let (ni, d, k) = (n as i64, delta as i64, kappa as i64);
    let nstar = ni * (ni - 1) - 2 * d - 3 * k;
    let genus = (ni - 1) * (ni - 2) / 2 - d - k;
    if nstar < 0 || genus < 0 {
        return Err(CurveError::ContradictorySingularityData { nstar, genus });
    }
    Ok(PluckerNumbers {
        n,
        delta,
        kappa,
        nstar: nstar as u32,
        genus: genus as u32,
    })
}

const SHEAR_ATTEMPTS: u64 = 10;

/// Intersection multiplicity at `point` of the affine curves `f = 0` and
/// `g = 0`, which are polynomials in the variables `vars[0], vars[1]` of
/// their ring.
///
/// After moving the point to the origin and shearing `x -> x + c y` so both
/// curves have constant leading coefficient in `y` and no other common zero
/// on `x = 0`, the multiplicity is the order of `Res_y(f, g)` at `x = 0`.
pub fn local_intersection_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    vars: [usize; 2],
    point: [&Rat; 2],
    seed: u64,
) -> Result<u32, CurveError> {
    let ring = f.vars().clone();
    let [xi, yi] = vars;
    let mut at = vec![Rat::zero(); ring.len()];
    at[xi] = point[0].clone();
    at[yi] = point[1].clone();
    if !f.eval(&at).is_zero() || !g.eval(&at).is_zero() {
        return Ok(0);
    }
    let translate: Vec<MultiPoly> = (0..ring.len())
        .map(|i| {
            let v = MultiPoly::var(&ring, i);
            if i == xi || i == yi {
                v + MultiPoly::constant(&ring, at[i].clone())
            } else {
                v
            }
        })
        .collect();
    let mut f = f.compose(&translate);
    let mut g = g.compose(&translate);
    let h = gcd(&f, &g);
    if !h.is_constant() {
        if h.eval(&vec![Rat::zero(); ring.len()]).is_zero() {
            return Err(CurveError::NonIsolatedIntersection);
        }
        f = f.exact_divide(&h)?;
        g = g.exact_divide(&h)?;
    }
    if f.is_constant() || g.is_constant() {
        return Ok(0);
    }
    for attempt in 0..SHEAR_ATTEMPTS {
        let mut rng = seed::rng(seed::derive_indexed(seed, "shear", attempt));
        let c = rat(rng.gen_range(1..=50) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let x = MultiPoly::var(&ring, xi);
        let y = MultiPoly::var(&ring, yi);
        let sheared = x + y.scale(&c);
        let fs = f.substitute(xi, &sheared);
        let gs = g.substitute(xi, &sheared);
        let lead_ok = |p: &MultiPoly| {
            p.degree_in(yi) == p.total_degree() && p.coefficients_in(yi).last().is_some_and(MultiPoly::is_constant)
        };
        if !lead_ok(&fs) || !lead_ok(&gs) {
            continue;
        }
        let on_axis = |p: &MultiPoly| UniPoly::from_multi(&p.specialize(xi, &Rat::zero()), yi);
        let common = on_axis(&fs)?.gcd(&on_axis(&gs)?);
        let only_origin = match common.degree() {
            Some(d) => common.coeffs()[..d].iter().all(Zero::is_zero),
            None => false,
        };
        if !only_origin {
            continue;
        }
        let r = resultant_in(&fs, &gs, yi)?;
        if r.is_zero() {
            return Err(CurveError::NonIsolatedIntersection);
        }
        return Ok(valuation_in(&r, xi).unwrap_or(0));
    }
    Err(CurveError::GenericityFailed(SHEAR_ATTEMPTS as usize))
}

/// Intersection multiplicity of two projective plane curves at `p`,
/// computed in the chart of the largest nonzero coordinate index of `p`.
pub fn intersection_multiplicity_at(
    f: &HomogPoly,
    g: &HomogPoly,
    p: &ProjPoint,
    seed: u64,
) -> Result<u32, CurveError> {
    let c = p.pivot();
    let fa = f.dehomogenize(c);
    let ga = g.dehomogenize(c);
    let others: Vec<usize> = (0..3).filter(|&i| i != c).collect();
    let pc = &p.coords()[c];
    let a = &p.coords()[others[0]] / pc;
    let b = &p.coords()[others[1]] / pc;
    local_intersection_multiplicity(&fa, &ga, [others[0], others[1]], [&a, &b], seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn curve(text: &str) -> HomogPoly {
        parse_curve(text).unwrap()
    }

    fn dual_text(text: &str) -> HomogPoly {
        dual_curve(&curve(text), &DualOptions::default())
            .unwrap()
            .curve()
            .cloned()
            .unwrap()
    }

    #[test]
    fn conic_is_smooth() {
        assert!(singular_points(&curve("x0^2+x1^2-x2^2"), 0).unwrap().is_empty());
    }

    #[test]
    fn node_and_cusp() {
        let node = singular_points(&curve("x1^2*x2 - x0^3 - x0^2*x2"), 0).unwrap();
        assert_eq!(node.len(), 1);
        assert_eq!(node[0].point, ProjPoint::from_ints(&[0, 0, 1]).unwrap());
        assert_eq!(node[0].kind, SingularityKind::Node);
        let cusp = singular_points(&curve("x1^2*x2 - x0^3"), 0).unwrap();
        assert_eq!(cusp.len(), 1);
        assert_eq!(cusp[0].kind, SingularityKind::Cusp);
    }

    #[test]
    fn tacnode_is_unsupported() {
        let r = singular_points(&curve("x1^2*x2^2 - x0^4 - x1^4"), 3);
        assert!(matches!(r, Err(CurveError::UnsupportedSingularity(_))), "{r:?}");
    }

    #[test]
    fn irrational_nodes_are_reported() {
        // Two conics meeting in points with irrational coordinates.
        let r = singular_points(&curve("(x0^2 - 2*x2^2)*(x1^2 - 3*x2^2 + x0*x1)"), 1);
        assert_eq!(r, Err(CurveError::IrrationalSingularity));
    }

    #[test]
    fn several_rational_nodes() {
        // Three lines in general position.
        let pts = singular_points(&curve("x0*x1*x2"), 5).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|s| s.kind == SingularityKind::Node));
    }

    #[test]
    fn conic_dual() {
        let g = dual_text("x0^2+x1^2-x2^2");
        let want = parse_poly("y0^2+y1^2-y2^2", &dual_plane_vars()).unwrap();
        assert!(g.poly().is_proportional(&want), "{g}");
    }

    #[test]
    fn conic_tangency_discriminant_is_degree_two() {
        let d = tangency_discriminant(&curve("x0^2+x1^2-x2^2")).unwrap();
        let want = parse_poly("y0^2+y1^2-y2^2", &dual_plane_vars()).unwrap();
        assert!(d.is_proportional(&want), "{d}");
    }

    #[test]
    fn cubic_duals() {
        assert_eq!(dual_text("x1^2*x2 - x0^3").degree(), 3);
        assert_eq!(dual_text("x1^2*x2 - x0^3 - x0^2*x2").degree(), 4);
        assert_eq!(dual_text("x0^3 + x1^3 + x2^3").degree(), 6);
    }

    #[test]
    fn biduality() {
        for text in ["x0^2+x1^2-x2^2", "x1^2*x2 - x0^3 - x0^2*x2", "x1^2*x2 - x0^3"] {
            let f = curve(text);
            let g = dual_text(text).rename(&plane_vars());
            let back = dual_curve(&g, &DualOptions::default()).unwrap();
            let back = back.curve().unwrap().rename(&plane_vars());
            assert!(back.is_proportional(&f), "{text}: {back}");
        }
    }

    #[test]
    fn line_dual_is_point() {
        let d = dual_curve(&curve("x0"), &DualOptions::default()).unwrap();
        match d {
            DualCurve::Point(p) => assert_eq!(p, ProjPoint::from_ints(&[1, 0, 0]).unwrap()),
            DualCurve::Curve(_) => panic!("expected a point"),
        }
    }

    #[test]
    fn degree_cap() {
        let opts = DualOptions { seed: 0, max_degree: 2 };
        assert_eq!(
            dual_curve(&curve("x0^3 + x1^3 + x2^3"), &opts).unwrap_err(),
            CurveError::DegreeCapExceeded { degree: 3, cap: 2 }
        );
    }

    #[test]
    fn goodness() {
        assert!(is_good(&curve("x0^2+x1^2-x2^2")).good);
        let nodal = is_good(&curve("x1^2*x2 - x0^3 - x0^2*x2"));
        assert!(!nodal.good);
        assert_eq!(nodal.reasons, vec![GoodnessFailure::TangentToLineAtInfinity]);
        let through = is_good(&curve("x1^2 - x0*x2"));
        assert!(through.reasons.contains(&GoodnessFailure::ContainsPointAtInfinity));
    }

    #[test]
    fn plucker_table() {
        let cases = [((2, 0, 0), (2, 0)), ((3, 1, 0), (4, 0)), ((3, 0, 1), (3, 0)), ((4, 0, 0), (12, 3))];
        for ((n, d, k), (nstar, g)) in cases {
            let p = plucker_numbers(n, d, k).unwrap();
            assert_eq!((p.nstar, p.genus), (nstar, g));
        }
        assert!(matches!(
            plucker_numbers(3, 2, 0),
            Err(CurveError::ContradictorySingularityData { .. })
        ));
    }

    #[test]
    fn intersection_multiplicities() {
        let v = Vars::new(["x", "y"]);
        let p = |s: &str| {
            let pv = Vars::new(["s", "t"]);
            parse_poly(s, &pv).unwrap().rename(&v)
        };
        let o = Rat::zero();
        let m = local_intersection_multiplicity(&p("t"), &p("t - s^2"), [0, 1], [&o, &o], 1).unwrap();
        assert_eq!(m, 2);
        let m = local_intersection_multiplicity(&p("t^2 - s^2 - s^3"), &p("s"), [0, 1], [&o, &o], 1).unwrap();
        assert_eq!(m, 2);
        let one = rat(1);
        let m = local_intersection_multiplicity(&p("t"), &p("t - s^2"), [0, 1], [&one, &o], 1).unwrap();
        assert_eq!(m, 0);
        let m = local_intersection_multiplicity(&p("s*t"), &p("s*(t-1)"), [0, 1], [&o, &o], 1);
        assert_eq!(m, Err(CurveError::NonIsolatedIntersection));
    }

    #[test]
    fn projective_multiplicity_at_cusp() {
        let f = curve("x1^2*x2 - x0^3");
        let line = curve("x1");
        let p = ProjPoint::from_ints(&[0, 0, 1]).unwrap();
        assert_eq!(intersection_multiplicity_at(&f, &line, &p, 0).unwrap(), 3);
    }
}

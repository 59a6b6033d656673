//! Differential forms with polynomial coefficients on an affine chart, and
//! contact one-forms built from antisymmetric 4x4 matrices.
//!
//! A form of degree `k` is a map from strictly increasing index tuples of
//! length `k` to coefficient polynomials. Everything is chart-local; forms
//! on different charts are compared through explicit transition maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{MultiPoly, Rat, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("forms live on different charts")]
    ChartMismatch,
    #[error("result degree {0} exceeds the chart dimension")]
    DegreeOverflow(usize),
    #[error("map denominator is identically zero")]
    MapUndefined,
    #[error("map has {got} components, form chart needs {expected}")]
    MapArity { expected: usize, got: usize },
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("chart index {0} is out of range 0..=3")]
    ChartOutOfRange(usize),
    #[error("operation needs a {expected}-variable chart")]
    ChartDimension { expected: usize },
    #[error("operation needs a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    chart: Vars,
    degree: usize,
    components: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl PolyForm {
    pub fn zero(chart: &Vars, degree: usize) -> Self {
        PolyForm {
            chart: chart.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: MultiPoly) -> Self {
        let mut out = Self::zero(f.vars(), 0);
        out.add_component(vec![], f);
        out
    }

    /// `dx_i`.
    pub fn differential(chart: &Vars, i: usize) -> Self {
        let mut out = Self::zero(chart, 1);
        out.add_component(vec![i], MultiPoly::one(chart));
        out
    }

    /// `coeff * dx_{i1} ^ ... ^ dx_{ik}` for arbitrary (unsorted) indices.
    pub fn term(coeff: MultiPoly, indices: &[usize]) -> Self {
        let chart = coeff.vars().clone();
        let mut out = Self::zero(&chart, indices.len());
        out.add_component(indices.to_vec(), coeff);
        out
    }

    /// One-form `sum_i coeffs[i] dx_i`.
    pub fn one_form(chart: &Vars, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(chart, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_component(vec![i], c.clone());
        }
        out
    }

    fn add_component(&mut self, mut idx: Vec<usize>, coeff: MultiPoly) {
        assert_eq!(idx.len(), self.degree, "component degree");
        assert!(idx.iter().all(|&i| i < self.chart.len()), "index outside chart");
        let Some(negative) = sort_with_sign(&mut idx) else {
            return;
        };
        let coeff = if negative { -coeff } else { coeff };
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .components
            .remove(&idx)
            .map(|c| c + coeff.clone())
            .unwrap_or(coeff);
        if !entry.is_zero() {
            self.components.insert(idx, entry);
        }
    }

    pub fn chart(&self) -> &Vars {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, MultiPoly> {
        &self.components
    }

    pub fn coefficient(&self, idx: &[usize]) -> MultiPoly {
        self.components
            .get(idx)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.chart))
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        if self.chart != other.chart || self.degree != other.degree {
            return Err(FormError::ChartMismatch);
        }
        let mut out = self.clone();
        for (idx, c) in &other.components {
            out.add_component(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.add(&other.scale_poly(&-MultiPoly::one(&self.chart)))
    }

    pub fn scale_poly(&self, f: &MultiPoly) -> PolyForm {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.components {
            out.add_component(idx.clone(), c * f);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        self.scale_poly(&MultiPoly::constant(&self.chart, c.clone()))
    }

    /// Applies a partial map to every coefficient.
    fn try_map_coefficients(&self, f: impl Fn(&MultiPoly) -> Option<MultiPoly>) -> Option<PolyForm> {
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, c) in &self.components {
            out.add_component(idx.clone(), f(c)?);
        }
        Some(out)
    }

    /// Contraction of a one-form with a vector field.
    pub fn contract(&self, vector: &[MultiPoly]) -> Result<MultiPoly, FormError> {
        if self.degree != 1 {
            return Err(FormError::WrongDegree {
                expected: 1,
                got: self.degree,
            });
        }
        let mut acc = MultiPoly::zero(&self.chart);
        for (idx, c) in &self.components {
            acc = acc + c * &vector[idx[0]];
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyForm {
    /// Canonical text form, e.g. `dz1 - z3 dz2 + z2 dz3` or `2 dz2^dz3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.coefficient(&[]));
        }
        for (k, (idx, c)) in self.components.iter().enumerate() {
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", self.chart.name(i))).collect();
            let basis = basis.join("^");
            let text = c.to_string();
            let (neg, body) = if c.num_terms() == 1 {
                match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                }
            } else {
                (false, format!("({text})"))
            };
            let sep = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if body == "1" {
                write!(f, "{sep}{basis}")?;
            } else {
                write!(f, "{sep}{body} {basis}")?;
            }
        }
        Ok(())
    }
}

/// `d` on polynomial forms. Raises the degree by one; `d o d = 0`.
pub fn exterior_derivative(form: &PolyForm) -> Result<PolyForm, FormError> {
    let n = form.chart.len();
    if form.degree >= n {
        return Err(FormError::DegreeOverflow(form.degree + 1));
    }
    let mut out = PolyForm::zero(&form.chart, form.degree + 1);
    for (idx, c) in &form.components {
        for j in 0..n {
            let dc = c.derivative(j);
            if dc.is_zero() {
                continue;
            }
            let mut full = vec![j];
            full.extend_from_slice(idx);
            out.add_component(full, dc);
        }
    }
    Ok(out)
}

/// Exterior product; graded-commutative.
pub fn wedge(f: &PolyForm, g: &PolyForm) -> Result<PolyForm, FormError> {
    if f.chart != g.chart {
        return Err(FormError::ChartMismatch);
    }
    let degree = f.degree + g.degree;
    if degree > f.chart.len() {
        return Err(FormError::DegreeOverflow(degree));
    }
    let mut out = PolyForm::zero(&f.chart, degree);
    for (ia, ca) in &f.components {
        for (ib, cb) in &g.components {
            let mut idx = ia.clone();
            idx.extend_from_slice(ib);
            out.add_component(idx, ca * cb);
        }
    }
    Ok(out)
}

/// Map from a source chart into the chart of a form, given as
/// `z_k = numerators[k] / denominator`.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub numerators: Vec<MultiPoly>,
    pub denominator: MultiPoly,
}

impl RationalMap {
    pub fn polynomial(components: Vec<MultiPoly>) -> Self {
        let vars = components[0].vars().clone();
        RationalMap {
            numerators: components,
            denominator: MultiPoly::one(&vars),
        }
    }

    pub fn source(&self) -> &Vars {
        self.denominator.vars()
    }
}

/// A form divided by a power of a polynomial: `numerator / denominator^power`.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub numerator: PolyForm,
    pub denominator: MultiPoly,
    pub power: u32,
}

impl RationalForm {
    pub fn exterior_derivative(&self) -> Result<RationalForm, FormError> {
        // d(N / q^k) = (q dN - k dq ^ N) / q^(k+1)
        let q = &self.denominator;
        let dn = exterior_derivative(&self.numerator)?;
        if self.power == 0 || q.is_constant() {
            let scale = q.constant_value().filter(|_| self.power > 0);
            return Ok(RationalForm {
                numerator: match scale {
                    Some(c) => dn.scale(&num_traits::pow(c, self.power as usize).recip()),
                    None => dn,
                },
                denominator: MultiPoly::one(q.vars()),
                power: 0,
            });
        }
        let dq = exterior_derivative(&PolyForm::function(q.clone()))?;
        let correction = wedge(&dq, &self.numerator)?.scale(&Rat::from_integer(self.power.into()));
        Ok(RationalForm {
            numerator: dn.scale_poly(q).sub(&correction)?,
            denominator: q.clone(),
            power: self.power + 1,
        })
    }

    /// Exact equality of rational forms, comparing `N1 q2^k2` with `N2 q1^k1`.
    pub fn equals(&self, other: &RationalForm) -> bool {
        let lhs = self.numerator.scale_poly(&other.denominator.pow(other.power));
        let rhs = other.numerator.scale_poly(&self.denominator.pow(self.power));
        lhs == rhs
    }

    /// Cancels common powers of the denominator from the numerator.
    pub fn simplify(&self) -> RationalForm {
        let mut out = self.clone();
        if out.denominator.is_constant() {
            let c = out.denominator.constant_value().unwrap_or_else(Rat::one);
            out.numerator = out
                .numerator
                .scale(&num_traits::pow(c, out.power as usize).recip());
            out.denominator = MultiPoly::one(out.denominator.vars());
            out.power = 0;
            return out;
        }
        while out.power > 0 {
            match out.numerator.try_map_coefficients(|c| c.exact_divide(&out.denominator).ok()) {
                Some(d) => {
                    out.numerator = d;
                    out.power -= 1;
                }
                None => break,
            }
        }
        out
    }
}

/// Pullback of `form` along `map`, returned as a numerator form over a
/// power of the map's denominator.
///
/// With `z_k = p_k / q`, each `dz_k = (q dp_k - p_k dq) / q^2` and each
/// coefficient of degree `e` becomes `A / q^e`, so the common power is
/// `max e + 2 * degree(form)`. A constant denominator is folded in and
/// reports power 0.
pub fn pullback(form: &PolyForm, map: &RationalMap) -> Result<RationalForm, FormError> {
    let n = form.chart.len();
    if map.numerators.len() != n {
        return Err(FormError::MapArity {
            expected: n,
            got: map.numerators.len(),
        });
    }
    let q = &map.denominator;
    if q.is_zero() {
        return Err(FormError::MapUndefined);
    }
    let src = q.vars().clone();
    let r = form.degree;
    let max_e = form
        .components
        .values()
        .map(MultiPoly::total_degree)
        .max()
        .unwrap_or(0);
    let power = max_e + 2 * r as u32;
    let dq = exterior_derivative(&PolyForm::function(q.clone()))?;
    // q^2 dz_k as polynomial one-forms on the source chart.
    let dz: Vec<PolyForm> = map
        .numerators
        .iter()
        .map(|p| {
            let dp = exterior_derivative(&PolyForm::function(p.clone()))?;
            dp.scale_poly(q).sub(&dq.scale_poly(p))
        })
        .collect::<Result<_, _>>()?;
    let mut out = PolyForm::zero(&src, r);
    for (idx, c) in &form.components {
        let e = c.total_degree();
        // Homogenized substitution: c(p/q) * q^e.
        let mut a = MultiPoly::zero(&src);
        for (mono, coef) in c.terms() {
            let mut t = MultiPoly::constant(&src, coef.clone());
            for (k, &ek) in mono.exponents().iter().enumerate() {
                if ek > 0 {
                    t = &t * &map.numerators[k].pow(ek);
                }
            }
            t = &t * &q.pow(e - mono.degree());
            a = a + t;
        }
        let mut piece = PolyForm::function(&a * &q.pow(max_e - e));
        for &k in idx {
            piece = wedge(&piece, &dz[k])?;
        }
        out = out.add(&piece)?;
    }
    let result = RationalForm {
        numerator: out,
        denominator: q.clone(),
        power,
    };
    if q.is_constant() {
        Ok(result.simplify())
    } else {
        Ok(result)
    }
}

/// The single coefficient of `theta ^ d theta` for a one-form on a
/// three-variable chart. `theta` is contact on the chart iff this has no
/// zeros there.
pub fn nonintegrability_volume(theta: &PolyForm) -> Result<MultiPoly, FormError> {
    if theta.chart.len() != 3 {
        return Err(FormError::ChartDimension { expected: 3 });
    }
    if theta.degree != 1 {
        return Err(FormError::WrongDegree {
            expected: 1,
            got: theta.degree,
        });
    }
    let top = wedge(theta, &exterior_derivative(theta)?)?;
    Ok(top.coefficient(&[0, 1, 2]))
}

/// Antisymmetric 4x4 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymMatrix4 {
    entries: [[Rat; 4]; 4],
}

impl AntisymMatrix4 {
    pub fn new(entries: [[Rat; 4]; 4]) -> Result<Self, FormError> {
        for i in 0..4 {
            for j in 0..4 {
                if entries[i][j] != -entries[j][i].clone() {
                    return Err(FormError::NotAntisymmetric);
                }
            }
        }
        Ok(AntisymMatrix4 { entries })
    }

    /// From the upper triangle `(A01, A02, A03, A12, A13, A23)`.
    pub fn from_upper(upper: [Rat; 6]) -> Self {
        let mut e: [[Rat; 4]; 4] = Default::default();
        for (k, (i, j)) in crate::projective::PLUCKER_PAIRS.iter().enumerate() {
            e[*i][*j] = upper[k].clone();
            e[*j][*i] = -upper[k].clone();
        }
        AntisymMatrix4 { entries: e }
    }

    /// The matrix with `A01 = A23 = 1`, whose chart-0 form is
    /// `dz1 - z3 dz2 + z2 dz3`.
    pub fn bryant() -> Self {
        Self::from_upper([1, 0, 0, 0, 0, 1].map(crate::exactpoly::rat))
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[Rat; 4]; 4] {
        &self.entries
    }

    pub fn upper(&self) -> [Rat; 6] {
        crate::projective::PLUCKER_PAIRS.map(|(i, j)| self.entries[i][j].clone())
    }

    /// `u^T A v`.
    pub fn bilinear(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !self.entries[i][j].is_zero() {
                    acc += &u[i] * &self.entries[i][j] * &v[j];
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        AntisymMatrix4 {
            entries: self.entries.clone().map(|row| row.map(|v| v * c)),
        }
    }
}

/// Variable names of the affine chart `x_chart = 1` of CP^3.
pub fn chart_vars(chart: usize) -> Vars {
    Vars::new((0..4).filter(|&i| i != chart).map(|i| format!("z{i}")))
}

/// `omega_A = sum_{i<j} A_ij (x_i dx_j - x_j dx_i)` restricted to the chart
/// `x_chart = 1`, with chart variables `z_i` for `i != chart`.
pub fn contact_form_from_matrix(a: &AntisymMatrix4, chart: usize) -> Result<PolyForm, FormError> {
    if chart > 3 {
        return Err(FormError::ChartOutOfRange(chart));
    }
    let vars = chart_vars(chart);
    // Homogeneous coordinate i as a polynomial on the chart, and its slot.
    let coord = |i: usize| -> (MultiPoly, Option<usize>) {
        if i == chart {
            (MultiPoly::one(&vars), None)
        } else {
            let slot = if i < chart { i } else { i - 1 };
            (MultiPoly::var(&vars, slot), Some(slot))
        }
    };
    let mut coeffs = vec![MultiPoly::zero(&vars); 3];
    for (i, j) in crate::projective::PLUCKER_PAIRS {
        let aij = a.get(i, j);
        if aij.is_zero() {
            continue;
        }
        let (xi, si) = coord(i);
        let (xj, sj) = coord(j);
        if let Some(sj) = sj {
            coeffs[sj] = &coeffs[sj] + &xi.scale(aij);
        }
        if let Some(si) = si {
            coeffs[si] = &coeffs[si] - &xj.scale(aij);
        }
    }
    Ok(PolyForm::one_form(&vars, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn bryant_form() -> PolyForm {
        let v = chart_vars(0);
        let z2 = MultiPoly::var(&v, 1);
        let z3 = MultiPoly::var(&v, 2);
        PolyForm::one_form(&v, &[MultiPoly::one(&v), -&z3, z2])
    }

    #[test]
    fn derivative_of_x_dy() {
        let v = xyz();
        let x = MultiPoly::var(&v, 0);
        let form = PolyForm::term(x, &[1]);
        let d = exterior_derivative(&form).unwrap();
        assert_eq!(d, PolyForm::term(MultiPoly::one(&v), &[0, 1]));
    }

    #[test]
    fn d_squared_vanishes_on_a_function() {
        let v = xyz();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let f = PolyForm::function(&(&x * &x) * &y);
        let dd = exterior_derivative(&exterior_derivative(&f).unwrap()).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn bryant_form_derivative_and_volume() {
        let theta = bryant_form();
        let v = theta.chart().clone();
        let d = exterior_derivative(&theta).unwrap();
        assert_eq!(d, PolyForm::term(MultiPoly::constant(&v, rat(2)), &[1, 2]));
        assert_eq!(d.to_string(), "2 dz2^dz3");
        let vol = wedge(&theta, &d).unwrap();
        assert_eq!(vol, PolyForm::term(MultiPoly::constant(&v, rat(2)), &[0, 1, 2]));
        assert_eq!(theta.to_string(), "dz1 - z3 dz2 + z2 dz3");
    }

    #[test]
    fn wedge_sign_rules() {
        let v = xyz();
        let dx = PolyForm::differential(&v, 0);
        let dy = PolyForm::differential(&v, 1);
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        let a = wedge(&dx, &dy).unwrap();
        let b = wedge(&dy, &dx).unwrap();
        assert_eq!(a, b.scale(&rat(-1)));
        let other = PolyForm::differential(&Vars::new(["u", "v", "w"]), 0);
        assert_eq!(wedge(&dx, &other), Err(FormError::ChartMismatch));
    }

    #[test]
    fn top_degree_overflow() {
        let v = xyz();
        let vol = PolyForm::term(MultiPoly::one(&v), &[0, 1, 2]);
        assert_eq!(exterior_derivative(&vol), Err(FormError::DegreeOverflow(4)));
    }

    #[test]
    fn pullback_of_dz1_under_product() {
        let src = Vars::new(["x", "y"]);
        let x = MultiPoly::var(&src, 0);
        let y = MultiPoly::var(&src, 1);
        let target = chart_vars(0);
        let dz1 = PolyForm::differential(&target, 0);
        let map = RationalMap::polynomial(vec![&x * &y, x.clone(), y.clone()]);
        let pb = pullback(&dz1, &map).unwrap();
        assert_eq!(pb.power, 0);
        assert_eq!(pb.numerator, PolyForm::one_form(&src, &[y, x]));
    }

    #[test]
    fn nonintegrability_catalog() {
        assert_eq!(nonintegrability_volume(&bryant_form()).unwrap().constant_value(), Some(rat(2)));
        // dy + lambda dx on (x, y, lambda)
        let v = Vars::new(["x", "y", "lambda"]);
        let lambda = MultiPoly::var(&v, 2);
        let theta = PolyForm::one_form(&v, &[lambda, MultiPoly::one(&v), MultiPoly::zero(&v)]);
        let c = nonintegrability_volume(&theta).unwrap().constant_value().unwrap();
        assert!(c == rat(1) || c == rat(-1));
        let dx = PolyForm::differential(&v, 0);
        assert!(nonintegrability_volume(&dx).unwrap().is_zero());
    }

    #[test]
    fn matrix_forms() {
        let a = AntisymMatrix4::bryant();
        let theta = contact_form_from_matrix(&a, 0).unwrap();
        assert_eq!(theta, bryant_form());
        let mut e: [[Rat; 4]; 4] = Default::default();
        e[0][1] = rat(1);
        e[1][0] = rat(1);
        assert_eq!(AntisymMatrix4::new(e), Err(FormError::NotAntisymmetric));
        assert_eq!(contact_form_from_matrix(&a, 4), Err(FormError::ChartOutOfRange(4)));
    }

    #[test]
    fn chart_gluing() {
        // theta1 = dy + z1 dx on (x, y, z1); with z1 = 1/z2 and a factor z2
        // this is theta2 = z2 dy + dx on (x, y, z2).
        let c1 = Vars::new(["x", "y", "z1"]);
        let z1 = MultiPoly::var(&c1, 2);
        let theta1 = PolyForm::one_form(&c1, &[z1, MultiPoly::one(&c1), MultiPoly::zero(&c1)]);
        let c2 = Vars::new(["x", "y", "z2"]);
        let x = MultiPoly::var(&c2, 0);
        let y = MultiPoly::var(&c2, 1);
        let z2 = MultiPoly::var(&c2, 2);
        let map = RationalMap {
            numerators: vec![&x * &z2, &y * &z2, MultiPoly::one(&c2)],
            denominator: z2.clone(),
        };
        let pb = pullback(&theta1, &map).unwrap().simplify();
        assert_eq!(pb.power, 1);
        let theta2 = PolyForm::one_form(&c2, &[MultiPoly::one(&c2), z2.clone(), MultiPoly::zero(&c2)]);
        assert_eq!(pb.numerator, theta2);
        let theta2_volume = nonintegrability_volume(&theta2).unwrap();
        assert!(theta2_volume.constant_value().is_some_and(|c| !c.is_zero()));
    }
}

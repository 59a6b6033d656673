use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rat::one())
    }

    /// Variable by name; panics if the ring does not contain it.
    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in ring {:?}", vars.names()));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomial ring mismatch: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a ring,
    /// which becomes the ring of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .expect("compose needs at least one variable");
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces variable `i` by `image` (which lives in the same ring).
    pub fn substitute(&self, i: usize, image: &MultiPoly) -> MultiPoly {
        self.check_ring(image);
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|j| {
                if j == i {
                    image.clone()
                } else {
                    MultiPoly::var(&self.vars, j)
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Sets variable `i` to a rational value, keeping the ring.
    pub fn specialize(&self, i: usize, value: &Rat) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] = 0;
            out.add_term(Monomial(e), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * rat(k as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.vars.len()).map(|i| self.derivative(i)).collect()
    }

    /// Coefficients with respect to variable `i`, ascending powers. The
    /// coefficients stay in the same ring and do not involve variable `i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &Vars, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                out.add_term(Monomial(e), v.clone());
            }
        }
        out
    }

    /// Division with remainder by a single divisor in graded-lex order.
    /// Since a single polynomial is a Groebner basis of the ideal it
    /// generates, the remainder is the canonical normal form modulo `g`.
    pub fn div_rem(&self, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        self.check_ring(g);
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::ZeroPolynomial),
        };
        let mut p = self.clone();
        let mut q = Self::zero(&self.vars);
        let mut r = Self::zero(&self.vars);
        while let Some((pm, pc)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&pm) {
                let m = pm.div(&lm);
                let c = &pc / &lc;
                p = p - g.mul_monomial(&m, &c);
                q.add_term(m, c);
            } else {
                p.terms.remove(&pm);
                r.add_term(pm, pc);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / g`, failing with `NotDivisible` when `g` does
    /// not divide `self`.
    pub fn exact_divide(&self, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(g);
        if g.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (lm, lc) = {
            let (m, c) = g.leading_term().expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut p = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((pm, pc)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&pm) {
                return Err(PolyError::NotDivisible);
            }
            let m = pm.div(&lm);
            let c = &pc / &lc;
            p = p - g.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Ok(q)
    }

    /// Divides by `g` as many times as it goes; returns the cofactor and
    /// the number of divisions.
    pub fn remove_factor(&self, g: &MultiPoly) -> (MultiPoly, u32) {
        let mut cur = self.clone();
        let mut k = 0;
        if g.is_constant() || self.is_zero() {
            return (cur, 0);
        }
        while let Ok(q) = cur.exact_divide(g) {
            cur = q;
            k += 1;
        }
        (cur, k)
    }

    /// Same polynomial read in another ring with the same number of
    /// variables (positional renaming).
    pub fn rename(&self, vars: &Vars) -> MultiPoly {
        assert_eq!(vars.len(), self.vars.len(), "rename needs equal arity");
        MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Re-expresses the polynomial in `ring`, matching variables by name.
    pub fn embed(&self, ring: &Vars) -> Result<MultiPoly, PolyError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match ring.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i) == 0 => map.push(None),
                None => return Err(PolyError::VariableMismatch(name.clone())),
            }
        }
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Scalar multiple with integer coefficients, unit content and a
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Makes the graded-lex leading coefficient 1.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// True iff `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional(&self, other: &MultiPoly) -> bool {
        if self.vars != other.vars || self.is_zero() || other.is_zero() {
            return false;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let c = other.leading_coefficient() / self.leading_coefficient();
        self.scale(&c) == *other
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms in descending graded-lex order, for
    /// example `x0^2 + x1^2 - x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_ring(&rhs);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() - rhs.clone()
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_ring(&rhs);
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

/// Homogeneous nonzero polynomial of a fixed degree, e.g. a plane curve
/// equation in `x0, x1, x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    poly: MultiPoly,
    degree: u32,
}

impl HomogPoly {
    pub fn new(poly: MultiPoly) -> Result<Self, PolyError> {
        if poly.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !poly.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let degree = poly.total_degree();
        Ok(HomogPoly { poly, degree })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.poly.eval(point)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        self.poly.gradient()
    }

    /// Affine restriction obtained by setting variable `i` to 1.
    pub fn dehomogenize(&self, i: usize) -> MultiPoly {
        self.poly.specialize(i, &Rat::one())
    }

    pub fn rename(&self, vars: &Vars) -> HomogPoly {
        HomogPoly {
            poly: self.poly.rename(vars),
            degree: self.degree,
        }
    }

    pub fn is_proportional(&self, other: &HomogPoly) -> bool {
        self.poly.is_proportional(&other.poly)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Ring `x0, x1, x2` of the projective plane.
pub fn plane_vars() -> Vars {
    Vars::new(["x0", "x1", "x2"])
}

/// Ring `y0, y1, y2` of the dual plane.
pub fn dual_plane_vars() -> Vars {
    Vars::new(["y0", "y1", "y2"])
}

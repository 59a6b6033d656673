//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multipoly::{rat, MultiPoly, Rat, Vars};
use super::PolyError;

/// Coefficients in ascending order; trailing zeros are trimmed so the last
/// entry is the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rat::one()],
        }
    }

    /// x - a
    pub fn linear_root(a: &Rat) -> Self {
        UniPoly::new(vec![-a.clone(), Rat::one()])
    }

    /// Reads a polynomial in a single variable of `p`'s ring. Fails if another
    /// variable occurs.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Result<Self, PolyError> {
        let mut coeffs = vec![Rat::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if i != var && e > 0 {
                    return Err(PolyError::VariableMismatch(p.vars().name(i).to_string()));
                }
            }
            coeffs[m.exponents()[var] as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_multi(&self, vars: &Vars, var: usize) -> MultiPoly {
        let consts: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|c| MultiPoly::constant(vars, c.clone()))
            .collect();
        MultiPoly::from_coefficients_in(vars, var, &consts)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs_f64().iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lc * prod a_i^i` with the
    /// `a_i` monic, square-free and pairwise coprime. Entries with trivial
    /// factor are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.add(&b.derivative().scale(&-Rat::one()));
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.add(&b.derivative().scale(&-Rat::one()));
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    /// Integer multiple with coprime coefficients.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// All distinct rational roots, ascending.
    ///
    /// Real roots are isolated exactly with a Sturm sequence and each
    /// isolating interval is bisected until it is narrower than `1 / lc^2`
    /// (for the primitive integer form). A rational root `p/q` must have
    /// `q | lc`, so at that width it is the simplest rational inside the
    /// interval and is confirmed by exact evaluation.
    pub fn rational_roots(&self) -> Result<Vec<Rat>, PolyError> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let mut f = self.squarefree_part();
        'deflate: loop {
            match f.degree() {
                None | Some(0) => break,
                Some(1) => {
                    roots.push(-&f.coeffs[0] / &f.coeffs[1]);
                    break;
                }
                _ => {}
            }
            if f.coeffs[0].is_zero() {
                roots.push(Rat::zero());
                f = f.div_rem(&UniPoly::from_ints(&[0, 1])).0;
                continue;
            }
            let ints = f.primitive_integer();
            let lc = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
            let width_target = Rat::new(BigInt::one(), &lc * &lc * BigInt::from(2));
            let chain = sturm_chain(&f);
            let lead = f.leading();
            let bound = f.coeffs.iter().map(|c| (c / &lead).abs()).max().unwrap_or_else(Rat::one)
                + Rat::one();
            let bound = Rat::from_integer(bound.ceil().to_integer());
            let mut stack = vec![(-&bound, bound.clone(), sign_changes(&chain, &-&bound) - sign_changes(&chain, &bound))];
            while let Some((lo, hi, count)) = stack.pop() {
                if count == 0 {
                    continue;
                }
                if count == 1 {
                    if let Some(r) = refine_isolated(&f, lo, hi, &width_target) {
                        roots.push(r);
                    }
                    continue;
                }
                let mid = (&lo + &hi) / rat(2);
                if f.eval(&mid).is_zero() {
                    roots.push(mid.clone());
                    f = f.div_rem(&UniPoly::linear_root(&mid)).0;
                    continue 'deflate;
                }
                let vm = sign_changes(&chain, &mid);
                let vlo = sign_changes(&chain, &lo);
                stack.push((lo, mid.clone(), vlo - vm));
                stack.push((mid, hi, count - (vlo - vm)));
            }
            break;
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

/// Sturm sequence of a square-free polynomial, each member rescaled by a
/// positive constant to keep coefficients small.
fn sturm_chain(f: &UniPoly) -> Vec<UniPoly> {
    let normalize = |p: UniPoly| -> UniPoly {
        let ints = p.primitive_integer();
        if ints.is_empty() {
            return p;
        }
        let q = UniPoly::new(ints.into_iter().map(Rat::from_integer).collect());
        // Keep the sign of p.
        if q.leading().is_positive() == p.leading().is_positive() {
            q
        } else {
            q.scale(&rat(-1))
        }
    };
    let mut chain = vec![normalize(f.clone()), normalize(f.derivative())];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(normalize(r.scale(&rat(-1))));
    }
    chain
}

fn sign_changes(chain: &[UniPoly], x: &Rat) -> i64 {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if last.is_some_and(|l| l != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

/// The rational root of `f` in `(lo, hi]`, if any, given that this
/// interval holds exactly one simple real root.
fn refine_isolated(f: &UniPoly, mut lo: Rat, mut hi: Rat, width_target: &Rat) -> Option<Rat> {
    if f.eval(&hi).is_zero() {
        return Some(hi);
    }
    let mut flo_positive = f.eval(&lo).is_positive();
    loop {
        let cand = simplest_between(&lo, &hi);
        if f.eval(&cand).is_zero() {
            return Some(cand);
        }
        if &hi - &lo < *width_target {
            return None;
        }
        let mid = (&lo + &hi) / rat(2);
        let fm = f.eval(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_positive() == flo_positive {
            lo = mid;
            flo_positive = fm.is_positive();
        } else {
            hi = mid;
        }
    }
}

/// Rational with the smallest denominator in the closed interval `[lo, hi]`
/// (Stern-Brocot descent via continued fractions).
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    if &fl + Rat::one() <= *hi {
        return fl + Rat::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the
    // fractional parts.
    let a = &fl;
    let inner = simplest_between(&(hi - a).recip(), &(lo - a).recip());
    a + inner.recip()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = Vars::new(["x"]);
        self.to_multi(&v, 0).fmt(f)
    }
}

//! Multivariate gcd and square-free parts.
//!
//! The gcd is the classical recursive one: pick a main variable, split off
//! contents, and run a primitive pseudo-remainder sequence on the primitive
//! parts. Coefficients are small in every use this crate has, so no modular
//! machinery is needed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::multipoly::{rat, MultiPoly, Rat};
use super::univariate::UniPoly;

/// Greatest common divisor, normalized monic in graded-lex order. The gcd
/// of two zero polynomials is zero.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars());
    }
    let main = {
        let sf = f.support();
        let sg = g.support();
        sf.iter()
            .find(|v| sg.contains(v))
            .copied()
            .or_else(|| sf.first().copied())
            .expect("nonconstant polynomial has a variable")
    };
    if f.degree_in(main) == 0 || g.degree_in(main) == 0 {
        // Only one side involves `main`: the gcd divides its content.
        let (with, without) = if f.degree_in(main) > 0 { (f, g) } else { (g, f) };
        return gcd(&content(with, main), without);
    }
    let cf = content(f, main);
    let cg = content(g, main);
    let c = gcd(&cf, &cg);
    let mut a = f.exact_divide(&cf).expect("content divides").primitive_integer();
    let mut b = g.exact_divide(&cg).expect("content divides").primitive_integer();
    if a.degree_in(main) < b.degree_in(main) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, main);
        if r.is_zero() {
            break;
        }
        if r.degree_in(main) == 0 {
            return c.monic();
        }
        a = b;
        b = primitive_part(&r, main).primitive_integer();
    }
    (&c * &primitive_part(&b, main)).monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn content(f: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.vars());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one(f.vars());
        }
    }
    acc
}

pub fn primitive_part(f: &MultiPoly, var: usize) -> MultiPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.exact_divide(&content(f, var)).expect("content divides")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` with respect to `var`.
pub fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let bc = b.coefficients_in(var);
    let lb = bc.last().cloned().expect("nonzero divisor");
    let mut r = a.clone();
    let mut steps = 0u32;
    let total = (a.degree_in(var) + 1).saturating_sub(db);
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coefficients_in(var).pop().expect("nonzero");
        let shift = MultiPoly::var(a.vars(), var).pow(dr - db);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
        steps += 1;
    }
    if steps < total {
        r = &r * &lb.pow(total - steps);
    }
    r
}

/// Product of the distinct irreducible factors of `f`, as
/// `f / gcd(f, df/dx_1, ..., df/dx_k)`, made monic.
///
/// A restriction to a random line that keeps the degree and is square-free
/// already proves `f` square-free, which skips the gcd in the common case.
pub fn squarefree_part(f: &MultiPoly) -> MultiPoly {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    if squarefree_on_random_line(f, 0x5eed) {
        return f.monic();
    }
    let mut g = f.clone();
    for i in f.support() {
        g = gcd(&g, &f.derivative(i));
        if g.is_constant() {
            return f.monic();
        }
    }
    f.exact_divide(&g).expect("gcd divides").monic()
}

/// Square-free decomposition `f = c * prod a_i^i` (Yun), over each variable
/// in turn. Factors are monic; trivial factors are omitted; entries are
/// sorted by multiplicity.
pub fn squarefree_decomposition(f: &MultiPoly) -> Vec<(MultiPoly, u32)> {
    let mut out: Vec<(MultiPoly, u32)> = Vec::new();
    decompose_into(f, &mut out);
    out.sort_by_key(|(_, k)| *k);
    out
}

fn decompose_into(f: &MultiPoly, out: &mut Vec<(MultiPoly, u32)>) {
    if f.is_zero() || f.is_constant() {
        return;
    }
    let var = f.support()[0];
    let c = content(f, var);
    let p = f.exact_divide(&c).expect("content divides");
    let dp = p.derivative(var);
    let a0 = gcd(&p, &dp);
    let mut b = p.exact_divide(&a0).expect("gcd divides");
    let mut cc = dp.exact_divide(&a0).expect("gcd divides");
    let mut d = &cc - &b.derivative(var);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = b.exact_divide(&a).expect("gcd divides");
        cc = d.exact_divide(&a).expect("gcd divides");
        d = &cc - &b.derivative(var);
        if !a.is_constant() {
            merge(out, a.monic(), i);
        }
        i += 1;
    }
    let mut sub = Vec::new();
    decompose_into(&c, &mut sub);
    for (a, k) in sub {
        merge(out, a, k);
    }
}

fn merge(out: &mut Vec<(MultiPoly, u32)>, a: MultiPoly, k: u32) {
    if let Some(entry) = out.iter_mut().find(|(_, m)| *m == k) {
        entry.0 = (&entry.0 * &a).monic();
    } else {
        out.push((a, k));
    }
}

/// Sufficient exact test: if `f(a + b t)` keeps the total degree of `f` and
/// is square-free in `t`, then `f` is square-free.
pub fn squarefree_on_random_line(f: &MultiPoly, seed: u64) -> bool {
    let n = f.vars().len();
    let d = f.total_degree() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let a: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-50..=50))).collect();
        let b: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-50..=50))).collect();
        let restricted = restrict_to_line(f, &a, &b);
        if restricted.degree() != Some(d) {
            continue;
        }
        let g = restricted.gcd(&restricted.derivative());
        return g.degree() == Some(0);
    }
    false
}

/// Univariate polynomial `t -> f(a + b t)`.
pub fn restrict_to_line(f: &MultiPoly, a: &[Rat], b: &[Rat]) -> UniPoly {
    let mut acc = UniPoly::zero();
    let lines: Vec<UniPoly> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| UniPoly::new(vec![ai.clone(), bi.clone()]))
        .collect();
    for (m, c) in f.terms() {
        let mut t = UniPoly::new(vec![c.clone()]);
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&lines[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// True iff `f` is square-free (no repeated nonconstant factor).
pub fn is_squarefree(f: &MultiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    squarefree_part(f).total_degree() == f.total_degree()
}

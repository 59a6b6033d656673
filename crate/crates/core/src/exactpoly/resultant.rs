//! Sylvester resultants and binary-form discriminants.
//!
//! Determinants are expanded by fraction-free (Bareiss) elimination over
//! the polynomial ring, so every intermediate entry is a genuine minor and
//! each step's division is exact.


use super::multipoly::{MultiPoly, Monomial};
use super::PolyError;

/// Determinant of a square matrix over `Q[vars]` by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        panic!("empty determinant has no ring");
    }
    let vars = m[0][0].vars().clone();
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_divide(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of two coefficient lists given in descending order of
/// the eliminated variable. The lists' lengths fix the formal degrees.
pub fn sylvester_matrix(f_desc: &[MultiPoly], g_desc: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let m = f_desc.len() - 1;
    let k = g_desc.len() - 1;
    let n = m + k;
    let vars = f_desc[0].vars().clone();
    let mut rows = Vec::with_capacity(n);
    for r in 0..k {
        let mut row = vec![MultiPoly::zero(&vars); n];
        for (j, c) in f_desc.iter().enumerate() {
            row[r + j] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![MultiPoly::zero(&vars); n];
        for (j, c) in g_desc.iter().enumerate() {
            row[r + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f` and `g` with respect to the variable named `var`.
///
/// The result lies in the same ring and no longer involves `var`. When one
/// input is constant in `var` the resultant is that constant raised to the
/// other degree.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let i = f
        .vars()
        .index_of(var)
        .ok_or_else(|| PolyError::VariableMismatch(var.to_string()))?;
    resultant_in(f, g, i)
}

pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, i: usize) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = f.degree_in(i);
    let k = g.degree_in(i);
    match (m, k) {
        (0, 0) => Err(PolyError::DegenerateResultant),
        (0, _) => Ok(f.pow(k)),
        (_, 0) => Ok(g.pow(m)),
        _ => {
            let mut fc = f.coefficients_in(i);
            let mut gc = g.coefficients_in(i);
            fc.reverse();
            gc.reverse();
            Ok(bareiss_determinant(sylvester_matrix(&fc, &gc)))
        }
    }
}

/// Discriminant of a binary form in the variables `s`, `t`, normalized as
/// `Res(df/ds, df/dt)` with both partials taken at formal degree `m - 1` and
/// no leading-coefficient division. For `a s^2 + b st + c t^2` this is
/// `4ac - b^2`, i.e. `-1` times the classical discriminant.
pub fn binary_discriminant(form: &MultiPoly, s: &str, t: &str) -> Result<MultiPoly, PolyError> {
    let vars = form.vars();
    let si = vars
        .index_of(s)
        .ok_or_else(|| PolyError::VariableMismatch(s.to_string()))?;
    let ti = vars
        .index_of(t)
        .ok_or_else(|| PolyError::VariableMismatch(t.to_string()))?;
    if form.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut degree = None;
    for (mono, _) in form.terms() {
        let e = mono.exponents();
        let d = e[si] + e[ti];
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => return Err(PolyError::NotHomogeneous),
            _ => {}
        }
    }
    let m = degree.unwrap_or(0);
    if m < 2 {
        return Err(PolyError::DegreeTooLow {
            degree: m,
            required: 2,
        });
    }
    let coeffs = |p: &MultiPoly, deg: u32| -> Vec<MultiPoly> {
        // Coefficient of s^(deg - j) t^j, j = 0..=deg.
        let mut out = vec![MultiPoly::zero(vars); deg as usize + 1];
        for (mono, c) in p.terms() {
            let mut e = mono.exponents().to_vec();
            let j = e[ti] as usize;
            e[si] = 0;
            e[ti] = 0;
            out[j] = &out[j] + &MultiPoly::monomial(vars, e, c.clone());
        }
        out
    };
    let ds = coeffs(&form.derivative(si), m - 1);
    let dt = coeffs(&form.derivative(ti), m - 1);
    Ok(bareiss_determinant(sylvester_matrix(&ds, &dt)))
}

/// Largest power of `x_i` dividing every term (the valuation at `x_i = 0`).
pub fn valuation_in(p: &MultiPoly, i: usize) -> Option<u32> {
    p.terms().map(|(m, _): (&Monomial, _)| m.exponents()[i]).min()
}

//! Approximate complex roots for numeric cross-checks.

use num_complex::Complex64;

use super::univariate::UniPoly;
use super::PolyError;

#[derive(Clone, Debug)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Roots closer than `cluster_factor * tol` are merged.
    pub cluster_factor: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            max_iterations: 1000,
            cluster_factor: 10.0,
        }
    }
}

/// An approximate root with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxRoot {
    pub value: Complex64,
    pub multiplicity: u32,
}

/// All complex roots of `f` with multiplicities.
///
/// Multiplicities come from an exact square-free decomposition; each
/// square-free factor then has simple roots, which Aberth iteration finds
/// to full double precision. Roots of different factors that land within
/// `10 * tol` of each other are merged.
pub fn complex_roots_approx(f: &UniPoly, tol: f64) -> Result<Vec<ApproxRoot>, PolyError> {
    complex_roots_with(f, tol, &RootConfig::default())
}

pub fn complex_roots_with(
    f: &UniPoly,
    tol: f64,
    config: &RootConfig,
) -> Result<Vec<ApproxRoot>, PolyError> {
    match f.degree() {
        None | Some(0) => return Err(PolyError::DegreeTooLow { degree: 0, required: 1 }),
        _ => {}
    }
    let mut out: Vec<ApproxRoot> = Vec::new();
    for (factor, mult) in f.squarefree_decomposition() {
        for z in aberth(&factor, tol.min(1e-12), config.max_iterations)? {
            let radius = config.cluster_factor * tol * z.norm().max(1.0);
            if let Some(existing) = out.iter_mut().find(|r| (r.value - z).norm() <= radius) {
                existing.multiplicity += mult;
            } else {
                out.push(ApproxRoot {
                    value: z,
                    multiplicity: mult,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(out)
}

/// Aberth-Ehrlich simultaneous iteration. Intended for square-free input.
pub(crate) fn aberth(f: &UniPoly, tol: f64, max_iterations: usize) -> Result<Vec<Complex64>, PolyError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Ok(vec![]),
    };
    let monic = f.monic();
    let c = monic.coeffs_f64();
    if c.iter().any(|v| !v.is_finite()) {
        return Err(PolyError::RootFindingFailed {
            iterations: 0,
        });
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0], 0.0)]);
    }
    let dc: Vec<f64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            p = p * z + a;
        }
        let mut dp = Complex64::new(0.0, 0.0);
        for a in dc.iter().rev() {
            dp = dp * z + a;
        }
        (p, dp)
    };
    // Cauchy bound for the initial circle.
    let bound = 1.0 + c[..n].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let radius = bound.min(1e6).max(1e-3) * 0.5;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..max_iterations {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            } else {
                z[k] += Complex64::new(1e-3, 1e-3);
                max_step = f64::INFINITY;
            }
        }
        if max_step < tol {
            // Newton polish for the last bits.
            for zk in z.iter_mut() {
                for _ in 0..3 {
                    let (p, dp) = eval(*zk);
                    if dp.norm() > 0.0 {
                        let s = p / dp;
                        if s.is_finite() {
                            *zk -= s;
                        }
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(PolyError::RootFindingFailed {
        iterations: max_iterations,
    })
}

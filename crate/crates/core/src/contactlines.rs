//! Contact structures on CP^3 given by nonsingular antisymmetric matrices,
//! and their contact lines as a hyperplane section of the Plücker quadric.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::contactforms::AntisymMatrix4;
use crate::exactpoly::{rat, Rat};
use crate::projective::{
    on_plucker_quadric, plucker_coords, random_line, random_point, Line3, PluckerPoint, ProjPoint,
    ProjectiveError, RatMatrix,
};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("the matrix is singular (Pfaffian 0)")]
    SingularStructure,
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error("expected a point of CP^3")]
    NotSpacePoint,
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

/// `A01 A23 - A02 A13 + A03 A12`; its square is `det A`.
pub fn pfaffian(a: &AntisymMatrix4) -> Rat {
    let g = |i, j| a.get(i, j);
    g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2)
}

/// The contact structure `x^T A dx` of a nonsingular antisymmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    a: AntisymMatrix4,
    pf: Rat,
}

impl ContactStructure {
    pub fn new(a: AntisymMatrix4) -> Result<Self, LinesError> {
        let pf = pfaffian(&a);
        if pf.is_zero() {
            return Err(LinesError::SingularStructure);
        }
        Ok(ContactStructure { a, pf })
    }

    pub fn bryant() -> Self {
        Self::new(AntisymMatrix4::bryant()).expect("Pfaffian 1")
    }

    pub fn matrix(&self) -> &AntisymMatrix4 {
        &self.a
    }

    pub fn pfaffian(&self) -> &Rat {
        &self.pf
    }
}

/// A line is contact iff `a^T A b = 0` for spanning points `a, b`.
pub fn is_contact_line(phi: &ContactStructure, line: &Line3) -> bool {
    phi.a.bilinear(line.span_a().coords(), line.span_b().coords()).is_zero()
}

/// `(A01, A02, A03, A12, A13, A23)` as a linear form on Plücker
/// coordinates, so that `a^T A b = sum A_ij p_ij`.
pub fn hyperplane_form(phi: &ContactStructure) -> [Rat; 6] {
    phi.a.upper()
}

pub fn hyperplane_value(form: &[Rat; 6], p: &PluckerPoint) -> Rat {
    form.iter().zip(&p.0).map(|(a, b)| a * b).sum()
}

/// The plane `{x : p^T A x = 0}` of contact directions at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactPlane {
    pub normal: [Rat; 4],
}

impl ContactPlane {
    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.normal
            .iter()
            .zip(x.coords())
            .map(|(a, b)| a * b)
            .sum::<Rat>()
            .is_zero()
    }
}

pub fn contact_lines_through_point(phi: &ContactStructure, p: &ProjPoint) -> Result<ContactPlane, LinesError> {
    if p.dim() != 4 {
        return Err(LinesError::NotSpacePoint);
    }
    let normal: [Rat; 4] = std::array::from_fn(|j| {
        (0..4)
            .map(|i| &p.coords()[i] * phi.a.get(i, j))
            .sum::<Rat>()
    });
    assert!(normal.iter().any(|c| !c.is_zero()), "A p = 0 contradicts a nonzero Pfaffian");
    Ok(ContactPlane { normal })
}

/// Seeded random antisymmetric matrix with entries in `{-9, ..., 9}`.
pub fn random_antisymmetric(seed: u64) -> AntisymMatrix4 {
    let mut rng = seed::rng(seed);
    AntisymMatrix4::from_upper(std::array::from_fn(|_| rat(rng.gen_range(-9..=9))))
}

/// Seeded random nonsingular structure (resampled until the Pfaffian is
/// nonzero).
pub fn random_structure(seed: u64) -> ContactStructure {
    (0u64..)
        .find_map(|k| ContactStructure::new(random_antisymmetric(seed::derive_indexed(seed, "structure", k))).ok())
        .expect("nonsingular matrices are dense")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    /// Exact rational, as text.
    pub pfaffian: String,
    pub lines_tested: usize,
    pub agreements: usize,
}

/// Compares `is_contact_line` with the Plücker condition (on the quadric
/// and on the hyperplane) for `lines` seeded random lines, half of them
/// drawn from the contact family so both answers occur. Line `i` depends
/// only on `(seed, i)`, so the split across workers does not matter.
pub fn equivalence_experiment(
    phi: &ContactStructure,
    lines: usize,
    seed: u64,
    jobs: Option<usize>,
) -> Result<ExperimentReport, LinesError> {
    let form = hyperplane_form(phi);
    let check = |i: usize| -> bool {
        let mut rng = seed::rng(seed::derive_indexed(seed, "lines", i as u64));
        let line = if i % 2 == 0 {
            random_line(&mut rng, 20)
        } else {
            random_contact_line(phi, &mut rng)
        };
        let p = plucker_coords(&line);
        let plucker = on_plucker_quadric(&p) && hyperplane_value(&form, &p).is_zero();
        is_contact_line(phi, &line) == plucker
    };
    let run = || (0..lines).into_par_iter().filter(|&i| check(i)).count();
    let agreements = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| LinesError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(ExperimentReport {
        pfaffian: phi.pf.to_string(),
        lines_tested: lines,
        agreements,
    })
}

/// A random line through a random point `a`, inside its contact plane.
pub fn random_contact_line<R: Rng>(phi: &ContactStructure, rng: &mut R) -> Line3 {
    loop {
        let a = random_point(rng, 4, 20);
        let plane = contact_lines_through_point(phi, &a).expect("point of CP^3");
        // Solve normal . b = 0 for the last coordinate with nonzero normal entry.
        let k = (0..4).rev().find(|&k| !plane.normal[k].is_zero()).expect("nonzero normal");
        let mut b: Vec<Rat> = (0..4).map(|_| rat(rng.gen_range(-20..=20))).collect();
        b[k] = Rat::zero();
        let rest: Rat = (0..4).map(|i| &plane.normal[i] * &b[i]).sum();
        b[k] = -rest / &plane.normal[k];
        let Ok(b) = ProjPoint::new(b) else { continue };
        if let Ok(line) = Line3::new(a, b) {
            return line;
        }
    }
}

/// Projective dimension of `{quadric = 0, hyperplane = 0}` in CP^5 at
/// `samples` seeded points of the set, from the rank of the Jacobian of the
/// two equations (dimension `5 - rank`).
pub fn contact_line_family_dimensions(phi: &ContactStructure, samples: usize, seed: u64) -> Vec<usize> {
    let form = hyperplane_form(phi);
    (0..samples)
        .map(|i| {
            let mut rng = seed::rng(seed::derive_indexed(seed, "family", i as u64));
            let p = plucker_coords(&random_contact_line(phi, &mut rng)).0;
            // Gradient of p01 p23 - p02 p13 + p03 p12.
            let dq = [p[5].clone(), -&p[4], p[3].clone(), p[2].clone(), -&p[1], p[0].clone()];
            5 - rank_2x6(&dq, &form)
        })
        .collect()
}

fn rank_2x6(u: &[Rat; 6], v: &[Rat; 6]) -> usize {
    let uz = u.iter().all(Zero::is_zero);
    let vz = v.iter().all(Zero::is_zero);
    if uz && vz {
        return 0;
    }
    let independent = (0..6).any(|i| (i + 1..6).any(|j| &u[i] * &v[j] != &u[j] * &v[i]));
    if independent {
        2
    } else {
        1
    }
}

/// `det A` as a 4x4 rational matrix.
pub fn determinant(a: &AntisymMatrix4) -> Rat {
    RatMatrix {
        rows: a.entries().iter().map(|r| r.to_vec()).collect(),
    }
    .det()
}

/// The Plücker quadric form evaluated on the coefficient vector of `A`.
pub fn quadric_at_coefficients(a: &AntisymMatrix4) -> Rat {
    PluckerPoint(a.upper()).quadric_value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> ProjPoint {
        ProjPoint::basis(4, i)
    }

    #[test]
    fn pfaffian_values() {
        assert_eq!(pfaffian(&AntisymMatrix4::bryant()), rat(1));
        let rank2 = AntisymMatrix4::from_upper([1, 0, 0, 0, 0, 0].map(rat));
        assert_eq!(pfaffian(&rank2), rat(0));
        assert_eq!(ContactStructure::new(rank2), Err(LinesError::SingularStructure));
        for k in 0..100 {
            let a = random_antisymmetric(k);
            assert_eq!(pfaffian(&a) * pfaffian(&a), determinant(&a));
            assert_eq!(pfaffian(&a), quadric_at_coefficients(&a));
        }
    }

    #[test]
    fn bryant_lines() {
        let phi = ContactStructure::bryant();
        let l = |i, j| Line3::new(e(i), e(j)).unwrap();
        assert!(!is_contact_line(&phi, &l(0, 1)));
        assert!(is_contact_line(&phi, &l(0, 2)));
        assert!(is_contact_line(&phi, &l(0, 3)));
        let form = hyperplane_form(&phi);
        assert_eq!(form, [1, 0, 0, 0, 0, 1].map(rat));
    }

    #[test]
    fn bilinear_identity_and_scaling() {
        let phi = random_structure(3);
        let form = hyperplane_form(&phi);
        let mut rng = seed::rng(11);
        for _ in 0..1000 {
            let line = random_line(&mut rng, 20);
            let lhs = phi.matrix().bilinear(line.span_a().coords(), line.span_b().coords());
            assert_eq!(lhs, hyperplane_value(&form, &plucker_coords(&line)));
        }
        let scaled = ContactStructure::new(phi.matrix().scale(&rat(3))).unwrap();
        let sf = hyperplane_form(&scaled);
        assert!(sf.iter().zip(&form).all(|(a, b)| *a == b * rat(3)));
    }

    #[test]
    fn contact_plane() {
        let phi = ContactStructure::bryant();
        let plane = contact_lines_through_point(&phi, &e(0)).unwrap();
        assert_eq!(plane.normal, [0, 1, 0, 0].map(rat));
        let mut rng = seed::rng(5);
        for _ in 0..100 {
            let p = random_point(&mut rng, 4, 20);
            let plane = contact_lines_through_point(&phi, &p).unwrap();
            assert!(plane.contains(&p));
            let line = random_contact_line(&phi, &mut rng);
            assert!(is_contact_line(&phi, &line));
        }
    }

    #[test]
    fn experiment_is_exact_and_job_independent() {
        let phi = random_structure(1);
        let a = equivalence_experiment(&phi, 200, 9, Some(1)).unwrap();
        let b = equivalence_experiment(&phi, 200, 9, Some(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.agreements, 200);
    }

    #[test]
    fn family_is_threefold() {
        let dims = contact_line_family_dimensions(&ContactStructure::bryant(), 20, 0);
        assert!(dims.iter().all(|&d| d == 3));
    }
}

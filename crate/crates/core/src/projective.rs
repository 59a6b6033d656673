//! Points and lines over the rationals in CP^2, CP^2* and CP^3, Plücker
//! coordinates of lines in CP^3, and seeded random projectivities of the
//! plane.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactpoly::{rat, HomogPoly, MultiPoly, Rat};
use crate::seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("projective points need 3 or 4 coordinates, got {0}")]
    WrongDimension(usize),
    #[error("spanning points are proportional")]
    DegenerateLine,
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse point: {0}")]
    Parse(String),
}

/// A point of CP^2 / CP^2* (3 coordinates) or CP^3 (4 coordinates).
///
/// Equality is projective: two points are equal iff all 2x2 minors of the
/// coordinate pair vanish.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, ProjectiveError> {
        if coords.len() != 3 && coords.len() != 4 {
            return Err(ProjectiveError::WrongDimension(coords.len()));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(ProjectiveError::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, ProjectiveError> {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    /// Standard basis point `e_i` in dimension `dim` (3 or 4 coordinates).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut c = vec![Rat::zero(); dim];
        c[i] = Rat::one();
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero point")
    }

    /// Integer representative with coprime entries and a positive first
    /// nonzero entry.
    pub fn primitive(&self) -> Vec<BigInt> {
        let den = self
            .coords
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints[self.pivot()].is_negative() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Representative with first nonzero coordinate 1; used only for
    /// canonical sorting.
    pub fn sort_key(&self) -> Vec<Rat> {
        let p = &self.coords[self.pivot()];
        self.coords.iter().map(|c| c / p).collect()
    }

    pub fn dot(&self, other: &ProjPoint) -> Rat {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Parses `[a, b, c]` with integer or `p/q` entries.
    pub fn parse(text: &str) -> Result<Self, ProjectiveError> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ProjectiveError::Parse(format!("expected [..], got '{text}'")))?;
        let coords = inner
            .split(',')
            .map(|s| parse_rat(s.trim()).ok_or_else(|| ProjectiveError::Parse(s.trim().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }
}

pub(crate) fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| &self.coords[i] * &other.coords[j] == &self.coords[j] * &other.coords[i])
        })
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primitive().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A line in CP^3 given by two distinct spanning points.
#[derive(Clone, Debug)]
pub struct Line3 {
    a: ProjPoint,
    b: ProjPoint,
}

impl Line3 {
    pub fn new(a: ProjPoint, b: ProjPoint) -> Result<Self, ProjectiveError> {
        if a.dim() != 4 || b.dim() != 4 {
            return Err(ProjectiveError::WrongDimension(a.dim().min(b.dim())));
        }
        if a == b {
            return Err(ProjectiveError::DegenerateLine);
        }
        Ok(Line3 { a, b })
    }

    pub fn span_a(&self) -> &ProjPoint {
        &self.a
    }

    pub fn span_b(&self) -> &ProjPoint {
        &self.b
    }
}

/// Plücker coordinates in the fixed order `(p01, p02, p03, p12, p13, p23)`.
#[derive(Clone, Debug)]
pub struct PluckerPoint(pub [Rat; 6]);

/// Index pairs matching the Plücker coordinate order.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `p_ij = a_i b_j - a_j b_i` for `i < j`.
pub fn plucker_coords(line: &Line3) -> PluckerPoint {
    let a = line.a.coords();
    let b = line.b.coords();
    PluckerPoint(PLUCKER_PAIRS.map(|(i, j)| &a[i] * &b[j] - &a[j] * &b[i]))
}

/// Builds the Plücker point of the line through `a` and `b`, failing when
/// they are proportional.
pub fn plucker_of_points(a: &ProjPoint, b: &ProjPoint) -> Result<PluckerPoint, ProjectiveError> {
    Ok(plucker_coords(&Line3::new(a.clone(), b.clone())?))
}

impl PluckerPoint {
    /// `p01 p23 - p02 p13 + p03 p12`.
    pub fn quadric_value(&self) -> Rat {
        let p = &self.0;
        &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_proportional(&self, other: &PluckerPoint) -> bool {
        (0..6).all(|i| (i + 1..6).all(|j| &self.0[i] * &other.0[j] == &self.0[j] * &other.0[i]))
    }
}

/// Exact membership in the Plücker quadric `p01 p23 - p02 p13 + p03 p12 = 0`.
pub fn on_plucker_quadric(p: &PluckerPoint) -> bool {
    p.quadric_value().is_zero()
}

impl Serialize for PluckerPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        parts.serialize(s)
    }
}

/// Square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix {
            rows: rows.iter().map(|r| r.iter().map(|&c| rat(c)).collect()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
                .collect(),
        }
    }

    /// Determinant by Gaussian elimination over Q.
    pub fn det(&self) -> Rat {
        let n = self.size();
        let mut m = self.rows.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                m.swap(p, k);
                det = -det;
            }
            det *= &m[k][k];
            for i in k + 1..n {
                let f = &m[i][k] / &m[k][k];
                for j in k..n {
                    let v = &f * &m[k][j];
                    m[i][j] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix, ProjectiveError> {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(ProjectiveError::Singular)?;
            a.swap(p, k);
            inv.swap(p, k);
            let piv = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &piv;
                inv[k][j] /= &piv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                    let w = &f * &inv[k][j];
                    inv[i][j] -= w;
                }
            }
        }
        Ok(RatMatrix { rows: inv })
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.size();
        RatMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j]))
                        .collect()
                })
                .collect(),
        }
    }
}

/// An invertible linear change of coordinates of the plane.
#[derive(Clone, Debug)]
pub struct Projectivity {
    matrix: RatMatrix,
    inverse: RatMatrix,
}

impl Projectivity {
    pub fn new(matrix: RatMatrix) -> Result<Self, ProjectiveError> {
        let inverse = matrix.inverse()?;
        Ok(Projectivity { matrix, inverse })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn inverse(&self) -> Projectivity {
        Projectivity {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `p -> M p`.
    pub fn map_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.matrix.apply(p.coords())).expect("invertible map keeps points nonzero")
    }

    /// Curve transported by the map: `F -> F o M^-1`, whose zero set is the
    /// image `M(D)`.
    pub fn act_on_curve(&self, f: &HomogPoly) -> HomogPoly {
        substitute_linear(f, &self.inverse)
    }

    /// `F -> F o M`.
    pub fn pull_back_curve(&self, f: &HomogPoly) -> HomogPoly {
        substitute_linear(f, &self.matrix)
    }
}

/// `F(x) -> F(L x)` for a linear map `L`.
pub fn substitute_linear(f: &HomogPoly, l: &RatMatrix) -> HomogPoly {
    let vars = f.vars();
    let images: Vec<MultiPoly> = l
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(MultiPoly::zero(vars), |acc, (j, c)| acc + MultiPoly::var(vars, j).scale(c))
        })
        .collect();
    HomogPoly::new(f.poly().compose(&images)).expect("invertible substitution keeps F nonzero")
}

/// Seeded random invertible matrix of size `dim` with entries uniform in
/// `{-5, ..., 5}`, resampled until the determinant is nonzero.
pub fn random_matrix(dim: usize, seed: u64) -> RatMatrix {
    let mut rng = seed::rng(seed);
    loop {
        let m = RatMatrix {
            rows: (0..dim)
                .map(|_| (0..dim).map(|_| rat(rng.gen_range(-5..=5))).collect())
                .collect(),
        };
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Seeded random projectivity of the plane (3x3).
pub fn random_projectivity(seed: u64) -> Projectivity {
    Projectivity::new(random_matrix(3, seed)).expect("resampled until invertible")
}

/// Seeded random point of CP^n with small integer coordinates.
pub fn random_point<R: Rng>(rng: &mut R, dim: usize, range: i64) -> ProjPoint {
    loop {
        let c: Vec<Rat> = (0..dim).map(|_| rat(rng.gen_range(-range..=range))).collect();
        if let Ok(p) = ProjPoint::new(c) {
            return p;
        }
    }
}

/// Seeded random line of CP^3 spanned by two random integer points.
pub fn random_line<R: Rng>(rng: &mut R, range: i64) -> Line3 {
    loop {
        let a = random_point(rng, 4, range);
        let b = random_point(rng, 4, range);
        if let Ok(l) = Line3::new(a, b) {
            return l;
        }
    }
}

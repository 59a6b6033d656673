//! Exact rational and multivariate polynomial arithmetic.

mod gcd;
mod multipoly;
mod parse;
mod resultant;
mod roots;
mod univariate;

use thiserror::Error;

pub use gcd::{
    content, gcd, is_squarefree, primitive_part, pseudo_remainder, restrict_to_line,
    squarefree_decomposition, squarefree_on_random_line, squarefree_part,
};
pub use multipoly::{
    dual_plane_vars, plane_vars, rat, rat_frac, HomogPoly, Monomial, MultiPoly, Rat, Vars,
};
pub use parse::{parse_poly, GRAMMAR_VARS};
pub use resultant::{
    bareiss_determinant, binary_discriminant, resultant, resultant_in, sylvester_matrix,
    valuation_in,
};
pub use roots::{complex_roots_approx, complex_roots_with, ApproxRoot, RootConfig};
pub use univariate::{simplest_between, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("both polynomials are constant in the eliminated variable")]
    DegenerateResultant,
    #[error("degree {degree} is below the required {required}")]
    DegreeTooLow { degree: u32, required: u32 },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("root finding did not converge after {iterations} iterations")]
    RootFindingFailed { iterations: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable {0} is not available in this ring")]
    VariableMismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

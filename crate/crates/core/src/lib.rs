//! Exact computations around contact curves in complex projective
//! three-space: plane curves and their duals, the horizontal lift to the
//! flag variety, the birational contact map into CP^3, null-correlation
//! contact lines and the Euler-characteristic identity for contact
//! threefolds.

pub mod cli;
pub mod contactcurves;
pub mod contactforms;
pub mod contactlines;
pub mod exactpoly;
pub mod invariants;
pub mod planecurves;
pub mod projective;
pub mod seed;

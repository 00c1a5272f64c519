//! Exact linear algebra over complex rationals: scalars, matrices and
//! canonical subspaces. No floating point is used anywhere; every
//! comparison downstream is exact equality.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{Echelon, Inertia, Matrix};
pub use scalar::{
    complex, format_rational, format_scalar, int, is_real, parse_rational, parse_scalar, rat, sc,
    sc_i, sc_rat, Rational, Scalar,
};
pub use subspace::{canonicalize, same_span, Subspace};

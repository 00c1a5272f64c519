//! Exact computation with linear relations in finite-dimensional
//! Pontryagin spaces.
//!
//! The crate realizes matrix-valued functions `Q(z) = G^+ (A - z)^{-1} G`
//! from the data of a fundamental symmetry `J`, a self-adjoint relation or
//! operator `A`, and a defect map `G`, entirely over complex rationals.
//! From that data it derives the orthogonal projection onto the range of
//! `G`, the inverse representation, the underlying symmetric operator with
//! its adjoint and defect subspaces, a boundary triple whose Weyl function
//! reproduces `Q`, and machine-checked certificates for the structural
//! identities tying all of these together.
//!
//! Start with the runnable programs in `examples/`, one per capability;
//! the `pontryagin` binary exposes the same pipeline over JSON problem
//! files (`analyze`, `eval`, `verify`).

pub mod certificate;
pub mod cli;
pub mod error;
pub mod exact;
pub mod nevanlinna;
pub mod relation;
pub mod space;
pub mod weyl;

pub use certificate::{CertStatus, Certificate};
pub use error::Error;
pub use exact::{Matrix, Rational, Scalar, Subspace};
pub use nevanlinna::{NevRepresentation, RepresentationForm, SampleSet};
pub use relation::{LinearRelation, SpectrumPoint};
pub use space::PontryaginSpace;

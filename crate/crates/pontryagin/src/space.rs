//! Finite-dimensional Pontryagin spaces: a coordinate space carrying the
//! indefinite inner product `[x, y] = y^* J x` induced by a fundamental
//! symmetry `J` (Hermitian with `J^2 = I`).
//!
//! The product is linear in the first slot and conjugate-linear in the
//! second. Adjoints of maps between such spaces are taken with respect to
//! these products: for `m` from `(K1, J1)` to `(K2, J2)` the adjoint is
//! `m^+ = J1 m^* J2`. Parameter spaces are the Euclidean case `J = I`.

use crate::error::Error;
use crate::exact::matrix::{Inertia, Matrix};
use crate::exact::scalar::Scalar;
use crate::exact::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PontryaginSpace {
    j: Matrix,
    inertia: Inertia,
}

impl PontryaginSpace {
    /// Builds the space from its fundamental symmetry. Fails unless `J` is
    /// Hermitian and involutive.
    pub fn new(j: Matrix) -> Result<Self, Error> {
        if !j.is_square() {
            return Err(Error::ValidationError(format!(
                "fundamental symmetry must be square, got {}x{}",
                j.rows(),
                j.cols()
            )));
        }
        if !j.is_hermitian() {
            return Err(Error::ValidationError("fundamental symmetry is not Hermitian".into()));
        }
        if &j * &j != Matrix::identity(j.rows()) {
            return Err(Error::ValidationError("fundamental symmetry is not involutive".into()));
        }
        let inertia = j.hermitian_inertia().expect("Hermitian by the check above");
        Ok(PontryaginSpace { j, inertia })
    }

    /// The Euclidean space of dimension `n` (`J = I`).
    pub fn euclidean(n: usize) -> Self {
        PontryaginSpace {
            j: Matrix::identity(n),
            inertia: Inertia { positive: n, negative: 0, zero: 0 },
        }
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn j(&self) -> &Matrix {
        &self.j
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    /// The negative index of the space (number of negative squares of the
    /// product).
    pub fn negative_index(&self) -> usize {
        self.inertia.negative
    }

    /// `[x, y] = y^* J x` for column vectors `x`, `y`.
    pub fn indefinite_product(&self, x: &Matrix, y: &Matrix) -> Result<Scalar, Error> {
        if x.rows() != self.dim() || y.rows() != self.dim() || x.cols() != 1 || y.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{} vectors in dimension {}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols(),
                self.dim()
            )));
        }
        let m = &(&y.conj_transpose() * &self.j) * x;
        Ok(m[(0, 0)].clone())
    }

    /// Gram matrix `B^* J B` of a set of columns.
    pub fn gram(&self, columns: &Matrix) -> Result<Matrix, Error> {
        if columns.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gram of {}x{} columns in dimension {}",
                columns.rows(),
                columns.cols(),
                self.dim()
            )));
        }
        Ok(&(&columns.conj_transpose() * &self.j) * columns)
    }

    /// A subspace is nondegenerate when its Gram matrix is invertible.
    pub fn is_nondegenerate(&self, s: &Subspace) -> Result<bool, Error> {
        Ok(self.gram(s.basis())?.is_invertible())
    }

    /// The orthogonal companion `{ x : [x, s] = 0 for all s }` of a
    /// subspace, namely the kernel of `B^* J`.
    pub fn ortho_companion(&self, s: &Subspace) -> Result<Subspace, Error> {
        if s.ambient() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of ambient {} in space of dimension {}",
                s.ambient(),
                self.dim()
            )));
        }
        Ok(Subspace::span(&(&s.basis().conj_transpose() * &self.j).kernel()))
    }
}

/// Adjoint of `m : dom -> cod` with respect to the indefinite products:
/// `m^+ = J_dom m^* J_cod`.
pub fn j_adjoint(m: &Matrix, dom: &PontryaginSpace, cod: &PontryaginSpace) -> Result<Matrix, Error> {
    if m.rows() != cod.dim() || m.cols() != dom.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map of shape {}x{} between spaces of dimensions {} -> {}",
            m.rows(),
            m.cols(),
            dom.dim(),
            cod.dim()
        )));
    }
    Ok(&(dom.j() * &m.conj_transpose()) * cod.j())
}

impl PontryaginSpace {
    /// Adjoint of a square matrix acting on this space: `J m^* J`.
    pub fn adjoint_sq(&self, m: &Matrix) -> Result<Matrix, Error> {
        j_adjoint(m, self, self)
    }
}

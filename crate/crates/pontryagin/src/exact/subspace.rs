//! Subspaces of a coordinate space, held in a canonical basis so that two
//! equal subspaces compare equal structurally.
//!
//! The canonical basis is the reduced column echelon form of any spanning
//! set (row reduction of the transpose), which is unique for a given
//! subspace. All set operations return canonical results.

use crate::error::Error;
use crate::exact::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `vectors`; the ambient dimension is the row
    /// count. Linear dependencies are removed and the basis canonicalized.
    pub fn span(vectors: &Matrix) -> Subspace {
        let ech = vectors.transpose().rref();
        let dim = ech.pivots.len();
        let basis = if dim == 0 {
            Matrix::zeros(vectors.rows(), 0)
        } else {
            ech.matrix.row_block(0, dim).transpose()
        };
        Subspace { ambient: vectors.rows(), basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(&Matrix::identity(ambient))
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical basis, one column per basis vector (`ambient x dim`).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&Matrix::hstack(&[&self.basis, &other.basis])))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // x in the intersection iff x = B1 a = B2 b: kernel of [B1 | -B2].
        let paired = Matrix::hstack(&[&self.basis, &(-&other.basis)]);
        let null = paired.kernel();
        let a_coords = null.row_block(0, self.dim());
        Ok(Subspace::span(&(&self.basis * &a_coords)))
    }

    pub fn contains_vector(&self, v: &Matrix) -> Result<bool, Error> {
        if v.rows() != self.ambient || v.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "vector of shape {}x{} against ambient dimension {}",
                v.rows(),
                v.cols(),
                self.ambient
            )));
        }
        if v.is_zero() {
            return Ok(true);
        }
        Ok(Matrix::hstack(&[&self.basis, v]).rank() == self.dim())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, Error> {
        self.check_ambient(other)?;
        if other.is_zero() {
            return Ok(true);
        }
        Ok(Matrix::hstack(&[&self.basis, &other.basis]).rank() == self.dim())
    }

    /// True when the two subspaces intersect only in zero.
    pub fn is_direct_with(&self, other: &Subspace) -> Result<bool, Error> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }
}

/// Re-canonicalizes a spanning matrix; idempotent on canonical bases.
pub fn canonicalize(vectors: &Matrix) -> Matrix {
    Subspace::span(vectors).basis.clone()
}

/// True when the given matrix columns span the same subspace.
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    a.rows() == b.rows() && canonicalize(a) == canonicalize(b)
}

//! Linear relations in a Pontryagin space: subspaces of `K x K` treated as
//! multivalued operators. Graphs are kept canonical, so equality of
//! relations is structural equality.
//!
//! A graph basis is a `2n x d` matrix whose columns are pairs `(f; g)`
//! stacked input-over-output. All the calculus lives here: domain, range,
//! kernel, multivalued part, inversion, shifting, the two sums, adjoints
//! with respect to the indefinite product, resolvents, eigenvalue and
//! defect computations, and block decompositions along a projection.

use crate::error::Error;
use crate::exact::matrix::Matrix;
use crate::exact::scalar::{format_scalar, Scalar};
use crate::exact::subspace::Subspace;
use crate::space::PontryaginSpace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearRelation {
    space: PontryaginSpace,
    graph: Subspace,
}

/// Classification of a point relative to a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumPoint {
    /// `ker(T - z)` is nontrivial.
    Eigenvalue,
    /// `(T - z)^{-1}` is an everywhere-defined operator.
    ResolventPoint,
    /// Injective but not surjective: spectrum of non-eigenvalue type.
    Neither,
}

/// The four corners of a relation along a projection decomposition
/// `K = (I-p)K [+] pK`, in the convention
/// `T_i^j = { (d, E_j v) : (d, v) in T, d in D(T) and K_i } + {0} x E_j T(0)`
/// with `E_1 = I - p`, `E_2 = p`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    blocks: [[LinearRelation; 2]; 2],
}

impl BlockDecomposition {
    /// Block for domain component `i` and range component `j` (1-indexed,
    /// matching the superscript/subscript convention `T_i^j`).
    pub fn block(&self, i: usize, j: usize) -> &LinearRelation {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "block indices are 1 or 2");
        &self.blocks[i - 1][j - 1]
    }

    /// Rebuilds the relation as `(T_1^1 + T_1^2) c+ (T_2^1 + T_2^2)`,
    /// operator sums inside, componentwise sum outside.
    pub fn reassemble(&self) -> Result<LinearRelation, Error> {
        let first = self.block(1, 1).operator_sum(self.block(1, 2))?;
        let second = self.block(2, 1).operator_sum(self.block(2, 2))?;
        first.componentwise_sum(&second)
    }
}

impl LinearRelation {
    /// Relation spanned by the columns of `vectors` (shape `2n x d`).
    pub fn from_graph(space: PontryaginSpace, vectors: &Matrix) -> Result<Self, Error> {
        if vectors.rows() != 2 * space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "graph vectors have {} rows, expected {}",
                vectors.rows(),
                2 * space.dim()
            )));
        }
        Ok(LinearRelation { space, graph: Subspace::span(vectors) })
    }

    /// Graph of an everywhere-defined operator given by a square matrix.
    pub fn from_operator(space: PontryaginSpace, m: &Matrix) -> Result<Self, Error> {
        let n = space.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix {}x{} on a space of dimension {}",
                m.rows(),
                m.cols(),
                n
            )));
        }
        let id = Matrix::identity(n);
        let graph = Matrix::vstack(&[&id, m]);
        LinearRelation::from_graph(space, &graph)
    }

    /// Graph of `m` restricted to a domain subspace.
    pub fn from_operator_on(
        space: PontryaginSpace,
        m: &Matrix,
        domain: &Subspace,
    ) -> Result<Self, Error> {
        let n = space.dim();
        if m.rows() != n || m.cols() != n || domain.ambient() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator {}x{} on domain of ambient {} in dimension {}",
                m.rows(),
                m.cols(),
                domain.ambient(),
                n
            )));
        }
        let d = domain.basis();
        let graph = Matrix::vstack(&[d, &(m * d)]);
        LinearRelation::from_graph(space, &graph)
    }

    /// The trivial relation `{(0, 0)}`.
    pub fn zero(space: PontryaginSpace) -> Self {
        let n = space.dim();
        LinearRelation { space, graph: Subspace::zero(2 * n) }
    }

    pub fn space(&self) -> &PontryaginSpace {
        &self.space
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    /// Input components of the canonical graph basis (`n x d`).
    pub fn graph_top(&self) -> Matrix {
        self.graph.basis().row_block(0, self.space.dim())
    }

    /// Output components of the canonical graph basis (`n x d`).
    pub fn graph_bottom(&self) -> Matrix {
        self.graph.basis().row_block(self.space.dim(), 2 * self.space.dim())
    }

    pub fn domain(&self) -> Subspace {
        Subspace::span(&self.graph_top())
    }

    pub fn range(&self) -> Subspace {
        Subspace::span(&self.graph_bottom())
    }

    /// `ker T = { f : (f, 0) in T }`.
    pub fn kernel(&self) -> Subspace {
        let coords = self.graph_bottom().kernel();
        Subspace::span(&(&self.graph_top() * &coords))
    }

    /// The multivalued part `T(0) = { g : (0, g) in T }`.
    pub fn mul_part(&self) -> Subspace {
        let coords = self.graph_top().kernel();
        Subspace::span(&(&self.graph_bottom() * &coords))
    }

    /// The purely multivalued relation `{0} x T(0)`.
    pub fn t_infinity(&self) -> LinearRelation {
        let n = self.space.dim();
        let mul = self.mul_part();
        let graph = Matrix::vstack(&[&Matrix::zeros(n, mul.dim()), mul.basis()]);
        LinearRelation::from_graph(self.space.clone(), &graph).expect("shape is 2n by construction")
    }

    pub fn is_operator(&self) -> bool {
        self.mul_part().is_zero()
    }

    pub fn is_everywhere_defined(&self) -> bool {
        self.domain().is_full()
    }

    /// Matrix of an everywhere-defined single-valued relation.
    pub fn operator_matrix(&self) -> Result<Matrix, Error> {
        if !self.is_operator() || !self.is_everywhere_defined() {
            return Err(Error::ValidationError(
                "relation is not an everywhere-defined operator".into(),
            ));
        }
        // Here the graph dimension equals n and the top block is invertible.
        let top = self.graph_top();
        let bottom = self.graph_bottom();
        Ok(&bottom * &top.inverse()?)
    }

    pub fn inverse(&self) -> LinearRelation {
        let graph = Matrix::vstack(&[&self.graph_bottom(), &self.graph_top()]);
        LinearRelation::from_graph(self.space.clone(), &graph).expect("same shape")
    }

    /// `zT = { (f, zg) : (f, g) in T }`.
    pub fn scalar_mul(&self, z: &Scalar) -> LinearRelation {
        let graph = Matrix::vstack(&[&self.graph_top(), &self.graph_bottom().scale(z)]);
        LinearRelation::from_graph(self.space.clone(), &graph).expect("same shape")
    }

    /// `T - z = { (f, g - zf) : (f, g) in T }`.
    pub fn shift(&self, z: &Scalar) -> LinearRelation {
        let top = self.graph_top();
        let graph = Matrix::vstack(&[&top, &(&self.graph_bottom() - &top.scale(z))]);
        LinearRelation::from_graph(self.space.clone(), &graph).expect("same shape")
    }

    fn check_same_space(&self, other: &LinearRelation) -> Result<(), Error> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(
                "relations live in different spaces".into(),
            ));
        }
        Ok(())
    }

    /// Operator-like sum `S + T = { (f, g + k) : (f, g) in S, (f, k) in T }`.
    pub fn operator_sum(&self, other: &LinearRelation) -> Result<LinearRelation, Error> {
        self.check_same_space(other)?;
        let (f1, g1) = (self.graph_top(), self.graph_bottom());
        let (f2, g2) = (other.graph_top(), other.graph_bottom());
        // Pairs of coordinates with equal inputs: kernel of [F1 | -F2].
        let paired = Matrix::hstack(&[&f1, &(-&f2)]).kernel();
        let x = paired.row_block(0, self.graph_dim());
        let y = paired.row_block(self.graph_dim(), self.graph_dim() + other.graph_dim());
        let inputs = &f1 * &x;
        let outputs = &(&g1 * &x) + &(&g2 * &y);
        let graph = Matrix::vstack(&[&inputs, &outputs]);
        LinearRelation::from_graph(self.space.clone(), &graph)
    }

    /// Componentwise sum `S c+ T`: the span of both graphs.
    pub fn componentwise_sum(&self, other: &LinearRelation) -> Result<LinearRelation, Error> {
        self.check_same_space(other)?;
        Ok(LinearRelation {
            space: self.space.clone(),
            graph: self.graph.sum(&other.graph)?,
        })
    }

    /// Componentwise sum that must be direct (graphs intersect trivially).
    pub fn direct_sum(&self, other: &LinearRelation) -> Result<LinearRelation, Error> {
        self.check_same_space(other)?;
        if !self.graph.is_direct_with(&other.graph)? {
            return Err(Error::ValidationError(
                "componentwise sum is not direct".into(),
            ));
        }
        self.componentwise_sum(other)
    }

    pub fn intersect(&self, other: &LinearRelation) -> Result<LinearRelation, Error> {
        self.check_same_space(other)?;
        Ok(LinearRelation {
            space: self.space.clone(),
            graph: self.graph.intersect(&other.graph)?,
        })
    }

    pub fn contains(&self, other: &LinearRelation) -> Result<bool, Error> {
        self.check_same_space(other)?;
        self.graph.contains(&other.graph)
    }

    /// Adjoint with respect to `[.,.]`:
    /// `T^+ = { (k, h) : [g, k] = [f, h] for all (f, g) in T }`.
    pub fn adjoint(&self) -> LinearRelation {
        let n = self.space.dim();
        let j = self.space.j();
        let jf = (j * &self.graph_top()).conj_transpose();
        let jg = (j * &self.graph_bottom()).conj_transpose();
        // One linear condition per graph basis vector: (Jg)^* k - (Jf)^* h = 0.
        let conditions = Matrix::hstack(&[&jg, &(-&jf)]);
        debug_assert_eq!(conditions.cols(), 2 * n);
        LinearRelation::from_graph(self.space.clone(), &conditions.kernel())
            .expect("kernel vectors have 2n rows")
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjoint().contains(self).unwrap_or(false)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Classifies `z` as eigenvalue, resolvent point, or neither.
    pub fn spectrum_point_check(&self, z: &Scalar) -> SpectrumPoint {
        let shifted = self.shift(z);
        if !shifted.kernel().is_zero() {
            SpectrumPoint::Eigenvalue
        } else if shifted.range().is_full() {
            SpectrumPoint::ResolventPoint
        } else {
            SpectrumPoint::Neither
        }
    }

    /// The matrix of `(T - z)^{-1}` when `z` is a resolvent point.
    pub fn resolvent_matrix(&self, z: &Scalar) -> Result<Matrix, Error> {
        self.shift(z)
            .inverse()
            .operator_matrix()
            .map_err(|_| Error::NotInResolventSet(format_scalar(z)))
    }

    /// The eigenspace `ker(T - z)` as a subspace of `K`; for an adjoint
    /// `S^+` these are the defect subspaces of `S`.
    pub fn defect_subspace(&self, z: &Scalar) -> Subspace {
        self.shift(z).kernel()
    }

    /// The relation `{ (f, zf) : f in ker(T - z) }`.
    pub fn hat_defect(&self, z: &Scalar) -> LinearRelation {
        let d = self.defect_subspace(z);
        let graph = Matrix::vstack(&[d.basis(), &d.basis().scale(z)]);
        LinearRelation::from_graph(self.space.clone(), &graph).expect("same shape")
    }

    /// Splits the relation into its four corners along the projection `p`.
    /// Requires both `(I-p) D(T)` and `p D(T)` to stay inside `D(T)`.
    pub fn relation_matrix_blocks(&self, p: &Matrix) -> Result<BlockDecomposition, Error> {
        let n = self.space.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "projection {}x{} on a space of dimension {}",
                p.rows(),
                p.cols(),
                n
            )));
        }
        if &(p * p) != p {
            return Err(Error::ValidationError("block matrix requires an idempotent".into()));
        }
        let id = Matrix::identity(n);
        let components = [&id - p, p.clone()];
        let dom = self.domain();
        for e in &components {
            let image = Subspace::span(&(e * dom.basis()));
            if !dom.contains(&image)? {
                return Err(Error::DomainNotDecomposable(
                    "domain is not invariant under the projection pair".into(),
                ));
            }
        }
        let top = self.graph_top();
        let bottom = self.graph_bottom();
        let mul = self.mul_part();
        let mut blocks: Vec<LinearRelation> = Vec::with_capacity(4);
        for e_dom in &components {
            let dom_i = dom.intersect(&Subspace::span(e_dom))?;
            // One representative value per domain basis vector; the choice
            // drops out because {0} x E_j T(0) is included below.
            let coords = top.solve(dom_i.basis())?;
            let values = &bottom * &coords;
            for e_ran in &components {
                let pairs = Matrix::vstack(&[dom_i.basis(), &(e_ran * &values)]);
                let tails = Matrix::vstack(&[
                    &Matrix::zeros(n, mul.dim()),
                    &(e_ran * mul.basis()),
                ]);
                let graph = Matrix::hstack(&[&pairs, &tails]);
                blocks.push(LinearRelation::from_graph(self.space.clone(), &graph)?);
            }
        }
        let [b11, b12, b21, b22]: [LinearRelation; 4] =
            blocks.try_into().expect("exactly four blocks");
        Ok(BlockDecomposition { blocks: [[b11, b12], [b21, b22]] })
    }
}

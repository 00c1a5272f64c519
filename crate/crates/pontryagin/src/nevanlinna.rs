//! Operator representations of matrix-valued functions and everything that
//! can be read off them directly: values `Q(z)`, the gamma field, the
//! derivative at infinity, minimality and strictness checks, and the
//! sampled lower bound on the number of negative squares of the kernel
//! `N(z, w) = (Q(z) - Q(w)^*) / (z - conj w)`.
//!
//! Two forms are supported. In the holomorphic-at-infinity form the data
//! is `(J, A, G)` with `A` a bounded self-adjoint operator and
//!
//! ```text
//! Q(z) = G^+ (A - z)^{-1} G,            Q'(inf) = -G^+ G.
//! ```
//!
//! In the reference-point form the stored map is the gamma field at a
//! fixed resolvent point `w` together with the value `Q(w)`:
//!
//! ```text
//! Q(z) = Q(w)^* + (z - conj w) G_w^+ (I + (z - w)(A - z)^{-1}) G_w.
//! ```

use num_traits::One;

use crate::error::Error;
use crate::exact::matrix::Matrix;
use crate::exact::scalar::{format_scalar, sc, sc_i, Scalar};
use crate::exact::subspace::Subspace;
use crate::relation::{LinearRelation, SpectrumPoint};
use crate::space::{j_adjoint, PontryaginSpace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RepresentationForm {
    HolomorphicAtInfinity,
    ReferencePoint { w: Scalar, q_w: Matrix },
}

impl RepresentationForm {
    pub fn name(&self) -> &'static str {
        match self {
            RepresentationForm::HolomorphicAtInfinity => "holomorphic_at_infinity",
            RepresentationForm::ReferencePoint { .. } => "reference_point",
        }
    }
}

/// A validated representation `(J, A, gamma, form)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NevRepresentation {
    space: PontryaginSpace,
    a: LinearRelation,
    gamma: Matrix,
    gamma_plus: Matrix,
    form: RepresentationForm,
    a_matrix: Option<Matrix>,
}

/// Result of the minimality check: whether the reached span is everything,
/// and the span itself.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub reached: Subspace,
    /// Sample points used (reference-point form only; the holomorphic form
    /// uses the exact Krylov span).
    pub samples: Option<Vec<Scalar>>,
}

/// Outcome of the sampled regularity search. The positive branch is sound:
/// a witness certifies regularity. The negative branch makes no claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityVerdict {
    RegularAt(Scalar),
    UndeterminedOnSamples,
}

/// The derivative at infinity together with its inverse when it exists.
#[derive(Clone, Debug)]
pub struct QPrimeInfinity {
    pub matrix: Matrix,
    pub inverse: Option<Matrix>,
}

impl QPrimeInfinity {
    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }
}

/// Sampled lower bound for the number of negative squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeSquaresBound {
    pub bound: usize,
    pub gram: Matrix,
    pub points: Vec<Scalar>,
}

impl NevRepresentation {
    /// Validates and builds a representation. `gamma` maps the parameter
    /// space `C^m` into the state space; `a` must be self-adjoint, and in
    /// the holomorphic form an everywhere-defined operator. In the
    /// reference-point form `gamma` is the gamma field at `w`, which must
    /// be a resolvent point of `a`.
    pub fn new(
        space: PontryaginSpace,
        a: LinearRelation,
        gamma: Matrix,
        form: RepresentationForm,
    ) -> Result<Self, Error> {
        if a.space() != &space {
            return Err(Error::DimensionMismatch(
                "relation lives in a different space than the symmetry".into(),
            ));
        }
        if gamma.rows() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gamma has {} rows in a space of dimension {}",
                gamma.rows(),
                space.dim()
            )));
        }
        if gamma.cols() == 0 {
            return Err(Error::ValidationError("parameter space must have positive dimension".into()));
        }
        if !a.is_self_adjoint() {
            return Err(Error::ValidationError("A is not self-adjoint".into()));
        }
        let a_matrix = match &form {
            RepresentationForm::HolomorphicAtInfinity => {
                Some(a.operator_matrix().map_err(|_| {
                    Error::ValidationError(
                        "holomorphic form requires A to be an everywhere-defined operator".into(),
                    )
                })?)
            }
            RepresentationForm::ReferencePoint { w, q_w } => {
                let m = gamma.cols();
                if q_w.rows() != m || q_w.cols() != m {
                    return Err(Error::DimensionMismatch(format!(
                        "Q(w) has shape {}x{}, expected {}x{}",
                        q_w.rows(),
                        q_w.cols(),
                        m,
                        m
                    )));
                }
                if a.spectrum_point_check(w) != SpectrumPoint::ResolventPoint {
                    return Err(Error::ValidationError(format!(
                        "reference point {} is not a resolvent point of A",
                        format_scalar(w)
                    )));
                }
                a.operator_matrix().ok()
            }
        };
        let gamma_plus = j_adjoint(&gamma, &PontryaginSpace::euclidean(gamma.cols()), &space)?;
        Ok(NevRepresentation { space, a, gamma, gamma_plus, form, a_matrix })
    }

    pub fn space(&self) -> &PontryaginSpace {
        &self.space
    }

    pub fn a(&self) -> &LinearRelation {
        &self.a
    }

    /// The matrix of `A` when `A` is an everywhere-defined operator.
    pub fn a_matrix(&self) -> Option<&Matrix> {
        self.a_matrix.as_ref()
    }

    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }

    /// `gamma^+ = gamma^* J`, the adjoint against the indefinite product.
    pub fn gamma_plus(&self) -> &Matrix {
        &self.gamma_plus
    }

    pub fn form(&self) -> &RepresentationForm {
        &self.form
    }

    pub fn parameter_dim(&self) -> usize {
        self.gamma.cols()
    }

    pub fn state_dim(&self) -> usize {
        self.space.dim()
    }

    /// The negative index of the state space.
    pub fn kappa(&self) -> usize {
        self.space.negative_index()
    }

    /// Evaluates `Q(z)` at a resolvent point of `A`.
    pub fn eval_q(&self, z: &Scalar) -> Result<Matrix, Error> {
        match &self.form {
            RepresentationForm::HolomorphicAtInfinity => {
                let rz = self.a.resolvent_matrix(z)?;
                Ok(&(&self.gamma_plus * &rz) * &self.gamma)
            }
            RepresentationForm::ReferencePoint { w, q_w } => {
                let gz = self.gamma_field(z)?;
                let shift = (&self.gamma_plus * &gz).scale(&(z - &w.conj()));
                Ok(&q_w.conj_transpose() + &shift)
            }
        }
    }

    /// The gamma field `G_z = (A - z)^{-1} G` in the holomorphic form, and
    /// `G_z = (I + (z - w)(A - z)^{-1}) G_w` in the reference-point form.
    pub fn gamma_field(&self, z: &Scalar) -> Result<Matrix, Error> {
        let rz = self.a.resolvent_matrix(z)?;
        match &self.form {
            RepresentationForm::HolomorphicAtInfinity => Ok(&rz * &self.gamma),
            RepresentationForm::ReferencePoint { w, .. } => {
                let id = Matrix::identity(self.space.dim());
                let factor = &id + &rz.scale(&(z - w));
                Ok(&factor * &self.gamma)
            }
        }
    }

    /// `Q'(inf) = lim z Q(z) = -gamma^+ gamma`, holomorphic form only.
    pub fn q_prime_infinity(&self) -> Result<QPrimeInfinity, Error> {
        if let RepresentationForm::ReferencePoint { .. } = self.form {
            return Err(Error::WrongForm {
                expected: "holomorphic_at_infinity",
                found: "reference_point",
            });
        }
        let matrix = -&(&self.gamma_plus * &self.gamma);
        let inverse = matrix.inverse().ok();
        Ok(QPrimeInfinity { matrix, inverse })
    }

    /// `gamma^+ gamma` and its inverse; errors with
    /// `DerivativeNotInvertible` when singular.
    pub fn gram_and_inverse(&self) -> Result<(Matrix, Matrix), Error> {
        let gram = &self.gamma_plus * &self.gamma;
        let inverse = gram.inverse().map_err(|_| Error::DerivativeNotInvertible)?;
        Ok((gram, inverse))
    }

    /// Checks minimality: the holomorphic form spans the Krylov space
    /// `[G | A G | ... | A^{n-1} G]`, which equals the closed linear span
    /// of the resolvent orbits; the reference-point form spans the gamma
    /// field over a default sample set of at least `n + 1` points.
    pub fn minimality_check(&self) -> Result<MinimalityReport, Error> {
        match &self.a_matrix {
            Some(a) => {
                let n = self.space.dim();
                let mut power = self.gamma.clone();
                let mut columns = vec![power.clone()];
                for _ in 1..n {
                    power = a * &power;
                    columns.push(power.clone());
                }
                let refs: Vec<&Matrix> = columns.iter().collect();
                let reached = Subspace::span(&Matrix::hstack(&refs));
                Ok(MinimalityReport { minimal: reached.is_full(), reached, samples: None })
            }
            None => {
                let samples = self.default_samples()?;
                let fields: Vec<Matrix> = samples
                    .points()
                    .iter()
                    .map(|z| self.gamma_field(z))
                    .collect::<Result<_, _>>()?;
                let refs: Vec<&Matrix> = fields.iter().collect();
                let reached = Subspace::span(&Matrix::hstack(&refs));
                Ok(MinimalityReport {
                    minimal: reached.is_full(),
                    reached,
                    samples: Some(samples.points().to_vec()),
                })
            }
        }
    }

    /// Strictness: `ker gamma = {0}`.
    pub fn strictness_check(&self) -> bool {
        self.gamma.kernel().cols() == 0
    }

    /// Searches the samples for a point where `Q` is defined and
    /// invertible. Finding one certifies regularity; not finding one
    /// proves nothing.
    pub fn regularity_witness(&self, samples: &SampleSet) -> RegularityVerdict {
        for z in samples.points() {
            if let Ok(q) = self.eval_q(z) {
                if q.is_invertible() {
                    return RegularityVerdict::RegularAt(z.clone());
                }
            }
        }
        RegularityVerdict::UndeterminedOnSamples
    }

    /// Kernel value `N(z, w) = G_w^+ G_z`, which off conjugate pairs equals
    /// the difference quotient `(Q(z) - Q(w)^*) / (z - conj w)` and on the
    /// diagonal is its limit value.
    pub fn kernel_value(&self, z: &Scalar, w: &Scalar) -> Result<Matrix, Error> {
        let gz = self.gamma_field(z)?;
        let gw = self.gamma_field(w)?;
        let gw_plus = j_adjoint(&gw, &PontryaginSpace::euclidean(gw.cols()), &self.space)?;
        Ok(&gw_plus * &gz)
    }

    /// Assembles the sampled kernel Gram matrix and returns the count of
    /// its negative eigenvalues, a lower bound for the negative index of
    /// the function. Errors when two distinct samples are conjugates of
    /// each other, since the difference quotient degenerates there.
    pub fn negative_squares_lower_bound(
        &self,
        samples: &SampleSet,
    ) -> Result<NegativeSquaresBound, Error> {
        let points = samples.points();
        for (i, z) in points.iter().enumerate() {
            for w in points.iter().skip(i + 1) {
                if *z == w.conj() {
                    return Err(Error::DegenerateSamplePair(
                        format_scalar(z),
                        format_scalar(w),
                    ));
                }
            }
        }
        let m = self.parameter_dim();
        let s = points.len();
        let mut gram = Matrix::zeros(s * m, s * m);
        for (bi, z) in points.iter().enumerate() {
            for (bj, w) in points.iter().enumerate() {
                let block = self.kernel_value(z, w)?;
                for i in 0..m {
                    for j in 0..m {
                        gram.set(bi * m + i, bj * m + j, block[(i, j)].clone());
                    }
                }
            }
        }
        let inertia = gram.hermitian_inertia()?;
        Ok(NegativeSquaresBound { bound: inertia.negative, gram, points: points.to_vec() })
    }

    /// The default sample set for this representation: the standard list
    /// filtered to resolvent points of `A`, extended until it has at least
    /// `n + 1` entries.
    pub fn default_samples(&self) -> Result<SampleSet, Error> {
        SampleSet::default_for(&self.a, self.space.dim() + 1)
    }
}

/// Certificates for the function-level identities over a sample set:
/// conjugate symmetry of `Q`, consistency of the gamma field, and the
/// difference-quotient identity for the kernel.
pub fn certify_representation(
    rep: &NevRepresentation,
    samples: &SampleSet,
) -> Vec<crate::certificate::Certificate> {
    use crate::certificate::Certificate;
    let points = samples.points();

    let mut symmetry = true;
    let mut symmetry_detail = String::new();
    for z in points {
        let (q, q_conj) = match (rep.eval_q(z), rep.eval_q(&z.conj())) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        if q_conj != q.conj_transpose() {
            symmetry = false;
            symmetry_detail = format!("fails at z = {}", format_scalar(z));
            break;
        }
    }

    let field_ok = match rep.a_matrix() {
        Some(a) => {
            let id = Matrix::identity(rep.state_dim());
            points.iter().all(|z| match rep.gamma_field(z) {
                Ok(gz) => match rep.form() {
                    RepresentationForm::HolomorphicAtInfinity => {
                        &(a - &id.scale(z)) * &gz == *rep.gamma()
                    }
                    // Cross-check the chain identity through another sample.
                    RepresentationForm::ReferencePoint { .. } => points.iter().all(|w| {
                        match (rep.gamma_field(w), rep.a().resolvent_matrix(z)) {
                            (Ok(gw), Ok(rz)) => {
                                let chain = &(&id + &rz.scale(&(z - w))) * &gw;
                                chain == gz
                            }
                            _ => true,
                        }
                    }),
                },
                Err(_) => true,
            })
        }
        None => true,
    };

    let mut quotient = true;
    let mut quotient_detail = String::new();
    'outer: for z in points {
        for w in points {
            if *z == w.conj() {
                continue;
            }
            let n_zw = match rep.kernel_value(z, w) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let (qz, qw) = match (rep.eval_q(z), rep.eval_q(w)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            let diff = (&qz - &qw.conj_transpose()).scale(&(Scalar::one() / (z - &w.conj())));
            if n_zw != diff {
                quotient = false;
                quotient_detail =
                    format!("fails at z = {}, w = {}", format_scalar(z), format_scalar(w));
                break 'outer;
            }
        }
    }

    vec![
        Certificate::check("q.conjugate_symmetry", symmetry, symmetry_detail),
        Certificate::check(
            "gamma_field.reproduces_gamma",
            field_ok,
            "the gamma field does not reproduce the representing map",
        ),
        Certificate::check("kernel.difference_quotient", quotient, quotient_detail),
    ]
}

/// An ordered set of distinct resolvent points used for sampled checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    points: Vec<Scalar>,
}

impl SampleSet {
    /// Validates that the points are distinct resolvent points of `rel`.
    pub fn new(points: Vec<Scalar>, rel: &LinearRelation) -> Result<Self, Error> {
        for (i, z) in points.iter().enumerate() {
            if points[..i].contains(z) {
                return Err(Error::ValidationError(format!(
                    "duplicate sample point {}",
                    format_scalar(z)
                )));
            }
            if rel.spectrum_point_check(z) != SpectrumPoint::ResolventPoint {
                return Err(Error::NotInResolventSet(format_scalar(z)));
            }
        }
        Ok(SampleSet { points })
    }

    /// The standard candidates `i, 1+i, 2i, 1, 2, -2, 3, 1-i, 3i` filtered
    /// to resolvent points of `rel`, extended with successive integers
    /// `4, 5, ...` until at least `min_len` points exist.
    pub fn default_for(rel: &LinearRelation, min_len: usize) -> Result<Self, Error> {
        let standard = [
            sc_i(0, 1),
            sc_i(1, 1),
            sc_i(0, 2),
            sc(1),
            sc(2),
            sc(-2),
            sc(3),
            sc_i(1, -1),
            sc_i(0, 3),
        ];
        let mut points: Vec<Scalar> = standard
            .into_iter()
            .filter(|z| rel.spectrum_point_check(z) == SpectrumPoint::ResolventPoint)
            .collect();
        // A relation in an n-dimensional space has at most n eigenvalues,
        // so this window always contains enough resolvent points.
        let mut k: i64 = 4;
        let limit = k + (min_len + rel.space().dim() + 1) as i64;
        while points.len() < min_len && k < limit {
            let z = sc(k);
            if !points.contains(&z)
                && rel.spectrum_point_check(&z) == SpectrumPoint::ResolventPoint
            {
                points.push(z);
            }
            k += 1;
        }
        if points.len() < min_len {
            return Err(Error::ValidationError(format!(
                "could not collect {min_len} resolvent points"
            )));
        }
        Ok(SampleSet { points })
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Drops every point whose conjugate appears earlier in the list, so
    /// the result is safe for the kernel Gram difference quotients.
    pub fn without_conjugate_pairs(&self) -> SampleSet {
        let mut points: Vec<Scalar> = Vec::new();
        for z in &self.points {
            if !points.iter().any(|kept| *kept == z.conj() && kept != z) {
                points.push(z.clone());
            }
        }
        SampleSet { points }
    }

    /// Restricts to the first `k` points.
    pub fn take(&self, k: usize) -> SampleSet {
        SampleSet { points: self.points.iter().take(k).cloned().collect() }
    }
}

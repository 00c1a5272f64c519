//! The structural pipeline attached to a representation with invertible
//! derivative at infinity: the projection onto the range of `gamma`, the
//! inverse-representing relation, the symmetric restriction and its
//! adjoint, the resolvent difference formula, defect subspaces, the
//! canonical boundary triple, and the associated Weyl function.
//!
//! Every construction returns plain data; the `certify_*` functions
//! re-verify the structural identities independently and report each one
//! as a named [`Certificate`].

use crate::certificate::Certificate;
use crate::error::Error;
use crate::exact::matrix::Matrix;
use crate::exact::scalar::{format_scalar, sc, Scalar};
use crate::exact::subspace::Subspace;
use crate::nevanlinna::{NevRepresentation, RepresentationForm, SampleSet};
use crate::relation::{LinearRelation, SpectrumPoint};
use crate::space::PontryaginSpace;

/// The projection `P = gamma (gamma^+ gamma)^{-1} gamma^+` onto the range
/// of `gamma`, together with its complement and the two induced subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionData {
    pub p: Matrix,
    pub i_minus_p: Matrix,
    /// `P K`, the range of `gamma`.
    pub range: Subspace,
    /// `K_1 = (I - P) K`, the kernel of `gamma^+`.
    pub complement: Subspace,
    /// `gamma^+ gamma`, the negative of the derivative at infinity.
    pub gram: Matrix,
    pub gram_inverse: Matrix,
}

/// Builds the projection data. Requires the holomorphic-at-infinity form
/// and an invertible `gamma^+ gamma`.
pub fn projection_p(rep: &NevRepresentation) -> Result<ProjectionData, Error> {
    if let RepresentationForm::ReferencePoint { .. } = rep.form() {
        return Err(Error::WrongForm {
            expected: "holomorphic_at_infinity",
            found: "reference_point",
        });
    }
    let (gram, gram_inverse) = rep.gram_and_inverse()?;
    let p = &(rep.gamma() * &gram_inverse) * rep.gamma_plus();
    let n = rep.state_dim();
    let i_minus_p = &Matrix::identity(n) - &p;
    let range = Subspace::span(rep.gamma());
    let complement = Subspace::span(&i_minus_p);
    Ok(ProjectionData { p, i_minus_p, range, complement, gram, gram_inverse })
}

/// The self-adjoint relation that represents the negative inverse of the
/// function: `A_hat = A|_{K_1}` extended by the purely multivalued part
/// `R_hat = {0} x PK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseRepresentation {
    pub a_hat: LinearRelation,
    pub r_hat: LinearRelation,
}

pub fn inverse_representation(
    rep: &NevRepresentation,
    pd: &ProjectionData,
) -> Result<InverseRepresentation, Error> {
    let a = rep
        .a_matrix()
        .ok_or(Error::WrongForm { expected: "holomorphic_at_infinity", found: "reference_point" })?;
    let space = rep.space().clone();
    let restricted = LinearRelation::from_operator_on(space.clone(), a, &pd.complement)?;
    let n = rep.state_dim();
    let range_basis = pd.range.basis();
    let r_graph = Matrix::vstack(&[&Matrix::zeros(n, range_basis.cols()), range_basis]);
    let r_hat = LinearRelation::from_graph(space, &r_graph)?;
    let a_hat = restricted.direct_sum(&r_hat)?;
    Ok(InverseRepresentation { a_hat, r_hat })
}

/// The gamma field attached to the inverse representation,
/// `gamma_hat(z) = -gamma_z Q(z)^{-1}`.
pub fn gamma_hat(rep: &NevRepresentation, z: &Scalar) -> Result<Matrix, Error> {
    let gz = rep.gamma_field(z)?;
    let q = rep.eval_q(z)?;
    let q_inv = q.inverse().map_err(|_| Error::SingularQ(format_scalar(z)))?;
    Ok(-&(&gz * &q_inv))
}

/// The symmetric restriction `S = A|_{K_1}` and the compression
/// `A_tilde = (I - P) A (I - P)` acting in `K_1`.
#[derive(Clone, Debug)]
pub struct SymmetricRestriction {
    pub s: LinearRelation,
    /// `S` computed the second way, as the intersection `A \cap A_hat`.
    pub via_intersection: LinearRelation,
    /// The matrix `A (I - P)`, which agrees with `S` on `K_1`.
    pub s_matrix: Matrix,
    /// The compression `A_tilde` as a relation with domain `K_1`.
    pub a_tilde: LinearRelation,
    /// The matrix `(I - P) A (I - P)`.
    pub a_tilde_matrix: Matrix,
}

pub fn symmetric_restriction(
    rep: &NevRepresentation,
    pd: &ProjectionData,
    inv: &InverseRepresentation,
) -> Result<SymmetricRestriction, Error> {
    let a = rep
        .a_matrix()
        .ok_or(Error::WrongForm { expected: "holomorphic_at_infinity", found: "reference_point" })?;
    let space = rep.space().clone();
    let s = LinearRelation::from_operator_on(space.clone(), a, &pd.complement)?;
    let via_intersection = rep.a().intersect(&inv.a_hat)?;
    let s_matrix = a * &pd.i_minus_p;
    let a_tilde_matrix = &pd.i_minus_p * &(a * &pd.i_minus_p);
    let b1 = pd.complement.basis();
    let tilde_graph = Matrix::vstack(&[b1, &(&a_tilde_matrix * b1)]);
    let a_tilde = LinearRelation::from_graph(space, &tilde_graph)?;
    Ok(SymmetricRestriction { s, via_intersection, s_matrix, a_tilde, a_tilde_matrix })
}

/// The adjoint `S^+` computed three independent ways.
#[derive(Clone, Debug)]
pub struct AdjointOfS {
    pub s_plus: LinearRelation,
    pub via_adjoint: LinearRelation,
    /// `A +^ A_hat`, the componentwise sum of the two extensions.
    pub via_componentwise: LinearRelation,
    /// `A (+) R_hat`, the direct sum with the purely multivalued part.
    pub via_direct: LinearRelation,
}

pub fn adjoint_of_s(
    rep: &NevRepresentation,
    inv: &InverseRepresentation,
    sym: &SymmetricRestriction,
) -> Result<AdjointOfS, Error> {
    let via_adjoint = sym.s.adjoint();
    let via_componentwise = rep.a().componentwise_sum(&inv.a_hat)?;
    let via_direct = rep.a().direct_sum(&inv.r_hat)?;
    Ok(AdjointOfS { s_plus: via_adjoint.clone(), via_adjoint, via_componentwise, via_direct })
}

/// One evaluation of the resolvent difference formula
/// `(A_hat - z)^{-1} = (A - z)^{-1} - gamma_z Q(z)^{-1} gamma^+ (A - z)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KreinCheck {
    pub point: Scalar,
    pub holds: bool,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

pub fn krein_resolvent_check(
    rep: &NevRepresentation,
    inv: &InverseRepresentation,
    z: &Scalar,
) -> Result<KreinCheck, Error> {
    let lhs = inv.a_hat.resolvent_matrix(z)?;
    let rz = rep.a().resolvent_matrix(z)?;
    let hat = gamma_hat(rep, z)?;
    let rhs = &rz + &(&(&hat * rep.gamma_plus()) * &rz);
    Ok(KreinCheck { point: z.clone(), holds: lhs == rhs, lhs, rhs })
}

/// Defect data at one sample point.
#[derive(Clone, Debug)]
pub struct DefectCheck {
    pub point: Scalar,
    /// `ker(S^+ - z)`.
    pub defect: Subspace,
    /// Whether the defect subspace equals the span of the gamma field.
    pub spans_gamma_field: bool,
    /// The defect subspace rebuilt from the compression: each `x` in `PK`
    /// extends to `f = -(A_tilde - z)^{-1} (I - P) A x + x`. Absent when
    /// `z` is an eigenvalue of the compression.
    pub parametrized: Option<Subspace>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    NotSimple,
    UndeterminedOnSamples,
}

/// Defect subspaces over a sample set and whether they span the space.
#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub per_point: Vec<DefectCheck>,
    pub span: Subspace,
    pub verdict: SimplicityVerdict,
}

/// Computes the defect subspace of `S^+` at each sample, cross-checks it
/// against the gamma field and the compression parametrization, and sums
/// the defects. With at least `dim + 1` samples whose defects equal the
/// gamma field span, the sampled span equals the span over the whole
/// resolvent set, so the verdict is exact; otherwise only a full span is
/// conclusive.
pub fn defect_and_simplicity(
    rep: &NevRepresentation,
    pd: &ProjectionData,
    sym: &SymmetricRestriction,
    s_plus: &LinearRelation,
    samples: &SampleSet,
) -> Result<SimplicityReport, Error> {
    let a = rep
        .a_matrix()
        .ok_or(Error::WrongForm { expected: "holomorphic_at_infinity", found: "reference_point" })?;
    let n = rep.state_dim();
    let b1 = pd.complement.basis();
    let x_p = pd.range.basis();
    let rhs_all = &pd.i_minus_p * &(a * x_p);
    let mut per_point = Vec::new();
    let mut span = Subspace::zero(n);
    for z in samples.points() {
        let defect = s_plus.defect_subspace(z);
        let spans_gamma_field = defect == Subspace::span(&rep.gamma_field(z)?);
        let pencil = &(&sym.a_tilde_matrix - &Matrix::identity(n).scale(z)) * b1;
        let (parametrized, matches) = match pencil.solve(&rhs_all) {
            Ok(c) => {
                let f = x_p - &(b1 * &c);
                let rebuilt = Subspace::span(&f);
                let agree = rebuilt == defect;
                (Some(rebuilt), Some(agree))
            }
            Err(_) => (None, None),
        };
        span = span.sum(&defect)?;
        per_point.push(DefectCheck { point: z.clone(), defect, spans_gamma_field, parametrized, matches });
    }
    let exact = samples.len() > n && per_point.iter().all(|d| d.spans_gamma_field);
    let verdict = if span.is_full() {
        SimplicityVerdict::Simple
    } else if exact {
        SimplicityVerdict::NotSimple
    } else {
        SimplicityVerdict::UndeterminedOnSamples
    };
    Ok(SimplicityReport { per_point, span, verdict })
}

/// Outcome of the extension inclusion law at one point: for `z` in the
/// resolvent set of `b`, every relation `a` satisfies
/// `a \subseteq b (+) E_z`, where `E_z` is the graph `{(f, zf)}` over the
/// eigenspace of the componentwise sum `a +^ b` at `z`, with equality
/// exactly when `a = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionCheck {
    pub point: Scalar,
    pub sum_is_direct: bool,
    pub inclusion_holds: bool,
    pub equality_holds: bool,
    pub relations_equal: bool,
}

pub fn extension_inclusion_check(
    a: &LinearRelation,
    b: &LinearRelation,
    z: &Scalar,
) -> Result<InclusionCheck, Error> {
    if b.spectrum_point_check(z) != SpectrumPoint::ResolventPoint {
        return Err(Error::NotInResolventSet(format_scalar(z)));
    }
    let t = a.componentwise_sum(b)?;
    let eigen = t.shift(z).kernel();
    let basis = eigen.basis();
    let graph = Matrix::vstack(&[basis, &basis.scale(z)]);
    let e_z = LinearRelation::from_graph(b.space().clone(), &graph)?;
    let extension = b.componentwise_sum(&e_z)?;
    let sum_is_direct = extension.graph_dim() == b.graph_dim() + e_z.graph_dim();
    let inclusion_holds = extension.contains(a)?;
    let equality_holds = &extension == a;
    let relations_equal = a == b;
    Ok(InclusionCheck { point: z.clone(), sum_is_direct, inclusion_holds, equality_holds, relations_equal })
}

/// The canonical boundary triple for `S^+`: with `G = gamma^+ gamma`,
///
/// ```text
/// map0 {f, f'} = G^{-1} gamma^+ (f' - A f),      ker map0 = A,
/// map1 {f, f'} = -gamma^+ f,                     ker map1 = A_hat,
/// ```
///
/// and the abstract integration-by-parts identity
/// `[f', g] - [f, g'] = (map1 f^, map0 g^) - (map0 f^, map1 g^)` holds on
/// the graph. Both axioms are verified on construction.
#[derive(Clone, Debug)]
pub struct BoundaryTriple {
    space: PontryaginSpace,
    graph: Subspace,
    gamma0_on_basis: Matrix,
    gamma1_on_basis: Matrix,
    a_matrix: Matrix,
    gamma_plus: Matrix,
    gram_inverse: Matrix,
    parameter_dim: usize,
}

impl BoundaryTriple {
    pub fn space(&self) -> &PontryaginSpace {
        &self.space
    }

    /// The graph of `S^+` as a subspace of `K x K`.
    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn parameter_dim(&self) -> usize {
        self.parameter_dim
    }

    /// Values of the two boundary maps on the canonical graph basis.
    pub fn maps_on_basis(&self) -> (&Matrix, &Matrix) {
        (&self.gamma0_on_basis, &self.gamma1_on_basis)
    }

    /// Applies both boundary maps to columns `(f, f')` after checking that
    /// they belong to the relation.
    pub fn boundary_values(&self, f: &Matrix, f_prime: &Matrix) -> Result<(Matrix, Matrix), Error> {
        let stacked = Matrix::vstack(&[f, f_prime]);
        if !self.graph.contains(&Subspace::span(&stacked))? {
            return Err(Error::ValidationError(
                "the given columns do not belong to the relation".into(),
            ));
        }
        Ok(self.raw_values(f, f_prime))
    }

    fn raw_values(&self, f: &Matrix, f_prime: &Matrix) -> (Matrix, Matrix) {
        let g0 = &self.gram_inverse * &(&self.gamma_plus * &(f_prime - &(&self.a_matrix * f)));
        let g1 = -&(&self.gamma_plus * f);
        (g0, g1)
    }

    /// The integration-by-parts identity as one matrix equation over the
    /// stored basis.
    pub fn green_identity_holds(&self) -> bool {
        let n = self.space.dim();
        let basis = self.graph.basis();
        let tops = basis.row_block(0, n);
        let bottoms = basis.row_block(n, 2 * n);
        let j = self.space.j();
        let lhs = &(&tops.conj_transpose() * &(j * &bottoms))
            - &(&bottoms.conj_transpose() * &(j * &tops));
        let g0 = &self.gamma0_on_basis;
        let g1 = &self.gamma1_on_basis;
        let rhs = &(&g0.conj_transpose() * g1) - &(&g1.conj_transpose() * g0);
        lhs == rhs
    }

    /// The subspace of the graph where the first boundary map vanishes,
    /// returned as a relation.
    pub fn kernel_of_map0(&self) -> Result<LinearRelation, Error> {
        self.kernel_relation(&self.gamma0_on_basis)
    }

    /// The subspace of the graph where the second boundary map vanishes.
    pub fn kernel_of_map1(&self) -> Result<LinearRelation, Error> {
        self.kernel_relation(&self.gamma1_on_basis)
    }

    fn kernel_relation(&self, map_on_basis: &Matrix) -> Result<LinearRelation, Error> {
        let coeffs = map_on_basis.kernel();
        let graph = self.graph.basis() * &coeffs;
        LinearRelation::from_graph(self.space.clone(), &graph)
    }

    /// Whether the stacked boundary maps cover the whole parameter double.
    pub fn jointly_surjective(&self) -> bool {
        let stacked = Matrix::vstack(&[&self.gamma0_on_basis, &self.gamma1_on_basis]);
        stacked.rank() == 2 * self.parameter_dim
    }
}

pub fn canonical_boundary_triple(
    rep: &NevRepresentation,
    pd: &ProjectionData,
    s_plus: &LinearRelation,
) -> Result<BoundaryTriple, Error> {
    let a_matrix = rep
        .a_matrix()
        .ok_or(Error::WrongForm { expected: "holomorphic_at_infinity", found: "reference_point" })?
        .clone();
    let n = rep.state_dim();
    let basis = s_plus.graph().basis().clone();
    let tops = basis.row_block(0, n);
    let bottoms = basis.row_block(n, 2 * n);
    let gamma0_on_basis =
        &pd.gram_inverse * &(rep.gamma_plus() * &(&bottoms - &(&a_matrix * &tops)));
    let gamma1_on_basis = -&(rep.gamma_plus() * &tops);
    let triple = BoundaryTriple {
        space: rep.space().clone(),
        graph: s_plus.graph().clone(),
        gamma0_on_basis,
        gamma1_on_basis,
        a_matrix,
        gamma_plus: rep.gamma_plus().clone(),
        gram_inverse: pd.gram_inverse.clone(),
        parameter_dim: rep.parameter_dim(),
    };
    if !triple.jointly_surjective() {
        return Err(Error::HypothesesNotMet(
            "the boundary maps are not jointly surjective onto the parameter double".into(),
        ));
    }
    if !triple.green_identity_holds() {
        return Err(Error::HypothesesNotMet(
            "the integration-by-parts identity fails on the graph".into(),
        ));
    }
    Ok(triple)
}

/// The value of the Weyl function of a boundary triple at `z`, obtained
/// from the defect columns `f_z = -gamma_z h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylValue {
    pub m: Matrix,
    pub gamma_field: Matrix,
}

pub fn weyl_function_of_triple(
    rep: &NevRepresentation,
    triple: &BoundaryTriple,
    z: &Scalar,
) -> Result<WeylValue, Error> {
    let gz = rep.gamma_field(z)?;
    let f = -&gz;
    let f_prime = f.scale(z);
    let (g0, g1) = triple.boundary_values(&f, &f_prime)?;
    let g0_inv = g0.inverse().map_err(|_| Error::SingularQ(format_scalar(z)))?;
    Ok(WeylValue { m: &g1 * &g0_inv, gamma_field: gz })
}

/// Classification of a candidate extension sandwiched between `S` and
/// `S^+`: it is regular when its graph has dimension `n` and some point
/// has a bounded everywhere-defined resolvent. Because the determinant of
/// the shifted graph pencil is a polynomial of degree at most `n`, probing
/// the integers `0..=n` decides this exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub name: String,
    pub contains_s: bool,
    pub contained_in_adjoint: bool,
    pub regular: bool,
    pub witness: Option<Scalar>,
}

pub fn regular_extension_check(
    candidates: &[(&str, &LinearRelation)],
    s: &LinearRelation,
    s_plus: &LinearRelation,
) -> Vec<ExtensionCheck> {
    let mut out = Vec::new();
    for (name, t) in candidates {
        let n = t.space().dim();
        let contains_s = t.contains(s).unwrap_or(false);
        let contained_in_adjoint = s_plus.contains(t).unwrap_or(false);
        let mut witness = None;
        if t.graph_dim() == n {
            for k in 0..=(n as i64) {
                let z = sc(k);
                if t.spectrum_point_check(&z) == SpectrumPoint::ResolventPoint {
                    witness = Some(z);
                    break;
                }
            }
        }
        out.push(ExtensionCheck {
            name: (*name).to_string(),
            contains_s,
            contained_in_adjoint,
            regular: witness.is_some(),
            witness,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Certificates: each structural identity re-verified and reported by name.
// ---------------------------------------------------------------------------

pub fn certify_projection(rep: &NevRepresentation, pd: &ProjectionData) -> Vec<Certificate> {
    let space = rep.space();
    let idempotent = &pd.p * &pd.p == pd.p;
    let self_adjoint = space.adjoint_sq(&pd.p).map(|q| q == pd.p).unwrap_or(false);
    let range_ok = pd.range == Subspace::span(&pd.p);
    let complement_ok = pd.complement == Subspace::span(&rep.gamma_plus().kernel());
    let direct = pd
        .complement
        .is_direct_with(&pd.range)
        .map(|d| d && pd.complement.dim() + pd.range.dim() == space.dim())
        .unwrap_or(false);
    let nondegenerate = space.is_nondegenerate(&pd.range).unwrap_or(false);
    vec![
        Certificate::check("projection.idempotent", idempotent, "P^2 differs from P"),
        Certificate::check("projection.self_adjoint", self_adjoint, "P is not symmetric for the indefinite product"),
        Certificate::check("projection.range_is_gamma_image", range_ok, "ran P differs from ran gamma"),
        Certificate::check(
            "projection.complement_is_kernel_of_gamma_adjoint",
            complement_ok,
            "(I - P)K differs from ker gamma^+",
        ),
        Certificate::check("projection.decomposition_direct", direct, "K_1 and PK do not decompose the space"),
        Certificate::check("projection.range_nondegenerate", nondegenerate, "PK is degenerate"),
    ]
}

pub fn certify_symmetric_restriction(
    pd: &ProjectionData,
    sym: &SymmetricRestriction,
) -> Vec<Certificate> {
    vec![
        Certificate::check("s.operator", sym.s.is_operator(), "S has a nontrivial multivalued part"),
        Certificate::check("s.symmetric", sym.s.is_symmetric(), "S is not contained in its adjoint"),
        Certificate::check(
            "s.domain_is_complement",
            sym.s.domain() == pd.complement,
            "dom S differs from K_1",
        ),
        Certificate::check(
            "s.two_routes_agree",
            sym.s == sym.via_intersection,
            "A restricted to K_1 differs from the intersection with the inverse representation",
        ),
        Certificate::check(
            "a_tilde.compresses_to_complement",
            sym.a_tilde.is_operator()
                && sym.a_tilde.domain() == pd.complement
                && pd.complement.contains(&sym.a_tilde.range()).unwrap_or(false),
            "the compression does not act in K_1",
        ),
    ]
}

pub fn certify_inverse_representation(
    rep: &NevRepresentation,
    pd: &ProjectionData,
    inv: &InverseRepresentation,
    sym: &SymmetricRestriction,
) -> Vec<Certificate> {
    let structure = sym
        .s
        .direct_sum(&inv.r_hat)
        .map(|t| t == inv.a_hat)
        .unwrap_or(false);
    let meets = rep
        .a()
        .intersect(&inv.a_hat)
        .map(|t| t == sym.s)
        .unwrap_or(false);
    vec![
        Certificate::check("a_hat.self_adjoint", inv.a_hat.is_self_adjoint(), "A_hat differs from its adjoint"),
        Certificate::check(
            "a_hat.multivalued_part_is_range",
            inv.a_hat.mul_part() == pd.range,
            "mul A_hat differs from PK",
        ),
        Certificate::check(
            "a_hat.structure_direct_sum",
            structure,
            "S (+) R_hat differs from A_hat",
        ),
        Certificate::check("a_hat.meets_a_in_s", meets, "A intersect A_hat differs from S"),
    ]
}

pub fn certify_adjoint_routes(sym: &SymmetricRestriction, adj: &AdjointOfS) -> Vec<Certificate> {
    let n = sym.s.space().dim();
    let routes = adj.via_adjoint == adj.via_componentwise && adj.via_adjoint == adj.via_direct;
    vec![
        Certificate::check(
            "s_plus.routes_agree",
            routes,
            "the adjoint, the componentwise sum, and the direct sum disagree",
        ),
        Certificate::check(
            "s_plus.dimension_complement",
            sym.s.graph_dim() + adj.s_plus.graph_dim() == 2 * n,
            "graph dimensions of S and S^+ do not add to 2n",
        ),
        Certificate::check(
            "s_plus.adjoint_involution",
            adj.s_plus.adjoint() == sym.s,
            "taking the adjoint twice does not return S",
        ),
    ]
}

/// One certificate covering the resolvent difference formula over the
/// samples; points outside both resolvent sets or with singular `Q` are
/// skipped.
pub fn certify_krein(
    rep: &NevRepresentation,
    inv: &InverseRepresentation,
    samples: &SampleSet,
) -> Certificate {
    let mut checked = 0usize;
    for z in samples.points() {
        match krein_resolvent_check(rep, inv, z) {
            Ok(check) if check.holds => checked += 1,
            Ok(_) => {
                return Certificate::fail(
                    "krein.resolvent_identity",
                    format!("fails at z = {}", format_scalar(z)),
                )
            }
            Err(_) => continue,
        }
    }
    if checked == 0 {
        Certificate::trivial("krein.resolvent_identity", "no sample admitted both resolvents")
    } else {
        Certificate::pass("krein.resolvent_identity")
    }
}

pub fn certify_boundary_triple(
    triple: &BoundaryTriple,
    a: &LinearRelation,
    a_hat: &LinearRelation,
) -> Vec<Certificate> {
    let ker0 = triple.kernel_of_map0().map(|t| &t == a).unwrap_or(false);
    let ker1 = triple.kernel_of_map1().map(|t| &t == a_hat).unwrap_or(false);
    vec![
        Certificate::check(
            "triple.green_identity",
            triple.green_identity_holds(),
            "integration by parts fails on the graph",
        ),
        Certificate::check("triple.kernel_of_first_map_is_a", ker0, "ker map0 differs from A"),
        Certificate::check(
            "triple.kernel_of_second_map_is_a_hat",
            ker1,
            "ker map1 differs from A_hat",
        ),
        Certificate::check(
            "triple.jointly_surjective",
            triple.jointly_surjective(),
            "the stacked boundary maps do not reach the parameter double",
        ),
    ]
}

/// One certificate: the Weyl function of the canonical triple returns the
/// represented function at every sample.
pub fn certify_weyl_matches_q(
    rep: &NevRepresentation,
    triple: &BoundaryTriple,
    samples: &SampleSet,
) -> Certificate {
    let mut checked = 0usize;
    for z in samples.points() {
        let value = match weyl_function_of_triple(rep, triple, z) {
            Ok(v) => v,
            Err(_) => continue,
        };
        match rep.eval_q(z) {
            Ok(q) if q == value.m => checked += 1,
            Ok(_) => {
                return Certificate::fail(
                    "weyl.matches_q",
                    format!("differs from Q at z = {}", format_scalar(z)),
                )
            }
            Err(_) => continue,
        }
    }
    if checked == 0 {
        Certificate::trivial("weyl.matches_q", "no sample admitted an evaluation")
    } else {
        Certificate::pass("weyl.matches_q")
    }
}

pub fn certify_defect(report: &SimplicityReport) -> Vec<Certificate> {
    let spans = report.per_point.iter().all(|d| d.spans_gamma_field);
    let verified: Vec<&DefectCheck> =
        report.per_point.iter().filter(|d| d.matches.is_some()).collect();
    let parametrization = if verified.is_empty() {
        Certificate::trivial(
            "defect.parametrization",
            "every sample met the spectrum of the compression",
        )
    } else {
        Certificate::check(
            "defect.parametrization",
            verified.iter().all(|d| d.matches == Some(true)),
            "the compression parametrization misses the defect subspace",
        )
    };
    vec![
        Certificate::check(
            "defect.spans_gamma_field",
            spans,
            "ker(S^+ - z) differs from the span of the gamma field",
        ),
        parametrization,
    ]
}

/// Certificates for the inclusion law between `a` and `b` over the given
/// points, plus the equality branch applied to `b` against itself.
pub fn certify_inclusion(
    a: &LinearRelation,
    b: &LinearRelation,
    points: &[Scalar],
) -> Vec<Certificate> {
    let mut law = true;
    let mut consistent = true;
    let mut equality = true;
    let mut checked = 0usize;
    let mut detail = String::new();
    for z in points {
        let check = match extension_inclusion_check(a, b, z) {
            Ok(c) => c,
            Err(_) => continue,
        };
        checked += 1;
        if !(check.sum_is_direct && check.inclusion_holds) {
            law = false;
            detail = format!("fails at z = {}", format_scalar(z));
        }
        if check.equality_holds != check.relations_equal {
            consistent = false;
        }
        match extension_inclusion_check(b, b, z) {
            Ok(c) => {
                if !(c.equality_holds && c.relations_equal) {
                    equality = false;
                }
            }
            Err(_) => continue,
        }
    }
    if checked == 0 {
        return vec![Certificate::trivial(
            "inclusion.extension_law",
            "no sample lay in the resolvent set of the extension",
        )];
    }
    vec![
        Certificate::check("inclusion.extension_law", law, detail),
        Certificate::check(
            "inclusion.strictness_matches_equality",
            consistent,
            "equality of the extension disagrees with equality of the relations",
        ),
        Certificate::check(
            "inclusion.equality_branch",
            equality,
            "a relation compared against itself did not give equality",
        ),
    ]
}

pub fn certify_extensions(checks: &[ExtensionCheck]) -> Vec<Certificate> {
    let sandwich = checks.iter().all(|c| c.contains_s && c.contained_in_adjoint);
    let regulars: Vec<&ExtensionCheck> = checks.iter().filter(|c| c.regular).collect();
    let witnesses = if regulars.is_empty() {
        Certificate::trivial("extensions.regular_witnesses", "no candidate was regular")
    } else {
        Certificate::check(
            "extensions.regular_witnesses",
            regulars.iter().all(|c| c.witness.is_some()),
            "a regular candidate lacks a resolvent witness",
        )
    };
    vec![
        Certificate::check(
            "extensions.sandwich",
            sandwich,
            "a candidate escapes the range between S and S^+",
        ),
        witnesses,
    ]
}

/// Reassembly certificates for the two-by-two block decompositions of the
/// named relations with respect to the projection.
pub fn certify_block_reassembly(
    named: &[(&str, &LinearRelation)],
    p: &Matrix,
) -> Vec<Certificate> {
    named
        .iter()
        .map(|(name, t)| {
            let cert_name = format!("blocks.reassembly.{name}");
            match t.relation_matrix_blocks(p) {
                Ok(blocks) => match blocks.reassemble() {
                    Ok(back) => Certificate::check(
                        cert_name.as_str(),
                        &back == *t,
                        "the four blocks do not reassemble to the relation",
                    ),
                    Err(e) => {
                        Certificate::fail(cert_name.as_str(), format!("reassembly failed: {e}"))
                    }
                },
                Err(e) => {
                    Certificate::fail(cert_name.as_str(), format!("decomposition failed: {e}"))
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::all_passed;
    use crate::exact::scalar::{complex, rat, sc_i, sc_rat};

    fn cols(vs: Vec<Vec<Scalar>>) -> Matrix {
        Matrix::from_rows(vs).transpose()
    }

    fn rep3() -> NevRepresentation {
        let space =
            PontryaginSpace::new(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap();
        let a = LinearRelation::from_operator(
            space.clone(),
            &Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, -1]]),
        )
        .unwrap();
        let gamma = Matrix::from_rows(vec![
            vec![sc_rat(1, 2), sc(-1)],
            vec![sc(1), sc(0)],
            vec![sc(0), sc(-1)],
        ]);
        NevRepresentation::new(space, a, gamma, RepresentationForm::HolomorphicAtInfinity).unwrap()
    }

    fn rep1() -> NevRepresentation {
        let space = PontryaginSpace::euclidean(1);
        let a = LinearRelation::from_operator(space.clone(), &Matrix::zeros(1, 1)).unwrap();
        NevRepresentation::new(
            space,
            a,
            Matrix::identity(1),
            RepresentationForm::HolomorphicAtInfinity,
        )
        .unwrap()
    }

    struct Pipeline {
        rep: NevRepresentation,
        pd: ProjectionData,
        inv: InverseRepresentation,
        sym: SymmetricRestriction,
        adj: AdjointOfS,
    }

    fn pipeline(rep: NevRepresentation) -> Pipeline {
        let pd = projection_p(&rep).unwrap();
        let inv = inverse_representation(&rep, &pd).unwrap();
        let sym = symmetric_restriction(&rep, &pd, &inv).unwrap();
        let adj = adjoint_of_s(&rep, &inv, &sym).unwrap();
        Pipeline { rep, pd, inv, sym, adj }
    }

    #[test]
    fn projection_golden_three_dim() {
        let pl = pipeline(rep3());
        let p = Matrix::from_rows(vec![
            vec![sc_rat(3, 4), sc_rat(1, 8), sc_rat(1, 4)],
            vec![sc_rat(1, 2), sc_rat(3, 4), sc_rat(-1, 2)],
            vec![sc_rat(1, 2), sc_rat(-1, 4), sc_rat(1, 2)],
        ]);
        assert_eq!(pl.pd.p, p);
        assert_eq!(pl.pd.complement, Subspace::span(&cols(vec![vec![sc(-1), sc(2), sc(2)]])));
        assert_eq!(
            pl.pd.range,
            Subspace::span(&cols(vec![
                vec![sc(3), sc(2), sc(2)],
                vec![sc(1), sc(0), sc(1)],
            ]))
        );
        assert_eq!(pl.pd.gram, Matrix::from_i64(&[&[1, -1], &[-1, -1]]));
        assert!(all_passed(&certify_projection(&pl.rep, &pl.pd)));
    }

    #[test]
    fn projection_needs_invertible_derivative() {
        let space =
            PontryaginSpace::new(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap();
        let a = LinearRelation::from_operator(
            space.clone(),
            &Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, -1]]),
        )
        .unwrap();
        let rep = NevRepresentation::new(
            space,
            a,
            Matrix::from_i64(&[&[1], &[0], &[0]]),
            RepresentationForm::HolomorphicAtInfinity,
        )
        .unwrap();
        assert_eq!(projection_p(&rep), Err(Error::DerivativeNotInvertible));
    }

    #[test]
    fn restriction_and_adjoint_golden() {
        let pl = pipeline(rep3());
        assert_eq!(
            pl.sym.s_matrix,
            Matrix::from_rows(vec![
                vec![sc_rat(-1, 2), sc_rat(1, 4), sc_rat(1, 2)],
                vec![sc(0), sc(0), sc(0)],
                vec![sc_rat(1, 2), sc_rat(-1, 4), sc_rat(-1, 2)],
            ])
        );
        // The compression acts as -1 on K_1.
        assert_eq!(pl.sym.a_tilde_matrix, -&pl.pd.i_minus_p);
        // Graph dimensions of S, S^+, A_hat.
        assert_eq!(pl.sym.s.graph_dim(), 1);
        assert_eq!(pl.adj.s_plus.graph_dim(), 5);
        assert_eq!(pl.inv.a_hat.graph_dim(), 3);
        // S sends (-1, 2, 2) to (2, 0, -2).
        let graph = cols(vec![vec![sc(-1), sc(2), sc(2), sc(2), sc(0), sc(-2)]]);
        assert_eq!(pl.sym.s.graph(), &Subspace::span(&graph));
        assert!(all_passed(&certify_symmetric_restriction(&pl.pd, &pl.sym)));
        assert!(all_passed(&certify_inverse_representation(&pl.rep, &pl.pd, &pl.inv, &pl.sym)));
        assert!(all_passed(&certify_adjoint_routes(&pl.sym, &pl.adj)));
    }

    #[test]
    fn inverse_representation_golden() {
        let pl = pipeline(rep3());
        assert!(pl.inv.a_hat.is_self_adjoint());
        assert_eq!(pl.inv.a_hat.mul_part(), pl.pd.range);
        let golden = Matrix::from_rows(vec![
            vec![sc_rat(-1, 8), sc_rat(1, 16), sc_rat(1, 8)],
            vec![sc_rat(1, 4), sc_rat(-1, 8), sc_rat(-1, 4)],
            vec![sc_rat(1, 4), sc_rat(-1, 8), sc_rat(-1, 4)],
        ]);
        assert_eq!(pl.inv.a_hat.resolvent_matrix(&sc(1)).unwrap(), golden);
    }

    #[test]
    fn krein_formula_holds_on_default_samples() {
        let pl = pipeline(rep3());
        let samples = pl.rep.default_samples().unwrap();
        for z in samples.points() {
            let check = krein_resolvent_check(&pl.rep, &pl.inv, z).unwrap();
            assert!(check.holds, "formula fails at z = {}", format_scalar(z));
        }
        assert!(certify_krein(&pl.rep, &pl.inv, &samples).passed());

        let one = pipeline(rep1());
        let samples = one.rep.default_samples().unwrap();
        for z in samples.points() {
            let check = krein_resolvent_check(&one.rep, &one.inv, z).unwrap();
            assert!(check.holds);
            // A_hat is purely multivalued, so its resolvent vanishes.
            assert_eq!(check.lhs, Matrix::zeros(1, 1));
        }
    }

    #[test]
    fn defect_subspaces_and_parametrization() {
        let pl = pipeline(rep3());
        let samples = pl.rep.default_samples().unwrap();
        let report =
            defect_and_simplicity(&pl.rep, &pl.pd, &pl.sym, &pl.adj.s_plus, &samples).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
        assert!(report.span.is_full());
        let r1 = Subspace::span(&cols(vec![
            vec![sc(1), sc(0), sc_rat(1, 2)],
            vec![sc(0), sc(1), sc_rat(-3, 4)],
        ]));
        let at_one = report.per_point.iter().find(|d| d.point == sc(1)).unwrap();
        assert_eq!(at_one.defect, r1);
        assert_eq!(at_one.matches, Some(true));
        let r_i = Subspace::span(&cols(vec![
            vec![sc(1), sc(0), complex(rat(1, 2), rat(1, 2))],
            vec![sc(0), sc(1), complex(rat(-3, 4), rat(1, 4))],
        ]));
        let at_i = report.per_point.iter().find(|d| d.point == sc_i(0, 1)).unwrap();
        assert_eq!(at_i.defect, r_i);
        assert!(report.per_point.iter().all(|d| d.spans_gamma_field));
        assert!(all_passed(&certify_defect(&report)));
    }

    #[test]
    fn non_simple_instance_is_flagged() {
        let space = PontryaginSpace::euclidean(2);
        let a = LinearRelation::from_operator(
            space.clone(),
            &Matrix::from_i64(&[&[0, 0], &[0, 1]]),
        )
        .unwrap();
        let rep = NevRepresentation::new(
            space,
            a,
            Matrix::from_i64(&[&[1], &[0]]),
            RepresentationForm::HolomorphicAtInfinity,
        )
        .unwrap();
        let pl = pipeline(rep);
        let samples = pl.rep.default_samples().unwrap();
        let report =
            defect_and_simplicity(&pl.rep, &pl.pd, &pl.sym, &pl.adj.s_plus, &samples).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::NotSimple);
        assert_eq!(report.span.dim(), 1);
    }

    #[test]
    fn inclusion_law_three_dim() {
        let pl = pipeline(rep3());
        for z in [sc(1), sc_i(0, 1)] {
            let check = extension_inclusion_check(pl.rep.a(), &pl.inv.a_hat, &z).unwrap();
            assert!(check.sum_is_direct);
            assert!(check.inclusion_holds);
            assert!(!check.equality_holds);
            assert!(!check.relations_equal);
        }
        let equal = extension_inclusion_check(&pl.inv.a_hat, &pl.inv.a_hat, &sc(1)).unwrap();
        assert!(equal.equality_holds && equal.relations_equal);
        assert!(all_passed(&certify_inclusion(pl.rep.a(), &pl.inv.a_hat, &[sc(1), sc_i(0, 1)])));
    }

    #[test]
    fn inclusion_law_one_dim() {
        let pl = pipeline(rep1());
        let check = extension_inclusion_check(pl.rep.a(), &pl.inv.a_hat, &sc(2)).unwrap();
        assert!(check.sum_is_direct && check.inclusion_holds && !check.equality_holds);
        // The extension exhausts the whole product space here.
        let t = pl.rep.a().componentwise_sum(&pl.inv.a_hat).unwrap();
        assert_eq!(t.graph_dim(), 2);
        assert!(matches!(
            extension_inclusion_check(pl.rep.a(), pl.rep.a(), &sc(0)),
            Err(Error::NotInResolventSet(_))
        ));
    }

    #[test]
    fn boundary_triple_and_weyl_three_dim() {
        let pl = pipeline(rep3());
        let triple = canonical_boundary_triple(&pl.rep, &pl.pd, &pl.adj.s_plus).unwrap();
        assert!(triple.green_identity_holds());
        assert!(triple.jointly_surjective());
        assert_eq!(&triple.kernel_of_map0().unwrap(), pl.rep.a());
        assert_eq!(triple.kernel_of_map1().unwrap(), pl.inv.a_hat);
        assert!(all_passed(&certify_boundary_triple(&triple, pl.rep.a(), &pl.inv.a_hat)));
        for z in [sc(1), sc_i(0, 1), sc(2), sc_i(0, 2)] {
            let value = weyl_function_of_triple(&pl.rep, &triple, &z).unwrap();
            assert_eq!(value.m, pl.rep.eval_q(&z).unwrap(), "at z = {}", format_scalar(&z));
        }
        let samples = pl.rep.default_samples().unwrap();
        assert!(certify_weyl_matches_q(&pl.rep, &triple, &samples).passed());
    }

    #[test]
    fn boundary_triple_one_dim() {
        let pl = pipeline(rep1());
        let triple = canonical_boundary_triple(&pl.rep, &pl.pd, &pl.adj.s_plus).unwrap();
        // map0 {f, f'} = f' and map1 {f, f'} = -f on the full graph.
        let f = Matrix::from_i64(&[&[3]]);
        let fp = Matrix::from_i64(&[&[5]]);
        let (g0, g1) = triple.boundary_values(&f, &fp).unwrap();
        assert_eq!(g0, Matrix::from_i64(&[&[5]]));
        assert_eq!(g1, Matrix::from_i64(&[&[-3]]));
        for z in [sc(2), sc_i(0, 1)] {
            let value = weyl_function_of_triple(&pl.rep, &triple, &z).unwrap();
            assert_eq!(value.m, pl.rep.eval_q(&z).unwrap());
        }
    }

    #[test]
    fn boundary_values_require_membership() {
        let pl = pipeline(rep3());
        let triple = canonical_boundary_triple(&pl.rep, &pl.pd, &pl.adj.s_plus).unwrap();
        // (e_3, 0) does not belong to S^+ because S e_3 components force
        // the second entry; build a genuinely outside pair instead.
        let f = Matrix::from_i64(&[&[1], &[0], &[0]]);
        let fp = Matrix::from_i64(&[&[0], &[1], &[0]]);
        let stacked = Matrix::vstack(&[&f, &fp]);
        if !pl.adj.s_plus.graph().contains(&Subspace::span(&stacked)).unwrap() {
            assert!(matches!(
                triple.boundary_values(&f, &fp),
                Err(Error::ValidationError(_))
            ));
        }
    }

    #[test]
    fn extension_classification() {
        let pl = pipeline(rep3());
        let checks = regular_extension_check(
            &[
                ("a", pl.rep.a()),
                ("a_hat", &pl.inv.a_hat),
                ("s_plus", &pl.adj.s_plus),
            ],
            &pl.sym.s,
            &pl.adj.s_plus,
        );
        let a_check = &checks[0];
        assert!(a_check.regular && a_check.contains_s && a_check.contained_in_adjoint);
        assert_eq!(a_check.witness, Some(sc(1)));
        let hat_check = &checks[1];
        assert!(hat_check.regular);
        assert_eq!(hat_check.witness, Some(sc(0)));
        let plus_check = &checks[2];
        assert!(!plus_check.regular);
        assert_eq!(plus_check.witness, None);
        assert!(all_passed(&certify_extensions(&checks)));
    }

    #[test]
    fn block_reassembly_certificates() {
        let pl = pipeline(rep3());
        let certs = certify_block_reassembly(
            &[
                ("a", pl.rep.a()),
                ("a_hat", &pl.inv.a_hat),
                ("s_plus", &pl.adj.s_plus),
            ],
            &pl.pd.p,
        );
        assert!(all_passed(&certs));
        assert_eq!(certs.len(), 3);
        // Spot-check the block graph dimensions of the inverse relation.
        let blocks = pl.inv.a_hat.relation_matrix_blocks(&pl.pd.p).unwrap();
        assert_eq!(blocks.block(1, 1).graph_dim(), 1);
        assert_eq!(blocks.block(1, 2).graph_dim(), 3);
        assert_eq!(blocks.block(2, 1).graph_dim(), 0);
        assert_eq!(blocks.block(2, 2).graph_dim(), 2);
    }

    #[test]
    fn one_dim_pipeline_shapes() {
        let pl = pipeline(rep1());
        assert_eq!(pl.pd.p, Matrix::identity(1));
        assert_eq!(pl.sym.s.graph_dim(), 0);
        assert_eq!(pl.inv.a_hat.graph_dim(), 1);
        assert!(pl.inv.a_hat.mul_part().is_full());
        assert_eq!(pl.adj.s_plus.graph_dim(), 2);
        assert!(all_passed(&certify_projection(&pl.rep, &pl.pd)));
        assert!(all_passed(&certify_symmetric_restriction(&pl.pd, &pl.sym)));
        assert!(all_passed(&certify_inverse_representation(&pl.rep, &pl.pd, &pl.inv, &pl.sym)));
        assert!(all_passed(&certify_adjoint_routes(&pl.sym, &pl.adj)));
        let samples = pl.rep.default_samples().unwrap();
        let report =
            defect_and_simplicity(&pl.rep, &pl.pd, &pl.sym, &pl.adj.s_plus, &samples).unwrap();
        assert_eq!(report.verdict, SimplicityVerdict::Simple);
        assert!(all_passed(&certify_defect(&report)));
    }

    #[test]
    fn gamma_hat_field() {
        let pl = pipeline(rep1());
        // gamma_hat(z) = -gamma_z Q(z)^{-1} = -(-1/z)(-z) = -z ... with
        // gamma_z = (0 - z)^{-1} = -1/z and Q(z) = -1/z.
        let hat = gamma_hat(&pl.rep, &sc(2)).unwrap();
        assert_eq!(hat, Matrix::from_i64(&[&[-1]]));
        let rep = rep3();
        assert!(matches!(gamma_hat(&rep, &sc(0)), Err(Error::NotInResolventSet(_))));
    }
}

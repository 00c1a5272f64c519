//! Problem files, the staged analysis pipeline, and report rendering.
//!
//! A problem file is JSON with the fields
//!
//! ```json
//! {
//!   "space":  { "dim": 3, "J": [["0","1","0"],["1","0","0"],["0","0","-1"]] },
//!   "A":      { "matrix": [["0","1","0"],["0","0","0"],["0","0","-1"]] },
//!   "gamma":  [["1/2","-1"],["1","0"],["0","-1"]],
//!   "form":   "holomorphic_at_infinity",
//!   "samples":  ["i", "2"],
//!   "expected": { "kappa": 2, "q_at": [{"z": "1", "value": [["-2","1"],["1","1/2"]]}] }
//! }
//! ```
//!
//! Scalars are strings in the exact grammar (`"1/2"`, `"-2"`, `"0.5"`,
//! `"1+1i"`, `"i"`) or plain JSON integers. The relation `A` is given
//! either as an operator `matrix` or as a `graph`, a list of vectors of
//! length `2 dim` spanning it. The `form` is the string
//! `"holomorphic_at_infinity"` or `{"reference_point": {"w": ..., "Q_w":
//! ...}}`. `samples` and `expected` are optional; every `expected` field
//! is optional and is checked by the `verify` command.

use serde::{Deserialize, Serialize};

use crate::certificate::{all_passed, CertStatus, Certificate};
use crate::error::Error;
use crate::exact::matrix::Matrix;
use crate::exact::scalar::{format_scalar, parse_scalar, sc, Scalar};
use crate::exact::subspace::Subspace;
use crate::nevanlinna::{
    certify_representation, MinimalityReport, NegativeSquaresBound, NevRepresentation,
    QPrimeInfinity, RegularityVerdict, RepresentationForm, SampleSet,
};
use crate::space::PontryaginSpace;
use crate::weyl::{
    adjoint_of_s, canonical_boundary_triple, certify_adjoint_routes, certify_block_reassembly,
    certify_boundary_triple, certify_defect, certify_extensions, certify_inclusion,
    certify_inverse_representation, certify_krein, certify_projection,
    certify_symmetric_restriction, certify_weyl_matches_q, defect_and_simplicity,
    extension_inclusion_check, inverse_representation, krein_resolvent_check, projection_p,
    regular_extension_check, symmetric_restriction, weyl_function_of_triple, AdjointOfS,
    InverseRepresentation, ProjectionData, SimplicityReport, SimplicityVerdict,
    SymmetricRestriction,
};

// ---------------------------------------------------------------------------
// Raw file schema.
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    space: RawSpace,
    #[serde(rename = "A")]
    a: RawRelation,
    gamma: Vec<Vec<RawScalar>>,
    form: RawForm,
    #[serde(default)]
    samples: Option<Vec<RawScalar>>,
    #[serde(default)]
    expected: Option<RawExpected>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    dim: usize,
    #[serde(rename = "J")]
    j: Vec<Vec<RawScalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    #[serde(default)]
    matrix: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    graph: Option<Vec<Vec<RawScalar>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawForm {
    Name(String),
    Reference {
        reference_point: RawReference,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    w: RawScalar,
    #[serde(rename = "Q_w")]
    q_w: Vec<Vec<RawScalar>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    #[serde(default)]
    kappa: Option<usize>,
    #[serde(default)]
    minimal: Option<bool>,
    #[serde(default)]
    strict: Option<bool>,
    #[serde(default)]
    simple: Option<bool>,
    #[serde(default)]
    negative_squares: Option<usize>,
    #[serde(default)]
    q_prime_infinity: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    gram: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    gram_inverse: Option<Vec<Vec<RawScalar>>>,
    #[serde(default, rename = "P")]
    p: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    i_minus_p: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    a_tilde: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    complement_span: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    range_span: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    s_graph: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    a_hat_graph: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    s_plus_graph: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    q_at: Option<Vec<RawQAt>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQAt {
    z: RawScalar,
    value: Vec<Vec<RawScalar>>,
}

// ---------------------------------------------------------------------------
// Typed problem.
// ---------------------------------------------------------------------------

/// Expected values a problem file may carry; `verify` checks each present
/// field against the analysis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub kappa: Option<usize>,
    pub minimal: Option<bool>,
    pub strict: Option<bool>,
    pub simple: Option<bool>,
    pub negative_squares: Option<usize>,
    pub q_prime_infinity: Option<Matrix>,
    pub gram: Option<Matrix>,
    pub gram_inverse: Option<Matrix>,
    pub p: Option<Matrix>,
    pub i_minus_p: Option<Matrix>,
    pub a_tilde: Option<Matrix>,
    pub complement_span: Option<Subspace>,
    pub range_span: Option<Subspace>,
    pub s_graph: Option<Subspace>,
    pub a_hat_graph: Option<Subspace>,
    pub s_plus_graph: Option<Subspace>,
    pub q_at: Option<Vec<(Scalar, Matrix)>>,
}

/// A parsed and validated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub rep: NevRepresentation,
    pub samples: Option<SampleSet>,
    pub expected: Option<Expected>,
}

fn scalar_from_raw(raw: &RawScalar, what: &str) -> Result<Scalar, Error> {
    match raw {
        RawScalar::Int(k) => Ok(sc(*k)),
        RawScalar::Float(v) => Err(Error::parse(format!(
            "{what}: write {v} as a string for exact arithmetic, e.g. \"1/2\" or \"0.5\""
        ))),
        RawScalar::Text(s) => {
            parse_scalar(s).map_err(|m| Error::parse(format!("{what}: {m}")))
        }
    }
}

fn matrix_from_raw(rows: &[Vec<RawScalar>], what: &str) -> Result<Matrix, Error> {
    if rows.is_empty() {
        return Err(Error::parse(format!("{what}: matrix must not be empty")));
    }
    let cols = rows[0].len();
    if cols == 0 {
        return Err(Error::parse(format!("{what}: matrix rows must not be empty")));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::parse(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        let mut entries = Vec::with_capacity(cols);
        for (j, cell) in row.iter().enumerate() {
            entries.push(scalar_from_raw(cell, &format!("{what}[{i}][{j}]"))?);
        }
        out.push(entries);
    }
    Ok(Matrix::from_rows(out))
}

/// Vectors listed row-wise in the file become the columns of the returned
/// matrix; an empty list yields a basis of the zero subspace.
fn columns_from_vectors(
    vectors: &[Vec<RawScalar>],
    len: usize,
    what: &str,
) -> Result<Matrix, Error> {
    if vectors.is_empty() {
        return Ok(Matrix::zeros(len, 0));
    }
    let mut m = Matrix::zeros(len, vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(Error::parse(format!(
                "{what}: vector {k} has {} entries, expected {len}",
                v.len()
            )));
        }
        for (i, cell) in v.iter().enumerate() {
            m.set(i, k, scalar_from_raw(cell, &format!("{what}[{k}][{i}]"))?);
        }
    }
    Ok(m)
}

fn span_from_vectors(
    vectors: &[Vec<RawScalar>],
    len: usize,
    what: &str,
) -> Result<Subspace, Error> {
    Ok(Subspace::span(&columns_from_vectors(vectors, len, what)?))
}

/// Parses a problem file. Syntax problems and malformed scalars map to
/// `ParseError`; structurally invalid data maps to `ValidationError` or
/// `DimensionMismatch`.
pub fn parse_problem(text: &str) -> Result<Problem, Error> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        if e.line() > 0 {
            Error::parse_at(e.line(), e.column(), msg)
        } else {
            Error::parse(msg)
        }
    })?;
    let n = raw.space.dim;
    if n == 0 {
        return Err(Error::ValidationError("space dimension must be positive".into()));
    }
    let j = matrix_from_raw(&raw.space.j, "space.J")?;
    if j.rows() != n || j.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "space.J has shape {}x{}, expected {n}x{n}",
            j.rows(),
            j.cols()
        )));
    }
    let space = PontryaginSpace::new(j)?;

    let a = match (&raw.a.matrix, &raw.a.graph) {
        (Some(m), None) => {
            let m = matrix_from_raw(m, "A.matrix")?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "A.matrix has shape {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            crate::relation::LinearRelation::from_operator(space.clone(), &m)?
        }
        (None, Some(g)) => {
            let graph = columns_from_vectors(g, 2 * n, "A.graph")?;
            crate::relation::LinearRelation::from_graph(space.clone(), &graph)?
        }
        _ => {
            return Err(Error::parse(
                "A must carry exactly one of the fields \"matrix\" and \"graph\"",
            ))
        }
    };

    let gamma = matrix_from_raw(&raw.gamma, "gamma")?;
    let form = match &raw.form {
        RawForm::Name(name) if name == "holomorphic_at_infinity" => {
            RepresentationForm::HolomorphicAtInfinity
        }
        RawForm::Name(name) => {
            return Err(Error::parse(format!(
                "unknown form {name:?}; use \"holomorphic_at_infinity\" or a reference_point object"
            )))
        }
        RawForm::Reference { reference_point } => RepresentationForm::ReferencePoint {
            w: scalar_from_raw(&reference_point.w, "form.reference_point.w")?,
            q_w: matrix_from_raw(&reference_point.q_w, "form.reference_point.Q_w")?,
        },
    };
    let rep = NevRepresentation::new(space, a, gamma, form)?;

    let samples = match &raw.samples {
        None => None,
        Some(list) => {
            let mut points = Vec::with_capacity(list.len());
            for (k, raw_z) in list.iter().enumerate() {
                points.push(scalar_from_raw(raw_z, &format!("samples[{k}]"))?);
            }
            let set = SampleSet::new(points, rep.a()).map_err(|e| match e {
                Error::NotInResolventSet(z) => Error::ValidationError(format!(
                    "sample {z} is not a resolvent point of A"
                )),
                other => other,
            })?;
            Some(set)
        }
    };

    let expected = match &raw.expected {
        None => None,
        Some(e) => Some(expected_from_raw(e, n)?),
    };

    Ok(Problem { rep, samples, expected })
}

fn expected_from_raw(raw: &RawExpected, n: usize) -> Result<Expected, Error> {
    let mat = |field: &Option<Vec<Vec<RawScalar>>>, what: &str| -> Result<Option<Matrix>, Error> {
        field.as_ref().map(|m| matrix_from_raw(m, what)).transpose()
    };
    let span = |field: &Option<Vec<Vec<RawScalar>>>,
                len: usize,
                what: &str|
     -> Result<Option<Subspace>, Error> {
        field.as_ref().map(|v| span_from_vectors(v, len, what)).transpose()
    };
    let q_at = match &raw.q_at {
        None => None,
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (k, item) in list.iter().enumerate() {
                let z = scalar_from_raw(&item.z, &format!("expected.q_at[{k}].z"))?;
                let value = matrix_from_raw(&item.value, &format!("expected.q_at[{k}].value"))?;
                out.push((z, value));
            }
            Some(out)
        }
    };
    Ok(Expected {
        kappa: raw.kappa,
        minimal: raw.minimal,
        strict: raw.strict,
        simple: raw.simple,
        negative_squares: raw.negative_squares,
        q_prime_infinity: mat(&raw.q_prime_infinity, "expected.q_prime_infinity")?,
        gram: mat(&raw.gram, "expected.gram")?,
        gram_inverse: mat(&raw.gram_inverse, "expected.gram_inverse")?,
        p: mat(&raw.p, "expected.P")?,
        i_minus_p: mat(&raw.i_minus_p, "expected.i_minus_p")?,
        a_tilde: mat(&raw.a_tilde, "expected.a_tilde")?,
        complement_span: span(&raw.complement_span, n, "expected.complement_span")?,
        range_span: span(&raw.range_span, n, "expected.range_span")?,
        s_graph: span(&raw.s_graph, 2 * n, "expected.s_graph")?,
        a_hat_graph: span(&raw.a_hat_graph, 2 * n, "expected.a_hat_graph")?,
        s_plus_graph: span(&raw.s_plus_graph, 2 * n, "expected.s_plus_graph")?,
        q_at,
    })
}

/// Serializes a problem back to the file format with canonical scalar
/// strings. Parsing the result reproduces the problem exactly.
pub fn serialize_problem(problem: &Problem) -> String {
    use serde_json::{json, Map, Value};

    let mat = |m: &Matrix| -> Value { json!(mat_to_strings(m)) };
    let vectors = |s: &Subspace| -> Value { json!(basis_to_strings(s)) };
    let rep = &problem.rep;
    let n = rep.state_dim();

    let mut root = Map::new();
    root.insert(
        "space".into(),
        json!({ "dim": n, "J": mat_to_strings(rep.space().j()) }),
    );
    let a_value = if rep.a().is_operator() && rep.a().is_everywhere_defined() {
        let matrix = rep.a().operator_matrix().expect("everywhere defined operator");
        json!({ "matrix": mat_to_strings(&matrix) })
    } else {
        json!({ "graph": basis_to_strings(rep.a().graph()) })
    };
    root.insert("A".into(), a_value);
    root.insert("gamma".into(), mat(rep.gamma()));
    let form = match rep.form() {
        RepresentationForm::HolomorphicAtInfinity => json!("holomorphic_at_infinity"),
        RepresentationForm::ReferencePoint { w, q_w } => {
            json!({ "reference_point": { "w": format_scalar(w), "Q_w": mat_to_strings(q_w) } })
        }
    };
    root.insert("form".into(), form);
    if let Some(samples) = &problem.samples {
        let points: Vec<String> = samples.points().iter().map(format_scalar).collect();
        root.insert("samples".into(), json!(points));
    }
    if let Some(exp) = &problem.expected {
        let mut out = Map::new();
        if let Some(v) = exp.kappa {
            out.insert("kappa".into(), json!(v));
        }
        if let Some(v) = exp.minimal {
            out.insert("minimal".into(), json!(v));
        }
        if let Some(v) = exp.strict {
            out.insert("strict".into(), json!(v));
        }
        if let Some(v) = exp.simple {
            out.insert("simple".into(), json!(v));
        }
        if let Some(v) = exp.negative_squares {
            out.insert("negative_squares".into(), json!(v));
        }
        if let Some(v) = &exp.q_prime_infinity {
            out.insert("q_prime_infinity".into(), mat(v));
        }
        if let Some(v) = &exp.gram {
            out.insert("gram".into(), mat(v));
        }
        if let Some(v) = &exp.gram_inverse {
            out.insert("gram_inverse".into(), mat(v));
        }
        if let Some(v) = &exp.p {
            out.insert("P".into(), mat(v));
        }
        if let Some(v) = &exp.i_minus_p {
            out.insert("i_minus_p".into(), mat(v));
        }
        if let Some(v) = &exp.a_tilde {
            out.insert("a_tilde".into(), mat(v));
        }
        if let Some(v) = &exp.complement_span {
            out.insert("complement_span".into(), vectors(v));
        }
        if let Some(v) = &exp.range_span {
            out.insert("range_span".into(), vectors(v));
        }
        if let Some(v) = &exp.s_graph {
            out.insert("s_graph".into(), vectors(v));
        }
        if let Some(v) = &exp.a_hat_graph {
            out.insert("a_hat_graph".into(), vectors(v));
        }
        if let Some(v) = &exp.s_plus_graph {
            out.insert("s_plus_graph".into(), vectors(v));
        }
        if let Some(values) = &exp.q_at {
            let list: Vec<Value> = values
                .iter()
                .map(|(z, value)| {
                    json!({ "z": format_scalar(z), "value": mat_to_strings(value) })
                })
                .collect();
            out.insert("q_at".into(), json!(list));
        }
        root.insert("expected".into(), Value::Object(out));
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("problem serializes")
}

// ---------------------------------------------------------------------------
// Report structures.
// ---------------------------------------------------------------------------

fn mat_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_scalar(m.get(i, j))).collect())
        .collect()
}

fn basis_to_strings(s: &Subspace) -> Vec<Vec<String>> {
    let b = s.basis();
    (0..b.cols())
        .map(|k| (0..b.rows()).map(|i| format_scalar(b.get(i, k))).collect())
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct InputEcho {
    pub dim: usize,
    pub parameter_dim: usize,
    pub form: String,
    pub kappa: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct MinimalityOut {
    pub minimal: bool,
    pub reached_dim: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct RegularityOut {
    /// A sample where the function value is invertible, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_at: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct NegSquaresOut {
    pub bound: usize,
    pub points: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct QPrimeOut {
    pub matrix: Vec<Vec<String>>,
    pub invertible: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ProjectionOut {
    pub p: Vec<Vec<String>>,
    pub i_minus_p: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    pub gram_inverse: Vec<Vec<String>>,
    pub range_basis: Vec<Vec<String>>,
    pub complement_basis: Vec<Vec<String>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct InverseOut {
    pub a_hat_graph: Vec<Vec<String>>,
    pub multivalued_basis: Vec<Vec<String>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SymOut {
    pub s_graph: Vec<Vec<String>>,
    pub s_matrix: Vec<Vec<String>>,
    pub a_tilde_matrix: Vec<Vec<String>>,
    pub s_dim: usize,
    pub s_plus_dim: usize,
    pub a_hat_dim: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct SimplicityOut {
    pub verdict: String,
    pub span_dim: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct InclusionOut {
    pub z: String,
    pub sum_is_direct: bool,
    pub inclusion_holds: bool,
    pub equality_holds: bool,
    pub relations_equal: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct ExtensionOut {
    pub name: String,
    pub contains_s: bool,
    pub contained_in_adjoint: bool,
    pub regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct EvaluationOut {
    pub z: String,
    pub q: Vec<Vec<String>>,
    pub gamma_field: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub krein_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_matches_q: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parametrization_agrees: Option<bool>,
}

/// The full analysis report; later stages are absent when a precondition
/// stopped the pipeline, recorded in `stopped_at`.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub input: InputEcho,
    pub samples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimality: Option<MinimalityOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegularityOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_squares: Option<NegSquaresOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_prime_infinity: Option<QPrimeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_representation: Option<InverseOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_restriction: Option<SymOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<SimplicityOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<Vec<InclusionOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extensions: Option<Vec<ExtensionOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<Vec<EvaluationOut>>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<String>,
}

/// The report together with the typed artifacts behind it, for callers
/// that need exact values rather than strings.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: Report,
    pub rep: NevRepresentation,
    pub samples: Option<SampleSet>,
    pub minimality: Option<MinimalityReport>,
    pub strict: Option<bool>,
    pub negative_squares: Option<NegativeSquaresBound>,
    pub q_prime: Option<QPrimeInfinity>,
    pub projection: Option<ProjectionData>,
    pub inverse: Option<InverseRepresentation>,
    pub symmetric: Option<SymmetricRestriction>,
    pub adjoint: Option<AdjointOfS>,
    pub simplicity: Option<SimplicityReport>,
}

// ---------------------------------------------------------------------------
// Analyze.
// ---------------------------------------------------------------------------

/// Runs the staged pipeline. Preconditions that end the run early (wrong
/// form for the derivative at infinity, a singular derivative) are
/// recorded in the report rather than returned as errors.
pub fn run_analyze(problem: &Problem) -> Analysis {
    let rep = problem.rep.clone();
    let mut report = Report {
        input: InputEcho {
            dim: rep.state_dim(),
            parameter_dim: rep.parameter_dim(),
            form: rep.form().name().to_string(),
            kappa: rep.kappa(),
        },
        samples: Vec::new(),
        minimality: None,
        strict: None,
        regularity: None,
        negative_squares: None,
        q_prime_infinity: None,
        projection: None,
        inverse_representation: None,
        symmetric_restriction: None,
        simplicity: None,
        inclusion: None,
        extensions: None,
        evaluations: None,
        certificates: Vec::new(),
        stopped_at: None,
        stop_reason: None,
    };
    let mut certs: Vec<Certificate> = Vec::new();

    let mut samples_out: Option<SampleSet> = None;
    let mut minimality_out: Option<MinimalityReport> = None;
    let mut strict_out: Option<bool> = None;
    let mut neg_out: Option<NegativeSquaresBound> = None;
    let mut q_prime_out: Option<QPrimeInfinity> = None;
    let mut pd_out: Option<ProjectionData> = None;
    let mut inv_out: Option<InverseRepresentation> = None;
    let mut sym_out: Option<SymmetricRestriction> = None;
    let mut adj_out: Option<AdjointOfS> = None;
    let mut simplicity_out: Option<SimplicityReport> = None;

    let stop = |report: &mut Report, stage: &str, reason: String| {
        report.stopped_at = Some(stage.to_string());
        report.stop_reason = Some(reason);
    };

    'pipeline: {
        let samples = match &problem.samples {
            Some(s) => s.clone(),
            None => match rep.default_samples() {
                Ok(s) => s,
                Err(e) => {
                    stop(&mut report, "samples", e.to_string());
                    break 'pipeline;
                }
            },
        };
        report.samples = samples.points().iter().map(format_scalar).collect();
        samples_out = Some(samples.clone());

        certs.extend(certify_representation(&rep, &samples));

        if let Ok(m) = rep.minimality_check() {
            report.minimality =
                Some(MinimalityOut { minimal: m.minimal, reached_dim: m.reached.dim() });
            minimality_out = Some(m);
        }
        let strict = rep.strictness_check();
        report.strict = Some(strict);
        strict_out = Some(strict);
        report.regularity = Some(RegularityOut {
            regular_at: match rep.regularity_witness(&samples) {
                RegularityVerdict::RegularAt(z) => Some(format_scalar(&z)),
                RegularityVerdict::UndeterminedOnSamples => None,
            },
        });
        if let Ok(b) = rep.negative_squares_lower_bound(&samples.without_conjugate_pairs()) {
            report.negative_squares = Some(NegSquaresOut {
                bound: b.bound,
                points: b.points.iter().map(format_scalar).collect(),
            });
            neg_out = Some(b);
        }

        let q_prime = match rep.q_prime_infinity() {
            Ok(q) => q,
            Err(e) => {
                stop(&mut report, "q_prime_infinity", e.to_string());
                break 'pipeline;
            }
        };
        report.q_prime_infinity = Some(QPrimeOut {
            matrix: mat_to_strings(&q_prime.matrix),
            invertible: q_prime.is_invertible(),
        });
        q_prime_out = Some(q_prime);

        let pd = match projection_p(&rep) {
            Ok(pd) => pd,
            Err(e) => {
                stop(&mut report, "projection", e.to_string());
                break 'pipeline;
            }
        };
        report.projection = Some(ProjectionOut {
            p: mat_to_strings(&pd.p),
            i_minus_p: mat_to_strings(&pd.i_minus_p),
            gram: mat_to_strings(&pd.gram),
            gram_inverse: mat_to_strings(&pd.gram_inverse),
            range_basis: basis_to_strings(&pd.range),
            complement_basis: basis_to_strings(&pd.complement),
        });

        let inv = match inverse_representation(&rep, &pd) {
            Ok(v) => v,
            Err(e) => {
                stop(&mut report, "inverse_representation", e.to_string());
                pd_out = Some(pd);
                break 'pipeline;
            }
        };
        report.inverse_representation = Some(InverseOut {
            a_hat_graph: basis_to_strings(inv.a_hat.graph()),
            multivalued_basis: basis_to_strings(&inv.a_hat.mul_part()),
        });

        let sym = match symmetric_restriction(&rep, &pd, &inv) {
            Ok(v) => v,
            Err(e) => {
                stop(&mut report, "symmetric_restriction", e.to_string());
                pd_out = Some(pd);
                inv_out = Some(inv);
                break 'pipeline;
            }
        };
        let adj = match adjoint_of_s(&rep, &inv, &sym) {
            Ok(v) => v,
            Err(e) => {
                stop(&mut report, "adjoint", e.to_string());
                pd_out = Some(pd);
                inv_out = Some(inv);
                sym_out = Some(sym);
                break 'pipeline;
            }
        };
        report.symmetric_restriction = Some(SymOut {
            s_graph: basis_to_strings(sym.s.graph()),
            s_matrix: mat_to_strings(&sym.s_matrix),
            a_tilde_matrix: mat_to_strings(&sym.a_tilde_matrix),
            s_dim: sym.s.graph_dim(),
            s_plus_dim: adj.s_plus.graph_dim(),
            a_hat_dim: inv.a_hat.graph_dim(),
        });

        certs.extend(certify_projection(&rep, &pd));
        certs.extend(certify_symmetric_restriction(&pd, &sym));
        certs.extend(certify_inverse_representation(&rep, &pd, &inv, &sym));
        certs.extend(certify_adjoint_routes(&sym, &adj));
        certs.push(certify_krein(&rep, &inv, &samples));

        let simplicity =
            match defect_and_simplicity(&rep, &pd, &sym, &adj.s_plus, &samples) {
                Ok(v) => v,
                Err(e) => {
                    stop(&mut report, "defect", e.to_string());
                    pd_out = Some(pd);
                    inv_out = Some(inv);
                    sym_out = Some(sym);
                    adj_out = Some(adj);
                    break 'pipeline;
                }
            };
        report.simplicity = Some(SimplicityOut {
            verdict: match simplicity.verdict {
                SimplicityVerdict::Simple => "simple",
                SimplicityVerdict::NotSimple => "not_simple",
                SimplicityVerdict::UndeterminedOnSamples => "undetermined_on_samples",
            }
            .to_string(),
            span_dim: simplicity.span.dim(),
        });
        certs.extend(certify_defect(&simplicity));

        let inclusion_points: Vec<Scalar> =
            samples.points().iter().take(2).cloned().collect();
        let mut inclusion_out = Vec::new();
        for z in &inclusion_points {
            if let Ok(check) = extension_inclusion_check(rep.a(), &inv.a_hat, z) {
                inclusion_out.push(InclusionOut {
                    z: format_scalar(z),
                    sum_is_direct: check.sum_is_direct,
                    inclusion_holds: check.inclusion_holds,
                    equality_holds: check.equality_holds,
                    relations_equal: check.relations_equal,
                });
            }
        }
        report.inclusion = Some(inclusion_out);
        certs.extend(certify_inclusion(rep.a(), &inv.a_hat, &inclusion_points));

        let candidates = [
            ("a", rep.a()),
            ("a_hat", &inv.a_hat),
            ("s_plus", &adj.s_plus),
        ];
        let ext_checks = regular_extension_check(&candidates, &sym.s, &adj.s_plus);
        report.extensions = Some(
            ext_checks
                .iter()
                .map(|c| ExtensionOut {
                    name: c.name.clone(),
                    contains_s: c.contains_s,
                    contained_in_adjoint: c.contained_in_adjoint,
                    regular: c.regular,
                    witness: c.witness.as_ref().map(format_scalar),
                })
                .collect(),
        );
        certs.extend(certify_extensions(&ext_checks));
        certs.extend(certify_block_reassembly(&candidates, &pd.p));

        let triple = match canonical_boundary_triple(&rep, &pd, &adj.s_plus) {
            Ok(t) => t,
            Err(e) => {
                stop(&mut report, "boundary_triple", e.to_string());
                pd_out = Some(pd);
                inv_out = Some(inv);
                sym_out = Some(sym);
                adj_out = Some(adj);
                simplicity_out = Some(simplicity);
                break 'pipeline;
            }
        };
        certs.extend(certify_boundary_triple(&triple, rep.a(), &inv.a_hat));
        certs.push(certify_weyl_matches_q(&rep, &triple, &samples));

        let mut evaluations = Vec::new();
        for z in samples.points() {
            let q = match rep.eval_q(z) {
                Ok(q) => q,
                Err(_) => continue,
            };
            let gz = match rep.gamma_field(z) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let krein_holds =
                krein_resolvent_check(&rep, &inv, z).ok().map(|c| c.holds);
            let weyl_matches_q =
                weyl_function_of_triple(&rep, &triple, z).ok().map(|v| v.m == q);
            let defect = simplicity.per_point.iter().find(|d| &d.point == z);
            evaluations.push(EvaluationOut {
                z: format_scalar(z),
                q: mat_to_strings(&q),
                gamma_field: mat_to_strings(&gz),
                krein_holds,
                weyl_matches_q,
                defect_dim: defect.map(|d| d.defect.dim()),
                parametrization_agrees: defect.and_then(|d| d.matches),
            });
        }
        report.evaluations = Some(evaluations);

        pd_out = Some(pd);
        inv_out = Some(inv);
        sym_out = Some(sym);
        adj_out = Some(adj);
        simplicity_out = Some(simplicity);
    }

    report.certificates = certs;
    Analysis {
        report,
        rep,
        samples: samples_out,
        minimality: minimality_out,
        strict: strict_out,
        negative_squares: neg_out,
        q_prime: q_prime_out,
        projection: pd_out,
        inverse: inv_out,
        symmetric: sym_out,
        adjoint: adj_out,
        simplicity: simplicity_out,
    }
}

/// Exit code for an analysis: 3 when a precondition stopped the pipeline,
/// 1 when a certificate failed, 0 otherwise.
pub fn analysis_exit_code(report: &Report) -> u8 {
    if report.stopped_at.is_some() {
        3
    } else if !all_passed(&report.certificates) {
        1
    } else {
        0
    }
}

/// Maps an error to the process exit code: input problems give 2,
/// precondition failures give 3.
pub fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::ParseError { .. } | Error::ValidationError(_) | Error::DimensionMismatch(_) => 2,
        _ => 3,
    }
}

// ---------------------------------------------------------------------------
// Eval.
// ---------------------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct Evaluation {
    pub z: String,
    pub q: Vec<Vec<String>>,
    pub gamma_field: Vec<Vec<String>>,
    pub resolvent: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_relation_resolvent: Option<Vec<Vec<String>>>,
    /// Weyl function of the canonical boundary triple at `z`, when the
    /// structural pipeline applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_function: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_matches_q: Option<bool>,
}

/// Evaluates the function and the attached resolvents at one point.
pub fn run_eval(problem: &Problem, z: &Scalar) -> Result<Evaluation, Error> {
    let rep = &problem.rep;
    let q = rep.eval_q(z)?;
    let gz = rep.gamma_field(z)?;
    let rz = rep.a().resolvent_matrix(z)?;
    let mut inverse_resolvent = None;
    let mut weyl_value = None;
    if let Ok(pd) = projection_p(rep) {
        if let Ok(inv) = inverse_representation(rep, &pd) {
            inverse_resolvent =
                inv.a_hat.resolvent_matrix(z).ok().map(|m| mat_to_strings(&m));
            if let Ok(sym) = symmetric_restriction(rep, &pd, &inv) {
                if let Ok(adj) = adjoint_of_s(rep, &inv, &sym) {
                    if let Ok(triple) = canonical_boundary_triple(rep, &pd, &adj.s_plus) {
                        weyl_value =
                            weyl_function_of_triple(rep, &triple, z).ok().map(|v| v.m);
                    }
                }
            }
        }
    }
    Ok(Evaluation {
        z: format_scalar(z),
        q: mat_to_strings(&q),
        gamma_field: mat_to_strings(&gz),
        resolvent: mat_to_strings(&rz),
        inverse_relation_resolvent: inverse_resolvent,
        weyl_function: weyl_value.as_ref().map(mat_to_strings),
        weyl_matches_q: weyl_value.as_ref().map(|m| m == &q),
    })
}

// ---------------------------------------------------------------------------
// Verify.
// ---------------------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct VerifySummary {
    pub matched: bool,
    pub diffs: Vec<String>,
}

/// The verify outcome with the underlying analysis.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub matched: bool,
    pub diffs: Vec<String>,
    pub analysis: Analysis,
}

fn stop_note(report: &Report) -> String {
    match &report.stopped_at {
        Some(stage) => format!(" (pipeline stopped at {stage})"),
        None => String::new(),
    }
}

fn diff_matrix(
    diffs: &mut Vec<String>,
    name: &str,
    expected: &Matrix,
    got: Option<&Matrix>,
    report: &Report,
) {
    let Some(got) = got else {
        diffs.push(format!("{name}: not computed{}", stop_note(report)));
        return;
    };
    if got.rows() != expected.rows() || got.cols() != expected.cols() {
        diffs.push(format!(
            "{name}: expected shape {}x{}, got {}x{}",
            expected.rows(),
            expected.cols(),
            got.rows(),
            got.cols()
        ));
        return;
    }
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            if expected.get(i, j) != got.get(i, j) {
                diffs.push(format!(
                    "{name}[{i}][{j}]: expected {}, got {}",
                    format_scalar(expected.get(i, j)),
                    format_scalar(got.get(i, j))
                ));
                return;
            }
        }
    }
}

fn diff_span(
    diffs: &mut Vec<String>,
    name: &str,
    expected: &Subspace,
    got: Option<&Subspace>,
    report: &Report,
) {
    let Some(got) = got else {
        diffs.push(format!("{name}: not computed{}", stop_note(report)));
        return;
    };
    if expected != got {
        diffs.push(format!(
            "{name}: expected span {:?} (dim {}), got {:?} (dim {})",
            basis_to_strings(expected),
            expected.dim(),
            basis_to_strings(got),
            got.dim()
        ));
    }
}

fn diff_value<T: PartialEq + std::fmt::Display>(
    diffs: &mut Vec<String>,
    name: &str,
    expected: &T,
    got: Option<T>,
    report: &Report,
) {
    match got {
        None => diffs.push(format!("{name}: not computed{}", stop_note(report))),
        Some(g) => {
            if &g != expected {
                diffs.push(format!("{name}: expected {expected}, got {g}"));
            }
        }
    }
}

/// Re-runs the analysis and compares every `expected` field. A file
/// without an `expected` block matches vacuously.
pub fn run_verify(problem: &Problem) -> VerifyOutcome {
    let analysis = run_analyze(problem);
    let mut diffs = Vec::new();
    if let Some(exp) = &problem.expected {
        let report = &analysis.report;
        if let Some(kappa) = exp.kappa {
            diff_value(&mut diffs, "kappa", &kappa, Some(analysis.rep.kappa()), report);
        }
        if let Some(minimal) = exp.minimal {
            diff_value(
                &mut diffs,
                "minimal",
                &minimal,
                analysis.minimality.as_ref().map(|m| m.minimal),
                report,
            );
        }
        if let Some(strict) = exp.strict {
            diff_value(&mut diffs, "strict", &strict, analysis.strict, report);
        }
        if let Some(simple) = exp.simple {
            diff_value(
                &mut diffs,
                "simple",
                &simple,
                analysis
                    .simplicity
                    .as_ref()
                    .map(|s| s.verdict == SimplicityVerdict::Simple),
                report,
            );
        }
        if let Some(bound) = exp.negative_squares {
            diff_value(
                &mut diffs,
                "negative_squares",
                &bound,
                analysis.negative_squares.as_ref().map(|b| b.bound),
                report,
            );
        }
        if let Some(m) = &exp.q_prime_infinity {
            diff_matrix(
                &mut diffs,
                "q_prime_infinity",
                m,
                analysis.q_prime.as_ref().map(|q| &q.matrix),
                report,
            );
        }
        if let Some(m) = &exp.gram {
            diff_matrix(&mut diffs, "gram", m, analysis.projection.as_ref().map(|p| &p.gram), report);
        }
        if let Some(m) = &exp.gram_inverse {
            diff_matrix(
                &mut diffs,
                "gram_inverse",
                m,
                analysis.projection.as_ref().map(|p| &p.gram_inverse),
                report,
            );
        }
        if let Some(m) = &exp.p {
            diff_matrix(&mut diffs, "P", m, analysis.projection.as_ref().map(|p| &p.p), report);
        }
        if let Some(m) = &exp.i_minus_p {
            diff_matrix(
                &mut diffs,
                "i_minus_p",
                m,
                analysis.projection.as_ref().map(|p| &p.i_minus_p),
                report,
            );
        }
        if let Some(m) = &exp.a_tilde {
            diff_matrix(
                &mut diffs,
                "a_tilde",
                m,
                analysis.symmetric.as_ref().map(|s| &s.a_tilde_matrix),
                report,
            );
        }
        if let Some(s) = &exp.complement_span {
            diff_span(
                &mut diffs,
                "complement_span",
                s,
                analysis.projection.as_ref().map(|p| &p.complement),
                report,
            );
        }
        if let Some(s) = &exp.range_span {
            diff_span(
                &mut diffs,
                "range_span",
                s,
                analysis.projection.as_ref().map(|p| &p.range),
                report,
            );
        }
        if let Some(s) = &exp.s_graph {
            diff_span(
                &mut diffs,
                "s_graph",
                s,
                analysis.symmetric.as_ref().map(|v| v.s.graph()),
                report,
            );
        }
        if let Some(s) = &exp.a_hat_graph {
            diff_span(
                &mut diffs,
                "a_hat_graph",
                s,
                analysis.inverse.as_ref().map(|v| v.a_hat.graph()),
                report,
            );
        }
        if let Some(s) = &exp.s_plus_graph {
            diff_span(
                &mut diffs,
                "s_plus_graph",
                s,
                analysis.adjoint.as_ref().map(|v| v.s_plus.graph()),
                report,
            );
        }
        if let Some(values) = &exp.q_at {
            for (z, expected_q) in values {
                let name = format!("q_at({})", format_scalar(z));
                match analysis.rep.eval_q(z) {
                    Ok(q) => diff_matrix(&mut diffs, &name, expected_q, Some(&q), report),
                    Err(e) => diffs.push(format!("{name}: not evaluable ({e})")),
                }
            }
        }
    }
    VerifyOutcome { matched: diffs.is_empty(), diffs, analysis }
}

// ---------------------------------------------------------------------------
// Text rendering.
// ---------------------------------------------------------------------------

fn push_matrix(out: &mut String, rows: &[Vec<String>]) {
    if rows.is_empty() || rows[0].is_empty() {
        out.push_str("  (empty)\n");
        return;
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in rows {
        out.push_str("  ");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            for _ in 0..widths[j].saturating_sub(cell.len()) {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    }
}

fn push_vectors(out: &mut String, vectors: &[Vec<String>]) {
    if vectors.is_empty() {
        out.push_str("  (zero subspace)\n");
        return;
    }
    for v in vectors {
        out.push_str("  (");
        out.push_str(&v.join(", "));
        out.push_str(")\n");
    }
}

/// Renders a report as plain text.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let i = &report.input;
    out.push_str(&format!(
        "representation: dim {}, parameters {}, form {}, negative index {}\n",
        i.dim, i.parameter_dim, i.form, i.kappa
    ));
    out.push_str(&format!("samples: {}\n", report.samples.join(", ")));
    if let Some(m) = &report.minimality {
        out.push_str(&format!("minimal: {} (reached dim {})\n", m.minimal, m.reached_dim));
    }
    if let Some(s) = report.strict {
        out.push_str(&format!("strict: {s}\n"));
    }
    if let Some(r) = &report.regularity {
        match &r.regular_at {
            Some(z) => out.push_str(&format!("regular at: {z}\n")),
            None => out.push_str("regularity: undetermined on the samples\n"),
        }
    }
    if let Some(b) = &report.negative_squares {
        out.push_str(&format!(
            "negative squares >= {} (over {} points)\n",
            b.bound,
            b.points.len()
        ));
    }
    if let Some(q) = &report.q_prime_infinity {
        out.push_str(&format!("derivative at infinity (invertible: {}):\n", q.invertible));
        push_matrix(&mut out, &q.matrix);
    }
    if let Some(p) = &report.projection {
        out.push_str("projection P:\n");
        push_matrix(&mut out, &p.p);
        out.push_str("range of gamma:\n");
        push_vectors(&mut out, &p.range_basis);
        out.push_str("complement (kernel of gamma adjoint):\n");
        push_vectors(&mut out, &p.complement_basis);
    }
    if let Some(s) = &report.symmetric_restriction {
        out.push_str(&format!(
            "graph dimensions: S {}, S^+ {}, A_hat {}\n",
            s.s_dim, s.s_plus_dim, s.a_hat_dim
        ));
        out.push_str("graph of S:\n");
        push_vectors(&mut out, &s.s_graph);
    }
    if let Some(s) = &report.simplicity {
        out.push_str(&format!("simplicity: {} (span dim {})\n", s.verdict, s.span_dim));
    }
    if let Some(checks) = &report.inclusion {
        for c in checks {
            out.push_str(&format!(
                "inclusion at z = {}: direct {}, holds {}, equality {}\n",
                c.z, c.sum_is_direct, c.inclusion_holds, c.equality_holds
            ));
        }
    }
    if let Some(exts) = &report.extensions {
        for e in exts {
            let witness = e
                .witness
                .as_ref()
                .map(|w| format!(" (resolvent point {w})"))
                .unwrap_or_default();
            out.push_str(&format!(
                "extension {}: sandwiched {}, regular {}{witness}\n",
                e.name,
                e.contains_s && e.contained_in_adjoint,
                e.regular
            ));
        }
    }
    if let Some(evals) = &report.evaluations {
        for ev in evals {
            let krein = ev
                .krein_holds
                .map(|b| format!(", resolvent formula {b}"))
                .unwrap_or_default();
            let weyl = ev
                .weyl_matches_q
                .map(|b| format!(", weyl matches {b}"))
                .unwrap_or_default();
            out.push_str(&format!("z = {}{krein}{weyl}\n", ev.z));
            push_matrix(&mut out, &ev.q);
        }
    }
    out.push_str("certificates:\n");
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut trivial = 0usize;
    for cert in &report.certificates {
        let label = match cert.status {
            CertStatus::Pass => {
                pass += 1;
                "PASS"
            }
            CertStatus::Fail => {
                fail += 1;
                "FAIL"
            }
            CertStatus::TriviallySatisfied => {
                trivial += 1;
                "TRIV"
            }
        };
        let detail = cert
            .detail
            .as_ref()
            .map(|d| format!(" ({d})"))
            .unwrap_or_default();
        out.push_str(&format!("  {label} {}{detail}\n", cert.name));
    }
    out.push_str(&format!(
        "summary: {} certificates, {pass} pass, {fail} fail, {trivial} trivially satisfied\n",
        report.certificates.len()
    ));
    if let Some(stage) = &report.stopped_at {
        let reason = report
            .stop_reason
            .as_ref()
            .map(|r| format!(": {r}"))
            .unwrap_or_default();
        out.push_str(&format!("stopped at {stage}{reason}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::sc_i;

    const THREE_DIM: &str = r#"{
        "space": { "dim": 3, "J": [["0","1","0"],["1","0","0"],["0","0","-1"]] },
        "A": { "matrix": [["0","1","0"],["0","0","0"],["0","0","-1"]] },
        "gamma": [["1/2","-1"],["1","0"],["0","-1"]],
        "form": "holomorphic_at_infinity",
        "expected": {
            "kappa": 2,
            "minimal": true,
            "strict": true,
            "simple": true,
            "negative_squares": 2,
            "q_prime_infinity": [["-1","1"],["1","1"]],
            "gram": [["1","-1"],["-1","-1"]],
            "gram_inverse": [["1/2","-1/2"],["-1/2","-1/2"]],
            "P": [["3/4","1/8","1/4"],["1/2","3/4","-1/2"],["1/2","-1/4","1/2"]],
            "complement_span": [["-1","2","2"]],
            "range_span": [["3","2","2"],["1","0","1"]],
            "s_graph": [["-1","2","2","2","0","-2"]],
            "q_at": [
                { "z": "1", "value": [["-2","1"],["1","1/2"]] },
                { "z": "i", "value": [["1+1i","-1i"],["-1i","1/2-1/2i"]] }
            ]
        }
    }"#;

    const ONE_DIM: &str = r#"{
        "space": { "dim": 1, "J": [["1"]] },
        "A": { "matrix": [["0"]] },
        "gamma": [["1"]],
        "form": "holomorphic_at_infinity",
        "expected": {
            "kappa": 0,
            "q_at": [
                { "z": "i", "value": [["1i"]] },
                { "z": "2", "value": [["-1/2"]] }
            ]
        }
    }"#;

    #[test]
    fn parse_and_analyze_three_dim() {
        let problem = parse_problem(THREE_DIM).unwrap();
        let analysis = run_analyze(&problem);
        let report = &analysis.report;
        assert!(report.stopped_at.is_none());
        assert_eq!(report.input.kappa, 2);
        assert_eq!(report.samples.len(), 9);
        assert!(all_passed(&report.certificates));
        assert!(report.certificates.len() > 30);
        assert_eq!(analysis_exit_code(report), 0);
        assert_eq!(report.negative_squares.as_ref().unwrap().bound, 2);
        assert_eq!(report.simplicity.as_ref().unwrap().verdict, "simple");
        let evals = report.evaluations.as_ref().unwrap();
        assert_eq!(evals.len(), 9);
        assert!(evals.iter().all(|e| e.krein_holds == Some(true)));
        assert!(evals.iter().all(|e| e.weyl_matches_q == Some(true)));
    }

    #[test]
    fn verify_accepts_golden_expectations() {
        let problem = parse_problem(THREE_DIM).unwrap();
        let outcome = run_verify(&problem);
        assert!(outcome.matched, "diffs: {:?}", outcome.diffs);
        let one = parse_problem(ONE_DIM).unwrap();
        let outcome = run_verify(&one);
        assert!(outcome.matched, "diffs: {:?}", outcome.diffs);
    }

    #[test]
    fn verify_locates_a_perturbed_entry() {
        let perturbed = THREE_DIM.replace("\"P\": [[\"3/4\",\"1/8\"", "\"P\": [[\"3/4\",\"1/2\"");
        let problem = parse_problem(&perturbed).unwrap();
        let outcome = run_verify(&problem);
        assert!(!outcome.matched);
        assert_eq!(outcome.diffs.len(), 1);
        assert!(outcome.diffs[0].contains("P[0][1]"), "diff: {}", outcome.diffs[0]);
        assert!(outcome.diffs[0].contains("expected 1/2, got 1/8"));
    }

    #[test]
    fn parse_errors_are_classified() {
        assert!(matches!(
            parse_problem("{ not json"),
            Err(Error::ParseError { line: Some(1), .. })
        ));
        let bad_scalar = THREE_DIM.replace("\"1/2\",\"-1\"", "\"1//2\",\"-1\"");
        assert!(matches!(parse_problem(&bad_scalar), Err(Error::ParseError { .. })));
        let float = THREE_DIM.replace("[\"1/2\",\"-1\"]", "[0.5,\"-1\"]");
        let err = parse_problem(&float).unwrap_err();
        assert!(matches!(err, Error::ParseError { .. }));
        assert!(err.to_string().contains("as a string"));
        // An unknown top-level key is rejected.
        let extra = THREE_DIM.replacen("\"space\"", "\"spice\"", 1);
        assert!(matches!(parse_problem(&extra), Err(Error::ParseError { .. })));
        // Exit codes.
        assert_eq!(exit_code_for(&Error::parse("x")), 2);
        assert_eq!(exit_code_for(&Error::ValidationError("x".into())), 2);
        assert_eq!(exit_code_for(&Error::NotInResolventSet("0".into())), 3);
        assert_eq!(exit_code_for(&Error::DerivativeNotInvertible), 3);
    }

    #[test]
    fn reference_point_form_stops_at_derivative() {
        let text = r#"{
            "space": { "dim": 1, "J": [["1"]] },
            "A": { "matrix": [["0"]] },
            "gamma": [["i"]],
            "form": { "reference_point": { "w": "i", "Q_w": [["i"]] } },
            "expected": { "q_at": [ { "z": "2", "value": [["-1/2"]] } ] }
        }"#;
        let problem = parse_problem(text).unwrap();
        let analysis = run_analyze(&problem);
        assert_eq!(analysis.report.stopped_at.as_deref(), Some("q_prime_infinity"));
        assert_eq!(analysis_exit_code(&analysis.report), 3);
        // Function-level stages are still populated.
        assert!(analysis.report.negative_squares.is_some());
        assert!(analysis.report.minimality.as_ref().unwrap().minimal);
        // And verify still checks the function values.
        let outcome = run_verify(&problem);
        assert!(outcome.matched, "diffs: {:?}", outcome.diffs);
    }

    #[test]
    fn singular_derivative_stops_at_projection() {
        let text = r#"{
            "space": { "dim": 3, "J": [["0","1","0"],["1","0","0"],["0","0","-1"]] },
            "A": { "matrix": [["0","1","0"],["0","0","0"],["0","0","-1"]] },
            "gamma": [["1"],["0"],["0"]],
            "form": "holomorphic_at_infinity"
        }"#;
        let problem = parse_problem(text).unwrap();
        let analysis = run_analyze(&problem);
        let report = &analysis.report;
        assert_eq!(report.stopped_at.as_deref(), Some("projection"));
        assert_eq!(analysis_exit_code(report), 3);
        assert!(!report.q_prime_infinity.as_ref().unwrap().invertible);
        assert!(report.strict == Some(true));
        assert!(!report.minimality.as_ref().unwrap().minimal);
    }

    #[test]
    fn relation_given_as_graph() {
        // The purely multivalued relation {0} x C with gamma = 1: A - z is
        // boundedly invertible everywhere, so samples exist.
        let text = r#"{
            "space": { "dim": 1, "J": [["1"]] },
            "A": { "graph": [["0","1"]] },
            "gamma": [["1"]],
            "form": "holomorphic_at_infinity"
        }"#;
        let err = parse_problem(text).unwrap_err();
        // The holomorphic form requires an operator, so validation fails.
        assert!(matches!(err, Error::ValidationError(_)));
        let both = r#"{
            "space": { "dim": 1, "J": [["1"]] },
            "A": { "matrix": [["0"]], "graph": [["0","1"]] },
            "gamma": [["1"]],
            "form": "holomorphic_at_infinity"
        }"#;
        assert!(matches!(parse_problem(both), Err(Error::ParseError { .. })));
    }

    #[test]
    fn sample_override_is_validated() {
        let with_samples = THREE_DIM.replace(
            "\"form\": \"holomorphic_at_infinity\",",
            "\"form\": \"holomorphic_at_infinity\", \"samples\": [\"i\",\"2i\",\"3i\",\"4i\"],",
        );
        let problem = parse_problem(&with_samples).unwrap();
        assert_eq!(problem.samples.as_ref().unwrap().len(), 4);
        let analysis = run_analyze(&problem);
        assert_eq!(analysis.report.samples.len(), 4);
        assert!(all_passed(&analysis.report.certificates));
        let bad = THREE_DIM.replace(
            "\"form\": \"holomorphic_at_infinity\",",
            "\"form\": \"holomorphic_at_infinity\", \"samples\": [\"0\"],",
        );
        assert!(matches!(parse_problem(&bad), Err(Error::ValidationError(_))));
    }

    #[test]
    fn eval_reports_all_values() {
        let problem = parse_problem(ONE_DIM).unwrap();
        let eval = run_eval(&problem, &sc(2)).unwrap();
        assert_eq!(eval.q, vec![vec!["-1/2".to_string()]]);
        assert_eq!(eval.resolvent, vec![vec!["-1/2".to_string()]]);
        assert_eq!(eval.gamma_field, vec![vec!["-1/2".to_string()]]);
        assert_eq!(eval.inverse_relation_resolvent, Some(vec![vec!["0".to_string()]]));
        assert_eq!(eval.weyl_function, Some(vec![vec!["-1/2".to_string()]]));
        assert_eq!(eval.weyl_matches_q, Some(true));
        assert!(matches!(
            run_eval(&problem, &sc(0)),
            Err(Error::NotInResolventSet(_))
        ));
        let i_val = run_eval(&problem, &sc_i(0, 1)).unwrap();
        assert_eq!(i_val.q, vec![vec!["1i".to_string()]]);
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        for text in [THREE_DIM, ONE_DIM] {
            let problem = parse_problem(text).unwrap();
            let emitted = serialize_problem(&problem);
            let reparsed = parse_problem(&emitted).unwrap();
            assert_eq!(problem, reparsed);
            // And the emission is stable.
            assert_eq!(emitted, serialize_problem(&reparsed));
        }
        // Also with a sample override and a reference-point form.
        let with_samples = THREE_DIM.replace(
            "\"form\": \"holomorphic_at_infinity\",",
            "\"form\": \"holomorphic_at_infinity\", \"samples\": [\"i\",\"2i\",\"3i\",\"4i\"],",
        );
        let problem = parse_problem(&with_samples).unwrap();
        assert_eq!(problem, parse_problem(&serialize_problem(&problem)).unwrap());
        let reference = r#"{
            "space": { "dim": 1, "J": [["1"]] },
            "A": { "matrix": [["0"]] },
            "gamma": [["i"]],
            "form": { "reference_point": { "w": "i", "Q_w": [["i"]] } }
        }"#;
        let problem = parse_problem(reference).unwrap();
        assert_eq!(problem, parse_problem(&serialize_problem(&problem)).unwrap());
    }

    #[test]
    fn verify_compares_spans_not_bases() {
        // The same subspaces written in different bases still match.
        let rebased = THREE_DIM
            .replace(
                "\"range_span\": [[\"3\",\"2\",\"2\"],[\"1\",\"0\",\"1\"]]",
                "\"range_span\": [[\"4\",\"2\",\"3\"],[\"-1\",\"0\",\"-1\"]]",
            )
            .replace(
                "\"complement_span\": [[\"-1\",\"2\",\"2\"]]",
                "\"complement_span\": [[\"1/2\",\"-1\",\"-1\"]]",
            );
        assert_ne!(rebased, THREE_DIM);
        let outcome = run_verify(&parse_problem(&rebased).unwrap());
        assert!(outcome.matched, "diffs: {:?}", outcome.diffs);
        // A genuinely different span is still caught.
        let wrong = THREE_DIM.replace(
            "\"complement_span\": [[\"-1\",\"2\",\"2\"]]",
            "\"complement_span\": [[\"1\",\"0\",\"0\"]]",
        );
        let outcome = run_verify(&parse_problem(&wrong).unwrap());
        assert!(!outcome.matched);
        assert!(outcome.diffs[0].starts_with("complement_span"));
    }

    #[test]
    fn analyze_output_is_deterministic() {
        let problem = parse_problem(THREE_DIM).unwrap();
        let a = serde_json::to_string_pretty(&run_analyze(&problem).report).unwrap();
        let b = serde_json::to_string_pretty(&run_analyze(&problem).report).unwrap();
        assert_eq!(a, b);
        let text = render_text(&run_analyze(&problem).report);
        assert!(text.contains("negative index 2"));
        assert!(text.contains("PASS"));
        assert!(!text.contains("FAIL "));
    }
}

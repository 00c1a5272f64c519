//! Seeded random instances for the integration suites.

use num_traits::Zero;
use rand::Rng;

use pontryagin::exact::matrix::Matrix;
use pontryagin::exact::scalar::{complex, rat, sc, Rational, Scalar};
use pontryagin::nevanlinna::{NevRepresentation, RepresentationForm};
use pontryagin::relation::LinearRelation;
use pontryagin::space::{j_adjoint, PontryaginSpace};

pub fn rand_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(-3..=3), rng.random_range(1..=3))
}

pub fn rand_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let re = rand_rational(rng);
    let im = if rng.random_range(0..3) == 0 { rand_rational(rng) } else { Rational::zero() };
    complex(re, im)
}

pub fn rand_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rand_scalar(rng))
}

/// A random fundamental symmetry: the Euclidean reflection through the
/// orthogonal complement of a random k-dimensional subspace, which is
/// Hermitian, involutive, and has inertia (n - k, k, 0).
pub fn rand_fundamental_symmetry<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let k = rng.random_range(0..=n);
    if k == 0 {
        return Matrix::identity(n);
    }
    loop {
        let v = rand_matrix(rng, n, k);
        let gram = &v.conj_transpose() * &v;
        let Ok(gram_inv) = gram.inverse() else { continue };
        let p = &(&v * &gram_inv) * &v.conj_transpose();
        return &Matrix::identity(n) - &p.scale(&sc(2));
    }
}

pub fn rand_space<R: Rng>(rng: &mut R, n: usize) -> PontryaginSpace {
    PontryaginSpace::new(rand_fundamental_symmetry(rng, n)).expect("constructed symmetry is valid")
}

/// A random matrix that is self-adjoint for the indefinite product:
/// J times a random Hermitian matrix.
pub fn rand_j_self_adjoint<R: Rng>(rng: &mut R, space: &PontryaginSpace) -> Matrix {
    let r = rand_matrix(rng, space.dim(), space.dim());
    let h = &r + &r.conj_transpose();
    space.j() * &h
}

/// A random relation spanned by `d` random graph vectors.
pub fn rand_relation<R: Rng>(rng: &mut R, space: &PontryaginSpace, d: usize) -> LinearRelation {
    let graph = rand_matrix(rng, 2 * space.dim(), d);
    LinearRelation::from_graph(space.clone(), &graph).expect("random graph spans a relation")
}

/// A random representation with an invertible parameter Gram matrix, so
/// the whole structural pipeline applies.
pub fn rand_admissible<R: Rng>(rng: &mut R, n: usize, m: usize) -> NevRepresentation {
    assert!(m <= n);
    loop {
        let space = rand_space(rng, n);
        let a = rand_j_self_adjoint(rng, &space);
        let gamma = rand_matrix(rng, n, m);
        let parameter_space = PontryaginSpace::euclidean(m);
        let gamma_plus =
            j_adjoint(&gamma, &parameter_space, &space).expect("shapes agree by construction");
        let gram = &gamma_plus * &gamma;
        if !gram.is_invertible() {
            continue;
        }
        let rel = LinearRelation::from_operator(space.clone(), &a)
            .expect("square matrix is a relation");
        if let Ok(rep) =
            NevRepresentation::new(space, rel, gamma, RepresentationForm::HolomorphicAtInfinity)
        {
            return rep;
        }
    }
}

/// Up to `count` exact resolvent points of the relation, drawn from a
/// fixed complex grid.
pub fn resolvent_points(rel: &LinearRelation, count: usize) -> Vec<Scalar> {
    let mut out = Vec::new();
    'outer: for re in -4i64..=4 {
        for im in 0i64..=3 {
            let z = complex(rat(re, 1), rat(im, 1));
            if matches!(
                rel.spectrum_point_check(&z),
                pontryagin::relation::SpectrumPoint::ResolventPoint
            ) {
                out.push(z);
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    out
}

//! Exact calculus of linear relations: graphs, inverses, adjoints, and
//! the componentwise sum, on a 3-dimensional indefinite inner product
//! space.

use pontryagin::exact::matrix::Matrix;
use pontryagin::exact::scalar::sc;
use pontryagin::relation::LinearRelation;
use pontryagin::space::PontryaginSpace;

fn main() -> Result<(), pontryagin::Error> {
    let j = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
    let space = PontryaginSpace::new(j)?;
    println!("inner product signature: {:?}", space.inertia());

    let a = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, -1]]);
    let rel = LinearRelation::from_operator(space.clone(), &a)?;
    println!("graph dimension of A: {}", rel.graph_dim());
    println!("A is an operator: {}", rel.is_operator());
    println!("A is self-adjoint: {}", rel.is_self_adjoint());

    // The inverse relation swaps the two graph components. A has a
    // kernel, so the inverse is multivalued: its multivalued part is
    // exactly ker A.
    let inv = rel.inverse();
    println!("A^-1 is an operator: {}", inv.is_operator());
    println!("mul part of A^-1 = ker A: {}", inv.mul_part() == rel.kernel());

    // The adjoint is computed from the graph alone; for a self-adjoint
    // relation it reproduces the graph.
    let adj = rel.adjoint();
    println!("A^+ == A: {}", adj == rel);

    // Spectrum classification is exact: 0 and -1 are eigenvalues, all
    // other integers are resolvent points.
    for k in [-2i64, -1, 0, 1, 2] {
        println!("z = {k}: {:?}", rel.spectrum_point_check(&sc(k)));
    }

    // At a resolvent point the resolvent is an honest matrix.
    let r = rel.resolvent_matrix(&sc(1))?;
    println!("(A - 1)^-1 =\n{r}");

    // The componentwise sum of A with the purely multivalued relation
    // {0} x span(e3) makes the third basis vector an eigenvector "at
    // infinity": the sum has a nontrivial multivalued part.
    let pair = Matrix::from_i64(&[&[0], &[0], &[0], &[0], &[0], &[1]]);
    let tail = LinearRelation::from_graph(space, &pair)?;
    let sum = rel.componentwise_sum(&tail)?;
    println!("dim graph(A +^ tail) = {}", sum.graph_dim());
    println!("mul part of the sum is nonzero: {}", !sum.mul_part().is_zero());
    Ok(())
}

//! The canonical boundary triple on S^+ and its Weyl function, which
//! reproduces the represented matrix function exactly.

use std::path::Path;

use pontryagin::cli::parse_problem;
use pontryagin::exact::scalar::format_scalar;
use pontryagin::weyl::{
    adjoint_of_s, canonical_boundary_triple, inverse_representation, projection_p,
    symmetric_restriction, weyl_function_of_triple,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex42.krf");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;
    let rep = &problem.rep;

    let pd = projection_p(rep)?;
    let inv = inverse_representation(rep, &pd)?;
    let sym = symmetric_restriction(rep, &pd, &inv)?;
    let adj = adjoint_of_s(rep, &inv, &sym)?;
    let triple = canonical_boundary_triple(rep, &pd, &adj.s_plus)?;

    println!("parameter dim: {}", triple.parameter_dim());
    println!("joint surjectivity: {}", triple.jointly_surjective());
    println!("abstract Green identity: {}", triple.green_identity_holds());

    // The two boundary maps cut out the two distinguished extensions.
    println!("ker of first map is A: {}", &triple.kernel_of_map0()? == rep.a());
    println!("ker of second map is A_hat: {}", triple.kernel_of_map1()? == inv.a_hat);

    // Boundary values of a concrete element of S^+.
    let graph = adj.s_plus.graph().basis();
    let n = rep.state_dim();
    let f = graph.row_block(0, n).col(0);
    let g = graph.row_block(n, 2 * n).col(0);
    let (b0, b1) = triple.boundary_values(&f, &g)?;
    println!("boundary values of the first graph column:\n{b0}\n{b1}");

    // The Weyl function of the triple agrees with the represented function.
    for z in rep.default_samples()?.points().iter().take(4) {
        let value = weyl_function_of_triple(rep, &triple, z)?;
        let q = rep.eval_q(z)?;
        println!("M({}) == Q({}): {}", format_scalar(z), format_scalar(z), value.m == q);
        assert_eq!(value.m, q);
    }
    Ok(())
}

//! The structural pipeline behind a representation: the projection onto
//! the range of gamma, the inverse representation, the symmetric
//! restriction S and its adjoint, with every certificate printed.

use std::path::Path;

use pontryagin::cli::parse_problem;
use pontryagin::weyl::{
    adjoint_of_s, certify_adjoint_routes, certify_projection, certify_symmetric_restriction,
    inverse_representation, projection_p, symmetric_restriction,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex42.krf");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;
    let rep = &problem.rep;

    let pd = projection_p(rep)?;
    println!("P =\n{}", pd.p);
    println!("range of gamma (dim {}):\n{}", pd.range.dim(), pd.range.basis());
    println!("complement (dim {}):\n{}", pd.complement.dim(), pd.complement.basis());

    let inv = inverse_representation(rep, &pd)?;
    println!("dim graph(A_hat) = {}", inv.a_hat.graph_dim());
    println!("A_hat self-adjoint: {}", inv.a_hat.is_self_adjoint());

    let sym = symmetric_restriction(rep, &pd, &inv)?;
    println!("graph of S:\n{}", sym.s.graph().basis());
    println!("S symmetric: {}", sym.s.is_symmetric());
    println!("compression to the complement:\n{}", sym.a_tilde_matrix);

    let adj = adjoint_of_s(rep, &inv, &sym)?;
    println!(
        "dims: S {}, A {}, A_hat {}, S^+ {}",
        sym.s.graph_dim(),
        rep.a().graph_dim(),
        inv.a_hat.graph_dim(),
        adj.s_plus.graph_dim()
    );

    let mut certs = certify_projection(rep, &pd);
    certs.extend(certify_symmetric_restriction(&pd, &sym));
    certs.extend(certify_adjoint_routes(&sym, &adj));
    for c in &certs {
        println!("{:?} {}", c.status, c.name);
    }
    assert!(pontryagin::certificate::all_passed(&certs));
    Ok(())
}

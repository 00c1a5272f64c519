//! Evaluating the matrix function attached to a representation, exactly,
//! at rational and complex rational points.

use std::path::Path;

use pontryagin::cli::parse_problem;
use pontryagin::exact::scalar::{format_scalar, parse_scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex42.krf");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;
    let rep = &problem.rep;
    println!(
        "state dim {}, parameter dim {}, negative index {}",
        rep.state_dim(),
        rep.parameter_dim(),
        rep.kappa()
    );

    // Exact values; the function here is [[-(1+z)/z^2, 1/z], [1/z, 1/(1+z)]].
    for text in ["1", "2", "1/2", "i", "2i", "1+1i", "-1/3"] {
        let z = parse_scalar(text).map_err(pontryagin::Error::parse)?;
        let q = rep.eval_q(&z)?;
        println!("Q({text}) =\n{q}");
    }

    // The derivative at infinity of a function holomorphic there.
    let d = rep.q_prime_infinity()?;
    println!("Q'(inf) =\n{}", d.matrix);

    // Conjugate symmetry Q(z)^* = Q(z conjugate), checked exactly.
    let z = parse_scalar("1/2+1/3i").map_err(pontryagin::Error::parse)?;
    let lhs = rep.eval_q(&z)?.conj_transpose();
    let rhs = rep.eval_q(&z.conj())?;
    println!("conjugate symmetry at {}: {}", format_scalar(&z), lhs == rhs);

    // Eigenvalues are rejected with a typed error.
    match rep.eval_q(&parse_scalar("0").unwrap()) {
        Err(e) => println!("at an eigenvalue: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

//! The resolvent difference formula connecting a representation with its
//! inverse representation, checked exactly at every default sample.

use std::path::Path;

use pontryagin::cli::parse_problem;
use pontryagin::exact::scalar::format_scalar;
use pontryagin::weyl::{gamma_hat, inverse_representation, krein_resolvent_check, projection_p};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["ex41.krf", "ex42.krf"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name);
        let problem = parse_problem(&std::fs::read_to_string(path)?)?;
        let rep = &problem.rep;
        let pd = projection_p(rep)?;
        let inv = inverse_representation(rep, &pd)?;
        println!("{name}:");
        for z in rep.default_samples()?.points() {
            let check = krein_resolvent_check(rep, &inv, z)?;
            println!("  z = {}: resolvent formula holds: {}", format_scalar(z), check.holds);
            assert!(check.holds);
        }
        // The gamma field of the inverse representation at one point.
        let z = rep.default_samples()?.points()[0].clone();
        println!("  gamma_hat({}) =\n{}", format_scalar(&z), gamma_hat(rep, &z)?);
    }
    Ok(())
}

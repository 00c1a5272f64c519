//! The negative index of the space versus the number of negative squares
//! of the kernel (Q(z) - Q(w)^*) / (z - w conjugate), estimated from
//! exact Gram matrices on sample grids.

use std::path::Path;

use pontryagin::cli::parse_problem;
use pontryagin::exact::scalar::{format_scalar, parse_scalar};
use pontryagin::nevanlinna::SampleSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex42.krf");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;
    let rep = &problem.rep;
    println!("negative index of the space: {}", rep.kappa());

    // Small grids give lower bounds; a rich enough grid reaches the
    // negative index itself.
    for grid in [vec!["i"], vec!["i", "2i"], vec!["i", "1+1i", "2i", "1", "2"]] {
        let points: Result<Vec<_>, _> = grid.iter().map(|t| parse_scalar(t)).collect();
        let samples = SampleSet::new(points.map_err(pontryagin::Error::parse)?, rep.a())?;
        let bound = rep.negative_squares_lower_bound(&samples)?;
        println!(
            "grid {:?}: gram inertia gives bound {}",
            grid,
            bound.bound
        );
    }

    // The default sample set, with one of each conjugate-symmetric pair
    // removed, also reaches the index.
    let samples = rep.default_samples()?.without_conjugate_pairs();
    let bound = rep.negative_squares_lower_bound(&samples)?;
    println!(
        "default grid ({} points): bound {}",
        bound.points.len(),
        bound.bound
    );
    assert_eq!(bound.bound, rep.kappa());

    // The kernel itself at a pair of points.
    let z = parse_scalar("i").unwrap();
    let w = parse_scalar("2i").unwrap();
    println!(
        "kernel value at ({}, {}):\n{}",
        format_scalar(&z),
        format_scalar(&w),
        rep.kernel_value(&z, &w)?
    );
    Ok(())
}

//! The whole pipeline as one call: parse a problem file, run every
//! stage, and print the plain-text report with its certificate table.

use std::path::Path;

use pontryagin::certificate::all_passed;
use pontryagin::cli::{parse_problem, render_text, run_analyze, run_verify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex42.krf");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;

    let analysis = run_analyze(&problem);
    print!("{}", render_text(&analysis.report));
    assert!(analysis.report.stopped_at.is_none());
    assert!(all_passed(&analysis.report.certificates));

    // The same file carries its expected values; verify reruns the
    // analysis and compares them field by field.
    let outcome = run_verify(&problem);
    println!("verify matched: {}", outcome.matched);
    for diff in &outcome.diffs {
        println!("  diff: {diff}");
    }
    Ok(())
}

//! Loads every definition file in examples/data and prints its axiom residuals.
//!
//! Usage: cargo run --example check_axioms [file.qg ...]

use fqg::hopf::{parse_definition, verify_axioms};
use fqg::{FiniteQuantumGroup, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let mut paths: Vec<String> = std::env::args().skip(1).collect();
    if paths.is_empty() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
        for entry in std::fs::read_dir(dir)? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "qg") {
                paths.push(p.display().to_string());
            }
        }
        paths.sort();
    }
    for path in paths {
        let g = FiniteQuantumGroup::from_parts(parse_definition(&std::fs::read_to_string(&path)?)?)?;
        let report = verify_axioms(&g, &tol);
        println!(
            "{:<16} dim {:>2}  max residual {:.1e}  {}",
            g.name(),
            g.dim(),
            report.max_residual(),
            if report.passed() { "ok" } else { "FAILED" }
        );
        for c in report.checks.iter().filter(|c| !c.passed) {
            println!("    {} {:.3e}", c.axiom.name(), c.residual);
        }
    }
    Ok(())
}

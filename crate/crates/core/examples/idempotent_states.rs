//! Searches for idempotent states and reports, for each, the coideal, its
//! hull and the right unit `ε − ω`.
//!
//! Usage: cargo run --example idempotent_states [file.qg]

use std::sync::Arc;

use fqg::hopf::load_definition;
use fqg::quasigroup::{coideal_of, hull_of_quasi_subgroup, right_unit_check, search_idempotent_states};
use fqg::{wedderburn, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/kac_paljutkin.qg").into());
    let g = Arc::new(load_definition(&std::fs::read_to_string(path)?, &tol)?);
    let table = wedderburn(&g, &tol, 0)?;
    let seeds: Vec<u64> = (0..64).collect();
    let found = search_idempotent_states(&table, &seeds, &tol)?;
    println!(
        "{}: {} idempotent states ({})",
        g.name(),
        found.states.len(),
        if found.exhaustive { "complete list" } else { "search, possibly incomplete" }
    );
    for s in &found.states {
        let n = coideal_of(&s.state, &tol)?;
        let (hull, report) = hull_of_quasi_subgroup(&table, &s.state, &tol)?;
        let unit = right_unit_check(&s.state, &tol)?;
        println!(
            "  {:?}: dim N = {}  E = {:?}  Σ n dim E = {}  right unit {}  invariant on both sides: {}",
            s.origin,
            n.dim(),
            hull.dims(),
            report.weighted_dim,
            if unit.holds { "ok" } else { "FAILED" },
            unit.two_sided_invariant
        );
    }
    Ok(())
}

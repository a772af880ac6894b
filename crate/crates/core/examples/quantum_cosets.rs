//! Cosets of the alternating subgroup inside C[S3] and of a non-classical
//! quasi-subgroup of the Kac–Paljutkin quantum group.
//!
//! Usage: cargo run --example quantum_cosets

use std::sync::Arc;

use fqg::cosets::{coset, disjointness_check, intrinsic_group, surjectivity_check, translate_ideal};
use fqg::hopf::load_definition;
use fqg::quasigroup::{coideal_of, j1, search_idempotent_states, Coideal};
use fqg::{wedderburn, FiniteQuantumGroup, Tolerance};

fn report(g: &Arc<FiniteQuantumGroup>, n: &Coideal, tol: &Tolerance) -> Result<(), fqg::Error> {
    let table = wedderburn(g, tol, 0)?;
    let group = intrinsic_group(&table, tol)?;
    let ideal = j1(n, tol)?;
    println!("{}: dim N = {}, intrinsic group orders {:?}", g.name(), n.dim(), group.order_sequence());
    for (i, x) in group.elements.iter().enumerate() {
        let c = coset(x, n, tol)?;
        let d = disjointness_check(x, n, tol)?;
        let (moved, _) = translate_ideal(&ideal, x, tol)?;
        let surj = match surjectivity_check(n, x, tol) {
            Ok(s) => format!("restriction rank {}", s.image_dim),
            Err(_) => "x in N".into(),
        };
        println!(
            "  x{i}: ω(x) = {:.3}  dim xN = {}  xN ∩ N {:?}  dim J¹(N)·x = {}  {surj}",
            d.omega_at_x,
            c.space.dim(),
            d.outcome,
            moved.dim()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let load = |f: &str| -> Result<Arc<FiniteQuantumGroup>, Box<dyn std::error::Error>> {
        Ok(Arc::new(load_definition(&std::fs::read_to_string(format!("{data}/{f}"))?, &tol)?))
    };

    let s3 = load("group_s3.qg")?;
    let table = wedderburn(&s3, &tol, 0)?;
    let a3 = fqg::quasigroup::subgroup_indicator(&table, &[0, 3, 4], &tol)?;
    let n = coideal_of(&fqg::quasigroup::IdempotentState::new(a3, &tol)?, &tol)?;
    report(&s3, &n, &tol)?;

    // the first state whose coideal is not invariant on both sides
    let kp = load("kac_paljutkin.qg")?;
    let table = wedderburn(&kp, &tol, 0)?;
    let seeds: Vec<u64> = (0..64).collect();
    for s in search_idempotent_states(&table, &seeds, &tol)?.states {
        let n = coideal_of(&s.state, &tol)?;
        if !n.is_left_invariant(&tol) {
            report(&kp, &n, &tol)?;
            break;
        }
    }
    Ok(())
}

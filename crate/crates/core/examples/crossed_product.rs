//! Crossed products: Z3 rotating the three involutions of C[Z2×Z2] (which
//! gives the group algebra of A4), and the Kac–Paljutkin group with a
//! trivial Z2 action.
//!
//! Usage: cargo run --example crossed_product [output.qg]

use std::sync::Arc;

use fqg::crossed::{build_crossed_product, verify_crossed_irr, HopfAction};
use fqg::hopf::{from_group_algebra, load_definition, write_definition};
use fqg::{wedderburn, FiniteGroup, FiniteQuantumGroup, Tolerance};

fn show(g: FiniteQuantumGroup, action: HopfAction, tol: &Tolerance) -> Result<FiniteQuantumGroup, fqg::Error> {
    let product = build_crossed_product(&g, &action, tol)?;
    for o in &product.outcomes {
        println!("  {} rule: {}", o.rule, if o.passed { "all axioms pass" } else { "fails" });
    }
    let q = Arc::new(product.group);
    let (_, r) = verify_crossed_irr(&wedderburn(&Arc::new(g), tol, 0)?, &q, &action, tol, 0)?;
    println!("  {}: dim {}  blocks {:?}  from {:?}", q.name(), q.dim(), r.product_dims, r.factor_dims);
    println!("  Haar fiber residual {:.1e}", r.haar_fiber_residual);
    Ok(Arc::try_unwrap(q).expect("single owner"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let v4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
    let g = from_group_algebra(&v4)?.with_name("C[Z2xZ2]");
    let action = HopfAction::cyclic_permutation(&g, 3, vec![0, 2, 3, 1])?;
    println!("Z3 acting on {}:", g.name());
    let a4 = show(g, action, &tol)?;
    println!("  noncommutative: {}", !a4.is_commutative(&tol));

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/kac_paljutkin.qg");
    let kp = load_definition(&std::fs::read_to_string(path)?, &tol)?;
    let action = HopfAction::trivial(&kp, FiniteGroup::cyclic(2), "Z2");
    println!("Z2 acting trivially on {}:", kp.name());
    let product = show(kp, action, &tol)?;
    if let Some(out) = std::env::args().nth(1) {
        std::fs::write(&out, write_definition(&product))?;
        println!("wrote {out}");
    }
    Ok(())
}

//! Wedderburn decomposition of the dual: block sizes, F matrices, and the
//! matrix-unit and convolution identities for each block.
//!
//! Usage: cargo run --example irr_table [file.qg]

use std::sync::Arc;

use fqg::dual::{convolution_formula_check, matrix_unit_check};
use fqg::hopf::load_definition;
use fqg::{wedderburn, Element, Functional, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/kac_paljutkin.qg").into());
    let g = Arc::new(load_definition(&std::fs::read_to_string(path)?, &tol)?);
    let table = wedderburn(&g, &tol, 0)?;
    println!("{}: blocks {:?}", g.name(), table.dims());
    for b in table.blocks() {
        let r = matrix_unit_check(&table, b.index());
        println!(
            "  {} n={} |F - I| = {:.1e}  matrix units {:.1e}",
            b.label(),
            b.n(),
            r.f_deviation,
            r.residual
        );
    }
    // x*f against its Fourier picture, for the Haar state and a basis element
    let f = Functional::haar(&g);
    let x = Element::basis(&g, g.dim() - 1);
    println!("  convolution formula residual {:.1e}", convolution_formula_check(&table, &f, &x)?.max());
    print!("{}", table.to_text());
    Ok(())
}

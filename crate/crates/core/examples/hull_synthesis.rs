//! Random left ideals of the convolution algebra: hull, ideal of the hull,
//! and the three descriptions of its annihilator.
//!
//! Usage: cargo run --example hull_synthesis [file.qg] [trials]

use std::sync::Arc;

use fqg::hopf::load_definition;
use fqg::ideals::{annihilator_dualities, hull_of, left_ideal_from_generators, verify_synthesis};
use fqg::linalg::Mat;
use fqg::{wedderburn, Functional, Tolerance, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/c_s3.qg").into());
    let trials: usize = args.next().map_or(Ok(10), |s| s.parse())?;
    let g = Arc::new(load_definition(&std::fs::read_to_string(path)?, &tol)?);
    let table = wedderburn(&g, &tol, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("{}: blocks {:?}", g.name(), table.dims());
    for t in 0..trials {
        // generators with random low-rank Fourier blocks, so proper ideals show up
        let gens = (0..rng.gen_range(1..=2))
            .map(|_| {
                let blocks: Vec<Mat> = table
                    .blocks()
                    .iter()
                    .map(|b| {
                        let n = b.n();
                        let r = rng.gen_range(0..=n);
                        let mut rand_mat = |rows, cols| {
                            Mat::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        };
                        rand_mat(n, r) * rand_mat(r, n)
                    })
                    .collect();
                table.inverse_fourier(&blocks)
            })
            .collect::<Result<Vec<Functional>, _>>()?;
        let ideal = left_ideal_from_generators(&g, &gens, &tol)?;
        let hull = hull_of(&table, &ideal, &tol)?;
        let syn = verify_synthesis(&table, &ideal, &tol)?;
        let dual = annihilator_dualities(&table, &hull, &tol);
        println!(
            "trial {t:>2}: dim I = {}  E = {:?}  synthesis {} ({:.1e})  dualities {}",
            ideal.dim(),
            hull.dims(),
            if syn.holds { "ok" } else { "FAILED" },
            syn.residual,
            if dual.holds { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}

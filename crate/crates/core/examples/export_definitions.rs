//! Writes definition documents for the small group examples.
//!
//! Usage: cargo run --example export_definitions [directory]

use std::path::PathBuf;

use fqg::hopf::{from_finite_group, from_group_algebra, write_definition};
use fqg::FiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data").into()),
    );
    std::fs::create_dir_all(&dir)?;
    let groups = [
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    for (name, g) in &groups {
        let functions = from_finite_group(g)?
            .with_name(format!("C({name})"))
            .with_meta("origin", "function-algebra");
        let algebra = from_group_algebra(g)?
            .with_name(format!("C[{name}]"))
            .with_meta("origin", "group-algebra");
        let lower = name.to_lowercase();
        for (file, q) in [(format!("c_{lower}.qg"), functions), (format!("group_{lower}.qg"), algebra)] {
            let path = dir.join(file);
            std::fs::write(&path, write_definition(&q))?;
            println!("wrote {} (dim {})", path.display(), q.dim());
        }
    }
    Ok(())
}

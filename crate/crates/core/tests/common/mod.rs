#![allow(dead_code)]

use std::sync::Arc;

use fqg::hopf::{from_finite_group, from_group_algebra, load_definition, tensor_product};
use fqg::{FiniteGroup, FiniteQuantumGroup, Tolerance};

pub const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

pub fn data_path(file: &str) -> String {
    format!("{DATA}/{file}")
}

pub fn load(file: &str) -> FiniteQuantumGroup {
    let text = std::fs::read_to_string(data_path(file)).expect("read definition");
    load_definition(&text, &Tolerance::default()).expect("definition loads")
}

pub fn kac_paljutkin() -> FiniteQuantumGroup {
    load("kac_paljutkin.qg")
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2))
}

/// Function algebras and group algebras of small groups, with names.
pub fn group_examples() -> Vec<(String, FiniteQuantumGroup)> {
    let mut out = Vec::new();
    for (name, g) in [
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric(3)),
    ] {
        out.push((format!("C({name})"), from_finite_group(&g).unwrap()));
        out.push((format!("C[{name}]"), from_group_algebra(&g).unwrap()));
    }
    out
}

pub fn tensor_examples() -> Vec<(String, FiniteQuantumGroup)> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let s3 = FiniteGroup::symmetric(3);
    vec![
        (
            "C(Z2)⊗C[Z3]".into(),
            tensor_product(&from_finite_group(&z2).unwrap(), &from_group_algebra(&z3).unwrap()).unwrap(),
        ),
        (
            "C[S3]⊗C(Z2)".into(),
            tensor_product(&from_group_algebra(&s3).unwrap(), &from_finite_group(&z2).unwrap()).unwrap(),
        ),
    ]
}

/// Everything the theorem suites run over.
pub fn all_examples() -> Vec<(String, Arc<FiniteQuantumGroup>)> {
    let mut v: Vec<(String, FiniteQuantumGroup)> = group_examples();
    v.push(("KacPaljutkin".into(), kac_paljutkin()));
    v.extend(tensor_examples());
    v.into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

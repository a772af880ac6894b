use super::{FiniteQuantumGroup, StructureData};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{C64, ONE, ZERO};

/// `C(Γ)`: functions on a finite group, basis of point masses `δ_s`.
pub fn from_finite_group(group: &FiniteGroup) -> Result<FiniteQuantumGroup> {
    let n = group.order();
    let mut data = StructureData {
        name: format!("C(G{n})"),
        labels: group.labels().iter().map(|l| format!("d_{l}")).collect(),
        mult: vec![ZERO; n * n * n],
        unit: vec![ONE; n],
        star: vec![ZERO; n * n],
        coproduct: vec![ZERO; n * n * n],
        counit: vec![ZERO; n],
        antipode: vec![ZERO; n * n],
        haar: Some(vec![C64::new(1.0 / n as f64, 0.0); n]),
        meta: Vec::new(),
    };
    for s in 0..n {
        data.mult[(s * n + s) * n + s] = ONE;
        data.star[s * n + s] = ONE;
        data.antipode[s * n + group.inv(s)] = ONE;
        for u in 0..n {
            // δ_s ↦ Σ_{uv = s} δ_u ⊗ δ_v
            let v = group.mul(group.inv(u), s);
            data.coproduct[(s * n + u) * n + v] = ONE;
        }
    }
    data.counit[group.identity()] = ONE;
    FiniteQuantumGroup::from_parts(data)
}

/// `C[Γ]`: the group algebra, basis of translations `λ_s`.
pub fn from_group_algebra(group: &FiniteGroup) -> Result<FiniteQuantumGroup> {
    let n = group.order();
    let e = group.identity();
    let mut data = StructureData {
        name: format!("C[G{n}]"),
        labels: group.labels().iter().map(|l| format!("l_{l}")).collect(),
        mult: vec![ZERO; n * n * n],
        unit: vec![ZERO; n],
        star: vec![ZERO; n * n],
        coproduct: vec![ZERO; n * n * n],
        counit: vec![ONE; n],
        antipode: vec![ZERO; n * n],
        haar: Some(vec![ZERO; n]),
        meta: Vec::new(),
    };
    data.unit[e] = ONE;
    data.haar.as_mut().unwrap()[e] = ONE;
    for s in 0..n {
        for t in 0..n {
            data.mult[(s * n + t) * n + group.mul(s, t)] = ONE;
        }
        data.star[s * n + group.inv(s)] = ONE;
        data.antipode[s * n + group.inv(s)] = ONE;
        data.coproduct[(s * n + s) * n + s] = ONE;
    }
    FiniteQuantumGroup::from_parts(data)
}

/// `G × H` with basis `a ⊗ b` at index `a * dim(H) + b`.
pub fn tensor_product(g: &FiniteQuantumGroup, h: &FiniteQuantumGroup) -> Result<FiniteQuantumGroup> {
    let (dg, dh) = (g.dim(), h.dim());
    let d = dg * dh;
    let idx = |a: usize, b: usize| a * dh + b;
    let mut labels = Vec::with_capacity(d);
    for a in g.labels() {
        for b in h.labels() {
            labels.push(format!("{a}*{b}"));
        }
    }
    let (pg, ph) = (g.to_parts(), h.to_parts());
    let outer = |x: &[C64], y: &[C64]| -> Vec<C64> {
        x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
    };
    let mut mult = vec![ZERO; d * d * d];
    let mut star = vec![ZERO; d * d];
    let mut antipode = vec![ZERO; d * d];
    let mut coproduct = vec![ZERO; d * d * d];
    for a in 0..dg {
        for b in 0..dh {
            let i = idx(a, b);
            for a2 in 0..dg {
                for b2 in 0..dh {
                    let j = idx(a2, b2);
                    for &(p, x) in g.mult_nz(a, a2) {
                        for &(q, y) in h.mult_nz(b, b2) {
                            mult[(i * d + j) * d + idx(p, q)] += x * y;
                        }
                    }
                    star[i * d + j] = pg.star[a * dg + a2] * ph.star[b * dh + b2];
                    antipode[i * d + j] = pg.antipode[a * dg + a2] * ph.antipode[b * dh + b2];
                }
            }
            for &(p, q, x) in g.cop_nz(a) {
                for &(r, s, y) in h.cop_nz(b) {
                    coproduct[(i * d + idx(p, r)) * d + idx(q, s)] += x * y;
                }
            }
        }
    }
    FiniteQuantumGroup::from_parts(StructureData {
        name: format!("{} x {}", g.name(), h.name()),
        labels,
        mult,
        unit: outer(g.unit_vec(), h.unit_vec()),
        star,
        coproduct,
        counit: outer(g.counit_vec(), h.counit_vec()),
        antipode,
        haar: Some(outer(g.haar_vec(), h.haar_vec())),
        meta: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_axioms;
    use crate::linalg::Tolerance;

    #[test]
    fn tensor_of_function_algebras_is_function_algebra_of_product() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let t = tensor_product(
            &from_finite_group(&z2).unwrap(),
            &from_finite_group(&z3).unwrap(),
        )
        .unwrap();
        let direct = from_finite_group(&z2.product(&z3)).unwrap();
        assert_eq!(t.to_parts().mult, direct.to_parts().mult);
        assert_eq!(t.to_parts().coproduct, direct.to_parts().coproduct);
        assert!(verify_axioms(&t, &Tolerance::default()).passed());
    }

    #[test]
    fn mixed_tensor_passes_axioms() {
        let s3 = FiniteGroup::symmetric(3);
        let t = tensor_product(
            &from_group_algebra(&s3).unwrap(),
            &from_finite_group(&FiniteGroup::cyclic(2)).unwrap(),
        )
        .unwrap();
        assert!(verify_axioms(&t, &Tolerance::default()).passed());
        assert!(!t.is_commutative(&Tolerance::default()));
        assert!(t.is_cocommutative(&Tolerance::default()));
    }
}

use serde::Serialize;

use super::FiniteQuantumGroup;
use crate::linalg::{self, Tolerance, C64, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Unit,
    StarInvolution,
    StarAntiMultiplicative,
    CoproductMultiplicative,
    CoproductUnital,
    CoproductStar,
    Coassociativity,
    Counit,
    CounitMultiplicative,
    Antipode,
    HaarUnital,
    HaarInvariant,
    HaarFaithful,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::StarInvolution => "star_involution",
            Axiom::StarAntiMultiplicative => "star_anti_multiplicative",
            Axiom::CoproductMultiplicative => "coproduct_multiplicative",
            Axiom::CoproductUnital => "coproduct_unital",
            Axiom::CoproductStar => "coproduct_star",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::CounitMultiplicative => "counit_multiplicative",
            Axiom::Antipode => "antipode",
            Axiom::HaarUnital => "haar_unital",
            Axiom::HaarInvariant => "haar_invariant",
            Axiom::HaarFaithful => "haar_faithful",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// Residual threshold, `equality_eps` scaled by the largest structure constant.
    pub threshold: f64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} ({:.3e})", c.axiom.name(), c.residual))
            .collect()
    }

    pub fn residual(&self, axiom: Axiom) -> f64 {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .map_or(f64::NAN, |c| c.residual)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }
}

fn diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Residual of every Hopf *-algebra axiom and of the Haar state.
pub fn verify_axioms(g: &FiniteQuantumGroup, tol: &Tolerance) -> AxiomReport {
    let d = g.dim();
    let threshold = tol.equality_eps * g.scale();
    let b: Vec<Vec<C64>> = (0..d).map(|i| g.basis_vec(i)).collect();
    let unit = g.unit_vec().to_vec();
    let products: Vec<Vec<Vec<C64>>> = (0..d)
        .map(|i| (0..d).map(|j| g.mul(&b[i], &b[j])).collect())
        .collect();
    let stars: Vec<Vec<C64>> = b.iter().map(|x| g.star(x)).collect();
    let deltas: Vec<Vec<C64>> = b.iter().map(|x| g.coproduct(x)).collect();

    let mut checks = Vec::new();
    let mut push = |axiom, residual: f64| {
        checks.push(AxiomCheck {
            axiom,
            residual,
            passed: residual <= threshold,
        })
    };

    let mut r = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = g.mul(&products[i][j], &b[k]);
                let rhs = g.mul(&b[i], &products[j][k]);
                r = r.max(diff(&lhs, &rhs));
            }
        }
    }
    push(Axiom::Associativity, r);

    let r = b
        .iter()
        .map(|x| diff(&g.mul(&unit, x), x).max(diff(&g.mul(x, &unit), x)))
        .fold(0.0, f64::max);
    push(Axiom::Unit, r);

    let r = (0..d)
        .map(|i| diff(&g.star(&stars[i]), &b[i]))
        .fold(0.0, f64::max);
    push(Axiom::StarInvolution, r);

    let mut r = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let lhs = g.star(&products[i][j]);
            let rhs = g.mul(&stars[j], &stars[i]);
            r = r.max(diff(&lhs, &rhs));
        }
    }
    push(Axiom::StarAntiMultiplicative, r);

    let mut r = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let lhs = g.coproduct(&products[i][j]);
            let rhs = g.tensor_mul(&deltas[i], &deltas[j]);
            r = r.max(diff(&lhs, &rhs));
        }
    }
    push(Axiom::CoproductMultiplicative, r);

    let mut unit2 = vec![ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            unit2[i * d + j] = unit[i] * unit[j];
        }
    }
    push(Axiom::CoproductUnital, diff(&g.coproduct(&unit), &unit2));

    let mut r = 0.0f64;
    for k in 0..d {
        let lhs = g.coproduct(&stars[k]);
        let mut rhs = vec![ZERO; d * d];
        for &(i, j, c) in g.cop_nz(k) {
            let c = c.conj();
            for p in 0..d {
                if stars[i][p] == ZERO {
                    continue;
                }
                for q in 0..d {
                    rhs[p * d + q] += c * stars[i][p] * stars[j][q];
                }
            }
        }
        r = r.max(diff(&lhs, &rhs));
    }
    push(Axiom::CoproductStar, r);

    let mut r = 0.0f64;
    for k in 0..d {
        let mut lhs = vec![ZERO; d * d * d];
        let mut rhs = vec![ZERO; d * d * d];
        for &(i, j, c) in g.cop_nz(k) {
            for &(p, q, e) in g.cop_nz(i) {
                lhs[(p * d + q) * d + j] += c * e;
            }
            for &(p, q, e) in g.cop_nz(j) {
                rhs[(i * d + p) * d + q] += c * e;
            }
        }
        r = r.max(diff(&lhs, &rhs));
    }
    push(Axiom::Coassociativity, r);

    let eps = g.counit_vec();
    let r = (0..d)
        .map(|k| {
            let right = g.slice_right_leg(&b[k], eps);
            let left = g.slice_left_leg(eps, &b[k]);
            diff(&right, &b[k]).max(diff(&left, &b[k]))
        })
        .fold(0.0, f64::max);
    push(Axiom::Counit, r);

    let mut r = (g.counit(&unit) - 1.0).norm();
    for i in 0..d {
        for j in 0..d {
            r = r.max((g.counit(&products[i][j]) - eps[i] * eps[j]).norm());
        }
    }
    push(Axiom::CounitMultiplicative, r);

    let mut r = 0.0f64;
    let sb: Vec<Vec<C64>> = b.iter().map(|x| g.antipode(x)).collect();
    for k in 0..d {
        let mut left = vec![ZERO; d];
        let mut right = vec![ZERO; d];
        for &(i, j, c) in g.cop_nz(k) {
            for (o, v) in left.iter_mut().zip(g.mul(&sb[i], &b[j])) {
                *o += c * v;
            }
            for (o, v) in right.iter_mut().zip(g.mul(&b[i], &sb[j])) {
                *o += c * v;
            }
        }
        let target: Vec<C64> = unit.iter().map(|u| u * eps[k]).collect();
        r = r.max(diff(&left, &target)).max(diff(&right, &target));
    }
    push(Axiom::Antipode, r);

    let h = g.haar_vec();
    push(Axiom::HaarUnital, (g.haar(&unit) - 1.0).norm());

    let r = (0..d)
        .map(|k| {
            let target: Vec<C64> = unit.iter().map(|u| u * h[k]).collect();
            let left = g.slice_right_leg(&b[k], h);
            let right = g.slice_left_leg(h, &b[k]);
            diff(&left, &target).max(diff(&right, &target))
        })
        .fold(0.0, f64::max);
    push(Axiom::HaarInvariant, r);

    // Faithful and positive: the Gram form h(x*y) is hermitian positive definite.
    let gram = g.haar_gram();
    let herm = linalg::max_abs(&(&gram - gram.adjoint()));
    let faithful = match linalg::eig_hermitian(&gram, &Tolerance {
        rank_cutoff: tol.rank_cutoff,
        equality_eps: tol.equality_eps.max(herm * 2.0),
    }) {
        Ok((vals, _)) => {
            let top = vals.last().copied().unwrap_or(0.0).max(1.0);
            let floor = tol.rank_cutoff * top;
            if vals[0] > floor {
                herm
            } else {
                herm.max(floor - vals[0]).max(threshold * 2.0)
            }
        }
        Err(_) => f64::INFINITY,
    };
    push(Axiom::HaarFaithful, faithful);

    AxiomReport { checks, threshold }
}

//! Discrete crossed products `G ⋊ Γ̂` for a finite group `Γ` acting on a
//! finite quantum group by Hopf *-automorphisms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::dual::{wedderburn, IrrTable};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{verify_axioms, AxiomReport, FiniteQuantumGroup, StructureData};
use crate::linalg::{self, Mat, Subspace, Tolerance, Vector, C64, ONE, ZERO};

/// `Γ` acting on `L^∞(G)`; `maps[s]` has `α_s(b_i)` as column `i`.
#[derive(Clone, Debug)]
pub struct HopfAction {
    group: FiniteGroup,
    group_name: String,
    maps: Vec<Mat>,
    fingerprint: String,
}

impl HopfAction {
    /// Every `α_s` is the identity.
    pub fn trivial(g: &FiniteQuantumGroup, group: FiniteGroup, group_name: impl Into<String>) -> Self {
        let maps = vec![Mat::identity(g.dim(), g.dim()); group.order()];
        HopfAction {
            group,
            group_name: group_name.into(),
            maps,
            fingerprint: "trivial".into(),
        }
    }

    /// `α_s(b_i) = b_{perms[s][i]}`. For `C[K]` or `C(K)` built from a group
    /// `K`, pass automorphisms of `K` as the permutations.
    pub fn permutation(
        g: &FiniteQuantumGroup,
        group: FiniteGroup,
        group_name: impl Into<String>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = g.dim();
        if perms.len() != group.order() {
            return Err(Error::Precondition(format!(
                "{} permutations given for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        let mut maps = Vec::with_capacity(perms.len());
        for p in &perms {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&k| k >= d || std::mem::replace(&mut seen[k], true)) {
                return Err(Error::Precondition(format!("{p:?} is not a permutation of {d} basis vectors")));
            }
            let mut m = Mat::zeros(d, d);
            for (i, &k) in p.iter().enumerate() {
                m[(k, i)] = ONE;
            }
            maps.push(m);
        }
        let fingerprint = format!(
            "permutation {}",
            perms
                .iter()
                .map(|p| p.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        );
        Ok(HopfAction {
            group,
            group_name: group_name.into(),
            maps,
            fingerprint,
        })
    }

    /// Cyclic `Z_n` acting through the powers of one basis permutation.
    pub fn cyclic_permutation(g: &FiniteQuantumGroup, n: usize, generator: Vec<usize>) -> Result<Self> {
        let d = g.dim();
        let mut perms = vec![(0..d).collect::<Vec<_>>()];
        for k in 1..n {
            let prev: &Vec<usize> = &perms[k - 1];
            if generator.len() != d || generator.iter().any(|&j| j >= d) {
                return Err(Error::Precondition(format!("{generator:?} is not a permutation of {d} basis vectors")));
            }
            let next = prev.iter().map(|&i| generator[i]).collect();
            perms.push(next);
        }
        Self::permutation(g, FiniteGroup::cyclic(n), format!("Z{n}"), perms)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn map(&self, s: usize) -> &Mat {
        &self.maps[s]
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    fn apply(&self, s: usize, x: &[C64]) -> Vec<C64> {
        (&self.maps[s] * Vector::from_column_slice(x)).iter().copied().collect()
    }

    /// Checks every invariant; the first failure is returned with its name.
    pub fn verify(&self, g: &FiniteQuantumGroup, tol: &Tolerance) -> Result<()> {
        let d = g.dim();
        let eps = tol.equality_eps * g.scale();
        let fail = |invariant: &str, element: usize, residual: f64| {
            if residual > eps {
                Err(Error::InvalidAction {
                    invariant: invariant.into(),
                    element,
                    residual,
                })
            } else {
                Ok(())
            }
        };
        let diff = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        for (s, m) in self.maps.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return fail("shape", s, f64::INFINITY);
            }
            let sv = linalg::singular_values(m);
            let smin = sv.last().copied().unwrap_or(0.0);
            fail("invertible", s, if smin > tol.rank_cutoff { 0.0 } else { f64::INFINITY })?;
            fail("unital", s, diff(&self.apply(s, g.unit_vec()), g.unit_vec()))?;
            let images: Vec<Vec<C64>> = (0..d).map(|i| self.apply(s, &g.basis_vec(i))).collect();
            let mut r = 0.0f64;
            for i in 0..d {
                for j in 0..d {
                    let lhs = self.apply(s, &g.mul(&g.basis_vec(i), &g.basis_vec(j)));
                    r = r.max(diff(&lhs, &g.mul(&images[i], &images[j])));
                }
            }
            fail("multiplicative", s, r)?;
            let r = (0..d)
                .map(|i| diff(&self.apply(s, &g.star(&g.basis_vec(i))), &g.star(&images[i])))
                .fold(0.0, f64::max);
            fail("star", s, r)?;
            // (α⊗α)Δ(b_i) = Δ(α b_i)
            let mut r = 0.0f64;
            for i in 0..d {
                let delta = g.coproduct(&g.basis_vec(i));
                let lhs = g.coproduct(&images[i]);
                let mut rhs = vec![ZERO; d * d];
                for a in 0..d {
                    for b in 0..d {
                        let c = delta[a * d + b];
                        if c == ZERO {
                            continue;
                        }
                        for p in 0..d {
                            for q in 0..d {
                                rhs[p * d + q] += c * m[(p, a)] * m[(q, b)];
                            }
                        }
                    }
                }
                r = r.max(diff(&lhs, &rhs));
            }
            fail("coproduct", s, r)?;
            let r = images
                .iter()
                .zip(g.haar_vec())
                .map(|(img, h)| (g.haar(img) - h).norm())
                .fold(0.0, f64::max);
            fail("haar", s, r)?;
        }
        let e = self.group.identity();
        fail("identity", e, linalg::max_abs(&(&self.maps[e] - Mat::identity(d, d))))?;
        for s in 0..self.group.order() {
            for t in 0..self.group.order() {
                let r = linalg::max_abs(&(&self.maps[s] * &self.maps[t] - &self.maps[self.group.mul(s, t)]));
                fail("homomorphism", s, r)?;
            }
        }
        Ok(())
    }
}

/// How `(a⊙s)(b⊙t)` is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductRule {
    /// `a α_s(b) ⊙ st`
    Standard,
    /// `a α_s(b) ⊙ s⁻¹t`
    Inverted,
}

impl ProductRule {
    pub fn name(self) -> &'static str {
        match self {
            ProductRule::Standard => "standard",
            ProductRule::Inverted => "inverted",
        }
    }

    fn target(self, group: &FiniteGroup, s: usize, t: usize) -> usize {
        match self {
            ProductRule::Standard => group.mul(s, t),
            ProductRule::Inverted => group.mul(group.inv(s), t),
        }
    }
}

impl fmt::Display for ProductRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleOutcome {
    pub rule: ProductRule,
    pub passed: bool,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub group: FiniteQuantumGroup,
    pub rule: ProductRule,
    /// Axiom outcome for each candidate rule, standard first.
    pub outcomes: Vec<RuleOutcome>,
}

/// Builds the product under each rule and keeps the first that passes every
/// axiom, preferring the standard rule.
pub fn build_crossed_product(g: &FiniteQuantumGroup, action: &HopfAction, tol: &Tolerance) -> Result<CrossedProduct> {
    action.verify(g, tol)?;
    let mut outcomes = Vec::new();
    let mut chosen = None;
    let mut first_report: Option<AxiomReport> = None;
    for rule in [ProductRule::Standard, ProductRule::Inverted] {
        let q = assemble(g, action, rule)?;
        let report = verify_axioms(&q, tol);
        outcomes.push(RuleOutcome {
            rule,
            passed: report.passed(),
            max_residual: report.max_residual(),
            failures: report.failures(),
        });
        if report.passed() && chosen.is_none() {
            chosen = Some((q, rule));
        } else if first_report.is_none() {
            first_report = Some(report);
        }
    }
    match chosen {
        Some((q, rule)) => Ok(CrossedProduct {
            group: q.with_meta("product_rule", rule.name()),
            rule,
            outcomes,
        }),
        None => Err(Error::AxiomFailure(Box::new(first_report.expect("both rules failed")))),
    }
}

fn assemble(g: &FiniteQuantumGroup, action: &HopfAction, rule: ProductRule) -> Result<FiniteQuantumGroup> {
    let d = g.dim();
    let gamma = &action.group;
    let m = gamma.order();
    let n = d * m;
    let e = gamma.identity();
    let idx = |s: usize, i: usize| s * d + i;

    let mut mult = vec![ZERO; n * n * n];
    for s in 0..m {
        for j in 0..d {
            let moved = action.apply(s, &g.basis_vec(j));
            for i in 0..d {
                let prod = g.mul(&g.basis_vec(i), &moved);
                for t in 0..m {
                    let u = rule.target(gamma, s, t);
                    let row = (idx(s, i) * n + idx(t, j)) * n;
                    for (k, c) in prod.iter().enumerate() {
                        mult[row + idx(u, k)] = *c;
                    }
                }
            }
        }
    }
    let product = |x: &[C64], y: &[C64]| {
        let mut out = vec![ZERO; n];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| **c != ZERO) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| **c != ZERO) {
                let row = (a * n + b) * n;
                for k in 0..n {
                    out[k] += xa * yb * mult[row + k];
                }
            }
        }
        out
    };

    let mut unit = vec![ZERO; n];
    unit[idx(e, 0)..idx(e, 0) + d].copy_from_slice(g.unit_vec());
    let mut star = vec![ZERO; n * n];
    let mut coproduct = vec![ZERO; n * n * n];
    let mut counit = vec![ZERO; n];
    let mut antipode = vec![ZERO; n * n];
    let mut haar = vec![ZERO; n];
    for s in 0..m {
        let sinv = gamma.inv(s);
        let mut shift = vec![ZERO; n];
        shift[idx(sinv, 0)..idx(sinv, 0) + d].copy_from_slice(g.unit_vec());
        for i in 0..d {
            let b = g.basis_vec(i);
            let a = idx(s, i);
            // (a⊙s)* = α_{s⁻¹}(a*) ⊙ s⁻¹
            let st = action.apply(sinv, &g.star(&b));
            star[a * n + idx(sinv, 0)..a * n + idx(sinv, 0) + d].copy_from_slice(&st);
            let delta = g.coproduct(&b);
            for p in 0..d {
                for q in 0..d {
                    coproduct[(a * n + idx(s, p)) * n + idx(s, q)] = delta[p * d + q];
                }
            }
            counit[a] = g.counit_vec()[i];
            // S(a⊙s) = (1⊙s⁻¹)(S(a)⊙e)
            let mut sa = vec![ZERO; n];
            sa[idx(e, 0)..idx(e, 0) + d].copy_from_slice(&g.antipode(&b));
            antipode[a * n..(a + 1) * n].copy_from_slice(&product(&shift, &sa));
            if s == e {
                haar[a] = g.haar_vec()[i];
            }
        }
    }

    let labels = (0..m)
        .flat_map(|s| g.labels().iter().map(move |l| format!("{l}@{}", gamma.labels()[s])))
        .collect();
    FiniteQuantumGroup::from_parts(StructureData {
        name: format!("{} x| {}", g.name(), action.group_name),
        labels,
        mult,
        unit,
        star,
        coproduct,
        counit,
        antipode,
        haar: Some(haar),
        meta: vec![
            ("factor".into(), g.name().into()),
            ("acting_group".into(), action.group_name.clone()),
            ("action".into(), action.fingerprint.clone()),
        ],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockMatch {
    pub product_block: usize,
    pub factor_block: usize,
    /// Index of `s ∈ Γ`.
    pub twist: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossedIrrReport {
    pub factor_dims: Vec<usize>,
    pub product_dims: Vec<usize>,
    pub multiset_matches: bool,
    pub matches: Vec<BlockMatch>,
    /// `max |h(a⊙s) − h_G(a)[s = e]|`.
    pub haar_fiber_residual: f64,
}

/// Each irreducible of the product is `s·u^π` for a unique `(π, s)`, compared
/// as coefficient subspaces.
pub fn verify_crossed_irr(
    table_g: &IrrTable,
    product: &Arc<FiniteQuantumGroup>,
    action: &HopfAction,
    tol: &Tolerance,
    seed: u64,
) -> Result<(IrrTable, CrossedIrrReport)> {
    let g = table_g.owner();
    let d = g.dim();
    let gamma = action.group();
    let m = gamma.order();
    if product.dim() != d * m {
        return Err(Error::Precondition(format!(
            "product has dimension {}, expected {}",
            product.dim(),
            d * m
        )));
    }
    let table = wedderburn(product, tol, seed)?;
    let factor_dims = table_g.dims();
    let product_dims = table.dims();
    let mut expected: Vec<usize> = factor_dims.iter().flat_map(|&k| std::iter::repeat_n(k, m)).collect();
    let mut got = product_dims.clone();
    expected.sort_unstable();
    got.sort_unstable();
    let multiset_matches = expected == got;
    if !multiset_matches {
        return Err(Error::TheoremViolation(format!(
            "irreducible dimensions {got:?} are not {m} copies of {factor_dims:?}"
        )));
    }

    let e = gamma.identity();
    let embed = |s: usize, a: &[C64]| {
        let mut v = vec![ZERO; d * m];
        v[s * d..(s + 1) * d].copy_from_slice(a);
        v
    };
    let span = |vs: Vec<Vec<C64>>| {
        let vs: Vec<Vector> = vs.into_iter().map(|v| Vector::from_column_slice(&v)).collect();
        Subspace::span_of(d * m, &vs, tol)
    };
    // candidate spaces span{(1⊙s)(u^π_ij ⊙ e)}
    let mut candidates = Vec::new();
    for blk in table_g.blocks() {
        let n = blk.n();
        for s in 0..m {
            let shift = embed(s, g.unit_vec());
            let vs = (0..n * n)
                .map(|ij| product.mul(&shift, &embed(e, &blk.coefficient(ij / n, ij % n))))
                .collect();
            candidates.push((blk.index(), s, n, span(vs)));
        }
    }
    let mut used = vec![false; candidates.len()];
    let mut matches = Vec::new();
    for blk in table.blocks() {
        let n = blk.n();
        let space = span((0..n * n).map(|ij| blk.coefficient(ij / n, ij % n)).collect());
        let found = candidates
            .iter()
            .enumerate()
            .filter(|(c, cand)| !used[*c] && cand.2 == n)
            .map(|(c, cand)| (c, cand.3.distance(&space)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match found {
            Some((c, dist)) if dist <= tol.equality_eps.sqrt() => {
                used[c] = true;
                matches.push(BlockMatch {
                    product_block: blk.index(),
                    factor_block: candidates[c].0,
                    twist: candidates[c].1,
                    distance: dist,
                });
            }
            other => {
                return Err(Error::TheoremViolation(format!(
                    "product block {} matches no twisted corepresentation (closest distance {:.3e})",
                    blk.label(),
                    other.map_or(f64::INFINITY, |o| o.1)
                )))
            }
        }
    }

    let h = product.haar_vec();
    let haar_fiber_residual = (0..m)
        .flat_map(|s| (0..d).map(move |i| (s, i)))
        .map(|(s, i)| {
            let want = if s == e { g.haar_vec()[i] } else { ZERO };
            (h[s * d + i] - want).norm()
        })
        .fold(0.0, f64::max);
    Ok((
        table,
        CrossedIrrReport {
            factor_dims,
            product_dims,
            multiset_matches,
            matches,
            haar_fiber_residual,
        },
    ))
}

//! Left ideals of `L¹(G)`, their hulls in the irreducible representations,
//! the ideals `I(E)` and the annihilator dualities with `L^∞(G)`.
//!
//! In finite dimension every Fourier transform is finitely supported, so the
//! ideal generated by compactly supported elements vanishing on a hull
//! coincides with `I(E)`; only `I(E)` is represented.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::dual::{Functional, IrrTable};
use crate::error::{Error, Result};
use crate::hopf::{same_owner, FiniteQuantumGroup};
use crate::linalg::{self, Mat, Subspace, Tolerance, Vector, C64, ZERO};

/// A left ideal of `L¹(G)`, stored as a subspace of covectors.
#[derive(Clone, Debug)]
pub struct IdealSubspace {
    owner: Arc<FiniteQuantumGroup>,
    space: Subspace,
}

/// Matrix of `v ↦ b_k * v` on covectors.
fn left_conv_matrix(g: &FiniteQuantumGroup, k: usize) -> Mat {
    let bk = g.basis_vec(k);
    g.matrix_of(|v| g.convolve(&bk, v))
}

fn right_conv_matrix(g: &FiniteQuantumGroup, k: usize) -> Mat {
    let bk = g.basis_vec(k);
    g.matrix_of(|v| g.convolve(v, &bk))
}

fn closure_residual(g: &FiniteQuantumGroup, space: &Subspace, conv: impl Fn(&FiniteQuantumGroup, usize) -> Mat) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..g.dim() {
        let image = conv(g, k) * space.basis();
        for v in image.column_iter() {
            worst = worst.max(space.distance_to(&v.into_owned()));
        }
    }
    worst
}

impl IdealSubspace {
    pub fn new(owner: &Arc<FiniteQuantumGroup>, space: Subspace, tol: &Tolerance) -> Result<Self> {
        if space.ambient_dim() != owner.dim() {
            return Err(Error::AmbientMismatch {
                left: space.ambient_dim(),
                right: owner.dim(),
            });
        }
        let ideal = IdealSubspace {
            owner: Arc::clone(owner),
            space,
        };
        let residual = ideal.left_closure_residual();
        if residual > tol.equality_eps * owner.scale() {
            return Err(Error::NotLeftIdeal { residual });
        }
        Ok(ideal)
    }

    pub fn zero(owner: &Arc<FiniteQuantumGroup>) -> Self {
        IdealSubspace {
            owner: Arc::clone(owner),
            space: Subspace::zero(owner.dim()),
        }
    }

    pub fn full(owner: &Arc<FiniteQuantumGroup>) -> Self {
        IdealSubspace {
            owner: Arc::clone(owner),
            space: Subspace::full(owner.dim()),
        }
    }

    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        &self.owner
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, f: &Functional, tol: &Tolerance) -> bool {
        self.space
            .contains_vector(&Vector::from_column_slice(f.covec()), tol)
    }

    /// Largest distance of `b_k * v` from the ideal over basis `b_k`, `v`.
    pub fn left_closure_residual(&self) -> f64 {
        closure_residual(&self.owner, &self.space, left_conv_matrix)
    }

    pub fn right_closure_residual(&self) -> f64 {
        closure_residual(&self.owner, &self.space, right_conv_matrix)
    }

    pub fn approx_eq(&self, other: &IdealSubspace, tol: &Tolerance) -> bool {
        self.space.approx_eq(&other.space, tol)
    }
}

/// Smallest left ideal containing the generators.
pub fn left_ideal_from_generators(
    owner: &Arc<FiniteQuantumGroup>,
    gens: &[Functional],
    tol: &Tolerance,
) -> Result<IdealSubspace> {
    if gens.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    for f in gens {
        same_owner(owner, f.owner())?;
    }
    let d = owner.dim();
    let mults: Vec<Mat> = (0..d).map(|k| left_conv_matrix(owner, k)).collect();
    let vs: Vec<Vector> = gens
        .iter()
        .map(|f| Vector::from_column_slice(f.covec()))
        .collect();
    let mut space = Subspace::span_of(d, &vs, tol);
    loop {
        let mut blocks = vec![space.basis().clone()];
        blocks.extend(mults.iter().map(|m| m * space.basis()));
        let next = linalg::range(&linalg::hstack(&blocks, d), tol);
        if next.dim() == space.dim() {
            return Ok(IdealSubspace {
                owner: Arc::clone(owner),
                space: next,
            });
        }
        space = next;
    }
}

/// A choice of subspace `E_π ⊆ C^{n_π}` for every irreducible block.
#[derive(Clone, Debug)]
pub struct Hull {
    parts: Vec<Subspace>,
}

impl Hull {
    pub fn new(table: &IrrTable, parts: Vec<Subspace>) -> Result<Self> {
        if parts.len() != table.blocks().len() {
            return Err(Error::AmbientMismatch {
                left: parts.len(),
                right: table.blocks().len(),
            });
        }
        for (p, b) in parts.iter().zip(table.blocks()) {
            if p.ambient_dim() != b.n() {
                return Err(Error::AmbientMismatch {
                    left: p.ambient_dim(),
                    right: b.n(),
                });
            }
        }
        Ok(Hull { parts })
    }

    pub fn zero(table: &IrrTable) -> Self {
        Hull {
            parts: table.blocks().iter().map(|b| Subspace::zero(b.n())).collect(),
        }
    }

    pub fn full(table: &IrrTable) -> Self {
        Hull {
            parts: table.blocks().iter().map(|b| Subspace::full(b.n())).collect(),
        }
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, block: usize) -> &Subspace {
        &self.parts[block]
    }

    /// `dim E_π` per block.
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    /// Componentwise containment `self ⊇ other`.
    pub fn contains(&self, other: &Hull, tol: &Tolerance) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.contains(b, tol))
    }

    pub fn approx_eq(&self, other: &Hull, tol: &Tolerance) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Text form: one header per block with its label, `n_π` and `dim E_π`,
    /// followed by the `n_π` rows of an orthonormal basis matrix whose
    /// columns span `E_π`, entries written `re,im`.
    pub fn to_text(&self, table: &IrrTable) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hull {}", table.owner().name());
        let _ = writeln!(out, "blocks {}", self.parts.len());
        for (p, b) in self.parts.iter().zip(table.blocks()) {
            let _ = writeln!(out, "block {} n {} dim {}", b.label(), b.n(), p.dim());
            let m = canonical_basis(p);
            for i in 0..m.nrows() * usize::from(m.ncols() > 0) {
                let row: Vec<String> = (0..m.ncols())
                    .map(|j| format!("{},{}", fmt_num(m[(i, j)].re), fmt_num(m[(i, j)].im)))
                    .collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
        }
        out
    }

    pub fn parse(text: &str, table: &IrrTable, tol: &Tolerance) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut parts = Vec::new();
        while let Some((no, line)) = lines.next() {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.first().copied() {
                Some("hull") | Some("blocks") => continue,
                Some("block") => {
                    let (n, dim) = match words.as_slice() {
                        [_, _, "n", n, "dim", dim] => (n.parse::<usize>(), dim.parse::<usize>()),
                        _ => return Err(Error::Parse { line: no, msg: "expected: block <label> n <n> dim <k>".into() }),
                    };
                    let (n, dim) = match (n, dim) {
                        (Ok(n), Ok(k)) if k <= n => (n, k),
                        _ => return Err(Error::Parse { line: no, msg: "bad block header".into() }),
                    };
                    let mut m = Mat::zeros(n, dim);
                    if dim > 0 {
                        for i in 0..n {
                            let (rno, row) = lines.next().ok_or(Error::Parse {
                                line: no,
                                msg: "missing basis rows".into(),
                            })?;
                            let entries: Vec<&str> = row.split_whitespace().collect();
                            if entries.len() != dim {
                                return Err(Error::Parse { line: rno, msg: format!("expected {dim} entries") });
                            }
                            for (j, e) in entries.iter().enumerate() {
                                m[(i, j)] = parse_complex(e).ok_or(Error::Parse {
                                    line: rno,
                                    msg: format!("bad entry {e:?}"),
                                })?;
                            }
                        }
                    }
                    parts.push(Subspace::span(&m, tol));
                }
                _ => return Err(Error::Parse { line: no, msg: format!("unexpected line {line:?}") }),
            }
        }
        Hull::new(table, parts)
    }
}

fn parse_complex(s: &str) -> Option<C64> {
    let (re, im) = s.split_once(',')?;
    let z = C64::new(re.parse().ok()?, im.parse().ok()?);
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

fn fmt_num(v: f64) -> String {
    let v = if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{v:.12}")
}

/// Orthonormal basis read off the projector column by column (each new
/// vector with a positive leading entry), so printed hulls depend only on
/// the subspace and not on how it was computed.
pub(crate) fn canonical_basis(s: &Subspace) -> Mat {
    let mut residual = s.projector();
    let n = residual.nrows();
    let mut cols: Vec<Vector> = Vec::new();
    for i in 0..n {
        if cols.len() == s.dim() {
            break;
        }
        let col = residual.column(i).into_owned();
        if col[i].norm() > 1e-8 {
            let phase = col[i] / col[i].norm();
            let v = col.unscale(col.norm()).map(|z| z / phase);
            residual -= &v * v.adjoint();
            cols.push(v);
        }
    }
    let mut m = Mat::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// `E_π = ⋂_{f ∈ I} ker π(f)`.
pub fn hull_of(table: &IrrTable, ideal: &IdealSubspace, tol: &Tolerance) -> Result<Hull> {
    same_owner(table.owner(), ideal.owner())?;
    let parts = table
        .blocks()
        .iter()
        .map(|b| {
            let mats: Vec<Mat> = ideal
                .space
                .basis_vectors()
                .map(|f| b.extract_covec(f.as_slice()))
                .collect();
            if mats.is_empty() {
                Subspace::full(b.n())
            } else {
                linalg::kernel(&linalg::vstack(&mats, b.n()), tol)
            }
        })
        .collect();
    Hull::new(table, parts)
}

/// `I(E) = {f : π(f) E_π = 0 for every π}`.
pub fn ideal_i(table: &IrrTable, hull: &Hull, tol: &Tolerance) -> IdealSubspace {
    let d = table.owner().dim();
    let mut rows: Vec<Mat> = Vec::new();
    for (b, e) in table.blocks().iter().zip(&hull.parts) {
        let n = b.n();
        // (π(f) η)_i = Σ_j f(u_ij) η_j is linear in f
        for eta in e.basis_vectors() {
            let mut m = Mat::zeros(n, d);
            for i in 0..n {
                for j in 0..n {
                    if eta[j] == ZERO {
                        continue;
                    }
                    for k in 0..d {
                        m[(i, k)] += b.extract_matrix()[(i * n + j, k)] * eta[j];
                    }
                }
            }
            rows.push(m);
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(d)
    } else {
        linalg::kernel(&linalg::vstack(&rows, d), tol)
    };
    IdealSubspace {
        owner: Arc::clone(table.owner()),
        space,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthesisReport {
    pub ideal_dim: usize,
    pub synthesized_dim: usize,
    /// Distance between `I` and `I(hull(I))` as subspaces.
    pub residual: f64,
    pub holds: bool,
}

/// Checks `I = I(hull(I))`.
pub fn verify_synthesis(table: &IrrTable, ideal: &IdealSubspace, tol: &Tolerance) -> Result<SynthesisReport> {
    let hull = hull_of(table, ideal, tol)?;
    let back = ideal_i(table, &hull, tol);
    let residual = ideal.space.distance(&back.space);
    Ok(SynthesisReport {
        ideal_dim: ideal.dim(),
        synthesized_dim: back.dim(),
        residual,
        holds: ideal.dim() == back.dim() && residual <= tol.equality_eps,
    })
}

/// `L^∞(G, E) = span{ Σ_j η_j u_ij : η ∈ E_π, all i }`.
pub fn coefficient_space(table: &IrrTable, hull: &Hull, tol: &Tolerance) -> Subspace {
    let d = table.owner().dim();
    let mut vs = Vec::new();
    for (b, e) in table.blocks().iter().zip(&hull.parts) {
        let n = b.n();
        for eta in e.basis_vectors() {
            for i in 0..n {
                let mut v = Vector::zeros(d);
                for j in 0..n {
                    v += Vector::from_column_slice(&b.coefficient(i, j)) * eta[j];
                }
                vs.push(v);
            }
        }
    }
    Subspace::span_of(d, &vs, tol)
}

/// `{x ∈ L^∞ : f(x) = 0 for all f ∈ I}` under the bilinear pairing.
pub fn annihilator(ideal: &IdealSubspace, tol: &Tolerance) -> Subspace {
    let d = ideal.owner.dim();
    if ideal.dim() == 0 {
        return Subspace::full(d);
    }
    linalg::kernel(&ideal.space.basis().transpose(), tol)
}

/// `⋂_{f ∈ I} ker(x ↦ (id ⊗ f)Δ(x))`.
pub fn slice_kernel(ideal: &IdealSubspace, tol: &Tolerance) -> Subspace {
    let g = &ideal.owner;
    let d = g.dim();
    let maps: Vec<Mat> = ideal
        .space
        .basis_vectors()
        .map(|f| g.matrix_of(|x| g.slice_right_leg(x, f.as_slice())))
        .collect();
    if maps.is_empty() {
        return Subspace::full(d);
    }
    linalg::kernel(&linalg::vstack(&maps, d), tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub annihilator_dim: usize,
    pub coefficient_dim: usize,
    pub slice_kernel_dim: usize,
    /// Pairwise subspace distances: annihilator/coefficients,
    /// annihilator/slice kernel, coefficients/slice kernel.
    pub residuals: [f64; 3],
    pub holds: bool,
    #[serde(skip)]
    pub annihilator: Subspace,
    #[serde(skip)]
    pub coefficients: Subspace,
    #[serde(skip)]
    pub slice_kernel: Subspace,
}

/// Compares `I(E)^⊥`, `L^∞(G, E)` and the joint kernel of the slice maps of `I(E)`.
pub fn annihilator_dualities(table: &IrrTable, hull: &Hull, tol: &Tolerance) -> DualityReport {
    let ideal = ideal_i(table, hull, tol);
    let a = annihilator(&ideal, tol);
    let b = coefficient_space(table, hull, tol);
    let c = slice_kernel(&ideal, tol);
    let residuals = [a.distance(&b), a.distance(&c), b.distance(&c)];
    let holds = a.dim() == b.dim() && b.dim() == c.dim() && residuals.iter().all(|r| *r <= tol.equality_eps);
    DualityReport {
        annihilator_dim: a.dim(),
        coefficient_dim: b.dim(),
        slice_kernel_dim: c.dim(),
        residuals,
        holds,
        annihilator: a,
        coefficients: b,
        slice_kernel: c,
    }
}

/// For a two-sided ideal, whether every hull component is `0` or all of `C^{n_π}`.
pub fn two_sided_hull_check(table: &IrrTable, ideal: &IdealSubspace, tol: &Tolerance) -> Result<bool> {
    let residual = ideal.right_closure_residual();
    if residual > tol.equality_eps * ideal.owner.scale() {
        return Err(Error::NotTwoSided { residual });
    }
    let hull = hull_of(table, ideal, tol)?;
    Ok(hull
        .parts
        .iter()
        .zip(table.blocks())
        .all(|(e, b)| e.dim() == 0 || e.dim() == b.n()))
}

/// The hull with `E_π = C^{n_π}` on the selected blocks and `0` elsewhere.
pub fn block_hull(table: &IrrTable, selected: &[usize]) -> Hull {
    Hull {
        parts: table
            .blocks()
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if selected.contains(&k) {
                    Subspace::full(b.n())
                } else {
                    Subspace::zero(b.n())
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::wedderburn;
    use crate::group::FiniteGroup;
    use crate::hopf::{from_finite_group, from_group_algebra};

    fn functional_span(owner: &Arc<FiniteQuantumGroup>, fs: &[Vec<C64>], tol: &Tolerance) -> Subspace {
        let vs: Vec<Vector> = fs.iter().map(|f| Vector::from_column_slice(f)).collect();
        Subspace::span_of(owner.dim(), &vs, tol)
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn setup_group_algebra(g: &FiniteGroup) -> (Arc<FiniteQuantumGroup>, IrrTable) {
        let q = Arc::new(from_group_algebra(g).unwrap());
        let t = wedderburn(&q, &Tolerance::default(), 0).unwrap();
        (q, t)
    }

    #[test]
    fn generators_on_z2() {
        let tol = Tolerance::default();
        let (q, t) = setup_group_algebra(&FiniteGroup::cyclic(2));
        let f = Functional::new(&q, vec![c(1.0), c(0.0)]).unwrap();
        let ideal = left_ideal_from_generators(&q, &[f], &tol).unwrap();
        assert_eq!(ideal.dim(), 1);
        let hull = hull_of(&t, &ideal, &tol).unwrap();
        assert_eq!(hull.dims(), vec![0, 1]);
        let back = ideal_i(&t, &hull, &tol);
        assert!(back.approx_eq(&ideal, &tol));
        let eps = left_ideal_from_generators(&q, &[Functional::counit(&q)], &tol).unwrap();
        assert_eq!(eps.dim(), 2);
        let zero = left_ideal_from_generators(&q, &[Functional::new(&q, vec![c(0.0); 2]).unwrap()], &tol).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(left_ideal_from_generators(&q, &[], &tol).is_err());
    }

    #[test]
    fn trivial_hulls() {
        let tol = Tolerance::default();
        let q = Arc::new(from_finite_group(&FiniteGroup::symmetric(3)).unwrap());
        let t = wedderburn(&q, &tol, 0).unwrap();
        assert_eq!(hull_of(&t, &IdealSubspace::full(&q), &tol).unwrap().dims(), vec![0, 0, 0]);
        assert_eq!(hull_of(&t, &IdealSubspace::zero(&q), &tol).unwrap().dims(), vec![1, 1, 2]);
        assert_eq!(ideal_i(&t, &Hull::zero(&t), &tol).dim(), 6);
        assert_eq!(ideal_i(&t, &Hull::full(&t), &tol).dim(), 0);
    }

    #[test]
    fn dualities_on_alternating_subgroup() {
        let tol = Tolerance::default();
        let s3 = FiniteGroup::symmetric(3);
        let (q, t) = setup_group_algebra(&s3);
        let hull = block_hull(&t, &[0, 3, 4]);
        let r = annihilator_dualities(&t, &hull, &tol);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.annihilator_dim, 3);
        let expected = functional_span(&q, &[0, 3, 4].map(|s| q.basis_vec(s)), &tol);
        assert!(r.annihilator.approx_eq(&expected, &tol));
        for h in [Hull::zero(&t), Hull::full(&t)] {
            assert!(annihilator_dualities(&t, &h, &tol).holds);
        }
    }

    #[test]
    fn two_sided_checks() {
        let tol = Tolerance::default();
        let q = Arc::new(from_finite_group(&FiniteGroup::symmetric(3)).unwrap());
        let t = wedderburn(&q, &tol, 0).unwrap();
        assert!(two_sided_hull_check(&t, &IdealSubspace::full(&q), &tol).unwrap());
        // kernel of evaluation at the unit: f(1) = 0
        let aug = ideal_i(&t, &block_hull(&t, &[0]), &tol);
        assert_eq!(aug.dim(), 5);
        assert!(two_sided_hull_check(&t, &aug, &tol).unwrap());
        // rank-one kernel in the 2-dim block gives a one-sided ideal
        let mut parts: Vec<Subspace> = t.blocks().iter().map(|b| Subspace::zero(b.n())).collect();
        parts[2] = Subspace::span(&Mat::from_column_slice(2, 1, &[c(1.0), c(0.0)]), &tol);
        let one_sided = ideal_i(&t, &Hull::new(&t, parts).unwrap(), &tol);
        assert!(matches!(two_sided_hull_check(&t, &one_sided, &tol), Err(Error::NotTwoSided { .. })));
    }

    #[test]
    fn hull_text_round_trip() {
        let tol = Tolerance::default();
        let q = Arc::new(from_finite_group(&FiniteGroup::symmetric(3)).unwrap());
        let t = wedderburn(&q, &tol, 0).unwrap();
        let mut parts: Vec<Subspace> = t.blocks().iter().map(|b| Subspace::full(b.n())).collect();
        parts[2] = Subspace::span(&Mat::from_column_slice(2, 1, &[c(0.6), C64::new(0.0, 0.8)]), &tol);
        let hull = Hull::new(&t, parts).unwrap();
        let text = hull.to_text(&t);
        let back = Hull::parse(&text, &t, &tol).unwrap();
        assert!(back.approx_eq(&hull, &tol));
        assert_eq!(back.to_text(&t), text);
    }
}

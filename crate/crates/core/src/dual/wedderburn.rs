//! Block decomposition of a finite-dimensional C*-algebra given by structure
//! matrices. Used for the convolution algebra (Irr) and for `L^∞` itself
//! (pure states, characters).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Tolerance, Vector, C64, ZERO};

pub(crate) const MAX_ATTEMPTS: usize = 16;

pub(crate) struct StarAlgebra {
    pub dim: usize,
    /// `left[k]` is the matrix of `y ↦ b_k y`.
    pub left: Vec<Mat>,
    /// `right[k]` is the matrix of `y ↦ y b_k`.
    pub right: Vec<Mat>,
    pub unit: Vector,
    /// Column `m` is `b_m^#`; the involution is `x ↦ J conj(x)`.
    pub involution: Mat,
}

impl StarAlgebra {
    pub fn new(
        dim: usize,
        mul: impl Fn(&[C64], &[C64]) -> Vec<C64>,
        unit: &[C64],
        involution: impl Fn(&[C64]) -> Vec<C64>,
    ) -> Self {
        let e = |k: usize| {
            let mut v = vec![ZERO; dim];
            v[k] = C64::new(1.0, 0.0);
            v
        };
        let from_cols = |f: &dyn Fn(usize) -> Vec<C64>| {
            let mut m = Mat::zeros(dim, dim);
            for c in 0..dim {
                for (r, v) in f(c).into_iter().enumerate() {
                    m[(r, c)] = v;
                }
            }
            m
        };
        let left = (0..dim)
            .map(|k| from_cols(&|j| mul(&e(k), &e(j))))
            .collect();
        let right = (0..dim)
            .map(|k| from_cols(&|j| mul(&e(j), &e(k))))
            .collect();
        StarAlgebra {
            dim,
            left,
            right,
            unit: Vector::from_column_slice(unit),
            involution: from_cols(&|m| involution(&e(m))),
        }
    }

    fn combine(mats: &[Mat], x: &Vector) -> Mat {
        let d = x.len();
        let mut out = Mat::zeros(d, d);
        for (k, m) in mats.iter().enumerate() {
            if x[k] != ZERO {
                out += m * x[k];
            }
        }
        out
    }

    pub fn left_matrix(&self, x: &Vector) -> Mat {
        Self::combine(&self.left, x)
    }

    pub fn right_matrix(&self, x: &Vector) -> Mat {
        Self::combine(&self.right, x)
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.left_matrix(x) * y
    }

    pub fn invol(&self, x: &Vector) -> Vector {
        &self.involution * x.conjugate()
    }

    fn scale(&self) -> f64 {
        self.left
            .iter()
            .map(linalg::max_abs)
            .fold(linalg::max_abs(&self.involution), f64::max)
            .max(1.0)
    }
}

/// One simple summand `≅ M_n`.
pub(crate) struct RawBlock {
    pub n: usize,
    /// Row `i*n + j` is the covector `x ↦ ρ(x)_{ij}`.
    pub extract: Mat,
}

/// Groups ascending values whose consecutive gaps are at most `gap`.
fn cluster(values: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(c) if v - values[*c.last().unwrap()] <= gap => c.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    Vector::from_fn(d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

struct Whitening {
    gram: Mat,
    r: Mat,
    r_inv: Mat,
}

impl Whitening {
    fn inner(&self, a: &Vector, b: &Vector) -> C64 {
        (a.adjoint() * &self.gram * b)[(0, 0)]
    }
}

/// Trace form `⟨a, b⟩ = Tr(L_{a^# b})`, positive definite on a C*-algebra.
fn whitening(alg: &StarAlgebra, tol: &Tolerance) -> Result<Whitening> {
    let d = alg.dim;
    let tau = Vector::from_fn(d, |m, _| alg.left[m].trace());
    let mut gram = Mat::zeros(d, d);
    for i in 0..d {
        let bi_sharp = alg.involution.column(i).into_owned();
        let li = alg.left_matrix(&bi_sharp);
        let row = tau.transpose() * li;
        for j in 0..d {
            gram[(i, j)] = row[(0, j)];
        }
    }
    let herm_tol = Tolerance {
        rank_cutoff: tol.rank_cutoff,
        equality_eps: tol.equality_eps * alg.scale(),
    };
    let (vals, vecs) = linalg::eig_hermitian(&gram, &herm_tol)
        .map_err(|_| Error::internal("trace form is not hermitian", linalg::max_abs(&(&gram - gram.adjoint()))))?;
    let top = vals.last().copied().unwrap_or(1.0).max(1.0);
    if vals[0] <= tol.rank_cutoff * top {
        return Err(Error::internal("trace form is not positive definite", vals[0]));
    }
    let sqrt = Mat::from_diagonal(&Vector::from_iterator(d, vals.iter().map(|v| C64::new(v.sqrt(), 0.0))));
    let isqrt = Mat::from_diagonal(&Vector::from_iterator(d, vals.iter().map(|v| C64::new(1.0 / v.sqrt(), 0.0))));
    Ok(Whitening {
        r: &sqrt * vecs.adjoint(),
        r_inv: &vecs * isqrt,
        gram,
    })
}

/// Spectral projectors of a hermitian matrix grouped into clusters.
fn spectral_clusters(h: &Mat, tol: &Tolerance) -> Result<(Vec<Vec<usize>>, Vec<f64>, Mat)> {
    let herm = Tolerance {
        rank_cutoff: tol.rank_cutoff,
        equality_eps: 1e-6,
    };
    let (vals, vecs) = linalg::eig_hermitian(h, &herm)?;
    let spread = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
    Ok((cluster(&vals, 1e-7 * spread), vals, vecs))
}

fn projector_of(vecs: &Mat, idx: &[usize]) -> Mat {
    let n = vecs.nrows();
    let mut p = Mat::zeros(n, n);
    for &i in idx {
        let v = vecs.column(i);
        p += &v * v.adjoint();
    }
    p
}

pub(crate) fn decompose(alg: &StarAlgebra, tol: &Tolerance, seed: u64) -> Result<Vec<RawBlock>> {
    let d = alg.dim;
    let w = whitening(alg, tol)?;

    // Center: z with b_j z = z b_j for every j.
    let commutators: Vec<Mat> = (0..d).map(|j| &alg.left[j] - &alg.right[j]).collect();
    let center = linalg::kernel(&linalg::vstack(&commutators, d), tol);
    let zc = center.dim();

    let mut rng: ChaCha8Rng;
    let mut attempt = 0;
    let (clusters, vecs) = loop {
        attempt += 1;
        if attempt > MAX_ATTEMPTS {
            return Err(Error::Degenerate {
                what: "central element eigenvalues collide".into(),
                attempts: MAX_ATTEMPTS,
            });
        }
        rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64 - 1));
        let coeffs = random_vector(&mut rng, zc);
        let z0 = center.basis() * coeffs;
        let z = (&z0 + alg.invol(&z0)).scale(0.5);
        let h = &w.r * alg.left_matrix(&z) * &w.r_inv;
        let h = (&h + h.adjoint()).scale(0.5);
        let (clusters, _, vecs) = spectral_clusters(&h, tol)?;
        if clusters.len() == zc {
            break (clusters, vecs);
        }
    };

    let mut blocks = Vec::with_capacity(zc);
    for members in clusters {
        let size = members.len();
        let n = (size as f64).sqrt().round() as usize;
        if n * n != size {
            return Err(Error::internal(
                format!("central cluster of size {size} is not a square"),
                size as f64,
            ));
        }
        let p = &w.r_inv * projector_of(&vecs, &members) * &w.r;
        let e_c = &p * &alg.unit;
        blocks.push(split_block(alg, &w, &vecs, &members, &e_c, n, tol, &mut rng)?);
    }
    verify_blocks(alg, &blocks, tol)?;
    Ok(blocks)
}

#[allow(clippy::too_many_arguments)]
fn split_block(
    alg: &StarAlgebra,
    w: &Whitening,
    vecs: &Mat,
    members: &[usize],
    e_c: &Vector,
    n: usize,
    tol: &Tolerance,
    rng: &mut ChaCha8Rng,
) -> Result<RawBlock> {
    let d = alg.dim;
    let mut v = Mat::zeros(d, members.len());
    for (c, &i) in members.iter().enumerate() {
        v.set_column(c, &vecs.column(i));
    }

    // Minimal projections from a random self-adjoint element of the block.
    let mut projections = None;
    for _ in 0..MAX_ATTEMPTS {
        let r = random_vector(rng, d);
        let a0 = alg.mul(e_c, &r);
        let a = (&a0 + alg.invol(&a0)).scale(0.5);
        let h = v.adjoint() * &w.r * alg.left_matrix(&a) * &w.r_inv * &v;
        let h = (&h + h.adjoint()).scale(0.5);
        let (clusters, _, inner) = spectral_clusters(&h, tol)?;
        if clusters.len() == n && clusters.iter().all(|c| c.len() == n) {
            let ps: Vec<Vector> = clusters
                .iter()
                .map(|c| &w.r_inv * &v * projector_of(&inner, c) * v.adjoint() * &w.r * e_c)
                .collect();
            projections = Some(ps);
            break;
        }
    }
    let p = projections.ok_or_else(|| Error::Degenerate {
        what: "block element eigenvalues collide".into(),
        attempts: MAX_ATTEMPTS,
    })?;

    // Matrix units E_{1j} = p_1 r p_j / sqrt(c) with (p_1 r p_j)(p_1 r p_j)^# = c p_1.
    let p1_norm = w.inner(&p[0], &p[0]).re;
    let mut row1: Vec<Vector> = vec![p[0].clone()];
    for pj in p.iter().skip(1) {
        let mut unit = None;
        for _ in 0..MAX_ATTEMPTS {
            let r = random_vector(rng, d);
            let x = alg.mul(&alg.mul(&p[0], &r), pj);
            let xx = alg.mul(&x, &alg.invol(&x));
            let c = w.inner(&p[0], &xx).re / p1_norm;
            if c > 1e-6 {
                unit = Some(x.unscale(c.sqrt()));
                break;
            }
        }
        row1.push(unit.ok_or_else(|| Error::Degenerate {
            what: "matrix unit construction".into(),
            attempts: MAX_ATTEMPTS,
        })?);
    }
    let col1: Vec<Vector> = row1.iter().map(|x| alg.invol(x)).collect();

    // ρ(x)_{ij} = ⟨E_11, E_1i x E_j1⟩ / ⟨E_11, E_11⟩
    let probe = (p[0].adjoint() * &w.gram).unscale(p1_norm);
    let mut extract = Mat::zeros(n * n, d);
    for i in 0..n {
        let a = &probe * alg.left_matrix(&row1[i]);
        for j in 0..n {
            let row = &a * alg.right_matrix(&col1[j]);
            for k in 0..d {
                extract[(i * n + j, k)] = row[(0, k)];
            }
        }
    }
    Ok(RawBlock { n, extract })
}

pub(crate) fn apply(block: &RawBlock, x: &Vector) -> Mat {
    let n = block.n;
    let flat = &block.extract * x;
    Mat::from_fn(n, n, |i, j| flat[i * n + j])
}

/// Checks the *-homomorphism property on basis pairs and joint bijectivity.
fn verify_blocks(alg: &StarAlgebra, blocks: &[RawBlock], tol: &Tolerance) -> Result<()> {
    let d = alg.dim;
    let total: usize = blocks.iter().map(|b| b.n * b.n).sum();
    if total != d {
        return Err(Error::internal(
            format!("block dimensions sum to {total}, expected {d}"),
            (total as f64 - d as f64).abs(),
        ));
    }
    let scale = alg.scale();
    let threshold = tol.equality_eps * scale * scale;
    let basis: Vec<Vector> = (0..d)
        .map(|k| {
            let mut v = Vector::zeros(d);
            v[k] = C64::new(1.0, 0.0);
            v
        })
        .collect();
    for b in blocks {
        let images: Vec<Mat> = basis.iter().map(|x| apply(b, x)).collect();
        let mut hom = 0.0f64;
        for k in 0..d {
            let adj = apply(b, &alg.invol(&basis[k]));
            hom = hom.max(linalg::max_abs(&(adj - images[k].adjoint())));
            for l in 0..d {
                let prod = apply(b, &alg.mul(&basis[k], &basis[l]));
                hom = hom.max(linalg::max_abs(&(prod - &images[k] * &images[l])));
            }
        }
        let unit = apply(b, &alg.unit);
        hom = hom.max(linalg::max_abs(&(unit - Mat::identity(b.n, b.n))));
        if hom > threshold {
            return Err(Error::internal("block map is not a unital *-homomorphism", hom));
        }
    }
    let joint = linalg::vstack(&blocks.iter().map(|b| b.extract.clone()).collect::<Vec<_>>(), d);
    let sv = linalg::singular_values(&joint);
    let smallest = sv.last().copied().unwrap_or(0.0);
    if smallest <= tol.rank_cutoff * sv[0].max(1.0) {
        return Err(Error::internal("joint block map is not injective", smallest));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// M_2 ⊕ C with matrix-unit basis, multiplication and adjoint by hand.
    fn m2_plus_c() -> StarAlgebra {
        // basis: E11 E12 E21 E22 (block 0), f (block 1)
        let mul = |x: &[C64], y: &[C64]| {
            let a = [[x[0], x[1]], [x[2], x[3]]];
            let b = [[y[0], y[1]], [y[2], y[3]]];
            let mut out = vec![ZERO; 5];
            for i in 0..2 {
                for j in 0..2 {
                    out[i * 2 + j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            out[4] = x[4] * y[4];
            out
        };
        let adj = |x: &[C64]| vec![x[0].conj(), x[2].conj(), x[1].conj(), x[3].conj(), x[4].conj()];
        let one = C64::new(1.0, 0.0);
        StarAlgebra::new(5, mul, &[one, ZERO, ZERO, one, one], adj)
    }

    #[test]
    fn splits_matrix_algebra() {
        let alg = m2_plus_c();
        let blocks = decompose(&alg, &Tolerance::default(), 7).unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.n).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        // The one-dimensional block is the projection onto f.
        let one = blocks.iter().find(|b| b.n == 1).unwrap();
        let row: Vec<f64> = one.extract.row(0).iter().map(|z| z.norm()).collect();
        assert!(row[..4].iter().all(|v| *v < 1e-10) && (row[4] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn seeds_agree_up_to_equivalence() {
        let alg = m2_plus_c();
        let a = decompose(&alg, &Tolerance::default(), 1).unwrap();
        let b = decompose(&alg, &Tolerance::default(), 2).unwrap();
        let char_of = |bs: &[RawBlock]| {
            let blk = bs.iter().find(|b| b.n == 2).unwrap();
            (0..5)
                .map(|k| blk.extract[(0, k)] + blk.extract[(3, k)])
                .collect::<Vec<_>>()
        };
        for (x, y) in char_of(&a).iter().zip(char_of(&b)) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn clusters_by_gap() {
        assert_eq!(cluster(&[0.0, 1e-9, 1.0, 1.0, 2.0], 1e-6), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}

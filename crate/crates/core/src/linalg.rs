//! Tolerance-aware dense complex linear algebra.
//!
//! Everything downstream compares subspaces rather than raw coordinates, so
//! this module is mostly about [`Subspace`]: kernels, spans, intersections and
//! containment tests. Rank decisions always go through singular values.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Numerical thresholds shared by every computation in the crate.
///
/// A singular value counts as zero when it is below
/// `rank_cutoff * max(largest singular value, 1)`. Two quantities are equal
/// when they differ by at most `equality_eps` (scaled where noted).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rank_cutoff: f64,
    pub equality_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_cutoff: 1e-10,
            equality_eps: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(rank_cutoff: f64, equality_eps: f64) -> Result<Self> {
        for (name, v) in [("rank_cutoff", rank_cutoff), ("equality_eps", equality_eps)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} not in (0, 1)")));
            }
        }
        Ok(Tolerance {
            rank_cutoff,
            equality_eps,
        })
    }

    fn zero_threshold(&self, largest: f64) -> f64 {
        self.rank_cutoff * largest.max(1.0)
    }
}

/// Builds a scalar, rejecting NaN and infinities.
pub fn scalar(re: f64, im: f64) -> Result<C64> {
    if re.is_finite() && im.is_finite() {
        Ok(C64::new(re, im))
    } else {
        Err(Error::NonFinite(format!("scalar ({re}, {im})")))
    }
}

pub fn ensure_finite(m: &Mat, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Frobenius norm.
pub fn norm(m: &Mat) -> f64 {
    m.norm()
}

/// Largest absolute entry; used for residuals.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_slice(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn column(v: &[C64]) -> Mat {
    Mat::from_column_slice(v.len(), 1, v)
}

/// Stacks matrices with equal column counts on top of each other.
pub fn vstack(blocks: &[Mat], cols: usize) -> Mat {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        debug_assert_eq!(b.ncols(), cols);
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Concatenates matrices with equal row counts side by side.
pub fn hstack(blocks: &[Mat], rows: usize) -> Mat {
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        debug_assert_eq!(b.nrows(), rows);
        out.view_mut((0, c), (rows, b.ncols())).copy_from(b);
        c += b.ncols();
    }
    out
}

/// A linear subspace of `C^n` given by an orthonormal basis (as columns).
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            basis: Mat::identity(ambient_dim, ambient_dim),
        }
    }

    /// Wraps a basis that is already orthonormal.
    pub fn from_orthonormal(basis: Mat, tol: &Tolerance) -> Result<Self> {
        let k = basis.ncols();
        let gram = basis.adjoint() * &basis;
        let residual = max_abs(&(gram - Mat::identity(k, k)));
        if residual > tol.equality_eps {
            return Err(Error::internal("basis is not orthonormal", residual));
        }
        Ok(Subspace { basis })
    }

    /// Column span of `vectors`.
    pub fn span(vectors: &Mat, tol: &Tolerance) -> Self {
        range(vectors, tol)
    }

    pub fn span_of(ambient_dim: usize, vectors: &[Vector], tol: &Tolerance) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let m = Mat::from_fn(ambient_dim, vectors.len(), |i, j| vectors[j][i]);
        range(&m, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        self.basis.column_iter().map(|c| c.into_owned())
    }

    /// Orthogonal projector `B Bᴴ`.
    pub fn projector(&self) -> Mat {
        &self.basis * self.basis.adjoint()
    }

    /// Distance from `v` to the subspace.
    pub fn distance_to(&self, v: &Vector) -> f64 {
        let proj = &self.basis * (self.basis.adjoint() * v);
        (v - proj).norm()
    }

    pub fn contains_vector(&self, v: &Vector, tol: &Tolerance) -> bool {
        self.distance_to(v) <= tol.equality_eps * (1.0 + v.norm())
    }

    /// Largest distance from a unit vector of `other` to `self`; zero iff
    /// `other ⊆ self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        let resid = other.basis() - &self.basis * (self.basis.adjoint() * other.basis());
        resid
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, other: &Subspace, tol: &Tolerance) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.containment_residual(other) <= tol.equality_eps
    }

    /// Symmetric containment residual. Subspaces are equal exactly when this
    /// is within `equality_eps`.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.ambient_dim() != other.ambient_dim() {
            return f64::INFINITY;
        }
        self.containment_residual(other)
            .max(other.containment_residual(self))
    }

    pub fn approx_eq(&self, other: &Subspace, tol: &Tolerance) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol.equality_eps
    }

    pub fn orthogonal_complement(&self, tol: &Tolerance) -> Subspace {
        kernel(&self.basis.adjoint(), tol)
    }

    pub fn sum(&self, other: &Subspace, tol: &Tolerance) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        let n = self.ambient_dim();
        Ok(range(&hstack(&[self.basis.clone(), other.basis.clone()], n), tol))
    }

    /// Applies a linear map and returns the span of the image.
    pub fn image_under(&self, map: &Mat, tol: &Tolerance) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(map.nrows());
        }
        range(&(map * &self.basis), tol)
    }
}

fn svd_full_v(m: &Mat) -> (Vec<f64>, Mat) {
    // nalgebra computes a thin SVD; pad with zero rows so Vᴴ is square.
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = Mat::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    (svd.singular_values.iter().copied().collect(), v_t)
}

/// Orthonormal basis of `{v : m v ≈ 0}`.
pub fn kernel(m: &Mat, tol: &Tolerance) -> Subspace {
    let cols = m.ncols();
    if cols == 0 {
        return Subspace::zero(0);
    }
    if m.nrows() == 0 {
        return Subspace::full(cols);
    }
    let (sv, v_t) = svd_full_v(m);
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let thr = tol.zero_threshold(largest);
    let null: Vec<usize> = (0..v_t.nrows()).filter(|&k| sv[k] <= thr).collect();
    let mut basis = Mat::zeros(cols, null.len());
    for (c, &k) in null.iter().enumerate() {
        basis.set_column(c, &v_t.row(k).adjoint());
    }
    Subspace { basis }
}

/// Orthonormal basis of the column space of `m`.
pub fn range(m: &Mat, tol: &Tolerance) -> Subspace {
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 {
        return Subspace::zero(rows);
    }
    let svd = SVD::new(m.clone(), true, false);
    let u = svd.u.expect("u requested");
    let sv = &svd.singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let thr = tol.zero_threshold(largest);
    let keep: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] > thr).collect();
    let mut basis = Mat::zeros(rows, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        basis.set_column(c, &u.column(k));
    }
    Subspace { basis }
}

pub fn rank(m: &Mat, tol: &Tolerance) -> usize {
    range(m, tol).dim()
}

/// Singular values, descending.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = SVD::new(m.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn intersect(a: &Subspace, b: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    let n = a.ambient_dim();
    let id = Mat::identity(n, n);
    let stacked = vstack(&[&id - a.projector(), &id - b.projector()], n);
    Ok(kernel(&stacked, tol))
}

/// Eigendecomposition of a hermitian matrix, eigenvalues ascending.
pub fn eig_hermitian(m: &Mat, tol: &Tolerance) -> Result<(Vec<f64>, Mat)> {
    if m.nrows() != m.ncols() {
        return Err(Error::AmbientMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    ensure_finite(m, "eig_hermitian input")?;
    let residual = max_abs(&(m - m.adjoint()));
    if residual > tol.equality_eps * (1.0 + max_abs(m)) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), Mat::zeros(0, 0)));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Mat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vectors.set_column(c, &eig.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub solution: Mat,
    pub residual: f64,
}

/// Least-squares solution of `a x = rhs`; inconsistent systems are an error.
pub fn solve_linear(a: &Mat, rhs: &Mat, tol: &Tolerance) -> Result<LinearSolution> {
    if a.nrows() != rhs.nrows() {
        return Err(Error::AmbientMismatch {
            left: a.nrows(),
            right: rhs.nrows(),
        });
    }
    ensure_finite(a, "solve_linear matrix")?;
    ensure_finite(rhs, "solve_linear right-hand side")?;
    let largest = singular_values(a).first().copied().unwrap_or(0.0);
    let solution = if a.is_empty() {
        Mat::zeros(a.ncols(), rhs.ncols())
    } else {
        SVD::new(a.clone(), true, true)
            .solve(rhs, tol.zero_threshold(largest))
            .map_err(|e| Error::internal(format!("svd solve: {e}"), f64::NAN))?
    };
    let residual = norm(&(a * &solution - rhs));
    if residual > tol.equality_eps * (1.0 + norm(rhs)) {
        return Err(Error::NoSolution { residual });
    }
    Ok(LinearSolution { solution, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn real(rows: usize, cols: usize, v: &[f64]) -> Mat {
        Mat::from_row_iterator(rows, cols, v.iter().map(|&x| c(x)))
    }

    #[test]
    fn kernel_examples() {
        let tol = Tolerance::default();
        assert_eq!(kernel(&Mat::zeros(2, 2), &tol).dim(), 2);
        assert_eq!(kernel(&Mat::identity(3, 3), &tol).dim(), 0);
        let k = kernel(&real(2, 2, &[1.0, 0.0, 0.0, 0.0]), &tol);
        assert_eq!(k.dim(), 1);
        let expect = Subspace::span(&real(2, 1, &[0.0, 1.0]), &tol);
        assert!(k.approx_eq(&expect, &tol));
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let tol = Tolerance::default();
        let k = kernel(&real(1, 3, &[1.0, 1.0, 1.0]), &tol);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn kernel_ignores_roundoff() {
        let tol = Tolerance::default();
        let k = kernel(&real(2, 2, &[1e-15, 0.0, 0.0, -3e-16]), &tol);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn intersect_examples() {
        let tol = Tolerance::default();
        let e1 = Subspace::span(&real(2, 1, &[1.0, 0.0]), &tol);
        let e2 = Subspace::span(&real(2, 1, &[0.0, 1.0]), &tol);
        let diag = Subspace::span(&real(2, 1, &[1.0, 1.0]), &tol);
        let full = Subspace::full(2);
        assert!(intersect(&full, &e1, &tol).unwrap().approx_eq(&e1, &tol));
        assert_eq!(intersect(&e1, &e2, &tol).unwrap().dim(), 0);
        let both = Subspace::span(&real(2, 2, &[1.0, 0.0, 0.0, 1.0]), &tol);
        assert!(intersect(&both, &diag, &tol).unwrap().approx_eq(&diag, &tol));
        assert!(matches!(
            intersect(&e1, &Subspace::full(3), &tol),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn eig_examples() {
        let tol = Tolerance::default();
        let (l, _) = eig_hermitian(&Mat::identity(2, 2), &tol).unwrap();
        assert_eq!(l, vec![1.0, 1.0]);
        let (l, v) = eig_hermitian(&real(2, 2, &[0.0, 0.0, 0.0, 1.0]), &tol).unwrap();
        assert!((l[0] - 0.0).abs() < 1e-12 && (l[1] - 1.0).abs() < 1e-12);
        assert!((v[(0, 0)].norm() - 1.0).abs() < 1e-12);
        // [[0,1],[1,0]] has eigenvalues ±1 (closed form (a+d)/2 ± sqrt(((a-d)/2)^2 + |b|^2)).
        let (l, _) = eig_hermitian(&real(2, 2, &[0.0, 1.0, 1.0, 0.0]), &tol).unwrap();
        assert!((l[0] + 1.0).abs() < 1e-12 && (l[1] - 1.0).abs() < 1e-12);
        assert!(matches!(
            eig_hermitian(&real(2, 2, &[0.0, 1.0, 0.0, 0.0]), &tol),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let tol = Tolerance::default();
        let b = real(2, 1, &[3.0, -1.0]);
        let s = solve_linear(&Mat::identity(2, 2), &b, &tol).unwrap();
        assert!(max_abs(&(s.solution - &b)) < 1e-12);
        let s = solve_linear(&real(2, 2, &[2.0, 0.0, 0.0, 4.0]), &real(2, 1, &[2.0, 4.0]), &tol)
            .unwrap();
        assert!(max_abs(&(s.solution - real(2, 1, &[1.0, 1.0]))) < 1e-12);

        // Overdetermined but consistent: rhs built from a known solution.
        let a = real(4, 2, &[1.0, 2.0, 0.0, 1.0, 3.0, -1.0, 2.0, 2.0]);
        let x = real(2, 1, &[0.5, -2.0]);
        let s = solve_linear(&a, &(&a * &x), &tol).unwrap();
        assert!(s.residual < 1e-8);
        assert!(max_abs(&(s.solution - x)) < 1e-10);

        let bad = solve_linear(&real(2, 1, &[1.0, 1.0]), &real(2, 1, &[1.0, 0.0]), &tol);
        assert!(matches!(bad, Err(Error::NoSolution { .. })));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(1e-10, 1e-8).is_ok());
        assert!(Tolerance::new(0.0, 1e-8).is_err());
        assert!(Tolerance::new(1e-10, 1.5).is_err());
        assert!(scalar(f64::NAN, 0.0).is_err());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Mat> {
        (1..=max, 1..=max, 0..=max).prop_flat_map(|(r, c, rank)| {
            let rank = rank.min(r).min(c);
            (
                proptest::collection::vec(-2.0f64..2.0, 2 * r * rank),
                proptest::collection::vec(-2.0f64..2.0, 2 * rank * c),
            )
                .prop_map(move |(a, b)| {
                    let left = Mat::from_fn(r, rank, |i, j| {
                        C64::new(a[2 * (i * rank + j)], a[2 * (i * rank + j) + 1])
                    });
                    let right = Mat::from_fn(rank, c, |i, j| {
                        C64::new(b[2 * (i * c + j)], b[2 * (i * c + j) + 1])
                    });
                    left * right
                })
        })
    }

    proptest! {
        #[test]
        fn kernel_is_orthogonal_to_rowspace(m in arb_matrix(5)) {
            let tol = Tolerance::default();
            let k = kernel(&m, &tol);
            let r = rank(&m, &tol);
            prop_assert_eq!(k.dim() + r, m.ncols());
            let applied = &m * k.basis();
            prop_assert!(max_abs(&applied) <= tol.equality_eps * (1.0 + norm(&m)));
        }

        #[test]
        fn intersect_commutes_and_is_idempotent(a in arb_matrix(4), b in arb_matrix(4)) {
            let tol = Tolerance::default();
            let n = a.nrows();
            let b = Mat::from_fn(n, b.ncols(), |i, j| b[(i % b.nrows(), j)]);
            let sa = Subspace::span(&a, &tol);
            let sb = Subspace::span(&b, &tol);
            let ab = intersect(&sa, &sb, &tol).unwrap();
            let ba = intersect(&sb, &sa, &tol).unwrap();
            prop_assert!(ab.approx_eq(&ba, &tol));
            prop_assert!(intersect(&sa, &sa, &tol).unwrap().approx_eq(&sa, &tol));
            prop_assert!(sa.contains(&ab, &tol) && sb.contains(&ab, &tol));
        }

        #[test]
        fn eig_reconstructs(m in arb_matrix(5)) {
            let tol = Tolerance::default();
            let h = &m * m.adjoint() - m.adjoint().transpose() * m.transpose();
            let h = (&h + h.adjoint()).scale(0.5);
            let (vals, v) = eig_hermitian(&h, &tol).unwrap();
            let lambda = Mat::from_diagonal(&DVector::from_iterator(
                vals.len(), vals.iter().map(|&x| C64::new(x, 0.0))));
            let rebuilt = &v * lambda * v.adjoint();
            prop_assert!(norm(&(rebuilt - &h)) <= 10.0 * tol.equality_eps * norm(&h).max(1.0));
            prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

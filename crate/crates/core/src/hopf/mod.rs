//! Finite quantum groups as finite-dimensional Hopf *-algebras with a Haar
//! state, stored as dense structure tensors over an explicit ordered basis.

mod axioms;
mod construct;
mod format;

use std::sync::Arc;

pub use axioms::{verify_axioms, Axiom, AxiomCheck, AxiomReport};
pub use construct::{from_finite_group, from_group_algebra, tensor_product};
pub use format::{load_definition, parse_definition, write_definition};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Tolerance, Vector, C64, ZERO};

/// Raw structure data. Index conventions (all 0-based):
///
/// * `mult[(i*d + j)*d + k]`: coefficient of `b_k` in `b_i b_j`
/// * `star[i*d + j]`: coefficient of `b_j` in `b_i*`
/// * `coproduct[(k*d + i)*d + j]`: coefficient of `b_i ⊗ b_j` in `Δ(b_k)`
/// * `antipode[i*d + j]`: coefficient of `b_j` in `S(b_i)`
/// * `unit`, `counit`, `haar`: length-`d` vectors
#[derive(Clone, Debug, Default)]
pub struct StructureData {
    pub name: String,
    pub labels: Vec<String>,
    pub mult: Vec<C64>,
    pub unit: Vec<C64>,
    pub star: Vec<C64>,
    pub coproduct: Vec<C64>,
    pub counit: Vec<C64>,
    pub antipode: Vec<C64>,
    /// `None` asks for the Haar state to be solved for.
    pub haar: Option<Vec<C64>>,
    pub meta: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct FiniteQuantumGroup {
    name: String,
    labels: Vec<String>,
    mult: Vec<C64>,
    unit: Vec<C64>,
    star: Vec<C64>,
    coproduct: Vec<C64>,
    counit: Vec<C64>,
    antipode: Vec<C64>,
    haar: Vec<C64>,
    haar_derived: bool,
    meta: Vec<(String, String)>,
    // sparse views of mult and coproduct
    mult_nz: Vec<Vec<(usize, C64)>>,
    cop_nz: Vec<Vec<(usize, usize, C64)>>,
}

impl PartialEq for FiniteQuantumGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.mult == other.mult
            && self.unit == other.unit
            && self.star == other.star
            && self.coproduct == other.coproduct
            && self.counit == other.counit
            && self.antipode == other.antipode
            && self.haar == other.haar
    }
}

fn check_len(name: &str, v: &[C64], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::malformed(
            name,
            format!("expected {expected} coefficients, found {}", v.len()),
        ));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::malformed(name, "non-finite coefficient"));
    }
    Ok(())
}

impl FiniteQuantumGroup {
    /// Checks tensor shapes; does not check any axiom. A missing Haar state is
    /// solved for and flagged as derived.
    pub fn from_parts(data: StructureData) -> Result<Self> {
        let d = data.labels.len();
        if d == 0 {
            return Err(Error::malformed("basis", "empty basis"));
        }
        check_len("MULT", &data.mult, d * d * d)?;
        check_len("UNIT", &data.unit, d)?;
        check_len("STAR", &data.star, d * d)?;
        check_len("COPRODUCT", &data.coproduct, d * d * d)?;
        check_len("COUNIT", &data.counit, d)?;
        check_len("ANTIPODE", &data.antipode, d * d)?;
        if let Some(h) = &data.haar {
            check_len("HAAR", h, d)?;
        }
        let mult_nz = (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter_map(|k| {
                        let c = data.mult[ij * d + k];
                        (c != ZERO).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        let cop_nz = (0..d)
            .map(|k| {
                let mut v = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        let c = data.coproduct[(k * d + i) * d + j];
                        if c != ZERO {
                            v.push((i, j, c));
                        }
                    }
                }
                v
            })
            .collect();
        let mut g = FiniteQuantumGroup {
            name: data.name,
            labels: data.labels,
            mult: data.mult,
            unit: data.unit,
            star: data.star,
            coproduct: data.coproduct,
            counit: data.counit,
            antipode: data.antipode,
            haar: vec![ZERO; d],
            haar_derived: data.haar.is_none(),
            meta: data.meta,
            mult_nz,
            cop_nz,
        };
        g.haar = match data.haar {
            Some(h) => h,
            None => g.solve_haar(&Tolerance::default())?,
        };
        Ok(g)
    }

    /// Builds the object and requires every axiom to pass.
    pub fn from_parts_verified(data: StructureData, tol: &Tolerance) -> Result<Self> {
        let g = Self::from_parts(data)?;
        let report = verify_axioms(&g, tol);
        if !report.passed() {
            return Err(Error::AxiomFailure(Box::new(report)));
        }
        Ok(g)
    }

    pub fn to_parts(&self) -> StructureData {
        StructureData {
            name: self.name.clone(),
            labels: self.labels.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
            star: self.star.clone(),
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            haar: (!self.haar_derived).then(|| self.haar.clone()),
            meta: self.meta.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.push((key.into(), value.into()));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meta(&self) -> &[(String, String)] {
        &self.meta
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn haar_is_derived(&self) -> bool {
        self.haar_derived
    }

    pub fn unit_vec(&self) -> &[C64] {
        &self.unit
    }

    pub fn counit_vec(&self) -> &[C64] {
        &self.counit
    }

    pub fn haar_vec(&self) -> &[C64] {
        &self.haar
    }

    /// Largest structure constant in absolute value; scales residual checks.
    pub fn scale(&self) -> f64 {
        [
            &self.mult,
            &self.unit,
            &self.star,
            &self.coproduct,
            &self.counit,
            &self.antipode,
            &self.haar,
        ]
        .iter()
        .map(|v| linalg::max_abs_slice(v))
        .fold(1.0, f64::max)
    }

    pub(crate) fn mult_nz(&self, i: usize, j: usize) -> &[(usize, C64)] {
        &self.mult_nz[i * self.dim() + j]
    }

    pub(crate) fn cop_nz(&self, k: usize) -> &[(usize, usize, C64)] {
        &self.cop_nz[k]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim()];
        v[i] = C64::new(1.0, 0.0);
        v
    }

    pub fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == ZERO {
                    continue;
                }
                let c = xi * yj;
                for &(k, m) in self.mult_nz(i, j) {
                    out[k] += c * m;
                }
            }
        }
        out
    }

    /// Antilinear involution.
    pub fn star(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            let c = xi.conj();
            for j in 0..d {
                out[j] += c * self.star[i * d + j];
            }
        }
        out
    }

    pub fn antipode(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for j in 0..d {
                out[j] += xi * self.antipode[i * d + j];
            }
        }
        out
    }

    /// `Δ(x)` as a `d²` vector indexed `i*d + j`.
    pub fn coproduct(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d * d];
        for (k, &xk) in x.iter().enumerate() {
            if xk == ZERO {
                continue;
            }
            for &(i, j, c) in self.cop_nz(k) {
                out[i * d + j] += xk * c;
            }
        }
        out
    }

    pub fn counit(&self, x: &[C64]) -> C64 {
        pair(&self.counit, x)
    }

    pub fn haar(&self, x: &[C64]) -> C64 {
        pair(&self.haar, x)
    }

    /// Product in the algebraic tensor square, both operands `d²` vectors.
    pub fn tensor_mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let nz = |v: &[C64]| -> Vec<(usize, usize, C64)> {
            v.iter()
                .enumerate()
                .filter(|(_, c)| **c != ZERO)
                .map(|(ij, &c)| (ij / d, ij % d, c))
                .collect()
        };
        let (xs, ys) = (nz(x), nz(y));
        let mut out = vec![ZERO; d * d];
        for &(i, j, a) in &xs {
            for &(k, l, b) in &ys {
                let ab = a * b;
                for &(p, m1) in self.mult_nz(i, k) {
                    for &(q, m2) in self.mult_nz(j, l) {
                        out[p * d + q] += ab * m1 * m2;
                    }
                }
            }
        }
        out
    }

    /// Convolution `(f ⊗ g)Δ` of covectors.
    pub fn convolve(&self, f: &[C64], g: &[C64]) -> Vec<C64> {
        (0..self.dim())
            .map(|k| {
                self.cop_nz(k)
                    .iter()
                    .map(|&(i, j, c)| c * f[i] * g[j])
                    .sum()
            })
            .collect()
    }

    /// `f^#(x) = conj(f(S(x)*))`.
    pub fn sharp(&self, f: &[C64]) -> Vec<C64> {
        (0..self.dim())
            .map(|k| {
                let sx = self.antipode(&self.basis_vec(k));
                pair(f, &self.star(&sx)).conj()
            })
            .collect()
    }

    /// `(id ⊗ f)Δ(x)`.
    pub fn slice_right_leg(&self, x: &[C64], f: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim()];
        for (k, &xk) in x.iter().enumerate() {
            if xk == ZERO {
                continue;
            }
            for &(i, j, c) in self.cop_nz(k) {
                out[i] += xk * c * f[j];
            }
        }
        out
    }

    /// `(f ⊗ id)Δ(x)`.
    pub fn slice_left_leg(&self, f: &[C64], x: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim()];
        for (k, &xk) in x.iter().enumerate() {
            if xk == ZERO {
                continue;
            }
            for &(i, j, c) in self.cop_nz(k) {
                out[j] += xk * c * f[i];
            }
        }
        out
    }

    /// Matrix of a linear map on the algebra given its action on basis vectors.
    pub fn matrix_of(&self, map: impl Fn(&[C64]) -> Vec<C64>) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for k in 0..d {
            let col = map(&self.basis_vec(k));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, k)] = c;
            }
        }
        m
    }

    pub fn left_mult_matrix(&self, x: &[C64]) -> Mat {
        self.matrix_of(|b| self.mul(x, b))
    }

    pub fn right_mult_matrix(&self, x: &[C64]) -> Mat {
        self.matrix_of(|b| self.mul(b, x))
    }

    pub fn is_commutative(&self, tol: &Tolerance) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let (a, b) = (&self.mult[(i * d + j) * d..][..d], &self.mult[(j * d + i) * d..][..d]);
                a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol.equality_eps)
            })
        })
    }

    /// Whether `Δ` is symmetric under the tensor flip.
    pub fn is_cocommutative(&self, tol: &Tolerance) -> bool {
        let d = self.dim();
        (0..d).all(|k| {
            (0..d).all(|i| {
                (0..d).all(|j| {
                    let a = self.coproduct[(k * d + i) * d + j];
                    let b = self.coproduct[(k * d + j) * d + i];
                    (a - b).norm() <= tol.equality_eps
                })
            })
        })
    }

    /// Solves `(id⊗h)Δ = h(·)1 = (h⊗id)Δ`, `h(1) = 1` for the Haar state.
    pub fn solve_haar(&self, tol: &Tolerance) -> Result<Vec<C64>> {
        let d = self.dim();
        // unknowns h_0..h_{d-1}; one row per (k, i) for each invariance
        let mut rows = Mat::zeros(2 * d * d, d);
        for k in 0..d {
            for &(i, j, c) in self.cop_nz(k) {
                rows[(k * d + i, j)] += c;
                rows[(d * d + k * d + j, i)] += c;
            }
            for i in 0..d {
                rows[(k * d + i, k)] -= self.unit[i];
                rows[(d * d + k * d + i, k)] -= self.unit[i];
            }
        }
        let ker = linalg::kernel(&rows, tol);
        if ker.dim() != 1 {
            return Err(Error::malformed(
                "HAAR",
                format!("invariance equations have a {}-dimensional solution space", ker.dim()),
            ));
        }
        let v: Vec<C64> = ker.basis().column(0).iter().copied().collect();
        let norm = pair(&v, &self.unit);
        if norm.norm() < tol.equality_eps {
            return Err(Error::malformed("HAAR", "invariant functional vanishes at the unit"));
        }
        Ok(v.into_iter().map(|z| z / norm).collect())
    }

    /// Gram matrix `[h(b_i* b_j)]`.
    pub fn haar_gram(&self) -> Mat {
        let d = self.dim();
        let stars: Vec<Vec<C64>> = (0..d).map(|i| self.star(&self.basis_vec(i))).collect();
        Mat::from_fn(d, d, |i, j| self.haar(&self.mul(&stars[i], &self.basis_vec(j))))
    }
}

/// Bilinear pairing of a covector with a coefficient vector.
pub fn pair(f: &[C64], x: &[C64]) -> C64 {
    f.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// An element of `L^∞(G)`.
#[derive(Clone, Debug)]
pub struct Element {
    owner: Arc<FiniteQuantumGroup>,
    coeffs: Vec<C64>,
}

impl Element {
    pub fn new(owner: &Arc<FiniteQuantumGroup>, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != owner.dim() {
            return Err(Error::AmbientMismatch {
                left: coeffs.len(),
                right: owner.dim(),
            });
        }
        Ok(Element {
            owner: Arc::clone(owner),
            coeffs,
        })
    }

    pub fn unit(owner: &Arc<FiniteQuantumGroup>) -> Self {
        Element {
            owner: Arc::clone(owner),
            coeffs: owner.unit_vec().to_vec(),
        }
    }

    pub fn basis(owner: &Arc<FiniteQuantumGroup>, i: usize) -> Self {
        Element {
            owner: Arc::clone(owner),
            coeffs: owner.basis_vec(i),
        }
    }

    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        &self.owner
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_column_slice(&self.coeffs)
    }

    fn same_owner(&self, other: &Element) -> Result<()> {
        same_owner(&self.owner, &other.owner)
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_owner(other)?;
        Ok(Element {
            owner: Arc::clone(&self.owner),
            coeffs: self.owner.mul(&self.coeffs, &other.coeffs),
        })
    }

    pub fn star(&self) -> Element {
        Element {
            owner: Arc::clone(&self.owner),
            coeffs: self.owner.star(&self.coeffs),
        }
    }

    pub fn antipode(&self) -> Element {
        Element {
            owner: Arc::clone(&self.owner),
            coeffs: self.owner.antipode(&self.coeffs),
        }
    }

    pub fn counit(&self) -> C64 {
        self.owner.counit(&self.coeffs)
    }

    pub fn haar(&self) -> C64 {
        self.owner.haar(&self.coeffs)
    }

    pub fn coproduct(&self) -> Vec<C64> {
        self.owner.coproduct(&self.coeffs)
    }

    pub fn distance(&self, other: &Element) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn same_owner(a: &Arc<FiniteQuantumGroup>, b: &Arc<FiniteQuantumGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::OwnerMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn element_owner_mismatch() {
        let a = Arc::new(from_finite_group(&FiniteGroup::cyclic(2)).unwrap());
        let b = Arc::new(from_group_algebra(&FiniteGroup::cyclic(3)).unwrap());
        let x = Element::unit(&a);
        let y = Element::unit(&b);
        assert!(matches!(x.mul(&y), Err(Error::OwnerMismatch)));
        assert!(Element::new(&a, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn derived_haar_matches_supplied() {
        let g = from_group_algebra(&FiniteGroup::symmetric(3)).unwrap();
        let solved = g.solve_haar(&Tolerance::default()).unwrap();
        for (a, b) in solved.iter().zip(g.haar_vec()) {
            assert!((a - b).norm() < 1e-10);
        }
        let mut parts = g.to_parts();
        parts.haar = None;
        let derived = FiniteQuantumGroup::from_parts(parts).unwrap();
        assert!(derived.haar_is_derived());
    }

    #[test]
    fn malformed_tensor_is_named() {
        let mut parts = from_finite_group(&FiniteGroup::cyclic(2)).unwrap().to_parts();
        parts.coproduct.pop();
        let err = FiniteQuantumGroup::from_parts(parts).unwrap_err();
        assert!(matches!(err, Error::Malformed { ref tensor, .. } if tensor == "COPRODUCT"));
    }
}

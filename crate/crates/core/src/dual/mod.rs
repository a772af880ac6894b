//! The convolution algebra `L¹(G)`, its block decomposition into irreducible
//! representations, the Fourier transform and the hat map `x ↦ h·x`.

pub(crate) mod wedderburn;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{pair, same_owner, Element, FiniteQuantumGroup};
use crate::linalg::{self, Mat, Tolerance, Vector, C64, ZERO};
use wedderburn::{RawBlock, StarAlgebra};

/// An element of `L¹(G)`, stored as its values on the basis of `L^∞(G)`.
#[derive(Clone, Debug)]
pub struct Functional {
    owner: Arc<FiniteQuantumGroup>,
    covec: Vec<C64>,
}

impl Functional {
    pub fn new(owner: &Arc<FiniteQuantumGroup>, covec: Vec<C64>) -> Result<Self> {
        if covec.len() != owner.dim() {
            return Err(Error::AmbientMismatch {
                left: covec.len(),
                right: owner.dim(),
            });
        }
        Ok(Functional {
            owner: Arc::clone(owner),
            covec,
        })
    }

    /// The counit, which is the unit of `L¹`.
    pub fn counit(owner: &Arc<FiniteQuantumGroup>) -> Self {
        Functional {
            owner: Arc::clone(owner),
            covec: owner.counit_vec().to_vec(),
        }
    }

    pub fn haar(owner: &Arc<FiniteQuantumGroup>) -> Self {
        Functional {
            owner: Arc::clone(owner),
            covec: owner.haar_vec().to_vec(),
        }
    }

    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        &self.owner
    }

    pub fn covec(&self) -> &[C64] {
        &self.covec
    }

    pub fn eval(&self, x: &Element) -> Result<C64> {
        same_owner(&self.owner, x.owner())?;
        Ok(pair(&self.covec, x.coeffs()))
    }

    pub fn convolve(&self, other: &Functional) -> Result<Functional> {
        same_owner(&self.owner, &other.owner)?;
        Ok(Functional {
            owner: Arc::clone(&self.owner),
            covec: self.owner.convolve(&self.covec, &other.covec),
        })
    }

    /// `f^#(x) = conj(f(S(x)*))`.
    pub fn sharp(&self) -> Functional {
        Functional {
            owner: Arc::clone(&self.owner),
            covec: self.owner.sharp(&self.covec),
        }
    }

    /// `f ∘ S`.
    pub fn compose_antipode(&self) -> Functional {
        let g = &self.owner;
        let covec = (0..g.dim())
            .map(|k| pair(&self.covec, &g.antipode(&g.basis_vec(k))))
            .collect();
        Functional {
            owner: Arc::clone(g),
            covec,
        }
    }

    /// `f * x = (id ⊗ f)Δ(x)`.
    pub fn act_left(&self, x: &Element) -> Result<Element> {
        same_owner(&self.owner, x.owner())?;
        Element::new(&self.owner, self.owner.slice_right_leg(x.coeffs(), &self.covec))
    }

    /// `x * f = (f ⊗ id)Δ(x)`.
    pub fn act_right(&self, x: &Element) -> Result<Element> {
        same_owner(&self.owner, x.owner())?;
        Element::new(&self.owner, self.owner.slice_left_leg(&self.covec, x.coeffs()))
    }

    pub fn distance(&self, other: &Functional) -> f64 {
        self.covec
            .iter()
            .zip(&other.covec)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `hat(x)(y) = h(xy)`.
pub fn hat(x: &Element) -> Functional {
    let g = x.owner();
    let covec = hat_covec(g, x.coeffs());
    Functional {
        owner: Arc::clone(g),
        covec,
    }
}

pub(crate) fn hat_covec(g: &FiniteQuantumGroup, x: &[C64]) -> Vec<C64> {
    (0..g.dim())
        .map(|k| g.haar(&g.mul(x, &g.basis_vec(k))))
        .collect()
}

/// One irreducible representation `π` of `L¹(G)`.
#[derive(Clone, Debug)]
pub struct IrrBlock {
    index: usize,
    n: usize,
    extract: Mat,
    f: Mat,
}

impl IrrBlock {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn label(&self) -> String {
        format!("pi{}", self.index)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n² × dim` matrix; row `i*n + j` holds the coefficients of `u_{ij}`,
    /// so that `π(f)_{ij} = Σ_k f_k (u_{ij})_k`.
    pub fn extract_matrix(&self) -> &Mat {
        &self.extract
    }

    pub fn extract_covec(&self, f: &[C64]) -> Mat {
        let n = self.n;
        let flat = &self.extract * Vector::from_column_slice(f);
        Mat::from_fn(n, n, |i, j| flat[i * n + j])
    }

    /// Coefficient vector of the matrix coefficient `u_{ij}` in `L^∞(G)`.
    pub fn coefficient(&self, i: usize, j: usize) -> Vec<C64> {
        self.extract.row(i * self.n + j).iter().copied().collect()
    }

    pub fn f_matrix(&self) -> &Mat {
        &self.f
    }

    /// `χ_k = tr π(b_k)` over the basis.
    pub fn character(&self) -> Vec<C64> {
        (0..self.extract.ncols())
            .map(|k| (0..self.n).map(|i| self.extract[(i * self.n + i, k)]).sum())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct IrrTable {
    owner: Arc<FiniteQuantumGroup>,
    blocks: Vec<IrrBlock>,
    seed: u64,
    joint: Mat,
    joint_inverse: Mat,
}

fn fingerprint(block: &RawBlock) -> Vec<(i64, i64)> {
    let n = block.n;
    (0..block.extract.ncols())
        .map(|k| {
            let z: C64 = (0..n).map(|i| block.extract[(i * n + i, k)]).sum();
            ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)
        })
        .collect()
}

/// Sorts by dimension, then by descending character fingerprint. This places
/// the trivial representation first and orders group-like characters of a
/// group algebra by group element.
fn canonical_order(blocks: &mut [RawBlock]) {
    blocks.sort_by(|a, b| match a.n.cmp(&b.n) {
        Ordering::Equal => fingerprint(b).cmp(&fingerprint(a)),
        o => o,
    });
}

/// Decomposes `L¹(G)` into its irreducible blocks and checks every invariant.
pub fn wedderburn(g: &Arc<FiniteQuantumGroup>, tol: &Tolerance, seed: u64) -> Result<IrrTable> {
    let d = g.dim();
    let alg = StarAlgebra::new(d, |f, h| g.convolve(f, h), g.counit_vec(), |f| g.sharp(f));
    let mut raw = wedderburn::decompose(&alg, tol, seed)?;
    canonical_order(&mut raw);
    let blocks: Vec<IrrBlock> = raw
        .into_iter()
        .enumerate()
        .map(|(index, b)| IrrBlock {
            index,
            n: b.n,
            extract: b.extract,
            f: Mat::identity(b.n, b.n),
        })
        .collect();
    let joint = linalg::vstack(&blocks.iter().map(|b| b.extract.clone()).collect::<Vec<_>>(), d);
    let joint_inverse = joint
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::internal("joint block map is singular", 0.0))?;
    let mut table = IrrTable {
        owner: Arc::clone(g),
        blocks,
        seed,
        joint,
        joint_inverse,
    };
    table.check_coefficients(tol)?;
    for k in 0..table.blocks.len() {
        let f = table.fit_f(k)?;
        table.blocks[k].f = f;
    }
    Ok(table)
}

impl IrrTable {
    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        &self.owner
    }

    pub fn blocks(&self) -> &[IrrBlock] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &IrrBlock {
        &self.blocks[index]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.n).collect()
    }

    /// The `dim × dim` matrix of `f ↦ ⊕ π(f)` with blocks stacked in order.
    pub fn joint_matrix(&self) -> &Mat {
        &self.joint
    }

    pub fn coefficient(&self, block: usize, i: usize, j: usize) -> Element {
        Element::new(&self.owner, self.blocks[block].coefficient(i, j)).expect("dimension matches owner")
    }

    pub fn fourier(&self, f: &Functional) -> Result<Vec<Mat>> {
        same_owner(&self.owner, f.owner())?;
        Ok(self.fourier_covec(f.covec()))
    }

    pub fn fourier_covec(&self, f: &[C64]) -> Vec<Mat> {
        self.blocks.iter().map(|b| b.extract_covec(f)).collect()
    }

    /// The functional with the given block images.
    pub fn inverse_fourier(&self, blocks: &[Mat]) -> Result<Functional> {
        if blocks.len() != self.blocks.len() {
            return Err(Error::AmbientMismatch {
                left: blocks.len(),
                right: self.blocks.len(),
            });
        }
        let mut flat = Vector::zeros(self.owner.dim());
        let mut offset = 0;
        for (m, b) in blocks.iter().zip(&self.blocks) {
            if m.nrows() != b.n || m.ncols() != b.n {
                return Err(Error::AmbientMismatch {
                    left: m.nrows(),
                    right: b.n,
                });
            }
            for i in 0..b.n {
                for j in 0..b.n {
                    flat[offset + i * b.n + j] = m[(i, j)];
                }
            }
            offset += b.n * b.n;
        }
        let covec = (&self.joint_inverse * flat).iter().copied().collect();
        Functional::new(&self.owner, covec)
    }

    /// Corepresentation identity and unitarity of every `U^π`.
    fn check_coefficients(&self, tol: &Tolerance) -> Result<()> {
        let g = &self.owner;
        let d = g.dim();
        let threshold = tol.equality_eps * g.scale();
        for b in &self.blocks {
            let n = b.n;
            let u: Vec<Vec<Vec<C64>>> = (0..n)
                .map(|i| (0..n).map(|j| b.coefficient(i, j)).collect())
                .collect();
            let mut corep = 0.0f64;
            let mut unitary = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let delta = g.coproduct(&u[i][j]);
                    let mut sum = vec![ZERO; d * d];
                    let mut gram = vec![ZERO; d];
                    for t in 0..n {
                        for p in 0..d {
                            if u[i][t][p] == ZERO {
                                continue;
                            }
                            for q in 0..d {
                                sum[p * d + q] += u[i][t][p] * u[t][j][q];
                            }
                        }
                        for (s, v) in gram.iter_mut().zip(g.mul(&g.star(&u[t][i]), &u[t][j])) {
                            *s += v;
                        }
                    }
                    corep = delta
                        .iter()
                        .zip(&sum)
                        .map(|(a, c)| (a - c).norm())
                        .fold(corep, f64::max);
                    let target: Vec<C64> = g
                        .unit_vec()
                        .iter()
                        .map(|x| if i == j { *x } else { ZERO })
                        .collect();
                    unitary = gram
                        .iter()
                        .zip(&target)
                        .map(|(a, c)| (a - c).norm())
                        .fold(unitary, f64::max);
                }
            }
            if corep > threshold {
                return Err(Error::internal(
                    format!("corepresentation identity fails for {}", b.label()),
                    corep,
                ));
            }
            if unitary > threshold {
                return Err(Error::internal(format!("{} is not unitary", b.label()), unitary));
            }
        }
        Ok(())
    }

    /// `π(hat(u_{kj}*))` for every `k, j` of block `index`.
    fn hat_star_images(&self, index: usize) -> Vec<Vec<Mat>> {
        let g = &self.owner;
        let b = &self.blocks[index];
        (0..b.n)
            .map(|k| {
                (0..b.n)
                    .map(|j| b.extract_covec(&hat_covec(g, &g.star(&b.coefficient(k, j)))))
                    .collect()
            })
            .collect()
    }

    /// Diagonal fit: `F_ii` proportional to the mean over `j` of
    /// `Re π(hat(u_ij*))_{ij}`, scaled so that `tr F = tr F⁻¹`.
    fn fit_f(&self, index: usize) -> Result<Mat> {
        let n = self.blocks[index].n;
        let images = self.hat_star_images(index);
        let m: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| images[i][j][(i, j)].re).sum::<f64>() / n as f64)
            .collect();
        if m.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::internal(
                format!("F fit for {} is not positive", self.blocks[index].label()),
                m.iter().copied().fold(f64::INFINITY, f64::min),
            ));
        }
        let s = (m.iter().map(|v| 1.0 / v).sum::<f64>() / m.iter().sum::<f64>()).sqrt();
        Ok(Mat::from_diagonal(&Vector::from_iterator(
            n,
            m.iter().map(|v| C64::new(v * s, 0.0)),
        )))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixUnitReport {
    pub block: usize,
    /// Max deviation of `fourier(e_ij)` from the `(i, j)` matrix unit of the
    /// block (and from zero in every other block), where
    /// `e_ij = tr(F) Σ_k (F⁻¹)_{ik} hat(u_kj*)`.
    pub residual: f64,
    /// The same with prefactor `1/tr(F)`; differs from `residual` whenever `n > 1`.
    pub inverse_trace_residual: f64,
    /// Max deviation of the fitted `F` from the identity.
    pub f_deviation: f64,
}

pub fn matrix_unit_check(table: &IrrTable, block: usize) -> MatrixUnitReport {
    let b = &table.blocks[block];
    let n = b.n;
    let f_inv = b.f.clone().try_inverse().unwrap_or_else(|| Mat::zeros(n, n));
    let trace = b.f.trace().re;
    let g = &table.owner;
    let residual_for = |prefactor: f64| {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut covec = vec![ZERO; g.dim()];
                for k in 0..n {
                    let coef = f_inv[(i, k)] * prefactor;
                    if coef == ZERO {
                        continue;
                    }
                    for (c, v) in covec
                        .iter_mut()
                        .zip(hat_covec(g, &g.star(&b.coefficient(k, j))))
                    {
                        *c += coef * v;
                    }
                }
                for (idx, m) in table.fourier_covec(&covec).into_iter().enumerate() {
                    let mut target = Mat::zeros(m.nrows(), m.ncols());
                    if idx == block {
                        target[(i, j)] = C64::new(1.0, 0.0);
                    }
                    worst = worst.max(linalg::max_abs(&(m - target)));
                }
            }
        }
        worst
    };
    MatrixUnitReport {
        block,
        residual: residual_for(trace),
        inverse_trace_residual: residual_for(1.0 / trace),
        f_deviation: linalg::max_abs(&(&b.f - Mat::identity(n, n))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvolutionReport {
    /// Per block `‖π(hat(f*x)) − π(hat(x)) π(f∘S)‖`.
    pub residuals: Vec<f64>,
}

impl ConvolutionReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Compares `π(hat(f*x))` with `π(hat(x)) π(f∘S)` where `f*x = (id⊗f)Δ(x)`.
pub fn convolution_formula_check(table: &IrrTable, f: &Functional, x: &Element) -> Result<ConvolutionReport> {
    same_owner(table.owner(), f.owner())?;
    let fx = f.act_left(x)?;
    let lhs = table.fourier(&hat(&fx))?;
    let hx = table.fourier(&hat(x))?;
    let fs = table.fourier(&f.compose_antipode())?;
    let residuals = lhs
        .iter()
        .zip(hx.iter().zip(&fs))
        .map(|(l, (a, b))| linalg::norm(&(l - a * b)))
        .collect();
    Ok(ConvolutionReport { residuals })
}

fn fmt_num(v: f64) -> String {
    let v = if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{v:.12}")
}

fn fmt_c(z: C64) -> String {
    format!("{},{}", fmt_num(z.re), fmt_num(z.im))
}

fn write_matrix(out: &mut String, m: &Mat) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt_c(m[(i, j)])).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

impl IrrTable {
    /// Text report: per block the dimension, `F`, and `π(b_k)` for every
    /// basis functional `b_k` (the dual basis of the `L^∞` basis).
    pub fn to_text(&self) -> String {
        let g = &self.owner;
        let mut out = String::new();
        let _ = writeln!(out, "# irreducible representations of {}", g.name());
        let _ = writeln!(out, "# pi(f)_ij = sum_k f(b_k) (u_ij)_k; rows below list pi(b_k^dual)");
        let _ = writeln!(out, "# F convention: F_ii ~ mean_j Re pi(hat(u_ij*))_ij, tr F = tr F^-1;");
        let _ = writeln!(out, "# matrix units e_ij = tr(F) sum_k (F^-1)_ik hat(u_kj*)");
        let _ = writeln!(out, "group {}", g.name());
        let _ = writeln!(out, "dim {}", g.dim());
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "blocks {}", self.blocks.len());
        for b in &self.blocks {
            let _ = writeln!(out, "block {} n {}", b.label(), b.n);
            let _ = writeln!(out, " F");
            write_matrix(&mut out, &b.f);
            for k in 0..g.dim() {
                let _ = writeln!(out, " basis {} {}", k, g.labels()[k]);
                write_matrix(&mut out, &b.extract_covec(&g.basis_vec(k)));
            }
        }
        out
    }
}

//! Idempotent states, the compact quasi-subgroups (right coideals) they
//! determine, conditional expectations, hulls of quasi-subgroups, the ideal
//! `J¹(N)` and its right unit, and a search for idempotent states.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dual::wedderburn::{self, RawBlock, StarAlgebra};
use crate::dual::{Functional, IrrTable};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{pair, FiniteQuantumGroup};
use crate::ideals::{coefficient_space, hull_of, Hull, IdealSubspace};
use crate::linalg::{self, Mat, Subspace, Tolerance, Vector, C64, ZERO};

#[derive(Clone, Debug, Serialize)]
pub struct StateResiduals {
    /// `|ω(1) − 1|`
    pub unital: f64,
    /// Smallest eigenvalue of the Gram matrix `[ω(b_i* b_j)]`.
    pub min_gram_eigenvalue: f64,
    /// Largest entry of `G − Gᴴ` for that Gram matrix.
    pub hermitian_defect: f64,
    /// `‖ω*ω − ω‖`
    pub idempotency: f64,
    pub passed: bool,
}

pub fn check_idempotent_state(omega: &Functional, tol: &Tolerance) -> StateResiduals {
    let g = omega.owner();
    let w = omega.covec();
    let d = g.dim();
    let threshold = tol.equality_eps * g.scale();
    let unital = (pair(w, g.unit_vec()) - 1.0).norm();
    let stars: Vec<Vec<C64>> = (0..d).map(|i| g.star(&g.basis_vec(i))).collect();
    let gram = Mat::from_fn(d, d, |i, j| pair(w, &g.mul(&stars[i], &g.basis_vec(j))));
    let hermitian_defect = linalg::max_abs(&(&gram - gram.adjoint()));
    let sym = (&gram + gram.adjoint()).scale(0.5);
    let loose = Tolerance {
        rank_cutoff: tol.rank_cutoff,
        equality_eps: 1.0,
    };
    let min_gram_eigenvalue = linalg::eig_hermitian(&sym, &loose)
        .map(|(v, _)| v[0])
        .unwrap_or(f64::NEG_INFINITY);
    let ww = g.convolve(w, w);
    let idempotency = ww
        .iter()
        .zip(w)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let passed = unital <= threshold
        && hermitian_defect <= threshold
        && min_gram_eigenvalue >= -tol.equality_eps
        && idempotency <= threshold;
    StateResiduals {
        unital,
        min_gram_eigenvalue,
        hermitian_defect,
        idempotency,
        passed,
    }
}

/// A functional that passed [`check_idempotent_state`].
#[derive(Clone, Debug)]
pub struct IdempotentState {
    omega: Functional,
}

impl IdempotentState {
    pub fn new(omega: Functional, tol: &Tolerance) -> Result<Self> {
        let r = check_idempotent_state(&omega, tol);
        if !r.passed {
            return Err(Error::InvalidIdempotent(format!(
                "unital {:.2e}, min Gram eigenvalue {:.2e}, hermitian {:.2e}, idempotency {:.2e}",
                r.unital, r.min_gram_eigenvalue, r.hermitian_defect, r.idempotency
            )));
        }
        Ok(IdempotentState { omega })
    }

    pub fn counit(owner: &Arc<FiniteQuantumGroup>) -> Self {
        IdempotentState {
            omega: Functional::counit(owner),
        }
    }

    pub fn haar(owner: &Arc<FiniteQuantumGroup>) -> Self {
        IdempotentState {
            omega: Functional::haar(owner),
        }
    }

    pub fn functional(&self) -> &Functional {
        &self.omega
    }

    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        self.omega.owner()
    }

    pub fn covec(&self) -> &[C64] {
        self.omega.covec()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationResiduals {
    /// `‖E² − E‖`
    pub idempotent: f64,
    /// `‖E(1) − 1‖`
    pub unital: f64,
    /// Failure of `E` to be a positive operator for the inner product
    /// `h(x*y)`: hermitian defect plus the most negative eigenvalue.
    pub positivity: f64,
    /// `max_f ‖E(x*f) − E(x)*f‖` over basis `f`, with `x*f = (f⊗id)Δ(x)`.
    pub module_map: f64,
}

impl ExpectationResiduals {
    pub fn max(&self) -> f64 {
        self.idempotent
            .max(self.unital)
            .max(self.positivity)
            .max(self.module_map)
    }
}

/// `E = (id ⊗ ω)Δ` as a matrix on `L^∞`.
#[derive(Clone, Debug)]
pub struct ConditionalExpectation {
    pub matrix: Mat,
    pub residuals: ExpectationResiduals,
}

pub fn conditional_expectation(state: &IdempotentState, tol: &Tolerance) -> Result<ConditionalExpectation> {
    let g = state.owner();
    let d = g.dim();
    let w = state.covec();
    let e = g.matrix_of(|x| g.slice_right_leg(x, w));

    let idempotent = linalg::max_abs(&(&e * &e - &e));
    let unit = Vector::from_column_slice(g.unit_vec());
    let unital = (&e * &unit - &unit).iter().map(|z| z.norm()).fold(0.0, f64::max);

    // Whiten by the Haar Gram matrix: E is an orthogonal projection on L²(h).
    let gram = g.haar_gram();
    let (vals, vecs) = linalg::eig_hermitian(&gram, tol)?;
    let sqrt = Mat::from_diagonal(&Vector::from_iterator(d, vals.iter().map(|v| C64::new(v.max(0.0).sqrt(), 0.0))));
    let isqrt = Mat::from_diagonal(&Vector::from_iterator(d, vals.iter().map(|v| C64::new(1.0 / v.max(f64::MIN_POSITIVE).sqrt(), 0.0))));
    let r = &sqrt * vecs.adjoint();
    let r_inv = &vecs * isqrt;
    let we = &r * &e * &r_inv;
    let herm = linalg::max_abs(&(&we - we.adjoint()));
    let sym = (&we + we.adjoint()).scale(0.5);
    let loose = Tolerance {
        rank_cutoff: tol.rank_cutoff,
        equality_eps: 1.0,
    };
    let min_eig = linalg::eig_hermitian(&sym, &loose)?.0[0];
    let positivity = herm.max(-min_eig).max(0.0);

    let mut module_map = 0.0f64;
    for k in 0..d {
        let fk = g.basis_vec(k);
        let m = g.matrix_of(|x| g.slice_left_leg(&fk, x));
        module_map = module_map.max(linalg::max_abs(&(&e * &m - &m * &e)));
    }

    let residuals = ExpectationResiduals {
        idempotent,
        unital,
        positivity,
        module_map,
    };
    if residuals.max() > tol.equality_eps * g.scale() {
        return Err(Error::internal("conditional expectation invariants", residuals.max()));
    }
    Ok(ConditionalExpectation { matrix: e, residuals })
}

/// The compact quasi-subgroup `N = E(L^∞)` of an idempotent state.
#[derive(Clone, Debug)]
pub struct Coideal {
    owner: Arc<FiniteQuantumGroup>,
    space: Subspace,
    omega: IdempotentState,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoidealResiduals {
    pub unit: f64,
    pub multiplication: f64,
    pub star: f64,
    /// Distance of the right legs of `Δ(n)` from `N`.
    pub right_invariance: f64,
}

impl Coideal {
    pub fn owner(&self) -> &Arc<FiniteQuantumGroup> {
        &self.owner
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn state(&self) -> &IdempotentState {
        &self.omega
    }

    pub fn residuals(&self) -> CoidealResiduals {
        let g = &self.owner;
        let basis: Vec<Vec<C64>> = self
            .space
            .basis_vectors()
            .map(|v| v.iter().copied().collect())
            .collect();
        let dist = |v: &[C64]| self.space.distance_to(&Vector::from_column_slice(v));
        let unit = dist(g.unit_vec());
        let mut multiplication = 0.0f64;
        let mut star = 0.0f64;
        for a in &basis {
            star = star.max(dist(&g.star(a)));
            for b in &basis {
                multiplication = multiplication.max(dist(&g.mul(a, b)));
            }
        }
        let right_invariance = basis
            .iter()
            .map(|n| right_leg_distance(g, &self.space, n))
            .fold(0.0, f64::max);
        CoidealResiduals {
            unit,
            multiplication,
            star,
            right_invariance,
        }
    }

    /// Whether also `Δ(N) ⊆ N ⊗ L^∞`.
    pub fn is_left_invariant(&self, tol: &Tolerance) -> bool {
        let g = &self.owner;
        self.space.basis_vectors().all(|n| {
            let n: Vec<C64> = n.iter().copied().collect();
            left_leg_distance(g, &self.space, &n) <= tol.equality_eps * g.scale()
        })
    }
}

/// Writing `Δ(n) = Σ T_ij b_i ⊗ b_j`, the largest distance of a row of `T` from `space`.
fn right_leg_distance(g: &FiniteQuantumGroup, space: &Subspace, n: &[C64]) -> f64 {
    let d = g.dim();
    let t = g.coproduct(n);
    (0..d)
        .map(|i| space.distance_to(&Vector::from_fn(d, |j, _| t[i * d + j])))
        .fold(0.0, f64::max)
}

fn left_leg_distance(g: &FiniteQuantumGroup, space: &Subspace, n: &[C64]) -> f64 {
    let d = g.dim();
    let t = g.coproduct(n);
    (0..d)
        .map(|j| space.distance_to(&Vector::from_fn(d, |i, _| t[i * d + j])))
        .fold(0.0, f64::max)
}

pub fn coideal_of(state: &IdempotentState, tol: &Tolerance) -> Result<Coideal> {
    let e = conditional_expectation(state, tol)?;
    let c = Coideal {
        owner: Arc::clone(state.owner()),
        space: linalg::range(&e.matrix, tol),
        omega: state.clone(),
    };
    let r = c.residuals();
    let worst = r.unit.max(r.multiplication).max(r.star).max(r.right_invariance);
    if worst > tol.equality_eps * c.owner.scale() {
        return Err(Error::internal("coideal invariants", worst));
    }
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiHullReport {
    /// Largest `‖P² − P‖` or `‖P − Pᴴ‖` over blocks, with `P = π(ω)`.
    pub projection_residual: f64,
    pub hull_dims: Vec<usize>,
    /// `Σ n_π dim E_π`
    pub weighted_dim: usize,
    pub coideal_dim: usize,
    /// Distance between `N` and `L^∞(G, E)`.
    pub reconstruction_residual: f64,
}

/// `E_π = range π(ω)`, and the check `N = L^∞(G, E)`.
pub fn hull_of_quasi_subgroup(
    table: &IrrTable,
    state: &IdempotentState,
    tol: &Tolerance,
) -> Result<(Hull, QuasiHullReport)> {
    let images = table.fourier(state.functional())?;
    let mut projection_residual = 0.0f64;
    let mut parts = Vec::new();
    for p in &images {
        projection_residual = projection_residual
            .max(linalg::max_abs(&(p * p - p)))
            .max(linalg::max_abs(&(p - p.adjoint())));
        let (vals, vecs) = linalg::eig_hermitian(&(p + p.adjoint()).scale(0.5), tol)?;
        let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.5).collect();
        let mut basis = Mat::zeros(p.nrows(), keep.len());
        for (c, &i) in keep.iter().enumerate() {
            basis.set_column(c, &vecs.column(i));
        }
        parts.push(Subspace::span(&basis, tol));
    }
    if projection_residual > tol.equality_eps * table.owner().scale() {
        return Err(Error::InvalidIdempotent(format!(
            "block image is not an orthogonal projection (residual {projection_residual:.3e})"
        )));
    }
    let hull = Hull::new(table, parts)?;
    let coideal = coideal_of(state, tol)?;
    let rebuilt = coefficient_space(table, &hull, tol);
    let weighted_dim = hull
        .dims()
        .iter()
        .zip(table.blocks())
        .map(|(k, b)| k * b.n())
        .sum();
    let report = QuasiHullReport {
        projection_residual,
        hull_dims: hull.dims(),
        weighted_dim,
        coideal_dim: coideal.dim(),
        reconstruction_residual: rebuilt.distance(coideal.space()),
    };
    Ok((hull, report))
}

/// The preannihilator `J¹(N) = {f : f(n) = 0 for n ∈ N}`.
pub fn j1(coideal: &Coideal, tol: &Tolerance) -> Result<IdealSubspace> {
    let g = coideal.owner();
    let space = if coideal.dim() == 0 {
        Subspace::full(g.dim())
    } else {
        linalg::kernel(&coideal.space.basis().transpose(), tol)
    };
    IdealSubspace::new(g, space, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct RightUnitReport {
    /// Distance of `e = ε − ω` from `J¹(N)`.
    pub in_ideal: f64,
    /// `max ‖μ*e − μ‖` over a basis of `J¹(N)`.
    pub right_unit: f64,
    /// Whether `Δ(N) ⊆ N ⊗ L^∞` as well.
    pub two_sided_invariant: bool,
    /// `max ‖e*μ − μ‖`, computed only for two-sided invariant `N`.
    pub left_unit: Option<f64>,
    pub holds: bool,
}

pub fn right_unit_check(state: &IdempotentState, tol: &Tolerance) -> Result<RightUnitReport> {
    let g = state.owner();
    let coideal = coideal_of(state, tol)?;
    let ideal = j1(&coideal, tol)?;
    let e: Vec<C64> = g
        .counit_vec()
        .iter()
        .zip(state.covec())
        .map(|(a, b)| a - b)
        .collect();
    let in_ideal = ideal.space().distance_to(&Vector::from_column_slice(&e));
    let diff = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let basis: Vec<Vec<C64>> = ideal
        .space()
        .basis_vectors()
        .map(|v| v.iter().copied().collect())
        .collect();
    let right_unit = basis
        .iter()
        .map(|mu| diff(&g.convolve(mu, &e), mu))
        .fold(0.0, f64::max);
    let two_sided_invariant = coideal.is_left_invariant(tol);
    let left_unit = two_sided_invariant.then(|| {
        basis
            .iter()
            .map(|mu| diff(&g.convolve(&e, mu), mu))
            .fold(0.0, f64::max)
    });
    let threshold = tol.equality_eps * g.scale();
    let holds = in_ideal <= threshold && right_unit <= threshold && left_unit.is_none_or(|r| r <= threshold);
    Ok(RightUnitReport {
        in_ideal,
        right_unit,
        two_sided_invariant,
        left_unit,
        holds,
    })
}

/// Builds the multiplication table of a finite set of elements closed under
/// a product, identifying elements up to `tol`.
pub(crate) fn table_of(
    elements: &[Vec<C64>],
    product: impl Fn(&[C64], &[C64]) -> Vec<C64>,
    tol: &Tolerance,
) -> Result<Vec<Vec<usize>>> {
    let find = |v: &[C64]| {
        elements.iter().position(|e| {
            e.iter()
                .zip(v)
                .all(|(a, b)| (a - b).norm() <= tol.equality_eps.sqrt())
        })
    };
    let mut rows = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let p = product(a, b);
            let idx = find(&p).ok_or_else(|| {
                Error::internal("set of group-like elements is not closed under product", linalg::max_abs_slice(&p))
            })?;
            row.push(idx);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Block decomposition of `L^∞(G)` itself.
pub(crate) fn linf_blocks(g: &FiniteQuantumGroup, tol: &Tolerance, seed: u64) -> Result<Vec<RawBlock>> {
    let alg = StarAlgebra::new(g.dim(), |x, y| g.mul(x, y), g.unit_vec(), |x| g.star(x));
    wedderburn::decompose(&alg, tol, seed)
}

/// The characters (one-dimensional *-representations) of `L^∞(G)` under
/// convolution. For commutative `L^∞(G)` these are the points of the
/// underlying finite group; in general they form its largest classical
/// subgroup.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    pub characters: Vec<Vec<C64>>,
    pub group: FiniteGroup,
}

pub fn character_group(g: &FiniteQuantumGroup, tol: &Tolerance, seed: u64) -> Result<CharacterGroup> {
    let mut characters: Vec<Vec<C64>> = linf_blocks(g, tol, seed)?
        .into_iter()
        .filter(|b| b.n == 1)
        .map(|b| b.extract.row(0).iter().copied().collect())
        .collect();
    // counit first, then by descending coefficients
    let key = |c: &Vec<C64>| c.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect::<Vec<_>>();
    characters.sort_by_key(|c| std::cmp::Reverse(key(c)));
    if let Some(pos) = characters
        .iter()
        .position(|c| c.iter().zip(g.counit_vec()).all(|(a, b)| (a - b).norm() < tol.equality_eps.sqrt()))
    {
        let e = characters.remove(pos);
        characters.insert(0, e);
    }
    let rows = table_of(&characters, |a, b| g.convolve(a, b), tol)?;
    let labels = (0..characters.len()).map(|k| format!("chi{k}")).collect();
    let group = FiniteGroup::from_table(labels, rows)
        .map_err(|e| Error::internal(format!("characters do not form a group: {e}"), 0.0))?;
    Ok(CharacterGroup { characters, group })
}

impl CharacterGroup {
    /// Uniform average of the characters indexed by `subset`.
    pub fn uniform_measure(&self, owner: &Arc<FiniteQuantumGroup>, subset: &[usize]) -> Functional {
        let d = owner.dim();
        let mut w = vec![ZERO; d];
        for &s in subset {
            for (o, c) in w.iter_mut().zip(&self.characters[s]) {
                *o += c;
            }
        }
        let n = subset.len().max(1) as f64;
        Functional::new(owner, w.into_iter().map(|z| z / n).collect()).expect("dimension matches")
    }
}

/// Group-like unitaries of `L^∞`, read off the one-dimensional blocks of the
/// dual, with their multiplication table.
pub fn group_likes(table: &IrrTable, tol: &Tolerance) -> Result<(Vec<Vec<C64>>, FiniteGroup)> {
    let g = table.owner();
    let elems: Vec<Vec<C64>> = table
        .blocks()
        .iter()
        .filter(|b| b.n() == 1)
        .map(|b| b.coefficient(0, 0))
        .collect();
    let rows = table_of(&elems, |a, b| g.mul(a, b), tol)?;
    let labels = table
        .blocks()
        .iter()
        .filter(|b| b.n() == 1)
        .map(|b| b.label())
        .collect();
    let group = FiniteGroup::from_table(labels, rows)
        .map_err(|e| Error::internal(format!("group-likes do not form a group: {e}"), 0.0))?;
    Ok((elems, group))
}

/// On a cocommutative `L^∞ = C[Γ]`, the functional equal to 1 on the
/// group-likes in `subset` and 0 on the others.
pub fn subgroup_indicator(table: &IrrTable, subset: &[usize], tol: &Tolerance) -> Result<Functional> {
    let g = table.owner();
    let (elems, group) = group_likes(table, tol)?;
    if elems.len() != g.dim() {
        return Err(Error::Precondition(format!(
            "{} group-likes do not span a {}-dimensional algebra",
            elems.len(),
            g.dim()
        )));
    }
    let d = g.dim();
    let a = Mat::from_fn(group.order(), d, |s, k| elems[s][k]);
    let rhs = Mat::from_fn(group.order(), 1, |s, _| {
        C64::new(if subset.contains(&s) { 1.0 } else { 0.0 }, 0.0)
    });
    let sol = linalg::solve_linear(&a, &rhs, tol)?;
    Functional::new(g, sol.solution.column(0).iter().copied().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateOrigin {
    Counit,
    Haar,
    /// Indicator of a subgroup of the group-likes (cocommutative case).
    SubgroupIndicator { subgroup: Vec<usize> },
    /// Uniform measure on a subgroup of the characters of `L^∞(G)`.
    SubgroupHaar { subgroup: Vec<usize> },
    /// Ergodic limit of a random convex combination of pure states.
    Refined { seed: u64 },
    /// Supplied by the caller.
    Input,
}

#[derive(Clone, Debug)]
pub struct FoundState {
    pub state: IdempotentState,
    pub origin: StateOrigin,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub states: Vec<FoundState>,
    /// True when the input is commutative or cocommutative: the subgroup
    /// families then contain every idempotent state.
    pub exhaustive: bool,
}

/// The idempotent state whose block images project onto the fixed vectors
/// of `π(ω₀)`, the limit of the Cesàro means of the powers of `ω₀`.
pub fn ergodic_projection(table: &IrrTable, omega0: &Functional, tol: &Tolerance) -> Result<Functional> {
    let images = table.fourier(omega0)?;
    let projections: Vec<Mat> = images
        .iter()
        .map(|t| {
            let n = t.nrows();
            let fixed = linalg::kernel(&(t - Mat::identity(n, n)), &Tolerance {
                rank_cutoff: tol.equality_eps.sqrt(),
                equality_eps: tol.equality_eps,
            });
            fixed.projector()
        })
        .collect();
    table.inverse_fourier(&projections)
}

fn pure_state(block: &RawBlock, xi: &Vector) -> Vec<C64> {
    let n = block.n;
    let d = block.extract.ncols();
    (0..d)
        .map(|k| {
            let mut s = ZERO;
            for i in 0..n {
                for j in 0..n {
                    s += xi[i].conj() * xi[j] * block.extract[(i * n + j, k)];
                }
            }
            s
        })
        .collect()
}

pub fn search_idempotent_states(table: &IrrTable, seeds: &[u64], tol: &Tolerance) -> Result<SearchResult> {
    let g = table.owner();
    let mut found: Vec<FoundState> = Vec::new();
    let push = |omega: Functional, origin: StateOrigin, found: &mut Vec<FoundState>| {
        if found.iter().any(|s| s.state.functional().distance(&omega) < 1e-6) {
            return;
        }
        if let Ok(state) = IdempotentState::new(omega, tol) {
            found.push(FoundState { state, origin });
        }
    };
    push(Functional::counit(g), StateOrigin::Counit, &mut found);
    push(Functional::haar(g), StateOrigin::Haar, &mut found);

    let cocommutative = g.is_cocommutative(tol);
    let commutative = g.is_commutative(tol);
    if cocommutative {
        let (_, group) = group_likes(table, tol)?;
        for h in group.subgroups() {
            let omega = subgroup_indicator(table, &h, tol)?;
            push(omega, StateOrigin::SubgroupIndicator { subgroup: h }, &mut found);
        }
    }
    // uniform measures on subgroups of the classical points; all of them when commutative
    {
        let chars = character_group(g, tol, table.seed())?;
        for h in chars.group.subgroups() {
            let omega = chars.uniform_measure(g, &h);
            push(omega, StateOrigin::SubgroupHaar { subgroup: h }, &mut found);
        }
    }

    let blocks = linf_blocks(g, tol, table.seed())?;
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=2usize);
        let mut omega0 = vec![ZERO; g.dim()];
        let mut total = 0.0;
        for _ in 0..k {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            let xi = Vector::from_fn(b.n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let xi = xi.unscale(xi.norm());
            let weight: f64 = rng.gen_range(0.1..1.0);
            total += weight;
            for (o, v) in omega0.iter_mut().zip(pure_state(b, &xi)) {
                *o += v * weight;
            }
        }
        let omega0 = Functional::new(g, omega0.into_iter().map(|z| z / total).collect())?;
        let omega = ergodic_projection(table, &omega0, tol)?;
        push(omega, StateOrigin::Refined { seed }, &mut found);
    }
    Ok(SearchResult {
        states: found,
        exhaustive: commutative || cocommutative,
    })
}

/// Hull of `J¹(N)` for comparison with [`hull_of_quasi_subgroup`].
pub fn hull_of_j1(table: &IrrTable, coideal: &Coideal, tol: &Tolerance) -> Result<Hull> {
    hull_of(table, &j1(coideal, tol)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::wedderburn as irr;
    use crate::hopf::{from_finite_group, from_group_algebra};

    fn s3_group_algebra() -> (Arc<FiniteQuantumGroup>, IrrTable) {
        let q = Arc::new(from_group_algebra(&FiniteGroup::symmetric(3)).unwrap());
        let t = irr(&q, &Tolerance::default(), 0).unwrap();
        (q, t)
    }

    #[test]
    fn counit_and_haar_are_idempotent() {
        let tol = Tolerance::default();
        let q = Arc::new(from_finite_group(&FiniteGroup::symmetric(3)).unwrap());
        assert!(check_idempotent_state(&Functional::counit(&q), &tol).passed);
        assert!(check_idempotent_state(&Functional::haar(&q), &tol).passed);
        let e = conditional_expectation(&IdempotentState::counit(&q), &tol).unwrap();
        assert!(linalg::max_abs(&(e.matrix - Mat::identity(6, 6))) < 1e-12);
        let c = coideal_of(&IdempotentState::haar(&q), &tol).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn alternating_subgroup_indicator() {
        let tol = Tolerance::default();
        let (q, t) = s3_group_algebra();
        let omega = subgroup_indicator(&t, &[0, 3, 4], &tol).unwrap();
        let expected = [1.0, 0.0, 0.0, 1.0, 1.0, 0.0];
        for (a, b) in omega.covec().iter().zip(expected) {
            assert!((a - C64::new(b, 0.0)).norm() < 1e-10);
        }
        let state = IdempotentState::new(omega, &tol).unwrap();
        let e = conditional_expectation(&state, &tol).unwrap();
        for s in 0..6 {
            let img = &e.matrix * Vector::from_column_slice(&q.basis_vec(s));
            let keep = [0, 3, 4].contains(&s);
            for k in 0..6 {
                let want = if keep && k == s { 1.0 } else { 0.0 };
                assert!((img[k] - C64::new(want, 0.0)).norm() < 1e-10);
            }
        }
        let (hull, report) = hull_of_quasi_subgroup(&t, &state, &tol).unwrap();
        assert_eq!(hull.dims(), vec![1, 0, 0, 1, 1, 0]);
        assert_eq!(report.coideal_dim, 3);
        assert!(report.reconstruction_residual < 1e-8);
        let coideal = coideal_of(&state, &tol).unwrap();
        assert_eq!(j1(&coideal, &tol).unwrap().dim(), 3);
        let unit = right_unit_check(&state, &tol).unwrap();
        assert!(unit.holds && unit.two_sided_invariant, "{unit:?}");

        let not_subgroup = subgroup_indicator(&t, &[0, 1, 2], &tol).unwrap();
        assert!(!check_idempotent_state(&not_subgroup, &tol).passed);
    }

    #[test]
    fn haar_right_unit() {
        let tol = Tolerance::default();
        let (q, _) = s3_group_algebra();
        let r = right_unit_check(&IdempotentState::haar(&q), &tol).unwrap();
        assert!(r.holds);
        let r = right_unit_check(&IdempotentState::counit(&q), &tol).unwrap();
        assert!(r.holds && r.in_ideal < 1e-12);
    }

    #[test]
    fn search_on_small_groups() {
        let tol = Tolerance::default();
        let (_, t) = s3_group_algebra();
        let found = search_idempotent_states(&t, &[1, 2, 3], &tol).unwrap();
        assert_eq!(found.states.len(), 6);
        assert!(found.exhaustive);

        let z2 = Arc::new(from_group_algebra(&FiniteGroup::cyclic(2)).unwrap());
        let t2 = irr(&z2, &tol, 0).unwrap();
        assert_eq!(search_idempotent_states(&t2, &[], &tol).unwrap().states.len(), 2);

        let z4 = Arc::new(from_finite_group(&FiniteGroup::cyclic(4)).unwrap());
        let t4 = irr(&z4, &tol, 0).unwrap();
        assert_eq!(search_idempotent_states(&t4, &[5, 6, 7, 8], &tol).unwrap().states.len(), 3);
    }

    #[test]
    fn characters_of_function_algebra() {
        let tol = Tolerance::default();
        let s3 = FiniteGroup::symmetric(3);
        let q = from_finite_group(&s3).unwrap();
        let chars = character_group(&q, &tol, 0).unwrap();
        assert_eq!(chars.group.order_sequence(), s3.order_sequence());
        assert!(!chars.group.is_abelian());
    }
}

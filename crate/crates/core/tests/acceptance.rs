//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::Command;
use std::sync::Arc;

use common::*;
use fqg::cosets::{
    disjointness_check, intrinsic_group, surjectivity_check, translate_ideal, translation_matrix, Disjointness,
};
use fqg::crossed::{build_crossed_product, verify_crossed_irr, HopfAction};
use fqg::dual::{convolution_formula_check, matrix_unit_check};
use fqg::hopf::{from_group_algebra, verify_axioms};
use fqg::ideals::{annihilator, annihilator_dualities, left_ideal_from_generators, verify_synthesis, Hull, IdealSubspace};
use fqg::linalg::{eig_hermitian, kernel, Mat};
use fqg::quasigroup::{coideal_of, hull_of_quasi_subgroup, j1, right_unit_check, search_idempotent_states, FoundState};
use fqg::{wedderburn, Element, FiniteGroup, FiniteQuantumGroup, Functional, IrrTable, Subspace, Tolerance, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Residual bound for every subspace and identity comparison.
const EPS: f64 = 1e-8;
/// Bound on `|F − I|` for Kac-type examples.
const F_EPS: f64 = 1e-6;
const SEED: u64 = 0;
const SEARCH_TRIALS: u64 = 64;
const SYNTHESIS_TRIALS: usize = 100;
const HULL_TRIALS: usize = 50;

type Outcome = Result<String, String>;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn tables() -> Vec<(String, IrrTable)> {
    all_examples()
        .into_iter()
        .map(|(n, g)| {
            let t = wedderburn(&g, &tol(), SEED).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, t)
        })
        .collect()
}

fn states(table: &IrrTable) -> Vec<FoundState> {
    let seeds: Vec<u64> = (0..SEARCH_TRIALS).collect();
    search_idempotent_states(table, &seeds, &tol()).unwrap().states
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_mat(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat {
    Mat::from_fn(r, c, |_, _| random_c(rng))
}

fn criterion_1() -> Outcome {
    let mut cases: Vec<(String, FiniteQuantumGroup)> = group_examples()
        .into_iter()
        .filter(|(n, _)| n != "C[Z4]")
        .collect();
    cases.push(("KacPaljutkin".into(), kac_paljutkin()));
    cases.extend(tensor_examples());
    let mut worst = 0.0f64;
    for (name, g) in &cases {
        let r = verify_axioms(g, &tol());
        check(r.passed() && r.max_residual() <= EPS, || format!("{name}: {:?}", r.failures()))?;
        worst = worst.max(r.max_residual());
    }
    Ok(format!("{} structures, max residual {worst:.1e}", cases.len()))
}

fn criterion_2() -> Outcome {
    let tol = tol();
    for (name, g) in all_examples() {
        let dims = wedderburn(&g, &tol, SEED).map_err(|e| format!("{name}: {e}"))?.dims();
        let sum: usize = dims.iter().map(|n| n * n).sum();
        check(sum == g.dim(), || format!("{name}: Σn² = {sum} ≠ {}", g.dim()))?;
    }
    // character theory: S3 has irreducibles of dimension 1, 1, 2
    let cs3 = Arc::new(load("c_s3.qg"));
    let mut d = wedderburn(&cs3, &tol, SEED).unwrap().dims();
    d.sort_unstable();
    check(d == vec![1, 1, 2], || format!("C(S3): {d:?}"))?;
    // the dual of C[Γ] is the commutative algebra of functions on Γ
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), klein()] {
        let q = Arc::new(from_group_algebra(&g).unwrap());
        let d = wedderburn(&q, &tol, SEED).unwrap().dims();
        check(d == vec![1; g.order()], || format!("C[Γ] of order {}: {d:?}", g.order()))?;
    }
    Ok("C(S3) → {1,1,2}; C[Γ] → |Γ| ones; Σn² = dim everywhere".into())
}

fn random_generators(rng: &mut ChaCha8Rng, table: &IrrTable) -> Vec<Functional> {
    let g = table.owner();
    (0..rng.gen_range(1..=3))
        .map(|_| {
            if rng.gen_bool(0.5) {
                // low-rank Fourier blocks give proper ideals
                let blocks: Vec<Mat> = table
                    .blocks()
                    .iter()
                    .map(|b| {
                        let r = rng.gen_range(0..=b.n());
                        random_mat(rng, b.n(), r) * random_mat(rng, r, b.n())
                    })
                    .collect();
                table.inverse_fourier(&blocks).unwrap()
            } else {
                let mut c = vec![C64::new(0.0, 0.0); g.dim()];
                for _ in 0..rng.gen_range(1..=2) {
                    c[rng.gen_range(0..g.dim())] = random_c(rng);
                }
                Functional::new(g, c).unwrap()
            }
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let tol = tol();
    let mut proper = 0;
    let mut total = 0;
    for (k, (name, table)) in tables().into_iter().enumerate() {
        let g = table.owner().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        for t in 0..SYNTHESIS_TRIALS {
            let gens = random_generators(&mut rng, &table);
            let ideal = left_ideal_from_generators(&g, &gens, &tol).map_err(|e| format!("{name} #{t}: {e}"))?;
            let r = verify_synthesis(&table, &ideal, &tol).map_err(|e| format!("{name} #{t}: {e}"))?;
            check(r.holds && r.residual <= EPS, || format!("{name} #{t}: residual {:.2e}", r.residual))?;
            total += 1;
            if ideal.dim() > 0 && ideal.dim() < g.dim() {
                proper += 1;
            }
        }
    }
    Ok(format!("{total} generator sets, {proper} proper nonzero ideals, zero failures"))
}

fn random_hull(rng: &mut ChaCha8Rng, table: &IrrTable) -> Hull {
    let parts = table
        .blocks()
        .iter()
        .map(|b| {
            let k = rng.gen_range(0..=b.n());
            Subspace::span(&random_mat(rng, b.n(), k), &tol())
        })
        .collect();
    Hull::new(table, parts).unwrap()
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for (k, (name, table)) in tables().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + k as u64);
        for t in 0..HULL_TRIALS {
            let hull = random_hull(&mut rng, &table);
            let r = annihilator_dualities(&table, &hull, &tol());
            let weighted: usize = hull.dims().iter().zip(table.blocks()).map(|(e, b)| e * b.n()).sum();
            check(r.holds && r.residuals.iter().all(|x| *x <= EPS), || {
                format!("{name} #{t}: residuals {:?}", r.residuals)
            })?;
            check(r.annihilator_dim == weighted, || {
                format!("{name} #{t}: dim I(E)^⊥ = {} ≠ Σ n dim E = {weighted}", r.annihilator_dim)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} random hulls"))
}

fn criterion_5() -> Outcome {
    let tol = tol();
    let mut count = 0;
    for (name, table) in tables() {
        for s in states(&table) {
            for p in table.fourier(s.state.functional()).unwrap() {
                let (vals, _) = eig_hermitian(&(&p + p.adjoint()).scale(0.5), &tol).map_err(|e| e.to_string())?;
                let off = vals.iter().map(|v| v.abs().min((v - 1.0).abs())).fold(0.0, f64::max);
                check(off <= EPS, || format!("{name} {:?}: eigenvalue off by {off:.2e}", s.origin))?;
            }
            let (_, r) = hull_of_quasi_subgroup(&table, &s.state, &tol).map_err(|e| format!("{name}: {e}"))?;
            check(r.reconstruction_residual <= EPS, || {
                format!("{name} {:?}: N vs L^∞(G,E) {:.2e}", s.origin, r.reconstruction_residual)
            })?;
            check(r.weighted_dim == r.coideal_dim, || {
                format!("{name} {:?}: dim N = {} ≠ {}", s.origin, r.coideal_dim, r.weighted_dim)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} idempotent states"))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    let mut two_sided = 0;
    for (name, table) in tables() {
        for s in states(&table) {
            let r = right_unit_check(&s.state, &tol()).map_err(|e| format!("{name}: {e}"))?;
            check(r.holds && r.right_unit <= EPS && r.in_ideal <= EPS, || {
                format!("{name} {:?}: right unit residual {:.2e}", s.origin, r.right_unit)
            })?;
            if let Some(l) = r.left_unit {
                check(l <= EPS, || format!("{name} {:?}: left unit residual {l:.2e}", s.origin))?;
                two_sided += 1;
            }
            count += 1;
        }
    }
    Ok(format!("{count} states, {two_sided} with invariant N checked two-sided"))
}

fn criterion_7() -> Outcome {
    let tol = tol();
    let (mut equal, mut zero) = (0, 0);
    for (name, table) in tables() {
        let group = intrinsic_group(&table, &tol).map_err(|e| format!("{name}: {e}"))?;
        for s in states(&table) {
            let n = coideal_of(&s.state, &tol).unwrap();
            for (i, x) in group.elements.iter().enumerate() {
                let d = disjointness_check(x, &n, &tol).map_err(|e| format!("{name} {:?} x{i}: {e}", s.origin))?;
                let w = d.omega_at_x;
                check(w.abs() <= EPS || (w - 1.0).abs() <= EPS, || format!("{name}: ω(x) = {w}"))?;
                match d.outcome {
                    Disjointness::EqualsN => equal += 1,
                    Disjointness::Zero => zero += 1,
                }
            }
        }
    }
    Ok(format!("{equal} pairs with xN ∩ N = N, {zero} with xN ∩ N = 0, no other outcome"))
}

fn criterion_8() -> Outcome {
    let tol = tol();
    let mut count = 0;
    for (k, (name, table)) in tables().into_iter().enumerate() {
        let g = table.owner().clone();
        let group = intrinsic_group(&table, &tol).map_err(|e| format!("{name}: {e}"))?;
        let mut ideals: Vec<IdealSubspace> = states(&table)
            .iter()
            .map(|s| j1(&coideal_of(&s.state, &tol).unwrap(), &tol).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + k as u64);
        for _ in 0..3 {
            let gens = random_generators(&mut rng, &table);
            ideals.push(left_ideal_from_generators(&g, &gens, &tol).unwrap());
        }
        for ideal in &ideals {
            let x_space = annihilator(ideal, &tol);
            let moved: Vec<IdealSubspace> = group
                .elements
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let (m, r) = translate_ideal(ideal, x, &tol).map_err(|e| format!("{name}: {e}"))?;
                    check(r.preannihilator <= EPS, || format!("{name}: (x*X)_⊥ distance {:.2e}", r.preannihilator))?;
                    // independent route: (xX)_⊥ from X directly, against I·x*
                    let xx = x_space.image_under(&g.left_mult_matrix(x.coeffs()), &tol);
                    let pre = if xx.dim() == 0 { Subspace::full(g.dim()) } else { kernel(&xx.basis().transpose(), &tol) };
                    let (back, _) = translate_ideal(ideal, &x.inverse(), &tol).map_err(|e| e.to_string())?;
                    check(back.space().distance(&pre) <= EPS && back.dim() == pre.dim(), || {
                        format!("{name}: I·x{i}* ≠ (x{i}X)_⊥")
                    })?;
                    Ok(m)
                })
                .collect::<Result<_, String>>()?;
            for a in 0..group.elements.len() {
                for (b, xb) in group.elements.iter().enumerate() {
                    let twice = moved[a].space().image_under(&translation_matrix(&g, xb.coeffs()), &tol);
                    let ab = group.group.mul(a, b);
                    check(twice.approx_eq(moved[ab].space(), &tol), || {
                        format!("{name}: (I·x{a})·x{b} ≠ I·x{ab}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!(
        "I·x* = (xX)_⊥ and I·x = (x*X)_⊥ for every group-like; {count} composition checks (I·x)·y = I·xy"
    ))
}

fn criterion_9() -> Outcome {
    let tol = tol();
    let mut pairs = 0;
    for (name, table) in tables() {
        let group = intrinsic_group(&table, &tol).unwrap();
        for s in states(&table) {
            let n = coideal_of(&s.state, &tol).unwrap();
            for (i, x) in group.elements.iter().enumerate() {
                if fqg::hopf::pair(s.state.covec(), x.coeffs()).norm() > 0.5 {
                    continue;
                }
                let r = surjectivity_check(&n, x, &tol).map_err(|e| format!("{name} x{i}: {e}"))?;
                check(r.holds && r.image_dim == n.dim(), || {
                    format!("{name} {:?} x{i}: rank {} ≠ dim N {}", s.origin, r.image_dim, n.dim())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} admissible (N, x ∉ N) pairs"))
}

fn crossed_case(g: FiniteQuantumGroup, action: HopfAction) -> Result<Vec<usize>, String> {
    let tol = tol();
    let p = build_crossed_product(&g, &action, &tol).map_err(|e| e.to_string())?;
    let report = verify_axioms(&p.group, &tol);
    check(report.passed() && report.max_residual() <= EPS, || format!("{}: {:?}", p.group.name(), report.failures()))?;
    let q = Arc::new(p.group);
    let tg = wedderburn(&Arc::new(g), &tol, SEED).map_err(|e| e.to_string())?;
    let (_, r) = verify_crossed_irr(&tg, &q, &action, &tol, SEED).map_err(|e| e.to_string())?;
    check(r.multiset_matches, || format!("{}: {:?}", q.name(), r.product_dims))?;
    check(r.haar_fiber_residual == 0.0, || format!("{}: Haar fiber {:.2e}", q.name(), r.haar_fiber_residual))?;
    let mut d = r.product_dims;
    d.sort_unstable();
    Ok(d)
}

fn criterion_10() -> Outcome {
    let z2 = FiniteGroup::cyclic(2);
    let cz2 = from_group_algebra(&z2).unwrap();
    let d = crossed_case(cz2.clone(), HopfAction::trivial(&cz2, z2.clone(), "Z2"))?;
    let klein_alg = Arc::new(from_group_algebra(&klein()).unwrap());
    let mut expected = wedderburn(&klein_alg, &tol(), SEED).unwrap().dims();
    expected.sort_unstable();
    check(d == expected, || format!("C[Z2]⋊Z2 {d:?} vs C[Z2×Z2] {expected:?}"))?;

    let cs3 = load("c_s3.qg");
    let d = crossed_case(cs3.clone(), HopfAction::trivial(&cs3, z2.clone(), "Z2"))?;
    check(d == vec![1, 1, 1, 1, 2, 2], || format!("C(S3)⋊Z2: {d:?}"))?;

    let kp = kac_paljutkin();
    let d = crossed_case(kp.clone(), HopfAction::trivial(&kp, z2, "Z2"))?;
    check(d.iter().map(|n| n * n).sum::<usize>() == 16 && d.len() == 10, || format!("KP⋊Z2: {d:?}"))?;

    let v4 = from_group_algebra(&klein()).unwrap();
    let action = HopfAction::cyclic_permutation(&v4, 3, vec![0, 2, 3, 1]).map_err(|e| e.to_string())?;
    let d = crossed_case(v4, action)?;
    check(d == vec![1; 12], || format!("C[Z2×Z2]⋊Z3: {d:?}"))?;
    Ok("4 products: axioms, |Γ| copies of Irr, exact Haar fibers, C[Z2]⋊Z2 ≅ C[Z2×Z2] blocks".into())
}

fn criterion_11() -> Outcome {
    let tol = tol();
    let mut worst = 0.0f64;
    for (name, table) in tables() {
        let g = table.owner().clone();
        for b in table.blocks() {
            let r = matrix_unit_check(&table, b.index());
            check(r.residual <= EPS, || format!("{name} {}: matrix units {:.2e}", b.label(), r.residual))?;
            check(r.f_deviation <= F_EPS, || format!("{name} {}: |F − I| = {:.2e}", b.label(), r.f_deviation))?;
            worst = worst.max(r.residual);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4000);
        for _ in 0..5 {
            let f = Functional::new(&g, (0..g.dim()).map(|_| random_c(&mut rng)).collect()).unwrap();
            let x = Element::new(&g, (0..g.dim()).map(|_| random_c(&mut rng)).collect()).unwrap();
            let r = convolution_formula_check(&table, &f, &x).map_err(|e| e.to_string())?;
            check(r.max() <= EPS, || format!("{name}: convolution formula {:.2e}", r.max()))?;
            worst = worst.max(r.max());
        }
        let _ = &tol;
    }
    Ok(format!("max residual {worst:.1e}, F = I throughout"))
}

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fqg");
    let runs: [&[&str]; 4] = [
        &["irr", "kac_paljutkin.qg"],
        &["quasi", "kac_paljutkin.qg", "--search"],
        &["hull", "c_s3.qg", "zero.cov"],
        &["crossed", "c_s3.qg", "--group", "Z2"],
    ];
    for args in runs {
        let full: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { data_path(a) } else { a.to_string() })
            .chain(["--format".into(), "structured".into()])
            .collect();
        let run = || Command::new(bin).args(&full).output().expect("run fqg");
        let (a, b) = (run(), run());
        check(a.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&a.stderr)))?;
        check(a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
        serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{} subcommands byte-identical across runs", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suite", criterion_1),
        ("Wedderburn dimensions", criterion_2),
        ("synthesis round trip", criterion_3),
        ("annihilator dualities", criterion_4),
        ("quasi-subgroup hulls", criterion_5),
        ("right unit", criterion_6),
        ("coset dichotomy", criterion_7),
        ("ideal translation", criterion_8),
        ("surjectivity", criterion_9),
        ("crossed products", criterion_10),
        ("matrix units and convolution", criterion_11),
        ("reproducibility", criterion_12),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass (eps {EPS:e}, F eps {F_EPS:e})", 12 - failed, 12);
    if failed > 0 {
        std::process::exit(1);
    }
}

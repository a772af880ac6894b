//! The `fqg` command line: one subcommand per suite, human or JSON output.
//!
//! Exit codes: 0 success, 1 bad input (parse, io, usage), 2 axiom failure or
//! invalid action/state, 3 internal inconsistency, 4 theorem violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cosets::{coset, disjointness_check, intrinsic_group, surjectivity_check, translate_ideal, Disjointness};
use crate::crossed::{build_crossed_product, verify_crossed_irr, HopfAction};
use crate::dual::{wedderburn, Functional};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{load_definition, verify_axioms, write_definition, FiniteQuantumGroup};
use crate::ideals::{annihilator_dualities, hull_of, left_ideal_from_generators, verify_synthesis};
use crate::linalg::{Mat, Tolerance, C64, ZERO};
use crate::quasigroup::{
    check_idempotent_state, coideal_of, hull_of_quasi_subgroup, j1, right_unit_check, search_idempotent_states,
    IdempotentState, StateOrigin,
};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "fqg", version, about = "Finite quantum group workbench")]
pub struct Cli {
    /// Equality tolerance for residual checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for the randomized decompositions and searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// Pretty-printed JSON.
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every axiom of a definition file.
    Verify { definition: PathBuf },
    /// Irreducible representations of the dual.
    Irr {
        definition: PathBuf,
        /// Also write the full table (F matrices and block images).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hull of the left ideal generated by the covectors in a file, and synthesis.
    Hull {
        definition: PathBuf,
        generators: PathBuf,
        /// Also write the hull in text form.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Idempotent states, their coideals, hulls, right units and cosets.
    Quasi {
        definition: PathBuf,
        #[arg(long, conflicts_with = "search", required_unless_present = "search")]
        omega: Option<PathBuf>,
        /// Search for idempotent states instead of reading one.
        #[arg(long)]
        search: bool,
        /// Random starts used by the refinement stage of the search.
        #[arg(long, default_value_t = 64)]
        trials: u64,
    },
    /// Cosets xN for group-likes x, with translation and surjectivity checks.
    Coset {
        definition: PathBuf,
        #[arg(long)]
        omega: PathBuf,
        /// Index of the group-like in the intrinsic group; all when omitted.
        #[arg(long)]
        x: Option<usize>,
    },
    /// Crossed product by a finite group, written as a definition file.
    Crossed {
        definition: PathBuf,
        /// Acting group: Z<n>, S<n>, or products such as Z2xZ2.
        #[arg(long)]
        group: String,
        /// Image of the generator of a cyclic group as a basis permutation,
        /// e.g. 0,2,3,1. The action is trivial when omitted.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::Malformed { .. }
        | Error::Precondition(_)
        | Error::InvalidTolerance(_)
        | Error::NonFinite(_)
        | Error::NotAGroup(_) => 1,
        Error::AxiomFailure(_) | Error::InvalidAction { .. } | Error::InvalidIdempotent(_) => 2,
        Error::TheoremViolation(_) => 4,
        _ => 3,
    }
}

/// Parses and runs; never exits the process.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(Report { human, structured }) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Human => human,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&structured).expect("json");
                    s.push('\n');
                    s
                }
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point for the binary: runs on the process arguments and returns the exit code.
pub fn run() -> i32 {
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

struct Report {
    human: String,
    structured: Value,
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let tol = Tolerance::new(cli.tol.min(1e-10), cli.tol)?;
    match &cli.command {
        Command::Verify { definition } => cmd_verify(definition, &tol),
        Command::Irr { definition, out } => cmd_irr(definition, out.as_deref(), &tol, cli.seed),
        Command::Hull { definition, generators, out } => cmd_hull(definition, generators, out.as_deref(), &tol, cli.seed),
        Command::Quasi { definition, omega, search, trials } => {
            cmd_quasi(definition, omega.as_deref(), *search, *trials, &tol, cli.seed)
        }
        Command::Coset { definition, omega, x } => cmd_coset(definition, omega, *x, &tol, cli.seed),
        Command::Crossed { definition, group, perm, out } => {
            cmd_crossed(definition, group, perm.as_deref(), out.as_deref(), &tol, cli.seed)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load(path: &Path, tol: &Tolerance) -> Result<Arc<FiniteQuantumGroup>> {
    Ok(Arc::new(load_definition(&read(path)?, tol)?))
}

/// Parses covector files: lines `index re [im]`, `#` comments, and a line
/// `vector` starting each further covector. A file without any `vector`
/// line holds exactly one covector, which may be zero.
pub fn parse_covectors(text: &str, dim: usize) -> Result<Vec<Vec<C64>>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    let mut current: Option<Vec<C64>> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        if line == "vector" {
            if let Some(v) = current.take() {
                out.push(v);
            }
            current = Some(vec![ZERO; dim]);
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&words.len()) {
            return Err(err(format!("expected `index re [im]`, found `{line}`")));
        }
        let i: usize = words[0].parse().map_err(|_| err(format!("bad index `{}`", words[0])))?;
        if i >= dim {
            return Err(err(format!("index {i} out of range for dimension {dim}")));
        }
        let num = |w: &str| -> Result<f64> {
            let v: f64 = w.parse().map_err(|_| err(format!("bad number `{w}`")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err(format!("non-finite number `{w}`")))
            }
        };
        let re = num(words[1])?;
        let im = if words.len() == 3 { num(words[2])? } else { 0.0 };
        current.get_or_insert_with(|| vec![ZERO; dim])[i] += C64::new(re, im);
    }
    out.push(current.unwrap_or_else(|| vec![ZERO; dim]));
    Ok(out)
}

/// Rounds to 12 decimals and clears negative zero, for stable reports.
fn num(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 { 0.0 } else { r }
}

fn cjson(z: C64) -> Value {
    json!([num(z.re), num(z.im)])
}

fn mjson(m: &Mat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| cjson(m[(i, j)])).collect()))
            .collect(),
    )
}

fn fmt_c(z: C64) -> String {
    let (re, im) = (num(z.re), num(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn ok(b: bool) -> &'static str {
    if b { "OK" } else { "FAIL" }
}

fn cmd_verify(path: &Path, tol: &Tolerance) -> Result<Report> {
    let g = crate::hopf::parse_definition(&read(path)?).and_then(FiniteQuantumGroup::from_parts)?;
    let report = verify_axioms(&g, tol);
    let mut human = format!("quantum group: {} (dim {})\n", g.name(), g.dim());
    for c in &report.checks {
        let _ = writeln!(human, "{:<26} {:.3e} {}", c.axiom.name(), c.residual, ok(c.passed));
    }
    let _ = writeln!(human, "axioms: {} (max residual {:.3e})", ok(report.passed()), report.max_residual());
    if !report.passed() {
        return Err(Error::AxiomFailure(Box::new(report)));
    }
    let structured = json!({
        "command": "verify",
        "name": g.name(),
        "dim": g.dim(),
        "haar_derived": g.haar_is_derived(),
        "checks": report.checks.iter().map(|c| json!({
            "axiom": c.axiom.name(),
            "residual": num(c.residual),
            "passed": c.passed,
        })).collect::<Vec<_>>(),
        "passed": report.passed(),
    });
    Ok(Report { human, structured })
}

fn cmd_irr(path: &Path, out: Option<&Path>, tol: &Tolerance, seed: u64) -> Result<Report> {
    let g = load(path, tol)?;
    let table = wedderburn(&g, tol, seed)?;
    if let Some(p) = out {
        std::fs::write(p, table.to_text())?;
    }
    let dims = table.dims();
    let mut human = format!("quantum group: {} (dim {})\n", g.name(), g.dim());
    let _ = writeln!(human, "blocks: {}", join(&dims));
    let _ = writeln!(human, "sum n^2 = {}", dims.iter().map(|n| n * n).sum::<usize>());
    let mut blocks = Vec::new();
    for b in table.blocks() {
        let f = b.f_matrix();
        let diag: Vec<String> = (0..b.n()).map(|i| fmt_c(f[(i, i)])).collect();
        let chi: Vec<String> = b.character().into_iter().map(fmt_c).collect();
        let _ = writeln!(human, "{} n={} F=diag({}) character=[{}]", b.label(), b.n(), diag.join(","), chi.join(","));
        blocks.push(json!({
            "label": b.label(),
            "n": b.n(),
            "f": mjson(f),
            "character": b.character().into_iter().map(cjson).collect::<Vec<_>>(),
        }));
    }
    let structured = json!({
        "command": "irr",
        "name": g.name(),
        "dim": g.dim(),
        "seed": seed,
        "dims": dims,
        "blocks": blocks,
    });
    Ok(Report { human, structured })
}

fn cmd_hull(path: &Path, gens_path: &Path, out: Option<&Path>, tol: &Tolerance, seed: u64) -> Result<Report> {
    let g = load(path, tol)?;
    let table = wedderburn(&g, tol, seed)?;
    let gens = parse_covectors(&read(gens_path)?, g.dim())?
        .into_iter()
        .map(|c| Functional::new(&g, c))
        .collect::<Result<Vec<_>>>()?;
    let ideal = left_ideal_from_generators(&g, &gens, tol)?;
    let hull = hull_of(&table, &ideal, tol)?;
    if let Some(p) = out {
        std::fs::write(p, hull.to_text(&table))?;
    }
    let synthesis = verify_synthesis(&table, &ideal, tol)?;
    let duality = annihilator_dualities(&table, &hull, tol);
    let weighted: usize = hull.dims().iter().zip(table.blocks()).map(|(k, b)| k * b.n()).sum();
    if !synthesis.holds {
        return Err(Error::TheoremViolation(format!(
            "I(hull(I)) differs from I (distance {:.3e})",
            synthesis.residual
        )));
    }
    let mut human = format!("quantum group: {} (dim {})\n", g.name(), g.dim());
    let _ = writeln!(human, "generators: {}; dim I = {}", gens.len(), ideal.dim());
    let _ = writeln!(
        human,
        "E: [{}]; dim I(E)={}; synthesis: {}",
        join(&hull.dims()),
        synthesis.synthesized_dim,
        ok(synthesis.holds)
    );
    let _ = writeln!(
        human,
        "dualities: {} (annihilator {}, coefficients {}, slice kernel {}, sum n dim E = {})",
        ok(duality.holds && duality.annihilator_dim == weighted),
        duality.annihilator_dim,
        duality.coefficient_dim,
        duality.slice_kernel_dim,
        weighted
    );
    let structured = json!({
        "command": "hull",
        "name": g.name(),
        "seed": seed,
        "generators": gens.len(),
        "ideal_dim": ideal.dim(),
        "hull_dims": hull.dims(),
        "synthesis": {
            "synthesized_dim": synthesis.synthesized_dim,
            "residual": num(synthesis.residual),
            "holds": synthesis.holds,
        },
        "dualities": {
            "annihilator_dim": duality.annihilator_dim,
            "coefficient_dim": duality.coefficient_dim,
            "slice_kernel_dim": duality.slice_kernel_dim,
            "weighted_dim": weighted,
            "residuals": duality.residuals.iter().map(|r| num(*r)).collect::<Vec<_>>(),
            "holds": duality.holds,
        },
    });
    Ok(Report { human, structured })
}

fn read_state(g: &Arc<FiniteQuantumGroup>, path: &Path, tol: &Tolerance) -> Result<IdempotentState> {
    let mut covs = parse_covectors(&read(path)?, g.dim())?;
    if covs.len() != 1 {
        return Err(Error::Precondition(format!("expected one covector, found {}", covs.len())));
    }
    IdempotentState::new(Functional::new(g, covs.remove(0))?, tol)
}

fn origin_text(o: &StateOrigin) -> String {
    match o {
        StateOrigin::Counit => "counit".into(),
        StateOrigin::Haar => "haar".into(),
        StateOrigin::SubgroupIndicator { subgroup } => format!("subgroup indicator {{{}}}", join(subgroup)),
        StateOrigin::SubgroupHaar { subgroup } => format!("subgroup haar {{{}}}", join(subgroup)),
        StateOrigin::Refined { seed } => format!("refined (seed {seed})"),
        StateOrigin::Input => "input".into(),
    }
}

fn cmd_quasi(
    path: &Path,
    omega: Option<&Path>,
    search: bool,
    trials: u64,
    tol: &Tolerance,
    seed: u64,
) -> Result<Report> {
    let g = load(path, tol)?;
    let table = wedderburn(&g, tol, seed)?;
    let (states, exhaustive) = if search {
        let seeds: Vec<u64> = (0..trials).map(|k| seed.wrapping_add(k)).collect();
        let r = search_idempotent_states(&table, &seeds, tol)?;
        (r.states.into_iter().map(|f| (f.state, f.origin)).collect::<Vec<_>>(), Some(r.exhaustive))
    } else {
        let p = omega.ok_or_else(|| Error::Precondition("either --omega or --search is required".into()))?;
        (vec![(read_state(&g, p, tol)?, StateOrigin::Input)], None)
    };
    let group = intrinsic_group(&table, tol)?;

    let mut human = format!("quantum group: {} (dim {})\n", g.name(), g.dim());
    let _ = writeln!(human, "intrinsic group: order {}, element orders [{}]", group.group.order(), join(&group.order_sequence()));
    if let Some(ex) = exhaustive {
        let _ = writeln!(
            human,
            "found {} idempotent states ({})",
            states.len(),
            if ex { "exhaustive" } else { "heuristic, may be incomplete" }
        );
    }
    let mut entries = Vec::new();
    for (k, (state, origin)) in states.iter().enumerate() {
        let res = check_idempotent_state(state.functional(), tol);
        let n = coideal_of(state, tol)?;
        let (hull, hr) = hull_of_quasi_subgroup(&table, state, tol)?;
        let ru = right_unit_check(state, tol)?;
        let mut equals = 0;
        let mut zero = 0;
        let mut surj = Vec::new();
        for (i, x) in group.elements.iter().enumerate() {
            let d = disjointness_check(x, &n, tol)?;
            match d.outcome {
                Disjointness::EqualsN => equals += 1,
                Disjointness::Zero => {
                    zero += 1;
                    let s = surjectivity_check(&n, x, tol)?;
                    if !s.holds {
                        return Err(Error::TheoremViolation(format!(
                            "restriction of J1(N)·x to N has rank {} < dim N = {} for x = {i}",
                            s.image_dim, s.coideal_dim
                        )));
                    }
                    surj.push(i);
                }
            }
        }
        let reconstruction_ok = hr.reconstruction_residual <= tol.equality_eps && hr.weighted_dim == hr.coideal_dim;
        if !reconstruction_ok {
            return Err(Error::TheoremViolation(format!(
                "N differs from L^inf(G,E) (distance {:.3e})",
                hr.reconstruction_residual
            )));
        }
        if !ru.holds {
            return Err(Error::TheoremViolation("e = eps - omega is not a right unit for J1(N)".into()));
        }
        let n_text = if n.dim() == 1 { "N = C1".to_string() } else { format!("N dim {}", n.dim()) };
        let cov: Vec<String> = state.covec().iter().map(|z| fmt_c(*z)).collect();
        let _ = writeln!(human, "state {k} [{}]: omega = [{}]", origin_text(origin), cov.join(","));
        let _ = writeln!(
            human,
            "  residuals: unital {:.1e}, idempotency {:.1e}, min gram eigenvalue {:.3e}",
            res.unital, res.idempotency, res.min_gram_eigenvalue
        );
        let _ = writeln!(
            human,
            "  {n_text}; right-unit {}; cosets: {equals}×EqualsN, {zero}×Zero",
            ok(ru.holds)
        );
        let _ = writeln!(
            human,
            "  hull E: [{}]; N = L^inf(G,E): {}; two-sided invariant: {}; surjectivity: OK ({} group-likes outside N)",
            join(&hull.dims()),
            ok(reconstruction_ok),
            if ru.two_sided_invariant { "yes" } else { "no" },
            surj.len()
        );
        entries.push(json!({
            "origin": origin,
            "omega": state.covec().iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
            "residuals": {
                "unital": num(res.unital),
                "idempotency": num(res.idempotency),
                "min_gram_eigenvalue": num(res.min_gram_eigenvalue),
                "hermitian_defect": num(res.hermitian_defect),
            },
            "coideal_dim": n.dim(),
            "hull_dims": hull.dims(),
            "weighted_dim": hr.weighted_dim,
            "reconstruction_residual": num(hr.reconstruction_residual),
            "right_unit": {
                "holds": ru.holds,
                "residual": num(ru.right_unit.max(ru.in_ideal)),
                "two_sided_invariant": ru.two_sided_invariant,
                "left_unit": ru.left_unit.map(num),
            },
            "cosets": { "equals_n": equals, "zero": zero },
            "surjectivity_checked": surj,
        }));
    }
    let structured = json!({
        "command": "quasi",
        "name": g.name(),
        "seed": seed,
        "intrinsic_group_orders": group.order_sequence(),
        "exhaustive": exhaustive,
        "states": entries,
    });
    Ok(Report { human, structured })
}

fn cmd_coset(path: &Path, omega: &Path, x: Option<usize>, tol: &Tolerance, seed: u64) -> Result<Report> {
    let g = load(path, tol)?;
    let table = wedderburn(&g, tol, seed)?;
    let state = read_state(&g, omega, tol)?;
    let n = coideal_of(&state, tol)?;
    let group = intrinsic_group(&table, tol)?;
    let indices: Vec<usize> = match x {
        Some(i) if i >= group.elements.len() => {
            return Err(Error::Precondition(format!(
                "group-like {i} out of range (intrinsic group has order {})",
                group.elements.len()
            )))
        }
        Some(i) => vec![i],
        None => (0..group.elements.len()).collect(),
    };
    let ideal = j1(&n, tol)?;
    let mut human = format!("quantum group: {} (dim {})\n", g.name(), g.dim());
    let _ = writeln!(human, "N dim {}; intrinsic group order {}", n.dim(), group.elements.len());
    let mut entries = Vec::new();
    for i in indices {
        let xg = &group.elements[i];
        let c = coset(xg, &n, tol)?;
        let d = disjointness_check(xg, &n, tol)?;
        let (moved, tr) = translate_ideal(&ideal, xg, tol)?;
        let (back, _) = translate_ideal(&moved, &xg.inverse(), tol)?;
        if !back.approx_eq(&ideal, tol) {
            return Err(Error::TheoremViolation(format!("translating J1(N) by x{i} and back does not return J1(N)")));
        }
        let surj = match d.outcome {
            Disjointness::Zero => Some(surjectivity_check(&n, xg, tol)?),
            Disjointness::EqualsN => None,
        };
        if let Some(s) = &surj {
            if !s.holds {
                return Err(Error::TheoremViolation(format!(
                    "restriction of J1(N)·x to N has rank {} < dim N = {}",
                    s.image_dim, s.coideal_dim
                )));
            }
        }
        let outcome = match d.outcome {
            Disjointness::EqualsN => "EqualsN",
            Disjointness::Zero => "Zero",
        };
        let _ = writeln!(
            human,
            "x{i}: omega(x) = {:.6}; dim xN = {}; xN ∩ N: {outcome}; tro {:.1e}; projection {:.1e}",
            num(d.omega_at_x),
            c.report.dim,
            c.report.tro,
            c.report.projection_idempotent.max(c.report.projection_image)
        );
        let _ = writeln!(
            human,
            "    J1(N)·x: dim {}, matches (xX)_perp {:.1e}; surjectivity: {}",
            tr.dim,
            tr.preannihilator,
            match &surj {
                Some(s) => format!("rank {} = dim N, OK", s.image_dim),
                None => "n/a (x in N)".into(),
            }
        );
        entries.push(json!({
            "x": i,
            "omega_at_x": num(d.omega_at_x),
            "outcome": d.outcome,
            "coset": {
                "dim": c.report.dim,
                "right_invariance": num(c.report.right_invariance),
                "tro": num(c.report.tro),
                "projection_idempotent": num(c.report.projection_idempotent),
                "projection_image": num(c.report.projection_image),
            },
            "translation": {
                "dim": tr.dim,
                "preannihilator": num(tr.preannihilator),
                "two_sided": tr.two_sided.map(num),
            },
            "surjectivity": surj.map(|s| json!({ "image_dim": s.image_dim, "holds": s.holds })),
        }));
    }
    let structured = json!({
        "command": "coset",
        "name": g.name(),
        "seed": seed,
        "coideal_dim": n.dim(),
        "cosets": entries,
    });
    Ok(Report { human, structured })
}

/// `Z<n>`, `S<n>`, or a product of those joined by `x`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let mut out: Option<FiniteGroup> = None;
    for part in spec.split('x') {
        let bad = || Error::Precondition(format!("unknown group `{spec}`; use Z<n>, S<n> or products like Z2xZ2"));
        let (kind, n) = part.split_at_checked(1).ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let g = match kind {
            "Z" if n >= 1 => FiniteGroup::cyclic(n),
            "S" if (1..=5).contains(&n) => FiniteGroup::symmetric(n),
            _ => return Err(bad()),
        };
        out = Some(match out {
            None => g,
            Some(prev) => prev.product(&g),
        });
    }
    out.ok_or_else(|| Error::Precondition("empty group".into()))
}

fn cmd_crossed(
    path: &Path,
    group_spec: &str,
    perm: Option<&str>,
    out: Option<&Path>,
    tol: &Tolerance,
    seed: u64,
) -> Result<Report> {
    let g = load(path, tol)?;
    let group = parse_group(group_spec)?;
    let action = match perm {
        None => HopfAction::trivial(&g, group, group_spec),
        Some(p) => {
            let n = group_spec
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::Precondition("--perm needs a cyclic group Z<n>".into()))?;
            let generator = p
                .split(',')
                .map(|w| w.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Precondition(format!("bad permutation `{p}`")))?;
            HopfAction::cyclic_permutation(&g, n, generator)?
        }
    };
    let product = build_crossed_product(&g, &action, tol)?;
    let text = write_definition(&product.group);
    let q = Arc::new(product.group);
    let table_g = wedderburn(&g, tol, seed)?;
    let (_, report) = verify_crossed_irr(&table_g, &q, &action, tol, seed)?;
    let axioms = verify_axioms(&q, tol);
    if let Some(p) = out {
        std::fs::write(p, &text)?;
    }

    let mut human = format!("product: {} (dim {})\n", q.name(), q.dim());
    let _ = writeln!(human, "action: {}", action.fingerprint());
    let outcomes: Vec<String> = product
        .outcomes
        .iter()
        .map(|o| format!("{} {}", o.rule, if o.passed { "passes" } else { "fails" }))
        .collect();
    let _ = writeln!(human, "rule: {} ({})", product.rule, outcomes.join(", "));
    let _ = writeln!(human, "axioms: {} (max residual {:.3e})", ok(axioms.passed()), axioms.max_residual());
    let _ = writeln!(human, "irr: {} {}", join(&report.product_dims), ok(report.multiset_matches));
    let _ = writeln!(human, "irr: duplicated {}", ok(report.multiset_matches));
    let _ = writeln!(
        human,
        "haar fiber: {}",
        if report.haar_fiber_residual == 0.0 { "exact".to_string() } else { format!("{:.3e}", report.haar_fiber_residual) }
    );
    match out {
        Some(p) => {
            let _ = writeln!(human, "wrote {}", p.display());
        }
        None => human.push_str(&text),
    }
    let structured = json!({
        "command": "crossed",
        "name": q.name(),
        "dim": q.dim(),
        "seed": seed,
        "action": action.fingerprint(),
        "rule": product.rule,
        "outcomes": product.outcomes.iter().map(|o| json!({
            "rule": o.rule,
            "passed": o.passed,
            "max_residual": num(o.max_residual),
        })).collect::<Vec<_>>(),
        "axioms_passed": axioms.passed(),
        "factor_dims": report.factor_dims,
        "product_dims": report.product_dims,
        "multiset_matches": report.multiset_matches,
        "matches": report.matches.iter().map(|m| json!({
            "product_block": m.product_block,
            "factor_block": m.factor_block,
            "twist": m.twist,
        })).collect::<Vec<_>>(),
        "haar_fiber_residual": num(report.haar_fiber_residual),
    });
    Ok(Report { human, structured })
}

//! Command-line surface: solve, transform, spectrum, experiment, and
//! crosscheck subcommands over the library solvers.
//!
//! Exit codes: 0 yes / success, 1 no / discrepancies, 2 unknown (budgets,
//! missing decompositions), 3 usage or input errors. Reports are single
//! line-oriented records on stdout; timing goes to stderr so reports stay
//! byte-stable for fixed inputs and seeds.

pub mod experiment;

use crate::crosscheck;
use crate::graph::Graph;
use crate::io::{emit_graph, parse_graph};
use crate::oracle::{oracle_decide, oracle_spectrum, Budget, DEFAULT_NODE_BUDGET};
use crate::poly;
use crate::query::{
    validate_walk, validate_witness, Query, QueryKind, ResidueConstraint, Verdict,
};
use crate::reductions::{self, TranslatedWitness, TwoDisjointPathsInstance};
use crate::treewidth::{
    self, compute_decomposition, make_nice, tw_decide_with_cap, tw_residue_spectrum,
    DecompositionOutcome, NiceDecomposition, DEFAULT_STATE_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "modgraph", version, about = "Simple paths and cycles under modular length constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one modular path or cycle query.
    Solve(SolveArgs),
    /// Apply a reduction, writing the transformed instance and its map.
    Transform(TransformArgs),
    /// Report the achieved residue spectrum.
    Spectrum(SpectrumArgs),
    /// Run an ensemble probe from a spec file.
    Experiment(ExperimentArgs),
    /// Replay solver/oracle equivalence suites.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Oracle,
    Walk,
    Dag,
    ParityPath,
    ParityCycle,
    DirectedOddCycle,
    Treewidth,
    ModcycleZero,
    Auto,
}

impl SolverArg {
    fn name(self) -> &'static str {
        match self {
            SolverArg::Oracle => "oracle",
            SolverArg::Walk => "walk",
            SolverArg::Dag => "dag",
            SolverArg::ParityPath => "parity-path",
            SolverArg::ParityCycle => "parity-cycle",
            SolverArg::DirectedOddCycle => "directed-odd-cycle",
            SolverArg::Treewidth => "treewidth",
            SolverArg::ModcycleZero => "modcycle-zero",
            SolverArg::Auto => "auto",
        }
    }
}

const CAPABILITY_MATRIX: &str = "\
solver              input       kind   modulus
oracle              any         both   any (exhaustive, budgeted)
walk                any         path   any (walks, not simple paths)
dag                 directed    path   any (acyclic input only)
parity-path         undirected  path   2
parity-cycle        undirected  cycle  2
directed-odd-cycle  directed    cycle  2, allowed={1}
treewidth           undirected  both   any (needs a decomposition)
modcycle-zero       undirected  cycle  any, allowed={0}
auto                any         both   any (dispatches the above)";

#[derive(Args, Debug)]
struct SolveArgs {
    /// Graph file in edge-list format.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Modulus q >= 1.
    #[arg(long)]
    q: u32,
    /// Requested remainder; may be combined with --allowed.
    #[arg(long)]
    p: Option<i64>,
    /// Allowed remainder set, comma separated.
    #[arg(long, value_delimiter = ',')]
    allowed: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    solver: SolverArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search-node budget; MODGRAPH_BUDGET overrides the default.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 8)]
    width_cap: usize,
    /// Treewidth DP state cap.
    #[arg(long)]
    state_cap: Option<usize>,
    /// Use this tree decomposition instead of computing one.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Write the tree decomposition that was used.
    #[arg(long)]
    emit_td: Option<PathBuf>,
    /// Trusted treewidth bound above which a divisible cycle is guaranteed
    /// (modcycle-zero only; no default is built in).
    #[arg(long)]
    existence_threshold: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReductionArg {
    CycleToPath,
    PathToCycle,
    ShiftRemainder,
    ModulusMultiply,
    HardnessPath,
    HardnessCycle,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long, value_enum)]
    reduction: ReductionArg,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: u32,
    /// Forced cycle edge for cycle-to-path; omitting it runs the driver
    /// over every edge (requires --solve-with).
    #[arg(long, num_args = 2)]
    edge: Option<Vec<u32>>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Second terminal pair for the hardness gadgets.
    #[arg(long)]
    s2: Option<u32>,
    #[arg(long)]
    t2: Option<u32>,
    /// New remainder for shift-remainder.
    #[arg(long)]
    p_new: Option<i64>,
    /// Modulus multiplier for modulus-multiply.
    #[arg(long)]
    k: Option<u32>,
    /// Write the transformed graph here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the instance map here instead of stdout.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Solve the transformed instance and back-translate the witness.
    #[arg(long, value_enum)]
    solve_with: Option<SolverArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 8)]
    width_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Oracle,
    Treewidth,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum, default_value_t = BackendArg::Oracle)]
    backend: BackendArg,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 8)]
    width_cap: usize,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Experiment spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Override the spec's seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Parity,
    Characterizations,
    BlockLemma,
    Walks,
    Directed,
    Treewidth,
    Reductions,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Largest vertex count for enumerated suites.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Sample count for randomized suites.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Entry point used by the binary.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_captured(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Entry point with injected output streams, used by tests.
pub fn run_captured<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("modgraph".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout conventions itself.
            if e.use_stderr() {
                let _ = writeln!(err, "{e}");
                return 3;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let started = std::time::Instant::now();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(&args, out, err),
        Command::Transform(args) => cmd_transform(&args, out, err),
        Command::Spectrum(args) => cmd_spectrum(&args, out, err),
        Command::Experiment(args) => cmd_experiment(&args, out, err),
        Command::Crosscheck(args) => cmd_crosscheck(&args, out, err),
    };
    let _ = writeln!(err, "# elapsed_ms={}", started.elapsed().as_millis());
    code
}

fn fail(err: &mut dyn Write, message: &str) -> i32 {
    let _ = writeln!(err, "error: {message}");
    3
}

fn env_budget() -> Option<u64> {
    std::env::var("MODGRAPH_BUDGET").ok()?.parse().ok()
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(env_budget).unwrap_or(DEFAULT_NODE_BUDGET)
}

fn load_graph(path: &Path) -> Result<(Graph, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let g = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((g, sha256_hex(text.as_bytes())))
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        })
}

fn build_constraint(q: u32, p: Option<i64>, allowed: &Option<Vec<u32>>) -> Result<ResidueConstraint, String> {
    match (p, allowed) {
        (Some(p), None) => {
            if q == 0 {
                return Err("modulus must be at least 1".into());
            }
            Ok(ResidueConstraint::single(p, q))
        }
        (None, Some(set)) => {
            ResidueConstraint::new(q, set.iter().copied()).map_err(|e| e.to_string())
        }
        (Some(p), Some(set)) => {
            let mut all: Vec<u32> = set.clone();
            all.push(p.rem_euclid(q.max(1) as i64) as u32);
            ResidueConstraint::new(q, all).map_err(|e| e.to_string())
        }
        (None, None) => Err("need --p or --allowed".into()),
    }
}

fn build_query(kind: KindArg, s: Option<u32>, t: Option<u32>, c: ResidueConstraint) -> Result<Query, String> {
    let query = match kind {
        KindArg::Path => {
            let (s, t) = s.zip(t).ok_or("path queries need --s and --t")?;
            Query::path(s, t, c)
        }
        KindArg::Cycle => {
            if s.is_some() || t.is_some() {
                return Err("cycle queries take no endpoints".into());
            }
            Query::cycle(c)
        }
    };
    Ok(query)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WitnessMode {
    Simple,
    Walk,
    Existential,
    None,
}

struct SolveOutcome {
    verdict: Verdict,
    solver_used: &'static str,
    mode: WitnessMode,
    budget_used: u64,
}

struct SolveOptions {
    budget: u64,
    width_cap: usize,
    state_cap: usize,
    td: Option<NiceDecomposition>,
    emit_td: Option<PathBuf>,
    existence_threshold: Option<usize>,
}

fn capability_error(solver: SolverArg, reason: &str) -> String {
    format!("solver {} cannot handle this query: {reason}\n{CAPABILITY_MATRIX}", solver.name())
}

fn decomposition_for(
    g: &Graph,
    opts: &mut SolveOptions,
) -> Result<Result<NiceDecomposition, String>, String> {
    if let Some(nd) = opts.td.take() {
        return Ok(Ok(nd));
    }
    match compute_decomposition(g, opts.width_cap, opts.budget).map_err(|e| e.to_string())? {
        DecompositionOutcome::Found(td) => {
            if let Some(path) = &opts.emit_td {
                std::fs::write(path, treewidth::emit_decomposition(&td))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let nd = make_nice(&td, g).map_err(|e| e.to_string())?;
            Ok(Ok(nd))
        }
        DecompositionOutcome::NotFound(f) => Ok(Err(f.reason)),
    }
}

fn dispatch_solver(
    solver: SolverArg,
    g: &Graph,
    query: &Query,
    opts: &mut SolveOptions,
) -> Result<SolveOutcome, String> {
    let q = query.constraint.modulus();
    let allowed = query.constraint.allowed();
    match solver {
        SolverArg::Oracle => {
            let mut budget = Budget::new(opts.budget);
            let verdict = oracle_decide(g, query, &mut budget).map_err(|e| e.to_string())?;
            Ok(SolveOutcome {
                verdict,
                solver_used: "oracle",
                mode: WitnessMode::Simple,
                budget_used: budget.used(),
            })
        }
        SolverArg::Walk => {
            if query.kind != QueryKind::Path {
                return Err(capability_error(solver, "walk solver answers path queries"));
            }
            let (s, t) = (query.source.unwrap(), query.target.unwrap());
            let verdict =
                poly::walk_decide(g, s, t, &query.constraint).map_err(|e| e.to_string())?;
            Ok(SolveOutcome {
                verdict,
                solver_used: "walk",
                mode: WitnessMode::Walk,
                budget_used: 0,
            })
        }
        SolverArg::Dag => {
            if query.kind != QueryKind::Path {
                return Err(capability_error(solver, "dag solver answers path queries"));
            }
            let (s, t) = (query.source.unwrap(), query.target.unwrap());
            let verdict =
                poly::dag_decide(g, s, t, &query.constraint).map_err(|e| e.to_string())?;
            Ok(SolveOutcome {
                verdict,
                solver_used: "dag",
                mode: WitnessMode::Simple,
                budget_used: 0,
            })
        }
        SolverArg::ParityPath => {
            if g.is_directed() || query.kind != QueryKind::Path || q != 2 {
                return Err(capability_error(
                    solver,
                    "parity-path needs an undirected graph, a path query, and q=2",
                ));
            }
            let (s, t) = (query.source.unwrap(), query.target.unwrap());
            let mut verdict = Verdict::No;
            for &p in allowed {
                let v = poly::parity_path_decide(g, s, t, p as u8).map_err(|e| e.to_string())?;
                if v.is_yes() {
                    verdict = v;
                    break;
                }
            }
            Ok(SolveOutcome {
                verdict,
                solver_used: "parity-path",
                mode: WitnessMode::Simple,
                budget_used: 0,
            })
        }
        SolverArg::ParityCycle => {
            if g.is_directed() || query.kind != QueryKind::Cycle || q != 2 {
                return Err(capability_error(
                    solver,
                    "parity-cycle needs an undirected graph, a cycle query, and q=2",
                ));
            }
            let mut verdict = Verdict::No;
            for &p in allowed {
                let v = poly::parity_cycle_decide(g, p as u8).map_err(|e| e.to_string())?;
                if v.is_yes() {
                    verdict = v;
                    break;
                }
            }
            Ok(SolveOutcome {
                verdict,
                solver_used: "parity-cycle",
                mode: WitnessMode::Simple,
                budget_used: 0,
            })
        }
        SolverArg::DirectedOddCycle => {
            if !g.is_directed()
                || query.kind != QueryKind::Cycle
                || q != 2
                || !(allowed.len() == 1 && allowed.contains(&1))
            {
                return Err(capability_error(
                    solver,
                    "directed-odd-cycle needs a directed graph, a cycle query, q=2, allowed={1}",
                ));
            }
            let verdict = poly::directed_odd_cycle(g).map_err(|e| e.to_string())?;
            Ok(SolveOutcome {
                verdict,
                solver_used: "directed-odd-cycle",
                mode: WitnessMode::Simple,
                budget_used: 0,
            })
        }
        SolverArg::Treewidth => {
            if g.is_directed() {
                return Err(capability_error(solver, "treewidth DP needs an undirected graph"));
            }
            let nd = match decomposition_for(g, opts)? {
                Ok(nd) => nd,
                Err(reason) => {
                    return Ok(SolveOutcome {
                        verdict: Verdict::Unknown(format!("decomposition not found: {reason}")),
                        solver_used: "treewidth",
                        mode: WitnessMode::None,
                        budget_used: 0,
                    })
                }
            };
            let verdict =
                tw_decide_with_cap(g, query, &nd, opts.state_cap).map_err(|e| e.to_string())?;
            Ok(SolveOutcome {
                verdict,
                solver_used: "treewidth",
                mode: WitnessMode::Simple,
                budget_used: 0,
            })
        }
        SolverArg::ModcycleZero => {
            if g.is_directed()
                || query.kind != QueryKind::Cycle
                || !(allowed.len() == 1 && allowed.contains(&0))
            {
                return Err(capability_error(
                    solver,
                    "modcycle-zero needs an undirected graph, a cycle query, allowed={0}",
                ));
            }
            let verdict = treewidth::modcycle_zero_decide(
                g,
                q,
                opts.width_cap,
                opts.budget,
                opts.existence_threshold,
            )
            .map_err(|e| e.to_string())?;
            let mode = match &verdict {
                Verdict::YesExistential(_) => WitnessMode::Existential,
                _ => WitnessMode::Simple,
            };
            Ok(SolveOutcome {
                verdict,
                solver_used: "modcycle-zero",
                mode,
                budget_used: 0,
            })
        }
        SolverArg::Auto => dispatch_auto(g, query, opts),
    }
}

/// Oracle fallback size gate used by the auto dispatcher.
const AUTO_ORACLE_MAX_N: usize = 14;

fn dispatch_auto(g: &Graph, query: &Query, opts: &mut SolveOptions) -> Result<SolveOutcome, String> {
    let q = query.constraint.modulus();
    let allowed = query.constraint.allowed();
    if !g.is_directed() {
        if q == 1 {
            match query.kind {
                QueryKind::Path => return dispatch_solver(SolverArg::Walk, g, query, opts),
                QueryKind::Cycle => {
                    for p in [1u8, 0] {
                        let v = poly::parity_cycle_decide(g, p).map_err(|e| e.to_string())?;
                        if v.is_yes() {
                            return Ok(SolveOutcome {
                                verdict: v,
                                solver_used: "parity-cycle",
                                mode: WitnessMode::Simple,
                                budget_used: 0,
                            });
                        }
                    }
                    return Ok(SolveOutcome {
                        verdict: Verdict::No,
                        solver_used: "parity-cycle",
                        mode: WitnessMode::None,
                        budget_used: 0,
                    });
                }
            }
        }
        if q == 2 {
            let target = match query.kind {
                QueryKind::Path => SolverArg::ParityPath,
                QueryKind::Cycle => SolverArg::ParityCycle,
            };
            return dispatch_solver(target, g, query, opts);
        }
        if query.kind == QueryKind::Cycle && allowed.len() == 1 && allowed.contains(&0) {
            return dispatch_solver(SolverArg::ModcycleZero, g, query, opts);
        }
        // General undirected case: treewidth DP when a decomposition is
        // found, exhaustive search on small graphs otherwise.
        match decomposition_for(g, opts)? {
            Ok(nd) => {
                let verdict = tw_decide_with_cap(g, query, &nd, opts.state_cap)
                    .map_err(|e| e.to_string())?;
                return Ok(SolveOutcome {
                    verdict,
                    solver_used: "treewidth",
                    mode: WitnessMode::Simple,
                    budget_used: 0,
                });
            }
            Err(reason) => {
                if g.vertex_count() <= AUTO_ORACLE_MAX_N {
                    return dispatch_solver(SolverArg::Oracle, g, query, opts);
                }
                return Ok(SolveOutcome {
                    verdict: Verdict::Unknown(format!(
                        "no decomposition ({reason}) and {} vertices exceed the exhaustive gate of {AUTO_ORACLE_MAX_N}",
                        g.vertex_count()
                    )),
                    solver_used: "auto",
                    mode: WitnessMode::None,
                    budget_used: 0,
                });
            }
        }
    }
    // Directed inputs.
    if q == 1 {
        match query.kind {
            QueryKind::Path => return dispatch_solver(SolverArg::Walk, g, query, opts),
            QueryKind::Cycle => {
                let verdict = poly::directed_any_cycle(g).map_err(|e| e.to_string())?;
                return Ok(SolveOutcome {
                    verdict,
                    solver_used: "directed-any-cycle",
                    mode: WitnessMode::Simple,
                    budget_used: 0,
                });
            }
        }
    }
    if query.kind == QueryKind::Path {
        if let Ok(outcome) = dispatch_solver(SolverArg::Dag, g, query, opts) {
            return Ok(SolveOutcome {
                solver_used: "dag",
                ..outcome
            });
        }
    }
    if query.kind == QueryKind::Cycle && q == 2 && allowed.len() == 1 && allowed.contains(&1) {
        return dispatch_solver(SolverArg::DirectedOddCycle, g, query, opts);
    }
    if g.vertex_count() <= AUTO_ORACLE_MAX_N {
        return dispatch_solver(SolverArg::Oracle, g, query, opts);
    }
    Ok(SolveOutcome {
        verdict: Verdict::Unknown(format!(
            "no polynomial solver applies to this directed query and {} vertices exceed the exhaustive gate of {AUTO_ORACLE_MAX_N}",
            g.vertex_count()
        )),
        solver_used: "auto",
        mode: WitnessMode::None,
        budget_used: 0,
    })
}

fn sanitize(text: &str) -> String {
    text.chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect()
}

fn verdict_exit(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Yes(_) | Verdict::YesExistential(_) => 0,
        Verdict::No => 1,
        Verdict::Unknown(_) => 2,
    }
}

fn csv(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (g, digest) = match load_graph(&args.graph) {
        Ok(x) => x,
        Err(m) => return fail(err, &m),
    };
    let constraint = match build_constraint(args.q, args.p, &args.allowed) {
        Ok(c) => c,
        Err(m) => return fail(err, &m),
    };
    let query = match build_query(args.kind, args.s, args.t, constraint) {
        Ok(q) => q,
        Err(m) => return fail(err, &m),
    };
    let td = match &args.td {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(err, &format!("cannot read {}: {e}", path.display())),
            };
            match treewidth::parse_decomposition(&text).and_then(|td| make_nice(&td, &g)) {
                Ok(nd) => Some(nd),
                Err(e) => return fail(err, &e.to_string()),
            }
        }
    };
    let mut opts = SolveOptions {
        budget: resolve_budget(args.budget),
        width_cap: args.width_cap,
        state_cap: args.state_cap.unwrap_or(DEFAULT_STATE_CAP),
        td,
        emit_td: args.emit_td.clone(),
        existence_threshold: args.existence_threshold,
    };
    let outcome = match dispatch_solver(args.solver, &g, &query, &mut opts) {
        Ok(o) => o,
        Err(m) => return fail(err, &m),
    };
    // Re-validate any witness before emitting the report.
    if let Verdict::Yes(w) = &outcome.verdict {
        let ok = match outcome.mode {
            WitnessMode::Walk => validate_walk(&g, &query, w),
            _ => validate_witness(&g, &query, w),
        };
        if !ok {
            let _ = writeln!(err, "internal error: witness failed re-validation");
            return 4;
        }
    }
    let witness = match &outcome.verdict {
        Verdict::Yes(w) => csv(&w.vertices),
        _ => "-".into(),
    };
    let reason = match &outcome.verdict {
        Verdict::Unknown(r) | Verdict::YesExistential(r) => sanitize(r),
        _ => "-".into(),
    };
    let verdict_name = match &outcome.verdict {
        Verdict::Yes(_) => "yes",
        Verdict::YesExistential(_) => "yes-existential",
        Verdict::No => "no",
        Verdict::Unknown(_) => "unknown",
    };
    let mode = match outcome.mode {
        WitnessMode::Simple => "simple",
        WitnessMode::Walk => "walk",
        WitnessMode::Existential => "existential",
        WitnessMode::None => "-",
    };
    let allowed: Vec<u32> = query.constraint.allowed().iter().copied().collect();
    let _ = writeln!(
        out,
        "solve solver={} graph={} digest=sha256:{digest} kind={} s={} t={} q={} allowed={} verdict={verdict_name} witness={witness} mode={mode} reason={reason} budget_limit={} budget_used={} seed={} width_cap={}",
        outcome.solver_used,
        args.graph.display(),
        query.kind,
        query.source.map_or("-".into(), |v| v.to_string()),
        query.target.map_or("-".into(), |v| v.to_string()),
        query.constraint.modulus(),
        csv(&allowed),
        opts.budget,
        outcome.budget_used,
        args.seed,
        args.width_cap,
    );
    verdict_exit(&outcome.verdict)
}

fn write_or_print(
    target: &Option<PathBuf>,
    content: &str,
    out: &mut dyn Write,
) -> Result<String, String> {
    match target {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Ok(path.display().to_string())
        }
        None => {
            let _ = write!(out, "{content}");
            Ok("stdout".into())
        }
    }
}

fn cmd_transform(args: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (g, _) = match load_graph(&args.graph) {
        Ok(x) => x,
        Err(m) => return fail(err, &m),
    };
    let budget = resolve_budget(args.budget);
    let mut opts = SolveOptions {
        budget,
        width_cap: args.width_cap,
        state_cap: DEFAULT_STATE_CAP,
        td: None,
        emit_td: None,
        existence_threshold: None,
    };
    let solver = |solver_arg: SolverArg| {
        move |graph: &Graph, query: &Query| -> Result<Verdict, String> {
            let mut opts = SolveOptions {
                budget,
                width_cap: 8,
                state_cap: DEFAULT_STATE_CAP,
                td: None,
                emit_td: None,
                existence_threshold: None,
            };
            dispatch_solver(solver_arg, graph, query, &mut opts).map(|o| o.verdict)
        }
    };

    // Driver forms: no single transformed instance, just a verdict.
    let driver_verdict: Option<Result<Verdict, String>> = match args.reduction {
        ReductionArg::CycleToPath if args.edge.is_none() => {
            let Some(sw) = args.solve_with else {
                return fail(err, "cycle-to-path without --edge runs the driver: give --solve-with");
            };
            Some(reductions::cycle_to_path_driver(&g, args.p, args.q, solver(sw)))
        }
        ReductionArg::ModulusMultiply => {
            let Some(sw) = args.solve_with else {
                return fail(err, "modulus-multiply is a driver: give --solve-with");
            };
            let Some(k) = args.k else {
                return fail(err, "modulus-multiply needs --k");
            };
            let (Some(s), Some(t)) = (args.s, args.t) else {
                return fail(err, "modulus-multiply needs --s and --t");
            };
            Some(reductions::modulus_multiply_driver(
                &g, s, t, args.p, args.q, k, solver(sw),
            ))
        }
        _ => None,
    };
    if let Some(result) = driver_verdict {
        let verdict = match result {
            Ok(v) => v,
            Err(m) => return fail(err, &m),
        };
        let witness = match &verdict {
            Verdict::Yes(w) => csv(&w.vertices),
            _ => "-".into(),
        };
        let name = match args.reduction {
            ReductionArg::CycleToPath => "cycle-to-path-driver",
            _ => "modulus-multiply-driver",
        };
        let _ = writeln!(
            out,
            "transform reduction={name} verdict={} witness={witness}",
            match &verdict {
                Verdict::Yes(_) => "yes",
                Verdict::YesExistential(_) => "yes-existential",
                Verdict::No => "no",
                Verdict::Unknown(_) => "unknown",
            }
        );
        return verdict_exit(&verdict);
    }

    let output = match args.reduction {
        ReductionArg::CycleToPath => {
            let e = args.edge.as_ref().expect("driver case handled");
            reductions::cycle_to_path(&g, args.p, args.q, (e[0], e[1])).map_err(|e| e.to_string())
        }
        ReductionArg::PathToCycle => {
            let (Some(s), Some(t)) = (args.s, args.t) else {
                return fail(err, "path-to-cycle needs --s and --t");
            };
            reductions::path_to_cycle(&g, s, t, args.p, args.q).map_err(|e| e.to_string())
        }
        ReductionArg::ShiftRemainder => {
            let (Some(s), Some(t)) = (args.s, args.t) else {
                return fail(err, "shift-remainder needs --s and --t");
            };
            let Some(p_new) = args.p_new else {
                return fail(err, "shift-remainder needs --p-new");
            };
            reductions::shift_remainder(&g, s, t, args.p, args.q, p_new).map_err(|e| e.to_string())
        }
        ReductionArg::HardnessPath | ReductionArg::HardnessCycle => {
            let (Some(s), Some(t), Some(s2), Some(t2)) = (args.s, args.t, args.s2, args.t2) else {
                return fail(err, "hardness gadgets need --s --t --s2 --t2");
            };
            match TwoDisjointPathsInstance::new(g.clone(), s, t, s2, t2) {
                Err(e) => Err(e.to_string()),
                Ok(inst) => {
                    if args.p < 0 {
                        Err("gadget remainders must be nonnegative".into())
                    } else if args.reduction == ReductionArg::HardnessPath {
                        reductions::hardness_path_gadget(&inst, args.p as u32, args.q)
                            .map_err(|e| e.to_string())
                    } else {
                        reductions::hardness_cycle_gadget(&inst, args.p as u32, args.q)
                            .map_err(|e| e.to_string())
                    }
                }
            }
        }
        ReductionArg::ModulusMultiply => unreachable!("driver case handled"),
    };
    let output = match output {
        Ok(o) => o,
        Err(m) => return fail(err, &m),
    };

    let reduction_name = match args.reduction {
        ReductionArg::CycleToPath => "cycle-to-path",
        ReductionArg::PathToCycle => "path-to-cycle",
        ReductionArg::ShiftRemainder => "shift-remainder",
        ReductionArg::ModulusMultiply => "modulus-multiply",
        ReductionArg::HardnessPath => "hardness-path",
        ReductionArg::HardnessCycle => "hardness-cycle",
    };
    let allowed: Vec<u32> = output.query.constraint.allowed().iter().copied().collect();
    let _ = writeln!(
        out,
        "transform reduction={} vertices={} edges={} kind={} s={} t={} q={} allowed={}",
        reduction_name,
        output.graph.vertex_count(),
        output.graph.edge_count(),
        output.query.kind,
        output.query.source.map_or("-".into(), |v| v.to_string()),
        output.query.target.map_or("-".into(), |v| v.to_string()),
        output.query.constraint.modulus(),
        csv(&allowed),
    );
    if let Err(m) = write_or_print(&args.out, &emit_graph(&output.graph), out) {
        return fail(err, &m);
    }
    if let Err(m) = write_or_print(&args.map, &reductions::emit_map(&output.instance_map), out) {
        return fail(err, &m);
    }

    if let Some(sw) = args.solve_with {
        let outcome = match dispatch_solver(sw, &output.graph, &output.query, &mut opts) {
            Ok(o) => o,
            Err(m) => return fail(err, &m),
        };
        match &outcome.verdict {
            Verdict::Yes(w) => {
                let _ = writeln!(out, "result verdict=yes witness={}", csv(&w.vertices));
                match output.back_translate(w) {
                    Some(TranslatedWitness::One(orig)) => {
                        let _ = writeln!(out, "input-witness {}", csv(&orig.vertices));
                    }
                    Some(TranslatedWitness::Two(a, b)) => {
                        let _ = writeln!(out, "input-witness-1 {}", csv(&a.vertices));
                        let _ = writeln!(out, "input-witness-2 {}", csv(&b.vertices));
                    }
                    None => {
                        let _ = writeln!(err, "internal error: back-translation failed");
                        return 4;
                    }
                }
            }
            v => {
                let _ = writeln!(
                    out,
                    "result verdict={}",
                    match v {
                        Verdict::No => "no",
                        Verdict::Unknown(_) => "unknown",
                        _ => "yes-existential",
                    }
                );
            }
        }
        return verdict_exit(&outcome.verdict);
    }
    0
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (g, _) = match load_graph(&args.graph) {
        Ok(x) => x,
        Err(m) => return fail(err, &m),
    };
    let kind = match args.kind {
        KindArg::Path => QueryKind::Path,
        KindArg::Cycle => QueryKind::Cycle,
    };
    if kind == QueryKind::Path && (args.s.is_none() || args.t.is_none()) {
        return fail(err, "path spectra need --s and --t");
    }
    let budget_limit = resolve_budget(args.budget);
    match args.backend {
        BackendArg::Oracle => {
            let mut budget = Budget::new(budget_limit);
            match oracle_spectrum(&g, kind, args.s, args.t, args.q, &mut budget) {
                Ok(spectrum) => {
                    let _ = writeln!(out, "{}", spectrum.report_line());
                    0
                }
                Err(crate::oracle::OracleError::BudgetExhausted(limit)) => {
                    let _ = writeln!(err, "budget of {limit} nodes exhausted");
                    2
                }
                Err(e) => fail(err, &e.to_string()),
            }
        }
        BackendArg::Treewidth => {
            if g.is_directed() {
                return fail(err, "treewidth backend needs an undirected graph");
            }
            let nd = match compute_decomposition(&g, args.width_cap, budget_limit) {
                Ok(DecompositionOutcome::Found(td)) => match make_nice(&td, &g) {
                    Ok(nd) => nd,
                    Err(e) => return fail(err, &e.to_string()),
                },
                Ok(DecompositionOutcome::NotFound(f)) => {
                    let _ = writeln!(err, "decomposition not found: {}", f.reason);
                    return 2;
                }
                Err(e) => return fail(err, &e.to_string()),
            };
            match tw_residue_spectrum(&g, kind, args.s, args.t, args.q, &nd, DEFAULT_STATE_CAP) {
                Ok(achieved) => {
                    let residues: Vec<String> =
                        achieved.iter().map(|r| r.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "spectrum {kind} q={} achieved={{{}}}",
                        args.q,
                        residues.join(",")
                    );
                    0
                }
                Err(treewidth::TwError::StateBudget(cap)) => {
                    let _ = writeln!(err, "state budget of {cap} exhausted");
                    2
                }
                Err(e) => fail(err, &e.to_string()),
            }
        }
    }
}

fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return fail(err, &format!("cannot read {}: {e}", args.spec.display())),
    };
    let mut spec = match experiment::ExperimentSpec::parse(&text) {
        Ok(s) => s,
        Err(m) => return fail(err, &m),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let report = experiment::run_experiment(&spec, resolve_budget(args.budget));
    let _ = write!(out, "{report}");
    0
}

fn cmd_crosscheck(args: &CrosscheckArgs, out: &mut dyn Write, _err: &mut dyn Write) -> i32 {
    let mut reports = Vec::new();
    let n = args.max_n;
    let directed_n = n.min(5);
    let run_suite = |s: SuiteArg| args.suite == SuiteArg::All || args.suite == s;
    if run_suite(SuiteArg::Parity) {
        reports.push(crosscheck::check_parity_solvers(n.min(7)));
    }
    if run_suite(SuiteArg::Characterizations) {
        reports.push(crosscheck::check_parity_characterizations(n.min(7)));
    }
    if run_suite(SuiteArg::BlockLemma) {
        reports.push(crosscheck::check_block_lemma(n.min(7)));
    }
    if run_suite(SuiteArg::Walks) {
        reports.push(crosscheck::check_walks(n.min(6), directed_n.min(4)));
    }
    if run_suite(SuiteArg::Directed) {
        reports.push(crosscheck::check_directed_odd_cycle(
            directed_n,
            args.samples,
            args.seed,
        ));
    }
    if run_suite(SuiteArg::Treewidth) {
        reports.push(crosscheck::check_treewidth_dp(args.samples, args.seed));
    }
    if run_suite(SuiteArg::Reductions) {
        reports.push(crosscheck::check_reductions(args.samples, args.seed));
    }
    let mut clean = true;
    for report in &reports {
        let _ = writeln!(out, "{}", report.summary_line());
        for d in &report.discrepancies {
            clean = false;
            let _ = writeln!(out, "discrepancy: {}", d.detail);
            for line in d.graph.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    if clean {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_strings(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_captured(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_graph(dir: &std::path::Path, name: &str, text: &str) -> String {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    #[test]
    fn solve_parity_cycle_on_c5() {
        let dir = tempfile::tempdir().unwrap();
        let c5 = write_graph(
            dir.path(),
            "c5.g",
            "g undirected 5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n",
        );
        let (code, out, _) = run_to_strings(&[
            "solve", "--graph", &c5, "--kind", "cycle", "--q", "2", "--p", "1",
            "--solver", "parity-cycle",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("verdict=yes"));
        assert!(out.contains("witness=0,1,2,3,4"));
    }

    #[test]
    fn solve_auto_is_tristate() {
        let dir = tempfile::tempdir().unwrap();
        let c5 = write_graph(
            dir.path(),
            "c5.g",
            "g undirected 5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n",
        );
        let (code, out, _) = run_to_strings(&[
            "solve", "--graph", &c5, "--kind", "cycle", "--q", "3", "--p", "0",
        ]);
        assert_eq!(code, 1, "{out}");
        // K_5 with a tiny width cap and no threshold: unknown.
        let k5 = write_graph(
            dir.path(),
            "k5.g",
            "g undirected 5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
        );
        let (code, out, _) = run_to_strings(&[
            "solve", "--graph", &k5, "--kind", "path", "--s", "0", "--t", "1", "--q",
            "3", "--p", "0", "--solver", "treewidth", "--width-cap", "2",
        ]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("verdict=unknown"));
        assert!(out.contains("reason=decomposition_not_found"));
    }

    #[test]
    fn capability_mismatch_exits_above_two() {
        let dir = tempfile::tempdir().unwrap();
        let c5 = write_graph(
            dir.path(),
            "c5.g",
            "g undirected 5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n",
        );
        let (code, _, err) = run_to_strings(&[
            "solve", "--graph", &c5, "--kind", "cycle", "--q", "3", "--p", "1",
            "--solver", "parity-cycle",
        ]);
        assert_eq!(code, 3);
        assert!(err.contains("solver"), "{err}");
    }

    #[test]
    fn transform_writes_graph_and_map() {
        let dir = tempfile::tempdir().unwrap();
        let c4 = write_graph(dir.path(), "c4.g", "g undirected 4 4\n0 1\n1 2\n2 3\n0 3\n");
        let out_path = dir.path().join("out.g");
        let map_path = dir.path().join("out.map");
        let (code, out, _) = run_to_strings(&[
            "transform", "--reduction", "path-to-cycle", "--graph", &c4, "--s", "0",
            "--t", "2", "--p", "0", "--q", "2",
            "--out", out_path.to_str().unwrap(), "--map", map_path.to_str().unwrap(),
            "--solve-with", "oracle",
        ]);
        assert_eq!(code, 0, "{out}");
        let emitted = std::fs::read_to_string(&out_path).unwrap();
        assert!(emitted.starts_with("g undirected 8 9\n"), "{emitted}");
        let map = std::fs::read_to_string(&map_path).unwrap();
        assert!(map.starts_with("m path-to-cycle\nfresh-edge 0 2\n"), "{map}");
        assert!(out.contains("input-witness 0,"), "{out}");
    }

    #[test]
    fn spectrum_backends_agree() {
        let dir = tempfile::tempdir().unwrap();
        let k4 = write_graph(
            dir.path(),
            "k4.g",
            "g undirected 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
        );
        let (code, oracle_out, _) = run_to_strings(&[
            "spectrum", "--graph", &k4, "--kind", "cycle", "--q", "3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(oracle_out, "spectrum cycle q=3 achieved={0,1}\n");
        let (code, tw_out, _) = run_to_strings(&[
            "spectrum", "--graph", &k4, "--kind", "cycle", "--q", "3", "--backend",
            "treewidth",
        ]);
        assert_eq!(code, 0);
        assert_eq!(tw_out, oracle_out);
    }

    #[test]
    fn reports_are_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let c5 = write_graph(
            dir.path(),
            "c5.g",
            "g undirected 5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n",
        );
        let args = [
            "solve", "--graph", &c5, "--kind", "path", "--s", "0", "--t", "2", "--q",
            "4", "--p", "2", "--solver", "oracle", "--seed", "9",
        ];
        let (c1, o1, _) = run_to_strings(&args);
        let (c2, o2, _) = run_to_strings(&args);
        assert_eq!(c1, c2);
        assert_eq!(o1, o2);
        assert!(o1.contains("digest=sha256:"));
    }

    #[test]
    fn experiment_runs_from_spec_file() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("probe.spec");
        std::fs::write(
            &spec,
            "seed 3\nsamples 4\nq 3\nkind cycle\nprobe zero-achieved\ngrid cycle:6\ngrid path:5\n",
        )
        .unwrap();
        let (code, out, _) = run_to_strings(&["experiment", "--spec", spec.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("cycle:6\t4\t4\t1.0000\tconsistent-at-this-scale"), "{out}");
        assert!(out.contains("path:5\t4\t0\t0.0000\tnone-satisfied"), "{out}");
    }

    #[test]
    fn crosscheck_small_is_clean() {
        let (code, out, _) = run_to_strings(&[
            "crosscheck", "--suite", "parity", "--max-n", "4",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("suite=parity"));
        assert!(out.contains("status=pass"));
    }

    #[test]
    fn usage_errors_exit_three() {
        let (code, _, _) = run_to_strings(&["solve", "--graph", "/nonexistent.g"]);
        assert_eq!(code, 3);
        let (code, _, err) = run_to_strings(&["frobnicate"]);
        assert_eq!(code, 3);
        assert!(!err.is_empty());
    }
}

//! The `steiner-ecc` command line.
//!
//! Every subcommand writes its main document (JSON, CSV or an edge list) to
//! `--out` or standard output and diagnostics to standard error. Exit codes:
//! 0 on success, 1 when a verification fails (a bound violation or an
//! oracle mismatch), 2 on usage or input errors.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use steiner_ecc::families::{generate, verify_all, verify_bound, BoundId, FamilySpec, Generated};
use steiner_ecc::harness::{run_bench, trial_seed, BenchAlgo, BenchConfig, DEFAULT_ORACLE_CAP};
use steiner_ecc::io::{
    bound_reports_csv, parse_edge_list, parse_graph_edge_list, trace_to_dot, trace_to_json,
    tree_to_dot, write_edge_list, write_graph_edge_list, BoundRow, ResultDocument,
};
use steiner_ecc::oracle::{aecc3_graph_bruteforce, aecc_k_bruteforce, steiner_wiener};
use steiner_ecc::transform::{
    find_pi_inverse_sites, find_pi_sites, reduce, Strategy, TransformTrace,
};
use steiner_ecc::{aecc3_fast, aecc3_fast_par, random_tree, Tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "steiner-ecc",
    version,
    about = "Steiner eccentricities of trees"
)]
pub struct Cli {
    /// Worker threads for per-vertex and per-tree parallelism (1 = sequential).
    #[arg(long, global = true, env = "STEINER_ECC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Steiner 3-eccentricity of every vertex and the exact average.
    Compute(ComputeArgs),
    /// Brute-force Steiner k-eccentricities, optionally the Steiner Wiener index.
    Oracle(OracleArgs),
    /// Write a family instance or a random tree as an edge list.
    Gen(GenArgs),
    /// Apply one π or π⁻¹ step, list sites, or run a whole reduction.
    Transform(TransformArgs),
    /// Check the extremal bounds on a tree or a random corpus.
    Verify(VerifyArgs),
    /// Time the algorithms on random trees and fit the scaling exponent.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write the main output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeAlgo {
    Fast,
    Oracle,
    /// Run both and fail unless they agree.
    Both,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Edge-list file, or `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ComputeAlgo::Fast)]
    pub algo: ComputeAlgo,
    /// Add a floating-point rendering of the average.
    #[arg(long)]
    pub decimal: bool,
    /// Also write the tree as Graphviz DOT to this file.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of terminals.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Also report the Steiner Wiener index for this k.
    #[arg(long)]
    pub wiener: bool,
    /// Treat the input as a general connected graph (k = 3 only).
    #[arg(long)]
    pub graph: bool,
    #[arg(long)]
    pub decimal: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    Path,
    Star,
    Complete,
    Cycle,
    CompleteBipartite,
    Broom,
    BalancedStarlike,
    #[value(name = "T_nm")]
    Tnm,
    #[value(name = "Tprime_nd")]
    TprimeNd,
    #[value(name = "Tprime_general")]
    TprimeGeneral,
    /// Uniformly random labeled tree (uses --seed).
    Random,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: usize,
    /// Maximum degree of a broom.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Number of legs of a balanced starlike tree.
    #[arg(long)]
    pub p: Option<usize>,
    /// Star size of T_nm, or first part of a complete bipartite graph.
    #[arg(long)]
    pub m: Option<usize>,
    /// Length of the spine path of the Tprime families.
    #[arg(long)]
    pub d: Option<usize>,
    /// Comma-separated pendant counts for Tprime_general.
    #[arg(long, value_delimiter = ',')]
    pub pendants: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ReduceTarget {
    ToStar,
    ToPath,
    ToBroom,
    ToBalanced,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Run a whole reduction.
    #[arg(long, value_enum, conflicts_with_all = ["site", "list_sites"])]
    pub reduce: Option<ReduceTarget>,
    /// Hub of the broom (default: smallest vertex of maximum degree).
    #[arg(long, requires = "reduce")]
    pub root: Option<usize>,
    /// Apply the site with this index in the site listing.
    #[arg(long, conflicts_with = "list_sites")]
    pub site: Option<usize>,
    /// Use π⁻¹ sites instead of π sites.
    #[arg(long)]
    pub inverse: bool,
    /// Print the available sites as JSON (the default without --site).
    #[arg(long)]
    pub list_sites: bool,
    /// Write the resulting tree as an edge list.
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
    /// Write the trace as Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of bound ids.
    #[arg(long, default_value = "all")]
    pub bounds: String,
    /// Verify a single tree from this file.
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Verify this many random trees.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub min_n: usize,
    #[arg(long, default_value_t = 60)]
    pub max_n: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    pub sizes: Vec<usize>,
    /// Comma-separated: fast, fast_par, oracle, oracle_pairwise.
    #[arg(long, value_delimiter = ',', default_value = "fast")]
    pub algos: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest n allowed for the brute-force oracles.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `argv` (including the program name) and runs the command, writing
/// the main output to `stdout` unless `--out` is given. Returns the exit code.
pub fn run_command<I, T>(
    argv: I,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut (dyn Write + Send) = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

pub fn run(
    cli: Cli,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let threads = cli.threads.unwrap_or(1).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building thread pool")?;
    pool.install(|| match cli.command {
        Command::Compute(args) => compute(args, threads, stdout, stderr),
        Command::Oracle(args) => oracle(args, stdout),
        Command::Gen(args) => gen(args, stdout),
        Command::Transform(args) => transform(args, stdout),
        Command::Verify(args) => verify(args, threads, stdout, stderr),
        Command::Bench(args) => bench(args, stdout, stderr),
    })
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_tree(path: &Path) -> Result<Tree> {
    parse_edge_list(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Output, text: &str, stdout: &mut (dyn Write + Send)) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn compute(
    args: ComputeArgs,
    threads: usize,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let t = read_tree(&args.input)?;
    if let Some(dot) = &args.dot {
        write_file(dot, &tree_to_dot(&t, "tree"))?;
    }
    let run_fast = || -> Result<ResultDocument> {
        let start = Instant::now();
        let r = if threads > 1 {
            aecc3_fast_par(&t)?
        } else {
            aecc3_fast(&t)?
        };
        Ok(ResultDocument::from_fast(&r, elapsed_ms(start)))
    };
    let run_oracle = || -> Result<ResultDocument> {
        let start = Instant::now();
        let r = aecc_k_bruteforce(&t, 3)?;
        Ok(ResultDocument::from_oracle(&r, elapsed_ms(start)))
    };
    let (doc, code) = match args.algo {
        ComputeAlgo::Fast => (run_fast()?, EXIT_OK),
        ComputeAlgo::Oracle => (run_oracle()?, EXIT_OK),
        ComputeAlgo::Both => {
            let fast = run_fast()?;
            let slow = run_oracle()?;
            if fast.per_vertex == slow.per_vertex {
                (fast, EXIT_OK)
            } else {
                let v = (0..t.n())
                    .find(|&v| fast.per_vertex[v] != slow.per_vertex[v])
                    .unwrap();
                writeln!(
                    stderr,
                    "mismatch at vertex {v}: fast {} vs oracle {}",
                    fast.per_vertex[v], slow.per_vertex[v]
                )?;
                (fast, EXIT_FAILED_CHECK)
            }
        }
    };
    let doc = if args.decimal {
        doc.with_decimal()
    } else {
        doc
    };
    emit(&args.output, &with_newline(doc.to_json()), stdout)?;
    Ok(code)
}

fn oracle(args: OracleArgs, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    let text = read_input(&args.input)?;
    let start = Instant::now();
    let mut doc = if args.graph {
        if args.k != 3 || args.wiener {
            bail!("--graph supports only k = 3 without --wiener");
        }
        let g = parse_graph_edge_list(&text)
            .with_context(|| format!("parsing {}", args.input.display()))?;
        ResultDocument::from_oracle(&aecc3_graph_bruteforce(&g)?, 0.0)
    } else {
        let t =
            parse_edge_list(&text).with_context(|| format!("parsing {}", args.input.display()))?;
        let mut doc = ResultDocument::from_oracle(&aecc_k_bruteforce(&t, args.k)?, 0.0);
        if args.wiener {
            doc.steiner_wiener = Some(steiner_wiener(&t, args.k)?);
        }
        doc
    };
    doc.elapsed_ms = elapsed_ms(start);
    let doc = if args.decimal {
        doc.with_decimal()
    } else {
        doc
    };
    emit(&args.output, &with_newline(doc.to_json()), stdout)?;
    Ok(EXIT_OK)
}

fn required(value: Option<usize>, flag: &str, family: FamilyName) -> Result<usize> {
    value.ok_or_else(|| anyhow!("family {family:?} needs --{flag}"))
}

fn family_spec(args: &GenArgs) -> Result<FamilySpec> {
    let n = args.n;
    let f = args.family;
    Ok(match f {
        FamilyName::Path => FamilySpec::Path { n },
        FamilyName::Star => FamilySpec::Star { n },
        FamilyName::Complete => FamilySpec::Complete { n },
        FamilyName::Cycle => FamilySpec::Cycle { n },
        FamilyName::CompleteBipartite => FamilySpec::CompleteBipartite {
            m: required(args.m, "m", f)?,
            n,
        },
        FamilyName::Broom => FamilySpec::Broom {
            n,
            delta: required(args.delta, "delta", f)?,
        },
        FamilyName::BalancedStarlike => FamilySpec::BalancedStarlike {
            n,
            p: required(args.p, "p", f)?,
        },
        FamilyName::Tnm => FamilySpec::Tnm {
            n,
            m: required(args.m, "m", f)?,
        },
        FamilyName::TprimeNd => FamilySpec::TprimeNd {
            n,
            d: required(args.d, "d", f)?,
        },
        FamilyName::TprimeGeneral => FamilySpec::TprimeGeneral {
            n,
            d: required(args.d, "d", f)?,
            pendants: args.pendants.clone(),
        },
        FamilyName::Random => unreachable!("handled by the caller"),
    })
}

fn gen(args: GenArgs, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    let generated = match args.family {
        FamilyName::Random => {
            if args.n == 0 {
                bail!("--n must be positive");
            }
            Generated::Tree(random_tree(args.n, args.seed))
        }
        _ => generate(&family_spec(&args)?)?,
    };
    let text = match &generated {
        Generated::Tree(t) => {
            if let Some(dot) = &args.dot {
                write_file(dot, &tree_to_dot(t, &format!("{:?}", args.family)))?;
            }
            write_edge_list(t)
        }
        Generated::Graph(g) => {
            if args.dot.is_some() {
                bail!("--dot is only available for trees");
            }
            write_graph_edge_list(g)
        }
    };
    emit(&args.output, &text, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SiteListing<'a> {
    schema: u32,
    inverse: bool,
    sites: &'a [steiner_ecc::PiSite],
}

fn transform(args: TransformArgs, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    let t = read_tree(&args.input)?;
    let trace = if let Some(target) = args.reduce {
        let strategy = match target {
            ReduceTarget::ToStar => Strategy::ToStar,
            ReduceTarget::ToPath => Strategy::ToPath,
            ReduceTarget::ToBalanced => Strategy::ToBalancedStarlike,
            ReduceTarget::ToBroom => {
                let delta = t.max_degree();
                let root = args
                    .root
                    .unwrap_or_else(|| (0..t.n()).find(|&v| t.degree(v) == delta).unwrap());
                Strategy::ToBroom { root }
            }
        };
        reduce(&t, strategy)?.1
    } else {
        let sites = if args.inverse {
            find_pi_inverse_sites(&t)?
        } else {
            find_pi_sites(&t)
        };
        match args.site {
            None => {
                let listing = SiteListing {
                    schema: 1,
                    inverse: args.inverse,
                    sites: &sites,
                };
                emit(
                    &args.output,
                    &with_newline(serde_json::to_string_pretty(&listing)?),
                    stdout,
                )?;
                return Ok(EXIT_OK);
            }
            Some(i) => {
                let site = sites.get(i).cloned().ok_or_else(|| {
                    anyhow!("site index {i} out of range ({} sites)", sites.len())
                })?;
                let mut trace = TransformTrace::new(t.clone(), None);
                if args.inverse {
                    trace.apply_pi_inverse(site)?;
                } else {
                    trace.apply_pi(site)?;
                }
                trace
            }
        }
    };
    if let Some(path) = &args.tree_out {
        write_file(path, &write_edge_list(trace.last()))?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &trace_to_dot(&trace))?;
    }
    emit(&args.output, &with_newline(trace_to_json(&trace)), stdout)?;
    Ok(if trace.is_monotone() {
        EXIT_OK
    } else {
        EXIT_FAILED_CHECK
    })
}

fn parse_bounds(spec: &str) -> Result<Vec<BoundId>> {
    if spec == "all" {
        return Ok(BoundId::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<BoundId>().map_err(|e| anyhow!(e)))
        .collect()
}

fn verify(
    args: VerifyArgs,
    threads: usize,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let bounds = parse_bounds(&args.bounds)?;
    let trees: Vec<Tree> = match (&args.input, args.random) {
        (Some(path), None) => vec![read_tree(path)?],
        (None, Some(count)) => {
            if args.min_n < 3 || args.max_n < args.min_n {
                bail!("need 3 <= --min-n <= --max-n");
            }
            let span = (args.max_n - args.min_n + 1) as u64;
            (0..count)
                .map(|i| {
                    let s = trial_seed(args.seed, i, 0);
                    random_tree(args.min_n + (s % span) as usize, s)
                })
                .collect()
        }
        _ => bail!("give exactly one of --input or --random"),
    };
    let evaluate = |t: &Tree| -> Result<Vec<_>> {
        if bounds.len() == BoundId::ALL.len() {
            Ok(verify_all(t)?)
        } else {
            Ok(bounds.iter().map(|&b| (b, verify_bound(t, b))).collect())
        }
    };
    let outcomes: Vec<Vec<_>> = if threads > 1 {
        trees.par_iter().map(evaluate).collect::<Result<_>>()?
    } else {
        trees.iter().map(evaluate).collect::<Result<_>>()?
    };
    let mut rows = Vec::new();
    let mut violations = 0;
    for (i, (t, per_tree)) in trees.iter().zip(&outcomes).enumerate() {
        for (b, outcome) in per_tree {
            if !bounds.contains(b) {
                continue;
            }
            if let Ok(r) = outcome {
                if r.candidates.iter().any(|c| !c.holds) {
                    violations += 1;
                    writeln!(
                        stderr,
                        "violation: tree {i} (n = {}), {b}: lhs {} rhs {}",
                        t.n(),
                        r.lhs,
                        r.rhs
                    )?;
                }
            }
            rows.push(BoundRow {
                tree: i,
                n: t.n(),
                bound: *b,
                outcome,
            });
        }
    }
    emit(&args.output, &bound_reports_csv(&rows), stdout)?;
    writeln!(
        stderr,
        "{} trees, {} checks, {violations} violations",
        trees.len(),
        rows.len()
    )?;
    Ok(if violations == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED_CHECK
    })
}

fn bench(
    args: BenchArgs,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let algos = args
        .algos
        .iter()
        .map(|a| a.parse::<BenchAlgo>().map_err(|e| anyhow!(e)))
        .collect::<Result<Vec<_>>>()?;
    let config = BenchConfig {
        sizes: args.sizes,
        algos,
        trials: args.trials,
        seed: args.seed,
        oracle_cap: args.oracle_cap,
    };
    let report = run_bench(&config)?;
    for fit in &report.fits {
        writeln!(
            stderr,
            "{}: log-log slope {:.3}",
            fit.algo.name(),
            fit.slope
        )?;
    }
    emit(&args.output, &report.to_csv(), stdout)?;
    Ok(EXIT_OK)
}

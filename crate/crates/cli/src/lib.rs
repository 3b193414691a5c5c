//! Command-line front end: reads a problem file, runs one computation and
//! renders the result as text or JSON.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coadjoint_core::diagram::Diagram;
use coadjoint_core::minors::{enumerate_extremal, ExtremalEntry};
use coadjoint_core::verify::{
    full_report, oracle_invariants, skew_rank_stats, SkewStats, Status, VerifyOptions,
};
use coadjoint_core::weyl::reflection_product;
use coadjoint_core::{
    all_invariants, build_diagram, build_w, inversions, DiagramCounts, Error, InvariantRecord,
    Permutation, Polynomial, RegularIdeal, Root, RootSet, VerificationReport,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_SCAN_BUDGET: u128 = 10_000_000;
const DEFAULT_ORACLE_BUDGET: u128 = 1_000_000;
const DEFAULT_VERIFY_BUDGET: u128 = 20_000;
const RANK_SAMPLES: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Contents of a problem file. Options given on the command line win over
/// those in the file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub n: usize,
    pub ideal_generators: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Parser)]
#[command(
    name = "coadjoint",
    version,
    about = "Coadjoint invariants of regular factors of the unitriangular Lie algebra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbol diagram with its step-by-step construction.
    Diagram(CommonArgs),
    /// The permutation w, its length and the reflection product over S.
    Permutation(CommonArgs),
    /// One invariant per cross cell.
    Invariants(CommonArgs),
    /// Run every exact check and report pass/fail.
    Verify(CommonArgs),
    /// List extremal minors of the characteristic matrix.
    ExtremalScan {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest minor size to consider (default: n).
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Generic rank and corank of the skew form.
    OrbitStats(CommonArgs),
    /// Basis of low-degree invariants by brute force.
    Oracle(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Problem file: {"n": N, "ideal_generators": [[i, j], ...]}
    pub problem: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Reject generator sets that are not already closed.
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub budget: Option<u128>,
}

/// Resolved settings for one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub ideal: RegularIdeal,
    pub format: Format,
    pub seed: u64,
    pub trials: u64,
    pub max_degree: u32,
    pub budget: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub step: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cross: Option<Root>,
    pub grid: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub n: usize,
    pub grid: Vec<String>,
    pub crosses: Vec<Root>,
    pub counts: DiagramCounts,
    pub steps: Vec<StepDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationDoc {
    pub n: usize,
    pub w: Permutation,
    pub length: usize,
    pub dim: usize,
    pub crosses: Vec<Root>,
    pub reflection_product: Permutation,
    pub product_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub n: usize,
    pub invariants: Vec<InvariantRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub n: usize,
    pub passed: bool,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalDoc {
    pub n: usize,
    pub max_size: usize,
    pub minors: Vec<ExtremalEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub n: usize,
    pub seed: u64,
    pub samples: u64,
    pub stats: SkewStats,
    pub crosses: usize,
    pub plus_minus: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub n: usize,
    pub max_degree: u32,
    pub basis: Vec<Polynomial>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_INVALID,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_FAILED,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome::error(exit_code(&e), format!("error: {e}\n"))
}

pub fn load_problem(args: &CommonArgs) -> Result<Settings, Error> {
    let text = std::fs::read_to_string(&args.problem)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", args.problem.display())))?;
    let problem: Problem = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!(
            "malformed problem file {}: {e}",
            args.problem.display()
        ))
    })?;
    settings(&problem, args)
}

pub fn settings(problem: &Problem, args: &CommonArgs) -> Result<Settings, Error> {
    if problem.n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let roots = problem
        .ideal_generators
        .iter()
        .map(|&(i, j)| Root::checked(problem.n, i, j))
        .collect::<Result<Vec<_>, _>>()?;
    let set = RootSet::new(problem.n, roots)?;
    let ideal = if args.strict {
        RegularIdeal::strict(set)?
    } else {
        coadjoint_core::close_ideal(&set)
    };
    Ok(Settings {
        ideal,
        format: args.format.or(problem.format).unwrap_or(Format::Text),
        seed: args.seed.or(problem.seed).unwrap_or(0),
        trials: args.trials.or(problem.trials).unwrap_or(100),
        max_degree: args.max_degree.or(problem.max_degree).unwrap_or(4),
        budget: args.budget.or(problem.budget),
    })
}

fn grid_lines(s: &str) -> Vec<String> {
    s.lines().map(str::to_string).collect()
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn roots_list(roots: &[Root]) -> String {
    roots
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn diagram_doc(d: &Diagram) -> DiagramDoc {
    let steps = (0..=d.steps())
        .map(|step| StepDoc {
            step,
            cross: step.checked_sub(1).map(|k| d.crosses()[k]),
            grid: grid_lines(&d.render_at(Some(step))),
        })
        .collect();
    DiagramDoc {
        n: d.n(),
        grid: grid_lines(&d.render()),
        crosses: d.crosses().to_vec(),
        counts: d.counts(),
        steps,
    }
}

fn diagram_text(doc: &DiagramDoc) -> String {
    let mut out = String::new();
    for line in &doc.grid {
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "S: {}", roots_list(&doc.crosses)).unwrap();
    let c = &doc.counts;
    writeln!(
        out,
        "crosses {} plus_minus {} bullets {}",
        c.crosses, c.plus_minus, c.bullets
    )
    .unwrap();
    for s in &doc.steps {
        writeln!(out).unwrap();
        match s.cross {
            Some(x) => writeln!(out, "step {}: cross {x}", s.step).unwrap(),
            None => writeln!(out, "step 0: ideal").unwrap(),
        }
        for line in &s.grid {
            writeln!(out, "{line}").unwrap();
        }
    }
    out
}

pub fn permutation_doc(ideal: &RegularIdeal) -> Result<PermutationDoc, Error> {
    let d = build_diagram(ideal);
    let w = build_w(ideal);
    let product = reflection_product(ideal.n(), d.crosses())?;
    Ok(PermutationDoc {
        n: ideal.n(),
        length: inversions(&w),
        dim: ideal.factor_dim(),
        crosses: d.crosses().to_vec(),
        product_matches: product == w,
        reflection_product: product,
        w,
    })
}

fn permutation_text(doc: &PermutationDoc) -> String {
    format!(
        "w = {}\nl(w) = {}\ndim L = {}\nS: {}\nreflection product = {} ({})\n",
        doc.w,
        doc.length,
        doc.dim,
        roots_list(&doc.crosses),
        doc.reflection_product,
        if doc.product_matches {
            "matches w"
        } else {
            "differs from w"
        }
    )
}

fn invariants_text(doc: &InvariantsDoc) -> String {
    let mut out = String::new();
    for r in &doc.invariants {
        let d_star = r.d_star.map(|d| format!(" d*={d}")).unwrap_or_default();
        writeln!(
            out,
            "xi={} case={} h={} rows={:?} cols={:?} degree={}{}",
            r.xi, r.case, r.h, r.rows, r.cols, r.degree, d_star
        )
        .unwrap();
        writeln!(out, "  P = {}", r.p).unwrap();
    }
    out
}

fn verify_text(doc: &VerifyDoc) -> String {
    let mut out = String::new();
    for c in &doc.report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(
            out,
            "{status} {} (trials {}, seed {})",
            c.name, c.trials, c.seed
        )
        .unwrap();
        if let Some(w) = &c.witness {
            write!(out, ": {w}").unwrap();
        }
        writeln!(out).unwrap();
    }
    writeln!(
        out,
        "{}",
        if doc.passed {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    )
    .unwrap();
    out
}

fn extremal_text(doc: &ExtremalDoc) -> String {
    let mut out = String::new();
    for e in &doc.minors {
        writeln!(
            out,
            "rows={:?} cols={:?} degree={}",
            e.rows, e.cols, e.degree
        )
        .unwrap();
    }
    writeln!(
        out,
        "{} extremal minors up to size {}",
        doc.minors.len(),
        doc.max_size
    )
    .unwrap();
    out
}

fn orbit_text(doc: &OrbitDoc) -> String {
    format!(
        "dim L = {}\nmax skew rank = {} (plus_minus {})\ncorank = {} (crosses {})\n{}\n",
        doc.stats.dim,
        doc.stats.max_rank,
        doc.plus_minus,
        doc.stats.corank,
        doc.crosses,
        if doc.consistent {
            "consistent with the diagram"
        } else {
            "INCONSISTENT with the diagram"
        }
    )
}

fn oracle_text(doc: &OracleDoc) -> String {
    let mut out = String::new();
    for p in &doc.basis {
        writeln!(out, "{p}").unwrap();
    }
    writeln!(
        out,
        "{} basis elements of degree 1..={}",
        doc.basis.len(),
        doc.max_degree
    )
    .unwrap();
    out
}

fn emit<T: Serialize>(format: Format, doc: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => json(doc),
        Format::Text => text(doc),
    }
}

fn execute(command: &Command) -> Result<Outcome, Error> {
    let (common, max_size) = match command {
        Command::ExtremalScan { common, max_size } => (common, *max_size),
        Command::Diagram(c)
        | Command::Permutation(c)
        | Command::Invariants(c)
        | Command::Verify(c)
        | Command::OrbitStats(c)
        | Command::Oracle(c) => (c, None),
    };
    let s = load_problem(common)?;
    let n = s.ideal.n();
    let out = match command {
        Command::Diagram(_) => {
            let doc = diagram_doc(&build_diagram(&s.ideal));
            Outcome::ok(emit(s.format, &doc, diagram_text))
        }
        Command::Permutation(_) => {
            let doc = permutation_doc(&s.ideal)?;
            let code = if doc.product_matches && doc.length == doc.dim {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Outcome {
                code,
                ..Outcome::ok(emit(s.format, &doc, permutation_text))
            }
        }
        Command::Invariants(_) => {
            let doc = InvariantsDoc {
                n,
                invariants: all_invariants(&s.ideal)?,
            };
            Outcome::ok(emit(s.format, &doc, invariants_text))
        }
        Command::Verify(_) => {
            let opts = VerifyOptions {
                trials: s.trials,
                seed: s.seed,
                max_degree: s.max_degree,
                budget: s.budget.unwrap_or(DEFAULT_VERIFY_BUDGET),
                rank_samples: RANK_SAMPLES,
            };
            let report = full_report(&s.ideal, &opts);
            let doc = VerifyDoc {
                n,
                passed: report.passed(),
                report,
            };
            Outcome {
                code: if doc.passed { EXIT_OK } else { EXIT_FAILED },
                ..Outcome::ok(emit(s.format, &doc, verify_text))
            }
        }
        Command::ExtremalScan { .. } => {
            let max_size = max_size.unwrap_or(n);
            if max_size == 0 || max_size > n {
                return Err(Error::InvalidInput(format!(
                    "--max-size must lie in 1..={n}"
                )));
            }
            let doc = ExtremalDoc {
                n,
                max_size,
                minors: enumerate_extremal(
                    &s.ideal,
                    max_size,
                    s.budget.unwrap_or(DEFAULT_SCAN_BUDGET),
                )?,
            };
            Outcome::ok(emit(s.format, &doc, extremal_text))
        }
        Command::OrbitStats(_) => {
            let stats = skew_rank_stats(&s.ideal, s.trials.max(RANK_SAMPLES), s.seed);
            let counts = build_diagram(&s.ideal).counts();
            let doc = OrbitDoc {
                n,
                seed: s.seed,
                samples: s.trials.max(RANK_SAMPLES),
                consistent: stats.max_rank == counts.plus_minus && stats.corank == counts.crosses,
                stats,
                crosses: counts.crosses,
                plus_minus: counts.plus_minus,
            };
            Outcome {
                code: if doc.consistent { EXIT_OK } else { EXIT_FAILED },
                ..Outcome::ok(emit(s.format, &doc, orbit_text))
            }
        }
        Command::Oracle(_) => {
            let doc = OracleDoc {
                n,
                max_degree: s.max_degree,
                basis: oracle_invariants(
                    &s.ideal,
                    s.max_degree,
                    s.budget.unwrap_or(DEFAULT_ORACLE_BUDGET),
                )?,
            };
            Outcome::ok(emit(s.format, &doc, oracle_text))
        }
    };
    Ok(out)
}

/// Parses `argv` (program name first) and runs the chosen subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(EXIT_INVALID, rendered)
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    execute(&cli.command).unwrap_or_else(fail)
}

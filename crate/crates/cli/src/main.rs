//! `unipart`: command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage or input
//! schema error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use unipart::cyclonum::{is_prime, parse_rational, DEFAULT_CONDUCTOR_CAP};
use unipart::discretia::{homology, reduced_homology, sweep, HomologyResult, SimplicialComplex, SweepReport, DEFAULT_SWEEP_BOUND};
use unipart::lowdim::{classify_l2_fixed, L2Class, L2Point};
use unipart::matgroup::DEFAULT_CLOSURE_CAP;
use unipart::{acceptance, analyze, verify_witness, AnalysisConfig, AnalysisReport, CMatrix, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "unipart", version, about = "Fixed points of p-groups on orthogonal decomposition posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide contractibility of the fixed points of a finite unitary group.
    Analyze(AnalyzeArgs),
    /// Sweep p-subgroups of a symmetric group over the partition poset.
    Discrete(DiscreteArgs),
    /// Classify a point of L_2 under the coordinate swap.
    L2(L2Args),
    /// Integral homology of a simplicial complex given by its facets.
    Homology(HomologyArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group input JSON: {"n", "m", "p", "generators"}.
    #[arg(long)]
    input: PathBuf,
    /// The prime; must agree with "p" in the input when both are given.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
    #[arg(long, default_value_t = DEFAULT_CONDUCTOR_CAP)]
    conductor_cap: u64,
    /// Re-derive the witness and exit 1 if any check fails.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct DiscreteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = DEFAULT_SWEEP_BOUND)]
    bound: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct L2Args {
    /// Real part, as "p/q" or "p".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "axis")]
    re: Option<String>,
    /// Imaginary part, as "p/q" or "p".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "axis")]
    im: Option<String>,
    /// The pair of coordinate axes.
    #[arg(long, conflicts_with_all = ["re", "im"])]
    axis: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct HomologyArgs {
    /// Complex input JSON: {"facets": [[vertex, ...], ...]}.
    #[arg(long)]
    input: PathBuf,
    /// Reduced homology (augmented chain complex).
    #[arg(long)]
    reduced: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupInput {
    n: usize,
    m: u64,
    p: Option<u64>,
    generators: Vec<CMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexInput {
    facets: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema_version: &'static str,
    #[serde(flatten)]
    body: T,
}

fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned { schema_version: SCHEMA_VERSION, body }
}

#[derive(Serialize)]
struct L2Output {
    point: String,
    class: L2Class,
}

enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl Failure {
    fn domain(kind: &'static str, e: impl ToString) -> Self {
        Failure::Domain { kind, message: e.to_string() }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Discrete(a) => run_discrete(a),
        Command::L2(a) => run_l2(a),
        Command::Homology(a) => run_homology(a),
        Command::Selftest(a) => run_selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain { kind, message }) => {
            let err = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "error": { "kind": kind, "message": message },
            });
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Output, text: String) -> CliResult {
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn reject_csv(out: &Output, what: &str) -> CliResult {
    if out.format == Format::Csv {
        return Err(Failure::Usage(format!("csv output is only available for discrete, not {what}")));
    }
    Ok(())
}

fn load_group(a: &AnalyzeArgs) -> Result<(Vec<CMatrix>, u64), Failure> {
    let input: GroupInput = read_json(&a.input)?;
    let p = match (a.p, input.p) {
        (Some(x), Some(y)) if x != y => return Err(Failure::Usage(format!("--p {x} conflicts with \"p\": {y} in the input"))),
        (Some(x), _) | (None, Some(x)) => x,
        (None, None) => return Err(Failure::Usage("the prime must be given by --p or by \"p\" in the input".into())),
    };
    if input.generators.is_empty() {
        return Err(Failure::Usage("field `generators`: at least one generator is required".into()));
    }
    let mut gens = Vec::with_capacity(input.generators.len());
    for (i, g) in input.generators.into_iter().enumerate() {
        if g.rows() != input.n {
            return Err(Failure::Usage(format!("field `generators[{i}]`: size {} but \"n\" is {}", g.rows(), input.n)));
        }
        if !input.m.is_multiple_of(g.conductor()) {
            return Err(Failure::Usage(format!(
                "field `generators[{i}]`: conductor {} does not divide \"m\" = {}",
                g.conductor(),
                input.m
            )));
        }
        gens.push(g.embed(input.m).map_err(|e| Failure::Usage(format!("field `generators[{i}]`: {e}")))?);
    }
    Ok((gens, p))
}

fn render_report(r: &AnalysisReport) -> String {
    let mut s = format!("verdict: {}\n", r.verdict);
    if let Some(route) = r.route {
        s += &format!("route: {route:?}\n");
    }
    if let Some(w) = &r.witness {
        let dims: Vec<usize> = w.mu.iter().map(|c| c.dim()).collect();
        s += &format!("witness conductor: {}\nmu class dimensions: {dims:?}\n", w.conductor);
    }
    for d in &r.diagnostics {
        s += &format!("  {d}\n");
    }
    s
}

fn run_analyze(a: AnalyzeArgs) -> CliResult {
    reject_csv(&a.out, "analyze")?;
    if a.closure_cap == 0 || a.conductor_cap == 0 {
        return Err(Failure::Usage("caps must be positive".into()));
    }
    let (gens, p) = load_group(&a)?;
    let config = AnalysisConfig { closure_cap: a.closure_cap, conductor_cap: a.conductor_cap };
    let report = analyze(&gens, p, &config).map_err(|e| Failure::domain(e.kind(), e))?;
    if a.verify && report.witness.is_some() {
        let v = verify_witness(&gens, p, &report, &config);
        if let Some(c) = v.first_failure() {
            return Err(Failure::domain("WitnessRejected", format!("check ({}): {}", c.check, c.detail)));
        }
    }
    let text = match a.out.format {
        Format::Text => render_report(&report),
        _ => report.to_json(),
    };
    emit(&a.out, text)
}

fn render_sweep(r: &SweepReport) -> String {
    let mut s = format!("n = {}, p = {}: {} classes, {} violations\n", r.n, r.p, r.rows.len(), r.violations);
    for row in &r.rows {
        let gens = if row.subgroup_generators.is_empty() { "()".to_string() } else { row.subgroup_generators.join(" ") };
        s += &format!(
            "  <{gens}> order {} {} fixed {} betti {:?} {}\n",
            row.order,
            if row.elementary_abelian { "EA" } else { "non-EA" },
            row.fixed_poset_size,
            row.reduced_betti,
            if row.acyclic { "acyclic" } else { "non-acyclic" }
        );
    }
    s
}

fn run_discrete(a: DiscreteArgs) -> CliResult {
    if !is_prime(a.p) {
        return Err(Failure::Usage(format!("--p {} is not prime", a.p)));
    }
    let report = sweep(a.n, a.p, a.bound).map_err(|e| Failure::domain("DiscreteError", e))?;
    let text = match a.out.format {
        Format::Csv => report.to_csv(),
        Format::Text => render_sweep(&report),
        Format::Json => json(&versioned(&report)),
    };
    emit(&a.out, text)?;
    if report.violations > 0 {
        return Err(Failure::domain("ImplicationViolated", format!("{} violating subgroups", report.violations)));
    }
    Ok(())
}

fn run_l2(a: L2Args) -> CliResult {
    reject_csv(&a.out, "l2")?;
    let point = if a.axis {
        L2Point::AxisPair
    } else {
        let parse = |s: &Option<String>, flag: &str| {
            let s = s.as_deref().unwrap_or("0");
            parse_rational(s).map_err(|e| Failure::Usage(format!("--{flag} {s}: {e}")))
        };
        L2Point::gaussian(parse(&a.re, "re")?, parse(&a.im, "im")?).map_err(|e| Failure::domain("ZeroPoint", e))?
    };
    let class = classify_l2_fixed(&point).map_err(|e| Failure::domain("InternalInconsistency", e))?;
    let out = L2Output { point: point.to_string(), class };
    let text = match a.out.format {
        Format::Text => format!("{}: {:?}", out.point, out.class),
        _ => json(&versioned(&out)),
    };
    emit(&a.out, text)
}

fn render_homology(h: &HomologyResult) -> String {
    let mut s = String::new();
    for g in &h.groups {
        let mut parts = Vec::new();
        if g.betti > 0 {
            parts.push(if g.betti == 1 { "Z".to_string() } else { format!("Z^{}", g.betti) });
        }
        parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
        let group = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        s += &format!("H{}{} = {group}\n", if h.reduced { "~" } else { "" }, g.degree);
    }
    s
}

fn run_homology(a: HomologyArgs) -> CliResult {
    reject_csv(&a.out, "homology")?;
    let input: ComplexInput = read_json(&a.input)?;
    if let Some(i) = input.facets.iter().position(|f| f.is_empty()) {
        return Err(Failure::Usage(format!("field `facets[{i}]`: facets must be nonempty")));
    }
    let chain = SimplicialComplex::from_facets(&input.facets).chain_complex();
    let h = if a.reduced { reduced_homology(&chain) } else { homology(&chain) };
    let text = match a.out.format {
        Format::Text => render_homology(&h),
        _ => json(&versioned(&h)),
    };
    emit(&a.out, text)
}

fn run_selftest(a: SelftestArgs) -> CliResult {
    println!("acceptance suite, seed {}", a.seed);
    let reports = acceptance::run_all(a.seed);
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::domain("AcceptanceFailed", format!("criteria {failed:?} failed")))
    }
}

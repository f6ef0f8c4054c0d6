//! The `psw` command line. Every subcommand loads its inputs, calls one
//! library operation and writes the result.
//!
//! Exit codes: 0 success, 1 validation failure or refuted claim, 2 usage
//! error, 3 infeasible run.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use crate::constructions::{build_leftmost_path_partition, outerplanarity_check_with_budget, treewidth_at_most_2, DEFAULT_OUTERPLANAR_BUDGET};
use crate::formats::{
    read_graph, read_json, read_layering, read_partition, to_dot, write_atomic, write_graph, write_json, FormatError,
    GhMeta, GridMeta, HostSpec, LayeringFile, PartitionFile,
};
use crate::generators::{GhGraph, SubdividedGrid, DEFAULT_VERTEX_BUDGET};
use crate::oracle::{exhaustive_lemma_sweep, min_product_c, Lemma, SweepParams, SweepReport};
use crate::products::{
    partition_width, partitions_to_embedding, strong_product_with_budget, validate_embedding, validate_hpartition,
    validate_layering, HPartition, Layering,
};
use crate::suite::{run_suite, SuiteConfig, CHECK_COUNT};
use crate::witness::{audit, extract_witness, lower_bound_report, Branch, InputFiles, ProductClaim, WitnessCertificate, WitnessConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "psw", version, about = "Product-structure witnesses for G_h")]
struct Cli {
    /// key=value file with defaults for seed, jobs and budget_vertices.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps and the suite.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest graph any generator may build.
    #[arg(long, global = true)]
    budget_vertices: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Generate(Generate),
    #[command(subcommand)]
    Validate(Validate),
    #[command(subcommand)]
    Product(Product),
    /// Extract a witness certificate from a tree-partition and a layering.
    Witness(WitnessArgs),
    /// Replay a certificate against its inputs.
    Audit(AuditArgs),
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Check(Check),
    #[command(subcommand)]
    Oracle(Oracle),
    #[command(subcommand)]
    Suite(Suite),
    #[command(subcommand)]
    Export(Export),
}

#[derive(Debug, Subcommand)]
enum Generate {
    /// G_h as an edge list plus a JSON sidecar with the height.
    Gh {
        #[arg(long)]
        height: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// A subdivided grid plus a JSON sidecar with the vertex roles.
    Grid {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        /// One count for every horizontal edge, or a comma list of (x-1)*y counts.
        #[arg(long, default_value = "0")]
        divide: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Validate {
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Also require the host to be a tree.
        #[arg(long)]
        tree: bool,
    },
    Layering {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        layering: PathBuf,
    },
    /// Checks that a partition pair gives an embedding into H ⊠ P ⊠ K_c.
    Embedding {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        layering: PathBuf,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Product {
    Strong {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    meta: PathBuf,
    #[arg(long)]
    tree_partition: PathBuf,
    #[arg(long)]
    layering: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Clique factor; defaults to 2^ceil(sqrt(log2 h)).
    #[arg(long)]
    c: Option<u64>,
    /// A rational in (0, 1/4), e.g. 1/5.
    #[arg(long, default_value = "1/5")]
    alpha: String,
    /// Fixes the number of growth rounds.
    #[arg(long)]
    iterations: Option<usize>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    certificate: PathBuf,
    /// Inputs default to the paths recorded in the certificate.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    tree_partition: Option<PathBuf>,
    #[arg(long)]
    layering: Option<PathBuf>,
    /// A claimed embedding into H ⊠ P ⊠ K_c to test against the cell.
    #[arg(long, requires_all = ["claim_delta", "claim_treewidth"])]
    claim_c: Option<u64>,
    #[arg(long)]
    claim_delta: Option<u64>,
    #[arg(long)]
    claim_treewidth: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// The unit-cell partition of G_h over an outerplanar host.
    Outerplanar {
        #[arg(long)]
        height: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// Where to write the depth layering; defaults next to the output.
        #[arg(long)]
        layering: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    height: usize,
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<usize>,
    /// CSV of (size, observed, bound) rows; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Check {
    Lemma5(SweepArgs),
    Lemma6(SweepArgs),
    Grow {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = 6)]
        min_height: usize,
    },
    Tw2 {
        graph: PathBuf,
    },
    Outerplanar {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_OUTERPLANAR_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Oracle {
    MinC {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        tree_max: usize,
        #[arg(long, default_value_t = 6)]
        path_max: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Sweep {
        /// 5, 6, 7, 9 or 11.
        #[arg(long)]
        lemma: u32,
        #[arg(long, default_value_t = 3)]
        height: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_x: usize,
        #[arg(long, default_value_t = 5)]
        max_y: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 6)]
        min_height: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// The full acceptance battery.
    PaperChecks {
        /// Largest height for the pipeline check.
        #[arg(long, default_value_t = 20)]
        height: usize,
        /// Comma list of check numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// JSON report; timings go to a `.timings.json` sidecar.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Export {
    Dot {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: m.into() }
    }

    fn invalid(m: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: m.into() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Partition(_) | FormatError::Invalid(_) => Failure::invalid(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Settings after merging the config file under the flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub jobs: usize,
    pub budget_vertices: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 42, jobs: 0, budget_vertices: DEFAULT_VERTEX_BUDGET }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Settings, String> {
    let mut s = Settings::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
        let value = value.trim().trim_matches('"');
        let bad = || format!("line {}: '{value}' is not a number", no + 1);
        match key.trim().replace('-', "_").as_str() {
            "seed" => s.seed = value.parse().map_err(|_| bad())?,
            "jobs" => s.jobs = value.parse().map_err(|_| bad())?,
            "budget_vertices" => s.budget_vertices = value.parse().map_err(|_| bad())?,
            other => return Err(format!("line {}: unknown key '{other}'", no + 1)),
        }
    }
    Ok(s)
}

/// Runs `psw` with the given arguments (the first is the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("psw: {}", f.message);
            f.code
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut s = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("--config {}: {e}", p.display())))?;
            parse_config(&text).map_err(|e| Failure::usage(format!("--config {}: {e}", p.display())))?
        }
        None => Settings::default(),
    };
    s.seed = cli.seed.unwrap_or(s.seed);
    s.jobs = cli.jobs.unwrap_or(s.jobs);
    s.budget_vertices = cli.budget_vertices.unwrap_or(s.budget_vertices);
    Ok(s)
}

fn dispatch(cli: Cli) -> Outcome {
    let s = settings(&cli)?;
    if s.jobs > 0 {
        // Only the first call configures the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(s.jobs).build_global();
    }
    match cli.command {
        Command::Generate(g) => generate(g, &s),
        Command::Validate(v) => validate(v),
        Command::Product(Product::Strong { a, b, output }) => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            let p = strong_product_with_budget(&ga, &gb, s.budget_vertices).map_err(|e| Failure::usage(e.to_string()))?;
            write_graph(&output, &p.graph)?;
            println!("strong product: {} vertices, {} edges -> {}", p.graph.vertex_count(), p.graph.edge_count(), output.display());
            Ok(EXIT_OK)
        }
        Command::Witness(w) => witness(w, &s),
        Command::Audit(a) => audit_cmd(a, &s),
        Command::Construct(Construct::Outerplanar { height, output, host, layering }) => construct(height, &output, &host, layering, &s),
        Command::Check(c) => check(c, &s),
        Command::Oracle(o) => oracle(o, &s),
        Command::Suite(Suite::PaperChecks { height, only, output }) => suite(height, only, output, &s),
        Command::Export(Export::Dot { graph, output }) => {
            let g = read_graph(&graph)?;
            write_atomic(&output, to_dot(&g).as_bytes())?;
            println!("wrote {}", output.display());
            Ok(EXIT_OK)
        }
    }
}

fn gh(height: usize, s: &Settings) -> Result<GhGraph, Failure> {
    GhGraph::with_budget(height, s.budget_vertices).map_err(|e| Failure::usage(format!("--height {height}: {e}")))
}

fn sidecar(output: &Path) -> PathBuf {
    output.with_extension("json")
}

fn generate(g: Generate, s: &Settings) -> Outcome {
    match g {
        Generate::Gh { height, output } => {
            let gh = gh(height, s)?;
            write_graph(&output, &gh.graph)?;
            write_json(&sidecar(&output), &GhMeta { height })?;
            println!("G_{height}: {} vertices, {} edges -> {}", gh.graph.vertex_count(), gh.graph.edge_count(), output.display());
        }
        Generate::Grid { x, y, divide, output } => {
            let counts: Vec<usize> = divide
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::usage(format!("--divide '{divide}' is not a comma list of counts")))?;
            let divisions = match counts.as_slice() {
                [one] => vec![*one; x.saturating_sub(1) * y],
                _ => counts,
            };
            let sg = SubdividedGrid::with_budget(x, y, &divisions, s.budget_vertices).map_err(|e| Failure::usage(e.to_string()))?;
            write_graph(&output, &sg.graph)?;
            let roles = (0..sg.graph.vertex_count()).map(|v| sg.role(v)).collect();
            write_json(&sidecar(&output), &GridMeta { x, y, divisions: sg.divisions(), roles })?;
            println!("grid {x}x{y}: {} vertices, {} edges -> {}", sg.graph.vertex_count(), sg.graph.edge_count(), output.display());
        }
    }
    Ok(EXIT_OK)
}

fn report_violations(kind: &str, bad: &[(usize, usize)]) -> i32 {
    if bad.is_empty() {
        println!("{kind}: valid");
        EXIT_OK
    } else {
        println!("{kind}: {} violating edges, first ({}, {})", bad.len(), bad[0].0, bad[0].1);
        EXIT_INVALID
    }
}

fn validate(v: Validate) -> Outcome {
    match v {
        Validate::Partition { graph, partition, tree } => {
            let g = read_graph(&graph)?;
            let p = read_partition(&partition, g.vertex_count())?;
            let bad = validate_hpartition(&g, &p).map_err(|e| Failure::invalid(e.to_string()))?;
            println!("width {}, host {} vertices", partition_width(&p), p.host().vertex_count());
            if tree && !p.host().is_tree() {
                println!("partition: host is not a tree");
                return Ok(EXIT_INVALID);
            }
            Ok(report_violations("partition", &bad))
        }
        Validate::Layering { graph, layering } => {
            let g = read_graph(&graph)?;
            let lay = read_layering(&layering, g.vertex_count())?;
            let bad = validate_layering(&g, &lay).map_err(|e| Failure::invalid(e.to_string()))?;
            println!("{} layers", lay.len());
            Ok(report_violations("layering", &bad))
        }
        Validate::Embedding { graph, partition, layering, c } => {
            let g = read_graph(&graph)?;
            let p = read_partition(&partition, g.vertex_count())?;
            let lay = read_layering(&layering, g.vertex_count())?;
            match partitions_to_embedding(&g, &p, &lay, c).and_then(|e| validate_embedding(&g, &e).map(|_| e)) {
                Ok(e) => {
                    println!("embedding into H ⊠ P ⊠ K_{c}: valid ({} host vertices, {} layers)", e.factor_h.vertex_count(), e.path_vertices);
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    println!("embedding: {e}");
                    Ok(EXIT_INVALID)
                }
            }
        }
    }
}

struct WitnessInputs {
    gh: GhGraph,
    tp: HPartition,
    lay: Layering,
}

fn load_inputs(h: usize, graph: Option<&Path>, tp: &Path, lay: &Path, s: &Settings) -> Result<WitnessInputs, Failure> {
    let gh = gh(h, s)?;
    if let Some(path) = graph {
        if read_graph(path)? != gh.graph {
            return Err(Failure::invalid(format!("{} is not G_{h}", path.display())));
        }
    }
    let n = gh.graph.vertex_count();
    let tp = read_partition(tp, n)?;
    let lay = read_layering(lay, n)?;
    Ok(WitnessInputs { gh, tp, lay })
}

fn witness(w: WitnessArgs, s: &Settings) -> Outcome {
    let meta: GhMeta = read_json(&w.meta)?;
    let inp = load_inputs(meta.height, Some(&w.graph), &w.tree_partition, &w.layering, s)?;
    let alpha = BigRational::from_str(&w.alpha).map_err(|_| Failure::usage(format!("--alpha '{}' is not a rational", w.alpha)))?;
    let cfg = WitnessConfig { alpha, c: w.c, iterations: w.iterations };
    let mut cert = extract_witness(&inp.gh, &inp.tp, &inp.lay, &cfg).map_err(|e| Failure::invalid(e.to_string()))?;
    let name = |p: &Path| Some(p.display().to_string());
    cert.inputs = Some(InputFiles { graph: name(&w.graph), tree_partition: name(&w.tree_partition), layering: name(&w.layering) });
    write_atomic(&w.output, format!("{}\n", cert.to_json()).as_bytes())?;
    print_certificate(&cert);
    Ok(if cert.branch == Branch::Infeasible { EXIT_INFEASIBLE } else { EXIT_OK })
}

fn print_certificate(cert: &WitnessCertificate) {
    println!("h = {}, c = {}, alpha = {}, branch {:?}", cert.h, cert.c, cert.alpha, cert.branch);
    if let Some(f) = &cert.final_cell {
        println!("cell (x={}, y={}) has {} vertices, guaranteed at least {}", f.x, f.y, f.cell, f.bound);
    }
    if let Some(inf) = &cert.infeasible {
        println!("{inf}");
    }
}

fn audit_cmd(a: AuditArgs, s: &Settings) -> Outcome {
    let text = std::fs::read_to_string(&a.certificate).map_err(|e| Failure::usage(format!("{}: {e}", a.certificate.display())))?;
    let cert = match WitnessCertificate::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            println!("audit: FAIL, certificate does not parse: {e}");
            return Ok(EXIT_INVALID);
        }
    };
    let recorded = cert.inputs.clone().unwrap_or_default();
    // Recorded paths are taken relative to the working directory.
    let pick = |flag: Option<PathBuf>, rec: Option<String>, what: &str| {
        flag.or(rec.map(PathBuf::from)).ok_or_else(|| Failure::usage(format!("--{what} is required")))
    };
    let tp = pick(a.tree_partition, recorded.tree_partition, "tree-partition")?;
    let lay = pick(a.layering, recorded.layering, "layering")?;
    let graph = a.graph.or(recorded.graph.map(PathBuf::from));
    let inp = load_inputs(cert.h, graph.as_deref(), &tp, &lay, s)?;
    if let Err(e) = audit(&cert, &inp.gh, &inp.tp, &inp.lay) {
        println!("audit: FAIL, {e}");
        return Ok(EXIT_INVALID);
    }
    println!("audit: PASS");
    print_certificate(&cert);
    if let (Some(c), Some(delta), Some(treewidth)) = (a.claim_c, a.claim_delta, a.claim_treewidth) {
        let r = lower_bound_report(&cert, &ProductClaim { c, delta, treewidth }).map_err(|e| Failure::usage(e.to_string()))?;
        println!(
            "claim c={c}, delta={delta}, tw={treewidth}: implied width {}, cell {}: {}",
            r.implied_width, r.cell, r.verdict
        );
        if r.refuted {
            return Ok(EXIT_INVALID);
        }
    }
    Ok(EXIT_OK)
}

fn construct(height: usize, output: &Path, host: &Path, layering: Option<PathBuf>, s: &Settings) -> Outcome {
    let gh = gh(height, s)?;
    let lp = build_leftmost_path_partition(&gh);
    // The partition file refers to the host by its path relative to itself.
    let reference = match (output.parent(), host.parent()) {
        (Some(a), Some(b)) if a == b => host.file_name().map(|f| f.to_string_lossy().into_owned()),
        _ => None,
    }
    .unwrap_or_else(|| std::path::absolute(host).unwrap_or(host.to_path_buf()).display().to_string());
    write_graph(host, lp.host())?;
    write_json(output, &PartitionFile::new(HostSpec::File(reference), &lp.partition))?;
    let lay_path = layering.unwrap_or_else(|| output.with_extension("layering.json"));
    write_json(&lay_path, &LayeringFile::new(&lp.layering))?;
    let verdict = treewidth_at_most_2(lp.host());
    println!(
        "G_{height}: {} parts over a host with {} edges (treewidth <= 2: {}) -> {}, {}, {}",
        lp.host().vertex_count(),
        lp.host().edge_count(),
        verdict.treewidth_le_2,
        output.display(),
        host.display(),
        lay_path.display()
    );
    Ok(EXIT_OK)
}

fn finish_sweep(report: &SweepReport, csv: Option<&Path>, json: Option<&Path>) -> Outcome {
    match csv {
        Some(p) => write_atomic(p, report.to_csv().as_bytes())?,
        None if json.is_none() => print!("{}", report.to_csv()),
        None => {}
    }
    if let Some(p) = json {
        write_json(p, report)?;
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    println!("{:?}: {} cases, {} failures, largest observed {}: {verdict}", report.lemma, report.cases, report.failures, report.max_observed());
    if let Some(f) = &report.first_failure {
        println!("first failure: {f}");
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVALID })
}

fn sweep(lemma: Lemma, p: &SweepParams) -> Result<SweepReport, Failure> {
    exhaustive_lemma_sweep(lemma, p).map_err(|e| Failure::usage(e.to_string()))
}

fn sweep_params(a: &SweepArgs, s: &Settings) -> SweepParams {
    let exhaustive = a.exhaustive || a.samples.is_none();
    SweepParams {
        height: a.height,
        exhaustive,
        samples: a.samples.unwrap_or(SweepParams::default().samples),
        seed: s.seed,
        ..SweepParams::default()
    }
}

fn check(c: Check, s: &Settings) -> Outcome {
    match c {
        Check::Lemma5(a) => finish_sweep(&sweep(Lemma::Escape, &sweep_params(&a, s))?, a.output.as_deref(), None),
        Check::Lemma6(a) => finish_sweep(&sweep(Lemma::TwoEscapes, &sweep_params(&a, s))?, a.output.as_deref(), None),
        Check::Grow { sweep: a, min_height } => {
            let p = SweepParams { exhaustive: false, min_height, ..sweep_params(&a, s) };
            finish_sweep(&sweep(Lemma::Compact, &p)?, a.output.as_deref(), None)
        }
        Check::Tw2 { graph } => {
            let g = read_graph(&graph)?;
            let v = treewidth_at_most_2(&g);
            println!("treewidth <= 2: {}", v.treewidth_le_2);
            println!("{}", serde_json::to_string(&v.witness).expect("serializable"));
            Ok(if v.treewidth_le_2 { EXIT_OK } else { EXIT_INVALID })
        }
        Check::Outerplanar { graph, budget } => {
            let g = read_graph(&graph)?;
            let v = outerplanarity_check_with_budget(&g, budget);
            match v.outerplanar {
                Some(true) => println!("outerplanar: yes"),
                Some(false) => println!("outerplanar: no, {}", serde_json::to_string(&v.witness).expect("serializable")),
                None => {
                    println!("outerplanar: undecided within a budget of {budget} vertices");
                    return Err(Failure::usage(format!("--budget {budget} is below the graph size")));
                }
            }
            Ok(if v.outerplanar == Some(true) { EXIT_OK } else { EXIT_INVALID })
        }
    }
}

fn oracle(o: Oracle, s: &Settings) -> Outcome {
    match o {
        Oracle::MinC { graph, tree_max, path_max, output } => {
            let g = read_graph(&graph)?;
            let r = min_product_c(&g, tree_max, path_max).map_err(|e| Failure::usage(e.to_string()))?;
            println!("min c = {} (tree with {} vertices, {} layers)", r.c, r.tree_partition.host().vertex_count(), r.layering.len());
            if let Some(p) = output {
                let doc = serde_json::json!({
                    "c": r.c,
                    "tree_partition": PartitionFile::inline(&r.tree_partition),
                    "layering": LayeringFile::new(&r.layering),
                    "map": r.embedding.map,
                });
                write_json(&p, &doc)?;
            }
            Ok(EXIT_OK)
        }
        Oracle::Sweep { lemma, height, exhaustive, samples, max_x, max_y, max_size, min_height, csv, output } => {
            let l = Lemma::from_number(lemma).ok_or_else(|| Failure::usage(format!("--lemma {lemma}: expected 5, 6, 7, 9 or 11")))?;
            let p = SweepParams {
                height,
                exhaustive: exhaustive || samples.is_none(),
                samples: samples.unwrap_or(SweepParams::default().samples),
                seed: s.seed,
                max_x,
                max_y,
                max_size,
                min_height,
            };
            finish_sweep(&sweep(l, &p)?, csv.as_deref(), output.as_deref())
        }
    }
}

fn suite(height: usize, only: Vec<usize>, output: Option<PathBuf>, s: &Settings) -> Outcome {
    let ids: Vec<usize> = if only.is_empty() { (1..=CHECK_COUNT).collect() } else { only };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CHECK_COUNT) {
        return Err(Failure::usage(format!("--only {bad}: checks are numbered 1 to {CHECK_COUNT}")));
    }
    let cfg = SuiteConfig { seed: s.seed, max_height: height, jobs: s.jobs };
    let report = run_suite(&ids, &cfg);
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] {:>2} {:<22} {}", c.id, c.name, c.detail);
    }
    if let Some(p) = output {
        // Timings vary run to run, so they stay out of the main report.
        let timings: Vec<_> = report.checks.iter().map(|c| serde_json::json!({ "id": c.id, "millis": c.millis })).collect();
        write_json(&p, &report)?;
        write_json(&p.with_extension("timings.json"), &timings)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVALID })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let s = parse_config("# defaults\nseed = 7\njobs=2 # two\nbudget-vertices = 100\n").unwrap();
        assert_eq!(s, Settings { seed: 7, jobs: 2, budget_vertices: 100 });
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("seed").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["psw", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["psw", "generate", "gh"]), EXIT_USAGE);
        assert_eq!(run(["psw", "oracle", "sweep", "--lemma", "8"]), EXIT_USAGE);
    }
}

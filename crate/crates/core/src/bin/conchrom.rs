use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conchrom::certificate::{certificate_failures, Certificate, ChromaticEvidence};
use conchrom::colouring::ListAssignment;
use conchrom::dimacs;
use conchrom::extract::{extract, Branch, ExtractConfig, ExtractError, PreconditionPolicy};
use conchrom::family::FamilySpec;
use conchrom::graph::Graph;
use conchrom::solver::SolverBudget;
use conchrom::suite::{run_suite, Suite, DEFAULT_SEED};
use conchrom::template::{Mode, Palette};
use conchrom::text::{parse_lists, parse_template, write_template, TemplateDoc};
use conchrom::witness::{witness_status, WitnessStatus};

/// Exit codes. They are part of the command-line contract.
mod exit {
    pub const OK: u8 = 0;
    /// `verify` rejected the certificate, `reproduce` had a failing
    /// instance, or `witness` found the template extensible.
    pub const REJECTED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NOT_INEXTENSIBLE: u8 = 3;
    pub const RESOURCE_LIMIT: u8 = 4;
    pub const VERIFICATION_FAILED: u8 = 5;
    pub const INTERNAL_CONTRADICTION: u8 = 6;
    pub const INPUT: u8 = 7;
    pub const INTERNAL: u8 = 8;
}

#[derive(Parser)]
#[command(name = "conchrom", version, about = "Extract highly connected subgraphs of large chromatic number, with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family in DIMACS form.
    ///
    /// Either a full expression such as `join(cycle(5),complete(5))`, or a
    /// family name followed by its parameters: `complete 8`, `cycle 5`,
    /// `glued 15 15 --shared 1`, `random 20 0.5 --seed 7`, `kneser 5 2`,
    /// `mycielski 2 'cycle(5)'`, `join 'cycle(5)' 'complete(5)'`.
    Gen {
        family: String,
        params: Vec<String>,
        /// Shared vertices for `glued`.
        #[arg(long, default_value_t = 1)]
        shared: usize,
        /// Seed for `random`.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a k-connected subgraph with a witness of large (list)
    /// chromatic number, and write its certificate.
    Extract(ExtractArgs),
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Check whether a template file is a witness of inextensibility.
    Witness {
        graph: PathBuf,
        template: PathBuf,
        /// Overrides `k` from the template file.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        budget_decisions: Option<u64>,
    },
    /// Run a reproduction suite and print its report.
    Reproduce {
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    List,
}

#[derive(Args)]
struct ExtractArgs {
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
    mode: ModeArg,
    /// Plain palette size; defaults to 7k.
    #[arg(long)]
    palette_size: Option<usize>,
    /// Lists file (`list <v> <c>...` lines) for list mode.
    #[arg(long, conflicts_with = "full_lists")]
    lists: Option<PathBuf>,
    /// List mode with the list {0, .., n-1} at every vertex.
    #[arg(long)]
    full_lists: Option<usize>,
    /// Cap on solver decisions per call; unlimited when absent.
    #[arg(long)]
    budget_decisions: Option<u64>,
    /// Wall-clock cap per solver call, in seconds.
    #[arg(long)]
    budget_seconds: Option<u64>,
    /// Confirm with the solver that the graph is inextensible (default).
    #[arg(long, conflicts_with = "trust_precondition")]
    verify_precondition: bool,
    /// Skip the initial solver check.
    #[arg(long)]
    trust_precondition: bool,
    /// Re-check the witness property at every descent step.
    #[arg(long)]
    recheck_invariant: bool,
    /// Certificate path; the certificate goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the final template in text form.
    #[arg(long)]
    template_out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    dimacs::parse(&read(path)?).map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))
}

fn family_from_args(family: &str, params: &[String], shared: usize, seed: u64) -> Result<FamilySpec, String> {
    if family.contains('(') {
        if !params.is_empty() {
            return Err("a family expression takes no further parameters".into());
        }
        return family.parse::<FamilySpec>().map_err(|e| e.to_string());
    }
    let num = |i: usize| -> Result<usize, String> {
        let p = params.get(i).ok_or_else(|| format!("{family}: missing parameter {}", i + 1))?;
        p.parse().map_err(|_| format!("{family}: expected an integer, got {p:?}"))
    };
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(format!("{family} takes {n} parameter(s), got {}", params.len()))
        }
    };
    let sub = |s: &String| s.parse::<FamilySpec>().map_err(|e| e.to_string());
    match family {
        "complete" => arity(1).and(Ok(FamilySpec::Complete(num(0)?))),
        "cycle" => arity(1).and(Ok(FamilySpec::Cycle(num(0)?))),
        "kneser" => arity(2).and(Ok(FamilySpec::Kneser { n: num(0)?, r: num(1)? })),
        "glued" | "glued_cliques" => {
            let sizes = (0..params.len()).map(num).collect::<Result<Vec<_>, _>>()?;
            Ok(FamilySpec::GluedCliques { sizes, shared })
        }
        "random" => {
            arity(2)?;
            let p = params[1].parse::<f64>().map_err(|_| format!("random: bad probability {:?}", params[1]))?;
            Ok(FamilySpec::Random { n: num(0)?, p, seed })
        }
        "mycielski" => {
            arity(2)?;
            Ok(FamilySpec::Mycielski { base: Box::new(sub(&params[1])?), times: num(0)? })
        }
        "join" => Ok(FamilySpec::Join(params.iter().map(sub).collect::<Result<_, _>>()?)),
        other => Err(format!("unknown family {other:?}")),
    }
}

fn cmd_gen(family: &str, params: &[String], shared: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    let spec = family_from_args(family, params, shared, seed).map_err(|m| Failure::new(exit::USAGE, m))?;
    let g = spec.generate().map_err(|e| Failure::new(exit::USAGE, e.to_string()))?;
    let text = dimacs::write(&g).map_err(|e| Failure::new(exit::INTERNAL, e.to_string()))?;
    write_out(out, &format!("c {spec}\n{text}"))?;
    Ok(exit::OK)
}

fn extract_config(args: &ExtractArgs, g: &Graph) -> Result<ExtractConfig, Failure> {
    let usage = |m: String| Failure::new(exit::USAGE, m);
    let mut cfg = match args.mode {
        ModeArg::Plain => {
            if args.lists.is_some() || args.full_lists.is_some() {
                return Err(usage("--lists and --full-lists need --mode list".into()));
            }
            match args.palette_size {
                Some(n) => ExtractConfig::with_palette(args.k, Palette::Plain(n)),
                None => ExtractConfig::plain(args.k),
            }
        }
        ModeArg::List => {
            if args.palette_size.is_some() {
                return Err(usage("--palette-size applies to plain mode only".into()));
            }
            let lists: ListAssignment = match (&args.lists, args.full_lists) {
                (Some(path), _) => parse_lists(&read(path)?)
                    .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", path.display())))?,
                (None, Some(n)) => g.vertices().iter().map(|&v| (v, (0..n).collect())).collect(),
                (None, None) => return Err(usage("list mode needs --lists or --full-lists".into())),
            };
            ExtractConfig::list(args.k, lists).map_err(|e| usage(e.to_string()))?
        }
    };
    cfg.budget = SolverBudget {
        max_decisions: args.budget_decisions.unwrap_or(0),
        wall_clock: args.budget_seconds.map(Duration::from_secs),
    };
    if args.trust_precondition {
        cfg.policy = PreconditionPolicy::Trust;
    }
    cfg.recheck_invariant = args.recheck_invariant;
    Ok(cfg)
}

fn render_trace(g: &Graph, cert: &Certificate) -> String {
    let mut s = String::new();
    let palette = match (cert.mode, cert.palette_size) {
        (Mode::Plain, Some(n)) => format!("plain palette of {n} colours"),
        _ => "list palette".to_string(),
    };
    let _ = writeln!(s, "graph: {} vertices, {} edges; k = {}; {palette}", g.order(), g.size(), cert.k);
    for (i, step) in cert.trace.iter().enumerate() {
        let (side, kept) = match step.branch {
            Branch::Separation => ("separation", step.cut.len() + step.y.len()),
            Branch::Completion => ("completion", step.cut.len() + step.z.len()),
        };
        let _ = writeln!(
            s,
            "step {}: cut {:?} splits {} vertices into {} + {}; side degree {}; kept {side} side ({kept} vertices, template degree {}, widest forbidden list {})",
            i + 1,
            step.cut,
            step.order_before,
            step.y.len(),
            step.z.len(),
            step.side_degree,
            step.derived_degree,
            step.derived_max_forbidden,
        );
    }
    let _ = writeln!(
        s,
        "H: {} vertices; connectivity {}; final template degree {}",
        cert.vertices.len(),
        cert.connectivity.min_cut_size,
        cert.template.degree(cert.k)
    );
    match &cert.chromatic {
        ChromaticEvidence::Plain { colours, .. } => {
            let _ = writeln!(s, "chromatic: H has no proper colouring with {colours} colours");
        }
        ChromaticEvidence::List { threshold, witness, .. } => {
            let w = if witness.is_some() { "; explicit bad list assignment included" } else { "" };
            let _ = writeln!(s, "list chromatic: at least {threshold}{w}");
        }
    }
    let _ = writeln!(s, "solver: {} decisions, {} backtracks", cert.solver.decisions, cert.solver.backtracks);
    s
}

fn cmd_extract(args: &ExtractArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let cfg = extract_config(args, &g)?;
    let cert = match extract(&g, &cfg) {
        Ok(c) => c,
        Err(e) => {
            let code = match &e {
                ExtractError::InvalidConfig(_) => exit::USAGE,
                ExtractError::NotInextensible(_) => exit::NOT_INEXTENSIBLE,
                ExtractError::ResourceLimit(_) => exit::RESOURCE_LIMIT,
                ExtractError::InternalContradiction(_) => exit::INTERNAL_CONTRADICTION,
                ExtractError::Construction(_) | ExtractError::Solver(_) | ExtractError::Graph(_) => exit::INTERNAL,
            };
            return Err(Failure::new(code, e.to_string()));
        }
    };
    let failures = certificate_failures(&g, &cert);
    let trace = render_trace(&g, &cert);
    if let Some(path) = &args.template_out {
        let doc = TemplateDoc {
            k: Some(cert.k),
            palette: Some(cfg.palette.clone()).filter(|p| p.mode() == Mode::Plain),
            template: cert.template.clone(),
        };
        write_out(Some(path), &write_template(&doc))?;
    }
    write_out(args.out.as_deref(), &cert.to_json())?;
    if args.out.is_some() {
        print!("{trace}");
    } else {
        eprint!("{trace}");
    }
    if !failures.is_empty() {
        return Err(Failure::new(exit::VERIFICATION_FAILED, format!("certificate failed verification: {}", failures.join("; "))));
    }
    Ok(exit::OK)
}

fn cmd_verify(graph: &Path, cert: &Path) -> CmdResult {
    let g = load_graph(graph)?;
    let cert = Certificate::from_json(&read(cert)?)
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", cert.display())))?;
    let failures = certificate_failures(&g, &cert);
    if failures.is_empty() {
        println!("accepted: H has {} vertices, connectivity {}", cert.vertices.len(), cert.connectivity.min_cut_size);
        Ok(exit::OK)
    } else {
        for f in &failures {
            println!("rejected: {f}");
        }
        Ok(exit::REJECTED)
    }
}

fn cmd_witness(graph: &Path, template: &Path, k: Option<usize>, budget: Option<u64>) -> CmdResult {
    let g = load_graph(graph)?;
    let doc = parse_template(&read(template)?)
        .map_err(|e| Failure::new(exit::INPUT, format!("{}: {e}", template.display())))?;
    let k = k.or(doc.k).ok_or_else(|| Failure::new(exit::USAGE, "no k given in the file or with --k"))?;
    let palette = doc.palette.unwrap_or(Palette::Plain(7 * k));
    let budget = SolverBudget::decisions(budget.unwrap_or(0));
    let (status, _) = witness_status(&g, &doc.template, k, &palette, budget)
        .map_err(|e| Failure::new(exit::INPUT, e.to_string()))?;
    match status {
        WitnessStatus::Valid => {
            println!("witness: no respecting colouring exists");
            Ok(exit::OK)
        }
        WitnessStatus::ResourceLimit => Err(Failure::new(exit::RESOURCE_LIMIT, "solver budget exhausted")),
        WitnessStatus::Extensible(col) => {
            println!("not a witness: respecting colouring {col:?}");
            Ok(exit::REJECTED)
        }
        other => {
            println!("not a witness: {other:?}");
            Ok(exit::REJECTED)
        }
    }
}

fn cmd_reproduce(suite: Suite, seed: u64, out: Option<&Path>) -> CmdResult {
    let report = run_suite(suite, seed);
    for inst in &report.instances {
        let mark = if inst.passed { "pass" } else { "FAIL" };
        eprintln!("{mark} {} ({:.2?}): {}", inst.id, inst.wall_time, inst.detail);
    }
    eprintln!("{suite}: {} passed, {} failed", report.passed, report.failed);
    write_out(out, &report.to_json())?;
    Ok(if report.all_passed() { exit::OK } else { exit::REJECTED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen { family, params, shared, seed, out } => cmd_gen(family, params, *shared, *seed, out.as_deref()),
        Command::Extract(args) => cmd_extract(args),
        Command::Verify { graph, certificate } => cmd_verify(graph, certificate),
        Command::Witness { graph, template, k, budget_decisions } => {
            cmd_witness(graph, template, *k, *budget_decisions)
        }
        Command::Reproduce { suite, seed, out } => cmd_reproduce(*suite, *seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

//! `ccgraph`: generators, matching-theory checks, tight cut decomposition,
//! Pfaffian tools and censuses from the shell.
//!
//! Exit codes: 0 when the verdict is true, 1 when it is false, 2 on usage or
//! input errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

use ccgraph::census::{
    census_braces, census_report, enumerate_graphs, ingest_graph6, validate_recognizers, CensusReport, CensusSpec,
};
use ccgraph::conformality::{brute_is_cycle_conformal, is_conformal, is_odd_cycle_conformal};
use ccgraph::families;
use ccgraph::graph::io::{read_graph, to_graph6, write_graph, GraphFormat};
use ccgraph::graph::is_planar;
use ccgraph::matching::{
    count_perfect_matchings, cover_graph, is_factor_critical, is_k_extendable, is_matching_covered,
};
use ccgraph::pfaffian::is_pfaffian_bruteforce;
use ccgraph::recognizers::{recognize_cubic_bipartite_cc, recognize_planar_bipartite_cc};
use ccgraph::tightcut::{classify, decompose, decompose_randomized, is_tight_cut, Class};
use ccgraph::{Cycle, Graph};

#[derive(Parser)]
#[command(name = "ccgraph", version, about = "Matching covered graphs, tight cuts and cycle-conformality")]
struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Format for graphs written to stdout.
    #[arg(long, global = true, env = "CCGRAPH_FORMAT", default_value = "g6")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Edges,
    Dot,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::G6 => GraphFormat::Graph6,
            Format::Edges => GraphFormat::EdgeList,
            Format::Dot => GraphFormat::Dot,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph: cycle N, path N, complete N, k S T, cube, ladder K,
    /// moebius K, prism K, odd-wheel N, even-wheel N, heawood, petersen,
    /// glued-kll L, tight-cut-example.
    Gen { family: String, args: Vec<usize> },
    /// Decide a property of one graph read from FILE or stdin.
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
    /// Count perfect matchings.
    Count {
        #[arg(value_parser = ["pm"])]
        what: String,
        input: Option<PathBuf>,
    },
    /// Tight cut decomposition into bricks and braces.
    Decompose {
        input: Option<PathBuf>,
        /// Pick cuts after a random relabelling with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Enumerate graphs up to isomorphism, optionally with a brace or
    /// recognizer report.
    Census(CensusArgs),
    /// Re-encode a graph.
    Convert {
        #[arg(long)]
        to: Format,
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file (graph6, edge list or DOT); stdin when absent.
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Cubic,
    Kuske,
}

#[derive(Subcommand)]
enum CheckCmd {
    MatchingCovered(Input),
    KExtendable {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Whether the cut around SHORE (comma-separated vertices) is tight.
    Tight {
        #[arg(long, value_delimiter = ',')]
        shore: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Whether the given cycle is conformal.
    Conformal {
        #[arg(long, value_delimiter = ',')]
        cycle: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    #[command(alias = "cc")]
    CycleConformal {
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Restrict to odd cycles.
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        witness: bool,
        /// Print the construction from C4 found by the planar recognizer.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    OddCycleConformal {
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        input: Input,
    },
    Pfaffian {
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        input: Input,
    },
    Planar(Input),
    Brace(Input),
    Brick(Input),
    FactorCritical(Input),
}

#[derive(Args)]
struct CensusArgs {
    /// Largest number of vertices.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long)]
    bipartite: bool,
    #[arg(long)]
    regular: Option<usize>,
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
    #[arg(long)]
    planar: bool,
    /// Include disconnected graphs.
    #[arg(long)]
    disconnected: bool,
    #[arg(long, value_enum)]
    report: Option<ReportKind>,
    /// Read graphs from a graph6 file instead of generating them.
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    /// Cycle-conformal braces and complete-bipartite counterexamples.
    Braces,
    /// Recognizer verdicts against the brute-force oracle.
    Recognizers,
}

#[derive(Serialize)]
struct Report {
    tool: String,
    input: String,
    verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<Value>,
    timing_ms: f64,
}

struct Outcome {
    verdict: Value,
    witness: Option<Value>,
    evidence: Option<Value>,
    /// Human-readable lines after the verdict.
    text: Vec<String>,
}

impl Outcome {
    fn bool(v: bool) -> Outcome {
        Outcome { verdict: Value::Bool(v), witness: None, evidence: None, text: vec![] }
    }

    fn success(&self) -> bool {
        self.verdict != Value::Bool(false)
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn load(path: &Option<PathBuf>) -> anyhow::Result<Graph> {
    let text = read_input(path)?;
    Ok(read_graph(&text)?)
}

fn cycle_text(c: &Cycle) -> String {
    c.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn generate(family: &str, args: &[usize]) -> anyhow::Result<Graph> {
    let arg = |i: usize| args.get(i).copied().with_context(|| format!("`{family}` needs {} argument(s)", i + 1));
    let g = match family {
        "cycle" => families::cycle(arg(0)?)?,
        "path" => families::path(arg(0)?)?,
        "complete" => families::complete(arg(0)?)?,
        "k" | "complete-bipartite" => families::complete_bipartite(arg(0)?, arg(1)?)?,
        "cube" => families::cube(),
        "ladder" => families::ladder(arg(0)?)?,
        "moebius" | "moebius-ladder" => families::moebius_ladder(arg(0)?)?,
        "prism" | "odd-prism" => families::odd_prism(arg(0)?)?,
        "odd-wheel" => families::odd_wheel(arg(0)?)?,
        "even-wheel" => families::even_wheel(arg(0)?)?,
        "heawood" => families::heawood(),
        "petersen" => families::petersen(),
        "glued-kll" => families::glued_kll(arg(0)?)?.graph,
        "tight-cut-example" => families::tight_cut_example().graph,
        other => bail!("unknown family `{other}`"),
    };
    Ok(g)
}

fn check_cycle_conformal(g: &Graph, method: Method, odd: bool, trace: bool) -> anyhow::Result<Outcome> {
    if odd {
        return Ok(conformality_outcome(is_odd_cycle_conformal(g)));
    }
    let method = match method {
        Method::Auto if g.is_cubic() && g.is_bipartite() && is_matching_covered(g) => Method::Cubic,
        Method::Auto if g.is_bipartite() && is_matching_covered(g) && is_planar(g).planar => Method::Kuske,
        Method::Auto => Method::Brute,
        m => m,
    };
    Ok(match method {
        Method::Cubic => {
            let r = recognize_cubic_bipartite_cc(g);
            let mut out = Outcome::bool(r.verdict);
            if let Some(reason) = r.reason {
                out.text.push(format!("reason: {}", serde_json::to_value(reason)?.as_str().unwrap_or("")));
            }
            if !r.leaves.is_empty() {
                out.text.push(format!("braces: {}", r.leaves.iter().map(to_graph6).collect::<Vec<_>>().join(" ")));
            }
            out.evidence = Some(serde_json::to_value(&r)?);
            out
        }
        Method::Kuske => {
            let r = recognize_planar_bipartite_cc(g);
            let mut out = Outcome::bool(r.verdict);
            if let Some(reason) = r.reason {
                out.text.push(format!("reason: {}", serde_json::to_value(reason)?.as_str().unwrap_or("")));
            }
            out.text.push(format!("backtracks: {}", r.backtracks));
            if trace {
                if let Some(t) = &r.trace {
                    out.text.push(serde_json::to_string(t)?);
                }
            }
            out.evidence = Some(serde_json::to_value(&r)?);
            out
        }
        _ => conformality_outcome(brute_is_cycle_conformal(g)),
    })
}

fn conformality_outcome(r: ccgraph::conformality::ConformalityReport) -> Outcome {
    let mut out = Outcome::bool(r.verdict);
    if let Some(c) = &r.witness {
        out.text.push(format!("witness: {}", cycle_text(c)));
        out.witness = Some(json!(c.vertices()));
    }
    if let Some(reason) = &r.reason {
        out.text.push(format!("reason: {reason}"));
    }
    out.text.push(format!("cycles checked: {}", r.checked_cycles));
    out
}

fn run_check(check: &CheckCmd) -> anyhow::Result<(String, Graph, Outcome)> {
    let (name, input) = match check {
        CheckCmd::MatchingCovered(i) => ("matching-covered", i),
        CheckCmd::KExtendable { input, .. } => ("k-extendable", input),
        CheckCmd::Tight { input, .. } => ("tight", input),
        CheckCmd::Conformal { input, .. } => ("conformal", input),
        CheckCmd::CycleConformal { input, .. } => ("cycle-conformal", input),
        CheckCmd::OddCycleConformal { input, .. } => ("odd-cycle-conformal", input),
        CheckCmd::Pfaffian { input, .. } => ("pfaffian", input),
        CheckCmd::Planar(i) => ("planar", i),
        CheckCmd::Brace(i) => ("brace", i),
        CheckCmd::Brick(i) => ("brick", i),
        CheckCmd::FactorCritical(i) => ("factor-critical", i),
    };
    let g = load(&input.input)?;
    let outcome = match check {
        CheckCmd::MatchingCovered(_) => {
            let mut out = Outcome::bool(is_matching_covered(&g));
            if let Ok(cov) = cover_graph(&g) {
                let excluded = cov.excluded(&g);
                if !excluded.is_empty() {
                    out.text.push(format!("edges in no perfect matching: {excluded:?}"));
                    out.witness = Some(json!(excluded));
                }
            } else {
                out.text.push("no perfect matching".into());
            }
            out
        }
        CheckCmd::KExtendable { k, .. } => {
            let r = is_k_extendable(&g, *k)?;
            let mut out = Outcome::bool(r.extendable);
            if let Some(m) = &r.counterexample {
                out.text.push(format!("matching that does not extend: {:?}", m.edges()));
                out.witness = Some(json!(m.edges()));
            }
            if let Some(reason) = &r.reason {
                out.text.push(format!("reason: {reason}"));
            }
            out
        }
        CheckCmd::Tight { shore, .. } => {
            let mut x = 0u64;
            for &v in shore {
                if v >= g.n() {
                    bail!("shore vertex {v} out of range for {} vertices", g.n());
                }
                x |= 1 << v;
            }
            let mut out = Outcome::bool(is_tight_cut(&g, x)?);
            out.evidence = Some(json!({ "cut_edges": g.cut(x) }));
            out
        }
        CheckCmd::Conformal { cycle, .. } => {
            let c = Cycle::new(&g, cycle.clone())?;
            Outcome::bool(is_conformal(&g, &c)?)
        }
        CheckCmd::CycleConformal { method, odd, witness, trace, .. } => {
            let mut out = check_cycle_conformal(&g, *method, *odd, *trace)?;
            if *witness && out.witness.is_none() && !out.success() {
                // recognizers decide without a cycle; find one by brute force
                if let Some(c) = brute_is_cycle_conformal(&g).witness {
                    out.text.push(format!("witness: {}", cycle_text(&c)));
                    out.witness = Some(json!(c.vertices()));
                }
            }
            if !witness {
                out.text.retain(|l| !l.starts_with("witness"));
            }
            out
        }
        CheckCmd::OddCycleConformal { witness, .. } => {
            let mut out = conformality_outcome(is_odd_cycle_conformal(&g));
            if !witness {
                out.text.retain(|l| !l.starts_with("witness"));
            }
            out
        }
        CheckCmd::Pfaffian { witness, .. } => {
            let r = is_pfaffian_bruteforce(&g)?;
            let mut out = Outcome::bool(r.pfaffian);
            out.text.push(format!("orientation classes searched: {} of 2^{}", r.assignments_tried, r.dimension));
            if let Some(o) = &r.orientation {
                out.witness = Some(serde_json::to_value(o)?);
                if *witness {
                    out.text.push(format!("orientation: {}", serde_json::to_string(&o.arcs)?));
                }
            }
            out
        }
        CheckCmd::Planar(_) => {
            let p = is_planar(&g);
            let mut out = Outcome::bool(p.planar);
            if let Some(k) = &p.witness {
                out.text.push(format!("kuratowski subdivision ({:?}): {:?}", k.kind, k.edges));
                out.witness = Some(serde_json::to_value(k)?);
            }
            out
        }
        CheckCmd::Brace(_) | CheckCmd::Brick(_) => {
            let class = classify(&g);
            let want = if matches!(check, CheckCmd::Brace(_)) { Class::Brace } else { Class::Brick };
            let mut out = Outcome::bool(class == want);
            out.text.push(format!("class: {}", serde_json::to_value(class)?.as_str().unwrap_or("")));
            out.evidence = Some(json!({ "class": class }));
            out
        }
        CheckCmd::FactorCritical(_) => Outcome::bool(is_factor_critical(&g)),
    };
    Ok((name.to_string(), g, outcome))
}

fn census_spec(a: &CensusArgs) -> CensusSpec {
    CensusSpec {
        min_n: a.min_n,
        max_n: a.n,
        bipartite: a.bipartite,
        balanced: false,
        regular: a.regular,
        connected: !a.disconnected,
        min_degree: a.min_degree,
        planar: a.planar,
        threads: a.jobs,
    }
}

fn print_census_report(r: &CensusReport, json_out: bool) -> anyhow::Result<bool> {
    for g6 in &r.counterexamples {
        eprintln!("CONJECTURE COUNTEREXAMPLE: cycle-conformal brace {g6} is not complete bipartite");
    }
    for m in &r.mismatches {
        eprintln!(
            "RECOGNIZER MISMATCH: {} ({}: {}, oracle: {})",
            m.graph6, m.recognizer, m.recognizer_verdict, m.oracle_verdict
        );
    }
    if json_out {
        println!("{}", serde_json::to_string_pretty(r)?);
    } else {
        println!("n graphs matching-covered braces cc cc-braces cubic-checked planar-checked");
        for (n, c) in &r.class_counts {
            println!(
                "{n} {} {} {} {} {} {} {}",
                c.graphs,
                c.matching_covered,
                c.braces,
                c.cycle_conformal,
                c.cycle_conformal_braces,
                c.cubic_checked,
                c.planar_checked
            );
        }
        if !r.cycle_conformal_braces.is_empty() {
            println!("cycle-conformal braces: {}", r.cycle_conformal_braces.join(" "));
        }
        println!("counterexamples: {}", r.counterexamples.len());
        println!("mismatches: {}", r.mismatches.len());
    }
    Ok(r.counterexamples.is_empty() && r.mismatches.is_empty())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let format: GraphFormat = cli.format.into();
    match &cli.command {
        Command::Gen { family, args } => {
            print!("{}", write_graph(&generate(family, args)?, format));
            Ok(true)
        }
        Command::Convert { to, input } => {
            print!("{}", write_graph(&load(input)?, (*to).into()));
            Ok(true)
        }
        Command::Count { input, .. } => {
            let g = load(input)?;
            let count = count_perfect_matchings(&g);
            if cli.json {
                println!("{}", json!({ "tool": "count-pm", "input": to_graph6(&g), "count": count.to_string() }));
            } else {
                println!("{count}");
            }
            Ok(true)
        }
        Command::Decompose { input, seed } => {
            let g = load(input)?;
            let start = Instant::now();
            let d = match seed {
                Some(s) => decompose_randomized(&g, &mut StdRng::seed_from_u64(*s))?,
                None => decompose(&g)?,
            };
            if cli.json {
                let report = Report {
                    tool: "decompose".into(),
                    input: to_graph6(&g),
                    verdict: json!(d.leaves.len()),
                    witness: None,
                    evidence: Some(serde_json::to_value(&d)?),
                    timing_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for leaf in &d.leaves {
                    println!("{} {}", to_graph6(&leaf.graph), serde_json::to_value(leaf.class)?.as_str().unwrap_or(""));
                }
            }
            Ok(true)
        }
        Command::Census(a) => {
            let spec = census_spec(a);
            let graphs = match &a.from {
                Some(p) => ingest_graph6(&read_input(&Some(p.clone()))?, &spec)?,
                None => enumerate_graphs(&spec)?,
            };
            match a.report {
                None => {
                    for g in &graphs {
                        print!("{}", write_graph(g, format));
                    }
                    eprintln!("{} graphs", graphs.len());
                    Ok(true)
                }
                Some(ReportKind::Braces) if a.from.is_none() => print_census_report(&census_braces(&spec)?, cli.json),
                Some(ReportKind::Recognizers) if a.from.is_none() => {
                    print_census_report(&validate_recognizers(&spec)?, cli.json)
                }
                Some(kind) => {
                    let braces = matches!(kind, ReportKind::Braces);
                    print_census_report(&census_report(&graphs, braces, !braces, a.jobs)?, cli.json)
                }
            }
        }
        Command::Check { check } => {
            let start = Instant::now();
            let (tool, g, out) = run_check(check)?;
            let success = out.success();
            if cli.json {
                let report = Report {
                    tool,
                    input: to_graph6(&g),
                    verdict: out.verdict,
                    witness: out.witness,
                    evidence: out.evidence,
                    timing_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{tool}: {}", out.verdict);
                for line in &out.text {
                    println!("{line}");
                }
            }
            Ok(success)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

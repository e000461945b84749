//! Command surface of the `flowvit` binary.
//!
//! Exit codes: 0 success, 1 I/O failure or selftest mismatch, 2 invalid
//! input, 3 a method that cannot handle the given input.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use flowvit_core::general::{all_arc_vitalities, build_ancestor_tree, vitality_naive};
use flowvit_core::io::{format_embedding, format_network, parse_embedding, parse_network};
use flowvit_core::oracle::{
    generate_graph_b, generate_grid, min_cut_bruteforce, random_contiguous_set, random_network,
    EpsilonMatrix, BRUTE_FORCE_LIMIT,
};
use flowvit_core::{
    approx_eq, Embedding, Error, Method, MaxFlowSolver, Network, Resource, VitalityEntry,
    VitalityIndex, VitalityReport,
};

#[derive(Debug, Parser)]
#[command(name = "flowvit", version, about = "Max-flow vitality of arcs, nodes and arc sets")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum flow value and the source side of a minimum cut.
    Maxflow {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Vitality of arcs, nodes or an arc set.
    #[command(subcommand)]
    Vitality(VitalityCommand),
    /// Write generated instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Cross-check every method on random instances.
    Selftest {
        /// Nodes per random general network.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VitalityCommand {
    /// Every arc.
    Arcs {
        #[command(flatten)]
        input: Input,
    },
    /// Every node other than s and t.
    Nodes {
        #[command(flatten)]
        input: Input,
    },
    /// One set of arcs removed together.
    Set {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-based arc ids.
        #[arg(long, value_delimiter = ',', required = true)]
        arcs: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    graph: PathBuf,
    #[arg(long)]
    embedding: Option<PathBuf>,
    #[arg(long, default_value = "naive")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Grid with s left and t right, plus its straight-line embedding.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        undirected: bool,
        /// Graph destination; standard output when omitted.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        embedding_out: Option<PathBuf>,
    },
    /// Undirected bipartite network with perturbed middle capacities.
    BipartiteB {
        #[arg(long)]
        k: usize,
        /// Random perturbations from this seed instead of distinct powers of two.
        #[arg(long)]
        random_seed: Option<u64>,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Jsonl,
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, io::Error),
    Input(Error),
    Mismatch(String),
    Selftest(Vec<String>),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(..) | Failure::Selftest(_) => 1,
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DirectedUnsupported | Error::EmbeddingRequired(_) => {
                Failure::Mismatch(e.to_string())
            }
            other => Failure::Input(other),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Mismatch(msg) => write!(f, "{msg}"),
            Failure::Selftest(lines) => write!(f, "{} mismatches", lines.len()),
        }
    }
}

/// Runs one command. Data goes to `out`, diagnostics to `err`; nothing is
/// written to `out` unless the whole command succeeds.
pub fn run(config: RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut warnings = Vec::new();
    let result = execute(config.command, &mut warnings);
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                1
            }
        },
        Err(Failure::Selftest(lines)) => {
            for line in &lines {
                let _ = writeln!(err, "mismatch: {line}");
            }
            let _ = writeln!(err, "selftest failed: {} mismatches", lines.len());
            1
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            failure.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn execute(command: Command, warnings: &mut Vec<String>) -> Result<String, Failure> {
    match command {
        Command::Maxflow { graph, format } => {
            let net = parse_network(&read(&graph)?)?;
            let result = MaxFlowSolver::new().solve(&net);
            let side: Vec<usize> = result.cut().source_side().iter().map(|v| v + 1).collect();
            let value = round12(result.value);
            Ok(match format {
                Format::Tsv => {
                    let side: Vec<String> = side.iter().map(ToString::to_string).collect();
                    format!("max_flow\t{value}\nsource_side\t{}\n", side.join(" "))
                }
                Format::Jsonl => format!("{}\n", json!({ "max_flow": value, "source_side": side })),
            })
        }
        Command::Vitality(cmd) => vitality(cmd, warnings),
        Command::Gen(cmd) => generate(cmd),
        Command::Selftest { n, trials, seed } => selftest(n, trials, seed),
    }
}

fn load(input: &Input, warnings: &mut Vec<String>) -> Result<(Network, Option<Embedding>), Failure> {
    let net = parse_network(&read(&input.graph)?)?;
    let emb = match (&input.embedding, input.method) {
        (Some(path), Method::Planar) => Some(parse_embedding(&read(path)?, &net)?),
        (Some(path), method) => {
            warnings.push(format!(
                "method `{method}` does not use the embedding {}; ignoring it",
                path.display()
            ));
            None
        }
        (None, Method::Planar) => return Err(Error::EmbeddingRequired("planar").into()),
        (None, _) => None,
    };
    Ok((net, emb))
}

fn vitality(cmd: VitalityCommand, warnings: &mut Vec<String>) -> Result<String, Failure> {
    let (input, resources) = match &cmd {
        VitalityCommand::Arcs { input } => (input, "arcs"),
        VitalityCommand::Nodes { input } => (input, "nodes"),
        VitalityCommand::Set { input, .. } => (input, "sets"),
    };
    if resources != "arcs" && !matches!(input.method, Method::Naive | Method::Planar) {
        return Err(Failure::Mismatch(format!(
            "method `{}` computes arc vitality only; use naive or planar for {resources}",
            input.method
        )));
    }
    let (net, emb) = load(input, warnings)?;
    let index = emb.map(|emb| VitalityIndex::new(&net, &emb)).transpose()?;

    let report = match (&cmd, &index) {
        (VitalityCommand::Arcs { .. }, Some(idx)) => idx.all_arcs(),
        (VitalityCommand::Arcs { .. }, None) => all_arc_vitalities(&net, input.method)?,
        (VitalityCommand::Nodes { .. }, Some(idx)) => idx.all_nodes(),
        (VitalityCommand::Nodes { .. }, None) => {
            let (s, t) = (net.source(), net.sink());
            let entries = (0..net.node_count())
                .filter(|&v| v != s && v != t)
                .map(|v| naive_entry(&net, Resource::Node(v)))
                .collect::<Result<_, _>>()?;
            VitalityReport {
                entries,
                max_flow: flowvit_core::max_flow_value(&net),
            }
        }
        (VitalityCommand::Set { arcs, .. }, _) => {
            // ids are 1-based on the command line, and so is the error
            if let Some(&k) = arcs.iter().find(|&&k| k == 0 || k > net.arc_count()) {
                return Err(Error::UnknownArc(k).into());
            }
            let ids: Vec<usize> = arcs.iter().map(|k| k - 1).collect();
            let entry = match &index {
                Some(idx) => {
                    let q = idx.contiguous_set_vitality(&ids)?;
                    VitalityEntry {
                        resource: Resource::ArcSet(ids),
                        vitality: q.vitality,
                        method: Method::Planar,
                        dual_distances: Some(q.dual_distances),
                    }
                }
                None => naive_entry(&net, Resource::ArcSet(ids))?,
            };
            VitalityReport {
                max_flow: index.as_ref().map_or_else(|| flowvit_core::max_flow_value(&net), |i| i.max_flow()),
                entries: vec![entry],
            }
        }
    };
    Ok(render(&report, input.format))
}

fn naive_entry(net: &Network, resource: Resource) -> Result<VitalityEntry, Error> {
    Ok(VitalityEntry {
        vitality: vitality_naive(net, &resource)?,
        resource,
        method: Method::Naive,
        dual_distances: None,
    })
}

/// Rounds to 12 significant digits so every output format carries the same value.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

fn resource_fields(resource: &Resource) -> (&'static str, String) {
    match resource {
        Resource::Arc(e) => ("arc", (e + 1).to_string()),
        Resource::Node(v) => ("node", (v + 1).to_string()),
        Resource::ArcSet(arcs) => (
            "set",
            arcs.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(","),
        ),
    }
}

pub fn render(report: &VitalityReport, format: Format) -> String {
    let mut text = String::new();
    if format == Format::Tsv {
        text.push_str("resource\tid\tvitality\tmethod\tdist_from_u\tdist_to_l\n");
    }
    for entry in &report.entries {
        let (kind, id) = resource_fields(&entry.resource);
        let vitality = round12(entry.vitality);
        let dists = entry.dual_distances.map(|(u, l)| (round12(u), round12(l)));
        let line = match format {
            Format::Tsv => {
                let (u, l) = dists.map_or(("-".into(), "-".into()), |(u, l)| {
                    (u.to_string(), l.to_string())
                });
                format!("{kind}\t{id}\t{vitality}\t{}\t{u}\t{l}", entry.method)
            }
            Format::Jsonl => {
                let id = match &entry.resource {
                    Resource::Arc(x) | Resource::Node(x) => json!(x + 1),
                    Resource::ArcSet(arcs) => json!(arcs.iter().map(|e| e + 1).collect::<Vec<_>>()),
                };
                let mut record = json!({
                    "resource": kind,
                    "id": id,
                    "vitality": vitality,
                    "method": entry.method.name(),
                });
                if let Some((u, l)) = dists {
                    record["dist_from_u"] = json!(u);
                    record["dist_to_l"] = json!(l);
                }
                record.to_string()
            }
        };
        text.push_str(&line);
        text.push('\n');
    }
    text
}

fn emit(path: Option<&Path>, text: String) -> Result<String, Failure> {
    match path {
        Some(path) => write_file(path, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn generate(cmd: GenCommand) -> Result<String, Failure> {
    match cmd {
        GenCommand::Grid {
            rows,
            cols,
            seed,
            undirected,
            graph_out,
            embedding_out,
        } => {
            if rows == 0 || cols == 0 {
                return Err(Error::BadPartition("grid needs rows, cols >= 1".into()).into());
            }
            let (net, emb) = generate_grid(rows, cols, seed, !undirected);
            if let Some(path) = &embedding_out {
                write_file(path, &format_embedding(&net, &emb))?;
            }
            emit(graph_out.as_deref(), format_network(&net))
        }
        GenCommand::BipartiteB {
            k,
            random_seed,
            graph_out,
        } => {
            let eps = match random_seed {
                Some(seed) => EpsilonMatrix::random(k, seed)?,
                None => EpsilonMatrix::distinct(k)?,
            };
            let mut text = format!("c bipartite network, k = {k}\n");
            text.push_str(&format_network(&generate_graph_b(&eps)));
            emit(graph_out.as_deref(), text)
        }
    }
}

/// Compares every method on `trials` random general networks of `n` nodes
/// and on as many small grids.
fn selftest(n: usize, trials: usize, seed: u64) -> Result<String, Failure> {
    if n < 2 {
        return Err(Error::BadPartition("selftest needs n >= 2".into()).into());
    }
    let mut mismatches = Vec::new();
    let mut checks = 0usize;
    let mut note = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            mismatches.push(what);
        }
    };

    for trial in 0..trials as u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(trial);
        let m = n - 1 + (s % (2 * n as u64)) as usize;
        let net = random_network(n, m, false, s);
        let naive = all_arc_vitalities(&net, Method::Naive)?;
        let lemma1 = all_arc_vitalities(&net, Method::Lemma1)?;
        let ancestor = all_arc_vitalities(&net, Method::Ancestor)?;
        let tree = build_ancestor_tree(&net)?;
        note(
            tree.stats().maxflow_calls == 2 * (n as u64 - 1),
            format!("trial {trial}: tree used {} solves", tree.stats().maxflow_calls),
        );
        if n <= BRUTE_FORCE_LIMIT {
            let (brute, _) = min_cut_bruteforce(&net)?;
            note(
                approx_eq(brute, naive.max_flow),
                format!("trial {trial}: max flow {} vs exhaustive {brute}", naive.max_flow),
            );
        }
        for e in 0..net.arc_count() {
            let (a, b, c) = (naive.values()[e], lemma1.values()[e], ancestor.values()[e]);
            note(
                approx_eq(a, b) && approx_eq(a, c),
                format!("trial {trial} arc {}: naive {a}, lemma1 {b}, ancestor {c}", e + 1),
            );
        }

        let rows = 1 + (trial % 4) as usize;
        let cols = 1 + (trial / 4 % 4) as usize;
        let (grid, emb) = generate_grid(rows, cols, s, trial % 2 == 0);
        let idx = VitalityIndex::new(&grid, &emb)?;
        let tag = format!("trial {trial} grid {rows}x{cols}");
        note(
            approx_eq(idx.max_flow(), flowvit_core::max_flow_value(&grid)),
            format!("{tag}: dual distance {} vs max flow", idx.max_flow()),
        );
        let planar = idx.all_arcs();
        let naive = all_arc_vitalities(&grid, Method::Naive)?;
        for (e, (a, b)) in naive.values().iter().zip(planar.values()).enumerate() {
            note(approx_eq(*a, b), format!("{tag} arc {}: naive {a}, planar {b}", e + 1));
        }
        for entry in idx.all_nodes().entries {
            let naive = vitality_naive(&grid, &entry.resource)?;
            note(
                approx_eq(naive, entry.vitality),
                format!("{tag} {:?}: naive {naive}, planar {}", entry.resource, entry.vitality),
            );
        }
        let set = random_contiguous_set(idx.dual(), 6, s);
        let fast = idx.contiguous_set_vitality(&set)?.vitality;
        let naive = vitality_naive(&grid, &Resource::ArcSet(set.clone()))?;
        note(approx_eq(naive, fast), format!("{tag} set {set:?}: naive {naive}, planar {fast}"));
    }

    if mismatches.is_empty() {
        Ok(format!("all methods agree ({trials} trials, {checks} checks)\n"))
    } else {
        Err(Failure::Selftest(mismatches))
    }
}

//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a computed negative answer (failed
//! verification, infinite quot, inconsistent inputs), `2` usage, I/O or
//! parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::census::{path_census, CensusRecord};
use crate::certs::{self, Certificate, ChiCertificate, EdgeFamilyCertificate, DEFAULT_EXACT_LIMIT};
use crate::dim::DimResult;
use crate::error::{Error, Result};
use crate::families::Family;
use crate::graph::{Graph, GraphFile};
use crate::outsplit::{maximal_out_split, OutSplitComponent};
use crate::report::{analyze_batch, table, AnalyzeOptions, Report};
use crate::witness::{
    build_gauge_unitary, build_plain_witness, build_weak_witness, verify_witness, VerificationReport, WitnessFile,
};

const GRAPH_SCHEMA: &str = r#"graph file schema:
  {"name": string,
   "vertices": [string, ...],
   "edges": [{"id": string, "src": vertex, "dst": vertex}, ...]}"#;

#[derive(Debug, Parser)]
#[command(name = "gaugedim", version, about = "Local-triviality dimensions of gauge actions on graph C*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Plain,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Built-in graph families.
    Families {
        #[command(subcommand)]
        action: FamiliesCommand,
    },
    /// Full report: exact values, witnesses, certificates, known results.
    Analyze {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "GAUGEDIM_EXACT_LIMIT", default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        /// Random trials per obstruction test.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Residue counts of paths ending at each sink.
    Census {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Maximal out-splitting, one component per sink.
    Outsplit {
        graph: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Z/2 certificates (row combination and edge families).
    Certify {
        graph: PathBuf,
        #[arg(long, env = "GAUGEDIM_EXACT_LIMIT", default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build the matrix witness for one sink component.
    Witness {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
        /// Sink to use when the graph has several.
        #[arg(long)]
        sink: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Re-verify a saved certificate or witness file against a graph.
    Verify {
        graph: PathBuf,
        file: PathBuf,
        #[arg(long)]
        sink: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum FamiliesCommand {
    /// Emit a family graph as JSON.
    Gen {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List family names.
    List,
}

/// Output of the `certify` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyOutput {
    pub graph: String,
    pub free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_families: Option<EdgeFamilyCertificate>,
    pub bounds: Vec<DimResult>,
}

impl CertifyOutput {
    pub fn certificates(&self) -> Vec<Certificate> {
        let mut out = Vec::new();
        out.extend(self.chi.clone().map(Certificate::Chi));
        out.extend(self.edge_families.clone().map(Certificate::EdgeFamily));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRecord {
    sink: String,
    vertices: usize,
    edges: usize,
    graph: GraphFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateCheck {
    certificate: String,
    ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidParameter(_)
            | Error::BadModulus(_)
            | Error::DuplicateLabel(_)
            | Error::UnknownEndpoint { .. }
            | Error::EmptyGraph
            | Error::UnknownVertex(_)
            | Error::NotASink(_)
            | Error::MultipleSinks(_) => Failure::Usage(e.to_string()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Runs the CLI with process stdio and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "{GRAPH_SCHEMA}");
            2
        }
    }
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    let text = read_text(path)?;
    Graph::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match target {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn pick_component<'a>(
    components: &'a [OutSplitComponent],
    sink: Option<&str>,
) -> std::result::Result<&'a OutSplitComponent, Failure> {
    match sink {
        Some(s) => components
            .iter()
            .find(|c| c.sink == s)
            .ok_or_else(|| Failure::Usage(format!("`{s}` is not a sink of the graph"))),
        None if components.len() == 1 => Ok(&components[0]),
        None => Err(Failure::Usage(format!(
            "graph has {} sinks; choose one with --sink",
            components.len()
        ))),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Families { action } => families(action, out),
        Command::Analyze {
            graphs,
            k,
            seed,
            exact_limit,
            trials,
            out: o,
        } => {
            let loaded = graphs
                .iter()
                .map(|p| load_graph(p))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let opts = AnalyzeOptions {
                seed,
                exact_limit,
                obstruction_trials: trials,
                ..AnalyzeOptions::default()
            };
            let reports = analyze_batch(&loaded, k, &opts)
                .into_iter()
                .collect::<Result<Vec<Report>>>()?;
            let text = match o.format {
                Format::Json if reports.len() == 1 => reports[0].to_json(),
                Format::Json => json(&reports),
                Format::Text => reports
                    .iter()
                    .map(Report::to_text)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(out, o.output.as_deref(), &text)?;
            Ok(reports.iter().all(Report::witnesses_passed))
        }
        Command::Census { graph, k, out: o } => {
            let g = load_graph(&graph)?;
            let records: Vec<CensusRecord> = path_census(&g, k)?.iter().map(CensusRecord::from).collect();
            let text = match o.format {
                Format::Json => json(&records),
                Format::Text => {
                    let rows: Vec<Vec<String>> = records
                        .iter()
                        .map(|r| {
                            let res: Vec<String> = r.residues.iter().map(u64::to_string).collect();
                            vec![r.sink.clone(), res.join(" "), r.quot.to_string()]
                        })
                        .collect();
                    let mut s = String::new();
                    table(&mut s, &["sink", "residues", "quot"], &rows);
                    s
                }
            };
            emit(out, o.output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Outsplit { graph, out: o } => {
            let g = load_graph(&graph)?;
            let split = maximal_out_split(&g)?;
            let records: Vec<ComponentRecord> = split
                .components
                .iter()
                .map(|c| ComponentRecord {
                    sink: c.sink.clone(),
                    vertices: c.graph.vertex_count(),
                    edges: c.graph.edge_count(),
                    graph: c.graph.clone().into(),
                })
                .collect();
            let text = match o.format {
                Format::Json => json(&records),
                Format::Text => {
                    let rows: Vec<Vec<String>> = split
                        .components
                        .iter()
                        .map(|c| {
                            let lengths: Vec<String> = c.length_counts().iter().map(u64::to_string).collect();
                            vec![
                                c.sink.clone(),
                                c.graph.vertex_count().to_string(),
                                c.graph.edge_count().to_string(),
                                lengths.join(" "),
                            ]
                        })
                        .collect();
                    let mut s = String::new();
                    table(&mut s, &["sink", "vertices", "edges", "paths by length"], &rows);
                    s
                }
            };
            emit(out, o.output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Certify {
            graph,
            exact_limit,
            out: o,
        } => {
            let g = load_graph(&graph)?;
            let result = CertifyOutput {
                graph: g.name().to_string(),
                free: certs::z2_is_free(&g),
                chi: certs::find_chi_certificate(&g),
                edge_families: certs::find_edge_families(&g, exact_limit),
                bounds: certs::z2_bounds(&g, exact_limit),
            };
            let text = match o.format {
                Format::Json => json(&result),
                Format::Text => {
                    let rows: Vec<Vec<String>> = result
                        .bounds
                        .iter()
                        .map(|b| {
                            vec![
                                b.kind.to_string(),
                                b.group.to_string(),
                                b.certainty.to_string(),
                                b.value.to_string(),
                                b.provenance.clone(),
                            ]
                        })
                        .collect();
                    let mut s = format!("graph  {}\nfree   {}\n\n", result.graph, result.free);
                    table(&mut s, &["kind", "group", "rel", "value", "source"], &rows);
                    s
                }
            };
            emit(out, o.output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Witness {
            graph,
            k,
            mode,
            sink,
            output,
        } => {
            let g = load_graph(&graph)?;
            let split = maximal_out_split(&g)?;
            let comp = pick_component(&split.components, sink.as_deref())?;
            let u = build_gauge_unitary(&comp.graph, k)?;
            let w = match mode {
                Mode::Weak => build_weak_witness(&comp.graph, k)?,
                Mode::Plain => build_plain_witness(&comp.graph, k)?,
            };
            emit(out, output.as_deref(), &json(&WitnessFile::new(&w, &u)))?;
            Ok(true)
        }
        Command::Verify {
            graph,
            file,
            sink,
            output,
        } => {
            let g = load_graph(&graph)?;
            let text = read_text(&file)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let parse_err = |e: serde_json::Error| Failure::Usage(format!("{}: {e}", file.display()));
            if value.get("matrices").is_some() {
                let wf: WitnessFile = serde_json::from_value(value).map_err(parse_err)?;
                let report = verify_witness_file(&g, &wf, sink.as_deref())?;
                emit(out, output.as_deref(), &json(&report))?;
                return Ok(report.passed);
            }
            let certificates = if value.get("type").is_some() {
                vec![serde_json::from_value::<Certificate>(value).map_err(parse_err)?]
            } else {
                serde_json::from_value::<CertifyOutput>(value)
                    .map_err(parse_err)?
                    .certificates()
            };
            let checks: Vec<CertificateCheck> = certificates
                .iter()
                .map(|c| {
                    let name = match c {
                        Certificate::Chi(_) => "chi",
                        Certificate::EdgeFamily(_) => "edge_family",
                    };
                    let verdict = certs::verify_certificate(&g, c);
                    CertificateCheck {
                        certificate: name.into(),
                        ok: verdict.is_ok(),
                        violation: verdict.err().map(|e| e.to_string()),
                    }
                })
                .collect();
            emit(out, output.as_deref(), &json(&checks))?;
            Ok(checks.iter().all(|c| c.ok))
        }
    }
}

fn verify_witness_file(
    g: &Graph,
    wf: &WitnessFile,
    sink: Option<&str>,
) -> std::result::Result<VerificationReport, Failure> {
    let split = maximal_out_split(g)?;
    let comp = pick_component(&split.components, sink)?;
    let u = build_gauge_unitary(&comp.graph, wf.k)?;
    let (w, stored_u) = wf.decode()?;
    if stored_u.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: stored_u.dim(),
        }
        .into());
    }
    if (&stored_u - &u.matrix).max_abs() > 1e-12 {
        return Err(Failure::Negative(
            "stored unitary does not match the gauge unitary of the graph".into(),
        ));
    }
    Ok(verify_witness(&w, &u)?)
}

fn families(action: FamiliesCommand, out: &mut dyn Write) -> Outcome {
    match action {
        FamiliesCommand::Gen { name, n, output } => {
            let family: Family = name.parse()?;
            let g = family.generate(n)?;
            emit(out, output.as_deref(), &g.to_json())?;
        }
        FamiliesCommand::List => {
            let rows: Vec<Vec<String>> = Family::ALL
                .iter()
                .map(|f| {
                    let param = if f.takes_parameter() {
                        format!("--n >= {}", f.min_parameter())
                    } else {
                        "-".into()
                    };
                    vec![f.to_string(), param]
                })
                .collect();
            let mut s = String::new();
            table(&mut s, &["family", "parameter"], &rows);
            emit(out, None, &s)?;
        }
    }
    Ok(true)
}

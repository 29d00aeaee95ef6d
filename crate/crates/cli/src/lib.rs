//! `wizdata` command-line front end.
//!
//! Every subcommand is a pure function of its input files and flags. Exit
//! status is 0 on success, 1 on usage errors and 2 on data errors; error
//! messages go to stderr prefixed with `error:`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wizdata_core::io::{write_edge_csv, write_json_graph};
use wizdata_core::simulate::generation_metadata;
use wizdata_core::{
    basic_wizscore, classify_words, degree_histogram, extract_buzznet, extract_wiznet,
    fair_wizscore_iterative, fair_wizscore_onelevel, fit_power_law, format_significant,
    generate_wordnet, global_wizword_likelihood, load_wordnet, local_wizword_likelihood,
    pareto_share, reach_comparison, shortest_wizpath, widest_wizpath, wiznet_coverage,
    wizscore_percentage, Classification, ClassificationConfig, DuplicatePolicy, GraphFormat,
    GrowthParams, ScoreMethod, ScoreTable, SolverConfig, SolverReport, WeightMode, WordNet,
};

pub mod report;

#[derive(Debug, Parser)]
#[command(name = "wizdata", version, about = "Score and analyse reference networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an input net and print its summary
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        /// Re-emit the validated net (`.json` for the JSON graph format, edge CSV otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score every node (CSV: id,in_degree,basic,fair,percentage)
    Score {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label nodes as wizword, buzzword or plain (CSV: id,label,score,in_degree)
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the wiznet or buzznet as a JSON graph
    Extract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long, value_enum)]
        subnet: Subnet,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Global wizword likelihood, or the local one with --based-on
    Complexity {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long, value_name = "NODE")]
        based_on: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a wizpath between two wizwords
    Path {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = PathMode::Shortest)]
        mode: PathMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one hypothesis test
    Hypo {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long, value_enum)]
        test: HypoTest,
        #[arg(long, default_value_t = 0.2)]
        top_fraction: f64,
        /// Where `--test powerlaw` writes `value,count` rows [default: degree_histogram.csv next to --out]
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic net (edge CSV plus `<out>.meta.json`)
    Generate {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Weights::Unit)]
        weights: Weights,
        #[arg(long)]
        out: PathBuf,
    },
    /// Full analysis report as JSON
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        classes: ClassArgs,
        #[arg(long, default_value_t = 0.2)]
        top_fraction: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge CSV, or a JSON graph with --format json
    #[arg(long)]
    edges: PathBuf,
    /// Optional `id,label` node CSV
    #[arg(long)]
    node_file: Option<PathBuf>,
    /// Input format [default: from the file extension]
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// Merge repeated edges instead of rejecting them
    #[arg(long, value_enum)]
    merge_duplicates: Option<Merge>,
}

#[derive(Debug, Args)]
struct ScoringArgs {
    #[arg(long, value_enum, default_value_t = Method::Fair)]
    method: Method,
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long, default_value_t = 0.75)]
    tau: f64,
    #[arg(long, default_value_t = 0.9)]
    buzz_quantile: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Merge {
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Basic,
    Fair,
    FairIterative,
}

impl From<Method> for ScoreMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Basic => ScoreMethod::Basic,
            Method::Fair => ScoreMethod::FairOnelevel,
            Method::FairIterative => ScoreMethod::FairIterative,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Subnet {
    Wiz,
    Buzz,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PathMode {
    Shortest,
    Widest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HypoTest {
    Pareto,
    Powerlaw,
    Coverage,
    Reach,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Weights {
    Unit,
    Uniform,
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn load(input: &InputArgs) -> Result<WordNet> {
    let format = match input.format {
        Some(InputFormat::Csv) => GraphFormat::Csv,
        Some(InputFormat::Json) => GraphFormat::Json,
        None => GraphFormat::from_path(&input.edges),
    };
    let policy = match input.merge_duplicates {
        Some(Merge::Max) => DuplicatePolicy::MergeMax,
        None => DuplicatePolicy::Reject,
    };
    load_wordnet(&input.edges, format, input.node_file.as_deref(), policy)
        .with_context(|| format!("loading {}", input.edges.display()))
}

fn solver_config(scoring: &ScoringArgs) -> SolverConfig {
    SolverConfig {
        damping: scoring.damping,
        tolerance: scoring.tol,
        max_iterations: scoring.max_iter,
    }
}

/// Scores with the selected method, warning on stderr if the solver stalls.
fn selected_scores(net: &WordNet, scoring: &ScoringArgs) -> Result<(ScoreTable, Option<SolverReport>)> {
    let (table, report) = wizdata_core::score(net, scoring.method.into(), &solver_config(scoring))?;
    if let Some(r) = report.as_ref().filter(|r| !r.converged) {
        eprintln!(
            "warning: solver stopped after {} iterations with residual {:e}",
            r.iterations_used, r.final_residual
        );
    }
    Ok((table, report))
}

fn classification_config(scoring: &ScoringArgs, classes: &ClassArgs) -> ClassificationConfig {
    ClassificationConfig {
        tau: classes.tau,
        buzz_quantile: classes.buzz_quantile,
        score_method: scoring.method.into(),
    }
}

fn classify(net: &WordNet, scoring: &ScoringArgs, classes: &ClassArgs) -> Result<(ScoreTable, Classification)> {
    let (scores, _) = selected_scores(net, scoring)?;
    let classification = classify_words(net, &scores, &classification_config(scoring, classes))?;
    Ok((scores, classification))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    emit(out, &bytes)
}

fn real(v: f64) -> String {
    format_significant(v, 12)
}

/// Score CSV rows, sorted by fair score descending then id ascending.
pub fn score_csv(net: &WordNet, method: ScoreMethod, solver: &SolverConfig) -> Result<String> {
    let basic = basic_wizscore(net);
    let fair = match method {
        ScoreMethod::FairIterative => fair_wizscore_iterative(net, solver)?.0,
        _ => fair_wizscore_onelevel(net),
    };
    let selected = match method {
        ScoreMethod::Basic => &basic,
        _ => &fair,
    };
    let mut rows: Vec<(usize, f64)> = (0..net.node_count())
        .map(|i| (i, fair.get(net.id(i).as_str()).unwrap_or(0.0)))
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut out = String::from("id,in_degree,basic,fair,percentage\n");
    let mut w = csv::Writer::from_writer(Vec::new());
    for (i, f) in rows {
        let id = net.id(i).as_str();
        let b = basic.get(id).unwrap_or(0.0);
        let pct = wizscore_percentage(selected.get(id).unwrap_or(0.0))?;
        w.write_record([id, &net.in_degree(i).to_string(), &real(b), &real(f), &pct.to_string()])?;
    }
    out.push_str(std::str::from_utf8(&w.into_inner()?)?);
    Ok(out)
}

/// Class CSV rows in id order.
pub fn class_csv(net: &WordNet, classification: &Classification) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "label", "score", "in_degree"])?;
    for (i, id) in net.ids().iter().enumerate() {
        let entry = classification
            .get(id.as_str())
            .with_context(|| format!("node `{id}` is not classified"))?;
        w.write_record([
            id.as_str(),
            &entry.label.to_string(),
            &real(entry.score),
            &net.in_degree(i).to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn graph_bytes(net: &WordNet, json: bool) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if json {
        write_json_graph(net, &mut buf)?;
    } else {
        write_edge_csv(net, &mut buf)?;
    }
    Ok(buf)
}

#[derive(Serialize)]
struct NetSummary {
    nodes: usize,
    edges: usize,
    max_ref: usize,
    isolated: usize,
}

fn summary(net: &WordNet) -> NetSummary {
    NetSummary {
        nodes: net.node_count(),
        edges: net.edge_count(),
        max_ref: net.max_ref(),
        isolated: (0..net.node_count())
            .filter(|&i| net.in_degree(i) == 0 && net.references(i).is_empty())
            .count(),
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Ingest { input, out } => {
            let net = load(&input)?;
            if let Some(path) = out.as_deref() {
                let json = GraphFormat::from_path(path) == GraphFormat::Json;
                emit(Some(path), &graph_bytes(&net, json)?)?;
            }
            emit_json(None, &summary(&net))
        }
        Command::Score { input, scoring, out } => {
            let net = load(&input)?;
            selected_scores(&net, &scoring)?;
            let csv = score_csv(&net, scoring.method.into(), &solver_config(&scoring))?;
            emit(out.as_deref(), csv.as_bytes())
        }
        Command::Classify { input, scoring, classes, out } => {
            let net = load(&input)?;
            let (_, classification) = classify(&net, &scoring, &classes)?;
            emit(out.as_deref(), class_csv(&net, &classification)?.as_bytes())
        }
        Command::Extract { input, scoring, classes, subnet, out } => {
            let net = load(&input)?;
            let (_, classification) = classify(&net, &scoring, &classes)?;
            let sub = match subnet {
                Subnet::Wiz => extract_wiznet(&net, &classification),
                Subnet::Buzz => extract_buzznet(&net, &classification),
            };
            emit(out.as_deref(), &graph_bytes(&sub, true)?)
        }
        Command::Complexity { input, scoring, classes, based_on, out } => {
            let net = load(&input)?;
            let (_, classification) = classify(&net, &scoring, &classes)?;
            let report = match based_on {
                Some(x) => local_wizword_likelihood(&net, &classification, &x)?,
                None => global_wizword_likelihood(&classification),
            };
            emit_json(
                out.as_deref(),
                &serde_json::json!({
                    "likelihood": report,
                    "config": classification.config(),
                }),
            )
        }
        Command::Path { input, scoring, classes, from, to, mode, out } => {
            let net = load(&input)?;
            let (scores, classification) = classify(&net, &scoring, &classes)?;
            let path = match mode {
                PathMode::Shortest => shortest_wizpath(&net, &classification, &from, &to)?,
                PathMode::Widest => widest_wizpath(&net, &scores, &classification, &from, &to)?,
            };
            emit_json(out.as_deref(), &path)
        }
        Command::Hypo { input, scoring, classes, test, top_fraction, histogram, out } => {
            let net = load(&input)?;
            let value = match test {
                HypoTest::Pareto => serde_json::to_value(pareto_share(&net, top_fraction)?)?,
                HypoTest::Powerlaw => {
                    let degrees = net.in_degrees();
                    let hist_path = histogram.unwrap_or_else(|| {
                        out.as_deref()
                            .and_then(Path::parent)
                            .unwrap_or(Path::new(""))
                            .join("degree_histogram.csv")
                    });
                    let mut rows = String::from("value,count\n");
                    for (value, count) in degree_histogram(&degrees) {
                        rows.push_str(&format!("{value},{count}\n"));
                    }
                    emit(Some(&hist_path), rows.as_bytes())?;
                    let samples: Vec<u64> =
                        degrees.iter().filter(|&&d| d > 0).map(|&d| d as u64).collect();
                    serde_json::to_value(fit_power_law(&samples)?)?
                }
                HypoTest::Coverage => {
                    let (_, classification) = classify(&net, &scoring, &classes)?;
                    serde_json::json!({
                        "coverage": wiznet_coverage(&net, &classification),
                        "counts": classification.counts(),
                        "config": classification.config(),
                    })
                }
                HypoTest::Reach => {
                    let (_, classification) = classify(&net, &scoring, &classes)?;
                    serde_json::json!({
                        "reach": reach_comparison(&net, &classification)?,
                        "config": classification.config(),
                    })
                }
            };
            emit_json(out.as_deref(), &value)
        }
        Command::Generate { nodes, m, alpha, beta, seed, weights, out } => {
            let params = GrowthParams {
                n_nodes: nodes,
                m_edges_per_node: m,
                alpha,
                beta,
                seed,
                weight_mode: match weights {
                    Weights::Unit => WeightMode::Unit,
                    Weights::Uniform => WeightMode::UniformRandom,
                },
            };
            let net = generate_wordnet(&params)?;
            emit(Some(&out), &graph_bytes(&net, false)?)?;
            let mut meta = out.clone().into_os_string();
            meta.push(".meta.json");
            emit_json(Some(Path::new(&meta)), &generation_metadata(&params, &net))
        }
        Command::Report { input, scoring, classes, top_fraction, out } => {
            let net = load(&input)?;
            let settings = report::ReportSettings {
                input: input.edges.display().to_string(),
                method: scoring.method.into(),
                solver: solver_config(&scoring),
                classification: classification_config(&scoring, &classes),
                top_fraction,
            };
            let built = report::build_report(&net, &settings)?;
            emit_json(out.as_deref(), &built)
        }
    }
}

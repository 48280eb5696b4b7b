//! `xindex` — reproducible citation-graph analytics pipelines.
//!
//! Subcommands: `gen` (synthetic corpus), `compute` (corpus -> scores),
//! `rank` (scores -> ranked lists), `evaluate` (scores + gold sets ->
//! P@N/AP tables and the top-k listing), `pipeline` (compute + rank +
//! evaluate). Identical inputs always yield byte-identical outputs.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xindex_core::corpus::{build_graph, parse_corpus};
use xindex_core::evaluation::{evaluate, load_gold_standard, GoldStandard, Indicator};
use xindex_core::indicators::compute_all;
use xindex_core::synthgen::{generate, GenParams};

use output::{ConfigEcho, OutputDir};

#[derive(Parser)]
#[command(name = "xindex", version, about = "Citation-graph analytics: x-index, h-index, ACNPP, author ranking, and gold-standard evaluation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute per-author indicator scores from a corpus
    Compute(ComputeArgs),
    /// Rank authors from a scores file
    Rank(RankArgs),
    /// Evaluate rankings against gold-standard prize-winner sets
    Evaluate(EvaluateArgs),
    /// Generate a deterministic synthetic corpus
    Gen(GenArgs),
    /// Compute, rank, and evaluate in one run
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Metadata file (paper_id,title,authors,year)
    #[arg(long)]
    metadata: PathBuf,
    /// Citations file (citing_id,cited_id)
    #[arg(long)]
    citations: PathBuf,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    /// Scores file produced by `compute`
    #[arg(long)]
    scores: PathBuf,
    /// Comma-separated indicators to rank by
    #[arg(long, default_value = "x,h,acnpp,tcn,tpn")]
    indicators: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Scores file produced by `compute`
    #[arg(long)]
    scores: PathBuf,
    /// Gold-standard file (name,category); repeatable
    #[arg(long, required = true)]
    gold: Vec<PathBuf>,
    #[arg(long, default_value = "x,h,acnpp,tcn,tpn")]
    indicators: String,
    /// Comma-separated P@N cut-offs
    #[arg(long, default_value = "10,20,30,40,50,100")]
    at: String,
    /// Length of the side-by-side top author listing
    #[arg(long, default_value_t = 20)]
    top_k: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    papers: usize,
    #[arg(long)]
    authors: usize,
    /// Inclusive range, e.g. `1..3`, or a single count
    #[arg(long, default_value = "1..3")]
    authors_per_paper: String,
    /// Inclusive range, e.g. `0..5`, or a single count
    #[arg(long, default_value = "0..5")]
    citations_per_paper: String,
    /// Preferential-attachment exponent (0 = uniform)
    #[arg(long, default_value_t = 1.0)]
    exponent: f64,
    /// Fraction of authors with boosted citation attractiveness
    #[arg(long, default_value_t = 0.1)]
    elite_fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    metadata: PathBuf,
    #[arg(long)]
    citations: PathBuf,
    #[arg(long, required = true)]
    gold: Vec<PathBuf>,
    #[arg(long, default_value = "x,h,acnpp,tcn,tpn")]
    indicators: String,
    #[arg(long, default_value = "10,20,30,40,50,100")]
    at: String,
    #[arg(long, default_value_t = 20)]
    top_k: usize,
    #[arg(long)]
    out: PathBuf,
}

/// Exit 2: bad configuration or unreadable input. Exit 1: internal
/// invariant violation.
enum CliError {
    Config(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<xindex_core::Error> for CliError {
    fn from(e: xindex_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Rank(args) => cmd_rank(args),
        Cmd::Evaluate(args) => cmd_evaluate(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Pipeline(args) => cmd_pipeline(args),
    }
}

fn require_file(path: &Path, what: &str) -> CliResult<()> {
    if !path.is_file() {
        return Err(CliError::Config(format!(
            "{what} file not found: {}",
            path.display()
        )));
    }
    Ok(())
}

fn parse_indicators(spec: &str) -> CliResult<Vec<Indicator>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Indicator>().map_err(CliError::from))
        .collect()
}

fn parse_n_values(spec: &str) -> CliResult<Vec<u64>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::Config(format!("invalid P@N cut-off: {s}")))
        })
        .collect()
}

/// Parses `lo..hi` (inclusive) or a bare count.
fn parse_range(spec: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Config(format!("invalid range: {spec} (expected `lo..hi` or a count)"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = lo.trim().parse::<usize>().map_err(|_| bad())?;
        let hi = hi.trim().parse::<usize>().map_err(|_| bad())?;
        Ok((lo, hi))
    } else {
        let n = spec.trim().parse::<usize>().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn load_scores_from_corpus(
    metadata: &Path,
    citations: &Path,
) -> CliResult<Vec<(xindex_core::CanonicalAuthor, xindex_core::IndicatorScores)>> {
    let meta = std::fs::File::open(metadata)?;
    let cites = std::fs::File::open(citations)?;
    let (papers, edges, diags) = parse_corpus(meta, cites)?;
    if diags.malformed_metadata_lines > 0 || diags.malformed_citation_lines > 0 {
        eprintln!(
            "warning: skipped {} malformed metadata line(s), {} malformed citation line(s)",
            diags.malformed_metadata_lines, diags.malformed_citation_lines
        );
    }
    let graph = build_graph(papers, &edges)?;
    let d = graph.diagnostics();
    if d.dangling_edges + d.duplicate_edges + d.self_loops > 0 {
        eprintln!(
            "warning: dropped {} dangling, {} duplicate, {} self-loop edge(s)",
            d.dangling_edges, d.duplicate_edges, d.self_loops
        );
    }
    let scores = compute_all(&graph);
    for (author, s) in &scores {
        if s.x > s.h || s.h > s.tpn {
            return Err(CliError::Internal(format!(
                "invariant violation for {author}: x={} h={} tpn={}",
                s.x, s.h, s.tpn
            )));
        }
    }
    Ok(scores)
}

fn load_gold_sets(paths: &[PathBuf]) -> CliResult<Vec<(String, GoldStandard)>> {
    let mut sets = Vec::with_capacity(paths.len());
    for path in paths {
        require_file(path, "gold-standard")?;
        let file = std::fs::File::open(path)?;
        let (gold, malformed) = load_gold_standard(file)?;
        if malformed > 0 {
            eprintln!(
                "warning: skipped {malformed} malformed row(s) in {}",
                path.display()
            );
        }
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "gold".to_string());
        sets.push((name, gold));
    }
    Ok(sets)
}

fn cmd_compute(args: ComputeArgs) -> CliResult<()> {
    require_file(&args.metadata, "metadata")?;
    require_file(&args.citations, "citations")?;
    let echo = ConfigEcho::new("compute")
        .path("metadata", &args.metadata)
        .path("citations", &args.citations);
    let scores = load_scores_from_corpus(&args.metadata, &args.citations)?;
    let out = OutputDir::create(&args.out)?;
    out.write_scores(&echo, &scores)?;
    Ok(())
}

fn cmd_rank(args: RankArgs) -> CliResult<()> {
    require_file(&args.scores, "scores")?;
    let indicators = parse_indicators(&args.indicators)?;
    let echo = ConfigEcho::new("rank")
        .path("scores", &args.scores)
        .value("indicators", &args.indicators);
    let scores = output::read_scores(&args.scores)?;
    let out = OutputDir::create(&args.out)?;
    for ind in indicators {
        let ranked = xindex_core::rank_authors(&scores, ind);
        out.write_ranked(&echo, ind, &ranked)?;
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> CliResult<()> {
    require_file(&args.scores, "scores")?;
    let indicators = parse_indicators(&args.indicators)?;
    let n_values = parse_n_values(&args.at)?;
    let echo = ConfigEcho::new("evaluate")
        .path("scores", &args.scores)
        .paths("gold", &args.gold)
        .value("indicators", &args.indicators)
        .value("at", &args.at)
        .value("top_k", args.top_k);
    let scores = output::read_scores(&args.scores)?;
    let gold_sets = load_gold_sets(&args.gold)?;
    let report = evaluate(&scores, &gold_sets, &indicators, &n_values, args.top_k)?;
    let out = OutputDir::create(&args.out)?;
    out.write_report(&echo, &report)?;
    Ok(())
}

fn cmd_gen(args: GenArgs) -> CliResult<()> {
    let params = GenParams {
        n_papers: args.papers,
        n_authors: args.authors,
        authors_per_paper: parse_range(&args.authors_per_paper)?,
        citations_per_paper: parse_range(&args.citations_per_paper)?,
        preferential_exponent: args.exponent,
        elite_fraction: args.elite_fraction,
        seed: args.seed,
    };
    let echo = ConfigEcho::new("gen")
        .value("papers", args.papers)
        .value("authors", args.authors)
        .value("authors_per_paper", &args.authors_per_paper)
        .value("citations_per_paper", &args.citations_per_paper)
        .value("exponent", args.exponent)
        .value("elite_fraction", args.elite_fraction)
        .value("seed", args.seed);
    let (papers, edges, diags) = generate(&params)?;
    if diags.clamped_citation_lists > 0 {
        eprintln!(
            "note: citation counts clamped for {} paper(s) with too few earlier papers",
            diags.clamped_citation_lists
        );
    }
    let out = OutputDir::create(&args.out)?;
    out.write_corpus(&echo, &papers, &edges)?;
    Ok(())
}

fn cmd_pipeline(args: PipelineArgs) -> CliResult<()> {
    require_file(&args.metadata, "metadata")?;
    require_file(&args.citations, "citations")?;
    for g in &args.gold {
        require_file(g, "gold-standard")?;
    }
    let indicators = parse_indicators(&args.indicators)?;
    let n_values = parse_n_values(&args.at)?;
    let echo = ConfigEcho::new("pipeline")
        .path("metadata", &args.metadata)
        .path("citations", &args.citations)
        .paths("gold", &args.gold)
        .value("indicators", &args.indicators)
        .value("at", &args.at)
        .value("top_k", args.top_k);

    let scores = load_scores_from_corpus(&args.metadata, &args.citations)?;
    let gold_sets = load_gold_sets(&args.gold)?;
    let report = evaluate(&scores, &gold_sets, &indicators, &n_values, args.top_k)?;

    let out = OutputDir::create(&args.out)?;
    out.write_scores(&echo, &scores)?;
    for &ind in &indicators {
        let ranked = xindex_core::rank_authors(&scores, ind);
        out.write_ranked(&echo, ind, &ranked)?;
    }
    out.write_report(&echo, &report)?;
    Ok(())
}

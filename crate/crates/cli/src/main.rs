mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use idsim_core::report::ReportFormat;

use crate::config::ToolConfig;
use crate::error::CliError;

/// Find and classify similar identifier names in Java source trees.
#[derive(Debug, Parser)]
#[command(name = "idsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config file; command-line flags take precedence
    #[arg(long, global = true, env = "IDSIM_CONFIG", value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Extra abbreviations, JSON object {"short": ["long", ...]}
    #[arg(long, global = true, value_name = "FILE")]
    dictionary: Option<PathBuf>,

    /// Extra type hierarchy, JSON {"supertypes": {...}, "collections": [...]}
    #[arg(long, global = true, value_name = "FILE")]
    registry: Option<PathBuf>,

    /// More log output on standard error (-v info, -vv debug)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the identifier inventory of a source tree as JSON Lines
    Scan(ScanArgs),
    /// Pair and classify the identifiers of an inventory
    Classify(ClassifyArgs),
    /// Summarize labels against their inventory
    Report(ReportArgs),
    /// Scan, classify and report in one go
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Root directory of the source tree
    root: PathBuf,

    /// Project label (default: the root directory name)
    #[arg(long)]
    project: Option<String>,

    /// Also scan files that look like unit tests
    #[arg(long)]
    include_tests: bool,

    /// Skip paths matching this glob (relative to the root); repeatable
    #[arg(long, value_name = "GLOB")]
    exclude: Vec<String>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Analyze a random sample sized for 95% confidence and a 5% margin
    #[arg(long)]
    sample: bool,

    /// Seed for --sample
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Inventory JSON Lines file, `-` for standard input
    inventory: String,

    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Labels JSON Lines file
    labels: String,

    /// Inventory JSON Lines file the labels refer to
    inventory: String,

    /// json, csv or markdown
    #[arg(long)]
    format: Option<ReportFormat>,

    #[command(flatten)]
    sample: SampleArgs,

    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// json, csv or markdown
    #[arg(long)]
    format: Option<ReportFormat>,

    #[command(flatten)]
    sample: SampleArgs,

    /// Also write inventory.jsonl and labels.jsonl into this directory
    #[arg(long, value_name = "DIR")]
    keep_intermediate: Option<PathBuf>,

    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    out: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };

    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(path) => ToolConfig::load(path)?,
        None => ToolConfig::default(),
    };
    if cli.threads.is_some() {
        config.threads = cli.threads;
    }
    if cli.dictionary.is_some() {
        config.dictionary = cli.dictionary.clone();
    }
    if cli.registry.is_some() {
        config.registry = cli.registry.clone();
    }
    match &cli.command {
        Command::Scan(a) => apply_source(&mut config, &a.source),
        Command::Analyze(a) => {
            apply_source(&mut config, &a.source);
            apply_report(&mut config, a.format, &a.sample);
        }
        Command::Report(a) => apply_report(&mut config, a.format, &a.sample),
        Command::Classify(_) => {}
    }
    config.validate()?;

    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot start {n} threads: {e}")))?;
    }

    match cli.command {
        Command::Scan(a) => commands::cmd_scan(&config, &a.source.root, a.source.project.as_deref(), &a.out),
        Command::Classify(a) => commands::cmd_classify(&config, &a.inventory, &a.out),
        Command::Report(a) => commands::cmd_report(&config, &a.labels, &a.inventory, &a.out),
        Command::Analyze(a) => commands::cmd_analyze(
            &config,
            &a.source.root,
            a.source.project.as_deref(),
            a.keep_intermediate.as_deref(),
            &a.out,
        ),
    }
}

fn apply_source(config: &mut ToolConfig, source: &SourceArgs) {
    if source.include_tests {
        config.scan.include_tests = true;
    }
    config.scan.exclude.extend(source.exclude.iter().cloned());
}

fn apply_report(config: &mut ToolConfig, format: Option<ReportFormat>, sample: &SampleArgs) {
    if let Some(f) = format {
        config.format = f;
    }
    if sample.sample {
        config.sample = true;
    }
    if let Some(seed) = sample.seed {
        config.seed = seed;
    }
}

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use declare_core::{Backend, Error};

#[derive(Parser)]
#[command(name = "declare", version, about = "Check event logs against Declare constraints")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conformance check of a log against a model.
    Check(CheckArgs),
    /// Find activity bindings whose support meets a threshold.
    Query(QueryArgs),
    /// Print the minimal automaton of a template or formula.
    Compile(CompileArgs),
    /// Compare the three backends on enumerated and random traces.
    Validate(ValidateArgs),
    /// Sample a labeled synthetic log.
    Generate(GenerateArgs),
    /// Time conformance checking per constraint and backend.
    Bench(BenchArgs),
    /// Convert a log between XES, fact and CSV formats.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    log: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value = "direct", value_parser = parse_backend)]
    backend: Backend,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    log: PathBuf,
    /// Template kind; unbound arguments become ?x (arg_0) and ?y (arg_1).
    #[arg(long, conflicts_with = "query_file", required_unless_present = "query_file")]
    template: Option<String>,
    /// `arg_0=A` or `arg_1=B`.
    #[arg(long)]
    bind: Vec<String>,
    /// Fact file with constraint/bind/var_bind/domain facts.
    #[arg(long)]
    query_file: Option<PathBuf>,
    /// Threshold in (0, 1], as a decimal or `p/q`.
    #[arg(long)]
    support: String,
    #[arg(long, default_value = "direct", value_parser = parse_backend)]
    backend: Backend,
    /// Evaluate every trace even when a binding can no longer qualify.
    #[arg(long)]
    no_early_abort: bool,
    /// Write answers as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print answers as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompileArgs {
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    template: Option<String>,
    /// LTLf formula, e.g. `G(a -> F b)`.
    #[arg(long)]
    formula: Option<String>,
    #[arg(long, conflicts_with = "facts_json")]
    dot: bool,
    #[arg(long)]
    facts_json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 10)]
    max_len: usize,
    /// Random traces on top of the exhaustive run.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Maximum length of random traces.
    #[arg(long, default_value_t = 20)]
    sample_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restrict to these template kinds (comma separated).
    #[arg(long, value_delimiter = ',')]
    templates: Vec<String>,
    /// Write disagreements as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    template: String,
    /// `arg_0=A` or `arg_1=B` (defaults a_0 and a_1).
    #[arg(long)]
    bind: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long)]
    len: usize,
    /// Alphabet size k.
    #[arg(long, default_value_t = 15)]
    alphabet: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Log destination; format from the extension.
    #[arg(long)]
    out: PathBuf,
    /// Label manifest (default: `<out>.labels.csv`).
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    log: PathBuf,
    /// Model whose constraints are timed one by one (default: every
    /// template over a_0, a_1).
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "direct,tree,dfa", value_parser = parse_backend)]
    backends: Vec<Backend>,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status for a failed command.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::FormulaSyntax { .. }
        | Error::Xes(_)
        | Error::Csv(_)
        | Error::Activity(_)
        | Error::Json(_)
        | Error::DuplicateTraceId(_)
        | Error::DuplicateConstraintId(_) => 2,
        Error::UnknownTemplate(_)
        | Error::Threshold(_)
        | Error::EmptyDomain(_)
        | Error::Query(_)
        | Error::EmptyLog
        | Error::Io(_)
        | Error::Generator(_)
        | Error::EmptyLanguage { .. }
        | Error::Unrepresentable(_)
        | Error::StateBudget(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let result = match cli.command {
        Command::Check(a) => commands::check(a),
        Command::Query(a) => commands::query(a),
        Command::Compile(a) => commands::compile(a),
        Command::Validate(a) => commands::validate(a),
        Command::Generate(a) => commands::generate(a),
        Command::Bench(a) => commands::bench(a),
        Command::Convert(a) => commands::convert(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

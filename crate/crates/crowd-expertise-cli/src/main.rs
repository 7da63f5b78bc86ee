//! `crowd-expertise`: score crowd workers against golden reference data,
//! report campaign statistics, and generate synthetic campaigns.
//!
//! Exit codes: 0 on success, 1 on validation failure, 2 on I/O failure.
//! All diagnostics go to stderr.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use crowd_expertise::campaign::{
    build_report, parse_golden, parse_responses, responses_to_csv, score_campaign,
    synthesize_campaign, CampaignError, NoiseModel, ReportConfig, DEFAULT_BELIEF_THRESHOLD,
    DEFAULT_FAGIN_THRESHOLD,
};
use crowd_expertise::{ScoreDocument, Thresholds, DEFAULT_TIE_PENALTY};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "CROWD_EXPERTISE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "crowd-expertise",
    version,
    about = "Expertise scoring for crowdsourcing campaigns with golden reference data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Suppress warnings.
    #[arg(short, long, global = true)]
    quiet: bool,

    /// Print progress details to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Compute both expertise degrees for every worker.
    Score(ScoreArgs),
    /// Produce the full campaign report (degrees, histograms, means).
    Report(ReportArgs),
    /// Generate a synthetic responses CSV.
    Synth(SynthArgs),
}

#[derive(Args)]
struct ScoringOptions {
    /// Golden reference CSV (header: sequence_id,score).
    #[arg(long)]
    golden: PathBuf,

    /// Responses CSV (header: worker_id,panel,hit_id,sequence_id,score).
    #[arg(long)]
    responses: PathBuf,

    /// Tie penalty for the rank distance, in [0.5, 1].
    #[arg(long, default_value_t = DEFAULT_TIE_PENALTY)]
    penalty: f64,

    /// Belief-measure selection threshold.
    #[arg(long, default_value_t = DEFAULT_BELIEF_THRESHOLD)]
    belief_threshold: f64,

    /// Rank-measure selection threshold.
    #[arg(long, default_value_t = DEFAULT_FAGIN_THRESHOLD)]
    fagin_threshold: f64,

    /// Seed to echo into the output config (provenance only).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    scoring: ScoringOptions,

    /// Output JSON path; defaults to scores.json in $CROWD_EXPERTISE_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    scoring: ScoringOptions,

    /// Histogram bin width; must divide [0, 1] evenly.
    #[arg(long, default_value_t = 0.1)]
    bin_width: f64,

    /// Output JSON path; defaults to report.json in $CROWD_EXPERTISE_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write histograms.csv and sequence_means.csv into this directory.
    #[arg(long)]
    csv_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of workers to generate.
    #[arg(long)]
    workers: usize,

    /// Noise model: perfect, gaussian:<sigma>, uniform-random, all-ties or
    /// adversarial-reversal.
    #[arg(long, value_parser = parse_noise)]
    noise: NoiseModel,

    /// RNG seed; the same seed reproduces the same campaign byte-for-byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output CSV path; defaults to responses.csv in $CROWD_EXPERTISE_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_noise(raw: &str) -> Result<NoiseModel, String> {
    raw.parse().map_err(|e: CampaignError| e.to_string())
}

enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Io(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CampaignError> for CliError {
    fn from(err: CampaignError) -> Self {
        match err {
            CampaignError::Io { .. } => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn resolve_out(out: Option<PathBuf>, default_name: &str) -> PathBuf {
    out.unwrap_or_else(|| {
        let dir = std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from);
        dir.join(default_name)
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

struct Console {
    quiet: bool,
    verbose: u8,
}

impl Console {
    fn warn(&self, message: &str) {
        if !self.quiet {
            eprintln!("warning: {message}");
        }
    }

    fn info(&self, message: &str) {
        if self.verbose > 0 {
            eprintln!("{message}");
        }
    }
}

fn score_inputs(
    options: &ScoringOptions,
    console: &Console,
) -> Result<
    (
        Vec<crowd_expertise::WorkerRecord>,
        Vec<crowd_expertise::ExpertiseScores>,
    ),
    CliError,
> {
    let golden = parse_golden(&options.golden)?;
    let parsed = parse_responses(&options.responses)?;
    for warning in &parsed.warnings {
        console.warn(warning);
    }
    let thresholds = Thresholds::new(options.belief_threshold, options.fagin_threshold)?;
    let scores = score_campaign(&golden, &parsed.workers, options.penalty, thresholds)?;
    console.info(&format!(
        "scored {} workers ({} fused experts)",
        scores.len(),
        scores.iter().filter(|s| s.is_expert_fused).count()
    ));
    Ok((parsed.workers, scores))
}

fn report_config(options: &ScoringOptions, bin_width: f64) -> ReportConfig {
    ReportConfig {
        penalty: options.penalty,
        belief_threshold: options.belief_threshold,
        fagin_threshold: options.fagin_threshold,
        bin_width,
        seed: options.seed,
    }
}

fn run_score(args: ScoreArgs, console: &Console) -> Result<(), CliError> {
    let (_, scores) = score_inputs(&args.scoring, console)?;
    let document = ScoreDocument::new(scores, report_config(&args.scoring, 0.1));
    let out = resolve_out(args.out, "scores.json");
    write_file(&out, &document.to_json_pretty())?;
    console.info(&format!("wrote {}", out.display()));
    Ok(())
}

fn run_report(args: ReportArgs, console: &Console) -> Result<(), CliError> {
    let (workers, scores) = score_inputs(&args.scoring, console)?;
    let config = report_config(&args.scoring, args.bin_width);
    let report = build_report(&scores, &workers, config)?;
    let out = resolve_out(args.out, "report.json");
    write_file(&out, &report.to_json_pretty())?;
    console.info(&format!("wrote {}", out.display()));
    if let Some(dir) = args.csv_dir {
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        write_file(&dir.join("histograms.csv"), &report.histograms_csv())?;
        write_file(
            &dir.join("sequence_means.csv"),
            &report.sequence_means_csv(),
        )?;
        console.info(&format!("wrote CSV exports to {}", dir.display()));
    }
    Ok(())
}

fn run_synth(args: SynthArgs, console: &Console) -> Result<(), CliError> {
    let workers = synthesize_campaign(args.workers, args.noise, args.seed)?;
    let out = resolve_out(args.out, "responses.csv");
    write_file(&out, &responses_to_csv(&workers))?;
    console.info(&format!(
        "wrote {} workers to {}",
        workers.len(),
        out.display()
    ));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let console = Console {
        quiet: cli.quiet,
        verbose: cli.verbose,
    };
    let result = match cli.command {
        Command::Score(args) => run_score(args, &console),
        Command::Report(args) => run_report(args, &console),
        Command::Synth(args) => run_synth(args, &console),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand};
use engage_core::data::{AffectDimension, AnnotationScale};
use engage_core::eval::{AblationMode, Aggregation, Dependence};
use engage_core::fusion::Task;

use crate::commands;
use crate::error::Error;

/// Environment variable capping worker threads for `extract` and `ablate`.
pub const THREADS_ENV: &str = "ENGAGE_GAN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "engage-gan",
    version,
    about = "Engagement and affect regression from speech, text and video features"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute cognitive and affective features for every clip in a manifest.
    Extract(ExtractArgs),
    /// Partition extracted samples into labeled/unlabeled/val/test sets.
    Split(SplitArgs),
    /// Train the semi-supervised regressor.
    Train(TrainArgs),
    /// Score samples with a checkpoint.
    Predict(PredictArgs),
    /// RMSE, session aggregation and correlation with external ratings.
    Evaluate(EvaluateArgs),
    /// Train with affective-only, cognitive-only and full features.
    Ablate(AblateArgs),
    /// Fill missing word timestamps between anchored words.
    AlignText(AlignTextArgs),
    /// Write a synthetic dataset.
    Synth(SynthArgs),
    /// Average annotator traces and derive per-clip labels.
    Labels(LabelsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Extract(_) => "extract",
            Command::Split(_) => "split",
            Command::Train(_) => "train",
            Command::Predict(_) => "predict",
            Command::Evaluate(_) => "evaluate",
            Command::Ablate(_) => "ablate",
            Command::AlignText(_) => "align-text",
            Command::Synth(_) => "synth",
            Command::Labels(_) => "labels",
        }
    }
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// JSON-lines clip manifest; WAV paths resolve against its directory.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_task)]
    pub task: Option<Task>,
    /// Also write per-frame pitch and energy tables.
    #[arg(long)]
    pub dump_frames: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Samples produced by `extract`.
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Train, val and test fractions.
    #[arg(long, value_delimiter = ',', default_values_t = [0.7, 0.1, 0.2])]
    pub ratios: Vec<f64>,
    /// Fraction of the train set that keeps its labels.
    #[arg(long, default_value_t = 1.0)]
    pub labeled_fraction: f64,
    #[arg(long)]
    pub speaker_exclusive: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Directory holding labeled.csv, unlabeled.csv and optionally val.csv.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = parse_task)]
    pub task: Option<Task>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_parser = parse_mode, default_value = "AC")]
    pub mode: AblationMode,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, value_parser = parse_aggregation, default_value = "median")]
    pub aggregate: Aggregation,
    /// `session_id,score` ratings to correlate with session scores.
    #[arg(long)]
    pub external: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Repeatable; all three modes when omitted.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Vec<AblationMode>,
    /// Runs per mode, seeded `seed`, `seed + 1`, ...
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AlignTextArgs {
    /// `word,bin_s` table; empty bins are filled.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n_labeled: usize,
    #[arg(long, default_value_t = 2000)]
    pub n_unlabeled: usize,
    #[arg(long, default_value_t = 500)]
    pub n_val: usize,
    #[arg(long, default_value_t = 0.05)]
    pub noise_sd: f64,
    /// Feature width; the fused layout width by default.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_parser = parse_dependence, default_value = "all")]
    pub dependence: Dependence,
    #[arg(long, value_parser = parse_task, default_value = "engagement")]
    pub task: Task,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LabelsArgs {
    /// One `t_s,value` trace per annotator; repeatable.
    #[arg(long = "annotation", required = true)]
    pub annotations: Vec<PathBuf>,
    #[arg(long, value_parser = parse_dimension)]
    pub dimension: AffectDimension,
    #[arg(long, value_parser = parse_scale, default_value = "raw")]
    pub scale: AnnotationScale,
    #[arg(long, default_value_t = engage_core::data::DEFAULT_CLIP_S)]
    pub clip_len: f64,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_task(s: &str) -> Result<Task, String> {
    match s {
        "engagement" => Ok(Task::Engagement),
        "valence_arousal" => Ok(Task::ValenceArousal),
        _ => Err("expected engagement or valence_arousal".into()),
    }
}

fn parse_mode(s: &str) -> Result<AblationMode, String> {
    AblationMode::parse(s).map_err(|_| "expected A, C or AC".into())
}

fn parse_aggregation(s: &str) -> Result<Aggregation, String> {
    match s {
        "median" => Ok(Aggregation::Median),
        "mean" => Ok(Aggregation::Mean),
        _ => Err("expected median or mean".into()),
    }
}

fn parse_dependence(s: &str) -> Result<Dependence, String> {
    match s {
        "all" => Ok(Dependence::All),
        "cognitive_only" => Ok(Dependence::CognitiveOnly),
        _ => Err("expected all or cognitive_only".into()),
    }
}

fn parse_dimension(s: &str) -> Result<AffectDimension, String> {
    match s {
        "valence" => Ok(AffectDimension::Valence),
        "arousal" => Ok(AffectDimension::Arousal),
        _ => Err("expected valence or arousal".into()),
    }
}

fn parse_scale(s: &str) -> Result<AnnotationScale, String> {
    match s {
        "raw" => Ok(AnnotationScale::Raw),
        "unit" => Ok(AnnotationScale::Unit),
        _ => Err("expected raw or unit".into()),
    }
}

/// Runs one invocation and returns its exit status: 0 on success, 1 for
/// usage errors, 2 for bad input data, 3 for failures while running.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let name = cli.command.name();
    match commands::run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Usage(_) = e {
                let mut cmd = Cli::command();
                if let Some(sub) = cmd.find_subcommand_mut(name) {
                    eprintln!("\n{}", sub.render_usage());
                }
            }
            e.exit_code()
        }
    }
}

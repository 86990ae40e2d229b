//! Command-line surface: `labanimate convert|cluster|select|compile|serve`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "labanimate",
    version,
    about = "Gesture toolkit: skeleton clips to scores, score libraries, utterance-driven selection, and robot joint trajectories"
)]
pub struct Cli {
    /// JSON file supplying defaults for shared options.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a recorded skeleton clip into a score.
    Convert(ConvertArgs),
    /// Cluster a directory of scores into a library skeleton.
    Cluster(ClusterArgs),
    /// Select one gesture for an utterance.
    Select(SelectArgs),
    /// Compile a score into a joint trajectory for a robot profile.
    Compile(CompileArgs),
    /// Run the stateless gesture HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Skeleton clip to convert (.json or .csv).
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,

    /// Write the score here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Name recorded in the score metadata (defaults to the clip file stem).
    #[arg(long)]
    pub name: Option<String>,

    /// Direction codebook JSON (defaults to the built-in 26-direction set).
    #[arg(long, value_name = "FILE")]
    pub codebook: Option<PathBuf>,

    /// Centered moving-average window in frames (odd).
    #[arg(long, value_name = "FRAMES")]
    pub smoothing_window: Option<usize>,

    /// Aggregate angular-speed threshold in rad/s for key-frame minima.
    #[arg(long, value_name = "RAD_PER_S")]
    pub speed_threshold: Option<f64>,

    /// Minimum spacing between key frames in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub min_gap: Option<f64>,

    /// Append a staff-ordered view (rows bottom to top) as comment lines.
    #[arg(long)]
    pub render: bool,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Directory of score files to cluster.
    #[arg(value_name = "DIR")]
    pub scores: PathBuf,

    /// Number of clusters.
    #[arg(long, default_value_t = 32)]
    pub k: usize,

    /// Library-skeleton file to write (concepts left blank for naming).
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,

    /// Direction codebook JSON naming the skeleton's codebook.
    #[arg(long, value_name = "FILE")]
    pub codebook: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Utterance to select a gesture for.
    #[arg(long)]
    pub text: String,

    /// Gesture library JSON (defaults to the built-in seed library).
    #[arg(long, value_name = "FILE")]
    pub library: Option<PathBuf>,

    /// Word-embedding table: one `word c1 c2 ...` line per word.
    #[arg(long, value_name = "FILE")]
    pub embeddings: Option<PathBuf>,

    /// Seed for the selection draws.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Print the branch, draws, and match strengths to standard error.
    #[arg(long)]
    pub trace: bool,

    /// Append a staff-ordered view (rows bottom to top) as comment lines.
    #[arg(long)]
    pub render: bool,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Score file to compile.
    #[arg(long, value_name = "FILE")]
    pub score: PathBuf,

    /// Robot profile: a built-in name or a profile JSON path.
    #[arg(long, value_name = "NAME_OR_FILE")]
    pub profile: Option<String>,

    /// Beat length in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub seconds_per_beat: Option<f64>,

    /// Fail on clamps beyond tolerance or joint-speed violations instead
    /// of clamping and stretching.
    #[arg(long)]
    pub strict: bool,

    /// Write the trajectory here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Direction codebook JSON (defaults to the built-in 26-direction set).
    #[arg(long, value_name = "FILE")]
    pub codebook: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Address to listen on, e.g. 127.0.0.1:8080.
    #[arg(long, value_name = "ADDR")]
    pub listen: Option<String>,

    /// Gesture library JSON (defaults to the built-in seed library).
    #[arg(long, value_name = "FILE")]
    pub library: Option<PathBuf>,

    /// Word-embedding table served to the selection engine.
    #[arg(long, value_name = "FILE")]
    pub embeddings: Option<PathBuf>,

    /// Direction codebook JSON (defaults to the built-in 26-direction set).
    #[arg(long, value_name = "FILE")]
    pub codebook: Option<PathBuf>,

    /// Extra robot profile to serve: built-in name or profile JSON path.
    /// Built-in profiles are always available.
    #[arg(long, value_name = "NAME_OR_FILE")]
    pub profile: Option<String>,

    /// Server seed mixed into requests that do not carry their own.
    #[arg(long)]
    pub seed: Option<u64>,
}

//! `labanimate`: command-line front end and HTTP service for the gesture
//! toolkit. The subcommands mirror the pipeline: `convert` turns skeleton
//! clips into scores, `cluster` groups scores into a library skeleton,
//! `select` picks a gesture for an utterance, `compile` turns a score
//! into a robot joint trajectory, and `serve` exposes selection and
//! compilation over HTTP.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod service;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::CliError;

pub fn run(cli: &args::Cli) -> Result<(), CliError> {
    let config = config::FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        args::Command::Convert(convert) => commands::run_convert(convert, &config),
        args::Command::Cluster(cluster) => commands::run_cluster(cluster, &config),
        args::Command::Select(select) => commands::run_select(select, &config),
        args::Command::Compile(compile) => commands::run_compile(compile, &config),
        args::Command::Serve(serve) => service::run_serve(serve, &config),
    }
}

/// Full process entry: parse arguments, dispatch, and map errors to the
/// exit-code contract (0 ok, 1 usage, 2 validation, 3 runtime).
pub fn main_entry<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            error.print().ok();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(error) => {
            eprintln!("error: {error}");
            error.exit_code()
        }
    }
}

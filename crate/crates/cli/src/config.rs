//! Shared option resolution: command-line flags override `LABANIMATE_*`
//! environment variables, which override the `--config` JSON file, which
//! overrides built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use labanimate_core::{
    load_library, seed_library, DirectionCodebook, EmbeddingTable, EngineConfig, GestureLibrary,
    RampParams, RobotProfile,
};

use crate::error::CliError;

pub const ENV_LISTEN: &str = "LABANIMATE_LISTEN";
pub const ENV_LIBRARY: &str = "LABANIMATE_LIBRARY";
pub const ENV_EMBEDDINGS: &str = "LABANIMATE_EMBEDDINGS";
pub const ENV_CODEBOOK: &str = "LABANIMATE_CODEBOOK";
pub const ENV_PROFILE: &str = "LABANIMATE_PROFILE";

pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

/// The `--config` file. Every field is optional; missing fields fall back
/// to environment variables and built-in defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub listen: Option<String>,
    pub library: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub codebook: Option<PathBuf>,
    /// Built-in profile name or a profile JSON path.
    pub profile: Option<String>,
    pub seed: Option<u64>,
    pub match_threshold: Option<f64>,
    pub ramp_lower: Option<f64>,
    pub ramp_upper: Option<f64>,
    pub seconds_per_beat: Option<f64>,
}

impl FileConfig {
    /// Loads the config file, or returns the empty config when no path is
    /// given. An unreadable or malformed config file is a usage error: the
    /// invocation itself asked for something impossible.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|error| {
            CliError::usage(format!("cannot read config {}: {error}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|error| {
            CliError::usage(format!("bad config {}: {error}", path.display()))
        })
    }

    /// Builds the engine configuration from file settings plus an optional
    /// seed override from a flag.
    pub fn engine_config(&self, seed_flag: Option<u64>) -> Result<EngineConfig, CliError> {
        let mut engine = EngineConfig::default();
        if let Some(threshold) = self.match_threshold {
            engine.match_threshold = threshold;
        }
        let lower = self.ramp_lower.unwrap_or_else(|| engine.ramp.lower());
        let upper = self.ramp_upper.unwrap_or_else(|| engine.ramp.upper());
        engine.ramp = RampParams::new(lower, upper).map_err(CliError::from)?;
        if let Some(seed) = seed_flag.or(self.seed) {
            engine.seed = seed;
        }
        engine.validate().map_err(CliError::validation)?;
        Ok(engine)
    }
}

fn env_var(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|value| !value.is_empty())
}

fn env_path(name: &str) -> Option<PathBuf> {
    env_var(name).map(PathBuf::from)
}

/// flag > env > config file > default.
pub fn resolve_listen(flag: Option<&str>, config: &FileConfig) -> String {
    flag.map(str::to_string)
        .or_else(|| env_var(ENV_LISTEN))
        .or_else(|| config.listen.clone())
        .unwrap_or_else(|| DEFAULT_LISTEN.to_string())
}

pub fn resolve_library_path(flag: Option<&Path>, config: &FileConfig) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env_path(ENV_LIBRARY))
        .or_else(|| config.library.clone())
}

pub fn resolve_embeddings_path(flag: Option<&Path>, config: &FileConfig) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env_path(ENV_EMBEDDINGS))
        .or_else(|| config.embeddings.clone())
}

pub fn resolve_codebook_path(flag: Option<&Path>, config: &FileConfig) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env_path(ENV_CODEBOOK))
        .or_else(|| config.codebook.clone())
}

pub fn resolve_profile_name(flag: Option<&str>, config: &FileConfig) -> String {
    flag.map(str::to_string)
        .or_else(|| env_var(ENV_PROFILE))
        .or_else(|| config.profile.clone())
        .unwrap_or_else(|| "humanoid-full".to_string())
}

/// Loads the gesture library named by the resolved path, or the built-in
/// seed library when none is configured.
pub fn load_library_source(path: Option<&Path>) -> Result<GestureLibrary, CliError> {
    match path {
        Some(path) => load_library(path).map_err(CliError::from),
        None => Ok(seed_library()),
    }
}

/// Loads the direction codebook, defaulting to the built-in 26-direction
/// set.
pub fn load_codebook_source(path: Option<&Path>) -> Result<DirectionCodebook, CliError> {
    match path {
        Some(path) => DirectionCodebook::load(path).map_err(CliError::from),
        None => Ok(DirectionCodebook::default_labanotation()),
    }
}

/// Loads the word-embedding table, defaulting to the empty table (every
/// lookup then falls back to the exact-match rule).
pub fn load_embeddings_source(path: Option<&Path>) -> Result<EmbeddingTable, CliError> {
    match path {
        Some(path) => EmbeddingTable::load(path).map_err(CliError::from),
        None => Ok(EmbeddingTable::empty()),
    }
}

/// Resolves a profile given as either a built-in name or a JSON file path.
pub fn load_profile_source(name_or_path: &str) -> Result<RobotProfile, CliError> {
    if let Some(profile) = RobotProfile::builtin(name_or_path) {
        return Ok(profile);
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        return RobotProfile::load(path).map_err(CliError::from);
    }
    Err(CliError::validation(format!(
        "unknown profile `{name_or_path}`: not a built-in ({}) and not a readable file",
        RobotProfile::builtin_names().join(", ")
    )))
}

//! The stateless gesture HTTP service.
//!
//! All state is loaded once at startup and shared immutably; the only
//! mutable cell is a request counter used to derive seeds for requests
//! that do not carry one. Responses to identical seeded requests are
//! byte-identical, including under concurrency.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use labanimate_core::{
    compile, parse_score, select_gesture, serialize_score, trajectory_to_json, CompileError,
    DirectionCodebook, EmbeddingTable, EngineConfig, GestureLibrary, ParseError, RobotProfile,
    SelectionTrace, TimingParams, DEFAULT_SECONDS_PER_BEAT,
};

use crate::args::ServeArgs;
use crate::config::{
    self, load_codebook_source, load_embeddings_source, load_library_source, load_profile_source,
    FileConfig,
};
use crate::error::CliError;

pub struct ServiceState {
    library: GestureLibrary,
    embeddings: EmbeddingTable,
    codebook: DirectionCodebook,
    engine: EngineConfig,
    profiles: BTreeMap<String, RobotProfile>,
    counter: AtomicU64,
}

impl ServiceState {
    /// Validates and assembles the service state. The built-in profiles
    /// are always served; extras override by name.
    pub fn new(
        library: GestureLibrary,
        embeddings: EmbeddingTable,
        codebook: DirectionCodebook,
        engine: EngineConfig,
        extra_profiles: Vec<RobotProfile>,
    ) -> Result<Self, CliError> {
        engine.validate().map_err(CliError::validation)?;
        if library.codebook_name() != codebook.name() {
            return Err(CliError::validation(format!(
                "library references codebook `{}` but the service loaded `{}`",
                library.codebook_name(),
                codebook.name()
            )));
        }
        let mut profiles = BTreeMap::new();
        for name in RobotProfile::builtin_names() {
            let profile = RobotProfile::builtin(name).expect("built-in profile exists");
            profiles.insert(profile.name.clone(), profile);
        }
        for profile in extra_profiles {
            profiles.insert(profile.name.clone(), profile);
        }
        Ok(ServiceState {
            library,
            embeddings,
            codebook,
            engine,
            profiles,
            counter: AtomicU64::new(0),
        })
    }

    fn next_seed(&self) -> u64 {
        self.engine
            .seed
            .wrapping_add(self.counter.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Deserialize)]
pub struct GestureRequest {
    pub text: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub trace: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GestureResponse {
    pub text: String,
    pub concept: String,
    pub category: String,
    pub branch: String,
    /// Canonical score text; parses back into the selected score.
    pub score: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<SelectionTrace>,
}

#[derive(Debug, Deserialize)]
pub struct CompileRequest {
    pub score: String,
    pub profile: String,
    #[serde(default)]
    pub seconds_per_beat: Option<f64>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LibrarySummary {
    pub codebook: String,
    pub count: usize,
    pub pairs: Vec<PairSummary>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairSummary {
    pub concept: String,
    pub category: String,
    pub words: Vec<String>,
    pub variants: usize,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
    kind: &'static str,
}

pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn profile_not_found(name: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            kind: "profile-not-found",
            message: format!("unknown profile `{name}`"),
        }
    }

    fn score_parse(error: ParseError) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            kind: "score-parse",
            message: error.to_string(),
        }
    }

    fn compile(error: CompileError) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            kind: "compile",
            message: error.to_string(),
        }
    }

    fn internal(error: impl std::fmt::Display) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            kind: "internal",
            message: error.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(ErrorBody {
                error: self.message,
                kind: self.kind,
            }),
        )
            .into_response()
    }
}

async fn gesture(
    State(state): State<Arc<ServiceState>>,
    Json(request): Json<GestureRequest>,
) -> Result<Json<GestureResponse>, ApiError> {
    let seed = request.seed.unwrap_or_else(|| state.next_seed());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = select_gesture(
        &request.text,
        &state.library,
        &state.embeddings,
        &state.engine,
        &mut rng,
    )
    .map_err(ApiError::internal)?;

    let mut trace = result.trace;
    trace.seed = Some(seed);
    Ok(Json(GestureResponse {
        text: request.text,
        concept: result.pair.concept.clone(),
        category: result.pair.category.as_str().to_string(),
        branch: result.branch.as_str().to_string(),
        score: serialize_score(&result.pair.score),
        trace: request.trace.then_some(trace),
    }))
}

async fn compile_score(
    State(state): State<Arc<ServiceState>>,
    Json(request): Json<CompileRequest>,
) -> Result<Response, ApiError> {
    let profile = state
        .profiles
        .get(&request.profile)
        .ok_or_else(|| ApiError::profile_not_found(&request.profile))?;
    let doc = parse_score(&request.score).map_err(ApiError::score_parse)?;
    let timing = TimingParams {
        seconds_per_beat: request.seconds_per_beat.unwrap_or(DEFAULT_SECONDS_PER_BEAT),
        strict: request.strict,
    };
    let output =
        compile(&doc.score, profile, &timing, &state.codebook).map_err(ApiError::compile)?;

    // Reuse the trajectory writer so service and CLI output are
    // byte-identical for identical inputs.
    let body = trajectory_to_json(&profile.name, &output.trajectory);
    Ok((
        StatusCode::OK,
        [(header::CONTENT_TYPE, "application/json")],
        body,
    )
        .into_response())
}

async fn library_summary(State(state): State<Arc<ServiceState>>) -> Json<LibrarySummary> {
    Json(LibrarySummary {
        codebook: state.library.codebook_name().to_string(),
        count: state.library.len(),
        pairs: state
            .library
            .pairs()
            .iter()
            .map(|pair| PairSummary {
                concept: pair.concept.clone(),
                category: pair.category.as_str().to_string(),
                words: pair.words.clone(),
                variants: pair.variants.len(),
            })
            .collect(),
    })
}

#[derive(Debug, Serialize)]
struct HealthBody {
    status: &'static str,
}

async fn health() -> Json<HealthBody> {
    Json(HealthBody { status: "ok" })
}

pub fn router(state: Arc<ServiceState>) -> Router {
    Router::new()
        .route("/v1/gesture", post(gesture))
        .route("/v1/compile", post(compile_score))
        .route("/v1/library", get(library_summary))
        .route("/v1/health", get(health))
        .with_state(state)
}

/// Builds the service state from resolved options. Any failure here is a
/// startup validation failure and aborts with a diagnostic.
pub fn build_state(args: &ServeArgs, config: &FileConfig) -> Result<ServiceState, CliError> {
    let library = load_library_source(
        config::resolve_library_path(args.library.as_deref(), config).as_deref(),
    )?;
    let embeddings = load_embeddings_source(
        config::resolve_embeddings_path(args.embeddings.as_deref(), config).as_deref(),
    )?;
    let codebook = load_codebook_source(
        config::resolve_codebook_path(args.codebook.as_deref(), config).as_deref(),
    )?;
    let engine = config.engine_config(args.seed)?;
    let profile =
        load_profile_source(&config::resolve_profile_name(args.profile.as_deref(), config))?;
    ServiceState::new(library, embeddings, codebook, engine, vec![profile])
}

pub fn run_serve(args: &ServeArgs, config: &FileConfig) -> Result<(), CliError> {
    let listen = config::resolve_listen(args.listen.as_deref(), config);
    let state = Arc::new(build_state(args, config)?);

    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(CliError::runtime)?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&listen).await.map_err(|error| {
            CliError::runtime(format!("cannot bind {listen}: {error}"))
        })?;
        let local = listener.local_addr().map_err(CliError::runtime)?;
        eprintln!("labanimate service listening on http://{local}");
        axum::serve(listener, router(state))
            .with_graceful_shutdown(async {
                tokio::signal::ctrl_c().await.ok();
            })
            .await
            .map_err(CliError::runtime)
    })
}

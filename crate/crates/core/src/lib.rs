//! labanimate-core: a hardware-independent gesture toolkit for
//! conversational humanoid robots.
//!
//! Gestures are stored as Labanotation-style scores: per beat, one direction
//! symbol for each of the left/right lower and upper arms and the head.
//! The crate covers the full pipeline around that representation:
//!
//! - [`symbol`], [`codebook`], [`score`]: the 27-symbol direction alphabet,
//!   quantization on the unit sphere, and the score pseudometric.
//! - [`io`]: the text score format and the JSON library format, with a
//!   canonical serializer so round-trips are byte-exact.
//! - [`motion`]: skeleton clips to scores via angular-speed keyframing.
//! - [`library`]: gesture-concept pairs, agglomerative clustering of score
//!   collections, and perturbation-based variants.
//! - [`semantics`]: tokenization, word embeddings, and match strength.
//! - [`engine`]: the deictic / question / semantic / beat selection cascade.
//! - [`compiler`]: scores to joint-angle trajectories for a robot profile,
//!   with limit clamping and velocity-aware retiming.
//!
//! Everything upstream of [`compiler`] is robot-agnostic: retargeting a new
//! robot means writing a new profile, not touching scores or the library.

pub mod codebook;
pub mod compiler;
pub mod engine;
pub mod io;
pub mod library;
pub mod motion;
pub mod score;
pub mod seed;
pub mod semantics;
pub mod symbol;

pub use codebook::{CodebookEntry, CodebookError, DirectionCodebook};
pub use compiler::{
    compile, pose_to_angles, trajectory_from_json, trajectory_to_json, validate_trajectory,
    CompileDiagnostics, CompileError, CompileOutput, JointLimit, JointTrajectory, ProfileError,
    RobotProfile, TimingParams, TrajectoryKeyframe, ValidationReport,
    DEFAULT_SECONDS_PER_BEAT, STRICT_CLAMP_TOLERANCE,
};
pub use engine::{
    pick_variant, select_gesture, Branch, EngineConfig, EngineError, SelectionResult,
    SelectionTrace,
};
pub use io::{
    load_library, load_score, parse_library, parse_score, serialize_score, write_library,
    write_library_skeleton, ParseError, ScoreDocument, LIBRARY_FORMAT_VERSION,
};
pub use library::{
    cluster_scores, distance_matrix, vary_score, ClusterError, ClusterResult, GestureCategory,
    GestureConceptPair, GestureLibrary, LibraryError, DEICTIC_CONCEPTS,
};
pub use motion::{
    angular_speed_series, clip_to_score, detect_keyframes, load_clip, KeyframeParams, MotionClip,
    MotionError, SkeletonFrame, SpeedSeries,
};
pub use score::{
    score_distance, BodyColumn, LabanScore, ScoreDistanceError, ScoreError, ScoreRow,
    DEFAULT_COMPARE_ROWS,
};
pub use seed::seed_library;
pub use semantics::{
    match_strength, ramp, tokenize, word_similarity, word_to_group, EmbeddingTable, RampParams,
    SemanticsError, Sentence,
};
pub use symbol::{Azimuth, DirectionSymbol, Level, SymbolError};

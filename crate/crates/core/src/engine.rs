//! The gesture engine: pick exactly one concept-gesture pair per sentence
//! by running the deictic, question, semantic, and beat steps in order.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::io::ScoreDocument;
use crate::library::{GestureConceptPair, GestureLibrary};
use crate::semantics::{match_strength, tokenize, EmbeddingTable, RampParams, SemanticsError};

/// Which step of the cascade produced the selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Deictic,
    Question,
    Semantic,
    Beat,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Deictic => "deictic",
            Branch::Question => "question",
            Branch::Semantic => "semantic",
            Branch::Beat => "beat",
        }
    }
}

/// Engine tunables. The word lists and thresholds drive the cascade; the
/// seed is carried here so services can derive per-request rngs.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub deictic_words: Vec<String>,
    pub question_words: Vec<String>,
    pub random_threshold: f64,
    pub match_threshold: f64,
    pub candidate_ratio: f64,
    pub ramp: RampParams,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            deictic_words: ["this", "that", "here", "there"]
                .map(String::from)
                .to_vec(),
            question_words: ["who", "what", "when", "where", "how"]
                .map(String::from)
                .to_vec(),
            random_threshold: 5.0,
            match_threshold: 0.5,
            candidate_ratio: 0.95,
            ramp: RampParams::default(),
            seed: 0,
        }
    }
}

/// Error raised when the engine cannot honour its configuration.
#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("random threshold must lie in [0, 10], got {0}")]
    BadRandomThreshold(f64),
    #[error("candidate ratio must lie in (0, 1], got {0}")]
    BadCandidateRatio(f64),
    #[error("library has no beat pair to fall back on")]
    MissingBeatPair,
    #[error("deictic step fired for `{word}` but the library has no deictic pair named `{word}`")]
    MissingDeicticPair { word: String },
    #[error("question step fired but the library has no question pair")]
    MissingQuestionPair,
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if !self.random_threshold.is_finite()
            || !(0.0..=10.0).contains(&self.random_threshold)
        {
            return Err(EngineError::BadRandomThreshold(self.random_threshold));
        }
        if !self.candidate_ratio.is_finite()
            || self.candidate_ratio <= 0.0
            || self.candidate_ratio > 1.0
        {
            return Err(EngineError::BadCandidateRatio(self.candidate_ratio));
        }
        Ok(())
    }
}

/// Everything observable about one selection: the tokens, the draws taken,
/// the per-pair strengths (when the semantic step ran), and the candidate
/// set (when one was formed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionTrace {
    pub tokens: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deictic_word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deictic_draw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question_word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question_draw: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub strengths: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The selected pair, the branch that produced it, and the trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult<'a> {
    pub pair: &'a GestureConceptPair,
    pub branch: Branch,
    pub trace: SelectionTrace,
}

/// Runs the cascade and returns exactly one pair.
///
/// Step order: deictic (any token, random gate), question (first token,
/// random gate, with `do`/`does` never triggering), semantic (match
/// strengths against every general pair, candidates within
/// `candidate_ratio` of the best), then the beat pair as the default.
pub fn select_gesture<'a>(
    text: &str,
    library: &'a GestureLibrary,
    table: &EmbeddingTable,
    config: &EngineConfig,
    rng: &mut impl Rng,
) -> Result<SelectionResult<'a>, EngineError> {
    config.validate()?;
    let beat = library.beat_pair().ok_or(EngineError::MissingBeatPair)?;
    let sentence = tokenize(text);
    let mut trace = SelectionTrace {
        tokens: sentence.tokens().to_vec(),
        deictic_word: None,
        deictic_draw: None,
        question_word: None,
        question_draw: None,
        strengths: Vec::new(),
        candidates: Vec::new(),
        seed: None,
    };

    if let Some(word) = sentence
        .tokens()
        .iter()
        .find(|t| config.deictic_words.iter().any(|d| d == *t))
    {
        let draw: f64 = rng.random_range(0.0..=10.0);
        trace.deictic_word = Some(word.clone());
        trace.deictic_draw = Some(draw);
        if draw > config.random_threshold {
            let pair = library
                .deictic_pair(word)
                .ok_or_else(|| EngineError::MissingDeicticPair { word: word.clone() })?;
            return Ok(SelectionResult {
                pair,
                branch: Branch::Deictic,
                trace,
            });
        }
    }

    if let Some(first) = sentence.tokens().first() {
        if config.question_words.iter().any(|q| q == first) {
            let draw: f64 = rng.random_range(0.0..=10.0);
            trace.question_word = Some(first.clone());
            trace.question_draw = Some(draw);
            if draw > config.random_threshold {
                let pair = library
                    .question_pair()
                    .ok_or(EngineError::MissingQuestionPair)?;
                return Ok(SelectionResult {
                    pair,
                    branch: Branch::Question,
                    trace,
                });
            }
        }
    }

    let general: Vec<&GestureConceptPair> = library.general_pairs().collect();
    let mut best = f64::NEG_INFINITY;
    for pair in &general {
        let strength = match_strength(&sentence, &pair.words, table, &config.ramp)?;
        trace.strengths.push((pair.concept.clone(), strength));
        if strength > best {
            best = strength;
        }
    }
    if !general.is_empty() && best > config.match_threshold {
        let cutoff = config.candidate_ratio * best;
        let candidates: Vec<usize> = trace
            .strengths
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| *s >= cutoff)
            .map(|(i, _)| i)
            .collect();
        trace.candidates = candidates
            .iter()
            .map(|&i| general[i].concept.clone())
            .collect();
        let pick = candidates[rng.random_range(0..candidates.len())];
        return Ok(SelectionResult {
            pair: general[pick],
            branch: Branch::Semantic,
            trace,
        });
    }

    Ok(SelectionResult {
        pair: beat,
        branch: Branch::Beat,
        trace,
    })
}

/// Uniform choice among the base score and all variants of a pair.
pub fn pick_variant<'a>(pair: &'a GestureConceptPair, rng: &mut impl Rng) -> &'a ScoreDocument {
    let index = rng.random_range(0..=pair.variants.len());
    if index == 0 {
        &pair.score
    } else {
        &pair.variants[index - 1]
    }
}

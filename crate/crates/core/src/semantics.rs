//! Word-level semantics: tokenization, embedding lookup, and the soft match
//! strength between a sentence and a pair's word list.

use std::collections::HashMap;
use std::path::Path;

/// Error raised while loading embeddings or computing match strengths.
#[derive(Debug, thiserror::Error)]
pub enum SemanticsError {
    #[error("failed to read embeddings: {0}")]
    Io(#[from] std::io::Error),
    #[error("embedding line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("embedding for `{word}` has {found} dimensions, expected {expected}")]
    DimensionMismatch {
        word: String,
        found: usize,
        expected: usize,
    },
    #[error("embedding for `{word}` has zero length and cannot be normalized")]
    ZeroVector { word: String },
    #[error("cannot match against an empty word group")]
    EmptyWordGroup,
    #[error("ramp thresholds must satisfy 0 <= lower < upper, got {lower}..{upper}")]
    BadRampThresholds { lower: f64, upper: f64 },
}

/// A tokenized sentence. Tokens are lowercased and stripped of everything
/// but letters, digits, and apostrophes, so "Thanks a lot!" tokenizes to
/// `["thanks", "a", "lot"]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    raw: String,
    tokens: Vec<String>,
}

impl Sentence {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Lowercases, drops punctuation other than apostrophes, and splits on
/// whitespace.
pub fn tokenize(text: &str) -> Sentence {
    let cleaned: String = text
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '\'' {
                c.to_lowercase().next().unwrap_or(c)
            } else {
                ' '
            }
        })
        .collect();
    let tokens = cleaned
        .split_whitespace()
        .map(|t| t.to_string())
        .collect();
    Sentence {
        raw: text.to_string(),
        tokens,
    }
}

/// Unit-normalized word vectors keyed by word.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    vectors: HashMap<String, Vec<f64>>,
    dimension: Option<usize>,
}

impl EmbeddingTable {
    /// A table with no vectors: every similarity falls back to exact match.
    pub fn empty() -> Self {
        EmbeddingTable::default()
    }

    /// Builds a table from (word, vector) entries, normalizing each vector.
    pub fn from_entries(
        entries: impl IntoIterator<Item = (String, Vec<f64>)>,
    ) -> Result<Self, SemanticsError> {
        let mut table = EmbeddingTable::default();
        for (word, vector) in entries {
            table.insert(word, vector)?;
        }
        Ok(table)
    }

    fn insert(&mut self, word: String, vector: Vec<f64>) -> Result<(), SemanticsError> {
        let expected = *self.dimension.get_or_insert(vector.len());
        if vector.len() != expected {
            return Err(SemanticsError::DimensionMismatch {
                word,
                found: vector.len(),
                expected,
            });
        }
        let norm = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(SemanticsError::ZeroVector { word });
        }
        let unit = vector.into_iter().map(|v| v / norm).collect();
        self.vectors.insert(word, unit);
        Ok(())
    }

    /// Parses the common text format: an optional `count dimension` header
    /// line, then one `word v1 v2 ... vd` line per word.
    pub fn parse(text: &str) -> Result<Self, SemanticsError> {
        let mut table = EmbeddingTable::default();
        for (line_no, line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let mut parts = line.split_whitespace();
            let Some(word) = parts.next() else {
                continue;
            };
            let values: Vec<&str> = parts.collect();
            if line_no == 1
                && values.len() == 1
                && word.parse::<usize>().is_ok()
                && values[0].parse::<usize>().is_ok()
            {
                continue;
            }
            if values.is_empty() {
                return Err(SemanticsError::Format {
                    line: line_no,
                    message: format!("`{word}` has no vector components"),
                });
            }
            let mut vector = Vec::with_capacity(values.len());
            for value in values {
                let v: f64 = value.parse().map_err(|_| SemanticsError::Format {
                    line: line_no,
                    message: format!("`{value}` is not a number"),
                })?;
                vector.push(v);
            }
            table.insert(word.to_lowercase(), vector)?;
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SemanticsError> {
        let text = std::fs::read_to_string(path)?;
        EmbeddingTable::parse(&text)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vectors.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(|v| v.as_slice())
    }
}

/// Cosine similarity between two words' vectors, in `[-1, 1]`.
///
/// When either word has no vector, falls back to exact string match:
/// 1 for identical words, 0 otherwise.
pub fn word_similarity(a: &str, b: &str, table: &EmbeddingTable) -> f64 {
    match (table.vector(a), table.vector(b)) {
        (Some(va), Some(vb)) => va
            .iter()
            .zip(vb)
            .map(|(x, y)| x * y)
            .sum::<f64>()
            .clamp(-1.0, 1.0),
        _ => {
            if a == b {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Best similarity between a word and any word of a non-empty group.
pub fn word_to_group(
    word: &str,
    group: &[String],
    table: &EmbeddingTable,
) -> Result<f64, SemanticsError> {
    if group.is_empty() {
        return Err(SemanticsError::EmptyWordGroup);
    }
    Ok(group
        .iter()
        .map(|g| word_similarity(word, g, table))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Thresholds for the soft ramp applied to similarities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampParams {
    lower: f64,
    upper: f64,
}

impl RampParams {
    pub fn new(lower: f64, upper: f64) -> Result<Self, SemanticsError> {
        if !(lower.is_finite() && upper.is_finite()) || lower < 0.0 || lower >= upper {
            return Err(SemanticsError::BadRampThresholds { lower, upper });
        }
        Ok(RampParams { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }
}

impl Default for RampParams {
    fn default() -> Self {
        RampParams {
            lower: 0.3,
            upper: 0.7,
        }
    }
}

/// Piecewise-linear ramp: 0 at or below the lower threshold, 1 at or above
/// the upper threshold, linear in between.
pub fn ramp(similarity: f64, params: &RampParams) -> f64 {
    if similarity <= params.lower {
        0.0
    } else if similarity >= params.upper {
        1.0
    } else {
        (similarity - params.lower) / (params.upper - params.lower)
    }
}

/// Match strength between a sentence and a pair's word list: the sum over
/// sentence tokens of the ramped best similarity to the word list.
pub fn match_strength(
    sentence: &Sentence,
    words: &[String],
    table: &EmbeddingTable,
    params: &RampParams,
) -> Result<f64, SemanticsError> {
    if words.is_empty() {
        return Err(SemanticsError::EmptyWordGroup);
    }
    let mut total = 0.0;
    for token in sentence.tokens() {
        total += ramp(word_to_group(token, words, table)?, params);
    }
    Ok(total)
}

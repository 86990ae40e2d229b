//! Text formats: the `laban v1` score grammar and the JSON gesture-library
//! format, with parsing, canonical serialization, and positioned errors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::library::{GestureCategory, GestureConceptPair, GestureLibrary, LibraryError};
use crate::score::{LabanScore, ScoreError, ScoreRow};
use crate::symbol::{DirectionSymbol, SymbolError};

/// A score plus the document metadata carried by its text form.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreDocument {
    pub score: LabanScore,
    pub name: Option<String>,
    pub source: Option<String>,
    pub bpm: Option<f64>,
}

impl ScoreDocument {
    pub fn bare(score: LabanScore) -> Self {
        ScoreDocument {
            score,
            name: None,
            source: None,
            bpm: None,
        }
    }
}

/// Error raised while parsing score text. Syntax problems carry the
/// 1-based line and column where they were found.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown direction symbol `{name}`")]
    UnknownSymbol {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: a row needs exactly 5 direction columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: row duration must be positive and finite, got {value}")]
    NonPositiveDuration { line: usize, value: f64 },
    #[error(transparent)]
    Score(#[from] ScoreError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based start columns.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut token_start = None;
    let mut start_col = 0;
    let mut col = 0;
    let mut end = 0;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(s) = token_start.take() {
                out.push((start_col, &line[s..byte]));
            }
        } else if token_start.is_none() {
            token_start = Some(byte);
            start_col = col;
        }
        end = byte + ch.len_utf8();
    }
    if let Some(s) = token_start {
        out.push((start_col, &line[s..end]));
    }
    out
}

/// Parses `laban v1` score text into a [`ScoreDocument`].
pub fn parse_score(text: &str) -> Result<ScoreDocument, ParseError> {
    let mut seen_header = false;
    let mut name = None;
    let mut source = None;
    let mut bpm = None;
    let mut rows: Vec<ScoreRow> = Vec::new();

    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let tokens = tokens_with_columns(raw_line);
        let Some(&(first_col, first)) = tokens.first() else {
            continue;
        };
        if first.starts_with('#') {
            continue;
        }
        if !seen_header {
            if first == "laban" && tokens.len() == 2 && tokens[1].1 == "v1" {
                seen_header = true;
                continue;
            }
            return Err(syntax(
                line_no,
                first_col,
                "expected `laban v1` header before any other content",
            ));
        }
        match first {
            "laban" => {
                return Err(syntax(line_no, first_col, "duplicate `laban v1` header"));
            }
            "meta" => {
                let Some(&(kv_col, _)) = tokens.get(1) else {
                    return Err(syntax(line_no, first_col, "`meta` needs a key=value argument"));
                };
                // The value may contain spaces, so take the rest of the line.
                let rest = raw_line
                    .char_indices()
                    .nth(kv_col - 1)
                    .map(|(byte, _)| raw_line[byte..].trim_end())
                    .unwrap_or("");
                let Some((key, value)) = rest.split_once('=') else {
                    return Err(syntax(line_no, kv_col, "expected `key=value` after `meta`"));
                };
                let value = value.trim();
                match key.trim() {
                    "name" => {
                        if name.replace(value.to_string()).is_some() {
                            return Err(syntax(line_no, kv_col, "duplicate meta key `name`"));
                        }
                    }
                    "source" => {
                        if source.replace(value.to_string()).is_some() {
                            return Err(syntax(line_no, kv_col, "duplicate meta key `source`"));
                        }
                    }
                    "bpm" => {
                        let parsed: f64 = value.parse().map_err(|_| {
                            syntax(line_no, kv_col, format!("`{value}` is not a number"))
                        })?;
                        if !parsed.is_finite() || parsed <= 0.0 {
                            return Err(syntax(line_no, kv_col, "bpm must be positive and finite"));
                        }
                        if bpm.replace(parsed).is_some() {
                            return Err(syntax(line_no, kv_col, "duplicate meta key `bpm`"));
                        }
                    }
                    other => {
                        return Err(syntax(
                            line_no,
                            kv_col,
                            format!("unknown meta key `{other}` (expected name, source, or bpm)"),
                        ));
                    }
                }
            }
            "row" => {
                let Some(&(dur_col, dur_text)) = tokens.get(1) else {
                    return Err(syntax(line_no, first_col, "`row` needs a duration"));
                };
                let duration: f64 = dur_text.parse().map_err(|_| {
                    syntax(line_no, dur_col, format!("`{dur_text}` is not a duration"))
                })?;
                if !duration.is_finite() || duration <= 0.0 {
                    return Err(ParseError::NonPositiveDuration {
                        line: line_no,
                        value: duration,
                    });
                }
                match tokens.get(2) {
                    Some(&(_, "|")) => {}
                    Some(&(col, other)) => {
                        return Err(syntax(line_no, col, format!("expected `|`, found `{other}`")));
                    }
                    None => {
                        return Err(syntax(line_no, first_col, "expected `|` after the duration"));
                    }
                }
                let symbol_tokens = &tokens[3..];
                if symbol_tokens.len() != 5 {
                    return Err(ParseError::ColumnCount {
                        line: line_no,
                        found: symbol_tokens.len(),
                    });
                }
                let mut symbols = [DirectionSymbol::Hold; 5];
                for (i, &(col, token)) in symbol_tokens.iter().enumerate() {
                    symbols[i] = token.parse().map_err(|e| match e {
                        SymbolError::UnknownName(name) => ParseError::UnknownSymbol {
                            line: line_no,
                            column: col,
                            name,
                        },
                        SymbolError::ReservedPlaceMiddle => syntax(
                            line_no,
                            col,
                            "`place-middle` is reserved and cannot be used as a direction",
                        ),
                    })?;
                }
                rows.push(ScoreRow {
                    symbols,
                    duration_beats: duration,
                });
            }
            other => {
                return Err(syntax(
                    line_no,
                    first_col,
                    format!("expected `meta` or `row`, found `{other}`"),
                ));
            }
        }
    }

    if !seen_header {
        return Err(syntax(1, 1, "missing `laban v1` header"));
    }
    let score = LabanScore::new(rows)?;
    Ok(ScoreDocument {
        score,
        name,
        source,
        bpm,
    })
}

/// Reads a score document from a file.
pub fn load_score(path: impl AsRef<Path>) -> Result<ScoreDocument, LibraryError> {
    let text = std::fs::read_to_string(&path)?;
    parse_score(&text).map_err(LibraryError::from)
}

/// Serializes a score document in canonical form: header, then `name`,
/// `source`, and `bpm` meta lines when present, then one `row` line per row.
pub fn serialize_score(doc: &ScoreDocument) -> String {
    let mut out = String::from("laban v1\n");
    if let Some(name) = &doc.name {
        out.push_str(&format!("meta name={name}\n"));
    }
    if let Some(source) = &doc.source {
        out.push_str(&format!("meta source={source}\n"));
    }
    if let Some(bpm) = doc.bpm {
        out.push_str(&format!("meta bpm={bpm}\n"));
    }
    for row in doc.score.rows() {
        out.push_str(&format!("row {}", row.duration_beats));
        out.push_str(" |");
        for symbol in &row.symbols {
            out.push(' ');
            out.push_str(&symbol.to_string());
        }
        out.push('\n');
    }
    out
}

pub const LIBRARY_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct LibraryFile {
    version: u32,
    #[serde(default = "default_codebook_name")]
    codebook: String,
    pairs: Vec<PairFile>,
}

#[derive(Serialize, Deserialize)]
struct PairFile {
    concept: String,
    category: GestureCategory,
    words: Vec<String>,
    score: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    variants: Vec<String>,
}

fn default_codebook_name() -> String {
    "laban-26".to_string()
}

/// Parses and validates a gesture library from JSON text.
pub fn parse_library(text: &str) -> Result<GestureLibrary, LibraryError> {
    let file: LibraryFile = serde_json::from_str(text)?;
    if file.version != LIBRARY_FORMAT_VERSION {
        return Err(LibraryError::UnsupportedVersion {
            found: file.version,
            supported: LIBRARY_FORMAT_VERSION,
        });
    }
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for pair in file.pairs {
        let score = parse_score(&pair.score).map_err(|error| LibraryError::PairScore {
            concept: pair.concept.clone(),
            error,
        })?;
        let mut variants = Vec::with_capacity(pair.variants.len());
        for variant in &pair.variants {
            variants.push(parse_score(variant).map_err(|error| LibraryError::PairScore {
                concept: pair.concept.clone(),
                error,
            })?);
        }
        pairs.push(GestureConceptPair {
            concept: pair.concept,
            category: pair.category,
            words: pair.words,
            score,
            variants,
        });
    }
    GestureLibrary::new(file.codebook, pairs)
}

/// Reads and validates a gesture library from a JSON file.
pub fn load_library(path: impl AsRef<Path>) -> Result<GestureLibrary, LibraryError> {
    let text = std::fs::read_to_string(path)?;
    parse_library(&text)
}

/// Serializes a library as pretty-printed JSON with canonical score text.
pub fn write_library(library: &GestureLibrary) -> String {
    let file = LibraryFile {
        version: LIBRARY_FORMAT_VERSION,
        codebook: library.codebook_name().to_string(),
        pairs: library
            .pairs()
            .iter()
            .map(|p| PairFile {
                concept: p.concept.clone(),
                category: p.category,
                words: p.words.clone(),
                score: serialize_score(&p.score),
                variants: p.variants.iter().map(serialize_score).collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("library serializes");
    text.push('\n');
    text
}

/// Serializes a library skeleton: one general pair per score, with the
/// `concept` and `words` fields left blank for a human to fill in. The
/// output uses the library file format but does not validate as a library
/// until the blanks are filled (concepts must be non-empty and unique).
pub fn write_library_skeleton(codebook_name: &str, scores: &[ScoreDocument]) -> String {
    let file = LibraryFile {
        version: LIBRARY_FORMAT_VERSION,
        codebook: codebook_name.to_string(),
        pairs: scores
            .iter()
            .map(|doc| PairFile {
                concept: String::new(),
                category: GestureCategory::General,
                words: Vec::new(),
                score: serialize_score(doc),
                variants: Vec::new(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("skeleton serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Azimuth;

    const SAMPLE: &str = "\
laban v1
# a comment
meta name=wave
meta source=authored

meta bpm=96
row 1 | place-low place-low forward-high forward-middle place-high
row 0.5 | hold hold right-high hold hold
row 2 | hold hold place-low place-low hold
";

    #[test]
    fn parses_header_meta_comments_and_rows() {
        let doc = parse_score(SAMPLE).unwrap();
        assert_eq!(doc.name.as_deref(), Some("wave"));
        assert_eq!(doc.source.as_deref(), Some("authored"));
        assert_eq!(doc.bpm, Some(96.0));
        assert_eq!(doc.score.len(), 3);
        assert_eq!(doc.score.rows()[0].duration_beats, 1.0);
        assert_eq!(doc.score.rows()[1].duration_beats, 0.5);
        assert_eq!(
            doc.score.rows()[1].symbols[2].azimuth(),
            Some(Azimuth::Right)
        );
        assert!(doc.score.rows()[2].symbols[0].is_hold());
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let doc = parse_score(SAMPLE).unwrap();
        let text = serialize_score(&doc);
        let reparsed = parse_score(&text).unwrap();
        assert_eq!(reparsed, doc);
        // Serialization is canonical: a second round trip is byte-identical.
        assert_eq!(serialize_score(&reparsed), text);
    }

    #[test]
    fn missing_header_is_an_error() {
        let err = parse_score("row 1 | place-low place-low place-low place-low place-high\n");
        match err {
            Err(ParseError::Syntax { line: 1, column: 1, .. }) => {}
            other => panic!("expected header error, got {other:?}"),
        }
        assert!(parse_score("").is_err());
        assert!(parse_score("# only a comment\n").is_err());
    }

    #[test]
    fn unknown_symbol_reports_line_and_column() {
        let text = "laban v1\nrow 1 | place-low place-low sideways place-low place-high\n";
        match parse_score(text) {
            Err(ParseError::UnknownSymbol { line, column, name }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 29);
                assert_eq!(name, "sideways");
            }
            other => panic!("expected unknown-symbol error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_column_count_is_reported() {
        let text = "laban v1\nrow 1 | place-low place-low place-low place-high\n";
        match parse_score(text) {
            Err(ParseError::ColumnCount { line: 2, found: 4 }) => {}
            other => panic!("expected column-count error, got {other:?}"),
        }
        let text = "laban v1\nrow 1 | place-low place-low place-low place-low place-high place-low\n";
        assert!(matches!(
            parse_score(text),
            Err(ParseError::ColumnCount { line: 2, found: 6 })
        ));
    }

    #[test]
    fn bad_durations_are_rejected() {
        let zero = "laban v1\nrow 0 | place-low place-low place-low place-low place-high\n";
        assert!(matches!(
            parse_score(zero),
            Err(ParseError::NonPositiveDuration { line: 2, .. })
        ));
        let negative = "laban v1\nrow -2 | place-low place-low place-low place-low place-high\n";
        assert!(matches!(
            parse_score(negative),
            Err(ParseError::NonPositiveDuration { line: 2, .. })
        ));
        let inf = "laban v1\nrow inf | place-low place-low place-low place-low place-high\n";
        assert!(matches!(
            parse_score(inf),
            Err(ParseError::NonPositiveDuration { line: 2, .. })
        ));
        let word = "laban v1\nrow fast | place-low place-low place-low place-low place-high\n";
        match parse_score(word) {
            Err(ParseError::Syntax { line: 2, column: 5, .. }) => {}
            other => panic!("expected syntax error at the duration, got {other:?}"),
        }
    }

    #[test]
    fn hold_in_first_row_is_rejected() {
        let text = "laban v1\nrow 1 | hold place-low place-low place-low place-high\n";
        assert!(matches!(
            parse_score(text),
            Err(ParseError::Score(ScoreError::HoldInFirstRow { .. }))
        ));
    }

    #[test]
    fn place_middle_and_stray_lines_are_rejected() {
        let reserved = "laban v1\nrow 1 | place-middle place-low place-low place-low place-high\n";
        match parse_score(reserved) {
            Err(ParseError::Syntax { line: 2, column: 9, message }) => {
                assert!(message.contains("place-middle"));
            }
            other => panic!("expected reserved-symbol error, got {other:?}"),
        }
        let stray = "laban v1\nbogus line\n";
        assert!(matches!(
            parse_score(stray),
            Err(ParseError::Syntax { line: 2, column: 1, .. })
        ));
        let bad_meta = "laban v1\nmeta tempo=9\nrow 1 | place-low place-low place-low place-low place-high\n";
        match parse_score(bad_meta) {
            Err(ParseError::Syntax { line: 2, column: 6, message }) => {
                assert!(message.contains("tempo"));
            }
            other => panic!("expected unknown-meta-key error, got {other:?}"),
        }
    }

    #[test]
    fn duration_formatting_round_trips() {
        for duration in [0.5f64, 1.0, 0.75, 2.0, 1.25, 0.2, 3.0] {
            let text = format!(
                "laban v1\nrow {duration} | place-low place-low place-low place-low place-high\n"
            );
            let doc = parse_score(&text).unwrap();
            assert_eq!(doc.score.rows()[0].duration_beats, duration);
            assert_eq!(serialize_score(&doc), text);
        }
    }

    #[test]
    fn skeleton_becomes_valid_once_concepts_are_filled() {
        let doc = parse_score(SAMPLE).unwrap();
        let skeleton = write_library_skeleton("laban-26", &[doc.clone(), doc]);

        // Blank concepts keep the skeleton from validating as a library.
        assert!(parse_library(&skeleton).is_err());

        // A human fills concepts and words, and marks one pair as the beat.
        let mut filled = skeleton
            .replacen("\"concept\": \"\"", "\"concept\": \"alpha\"", 1)
            .replacen("\"concept\": \"\"", "\"concept\": \"beta\"", 1)
            .replacen("\"words\": []", "\"words\": [\"alpha\"]", 1);
        let last_category = filled.rfind("\"category\": \"general\"").unwrap();
        filled.replace_range(
            last_category.."\"category\": \"general\"".len() + last_category,
            "\"category\": \"beat\"",
        );
        let library = parse_library(&filled).unwrap();
        assert_eq!(library.len(), 2);
        assert_eq!(library.pairs()[0].concept, "alpha");
        assert_eq!(library.pairs()[1].category, GestureCategory::Beat);
    }
}

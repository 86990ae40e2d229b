//! Gesture scores: timed rows of direction symbols, one column per tracked
//! body part, plus the resampling and distance operations built on them.

use std::fmt;

use crate::codebook::{CodebookError, DirectionCodebook};
use crate::symbol::DirectionSymbol;

/// Number of rows two scores are resampled to before computing their
/// distance when their lengths differ.
pub const DEFAULT_COMPARE_ROWS: usize = 20;

/// The body parts tracked by a score, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BodyColumn {
    LeftLowerArm,
    LeftUpperArm,
    RightLowerArm,
    RightUpperArm,
    Head,
}

impl BodyColumn {
    pub const ALL: [BodyColumn; 5] = [
        BodyColumn::LeftLowerArm,
        BodyColumn::LeftUpperArm,
        BodyColumn::RightLowerArm,
        BodyColumn::RightUpperArm,
        BodyColumn::Head,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BodyColumn::LeftLowerArm => "left-lower-arm",
            BodyColumn::LeftUpperArm => "left-upper-arm",
            BodyColumn::RightLowerArm => "right-lower-arm",
            BodyColumn::RightUpperArm => "right-upper-arm",
            BodyColumn::Head => "head",
        }
    }

    pub fn index(self) -> usize {
        match self {
            BodyColumn::LeftLowerArm => 0,
            BodyColumn::LeftUpperArm => 1,
            BodyColumn::RightLowerArm => 2,
            BodyColumn::RightUpperArm => 3,
            BodyColumn::Head => 4,
        }
    }
}

impl fmt::Display for BodyColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One timed row of a score: five direction symbols and a duration in beats.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub symbols: [DirectionSymbol; 5],
    pub duration_beats: f64,
}

impl ScoreRow {
    pub fn new(symbols: [DirectionSymbol; 5], duration_beats: f64) -> Result<Self, ScoreError> {
        if !duration_beats.is_finite() || duration_beats <= 0.0 {
            return Err(ScoreError::NonPositiveDuration {
                duration: duration_beats,
            });
        }
        Ok(ScoreRow {
            symbols,
            duration_beats,
        })
    }

    pub fn symbol(&self, column: BodyColumn) -> DirectionSymbol {
        self.symbols[column.index()]
    }
}

/// Error raised when a score would violate its structural invariants.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScoreError {
    #[error("a score must have at least one row")]
    Empty,
    #[error("row durations must be positive and finite, got {duration}")]
    NonPositiveDuration { duration: f64 },
    #[error("hold in the first row of column {column} has nothing to repeat")]
    HoldInFirstRow { column: BodyColumn },
    #[error("resampling requires at least one output row")]
    ZeroResampleRows,
}

/// A gesture score: an ordered, non-empty sequence of [`ScoreRow`]s.
///
/// The first row never contains [`DirectionSymbol::Hold`], so every hold has
/// an earlier concrete symbol to repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct LabanScore {
    rows: Vec<ScoreRow>,
}

impl LabanScore {
    pub fn new(rows: Vec<ScoreRow>) -> Result<Self, ScoreError> {
        if rows.is_empty() {
            return Err(ScoreError::Empty);
        }
        for row in &rows {
            if !row.duration_beats.is_finite() || row.duration_beats <= 0.0 {
                return Err(ScoreError::NonPositiveDuration {
                    duration: row.duration_beats,
                });
            }
        }
        for column in BodyColumn::ALL {
            if rows[0].symbol(column).is_hold() {
                return Err(ScoreError::HoldInFirstRow { column });
            }
        }
        Ok(LabanScore { rows })
    }

    pub fn rows(&self) -> &[ScoreRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total duration in beats.
    pub fn total_beats(&self) -> f64 {
        self.rows.iter().map(|r| r.duration_beats).sum()
    }

    pub fn contains_hold(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.symbols.iter().any(|s| s.is_hold()))
    }

    /// Replaces every hold with the most recent concrete symbol in its
    /// column. The result has the same shape and durations and no holds.
    pub fn resolve_holds(&self) -> LabanScore {
        let mut rows = self.rows.clone();
        for column in 0..5 {
            let mut last = rows[0].symbols[column];
            for row in rows.iter_mut().skip(1) {
                if row.symbols[column].is_hold() {
                    row.symbols[column] = last;
                } else {
                    last = row.symbols[column];
                }
            }
        }
        LabanScore { rows }
    }

    /// Resamples the score to exactly `rows` rows of equal duration.
    ///
    /// Sample times are spread evenly across the duration-weighted timeline,
    /// endpoints included; each output row copies the input row active at
    /// its sample time (the earlier row on an exact boundary). Resampling a
    /// uniform score to its own length is the identity.
    pub fn resample(&self, rows: usize) -> Result<LabanScore, ScoreError> {
        if rows == 0 {
            return Err(ScoreError::ZeroResampleRows);
        }
        let total = self.total_beats();
        let ends: Vec<f64> = {
            let mut acc = 0.0;
            self.rows
                .iter()
                .map(|r| {
                    acc += r.duration_beats;
                    acc
                })
                .collect()
        };
        let out_duration = total / rows as f64;
        let mut out = Vec::with_capacity(rows);
        for k in 0..rows {
            let fraction = if rows == 1 {
                0.0
            } else {
                k as f64 / (rows - 1) as f64
            };
            let sample = fraction * total;
            let index = ends
                .iter()
                .position(|&end| sample <= end)
                .unwrap_or(self.rows.len() - 1);
            out.push(ScoreRow {
                symbols: self.rows[index].symbols,
                duration_beats: out_duration,
            });
        }
        LabanScore::new(out)
    }

    /// True when both scores have the same symbols row by row (durations are
    /// ignored).
    pub fn same_symbols(&self, other: &LabanScore) -> bool {
        self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.symbols == b.symbols)
    }
}

/// Error raised while computing a score distance.
#[derive(Debug, thiserror::Error)]
pub enum ScoreDistanceError {
    #[error(transparent)]
    Codebook(#[from] CodebookError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// Distance between two scores: the sum over all aligned cells of the
/// angle between their direction symbols.
///
/// Holds are resolved first. Scores of different lengths are both resampled
/// to [`DEFAULT_COMPARE_ROWS`] rows. Durations do not contribute: the
/// distance is zero whenever the aligned scores agree symbol for symbol,
/// even if their timings differ. On scores of a common length this is a
/// pseudometric; cross-length comparisons go through the resampled form.
pub fn score_distance(
    a: &LabanScore,
    b: &LabanScore,
    codebook: &DirectionCodebook,
) -> Result<f64, ScoreDistanceError> {
    let a = a.resolve_holds();
    let b = b.resolve_holds();
    let (a, b) = if a.len() == b.len() {
        (a, b)
    } else {
        (a.resample(DEFAULT_COMPARE_ROWS)?, b.resample(DEFAULT_COMPARE_ROWS)?)
    };
    let mut sum = 0.0;
    for (ra, rb) in a.rows().iter().zip(b.rows()) {
        for (&sa, &sb) in ra.symbols.iter().zip(&rb.symbols) {
            sum += codebook.geodesic_distance(sa, sb)?;
        }
    }
    Ok(sum)
}

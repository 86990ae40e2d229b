//! Gesture libraries: concept/score pairs grouped by category, plus the
//! clustering tools used to build a library from observed scores.

use nalgebra::{Rotation3, Unit, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codebook::{CodebookError, DirectionCodebook};
use crate::io::{ParseError, ScoreDocument};
use crate::score::{score_distance, LabanScore, ScoreDistanceError, ScoreRow};

/// How a concept-gesture pair participates in selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GestureCategory {
    General,
    Deictic,
    Question,
    Beat,
}

impl GestureCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            GestureCategory::General => "general",
            GestureCategory::Deictic => "deictic",
            GestureCategory::Question => "question",
            GestureCategory::Beat => "beat",
        }
    }
}

/// A named gesture: the concept it expresses, the words associated with it,
/// a base score, and optional variant scores.
#[derive(Debug, Clone, PartialEq)]
pub struct GestureConceptPair {
    pub concept: String,
    pub category: GestureCategory,
    pub words: Vec<String>,
    pub score: ScoreDocument,
    pub variants: Vec<ScoreDocument>,
}

/// Error raised while loading or validating a gesture library.
#[derive(Debug, thiserror::Error)]
pub enum LibraryError {
    #[error("failed to read library: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse library JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("library format version {found} is not supported (expected {supported})")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("score for concept `{concept}` is invalid: {error}")]
    PairScore {
        concept: String,
        #[source]
        error: ParseError,
    },
    #[error(transparent)]
    Score(#[from] ParseError),
    #[error("a library needs at least one pair")]
    EmptyLibrary,
    #[error("a pair has an empty concept name")]
    EmptyConcept,
    #[error("concept `{0}` appears more than once")]
    DuplicateConcept(String),
    #[error("general pair `{0}` has no words")]
    EmptyWords(String),
    #[error("pair `{concept}` lists the empty string as a word")]
    EmptyWord { concept: String },
    #[error("library has no beat pair to fall back on")]
    MissingBeat,
    #[error("library has {0} beat pairs, expected exactly one")]
    MultipleBeat(usize),
    #[error("library has deictic pairs but none named `{missing}`")]
    IncompleteDeicticSet { missing: &'static str },
}

/// The four words every deictic pair set must cover.
pub const DEICTIC_CONCEPTS: [&str; 4] = ["this", "that", "here", "there"];

/// A validated set of gesture pairs sharing one direction codebook.
///
/// Validation guarantees: at least one pair, unique non-empty concepts,
/// non-empty word lists on general pairs, exactly one beat pair to fall back
/// on, and a full this/that/here/there set whenever any deictic pair exists.
#[derive(Debug, Clone, PartialEq)]
pub struct GestureLibrary {
    codebook_name: String,
    pairs: Vec<GestureConceptPair>,
}

impl GestureLibrary {
    pub fn new(
        codebook_name: impl Into<String>,
        pairs: Vec<GestureConceptPair>,
    ) -> Result<Self, LibraryError> {
        if pairs.is_empty() {
            return Err(LibraryError::EmptyLibrary);
        }
        let mut seen = std::collections::HashSet::new();
        for pair in &pairs {
            if pair.concept.is_empty() {
                return Err(LibraryError::EmptyConcept);
            }
            if !seen.insert(pair.concept.as_str()) {
                return Err(LibraryError::DuplicateConcept(pair.concept.clone()));
            }
            if pair.category == GestureCategory::General && pair.words.is_empty() {
                return Err(LibraryError::EmptyWords(pair.concept.clone()));
            }
            if pair.words.iter().any(|w| w.is_empty()) {
                return Err(LibraryError::EmptyWord {
                    concept: pair.concept.clone(),
                });
            }
        }
        let beats = pairs
            .iter()
            .filter(|p| p.category == GestureCategory::Beat)
            .count();
        if beats == 0 {
            return Err(LibraryError::MissingBeat);
        }
        if beats > 1 {
            return Err(LibraryError::MultipleBeat(beats));
        }
        let deictic: Vec<&str> = pairs
            .iter()
            .filter(|p| p.category == GestureCategory::Deictic)
            .map(|p| p.concept.as_str())
            .collect();
        if !deictic.is_empty() {
            for word in DEICTIC_CONCEPTS {
                if !deictic.contains(&word) {
                    return Err(LibraryError::IncompleteDeicticSet { missing: word });
                }
            }
        }
        Ok(GestureLibrary {
            codebook_name: codebook_name.into(),
            pairs,
        })
    }

    pub fn codebook_name(&self) -> &str {
        &self.codebook_name
    }

    pub fn pairs(&self) -> &[GestureConceptPair] {
        &self.pairs
    }

    pub fn pairs_mut(&mut self) -> &mut [GestureConceptPair] {
        &mut self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn find(&self, concept: &str) -> Option<&GestureConceptPair> {
        self.pairs.iter().find(|p| p.concept == concept)
    }

    pub fn general_pairs(&self) -> impl Iterator<Item = &GestureConceptPair> {
        self.pairs
            .iter()
            .filter(|p| p.category == GestureCategory::General)
    }

    /// The deictic pair whose concept matches `word`, if any.
    pub fn deictic_pair(&self, word: &str) -> Option<&GestureConceptPair> {
        self.pairs
            .iter()
            .find(|p| p.category == GestureCategory::Deictic && p.concept == word)
    }

    /// The first question pair, if any.
    pub fn question_pair(&self) -> Option<&GestureConceptPair> {
        self.pairs
            .iter()
            .find(|p| p.category == GestureCategory::Question)
    }

    /// The beat pair. Validation guarantees exactly one exists.
    pub fn beat_pair(&self) -> Option<&GestureConceptPair> {
        self.pairs
            .iter()
            .find(|p| p.category == GestureCategory::Beat)
    }

    pub fn count_by_category(&self, category: GestureCategory) -> usize {
        self.pairs.iter().filter(|p| p.category == category).count()
    }
}

/// Pairwise score distances, symmetric with a zero diagonal.
pub fn distance_matrix(
    scores: &[LabanScore],
    codebook: &DirectionCodebook,
) -> Result<Vec<Vec<f64>>, ScoreDistanceError> {
    let n = scores.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = score_distance(&scores[i], &scores[j], codebook)?;
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    Ok(matrix)
}

/// Error raised by [`cluster_scores`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClusterError {
    #[error("cannot cluster zero scores")]
    EmptyInput,
    #[error("cannot form {requested} clusters from {available} scores")]
    TooManyClusters { requested: usize, available: usize },
    #[error("cluster count must be at least 1")]
    ZeroClusters,
}

/// Result of clustering: a cluster id per input score and, per cluster, the
/// index of the member closest on average to the rest of its cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub assignments: Vec<usize>,
    pub medoids: Vec<usize>,
}

impl ClusterResult {
    pub fn cluster_count(&self) -> usize {
        self.medoids.len()
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == cluster)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Average-linkage agglomerative clustering over a precomputed distance
/// matrix, stopped at `clusters` clusters.
///
/// Fully deterministic: at every step the merge with the smallest linkage
/// distance wins, and ties go to the lexicographically smallest pair of
/// cluster representatives (a cluster is represented by its smallest member
/// index). Clusters are numbered by representative order, and medoid ties go
/// to the smallest index.
pub fn cluster_scores(matrix: &[Vec<f64>], clusters: usize) -> Result<ClusterResult, ClusterError> {
    let n = matrix.len();
    if n == 0 {
        return Err(ClusterError::EmptyInput);
    }
    if clusters == 0 {
        return Err(ClusterError::ZeroClusters);
    }
    if clusters > n {
        return Err(ClusterError::TooManyClusters {
            requested: clusters,
            available: n,
        });
    }

    // members[rep] holds the member indices of the active cluster whose
    // representative is `rep`; merged-away clusters become empty.
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut dist = matrix.to_vec();

    while active.len() > clusters {
        let mut best: Option<(usize, usize)> = None;
        let mut best_d = f64::INFINITY;
        for (ai, &a) in active.iter().enumerate() {
            for &b in &active[ai + 1..] {
                let d = dist[a][b];
                if d < best_d {
                    best_d = d;
                    best = Some((a, b));
                }
            }
        }
        let (a, b) = best.expect("at least two active clusters");
        let (wa, wb) = (members[a].len() as f64, members[b].len() as f64);
        for &c in &active {
            if c == a || c == b {
                continue;
            }
            let d = (wa * dist[a][c] + wb * dist[b][c]) / (wa + wb);
            dist[a][c] = d;
            dist[c][a] = d;
        }
        let absorbed = std::mem::take(&mut members[b]);
        members[a].extend(absorbed);
        active.retain(|&c| c != b);
    }

    let mut assignments = vec![0usize; n];
    let mut medoids = Vec::with_capacity(active.len());
    for (cluster_id, &rep) in active.iter().enumerate() {
        let group = &mut members[rep];
        group.sort_unstable();
        for &m in group.iter() {
            assignments[m] = cluster_id;
        }
        let mut medoid = group[0];
        let mut medoid_sum = f64::INFINITY;
        for &i in group.iter() {
            let sum: f64 = group.iter().map(|&j| matrix[i][j]).sum();
            if sum < medoid_sum {
                medoid_sum = sum;
                medoid = i;
            }
        }
        medoids.push(medoid);
    }
    Ok(ClusterResult {
        assignments,
        medoids,
    })
}

/// Produces a perturbed copy of a score: every spatial symbol's vector is
/// rotated by a random angle of at most `magnitude` radians about a random
/// axis and re-quantized. Holds and durations are untouched.
pub fn vary_score(
    score: &LabanScore,
    magnitude: f64,
    codebook: &DirectionCodebook,
    rng: &mut impl Rng,
) -> Result<LabanScore, CodebookError> {
    let mut rows = Vec::with_capacity(score.len());
    for row in score.rows() {
        let mut symbols = row.symbols;
        for symbol in symbols.iter_mut() {
            if symbol.is_hold() {
                continue;
            }
            let vector = codebook.vector(*symbol)?;
            let rotated = if magnitude > 0.0 {
                let z: f64 = rng.random_range(-1.0..=1.0);
                let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let r = (1.0 - z * z).max(0.0).sqrt();
                let axis = Vector3::new(r * phi.cos(), r * phi.sin(), z);
                let angle: f64 = rng.random_range(0.0..=magnitude);
                if axis.norm() < 1e-9 {
                    vector
                } else {
                    Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle) * vector
                }
            } else {
                vector
            };
            *symbol = codebook.quantize(rotated)?;
        }
        rows.push(ScoreRow {
            symbols,
            duration_beats: row.duration_beats,
        });
    }
    Ok(LabanScore::new(rows).expect("shape preserved"))
}

impl GestureConceptPair {
    /// Appends a perturbed variant of the base score and returns it.
    pub fn add_variation(
        &mut self,
        magnitude: f64,
        codebook: &DirectionCodebook,
        rng: &mut impl Rng,
    ) -> Result<&ScoreDocument, CodebookError> {
        let varied = vary_score(&self.score.score, magnitude, codebook, rng)?;
        self.variants.push(ScoreDocument {
            score: varied,
            name: self.score.name.clone(),
            source: Some("variation".to_string()),
            bpm: self.score.bpm,
        });
        Ok(self.variants.last().expect("just pushed"))
    }
}

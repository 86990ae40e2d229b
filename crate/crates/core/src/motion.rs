//! Skeleton motion to score conversion: torso-attached body frame, segment
//! directions, aggregate angular speed, key frames at speed minima, and
//! quantization of the key poses into score rows.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::{Matrix3, Rotation3, Vector3};
use serde::Deserialize;

use crate::codebook::{CodebookError, DirectionCodebook};
use crate::score::{LabanScore, ScoreError, ScoreRow};
use crate::symbol::DirectionSymbol;

/// Joints every frame must provide, by name.
pub const REQUIRED_JOINTS: [&str; 9] = [
    "spine-base",
    "neck",
    "head",
    "left-shoulder",
    "right-shoulder",
    "left-elbow",
    "right-elbow",
    "left-wrist",
    "right-wrist",
];

const DEGENERATE_EPS: f64 = 1e-9;

/// Error raised while loading or converting motion clips.
#[derive(Debug, thiserror::Error)]
pub enum MotionError {
    #[error("failed to read clip: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse clip JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("failed to parse clip CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("clip format problem: {0}")]
    ClipFormat(String),
    #[error("frame is missing required joint `{joint}`")]
    MissingJoint { joint: String },
    #[error("joint `{joint}` has a non-finite coordinate")]
    NonFiniteCoordinate { joint: String },
    #[error("clip has no frames")]
    EmptyClip,
    #[error("timestamps must be strictly increasing (frame {index} does not advance)")]
    NonIncreasingTimestamps { index: usize },
    #[error("conversion needs at least 2 frames, got {found}")]
    TooFewFrames { found: usize },
    #[error("degenerate pose: {0}")]
    DegeneratePose(String),
    #[error("smoothing window must be odd and at least 1, got {0}")]
    BadSmoothingWindow(usize),
    #[error("{name} must be finite and non-negative, got {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error(transparent)]
    Quantize(#[from] CodebookError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// One skeleton observation: a timestamp and named joint positions in
/// meters, world frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonFrame {
    timestamp: f64,
    joints: BTreeMap<String, Vector3<f64>>,
}

impl SkeletonFrame {
    pub fn new(
        timestamp: f64,
        joints: BTreeMap<String, Vector3<f64>>,
    ) -> Result<Self, MotionError> {
        if !timestamp.is_finite() {
            return Err(MotionError::ClipFormat(format!(
                "non-finite timestamp {timestamp}"
            )));
        }
        for required in REQUIRED_JOINTS {
            if !joints.contains_key(required) {
                return Err(MotionError::MissingJoint {
                    joint: required.to_string(),
                });
            }
        }
        for (name, position) in &joints {
            if !(position.x.is_finite() && position.y.is_finite() && position.z.is_finite()) {
                return Err(MotionError::NonFiniteCoordinate {
                    joint: name.clone(),
                });
            }
        }
        Ok(SkeletonFrame { timestamp, joints })
    }

    pub fn timestamp(&self) -> f64 {
        self.timestamp
    }

    pub fn joint(&self, name: &str) -> Option<Vector3<f64>> {
        self.joints.get(name).copied()
    }

    fn required(&self, name: &str) -> Vector3<f64> {
        self.joints[name]
    }
}

/// An ordered skeleton recording with strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionClip {
    frames: Vec<SkeletonFrame>,
    frame_rate_hint: Option<f64>,
}

impl MotionClip {
    pub fn new(
        frames: Vec<SkeletonFrame>,
        frame_rate_hint: Option<f64>,
    ) -> Result<Self, MotionError> {
        if frames.is_empty() {
            return Err(MotionError::EmptyClip);
        }
        for i in 1..frames.len() {
            if frames[i].timestamp <= frames[i - 1].timestamp {
                return Err(MotionError::NonIncreasingTimestamps { index: i });
            }
        }
        Ok(MotionClip {
            frames,
            frame_rate_hint,
        })
    }

    pub fn frames(&self) -> &[SkeletonFrame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frame_rate_hint(&self) -> Option<f64> {
        self.frame_rate_hint
    }

    pub fn duration(&self) -> f64 {
        self.frames.last().unwrap().timestamp - self.frames[0].timestamp
    }
}

/// Tunables for key-frame detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyframeParams {
    smoothing_window: usize,
    minima_speed_threshold: f64,
    min_keyframe_gap: f64,
}

impl KeyframeParams {
    pub fn new(
        smoothing_window: usize,
        minima_speed_threshold: f64,
        min_keyframe_gap: f64,
    ) -> Result<Self, MotionError> {
        if smoothing_window == 0 || smoothing_window % 2 == 0 {
            return Err(MotionError::BadSmoothingWindow(smoothing_window));
        }
        if !minima_speed_threshold.is_finite() || minima_speed_threshold < 0.0 {
            return Err(MotionError::BadParameter {
                name: "minima_speed_threshold",
                value: minima_speed_threshold,
            });
        }
        if !min_keyframe_gap.is_finite() || min_keyframe_gap < 0.0 {
            return Err(MotionError::BadParameter {
                name: "min_keyframe_gap",
                value: min_keyframe_gap,
            });
        }
        Ok(KeyframeParams {
            smoothing_window,
            minima_speed_threshold,
            min_keyframe_gap,
        })
    }

    pub fn smoothing_window(&self) -> usize {
        self.smoothing_window
    }

    pub fn minima_speed_threshold(&self) -> f64 {
        self.minima_speed_threshold
    }

    pub fn min_keyframe_gap(&self) -> f64 {
        self.min_keyframe_gap
    }

    pub fn with_threshold(self, minima_speed_threshold: f64) -> Result<Self, MotionError> {
        KeyframeParams::new(
            self.smoothing_window,
            minima_speed_threshold,
            self.min_keyframe_gap,
        )
    }

    pub fn with_gap(self, min_keyframe_gap: f64) -> Result<Self, MotionError> {
        KeyframeParams::new(
            self.smoothing_window,
            self.minima_speed_threshold,
            min_keyframe_gap,
        )
    }
}

impl Default for KeyframeParams {
    fn default() -> Self {
        KeyframeParams {
            smoothing_window: 5,
            minima_speed_threshold: 0.35,
            min_keyframe_gap: 0.2,
        }
    }
}

/// World-to-body rotation for one frame.
///
/// Body axes: +Z up the spine (`neck - spine-base`), +Y along the shoulder
/// line toward the left shoulder (projected orthogonal to +Z), +X = Y × Z,
/// which points forward out of the chest.
pub fn body_frame(frame: &SkeletonFrame) -> Result<Rotation3<f64>, MotionError> {
    let spine = frame.required("neck") - frame.required("spine-base");
    if spine.norm() < DEGENERATE_EPS {
        return Err(MotionError::DegeneratePose(
            "neck and spine-base coincide".to_string(),
        ));
    }
    let z = spine.normalize();
    let shoulder = frame.required("left-shoulder") - frame.required("right-shoulder");
    if shoulder.norm() < DEGENERATE_EPS {
        return Err(MotionError::DegeneratePose(
            "shoulders coincide".to_string(),
        ));
    }
    let y_raw = shoulder - shoulder.dot(&z) * z;
    if y_raw.norm() < DEGENERATE_EPS {
        return Err(MotionError::DegeneratePose(
            "shoulder line is parallel to the spine".to_string(),
        ));
    }
    let y = y_raw.normalize();
    let x = y.cross(&z);
    let matrix = Matrix3::new(x.x, x.y, x.z, y.x, y.y, y.z, z.x, z.y, z.z);
    Ok(Rotation3::from_matrix_unchecked(matrix))
}

/// Unit directions of the five tracked segments in the body frame, in
/// [`crate::score::BodyColumn`] order.
pub fn segment_directions(frame: &SkeletonFrame) -> Result<[Vector3<f64>; 5], MotionError> {
    let rotation = body_frame(frame)?;
    let segments: [(&str, Vector3<f64>); 5] = [
        (
            "left lower arm",
            frame.required("left-wrist") - frame.required("left-elbow"),
        ),
        (
            "left upper arm",
            frame.required("left-elbow") - frame.required("left-shoulder"),
        ),
        (
            "right lower arm",
            frame.required("right-wrist") - frame.required("right-elbow"),
        ),
        (
            "right upper arm",
            frame.required("right-elbow") - frame.required("right-shoulder"),
        ),
        ("head", frame.required("head") - frame.required("neck")),
    ];
    let mut out = [Vector3::zeros(); 5];
    for (i, (name, vector)) in segments.iter().enumerate() {
        if vector.norm() < DEGENERATE_EPS {
            return Err(MotionError::DegeneratePose(format!(
                "{name} segment has zero length"
            )));
        }
        out[i] = rotation * vector.normalize();
    }
    Ok(out)
}

/// Aggregate angular speed per frame, with timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedSeries {
    pub times: Vec<f64>,
    pub speeds: Vec<f64>,
}

impl SpeedSeries {
    pub fn len(&self) -> usize {
        self.speeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.speeds.is_empty()
    }
}

fn angle_between(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Per-frame sum over the five segments of the angle turned since the
/// previous frame divided by the frame gap, smoothed by a centered moving
/// average of `smoothing_window` frames. The first frame copies the second.
pub fn angular_speed_series(
    clip: &MotionClip,
    params: &KeyframeParams,
) -> Result<SpeedSeries, MotionError> {
    if clip.len() < 2 {
        return Err(MotionError::TooFewFrames { found: clip.len() });
    }
    let directions: Vec<[Vector3<f64>; 5]> = clip
        .frames()
        .iter()
        .map(segment_directions)
        .collect::<Result<_, _>>()?;
    let mut raw = vec![0.0; clip.len()];
    for i in 1..clip.len() {
        let dt = clip.frames()[i].timestamp() - clip.frames()[i - 1].timestamp();
        let total: f64 = (0..5)
            .map(|s| angle_between(&directions[i - 1][s], &directions[i][s]))
            .sum();
        raw[i] = total / dt;
    }
    raw[0] = raw[1];

    let half = params.smoothing_window / 2;
    let n = raw.len();
    let mut speeds = vec![0.0; n];
    for i in 0..n {
        let lo = i.saturating_sub(half);
        let hi = (i + half).min(n - 1);
        let window = &raw[lo..=hi];
        speeds[i] = window.iter().sum::<f64>() / window.len() as f64;
    }
    Ok(SpeedSeries {
        times: clip.frames().iter().map(|f| f.timestamp()).collect(),
        speeds,
    })
}

/// Key-frame indices: strict-or-plateau local minima at or below the speed
/// threshold (plateaus contribute their center), thinned so that minima
/// closer than `min_keyframe_gap` seconds keep the lower-speed one (earlier
/// on ties), plus the first and last frame.
pub fn detect_keyframes(series: &SpeedSeries, params: &KeyframeParams) -> Vec<usize> {
    let n = series.speeds.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }

    let mut minima = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && series.speeds[j + 1] == series.speeds[i] {
            j += 1;
        }
        // Runs touching either end are covered by the endpoint rule.
        let interior = i > 0 && j < n - 1;
        if interior
            && series.speeds[i - 1] > series.speeds[i]
            && series.speeds[j + 1] > series.speeds[i]
            && series.speeds[i] <= params.minima_speed_threshold
        {
            minima.push((i + j) / 2);
        }
        i = j + 1;
    }

    let mut kept: Vec<usize> = Vec::new();
    'candidates: for &candidate in &minima {
        while let Some(&last) = kept.last() {
            if series.times[candidate] - series.times[last] >= params.min_keyframe_gap {
                break;
            }
            if series.speeds[candidate] < series.speeds[last] {
                kept.pop();
            } else {
                continue 'candidates;
            }
        }
        kept.push(candidate);
    }

    let mut out = vec![0];
    out.extend(kept);
    out.push(n - 1);
    out.sort_unstable();
    out.dedup();
    out
}

/// Full conversion: detect key frames, quantize the five segment directions
/// at each, and emit one score row per key frame. Row durations are the
/// times to the next key frame in seconds; the last row gets
/// `min_keyframe_gap`. Consecutive repeats in a column become holds.
pub fn clip_to_score(
    clip: &MotionClip,
    params: &KeyframeParams,
    codebook: &DirectionCodebook,
) -> Result<LabanScore, MotionError> {
    let series = angular_speed_series(clip, params)?;
    let keyframes = detect_keyframes(&series, params);

    let mut grid: Vec<[DirectionSymbol; 5]> = Vec::with_capacity(keyframes.len());
    for &index in &keyframes {
        let directions = segment_directions(&clip.frames()[index])?;
        let mut symbols = [DirectionSymbol::Hold; 5];
        for (cell, direction) in symbols.iter_mut().zip(&directions) {
            *cell = codebook.quantize(*direction)?;
        }
        grid.push(symbols);
    }

    let mut rows = Vec::with_capacity(keyframes.len());
    for (k, &index) in keyframes.iter().enumerate() {
        let duration = if k + 1 < keyframes.len() {
            series.times[keyframes[k + 1]] - series.times[index]
        } else {
            params.min_keyframe_gap
        };
        let mut symbols = grid[k];
        if k > 0 {
            for column in 0..5 {
                if grid[k][column] == grid[k - 1][column] {
                    symbols[column] = DirectionSymbol::Hold;
                }
            }
        }
        rows.push(ScoreRow {
            symbols,
            duration_beats: duration,
        });
    }
    Ok(LabanScore::new(rows)?)
}

#[derive(Deserialize)]
struct ClipFile {
    #[serde(default)]
    frame_rate: Option<f64>,
    frames: Vec<ClipFrame>,
}

#[derive(Deserialize)]
struct ClipFrame {
    t: f64,
    joints: BTreeMap<String, [f64; 3]>,
}

/// Parses the JSON clip format:
/// `{"frame_rate": 30, "frames": [{"t": 0.0, "joints": {"neck": [x,y,z], ...}}]}`.
pub fn parse_clip_json(text: &str) -> Result<MotionClip, MotionError> {
    let file: ClipFile = serde_json::from_str(text)?;
    let mut frames = Vec::with_capacity(file.frames.len());
    for frame in file.frames {
        let joints = frame
            .joints
            .into_iter()
            .map(|(name, [x, y, z])| (name, Vector3::new(x, y, z)))
            .collect();
        frames.push(SkeletonFrame::new(frame.t, joints)?);
    }
    MotionClip::new(frames, file.frame_rate)
}

/// Parses the CSV clip format: header `t,<joint>.x,<joint>.y,<joint>.z,...`,
/// one row per frame.
pub fn parse_clip_csv(text: &str) -> Result<MotionClip, MotionError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.is_empty() || headers.get(0) != Some("t") {
        return Err(MotionError::ClipFormat(
            "first CSV column must be `t`".to_string(),
        ));
    }
    let mut columns: BTreeMap<String, [Option<usize>; 3]> = BTreeMap::new();
    for (i, header) in headers.iter().enumerate().skip(1) {
        let Some((joint, axis)) = header.rsplit_once('.') else {
            return Err(MotionError::ClipFormat(format!(
                "column `{header}` is not of the form joint.axis"
            )));
        };
        let slot = match axis {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            other => {
                return Err(MotionError::ClipFormat(format!(
                    "column `{header}` has unknown axis `{other}`"
                )));
            }
        };
        columns.entry(joint.to_string()).or_default()[slot] = Some(i);
    }
    for (joint, slots) in &columns {
        if slots.iter().any(|s| s.is_none()) {
            return Err(MotionError::ClipFormat(format!(
                "joint `{joint}` is missing one of its x/y/z columns"
            )));
        }
    }

    let parse_cell = |record: &csv::StringRecord, index: usize, row: usize| -> Result<f64, MotionError> {
        let cell = record.get(index).ok_or_else(|| {
            MotionError::ClipFormat(format!("row {row} is shorter than the header"))
        })?;
        cell.parse().map_err(|_| {
            MotionError::ClipFormat(format!("row {row}: `{cell}` is not a number"))
        })
    };

    let mut frames = Vec::new();
    for (row_no, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = row_no + 2;
        let t = parse_cell(&record, 0, row_no)?;
        let mut joints = BTreeMap::new();
        for (joint, slots) in &columns {
            let x = parse_cell(&record, slots[0].unwrap(), row_no)?;
            let y = parse_cell(&record, slots[1].unwrap(), row_no)?;
            let z = parse_cell(&record, slots[2].unwrap(), row_no)?;
            joints.insert(joint.clone(), Vector3::new(x, y, z));
        }
        frames.push(SkeletonFrame::new(t, joints)?);
    }
    MotionClip::new(frames, None)
}

/// Loads a clip from disk, choosing the parser by file extension
/// (`.csv` for CSV, anything else JSON).
pub fn load_clip(path: impl AsRef<Path>) -> Result<MotionClip, MotionError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        parse_clip_csv(&text)
    } else {
        parse_clip_json(&text)
    }
}

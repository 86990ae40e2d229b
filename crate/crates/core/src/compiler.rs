//! Score-to-trajectory compilation: decompose each key pose into joint
//! angles for a concrete robot profile, clamp to limits, time the keyframes,
//! and stretch intervals that would exceed joint velocity limits.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::codebook::{CodebookError, DirectionCodebook};
use crate::score::{BodyColumn, LabanScore};
use crate::symbol::DirectionSymbol;

/// Clamp size above which strict-mode compilation fails.
pub const STRICT_CLAMP_TOLERANCE: f64 = 0.15;

/// Default wall-clock length of one score beat.
pub const DEFAULT_SECONDS_PER_BEAT: f64 = 0.5;

const EPS: f64 = 1e-9;

/// One joint's limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointLimit {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub max_velocity: f64,
}

/// The joints realizing one arm, by name. Only the shoulder pair is
/// required; missing elbow joints trigger the DOF-mismatch rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmChain {
    pub shoulder_pitch: String,
    pub shoulder_roll: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elbow_pitch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elbow_yaw: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arms {
    pub left: ArmChain,
    pub right: ArmChain,
}

/// The joints realizing the head. Without a yaw joint the head target's
/// azimuth is discarded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeadChain {
    pub neck_pitch: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neck_yaw: Option<String>,
}

/// Error raised while loading or validating a robot profile.
#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error("failed to read profile: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse profile JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("joint `{joint}` has min {min} not below max {max}")]
    BadLimits { joint: String, min: f64, max: f64 },
    #[error("joint `{joint}` has non-positive max velocity {value}")]
    BadVelocity { joint: String, value: f64 },
    #[error("joint `{0}` is declared more than once")]
    DuplicateJoint(String),
    #[error("chain references undeclared joint `{0}`")]
    UnknownChainJoint(String),
    #[error("rest pose is missing joint `{0}`")]
    MissingRestAngle(String),
    #[error("rest pose references undeclared joint `{0}`")]
    UnknownRestJoint(String),
    #[error("rest angle {angle} for `{joint}` is outside [{min}, {max}]")]
    RestOutsideLimits {
        joint: String,
        angle: f64,
        min: f64,
        max: f64,
    },
}

/// A robot's joints, kinematic chains, limits, and rest pose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotProfile {
    pub name: String,
    pub joints: Vec<JointLimit>,
    pub arms: Arms,
    pub head: HeadChain,
    pub rest_pose: BTreeMap<String, f64>,
}

const PROFILE_FULL_JSON: &str = include_str!("../data/profile_full.json");
const PROFILE_COMPACT_JSON: &str = include_str!("../data/profile_compact.json");

impl RobotProfile {
    pub fn from_json(text: &str) -> Result<Self, ProfileError> {
        let profile: RobotProfile = serde_json::from_str(text)?;
        profile.validate()?;
        Ok(profile)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ProfileError> {
        let text = std::fs::read_to_string(path)?;
        RobotProfile::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("profile serializes");
        text.push('\n');
        text
    }

    /// The two profiles shipped with the toolkit: `humanoid-full` (elbow and
    /// neck yaw present) and `humanoid-compact` (yaw joints absent).
    pub fn builtin_names() -> [&'static str; 2] {
        ["humanoid-full", "humanoid-compact"]
    }

    pub fn builtin(name: &str) -> Option<RobotProfile> {
        let text = match name {
            "humanoid-full" => PROFILE_FULL_JSON,
            "humanoid-compact" => PROFILE_COMPACT_JSON,
            _ => return None,
        };
        Some(RobotProfile::from_json(text).expect("builtin profiles are valid"))
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        let mut names = std::collections::HashSet::new();
        for joint in &self.joints {
            if !names.insert(joint.name.as_str()) {
                return Err(ProfileError::DuplicateJoint(joint.name.clone()));
            }
            if !(joint.min.is_finite() && joint.max.is_finite()) || joint.min >= joint.max {
                return Err(ProfileError::BadLimits {
                    joint: joint.name.clone(),
                    min: joint.min,
                    max: joint.max,
                });
            }
            if !joint.max_velocity.is_finite() || joint.max_velocity <= 0.0 {
                return Err(ProfileError::BadVelocity {
                    joint: joint.name.clone(),
                    value: joint.max_velocity,
                });
            }
        }
        let mut chain_joints: Vec<&String> = vec![
            &self.arms.left.shoulder_pitch,
            &self.arms.left.shoulder_roll,
            &self.arms.right.shoulder_pitch,
            &self.arms.right.shoulder_roll,
            &self.head.neck_pitch,
        ];
        for optional in [
            &self.arms.left.elbow_pitch,
            &self.arms.left.elbow_yaw,
            &self.arms.right.elbow_pitch,
            &self.arms.right.elbow_yaw,
            &self.head.neck_yaw,
        ]
        .into_iter()
        .flatten()
        {
            chain_joints.push(optional);
        }
        for joint in chain_joints {
            if !names.contains(joint.as_str()) {
                return Err(ProfileError::UnknownChainJoint(joint.clone()));
            }
        }
        for joint in &self.joints {
            let Some(&angle) = self.rest_pose.get(&joint.name) else {
                return Err(ProfileError::MissingRestAngle(joint.name.clone()));
            };
            if angle < joint.min || angle > joint.max {
                return Err(ProfileError::RestOutsideLimits {
                    joint: joint.name.clone(),
                    angle,
                    min: joint.min,
                    max: joint.max,
                });
            }
        }
        for name in self.rest_pose.keys() {
            if !names.contains(name.as_str()) {
                return Err(ProfileError::UnknownRestJoint(name.clone()));
            }
        }
        Ok(())
    }

    pub fn limit(&self, joint: &str) -> Option<&JointLimit> {
        self.joints.iter().find(|j| j.name == joint)
    }
}

/// Wall-clock scaling and strictness for compilation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingParams {
    pub seconds_per_beat: f64,
    pub strict: bool,
}

impl Default for TimingParams {
    fn default() -> Self {
        TimingParams {
            seconds_per_beat: DEFAULT_SECONDS_PER_BEAT,
            strict: false,
        }
    }
}

/// Error raised during compilation.
#[derive(Debug, thiserror::Error)]
pub enum CompileError {
    #[error(transparent)]
    Codebook(#[from] CodebookError),
    #[error("row {row} still contains a hold in column {column}; resolve holds first")]
    UnresolvedHold { row: usize, column: BodyColumn },
    #[error("seconds_per_beat must be positive and finite, got {0}")]
    BadTiming(f64),
    #[error(
        "clamping `{joint}` at keyframe {keyframe} from {requested:.4} to {applied:.4} exceeds \
         the strict tolerance of {tolerance} rad"
    )]
    ClampBeyondTolerance {
        keyframe: usize,
        joint: String,
        requested: f64,
        applied: f64,
        tolerance: f64,
    },
    #[error(
        "joint `{joint}` needs {required:.4} rad/s between keyframes {from_keyframe} and \
         {to_keyframe}, above its limit of {max:.4} rad/s"
    )]
    VelocityViolation {
        from_keyframe: usize,
        to_keyframe: usize,
        joint: String,
        required: f64,
        max: f64,
    },
}

/// One angle that had to be clamped to a joint's limits.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampEvent {
    pub joint: String,
    pub requested: f64,
    pub applied: f64,
}

/// One interval that had to be lengthened to respect a velocity limit.
#[derive(Debug, Clone, PartialEq)]
pub struct StretchEvent {
    pub from_keyframe: usize,
    pub joint: String,
    pub nominal_seconds: f64,
    pub stretched_seconds: f64,
}

/// Everything the compiler wants to report besides the trajectory itself.
/// Clamp entries carry the keyframe index they occurred at.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompileDiagnostics {
    pub clamps: Vec<(usize, ClampEvent)>,
    pub stretches: Vec<StretchEvent>,
}

/// Joint angles for one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryKeyframe {
    pub t: f64,
    pub angles: BTreeMap<String, f64>,
}

/// A timed sequence of joint-angle keyframes. Consumers interpolate
/// linearly between consecutive keyframes.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTrajectory {
    keyframes: Vec<TrajectoryKeyframe>,
}

impl JointTrajectory {
    /// Wraps keyframes without checking them; [`validate_trajectory`] is the
    /// checker.
    pub fn from_keyframes(keyframes: Vec<TrajectoryKeyframe>) -> Self {
        JointTrajectory { keyframes }
    }

    pub fn keyframes(&self) -> &[TrajectoryKeyframe] {
        &self.keyframes
    }

    pub fn duration(&self) -> f64 {
        self.keyframes.last().map(|k| k.t).unwrap_or(0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct TrajectoryFile {
    profile: String,
    keyframes: Vec<TrajectoryKeyframe>,
}

/// Serializes a trajectory with the profile it was compiled for.
pub fn trajectory_to_json(profile_name: &str, trajectory: &JointTrajectory) -> String {
    let file = TrajectoryFile {
        profile: profile_name.to_string(),
        keyframes: trajectory.keyframes.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("trajectory serializes");
    text.push('\n');
    text
}

/// Parses a trajectory document, returning the profile name it names.
pub fn trajectory_from_json(text: &str) -> Result<(String, JointTrajectory), serde_json::Error> {
    let file: TrajectoryFile = serde_json::from_str(text)?;
    Ok((
        file.profile,
        JointTrajectory {
            keyframes: file.keyframes,
        },
    ))
}

/// Joint angles for one pose plus any clamping that was needed.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseAngles {
    pub angles: BTreeMap<String, f64>,
    pub clamps: Vec<ClampEvent>,
}

/// The in-plane bend reference for an upper-arm direction: body-forward
/// projected orthogonal to the arm, falling back to body-up when the arm
/// points forward or backward.
fn bend_reference(upper: &Vector3<f64>) -> Vector3<f64> {
    let forward = Vector3::x();
    let projected = forward - forward.dot(upper) * upper;
    if projected.norm() > EPS {
        return projected.normalize();
    }
    let up = Vector3::z();
    (up - up.dot(upper) * upper).normalize()
}

struct AngleSink<'a> {
    profile: &'a RobotProfile,
    angles: BTreeMap<String, f64>,
    clamps: Vec<ClampEvent>,
}

impl AngleSink<'_> {
    fn set(&mut self, joint: &str, requested: f64) {
        let limit = self
            .profile
            .limit(joint)
            .expect("validated chains reference declared joints");
        let applied = requested.clamp(limit.min, limit.max);
        if (applied - requested).abs() > 1e-12 {
            self.clamps.push(ClampEvent {
                joint: joint.to_string(),
                requested,
                applied,
            });
        }
        self.angles.insert(joint.to_string(), applied);
    }
}

/// Decomposes one row of spatial symbols into joint angles for a profile.
///
/// Upper arm: pitch is the angle of the target from straight down in the
/// sagittal projection, roll the lateral elevation (outward positive on both
/// sides), so the rest symbols map to all-zero angles. Lower arm: the target
/// is an absolute body-frame direction; elbow-pitch is the angle between
/// upper and lower targets, elbow-yaw spins the bend plane around the upper
/// arm. Without an elbow-yaw joint the lower target is projected onto the
/// circle reachable in the default bend plane. Head: pitch and yaw from the
/// head target; without neck-yaw the azimuth is discarded and only the
/// sagittal tilt remains. Everything is clamped to limits, and each clamp is
/// reported.
pub fn pose_to_angles(
    symbols: &[DirectionSymbol; 5],
    profile: &RobotProfile,
    codebook: &DirectionCodebook,
) -> Result<PoseAngles, CompileError> {
    for column in BodyColumn::ALL {
        if symbols[column.index()].is_hold() {
            return Err(CompileError::UnresolvedHold { row: 0, column });
        }
    }
    let vector = |column: BodyColumn| -> Result<Vector3<f64>, CompileError> {
        Ok(codebook.vector(symbols[column.index()])?)
    };

    let mut sink = AngleSink {
        profile,
        angles: profile.rest_pose.clone(),
        clamps: Vec::new(),
    };

    for (chain, upper_col, lower_col, outward_sign) in [
        (
            &profile.arms.left,
            BodyColumn::LeftUpperArm,
            BodyColumn::LeftLowerArm,
            1.0,
        ),
        (
            &profile.arms.right,
            BodyColumn::RightUpperArm,
            BodyColumn::RightLowerArm,
            -1.0,
        ),
    ] {
        let upper = vector(upper_col)?;
        let pitch = upper.x.atan2(-upper.z);
        let roll = (outward_sign * upper.y).clamp(-1.0, 1.0).asin();
        sink.set(&chain.shoulder_pitch, pitch);
        sink.set(&chain.shoulder_roll, roll);

        if let Some(elbow_pitch) = &chain.elbow_pitch {
            let lower = vector(lower_col)?;
            let e1 = bend_reference(&upper);
            if let Some(elbow_yaw) = &chain.elbow_yaw {
                let bend = upper.dot(&lower).clamp(-1.0, 1.0).acos();
                let e2 = upper.cross(&e1);
                let p1 = lower.dot(&e1);
                let p2 = lower.dot(&e2);
                let yaw = if p1.hypot(p2) < EPS { 0.0 } else { p2.atan2(p1) };
                sink.set(elbow_pitch, bend);
                sink.set(elbow_yaw, yaw);
            } else {
                // Nearest direction on the reachable in-plane circle.
                let in_plane = lower.dot(&e1).atan2(lower.dot(&upper));
                let bend = if in_plane >= 0.0 {
                    in_plane
                } else if -in_plane <= std::f64::consts::FRAC_PI_2 {
                    0.0
                } else {
                    std::f64::consts::PI
                };
                sink.set(elbow_pitch, bend);
            }
        }
    }

    let head = vector(BodyColumn::Head)?;
    if let Some(neck_yaw) = &profile.head.neck_yaw {
        let horizontal = head.x.hypot(head.y);
        let (pitch, yaw) = if horizontal < EPS {
            (head.z.clamp(-1.0, 1.0).acos(), 0.0)
        } else {
            let mut yaw = head.y.atan2(head.x);
            let mut pitch = head.z.clamp(-1.0, 1.0).acos();
            if yaw > std::f64::consts::FRAC_PI_2 {
                yaw -= std::f64::consts::PI;
                pitch = -pitch;
            } else if yaw < -std::f64::consts::FRAC_PI_2 {
                yaw += std::f64::consts::PI;
                pitch = -pitch;
            }
            (pitch, yaw)
        };
        sink.set(&profile.head.neck_pitch, pitch);
        sink.set(neck_yaw, yaw);
    } else {
        sink.set(&profile.head.neck_pitch, head.x.atan2(head.z));
    }

    Ok(PoseAngles {
        angles: sink.angles,
        clamps: sink.clamps,
    })
}

/// The compiled trajectory plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct CompileOutput {
    pub trajectory: JointTrajectory,
    pub diagnostics: CompileDiagnostics,
}

/// Compiles a score into a joint trajectory.
///
/// The rest pose is prepended at t = 0; each score row then lands at the
/// cumulative row duration times `seconds_per_beat`. Intervals whose joint
/// motion would exceed a velocity limit are stretched to the minimal
/// compliant duration (strict mode errors instead), and strict mode also
/// rejects clamps larger than [`STRICT_CLAMP_TOLERANCE`].
pub fn compile(
    score: &LabanScore,
    profile: &RobotProfile,
    timing: &TimingParams,
    codebook: &DirectionCodebook,
) -> Result<CompileOutput, CompileError> {
    if !timing.seconds_per_beat.is_finite() || timing.seconds_per_beat <= 0.0 {
        return Err(CompileError::BadTiming(timing.seconds_per_beat));
    }
    let resolved = score.resolve_holds();

    let mut poses = vec![PoseAngles {
        angles: profile.rest_pose.clone(),
        clamps: Vec::new(),
    }];
    let mut nominal_gaps = Vec::with_capacity(resolved.len());
    for row in resolved.rows() {
        poses.push(pose_to_angles(&row.symbols, profile, codebook)?);
        nominal_gaps.push(row.duration_beats * timing.seconds_per_beat);
    }

    let mut diagnostics = CompileDiagnostics::default();
    for (keyframe, pose) in poses.iter().enumerate() {
        for clamp in &pose.clamps {
            if timing.strict
                && (clamp.requested - clamp.applied).abs() > STRICT_CLAMP_TOLERANCE
            {
                return Err(CompileError::ClampBeyondTolerance {
                    keyframe,
                    joint: clamp.joint.clone(),
                    requested: clamp.requested,
                    applied: clamp.applied,
                    tolerance: STRICT_CLAMP_TOLERANCE,
                });
            }
            diagnostics.clamps.push((keyframe, clamp.clone()));
        }
    }

    let mut keyframes = vec![TrajectoryKeyframe {
        t: 0.0,
        angles: poses[0].angles.clone(),
    }];
    let mut t = 0.0;
    for (i, nominal) in nominal_gaps.iter().enumerate() {
        let from = &poses[i].angles;
        let to = &poses[i + 1].angles;
        let mut needed = 0.0;
        let mut limiting: Option<&str> = None;
        for joint in &profile.joints {
            let delta = (to[&joint.name] - from[&joint.name]).abs();
            let seconds = delta / joint.max_velocity;
            if seconds > needed {
                needed = seconds;
                limiting = Some(&joint.name);
            }
        }
        let gap = if needed > nominal + 1e-12 {
            let joint = limiting.expect("a positive requirement names a joint").to_string();
            if timing.strict {
                return Err(CompileError::VelocityViolation {
                    from_keyframe: i,
                    to_keyframe: i + 1,
                    joint: joint.clone(),
                    required: needed / nominal * profile.limit(&joint).unwrap().max_velocity,
                    max: profile.limit(&joint).unwrap().max_velocity,
                });
            }
            diagnostics.stretches.push(StretchEvent {
                from_keyframe: i,
                joint,
                nominal_seconds: *nominal,
                stretched_seconds: needed,
            });
            needed
        } else {
            *nominal
        };
        t += gap;
        keyframes.push(TrajectoryKeyframe {
            t,
            angles: poses[i + 1].angles.clone(),
        });
    }

    Ok(CompileOutput {
        trajectory: JointTrajectory { keyframes },
        diagnostics,
    })
}

/// One problem found by [`validate_trajectory`].
#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryViolation {
    Empty,
    StartNotZero {
        t: f64,
    },
    NonMonotonicTime {
        keyframe: usize,
        previous: f64,
        current: f64,
    },
    MissingJoint {
        keyframe: usize,
        joint: String,
    },
    UnknownJoint {
        keyframe: usize,
        joint: String,
    },
    LimitViolation {
        keyframe: usize,
        joint: String,
        angle: f64,
        min: f64,
        max: f64,
    },
    VelocityViolation {
        from_keyframe: usize,
        joint: String,
        velocity: f64,
        max: f64,
    },
}

impl std::fmt::Display for TrajectoryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrajectoryViolation::Empty => write!(f, "trajectory has no keyframes"),
            TrajectoryViolation::StartNotZero { t } => {
                write!(f, "first keyframe starts at {t}, expected 0")
            }
            TrajectoryViolation::NonMonotonicTime {
                keyframe,
                previous,
                current,
            } => write!(
                f,
                "keyframe {keyframe} at t={current} does not advance past t={previous}"
            ),
            TrajectoryViolation::MissingJoint { keyframe, joint } => {
                write!(f, "keyframe {keyframe} is missing joint `{joint}`")
            }
            TrajectoryViolation::UnknownJoint { keyframe, joint } => {
                write!(f, "keyframe {keyframe} names unknown joint `{joint}`")
            }
            TrajectoryViolation::LimitViolation {
                keyframe,
                joint,
                angle,
                min,
                max,
            } => write!(
                f,
                "keyframe {keyframe}: `{joint}` angle {angle} outside [{min}, {max}]"
            ),
            TrajectoryViolation::VelocityViolation {
                from_keyframe,
                joint,
                velocity,
                max,
            } => write!(
                f,
                "interval from keyframe {from_keyframe}: `{joint}` moves at {velocity} rad/s, \
                 above {max}"
            ),
        }
    }
}

/// The outcome of validating a trajectory against a profile.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<TrajectoryViolation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks a trajectory against a profile: time starts at zero and
/// strictly increases, every keyframe covers exactly the profile's joints,
/// all angles are within limits, and no interval exceeds a velocity limit.
pub fn validate_trajectory(
    trajectory: &JointTrajectory,
    profile: &RobotProfile,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let keyframes = trajectory.keyframes();
    if keyframes.is_empty() {
        report.violations.push(TrajectoryViolation::Empty);
        return report;
    }
    if keyframes[0].t.abs() > 1e-12 {
        report
            .violations
            .push(TrajectoryViolation::StartNotZero { t: keyframes[0].t });
    }
    for (k, frame) in keyframes.iter().enumerate() {
        if k > 0 && frame.t <= keyframes[k - 1].t {
            report.violations.push(TrajectoryViolation::NonMonotonicTime {
                keyframe: k,
                previous: keyframes[k - 1].t,
                current: frame.t,
            });
        }
        for joint in &profile.joints {
            match frame.angles.get(&joint.name) {
                None => report.violations.push(TrajectoryViolation::MissingJoint {
                    keyframe: k,
                    joint: joint.name.clone(),
                }),
                Some(&angle) => {
                    if angle < joint.min - 1e-9 || angle > joint.max + 1e-9 {
                        report.violations.push(TrajectoryViolation::LimitViolation {
                            keyframe: k,
                            joint: joint.name.clone(),
                            angle,
                            min: joint.min,
                            max: joint.max,
                        });
                    }
                }
            }
        }
        for name in frame.angles.keys() {
            if profile.limit(name).is_none() {
                report.violations.push(TrajectoryViolation::UnknownJoint {
                    keyframe: k,
                    joint: name.clone(),
                });
            }
        }
    }
    for k in 1..keyframes.len() {
        let dt = keyframes[k].t - keyframes[k - 1].t;
        if dt <= 0.0 {
            continue;
        }
        for joint in &profile.joints {
            let (Some(&a), Some(&b)) = (
                keyframes[k - 1].angles.get(&joint.name),
                keyframes[k].angles.get(&joint.name),
            ) else {
                continue;
            };
            let velocity = (b - a).abs() / dt;
            if velocity > joint.max_velocity * (1.0 + 1e-9) + 1e-12 {
                report.violations.push(TrajectoryViolation::VelocityViolation {
                    from_keyframe: k - 1,
                    joint: joint.name.clone(),
                    velocity,
                    max: joint.max_velocity,
                });
            }
        }
    }
    report
}

//! Direction symbols: the discrete alphabet gesture scores are written in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Horizontal heading of a direction symbol.
///
/// `Place` is the special "straight up or down" heading with no horizontal
/// component; it only combines with [`Level::High`] and [`Level::Low`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Azimuth {
    Place,
    Forward,
    RightForward,
    Right,
    RightBackward,
    Backward,
    LeftBackward,
    Left,
    LeftForward,
}

impl Azimuth {
    pub const ALL: [Azimuth; 9] = [
        Azimuth::Place,
        Azimuth::Forward,
        Azimuth::RightForward,
        Azimuth::Right,
        Azimuth::RightBackward,
        Azimuth::Backward,
        Azimuth::LeftBackward,
        Azimuth::Left,
        Azimuth::LeftForward,
    ];

    /// The eight headings that have a horizontal component, clockwise from forward.
    pub const HORIZONTAL: [Azimuth; 8] = [
        Azimuth::Forward,
        Azimuth::RightForward,
        Azimuth::Right,
        Azimuth::RightBackward,
        Azimuth::Backward,
        Azimuth::LeftBackward,
        Azimuth::Left,
        Azimuth::LeftForward,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Azimuth::Place => "place",
            Azimuth::Forward => "forward",
            Azimuth::RightForward => "right-forward",
            Azimuth::Right => "right",
            Azimuth::RightBackward => "right-backward",
            Azimuth::Backward => "backward",
            Azimuth::LeftBackward => "left-backward",
            Azimuth::Left => "left",
            Azimuth::LeftForward => "left-forward",
        }
    }

    /// Unit heading in the horizontal plane of the body frame (+x forward,
    /// +y left), or `None` for [`Azimuth::Place`].
    pub fn heading(self) -> Option<[f64; 2]> {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Azimuth::Place => None,
            Azimuth::Forward => Some([1.0, 0.0]),
            Azimuth::RightForward => Some([d, -d]),
            Azimuth::Right => Some([0.0, -1.0]),
            Azimuth::RightBackward => Some([-d, -d]),
            Azimuth::Backward => Some([-1.0, 0.0]),
            Azimuth::LeftBackward => Some([-d, d]),
            Azimuth::Left => Some([0.0, 1.0]),
            Azimuth::LeftForward => Some([d, d]),
        }
    }
}

impl fmt::Display for Azimuth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vertical level of a direction symbol: roughly +45 degrees, horizontal,
/// and -45 degrees of elevation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    High,
    Middle,
    Low,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::High, Level::Middle, Level::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::High => "high",
            Level::Middle => "middle",
            Level::Low => "low",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One cell of a gesture score: either a spatial direction for the body part
/// or `Hold`, which repeats whatever the previous row held.
///
/// `(place, middle)` is not a usable direction: it has no defined vector and
/// is rejected everywhere symbols are constructed or parsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DirectionSymbol {
    Hold,
    Spatial { azimuth: Azimuth, level: Level },
}

/// Error raised when a name or azimuth/level combination does not denote a
/// valid direction symbol.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("unknown direction symbol `{0}`")]
    UnknownName(String),
    #[error("`place-middle` is reserved and cannot be used as a direction")]
    ReservedPlaceMiddle,
}

impl DirectionSymbol {
    /// Builds a spatial symbol, rejecting the reserved `(place, middle)` cell.
    pub fn spatial(azimuth: Azimuth, level: Level) -> Result<Self, SymbolError> {
        if azimuth == Azimuth::Place && level == Level::Middle {
            return Err(SymbolError::ReservedPlaceMiddle);
        }
        Ok(DirectionSymbol::Spatial { azimuth, level })
    }

    pub fn is_hold(self) -> bool {
        matches!(self, DirectionSymbol::Hold)
    }

    pub fn azimuth(self) -> Option<Azimuth> {
        match self {
            DirectionSymbol::Hold => None,
            DirectionSymbol::Spatial { azimuth, .. } => Some(azimuth),
        }
    }

    pub fn level(self) -> Option<Level> {
        match self {
            DirectionSymbol::Hold => None,
            DirectionSymbol::Spatial { level, .. } => Some(level),
        }
    }

    /// The 26 spatial symbols in canonical order: `place-high`, the eight
    /// horizontal azimuths at high/middle/low, then `place-low`.
    pub fn spatial_alphabet() -> Vec<DirectionSymbol> {
        let mut out = Vec::with_capacity(26);
        out.push(DirectionSymbol::Spatial {
            azimuth: Azimuth::Place,
            level: Level::High,
        });
        for azimuth in Azimuth::HORIZONTAL {
            for level in Level::ALL {
                out.push(DirectionSymbol::Spatial { azimuth, level });
            }
        }
        out.push(DirectionSymbol::Spatial {
            azimuth: Azimuth::Place,
            level: Level::Low,
        });
        out
    }
}

impl fmt::Display for DirectionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionSymbol::Hold => f.write_str("hold"),
            DirectionSymbol::Spatial { azimuth, level } => {
                write!(f, "{}-{}", azimuth.as_str(), level.as_str())
            }
        }
    }
}

impl FromStr for DirectionSymbol {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "hold" {
            return Ok(DirectionSymbol::Hold);
        }
        let (azimuth_part, level_part) = s
            .rsplit_once('-')
            .ok_or_else(|| SymbolError::UnknownName(s.to_string()))?;
        let azimuth = Azimuth::ALL
            .into_iter()
            .find(|a| a.as_str() == azimuth_part)
            .ok_or_else(|| SymbolError::UnknownName(s.to_string()))?;
        let level = Level::ALL
            .into_iter()
            .find(|l| l.as_str() == level_part)
            .ok_or_else(|| SymbolError::UnknownName(s.to_string()))?;
        DirectionSymbol::spatial(azimuth, level)
    }
}

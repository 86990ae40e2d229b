//! Direction codebook: the mapping between spatial symbols and unit vectors
//! on the sphere, plus quantization and the angular distance between symbols.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::symbol::{Azimuth, DirectionSymbol, Level, SymbolError};

const UNIT_TOLERANCE: f64 = 1e-9;

/// Error raised while building, loading, or querying a codebook.
#[derive(Debug, thiserror::Error)]
pub enum CodebookError {
    #[error("codebook must contain at least one entry")]
    Empty,
    #[error("codebook entry {index} ({symbol}) is not unit length (|v| = {norm})")]
    NotUnitLength {
        index: usize,
        symbol: DirectionSymbol,
        norm: f64,
    },
    #[error("codebook lists {symbol} more than once")]
    DuplicateSymbol { symbol: DirectionSymbol },
    #[error("hold is not a spatial direction and cannot appear in a codebook")]
    HoldEntry,
    #[error("symbol {symbol} is not in codebook `{codebook}`")]
    SymbolNotInCodebook {
        symbol: DirectionSymbol,
        codebook: String,
    },
    #[error("cannot quantize a zero-length or non-finite vector")]
    DegenerateVector,
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("failed to read codebook file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse codebook JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// One codebook row: a spatial symbol and its unit vector in the body frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CodebookEntry {
    pub symbol: DirectionSymbol,
    pub vector: Vector3<f64>,
}

/// An ordered table of spatial symbols and their unit vectors.
///
/// Order matters: quantization resolves ties in favour of the earliest entry,
/// so two codebooks with the same entries in different orders are different
/// codebooks.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionCodebook {
    name: String,
    entries: Vec<CodebookEntry>,
    index: HashMap<DirectionSymbol, usize>,
}

#[derive(Serialize, Deserialize)]
struct CodebookFile {
    name: String,
    entries: Vec<CodebookFileEntry>,
}

#[derive(Serialize, Deserialize)]
struct CodebookFileEntry {
    azimuth: Azimuth,
    level: Level,
    vector: [f64; 3],
}

impl DirectionCodebook {
    /// Builds a codebook from entries, validating unit length and uniqueness.
    pub fn new(name: impl Into<String>, entries: Vec<CodebookEntry>) -> Result<Self, CodebookError> {
        if entries.is_empty() {
            return Err(CodebookError::Empty);
        }
        let mut index = HashMap::with_capacity(entries.len());
        for (i, entry) in entries.iter().enumerate() {
            if entry.symbol.is_hold() {
                return Err(CodebookError::HoldEntry);
            }
            let norm = entry.vector.norm();
            if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
                return Err(CodebookError::NotUnitLength {
                    index: i,
                    symbol: entry.symbol,
                    norm,
                });
            }
            if index.insert(entry.symbol, i).is_some() {
                return Err(CodebookError::DuplicateSymbol {
                    symbol: entry.symbol,
                });
            }
        }
        Ok(DirectionCodebook {
            name: name.into(),
            entries,
            index,
        })
    }

    /// The default 26-direction codebook: eight azimuths at three levels
    /// (+45, 0, -45 degrees of elevation) plus straight up and straight down.
    pub fn default_labanotation() -> Self {
        let d = std::f64::consts::FRAC_1_SQRT_2;
        let mut entries = Vec::with_capacity(26);
        for symbol in DirectionSymbol::spatial_alphabet() {
            let azimuth = symbol.azimuth().expect("alphabet has no hold");
            let level = symbol.level().expect("alphabet has no hold");
            let vector = match azimuth.heading() {
                None => match level {
                    Level::High => Vector3::new(0.0, 0.0, 1.0),
                    Level::Low => Vector3::new(0.0, 0.0, -1.0),
                    Level::Middle => unreachable!("alphabet excludes place-middle"),
                },
                Some([hx, hy]) => match level {
                    Level::High => Vector3::new(hx * d, hy * d, d),
                    Level::Middle => Vector3::new(hx, hy, 0.0),
                    Level::Low => Vector3::new(hx * d, hy * d, -d),
                },
            };
            entries.push(CodebookEntry { symbol, vector });
        }
        DirectionCodebook::new("laban-26", entries).expect("default codebook is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entries(&self) -> &[CodebookEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, symbol: DirectionSymbol) -> bool {
        self.index.contains_key(&symbol)
    }

    /// The unit vector a spatial symbol stands for.
    pub fn vector(&self, symbol: DirectionSymbol) -> Result<Vector3<f64>, CodebookError> {
        self.index
            .get(&symbol)
            .map(|&i| self.entries[i].vector)
            .ok_or_else(|| CodebookError::SymbolNotInCodebook {
                symbol,
                codebook: self.name.clone(),
            })
    }

    /// Maps an arbitrary direction to the codebook symbol whose vector is
    /// closest in angle. Ties go to the earliest entry.
    pub fn quantize(&self, direction: Vector3<f64>) -> Result<DirectionSymbol, CodebookError> {
        let norm = direction.norm();
        if !norm.is_finite() || norm < UNIT_TOLERANCE {
            return Err(CodebookError::DegenerateVector);
        }
        let unit = direction / norm;
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (i, entry) in self.entries.iter().enumerate() {
            let dot = unit.dot(&entry.vector);
            if dot > best_dot {
                best = i;
                best_dot = dot;
            }
        }
        Ok(self.entries[best].symbol)
    }

    /// Angle in radians between two spatial symbols' vectors.
    ///
    /// Identical symbols are exactly zero; everything else is
    /// `acos` of the (clamped) dot product, so the result lies in `[0, pi]`
    /// and is symmetric in its arguments.
    pub fn geodesic_distance(
        &self,
        a: DirectionSymbol,
        b: DirectionSymbol,
    ) -> Result<f64, CodebookError> {
        let va = self.vector(a)?;
        let vb = self.vector(b)?;
        if a == b {
            return Ok(0.0);
        }
        Ok(va.dot(&vb).clamp(-1.0, 1.0).acos())
    }

    /// Reads a codebook from JSON text.
    pub fn from_json(text: &str) -> Result<Self, CodebookError> {
        let file: CodebookFile = serde_json::from_str(text)?;
        let mut entries = Vec::with_capacity(file.entries.len());
        for e in file.entries {
            entries.push(CodebookEntry {
                symbol: DirectionSymbol::spatial(e.azimuth, e.level)?,
                vector: Vector3::new(e.vector[0], e.vector[1], e.vector[2]),
            });
        }
        DirectionCodebook::new(file.name, entries)
    }

    /// Reads a codebook from a JSON file on disk.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CodebookError> {
        let text = std::fs::read_to_string(path)?;
        DirectionCodebook::from_json(&text)
    }

    /// Serializes the codebook as JSON.
    pub fn to_json(&self) -> String {
        let file = CodebookFile {
            name: self.name.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| CodebookFileEntry {
                    azimuth: e.symbol.azimuth().expect("entries are spatial"),
                    level: e.symbol.level().expect("entries are spatial"),
                    vector: [e.vector.x, e.vector.y, e.vector.z],
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("codebook serializes");
        text.push('\n');
        text
    }
}

impl fmt::Display for DirectionCodebook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} directions)", self.name, self.entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn default() -> DirectionCodebook {
        DirectionCodebook::default_labanotation()
    }

    fn symbol(name: &str) -> DirectionSymbol {
        name.parse().unwrap()
    }

    #[test]
    fn default_codebook_has_26_unit_entries() {
        let cb = default();
        assert_eq!(cb.len(), 26);
        for entry in cb.entries() {
            assert!((entry.vector.norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(cb.vector(symbol("place-high")).unwrap(), Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(cb.vector(symbol("place-low")).unwrap(), Vector3::new(0.0, 0.0, -1.0));
        assert_eq!(cb.vector(symbol("forward-middle")).unwrap(), Vector3::new(1.0, 0.0, 0.0));
        assert_eq!(cb.vector(symbol("left-middle")).unwrap(), Vector3::new(0.0, 1.0, 0.0));
        let fh = cb.vector(symbol("forward-high")).unwrap();
        assert!((fh.z - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(fh.x > 0.0 && fh.y.abs() < 1e-15);
    }

    #[test]
    fn quantize_recovers_every_codebook_vector() {
        let cb = default();
        for entry in cb.entries() {
            assert_eq!(cb.quantize(entry.vector).unwrap(), entry.symbol);
            assert_eq!(cb.quantize(entry.vector * 3.5).unwrap(), entry.symbol);
        }
    }

    #[test]
    fn quantize_matches_brute_force_nearest_angle() {
        let cb = default();
        let dirs = [
            Vector3::new(0.866, 0.0, 0.5),
            Vector3::new(0.1, 0.2, 0.97),
            Vector3::new(-0.5, -0.5, -0.1),
            Vector3::new(0.0, 0.001, -1.0),
            Vector3::new(1.0, 1.0, 1.0),
        ];
        for dir in dirs {
            let unit = dir.normalize();
            let expected = cb
                .entries()
                .iter()
                .min_by(|a, b| {
                    let da = unit.dot(&a.vector).clamp(-1.0, 1.0).acos();
                    let db = unit.dot(&b.vector).clamp(-1.0, 1.0).acos();
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap()
                .symbol;
            assert_eq!(cb.quantize(dir).unwrap(), expected, "direction {dir:?}");
        }
        assert_eq!(cb.quantize(Vector3::new(0.866, 0.0, 0.5)).unwrap(), symbol("forward-high"));
    }

    #[test]
    fn quantize_ties_pick_earliest_entry() {
        // On a codebook where two entries score bit-identical dot products,
        // the earlier entry wins.
        let tie = DirectionCodebook::new(
            "tie",
            vec![
                CodebookEntry {
                    symbol: symbol("forward-middle"),
                    vector: Vector3::new(1.0, 0.0, 0.0),
                },
                CodebookEntry {
                    symbol: symbol("left-middle"),
                    vector: Vector3::new(0.0, 1.0, 0.0),
                },
            ],
        )
        .unwrap();
        let between = Vector3::new(0.6, 0.6, 0.0);
        assert_eq!(tie.quantize(between).unwrap(), symbol("forward-middle"));

        // The midpoint of forward and right is itself a codebook azimuth.
        let cb = default();
        assert_eq!(
            cb.quantize(Vector3::new(1.0, -1.0, 0.0)).unwrap(),
            symbol("right-forward-middle")
        );
        assert!(cb.quantize(Vector3::zeros()).is_err());
        assert!(cb.quantize(Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
    }

    #[test]
    fn geodesic_distance_known_angles() {
        let cb = default();
        let d = |a: &str, b: &str| cb.geodesic_distance(symbol(a), symbol(b)).unwrap();
        assert_eq!(d("forward-middle", "forward-middle"), 0.0);
        assert!((d("place-high", "place-low") - std::f64::consts::PI).abs() < 1e-12);
        assert!((d("forward-middle", "left-middle") - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((d("forward-middle", "forward-high") - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((d("forward-middle", "backward-middle") - std::f64::consts::PI).abs() < 1e-12);
        // 45 degrees of azimuth at middle level.
        assert!((d("forward-middle", "right-forward-middle") - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn geodesic_distance_is_a_metric_on_the_alphabet() {
        let cb = default();
        let alphabet = DirectionSymbol::spatial_alphabet();
        for &a in &alphabet {
            for &b in &alphabet {
                let dab = cb.geodesic_distance(a, b).unwrap();
                let dba = cb.geodesic_distance(b, a).unwrap();
                assert_eq!(dab, dba);
                assert!(dab >= 0.0 && dab <= std::f64::consts::PI + 1e-15);
                assert_eq!(dab == 0.0, a == b);
                for &c in &alphabet {
                    let dac = cb.geodesic_distance(a, c).unwrap();
                    let dbc = cb.geodesic_distance(b, c).unwrap();
                    assert!(
                        dac <= dab + dbc + 1e-12,
                        "triangle inequality failed for {a} {b} {c}: {dac} > {dab} + {dbc}"
                    );
                }
            }
        }
    }

    #[test]
    fn missing_symbol_reports_codebook_name() {
        let cb = DirectionCodebook::new(
            "tiny",
            vec![CodebookEntry {
                symbol: symbol("forward-middle"),
                vector: Vector3::new(1.0, 0.0, 0.0),
            }],
        )
        .unwrap();
        let err = cb.geodesic_distance(symbol("forward-middle"), symbol("left-middle"));
        match err {
            Err(CodebookError::SymbolNotInCodebook { symbol: s, codebook }) => {
                assert_eq!(s, symbol("left-middle"));
                assert_eq!(codebook, "tiny");
            }
            other => panic!("expected missing-symbol error, got {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_bad_entries() {
        assert!(matches!(
            DirectionCodebook::new("empty", vec![]),
            Err(CodebookError::Empty)
        ));
        let not_unit = DirectionCodebook::new(
            "bad",
            vec![CodebookEntry {
                symbol: symbol("forward-middle"),
                vector: Vector3::new(2.0, 0.0, 0.0),
            }],
        );
        assert!(matches!(not_unit, Err(CodebookError::NotUnitLength { .. })));
        let dup = DirectionCodebook::new(
            "dup",
            vec![
                CodebookEntry {
                    symbol: symbol("forward-middle"),
                    vector: Vector3::new(1.0, 0.0, 0.0),
                },
                CodebookEntry {
                    symbol: symbol("forward-middle"),
                    vector: Vector3::new(0.0, 1.0, 0.0),
                },
            ],
        );
        assert!(matches!(dup, Err(CodebookError::DuplicateSymbol { .. })));
        let hold = DirectionCodebook::new(
            "hold",
            vec![CodebookEntry {
                symbol: DirectionSymbol::Hold,
                vector: Vector3::new(1.0, 0.0, 0.0),
            }],
        );
        assert!(matches!(hold, Err(CodebookError::HoldEntry)));
    }

    #[test]
    fn json_round_trip_preserves_codebook() {
        let cb = default();
        let text = cb.to_json();
        let parsed = DirectionCodebook::from_json(&text).unwrap();
        assert_eq!(parsed, cb);
    }

    #[test]
    fn json_rejects_place_middle_and_bad_vectors() {
        let bad_symbol = r#"{"name":"x","entries":[{"azimuth":"place","level":"middle","vector":[0,1,0]}]}"#;
        assert!(matches!(
            DirectionCodebook::from_json(bad_symbol),
            Err(CodebookError::Symbol(SymbolError::ReservedPlaceMiddle))
        ));
        let bad_vector = r#"{"name":"x","entries":[{"azimuth":"forward","level":"middle","vector":[0.5,0,0]}]}"#;
        assert!(matches!(
            DirectionCodebook::from_json(bad_vector),
            Err(CodebookError::NotUnitLength { .. })
        ));
    }

    proptest! {
        #[test]
        fn quantize_is_argmin_of_geodesic_distance(
            x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
        ) {
            let dir = Vector3::new(x, y, z);
            prop_assume!(dir.norm() > 1e-3);
            let cb = default();
            let unit = dir.normalize();
            let picked = cb.quantize(dir).unwrap();
            let picked_angle = unit.dot(&cb.vector(picked).unwrap()).clamp(-1.0, 1.0).acos();
            for entry in cb.entries() {
                let angle = unit.dot(&entry.vector).clamp(-1.0, 1.0).acos();
                prop_assert!(picked_angle <= angle + 1e-12);
            }
        }

        #[test]
        fn quantize_is_scale_invariant(
            x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
            scale in 0.01f64..100.0,
        ) {
            let dir = Vector3::new(x, y, z);
            prop_assume!(dir.norm() > 1e-3);
            let cb = default();
            prop_assert_eq!(cb.quantize(dir).unwrap(), cb.quantize(dir * scale).unwrap());
        }
    }
}

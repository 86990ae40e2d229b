//! The gesture library shipped with the toolkit: 32 general concepts, the
//! four pointing words, one question gesture, and one beat gesture. Word
//! lists keep multi-word phrases as single entries; scores are authored and
//! tagged `source: authored`.

use crate::io::ScoreDocument;
use crate::library::{GestureCategory, GestureConceptPair, GestureLibrary};
use crate::score::{LabanScore, ScoreRow};

const REST: [&str; 5] = ["place-low", "place-low", "place-low", "place-low", "place-high"];

fn doc(name: &str, rows: &[(f64, [&str; 5])]) -> ScoreDocument {
    let rows = rows
        .iter()
        .map(|(duration, symbols)| ScoreRow {
            symbols: symbols.map(|s| s.parse().expect("seed symbols are valid")),
            duration_beats: *duration,
        })
        .collect();
    ScoreDocument {
        score: LabanScore::new(rows).expect("seed scores are valid"),
        name: Some(name.to_string()),
        source: Some("authored".to_string()),
        bpm: None,
    }
}

fn pair(
    concept: &str,
    category: GestureCategory,
    words: &[&str],
    rows: &[(f64, [&str; 5])],
) -> GestureConceptPair {
    GestureConceptPair {
        concept: concept.to_string(),
        category,
        words: words.iter().map(|w| w.to_string()).collect(),
        score: doc(concept, rows),
        variants: Vec::new(),
    }
}

fn general(concept: &str, words: &[&str], rows: &[(f64, [&str; 5])]) -> GestureConceptPair {
    pair(concept, GestureCategory::General, words, rows)
}

/// Builds the shipped 38-pair library.
pub fn seed_library() -> GestureLibrary {
    let pairs = vec![
        general(
            "away",
            &["away", "hurry up", "go out"],
            &[
                (1.0, REST),
                (1.0, ["place-low", "place-low", "forward-middle", "forward-low", "place-high"]),
                (1.0, ["place-low", "place-low", "right-middle", "right-low", "right-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "bad",
            &["bad", "busy", "boring", "unusual"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "forward-middle", "forward-low", "left-high"]),
                (0.5, ["place-low", "place-low", "forward-low", "forward-low", "left-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "big",
            &["big", "large", "huge"],
            &[
                (1.0, REST),
                (1.0, ["forward-middle", "forward-low", "forward-middle", "forward-low", "place-high"]),
                (1.5, ["left-middle", "left-middle", "right-middle", "right-middle", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "call",
            &["call", "phone", "ring"],
            &[
                (1.0, REST),
                (2.0, ["place-low", "place-low", "place-high", "right-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "calm",
            &["calm", "relax", "easy", "gentle"],
            &[
                (1.0, REST),
                (0.5, ["forward-middle", "forward-low", "forward-middle", "forward-low", "place-high"]),
                (0.5, ["forward-low", "forward-low", "forward-low", "forward-low", "place-high"]),
                (0.5, ["forward-middle", "hold", "forward-middle", "hold", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "cold",
            &["cold", "freezing", "chilly", "brr"],
            &[
                (1.0, REST),
                (2.0, ["right-forward-middle", "forward-low", "left-forward-middle", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "dance",
            &["dance", "party", "groove"],
            &[
                (1.0, REST),
                (0.5, ["left-high", "left-middle", "place-low", "place-low", "place-high"]),
                (0.5, ["place-low", "place-low", "right-high", "right-middle", "place-high"]),
                (0.5, ["left-high", "left-middle", "place-low", "place-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "drink",
            &["drink", "water", "thirsty", "cheers"],
            &[
                (1.0, REST),
                (1.0, ["place-low", "place-low", "forward-high", "forward-low", "place-high"]),
                (1.0, ["place-low", "place-low", "place-high", "forward-low", "backward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "eat",
            &["eat", "food", "meal", "lunch", "dinner"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "left-forward-high", "forward-low", "forward-high"]),
                (0.5, ["place-low", "place-low", "forward-middle", "forward-low", "forward-high"]),
                (0.5, ["place-low", "place-low", "left-forward-high", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "far",
            &["far", "distant", "beyond"],
            &[
                (1.0, REST),
                (2.0, ["place-low", "place-low", "forward-high", "forward-high", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "give",
            &["give", "offer", "hand over"],
            &[
                (1.0, REST),
                (1.0, ["place-high", "forward-low", "place-high", "forward-low", "place-high"]),
                (1.0, ["forward-middle", "forward-middle", "forward-middle", "forward-middle", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "goodbye",
            &["goodbye", "bye", "farewell", "see ya"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "place-high", "right-middle", "place-high"]),
                (0.5, ["place-low", "place-low", "right-high", "right-middle", "place-high"]),
                (0.5, ["place-low", "place-low", "place-high", "right-middle", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "happy",
            &["happy", "glad", "joy", "delighted"],
            &[
                (1.0, REST),
                (1.5, ["left-high", "left-forward-high", "right-high", "right-forward-high", "backward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "hello",
            &["hello", "hi", "hey", "greetings", "welcome"],
            &[
                (1.0, REST),
                (2.0, ["place-low", "place-low", "place-high", "right-forward-high", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "hot",
            &["hot", "warm", "boiling"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "forward-high", "forward-low", "place-high"]),
                (0.5, ["place-low", "place-low", "right-forward-high", "forward-low", "place-high"]),
                (0.5, ["place-low", "place-low", "forward-high", "forward-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "hungry",
            &["hungry", "starving"],
            &[
                (1.0, REST),
                (1.0, ["right-forward-low", "forward-low", "left-forward-low", "forward-low", "forward-high"]),
                (1.0, ["forward-low", "forward-low", "forward-low", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "look",
            &["look", "watch", "see", "observe"],
            &[
                (1.0, REST),
                (2.0, ["place-low", "place-low", "left-forward-high", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "me",
            &["me", "myself", "mine"],
            &[
                (1.0, REST),
                (2.0, ["place-low", "place-low", "left-forward-middle", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "music",
            &["music", "song", "melody", "tune"],
            &[
                (1.0, REST),
                (1.0, ["left-middle", "left-low", "left-forward-middle", "left-forward-low", "left-high"]),
                (1.0, ["right-forward-middle", "right-forward-low", "right-middle", "right-low", "right-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "nod",
            &["no", "yes", "come", "i will", "whenever", "strong", "ok"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "forward-high"]),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "forward-middle"]),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "panic",
            &["panic", "pass out", "ouch"],
            &[
                (1.0, REST),
                (0.5, ["place-high", "forward-high", "place-high", "forward-high", "backward-high"]),
                (1.0, ["hold", "hold", "hold", "hold", "backward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "please",
            &[
                "please",
                "go ahead",
                "would you",
                "could you",
                "will you",
                "take care",
                "clean up",
                "i'd like",
            ],
            &[
                (1.0, REST),
                (1.0, ["forward-middle", "forward-low", "forward-middle", "forward-low", "forward-high"]),
                (1.5, ["hold", "hold", "hold", "hold", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "quit",
            &["quit", "knife", "stop", "off"],
            &[
                (1.0, REST),
                (1.0, ["right-forward-middle", "forward-low", "left-forward-middle", "forward-low", "place-high"]),
                (1.0, ["left-middle", "left-low", "right-middle", "right-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "say",
            &["say", "said", "talk", "request"],
            &[
                (1.0, REST),
                (1.0, ["place-low", "place-low", "place-high", "forward-low", "place-high"]),
                (1.0, ["place-low", "place-low", "forward-high", "forward-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "shake_head",
            &["no", "so", "cannot", "back", "get drunkn", "cannot keep", "tone-deaf"],
            &[
                (1.0, REST),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "left-high"]),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "right-high"]),
                (0.5, ["place-low", "place-low", "place-low", "place-low", "left-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "sleepy",
            &["sleepy", "sleep", "asleep", "yawn"],
            &[
                (1.0, REST),
                (2.0, ["left-forward-high", "left-forward-low", "left-forward-high", "forward-low", "left-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "small",
            &["small", "out of dish"],
            &[
                (1.0, REST),
                (1.5, ["right-forward-high", "forward-low", "left-forward-high", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "sorry",
            &["sorry", "check"],
            &[
                (1.0, REST),
                (2.0, ["forward-low", "forward-low", "forward-low", "forward-low", "forward-middle"]),
                (1.0, REST),
            ],
        ),
        general(
            "surprise",
            &["surprise", "mess", "waste"],
            &[
                (1.0, REST),
                (0.5, ["left-forward-high", "left-low", "right-forward-high", "right-low", "backward-high"]),
                (1.0, ["hold", "hold", "hold", "hold", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "thanks",
            &["thank", "thanks"],
            &[
                (1.0, REST),
                (1.0, ["place-low", "place-low", "left-forward-high", "forward-low", "forward-high"]),
                (1.0, ["place-low", "place-low", "forward-middle", "forward-low", "place-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "tired",
            &["tired", "lie down", "drunkn", "tipsy", "loaded", "not feelin"],
            &[
                (1.0, REST),
                (2.0, ["left-low", "left-low", "right-low", "right-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        general(
            "weather",
            &["weather", "sunny", "cloudy", "windy", "rainy", "nice day"],
            &[
                (1.0, REST),
                (1.0, ["place-low", "place-low", "left-forward-high", "left-forward-middle", "place-high"]),
                (1.0, ["place-low", "place-low", "place-high", "forward-high", "place-high"]),
                (1.0, ["place-low", "place-low", "right-forward-high", "right-forward-middle", "place-high"]),
                (1.0, REST),
            ],
        ),
        pair(
            "this",
            GestureCategory::Deictic,
            &["this"],
            &[
                (1.0, REST),
                (1.5, ["place-low", "place-low", "forward-low", "forward-low", "forward-high"]),
                (1.0, REST),
            ],
        ),
        pair(
            "that",
            GestureCategory::Deictic,
            &["that"],
            &[
                (1.0, REST),
                (1.5, ["place-low", "place-low", "forward-middle", "forward-middle", "forward-high"]),
                (1.0, REST),
            ],
        ),
        pair(
            "here",
            GestureCategory::Deictic,
            &["here"],
            &[
                (1.0, REST),
                (1.5, ["place-low", "place-low", "forward-low", "place-low", "forward-middle"]),
                (1.0, REST),
            ],
        ),
        pair(
            "there",
            GestureCategory::Deictic,
            &["there"],
            &[
                (1.0, REST),
                (1.5, ["place-low", "place-low", "right-forward-middle", "right-forward-middle", "right-forward-high"]),
                (1.0, REST),
            ],
        ),
        pair(
            "question",
            GestureCategory::Question,
            &["question"],
            &[
                (1.0, REST),
                (1.5, ["left-forward-high", "left-low", "right-forward-high", "right-low", "left-high"]),
                (1.0, REST),
            ],
        ),
        pair(
            "beat",
            GestureCategory::Beat,
            &["beat"],
            &[
                (1.0, REST),
                (0.5, ["forward-low", "place-low", "forward-low", "place-low", "place-high"]),
                (1.0, REST),
            ],
        ),
    ];
    GestureLibrary::new("laban-26", pairs).expect("seed library is valid")
}

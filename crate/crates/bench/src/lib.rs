//! Deterministic input generators shared by the benchmarks.

use labanimate_core::{DirectionSymbol, LabanScore, ScoreRow};

/// Builds `count` scores of `rows` rows each, cycling the spatial alphabet
/// so no two scores are equal and no cell is a hold.
pub fn synthetic_scores(count: usize, rows: usize) -> Vec<LabanScore> {
    let alphabet = DirectionSymbol::spatial_alphabet();
    (0..count)
        .map(|score_index| {
            let score_rows = (0..rows)
                .map(|row| {
                    let mut symbols = [alphabet[0]; 5];
                    for (column, cell) in symbols.iter_mut().enumerate() {
                        let pick = score_index * 11 + row * 5 + column * 3;
                        *cell = alphabet[pick % alphabet.len()];
                    }
                    let duration = 0.5 + ((score_index + row) % 4) as f64 * 0.5;
                    ScoreRow::new(symbols, duration).unwrap()
                })
                .collect();
            LabanScore::new(score_rows).unwrap()
        })
        .collect()
}

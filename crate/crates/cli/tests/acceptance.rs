//! End-to-end checks of the toolkit's shipped guarantees, one test per
//! criterion. Each test prints a `criterion N: pass` checklist line; run
//! with `cargo test --test acceptance -- --nocapture` to see the list.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use nalgebra::{Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use labanimate_core::{
    clip_to_score, cluster_scores, compile, distance_matrix, load_library, parse_library,
    parse_score, ramp, score_distance, seed_library, select_gesture, serialize_score,
    validate_trajectory, write_library, Branch, DirectionCodebook, DirectionSymbol,
    EmbeddingTable, EngineConfig, GestureCategory, GestureConceptPair, GestureLibrary,
    KeyframeParams, LabanScore, MotionClip, RampParams, RobotProfile, ScoreDocument, ScoreRow,
    SkeletonFrame, TimingParams,
};

use labanimate_cli::service::{router, ServiceState};

fn sym(name: &str) -> DirectionSymbol {
    DirectionSymbol::from_str(name).unwrap()
}

fn rest_row(duration: f64) -> ScoreRow {
    ScoreRow::new(
        [
            sym("place-low"),
            sym("place-low"),
            sym("place-low"),
            sym("place-low"),
            sym("place-high"),
        ],
        duration,
    )
    .unwrap()
}

fn random_score(rng: &mut ChaCha8Rng, rows: usize) -> LabanScore {
    let alphabet = DirectionSymbol::spatial_alphabet();
    let mut out = Vec::with_capacity(rows);
    for row in 0..rows {
        let mut symbols = [DirectionSymbol::Hold; 5];
        for cell in &mut symbols {
            // Holds are legal anywhere except the first row.
            let choices = if row == 0 {
                alphabet.len()
            } else {
                alphabet.len() + 1
            };
            let pick = rng.random_range(0..choices);
            *cell = if pick == alphabet.len() {
                DirectionSymbol::Hold
            } else {
                alphabet[pick]
            };
        }
        let duration = rng.random_range(0.25..4.0);
        out.push(ScoreRow::new(symbols, duration).unwrap());
    }
    LabanScore::new(out).unwrap()
}

#[test]
fn criterion_01_distance_is_a_pseudometric_on_equal_length_triples() {
    let codebook = DirectionCodebook::default_labanotation();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let start = Instant::now();

    for _ in 0..100 {
        let rows = rng.random_range(1..=6);
        let a = random_score(&mut rng, rows);
        let b = random_score(&mut rng, rows);
        let c = random_score(&mut rng, rows);

        let dab = score_distance(&a, &b, &codebook).unwrap();
        let dba = score_distance(&b, &a, &codebook).unwrap();
        let dac = score_distance(&a, &c, &codebook).unwrap();
        let dbc = score_distance(&b, &c, &codebook).unwrap();

        assert!(dab >= 0.0);
        assert_eq!(dab, dba);
        assert_eq!(score_distance(&a, &a, &codebook).unwrap(), 0.0);
        assert!(dac <= dab + dbc, "triangle failed: {dac} > {dab} + {dbc}");
    }

    assert!(start.elapsed().as_secs_f64() < 1.0);
    println!("criterion 1 (pseudometric suite, 100 random equal-length triples, exact): pass");
}

#[test]
fn criterion_02_quantizer_is_idempotent_on_every_spatial_symbol() {
    let codebook = DirectionCodebook::default_labanotation();
    let start = Instant::now();

    assert_eq!(codebook.len(), 26);
    for entry in codebook.entries() {
        assert_eq!(codebook.quantize(entry.vector).unwrap(), entry.symbol);
    }

    assert!(start.elapsed().as_secs_f64() < 1.0);
    println!("criterion 2 (quantizer idempotence over all 26 symbols, exact): pass");
}

#[test]
fn criterion_03_ramp_hits_its_anchors_and_is_monotone() {
    let params = RampParams::default();
    let start = Instant::now();

    assert!((ramp(params.lower(), &params)).abs() <= 1e-9);
    assert!((ramp(params.upper(), &params) - 1.0).abs() <= 1e-9);
    let midpoint = (params.lower() + params.upper()) / 2.0;
    assert!((ramp(midpoint, &params) - 0.5).abs() <= 1e-9);

    let mut previous = f64::NEG_INFINITY;
    for i in 0..1000 {
        let similarity = -1.0 + 2.0 * (i as f64) / 999.0;
        let g = ramp(similarity, &params);
        assert!(g >= previous);
        previous = g;
    }

    assert!(start.elapsed().as_secs_f64() < 1.0);
    println!("criterion 3 (ramp anchors within 1e-9, monotone over 1000 points): pass");
}

/// First value drawn by the cascade's random gate for a given seed.
fn first_draw(seed: u64) -> f64 {
    ChaCha8Rng::seed_from_u64(seed).random_range(0.0..=10.0)
}

#[test]
fn criterion_04_cascade_reproduces_the_five_reference_selections() {
    let library = seed_library();
    let table = EmbeddingTable::empty();
    let config = EngineConfig::default();
    // Seeds whose first gate draw lands above (fires) or below the
    // threshold, found by scanning; both are deterministic.
    let hot = (0u64..).find(|&s| first_draw(s) > 5.0).unwrap();
    let cold = (0u64..).find(|&s| first_draw(s) <= 5.0).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(hot);
    let picked = select_gesture("Look at this.", &library, &table, &config, &mut rng).unwrap();
    assert_eq!(picked.branch, Branch::Deictic);
    assert_eq!(picked.pair.concept, "this");
    assert!(picked.trace.deictic_draw.unwrap() > 5.0);

    let mut rng = ChaCha8Rng::seed_from_u64(hot);
    let picked = select_gesture("What time is it?", &library, &table, &config, &mut rng).unwrap();
    assert_eq!(picked.branch, Branch::Question);
    assert_eq!(picked.pair.concept, "question");
    assert_eq!(picked.trace.question_word.as_deref(), Some("what"));
    assert!(picked.trace.question_draw.unwrap() > 5.0);

    let mut rng = ChaCha8Rng::seed_from_u64(cold);
    let picked = select_gesture("Thanks a lot.", &library, &table, &config, &mut rng).unwrap();
    assert_eq!(picked.branch, Branch::Semantic);
    assert_eq!(picked.pair.concept, "thanks");
    for (concept, strength) in &picked.trace.strengths {
        if concept == "thanks" {
            assert_eq!(*strength, 1.0);
        } else {
            assert_eq!(*strength, 0.0);
        }
    }
    assert_eq!(picked.trace.candidates, ["thanks"]);

    let mut rng = ChaCha8Rng::seed_from_u64(hot);
    let picked = select_gesture("qwzzk blorp", &library, &table, &config, &mut rng).unwrap();
    assert_eq!(picked.branch, Branch::Beat);

    // `Do` heads the sentence but must not act as a question trigger; the
    // hot seed would expose a wrongly taken question gate.
    let mut rng = ChaCha8Rng::seed_from_u64(hot);
    let picked = select_gesture("Do you sing?", &library, &table, &config, &mut rng).unwrap();
    assert_eq!(picked.branch, Branch::Beat);
    assert!(picked.trace.question_word.is_none());
    assert!(picked.trace.question_draw.is_none());
    assert!(picked.trace.strengths.iter().all(|(_, s)| *s == 0.0));

    println!("criterion 4 (five reference cascade selections with fixed seeds, exact): pass");
}

#[test]
fn criterion_05_deictic_branch_fires_half_the_time() {
    let library = seed_library();
    let table = EmbeddingTable::empty();
    let config = EngineConfig::default();
    let start = Instant::now();

    let trials = 100_000u64;
    let mut fired = 0u64;
    for seed in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picked = select_gesture("Look at this.", &library, &table, &config, &mut rng).unwrap();
        if picked.branch == Branch::Deictic {
            fired += 1;
        }
    }

    let rate = fired as f64 / trials as f64;
    assert!((rate - 0.5).abs() <= 0.02, "deictic rate {rate}");
    assert!(start.elapsed().as_secs_f64() < 10.0);
    println!("criterion 5 (deictic firing rate {rate:.4} within 50% +/- 2% over 100k trials): pass");
}

#[test]
fn criterion_06_candidate_rule_keeps_the_near_best_and_picks_uniformly() {
    let rest = LabanScore::new(vec![rest_row(1.0)]).unwrap();
    let general = |concept: &str| GestureConceptPair {
        concept: concept.to_string(),
        category: GestureCategory::General,
        words: vec![concept.to_string()],
        score: ScoreDocument::bare(rest.clone()),
        variants: Vec::new(),
    };
    let mut beat = general("beat");
    beat.category = GestureCategory::Beat;
    let library = GestureLibrary::new(
        "laban-26",
        vec![general("ping"), general("pong"), general("bonk"), beat],
    )
    .unwrap();

    // Unit vectors placed so the ramp of their cosines against `ping`
    // lands at 1.0, 0.96, and 0.5.
    let table = EmbeddingTable::from_entries([
        ("ping".to_string(), vec![1.0, 0.0]),
        (
            "pong".to_string(),
            vec![0.684, (1.0f64 - 0.684 * 0.684).sqrt()],
        ),
        ("bonk".to_string(), vec![0.5, 0.75f64.sqrt()]),
    ])
    .unwrap();
    let config = EngineConfig::default();

    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picked = select_gesture("ping", &library, &table, &config, &mut rng).unwrap();
        assert_eq!(picked.branch, Branch::Semantic);
        assert_eq!(picked.trace.candidates, ["ping", "pong"]);
        let strengths: BTreeMap<_, _> = picked.trace.strengths.iter().cloned().collect();
        assert_eq!(strengths["ping"], 1.0);
        assert!((strengths["pong"] - 0.96).abs() < 1e-12);
        assert!((strengths["bonk"] - 0.5).abs() < 1e-12);
        *counts.entry(picked.pair.concept.clone()).or_default() += 1;
    }

    assert_eq!(counts.len(), 2);
    for concept in ["ping", "pong"] {
        let share = counts[concept] as f64 / 1000.0;
        assert!((share - 0.5).abs() <= 0.05, "{concept} picked {share}");
    }
    println!("criterion 6 (candidate set exactly the 1.0 and 0.96 pairs, both near 50%): pass");
}

#[test]
fn criterion_07_seed_library_file_has_the_documented_shape() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/seed_library.json");
    let library = load_library(path).unwrap();

    assert_eq!(library.len(), 38);
    assert_eq!(library.count_by_category(GestureCategory::General), 32);
    assert_eq!(library.count_by_category(GestureCategory::Deictic), 4);
    assert_eq!(library.count_by_category(GestureCategory::Question), 1);
    assert_eq!(library.count_by_category(GestureCategory::Beat), 1);
    assert_eq!(write_library(&library), write_library(&seed_library()));

    println!("criterion 7 (seed library loads as 32 + 4 + 1 + 1 = 38 pairs): pass");
}

fn uniform_score(symbol: DirectionSymbol) -> LabanScore {
    let rows = (0..3)
        .map(|_| ScoreRow::new([symbol; 5], 1.0).unwrap())
        .collect();
    LabanScore::new(rows).unwrap()
}

/// Copy `base` with one cell nudged to `neighbor`; copy 0 is the base.
fn perturbed(base: &LabanScore, neighbor: DirectionSymbol, copy: usize) -> LabanScore {
    let mut rows = base.rows().to_vec();
    if copy > 0 {
        let row = (copy - 1) % rows.len();
        let column = (copy - 1) % 5;
        let mut symbols = rows[row].symbols;
        symbols[column] = neighbor;
        rows[row] = ScoreRow::new(symbols, rows[row].duration_beats).unwrap();
    }
    LabanScore::new(rows).unwrap()
}

#[test]
fn criterion_08_clustering_recovers_planted_bundles_and_medoids() {
    let codebook = DirectionCodebook::default_labanotation();
    let start = Instant::now();

    let bundles = [
        (sym("forward-middle"), sym("right-forward-middle")),
        (sym("left-middle"), sym("left-forward-middle")),
        (sym("place-high"), sym("forward-high")),
    ];
    // Interleave the bundles so cluster recovery cannot ride on input order.
    let mut scores = Vec::new();
    for copy in 0..5 {
        for (base, neighbor) in &bundles {
            scores.push(perturbed(&uniform_score(*base), *neighbor, copy));
        }
    }

    let matrix = distance_matrix(&scores, &codebook).unwrap();
    let result = cluster_scores(&matrix, 3).unwrap();

    let mut found: Vec<Vec<usize>> = (0..3).map(|cluster| result.members(cluster)).collect();
    found.sort();
    let mut expected: Vec<Vec<usize>> = (0..3)
        .map(|bundle| (0..5).map(|copy| copy * 3 + bundle).collect())
        .collect();
    expected.sort();
    assert_eq!(found, expected);

    for (cluster, &medoid) in result.medoids.iter().enumerate() {
        let members = result.members(cluster);
        let brute = members
            .iter()
            .copied()
            .min_by(|&a, &b| {
                let sum = |i: usize| members.iter().map(|&j| matrix[i][j]).sum::<f64>();
                sum(a).partial_cmp(&sum(b)).unwrap().then(a.cmp(&b))
            })
            .unwrap();
        assert_eq!(medoid, brute);
    }

    assert!(start.elapsed().as_secs_f64() < 5.0);
    println!("criterion 8 (3 planted bundles of 5 recovered exactly, medoids brute-checked): pass");
}

fn posed_frame(
    t: f64,
    left_upper: Vector3<f64>,
    left_lower: Vector3<f64>,
    right_upper: Vector3<f64>,
    right_lower: Vector3<f64>,
    head: Vector3<f64>,
    world: &Rotation3<f64>,
) -> SkeletonFrame {
    let spine_base = Vector3::new(0.0, 0.0, 0.9);
    let neck = Vector3::new(0.0, 0.0, 1.4);
    let left_shoulder = Vector3::new(0.0, 0.2, 1.4);
    let right_shoulder = Vector3::new(0.0, -0.2, 1.4);
    let left_elbow = left_shoulder + 0.3 * left_upper.normalize();
    let left_wrist = left_elbow + 0.25 * left_lower.normalize();
    let right_elbow = right_shoulder + 0.3 * right_upper.normalize();
    let right_wrist = right_elbow + 0.25 * right_lower.normalize();
    let head_pos = neck + 0.25 * head.normalize();

    let mut joints = BTreeMap::new();
    for (name, point) in [
        ("spine-base", spine_base),
        ("neck", neck),
        ("head", head_pos),
        ("left-shoulder", left_shoulder),
        ("right-shoulder", right_shoulder),
        ("left-elbow", left_elbow),
        ("left-wrist", left_wrist),
        ("right-elbow", right_elbow),
        ("right-wrist", right_wrist),
    ] {
        joints.insert(name.to_string(), world * point);
    }
    SkeletonFrame::new(t, joints).unwrap()
}

type Pose = [Vector3<f64>; 5];

/// Three held poses with 0.5 s transitions at 30 fps; `time_scale`
/// stretches every hold and transition without changing the poses.
fn three_pose_clip(time_scale: f64, world: &Rotation3<f64>) -> MotionClip {
    let down = Vector3::new(0.0, 0.0, -1.0);
    let up = Vector3::new(0.0, 0.0, 1.0);
    let forward = Vector3::new(1.0, 0.0, 0.0);
    let left = Vector3::new(0.0, 1.0, 0.0);
    let right = Vector3::new(0.0, -1.0, 0.0);

    let poses: [Pose; 3] = [
        [down, down, down, down, up],
        [forward, forward, forward, forward, up],
        [left, left, right, right, up],
    ];

    let fps = 30.0;
    let hold_frames = (18.0 * time_scale).round() as usize;
    let transition_frames = (15.0 * time_scale).round() as usize;
    let mut frames = Vec::new();
    let mut t = 0.0;
    for (index, pose) in poses.iter().enumerate() {
        for _ in 0..hold_frames {
            frames.push(posed_frame(t, pose[0], pose[1], pose[2], pose[3], pose[4], world));
            t += 1.0 / fps;
        }
        if index + 1 < poses.len() {
            let next = &poses[index + 1];
            for step in 1..=transition_frames {
                let alpha = step as f64 / (transition_frames + 1) as f64;
                let blend =
                    |a: Vector3<f64>, b: Vector3<f64>| (a * (1.0 - alpha) + b * alpha).normalize();
                frames.push(posed_frame(
                    t,
                    blend(pose[0], next[0]),
                    blend(pose[1], next[1]),
                    blend(pose[2], next[2]),
                    blend(pose[3], next[3]),
                    blend(pose[4], next[4]),
                    world,
                ));
                t += 1.0 / fps;
            }
        }
    }
    MotionClip::new(frames, Some(fps)).unwrap()
}

#[test]
fn criterion_09_motion_pipeline_recovers_poses_with_invariances() {
    let codebook = DirectionCodebook::default_labanotation();
    let params = KeyframeParams::default();
    let start = Instant::now();

    let expected: Vec<[DirectionSymbol; 5]> = vec![
        [
            sym("place-low"),
            sym("place-low"),
            sym("place-low"),
            sym("place-low"),
            sym("place-high"),
        ],
        [
            sym("forward-middle"),
            sym("forward-middle"),
            sym("forward-middle"),
            sym("forward-middle"),
            DirectionSymbol::Hold,
        ],
        [
            sym("left-middle"),
            sym("left-middle"),
            sym("right-middle"),
            sym("right-middle"),
            DirectionSymbol::Hold,
        ],
    ];

    let symbols_of = |score: &LabanScore| -> Vec<[DirectionSymbol; 5]> {
        score.rows().iter().map(|row| row.symbols).collect()
    };

    let identity = Rotation3::identity();
    let base = clip_to_score(&three_pose_clip(1.0, &identity), &params, &codebook).unwrap();
    assert_eq!(base.len(), 3);
    assert_eq!(symbols_of(&base), expected);

    let slower = clip_to_score(&three_pose_clip(2.0, &identity), &params, &codebook).unwrap();
    assert_eq!(symbols_of(&slower), expected);

    let world = Rotation3::from_euler_angles(0.4, -0.3, 1.1);
    let rotated = clip_to_score(&three_pose_clip(1.0, &world), &params, &codebook).unwrap();
    assert_eq!(symbols_of(&rotated), expected);

    assert!(start.elapsed().as_secs_f64() < 5.0);
    println!("criterion 9 (3-pose clip recovered exactly; time-scale and rotation invariant): pass");
}

#[test]
fn criterion_10_every_seed_score_compiles_safely_on_both_profiles() {
    let library = seed_library();
    let codebook = DirectionCodebook::default_labanotation();
    let timing = TimingParams::default();
    let start = Instant::now();

    for name in RobotProfile::builtin_names() {
        let profile = RobotProfile::builtin(name).unwrap();
        for pair in library.pairs() {
            let output = compile(&pair.score.score, &profile, &timing, &codebook).unwrap();
            let report = validate_trajectory(&output.trajectory, &profile);
            assert!(
                report.is_pass(),
                "{} on {name}: {:?}",
                pair.concept,
                report.violations
            );
        }
    }

    // A rigid right-arm swing of 90 degrees against the shoulder's speed
    // limit must stretch its interval to exactly angle / max-velocity.
    let profile = RobotProfile::builtin("humanoid-full").unwrap();
    let swing = LabanScore::new(vec![
        rest_row(1.0),
        ScoreRow::new(
            [
                sym("place-low"),
                sym("place-low"),
                sym("forward-middle"),
                sym("forward-middle"),
                sym("place-high"),
            ],
            1.0,
        )
        .unwrap(),
    ])
    .unwrap();
    let output = compile(&swing, &profile, &timing, &codebook).unwrap();
    let keyframes = output.trajectory.keyframes();
    assert_eq!(keyframes.len(), 3);
    let max_velocity = 3.0;
    let analytic = std::f64::consts::FRAC_PI_2 / max_velocity;
    let interval = keyframes[2].t - keyframes[1].t;
    assert!(
        (interval - analytic).abs() < 1e-6,
        "stretched interval {interval}, analytic {analytic}"
    );
    assert!(!output.diagnostics.stretches.is_empty());

    assert!(start.elapsed().as_secs_f64() < 5.0);
    println!("criterion 10 (38 scores x 2 profiles validate; stretch matches angle/velocity): pass");
}

#[test]
fn criterion_11_one_score_document_drives_both_profiles_unchanged() {
    let library = seed_library();
    let codebook = DirectionCodebook::default_labanotation();
    let timing = TimingParams::default();
    let document = &library.find("thanks").unwrap().score;
    let before = serialize_score(document);

    let full = RobotProfile::builtin("humanoid-full").unwrap();
    let compact = RobotProfile::builtin("humanoid-compact").unwrap();
    let on_full = compile(&document.score, &full, &timing, &codebook).unwrap();
    let on_compact = compile(&document.score, &compact, &timing, &codebook).unwrap();

    assert_eq!(serialize_score(document), before);
    for (output, profile) in [(&on_full, &full), (&on_compact, &compact)] {
        let mut joint_names: Vec<&str> = profile.joints.iter().map(|j| j.name.as_str()).collect();
        joint_names.sort();
        for keyframe in output.trajectory.keyframes() {
            let covered: Vec<&str> = keyframe.angles.keys().map(String::as_str).collect();
            assert_eq!(covered, joint_names, "profile {}", profile.name);
        }
    }

    println!("criterion 11 (identical score document compiles on both profiles unchanged): pass");
}

#[test]
fn criterion_12_score_text_round_trips_byte_exactly() {
    let library = seed_library();
    let text = write_library(&library);
    let reparsed = parse_library(&text).unwrap();
    assert_eq!(write_library(&reparsed), text);
    for pair in library.pairs() {
        let serialized = serialize_score(&pair.score);
        let parsed = parse_score(&serialized).unwrap();
        assert_eq!(parsed, pair.score);
        assert_eq!(serialize_score(&parsed), serialized);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for index in 0..100 {
        let rows = rng.random_range(1..=8);
        let document = ScoreDocument {
            score: random_score(&mut rng, rows),
            name: (index % 2 == 0).then(|| format!("gesture-{index}")),
            source: (index % 3 == 0).then(|| format!("synthetic run {index}")),
            bpm: (index % 5 == 0).then(|| rng.random_range(30.0..200.0)),
        };
        let serialized = serialize_score(&document);
        let parsed = parse_score(&serialized).unwrap();
        assert_eq!(parsed, document);
        assert_eq!(serialize_score(&parsed), serialized);
    }

    println!("criterion 12 (seed library and 100 random scores round-trip byte-exactly): pass");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 8)]
async fn criterion_13_service_returns_identical_bytes_under_concurrency() {
    let state = Arc::new(
        ServiceState::new(
            seed_library(),
            EmbeddingTable::empty(),
            DirectionCodebook::default_labanotation(),
            EngineConfig::default(),
            Vec::new(),
        )
        .unwrap(),
    );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move {
        axum::serve(listener, router(state)).await.unwrap();
    });

    let client = reqwest::Client::new();
    let url = format!("http://{addr}/v1/gesture");
    let body = serde_json::json!({"text": "Look at this.", "seed": 9, "trace": true});

    let reference = client
        .post(&url)
        .json(&body)
        .send()
        .await
        .unwrap()
        .bytes()
        .await
        .unwrap();
    assert!(!reference.is_empty());

    let mut handles = Vec::new();
    for _ in 0..32 {
        let client = client.clone();
        let url = url.clone();
        let body = body.clone();
        handles.push(tokio::spawn(async move {
            let start = Instant::now();
            let response = client.post(&url).json(&body).send().await.unwrap();
            let status = response.status();
            let bytes = response.bytes().await.unwrap();
            (status, bytes, start.elapsed())
        }));
    }
    for handle in handles {
        let (status, bytes, elapsed) = handle.await.unwrap();
        assert_eq!(status, reqwest::StatusCode::OK);
        assert_eq!(bytes, reference);
        assert!(elapsed.as_millis() < 100, "request took {elapsed:?}");
    }

    for _ in 0..1000 {
        let bytes = client
            .post(&url)
            .json(&body)
            .send()
            .await
            .unwrap()
            .bytes()
            .await
            .unwrap();
        assert_eq!(bytes, reference);
    }

    println!("criterion 13 (32 concurrent + 1000 repeated seeded requests byte-identical, <100 ms each): pass");
}

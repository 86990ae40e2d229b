//! Implementations of the file-to-file subcommands.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use labanimate_core::{
    clip_to_score, cluster_scores, compile, distance_matrix, load_clip, load_score, parse_score,
    select_gesture, serialize_score, trajectory_to_json, write_library_skeleton, KeyframeParams,
    ScoreDocument, TimingParams, DEFAULT_SECONDS_PER_BEAT,
};

use crate::args::{ClusterArgs, CompileArgs, ConvertArgs, SelectArgs};
use crate::config::{
    self, load_codebook_source, load_embeddings_source, load_library_source, load_profile_source,
    FileConfig,
};
use crate::error::CliError;

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|error| {
            CliError::runtime(format!("cannot write {}: {error}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Staff-ordered view of a score: one comment line per row, last row first,
/// so time flows upward as on a drawn staff. Comment prefixes keep the
/// block inert when it trails a canonical score document on one stream.
pub fn staff_text(doc: &ScoreDocument) -> String {
    let mut out = String::from(
        "# staff view (time flows upward; columns: left-lower left-upper right-lower right-upper head)\n",
    );
    for row in doc.score.rows().iter().rev() {
        out.push_str(&format!("# row {}", row.duration_beats));
        out.push_str(" |");
        for symbol in &row.symbols {
            out.push(' ');
            out.push_str(&symbol.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn run_convert(args: &ConvertArgs, config: &FileConfig) -> Result<(), CliError> {
    let clip = load_clip(&args.input)?;
    let defaults = KeyframeParams::default();
    let params = KeyframeParams::new(
        args.smoothing_window
            .unwrap_or_else(|| defaults.smoothing_window()),
        args.speed_threshold
            .unwrap_or_else(|| defaults.minima_speed_threshold()),
        args.min_gap.unwrap_or_else(|| defaults.min_keyframe_gap()),
    )?;
    let codebook =
        load_codebook_source(config::resolve_codebook_path(args.codebook.as_deref(), config).as_deref())?;

    let score = clip_to_score(&clip, &params, &codebook)?;
    let stem = args
        .input
        .file_stem()
        .map(|stem| stem.to_string_lossy().into_owned());
    let basename = args
        .input
        .file_name()
        .map(|name| name.to_string_lossy().into_owned());
    let doc = ScoreDocument {
        score,
        name: args.name.clone().or(stem),
        source: basename,
        bpm: None,
    };

    let mut text = serialize_score(&doc);
    if args.render && args.out.is_some() {
        print!("{}", staff_text(&doc));
    } else if args.render {
        text.push_str(&staff_text(&doc));
    }
    write_output(args.out.as_deref(), &text)
}

pub fn run_cluster(args: &ClusterArgs, config: &FileConfig) -> Result<(), CliError> {
    let codebook =
        load_codebook_source(config::resolve_codebook_path(args.codebook.as_deref(), config).as_deref())?;

    let mut entries: Vec<(String, std::path::PathBuf)> = Vec::new();
    let dir = std::fs::read_dir(&args.scores).map_err(|error| {
        CliError::runtime(format!("cannot read {}: {error}", args.scores.display()))
    })?;
    for entry in dir {
        let entry = entry.map_err(CliError::runtime)?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') || !entry.path().is_file() {
            continue;
        }
        entries.push((name, entry.path()));
    }
    entries.sort();
    if entries.is_empty() {
        return Err(CliError::validation(format!(
            "no score files in {}",
            args.scores.display()
        )));
    }

    let mut docs = Vec::with_capacity(entries.len());
    for (name, path) in &entries {
        let doc = load_score(path)
            .map_err(|error| CliError::validation(format!("{name}: {error}")))?;
        docs.push(doc);
    }

    let scores: Vec<_> = docs.iter().map(|doc| doc.score.clone()).collect();
    let matrix = distance_matrix(&scores, &codebook).map_err(CliError::validation)?;
    let result = cluster_scores(&matrix, args.k).map_err(CliError::validation)?;

    for (cluster, &medoid) in result.medoids.iter().enumerate() {
        let members: Vec<&str> = result
            .members(cluster)
            .into_iter()
            .map(|index| entries[index].0.as_str())
            .collect();
        println!(
            "cluster {cluster}: medoid {}; members {}",
            entries[medoid].0,
            members.join(" ")
        );
    }

    let medoid_docs: Vec<ScoreDocument> = result
        .medoids
        .iter()
        .map(|&index| docs[index].clone())
        .collect();
    let skeleton = write_library_skeleton(codebook.name(), &medoid_docs);
    std::fs::write(&args.out, skeleton).map_err(|error| {
        CliError::runtime(format!("cannot write {}: {error}", args.out.display()))
    })?;
    eprintln!(
        "wrote skeleton with {} pairs to {}; fill in concepts and words to make it a library",
        result.medoids.len(),
        args.out.display()
    );
    Ok(())
}

pub fn run_select(args: &SelectArgs, config: &FileConfig) -> Result<(), CliError> {
    let library =
        load_library_source(config::resolve_library_path(args.library.as_deref(), config).as_deref())?;
    let embeddings = load_embeddings_source(
        config::resolve_embeddings_path(args.embeddings.as_deref(), config).as_deref(),
    )?;
    let engine = config.engine_config(args.seed)?;

    let mut rng = ChaCha8Rng::seed_from_u64(engine.seed);
    let result =
        select_gesture(&args.text, &library, &embeddings, &engine, &mut rng)
            .map_err(CliError::validation)?;

    if args.trace {
        let trace = &result.trace;
        eprintln!("branch: {}", result.branch.as_str());
        eprintln!("seed: {}", engine.seed);
        eprintln!("tokens: {}", trace.tokens.join(" "));
        if let (Some(word), Some(draw)) = (&trace.deictic_word, trace.deictic_draw) {
            eprintln!("deictic draw: {draw:.6} (word `{word}`)");
        }
        if let (Some(word), Some(draw)) = (&trace.question_word, trace.question_draw) {
            eprintln!("question draw: {draw:.6} (word `{word}`)");
        }
        for (concept, strength) in &trace.strengths {
            eprintln!("strength {concept}: {strength:.6}");
        }
        if !trace.candidates.is_empty() {
            eprintln!("candidates: {}", trace.candidates.join(" "));
        }
    }

    let mut text = format!(
        "# concept: {}\n# category: {}\n# branch: {}\n",
        result.pair.concept,
        result.pair.category.as_str(),
        result.branch.as_str()
    );
    text.push_str(&serialize_score(&result.pair.score));
    if args.render {
        text.push_str(&staff_text(&result.pair.score));
    }
    print!("{text}");
    Ok(())
}

pub fn run_compile(args: &CompileArgs, config: &FileConfig) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.score).map_err(|error| {
        CliError::runtime(format!("cannot read {}: {error}", args.score.display()))
    })?;
    let doc = parse_score(&text).map_err(CliError::validation)?;
    let profile =
        load_profile_source(&config::resolve_profile_name(args.profile.as_deref(), config))?;
    let codebook =
        load_codebook_source(config::resolve_codebook_path(args.codebook.as_deref(), config).as_deref())?;
    let timing = TimingParams {
        seconds_per_beat: args
            .seconds_per_beat
            .or(config.seconds_per_beat)
            .unwrap_or(DEFAULT_SECONDS_PER_BEAT),
        strict: args.strict,
    };

    let output = compile(&doc.score, &profile, &timing, &codebook)?;
    for (keyframe, clamp) in &output.diagnostics.clamps {
        eprintln!(
            "note: clamped keyframe {keyframe} joint {} from {:.4} to {:.4}",
            clamp.joint, clamp.requested, clamp.applied
        );
    }
    for stretch in &output.diagnostics.stretches {
        eprintln!(
            "note: stretched keyframes {}->{} joint {} from {:.4} s to {:.4} s",
            stretch.from_keyframe,
            stretch.from_keyframe + 1,
            stretch.joint,
            stretch.nominal_seconds,
            stretch.stretched_seconds
        );
    }

    let json = trajectory_to_json(&profile.name, &output.trajectory);
    write_output(args.out.as_deref(), &json)
}

//! The JSON files under data/ are generated artifacts (see the dump_*
//! examples); these tests pin them to the code that defines them.

use labanimate_core::{
    parse_library, seed_library, write_library, DirectionCodebook, RobotProfile,
};

fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("data file exists")
}

#[test]
fn seed_library_file_is_the_canonical_form_of_the_builtin() {
    let text = data("seed_library.json");
    let parsed = parse_library(&text).expect("seed library file parses");
    assert_eq!(write_library(&parsed), text);
    assert_eq!(write_library(&seed_library()), text);
}

#[test]
fn codebook_file_is_the_canonical_form_of_the_builtin() {
    let text = data("codebook_laban26.json");
    let parsed = DirectionCodebook::from_json(&text).expect("codebook file parses");
    assert_eq!(parsed.to_json(), text);
    assert_eq!(DirectionCodebook::default_labanotation().to_json(), text);
}

#[test]
fn profile_files_are_the_builtin_profiles() {
    for (file, name) in [
        ("profile_full.json", "humanoid-full"),
        ("profile_compact.json", "humanoid-compact"),
    ] {
        let parsed = RobotProfile::from_json(&data(file)).expect("profile file parses");
        assert_eq!(parsed, RobotProfile::builtin(name).unwrap());
    }
}

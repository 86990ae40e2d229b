//! Prints the default direction codebook in its canonical JSON form.

fn main() {
    print!(
        "{}",
        labanimate_core::DirectionCodebook::default_labanotation().to_json()
    );
}

//! Prints the shipped gesture library in its canonical JSON form.

fn main() {
    print!("{}", labanimate_core::write_library(&labanimate_core::seed_library()));
}

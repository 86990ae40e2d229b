fn main() {
    std::process::exit(labanimate_cli::main_entry(std::env::args_os()));
}

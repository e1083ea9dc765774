fn main() {
    std::process::exit(chordal_learn::cli::run(std::env::args_os()));
}

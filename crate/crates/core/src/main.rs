fn main() {
    std::process::exit(seqcontest::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(erasure_lab::cli::run());
}

fn main() {
    std::process::exit(hypmod::cli::run(std::env::args()));
}

fn main() {
    std::process::exit(mockradial::cli::run(std::env::args_os()));
}

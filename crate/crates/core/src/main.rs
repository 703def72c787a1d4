fn main() {
    std::process::exit(gradedpi::cli::run_from(std::env::args_os()));
}

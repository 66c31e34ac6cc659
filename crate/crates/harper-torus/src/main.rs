fn main() {
    std::process::exit(harper_torus::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(cubic_density::cli::run(std::env::args_os()));
}

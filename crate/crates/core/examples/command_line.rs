//! Driving the command-line front end in-process.
//!
//! Run with `cargo run --release --example command_line -- oracle --n 2 --q 2`.
//! With no arguments it verifies the reference fractions.

fn main() {
    let mut args: Vec<String> = std::env::args().collect();
    if args.len() == 1 {
        args.extend(["verify-golden", "--all"].map(String::from));
    }
    std::process::exit(cubic_density::cli::run(args));
}

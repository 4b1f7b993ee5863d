use clap::Parser;

fn main() {
    std::process::exit(stalab::cli::main_with_args(stalab::cli::Args::parse()));
}

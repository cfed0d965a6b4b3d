use clap::Parser;

fn main() {
    std::process::exit(arkit::cli::main_with(arkit::cli::Cli::parse()));
}

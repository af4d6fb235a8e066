use clap::Parser;

fn main() {
    std::process::exit(arrcert::cli::main_with(arrcert::cli::Cli::parse()));
}

use clap::Parser;

fn main() {
    let cli = latenum::cli::Cli::parse();
    std::process::exit(latenum::cli::run(cli));
}

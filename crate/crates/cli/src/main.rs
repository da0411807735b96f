use clap::Parser;

fn main() {
    let cli = negsssp_cli::Cli::parse();
    std::process::exit(negsssp_cli::run(cli));
}

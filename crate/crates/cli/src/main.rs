use clap::Parser;

fn main() {
    let cli = scarf2_cli::Cli::parse();
    std::process::exit(scarf2_cli::run(&cli));
}

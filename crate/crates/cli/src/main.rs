use clap::Parser;

fn main() {
    let cli = apery_verify::Cli::parse();
    std::process::exit(apery_verify::main_with(&cli));
}

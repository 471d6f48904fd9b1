use clap::Parser;

fn main() {
    let args = pgw::cli::Args::parse();
    std::process::exit(pgw::cli::main_with(args));
}

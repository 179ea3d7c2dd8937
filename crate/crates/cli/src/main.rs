use clap::Parser;

fn main() {
    let cli = prsreduct::args::Cli::parse();
    if let Err(e) = prsreduct::run(cli) {
        eprintln!("prsreduct: {e}");
        std::process::exit(e.exit_code());
    }
}

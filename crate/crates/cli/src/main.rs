use clap::Parser;

fn main() {
    let cli = cogradio::Cli::parse();
    if let Err(e) = cogradio::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

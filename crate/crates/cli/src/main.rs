use clap::Parser;

fn main() {
    let cli = hmfdef::Cli::parse();
    let code = hmfdef::run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}

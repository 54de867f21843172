use clap::Parser;
use qlab_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    let (report, emit, out, code) = qlab_cli::execute(&cli);
    if let Err(e) = report.write(emit, out.as_deref()) {
        eprintln!("{e}");
        std::process::exit(2);
    }
    if let Some(e) = &report.error {
        eprintln!("{}: {}", e.kind, e.message);
    }
    std::process::exit(code);
}

//! Scenario runner behind the `qlab` binary.

pub mod config;
pub mod error;
pub mod golden;
pub mod orbit;
pub mod report;
pub mod spectra;
pub mod verify;

use config::{Case, Cli, Command, FileConfig};
use error::CliError;
use report::Report;

/// Runs one invocation; returns the rendered report and the exit code.
pub fn execute(cli: &Cli) -> (Report, config::Emit, Option<std::path::PathBuf>, i32) {
    let file = match &cli.common.config {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig::default()),
    };
    let name = match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Spectrum => "spectrum",
        Command::Bethe => "bethe",
        Command::Orbit { .. } => "orbit",
        Command::Report { .. } => "report",
    };
    let emit = cli.common.emit.or(file.as_ref().ok().and_then(|f| f.emit)).unwrap_or(config::Emit::Json);
    let out = cli.common.out.clone().or(file.as_ref().ok().and_then(|f| f.out.clone()));
    let file = match file {
        Ok(f) => f,
        Err(e) => {
            let mut rep = Report::new(name, None);
            let code = rep.finish(Some(e));
            return (rep, emit, out, code);
        }
    };
    let case = match &cli.command {
        Command::Report { case } => Some(case.or(file.case).unwrap_or(Case::M3)),
        _ => None,
    };
    let defaults = case.map(|c| (3, if c == Case::M3 { 3 } else { 4 }));
    let cfg = match config::resolve(&cli.common, &file, defaults) {
        Ok(c) => c,
        Err(e) => {
            let e = match (&cli.command, e) {
                (Command::Verify { .. }, CliError::Library(l)) => CliError::Library(verify::even_cyclic(l)),
                (_, e) => e,
            };
            let mut rep = Report::new(name, None);
            let code = rep.finish(Some(e));
            return (rep, emit, out, code);
        }
    };
    let mut rep = Report::new(name, Some(cfg.echo()));
    let result = match &cli.command {
        Command::Verify { check } => {
            let checks = if check.is_empty() { file.check.clone().unwrap_or_default() } else { check.clone() };
            verify::run(&cfg, &checks)
        }
        Command::Spectrum => spectra::spectrum(&cfg),
        Command::Bethe => spectra::bethe(&cfg),
        Command::Orbit { steps, gens, t, every } => {
            let opts = orbit::OrbitOptions {
                steps: steps.or(file.steps),
                gens: gens.clone().or(file.gens.clone()),
                t: t.or(file.t.map(|v| qlab::C64::new(v[0], v[1]))),
                every: every.or(file.every),
            };
            orbit::run(&cfg, &opts)
        }
        Command::Report { .. } => golden::run(&cfg, case.unwrap_or(Case::M3)),
    };
    let err = match result {
        Ok(rows) => {
            rep.rows = rows;
            let failed = rep.failed_rows();
            (case.is_some() && failed > 0).then(|| CliError::GoldenMismatch(format!("{failed} values differ from their closed forms")))
        }
        Err(e) => Some(e),
    };
    let code = rep.finish(err);
    (rep, cfg.emit, cfg.out.clone(), code)
}

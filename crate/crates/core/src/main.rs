use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gup_mirror::config::{parse_config, Mode};
use gup_mirror::runner::{run, RunError};
use gup_mirror::FrequencyConvention;

/// Excitation probabilities of an atom and a mirror in relative uniform
/// acceleration, with a GUP-deformed scalar field.
#[derive(Parser, Debug)]
#[command(name = "gup-mirror", version)]
struct Cli {
    /// p1, p2, compare, sweep, verify, bound or temperatures.
    mode: Mode,
    /// key = value configuration file.
    #[arg(long)]
    config: PathBuf,
    /// CSV output path (overrides `output` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read omega0 and nu as angular (rad/s) or ordinary (Hz) frequencies.
    #[arg(long, value_name = "angular|ordinary")]
    freq_convention: Option<FrequencyConvention>,
}

fn execute(cli: &Cli) -> Result<PathBuf, RunError> {
    let text = std::fs::read_to_string(&cli.config).map_err(|source| RunError::Io {
        path: cli.config.clone(),
        source,
    })?;
    let mut cfg = parse_config(&text, Some(cli.mode))?;
    if let Some(out) = &cli.out {
        cfg.output = Some(out.clone());
    }
    if let Some(conv) = cli.freq_convention {
        cfg.freq_convention = conv;
    }
    run(&cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(path) => {
            log::info!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gup-mirror: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

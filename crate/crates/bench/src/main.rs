use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maidr::fixtures::{FixtureData, Kind, Layer};
use maidr_bench::samples::{read_csv_file, write_csv};
use maidr_bench::trial::{run_in_process, run_subprocess};
use maidr_bench::{BenchConfig, Condition, Report, Sample, TrialSpec};

#[derive(Parser)]
#[command(name = "bench", version, about = "Time figure render-and-save with and without maidr")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run both conditions for each fixture and write raw samples.
    Run {
        /// `all` or a comma-separated list of fixture names.
        #[arg(long, default_value = "all")]
        types: String,
        #[arg(long, value_enum, default_value_t = LayerArg::Both)]
        layer: LayerArg,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        warmup: usize,
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
        /// TOML file with `seed` and a `[scale]` table.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Summarise a samples file.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run one condition in this process and print one sample per line.
    #[command(hide = true)]
    Trial {
        #[arg(long)]
        fixture: Kind,
        #[arg(long)]
        layer: Layer,
        #[arg(long)]
        condition: Condition,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        warmup: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LayerArg {
    Direct,
    Wrapper,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

type BoxError = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bench: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_types(text: &str) -> Result<Vec<Kind>, String> {
    if text.trim() == "all" {
        return Ok(Kind::ALL.to_vec());
    }
    text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

fn load_config(path: Option<&PathBuf>) -> Result<BenchConfig, BoxError> {
    Ok(match path {
        Some(p) => BenchConfig::load(p)?,
        None => BenchConfig::default(),
    })
}

fn print_report(report: &Report, format: Format) -> io::Result<()> {
    let text = match format {
        Format::Table => report.to_text(),
        Format::Csv => report.to_csv(),
    };
    io::stdout().lock().write_all(text.as_bytes())
}

fn run(cli: Cli) -> Result<(), BoxError> {
    match cli.command {
        Command::Run { types, layer, trials, warmup, out, config, format } => {
            let kinds = parse_types(&types)?;
            if kinds.is_empty() {
                return Err("no fixture types selected".into());
            }
            if trials == 0 {
                return Err("trials must be at least 1".into());
            }
            load_config(config.as_ref())?;
            let layers: Vec<Layer> = match layer {
                LayerArg::Direct => vec![Layer::Direct],
                LayerArg::Wrapper => vec![Layer::Wrapper],
                LayerArg::Both => Layer::ALL.to_vec(),
            };
            let exe = std::env::current_exe()?;
            let mut samples = Vec::new();
            for &layer in &layers {
                for &kind in &kinds {
                    for condition in Condition::ALL {
                        let spec = TrialSpec { kind, layer, condition, trials, warmup };
                        let ms = run_subprocess(&exe, &spec, config.as_ref())?;
                        eprintln!("{kind}/{layer} {condition}: {:.2} ms mean", maidr_bench::stats::mean(&ms));
                        samples.extend(
                            ms.into_iter().enumerate().map(|(trial, ms)| Sample { fixture: kind, layer, condition, trial, ms }),
                        );
                    }
                }
            }
            write_csv(&samples, std::fs::File::create(&out)?)?;
            print_report(&Report::from_samples(&samples)?, format)?;
            Ok(())
        }
        Command::Report { path, format } => {
            let samples = read_csv_file(&path)?;
            print_report(&Report::from_samples(&samples)?, format)?;
            Ok(())
        }
        Command::Trial { fixture, layer, condition, trials, warmup, config } => {
            let cfg = load_config(config.as_ref())?;
            let data = FixtureData::generate(cfg.scale, cfg.seed);
            let spec = TrialSpec { kind: fixture, layer, condition, trials, warmup };
            let ms = run_in_process(&spec, &data)?;
            let mut stdout = io::stdout().lock();
            for v in ms {
                writeln!(stdout, "{v}")?;
            }
            Ok(())
        }
    }
}

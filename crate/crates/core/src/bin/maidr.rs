use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maidr::fixtures::{build, FixtureData, Kind, Layer, Scale, DEFAULT_SEED};
use maidr::plotkit::pyplot;

#[derive(Parser)]
#[command(name = "maidr", version, about = "Render accessible plotkit figures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render one of the built-in fixture figures.
    Render {
        /// Fixture name, e.g. `bar`, `horizontal-box`, `multiline`.
        fixture: Kind,
        #[arg(long, default_value = "direct")]
        layer: Layer,
        #[arg(long, value_enum, default_value_t = ScaleArg::Corpus)]
        scale: ScaleArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Html)]
        format: Format,
        /// Output file; the document goes to stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List fixture names.
    List,
    /// Check a schema, given as JSON or as an SVG/HTML document carrying one.
    Validate { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Corpus,
    Desk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Html,
    Svg,
    Json,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("maidr: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::List => {
            let mut stdout = io::stdout().lock();
            for k in Kind::ALL {
                writeln!(stdout, "{:<16} {}", k.slug(), k.title())?;
            }
            Ok(())
        }
        Command::Render { fixture, layer, scale, seed, format, out } => {
            maidr::install()?;
            let scale = match scale {
                ScaleArg::Corpus => Scale::corpus(),
                ScaleArg::Desk => Scale::default(),
            };
            let data = FixtureData::generate(scale, seed);
            let fig = build(fixture, layer, &data)?;
            let doc = maidr::render_document(&fig)?;
            pyplot::close_figure(&fig);
            if !doc.instrumented() {
                eprintln!("maidr: nothing extractable, writing the plain figure");
            }
            let text = match format {
                Format::Html => doc.html,
                Format::Svg => doc.svg,
                Format::Json => doc.schema_json.unwrap_or_default(),
            };
            match out {
                Some(path) => std::fs::write(&path, text)?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Validate { path } => {
            let text = std::fs::read_to_string(&path)?;
            let json = if text.trim_start().starts_with('{') {
                text
            } else {
                maidr::render::extract_payload(&text).ok_or("no maidr-data attribute found")?
            };
            let schema = maidr::parse_schema(&json)?;
            let layers: usize = schema.subplots.iter().map(|s| s.layers.len()).sum();
            writeln!(io::stdout(), "ok: {} subplot(s), {layers} layer(s)", schema.subplots.len())?;
            Ok(())
        }
    }
}

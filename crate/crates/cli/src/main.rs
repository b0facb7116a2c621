//! `flophelix`: emit the tables, run the verification suite, knit on
//! Dynkin diagrams and evaluate monodromy words.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flophelix::dynkin::{build_diagram, DynkinType};
use flophelix::knitting::{knit, KnitProblem};
use flophelix::monodromy::Strip;
use flophelix::tables::{self, Which};
use flophelix::verify::cmd_verify;
use flophelix::Error;

#[derive(Parser)]
#[command(name = "flophelix", version, about = "Helix, knitting and monodromy computations for length-ℓ flops")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive and print a table.
    Tables {
        #[arg(value_parser = parse_which)]
        which: Which,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Restrict to one length ℓ in 1..=6.
        #[arg(long)]
        ell: Option<i64>,
    },
    /// Run every acceptance check; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Knit on a Dynkin diagram.
    Knit {
        #[arg(long = "type", value_parser = parse_type)]
        ty: DynkinType,
        #[arg(long)]
        affine: bool,
        #[arg(long)]
        start: String,
        #[arg(long)]
        read: String,
        #[arg(long)]
        kill: Vec<String>,
        #[arg(long, default_value_t = flophelix::knitting::DEFAULT_MAX_LAYERS)]
        max_layers: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Reduce a word in the monodromy groupoid and evaluate it in K-theory.
    Monodromy {
        #[arg(long)]
        ell: i64,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_which(s: &str) -> Result<Which, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_type(s: &str) -> Result<DynkinType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Output text and whether the command succeeded.
fn run(command: Command) -> Result<(String, bool), Failure> {
    match command {
        Command::Tables { which, format, ell } => {
            let f = match format {
                TableFormat::Text => tables::Format::Text,
                TableFormat::Json => tables::Format::Json,
                TableFormat::Csv => tables::Format::Csv,
            };
            Ok((tables::render(which, f, ell)?, true))
        }
        Command::Verify { format } => {
            let r = cmd_verify();
            let text = match format {
                Format::Text => r.to_text(),
                Format::Json => json(&serde_json::to_value(&r).expect("serializable")),
            };
            Ok((text, r.all_passed()))
        }
        Command::Knit { ty, affine, start, read, kill, max_layers, format } => {
            let g = build_diagram(ty, affine)?;
            let kill: Vec<&str> = kill.iter().map(String::as_str).collect();
            let mut p = KnitProblem::new(&g, &start, &read, &kill)?;
            p.max_layers = max_layers;
            let t = knit(&p)?;
            let text = match format {
                Format::Text => t.grid(),
                Format::Json => json(&t.to_json()),
            };
            Ok((text, true))
        }
        Command::Monodromy { ell, word, format } => {
            let strip = Strip::new(ell)?;
            let w = strip.parse(&word)?;
            let reduced = w.reduce();
            let k = strip.k_matrix(&reduced);
            let text = match format {
                Format::Text => {
                    let mut s = format!("{}\n", reduced.render());
                    match &k {
                        Ok(m) => s.push_str(&format!("K = {m:?}\n")),
                        Err(e) => s.push_str(&format!("K: {e}\n")),
                    }
                    s
                }
                Format::Json => json(&serde_json::json!({
                    "schema_version": 1,
                    "ell": ell,
                    "word": word,
                    "source": reduced.source.to_string(),
                    "target": reduced.target.to_string(),
                    "closed": reduced.is_closed(),
                    "reduced": reduced.render(),
                    "identity": reduced.is_empty(),
                    "k_matrix": k.as_ref().ok(),
                })),
            };
            Ok((text, true))
        }
    }
}

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match run(cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(if ok { 0 } else { 1 })
}

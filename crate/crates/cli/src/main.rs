use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod run;

#[derive(Parser)]
#[command(name = "maxvar", version, about = "Exact maximal functions and their variation for step functions and sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Instance JSON given inline.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Centered,
    OneSided,
    Uncentered,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal function at a point.
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "centered")]
        variant: Operator,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Total variation of the instance.
    Var {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Total variation of the maximal function.
    Maxvar {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "centered")]
        variant: Operator,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Var(Mf) against Var(f) - ||a|-|b||/2.
    Check {
        #[command(flatten)]
        source: Source,
        /// Require separated nonzero pieces.
        #[arg(long)]
        theorem1: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Seeded search for instances with small or negative margin.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value = "alternating")]
        class: String,
        #[arg(long, default_value = "discrete")]
        domain: String,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 12)]
        k_max: usize,
        #[arg(long, default_value_t = 16)]
        value_bound: i64,
        #[arg(long, default_value_t = 3)]
        breakpoint_bound: i64,
        #[arg(long)]
        no_shrink: bool,
        /// Write one report per line here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sampling audit at resolutions N* <= N.
    Transfer {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n_star: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute the worked examples.
    Reproduce {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// CSV of x, Mf(x) on a dyadic grid.
    SampleCurve {
        #[command(flatten)]
        source: Source,
        /// Grid spacing 2^-resolution.
        #[arg(long, default_value_t = 3)]
        resolution: u32,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
        #[arg(long, value_enum, default_value = "centered")]
        variant: Operator,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

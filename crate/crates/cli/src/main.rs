use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hadsec_cli::{
    binomial_check, degeneration_demo, dim_hadamard, dim_secant, generic_hrank_cmd,
    parse_descriptor, parse_r_vector, verify_table_cmd, Format, Outcome, RunConfig,
};
use hadsec_core::{TableKind, DEFAULT_PRIME};

/// Dimensions of Hadamard products of secant varieties of toric varieties.
#[derive(Parser)]
#[command(name = "hadsec", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Prime for the modular rank computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Random parameter draws per round.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra rounds with fresh seeds before switching primes.
    #[arg(long, global = true, default_value_t = 5)]
    retries: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Veronese,
    Binary,
    Experiments,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the secant variety σ_R(X).
    DimSecant {
        descriptor: String,
        #[arg(long)]
        r: usize,
    },
    /// Dimension of the Hadamard product σ_{r_1}(X) ⋆ ... ⋆ σ_{r_m}(X).
    DimHadamard {
        descriptor: String,
        /// Comma-separated r-vector.
        #[arg(long)]
        r: String,
    },
    /// Smallest m with σ_r(X)^{⋆m} filling the ambient space.
    GenericHrank {
        descriptor: String,
        #[arg(long)]
        r: usize,
        /// Extra Hadamard powers to try beyond the expected value.
        #[arg(long)]
        margin: Option<usize>,
    },
    /// Recompute a table of check cases.
    VerifyTable {
        #[arg(value_enum)]
        table: TableArg,
        /// Include the long sweeps.
        #[arg(long)]
        extended: bool,
    },
    /// Numerical check of the degeneration to the secant parametrization.
    DegenerationDemo {
        #[arg(default_value = "rnc:8")]
        descriptor: String,
        #[arg(long, default_value = "2,3")]
        r: String,
        /// Comma-separated rationals such as 1/10,1/100.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Classify a Laurent-polynomial support given as one point per line.
    BinomialCheck {
        /// Support file, or `-` for stdin.
        file: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Outcome> {
    let g = cli.global;
    let cfg = RunConfig {
        prime: g.prime,
        trials: g.trials,
        seed: g.seed,
        max_retries: g.retries,
        format: g.format,
        parallel: !g.sequential,
    };
    let outcome = match cli.command {
        Command::DimSecant { descriptor, r } => {
            dim_secant(&cfg, &parse_descriptor(&descriptor)?, r)?
        }
        Command::DimHadamard { descriptor, r } => {
            dim_hadamard(&cfg, &parse_descriptor(&descriptor)?, &parse_r_vector(&r)?)?
        }
        Command::GenericHrank {
            descriptor,
            r,
            margin,
        } => generic_hrank_cmd(&cfg, &parse_descriptor(&descriptor)?, r, margin)?,
        Command::VerifyTable { table, extended } => {
            let kind = match table {
                TableArg::Veronese => TableKind::Veronese,
                TableArg::Binary => TableKind::Binary,
                TableArg::Experiments => TableKind::Experiments,
            };
            verify_table_cmd(&cfg, kind, extended)?
        }
        Command::DegenerationDemo { descriptor, r, nu } => degeneration_demo(
            &cfg,
            &parse_descriptor(&descriptor)?,
            &parse_r_vector(&r)?,
            nu.as_deref(),
        )?,
        Command::BinomialCheck { file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?
            };
            binomial_check(&cfg, &text)?
        }
    };
    match g.out {
        Some(path) => fs::write(&path, &outcome.output)
            .with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(outcome.output.as_bytes())?,
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(o) if o.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

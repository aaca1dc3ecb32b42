use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use iwr_cli::commands::{self, Output};
use iwr_cli::config::{parse_branches, parse_precision, CliError, JobConfig};

#[derive(Parser)]
#[command(name = "iwr", version, about = "Eisenstein congruences, modular symbols and Iwasawa invariants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Coefficient and degree precision, `M,D`.
    #[arg(long, global = true)]
    precision: Option<String>,
    #[arg(long, global = true, env = "IWR_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bundled label (such as 11.2.a.a) or path to a JSON file.
    #[arg(long, global = true)]
    newform: Vec<PathBuf>,
    /// Character descriptor: triv<N>, quad<D>, teich<p>^<r> or mod=N;gens=g:e,...;ord=n.
    #[arg(long = "char", global = true)]
    chars: Vec<String>,
    /// Branch range `a..b`.
    #[arg(long, global = true)]
    branches: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    Chars,
    Eisenstein {
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    Congruence,
    ModsymTable,
    PadicL {
        /// Primes whose Euler factors are multiplied in, comma separated.
        #[arg(long, value_delimiter = ',')]
        sigma0: Vec<u64>,
    },
    Iwasawa {
        /// Serialized series `p, M, D, [v:u, ...]`.
        series: String,
    },
    VerifyExample {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
}

fn config(cli: &Cli) -> Result<JobConfig, CliError> {
    let mut cfg = JobConfig {
        prime: cli.prime,
        newforms: cli.newform.clone(),
        chars: cli.chars.clone(),
        cache_dir: cli.cache_dir.clone(),
        out: cli.out.clone(),
        ..Default::default()
    };
    if let Some(s) = &cli.precision {
        let (m, d) = parse_precision(s)?;
        cfg.m = m;
        cfg.d = d;
    }
    if let Some(s) = &cli.branches {
        cfg.branches = Some(parse_branches(s)?);
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = config(cli)?;
    let out = match &cli.cmd {
        Cmd::Chars => commands::chars(&cfg)?,
        Cmd::Eisenstein { weight, terms } => commands::eisenstein(&cfg, *weight, *terms)?,
        Cmd::Congruence => commands::congruence(&cfg)?,
        Cmd::ModsymTable => commands::modsym_table(&cfg)?,
        Cmd::PadicL { sigma0 } => commands::padic_l(&cfg, sigma0)?,
        Cmd::Iwasawa { series } => commands::iwasawa(series)?,
        Cmd::VerifyExample { n } => commands::verify(&cfg, *n)?,
    };
    if let Some(path) = &cfg.out {
        std::fs::write(path, &out.text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.out.is_none() {
                print!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("iwr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

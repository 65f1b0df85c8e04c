//! `verlinde`: exact Verlinde numbers, their refinements, and surgery structure counts.

mod cache;
mod commands;
mod parse;
mod record;

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use verlinde_core::verlinde::Flavor;
use verlinde_core::{Error, PrecisionPolicy};

use cache::ResultCache;
use commands::{selection, Runner, TableFormat};
use parse::{parse_range, InputError};

#[derive(Parser)]
#[command(name = "verlinde", version, about = "Exact Verlinde numbers and their spin refinements")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Initial working precision in bits
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,
    /// Give up above this many bits (exit code 3)
    #[arg(long = "max-prec", global = true, default_value_t = 8192)]
    max_prec: u32,
    /// Worker threads for sums and table cells
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print one JSON record instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time
    #[arg(long, global = true)]
    timing: bool,
    /// Result cache file
    #[arg(long, global = true, env = "VERLINDE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct Structures {
    /// One structure as "a1,b1;a2,b2;…" or [[a1,b1],…]; the genus is the pair count
    #[arg(long)]
    sigma: Option<String>,
    /// Evaluate every structure of the given genus
    #[arg(long)]
    all: bool,
    /// Evaluate every structure and check that they sum to the total
    #[arg(long)]
    split: bool,
    /// Genus used with --all and --split
    #[arg(long, default_value_t = 1)]
    genus: u32,
}

#[derive(Subcommand)]
enum Command {
    /// The Verlinde number d_{N,K}(g)
    Verlinde {
        n: u32,
        k: u32,
        g: u32,
        /// Divide by N'^g (the PU(N) number)
        #[arg(long)]
        pu: bool,
        /// Cross-check against the fusion-ring trace
        #[arg(long)]
        oracle: bool,
    },
    /// Spin refinement with modulus N/step
    Spin {
        n: u32,
        k: u32,
        #[command(flatten)]
        structures: Structures,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Cohomological refinement with modulus N/step
    Coho {
        n: u32,
        k: u32,
        #[command(flatten)]
        structures: Structures,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// PU(N) spin refinement with modulus gcd(N,K)
    PuSpin {
        n: u32,
        k: u32,
        #[command(flatten)]
        structures: Structures,
    },
    /// Compare the PU numbers of (N,K) and (K,N) for g = 0..=gmax
    Duality {
        n: u32,
        k: u32,
        #[arg(long, default_value_t = 3)]
        gmax: u32,
    },
    /// Solve the characteristic equation of a linking matrix mod d
    Surgery {
        /// Symmetric integer matrix as JSON, e.g. "[[0,1],[1,0]]"
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        d: u32,
    },
    /// Verlinde and PU numbers over ranges of N, K and g
    Table {
        #[arg(long = "N", value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[arg(long = "K", value_parser = parse_range)]
        k: RangeInclusive<u32>,
        #[arg(long = "g", value_parser = parse_range)]
        g: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let Global {
        prec,
        max_prec,
        jobs,
        json,
        timing,
        cache,
    } = cli.global;
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let runner = Runner {
        policy: PrecisionPolicy::new(prec, max_prec, PrecisionPolicy::default().integrality_gap)?,
        cache: cache.as_deref().map(ResultCache::open).transpose()?,
    };
    let start = Instant::now();
    let stdout = io::stdout();
    let mut out = stdout.lock();

    let record = match cli.command {
        Command::Verlinde { n, k, g, pu, oracle } => runner.verlinde(n, k, g, pu, oracle)?,
        Command::Spin { n, k, structures: s, step } => {
            let sel = selection(s.sigma, s.all, s.split, s.genus)?;
            runner.refined(n, k, Flavor::Spin { step_power: step }, &sel)?
        }
        Command::Coho { n, k, structures: s, step } => {
            let sel = selection(s.sigma, s.all, s.split, s.genus)?;
            runner.refined(n, k, Flavor::Coho { step_power: step }, &sel)?
        }
        Command::PuSpin { n, k, structures: s } => {
            let sel = selection(s.sigma, s.all, s.split, s.genus)?;
            runner.refined(n, k, Flavor::PuSpin, &sel)?
        }
        Command::Duality { n, k, gmax } => runner.duality(n, k, gmax)?,
        Command::Surgery { matrix, d } => runner.surgery(&matrix, d)?,
        Command::Table { n, k, g, format } => {
            runner.table(n, k, g, format, &mut out)?;
            if timing {
                eprintln!("elapsed: {} us", start.elapsed().as_micros());
            }
            if let Some(c) = &runner.cache {
                c.save()?;
            }
            return Ok(());
        }
    };
    if let Some(c) = &runner.cache {
        c.save()?;
    }
    let elapsed = u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX);
    if json {
        let mut record = record;
        record.elapsed_us = timing.then_some(elapsed);
        serde_json::to_writer(&mut out, &record)?;
        writeln!(out)?;
    } else {
        out.write_all(record.render_text().as_bytes())?;
        if timing {
            eprintln!("elapsed: {elapsed} us");
        }
    }
    Ok(())
}

/// 2 for bad or inadmissible input, 3 when precision runs out, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<InputError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::PrecisionExhausted { .. } => 3,
                Error::InvalidParameters(_)
                | Error::NotInAlcove(..)
                | Error::Inadmissible(_)
                | Error::ModulusMismatch { .. }
                | Error::GenusMismatch { .. }
                | Error::StepDoesNotDivide { .. }
                | Error::GuardExceeded(_)
                | Error::Overflow(_) => 2,
                Error::NonIntegral(_) | Error::Negative(_) | Error::OddStabilizer(_) | Error::Mismatch(_) => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

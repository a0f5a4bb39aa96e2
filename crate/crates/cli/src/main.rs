use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mlst::codec::{self, Strategy, DEFAULT_WINDOW_LOG, MAX_WINDOW_LOG};
use mlst::mlst::lpf_refs_with_stats;
use mlst::oracle::rmst_build_and_query;
use mlst::{CostModel, Error};

#[derive(Parser)]
#[command(
    name = "mlst",
    version,
    about = "LZ77 with rightmost equal-cost offsets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gamma,
    Binary,
}

impl From<Model> for CostModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Gamma => CostModel::Gamma,
            Model::Binary => CostModel::Binary,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an MLST container.
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Window size as a power of two.
        #[arg(long, default_value_t = DEFAULT_WINDOW_LOG)]
        window_log: u8,
        #[arg(long, value_enum, default_value = "gamma")]
        model: Model,
    },
    /// Restore the original bytes from a container.
    Decompress { input: PathBuf, output: PathBuf },
    /// Offset bits of the greedy parse under each offset strategy.
    Stats {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WINDOW_LOG)]
        window_log: u8,
        #[arg(long, value_enum, default_value = "gamma")]
        model: Model,
    },
    /// Build time of the multilayer index against the single rightmost tree.
    Bench {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WINDOW_LOG)]
        window_log: u8,
    },
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).with_context(|| format!("cannot write {}", path.display()))
}

fn check_window_log(window_log: u8) -> Result<()> {
    if window_log > MAX_WINDOW_LOG {
        bail!("--window-log {window_log} is above the maximum {MAX_WINDOW_LOG}");
    }
    Ok(())
}

fn window(window_log: u8, len: usize) -> usize {
    (1usize << window_log).min(len.max(1))
}

fn compress(input: &Path, output: &Path, window_log: u8, model: Model) -> Result<()> {
    check_window_log(window_log)?;
    let data = read(input)?;
    let packed = codec::compress(&data, model.into(), window_log)?;
    write(output, &packed)?;
    let ratio = if data.is_empty() {
        0.0
    } else {
        packed.len() as f64 / data.len() as f64
    };
    println!(
        "{}: {} -> {} bytes (ratio {ratio:.4})",
        input.display(),
        data.len(),
        packed.len()
    );
    Ok(())
}

/// Byte offset inside the container where decoding stopped, when known.
fn corrupt_at(err: &Error) -> Option<u64> {
    match err {
        Error::Truncated { bit } | Error::Overflow { bit } => Some(bit / 8),
        Error::BadMagic => Some(0),
        Error::BadVersion(_) => Some(4),
        Error::BadModel(_) => Some(5),
        Error::BadWindowLog(_) => Some(6),
        _ => None,
    }
}

fn decompress(input: &Path, output: &Path) -> Result<()> {
    let packed = read(input)?;
    let data = codec::decompress(&packed).map_err(|e| {
        let place = corrupt_at(&e).map_or(String::new(), |at| format!(" at byte {at}"));
        anyhow::anyhow!("corrupt stream in {}{place}: {e}", input.display())
    })?;
    write(output, &data)?;
    println!(
        "{}: {} -> {} bytes",
        input.display(),
        packed.len(),
        data.len()
    );
    Ok(())
}

fn stats(input: &Path, window_log: u8, model: Model) -> Result<()> {
    check_window_log(window_log)?;
    let data = read(input)?;
    let bill = codec::offset_bills(&data, model.into(), window(window_log, data.len()))?;
    println!("input={} bytes={}", input.display(), data.len());
    println!("literals={} matches={}", bill.literals, bill.matches);
    for s in Strategy::ALL {
        println!("offset_bits.{}={}", s.name(), bill.bits(s));
    }
    Ok(())
}

fn bench(inputs: &[PathBuf], window_log: u8) -> Result<()> {
    check_window_log(window_log)?;
    let mut rows = Vec::new();
    for path in inputs {
        let data = read(path)?;
        let m = window(window_log, data.len());
        let n = data.len().max(1) as f64;

        let start = Instant::now();
        let (_, mlst_stats) = lpf_refs_with_stats(&data, CostModel::Gamma, m)?;
        let mlst_ns = start.elapsed().as_nanos() as f64 / n;

        let rmst = rmst_build_and_query(&data, m)?;
        let rmst_ns = rmst.elapsed.as_nanos() as f64 / n;

        rows.push((
            path.display().to_string(),
            data.len(),
            mlst_ns,
            rmst_ns,
            mlst_stats.total(),
            rmst.stats.position_updates,
        ));
    }

    println!(
        "{:<32} {:>12} {:>14} {:>14} {:>8} {:>14} {:>14}",
        "input", "bytes", "mlst ns/byte", "rmst ns/byte", "delta", "mlst ops", "rmst updates"
    );
    for (name, bytes, mlst_ns, rmst_ns, ops, updates) in &rows {
        let delta = mlst_ns / rmst_ns.max(f64::MIN_POSITIVE);
        println!(
            "{name:<32} {bytes:>12} {mlst_ns:>14.1} {rmst_ns:>14.1} {delta:>8.2} {ops:>14} {updates:>14}"
        );
    }
    for (name, bytes, mlst_ns, rmst_ns, ops, updates) in &rows {
        let delta = mlst_ns / rmst_ns.max(f64::MIN_POSITIVE);
        println!(
            "bench input={name} bytes={bytes} mlst_ns_per_byte={mlst_ns:.1} \
             rmst_ns_per_byte={rmst_ns:.1} delta={delta:.3} mlst_ops={ops} rmst_updates={updates}"
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compress {
            input,
            output,
            window_log,
            model,
        } => compress(&input, &output, window_log, model),
        Command::Decompress { input, output } => decompress(&input, &output),
        Command::Stats {
            input,
            window_log,
            model,
        } => stats(&input, window_log, model),
        Command::Bench { inputs, window_log } => bench(&inputs, window_log),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

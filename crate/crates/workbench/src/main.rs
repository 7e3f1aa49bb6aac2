use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use uf_explain_workbench::bench::{append_csv, run_bench, write_csv};
use uf_explain_workbench::{parse_script, run_script, Shape, Workload};

#[derive(Parser)]
#[command(name = "ufe", about = "Union-find with explanations: workloads, scripts, benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a workload as a script.
    Gen {
        #[arg(long, value_enum)]
        shape: Shape,
        /// Exponent; the workload has 2^n elements.
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a script, checking every certificate.
    Run {
        file: PathBuf,
        /// Write certificates here instead of standard output.
        #[arg(long)]
        emit_proofs: Option<PathBuf>,
    },
    /// Time a workload and print one CSV row.
    Bench {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append to this CSV file instead of printing.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Cmd::Gen { shape, n, queries, seed, out } => {
            let w = Workload::generate(shape, n, queries, seed)?;
            let mut out = output(out.as_ref())?;
            w.write_script(&mut out)?;
            out.flush()?;
        }
        Cmd::Run { file, emit_proofs } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let commands = parse_script(&text)?;
            let mut out = output(emit_proofs.as_ref())?;
            let result = run_script(&commands, &mut out);
            out.flush()?;
            drop(out);
            match result {
                Ok(r) => eprintln!(
                    "commands: {}, effective unions: {}, redundant unions: {}, validated proofs: {}, none: {}, failures: 0",
                    r.commands, r.effective_unions, r.redundant_unions, r.validated, r.unprovable
                ),
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Cmd::Bench { shape, n, queries, seed, csv } => {
            let record = run_bench(shape, n, queries, seed)?;
            match csv {
                Some(path) => append_csv(&path, &[record])?,
                None => write_csv(io::stdout().lock(), &[record])?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

//! `dft`: run forest or graph scripts, or time the reference workloads.

mod script;
mod session;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dft_core::workload::{self, Profile};

use script::{Line, Mode};
use session::{ForestSession, GraphSession};

#[derive(Parser, Debug)]
#[command(
    name = "dft",
    version,
    about = "Dynamic forest and incremental biconnectivity scripts"
)]
struct Args {
    /// Script file; standard input when absent.
    script: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Mode::Forest)]
    mode: Mode,

    /// Replay every command against the brute-force oracle and stop at the
    /// first disagreement.
    #[arg(long)]
    verify: bool,

    /// Seed for the benchmark workloads.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Time a workload profile (query-heavy, evert-heavy or mixed) over
    /// doubling forest sizes instead of running a script.
    #[arg(long, value_name = "PROFILE")]
    bench: Option<Profile>,

    /// Operations per benchmark size.
    #[arg(long)]
    ops: Option<usize>,

    /// Write answers here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

const PARSE_FAILURE: u8 = 1;
const DIVERGENCE: u8 = 2;

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(PARSE_FAILURE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dft: {e}");
            ExitCode::from(PARSE_FAILURE)
        }
    }
}

fn run(args: &Args) -> io::Result<ExitCode> {
    let mut out: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    if let Some(profile) = args.bench {
        bench(profile, args.ops, args.seed, &mut out)?;
        out.flush()?;
        return Ok(ExitCode::SUCCESS);
    }
    let text = match &args.script {
        Some(p) => fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let code = match args.mode {
        Mode::Forest => match script::parse_forest(&text) {
            Ok(lines) => {
                let mut s = ForestSession::new(args.verify);
                replay(&lines, |c| s.run(c), &mut out)?
            }
            Err(e) => parse_failure(e),
        },
        Mode::Graph => match script::parse_graph(&text) {
            Ok(lines) => {
                let mut s = GraphSession::new(args.verify);
                replay(&lines, |c| s.run(c), &mut out)?
            }
            Err(e) => parse_failure(e),
        },
    };
    out.flush()?;
    Ok(code)
}

fn parse_failure(e: script::ParseError) -> ExitCode {
    eprintln!("dft: parse error at {e}");
    ExitCode::from(PARSE_FAILURE)
}

fn replay<C>(
    lines: &[Line<C>],
    mut exec: impl FnMut(&C) -> Result<Option<String>, dft_core::lockstep::Divergence>,
    out: &mut dyn Write,
) -> io::Result<ExitCode> {
    for line in lines {
        match exec(&line.cmd) {
            Ok(Some(answer)) => writeln!(out, "{answer}")?,
            Ok(None) => {}
            Err(d) => {
                out.flush()?;
                eprintln!("dft: divergence at line {}: {d}", line.no);
                return Ok(ExitCode::from(DIVERGENCE));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(profile: Profile, ops: Option<usize>, seed: u64, out: &mut dyn Write) -> io::Result<()> {
    // Everting a path costs time linear in its depth, so that profile uses
    // smaller sizes and fewer operations.
    let (sizes, default_ops) = match profile {
        Profile::EvertHeavy => (8..=13, 100),
        _ => (10..=17, 100_000),
    };
    let ops = ops.unwrap_or(default_ops);
    let reports: Vec<_> = sizes
        .map(|k| workload::run(profile, 1 << k, ops, seed))
        .collect();
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    writeln!(
        out,
        "mean time(2n)/time(n) = {:.3}",
        workload::mean_doubling_ratio(&reports)
    )
}

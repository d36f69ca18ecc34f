mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Raised when an identity evaluates to different sides.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        anyhow::ensure!(threads >= 1, "--threads must be at least 1");
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let mut out = output::open(cli.output.as_deref())?;
    let ctx = commands::Ctx {
        format: cli.format,
        sieve_limit: cli.sieve_limit,
    };
    match &cli.command {
        Command::Verify(id) => commands::verify(&ctx, id, &mut out),
        Command::Scan {
            id,
            x_min,
            x_max,
            step,
        } => commands::scan(&ctx, id, *x_min, *x_max, *step, &mut out),
        Command::Bench { id, rhs_only } => commands::bench(&ctx, id, *rhs_only, &mut out),
        Command::Asym { identity, r, grid } => commands::asym(&ctx, identity, *r, grid, &mut out),
        Command::RhScan { k, grid } => commands::rh_scan(&ctx, *k, grid, &mut out),
        Command::Table { function, k, x } => commands::table(&ctx, function, *k, *x, &mut out),
    }?;
    out.flush()?;
    Ok(())
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let is_mismatch = err.downcast_ref::<Mismatch>().is_some()
                || matches!(
                    err.downcast_ref::<moebius_core::Error>(),
                    Some(moebius_core::Error::Invariant(_))
                );
            ExitCode::from(if is_mismatch { 1 } else { 2 })
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "moebius-lab",
    version,
    about = "Verify, scan and benchmark Moebius grid-sum identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Sieve limit (defaults to the largest argument referenced)
    #[arg(long, global = true)]
    pub sieve_limit: Option<u64>,

    /// Worker threads
    #[arg(long, env = "MOEBIUS_LAB_THREADS", global = true)]
    pub threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate both sides of one identity
    Verify(IdentityArgs),
    /// Verify an identity at every point of a range
    Scan {
        #[command(flatten)]
        id: IdentityArgs,
        #[arg(long, default_value_t = 1)]
        x_min: u64,
        #[arg(long)]
        x_max: Option<u64>,
        #[arg(long, default_value_t = 1)]
        step: u64,
    },
    /// Time the enumeration side against the sieve side
    Bench {
        #[command(flatten)]
        id: IdentityArgs,
        /// Skip the enumeration side
        #[arg(long)]
        rhs_only: bool,
    },
    /// Compare exact sums against their main terms
    Asym {
        /// cor3, th2_main or th15_lead
        #[arg(long)]
        identity: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
    },
    /// Print the sum of (-k)^omega(n) over n <= x, scaled by sqrt(x)
    RhScan {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
    },
    /// Tabulate a named multiplicative function
    Table {
        #[arg(long)]
        function: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        x: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct IdentityArgs {
    /// th1, th15, th2, th3, cor3, cor9.<line>, classic, lemma.<id>
    #[arg(long)]
    pub identity: String,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long)]
    pub e: Option<u32>,
    /// Function name, e.g. mu, one, id, inv_id, tau_3
    #[arg(long)]
    pub f: Option<String>,
    /// Closed-form line for cor9
    #[arg(long)]
    pub line: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
}

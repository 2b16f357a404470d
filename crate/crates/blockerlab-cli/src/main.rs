//! Command-line front end for the blocker calculus.
//!
//! One binary with verb/subverb structure. Exit codes: 0 on success or when
//! every verification passes, 1 when at least one verification fails (the
//! report is still emitted), 2 on usage or input errors. In `--format json`
//! mode exactly one JSON document is written to stdout and any human
//! companion text goes to stderr.

mod ops;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use blockerlab::poset::DEFAULT_ENUM_LIMIT;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "blockerlab",
    version,
    about = "Blocker, deletion, and contraction calculus on clutters and antichain lattices"
)]
pub struct Cli {
    /// Output format; json mode emits one JSON document on stdout.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Cap on poset size for antichain enumeration.
    #[arg(
        long,
        global = true,
        env = "BLOCKERLAB_LIMIT_ELEMENTS",
        default_value_t = DEFAULT_ENUM_LIMIT
    )]
    pub limit_elements: usize,

    /// Require loaded posets to have a greatest element as well.
    #[arg(long, global = true)]
    pub strict_bounded: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Set-theoretic maps and checks on clutter files.
    Clutter {
        #[command(subcommand)]
        command: ClutterCmd,
    },
    /// Order-theoretic maps and checks on poset files.
    Poset {
        #[command(subcommand)]
        command: PosetCmd,
    },
    /// The generic map-table engine: condition checks, the theorem, sweeps.
    Maps {
        #[command(subcommand)]
        command: MapsCmd,
    },
    /// Generators for posets, subset lattices, and clutter enumerations.
    Gen {
        #[command(subcommand)]
        command: GenCmd,
    },
    /// Cross-checks between the set-theoretic and order-theoretic sides.
    Bridge {
        #[command(subcommand)]
        command: BridgeCmd,
    },
}

#[derive(Args)]
pub struct XArg {
    /// Comma-separated element labels; empty or omitted means the empty set.
    #[arg(long, default_value = "")]
    pub x: String,
}

#[derive(Subcommand)]
pub enum ClutterCmd {
    /// Compute the blocker of a clutter.
    Blocker { file: String },
    /// Delete a subset of the ground set.
    Delete {
        file: String,
        #[command(flatten)]
        x: XArg,
    },
    /// Contract a subset of the ground set.
    Contract {
        file: String,
        #[command(flatten)]
        x: XArg,
    },
    /// Check that the blocker applied twice is the identity.
    VerifyInvolution { file: String },
    /// Check both blocker/deletion/contraction duality identities.
    VerifySeymour {
        file: String,
        #[command(flatten)]
        x: XArg,
        /// Sweep every subset of the ground set instead of a single X.
        #[arg(long, conflicts_with = "x")]
        all: bool,
    },
}

#[derive(Subcommand)]
pub enum PosetCmd {
    /// Enumerate all antichains of the poset.
    Antichains { file: String },
    /// Apply the order-theoretic blocker to an antichain.
    Bmap {
        file: String,
        #[arg(long)]
        antichain: String,
    },
    /// Delete an atom subset from an antichain.
    Delete {
        file: String,
        #[arg(long)]
        antichain: String,
        #[command(flatten)]
        x: XArg,
    },
    /// Contract an antichain by an atom subset.
    Contract {
        file: String,
        #[arg(long)]
        antichain: String,
        #[command(flatten)]
        x: XArg,
    },
    /// Check the two blocker lower bounds for deletion and contraction.
    VerifyLemma {
        file: String,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        antichain: Option<String>,
        #[command(flatten)]
        x: XArg,
        /// Sweep every (antichain, atom-subset) pair.
        #[arg(long)]
        all: bool,
    },
    /// Check the five-term interleaving chain.
    VerifyCorollary {
        file: String,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        antichain: Option<String>,
        #[command(flatten)]
        x: XArg,
        #[arg(long)]
        all: bool,
    },
    /// Check that the blocker applied three times equals one application.
    VerifyTriple {
        file: String,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        antichain: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Check the coclosure/closure laws of deletion and contraction.
    VerifyOperatorLaws {
        file: String,
        #[command(flatten)]
        x: XArg,
        /// Sweep every atom subset.
        #[arg(long, conflicts_with = "x")]
        all: bool,
    },
}

#[derive(Subcommand)]
pub enum MapsCmd {
    /// Run the side-condition checks on the given map tables.
    Check {
        poset: String,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Run the full interleaving-theorem engine on a map triple.
    VerifyTheorem {
        poset: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Randomized sweep: generate seeded instances and verify every
    /// applicable one.
    Sweep {
        /// Largest poset size to draw.
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// Applicable instances to accumulate.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
pub enum GenCmd {
    /// A seeded random bounded poset.
    RandomPoset {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// The lattice of all subsets of {1..n}.
    BooleanLattice {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Every clutter on the ground set {1..n}.
    AllClutters {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum BridgeCmd {
    /// Cross-check blocker, deletion, and contraction through the
    /// subset-lattice embedding.
    Check {
        file: String,
        #[command(flatten)]
        x: XArg,
        /// Sweep every subset of the ground set.
        #[arg(long, conflicts_with = "x")]
        all: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            };
        }
    };
    match ops::run(&cli) {
        Ok(outcome) => {
            outcome.emit(cli.format);
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

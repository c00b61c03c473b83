//! Command line interface for the salpeter library: configuration ingestion,
//! sweep orchestration, and deterministic CSV emission.
//!
//! Every quantity crossing the interface is a dimensionless ratio. Massive
//! models use E/m, k/m, 2ma, M/m and x m; massless models replace the mass by
//! |E_B^1| (first binding energy) and use a|E_B| for geometry.

mod commands;
mod config;
mod error;
mod grid;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::grid::Grid;

/// Bound states, scattering observables, and renormalization-group flow of a
/// one-dimensional semirelativistic particle with N renormalized Dirac-delta
/// potentials.
#[derive(Parser)]
#[command(name = "salpeter", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args)]
pub struct Common {
    /// JSON model configuration {"mass": .., "centers": [..], "bindings": [..]}.
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,

    /// Sweep grid start:stop:count, endpoints inclusive; count 0 emits only
    /// the header. The swept quantity and its default depend on the command.
    #[arg(long, value_name = "START:STOP:COUNT", value_parser = grid::parse_grid,
          allow_hyphen_values = true)]
    pub grid: Option<Grid>,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Worker threads for the sweep; 0 uses all cores.
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub threads: usize,

    /// Significant digits of emitted floats.
    #[arg(long, default_value_t = 12, value_name = "P",
          value_parser = clap::value_parser!(u8).range(6..=17))]
    pub precision: u8,
}

#[derive(Subcommand)]
pub enum Command {
    /// Principal matrix entries and eigenvalue flows over an energy sweep.
    Phi {
        #[command(flatten)]
        common: Common,
    },
    /// Bound-state count, weak-class count, and energies over a geometry sweep.
    Bound {
        #[command(flatten)]
        common: Common,
    },
    /// Normalized bound-state wave function on a position grid.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        /// Bound-state index, 0 = ground state.
        #[arg(long, default_value_t = 0, value_name = "I")]
        state: usize,
    },
    /// Reflection and transmission coefficients over a momentum sweep.
    Scatter {
        #[command(flatten)]
        common: Common,
    },
    /// Unwrapped scattering phase shift over a momentum sweep.
    Phase {
        #[command(flatten)]
        common: Common,
    },
    /// Twin-center reflection against separation at a fixed probe momentum,
    /// locating the resonance dip and the bound-state count flip.
    Anomaly {
        #[command(flatten)]
        common: Common,
        /// Probe momentum over the mass (massless: over |E_B|).
        #[arg(long = "k-probe", default_value_t = 1e-3, value_name = "K")]
        k_probe: f64,
        /// Use the asymptotic large-separation off-diagonal approximation.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Kronig-Penney transmission tables for 1, 2, 4, and 8 centers, one
    /// file per center count plus a gap summary (requires --out).
    Kp {
        #[command(flatten)]
        common: Common,
        /// Lattice spacing times the mass (massless: times |E_B|).
        #[arg(long, default_value_t = 2.0, value_name = "D")]
        spacing: f64,
    },
    /// Running coupling of every center over a renormalization-scale sweep.
    Rg {
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = commands::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "rdu-premia",
    version,
    about = "Risk and probability premia under expected utility, dual theory and rank-dependent utility"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Values from `--config` take precedence.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Utility: linear, cara:a, crra:eta, log, quadratic:b, or a JSON object
    #[arg(long, global = true)]
    pub utility: Option<String>,
    /// Weighting: identity, power:theta, prelec:alpha,beta, tk:gamma,
    /// composed:<transform>@<base>, or a JSON object
    #[arg(long, global = true)]
    pub weighting: Option<String>,
    /// Initial wealth
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    /// Pivot probability in (0, 1)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub p0: Option<f64>,
    /// Payoff size of the added risk
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps1: Option<f64>,
    /// Probability size of the added risk, at most min(p0, 1 - p0)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps2: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with any of the settings above plus subcommand options
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a lottery: RDU value, dual-form value, certainty equivalent
    Eval {
        /// Lottery file: JSON array of {"x", "p"} or CSV with columns x,p
        #[arg(long)]
        lottery: Option<PathBuf>,
    },
    /// All six premia, exact and approximate, at one scenario
    ///
    /// The low and high outer states of the ex-ante construction cancel from
    /// the indifference equations, so the premia depend on x0, p0, eps1 and
    /// eps2 only.
    Premia,
    /// Premia along one scenario axis, one row per grid point
    Sweep {
        #[arg(long, value_enum)]
        axis: Option<Axis>,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        /// Number of grid points, endpoints included
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Halve the risk size repeatedly and fit the order of the approximation error
    Convergence {
        #[arg(long, value_enum)]
        premium: Option<PremiumKind>,
        /// Number of halving levels
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Check whether decision maker 2 is at least as risk averse as decision maker 1
    ///
    /// Decision maker 1 is given by --utility/--weighting, decision maker 2 by
    /// --utility2/--weighting2 (each defaulting to its counterpart). With two
    /// linear utilities the DT conditions are checked, otherwise the RDU ones.
    Compare {
        #[arg(long)]
        utility2: Option<String>,
        #[arg(long)]
        weighting2: Option<String>,
        /// Seed for the cross-ratio quadruples
        #[arg(long)]
        seed: Option<u64>,
        /// Random quadruples per cross-ratio check
        #[arg(long)]
        quadruples: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Eps1,
    Eps2,
    P0,
    X0,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Eps1 => "eps1",
            Axis::Eps2 => "eps2",
            Axis::P0 => "p0",
            Axis::X0 => "x0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PremiumKind {
    Pi,
    Gamma,
    Rho,
    Lambda,
    Sigma,
    Mu,
}

impl PremiumKind {
    pub fn name(self) -> &'static str {
        match self {
            PremiumKind::Pi => "pi",
            PremiumKind::Gamma => "gamma",
            PremiumKind::Rho => "rho",
            PremiumKind::Lambda => "lambda",
            PremiumKind::Sigma => "sigma",
            PremiumKind::Mu => "mu",
        }
    }
}

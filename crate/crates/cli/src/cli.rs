use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lieverma", version, about = "Exact computations with Verma modules and two-sided ideals over p-integral rationals")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Root system type: A1, A2, A3, B2 or G2.
    #[arg(long = "type", global = true)]
    pub cartan_type: Option<String>,
    /// Highest weight as comma-separated simple-coroot pairings, e.g. `1,1/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Deformation level.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub height_cap: Option<u32>,
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Height of the weight components to extract.
    #[arg(long, global = true)]
    pub mu_height: Option<u32>,
    #[arg(long, global = true)]
    pub json: bool,
    /// `key=value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots, heights, rho and delta.
    RootSystem,
    #[command(subcommand)]
    Verma(VermaCommand),
    #[command(subcommand)]
    Ideals(IdealsCommand),
    /// Run the acceptance suite.
    VerifyAll {
        /// Restrict to these criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum VermaCommand {
    /// Act by an element of U(g) on a vector of M(lambda).
    Act {
        /// e.g. `e1*f1^2 - 1/2*h1`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Exponents of the PBW basis vector `f^B v_lambda`; defaults to `v_lambda`.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<u32>>,
    },
    /// Weight spaces up to the height cap.
    Weights,
    /// Singular vectors up to the height cap.
    Singular,
    /// Maximal submodule, simple quotient and submodule lattice.
    Submodules,
    /// Extract weight components of a seeded affinoid vector.
    Extract,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealChoice {
    Zero,
    Central,
    /// Ann L(lambda); sl2 with integral dominant lambda.
    Simple,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuotientChoice {
    Verma,
    Simple,
}

#[derive(Subcommand, Debug)]
pub enum IdealsCommand {
    /// Two-sided closure in U_{<=d}; defaults to the central-character generator.
    Closure {
        #[arg(long = "generator", allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// Annihilator of M(lambda) or of L(lambda) in U_{<=d}.
    Annihilator {
        #[arg(long, value_enum, default_value = "simple")]
        of: QuotientChoice,
    },
    DufloCheck,
    ControllerCheck {
        #[arg(long, value_enum, default_value = "central")]
        ideal: IdealChoice,
    },
    PhiCheck {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

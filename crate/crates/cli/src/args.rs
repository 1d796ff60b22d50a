use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use conjwidth::rootsys::DEFAULT_WEYL_CAP;

#[derive(Debug, Parser)]
#[command(name = "conjwidth", version, about = "Conjugacy width certificates for SU(n), root-system tables and finite-group oracles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Residual tolerance for certificates.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest Weyl group enumerated by exhaustive searches.
    #[arg(long = "weyl-cap", global = true, default_value_t = DEFAULT_WEYL_CAP)]
    pub weyl_cap: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f(theta) = 2(8/theta + 3)(2pi/theta + 1).
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Write g as a product of conjugates of h and h^-1 in SU(n).
    Decompose(DecomposeArgs),
    /// Re-check a certificate file.
    Verify {
        file: PathBuf,
    },
    /// Seeded batch of random decompositions.
    Trials(TrialArgs),
    /// Cartan matrix, Dynkin coloring and spanning-translate table.
    Rootinfo {
        /// Root system, e.g. A3, E7, G2.
        descriptor: String,
        /// Also search for the shortest list of translates.
        #[arg(long)]
        minimal: bool,
    },
    /// Finite-group checks.
    #[command(subcommand)]
    Oracles(OracleCommand),
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Matrix size for SU(n).
    #[arg(long)]
    pub n: usize,
    /// `random`, `diag:φ1,…,φn`, or a JSON file of rows of [re, im].
    #[arg(long, default_value = "random")]
    pub h: String,
    #[arg(long, default_value = "random")]
    pub g: String,
    /// Defaults to sigma-hat(h).
    #[arg(long)]
    pub theta: Option<f64>,
    /// Certificate path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Every base element has sigma-hat at least this; certificates use it as theta.
    #[arg(long = "theta-min")]
    pub theta_min: f64,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Commutator lengths; c(G) for perfect G.
    Clen {
        group: String,
        /// Report one element instead, in cycle notation.
        #[arg(long)]
        element: Option<String>,
    },
    /// Perfectness of a product and its commutator-width bound.
    Perfect {
        #[arg(required = true)]
        factors: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Seeded normal closures in a product, checked for stalk detection.
    Stalk {
        group: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact computations on immaculate line bundles of stacky fans.
#[derive(Debug, Parser)]
#[command(name = "immaculatum", version, about)]
pub struct Opts {
    /// Fan file (JSON with dim, rays, max_cones)
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,

    /// Builtin fan expression, e.g. "product(stacky_p1(2,3),projective_space(1))"
    #[arg(long, global = true)]
    pub builtin: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cap on the number of ray subsets enumerated (env IMMACULATUM_MAX_SUBSETS)
    #[arg(long, global = true)]
    pub max_subsets: Option<u64>,

    /// Cap on the number of arrangement cells enumerated
    #[arg(long, global = true)]
    pub max_cells: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the fan is a complete simplicial stacky fan
    Validate,
    /// Picard rank, torsion invariants, ray classes, canonical class
    Picard,
    /// Tempting ray subsets with their reduced homology ranks
    Tempting,
    /// Forbidden cones of all tempting subsets
    Cones,
    /// Thomsen zonotope: vertices, facets, interior and half-open classes
    Zonotope,
    /// Cohomology dimensions of a line bundle
    Cohomology {
        /// Divisor coefficients c0,...,c(n-1)
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Class coordinates a1,...,ar[;t1,...]
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Immaculacy test for a line bundle
    Immaculate {
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// All immaculate classes with free coordinates in a box
    Scan {
        /// Box lo:hi[,lo:hi...], one range per free coordinate
        #[arg(long = "box", allow_hyphen_values = true)]
        box_spec: String,
    },
    /// Decide whether infinitely many immaculate classes exist
    Infinite,
    /// Describe the asymptotic directions of immaculate classes
    Infinity,
    /// Immaculate family along a witness direction
    Witness {
        /// Direction w1,...,wr
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Piecewise-linear hull degeneracy check for a divisor
    BwCheck {
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// SVG plot of cones, zonotope, immaculate classes (Picard rank 2 only)
    Plot {
        #[arg(long)]
        out: PathBuf,
        /// Viewport and scan box lo:hi,lo:hi (default -8:8,-8:8)
        #[arg(long = "box", allow_hyphen_values = true)]
        box_spec: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Picard => "picard",
            Command::Tempting => "tempting",
            Command::Cones => "cones",
            Command::Zonotope => "zonotope",
            Command::Cohomology { .. } => "cohomology",
            Command::Immaculate { .. } => "immaculate",
            Command::Scan { .. } => "scan",
            Command::Infinite => "infinite",
            Command::Infinity => "infinity",
            Command::Witness { .. } => "witness",
            Command::BwCheck { .. } => "bw-check",
            Command::Plot { .. } => "plot",
        }
    }
}

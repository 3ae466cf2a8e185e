use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use deephole_core::search::DEFAULT_BUDGET;
use deephole_core::ProjLinePoint;

#[derive(Parser, Debug)]
#[command(name = "deephole", version, about = "Deep holes and MDS extensions of Reed-Solomon codes")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; each verb reads the ones it needs.
#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Field characteristic.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Extension degree.
    #[arg(long, global = true, default_value_t = 1)]
    pub h: u32,
    /// Monic defining polynomial, coefficients ascending.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Code dimension (the number of rows l for `extend roth-seroussi`).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Code length; the evaluation set is the first n field elements.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Dimension of the ambient space for `rnc complete`.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Evaluation points as element indices, "inf" for the point at infinity.
    #[arg(long, global = true, value_delimiter = ',')]
    pub eval: Option<Vec<ProjLinePoint>>,
    /// Evaluate on all of PG(1,q).
    #[arg(long, global = true)]
    pub full_line: bool,
    /// M1, M2 or M3.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Orbit label: O1_RNC, O1_NUCLEUS, O2, O3 or O4.
    #[arg(long, global = true)]
    pub label: Option<String>,
    /// Received word as element indices.
    #[arg(long, global = true, value_delimiter = ',')]
    pub word: Option<Vec<u32>>,
    /// Extending column as element indices.
    #[arg(long, global = true, value_delimiter = ',')]
    pub column: Option<Vec<u32>>,
    /// JSON fixture describing a code and optionally a generator matrix.
    #[arg(long, global = true)]
    pub fixture: Option<PathBuf>,
    /// Maximum work per exhaustive sweep.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled evaluation sets.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled evaluation sets.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Also run the enumeration oracle.
    #[arg(long, global = true)]
    pub enumerate: bool,
    /// Ignore the budget.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite-field parameters.
    Field {
        #[command(subcommand)]
        verb: FieldVerb,
    },
    /// Generator and parity matrices.
    Code {
        #[command(subcommand)]
        verb: CodeVerb,
    },
    /// Deep-hole classes of a code.
    Deephole {
        #[command(subcommand)]
        verb: DeepholeVerb,
    },
    /// Same as `deephole verify`.
    Verify,
    /// Covering radius by exhaustive search.
    Radius,
    /// MDS extensions of moment matrices.
    Extend {
        #[command(subcommand)]
        verb: ExtendVerb,
    },
    /// Completeness of the rational normal curve.
    Rnc {
        #[command(subcommand)]
        verb: RncVerb,
    },
    /// Orbits of PGL(2,q) on PG(2,q).
    Orbits {
        #[command(subcommand)]
        verb: OrbitsVerb,
    },
    /// Deep holes of codes with redundancy 3.
    Red3 {
        #[command(subcommand)]
        verb: Red3Verb,
    },
    /// Non-GRS [n+1, 3] extensions: canonical forms and counts.
    Arcs {
        #[command(subcommand)]
        verb: ArcsVerb,
    },
    /// Deep holes of the [q+1, 2] code and ordered hyperovals.
    Hyperoval {
        #[command(subcommand)]
        verb: HyperovalVerb,
    },
    /// Whether every deep hole of the [q, k] code is the standard one.
    Conjecture {
        #[command(subcommand)]
        verb: ConjectureVerb,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum FieldVerb {
    Info,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CodeVerb {
    Build,
    MdsCheck,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum DeepholeVerb {
    Enumerate,
    Predict,
    Verify,
    ClassifyPoly,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ExtendVerb {
    RothSeroussi,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum RncVerb {
    Complete,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum OrbitsVerb {
    Decompose,
    Stabilizer,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Red3Verb {
    Classify,
    Verify,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ArcsVerb {
    Canonical,
    Count,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum HyperovalVerb {
    Classes,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ConjectureVerb {
    Check,
}

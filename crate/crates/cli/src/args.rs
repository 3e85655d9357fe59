use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "poncelet", version, about = "Triangles inscribed in a circle and circumscribed about a central conic")]
pub struct Cli {
    /// Global numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, check and sample a family.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Invariance sweeps and closed-form invariants.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Conics inscribed in a given triangle.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Homothetic towers and the focal-pair iteration.
    #[command(subcommand)]
    Sequence(SequenceCmd),
    /// Extremal areas of a family.
    Extremal {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of area-profile rows for CSV output.
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Sampled curves.
    #[command(subcommand)]
    Locus(LocusCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Center,
    Focus,
    General,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    /// Circumradius.
    #[arg(long = "R")]
    pub r: f64,
    /// Linear eccentricity of the conic.
    #[arg(long)]
    pub c: f64,
    /// Circumcenter x for the general scenario.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub ox: f64,
    /// Circumcenter y for the general scenario.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub oy: f64,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Admissibility criterion and classification.
    Check(FamilyArgs),
    /// Family members at given vertex angles, or spread over the arcs.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Explicit vertex angles (radians); overrides --n.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        theta: Vec<f64>,
    },
    /// Dense sweep over the family.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 360)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum InvariantsCmd {
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 360)]
        n: usize,
    },
    Expected(FamilyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    /// Vertices as ax,ay,bx,by,cx,cy.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub triangle: Vec<f64>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Inellipse centered at the circumcenter.
    Inellipse(TriangleArgs),
    /// Inscribed conic with foci at the circumcenter and orthocenter.
    OhConic(TriangleArgs),
    /// Steiner inellipse and circumellipse.
    Steiner(TriangleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RatioArg {
    /// Ratio -2.
    Anti,
    /// Ratio -1/2.
    Medial,
}

#[derive(Debug, Subcommand)]
pub enum SequenceCmd {
    /// Homothetic tower of one family member about its centroid.
    Homothety {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_enum, default_value_t = RatioArg::Anti)]
        ratio: RatioArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Focal-pair iteration (c, R) -> (c', R').
    Iterate {
        #[arg(long)]
        c: f64,
        #[arg(long = "R")]
        r: f64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Closure samples checked per state.
        #[arg(long, default_value_t = 8)]
        check: usize,
    },
    /// Normalized orbit x = c/R.
    Orbit {
        #[arg(long)]
        x0: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Use the printed one-dimensional map instead of c'/R'.
        #[arg(long)]
        literal: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CassiniArg {
    Oval,
    MajorAxis,
}

#[derive(Debug, Subcommand)]
pub enum LocusCmd {
    /// Feet of the altitudes from one vertex (centered conic).
    Orthic {
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 360)]
        n: usize,
    },
    /// Cassini oval or the major-axis circumcenter locus.
    Cassini {
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 720)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CassiniArg::Oval)]
        variant: CassiniArg,
    },
    /// Fixed curve through the tangential-triangle vertices.
    Tangential(FamilyArgs),
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Uniform linear and planar antenna array simulator.
///
/// Angles are given in degrees. Spacings are in wavelengths unless
/// `--spacing-unit meters` is set together with `--lambda` or `--freq`.
#[derive(Debug, Parser)]
#[command(name = "planar-array", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Wavelength in meters (meters-mode spacings only)
    #[arg(long, global = true, conflicts_with = "freq")]
    pub lambda: Option<f64>,

    /// Frequency in Hz (meters-mode spacings only)
    #[arg(long, global = true)]
    pub freq: Option<f64>,

    /// Unit of every spacing/length flag
    #[arg(long, global = true, value_enum, default_value_t = SpacingUnit::Wavelengths)]
    pub spacing_unit: SpacingUnit,

    /// Reproduce the reference sweep with degree-interpreted sines on the
    /// uniform-case phase (af, pattern, cut, sweep only)
    #[arg(long, global = true)]
    pub compat: bool,

    /// Output file (directory for fig3); stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Emit JSON instead of text/CSV
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingUnit {
    Wavelengths,
    Meters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Element {
    Isotropic,
    Monopole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ClosedForm,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CutFormat {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized planar array factor in one direction
    Af(AfArgs),
    /// Sample the pattern over a (theta, phi) grid
    Pattern(PatternArgs),
    /// Extract one principal cut of the pattern
    Cut(CutArgs),
    /// Element-count sweep of N x N arrays at a fixed observation angle
    Sweep(SweepArgs),
    /// Null angles of a uniform line array
    Nulls(LobeArgs),
    /// Main-lobe and grating-lobe angles of a uniform line array
    Peaks(PeakArgs),
    /// Directivity, closed-form or by numerical integration
    Directivity(DirectivityArgs),
    /// Progressive phases that steer the beam to a direction
    Steer(SteerArgs),
    /// Pattern batch for square arrays with a digest manifest
    Fig3(Fig3Args),
}

#[derive(Debug, Args)]
pub struct ArrayArgs {
    /// Elements along x
    #[arg(long)]
    pub mx: usize,
    /// Elements along y
    #[arg(long)]
    pub ny: usize,
    /// Spacing along x
    #[arg(long)]
    pub ax: f64,
    /// Spacing along y
    #[arg(long)]
    pub ay: f64,
}

#[derive(Debug, Args)]
pub struct SteerTarget {
    /// Main-beam polar angle (deg); broadside when omitted
    #[arg(long, requires = "steer_phi")]
    pub steer_theta: Option<f64>,
    /// Main-beam azimuth (deg)
    #[arg(long, requires = "steer_theta")]
    pub steer_phi: Option<f64>,
    /// Use cos(phi) instead of sin(phi) in the y-axis steering phase
    #[arg(long)]
    pub paper_literal: bool,
}

#[derive(Debug, Args)]
pub struct AfArgs {
    #[command(flatten)]
    pub array: ArrayArgs,
    /// Observation polar angle (deg)
    #[arg(long)]
    pub theta: f64,
    /// Observation azimuth (deg)
    #[arg(long)]
    pub phi: f64,
    #[command(flatten)]
    pub steer: SteerTarget,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value_t = Element::Isotropic)]
    pub element: Element,
    /// Polar samples over [0, 180] deg
    #[arg(long, default_value_t = 181)]
    pub n_theta: usize,
    /// Azimuth samples over [0, 360) deg
    #[arg(long, default_value_t = 360)]
    pub n_phi: usize,
    #[arg(long, default_value_t = -60.0, allow_negative_numbers = true)]
    pub db_floor: f64,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub array: ArrayArgs,
    #[command(flatten)]
    pub steer: SteerTarget,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct CutArgs {
    #[command(flatten)]
    pub array: ArrayArgs,
    #[command(flatten)]
    pub steer: SteerTarget,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Constant-azimuth cut (deg)
    #[arg(
        long,
        conflicts_with = "cut_theta",
        required_unless_present = "cut_theta"
    )]
    pub cut_phi: Option<f64>,
    /// Constant-polar-angle cut (deg)
    #[arg(long)]
    pub cut_theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = CutFormat::Csv)]
    pub format: CutFormat,
    /// Outer ring radius of the SVG plot
    #[arg(long, default_value_t = 200.0)]
    pub radius_px: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Element counts per axis
    #[arg(long, value_delimiter = ',', default_values_t = planar_array::experiments::TABLE1_COUNTS)]
    pub counts: Vec<usize>,
    #[arg(long, default_value_t = 0.47)]
    pub spacing: f64,
    /// Observation polar angle (deg)
    #[arg(long, default_value_t = 45.0)]
    pub theta: f64,
    /// Print per-row deviations from the reference table to stderr
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct LobeArgs {
    /// Element count
    #[arg(long)]
    pub n: usize,
    /// Element spacing
    #[arg(long)]
    pub a: f64,
    /// Progressive phase (deg)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct PeakArgs {
    #[command(flatten)]
    pub lobe: LobeArgs,
    /// Highest grating-lobe order; defaults to the visible-region bound
    #[arg(long)]
    pub m_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct DirectivityArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Elements along x (numerical)
    #[arg(long)]
    pub mx: Option<usize>,
    /// Elements along y (numerical)
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long, default_value_t = 0.47)]
    pub ax: f64,
    #[arg(long, default_value_t = 0.47)]
    pub ay: f64,
    #[command(flatten)]
    pub steer: SteerTarget,
    #[arg(long, value_enum, default_value_t = Element::Isotropic)]
    pub element: Element,
    /// Integrate over the upper half-space only (ground plane)
    #[arg(long)]
    pub hemisphere: bool,
    #[arg(long, default_value_t = 361)]
    pub n_theta: usize,
    #[arg(long, default_value_t = 721)]
    pub n_phi: usize,
    /// Voltage ratio (closed-form)
    #[arg(long, default_value_t = 20.0)]
    pub r0: f64,
    /// Array length along x (closed-form)
    #[arg(long, default_value_t = 4.0)]
    pub lx: f64,
    /// Array length along y (closed-form)
    #[arg(long, default_value_t = 4.0)]
    pub ly: f64,
    /// Beam broadening factor; derived from r0 when omitted
    #[arg(long)]
    pub f: Option<f64>,
    /// Scan angle for the planar product (deg)
    #[arg(long, default_value_t = 45.0)]
    pub theta0: f64,
    /// Include the factor pi in the planar product
    #[arg(long)]
    pub include_pi: bool,
}

#[derive(Debug, Args)]
pub struct SteerArgs {
    #[arg(long)]
    pub ax: f64,
    #[arg(long)]
    pub ay: f64,
    /// Target polar angle (deg)
    #[arg(long)]
    pub theta: f64,
    /// Target azimuth (deg)
    #[arg(long)]
    pub phi: f64,
    /// Use cos(phi) instead of sin(phi) in the y-axis steering phase
    #[arg(long)]
    pub paper_literal: bool,
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    /// Square sizes N (N x N arrays)
    #[arg(long, value_delimiter = ',', default_values_t = planar_array::experiments::FIG3_SIZES)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.47)]
    pub spacing: f64,
    #[arg(long, value_enum, default_value_t = Element::Isotropic)]
    pub element: Element,
    #[arg(long, default_value_t = 361)]
    pub n_theta: usize,
    #[arg(long, default_value_t = 360)]
    pub n_phi: usize,
}

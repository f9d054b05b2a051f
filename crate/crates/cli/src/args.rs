use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kfamily::evolution::{EvolutionBackend, Profile};
use kfamily::{Error, Result};

/// Environment variable overriding the default resolution of every command.
pub const RESOLUTION_ENV: &str = "KFAMILY_RESOLUTION";

#[derive(Debug, Parser)]
#[command(
    name = "kfamily",
    version,
    about = "Spectra, eigenfunctions, WKB tables, Mehler-Fock transforms and evolution for the operators K_ab on [-1, 1]",
    after_help = "Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 I/O failure. Errors are reported as JSON on stderr."
)]
pub struct Cli {
    /// Print the JSON schemas of all command outputs and exit
    #[arg(long)]
    pub schema: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest eigenvalues of K_ab
    Spectrum(SpectrumArgs),
    /// WKB closed-form and Bohr-Sommerfeld eigenvalues
    WkbTable(WkbArgs),
    /// Numerical and semiclassical eigenfunction side by side
    Eigenfunction(EigenfunctionArgs),
    /// Mehler-Fock coefficients c(k) of a profile u(xi)
    MehlerFock(MehlerFockArgs),
    /// Evolve a profile u(xi) in tau
    Evolve(EvolveArgs),
    /// The four-column WKB table for (2,2) and (1,1), n = 0..9
    Table1(Table1Args),
    /// Fit the endpoint exponent d of phi ~ |log(1 - x)|^d
    BoundaryFit(BoundaryFitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; `-` writes to stdout
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Strength alpha of the log(1 + x) endpoint term [dimensionless, >= 0]
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Strength beta of the log(1 - x) endpoint term [dimensionless, >= 0]
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumBackend {
    Galerkin,
    Pseudospectral,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of eigenvalues [count]
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Discretization
    #[arg(long, value_enum, default_value_t = SpectrumBackend::Galerkin)]
    pub backend: SpectrumBackend,
    /// Legendre modes (galerkin, default 64) or grid points (pseudospectral, power of two, default 4096) [count]
    #[arg(long, env = RESOLUTION_ENV)]
    pub resolution: Option<usize>,
    /// Half width of the u-grid, x = tanh u [log-coordinate u]
    #[arg(long, default_value_t = 40.0)]
    pub u_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WkbArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of rows, n = 0 .. n-1 [count]
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Fill the reference column from the pseudospectral solver
    #[arg(long)]
    pub reference: bool,
    /// Grid points of the reference solver [count, power of two]
    #[arg(long, env = RESOLUTION_ENV, default_value_t = 4096)]
    pub resolution: usize,
    /// Half width of the reference u-grid [log-coordinate u]
    #[arg(long, default_value_t = 40.0)]
    pub u_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EigenfunctionArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Index of the eigenfunction, 0 = ground state [count]
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Grid points of the pseudospectral solver [count, power of two]
    #[arg(long, env = RESOLUTION_ENV, default_value_t = 4096)]
    pub resolution: usize,
    /// Half width of the u-grid [log-coordinate u]
    #[arg(long, default_value_t = 40.0)]
    pub u_max: f64,
    /// Emit grid points with |u| <= this [log-coordinate u]
    #[arg(long, default_value_t = 8.0)]
    pub u_window: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Linear,
    Parabola,
    Sine,
    Exponential,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Linear => Profile::Linear,
            ProfileArg::Parabola => Profile::Parabola,
            ProfileArg::Sine => Profile::Sine,
            ProfileArg::Exponential => Profile::Exponential,
        }
    }
}

#[derive(Debug, Args)]
pub struct ProfileSource {
    /// Built-in profile u(xi): linear xi, parabola xi(1-xi), sine sin(2xi)(1-xi), exponential xi exp(-xi)
    #[arg(long, value_enum, conflicts_with = "input")]
    pub profile: Option<ProfileArg>,
    /// Profile file in the evolve output format (JSON header line, then xi,u)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Chebyshev intervals on [0, 1] for a built-in profile [count]
    #[arg(long, default_value_t = kfamily::evolution::DEFAULT_XI_NODES)]
    pub nodes: usize,
}

#[derive(Debug, Args)]
pub struct MehlerFockArgs {
    #[command(flatten)]
    pub source: ProfileSource,
    /// Largest k of the coefficient grid [dimensionless wavenumber]
    #[arg(long, default_value_t = 40.0)]
    pub k_max: f64,
    /// Spacing of the k-grid; k_max must be a multiple [dimensionless wavenumber]
    #[arg(long, default_value_t = 0.05)]
    pub dk: f64,
    /// Upper limit of the t = 2/xi - 1 integral [dimensionless]
    #[arg(long, default_value_t = 1e30)]
    pub t_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvolveBackendArg {
    Matrix,
    Legendre,
    Spectral,
}

impl From<EvolveBackendArg> for EvolutionBackend {
    fn from(b: EvolveBackendArg) -> Self {
        match b {
            EvolveBackendArg::Matrix => EvolutionBackend::Matrix,
            EvolveBackendArg::Legendre => EvolutionBackend::Legendre,
            EvolveBackendArg::Spectral => EvolutionBackend::Spectral,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub source: ProfileSource,
    /// Evolution time, the log of the CM energy [dimensionless, >= 0]
    #[arg(long, allow_negative_numbers = true)]
    pub tau: f64,
    /// Solver
    #[arg(long, value_enum, default_value_t = EvolveBackendArg::Matrix)]
    pub backend: EvolveBackendArg,
    /// Grid points (matrix, power of two, default 1024) or Legendre modes (legendre, default 128) [count]
    #[arg(long, env = RESOLUTION_ENV)]
    pub resolution: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Grid points of the pseudospectral column [count, power of two]
    #[arg(long, env = RESOLUTION_ENV, default_value_t = 4096)]
    pub resolution: usize,
    /// Half width of the u-grid [log-coordinate u]
    #[arg(long, default_value_t = 40.0)]
    pub u_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundaryFitArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Index of the eigenfunction [count]
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Grid points of the pseudospectral solver [count, power of two]
    #[arg(long, env = RESOLUTION_ENV, default_value_t = 4096)]
    pub resolution: usize,
    /// Half width of the u-grid [log-coordinate u]
    #[arg(long, default_value_t = 60.0)]
    pub u_max: f64,
    /// Lower end of the fit window [log-coordinate u, |log(1 - x)| ~ 2u]
    #[arg(long, default_value_t = 10.0)]
    pub window_lo: f64,
    /// Upper end of the fit window [log-coordinate u]
    #[arg(long, default_value_t = 25.0)]
    pub window_hi: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn invalid(detail: String) -> Error {
    Error::Precondition(detail)
}

fn positive_params(p: &ParamArgs) -> Result<()> {
    if !(p.alpha > 0.0 && p.beta > 0.0) {
        return Err(Error::Confinement {
            alpha: p.alpha,
            beta: p.beta,
        });
    }
    Ok(())
}

fn grid_points(m: usize) -> Result<()> {
    if m < 64 || !m.is_power_of_two() {
        return Err(invalid(format!("resolution {m} must be a power of two, at least 64")));
    }
    Ok(())
}

fn finite_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(invalid(format!("{name} = {v} must be positive")));
    }
    Ok(())
}

impl Command {
    /// Checks flag combinations before any computation.
    pub fn validate(&self) -> Result<()> {
        match self {
            Command::Spectrum(a) => {
                kfamily::operators::OperatorParams::new(a.params.alpha, a.params.beta)?;
                if a.n == 0 {
                    return Err(invalid("--n must be at least 1".into()));
                }
                match a.backend {
                    SpectrumBackend::Galerkin => {
                        if let Some(r) = a.resolution {
                            if r < a.n {
                                return Err(invalid(format!("{} modes cannot give {} eigenvalues", r, a.n)));
                            }
                        }
                    }
                    SpectrumBackend::Pseudospectral => {
                        positive_params(&a.params)?;
                        grid_points(a.resolution.unwrap_or(4096))?;
                        finite_positive("--u-max", a.u_max)?;
                    }
                }
            }
            Command::WkbTable(a) => {
                positive_params(&a.params)?;
                if a.n == 0 {
                    return Err(invalid("--n must be at least 1".into()));
                }
                if a.reference {
                    grid_points(a.resolution)?;
                    finite_positive("--u-max", a.u_max)?;
                }
            }
            Command::Eigenfunction(a) => {
                positive_params(&a.params)?;
                grid_points(a.resolution)?;
                finite_positive("--u-max", a.u_max)?;
                finite_positive("--u-window", a.u_window)?;
                if a.n >= a.resolution {
                    return Err(invalid(format!("index {} exceeds the grid", a.n)));
                }
            }
            Command::MehlerFock(a) => {
                a.source.validate()?;
                finite_positive("--k-max", a.k_max)?;
                finite_positive("--dk", a.dk)?;
                if !(a.t_max > 1.0) {
                    return Err(invalid(format!("--t-max = {} must exceed 1", a.t_max)));
                }
            }
            Command::Evolve(a) => {
                a.source.validate()?;
                if !(a.tau.is_finite() && a.tau >= 0.0) {
                    return Err(invalid(format!("--tau = {} must be finite and non-negative", a.tau)));
                }
                if let (EvolveBackendArg::Matrix, Some(r)) = (a.backend, a.resolution) {
                    grid_points(r)?;
                }
            }
            Command::Table1(a) => {
                grid_points(a.resolution)?;
                finite_positive("--u-max", a.u_max)?;
            }
            Command::BoundaryFit(a) => {
                positive_params(&a.params)?;
                grid_points(a.resolution)?;
                finite_positive("--u-max", a.u_max)?;
                if !(a.window_lo < a.window_hi && a.window_hi <= a.u_max) {
                    return Err(invalid(format!(
                        "window ({}, {}) must be increasing and inside u_max = {}",
                        a.window_lo, a.window_hi, a.u_max
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum(a) => &a.out,
            Command::WkbTable(a) => &a.out,
            Command::Eigenfunction(a) => &a.out,
            Command::MehlerFock(a) => &a.out,
            Command::Evolve(a) => &a.out,
            Command::Table1(a) => &a.out,
            Command::BoundaryFit(a) => &a.out,
        }
    }
}

impl ProfileSource {
    fn validate(&self) -> Result<()> {
        if self.profile.is_none() && self.input.is_none() {
            return Err(invalid("give --profile or --input".into()));
        }
        if self.nodes < 2 {
            return Err(invalid(format!("--nodes = {} must be at least 2", self.nodes)));
        }
        Ok(())
    }
}

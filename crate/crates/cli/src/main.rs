use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use dyncharge_core::constants::load_constants;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "dyncharge",
    version,
    about = "Dynamic-charge physics toolkit",
    arg_required_else_help = true
)]
struct Cli {
    /// Constants override file ("key = value" lines, SI magnitudes)
    #[arg(long, global = true, value_name = "PATH")]
    constants: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensional analysis of unit expressions
    #[command(subcommand)]
    Units(UnitsCommand),
    /// Electromagnetic unit systems
    #[command(subcommand)]
    Systems(SystemsCommand),
    /// Oscillating proton
    #[command(subcommand)]
    Proton(ProtonCommand),
    /// Radial Poisson solver
    #[command(subcommand)]
    Poisson(PoissonCommand),
    /// Hydrogen energy budget
    #[command(subcommand)]
    Hydrogen(HydrogenCommand),
    /// Coupling η and 4π/η for a list of proton radii
    HbarDerive(HbarArgs),
    /// Solar gravity-wave estimate
    #[command(subcommand)]
    Gravity(GravityCommand),
}

#[derive(Subcommand, Debug)]
pub enum UnitsCommand {
    /// Print the natural-unit form of an expression
    Reduce {
        expr: String,
    },
    /// Check that every right-hand term has the dimension of the left side
    Check {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, required = true, allow_hyphen_values = true)]
        rhs: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SystemsCommand {
    /// Maxwell constants of each unit system
    Table,
}

#[derive(Subcommand, Debug)]
pub enum ProtonCommand {
    /// Dynamic charge q_D(t)
    Q(ProtonArgs),
}

#[derive(Args, Debug)]
pub struct ProtonArgs {
    /// Start time (s)
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Number of samples
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    /// Sampled span (s); defaults to one oscillation period
    #[arg(long)]
    pub period: Option<f64>,
    /// Proton radius; bare numbers are fm
    #[arg(long)]
    pub rp: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PoissonCommand {
    /// Field of the oscillating proton at time t
    Solve(PoissonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    UniformSphere,
    Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Uniform,
    Logarithmic,
}

#[derive(Args, Debug)]
pub struct PoissonArgs {
    /// Inner radius; bare numbers are meters (default R_p/10)
    #[arg(long)]
    pub rmin: Option<String>,
    /// Outer radius; bare numbers are meters (default 10 R_p)
    #[arg(long)]
    pub rmax: Option<String>,
    /// Grid points
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ProfileArg::UniformSphere)]
    pub profile: ProfileArg,
    /// Time (s)
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = SpacingArg::Uniform)]
    pub spacing: SpacingArg,
    /// Coulomb constant of the solved equation Δφ = −4π k1 s
    #[arg(long, default_value_t = 1.0)]
    pub k1: f64,
    /// Proton radius; bare numbers are fm
    #[arg(long)]
    pub rp: Option<String>,
    /// Emit the accuracy and convergence report instead of the CSV profile
    #[arg(long)]
    pub study: bool,
    /// Grid sizes for the convergence study
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256, 512])]
    pub sizes: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum HydrogenCommand {
    /// Energy budget, x, η and the ħ candidate
    Report(HydrogenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    FreeEnergy,
    Ionization,
}

#[derive(Args, Debug)]
pub struct HydrogenArgs {
    /// Principal quantum number
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Proton radius; bare numbers are fm (default: 1/e radius of the profile)
    #[arg(long)]
    pub rp: Option<String>,
    /// How R_H is fixed
    #[arg(long, value_enum, default_value_t = ConventionArg::FreeEnergy)]
    pub convention: ConventionArg,
    /// Atom radius override; bare numbers are meters
    #[arg(long)]
    pub rh: Option<String>,
    /// Average over the period by quadrature instead of ⟨sin²⟩ = ½
    #[arg(long)]
    pub numerical_average: bool,
}

#[derive(Args, Debug)]
pub struct HbarArgs {
    /// Comma-separated proton radii; bare numbers are fm
    #[arg(long, value_delimiter = ',', default_values_t = ["1.3fm".to_string(), "1.4fm".to_string(), "1.5fm".to_string()])]
    pub rp: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum GravityCommand {
    /// Frequency band, field amplitude, energy density and flux
    Flux(GravityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BodyArg {
    Earth,
}

#[derive(Args, Debug)]
pub struct GravityArgs {
    #[arg(long, value_enum, conflicts_with_all = ["mass", "radius", "orbit", "period"])]
    pub body: Option<BodyArg>,
    /// Body mass (kg)
    #[arg(long, requires_all = ["radius", "orbit", "period"])]
    pub mass: Option<f64>,
    /// Body radius; bare numbers are meters
    #[arg(long, requires_all = ["mass", "orbit", "period"])]
    pub radius: Option<String>,
    /// Orbit radius; bare numbers are meters
    #[arg(long, requires_all = ["mass", "radius", "period"])]
    pub orbit: Option<String>,
    /// Orbital period (s)
    #[arg(long, requires_all = ["mass", "radius", "orbit"])]
    pub period: Option<f64>,
    /// Ratio of gravity to electromagnetic frequency
    #[arg(long, default_value_t = dyncharge_core::gravity::DEFAULT_FREQUENCY_RATIO)]
    pub ratio: f64,
    /// ħ used in the energy density (default: table value)
    #[arg(long)]
    pub hbar: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let constants = match load_constants(cli.constants.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let ctx = commands::Context {
        constants,
        format: cli.format,
    };
    let result = match cli.command {
        Command::Units(c) => commands::units(&ctx, c),
        Command::Systems(c) => commands::systems(&ctx, c),
        Command::Proton(ProtonCommand::Q(a)) => commands::proton_q(&ctx, a),
        Command::Poisson(PoissonCommand::Solve(a)) => commands::poisson_solve(&ctx, a),
        Command::Hydrogen(HydrogenCommand::Report(a)) => commands::hydrogen_report(&ctx, a),
        Command::HbarDerive(a) => commands::hbar_derive(&ctx, a),
        Command::Gravity(GravityCommand::Flux(a)) => commands::gravity_flux(&ctx, a),
    };
    match result {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.consistent { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tripdm::cli::{cmd_bound, cmd_transmission, cmd_tunnelling, cmd_validate, emit, perturbed_airy, CliError, RunConfig};
use tripdm::sfun::AiryConstants;

/// Transmission and bound states of triangular quantum profiles with
/// linearly position-dependent mass.
#[derive(Parser)]
#[command(name = "tripdm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// T over E, V0 or a for the barrier (CSV).
    Transmission(RunArgs),
    /// T over E < V0 for the barrier (CSV).
    Tunnelling(RunArgs),
    /// Bound levels of the well with the comparison table (report).
    Bound(RunArgs),
    /// Run the invariant suite; nonzero exit on any failure.
    Validate(ValidateArgs),
}

/// Every config key as a flag; flags override the config file.
#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<String>,
    /// Sweep axis: E, V0 or a.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long)]
    min: Option<String>,
    #[arg(long)]
    max: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// signs, t2, all or none.
    #[arg(long = "paper-fidelity", alias = "paper_fidelity")]
    paper_fidelity: Option<String>,
    #[arg(long = "V0_eV")]
    v0: Option<String>,
    /// Slope in eV/nm or `auto`.
    #[arg(long = "alpha_eV_per_nm")]
    alpha: Option<String>,
    #[arg(long = "a_nm")]
    a: Option<String>,
    /// barrier or well.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long = "M0_m0")]
    m0: Option<String>,
    #[arg(long = "M1_m0_per_nm")]
    m1: Option<String>,
    /// Energy for V0 and a sweeps.
    #[arg(long = "E_eV")]
    energy: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Negative control: perturb Ai(0) by this relative amount.
    #[arg(long, hide = true)]
    perturb_airy_constant: Option<f64>,
}

impl RunArgs {
    fn resolve(&self, base: RunConfig) -> Result<RunConfig, CliError> {
        let mut config = base;
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            config.apply_text(&text)?;
        }
        let flags = [
            ("V0_eV", &self.v0),
            ("alpha_eV_per_nm", &self.alpha),
            ("a_nm", &self.a),
            ("kind", &self.kind),
            ("M0_m0", &self.m0),
            ("M1_m0_per_nm", &self.m1),
            ("E_eV", &self.energy),
            ("axis", &self.axis),
            ("min", &self.min),
            ("max", &self.max),
            ("points", &self.points),
            ("out", &self.out),
            ("paper_fidelity", &self.paper_fidelity),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, v)?;
            }
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Transmission(args) => {
            let config = args.resolve(RunConfig::default())?;
            emit(&cmd_transmission(&config)?, &config)?;
        }
        Command::Tunnelling(args) => {
            let config = args.resolve(RunConfig::default())?;
            emit(&cmd_tunnelling(&config)?, &config)?;
        }
        Command::Bound(args) => {
            let config = args.resolve(RunConfig::bound_defaults())?;
            emit(&cmd_bound(&config)?, &config)?;
        }
        Command::Validate(args) => {
            let airy = args
                .perturb_airy_constant
                .map_or(AiryConstants::EXACT, perturbed_airy);
            let (text, ok) = cmd_validate(&airy);
            let config = RunConfig {
                out: args.out,
                ..RunConfig::default()
            };
            emit(&text, &config)?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! charp: certificates and identity checks for positive-characteristic
//! commutative algebra.
//!
//! Every run prints a JSON report to stdout and a one-line summary to
//! stderr. Exit codes: 0 = pass / witness found, 1 = verified-false,
//! unknown, or no witness, 2 = malformed input.

mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::HsParams;
use report::{digest, RunReport};

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<charp::Error> for CliError {
    fn from(e: charp::Error) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "charp",
    version,
    about = "Support lattices, pseudo-gradedness certificates, Hasse-Schmidt identity checks, and Frobenius/idempotent computations over Z/p"
)]
struct Cli {
    /// Input file (defaults to stdin)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Also write the JSON report to this file
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for randomized sweeps and searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suppress the human summary on stderr
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Support lattice of a polynomial or ideal: HNF basis and rank
    Lattice,
    /// Pseudo-gradedness certificate for an ideal
    PseudoGraded,
    /// Hasse-Schmidt identity suite
    Hs {
        #[command(subcommand)]
        sub: HsCommand,
    },
    /// Binomial ideals and toric rank arithmetic
    Toric {
        #[command(subcommand)]
        sub: ToricCommand,
    },
    /// Finite-module computations
    Module {
        #[command(subcommand)]
        sub: ModuleCommand,
    },
}

#[derive(Args, Debug, Clone)]
struct HsArgs {
    /// Linear form, comma-separated (e.g. --lambda 2,1,0)
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    lambda: Vec<i64>,

    /// Prime modulus; sweeps default to {2,3,5} when omitted
    #[arg(long)]
    p: Option<u64>,

    /// Variable count; must match the lambda length when given
    #[arg(long)]
    vars: Option<usize>,

    /// Order n (apply/eigen), truncation (phi)
    #[arg(long)]
    order: Option<u64>,

    /// Number of random trials per prime
    #[arg(long)]
    trials: Option<u64>,

    /// Exponent bound for random polynomials and windows
    #[arg(long)]
    max_deg: Option<i64>,
}

impl From<&HsArgs> for HsParams {
    fn from(a: &HsArgs) -> Self {
        HsParams {
            lambda: a.lambda.clone(),
            p: a.p,
            vars: a.vars,
            order: a.order,
            trials: a.trials,
            max_deg: a.max_deg,
        }
    }
}

#[derive(Subcommand)]
enum HsCommand {
    /// Apply H_n to an input polynomial
    Apply {
        #[command(flatten)]
        args: HsArgs,
    },
    /// Verify the higher Leibniz rule on random pairs
    Leibniz {
        #[command(flatten)]
        args: HsArgs,
    },
    /// Verify F-invariance of the derivation on a monomial window
    Finv {
        #[command(flatten)]
        args: HsArgs,
    },
    /// Verify multiplicativity of the truncated automorphism
    Phi {
        #[command(flatten)]
        args: HsArgs,
    },
    /// Verify the Frobenius interchange identity H_p(a^p b) = a^p H_p(b) + H_1(a)^p b
    Hsfrob {
        #[command(flatten)]
        args: HsArgs,
    },
    /// Verify the binomial eigen-action on homogeneous elements
    Eigen {
        #[command(flatten)]
        args: HsArgs,
    },
}

#[derive(Subcommand)]
enum ToricCommand {
    /// Binomial generators of a lattice ideal
    FromLattice,
    /// Dimension r - rk from a lattice or a monomial parametrization
    Dimension,
    /// Applicability of the rank criterion for quotients of semigroup rings
    Corollary,
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Basis of the endomorphism algebra
    Endos,
    /// Search for a nontrivial idempotent
    Idempotent,
    /// Frobenius transform of the module
    Frobenius,
    /// Kodaira-Spencer kernel
    Ks,
    /// Artin-Schreier idempotent from an operator matrix "f"
    ArtinSchreier,
    /// Least Frobenius level at which the module decomposes
    Fdecomp {
        /// Maximum level to try
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Lattice => "lattice".into(),
        Command::PseudoGraded => "pseudo-graded".into(),
        Command::Hs { sub } => format!(
            "hs {}",
            match sub {
                HsCommand::Apply { .. } => "apply",
                HsCommand::Leibniz { .. } => "leibniz",
                HsCommand::Finv { .. } => "finv",
                HsCommand::Phi { .. } => "phi",
                HsCommand::Hsfrob { .. } => "hsfrob",
                HsCommand::Eigen { .. } => "eigen",
            }
        ),
        Command::Toric { sub } => format!(
            "toric {}",
            match sub {
                ToricCommand::FromLattice => "from-lattice",
                ToricCommand::Dimension => "dimension",
                ToricCommand::Corollary => "corollary",
            }
        ),
        Command::Module { sub } => format!(
            "module {}",
            match sub {
                ModuleCommand::Endos => "endos",
                ModuleCommand::Idempotent => "idempotent",
                ModuleCommand::Frobenius => "frobenius",
                ModuleCommand::Ks => "ks",
                ModuleCommand::ArtinSchreier => "artin-schreier",
                ModuleCommand::Fdecomp { .. } => "fdecomp",
            }
        ),
    }
}

fn needs_input(cmd: &Command) -> bool {
    !matches!(
        cmd,
        Command::Hs {
            sub: HsCommand::Leibniz { .. }
                | HsCommand::Finv { .. }
                | HsCommand::Phi { .. }
                | HsCommand::Hsfrob { .. }
                | HsCommand::Eigen { .. }
        }
    )
}

fn run(cli: &Cli) -> Result<(RunReport, i32), CliError> {
    let start = Instant::now();
    let bytes = if needs_input(&cli.command) {
        inputs::read_input(&cli.input)?
    } else {
        Vec::new()
    };
    let seed = cli.seed;
    let (verdict, certificates, counterexamples) = match &cli.command {
        Command::Lattice => commands::cmd_lattice(&bytes)?,
        Command::PseudoGraded => commands::cmd_pseudo_graded(&bytes)?,
        Command::Hs { sub } => match sub {
            HsCommand::Apply { args } => commands::cmd_hs_apply(&HsParams::from(args), &bytes)?,
            HsCommand::Leibniz { args } => commands::cmd_hs_leibniz(&HsParams::from(args), seed)?,
            HsCommand::Finv { args } => commands::cmd_hs_finv(&HsParams::from(args))?,
            HsCommand::Phi { args } => commands::cmd_hs_phi(&HsParams::from(args), seed)?,
            HsCommand::Hsfrob { args } => commands::cmd_hs_hsfrob(&HsParams::from(args), seed)?,
            HsCommand::Eigen { args } => commands::cmd_hs_eigen(&HsParams::from(args), seed)?,
        },
        Command::Toric { sub } => match sub {
            ToricCommand::FromLattice => commands::cmd_toric_from_lattice(&bytes)?,
            ToricCommand::Dimension => commands::cmd_toric_dimension(&bytes)?,
            ToricCommand::Corollary => commands::cmd_toric_corollary(&bytes)?,
        },
        Command::Module { sub } => match sub {
            ModuleCommand::Endos => commands::cmd_module_endos(&bytes)?,
            ModuleCommand::Idempotent => commands::cmd_module_idempotent(&bytes, seed)?,
            ModuleCommand::Frobenius => commands::cmd_module_frobenius(&bytes)?,
            ModuleCommand::Ks => commands::cmd_module_ks(&bytes)?,
            ModuleCommand::ArtinSchreier => commands::cmd_module_artin_schreier(&bytes)?,
            ModuleCommand::Fdecomp { bound } => commands::cmd_module_fdecomp(&bytes, seed, *bound)?,
        },
    };
    let report = RunReport {
        command: command_name(&cli.command),
        input_digest: digest(&bytes),
        verdict,
        certificates,
        counterexamples,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let code = verdict.exit_code();
    Ok((report, code))
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
            println!("{rendered}");
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {path:?}: {e}");
                    std::process::exit(2);
                }
            }
            if !cli.json {
                eprintln!("charp {}: {}", report.command, report.verdict.label());
            }
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

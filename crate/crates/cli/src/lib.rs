//! Command-line front end for `confext`: JSON session files in, pass/fail
//! reports out.
//!
//! Exit codes: 0 the property holds or a witness was found, 1 refuted with a
//! witness, 2 malformed input, 3 undecided within the degree bounds.

pub mod commands;
pub mod report;
pub mod session;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Report, Verdict};
pub use session::{InputError, Session, SessionFile};

#[derive(Parser, Debug)]
#[command(name = "confext", version, about = "Checks and solvers for associative conformal algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for commands that draw random data.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// ∂-degree bound for solvers.
    #[arg(long, global = true)]
    pub ddeg: Option<u32>,
    /// λ-degree bound for solvers.
    #[arg(long, global = true)]
    pub ldeg: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

/// Objects are referenced as `FILE` or `FILE#NAME`; without a name the file
/// must hold exactly one object of the required kind.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolve every object in a session file and check its axioms.
    Validate { file: PathBuf },
    /// Hochschild differential of a cochain.
    Diff { cochain: String },
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Truncated cohomology dimensions of a bimodule.
    Cohomology {
        bimodule: String,
        #[arg(long)]
        n: usize,
    },
    #[command(subcommand)]
    Ext(ExtCmd),
    #[command(subcommand)]
    Mc(McCmd),
    #[command(subcommand)]
    Wells(WellsCmd),
    #[command(subcommand)]
    Crossed(CrossedCmd),
    #[command(subcommand)]
    Shac(ShacCmd),
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Check a non-abelian cocycle, or `dφ = 0` for a Hochschild cochain.
    Check { object: String },
    /// Find `ψ` with `dψ = φ`.
    Coboundary { cochain: String },
}

#[derive(Subcommand, Debug)]
pub enum ExtCmd {
    /// The extension algebra of a cocycle.
    Build { cocycle: String },
    /// The cocycle of an extension with its stored section.
    CocycleOf { extension: String },
    /// Search for `δ` relating two cocycles.
    Equivalent {
        cocycle: String,
        #[arg(long = "with")]
        other: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum McCmd {
    /// Maurer–Cartan equation for the embedded cocycle.
    Check { cocycle: String },
    /// Gauge action of `ξ` (a map in the same file, or random from `--seed`).
    Gauge {
        cocycle: String,
        #[arg(long)]
        xi: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args, Debug)]
pub struct WellsArgs {
    #[arg(long)]
    pub extension: String,
    #[arg(long)]
    pub pair: String,
    /// Use only the map on A or only the map on B.
    #[arg(long, value_enum)]
    pub partial: Option<Side>,
}

#[derive(Subcommand, Debug)]
pub enum WellsCmd {
    /// Wells class of an automorphism pair.
    Aut(WellsArgs),
    /// Wells class of a derivation pair.
    Der(WellsArgs),
}

#[derive(Subcommand, Debug)]
pub enum CrossedCmd {
    Check { crossed: String },
    ToShac { crossed: String },
    FromShac { shac: String },
    /// The 3-cocycle of a crossed extension.
    Theta { extension: String },
}

#[derive(Subcommand, Debug)]
pub enum ShacCmd {
    Check { shac: String },
    ToCocycle { shac: String },
    /// The skeletal structure of a 3-cochain.
    FromCocycle { cochain: String },
}

/// Exit code and the text for stdout and stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome {
                code,
                stdout: if code == 0 { e.to_string() } else { String::new() },
                stderr: if code == 0 { String::new() } else { e.to_string() },
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(rep) => Outcome {
            code: rep.exit_code(),
            stdout: if cli.json { rep.to_json() + "\n" } else { rep.render() },
            stderr: String::new(),
        },
        Err(e) => {
            let stdout = if cli.json {
                let v = serde_json::json!({
                    "error": { "file": e.file, "location": e.location, "message": e.message }
                });
                serde_json::to_string_pretty(&v).expect("error serializes") + "\n"
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

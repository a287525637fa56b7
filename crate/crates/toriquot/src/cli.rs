use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::commands::{self, VerifyOptions, DEFAULT_DEGREE_BOUND};
use crate::error::{CliError, Result};
use crate::io::{self, BundledMap};
use crate::reproduce;

#[derive(Debug, Parser)]
#[command(name = "toriquot", version, about = "Invariants, relations and isomorphism checks for torus quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// JSON file holding an array of integer rows.
    pub matrix: PathBuf,
    /// Run enumerations beyond 8 columns or alpha > 8.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct Naming {
    /// Prefix for Hilbert-basis generator names.
    #[arg(long, default_value = "g")]
    pub prefix: String,
    /// Use the closed-form Type I_k generators instead of the Hilbert basis.
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one weight matrix.
    Analyze {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        /// Add the moment relations to the relation list.
        #[arg(long)]
        onshell: bool,
    },
    /// Circle matrix of a faithful Type I_k or II_k matrix.
    Reduce { matrix: PathBuf },
    /// Generators of the invariant ring.
    Invariants {
        #[command(flatten)]
        input: MatrixArg,
        #[command(flatten)]
        naming: Naming,
    },
    /// Relations among the generators.
    Relations {
        #[command(flatten)]
        input: MatrixArg,
        #[command(flatten)]
        naming: Naming,
        #[arg(long)]
        onshell: bool,
    },
    /// Brackets of generator pairs, rewritten in the generators.
    Brackets {
        #[command(flatten)]
        input: MatrixArg,
        #[command(flatten)]
        naming: Naming,
    },
    /// Graded dimensions up to the degree bound.
    Series {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
    },
    /// Type data and, for faithful Type I_k, the classification key.
    Classify { matrix: PathBuf },
    /// Check a candidate map between two quotient presentations.
    VerifyMap {
        /// Map file; omit when using --bundled.
        #[arg(required_unless_present = "bundled", conflicts_with = "bundled")]
        map: Option<PathBuf>,
        #[arg(long, value_enum)]
        bundled: Option<BundledMap>,
        #[arg(long, required_unless_present = "bundled")]
        source: Option<PathBuf>,
        #[arg(long, required_unless_present = "bundled")]
        target: Option<PathBuf>,
        /// Compare off-shell ideals instead of on-shell ones.
        #[arg(long)]
        offshell: bool,
        /// Skip the inverse direction.
        #[arg(long)]
        no_inverse: bool,
        /// Sample points per round of the inequality search.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_large: bool,
    },
    /// Recompute a published example and compare with the printed values.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(reproduce::ITEMS))]
        item: String,
    },
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Core(toriquot_core::Error::Internal(format!("serialization failed: {}", e))))
}

/// Runs one command and returns its JSON output together with a flag
/// telling whether every reproduction check passed.
pub fn execute(command: Command) -> Result<(String, bool)> {
    let ok = |s: String| Ok((s, true));
    match command {
        Command::Analyze { input, degree_bound, onshell } => {
            let a = io::read_matrix(&input.matrix)?;
            ok(json(&commands::analyze(&a, degree_bound, onshell, input.allow_large)?)?)
        }
        Command::Reduce { matrix } => ok(json(&commands::reduce(&io::read_matrix(&matrix)?)?)?),
        Command::Invariants { input, naming } => {
            let a = io::read_matrix(&input.matrix)?;
            ok(json(&commands::invariants(&a, &naming.prefix, naming.closed_form, input.allow_large)?)?)
        }
        Command::Relations { input, naming, onshell } => {
            let a = io::read_matrix(&input.matrix)?;
            ok(json(&commands::relations(&a, &naming.prefix, naming.closed_form, onshell, input.allow_large)?)?)
        }
        Command::Brackets { input, naming } => {
            let a = io::read_matrix(&input.matrix)?;
            ok(json(&commands::brackets(&a, &naming.prefix, naming.closed_form, input.allow_large)?)?)
        }
        Command::Series { input, degree_bound } => {
            let a = io::read_matrix(&input.matrix)?;
            ok(json(&commands::series(&a, degree_bound, input.allow_large)?)?)
        }
        Command::Classify { matrix } => ok(json(&commands::classify_matrix(&io::read_matrix(&matrix)?)?)?),
        Command::VerifyMap { map, bundled, source, target, offshell, no_inverse, samples, seed, allow_large } => {
            let (file, (a, b)) = match (bundled, map) {
                (Some(which), _) => (which.map(), which.matrices()),
                (None, Some(path)) => {
                    let (Some(s), Some(t)) = (source, target) else {
                        return Err(CliError::Usage("--source and --target are required".into()));
                    };
                    (io::read_map(&path)?, (io::read_matrix(&s)?, io::read_matrix(&t)?))
                }
                (None, None) => return Err(CliError::Usage("give a map file or --bundled".into())),
            };
            let opts = VerifyOptions { onshell: !offshell, inverse: !no_inverse, samples, seed, allow_large };
            ok(json(&commands::verify_map(&file, &a, &b, &opts)?)?)
        }
        Command::Reproduce { item } => {
            let report = reproduce::run(&item)?;
            Ok((json(&report)?, report.pass))
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    code: i32,
    message: String,
}

/// Parses arguments, runs the command and returns the process exit code.
///
/// Output goes to stdout; errors go to stderr as a JSON object with the
/// error kind and exit code. A reproduction item with a failing check exits 4.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok((out, pass)) => {
            let _ = writeln!(std::io::stdout(), "{}", out);
            if pass {
                0
            } else {
                4
            }
        }
        Err(e) => {
            let report = ErrorReport { error: e.kind(), code: e.exit_code(), message: e.to_string() };
            let text = serde_json::to_string(&report).unwrap_or_else(|_| e.to_string());
            let _ = writeln!(std::io::stderr(), "{}", text);
            e.exit_code()
        }
    }
}

//! `rlr`: coefficient tables and verification suites.
//!
//! Exit codes: 0 when every claim passes, 1 when any claim fails, 2 on usage
//! or input errors.

mod commands;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use render::{Format, Output, Table};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "rlr", version, about = "Restricted Lie-Rinehart superalgebras: tables and verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Lift the safe bounds on --p, --kmax and --rmax.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced coefficients lambda_0..lambda_{p-1} mod p, one column per prime.
    LambdaTable {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5, 7])]
        p: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// mu_{k,i} rows with their simplified form and the Gamma_{k,2} decomposition check.
    MuTable {
        #[arg(long, default_value_t = 10)]
        kmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Gamma_{k,j} entries; j outside 1..=k gives 0.
    Gamma {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i64>,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        /// x0/delta parities such as even/odd, or `all`.
        #[arg(long, default_value = "even/odd")]
        case: String,
        #[command(flatten)]
        common: Common,
    },
    /// Gamma recursion, degenerate cases, mod-p vanishing, and the Hochschild identities on the derivation bundles.
    VerifyHochschild {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
        p: Vec<u64>,
        #[arg(long, default_value_t = 14)]
        kmax: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// P_lambda and Q_lambda: interpolation, degrees, leading coefficients, Gamma_{2p,p} mod p.
    VerifyAppendix {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
        p: Vec<u64>,
        #[arg(long, default_value_t = 7)]
        rmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Lie-Rinehart and restricted Lie-Rinehart axioms on builtins or a JSON bundle.
    VerifyLr {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
        p: Vec<u64>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Builtin names; defaults to all of them.
        #[arg(long, value_delimiter = ',')]
        builtin: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        common: Common,
    },
    /// Semidirect products: operator lemmas on gl(m|n), the p-map, and the restricted-LR identities.
    VerifySemidirect {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
        p: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Restricted enveloping algebras.
    Pbw {
        #[command(subcommand)]
        command: PbwCommand,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Params {
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub alpha: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub beta: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub gamma: i64,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Bundle JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long = "p", default_value_t = 3)]
    pub p: u64,
    /// Work in U_p(L) instead of U_p(A, L).
    #[arg(long)]
    pub lie_only: bool,
}

#[derive(Subcommand, Debug)]
pub enum PbwCommand {
    /// Normal form of a word such as "x3 x1 e2".
    Nf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Confluence, filtration, associativity, the multiplication table, the relations and the universal property.
    Verify {
        /// Builtin names; defaults to the bundles small enough for U_p(A, L).
        #[arg(long, value_delimiter = ',')]
        builtin: Vec<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64])]
        p: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        words: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 500)]
        triples: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = commands::format_of(&cli.command);
    match commands::execute(cli.command) {
        Ok(out) => Outcome { code: if out.passed() { 0 } else { 1 }, stdout: out.render(format), stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

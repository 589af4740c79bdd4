//! Command-line front end for `cu2-core`: an expression parser and the
//! subcommands of the `cu2` binary.

pub mod commands;
pub mod parse;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{CliError, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cu2", version, about = "Exact computation in the l1 algebra of the polycyclic monoid Cu2")]
pub struct Cli {
    /// Output format; for `collapse`, text is CSV.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Elements are written as sums of products, e.g. `e - s1#s1* - s2#s2*`,
/// `1/2 s1* + 1/2 s2*` or `(1, -1) s1#s2*`.
///
/// Functionals are `tau`, `zero`, `mu:<w>,<w>,...` (e.g. `mu:1,12`),
/// `mu-all:<n>` or `values:<expr>`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// The product a # b.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// The involution f*.
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The l1 norm.
    Norm {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Whether the element lies in the ideal J generated by f0.
    Membership {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Writes an element of J as a combination of generators s_i # f0 # s_j*.
    Certificate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Finds g, h with g # f # h = e for f outside J.
    Factorize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Upper bound for the factorization constant from the constructed witness.
    CpiBound {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The pairing <f, phi>.
    Pair {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        functional: String,
    },
    /// Lower bound for the quotient norm modulo J from a T*-fixed functional.
    QnormLower {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        functional: String,
        /// Length up to which fixedness is checked; defaults to the longest support length + 1.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Finite-stage trace checks.
    TraceCheck {
        #[arg(long, default_value = "tau")]
        functional: String,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Whether T* phi = phi on all elements up to the given length.
    TstarCheck {
        #[arg(long, default_value = "tau")]
        functional: String,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Applies the l^p representation to a vector (`n:re[:im],...` or `block:N`).
    RepApply {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "1:1")]
        vector: String,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
    /// Checks the shift relations on e_1..e_N and the norm lemmas on random vectors.
    RepCheck {
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quotient norm of h^N versus the norm of its image on l^p, N = 1..n_max.
    Collapse {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    use commands::*;
    match command {
        Command::Mul { a, b } => mul(a, b),
        Command::Star { expr } => star(expr),
        Command::Norm { expr } => norm(expr),
        Command::Membership { expr } => membership(expr),
        Command::Certificate { expr } => certificate(expr),
        Command::Factorize { expr } => factorize(expr),
        Command::CpiBound { expr } => cpi_bound(expr),
        Command::Pair { expr, functional } => pairing(expr, functional),
        Command::QnormLower { expr, functional, max_length } => qnorm_lower(expr, functional, *max_length),
        Command::TraceCheck { functional, max_length } => trace_check(functional, *max_length),
        Command::TstarCheck { functional, max_length } => tstar(functional, *max_length),
        Command::RepApply { expr, vector, p } => rep_apply(expr, vector, *p),
        Command::RepCheck { n_max, p, seed } => rep_check(*n_max, *p, *seed),
        Command::Collapse { n_max, p } => collapse(*n_max, *p),
    }
}

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "discrete-l", version, about = "Discrete spectral zeta and L-function experiments")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Trig,
    Riemann,
    Dirichlet,
    Forest,
    Chebyshev,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact a_k and b_k coefficient polynomials, one row per (k, degree).
    Coeffs {
        #[arg(long)]
        max_k: usize,
    },
    /// Spectral zeta of the twisted cycle; theta = 0 drops the zero eigenvalue.
    ZetaN {
        #[arg(long, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, default_value = "0", value_parser = parse_fraction)]
        theta: Fraction,
        #[arg(long)]
        n: u64,
    },
    /// Discrete L-function of character `char` mod `q`.
    #[command(name = "l-n")]
    LN {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long)]
        n: u64,
    },
    /// Both sides of an exact special-value identity.
    Identities {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = parse_fraction)]
        theta: Option<Fraction>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "char")]
        index: Option<usize>,
    },
    /// zeta(2p) recovered from the cyclic sums for n = 1 and n = 2.
    Recursion {
        #[arg(long)]
        p_max: u32,
    },
    /// Twisted heat trace on a linear grid in t.
    HeatScan {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        index: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 400)]
        steps: usize,
    },
    /// xi_n(s) / xi_n(1 - s) against the root number.
    GrhRatio {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        index: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s_list: Vec<Complex64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        /// Also extrapolate even characters below the imaginary-part threshold.
        #[arg(long)]
        widen_even_region: bool,
    },
    /// Sign of L_n(s) on s = k/(steps+1), k = 1..steps.
    Siegel {
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        index: usize,
        #[arg(long, default_value_t = 9)]
        s_steps: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
    },
    /// All characters mod q in enumeration order.
    Characters {
        #[arg(long)]
        q: u64,
    },
    /// Runs the acceptance criteria and prints one line per criterion.
    Acceptance {
        /// Restrict to these criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// `num/den` or a decimal, kept exact when given as a fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fraction {
    pub exact: Option<(i64, i64)>,
    pub value: f64,
}

pub fn parse_fraction(s: &str) -> Result<Fraction, String> {
    if let Some((a, b)) = s.split_once('/') {
        let num: i64 = a.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: i64 = b.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den == 0 {
            return Err("zero denominator".into());
        }
        return Ok(Fraction { exact: Some((num, den)), value: num as f64 / den as f64 });
    }
    let value: f64 = s.trim().parse().map_err(|e| format!("not a number: {e}"))?;
    if value.fract() == 0.0 && value.abs() < 1e15 {
        return Ok(Fraction { exact: Some((value as i64, 1)), value });
    }
    Ok(Fraction { exact: None, value })
}

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Deficiency indices, C∞ vectors and truncated exponentials of higher-order
/// squeeze generators.
#[derive(Debug, Parser)]
#[command(name = "squeeze", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Working precision in decimal digits [default: $SQUEEZE_DIGITS, else 50]
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the deficiency recurrences and decide the indices (n₊, n₋)
    Deficiency(DeficiencyArgs),
    /// Exact power norms, growth bounds and series tests for Fock vectors
    Cinfty(CinftyArgs),
    /// Truncated unitaries exp(itA): residuals and stabilization under growing N
    Expgroup(ExpgroupArgs),
    /// Identities of the function-space model for λ = k/4
    Sbmodel(SbmodelArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DeficiencyArgs {
    /// Order of the generator
    #[arg(long)]
    pub k: u32,
    /// Report only this block [default: all blocks]
    #[arg(long)]
    pub i: Option<u32>,
    /// Recurrence depth
    #[arg(long = "P", default_value_t = 500)]
    pub p_max: usize,
    /// Leading entries per block echoed in the report
    #[arg(long, default_value_t = 8)]
    pub sample: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CinftyArgs {
    #[arg(long)]
    pub k: u32,
    /// Block [default: all blocks]
    #[arg(long)]
    pub i: Option<u32>,
    /// Position inside the block
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    /// Highest power n
    #[arg(long = "n-max", default_value_t = 50)]
    pub n_max: usize,
    /// Sum Σ ‖Aⁿe_p‖ tⁿ/n! at this t
    #[arg(long)]
    pub t: Option<f64>,
    /// Sum Σ ‖Aⁿe_p‖^{−1/n}
    #[arg(long)]
    pub quasianalytic: bool,
    /// Rows of the exact norm table
    #[arg(long = "table-rows", default_value_t = 64)]
    pub table_rows: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExpgroupArgs {
    #[arg(long)]
    pub k: u32,
    /// Phase of ξ
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    /// Squeeze parameter; overrides --theta and scales t by |ξ|
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<Complex>,
    /// Truncations for the stabilization study, strictly increasing
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256,512")]
    pub dims: Vec<usize>,
    /// Corner size watched by the study
    #[arg(long, default_value_t = 8)]
    pub window: usize,
    /// Truncation for the high-precision residuals
    #[arg(long = "N", default_value_t = 64)]
    pub n: usize,
    /// Compare exp(itA^(2)) with its even/odd block decomposition (k = 2 only)
    #[arg(long = "decomposition-check")]
    pub decomposition_check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    All,
    Orthonormality,
    Transform,
    Kernel,
    Mult,
    Ladder,
    Symmetry,
    Reproducing,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SbmodelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Allow λ outside {1/4, 3/4}
    #[arg(long)]
    pub generic: bool,
    #[arg(long, value_enum, default_value_t = Identity::All)]
    pub verify: Identity,
    /// Highest degree checked
    #[arg(long = "n-max", default_value_t = 6)]
    pub n_max: usize,
    /// Sample points, e.g. 1+0.5i [default: 0.5, 1+i]
    #[arg(long, allow_negative_numbers = true)]
    pub z: Vec<Complex>,
}

/// A complex number written as `a`, `bi` or `a±bi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl FromStr for Complex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("cannot parse {s:?} as a complex number");
        let z = match s.strip_suffix('i') {
            Some(body) => Self::parse_imaginary(body).ok_or_else(bad)?,
            None => Complex {
                re: s.parse().map_err(|_| bad())?,
                im: 0.0,
            },
        };
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(bad())
        }
    }
}

impl Complex {
    /// `a±b` from `a±bi` with the trailing `i` removed.
    fn parse_imaginary(body: &str) -> Option<Self> {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(j) => (&body[..j], &body[j..]),
            None => ("", body),
        };
        let re = if re.is_empty() { 0.0 } else { re.parse().ok()? };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse().ok()?,
        };
        Some(Complex { re, im })
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Complex {
        s.parse().unwrap()
    }

    #[test]
    fn parses_complex_forms() {
        assert_eq!(c("1+0.5i"), Complex { re: 1.0, im: 0.5 });
        assert_eq!(c("0"), Complex { re: 0.0, im: 0.0 });
        assert_eq!(c("-i"), Complex { re: 0.0, im: -1.0 });
        assert_eq!(c("2.5i"), Complex { re: 0.0, im: 2.5 });
        assert_eq!(
            c("-1e-3-2i"),
            Complex {
                re: -1e-3,
                im: -2.0
            }
        );
        assert_eq!(c("1 + i"), Complex { re: 1.0, im: 1.0 });
        assert!("1+".parse::<Complex>().is_err());
        assert!("x".parse::<Complex>().is_err());
        assert!("nan".parse::<Complex>().is_err());
    }
}

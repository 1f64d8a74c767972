//! Command-line grammar and flag value parsers.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hodgecalc_core::algebra::{Gaussian, Rational};

/// Exact calculators for nilpotent orbits, monomial maps and curvature.
#[derive(Parser, Debug, Clone)]
#[command(name = "hodgecalc", version, about)]
pub struct Cli {
    /// Operation to run.
    #[arg(value_enum)]
    pub command: Command,

    /// Problem document (JSON); `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Use a bundled problem document instead of --input.
    #[arg(long, value_name = "NAME", conflicts_with = "input")]
    pub fixture: Option<String>,

    /// Stratum I as 1-based indices, e.g. `2,3`.
    #[arg(long, value_name = "I")]
    pub stratum: Option<IndexSet>,

    /// Larger stratum J ⊋ I for compat and rwfp.
    #[arg(long, value_name = "J")]
    pub superset: Option<IndexSet>,

    /// Number of rays for limit-check.
    #[arg(long, value_name = "N", default_value_t = 5)]
    pub rays: usize,

    /// Geometric scale range for limit-check, e.g. `1e1..1e8` (factor 10).
    #[arg(long, value_name = "LO..HI", default_value = "1e1..1e8")]
    pub scales: ScaleRange,

    /// Seed for every sampled quantity.
    #[arg(long, env = "HODGECALC_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Evaluation point: rationals for chern (x-coordinates), Gaussian
    /// rationals for curvature (fiber vector; `;` separates the factors of a
    /// symmetric product).
    #[arg(long, value_name = "X")]
    pub point: Option<String>,

    /// Partition for schur, e.g. `2,1`.
    #[arg(long, value_name = "λ")]
    pub partition: Option<IntList>,

    /// Rank r of the bundle (schur, segre; defaults to the degree so that
    /// no Chern class is truncated) or of the top block of ξ (horizontal).
    #[arg(long, value_name = "R")]
    pub rank: Option<usize>,

    /// Degree of the Segre polynomial.
    #[arg(long, value_name = "D")]
    pub degree: Option<usize>,

    /// Exponents α for multiplier-ideal, e.g. `4,4` or `3/2,5`.
    #[arg(long, value_name = "A")]
    pub alpha: Option<RationalList>,

    /// Degree bound for multiplier-ideal enumeration.
    #[arg(long, value_name = "D")]
    pub degree_bound: Option<u32>,

    /// Symmetric power of the model for curvature.
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub power: u32,

    /// Include wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    WeightFiltration,
    Sl2,
    Bigrading,
    Rwfp,
    MetricPoly,
    Chern,
    LimitCheck,
    Factorize,
    MonomialMap,
    StratumMap,
    Refine,
    Compat,
    Curvature,
    Horizontal,
    Schur,
    Segre,
    MultiplierIdeal,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// Commands that run without a problem document.
    pub fn document_optional(self) -> bool {
        matches!(self, Command::Schur | Command::Segre | Command::MultiplierIdeal)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// 1-based indices, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet(pub Vec<usize>);

impl std::str::FromStr for IndexSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut v = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| format!("invalid index {part:?}"))?;
            if i == 0 {
                return Err("indices are 1-based".into());
            }
            if v.contains(&(i - 1)) {
                return Err(format!("index {i} repeated"));
            }
            v.push(i - 1);
        }
        v.sort_unstable();
        Ok(IndexSet(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

impl std::str::FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse().map_err(|_| format!("invalid integer {p:?}")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalList(pub Vec<Rational>);

impl std::str::FromStr for RationalList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_rationals(s).map(RationalList)
    }
}

/// `LO..HI`: the scales `LO, 10·LO, …` up to `HI`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleRange {
    pub lo: Rational,
    pub hi: Rational,
}

impl ScaleRange {
    pub fn scales(&self) -> Vec<Rational> {
        let ten = Rational::from_int(10);
        let mut out = Vec::new();
        let mut s = self.lo.clone();
        while s <= self.hi {
            out.push(s.clone());
            s = &s * &ten;
        }
        out
    }
}

impl std::str::FromStr for ScaleRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
        let lo: Rational = lo.trim().parse().map_err(|e| format!("{e}"))?;
        let hi: Rational = hi.trim().parse().map_err(|e| format!("{e}"))?;
        if !lo.is_positive() || hi < lo {
            return Err("scales need 0 < LO ≤ HI".into());
        }
        Ok(ScaleRange { lo, hi })
    }
}

impl std::fmt::Display for ScaleRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with rational `a`, `b`.
pub fn parse_gaussian(s: &str) -> Result<Gaussian, String> {
    s.parse().map_err(|e: hodgecalc_core::Error| e.to_string())
}

/// Comma-separated Gaussian rationals; `;` separates several vectors.
pub fn parse_gaussian_vectors(s: &str) -> Result<Vec<Vec<Gaussian>>, String> {
    s.split(';')
        .map(|v| v.split(',').map(str::trim).filter(|p| !p.is_empty()).map(parse_gaussian).collect())
        .collect()
}

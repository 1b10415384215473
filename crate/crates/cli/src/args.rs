use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eulersign::shuffle::ShuffleVariant;
use eulersign::{Family, Group, Variant};

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "eulersign",
    version,
    about = "Sign-refined Eulerian numbers, identities, roots and shuffles"
)]
pub struct Cli {
    /// Write the payload to this file instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Write a JSON run manifest (arguments, version, payload digest) here.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Print one row of an Eulerian-type triangle.
    Table(TableArgs),
    /// Check a generating-function identity exactly.
    Verify(VerifyArgs),
    /// Certify real-rootedness of a signed family with Sturm sequences.
    Roots(RootsArgs),
    /// Exact and simulated post-shuffle sign probabilities.
    Shuffle(ShuffleArgs),
    /// Exact moments of one row.
    Moments(MomentsArgs),
    /// Kolmogorov distance to the normal law for several rows of a family.
    Clt(CltArgs),
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u32(s: &str) -> Result<u32, String> {
    let v = positive_u64(s)?;
    u32::try_from(v).map_err(|_| format!("must be at most {}", u32::MAX))
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: eulersign::Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: eulersign::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: eulersign::Error| e.to_string())
}

fn parse_shuffle(s: &str) -> Result<ShuffleVariant, String> {
    s.parse().map_err(|e: eulersign::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Row,
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    /// A or B.
    #[arg(value_parser = parse_group)]
    pub group: Group,
    #[arg(value_parser = positive_u64)]
    pub n: u64,
    /// all, positive or negative.
    #[arg(value_parser = parse_variant, default_value = "all")]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = TableFormat::Row)]
    pub format: TableFormat,
    /// Recompute the row by enumerating the group and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Identity {
    #[value(name = "seriesA")]
    #[serde(rename = "seriesA")]
    SeriesA,
    #[value(name = "seriesApm")]
    #[serde(rename = "seriesApm")]
    SeriesApm,
    #[value(name = "seriesB")]
    #[serde(rename = "seriesB")]
    SeriesB,
    #[value(name = "seriesBpm")]
    #[serde(rename = "seriesBpm")]
    SeriesBpm,
    #[value(name = "necklace")]
    #[serde(rename = "necklace")]
    Necklace,
    #[value(name = "desarmenien-foata")]
    #[serde(rename = "desarmenien-foata")]
    DesarmenienFoata,
    #[value(name = "b-minus-one")]
    #[serde(rename = "b-minus-one")]
    BMinusOne,
    #[value(name = "reiner-delta")]
    #[serde(rename = "reiner-delta")]
    ReinerDelta,
    #[value(name = "reiner-eta")]
    #[serde(rename = "reiner-eta")]
    ReinerEta,
    #[value(name = "fnp-product")]
    #[serde(rename = "fnp-product")]
    FnpProduct,
    #[value(name = "symmetry")]
    #[serde(rename = "symmetry")]
    Symmetry,
    #[value(name = "recurrence")]
    #[serde(rename = "recurrence")]
    Recurrence,
    #[value(name = "moment-match")]
    #[serde(rename = "moment-match")]
    MomentMatch,
    #[value(name = "eigenfunction")]
    #[serde(rename = "eigenfunction")]
    Eigenfunction,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    /// Largest n checked (for necklace and fnp-product: largest alphabet size k).
    #[arg(long, default_value_t = 10, value_parser = positive_u64)]
    pub n: u64,
    /// Truncation order of power series.
    #[arg(long, default_value_t = eulersign::series::DEFAULT_ORDER)]
    pub order: usize,
    /// Coefficient bound K for the series identities, largest moment order for
    /// moment-match, shuffle parameter a for eigenfunction.
    #[arg(long)]
    pub param: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootsFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct RootsArgs {
    /// A+, A-, B+ or B-.
    #[arg(value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Also probe whether the roots of the + and - rows interlace.
    #[arg(long)]
    pub interlacing: bool,
    /// Wall-clock budget in seconds; degrees not reached are reported as missing.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Refuse Sturm chains whose coefficients exceed this many bits.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_bits: u64,
    /// Largest n the sweep may attempt regardless of --max-n.
    #[arg(long)]
    pub budget_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = RootsFormat::Text)]
    pub format: RootsFormat,
}

#[derive(Debug, Args, Serialize)]
pub struct ShuffleArgs {
    /// gsr, typeb or shelf.
    #[arg(value_parser = parse_shuffle)]
    pub variant: ShuffleVariant,
    #[arg(long, value_parser = positive_u64)]
    pub n: u64,
    /// a for riffle shuffles, number of shelves m for the shelf shuffler.
    #[arg(long, value_parser = positive_u64)]
    pub param: u64,
    #[arg(long, default_value_t = 1, value_parser = positive_u32)]
    pub iters: u32,
    #[arg(long, default_value_t = 200_000, value_parser = positive_u64)]
    pub trials: u64,
    #[arg(long, env = "EULERSIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Skip the simulation.
    #[arg(long)]
    pub exact_only: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(value_parser = parse_group)]
    pub group: Group,
    #[arg(value_parser = positive_u64)]
    pub n: u64,
    #[arg(value_parser = parse_variant, default_value = "all")]
    pub variant: Variant,
    #[arg(long, default_value_t = 2, value_parser = positive_u64)]
    pub r: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CltFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct CltArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    /// Comma-separated row indices.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    pub n: Vec<usize>,
    #[arg(long, value_enum, default_value_t = CltFormat::Csv)]
    pub format: CltFormat,
}

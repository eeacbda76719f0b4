//! Command-line flags and the resolved run configuration echoed into every
//! report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use systole_core::ideal::IdealDescriptor;
use systole_core::modular_group::DEFAULT_BFS_CAP;
use systole_core::systole::DEFAULT_SEARCH_CAP;
use systole_core::{presets, FieldDescriptor, IdealHNF, NumberField};

use crate::error::CliError;

pub const DEFAULT_IDEAL: &str = r#"{"int": 7}"#;

#[derive(Debug, Parser)]
#[command(name = "systole", version, about = "Systole bounds for congruence covers of Hilbert modular varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Lower, theorem and upper bounds for each ideal.
    Bounds,
    /// Bounds plus a box search for short closed geodesics.
    Search,
    /// Randomised lemma and displacement checks on Γ(I).
    Verify,
    /// |SL2(O/I)| from the prime factorisation and by closure.
    Order,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Search => "search",
            Command::Verify => "verify",
            Command::Order => "order",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Field descriptor file {"label": ..., "min_poly": [c0, ..., 1]}; Q(sqrt5) if omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub field: Option<PathBuf>,
    /// Ideal descriptor, repeatable; {"int": 7} if omitted.
    #[arg(long = "ideal", global = true, value_name = "JSON")]
    pub ideals: Vec<String>,
    #[arg(long, global = true, default_value_t = 2, value_name = "N")]
    pub height: u64,
    #[arg(long, global = true, default_value_t = 100, value_name = "N")]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub seed: u64,
    /// Work cap: search tuples (default 1e8) or closure size for `order` (default 1e5).
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Everything that determines the output. The output path is deliberately
/// left out so the same run written to two places hashes the same.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub field_path: Option<String>,
    pub field: FieldDescriptor,
    pub ideals: Vec<Value>,
    pub height: u64,
    pub samples: usize,
    pub seed: u64,
    pub cap: u64,
    pub format: Format,
}

pub struct Resolved {
    pub config: RunConfig,
    pub field: NumberField,
    pub ideals: Vec<(IdealDescriptor, IdealHNF)>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

pub fn resolve(cli: Cli) -> Result<Resolved, CliError> {
    let args = cli.common;
    let (field_path, field) = match &args.field {
        Some(p) => {
            let desc = FieldDescriptor::load(p)?;
            (Some(p.display().to_string()), desc.build()?)
        }
        None => (None, presets::q_sqrt5()),
    };
    if cli.command == Command::Search && args.height == 0 {
        return Err(CliError::Usage("--height must be at least 1".into()));
    }
    if cli.command == Command::Verify && args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let texts = if args.ideals.is_empty() { vec![DEFAULT_IDEAL.to_string()] } else { args.ideals.clone() };
    let mut ideals = Vec::with_capacity(texts.len());
    for t in &texts {
        let desc = IdealDescriptor::parse(t)?;
        let ideal = desc.build(&field)?;
        ideals.push((desc, ideal));
    }
    let cap = args.cap.unwrap_or(match cli.command {
        Command::Order => DEFAULT_BFS_CAP,
        _ => DEFAULT_SEARCH_CAP,
    });
    let config = RunConfig {
        command: cli.command,
        field_path,
        field: field.descriptor(),
        ideals: ideals.iter().map(|(d, _)| d.to_value()).collect(),
        height: args.height,
        samples: args.samples,
        seed: args.seed,
        cap,
        format: args.format,
    };
    Ok(Resolved { config, field, ideals, out: args.out })
}

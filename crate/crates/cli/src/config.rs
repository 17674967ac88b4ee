//! Job parameters gathered from flags and an optional TOML file.

use std::path::Path;

use clap::{Args, ValueEnum};
use hurwitz_core::{HurwitzInput, Ordering};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

/// A profile given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts(pub Vec<u64>);

/// Comma-separated positive integers, e.g. `5,2`.
pub fn parse_parts(s: &str) -> Result<Parts, String> {
    s.split(',')
        .map(|t| match t.trim().parse::<u64>() {
            Ok(0) => Err("parts must be positive".to_string()),
            Ok(v) => Ok(v),
            Err(_) => Err(format!("not a positive integer: {:?}", t.trim())),
        })
        .collect::<Result<_, _>>()
        .map(Parts)
}

/// Flags shared by the computational subcommands.
#[derive(Args, Clone, Debug, Default)]
pub struct JobArgs {
    /// Ramification profile over 0, e.g. `5,2`
    #[arg(long, value_parser = parse_parts)]
    pub mu: Option<Parts>,
    /// Ramification profile over infinity, e.g. `4,3`
    #[arg(long, value_parser = parse_parts)]
    pub nu: Option<Parts>,
    /// Number of simple branch points
    #[arg(long)]
    pub r: Option<u32>,
    /// Genus; `r = 2g − 2 + m + n`
    #[arg(long)]
    pub g: Option<u32>,
    /// Series truncation: coefficients are exact through `z^N`
    #[arg(long = "N")]
    pub truncation: Option<i64>,
    /// Operator ordering, 1-based, e.g. `2,1/1,2` (μ order, slash, ν order)
    #[arg(long)]
    pub order: Option<String>,
    /// Seed for chamber sampling
    #[arg(long)]
    pub seed: Option<u64>,
}

/// File form of [`JobArgs`] plus the output format. Flags win over the file.
#[derive(Deserialize, Clone, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub mu: Option<Vec<u64>>,
    pub nu: Option<Vec<u64>>,
    pub r: Option<u32>,
    pub g: Option<u32>,
    #[serde(rename = "N")]
    pub truncation: Option<i64>,
    pub order: Option<String>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// Flags first, then the file.
    pub fn merge(self, args: &JobArgs, format: Option<Format>) -> Job {
        Job {
            mu: args.mu.clone().map(|p| p.0).or(self.mu),
            nu: args.nu.clone().map(|p| p.0).or(self.nu),
            r: args.r.or(self.r),
            g: args.g.or(self.g),
            truncation: args.truncation.or(self.truncation),
            order: args.order.clone().or(self.order),
            format: format.or(self.format).unwrap_or_default(),
            seed: args.seed.or(self.seed).unwrap_or(0),
        }
    }
}

/// Resolved job parameters.
#[derive(Clone, Debug)]
pub struct Job {
    pub mu: Option<Vec<u64>>,
    pub nu: Option<Vec<u64>>,
    pub r: Option<u32>,
    pub g: Option<u32>,
    pub truncation: Option<i64>,
    pub order: Option<String>,
    pub format: Format,
    pub seed: u64,
}

impl Job {
    pub fn input(&self) -> Result<HurwitzInput, CliError> {
        let mu = self
            .mu
            .clone()
            .ok_or_else(|| CliError::usage("--mu is required"))?;
        let nu = self
            .nu
            .clone()
            .ok_or_else(|| CliError::usage("--nu is required"))?;
        HurwitzInput::new(mu, nu).map_err(CliError::from)
    }

    /// `r`, from `--r` or `--g`; both must agree when given.
    pub fn branch_points(&self, input: &HurwitzInput) -> Result<u32, CliError> {
        let from_g = self.g.map(|g| input.r_for_genus(g as u64) as u32);
        match (self.r, from_g) {
            (Some(r), Some(rg)) if r != rg => Err(CliError::Usage(format!(
                "--r {r} and --g {} disagree: r = 2g - 2 + m + n = {rg}",
                self.g.unwrap_or_default()
            ))),
            (Some(r), _) => Ok(r),
            (None, Some(rg)) => Ok(rg),
            (None, None) => Err(CliError::usage("one of --r or --g is required")),
        }
    }

    /// The genus, from `--g` or from `--r` when that gives an integer genus.
    pub fn genus(&self, input: &HurwitzInput) -> Result<u32, CliError> {
        let r = self.branch_points(input)?;
        input
            .genus_for_r(r as u64)
            .map(|g| g as u32)
            .ok_or_else(|| CliError::Usage(format!("r = {r} gives no integer genus for {input}")))
    }

    pub fn ordering(&self) -> Result<Option<Ordering>, CliError> {
        self.order
            .as_deref()
            .map(Ordering::parse)
            .transpose()
            .map_err(CliError::from)
    }

    pub fn truncation_or(&self, default: i64) -> Result<i64, CliError> {
        match self.truncation {
            Some(n) if n < 0 => Err(CliError::usage("--N must be nonnegative")),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    }
}

//! Flags shared by the subcommands, and the TOML config they can come from.
//!
//! A config file holds the same keys as the long flags (`s = 4`,
//! `seed = "0x2a"`, `budget = 5000`, `threads = 2`, ...). Flags given on
//! the command line win; the budget falls back to `OCCULT_BUDGET`, then to
//! [`DEFAULT_BUDGET`].

use std::path::Path;

use clap::Args;
use serde::{Deserialize, Deserializer};

use occult::seed::parse_seed;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const BUDGET_VAR: &str = "OCCULT_BUDGET";

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Size of S (occultations, asterisms), or of the S side of a constellation.
    #[arg(long)]
    pub s: Option<usize>,
    /// Wall size, or clique size for `check clique`/`check biclique`.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub o: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of pairs in a gemini.
    #[arg(long)]
    pub g: Option<usize>,
    /// Number of paths.
    #[arg(long)]
    pub l: Option<usize>,
    /// Decimal or 0x-prefixed hex.
    #[arg(long, value_parser = seed_arg)]
    #[serde(default, deserialize_with = "seed_value")]
    pub seed: Option<u64>,
    /// Cycles visited by the perforation search, or search nodes per width
    /// for treewidth.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Comma-separated gaps between syzygy blocks.
    #[arg(long, value_delimiter = ',')]
    pub gaps: Option<Vec<usize>>,
    /// Comma-separated path lengths.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<usize>>,
    /// Uniform length each path edge is replaced by.
    #[arg(long)]
    pub length: Option<usize>,
    /// Extra neighbours to try per vertex and piece.
    #[arg(long)]
    pub extra: Option<usize>,
    /// Random edges to try adding.
    #[arg(long)]
    pub attempts: Option<usize>,
    /// Require plainness.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub plain: Option<bool>,
}

fn seed_arg(s: &str) -> Result<u64, String> {
    parse_seed(s).map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn seed_value<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Int(n) => Ok(Some(n)),
        Raw::Text(s) => seed_arg(&s).map(Some).map_err(serde::de::Error::custom),
    }
}

#[derive(Debug, Default)]
pub struct Config {
    pub threads: Option<usize>,
    pub params: Params,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let err = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
        let text = std::fs::read_to_string(path).map_err(|e| err(&e))?;
        let mut table: toml::Table = toml::from_str(&text).map_err(|e| err(&e))?;
        let threads = match table.remove("threads") {
            Some(v) => Some(v.try_into().map_err(|e| err(&e))?),
            None => None,
        };
        let params = toml::Value::Table(table).try_into().map_err(|e| err(&e))?;
        Ok(Config { threads, params })
    }
}

impl Params {
    /// Fills every flag missing here from `fallback`.
    pub fn or(self, fallback: Params) -> Params {
        Params {
            s: self.s.or(fallback.s),
            t: self.t.or(fallback.t),
            a: self.a.or(fallback.a),
            b: self.b.or(fallback.b),
            o: self.o.or(fallback.o),
            c: self.c.or(fallback.c),
            d: self.d.or(fallback.d),
            g: self.g.or(fallback.g),
            l: self.l.or(fallback.l),
            seed: self.seed.or(fallback.seed),
            budget: self.budget.or(fallback.budget),
            gaps: self.gaps.or(fallback.gaps),
            lengths: self.lengths.or(fallback.lengths),
            length: self.length.or(fallback.length),
            extra: self.extra.or(fallback.extra),
            attempts: self.attempts.or(fallback.attempts),
            plain: self.plain.or(fallback.plain),
        }
    }

    pub fn need(&self, name: &str, v: Option<usize>) -> Result<usize, String> {
        v.ok_or_else(|| format!("--{name} is required"))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn budget(&self) -> Result<u64, String> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_VAR) {
            Ok(v) => v.trim().parse().map_err(|e| format!("{BUDGET_VAR}={v}: {e}")),
            Err(_) => Ok(DEFAULT_BUDGET),
        }
    }
}

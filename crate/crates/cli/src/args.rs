//! Command-line and config-file parameters.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer};

use remezkit::SetDescriptor;

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "remezkit", version, about = "Remez-type bounds on sampling sets in the unit ball")]
pub struct Cli {
    /// JSON file with a "command" key and any of the flags below as keys;
    /// flags given on the command line take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Covering numbers: the full profile of a 1D set, or counts at --eps
    Entropy(Params),
    /// omega_d of a set for --d or every degree in --d-range
    Omega(Params),
    /// Upper bound on the Remez constant from omega_d
    RemezBound(Params),
    /// LP lower bound on the Remez constant of a finite set
    RemezExact(Params),
    /// Sup-norm bound for a C^k function from its samples
    SmoothBound(Params),
    /// Lower bound on derivative norms of extensions from a set
    Whitney(Params),
    /// Run the verification criteria
    Verify(Params),
    /// Long-format CSV of omega and Remez bounds over --d-range
    Sweep(Params),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Entropy,
    Omega,
    RemezBound,
    RemezExact,
    SmoothBound,
    Whitney,
    Verify,
    Sweep,
}

impl Command {
    pub fn split(self) -> (CommandKind, Params) {
        match self {
            Command::Entropy(p) => (CommandKind::Entropy, p),
            Command::Omega(p) => (CommandKind::Omega, p),
            Command::RemezBound(p) => (CommandKind::RemezBound, p),
            Command::RemezExact(p) => (CommandKind::RemezExact, p),
            Command::SmoothBound(p) => (CommandKind::SmoothBound, p),
            Command::Whitney(p) => (CommandKind::Whitney, p),
            Command::Verify(p) => (CommandKind::Verify, p),
            Command::Sweep(p) => (CommandKind::Sweep, p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every command; each command reads the ones it needs.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Set descriptor: inline JSON or a path to a JSON file
    #[arg(long)]
    #[serde(default, deserialize_with = "inline_set")]
    pub set: Option<String>,

    #[arg(long)]
    #[serde(default)]
    pub d: Option<usize>,

    /// Inclusive degree range A:B
    #[arg(long = "d-range", value_parser = parse_range)]
    #[serde(default, rename = "d-range", deserialize_with = "range_field")]
    pub d_range: Option<(usize, usize)>,

    #[arg(long)]
    #[serde(default)]
    pub k: Option<usize>,

    /// Sampled maximum of the function on the set
    #[arg(long = "L")]
    #[serde(default, rename = "L")]
    pub l: Option<f64>,

    /// Derivative bound: `l=value` for M_l, or a bare value for all orders
    #[arg(long = "M")]
    #[serde(default, rename = "M", deserialize_with = "m_values")]
    pub m: Vec<String>,

    #[arg(long)]
    #[serde(default)]
    pub q: Option<f64>,

    #[arg(long)]
    #[serde(default)]
    pub sigma: Option<f64>,

    #[arg(long)]
    #[serde(default)]
    pub eps0: Option<f64>,

    #[arg(long)]
    #[serde(default)]
    pub eps: Option<f64>,

    /// Grid size for LP maximization
    #[arg(long)]
    #[serde(default)]
    pub resolution: Option<usize>,

    #[arg(long)]
    #[serde(default)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    #[serde(default)]
    pub format: Option<Format>,

    /// Criteria to run (verify); all when absent
    #[arg(long)]
    #[serde(default)]
    pub criterion: Vec<u32>,

    /// Seed for the randomized criteria (verify)
    #[arg(long)]
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug)]
struct ConfigFile {
    command: Option<CommandKind>,
    params: Params,
}

impl<'de> Deserialize<'de> for ConfigFile {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let mut map = serde_json::Map::deserialize(de)?;
        let command = match map.remove("command") {
            Some(v) => Some(CommandKind::deserialize(v).map_err(D::Error::custom)?),
            None => None,
        };
        let params = Params::deserialize(serde_json::Value::Object(map)).map_err(D::Error::custom)?;
        Ok(ConfigFile { command, params })
    }
}

fn inline_set<'de, D: Deserializer<'de>>(de: D) -> Result<Option<String>, D::Error> {
    let v = Option::<serde_json::Value>::deserialize(de)?;
    Ok(v.map(|v| match v {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }))
}

fn range_field<'de, D: Deserializer<'de>>(de: D) -> Result<Option<(usize, usize)>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Text(String),
        Pair(usize, usize),
    }
    match Option::<Repr>::deserialize(de)? {
        None => Ok(None),
        Some(Repr::Pair(a, b)) => check_range(a, b).map(Some).map_err(serde::de::Error::custom),
        Some(Repr::Text(s)) => parse_range(&s).map(Some).map_err(serde::de::Error::custom),
    }
}

fn m_values<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum One {
        Num(f64),
        Text(String),
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        One(One),
        Many(Vec<One>),
        Map(std::collections::BTreeMap<String, f64>),
    }
    let text = |o: One| match o {
        One::Num(v) => v.to_string(),
        One::Text(s) => s,
    };
    Ok(match Repr::deserialize(de)? {
        Repr::One(o) => vec![text(o)],
        Repr::Many(v) => v.into_iter().map(text).collect(),
        Repr::Map(m) => m.into_iter().map(|(k, v)| format!("{k}={v}")).collect(),
    })
}

fn check_range(a: usize, b: usize) -> Result<(usize, usize), String> {
    if a > b {
        Err(format!("empty degree range {a}:{b}"))
    } else {
        Ok((a, b))
    }
}

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    check_range(a, b)
}

impl Params {
    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Params) -> Params {
        Params {
            set: self.set.or(base.set),
            d: self.d.or(base.d),
            d_range: self.d_range.or(base.d_range),
            k: self.k.or(base.k),
            l: self.l.or(base.l),
            m: if self.m.is_empty() { base.m } else { self.m },
            q: self.q.or(base.q),
            sigma: self.sigma.or(base.sigma),
            eps0: self.eps0.or(base.eps0),
            eps: self.eps.or(base.eps),
            resolution: self.resolution.or(base.resolution),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            criterion: if self.criterion.is_empty() {
                base.criterion
            } else {
                self.criterion
            },
            seed: self.seed.or(base.seed),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn descriptor(&self) -> CliResult<SetDescriptor> {
        let raw = self
            .set
            .as_deref()
            .ok_or_else(|| CliError::input("set", "this command needs --set"))?;
        let text = if raw.trim_start().starts_with('{') {
            raw.to_string()
        } else {
            std::fs::read_to_string(raw)
                .map_err(|e| CliError::input("set", format!("cannot read `{raw}`: {e}")))?
        };
        remezkit::parse_descriptor(&text).map_err(|e| {
            let field = e.field().unwrap_or("set").to_string();
            CliError::Input {
                field: format!("set.{field}"),
                message: e.to_string(),
            }
        })
    }

    pub fn degree(&self) -> CliResult<usize> {
        self.d.ok_or_else(|| CliError::input("d", "this command needs --d"))
    }

    /// `--d-range` if given, otherwise the single degree `--d`.
    pub fn degrees(&self) -> CliResult<Vec<usize>> {
        match (self.d_range, self.d) {
            (Some((a, b)), _) => Ok((a..=b).collect()),
            (None, Some(d)) => Ok(vec![d]),
            (None, None) => Err(CliError::input("d", "this command needs --d or --d-range")),
        }
    }

    pub fn sample_max(&self) -> CliResult<f64> {
        let l = self.l.ok_or_else(|| CliError::input("L", "this command needs --L"))?;
        if l.is_finite() && l >= 0.0 {
            Ok(l)
        } else {
            Err(CliError::input("L", format!("L must be finite and non-negative, got {l}")))
        }
    }

    pub fn smoothness(&self) -> CliResult<usize> {
        self.k.ok_or_else(|| CliError::input("k", "this command needs --k"))
    }

    /// `(uniform M, per-order M_l)` from the `--M` values.
    pub fn derivative_bounds(&self) -> CliResult<(Option<f64>, Vec<(usize, f64)>)> {
        let mut uniform = None;
        let mut orders = Vec::new();
        for raw in &self.m {
            let bad = |what: &str| CliError::input("M", format!("bad value `{raw}`: {what}"));
            match raw.split_once('=') {
                Some((l, v)) => {
                    let l: usize = l.trim().parse().map_err(|_| bad("order must be a non-negative integer"))?;
                    let v: f64 = v.trim().parse().map_err(|_| bad("not a number"))?;
                    orders.push((l, v));
                }
                None => {
                    let v: f64 = raw.trim().parse().map_err(|_| bad("not a number"))?;
                    if uniform.replace(v).is_some() {
                        return Err(bad("only one uniform bound is allowed"));
                    }
                }
            }
        }
        Ok((uniform, orders))
    }
}

/// Resolves the command and parameters from the command line and the
/// optional config file.
pub fn resolve(cli: Cli) -> CliResult<(CommandKind, Params)> {
    let from_file = match &cli.config {
        Some(path) => Some(read_config(path)?),
        None => None,
    };
    match (cli.command.map(Command::split), from_file) {
        (Some((kind, p)), Some(file)) => Ok((kind, p.over(file.params))),
        (Some((kind, p)), None) => Ok((kind, p)),
        (None, Some(file)) => {
            let kind = file
                .command
                .ok_or_else(|| CliError::input("command", "the config file names no command"))?;
            Ok((kind, file.params))
        }
        (None, None) => Err(CliError::input("command", "no command given (see --help)")),
    }
}

fn read_config(path: &Path) -> CliResult<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input("config", format!("cannot read `{}`: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input("config", e.to_string()))
}

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use rdu_premia::comparative::ComparisonGrids;
use rdu_premia::evalcore::Lottery;
use rdu_premia::funclib::{UtilityFn, WeightingFn};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::args::{Axis, CommonArgs, Format, PremiumKind};
use crate::error::{CliError, CliResult};

pub const DEFAULT_X0: f64 = 1.0;
pub const DEFAULT_P0: f64 = 0.5;
pub const DEFAULT_EPS1: f64 = 0.1;
pub const DEFAULT_EPS2: f64 = 0.1;

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub utility: Option<UtilityFn>,
    pub weighting: Option<WeightingFn>,
    pub utility2: Option<UtilityFn>,
    pub weighting2: Option<WeightingFn>,
    pub x0: Option<f64>,
    pub p0: Option<f64>,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub lottery: Option<Lottery>,
    pub axis: Option<Axis>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub premium: Option<PremiumKind>,
    pub levels: Option<usize>,
    pub seed: Option<u64>,
    pub quadruples: Option<usize>,
    pub grids: Option<ComparisonGrids>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }
}

/// Parses a function spec given either compactly (`cara:1`) or as JSON.
pub fn parse_spec<T>(flag: &str, text: &str) -> CliResult<T>
where
    T: std::str::FromStr<Err = rdu_premia::Error> + DeserializeOwned,
{
    let trimmed = text.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('"') {
        serde_json::from_str(trimmed).map_err(|e| CliError::Input(format!("--{flag}: {e}")))
    } else {
        trimmed.parse().map_err(|e| CliError::Input(format!("--{flag}: {e}")))
    }
}

/// Merges flags with the config file; the file wins and each override is
/// recorded as a warning.
#[derive(Debug, Default)]
pub struct Merger {
    pub warnings: Vec<String>,
}

impl Merger {
    pub fn pick<T: PartialEq + Display>(
        &mut self,
        name: &str,
        flag: Option<T>,
        file: Option<T>,
    ) -> Option<T> {
        match (flag, file) {
            (Some(f), Some(c)) => {
                if f != c {
                    self.warnings.push(format!(
                        "config value {name} = {c} overrides --{name} {f}"
                    ));
                }
                Some(c)
            }
            (f, c) => c.or(f),
        }
    }
}

/// Settings every subcommand needs, after merging.
#[derive(Debug)]
pub struct Common {
    pub utility: UtilityFn,
    pub weighting: WeightingFn,
    pub x0: f64,
    pub p0: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

pub fn resolve_common(args: &CommonArgs, file: &FileConfig, m: &mut Merger) -> CliResult<Common> {
    let utility = args.utility.as_deref().map(|s| parse_spec("utility", s)).transpose()?;
    let weighting = args.weighting.as_deref().map(|s| parse_spec("weighting", s)).transpose()?;
    let format = match (args.format, file.format) {
        (Some(f), Some(c)) if f != c => {
            m.warnings.push(format!("config value format = {c:?} overrides --format {f:?}"));
            Some(c)
        }
        (f, c) => c.or(f),
    };
    let out = match (&args.out, &file.out) {
        (Some(f), Some(c)) if f != c => {
            m.warnings.push(format!(
                "config value out = {} overrides --out {}",
                c.display(),
                f.display()
            ));
            Some(c.clone())
        }
        (f, c) => c.clone().or_else(|| f.clone()),
    };
    Ok(Common {
        utility: m.pick("utility", utility, file.utility).unwrap_or_else(UtilityFn::linear),
        weighting: m
            .pick("weighting", weighting, file.weighting.clone())
            .unwrap_or_else(WeightingFn::identity),
        x0: m.pick("x0", args.x0, file.x0).unwrap_or(DEFAULT_X0),
        p0: m.pick("p0", args.p0, file.p0).unwrap_or(DEFAULT_P0),
        eps1: m.pick("eps1", args.eps1, file.eps1).unwrap_or(DEFAULT_EPS1),
        eps2: m.pick("eps2", args.eps2, file.eps2).unwrap_or(DEFAULT_EPS2),
        format,
        out,
    })
}

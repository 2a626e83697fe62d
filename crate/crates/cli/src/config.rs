//! Run configuration: a flat `key=value` file merged under command-line
//! flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to the subcommand's default.
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Symbols per side of raster cylinders.
    #[arg(long)]
    pub word_len: Option<usize>,
    /// Series and window depth.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Longest block counted for entropy brackets.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Arc length grown per manifold branch.
    #[arg(long)]
    pub arc_budget: Option<f64>,
    /// Grid resolution (meaning depends on the subcommand).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overwrite existing outputs.
    #[arg(long)]
    pub force: bool,
    /// `key=value` file; keys are flag names with `-` or `_`.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Flags merged with the config file. Keys not consumed by the chosen
/// subcommand are reported as errors by [`RunConfig::finish`].
#[derive(Clone, Debug)]
pub struct RunConfig {
    flags: Flags,
    file: BTreeMap<String, String>,
    used: std::cell::RefCell<Vec<String>>,
}

fn parse_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), n + 1))?;
        let key = k.trim().replace('-', "_");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            bail!("{}:{}: duplicate key {key}", path.display(), n + 1);
        }
    }
    Ok(map)
}

impl RunConfig {
    pub fn load(flags: Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => parse_file(p)?,
            None => BTreeMap::new(),
        };
        Ok(Self {
            flags,
            file,
            used: Default::default(),
        })
    }

    fn file_value<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.used.borrow_mut().push(key.to_string());
        self.file
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| anyhow!("config key {key}={v}: {e}"))
            })
            .transpose()
    }

    fn pick<T: FromStr + Clone>(&self, flag: &Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        let file = self.file_value(key)?;
        Ok(flag.clone().or(file))
    }

    pub fn a(&self) -> Result<Option<f64>> {
        self.pick(&self.flags.a, "a")
    }

    pub fn b(&self) -> Result<Option<f64>> {
        self.pick(&self.flags.b, "b")
    }

    pub fn word_len(&self, default: usize) -> Result<usize> {
        Ok(self
            .pick(&self.flags.word_len, "word_len")?
            .unwrap_or(default))
    }

    pub fn depth(&self, default: usize) -> Result<usize> {
        Ok(self.pick(&self.flags.depth, "depth")?.unwrap_or(default))
    }

    pub fn n_max(&self, default: usize) -> Result<usize> {
        Ok(self.pick(&self.flags.n_max, "n_max")?.unwrap_or(default))
    }

    pub fn arc_budget(&self, default: f64) -> Result<f64> {
        Ok(self
            .pick(&self.flags.arc_budget, "arc_budget")?
            .unwrap_or(default))
    }

    pub fn grid(&self, default: usize) -> Result<usize> {
        Ok(self.pick(&self.flags.grid, "grid")?.unwrap_or(default))
    }

    pub fn seed(&self, default: u64) -> Result<u64> {
        Ok(self.pick(&self.flags.seed, "seed")?.unwrap_or(default))
    }

    pub fn out(&self) -> Result<PathBuf> {
        Ok(self
            .pick(&self.flags.out, "out")?
            .unwrap_or_else(|| PathBuf::from("lozi-out")))
    }

    pub fn force(&self) -> Result<bool> {
        Ok(self.flags.force || self.file_value::<bool>("force")?.unwrap_or(false))
    }

    /// A key that only exists in config files.
    pub fn extra<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.file_value(key)
    }

    /// Fails on config-file keys the subcommand never asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        let unknown: Vec<&str> = self
            .file
            .keys()
            .filter(|k| !used.contains(k))
            .map(String::as_str)
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            bail!("unused config keys: {}", unknown.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_file(text: &str, flags: Flags) -> RunConfig {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, text).unwrap();
        RunConfig::load(Flags {
            config: Some(p),
            ..flags
        })
        .unwrap()
    }

    #[test]
    fn flags_override_file() {
        let c = with_file(
            "# comment\na = 1.5\nword-len=7\n",
            Flags {
                a: Some(1.9),
                ..Flags::default()
            },
        );
        assert_eq!(c.a().unwrap(), Some(1.9));
        assert_eq!(c.word_len(10).unwrap(), 7);
        assert_eq!(c.depth(40).unwrap(), 40);
        c.finish().unwrap();
    }

    #[test]
    fn unknown_and_bad_keys() {
        let c = with_file("colour=red\nseed=x\n", Flags::default());
        assert!(c.seed(1).is_err());
        assert!(c.finish().unwrap_err().to_string().contains("colour"));
    }
}

//! Flat `key = value` configuration file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::report::Format;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub budget_default: u64,
    pub k_max: u64,
    pub var_count_max: u64,
    pub cache_path: Option<PathBuf>,
    pub output_format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget_default: 10_000,
            k_max: bgslab::quasitrivial::DEFAULT_K_MAX,
            var_count_max: bgslab::sat::DEFAULT_WIDTH_LIMIT,
            cache_path: None,
            output_format: Format::Table,
        }
    }
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment. Unset keys keep
    /// their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key = value", i + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let number = || {
                value.parse::<u64>().with_context(|| {
                    format!("config line {}: {key} must be a natural number", i + 1)
                })
            };
            match key {
                "budget_default" => config.budget_default = number()?,
                "k_max" => config.k_max = number()?,
                "var_count_max" => config.var_count_max = number()?,
                "cache_path" => {
                    config.cache_path = (!value.is_empty()).then(|| PathBuf::from(value));
                }
                "output_format" => {
                    config.output_format = value
                        .parse()
                        .map_err(|e: String| anyhow::anyhow!("config line {}: {e}", i + 1))?;
                }
                _ => bail!("config line {}: unknown key {key:?}", i + 1),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget_default == 0 {
            bail!("budget_default must be at least 1");
        }
        if self.k_max > 64 {
            bail!("k_max must be at most 64, got {}", self.k_max);
        }
        if self.var_count_max > 20 {
            bail!(
                "var_count_max must be at most 20, got {}",
                self.var_count_max
            );
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c = Config::parse(
            "# lab\nbudget_default = 500\nk_max=40\nvar_count_max = 12\ncache_path = /tmp/c.json\noutput_format = csv\n",
        )
        .unwrap();
        assert_eq!(
            c,
            Config {
                budget_default: 500,
                k_max: 40,
                var_count_max: 12,
                cache_path: Some(PathBuf::from("/tmp/c.json")),
                output_format: Format::Csv,
            }
        );
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::parse("k_max = 65").is_err());
        assert!(Config::parse("var_count_max = 21").is_err());
        assert!(Config::parse("budget_default = 0").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("k_max").is_err());
        assert!(Config::parse("output_format = xml").is_err());
    }

    #[test]
    fn empty_file_is_default() {
        assert_eq!(Config::parse("\n# nothing\n").unwrap(), Config::default());
    }
}

//! Run configuration: TOML file, then command-line flags, then environment.

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const ENV_CACHE_DIR: &str = "ARAKHEIGHT_CACHE_DIR";
pub const ENV_TOL: &str = "ARAKHEIGHT_TOL";
pub const ENV_SEED: &str = "ARAKHEIGHT_SEED";
pub const ENV_THREADS: &str = "ARAKHEIGHT_THREADS";
pub const ENV_FORMAT: &str = "ARAKHEIGHT_FORMAT";
pub const DEFAULT_CONFIG: &str = "arakheight.toml";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(format!("unknown format `{s}` (json, csv, pretty)")),
        }
    }
}

/// Every field is optional so layers can be merged.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub tol: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: Option<bool>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl Layer {
    fn over(self, base: Layer) -> Layer {
        Layer {
            tol: self.tol.or(base.tol),
            cache_dir: self.cache_dir.or(base.cache_dir),
            no_cache: self.no_cache.or(base.no_cache),
            threads: self.threads.or(base.threads),
            seed: self.seed.or(base.seed),
            format: self.format.or(base.format),
        }
    }

    pub fn from_file(path: &Path) -> Result<Layer, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Result<Layer, String> {
        fn parsed<T: std::str::FromStr>(key: &str, v: Option<String>) -> Result<Option<T>, String> {
            v.map(|s| s.trim().parse().map_err(|_| format!("{key}: cannot parse `{s}`")))
                .transpose()
        }
        Ok(Layer {
            tol: parsed(ENV_TOL, get(ENV_TOL))?,
            cache_dir: get(ENV_CACHE_DIR).filter(|s| !s.is_empty()).map(PathBuf::from),
            no_cache: None,
            threads: parsed(ENV_THREADS, get(ENV_THREADS))?,
            seed: parsed(ENV_SEED, get(ENV_SEED))?,
            format: parsed(ENV_FORMAT, get(ENV_FORMAT))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// `None` leaves the per-command default in place.
    pub tol: Option<f64>,
    /// `None` keeps quadrature results in memory only.
    pub cache_dir: Option<PathBuf>,
    pub threads: usize,
    pub seed: u64,
    pub format: Format,
}

impl Config {
    /// Merges `file < flags < env` and checks the invariants.
    pub fn resolve(file: Layer, flags: Layer, env: Layer) -> Result<Config, String> {
        let l = env.over(flags.over(file));
        if let Some(t) = l.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("tolerance must be positive, got {t}"));
            }
        }
        let threads = l.threads.unwrap_or(1);
        if threads == 0 {
            return Err("threads must be at least 1".into());
        }
        let cache_dir = if l.no_cache == Some(true) { None } else { l.cache_dir };
        Ok(Config {
            tol: l.tol,
            cache_dir,
            threads,
            seed: l.seed.unwrap_or(0x5eed),
            format: l.format.unwrap_or_default(),
        })
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

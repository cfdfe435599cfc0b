//! Run configuration: defaults, an optional `key=value` file, then flags.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "PENNYFLIP_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Config {
    /// Inclusive range of group orders swept by the checks.
    pub n_range: (u32, u32),
    pub max_rounds: usize,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_range: (3, 64),
            max_rounds: 9,
            samples: 10_000,
            seed: 0,
            tolerance: 1e-9,
            output_format: OutputFormat::Json,
        }
    }
}

/// Settings that may or may not be given; later sources override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n_range: Option<(u32, u32)>,
    pub max_rounds: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub output_format: Option<OutputFormat>,
}

impl Config {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.n_range {
            self.n_range = v;
        }
        if let Some(v) = o.max_rounds {
            self.max_rounds = v;
        }
        if let Some(v) = o.samples {
            self.samples = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if let Some(v) = o.output_format {
            self.output_format = v;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let (lo, hi) = self.n_range;
        if lo < 3 || hi > 1024 || lo > hi {
            return Err(CliError::Usage(format!("n range {lo}..{hi} must lie within 3..1024")));
        }
        if !(2..=12).contains(&self.max_rounds) {
            return Err(CliError::Usage(format!("max rounds {} must be between 2 and 12", self.max_rounds)));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(CliError::Usage(format!("tolerance {} must lie in (0, 1)", self.tolerance)));
        }
        Ok(())
    }

    pub fn check_n(&self, n: u32) -> Result<(), CliError> {
        let (lo, hi) = self.n_range;
        if (lo..=hi).contains(&n) {
            Ok(())
        } else {
            Err(CliError::Usage(format!("n = {n} is outside the configured range {lo}..{hi}")))
        }
    }

    pub fn orders(&self) -> impl Iterator<Item = u32> {
        self.n_range.0..=self.n_range.1
    }

    /// Defaults, then the config file (explicit path or [`CONFIG_ENV`]),
    /// then flags.
    pub fn resolve(path: Option<&Path>, flags: &Overrides) -> Result<Config, CliError> {
        let mut config = Config::default();
        let path = path
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        if let Some(path) = path {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            config.apply(&parse_file(&text)?);
        }
        config.apply(flags);
        config.validate()?;
        Ok(config)
    }
}

/// Parses `3..16`, `3..=16`, `3-16` or a single order; both ends inclusive.
pub fn parse_n_range(s: &str) -> Result<(u32, u32), String> {
    let s = s.trim();
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (a, b)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b)
    } else if let Some((a, b)) = s.split_once('-') {
        (a, b)
    } else {
        (s, s)
    };
    let parse = |v: &str| v.trim().parse::<u32>().map_err(|_| format!("invalid n range `{s}`"));
    Ok((parse(lo)?, parse(hi)?))
}

/// Parses a config file of `key = value` lines. Keys mirror the flags, in
/// either kebab or camel case; `#` starts a comment.
pub fn parse_file(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Usage(format!("config line {}: {msg}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key = value, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let number = |v: &str| v.parse::<u64>().map_err(|_| bad(format!("`{key}` needs an integer")));
        match key {
            "n-range" | "nRange" => o.n_range = Some(parse_n_range(value).map_err(bad)?),
            "max-rounds" | "maxRounds" => o.max_rounds = Some(number(value)? as usize),
            "samples" => o.samples = Some(number(value)?),
            "seed" => o.seed = Some(number(value)?),
            "tolerance" => {
                o.tolerance = Some(value.parse().map_err(|_| bad(format!("`{key}` needs a number")))?)
            }
            "format" | "output-format" | "outputFormat" => {
                o.output_format = Some(match value {
                    "json" => OutputFormat::Json,
                    "markdown" | "md" => OutputFormat::Markdown,
                    other => return Err(bad(format!("unknown format `{other}`"))),
                })
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("3..16"), Ok((3, 16)));
        assert_eq!(parse_n_range("3..=16"), Ok((3, 16)));
        assert_eq!(parse_n_range("8-32"), Ok((8, 32)));
        assert_eq!(parse_n_range("8"), Ok((8, 8)));
        assert!(parse_n_range("a..b").is_err());
    }

    #[test]
    fn file_then_flags() {
        let file = parse_file("# sweep\nnRange = 3..16\nsamples=10\nformat = markdown\n").unwrap();
        let mut config = Config::default();
        config.apply(&file);
        config.apply(&Overrides {
            samples: Some(0),
            ..Overrides::default()
        });
        assert_eq!(config.n_range, (3, 16));
        assert_eq!(config.samples, 0);
        assert_eq!(config.output_format, OutputFormat::Markdown);
        assert!(config.validate().is_ok());
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(parse_file("colour = blue").is_err());
        assert!(parse_file("seed = x").is_err());
        assert!(parse_file("no equals sign").is_err());
        let wide = Config {
            n_range: (3, 2048),
            ..Config::default()
        };
        assert!(wide.validate().is_err());
        let long = Config {
            max_rounds: 13,
            ..Config::default()
        };
        assert!(long.validate().is_err());
        assert!(Config::default().check_n(65).is_err());
    }
}

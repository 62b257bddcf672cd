//! JSON configuration; command-line flags take precedence over it.

use std::fs;
use std::path::{Path, PathBuf};

use ellstab_core::series::{format_rational, parse_rational, Rational};
use serde::Deserialize;

use crate::error::CliError;

pub const SERIES_ORDER_ENV: &str = "ELLSTAB_SERIES_ORDER";
pub const DEFAULT_SERIES_ORDER: i64 = 16;

/// A rational written either as a JSON integer or as `"p/q"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RatText {
    Int(i64),
    Text(String),
}

impl RatText {
    fn parse(&self, key: &str) -> Result<Rational, CliError> {
        match self {
            RatText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RatText::Text(t) => parse_rational(t).map_err(|e| CliError::validation(format!("config {key}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    e: Option<RatText>,
    m: Option<RatText>,
    kx_f: Option<RatText>,
    alpha: Option<RatText>,
    q: Option<RatText>,
    series_order: Option<i64>,
    #[serde(default)]
    output: OutputPaths,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub walls: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

#[derive(Clone, Debug, Default)]
pub struct Config {
    pub e: Option<Rational>,
    pub m: Option<Rational>,
    pub kx_f: Option<Rational>,
    pub alpha: Option<Rational>,
    pub q: Option<Rational>,
    pub series_order: Option<i64>,
    pub output: OutputPaths,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| CliError::validation(format!("bad config: {e}")))?;
        let field = |v: &Option<RatText>, key: &str| v.as_ref().map(|r| r.parse(key)).transpose();
        let cfg = Config {
            e: field(&raw.e, "e")?,
            m: field(&raw.m, "m")?,
            kx_f: field(&raw.kx_f, "kx_f")?,
            alpha: field(&raw.alpha, "alpha")?,
            q: field(&raw.q, "q")?,
            series_order: raw.series_order,
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(e) = &self.e {
            if e < &Rational::from_integer(0.into()) {
                return Err(CliError::validation(format!("config e = {} must be >= 0", format_rational(e))));
            }
            if let Some(m) = &self.m {
                if m <= e {
                    return Err(CliError::validation(format!(
                        "config m = {} must exceed e = {}",
                        format_rational(m),
                        format_rational(e)
                    )));
                }
            }
        }
        if let Some(n) = self.series_order {
            check_order(n)?;
        }
        Ok(())
    }

    /// Flag, then `ELLSTAB_SERIES_ORDER`, then the config file, then 16.
    pub fn series_order(&self, flag: Option<i64>) -> Result<i64, CliError> {
        let n = match flag {
            Some(n) => n,
            None => match std::env::var(SERIES_ORDER_ENV) {
                Ok(text) => text
                    .trim()
                    .parse()
                    .map_err(|_| CliError::validation(format!("{SERIES_ORDER_ENV}={text} is not an integer")))?,
                Err(_) => self.series_order.unwrap_or(DEFAULT_SERIES_ORDER),
            },
        };
        check_order(n)?;
        Ok(n)
    }
}

fn check_order(n: i64) -> Result<(), CliError> {
    if !(1..=200).contains(&n) {
        return Err(CliError::validation(format!("series order {n} outside 1..=200")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_integers_and_fractions() {
        let c = Config::parse(r#"{"e": 0, "m": "5/2", "alpha": "1", "series_order": 8}"#).unwrap();
        assert_eq!(c.m.unwrap(), Rational::new(5.into(), 2.into()));
        assert_eq!(c.series_order, Some(8));
    }

    #[test]
    fn rejects_m_not_above_e() {
        let err = Config::parse(r#"{"e": 2, "m": 2}"#).unwrap_err();
        assert!(err.to_string().contains("must exceed"));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::parse(r#"{"e": 0, "mm": 2}"#).is_err());
    }

    #[test]
    fn flag_beats_config() {
        let c = Config::parse(r#"{"series_order": 8}"#).unwrap();
        assert_eq!(c.series_order(Some(4)).unwrap(), 4);
    }
}

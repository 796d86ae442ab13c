//! Reading and writing numeric vectors.
//!
//! Accepted layouts: one value per line (blank lines and `#` comments are
//! skipped), a single-column CSV whose first line may be a header, or a JSON
//! array of numbers.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::types::{CountHistogram, ProbabilityDistribution};

pub fn load_distribution(
    path: impl AsRef<Path>,
    normalize: bool,
) -> Result<ProbabilityDistribution> {
    parse_distribution(&fs::read_to_string(path)?, normalize)
}

pub fn load_histogram(path: impl AsRef<Path>) -> Result<CountHistogram> {
    parse_histogram(&fs::read_to_string(path)?)
}

pub fn parse_distribution(text: &str, normalize: bool) -> Result<ProbabilityDistribution> {
    ProbabilityDistribution::new(parse_values::<f64>(text)?, normalize)
}

pub fn parse_histogram(text: &str) -> Result<CountHistogram> {
    CountHistogram::from_signed(&parse_values::<i64>(text)?)
}

/// Writes one value per line using the shortest representation that parses
/// back to the same `f64`.
pub fn write_distribution<W: Write>(dist: &ProbabilityDistribution, mut out: W) -> Result<()> {
    for p in dist.probs() {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

fn parse_values<T>(text: &str) -> Result<Vec<T>>
where
    T: FromStr + DeserializeOwned,
    T::Err: Display,
{
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        });
    }

    let mut values = Vec::new();
    let mut seen_first = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split(',').map(str::trim).filter(|f| !f.is_empty());
        let Some(field) = fields.next() else {
            continue;
        };
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "expected a single column".into(),
            });
        }
        let is_first = !seen_first;
        seen_first = true;
        match field.trim_matches('"').parse::<T>() {
            Ok(v) => values.push(v),
            // header row
            Err(_) if is_first => {}
            Err(e) => {
                return Err(Error::Parse {
                    line,
                    message: format!("cannot parse {field:?}: {e}"),
                })
            }
        }
    }
    Ok(values)
}

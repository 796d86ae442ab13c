use std::fmt;
use std::str::FromStr;

/// Logarithmic grid of sample sizes, written `start:stop[:per_decade]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NGrid {
    pub start: u64,
    pub stop: u64,
    pub per_decade: u32,
}

pub const DEFAULT_PER_DECADE: u32 = 9;

impl NGrid {
    /// `round(start * 10^(i / per_decade))` up to `stop`, duplicates dropped.
    pub fn values(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        let limit = self.stop as f64 * (1.0 + 1e-12);
        for i in 0.. {
            let x = self.start as f64 * 10f64.powf(i as f64 / self.per_decade as f64);
            if x > limit {
                break;
            }
            let n = (x.round() as u64).min(self.stop);
            if out.last().is_none_or(|&last| n > last) {
                out.push(n);
            }
        }
        out
    }
}

/// Accepts integers written plainly or in scientific notation (`1e6`).
pub fn parse_count(s: &str) -> Result<u128, String> {
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(x >= 0.0 && x.fract() == 0.0 && x < 1e36) {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(x as u128)
}

impl FromStr for NGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(format!("expected start:stop[:per_decade], got `{s}`"));
        }
        let bound = |p: &str| -> Result<u64, String> {
            let v = parse_count(p)?;
            u64::try_from(v).map_err(|_| format!("`{p}` is too large"))
        };
        let start = bound(parts[0])?;
        let stop = bound(parts[1])?;
        let per_decade = match parts.get(2) {
            Some(p) => p
                .parse::<u32>()
                .map_err(|_| format!("`{p}` is not a points-per-decade count"))?,
            None => DEFAULT_PER_DECADE,
        };
        if start == 0 {
            return Err("grid start must be >= 1".into());
        }
        if stop < start {
            return Err(format!("grid stop {stop} is below start {start}"));
        }
        if per_decade == 0 {
            return Err("points per decade must be >= 1".into());
        }
        Ok(Self {
            start,
            stop,
            per_decade,
        })
    }
}

impl fmt::Display for NGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.per_decade)
    }
}

//! Validated probability distributions and count histograms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::compensated_sum;

/// Largest accepted deviation of an unnormalized input sum from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability vector on `m` bins.
///
/// Entries are non-negative and sum to one up to rounding. Zero entries are
/// legal; functionals use the convention `0 * ln^k(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
    strictly_positive: bool,
}

impl ProbabilityDistribution {
    /// Validates `values` as a distribution.
    ///
    /// With `normalize` the entries are divided by their sum. Without it the
    /// sum must already be within [`SUM_TOLERANCE`] of one; entries are then
    /// rescaled only if the sum is off by more than a few ulps, so inputs that
    /// are already normalized are kept bit-for-bit.
    pub fn new(values: Vec<f64>, normalize: bool) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let sum = compensated_sum(values.iter().copied());
        if values.is_empty() || sum == 0.0 {
            return Err(Error::AllZero);
        }
        if !sum.is_finite() {
            return Err(Error::DegenerateInput("sum of entries overflows".into()));
        }
        if !normalize && (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne { sum });
        }

        let machine_tol = 4.0 * values.len() as f64 * f64::EPSILON;
        let probs = if normalize || (sum - 1.0).abs() > machine_tol {
            values.into_iter().map(|x| x / sum).collect()
        } else {
            values
        };
        let strictly_positive = probs.iter().all(|&p| p > 0.0);
        Ok(Self {
            probs,
            strictly_positive,
        })
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::AllZero);
        }
        Self::new(vec![1.0 / m as f64; m], false)
    }

    /// `s_i` proportional to `i` for `i = 1..=m`.
    pub fn arithmetic(m: usize) -> Result<Self> {
        Self::new((1..=m).map(|i| i as f64).collect(), true)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of bins, including empty ones.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.strictly_positive
    }

    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// Index of the first zero-probability bin, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.probs.iter().position(|&p| p == 0.0)
    }

    /// Drops zero-probability bins, keeping the order of the others.
    pub fn restrict_to_support(&self) -> Self {
        let probs: Vec<f64> = self.probs.iter().copied().filter(|&p| p > 0.0).collect();
        Self {
            probs,
            strictly_positive: true,
        }
    }

    pub(crate) fn require_strictly_positive(&self) -> Result<()> {
        match self.first_zero() {
            Some(index) => Err(Error::ZeroProbability { index }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<f64>> for ProbabilityDistribution {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values, false)
    }
}

impl From<ProbabilityDistribution> for Vec<f64> {
    fn from(dist: ProbabilityDistribution) -> Self {
        dist.probs
    }
}

/// Visit counts `j_i` of `m` states over `n = sum(j_i)` steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CountHistogram {
    counts: Vec<u64>,
    n: u64,
}

impl CountHistogram {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        let n = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| Error::DegenerateInput("total count overflows u64".into()))?;
        if n == 0 {
            return Err(Error::AllZero);
        }
        Ok(Self { counts, n })
    }

    /// Accepts signed counts, as read from text, rejecting negatives.
    pub fn from_signed(counts: &[i64]) -> Result<Self> {
        let counts = counts
            .iter()
            .enumerate()
            .map(|(index, &c)| {
                u64::try_from(c).map_err(|_| Error::NegativeEntry {
                    index,
                    value: c as f64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of steps.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of bins, including empty ones.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of bins with a nonzero count.
    pub fn observed_support(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Observed rates `j_i / n`.
    pub fn rates(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n as f64;
        self.counts.iter().map(move |&c| c as f64 / n)
    }
}

impl TryFrom<Vec<u64>> for CountHistogram {
    type Error = Error;

    fn try_from(counts: Vec<u64>) -> Result<Self> {
        Self::new(counts)
    }
}

impl From<CountHistogram> for Vec<u64> {
    fn from(hist: CountHistogram) -> Self {
        hist.counts
    }
}

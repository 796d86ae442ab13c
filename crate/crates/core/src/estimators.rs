//! Sample-side statistics computed from a count histogram.
//!
//! All estimators depend on the counts only through the rates `j_i / n`, so
//! scaling every count by the same integer leaves them unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxvar;
use crate::population::{
    big_gamma_parameter, entropy_of, gamma_parameter, lambda0_of, variance_parameter,
};
use crate::sum::compensated_sum;
use crate::types::{CountHistogram, ProbabilityDistribution};

/// How the support size used by the Miller-Madow term is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportSize {
    /// A known support size; must cover every occupied bin.
    Declared(usize),
    /// The histogram length.
    HistogramLength,
    /// The number of occupied bins.
    Observed,
}

/// Point estimates and error bar for one histogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub h_plugin: f64,
    pub h_miller_madow: f64,
    pub lambda0_hat: f64,
    /// `sqrt(lambda0_hat / n)`.
    pub sigma_h: f64,
    pub n: u64,
    /// Occupied bins.
    pub m_support: usize,
    /// Support size entering the Miller-Madow term.
    pub m_declared: usize,
}

impl EntropyEstimate {
    pub fn from_histogram(hist: &CountHistogram, support: SupportSize) -> Result<Self> {
        let m_declared = match support {
            SupportSize::Declared(m) => m,
            SupportSize::HistogramLength => hist.len(),
            SupportSize::Observed => hist.observed_support(),
        };
        let lambda0_hat = plug_in_lambda0(hist);
        Ok(Self {
            h_plugin: plug_in_entropy(hist),
            h_miller_madow: miller_madow_entropy(hist, m_declared)?,
            lambda0_hat,
            sigma_h: (lambda0_hat / hist.n() as f64).sqrt(),
            n: hist.n(),
            m_support: hist.observed_support(),
            m_declared,
        })
    }
}

fn rates(hist: &CountHistogram) -> Vec<f64> {
    hist.rates().collect()
}

/// `-sum(p_i ln p_i)` over the observed rates.
pub fn plug_in_entropy(hist: &CountHistogram) -> f64 {
    entropy_of(&rates(hist))
}

/// Plug-in entropy plus `(m - 1) / (2n)`.
pub fn miller_madow_entropy(hist: &CountHistogram, m: usize) -> Result<f64> {
    let observed = hist.observed_support();
    if m < observed {
        return Err(Error::SupportTooSmall {
            declared: m,
            observed,
        });
    }
    Ok(plug_in_entropy(hist) + (m as f64 - 1.0) / (2.0 * hist.n() as f64))
}

/// Variance parameter evaluated at the observed rates.
pub fn plug_in_lambda0(hist: &CountHistogram) -> f64 {
    lambda0_of(&rates(hist))
}

/// `sqrt(plug_in_lambda0 / n)`.
pub fn entropy_error_bar(hist: &CountHistogram) -> f64 {
    (plug_in_lambda0(hist) / hist.n() as f64).sqrt()
}

/// `sum((ln p_i + H)^2 p_i (1 - p_i))`, the error-propagation estimate that
/// treats the counts as independent.
pub fn roulston_lambda(hist: &CountHistogram) -> f64 {
    let p = rates(hist);
    let h = entropy_of(&p);
    compensated_sum(p.iter().filter(|&&x| x > 0.0).map(|&x| {
        let d = x.ln() + h;
        d * d * x * (1.0 - x)
    }))
}

/// Distribution-free variance bound `(ln n)^2 / n`.
pub fn antos_kontoyiannis_bound(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("sample size must be >= 2, got {n}")));
    }
    let l = (n as f64).ln();
    Ok(l * l / n as f64)
}

/// Upper bound on the entropy error bar for a support of size `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseBound {
    /// `sqrt(lambda0_max(m) / n)` with the exact maximum.
    pub exact: f64,
    /// `ln(m) / (2 sqrt(n))`.
    pub asymptotic: f64,
}

pub fn worst_case_error_bar(m: usize, n: u64) -> Result<WorstCaseBound> {
    if m < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {m}")));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    let n = n as f64;
    Ok(WorstCaseBound {
        exact: (maxvar::lambda0_max(m)? / n).sqrt(),
        asymptotic: (m as f64).ln() / (2.0 * n.sqrt()),
    })
}

/// Expected plug-in variance parameter to first order: `Lambda0 + gamma / n`.
pub fn predicted_lambda0_mean(dist: &ProbabilityDistribution, n: u64) -> Result<f64> {
    let n = check_n(n)?;
    Ok(variance_parameter(dist) + gamma_parameter(dist)? / n)
}

/// Variance of the plug-in variance parameter to first order: `Gamma / n`.
pub fn predicted_lambda0_variance(dist: &ProbabilityDistribution, n: u64) -> Result<f64> {
    let n = check_n(n)?;
    Ok(big_gamma_parameter(dist)? / n)
}

fn check_n(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    Ok(n as f64)
}

//! Exact functionals of a known distribution.
//!
//! Everything here is in nats. `l_i = ln s_i` denotes the per-bin log
//! probability; empty bins follow the `x ln^k x -> 0` convention wherever the
//! functional stays finite. The bias and variance coefficients of the plug-in
//! variance estimator (`gamma`, `big_gamma`) contain `sum(l_i)` or assume the
//! support size equals the number of bins, so they require strictly positive
//! distributions.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sum::{compensated_sum, CompensatedSum};
use crate::types::ProbabilityDistribution;

/// Bundle of the exact functionals of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationStats {
    /// Shannon entropy.
    pub h: f64,
    /// Variance parameter: coefficient of `1/N` in the variance of the plug-in entropy.
    pub lambda0: f64,
    /// Third raw moment of the single-bin surprisal `-ln s_i`.
    pub mu3: f64,
    /// Fourth raw moment of the single-bin surprisal.
    pub mu4: f64,
    /// Coefficient of `1/N` in the bias of the plug-in variance parameter.
    pub gamma: f64,
    /// Coefficient of `1/N` in the variance of the plug-in variance parameter.
    pub big_gamma: f64,
}

impl PopulationStats {
    /// Second raw moment, `lambda0 + h^2`.
    pub fn mu2(&self) -> f64 {
        self.lambda0 + self.h * self.h
    }
}

/// `-sum(s_i ln s_i)`.
pub fn shannon_entropy(dist: &ProbabilityDistribution) -> f64 {
    entropy_of(dist.probs())
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    let h = -compensated_sum(probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()));
    h.max(0.0)
}

/// Raw moment `sum(s_i (-ln s_i)^n)`; `n = 0` gives 1 and `n = 1` the entropy.
pub fn log_moment(dist: &ProbabilityDistribution, n: u32) -> f64 {
    if n == 0 {
        return compensated_sum(dist.probs().iter().copied());
    }
    compensated_sum(
        dist.probs()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * (-p.ln()).powi(n as i32)),
    )
}

/// `sum(s_i ln^2 s_i) - H^2`, evaluated as the centred sum `sum(s_i (H + ln s_i)^2)`
/// so the result is non-negative by construction.
pub fn variance_parameter(dist: &ProbabilityDistribution) -> f64 {
    lambda0_of(dist.probs())
}

pub(crate) fn lambda0_of(probs: &[f64]) -> f64 {
    let h = entropy_of(probs);
    compensated_sum(probs.iter().filter(|&&p| p > 0.0).map(|&p| {
        let d = h + p.ln();
        p * d * d
    }))
}

/// Multinomial covariance of the rates, `chi_ij = delta_ij s_i - s_i s_j`.
pub fn covariance_matrix(dist: &ProbabilityDistribution) -> DMatrix<f64> {
    let s = dist.probs();
    let m = s.len();
    DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            s[i] * (1.0 - s[i])
        } else {
            -s[i] * s[j]
        }
    })
}

/// Closed form `M H + M - 1 - Lambda0 + sum(l_i)`.
pub fn gamma_parameter(dist: &ProbabilityDistribution) -> Result<f64> {
    dist.require_strictly_positive()?;
    let m = dist.len() as f64;
    let h = shannon_entropy(dist);
    let lambda0 = variance_parameter(dist);
    let mut acc = CompensatedSum::default();
    acc.add(m * h);
    acc.add(m - 1.0);
    acc.add(-lambda0);
    for &p in dist.probs() {
        acc.add(p.ln());
    }
    Ok(acc.value())
}

/// Closed form
/// `mu4 - 4 mu3 (H + 1) + H^3 (3H + 4) + 2 Lambda0 (3H^2 + 6H + 2) - Lambda0^2`.
///
/// Evaluated through the central surprisal moments `c_n = sum(s_i (l_i + H)^n)`
/// as the identical `c4 + 4 c3 + 4 Lambda0 - Lambda0^2`. The raw moments grow
/// like `ln^4 M` while the result stays O(1) near the maximum, so the raw
/// expression loses about `log10(ln^4 M)` digits to cancellation.
pub fn big_gamma_parameter(dist: &ProbabilityDistribution) -> Result<f64> {
    dist.require_strictly_positive()?;
    Ok(big_gamma_central(dist.probs(), shannon_entropy(dist)))
}

fn big_gamma_central(probs: &[f64], h: f64) -> f64 {
    let (mut c2, mut c3, mut c4) = (
        CompensatedSum::default(),
        CompensatedSum::default(),
        CompensatedSum::default(),
    );
    for &p in probs {
        let y = p.ln() + h;
        let py2 = p * y * y;
        c2.add(py2);
        c3.add(py2 * y);
        c4.add(py2 * y * y);
    }
    let lambda0 = c2.value();
    let mut acc = CompensatedSum::default();
    acc.add(c4.value());
    acc.add(4.0 * c3.value());
    acc.add(4.0 * lambda0);
    acc.add(-lambda0 * lambda0);
    acc.value()
}

/// Double sum `sum_ij chi_ij b_i b_j` with `b_i = l_i^2 + 2 (1 + H) l_i`.
///
/// O(M^2); kept as an independent route to [`big_gamma_parameter`].
pub fn big_gamma_via_covariance(dist: &ProbabilityDistribution) -> Result<f64> {
    dist.require_strictly_positive()?;
    let s = dist.probs();
    let h = shannon_entropy(dist);
    let b: Vec<f64> = s
        .iter()
        .map(|&p| {
            let l = p.ln();
            l * l + 2.0 * (1.0 + h) * l
        })
        .collect();
    let mut acc = CompensatedSum::default();
    for i in 0..s.len() {
        for j in 0..s.len() {
            let chi = if i == j {
                s[i] - s[i] * s[j]
            } else {
                -s[i] * s[j]
            };
            acc.add(chi * b[i] * b[j]);
        }
    }
    Ok(acc.value())
}

/// All exact functionals in one call.
pub fn population_stats(dist: &ProbabilityDistribution) -> Result<PopulationStats> {
    dist.require_strictly_positive()?;
    let h = shannon_entropy(dist);
    let lambda0 = variance_parameter(dist);
    let mu3 = log_moment(dist, 3);
    let mu4 = log_moment(dist, 4);
    Ok(PopulationStats {
        h,
        lambda0,
        mu3,
        mu4,
        gamma: gamma_parameter(dist)?,
        big_gamma: big_gamma_central(dist.probs(), h),
    })
}

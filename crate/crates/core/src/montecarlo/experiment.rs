use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::TrialStream;
use super::sample_multinomial;
use crate::error::{Error, Result};
use crate::estimators::{plug_in_entropy, plug_in_lambda0, roulston_lambda};
use crate::population::{population_stats, PopulationStats};
use crate::sum::compensated_sum;
use crate::types::ProbabilityDistribution;

/// Default cap on `trials * max(n)`.
pub const DEFAULT_BUDGET: u128 = 100_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    PluginLambda0,
    PluginEntropy,
    Roulston,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [
        Estimator::PluginLambda0,
        Estimator::PluginEntropy,
        Estimator::Roulston,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dist: ProbabilityDistribution,
    /// Strictly increasing sample sizes.
    pub n_values: Vec<u64>,
    /// Simulated histograms per sample size.
    pub trials: usize,
    pub seed: u64,
    pub estimators: Vec<Estimator>,
    /// Refuse to run when `trials * max(n)` exceeds this.
    pub budget: u128,
}

impl ExperimentConfig {
    /// All estimators, default budget.
    pub fn new(
        dist: ProbabilityDistribution,
        n_values: Vec<u64>,
        trials: usize,
        seed: u64,
    ) -> Self {
        Self {
            dist,
            n_values,
            trials,
            seed,
            estimators: Estimator::ALL.to_vec(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 2 {
            return Err(Error::InvalidConfig(format!(
                "at least 2 trials are needed for a sample variance, got {}",
                self.trials
            )));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidConfig("no sample sizes given".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::InvalidConfig("sample sizes must be >= 1".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "sample sizes must be strictly increasing".into(),
            ));
        }
        self.dist.require_strictly_positive()?;
        let required = self.trials as u128 * *self.n_values.last().unwrap() as u128;
        if required > self.budget {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn wants(&self, e: Estimator) -> bool {
        self.estimators.contains(&e)
    }
}

/// Sample mean and variance (divisor `S - 1`) with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMoments {
    pub mean: f64,
    pub variance: f64,
    /// `sqrt(variance / S)`.
    pub se_mean: f64,
    /// From the sample fourth central moment.
    pub se_variance: f64,
}

impl SampleMoments {
    /// Requires at least two values.
    pub fn from_values(values: &[f64]) -> Self {
        let s = values.len() as f64;
        let mean = compensated_sum(values.iter().copied()) / s;
        let m2 = compensated_sum(values.iter().map(|x| (x - mean).powi(2))) / s;
        let m4 = compensated_sum(values.iter().map(|x| (x - mean).powi(4))) / s;
        let variance = m2 * s / (s - 1.0);
        let var_of_var = m4 / s - m2 * m2 * (s - 3.0) / (s * (s - 1.0));
        Self {
            mean,
            variance,
            se_mean: (variance / s).sqrt(),
            se_variance: var_of_var.max(0.0).sqrt(),
        }
    }
}

/// Aggregates for one sample size, next to the first-order predictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: u64,
    pub lambda0_hat: Option<SampleMoments>,
    pub h_hat: Option<SampleMoments>,
    pub roulston: Option<SampleMoments>,
    /// `Lambda0 + gamma / n`.
    pub predicted_mean: f64,
    /// `Gamma / n`.
    pub predicted_var: f64,
    /// `Lambda0 / n`.
    pub predicted_var_h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub population: PopulationStats,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<ExperimentRow>,
}

/// Runs `trials` independent histograms per sample size.
///
/// Trial `t` at grid index `g` draws from `TrialStream::new(seed, g, t)` and
/// per-trial values are reduced in trial order, so the result does not depend
/// on the number of worker threads.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with(config, |_| Ok(()))
}

/// As [`run_experiment`], calling `on_row` as soon as each sample size is done.
/// An error from `on_row` aborts the run.
pub fn run_experiment_with<F>(config: &ExperimentConfig, mut on_row: F) -> Result<ExperimentResult>
where
    F: FnMut(&ExperimentRow) -> Result<()>,
{
    config.validate()?;
    let population = population_stats(&config.dist)?;

    let mut rows = Vec::with_capacity(config.n_values.len());
    for (g, &n) in config.n_values.iter().enumerate() {
        let row = simulate_row(config, &population, g as u64, n)?;
        on_row(&row)?;
        rows.push(row);
    }

    Ok(ExperimentResult {
        population,
        trials: config.trials,
        seed: config.seed,
        rows,
    })
}

fn simulate_row(
    config: &ExperimentConfig,
    population: &PopulationStats,
    g: u64,
    n: u64,
) -> Result<ExperimentRow> {
    let outcomes = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = TrialStream::new(config.seed, g, t);
            let hist = sample_multinomial(&config.dist, n, &mut rng)?;
            Ok([
                plug_in_lambda0(&hist),
                plug_in_entropy(&hist),
                roulston_lambda(&hist),
            ])
        })
        .collect::<Result<Vec<[f64; 3]>>>()?;

    let column = |idx: usize, e: Estimator| {
        config.wants(e).then(|| {
            let values: Vec<f64> = outcomes.iter().map(|o| o[idx]).collect();
            SampleMoments::from_values(&values)
        })
    };
    let nf = n as f64;
    Ok(ExperimentRow {
        n,
        lambda0_hat: column(0, Estimator::PluginLambda0),
        h_hat: column(1, Estimator::PluginEntropy),
        roulston: column(2, Estimator::Roulston),
        predicted_mean: population.lambda0 + population.gamma / nf,
        predicted_var: population.big_gamma / nf,
        predicted_var_h: population.lambda0 / nf,
    })
}

//! Seeded multinomial sampling and the estimator-convergence experiment.

mod binomial;
mod experiment;
mod rng;

pub use binomial::sample_binomial;
pub use experiment::{
    run_experiment, run_experiment_with, Estimator, ExperimentConfig, ExperimentResult,
    ExperimentRow, SampleMoments, DEFAULT_BUDGET,
};
pub use rng::{uniform01, TrialStream};

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{CountHistogram, ProbabilityDistribution};

/// Draws visit counts of `n` independent steps.
///
/// Conditional-binomial decomposition: bin `i` receives
/// `Binomial(remaining steps, s_i / remaining mass)`, so the cost is O(M)
/// whatever `n` is.
pub fn sample_multinomial<R: RngCore + ?Sized>(
    dist: &ProbabilityDistribution,
    n: u64,
    rng: &mut R,
) -> Result<CountHistogram> {
    if n == 0 {
        return Err(Error::Domain("number of steps must be >= 1".into()));
    }
    let probs = dist.probs();
    let m = probs.len();
    // remaining[i] = sum(probs[i..])
    let mut remaining = vec![0.0; m + 1];
    for i in (0..m).rev() {
        remaining[i] = remaining[i + 1] + probs[i];
    }
    let mut counts = vec![0u64; m];
    let mut left = n;
    for i in 0..m - 1 {
        if left == 0 {
            break;
        }
        let p = probs[i];
        if p == 0.0 {
            continue;
        }
        let conditional = (p / remaining[i]).min(1.0);
        let c = sample_binomial(rng, left, conditional);
        counts[i] = c;
        left -= c;
    }
    counts[m - 1] += left;
    CountHistogram::new(counts)
}

/// Least-squares line through `(ln n, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateInput(
            "power-law fit needs at least two points".into(),
        ));
    }
    if let Some(&(n, y)) = points.iter().find(|&&(n, y)| !(n > 0.0 && y > 0.0)) {
        return Err(Error::DegenerateInput(format!(
            "power-law fit needs positive coordinates, got ({n}, {y})"
        )));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateInput(
            "power-law fit needs distinct abscissae".into(),
        ));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(PowerLawFit {
        slope,
        intercept: my - slope * mx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_distribution() {
        let d = ProbabilityDistribution::new(vec![1.0], false).unwrap();
        let mut rng = TrialStream::new(1, 0, 0);
        for n in [1, 17, 1_000_000] {
            assert_eq!(sample_multinomial(&d, n, &mut rng).unwrap().counts(), &[n]);
        }
    }

    #[test]
    fn zero_bins_stay_empty() {
        let d = ProbabilityDistribution::new(vec![0.0, 0.5, 0.0, 0.5, 0.0], false).unwrap();
        let mut rng = TrialStream::new(2, 0, 0);
        for _ in 0..200 {
            let h = sample_multinomial(&d, 1000, &mut rng).unwrap();
            assert_eq!(h.counts()[0], 0);
            assert_eq!(h.counts()[2], 0);
            assert_eq!(h.counts()[4], 0);
            assert_eq!(h.n(), 1000);
        }
    }

    #[test]
    fn fair_coin_large_n() {
        let d = ProbabilityDistribution::uniform(2).unwrap();
        let mut rng = TrialStream::new(3, 0, 0);
        let h = sample_multinomial(&d, 1_000_000, &mut rng).unwrap();
        assert_eq!(h.n(), 1_000_000);
        assert!((h.counts()[0] as f64 - 500_000.0).abs() < 5.0 * 500.0);
    }

    #[test]
    fn same_stream_same_histogram() {
        let d = ProbabilityDistribution::arithmetic(5).unwrap();
        let a = sample_multinomial(&d, 12_345, &mut TrialStream::new(9, 1, 2)).unwrap();
        let b = sample_multinomial(&d, 12_345, &mut TrialStream::new(9, 1, 2)).unwrap();
        assert_eq!(a, b);
        assert!(sample_multinomial(&d, 0, &mut TrialStream::new(9, 1, 2)).is_err());
    }

    #[test]
    fn power_law_examples() {
        let f = fit_power_law(&[(10.0, 1.0), (100.0, 0.1), (1000.0, 0.01)]).unwrap();
        assert!((f.slope + 1.0).abs() < 1e-12);
        assert!((f.intercept - 10f64.ln()).abs() < 1e-12);
        let f = fit_power_law(&[(10.0, 1.0), (100.0, 0.01)]).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12);
        assert!(matches!(
            fit_power_law(&[(10.0, 1.0)]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(fit_power_law(&[(10.0, 1.0), (10.0, 2.0)]).is_err());
        assert!(fit_power_law(&[(10.0, 1.0), (100.0, 0.0)]).is_err());
    }
}

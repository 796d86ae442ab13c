#![allow(dead_code)]

use entvar_core::montecarlo::{uniform01, TrialStream};
use entvar_core::ProbabilityDistribution;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed proptest configuration without failure persistence files.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_0fe1_7a00),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Uniform point on the simplex: normalized standard exponentials.
pub fn random_simplex(rng: &mut TrialStream, m: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - uniform01(rng)).ln()).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

/// Strictly positive distributions on `m` bins, uniform over the simplex.
pub fn simplex(
    m: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = ProbabilityDistribution> {
    m.prop_flat_map(|m| prop::collection::vec(1e-12f64..1.0, m))
        .prop_map(|u| {
            let e: Vec<f64> = u.into_iter().map(|x| -x.ln()).collect();
            ProbabilityDistribution::new(e, true).unwrap()
        })
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

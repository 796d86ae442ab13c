use entvar_core::montecarlo::{
    fit_power_law, run_experiment, sample_multinomial, ExperimentConfig, ExperimentResult,
    TrialStream,
};
use entvar_core::{maxvar, ProbabilityDistribution};

fn arithmetic5() -> ProbabilityDistribution {
    ProbabilityDistribution::arithmetic(5).unwrap()
}

fn run(dist: ProbabilityDistribution, n: &[u64], trials: usize, seed: u64) -> ExperimentResult {
    run_experiment(&ExperimentConfig::new(dist, n.to_vec(), trials, seed)).unwrap()
}

#[test]
fn multinomial_marginals() {
    let d = arithmetic5();
    let (n, draws) = (1000u64, 10_000usize);
    let mut sums = [0.0f64; 5];
    for t in 0..draws {
        let h = sample_multinomial(&d, n, &mut TrialStream::new(31, 0, t as u64)).unwrap();
        assert_eq!(h.n(), n);
        for (s, &c) in sums.iter_mut().zip(h.counts()) {
            *s += c as f64;
        }
    }
    for (i, (&s, &p)) in sums.iter().zip(d.probs()).enumerate() {
        let mean = s / draws as f64;
        let expected = n as f64 * p;
        let se = (n as f64 * p * (1.0 - p) / draws as f64).sqrt();
        assert!(
            (mean - expected).abs() < 5.0 * se,
            "bin {i}: {mean} vs {expected}"
        );
    }
}

#[test]
fn result_independent_of_thread_count() {
    let cfg = ExperimentConfig::new(arithmetic5(), vec![100, 1000, 10_000], 500, 77);
    let in_pool = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_experiment(&cfg).unwrap())
    };
    let one = in_pool(1);
    assert_eq!(one, in_pool(3));
    assert_eq!(one, in_pool(8));
    assert_eq!(one, run_experiment(&cfg).unwrap());

    let mut other = cfg.clone();
    other.seed = 78;
    assert_ne!(one, run_experiment(&other).unwrap());
}

#[test]
fn first_order_laws_for_arithmetic_distribution() {
    let r = run(arithmetic5(), &[1000, 10_000, 100_000], 1_000_000, 32);
    let p = r.population;

    // n (mean - Lambda0) is flat in n and equals gamma.
    let scaled: Vec<(f64, f64)> = r
        .rows
        .iter()
        .map(|row| {
            let l = row.lambda0_hat.unwrap();
            let n = row.n as f64;
            ((l.mean - p.lambda0) * n, l.se_mean * n)
        })
        .collect();
    for w in scaled.windows(2) {
        let se = (w[0].1 * w[0].1 + w[1].1 * w[1].1).sqrt();
        assert!((w[0].0 - w[1].0).abs() < 3.0 * se, "{scaled:?}");
    }
    assert!((scaled[1].0 - p.gamma).abs() < 0.10 * p.gamma, "{scaled:?}");

    for row in r.rows.iter().filter(|row| row.n >= 10_000) {
        let l = row.lambda0_hat.unwrap();
        let h = row.h_hat.unwrap();
        let n = row.n as f64;
        assert!(
            (l.variance * n / p.big_gamma - 1.0).abs() < 0.10,
            "n={}",
            row.n
        );
        assert!(
            (h.variance * n / p.lambda0 - 1.0).abs() < 0.10,
            "n={}",
            row.n
        );
        assert!((l.se_mean - (l.variance / 1e6).sqrt()).abs() < 1e-18);
    }
}

#[test]
fn variance_falls_as_inverse_square_at_the_maximum() {
    let d = maxvar::max_variance(5).unwrap().distribution(0).unwrap();
    let r = run(d, &[1000, 10_000, 100_000], 20_000, 33);
    assert!(r.population.big_gamma.abs() < 1e-10);
    let points: Vec<(f64, f64)> = r
        .rows
        .iter()
        .map(|row| (row.n as f64, row.lambda0_hat.unwrap().variance))
        .collect();
    let fit = fit_power_law(&points).unwrap();
    assert!((fit.slope + 2.0).abs() < 0.15, "slope {}", fit.slope);
}

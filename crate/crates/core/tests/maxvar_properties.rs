mod common;

use common::random_simplex;
use entvar_core::maxvar::{
    build_stationary_distribution, hessian_at_max, lambda0_max, max_variance, solve_stationary,
};
use entvar_core::montecarlo::TrialStream;
use entvar_core::population::{shannon_entropy, variance_parameter};
use entvar_core::ProbabilityDistribution;

fn lambda0_at(p: Vec<f64>) -> f64 {
    variance_parameter(&ProbabilityDistribution::new(p, false).unwrap())
}

#[test]
fn positive_roots_increase_with_k() {
    for m in 3..=40usize {
        for k in (1..m).filter(|&k| 2 * k < m) {
            let a = solve_stationary(m, k).unwrap().v_pos;
            let b = solve_stationary(m, k + 1).unwrap().v_pos;
            assert!(a < b, "m={m} k={k}: {a} !< {b}");
        }
    }
}

#[test]
fn reflection_of_roots() {
    for m in 2..=40usize {
        for k in 1..m {
            let s = solve_stationary(m, k).unwrap();
            let r = solve_stationary(m, m - k).unwrap();
            assert!((r.v_pos + s.v_neg).abs() < 1e-12, "m={m} k={k}");
            if 2 * k <= m {
                assert!(0.0 < s.v_pos && s.v_pos <= -s.v_neg && -s.v_neg < 1.0);
            }
            assert_ne!(s.p0, s.q0);
        }
    }
}

#[test]
fn maximum_grows_with_support() {
    let mut prev = 0.0;
    for m in 2..=1000usize {
        let l = lambda0_max(m).unwrap();
        assert!(l > prev, "m={m}");
        prev = l;
    }
}

#[test]
fn stationary_points_satisfy_entropy_condition() {
    for m in 2..=30usize {
        for k in 1..m {
            let sol = solve_stationary(m, k).unwrap();
            let d = build_stationary_distribution(&sol, 0).unwrap();
            let h = shannon_entropy(&d);
            assert!(
                (sol.p0.ln() + sol.q0.ln() + 2.0 + 2.0 * h).abs() < 1e-12,
                "m={m} k={k}"
            );
            assert!((variance_parameter(&d) - sol.lambda0).abs() < 1e-10);
        }
    }
}

#[test]
fn no_random_point_exceeds_the_maximum() {
    for m in [3usize, 4, 5] {
        let max = lambda0_max(m).unwrap();
        let facet = lambda0_max(m - 1).unwrap();
        assert!(facet < max);
        let mut rng = TrialStream::new(21, m as u64, 0);
        let mut best = (0.0, Vec::new());
        for _ in 0..100_000 {
            let p = random_simplex(&mut rng, m);
            let l = lambda0_at(p.clone());
            assert!(l < max, "m={m}: {l} at {p:?}");
            if l > best.0 {
                best = (l, p);
            }
        }
        // The best random point sits near one of the m equivalent maxima.
        let p0 = max_variance(m).unwrap().p0;
        let top = best.1.iter().cloned().fold(0.0, f64::max);
        assert!((top - p0).abs() < 0.05, "m={m}: best {:?}", best.1);
    }
}

#[test]
fn neighbourhood_of_maximum() {
    for m in [3usize, 4, 5] {
        let sol = max_variance(m).unwrap();
        let mut rng = TrialStream::new(22, m as u64, 0);
        let mut closest = 0.0f64;
        for _ in 0..10_000 {
            let mut p = vec![sol.q0; m];
            p[0] = sol.p0;
            let mut shift = 0.0;
            for x in p.iter_mut().skip(1) {
                let d = 0.01 * (2.0 * entvar_core::montecarlo::uniform01(&mut rng) - 1.0) * sol.q0;
                *x += d;
                shift += d;
            }
            p[0] -= shift;
            let l = lambda0_at(p);
            assert!(l <= sol.lambda0 + 1e-12);
            closest = closest.max(l);
        }
        assert!(closest > 0.99 * sol.lambda0);
    }
}

/// Central differences of Lambda0 in the free coordinates, outlier dependent.
fn finite_difference_hessian(m: usize, h: f64) -> Vec<Vec<f64>> {
    let sol = max_variance(m).unwrap();
    let f = |delta: &[f64]| {
        let mut p = vec![sol.q0; m];
        for (i, d) in delta.iter().enumerate() {
            p[i + 1] += d;
        }
        p[0] = 1.0 - p[1..].iter().sum::<f64>();
        lambda0_at(p)
    };
    let n = m - 1;
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let eval = |si: f64, sj: f64| {
                let mut d = vec![0.0; n];
                d[i] += si * h;
                d[j] += sj * h;
                f(&d)
            };
            out[i][j] = if i == j {
                (eval(1.0, 0.0) - 2.0 * f(&vec![0.0; n]) + eval(-1.0, 0.0)) / (h * h)
            } else {
                (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0))
                    / (4.0 * h * h)
            };
        }
    }
    out
}

#[test]
fn hessian_matches_finite_differences() {
    for m in [2usize, 3, 5, 10] {
        let exact = hessian_at_max(m).unwrap();
        let fd = finite_difference_hessian(m, 1e-5);
        for i in 0..m - 1 {
            for j in 0..m - 1 {
                let rel = (exact[(i, j)] - fd[i][j]).abs() / exact[(i, j)].abs();
                assert!(
                    rel < 1e-3,
                    "m={m} ({i},{j}): {} vs {}",
                    exact[(i, j)],
                    fd[i][j]
                );
            }
        }
        let eig = exact.symmetric_eigenvalues();
        assert!(eig.iter().all(|&e| e < 0.0), "m={m}: {eig}");
    }
}

#[test]
fn hessian_asymptotic_form() {
    let ratios = |m: usize| {
        let h = hessian_at_max(m).unwrap();
        let l = lambda0_max(m).unwrap();
        let mf = m as f64;
        let diag = -8.0 * l * (1.0 + mf / mf.ln());
        (h[(0, 0)] / diag, h[(0, 1)] / (-8.0 * l))
    };
    let (d100, _) = ratios(100);
    let (d1000, o1000) = ratios(1000);
    let (d2000, _) = ratios(2000);
    assert!((o1000 - 1.0).abs() < 0.10, "off-diagonal ratio {o1000}");
    // The diagonal converges slowly: 1.36 at m = 1000, not within 10%.
    assert!((d1000 - 1.36).abs() < 0.005, "diagonal ratio {d1000}");
    assert!(d100 > d1000 && d1000 > d2000 && d2000 > 1.0);
}

use std::io::Write;
use std::path::Path;

use entvar_core::estimators::{antos_kontoyiannis_bound, worst_case_error_bar};
use entvar_core::maxvar::{approx_root_k, lambda0_max_asymptotic, max_variance, solve_stationary};
use entvar_core::montecarlo::{run_experiment_with, ExperimentConfig};
use entvar_core::population::population_stats;
use entvar_core::simplex;
use entvar_core::{io, EntropyEstimate, Error, ProbabilityDistribution, SupportSize};
use serde::Serialize;

use crate::output::{self, optional, real};
use crate::{
    AnalyzeArgs, Failure, Format, MaxvarArgs, PopulationArgs, Preset, SimplexGridArgs, SimulateArgs,
};

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    n: u64,
    bins: usize,
    m_support: usize,
    m_declared: usize,
    h_plugin: f64,
    h_miller_madow: f64,
    lambda0_hat: f64,
    sigma_h: f64,
    worst_case_sigma: Option<f64>,
    worst_case_sigma_asymptotic: Option<f64>,
    ak_bound: Option<f64>,
}

const ANALYZE_COLUMNS: [&str; 11] = [
    "n",
    "bins",
    "m_support",
    "m_declared",
    "h_plugin",
    "h_miller_madow",
    "lambda0_hat",
    "sigma_h",
    "worst_case_sigma",
    "worst_case_sigma_asymptotic",
    "ak_bound",
];

pub fn analyze(args: &AnalyzeArgs, out: Option<&Path>) -> Result<(), Failure> {
    let hist = io::load_histogram(&args.file)?;
    let support = match (args.support, args.observed_support) {
        (Some(m), _) => SupportSize::Declared(m),
        (None, true) => SupportSize::Observed,
        (None, false) => SupportSize::HistogramLength,
    };
    let est = EntropyEstimate::from_histogram(&hist, support)?;
    let worst = if est.m_declared >= 2 {
        Some(worst_case_error_bar(est.m_declared, est.n)?)
    } else {
        None
    };
    let ak_bound = if est.n >= 2 {
        Some(antos_kontoyiannis_bound(est.n)?)
    } else {
        None
    };
    let report = AnalyzeReport {
        n: est.n,
        bins: hist.len(),
        m_support: est.m_support,
        m_declared: est.m_declared,
        h_plugin: est.h_plugin,
        h_miller_madow: est.h_miller_madow,
        lambda0_hat: est.lambda0_hat,
        sigma_h: est.sigma_h,
        worst_case_sigma: worst.map(|w| w.exact),
        worst_case_sigma_asymptotic: worst.map(|w| w.asymptotic),
        ak_bound,
    };

    let mut w = output::open(out)?;
    match args.format {
        Format::Text => {
            let lines = [
                ("steps n", report.n.to_string()),
                ("bins", report.bins.to_string()),
                ("occupied bins", report.m_support.to_string()),
                ("support size M", report.m_declared.to_string()),
                ("H plug-in", real(report.h_plugin)),
                ("H Miller-Madow", real(report.h_miller_madow)),
                ("Lambda0 plug-in", real(report.lambda0_hat)),
                ("sigma_H = sqrt(Lambda0/n)", real(report.sigma_h)),
                ("worst-case sigma_H", text_optional(report.worst_case_sigma)),
                (
                    "worst-case ln(M)/(2 sqrt n)",
                    text_optional(report.worst_case_sigma_asymptotic),
                ),
                ("(ln n)^2/n bound", text_optional(report.ak_bound)),
            ];
            for (k, v) in lines {
                writeln!(w, "{k:<28} {v}")?;
            }
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(ANALYZE_COLUMNS)?;
            c.write_record([
                report.n.to_string(),
                report.bins.to_string(),
                report.m_support.to_string(),
                report.m_declared.to_string(),
                real(report.h_plugin),
                real(report.h_miller_madow),
                real(report.lambda0_hat),
                real(report.sigma_h),
                optional(report.worst_case_sigma),
                optional(report.worst_case_sigma_asymptotic),
                optional(report.ak_bound),
            ])?;
            c.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn text_optional(x: Option<f64>) -> String {
    x.map(real).unwrap_or_else(|| "n/a".into())
}

#[derive(Debug, Serialize)]
struct Prediction {
    n: u64,
    pred_mean: f64,
    pred_var: f64,
    pred_var_h: f64,
}

pub fn population(args: &PopulationArgs, out: Option<&Path>) -> Result<(), Failure> {
    let dist = io::load_distribution(&args.file, args.normalize)?;
    let stats = population_stats(&dist)?;
    let predictions: Vec<Prediction> = args
        .n
        .iter()
        .map(|&n| {
            let nf = n as f64;
            Prediction {
                n,
                pred_mean: stats.lambda0 + stats.gamma / nf,
                pred_var: stats.big_gamma / nf,
                pred_var_h: stats.lambda0 / nf,
            }
        })
        .collect();

    let mut w = output::open(out)?;
    match args.format {
        Format::Text => {
            let lines = [
                ("bins M", dist.len().to_string()),
                ("H", real(stats.h)),
                ("Lambda0", real(stats.lambda0)),
                ("mu3", real(stats.mu3)),
                ("mu4", real(stats.mu4)),
                ("gamma", real(stats.gamma)),
                ("Gamma", real(stats.big_gamma)),
            ];
            for (k, v) in lines {
                writeln!(w, "{k:<8} {v}")?;
            }
            writeln!(w)?;
            writeln!(
                w,
                "{:>10} {:>24} {:>24} {:>24}",
                "n", "Lambda0 + gamma/n", "Gamma/n", "Lambda0/n"
            )?;
            for p in &predictions {
                writeln!(
                    w,
                    "{:>10} {:>24} {:>24} {:>24}",
                    p.n,
                    real(p.pred_mean),
                    real(p.pred_var),
                    real(p.pred_var_h)
                )?;
            }
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record([
                "n",
                "h",
                "lambda0",
                "mu3",
                "mu4",
                "gamma",
                "big_gamma",
                "pred_mean",
                "pred_var",
                "pred_var_h",
            ])?;
            for p in &predictions {
                c.write_record([
                    p.n.to_string(),
                    real(stats.h),
                    real(stats.lambda0),
                    real(stats.mu3),
                    real(stats.mu4),
                    real(stats.gamma),
                    real(stats.big_gamma),
                    real(p.pred_mean),
                    real(p.pred_var),
                    real(p.pred_var_h),
                ])?;
            }
            c.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                m: usize,
                stats: entvar_core::PopulationStats,
                predictions: &'a [Prediction],
            }
            let report = Report {
                m: dist.len(),
                stats,
                predictions: &predictions,
            };
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn maxvar(args: &MaxvarArgs, out: Option<&Path>) -> Result<(), Failure> {
    let (lo, hi) = match (&args.m_range, args.m) {
        (Some(r), _) => (r[0], r[1]),
        (None, Some(m)) => (m, m),
        (None, None) => unreachable!("clap requires --m or --m-range"),
    };
    if lo < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {lo}")).into());
    }
    if hi < lo {
        return Err(Error::Domain(format!("empty range {lo}..={hi}")).into());
    }
    if args.k == 0 || args.k >= lo {
        return Err(Error::Domain(format!(
            "k must lie in 1..m for every m in the range, got k = {}",
            args.k
        ))
        .into());
    }

    let mut w = output::open(out)?;
    let mut c = csv::Writer::from_writer(&mut w);
    c.write_record([
        "m",
        "k",
        "v_pos",
        "v_neg",
        "p0",
        "q0",
        "lambda0_max",
        "approx_v",
        "lambda0_asymptotic",
    ])?;
    for m in lo..=hi {
        let sol = if args.k == 1 {
            max_variance(m)?
        } else {
            solve_stationary(m, args.k)?
        };
        c.write_record([
            m.to_string(),
            args.k.to_string(),
            real(sol.v_pos),
            real(sol.v_neg),
            real(sol.p0),
            real(sol.q0),
            real(sol.lambda0),
            real(approx_root_k(m, args.k)),
            real(lambda0_max_asymptotic(m)?),
        ])?;
    }
    c.flush()?;
    drop(c);
    w.flush()?;
    Ok(())
}

const SIMULATE_COLUMNS: [&str; 11] = [
    "n",
    "mean_lh",
    "se_mean_lh",
    "var_lh",
    "se_var_lh",
    "pred_mean",
    "pred_var",
    "mean_h",
    "var_h",
    "pred_var_h",
    "mean_roulston",
];

pub fn simulate(args: &SimulateArgs, out: Option<&Path>) -> Result<(), Failure> {
    let dist = match (&args.dist, args.preset, args.m) {
        (Some(path), _, _) => io::load_distribution(path, args.normalize)?,
        (None, Some(Preset::Arithmetic), Some(m)) => ProbabilityDistribution::arithmetic(m)?,
        (None, Some(Preset::Maxvar), Some(m)) => max_variance(m)?.distribution(0)?,
        _ => unreachable!("clap requires --dist or --preset with --m"),
    };
    let mut config = ExperimentConfig::new(dist, args.n_grid.values(), args.trials, args.seed);
    config.budget = args.budget;
    config.validate()?;

    let mut w = output::open(out)?;
    let mut c = csv::Writer::from_writer(&mut w);
    c.write_record(SIMULATE_COLUMNS)?;
    c.flush()?;

    let mut write_error = None;
    let result = run_experiment_with(&config, |row| {
        let (l, h, r) = (
            row.lambda0_hat.expect("all estimators enabled"),
            row.h_hat.expect("all estimators enabled"),
            row.roulston.expect("all estimators enabled"),
        );
        let record = [
            row.n.to_string(),
            real(l.mean),
            real(l.se_mean),
            real(l.variance),
            real(l.se_variance),
            real(row.predicted_mean),
            real(row.predicted_var),
            real(h.mean),
            real(h.variance),
            real(row.predicted_var_h),
            real(r.mean),
        ];
        if let Err(e) = c.write_record(record).and_then(|_| Ok(c.flush()?)) {
            write_error = Some(e);
            return Err(Error::InvalidConfig("output closed".into()));
        }
        if args.progress {
            eprintln!("entvar: n = {} done", row.n);
        }
        Ok(())
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    result?;
    drop(c);
    w.flush()?;
    Ok(())
}

pub fn simplex_grid(args: &SimplexGridArgs, out: Option<&Path>) -> Result<(), Failure> {
    let points = simplex::simplex_grid(args.m, args.resolution)?;
    let mut w = output::open(out)?;
    let mut c = csv::Writer::from_writer(&mut w);
    c.write_record(["s0", "s1", "s2", "lambda0", "entropy"])?;
    for p in &points {
        c.write_record([
            real(p.s[0]),
            real(p.s[1]),
            real(p.s[2]),
            real(p.lambda0),
            real(p.entropy),
        ])?;
    }
    c.flush()?;
    drop(c);
    w.flush()?;
    Ok(())
}

//! Stationary points and the maximum of the variance parameter on the simplex.
//!
//! An interior stationary point of `Lambda0` has `k` bins at a common value
//! `p0` and the remaining `m - k` bins at `q0`. With `v = 2 k p0 - 1` the
//! stationarity condition reduces to the scalar equation
//!
//! ```text
//! v ln((1 + v) / (1 - v)) = 2 - v ln((m - k) / k)
//! ```
//!
//! which has exactly one root on each side of zero (left side convex and even,
//! right side a line through `(0, 2)`). At a root, `Lambda0 = 1/v^2 - 1`. The
//! global maximum sits at `k = 1` and the positive root.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::ProbabilityDistribution;

const X_TOL: f64 = 1e-14;
const F_TOL: f64 = 1e-13;
const MAX_ITER: usize = 400;

/// A stationary point of `Lambda0` for support size `m` with `k` bins at `p0`.
///
/// `p0`, `q0` and `lambda0` refer to the positive root `v_pos`; use
/// [`MaxVarSolution::at_negative_root`] for the other one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxVarSolution {
    pub m: usize,
    pub k: usize,
    /// Negative root of the stationarity condition.
    pub v_neg: f64,
    /// Positive root of the stationarity condition.
    pub v_pos: f64,
    /// Probability of each of the `k` outlier bins.
    pub p0: f64,
    /// Probability of each of the `m - k` remaining bins.
    pub q0: f64,
    /// `1 / v_pos^2 - 1`.
    pub lambda0: f64,
}

impl MaxVarSolution {
    fn from_roots(m: usize, k: usize, v_neg: f64, v_pos: f64) -> Self {
        let (p0, q0) = p0_q0(m, k, v_pos);
        Self {
            m,
            k,
            v_neg,
            v_pos,
            p0,
            q0,
            lambda0: lambda0_at_root(v_pos),
        }
    }

    /// `(p0, q0, lambda0)` at the negative root.
    pub fn at_negative_root(&self) -> (f64, f64, f64) {
        let (p0, q0) = p0_q0(self.m, self.k, self.v_neg);
        (p0, q0, lambda0_at_root(self.v_neg))
    }

    /// See [`build_stationary_distribution`].
    pub fn distribution(&self, outlier_index: usize) -> Result<ProbabilityDistribution> {
        build_stationary_distribution(self, outlier_index)
    }
}

fn p0_q0(m: usize, k: usize, v: f64) -> (f64, f64) {
    (
        (1.0 + v) / (2.0 * k as f64),
        (1.0 - v) / (2.0 * (m - k) as f64),
    )
}

fn lambda0_at_root(v: f64) -> f64 {
    1.0 / (v * v) - 1.0
}

/// `v ln((1 + v)/(1 - v))` for `|v| < 1`.
pub fn f_of_v(v: f64) -> Result<f64> {
    if v.is_nan() || v.abs() >= 1.0 {
        return Err(Error::Domain(format!("f(v) needs |v| < 1, got {v}")));
    }
    Ok(f_unchecked(v))
}

fn f_unchecked(v: f64) -> f64 {
    v * (v.ln_1p() - (-v).ln_1p())
}

fn log_ratio(m: usize, k: usize) -> f64 {
    ((m - k) as f64).ln() - (k as f64).ln()
}

/// Both roots of the stationarity condition for `(m, k)`.
pub fn solve_stationary(m: usize, k: usize) -> Result<MaxVarSolution> {
    if m < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {m}")));
    }
    if k == 0 || k >= m {
        return Err(Error::Domain(format!(
            "k must lie in 1..={}, got {k}",
            m - 1
        )));
    }
    let slope = log_ratio(m, k);
    let g = |v: f64| f_unchecked(v) - 2.0 + v * slope;
    let v_pos = bracketed_root(&g, 0.0, outer_bound(&g, 1.0)?)?;
    let v_neg = bracketed_root(&g, outer_bound(&g, -1.0)?, 0.0)?;
    Ok(MaxVarSolution::from_roots(m, k, v_neg, v_pos))
}

/// Moves the outer bracket end toward `sign * 1` until `g` is positive there.
fn outer_bound(g: &impl Fn(f64) -> f64, sign: f64) -> Result<f64> {
    for gap in [1e-12, 1e-14, f64::EPSILON / 2.0] {
        let x = sign * (1.0 - gap);
        if g(x) > 0.0 {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(
        "stationarity condition has no sign change inside (-1, 1)".into(),
    ))
}

/// Illinois false position safeguarded by bisection.
///
/// Requires a sign change over `[lo, hi]`. Stops once the bracket is narrower
/// than `X_TOL` and the residual is below `F_TOL`, or when the bracket has
/// shrunk to two adjacent floats.
fn bracketed_root(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut glo, mut ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::NoConvergence(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    // Interpolation weights; halved on the side that keeps being retained.
    let (mut wlo, mut whi) = (glo, ghi);
    let mut last_side = 0i8;

    for _ in 0..MAX_ITER {
        let width = hi - lo;
        let best = if glo.abs() < ghi.abs() {
            (lo, glo)
        } else {
            (hi, ghi)
        };
        if width < X_TOL && best.1.abs() < F_TOL {
            return Ok(best.0);
        }

        let mut x = (lo * whi - hi * wlo) / (whi - wlo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let gx = g(x);
        if gx == 0.0 {
            return Ok(x);
        }
        if gx.signum() == glo.signum() {
            lo = x;
            glo = gx;
            wlo = gx;
            if last_side == -1 {
                whi *= 0.5;
            }
            last_side = -1;
        } else {
            hi = x;
            ghi = gx;
            whi = gx;
            if last_side == 1 {
                wlo *= 0.5;
            }
            last_side = 1;
        }

        if hi - lo > 0.5 * width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                // Adjacent floats with a sign change: the root is resolved to
                // machine precision even if rounding keeps |g| above F_TOL.
                return Ok(if glo.abs() < ghi.abs() { lo } else { hi });
            }
            let gm = g(mid);
            if gm == 0.0 {
                return Ok(mid);
            }
            if gm.signum() == glo.signum() {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
            wlo = glo;
            whi = ghi;
            last_side = 0;
        }
    }
    Err(Error::NoConvergence(format!(
        "bracket [{lo}, {hi}] after {MAX_ITER} iterations"
    )))
}

fn cache() -> &'static RwLock<HashMap<usize, MaxVarSolution>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, MaxVarSolution>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The maximizing stationary point: `k = 1`, positive root. Memoized per `m`.
pub fn max_variance(m: usize) -> Result<MaxVarSolution> {
    if m < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {m}")));
    }
    if let Some(sol) = cache().read().ok().and_then(|c| c.get(&m).copied()) {
        return Ok(sol);
    }
    let sol = solve_stationary(m, 1)?;
    if let Ok(mut c) = cache().write() {
        c.insert(m, sol);
    }
    Ok(sol)
}

/// Maximum of `Lambda0` over the `m`-simplex.
pub fn lambda0_max(m: usize) -> Result<f64> {
    max_variance(m).map(|s| s.lambda0)
}

/// Closed-form root obtained by replacing `f(v)` with its leading term `2 v^2`.
pub fn approx_root(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {m}")));
    }
    Ok(approx_root_k(m, 1))
}

/// Quadratic approximation of the positive root for general `k`.
pub fn approx_root_k(m: usize, k: usize) -> f64 {
    let slope = log_ratio(m, k);
    (slope * slope / 16.0 + 1.0).sqrt() - slope / 4.0
}

/// Large-`m` asymptote `ln^2(m) / 4` of the maximum.
pub fn lambda0_max_asymptotic(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!("support size must be >= 2, got {m}")));
    }
    let l = (m as f64).ln();
    Ok(l * l / 4.0)
}

/// Distribution realizing a stationary point.
///
/// The `k` bins starting at `outlier_index` (wrapping around) take `p0`, all
/// other bins take `q0`.
pub fn build_stationary_distribution(
    sol: &MaxVarSolution,
    outlier_index: usize,
) -> Result<ProbabilityDistribution> {
    let m = sol.m;
    if outlier_index >= m {
        return Err(Error::IndexOutOfRange {
            index: outlier_index,
            len: m,
        });
    }
    let mut probs = vec![sol.q0; m];
    for j in 0..sol.k {
        probs[(outlier_index + j) % m] = sol.p0;
    }
    ProbabilityDistribution::new(probs, false)
}

/// Hessian of `Lambda0` at the maximum, in the `m - 1` independent coordinates
/// with the outlier bin taken as the dependent one.
pub fn hessian_at_max(m: usize) -> Result<DMatrix<f64>> {
    let sol = max_variance(m)?;
    let (p0, q0) = (sol.p0, sol.q0);
    let r = (p0 / q0).ln();
    let off = -r * (2.0 * r - 1.0 / p0);
    let diag = off - r / q0;
    Ok(DMatrix::from_fn(m - 1, m - 1, |i, j| {
        if i == j {
            diag
        } else {
            off
        }
    }))
}

//! Binomial variates from explicit, platform-independent algorithms.
//!
//! * `n * min(p, 1-p) < 10`: sequential inversion (BINV, Kachitvichyanukul &
//!   Schmeiser 1988).
//! * otherwise: transformed rejection with squeeze (BTRS, Hörmann 1993).
//!
//! Only the uniform stream, IEEE arithmetic and `ln`/`exp`/`sqrt` are used.

use rand_core::RngCore;

use super::rng::uniform01;

const INVERSION_THRESHOLD: f64 = 10.0;
// Restart bound for BINV; P(X > 110) is negligible when n p < 10.
const BINV_MAX_X: u64 = 110;

/// Draws from `Binomial(n, p)`. `p` is clamped to `[0, 1]`.
pub fn sample_binomial<R: RngCore + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    if n == 0 || p.is_nan() || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    if p > 0.5 {
        return n - sample_binomial(rng, n, 1.0 - p);
    }
    if n as f64 * p < INVERSION_THRESHOLD {
        inversion(rng, n, p)
    } else {
        btrs(rng, n, p)
    }
}

fn inversion<R: RngCore + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    let q = 1.0 - p;
    let s = p / q;
    let a = (n as f64 + 1.0) * s;
    let r0 = (n as f64 * (-p).ln_1p()).exp();
    'restart: loop {
        let mut r = r0;
        let mut u = uniform01(rng);
        let mut x = 0u64;
        while u > r {
            u -= r;
            x += 1;
            if x > BINV_MAX_X || x > n {
                continue 'restart;
            }
            r *= a / x as f64 - s;
        }
        return x;
    }
}

fn btrs<R: RngCore + ?Sized>(rng: &mut R, n: u64, p: f64) -> u64 {
    let nf = n as f64;
    let q = 1.0 - p;
    let spq = (nf * p * q).sqrt();
    let b = 1.15 + 2.53 * spq;
    let a = -0.0873 + 0.0248 * b + 0.01 * p;
    let c = nf * p + 0.5;
    let v_r = 0.92 - 4.2 / b;
    let alpha = (2.83 + 5.1 / b) * spq;
    let r = p / q;
    let mode = ((nf + 1.0) * p).floor();
    let tail_mode = stirling_tail(mode) + stirling_tail(nf - mode);

    loop {
        let u = uniform01(rng) - 0.5;
        let v = uniform01(rng);
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + c).floor();
        if k < 0.0 || k > nf {
            continue;
        }
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        let v = (v * alpha / (a / (us * us) + b)).ln();
        // ln[ mode! (n-mode)! / (k! (n-k)!) ] + (k - mode) ln r, via Stirling with tails.
        let bound = (mode + 0.5) * ((mode + 1.0) / (r * (nf - mode + 1.0))).ln()
            + (nf + 1.0) * ((nf - mode + 1.0) / (nf - k + 1.0)).ln()
            + (k + 0.5) * (r * (nf - k + 1.0) / (k + 1.0)).ln()
            + tail_mode
            - stirling_tail(k)
            - stirling_tail(nf - k);
        if v <= bound {
            return k as u64;
        }
    }
}

/// `ln(k!) - [(k + 1/2) ln(k + 1) - (k + 1) + ln(sqrt(2 pi))]`.
fn stirling_tail(k: f64) -> f64 {
    const TABLE: [f64; 10] = [
        0.081_061_466_795_327_26,
        0.041_340_695_955_409_3,
        0.027_677_925_684_998_34,
        0.020_790_672_103_765_093,
        0.016_644_691_189_821_193,
        0.013_876_128_823_070_748,
        0.011_896_709_945_891_77,
        0.010_411_265_261_972_096,
        0.009_255_462_182_712_733,
        0.008_330_563_433_362_87,
    ];
    if k < 10.0 {
        return TABLE[k as usize];
    }
    let kp1 = k + 1.0;
    let kp1sq = kp1 * kp1;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / 1680.0 / kp1sq) / kp1sq) / kp1sq) / kp1
}

//! Monte Carlo depth estimator: shoot random rays from random points of the query and
//! average the smaller of the two opposite stabbing numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::geom::{Point, Polyline, Ray};
use crate::scalar::Scalar;
use crate::stabbing::stab_count;

/// Name of the generator recorded in reports.
pub const RNG_NAME: &str = "chacha8/word-pos";

/// Each sample reads its own block of generator output starting at this stride.
const WORDS_PER_SAMPLE: u128 = 16;

const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub parallel: bool,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate<T = f64> {
    /// `s[k]` = number of samples whose minimum stabbing number was `k`, `k = 0..=n`.
    pub s: Vec<u64>,
    pub p_hat: Vec<T>,
    /// Estimate on the un-normalized scale `[0, n]`.
    pub d_hat: T,
    pub d_hat_normalized: T,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
}

/// Uniform point of `p` by arc length.
pub fn sample_point<T: Scalar, R: Rng + ?Sized>(p: &Polyline<T>, rng: &mut R) -> Result<Point<T>> {
    let total = p.arc_length();
    if !(total > T::zero()) {
        return Err(DepthError::domain("cannot sample a polyline of zero length"));
    }
    let target = T::lit(rng.gen::<f64>()) * total;
    let segs: Vec<_> = p.segments().collect();
    let mut before = T::zero();
    for (i, s) in segs.iter().enumerate() {
        let len = s.length();
        if target < before + len || i + 1 == segs.len() {
            let u = ((target - before) / len).max(T::zero()).min(T::one());
            return Ok(s.point_at(u));
        }
        before = before + len;
    }
    unreachable!("polyline of positive length has a segment")
}

fn sample_min_stab<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], rng: &mut ChaCha8Rng, i: u64) -> Result<usize> {
    rng.set_word_pos(i as u128 * WORDS_PER_SAMPLE);
    let x = sample_point(q, rng)?;
    let theta = T::lit(rng.gen::<f64>()) * T::PI();
    let r = Ray::new(x, theta);
    Ok(stab_count(&r, c).min(stab_count(&r.reversed(), c)))
}

fn histogram_range<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], seed: u64, lo: u64, hi: u64) -> Result<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = vec![0u64; c.len() + 1];
    for i in lo..hi {
        s[sample_min_stab(q, c, &mut rng, i)?] += 1;
    }
    Ok(s)
}

/// Estimates the curve depth of `q` from `cfg.samples` rays.
///
/// Sample `i` depends only on `(seed, i)`, so serial and parallel runs produce the
/// same histogram.
pub fn estimate_depth<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], cfg: &McConfig) -> Result<McEstimate<T>> {
    if cfg.samples == 0 {
        return Err(DepthError::domain("sample count must be positive"));
    }
    if !(q.arc_length() > T::zero()) {
        return Err(DepthError::domain("cannot sample a polyline of zero length"));
    }
    let n = c.len();
    let chunks: Vec<(u64, u64)> = (0..cfg.samples.div_ceil(CHUNK))
        .map(|k| (k * CHUNK, ((k + 1) * CHUNK).min(cfg.samples)))
        .collect();
    let run = |&(lo, hi): &(u64, u64)| histogram_range(q, c, cfg.seed, lo, hi);
    let parts: Vec<Result<Vec<u64>>> = if cfg.parallel {
        chunks.par_iter().map(run).collect()
    } else {
        chunks.iter().map(run).collect()
    };
    let mut s = vec![0u64; n + 1];
    for part in parts {
        for (acc, v) in s.iter_mut().zip(part?) {
            *acc += v;
        }
    }
    let big_n = T::from_u64(cfg.samples).unwrap();
    let p_hat: Vec<T> = s.iter().map(|&k| T::from_u64(k).unwrap() / big_n).collect();
    let weighted: u128 = s.iter().enumerate().map(|(k, &v)| k as u128 * v as u128).sum();
    let d_hat = T::from_u128(weighted).unwrap() / big_n;
    let d_hat_normalized = if n == 0 {
        T::zero()
    } else {
        d_hat / T::from_usize(n).unwrap()
    };
    Ok(McEstimate {
        s,
        p_hat,
        d_hat,
        d_hat_normalized,
        n,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

/// `⌈20(n+1)n²/ε²⌉`, at least 1, with `ε` on the un-normalized depth scale.
pub fn required_samples(epsilon: f64, n: usize) -> Result<u64> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(DepthError::domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    if n == 0 {
        return Err(DepthError::domain("sample bound needs a non-empty population"));
    }
    let nf = n as f64;
    let v = 20.0 * (nf + 1.0) * nf * nf / (epsilon * epsilon);
    // Values that are integers up to rounding (e.g. ε = 0.1) must not round up past them.
    let r = v.round();
    let c = if (v - r).abs() <= 1e-9 * v.max(1.0) {
        r
    } else {
        v.ceil()
    };
    if c >= u64::MAX as f64 {
        return Err(DepthError::domain("required sample count overflows"));
    }
    Ok((c as u64).max(1))
}

/// `max(0, 1 − 3·exp(−Nε²/(25n²)))`.
pub fn closeness_bound(samples: u64, epsilon: f64, n: usize) -> f64 {
    let nf = n as f64;
    (1.0 - 3.0 * (-(samples as f64) * epsilon * epsilon / (25.0 * nf * nf)).exp()).max(0.0)
}

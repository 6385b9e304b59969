//! Brute-force references: midpoint-grid ray casting for point and curve depth, and
//! adaptive Gauss–Kronrod quadrature.

use rayon::prelude::*;

use crate::error::{DepthError, Result};
use crate::geom::{ray_hits, Point, Polyline};
use crate::scalar::{CompensatedSum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Number of directions sampled in `[0, π)`.
    pub angle_samples: usize,
    /// Number of arc-length positions sampled along the query.
    pub point_samples: usize,
}

impl OracleConfig {
    pub fn new(point_samples: usize, angle_samples: usize) -> Result<Self> {
        for (name, k) in [("point_samples", point_samples), ("angle_samples", angle_samples)] {
            if k < 8 || !k.is_power_of_two() {
                return Err(DepthError::domain(format!(
                    "{name} must be a power of two >= 8, got {k}"
                )));
            }
        }
        Ok(Self {
            angle_samples,
            point_samples,
        })
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            angle_samples: 4096,
            point_samples: 1024,
        }
    }
}

fn directions<T: Scalar>(k: usize) -> Vec<Point<T>> {
    (0..k)
        .map(|j| {
            let th = (T::from_usize(j).unwrap() + T::lit(0.5)) * T::PI() / T::from_usize(k).unwrap();
            Point {
                x: th.cos(),
                y: th.sin(),
            }
        })
        .collect()
}

fn grid_point_depth<T: Scalar>(q: Point<T>, c: &[Polyline<T>], dirs: &[Point<T>]) -> T {
    // Population relative to q; point curves become zero-length edges.
    let rel: Vec<Vec<(Point<T>, Point<T>)>> = c
        .iter()
        .map(|pl| {
            let v = pl.vertices();
            if v.len() == 1 {
                vec![(v[0].sub(q), v[0].sub(q))]
            } else {
                v.windows(2).map(|w| (w[0].sub(q), w[1].sub(q))).collect()
            }
        })
        .collect();
    let hits = |d: Point<T>| {
        rel.iter()
            .filter(|edges| edges.iter().any(|&(a, b)| ray_hits(d, a, b)))
            .count()
    };
    let total: usize = dirs
        .iter()
        .map(|&d| hits(d).min(hits(Point { x: -d.x, y: -d.y })))
        .sum();
    T::from_usize(total).unwrap() / T::from_usize(dirs.len()).unwrap()
}

/// `(1/K) Σ_j min(stab(θ_j), stab(θ_j + π))` over the midpoint angles `θ_j = (j + ½)π/K`.
pub fn oracle_point_depth<T: Scalar>(q: Point<T>, c: &[Polyline<T>], angle_samples: usize) -> T {
    grid_point_depth(q, c, &directions(angle_samples))
}

/// Mean of [`oracle_point_depth`] over an arc-length midpoint grid on `q`.
pub fn oracle_curve_depth<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], cfg: &OracleConfig) -> T {
    let dirs = directions(cfg.angle_samples);
    if q.is_point() {
        return grid_point_depth(q.vertices()[0], c, &dirs);
    }
    let pts = arc_length_grid(q, cfg.point_samples);
    let vals: Vec<T> = pts.par_iter().map(|&p| grid_point_depth(p, c, &dirs)).collect();
    let s: CompensatedSum<T> = vals.into_iter().collect();
    s.value() / T::from_usize(cfg.point_samples).unwrap()
}

/// Points at arc lengths `(i + ½)·L/k`, `i = 0..k`.
pub fn arc_length_grid<T: Scalar>(q: &Polyline<T>, k: usize) -> Vec<Point<T>> {
    let segs: Vec<_> = q.segments().collect();
    let lens: Vec<T> = segs.iter().map(|s| s.length()).collect();
    let total = lens.iter().fold(T::zero(), |a, &b| a + b);
    let mut out = Vec::with_capacity(k);
    let mut si = 0;
    let mut before = T::zero();
    for i in 0..k {
        let target = (T::from_usize(i).unwrap() + T::lit(0.5)) * total / T::from_usize(k).unwrap();
        while si + 1 < segs.len() && before + lens[si] < target {
            before = before + lens[si];
            si += 1;
        }
        let u = ((target - before) / lens[si]).max(T::zero()).min(T::one());
        out.push(segs[si].point_at(u));
    }
    out
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * h, ((k - g) * h).abs())
}

const MAX_QUAD_DEPTH: usize = 48;

fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize, acc: &mut CompensatedSum<f64>) -> Result<()> {
    let (v, err) = gauss_kronrod(f, a, b);
    if err <= tol || (b - a).abs() <= f64::EPSILON * a.abs().max(b.abs()) {
        acc.add(v);
        return Ok(());
    }
    if depth >= MAX_QUAD_DEPTH {
        return Err(DepthError::Quadrature { a, b, error: err });
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, acc)?;
    adapt(f, m, b, 0.5 * tol, depth + 1, acc)
}

/// Adaptive 7/15-point Gauss–Kronrod estimate of `∫_a^b f` to absolute tolerance `tol`.
pub fn quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut acc = CompensatedSum::new();
    adapt(&f, a, b, tol, 0, &mut acc)?;
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{LN_2, PI};

    fn plates() -> Vec<Polyline> {
        vec![
            Polyline::from_xy(&[(-1., 1.), (1., 1.)]),
            Polyline::from_xy(&[(-1., -1.), (1., -1.)]),
        ]
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::new(1024, 4096).is_ok());
        assert!(OracleConfig::new(4, 4096).is_err());
        assert!(OracleConfig::new(1000, 4096).is_err());
    }

    #[test]
    fn point_oracle_examples() {
        let d = oracle_point_depth(Point::new(0.0, 0.0), &plates(), 4096);
        // Raw π/2 over π: 0.5 un-normalized.
        assert_abs_diff_eq!(d, 0.5, epsilon = 2.0 / 4096.0);
        assert_eq!(oracle_point_depth(Point::new(3.0, 0.0), &plates(), 64), 0.0);
        assert_eq!(oracle_point_depth::<f64>(Point::new(0.0, 0.0), &[], 64), 0.0);
    }

    #[test]
    fn curve_oracle_plates_and_refinement() {
        let q = Polyline::from_xy(&[(-1., 0.), (1., 0.)]);
        let exact = (PI - 2.0 * LN_2) / (2.0 * PI);
        let d = oracle_curve_depth(&q, &plates(), &OracleConfig::default());
        assert_abs_diff_eq!(d, exact, epsilon = 5e-3);

        let far = Polyline::from_xy(&[(5., 0.), (7., 0.)]);
        assert_eq!(
            oracle_curve_depth(&far, &plates(), &OracleConfig::new(16, 16).unwrap()),
            0.0
        );

        // The angular integrand is a step function, so refinement errors oscillate rather
        // than shrink monotonically; they stay within the midpoint bound for its jumps.
        for k in [16, 32, 64, 128, 256] {
            let cfg = OracleConfig::new(k, 4 * k).unwrap();
            let err = (oracle_curve_depth(&q, &plates(), &cfg) - exact).abs();
            let bound = 2.0 / cfg.angle_samples as f64 + 2.0 / (k * k) as f64;
            assert!(err <= bound, "k = {k}: {err} > {bound}");
        }
    }

    #[test]
    fn arc_length_grid_is_uniform() {
        let q: Polyline = Polyline::from_xy(&[(0., 0.), (1., 0.), (1., 3.)]);
        let g = arc_length_grid(&q, 8);
        assert_abs_diff_eq!(g[0].x, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(g[7].y, 2.75, epsilon = 1e-15);
        assert_eq!(g.iter().filter(|p| p.x == 1.0 && p.y > 0.0).count(), 6);
    }

    #[test]
    fn quadrature_examples() {
        let v = quadrature(|x| 1.0_f64.atan2(-x), 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 0.75 * PI - 0.5 * LN_2, epsilon = 1e-10);
        assert_abs_diff_eq!(v, 2.009621, epsilon = 1e-6);
        assert_eq!(quadrature(|_| 0.0, 0.0, 1.0, 1e-12).unwrap(), 0.0);
        assert_abs_diff_eq!(quadrature(|_| 1.0, 0.0, 1.0, 1e-12).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(quadrature(f64::sin, 0.0, PI, 1e-12).unwrap(), 2.0, epsilon = 1e-12);
        assert!(matches!(
            quadrature(|x| if x < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, 1e-300),
            Err(DepthError::Quadrature { .. })
        ));
    }
}

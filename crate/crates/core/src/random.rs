//! Seeded generators for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sets::{Interval, IntervalUnion, PointCloud};
use crate::tolerance::Tolerance;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "METRIC_SVF_SEED";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `METRIC_SVF_SEED` if set and parseable, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// Shape of random interval unions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnionShape {
    pub max_components: usize,
    pub lo: f64,
    pub hi: f64,
    /// Endpoints are rounded to multiples of this step when set.
    pub step: Option<f64>,
}

impl Default for UnionShape {
    fn default() -> Self {
        Self {
            max_components: 3,
            lo: 0.0,
            hi: 10.0,
            step: None,
        }
    }
}

/// Sorted random endpoints paired into components; touching components
/// merge, so the result may have fewer than requested.
pub fn interval_union(rng: &mut impl Rng, shape: &UnionShape) -> IntervalUnion {
    let k = rng.gen_range(1..=shape.max_components.max(1));
    let mut ends: Vec<f64> = (0..2 * k)
        .map(|_| {
            let v = rng.gen_range(shape.lo..=shape.hi);
            match shape.step {
                Some(s) => (v / s).round() * s,
                None => v,
            }
        })
        .collect();
    ends.sort_by(f64::total_cmp);
    let raw = ends
        .chunks(2)
        .map(|c| Interval::new(c[0], c[1]).expect("sorted endpoints"))
        .collect();
    IntervalUnion::normalize(raw, &Tolerance::default()).expect("nonempty")
}

/// `1..=max_points` points uniform in `[lo, hi]^dim`.
pub fn point_cloud(rng: &mut impl Rng, dim: usize, max_points: usize, lo: f64, hi: f64) -> PointCloud {
    let k = rng.gen_range(1..=max_points.max(1));
    let pts = (0..k)
        .map(|_| (0..dim).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    PointCloud::new(pts, &Tolerance::default()).expect("valid cloud")
}

/// `n` coefficients summing to one. With `allow_negative` the entries are
/// drawn from `[-1, 2]` before the last one is fixed by the sum.
pub fn affine_coefficients(rng: &mut impl Rng, n: usize, allow_negative: bool) -> Vec<f64> {
    assert!(n >= 1);
    if allow_negative {
        let mut c: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..=2.0)).collect();
        let rest = 1.0 - c.iter().sum::<f64>();
        c.push(rest);
        c
    } else {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..=1.0)).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|v| v / s).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let shape = UnionShape::default();
        let a = interval_union(&mut rng(3), &shape);
        let b = interval_union(&mut rng(3), &shape);
        assert_eq!(a, b);
    }

    #[test]
    fn grid_endpoints() {
        let shape = UnionShape {
            step: Some(0.5),
            ..UnionShape::default()
        };
        let mut r = rng(1);
        for _ in 0..50 {
            let u = interval_union(&mut r, &shape);
            for c in u.components() {
                assert_eq!((c.lo() * 2.0).fract(), 0.0);
                assert_eq!((c.hi() * 2.0).fract(), 0.0);
            }
        }
    }

    #[test]
    fn coefficients_sum_to_one() {
        let mut r = rng(9);
        for neg in [false, true] {
            for n in 1..6 {
                let c = affine_coefficients(&mut r, n, neg);
                assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                if !neg {
                    assert!(c.iter().all(|&v| v > 0.0));
                }
            }
        }
    }
}

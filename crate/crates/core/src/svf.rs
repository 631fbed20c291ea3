//! Sampled set-valued functions, the metric piecewise-linear interpolant
//! and its selections, and empirical regularity measures (modulus of
//! continuity, total variation).

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::chains::{metric_average, metric_chains, ChainSet, MetricChain};
use crate::error::{Error, Result};
use crate::sets::{euclid, CompactSet, Interval};
use crate::tolerance::Tolerance;

/// Default number of probe subintervals for empirical moduli.
pub const DEFAULT_PROBES: usize = 512;
/// Default dyadic depth of the refinement used for `v_G`.
pub const DEFAULT_VARIATION_DEPTH: u32 = 12;

/// Strictly increasing knots `a = x_0 < … < x_N = b`, `N ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    knots: Vec<f64>,
}

impl Partition {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidPartition("need at least two knots".into()));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::NonFinite);
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPartition(
                "knots must be strictly increasing".into(),
            ));
        }
        Ok(Self { knots })
    }

    /// `x_i = a + i·(b − a)/n`, with both ends exact.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("need at least one subinterval".into()));
        }
        let h = (b - a) / n as f64;
        let mut knots: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
        knots[n] = b;
        Self::new(knots)
    }

    pub fn dyadic(a: f64, b: f64, depth: u32) -> Result<Self> {
        Self::uniform(a, b, 1usize << depth)
    }

    #[inline]
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn a(&self) -> f64 {
        self.knots[0]
    }

    pub fn b(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    pub fn domain(&self) -> Interval {
        Interval::spanning(self.a(), self.b())
    }

    /// Number of subintervals `N`.
    pub fn segments(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn deltas(&self) -> impl Iterator<Item = f64> + '_ {
        self.knots.windows(2).map(|w| w[1] - w[0])
    }

    pub fn delta_max(&self) -> f64 {
        self.deltas().fold(0.0, f64::max)
    }

    pub fn delta_min(&self) -> f64 {
        self.deltas().fold(f64::INFINITY, f64::min)
    }

    /// Uniform up to a relative spacing error of `1e-9`.
    pub fn is_uniform(&self) -> bool {
        let h = (self.b() - self.a()) / self.segments() as f64;
        self.deltas().all(|d| (d - h).abs() <= 1e-9 * h)
    }

    /// `h = (b − a)/N` for uniform partitions.
    pub fn step(&self) -> Result<f64> {
        if !self.is_uniform() {
            return Err(Error::NonUniformPartition);
        }
        Ok((self.b() - self.a()) / self.segments() as f64)
    }

    pub fn check_inside(&self, x: f64) -> Result<()> {
        if !(x >= self.a() && x <= self.b()) {
            return Err(Error::Domain {
                value: x,
                lo: self.a(),
                hi: self.b(),
            });
        }
        Ok(())
    }

    /// Index of the knot equal to `x`, if any.
    pub fn knot_index(&self, x: f64) -> Option<usize> {
        self.knots.iter().position(|&k| k == x)
    }

    /// Subinterval `i` with `x ∈ [x_i, x_{i+1}]`.
    pub fn locate(&self, x: f64) -> Result<usize> {
        self.check_inside(x)?;
        let idx = self.knots.partition_point(|&k| k <= x);
        Ok(idx.saturating_sub(1).min(self.segments() - 1))
    }

    /// Hat weight `λ_i(x) = (x_{i+1} − x)/(x_{i+1} − x_i)`.
    pub fn hat_weight(&self, i: usize, x: f64) -> f64 {
        (self.knots[i + 1] - x) / (self.knots[i + 1] - self.knots[i])
    }

    /// Coefficients of the piecewise-linear interpolant at `x`.
    pub fn hat_coefficients(&self, x: f64) -> Result<Vec<f64>> {
        let i = self.locate(x)?;
        let lambda = self.hat_weight(i, x);
        let mut c = vec![0.0; self.knots.len()];
        c[i] = lambda;
        c[i + 1] = 1.0 - lambda;
        Ok(c)
    }

    /// Scalar piecewise-linear interpolant of `values` at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> Result<f64> {
        let i = self.locate(x)?;
        let lambda = self.hat_weight(i, x);
        Ok(lambda * values[i] + (1.0 - lambda) * values[i + 1])
    }
}

/// Samples `F_i = F(x_i)` of a set-valued function on a partition.
#[derive(Debug, Clone)]
pub struct SampledSvf {
    partition: Partition,
    values: Vec<CompactSet>,
    tol: Tolerance,
    chains: OnceLock<ChainSet>,
}

impl SampledSvf {
    pub fn new(partition: Partition, values: Vec<CompactSet>) -> Result<Self> {
        Self::with_tolerance(partition, values, Tolerance::default())
    }

    pub fn with_tolerance(partition: Partition, values: Vec<CompactSet>, tol: Tolerance) -> Result<Self> {
        tol.validate()?;
        if values.len() != partition.knots().len() {
            return Err(Error::LengthMismatch {
                expected: partition.knots().len(),
                got: values.len(),
            });
        }
        for v in &values {
            values[0].same_kind(v)?;
        }
        Ok(Self {
            partition,
            values,
            tol,
            chains: OnceLock::new(),
        })
    }

    /// Samples `g` at every knot of `partition`.
    pub fn sample(g: &dyn SetFunction, partition: Partition, tol: Tolerance) -> Result<Self> {
        let values = partition
            .knots()
            .iter()
            .map(|&x| g.eval(x))
            .collect::<Result<Vec<_>>>()?;
        Self::with_tolerance(partition, values, tol)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[CompactSet] {
        &self.values
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// `CH(F_0, …, F_N)`, computed once with the sample's own tolerance.
    pub fn chains(&self) -> Result<&ChainSet> {
        if let Some(c) = self.chains.get() {
            return Ok(c);
        }
        let c = metric_chains(&self.values, &self.tol)?;
        Ok(self.chains.get_or_init(|| c))
    }

    /// `⊕ c_i F_i` for an arbitrary coefficient vector.
    pub fn combine(&self, coeffs: &[f64], tol: &Tolerance) -> Result<CompactSet> {
        if tol == &self.tol {
            self.chains()?.combine(coeffs, tol)
        } else {
            metric_chains(&self.values, tol)?.combine(coeffs, tol)
        }
    }

    /// Largest Hausdorff distance between samples whose knots are at most
    /// `delta` apart.
    pub fn knot_modulus(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidArgument("delta must be positive".into()));
        }
        Ok(modulus_from_samples(
            self.partition.knots(),
            &self.values,
            delta,
            |a, b| a.hausdorff(b).expect("kinds checked at construction"),
        ))
    }

    /// `V(F, χ)` over the sample knots.
    pub fn knot_variation(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[0].hausdorff(&w[1]).expect("kinds checked at construction"))
            .sum()
    }
}

/// Metric piecewise-linear interpolant `S^M_χ(F, x)`.
pub fn eval_metric_pl(f: &SampledSvf, x: f64, tol: &Tolerance) -> Result<CompactSet> {
    f.partition.check_inside(x)?;
    if let Some(i) = f.partition.knot_index(x) {
        return Ok(f.values[i].clone());
    }
    let coeffs = f.partition.hat_coefficients(x)?;
    f.combine(&coeffs, tol)
}

/// Piecewise-linear interpolant built from the binary metric average,
/// `S^MA_χ(F, x) = F_i ⊕_{λ_i(x)} F_{i+1}`.
pub fn eval_artstein_pl(f: &SampledSvf, x: f64, tol: &Tolerance) -> Result<CompactSet> {
    let i = f.partition.locate(x)?;
    let lambda = f.partition.hat_weight(i, x).clamp(0.0, 1.0);
    metric_average(&f.values[i], &f.values[i + 1], lambda, tol)
}

/// A piecewise-linear selection `s(χ, φ)` interpolating the chain `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub partition: Partition,
    pub chain: MetricChain,
}

impl Selection {
    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        let i = self.partition.locate(x)?;
        let lambda = self.partition.hat_weight(i, x);
        let (p, q) = (&self.chain.points[i], &self.chain.points[i + 1]);
        Ok(p.iter()
            .zip(q)
            .map(|(u, v)| lambda * u + (1.0 - lambda) * v)
            .collect())
    }

    pub fn knot_values(&self) -> &[Vec<f64>] {
        &self.chain.points
    }
}

/// The family `{ s(χ, φ) : φ ∈ CH(F_0, …, F_N) }`. In exact mode the family
/// is a continuum parameterized by chain segments and is sampled on demand.
#[derive(Debug, Clone)]
pub struct Selections {
    partition: Partition,
    chains: ChainSet,
}

impl Selections {
    pub fn chains(&self) -> &ChainSet {
        &self.chains
    }

    /// Explicit selections; exact segments are sampled at their endpoints
    /// plus `interior` evenly spaced parameters.
    pub fn sample(&self, interior: usize) -> Vec<Selection> {
        self.chains
            .sample(interior)
            .into_iter()
            .map(|chain| Selection {
                partition: self.partition.clone(),
                chain,
            })
            .collect()
    }

    /// `{ s(x) }` over all selections, which equals `S^M_χ(F, x)`.
    pub fn union_at(&self, x: f64, tol: &Tolerance) -> Result<CompactSet> {
        let coeffs = self.partition.hat_coefficients(x)?;
        self.chains.combine(&coeffs, tol)
    }
}

pub fn selections(f: &SampledSvf, tol: &Tolerance) -> Result<Selections> {
    let chains = if tol == &f.tol {
        f.chains()?.clone()
    } else {
        metric_chains(&f.values, tol)?
    };
    Ok(Selections {
        partition: f.partition.clone(),
        chains,
    })
}

/// A set-valued function on a closed interval, evaluable pointwise.
pub trait SetFunction: Sync {
    fn domain(&self) -> Interval;
    fn eval(&self, x: f64) -> Result<CompactSet>;
}

/// Closed-form set-valued function backed by a closure.
pub struct FnOracle<F> {
    domain: Interval,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(f64) -> Result<CompactSet> + Sync,
{
    pub fn new(a: f64, b: f64, f: F) -> Result<Self> {
        Ok(Self {
            domain: Interval::new(a, b)?,
            f,
        })
    }
}

impl<F> SetFunction for FnOracle<F>
where
    F: Fn(f64) -> Result<CompactSet> + Sync,
{
    fn domain(&self) -> Interval {
        self.domain
    }

    fn eval(&self, x: f64) -> Result<CompactSet> {
        if !self.domain.contains(x, 0.0) {
            return Err(Error::Domain {
                value: x,
                lo: self.domain.lo(),
                hi: self.domain.hi(),
            });
        }
        (self.f)(x)
    }
}

/// `S^M_χ F` viewed as a set-valued function on `[a, b]`.
pub struct MetricPl<'a> {
    pub svf: &'a SampledSvf,
    pub tol: Tolerance,
}

impl SetFunction for MetricPl<'_> {
    fn domain(&self) -> Interval {
        self.svf.partition.domain()
    }

    fn eval(&self, x: f64) -> Result<CompactSet> {
        eval_metric_pl(self.svf, x, &self.tol)
    }
}

/// `sup { dist(v_k, v_l) : |x_k − x_l| ≤ δ }` over sorted sample points.
pub fn modulus_from_samples<T>(xs: &[f64], vals: &[T], delta: f64, dist: impl Fn(&T, &T) -> f64 + Sync) -> f64
where
    T: Sync,
{
    // absorbs rounding in grid spacings
    let reach = delta * (1.0 + 1e-12);
    (0..xs.len())
        .into_par_iter()
        .map(|k| {
            let mut best = 0.0_f64;
            let mut l = k + 1;
            while l < xs.len() && xs[l] - xs[k] <= reach {
                best = best.max(dist(&vals[k], &vals[l]));
                l += 1;
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Values of a set-valued function on a uniform probe grid; moduli for
/// several `δ` reuse the same evaluations.
pub struct ProbeGrid {
    pub xs: Vec<f64>,
    pub values: Vec<CompactSet>,
}

impl ProbeGrid {
    /// `probe_count` equal subintervals of the domain of `g`.
    pub fn new(g: &dyn SetFunction, probe_count: usize) -> Result<Self> {
        if probe_count == 0 {
            return Err(Error::InvalidArgument("probe_count must be positive".into()));
        }
        let d = g.domain();
        let xs: Vec<f64> = Partition::uniform(d.lo(), d.hi(), probe_count)
            .map(|p| p.knots().to_vec())
            .unwrap_or_else(|_| vec![d.lo()]);
        let values = xs.par_iter().map(|&x| g.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(Self { xs, values })
    }

    pub fn modulus(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidArgument("delta must be positive".into()));
        }
        for v in &self.values {
            self.values[0].same_kind(v)?;
        }
        Ok(modulus_from_samples(&self.xs, &self.values, delta, |a, b| {
            a.hausdorff(b).expect("kinds checked")
        }))
    }
}

/// Empirical modulus of continuity `ω(G, δ)`: a lower bound on the true
/// modulus obtained from a uniform grid of `probe_count` subintervals.
pub fn modulus_of_continuity(g: &dyn SetFunction, delta: f64, probe_count: usize) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    ProbeGrid::new(g, probe_count)?.modulus(delta)
}

/// Modulus of continuity of a vector-valued function sampled at `xs`.
pub fn pointwise_modulus(xs: &[f64], vals: &[Vec<f64>], delta: f64) -> f64 {
    modulus_from_samples(xs, vals, delta, |a, b| euclid(a, b))
}

/// `V(G, χ)` on a refinement together with the cumulative profile `v_G`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationProfile {
    pub knots: Vec<f64>,
    /// `v_G(x_k)`, nondecreasing with `cumulative[0] = 0`.
    pub cumulative: Vec<f64>,
}

impl VariationProfile {
    pub fn total(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1]
    }

    /// Piecewise-linear interpolation of the profile.
    pub fn v(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if x <= self.knots[0] {
            return 0.0;
        }
        if x >= self.knots[n - 1] {
            return self.total();
        }
        let idx = self.knots.partition_point(|&k| k <= x);
        let (x0, x1) = (self.knots[idx - 1], self.knots[idx]);
        let (v0, v1) = (self.cumulative[idx - 1], self.cumulative[idx]);
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }

    /// `ω(v_G, δ)`; for a monotone piecewise-linear profile the maximum of
    /// `v(x + δ) − v(x)` sits where `x` or `x + δ` is a knot.
    pub fn modulus(&self, delta: f64) -> f64 {
        let mut best = 0.0_f64;
        for &k in &self.knots {
            best = best.max(self.v(k + delta) - self.v(k));
            best = best.max(self.v(k) - self.v(k - delta));
        }
        best
    }
}

/// Variation of `g` on `refinement`.
pub fn total_variation(g: &dyn SetFunction, refinement: &Partition) -> Result<VariationProfile> {
    let d = g.domain();
    if refinement.a() < d.lo() || refinement.b() > d.hi() {
        return Err(Error::InvalidPartition(
            "refinement must lie inside the function domain".into(),
        ));
    }
    let values = refinement
        .knots()
        .par_iter()
        .map(|&x| g.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let mut cumulative = Vec::with_capacity(values.len());
    cumulative.push(0.0);
    for w in values.windows(2) {
        let step = w[0].hausdorff(&w[1])?;
        cumulative.push(cumulative[cumulative.len() - 1] + step);
    }
    Ok(VariationProfile {
        knots: refinement.knots().to_vec(),
        cumulative,
    })
}

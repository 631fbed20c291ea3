//! Error measurement for set-valued approximation operators: built-in test
//! oracles, Hausdorff error curves, log-log rate fits and checks of the
//! known error bounds.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{
    apply_metric_operator, apply_minkowski_operator, decasteljau_ma_bernstein, OperatorSpec,
};
use crate::sets::{CompactSet, Interval};
use crate::svf::{eval_metric_pl, Partition, ProbeGrid, SampledSvf, SetFunction, VariationProfile};
use crate::tolerance::Tolerance;

/// Number of random pairs used by [`estimate_lipschitz`] by default.
pub const LIPSCHITZ_PAIRS: usize = 4096;

/// Smallest `N` used when fitting convergence rates.
pub const MIN_FIT_N: usize = 8;

/// Closed-form set-valued functions on `[0, 1]` with one-dimensional images.
#[derive(Debug, Clone, Copy)]
pub enum BuiltinOracle {
    /// `[0, 1 + s|x − 1/2|]`: Lipschitz with constant `s`, convex images.
    ConvexKink { s: f64 },
    /// `[0, 1/3] ∪ [2/3 + kx, 1 + kx]`: Lipschitz with constant `k`,
    /// nonconvex images.
    NonconvexShift { k: f64 },
    /// `[0, 1 + √x]`: continuous, of bounded variation, not Lipschitz.
    SqrtCbv,
    /// `{g(x)}`.
    Singleton {
        name: &'static str,
        g: fn(f64) -> f64,
        lipschitz: Option<f64>,
    },
}

impl BuiltinOracle {
    pub fn a() -> Self {
        Self::ConvexKink { s: 1.0 }
    }

    pub fn b() -> Self {
        Self::NonconvexShift { k: 0.25 }
    }

    pub fn c() -> Self {
        Self::SqrtCbv
    }

    pub fn identity() -> Self {
        Self::Singleton {
            name: "x",
            g: |x| x,
            lipschitz: Some(1.0),
        }
    }

    pub fn parabola() -> Self {
        Self::Singleton {
            name: "x(1-x)",
            g: |x| x * (1.0 - x),
            lipschitz: Some(1.0),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "a" => Some(Self::a()),
            "b" => Some(Self::b()),
            "c" => Some(Self::c()),
            "identity" => Some(Self::identity()),
            "parabola" => Some(Self::parabola()),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::ConvexKink { s } => format!("a(s={s})"),
            Self::NonconvexShift { k } => format!("b(k={k})"),
            Self::SqrtCbv => "c".into(),
            Self::Singleton { name, .. } => format!("singleton({name})"),
        }
    }

    /// Analytic Lipschitz constant, if there is one.
    pub fn lipschitz(&self) -> Option<f64> {
        match self {
            Self::ConvexKink { s } => Some(s.abs()),
            Self::NonconvexShift { k } => Some(k.abs()),
            Self::SqrtCbv => None,
            Self::Singleton { lipschitz, .. } => *lipschitz,
        }
    }
}

impl SetFunction for BuiltinOracle {
    fn domain(&self) -> Interval {
        Interval::new(0.0, 1.0).expect("unit interval")
    }

    fn eval(&self, x: f64) -> Result<CompactSet> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                value: x,
                lo: 0.0,
                hi: 1.0,
            });
        }
        match self {
            Self::ConvexKink { s } => CompactSet::intervals(&[(0.0, 1.0 + s * (x - 0.5).abs())]),
            Self::NonconvexShift { k } => {
                CompactSet::intervals(&[(0.0, 1.0 / 3.0), (2.0 / 3.0 + k * x, 1.0 + k * x)])
            }
            Self::SqrtCbv => CompactSet::intervals(&[(0.0, 1.0 + x.sqrt())]),
            Self::Singleton { g, .. } => {
                let v = g(x);
                CompactSet::intervals(&[(v, v)])
            }
        }
    }
}

/// Largest difference quotient `haus(G(x), G(y))/|x − y|` over `pairs`
/// seeded random pairs; a lower bound for the Lipschitz constant.
pub fn estimate_lipschitz(g: &dyn SetFunction, pairs: usize, seed: u64) -> Result<f64> {
    let d = g.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<(f64, f64)> = (0..pairs)
        .map(|_| (rng.gen_range(d.lo()..=d.hi()), rng.gen_range(d.lo()..=d.hi())))
        .filter(|(x, y)| x != y)
        .collect();
    let quotients = xs
        .par_iter()
        .map(|&(x, y)| Ok(g.eval(x)?.hausdorff(&g.eval(y)?)? / (x - y).abs()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(quotients.into_iter().fold(0.0, f64::max))
}

/// Accuracy modulus `φ(x, δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi {
    /// `δ`
    Linear,
    /// `√δ`
    Sqrt,
    /// `√(x(1 − x)δ)`, the local Bernstein modulus on `[0, 1]`.
    Bernstein,
}

impl Phi {
    pub fn eval(&self, x: f64, delta: f64) -> f64 {
        let delta = delta.max(0.0);
        match self {
            Phi::Linear => delta,
            Phi::Sqrt => delta.sqrt(),
            Phi::Bernstein => (x * (1.0 - x) * delta).max(0.0).sqrt(),
        }
    }
}

/// Parameters of an error bound: Lipschitz constant, fitted constant, the
/// accuracy modulus and tabulated moduli of continuity.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorModel {
    pub lipschitz: Option<f64>,
    pub c: f64,
    pub phi: Phi,
    /// `(δ, ω(G, δ))`, sorted by `δ`.
    pub omega: Vec<(f64, f64)>,
    /// Cumulative variation `v_G` for bounds of bounded-variation type.
    pub variation: Option<VariationProfile>,
}

impl ErrorModel {
    pub fn new(lipschitz: Option<f64>, c: f64, phi: Phi) -> Result<Self> {
        if let Some(l) = lipschitz {
            if !(l >= 0.0 && l.is_finite()) {
                return Err(Error::InvalidArgument(format!("Lipschitz constant {l}")));
            }
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("constant C = {c}")));
        }
        Ok(Self {
            lipschitz,
            c,
            phi,
            omega: Vec::new(),
            variation: None,
        })
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c.max(0.0);
        self
    }

    /// Tabulates `ω(G, δ)` at the given `δ` on a probe grid.
    pub fn with_omega(mut self, g: &dyn SetFunction, deltas: &[f64], probes: usize) -> Result<Self> {
        let grid = ProbeGrid::new(g, probes)?;
        for &d in deltas {
            self.omega.push((d, grid.modulus(d)?));
        }
        self.omega.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(self)
    }

    pub fn with_variation(mut self, profile: VariationProfile) -> Self {
        self.variation = Some(profile);
        self
    }

    /// `ω(G, δ)` read from the table at the smallest tabulated `δ' ≥ δ`,
    /// which bounds it from above since `ω` is nondecreasing.
    pub fn omega_at(&self, delta: f64) -> Result<f64> {
        let tol = 1e-12 * delta.abs().max(1.0);
        self.omega
            .iter()
            .find(|(d, _)| *d + tol >= delta)
            .map(|&(_, w)| w)
            .ok_or_else(|| Error::InvalidArgument(format!("ω(G, {delta}) not tabulated")))
    }

    fn lipschitz_or_err(&self) -> Result<f64> {
        self.lipschitz
            .ok_or_else(|| Error::InvalidArgument("bound needs a Lipschitz constant".into()))
    }

    fn variation_modulus(&self, delta: f64) -> Result<f64> {
        self.variation
            .as_ref()
            .map(|v| v.modulus(delta))
            .ok_or_else(|| Error::InvalidArgument("bound needs the variation profile".into()))
    }
}

/// Approximation procedure under test.
#[derive(Debug, Clone)]
pub enum Approximant {
    Metric(OperatorSpec),
    Minkowski(OperatorSpec),
    DeCasteljau,
    MetricPl,
}

impl Approximant {
    pub fn name(&self) -> String {
        match self {
            Self::Metric(s) => format!("metric-{}", s.name()),
            Self::Minkowski(s) => format!("minkowski-{}", s.name()),
            Self::DeCasteljau => "decasteljau-bernstein".into(),
            Self::MetricPl => "metric-pl".into(),
        }
    }

    pub fn valid_domain(&self, partition: &Partition) -> Result<Interval> {
        match self {
            Self::Metric(s) | Self::Minkowski(s) => s.valid_domain(partition),
            Self::DeCasteljau | Self::MetricPl => Ok(partition.domain()),
        }
    }

    pub fn eval(&self, f: &SampledSvf, x: f64, tol: &Tolerance) -> Result<CompactSet> {
        match self {
            Self::Metric(s) => apply_metric_operator(s, f, x, tol),
            Self::Minkowski(s) => apply_minkowski_operator(s, f, x, tol),
            Self::DeCasteljau => decasteljau_ma_bernstein(f, x, tol),
            Self::MetricPl => eval_metric_pl(f, x, tol),
        }
    }
}

/// Evaluation points for error measurement.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalGrid {
    /// `n + 1` equispaced points spanning the valid domain.
    Uniform(usize),
    /// Explicit points; those outside the valid domain are skipped.
    Points(Vec<f64>),
}

impl EvalGrid {
    fn points(&self, domain: Interval) -> Vec<f64> {
        match self {
            EvalGrid::Uniform(n) => {
                let n = (*n).max(1);
                (0..=n)
                    .map(|i| {
                        let t = i as f64 / n as f64;
                        if i == n {
                            domain.hi()
                        } else {
                            domain.lo() + t * domain.len()
                        }
                    })
                    .collect()
            }
            EvalGrid::Points(xs) => xs.iter().copied().filter(|&x| domain.contains(x, 0.0)).collect(),
        }
    }
}

/// Errors of one approximation level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelErrors {
    pub n: usize,
    pub uniform: bool,
    pub delta_max: f64,
    /// `(x, haus(A(F, x), G(x)))` over the evaluation grid.
    pub samples: Vec<(f64, f64)>,
}

impl LevelErrors {
    pub fn max_error(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub approximant: String,
    pub oracle: String,
    pub levels: Vec<LevelErrors>,
    /// Least-squares slope of `log error` against `log N` over `N ≥ 8`.
    pub slope: Option<f64>,
}

impl ConvergenceReport {
    pub fn ns(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.n).collect()
    }

    pub fn max_errors(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.max_error()).collect()
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.max_errors().windows(2).all(|w| w[1] <= w[0])
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,error\n");
        for l in &self.levels {
            let _ = writeln!(s, "{},{}", l.n, l.max_error());
        }
        s
    }
}

/// Errors of `approx` applied to samples of `oracle` on uniform partitions
/// with `N` segments.
pub fn error_curve(
    oracle: &dyn SetFunction,
    approx: &Approximant,
    ns: &[usize],
    grid: &EvalGrid,
    tol: &Tolerance,
) -> Result<ConvergenceReport> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no N values".into()));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("N values must increase".into()));
    }
    let d = oracle.domain();
    let partitions = ns
        .iter()
        .map(|&n| Partition::uniform(d.lo(), d.hi(), n))
        .collect::<Result<Vec<_>>>()?;
    error_curve_on(oracle, approx, partitions, grid, tol)
}

/// As [`error_curve`] on explicit partitions.
pub fn error_curve_on(
    oracle: &dyn SetFunction,
    approx: &Approximant,
    partitions: Vec<Partition>,
    grid: &EvalGrid,
    tol: &Tolerance,
) -> Result<ConvergenceReport> {
    let levels = partitions
        .into_par_iter()
        .map(|p| level_errors(oracle, approx, p, grid, tol))
        .collect::<Result<Vec<_>>>()?;
    let ns: Vec<usize> = levels.iter().map(|l| l.n).collect();
    let errors: Vec<f64> = levels.iter().map(|l| l.max_error()).collect();
    Ok(ConvergenceReport {
        approximant: approx.name(),
        oracle: String::new(),
        slope: fit_loglog_slope(&ns, &errors, MIN_FIT_N),
        levels,
    })
}

fn level_errors(
    oracle: &dyn SetFunction,
    approx: &Approximant,
    partition: Partition,
    grid: &EvalGrid,
    tol: &Tolerance,
) -> Result<LevelErrors> {
    let n = partition.segments();
    let domain = approx.valid_domain(&partition)?;
    let xs = grid.points(domain);
    if xs.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no evaluation points in the valid domain {domain} for N = {n}"
        )));
    }
    let uniform = partition.is_uniform();
    let delta_max = partition.delta_max();
    let f = SampledSvf::sample(oracle, partition, *tol)?;
    let samples = xs
        .par_iter()
        .map(|&x| Ok((x, approx.eval(&f, x, tol)?.hausdorff(&oracle.eval(x)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelErrors {
        n,
        uniform,
        delta_max,
        samples,
    })
}

/// Least-squares slope of `log e` against `log N` over points with
/// `N ≥ min_n`; `None` with fewer than two usable points or a nonpositive
/// error.
pub fn fit_loglog_slope(ns: &[usize], errors: &[f64], min_n: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errors)
        .filter(|(n, _)| **n >= min_n)
        .map(|(&n, &e)| ((n as f64).ln(), e))
        .collect();
    if pts.len() < 2 || pts.iter().any(|p| !(p.1 > 0.0)) {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1.ln() - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Named error bounds. Each is affine in the constant `C`:
/// `bound = base + C · coef`.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundKind {
    /// `2 ω(G, δ_max)` for the metric piecewise-linear interpolant.
    PlInterpolation,
    /// `(2 + ⌊(m+1)/2⌋) L/N`.
    SchoenbergLipschitz { m: u32 },
    /// `2 (1 + 2⌊(m+1)/2⌋) ω(G, 1/N)`.
    SchoenbergContinuous { m: u32 },
    /// `2L/N + C L √(x(1−x)/N)`.
    BernsteinLipschitz,
    /// `2 ω(G, 1/N) + 5C ω(v_G, √(x(1−x)/N))`.
    BernsteinCbv,
    /// `2 L δ_max + C L φ(x, δ_max)`.
    LipschitzTheorem,
    /// `2 ω(G, δ_max) + 5C ω(v_G, φ(x, δ_max))`.
    CbvTheorem,
    /// `2 ω(G, h) + C φ(x, 4 ω(G, h))` on uniform partitions.
    ContinuousTheorem,
    /// Another bound multiplied by a constant factor.
    Scaled { inner: Box<BoundKind>, factor: f64 },
}

impl BoundKind {
    pub fn name(&self) -> String {
        match self {
            Self::PlInterpolation => "pl-interpolation".into(),
            Self::SchoenbergLipschitz { m } => format!("schoenberg-lipschitz-m{m}"),
            Self::SchoenbergContinuous { m } => format!("schoenberg-continuous-m{m}"),
            Self::BernsteinLipschitz => "bernstein-lipschitz".into(),
            Self::BernsteinCbv => "bernstein-cbv".into(),
            Self::LipschitzTheorem => "lipschitz-theorem".into(),
            Self::CbvTheorem => "cbv-theorem".into(),
            Self::ContinuousTheorem => "continuous-theorem".into(),
            Self::Scaled { inner, factor } => format!("{}x{}", inner.name(), factor),
        }
    }

    /// `(base, coef)` at one evaluation point.
    pub fn terms(&self, model: &ErrorModel, level: &LevelErrors, x: f64) -> Result<(f64, f64)> {
        let n = level.n as f64;
        let dm = level.delta_max;
        let half = |m: u32| m.div_ceil(2) as f64;
        Ok(match self {
            Self::PlInterpolation => (2.0 * model.omega_at(dm)?, 0.0),
            Self::SchoenbergLipschitz { m } => ((2.0 + half(*m)) * model.lipschitz_or_err()? / n, 0.0),
            Self::SchoenbergContinuous { m } => (2.0 * (1.0 + 2.0 * half(*m)) * model.omega_at(dm)?, 0.0),
            Self::BernsteinLipschitz => {
                let l = model.lipschitz_or_err()?;
                let t = x.clamp(0.0, 1.0);
                (2.0 * l / n, l * (t * (1.0 - t) / n).max(0.0).sqrt())
            }
            Self::BernsteinCbv => {
                let t = x.clamp(0.0, 1.0);
                let r = (t * (1.0 - t) / n).max(0.0).sqrt();
                (2.0 * model.omega_at(dm)?, 5.0 * model.variation_modulus(r)?)
            }
            Self::LipschitzTheorem => {
                let l = model.lipschitz_or_err()?;
                (2.0 * l * dm, l * model.phi.eval(x, dm))
            }
            Self::CbvTheorem => (
                2.0 * model.omega_at(dm)?,
                5.0 * model.variation_modulus(model.phi.eval(x, dm))?,
            ),
            Self::ContinuousTheorem => {
                if !level.uniform {
                    return Err(Error::NonUniformPartition);
                }
                let w = model.omega_at(dm)?;
                (2.0 * w, model.phi.eval(x, 4.0 * w))
            }
            Self::Scaled { inner, factor } => {
                let (b, c) = inner.terms(model, level, x)?;
                (b * factor, c * factor)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub x: f64,
    pub error: f64,
    pub bound: f64,
    /// `bound − error`; negative when the bound is violated.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub bound: String,
    pub slack: f64,
    /// Worst evaluation point of each level.
    pub rows: Vec<BoundRow>,
    pub worst_margin: f64,
    pub passed: bool,
}

impl BoundCheck {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,error,bound,margin\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.n, r.error, r.bound, r.margin);
        }
        s
    }
}

/// Checks `error ≤ bound · (1 + slack)` at every evaluation point. `slack`
/// absorbs the underestimate of moduli of continuity obtained from probes.
pub fn bound_check(
    report: &ConvergenceReport,
    model: &ErrorModel,
    bound: &BoundKind,
    slack: f64,
) -> Result<BoundCheck> {
    let mut rows = Vec::with_capacity(report.levels.len());
    let mut passed = true;
    for level in &report.levels {
        let mut worst: Option<BoundRow> = None;
        for &(x, error) in &level.samples {
            let (base, coef) = bound.terms(model, level, x)?;
            let b = base + model.c * coef;
            let row = BoundRow {
                n: level.n,
                x,
                error,
                bound: b,
                margin: b - error,
            };
            // 1e-12 absorbs rounding when error and bound coincide
            if error > b * (1.0 + slack) + 1e-12 {
                passed = false;
            }
            if worst.as_ref().is_none_or(|w| row.margin < w.margin) {
                worst = Some(row);
            }
        }
        rows.extend(worst);
    }
    let worst_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    Ok(BoundCheck {
        bound: bound.name(),
        slack,
        rows,
        worst_margin,
        passed,
    })
}

/// How a constant is fitted to measured errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    /// Smallest `C ≥ 0` with `error ≤ base + C·coef`. Zero whenever the
    /// `C`-free part of the bound already dominates.
    Tight,
    /// Smallest `C` with `error ≤ C·coef`, i.e. the constant of the rate
    /// term alone. Stays informative when the base term dominates.
    Rate,
}

/// Fits `C` over every evaluation point of the given reports.
pub fn fit_constant(
    reports: &[&ConvergenceReport],
    model: &ErrorModel,
    bound: &BoundKind,
    mode: FitMode,
) -> Result<f64> {
    let mut c = 0.0_f64;
    for report in reports {
        for level in &report.levels {
            for &(x, error) in &level.samples {
                let (base, coef) = bound.terms(model, level, x)?;
                let excess = match mode {
                    FitMode::Tight => error - base,
                    FitMode::Rate => error,
                };
                if coef > 0.0 && excess > 0.0 {
                    c = c.max(excess / coef);
                }
            }
        }
    }
    Ok(c)
}

/// Constants fitted on two halves of an oracle family and the margin of
/// the first constant on the second half.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub c_first: f64,
    pub c_second: f64,
    pub margin: f64,
}

impl CrossValidation {
    /// `|c_second/c_first − 1|`, infinite when either constant vanishes.
    pub fn relative_spread(&self) -> f64 {
        if self.c_first > 0.0 && self.c_second > 0.0 {
            (self.c_second / self.c_first - 1.0).abs()
        } else {
            f64::INFINITY
        }
    }
}

/// Fits `C` on `first` and checks it on `second`. Models are paired with
/// their reports since `L` and `ω` differ across the family.
pub fn cross_validate_constant(
    first: &[(&ConvergenceReport, &ErrorModel)],
    second: &[(&ConvergenceReport, &ErrorModel)],
    bound: &BoundKind,
    mode: FitMode,
) -> Result<CrossValidation> {
    let fit = |half: &[(&ConvergenceReport, &ErrorModel)]| -> Result<f64> {
        half.iter().try_fold(0.0_f64, |c, (r, m)| {
            Ok(c.max(fit_constant(&[r], m, bound, mode)?))
        })
    };
    let c_first = fit(first)?;
    let c_second = fit(second)?;
    let mut margin = f64::INFINITY;
    for (r, m) in second {
        let check = bound_check(r, &(*m).clone().with_c(c_first), bound, 0.0)?;
        margin = margin.min(check.worst_margin);
    }
    Ok(CrossValidation {
        c_first,
        c_second,
        margin,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexificationRow {
    pub n: usize,
    /// `haus(B^Mn_N(const A, 1/2), conv A)`
    pub minkowski: f64,
    /// `haus(B^M_N(const A, 1/2), A)`
    pub metric: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexificationTable {
    /// `haus(A, conv A)`; zero means the demo is vacuous.
    pub hull_gap: f64,
    pub rows: Vec<ConvexificationRow>,
}

impl ConvexificationTable {
    pub fn is_vacuous(&self) -> bool {
        self.hull_gap == 0.0
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,minkowski,metric\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.n, r.minkowski, r.metric);
        }
        s
    }
}

/// Minkowski and metric Bernstein operators of the constant function `A`
/// at `x = 1/2`. The Minkowski column can have up to `2^{N+1}` components
/// for finite `A`, so keep `N` small.
pub fn convexification_demo(a: &CompactSet, ns: &[usize], tol: &Tolerance) -> Result<ConvexificationTable> {
    let hull = a.convex_hull(tol)?;
    let hull_gap = a.hausdorff(&hull)?;
    let spec = OperatorSpec::bernstein();
    let rows = ns
        .par_iter()
        .map(|&n| {
            let f =
                SampledSvf::with_tolerance(Partition::uniform(0.0, 1.0, n)?, vec![a.clone(); n + 1], *tol)?;
            Ok(ConvexificationRow {
                n,
                minkowski: apply_minkowski_operator(&spec, &f, 0.5, tol)?.hausdorff(&hull)?,
                metric: apply_metric_operator(&spec, &f, 0.5, tol)?.hausdorff(a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvexificationTable { hull_gap, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: [usize; 4] = [8, 16, 32, 64];

    #[test]
    fn oracle_lipschitz_estimates() {
        for o in [BuiltinOracle::a(), BuiltinOracle::b(), BuiltinOracle::identity()] {
            let est = estimate_lipschitz(&o, LIPSCHITZ_PAIRS, 7).unwrap();
            let l = o.lipschitz().unwrap();
            assert!(est <= l * (1.0 + 1e-9), "{}: {est} > {l}", o.name());
            assert!(est >= 0.9 * l, "{}: {est}", o.name());
        }
        // √x has unbounded difference quotients near zero
        let est = estimate_lipschitz(&BuiltinOracle::c(), LIPSCHITZ_PAIRS, 7).unwrap();
        assert!(est > 5.0);
    }

    #[test]
    fn phi_forms() {
        for phi in [Phi::Linear, Phi::Sqrt, Phi::Bernstein] {
            assert_eq!(phi.eval(0.3, 0.0), 0.0);
            assert!(phi.eval(0.3, 0.1) <= phi.eval(0.3, 0.2));
        }
        assert!((Phi::Bernstein.eval(0.5, 1.0 / 16.0) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn slope_fit() {
        let ns = [4, 8, 16, 32];
        let e: Vec<f64> = ns.iter().map(|&n| 3.0 / n as f64).collect();
        assert!((fit_loglog_slope(&ns, &e, 8).unwrap() + 1.0).abs() < 1e-12);
        assert!(fit_loglog_slope(&ns, &[1.0, 0.0, 1.0, 1.0], 1).is_none());
        assert!(fit_loglog_slope(&[4, 8], &[1.0, 0.5], 8).is_none());
    }

    #[test]
    fn schoenberg_two_on_identity_is_a_shift() {
        let tol = Tolerance::default();
        let spec = OperatorSpec::schoenberg(2).unwrap();
        let r = error_curve(
            &BuiltinOracle::identity(),
            &Approximant::Metric(spec),
            &NS,
            &EvalGrid::Uniform(64),
            &tol,
        )
        .unwrap();
        for level in &r.levels {
            for &(_, e) in &level.samples {
                assert!((e - 1.0 / level.n as f64).abs() < 1e-12);
            }
        }
        assert!((r.slope.unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn bernstein_on_parabola_matches_closed_form() {
        let tol = Tolerance::default();
        let r = error_curve(
            &BuiltinOracle::parabola(),
            &Approximant::Metric(OperatorSpec::bernstein()),
            &NS,
            &EvalGrid::Uniform(32),
            &tol,
        )
        .unwrap();
        for level in &r.levels {
            for &(x, e) in &level.samples {
                assert!((e - x * (1.0 - x) / level.n as f64).abs() < 1e-12);
            }
        }
        assert!((r.slope.unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn schoenberg_lipschitz_bound_and_self_test() {
        let tol = Tolerance::default();
        let o = BuiltinOracle::a();
        let model = ErrorModel::new(o.lipschitz(), 0.0, Phi::Linear).unwrap();
        let r = error_curve(
            &o,
            &Approximant::Metric(OperatorSpec::schoenberg(2).unwrap()),
            &NS,
            &EvalGrid::Uniform(64),
            &tol,
        )
        .unwrap();
        let bound = BoundKind::SchoenbergLipschitz { m: 2 };
        let ok = bound_check(&r, &model, &bound, 0.0).unwrap();
        assert!(ok.passed && ok.worst_margin >= 0.0);
        let tight = BoundKind::Scaled {
            inner: Box::new(bound),
            factor: 0.1,
        };
        let bad = bound_check(&r, &model, &tight, 0.0).unwrap();
        assert!(!bad.passed && bad.worst_margin < 0.0);
        assert!(bad.to_csv().starts_with("n,error,bound,margin\n"));
    }

    #[test]
    fn continuous_theorem_gate() {
        let tol = Tolerance::default();
        let o = BuiltinOracle::c();
        let partitions = vec![Partition::new(vec![0.0, 0.1, 0.5, 1.0]).unwrap()];
        let r = error_curve_on(
            &o,
            &Approximant::MetricPl,
            partitions,
            &EvalGrid::Uniform(8),
            &tol,
        )
        .unwrap();
        let model = ErrorModel::new(None, 1.0, Phi::Linear)
            .unwrap()
            .with_omega(&o, &[0.5], 256)
            .unwrap();
        assert_eq!(
            bound_check(&r, &model, &BoundKind::ContinuousTheorem, 0.0),
            Err(Error::NonUniformPartition)
        );
    }

    #[test]
    fn convexification_interval_example() {
        let tol = Tolerance::default();
        let a = CompactSet::intervals(&[(2.0, 4.0), (6.0, 8.0)]).unwrap();
        let t = convexification_demo(&a, &[1, 2, 4], &tol).unwrap();
        assert_eq!(t.hull_gap, 1.0);
        assert!(t.rows.iter().all(|r| r.metric < 1e-12));
        let convex = CompactSet::intervals(&[(0.0, 1.0)]).unwrap();
        assert!(convexification_demo(&convex, &[2], &tol).unwrap().is_vacuous());
    }
}

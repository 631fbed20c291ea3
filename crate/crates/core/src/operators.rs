//! Coefficient families `c_i(x)` of classical linear operators and their
//! set-valued analogues: the metric operator `⊕ c_i(x) F(x_i)`, the
//! Minkowski operator `Σ c_i(x) F(x_i)` and the de Casteljau recursion
//! with the metric average as binary operation.

use std::fmt;
use std::sync::Arc;

use crate::chains::metric_average;
use crate::error::{Error, Result};
use crate::sets::{minkowski_combination, CompactSet, Interval};
use crate::svf::{Partition, SampledSvf};
use crate::tolerance::Tolerance;

/// Largest Bernstein degree accepted.
pub const MAX_BERNSTEIN_DEGREE: usize = 64;

/// Order `m ≥ 1` of a cardinal B-spline (degree `m − 1`, support `[0, m]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BSplineOrder(u32);

impl BSplineOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("B-spline order must be ≥ 1".into()));
        }
        Ok(Self(m))
    }

    pub fn get(&self) -> u32 {
        self.0
    }

    /// `⌊(m + 1)/2⌋`, the constant appearing in the Schoenberg error bounds.
    pub fn half_ceil(&self) -> u32 {
        self.0.div_ceil(2)
    }
}

/// `C(n, i) x^i (1 − x)^{n−i}` for `i = 0..=n`, `x ∈ [0, 1]`.
pub fn bernstein_coeffs(n: usize, x: f64) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_BERNSTEIN_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "Bernstein degree must be in 1..={MAX_BERNSTEIN_DEGREE}, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let y = 1.0 - x;
    let mut binom = 1.0_f64;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        out.push(binom * x.powi(i as i32) * y.powi((n - i) as i32));
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    Ok(out)
}

/// Cardinal B-spline `B_m(t)` by the order recursion
/// `B_k(t) = (t B_{k−1}(t) + (k − t) B_{k−1}(t − 1))/(k − 1)`
/// starting from the indicator of `[0, 1)`.
pub fn bspline_eval(order: BSplineOrder, t: f64) -> f64 {
    let m = order.get() as usize;
    if !(t >= 0.0 && t < m as f64) {
        return 0.0;
    }
    // vals[r] = B_k(t − r)
    let mut vals: Vec<f64> = (0..m)
        .map(|r| {
            let s = t - r as f64;
            if (0.0..1.0).contains(&s) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for k in 2..=m {
        let kf = k as f64;
        for r in 0..=(m - k) {
            let s = t - r as f64;
            vals[r] = (s * vals[r] + (kf - s) * vals[r + 1]) / (kf - 1.0);
        }
    }
    vals[0]
}

/// `B_m(N x − i)` for `i = 0..=N`, with the domain `[(m − 1)/N, 1]` on which
/// the coefficients sum to one.
pub fn schoenberg_coeffs(order: BSplineOrder, n: usize, x: f64) -> Result<(Vec<f64>, Interval)> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be ≥ 1".into()));
    }
    let lo = (order.get() - 1) as f64 / n as f64;
    if lo > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "Schoenberg domain [{lo}, 1] is empty for m = {}, N = {n}",
            order.get()
        )));
    }
    let domain = Interval::new(lo, 1.0)?;
    if !domain.contains(x, 0.0) {
        return Err(Error::Domain {
            value: x,
            lo,
            hi: 1.0,
        });
    }
    let nx = n as f64 * x;
    let c = (0..=n).map(|i| bspline_eval(order, nx - i as f64)).collect();
    Ok((c, domain))
}

/// Lagrange basis `l_i(x) = Π_{j≠i} (x − x_j)/(x_i − x_j)`.
pub fn lagrange_coeffs(knots: &[f64], x: f64) -> Result<Vec<f64>> {
    if knots.is_empty() {
        return Err(Error::InvalidPartition("no knots".into()));
    }
    for (i, a) in knots.iter().enumerate() {
        if knots[i + 1..].contains(a) {
            return Err(Error::InvalidPartition(format!("duplicate knot {a}")));
        }
    }
    Ok((0..knots.len())
        .map(|i| {
            knots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| (x - xj) / (knots[i] - xj))
                .product()
        })
        .collect())
}

type CoeffFn = dyn Fn(&Partition, f64) -> Result<Vec<f64>> + Send + Sync;

/// User supplied coefficient family.
#[derive(Clone)]
pub struct CustomCoefficients {
    pub name: String,
    eval: Arc<CoeffFn>,
}

impl CustomCoefficients {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&Partition, f64) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    /// Coefficient rows `(x, c_0, …, c_N)`, interpolated linearly in `x`.
    pub fn from_table(name: impl Into<String>, rows: Vec<(f64, Vec<f64>)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument("coefficient table is empty".into()));
        }
        let width = rows[0].1.len();
        if rows.iter().any(|r| r.1.len() != width) {
            return Err(Error::InvalidArgument("ragged coefficient table".into()));
        }
        if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidArgument("table abscissae must increase".into()));
        }
        Ok(Self::new(name, move |_p: &Partition, x: f64| {
            let k = rows.partition_point(|r| r.0 <= x);
            if k == 0 || (k == rows.len() && x > rows[k - 1].0) {
                if k == rows.len() && rows.len() == 1 && x == rows[0].0 {
                    return Ok(rows[0].1.clone());
                }
                return Err(Error::Domain {
                    value: x,
                    lo: rows[0].0,
                    hi: rows[rows.len() - 1].0,
                });
            }
            if k == rows.len() {
                return Ok(rows[k - 1].1.clone());
            }
            let (x0, c0) = (&rows[k - 1].0, &rows[k - 1].1);
            let (x1, c1) = (&rows[k].0, &rows[k].1);
            let w = (x - x0) / (x1 - x0);
            Ok(c0.iter().zip(c1).map(|(a, b)| (1.0 - w) * a + w * b).collect())
        }))
    }
}

impl fmt::Debug for CustomCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomCoefficients")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum OperatorKind {
    Bernstein,
    Schoenberg(BSplineOrder),
    Lagrange,
    Custom(CustomCoefficients),
}

/// A named coefficient family with its domain of validity. Bernstein and
/// Schoenberg operators act on uniform partitions of any `[a, b]` via the
/// affine change of variables to `[0, 1]`.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    custom_domain: Option<Interval>,
}

impl OperatorSpec {
    pub fn bernstein() -> Self {
        Self {
            kind: OperatorKind::Bernstein,
            custom_domain: None,
        }
    }

    pub fn schoenberg(m: u32) -> Result<Self> {
        Ok(Self {
            kind: OperatorKind::Schoenberg(BSplineOrder::new(m)?),
            custom_domain: None,
        })
    }

    pub fn lagrange() -> Self {
        Self {
            kind: OperatorKind::Lagrange,
            custom_domain: None,
        }
    }

    pub fn custom(coeffs: CustomCoefficients, valid_domain: Interval) -> Self {
        Self {
            kind: OperatorKind::Custom(coeffs),
            custom_domain: Some(valid_domain),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            OperatorKind::Bernstein => "bernstein".into(),
            OperatorKind::Schoenberg(m) => format!("schoenberg-m{}", m.get()),
            OperatorKind::Lagrange => "lagrange".into(),
            OperatorKind::Custom(c) => format!("custom-{}", c.name),
        }
    }

    /// Closed subinterval of `[a, b]` on which the operator is defined.
    pub fn valid_domain(&self, partition: &Partition) -> Result<Interval> {
        let (a, b) = (partition.a(), partition.b());
        match &self.kind {
            OperatorKind::Bernstein | OperatorKind::Lagrange => Interval::new(a, b),
            OperatorKind::Schoenberg(m) => {
                let h = partition.step()?;
                let lo = a + (m.get() - 1) as f64 * h;
                if lo > b {
                    return Err(Error::InvalidArgument(format!(
                        "Schoenberg domain is empty for m = {} and N = {}",
                        m.get(),
                        partition.segments()
                    )));
                }
                Interval::new(lo, b)
            }
            OperatorKind::Custom(_) => {
                let d = self.custom_domain.expect("custom operators carry a domain");
                d.intersect(&partition.domain())
                    .ok_or_else(|| Error::InvalidArgument("custom domain misses the partition".into()))
            }
        }
    }

    /// `(c_0(x), …, c_N(x))`.
    pub fn coefficients(&self, partition: &Partition, x: f64) -> Result<Vec<f64>> {
        let domain = self.valid_domain(partition)?;
        // grid points computed in floating point may overshoot by an ulp
        let slack = 1e-12 * (partition.b() - partition.a());
        if !domain.contains(x, slack) {
            return Err(Error::Domain {
                value: x,
                lo: domain.lo(),
                hi: domain.hi(),
            });
        }
        let x = x.clamp(domain.lo(), domain.hi());
        let n = partition.segments();
        let to_unit = |x: f64| ((x - partition.a()) / (partition.b() - partition.a())).clamp(0.0, 1.0);
        let coeffs = match &self.kind {
            OperatorKind::Bernstein => {
                partition.step()?;
                bernstein_coeffs(n, to_unit(x))?
            }
            OperatorKind::Schoenberg(m) => {
                partition.step()?;
                let t = to_unit(x);
                // snap onto the unit-interval domain after rescaling
                let lo = (m.get() - 1) as f64 / n as f64;
                schoenberg_coeffs(*m, n, t.max(lo))?.0
            }
            OperatorKind::Lagrange => lagrange_coeffs(partition.knots(), x)?,
            OperatorKind::Custom(c) => (c.eval)(partition, x)?,
        };
        if coeffs.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                got: coeffs.len(),
            });
        }
        Ok(coeffs)
    }

    /// Scalar operator `Σ c_i(x) f(x_i)` applied componentwise.
    pub fn apply_scalar(&self, partition: &Partition, values: &[Vec<f64>], x: f64) -> Result<Vec<f64>> {
        let c = self.coefficients(partition, x)?;
        if values.len() != c.len() {
            return Err(Error::LengthMismatch {
                expected: c.len(),
                got: values.len(),
            });
        }
        let dim = values[0].len();
        let mut out = vec![0.0; dim];
        for (ci, v) in c.iter().zip(values) {
            for (o, vi) in out.iter_mut().zip(v) {
                *o += ci * vi;
            }
        }
        Ok(out)
    }
}

/// Metric analogue `A^M_χ(F, x) = ⊕ c_i(x) F(x_i)`.
pub fn apply_metric_operator(
    spec: &OperatorSpec,
    f: &SampledSvf,
    x: f64,
    tol: &Tolerance,
) -> Result<CompactSet> {
    let c = spec.coefficients(f.partition(), x)?;
    f.combine(&c, tol)
}

/// Minkowski analogue `Σ c_i(x) F(x_i)`; restricted to nonnegative
/// coefficients.
pub fn apply_minkowski_operator(
    spec: &OperatorSpec,
    f: &SampledSvf,
    x: f64,
    tol: &Tolerance,
) -> Result<CompactSet> {
    let c = spec.coefficients(f.partition(), x)?;
    if let Some(neg) = c.iter().find(|&&v| v < 0.0) {
        return Err(Error::UnsupportedOperator(format!(
            "Minkowski combination with negative coefficient {neg} ({} at x = {x})",
            spec.name()
        )));
    }
    let (coeffs, sets): (Vec<f64>, Vec<CompactSet>) = c
        .iter()
        .zip(f.values())
        .filter(|(ci, _)| **ci > 0.0)
        .map(|(ci, s)| (*ci, s.clone()))
        .unzip();
    minkowski_combination(&coeffs, &sets, tol)
}

/// Bernstein operator through the de Casteljau recursion
/// `F_i^k = F_i^{k−1} ⊕_{1−x} F_{i+1}^{k−1}` with the metric average.
pub fn decasteljau_ma_bernstein(f: &SampledSvf, x: f64, tol: &Tolerance) -> Result<CompactSet> {
    let p = f.partition();
    p.step()?;
    p.check_inside(x)?;
    let t = ((x - p.a()) / (p.b() - p.a())).clamp(0.0, 1.0);
    let mut level: Vec<CompactSet> = f.values().to_vec();
    while level.len() > 1 {
        level = level
            .windows(2)
            .map(|w| metric_average(&w[0], &w[1], 1.0 - t, tol))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(level.pop().expect("nonempty"))
}

//! Nonempty compact sets: exact interval unions on the line and finite
//! point clouds in any dimension.

mod cloud;
mod interval;

pub(crate) use cloud::euclid;
pub use cloud::PointCloud;
pub use interval::{Interval, IntervalUnion};

use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub enum CompactSet {
    Intervals(IntervalUnion),
    Cloud(PointCloud),
}

impl From<IntervalUnion> for CompactSet {
    fn from(s: IntervalUnion) -> Self {
        CompactSet::Intervals(s)
    }
}

impl From<PointCloud> for CompactSet {
    fn from(s: PointCloud) -> Self {
        CompactSet::Cloud(s)
    }
}

impl fmt::Display for CompactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactSet::Intervals(s) => write!(f, "{s}"),
            CompactSet::Cloud(c) => {
                write!(f, "{{")?;
                for (k, p) in c.points().iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p:?}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl CompactSet {
    /// Normalized interval union; see [`IntervalUnion::normalize`].
    pub fn normalize(raw: Vec<Interval>, tol: &Tolerance) -> Result<Self> {
        IntervalUnion::normalize(raw, tol).map(CompactSet::Intervals)
    }

    pub fn intervals(pairs: &[(f64, f64)]) -> Result<Self> {
        IntervalUnion::from_pairs(pairs).map(CompactSet::Intervals)
    }

    pub fn points(points: Vec<Vec<f64>>, tol: &Tolerance) -> Result<Self> {
        PointCloud::new(points, tol).map(CompactSet::Cloud)
    }

    pub fn dim(&self) -> usize {
        match self {
            CompactSet::Intervals(_) => 1,
            CompactSet::Cloud(c) => c.dim(),
        }
    }

    pub fn as_intervals(&self) -> Option<&IntervalUnion> {
        match self {
            CompactSet::Intervals(s) => Some(s),
            CompactSet::Cloud(_) => None,
        }
    }

    pub fn as_cloud(&self) -> Option<&PointCloud> {
        match self {
            CompactSet::Cloud(c) => Some(c),
            CompactSet::Intervals(_) => None,
        }
    }

    pub fn same_kind(&self, other: &CompactSet) -> Result<()> {
        match (self, other) {
            (CompactSet::Intervals(_), CompactSet::Intervals(_)) => Ok(()),
            (CompactSet::Cloud(a), CompactSet::Cloud(b)) if a.dim() == b.dim() => Ok(()),
            (CompactSet::Cloud(a), CompactSet::Cloud(b)) => Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            }),
            _ => Err(Error::KindMismatch),
        }
    }

    fn check_point(&self, a: &[f64]) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: a.len(),
            });
        }
        Ok(())
    }

    /// Euclidean distance from `a` to the set.
    pub fn dist(&self, a: &[f64]) -> Result<f64> {
        self.check_point(a)?;
        Ok(match self {
            CompactSet::Intervals(s) => s.dist(a[0]),
            CompactSet::Cloud(c) => c.dist_unchecked(a),
        })
    }

    /// All nearest points of the set to `a`, as a set of the same kind.
    pub fn project(&self, a: &[f64], tol: &Tolerance) -> Result<CompactSet> {
        self.check_point(a)?;
        match self {
            CompactSet::Intervals(s) => {
                IntervalUnion::from_points(&s.project(a[0], tol), tol).map(CompactSet::Intervals)
            }
            CompactSet::Cloud(c) => c.project(a, tol).and_then(|p| CompactSet::points(p, tol)),
        }
    }

    pub fn contains_point(&self, a: &[f64], eps: f64) -> Result<bool> {
        Ok(self.dist(a)? <= eps)
    }

    pub fn hausdorff(&self, other: &CompactSet) -> Result<f64> {
        self.same_kind(other)?;
        match (self, other) {
            (CompactSet::Intervals(a), CompactSet::Intervals(b)) => Ok(a.hausdorff(b)),
            (CompactSet::Cloud(a), CompactSet::Cloud(b)) => a.hausdorff(b),
            _ => unreachable!(),
        }
    }

    /// `sup_{a ∈ self} dist(a, other)`.
    pub fn directed_hausdorff(&self, other: &CompactSet) -> Result<f64> {
        self.same_kind(other)?;
        match (self, other) {
            (CompactSet::Intervals(a), CompactSet::Intervals(b)) => Ok(a.directed_hausdorff(b)),
            (CompactSet::Cloud(a), CompactSet::Cloud(b)) => a.directed_hausdorff(b),
            _ => unreachable!(),
        }
    }

    pub fn convex_hull(&self, tol: &Tolerance) -> Result<CompactSet> {
        match self {
            CompactSet::Intervals(s) => Ok(CompactSet::Intervals(s.convex_hull())),
            CompactSet::Cloud(c) => c.convex_hull(tol).map(CompactSet::Cloud),
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            CompactSet::Intervals(s) => s.is_convex(),
            CompactSet::Cloud(c) => c.len() == 1,
        }
    }

    pub fn scale(&self, lambda: f64, tol: &Tolerance) -> CompactSet {
        match self {
            CompactSet::Intervals(s) => CompactSet::Intervals(s.scale(lambda)),
            CompactSet::Cloud(c) => CompactSet::Cloud(c.scale(lambda, tol)),
        }
    }
}

/// Minkowski combination `Σ λ_i A_i = { Σ λ_i a_i : a_i ∈ A_i }`.
pub fn minkowski_combination(coeffs: &[f64], sets: &[CompactSet], tol: &Tolerance) -> Result<CompactSet> {
    if coeffs.len() != sets.len() {
        return Err(Error::LengthMismatch {
            expected: sets.len(),
            got: coeffs.len(),
        });
    }
    let first = sets.first().ok_or(Error::EmptySet)?;
    for s in sets {
        first.same_kind(s)?;
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut terms = coeffs.iter().zip(sets).map(|(&l, s)| s.scale(l, tol));
    let mut acc = terms.next().expect("nonempty");
    for t in terms {
        acc = match (&acc, &t) {
            (CompactSet::Intervals(a), CompactSet::Intervals(b)) => {
                CompactSet::Intervals(a.minkowski_sum(b, tol))
            }
            (CompactSet::Cloud(a), CompactSet::Cloud(b)) => CompactSet::Cloud(a.minkowski_sum(b, tol)?),
            _ => unreachable!(),
        };
    }
    Ok(acc)
}

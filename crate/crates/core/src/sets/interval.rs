//! Exact one-dimensional compact sets as finite unions of closed intervals.

use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

/// Closed interval `[lo, hi]`; `lo == hi` is a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFinite);
        }
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Builds `[min(a, b), max(a, b)]` without validation of ordering.
    pub(crate) fn spanning(a: f64, b: f64) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    #[inline]
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        x >= self.lo - eps && x <= self.hi + eps
    }

    /// `λ·[lo, hi]`, flipping the endpoints for negative `λ`.
    pub fn scale(&self, lambda: f64) -> Self {
        Self::spanning(lambda * self.lo, lambda * self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A nonempty compact subset of the real line stored as sorted, pairwise
/// disjoint closed intervals. Neighbouring components are separated by a
/// gap strictly larger than the merge tolerance used to build the set.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    components: Vec<Interval>,
}

impl IntervalUnion {
    /// Sorts `raw` and merges components whose gap does not exceed `merge_eps`.
    pub fn normalize(raw: Vec<Interval>, tol: &Tolerance) -> Result<Self> {
        Self::normalize_with(raw, tol.merge_eps)
    }

    pub(crate) fn normalize_with(mut raw: Vec<Interval>, merge_eps: f64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        raw.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut components: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match components.last_mut() {
                Some(last) if iv.lo - last.hi <= merge_eps => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => components.push(iv),
            }
        }
        Ok(Self { components })
    }

    /// Convenience constructor from `(lo, hi)` pairs with default tolerances.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let raw = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(raw, &Tolerance::default())
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Ok(Self {
            components: vec![Interval::new(lo, hi)?],
        })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::interval(x, x)
    }

    /// Finite set of points, each stored as a degenerate component.
    pub fn from_points(points: &[f64], tol: &Tolerance) -> Result<Self> {
        let raw = points
            .iter()
            .map(|&p| Interval::point(p))
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(raw, tol)
    }

    #[inline]
    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn min(&self) -> f64 {
        self.components[0].lo
    }

    pub fn max(&self) -> f64 {
        self.components[self.components.len() - 1].hi
    }

    pub fn is_convex(&self) -> bool {
        self.components.len() == 1
    }

    /// Gap midpoints between consecutive components.
    pub fn gap_midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.components.windows(2).map(|w| 0.5 * (w[0].hi + w[1].lo))
    }

    pub fn contains(&self, x: f64, eps: f64) -> bool {
        // his are increasing, so the last component starting at or before
        // x + eps is the only candidate
        let idx = self.components.partition_point(|c| c.lo <= x + eps);
        idx > 0 && x <= self.components[idx - 1].hi + eps
    }

    pub fn dist(&self, x: f64) -> f64 {
        let idx = self.components.partition_point(|c| c.lo <= x);
        let mut best = f64::INFINITY;
        if idx > 0 {
            let left = &self.components[idx - 1];
            if x <= left.hi {
                return 0.0;
            }
            best = x - left.hi;
        }
        if idx < self.components.len() {
            best = best.min(self.components[idx].lo - x);
        }
        best
    }

    /// All nearest points of the set to `x`, ascending. Two candidates
    /// are returned when `x` is equidistant (within `tie_eps`) from the
    /// components on either side of a gap.
    pub fn project(&self, x: f64, tol: &Tolerance) -> Vec<f64> {
        let idx = self.components.partition_point(|c| c.lo <= x);
        if idx > 0 && x <= self.components[idx - 1].hi {
            return vec![x];
        }
        let left = idx.checked_sub(1).map(|k| self.components[k].hi);
        let right = self.components.get(idx).map(|c| c.lo);
        match (left, right) {
            (Some(l), Some(r)) => {
                let (dl, dr) = (x - l, r - x);
                let d = dl.min(dr);
                let mut out = Vec::with_capacity(2);
                if dl <= d + tol.tie_eps {
                    out.push(l);
                }
                if dr <= d + tol.tie_eps {
                    out.push(r);
                }
                out
            }
            (Some(l), None) => vec![l],
            (None, Some(r)) => vec![r],
            (None, None) => unreachable!("interval union is never empty"),
        }
    }

    /// `sup_{a ∈ self} dist(a, other)`.
    ///
    /// `dist(·, other)` is piecewise linear on each component of `self`, so
    /// the supremum is attained at a component endpoint or at a gap
    /// midpoint of `other` lying inside `self`.
    pub fn directed_hausdorff(&self, other: &IntervalUnion) -> f64 {
        let mut best = 0.0_f64;
        for c in &self.components {
            best = best.max(other.dist(c.lo)).max(other.dist(c.hi));
        }
        for m in other.gap_midpoints() {
            if self.contains(m, 0.0) {
                best = best.max(other.dist(m));
            }
        }
        best
    }

    pub fn hausdorff(&self, other: &IntervalUnion) -> f64 {
        self.directed_hausdorff(other).max(other.directed_hausdorff(self))
    }

    pub fn convex_hull(&self) -> IntervalUnion {
        IntervalUnion {
            components: vec![Interval {
                lo: self.min(),
                hi: self.max(),
            }],
        }
    }

    pub fn scale(&self, lambda: f64) -> IntervalUnion {
        let mut components: Vec<Interval> = self.components.iter().map(|c| c.scale(lambda)).collect();
        if lambda < 0.0 {
            components.reverse();
        }
        IntervalUnion { components }
    }

    /// Minkowski sum `self + other`.
    pub fn minkowski_sum(&self, other: &IntervalUnion, tol: &Tolerance) -> IntervalUnion {
        let mut raw = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                raw.push(Interval {
                    lo: a.lo + b.lo,
                    hi: a.hi + b.hi,
                });
            }
        }
        Self::normalize(raw, tol).expect("sum of nonempty sets is nonempty")
    }

    /// Intersection with another union, `None` when disjoint.
    pub fn intersection(&self, other: &IntervalUnion) -> Option<IntervalUnion> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.components.len() && j < other.components.len() {
            let (a, b) = (&self.components[i], &other.components[j]);
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        (!out.is_empty()).then_some(IntervalUnion { components: out })
    }

    /// Whether every point of `self` lies within `eps` of `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion, eps: f64) -> bool {
        self.directed_hausdorff(other) <= eps
    }

    /// Total length of all components.
    pub fn measure(&self) -> f64 {
        self.components.iter().map(Interval::len).sum()
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iu(pairs: &[(f64, f64)]) -> IntervalUnion {
        IntervalUnion::from_pairs(pairs).unwrap()
    }

    #[test]
    fn normalize_merges_overlaps() {
        assert_eq!(iu(&[(2.0, 4.0), (3.0, 8.0)]), iu(&[(2.0, 8.0)]));
        assert_eq!(iu(&[(2.0, 4.0), (6.0, 8.0)]).components().len(), 2);
        assert_eq!(iu(&[(5.0, 5.0)]).components(), &[Interval::point(5.0).unwrap()]);
    }

    #[test]
    fn normalize_merges_touching_within_eps() {
        let tol = Tolerance::default();
        let raw = vec![
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(1.0 + 1e-13, 2.0).unwrap(),
        ];
        let s = IntervalUnion::normalize(raw, &tol).unwrap();
        assert_eq!(s.components().len(), 1);
    }

    #[test]
    fn normalize_rejects_empty() {
        let tol = Tolerance::default();
        assert_eq!(IntervalUnion::normalize(vec![], &tol), Err(Error::EmptySet));
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn dist_examples() {
        assert_eq!(iu(&[(0.0, 1.0), (5.0, 6.0)]).dist(3.0), 2.0);
        assert_eq!(iu(&[(0.0, 1.0)]).dist(0.5), 0.0);
        assert_eq!(iu(&[(0.0, 1.0)]).dist(-2.0), 2.0);
        assert_eq!(iu(&[(0.0, 1.0)]).dist(3.5), 2.5);
    }

    #[test]
    fn project_examples() {
        let tol = Tolerance::default();
        assert_eq!(iu(&[(0.0, 2.0), (4.0, 6.0)]).project(3.0, &tol), vec![2.0, 4.0]);
        assert_eq!(iu(&[(2.0, 8.0)]).project(5.0, &tol), vec![5.0]);
        assert_eq!(iu(&[(2.0, 4.0), (6.0, 8.0)]).project(0.0, &tol), vec![2.0]);
        assert_eq!(iu(&[(2.0, 4.0), (6.0, 8.0)]).project(9.0, &tol), vec![8.0]);
        assert_eq!(iu(&[(2.0, 4.0), (6.0, 8.0)]).project(4.9, &tol), vec![4.0]);
    }

    #[test]
    fn hausdorff_examples() {
        let a = iu(&[(0.0, 1.0), (3.0, 4.0)]);
        let b = iu(&[(0.0, 4.0)]);
        assert_eq!(a.hausdorff(&b), 1.0);
        assert_eq!(a.hausdorff(&a), 0.0);
        assert_eq!(iu(&[(0.0, 1.0)]).hausdorff(&iu(&[(2.0, 3.0)])), 2.0);
    }

    #[test]
    fn minkowski_and_scale() {
        let tol = Tolerance::default();
        let a = iu(&[(0.0, 1.0)]);
        assert_eq!(a.minkowski_sum(&a, &tol), iu(&[(0.0, 2.0)]));
        let b = iu(&[(0.0, 1.0), (3.0, 4.0)]).scale(-1.0);
        assert_eq!(b, iu(&[(-4.0, -3.0), (-1.0, 0.0)]));
    }

    #[test]
    fn intersection_and_subset() {
        let a = iu(&[(0.0, 2.0), (4.0, 6.0)]);
        let b = iu(&[(1.0, 5.0)]);
        assert_eq!(a.intersection(&b).unwrap(), iu(&[(1.0, 2.0), (4.0, 5.0)]));
        assert!(iu(&[(0.0, 1.0)]).intersection(&iu(&[(2.0, 3.0)])).is_none());
        assert!(iu(&[(1.0, 2.0)]).is_subset_of(&a, 0.0));
        assert!(!b.is_subset_of(&a, 0.0));
    }

    #[test]
    fn hull() {
        assert_eq!(iu(&[(2.0, 4.0), (6.0, 8.0)]).convex_hull(), iu(&[(2.0, 8.0)]));
        assert_eq!(iu(&[(5.0, 5.0)]).convex_hull(), iu(&[(5.0, 5.0)]));
    }
}

//! Finite point clouds in `R^n`, the discrete stand-in for compact sets.

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    // sorted lexicographically
    points: Vec<Vec<f64>>,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

#[inline]
pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl PointCloud {
    /// Validates dimensions and removes points within `dedupe_eps` of an
    /// already accepted point.
    pub fn new(points: Vec<Vec<f64>>, tol: &Tolerance) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("points must have dimension ≥ 1".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let mut points = points;
        points.sort_by(|a, b| lex_cmp(a, b));
        let eps = tol.dedupe_eps;
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
        for p in points {
            let duplicate = kept
                .iter()
                .rev()
                .take_while(|q| p[0] - q[0] <= eps)
                .any(|q| euclid(q, &p) <= eps);
            if !duplicate {
                kept.push(p);
            }
        }
        Ok(Self { dim, points: kept })
    }

    pub fn from_scalars(values: &[f64], tol: &Tolerance) -> Result<Self> {
        Self::new(values.iter().map(|&v| vec![v]).collect(), tol)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn check_dim(&self, a: &[f64]) -> Result<()> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn dist(&self, a: &[f64]) -> Result<f64> {
        self.check_dim(a)?;
        Ok(self.dist_unchecked(a))
    }

    pub(crate) fn dist_unchecked(&self, a: &[f64]) -> f64 {
        if self.dim == 1 {
            // sorted scalars: nearest neighbour by bisection
            let x = a[0];
            let idx = self.points.partition_point(|p| p[0] <= x);
            let mut best = f64::INFINITY;
            if idx > 0 {
                best = x - self.points[idx - 1][0];
            }
            if idx < self.points.len() {
                best = best.min(self.points[idx][0] - x);
            }
            return best;
        }
        self.points
            .iter()
            .map(|p| euclid(p, a))
            .fold(f64::INFINITY, f64::min)
    }

    /// Indices of all points at distance `dist(a)` within `tie_eps`.
    pub(crate) fn project_indices(&self, a: &[f64], tol: &Tolerance) -> Vec<usize> {
        let d = self.dist_unchecked(a);
        let cutoff = d + tol.tie_eps;
        if self.dim == 1 {
            let x = a[0];
            let idx = self.points.partition_point(|p| p[0] <= x);
            let mut out = Vec::new();
            let mut k = idx;
            while k > 0 && x - self.points[k - 1][0] <= cutoff {
                k -= 1;
                out.push(k);
            }
            out.reverse();
            let mut k = idx;
            while k < self.points.len() && self.points[k][0] - x <= cutoff {
                out.push(k);
                k += 1;
            }
            return out;
        }
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| euclid(p, a) <= cutoff)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn project(&self, a: &[f64], tol: &Tolerance) -> Result<Vec<Vec<f64>>> {
        self.check_dim(a)?;
        Ok(self
            .project_indices(a, tol)
            .into_iter()
            .map(|k| self.points[k].clone())
            .collect())
    }

    pub fn directed_hausdorff(&self, other: &PointCloud) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(self
            .points
            .iter()
            .map(|p| other.dist_unchecked(p))
            .fold(0.0, f64::max))
    }

    pub fn hausdorff(&self, other: &PointCloud) -> Result<f64> {
        Ok(self
            .directed_hausdorff(other)?
            .max(other.directed_hausdorff(self)?))
    }

    pub fn scale(&self, lambda: f64, tol: &Tolerance) -> PointCloud {
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().map(|v| lambda * v).collect())
            .collect();
        PointCloud::new(pts, tol).expect("scaling preserves validity")
    }

    pub fn minkowski_sum(&self, other: &PointCloud, tol: &Tolerance) -> Result<PointCloud> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        PointCloud::new(pts, tol)
    }

    /// Vertices of the convex hull. Supported for dimensions 1 and 2.
    pub fn convex_hull(&self, tol: &Tolerance) -> Result<PointCloud> {
        match self.dim {
            1 => {
                let lo = self.points[0].clone();
                let hi = self.points[self.points.len() - 1].clone();
                PointCloud::new(vec![lo, hi], tol)
            }
            2 => PointCloud::new(monotone_chain(&self.points), tol),
            d => Err(Error::UnsupportedOperator(format!(
                "convex hull of point clouds in dimension {d}"
            ))),
        }
    }
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain on lexicographically sorted points; collinear
/// boundary points are dropped.
fn monotone_chain(sorted: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let mut hull: Vec<&Vec<f64>> = Vec::with_capacity(2 * sorted.len());
    for p in sorted {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for p in sorted.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull.into_iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(pts: &[&[f64]]) -> PointCloud {
        PointCloud::new(pts.iter().map(|p| p.to_vec()).collect(), &Tolerance::default()).unwrap()
    }

    #[test]
    fn dist_is_euclidean() {
        let b = cloud(&[&[3.0, 4.0]]);
        assert_eq!(b.dist(&[0.0, 0.0]).unwrap(), 5.0);
        assert!(b.dist(&[0.0]).is_err());
    }

    #[test]
    fn dedupes_and_validates() {
        let c = cloud(&[&[1.0, 1.0], &[1.0, 1.0 + 1e-14], &[0.0, 0.0]]);
        assert_eq!(c.len(), 2);
        let tol = Tolerance::default();
        assert_eq!(PointCloud::new(vec![], &tol), Err(Error::EmptySet));
        assert!(PointCloud::new(vec![vec![1.0], vec![1.0, 2.0]], &tol).is_err());
    }

    #[test]
    fn projection_ties_are_set_valued() {
        let tol = Tolerance::default();
        let c = cloud(&[&[0.0, 0.0], &[2.0, 0.0], &[5.0, 5.0]]);
        let p = c.project(&[1.0, 0.0], &tol).unwrap();
        assert_eq!(p, vec![vec![0.0, 0.0], vec![2.0, 0.0]]);
        let s = PointCloud::from_scalars(&[0.0, 2.0, 4.0], &tol).unwrap();
        assert_eq!(s.project(&[3.0], &tol).unwrap(), vec![vec![2.0], vec![4.0]]);
        assert_eq!(s.project(&[-1.0], &tol).unwrap(), vec![vec![0.0]]);
    }

    #[test]
    fn hull_drops_interior_points() {
        let tol = Tolerance::default();
        let c = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.2, 0.2]]);
        let h = c.convex_hull(&tol).unwrap();
        assert_eq!(h, cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]));
        let three = PointCloud::new(vec![vec![0.0, 0.0, 0.0]], &tol).unwrap();
        assert!(three.convex_hull(&tol).is_err());
    }

    #[test]
    fn hausdorff_brute_force() {
        let a = cloud(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = cloud(&[&[0.0, 0.0]]);
        assert_eq!(a.hausdorff(&b).unwrap(), 1.0);
        assert_eq!(a.directed_hausdorff(&a).unwrap(), 0.0);
    }
}

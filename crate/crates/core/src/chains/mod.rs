//! Metric pairs, the metric average, metric chains and the metric linear
//! combination of a finite sequence of compact sets.
//!
//! Two engines compute the chain collection `CH(A_0, …, A_N)`:
//! an exact one for interval unions ([`exact`]) and a brute-force one for
//! point clouds ([`discrete`]). On discretized interval unions the two act
//! as oracles for each other.

pub mod discrete;
pub mod exact;

pub use exact::{ChainFamily, ChainSegment, CoordMap};

use crate::error::{Error, Result};
use crate::sets::{euclid, CompactSet, Interval, IntervalUnion, PointCloud};
use crate::tolerance::Tolerance;

/// A vector `(a_0, …, a_N)` with `a_i ∈ A_i`, generated from the pivot
/// index by projecting leftwards and rightwards.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricChain {
    pub points: Vec<Vec<f64>>,
    pub pivot: usize,
}

impl MetricChain {
    /// Checks membership and the projection conditions around the pivot.
    pub fn validate(&self, sets: &[CompactSet], tol: &Tolerance) -> Result<bool> {
        if sets.len() != self.points.len() {
            return Err(Error::LengthMismatch {
                expected: sets.len(),
                got: self.points.len(),
            });
        }
        if self.pivot >= sets.len() {
            return Ok(false);
        }
        let eps = tol.tie_eps;
        for (p, s) in self.points.iter().zip(sets) {
            if s.dist(p)? > eps {
                return Ok(false);
            }
        }
        // a_{i-1} ∈ Π(a_i, A_{i-1}) for i ≤ pivot, a_{i+1} ∈ Π(a_i, A_{i+1}) for i ≥ pivot
        let nearest = |from: usize, to: usize| -> Result<bool> {
            let a = &self.points[from];
            let b = &self.points[to];
            Ok(euclid(a, b) <= sets[to].dist(a)? + eps)
        };
        for i in 1..=self.pivot {
            if !nearest(i, i - 1)? {
                return Ok(false);
            }
        }
        for i in self.pivot..sets.len() - 1 {
            if !nearest(i, i + 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether some pivot makes this vector a metric chain.
    pub fn is_chain_of(&self, sets: &[CompactSet], tol: &Tolerance) -> Result<bool> {
        for j in 0..sets.len() {
            let c = MetricChain {
                points: self.points.clone(),
                pivot: j,
            };
            if c.validate(sets, tol)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn combine(&self, coeffs: &[f64]) -> Vec<f64> {
        let dim = self.points[0].len();
        let mut out = vec![0.0; dim];
        for (l, p) in coeffs.iter().zip(&self.points) {
            for (o, v) in out.iter_mut().zip(p) {
                *o += l * v;
            }
        }
        out
    }
}

/// The collection `CH(A_0, …, A_N)` in the representation matching the sets.
#[derive(Debug, Clone)]
pub enum ChainSet {
    Exact(Vec<ChainFamily>),
    Discrete {
        sets: Vec<PointCloud>,
        chains: Vec<(usize, Vec<usize>)>,
    },
}

impl ChainSet {
    pub fn num_sets(&self) -> usize {
        match self {
            ChainSet::Exact(f) => f
                .first()
                .map_or(0, |f| f.segments.first().map_or(0, |s| s.coords.len())),
            ChainSet::Discrete { sets, .. } => sets.len(),
        }
    }

    /// Number of segments (exact) or chains (discrete).
    pub fn len(&self) -> usize {
        match self {
            ChainSet::Exact(f) => f.iter().map(|f| f.segments.len()).sum(),
            ChainSet::Discrete { chains, .. } => chains.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn families(&self) -> Option<&[ChainFamily]> {
        match self {
            ChainSet::Exact(f) => Some(f),
            ChainSet::Discrete { .. } => None,
        }
    }

    /// Explicit chains. Discrete chains are returned as is; each exact
    /// segment is sampled at its endpoints and `interior` evenly spaced
    /// interior parameters.
    pub fn sample(&self, interior: usize) -> Vec<MetricChain> {
        match self {
            ChainSet::Exact(families) => {
                let mut out = Vec::new();
                for f in families {
                    for seg in &f.segments {
                        let steps = if seg.tau.is_degenerate() { 0 } else { interior + 1 };
                        for k in 0..=steps {
                            let t = if steps == 0 {
                                seg.tau.lo()
                            } else {
                                seg.tau.lo() + seg.tau.len() * k as f64 / steps as f64
                            };
                            out.push(MetricChain {
                                points: seg.eval(t).into_iter().map(|v| vec![v]).collect(),
                                pivot: f.pivot_index,
                            });
                        }
                    }
                }
                out
            }
            ChainSet::Discrete { sets, chains } => chains
                .iter()
                .map(|(pivot, idx)| MetricChain {
                    points: idx
                        .iter()
                        .zip(sets)
                        .map(|(&k, s)| s.points()[k].clone())
                        .collect(),
                    pivot: *pivot,
                })
                .collect(),
        }
    }

    /// `{ Σ λ_i a_i : (a_0, …, a_N) ∈ CH }`.
    pub fn combine(&self, coeffs: &[f64], tol: &Tolerance) -> Result<CompactSet> {
        let n = self.num_sets();
        if coeffs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        match self {
            ChainSet::Exact(families) => Ok(CompactSet::Intervals(exact::combine_families(
                families, coeffs, tol,
            ))),
            ChainSet::Discrete { sets, chains } => {
                let dim = sets[0].dim();
                let pts = chains
                    .iter()
                    .map(|(_, idx)| {
                        let mut out = vec![0.0; dim];
                        for ((&k, s), l) in idx.iter().zip(sets).zip(coeffs) {
                            for (o, v) in out.iter_mut().zip(&s.points()[k]) {
                                *o += l * v;
                            }
                        }
                        out
                    })
                    .collect();
                CompactSet::points(pts, tol)
            }
        }
    }
}

fn check_sequence(sets: &[CompactSet]) -> Result<()> {
    let first = sets.first().ok_or(Error::EmptySet)?;
    for s in sets {
        first.same_kind(s)?;
    }
    Ok(())
}

/// The full chain collection `CH(A_0, …, A_N)`.
pub fn metric_chains(sets: &[CompactSet], tol: &Tolerance) -> Result<ChainSet> {
    tol.validate()?;
    check_sequence(sets)?;
    match &sets[0] {
        CompactSet::Intervals(_) => {
            let unions: Vec<IntervalUnion> = sets
                .iter()
                .map(|s| s.as_intervals().cloned().expect("kind checked"))
                .collect();
            Ok(ChainSet::Exact(exact::chain_families(&unions, tol)))
        }
        CompactSet::Cloud(_) => {
            let clouds: Vec<PointCloud> = sets
                .iter()
                .map(|s| s.as_cloud().cloned().expect("kind checked"))
                .collect();
            let chains = discrete::chain_indices(&clouds, tol);
            Ok(ChainSet::Discrete { sets: clouds, chains })
        }
    }
}

/// Metric linear combination `⊕ λ_i A_i`.
pub fn metric_linear_combination(coeffs: &[f64], sets: &[CompactSet], tol: &Tolerance) -> Result<CompactSet> {
    if coeffs.len() != sets.len() {
        return Err(Error::LengthMismatch {
            expected: sets.len(),
            got: coeffs.len(),
        });
    }
    metric_chains(sets, tol)?.combine(coeffs, tol)
}

/// Metric average `A ⊕_t B = { t·a + (1−t)·b : (a, b) ∈ Π(A, B) }`.
pub fn metric_average(a: &CompactSet, b: &CompactSet, t: f64, tol: &Tolerance) -> Result<CompactSet> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    metric_linear_combination(&[t, 1.0 - t], &[a.clone(), b.clone()], tol)
}

/// Which projection condition makes `(a, b)` a metric pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `a ∈ Π_A(b)`
    AProjectsFromB,
    /// `b ∈ Π_B(a)`
    BProjectsFromA,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricPair {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub witness: Witness,
}

/// A segment of metric pairs `τ ↦ (a(τ), b(τ))` over interval unions.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSegment {
    pub tau: Interval,
    pub a: CoordMap,
    pub b: CoordMap,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairSet {
    Segments(Vec<PairSegment>),
    Pairs(Vec<MetricPair>),
}

/// The pair set `Π(A, B)`.
pub fn metric_pairs(a: &CompactSet, b: &CompactSet, tol: &Tolerance) -> Result<PairSet> {
    let sets = [a.clone(), b.clone()];
    let chains = metric_chains(&sets, tol)?;
    match chains {
        ChainSet::Exact(families) => {
            let mut out = Vec::new();
            for f in families {
                for seg in f.segments {
                    let (ca, cb) = (seg.coords[0], seg.coords[1]);
                    let witness = if ca == cb {
                        Witness::Both
                    } else if f.pivot_index == 0 {
                        Witness::BProjectsFromA
                    } else {
                        Witness::AProjectsFromB
                    };
                    out.push(PairSegment {
                        tau: seg.tau,
                        a: ca,
                        b: cb,
                        witness,
                    });
                }
            }
            Ok(PairSet::Segments(out))
        }
        ChainSet::Discrete { .. } => {
            let mut out = Vec::new();
            for chain in chains.sample(0) {
                let (pa, pb) = (&chain.points[0], &chain.points[1]);
                let d = euclid(pa, pb);
                let a_ok = d <= a.dist(pb)? + tol.tie_eps;
                let b_ok = d <= b.dist(pa)? + tol.tie_eps;
                let witness = match (a_ok, b_ok) {
                    (true, true) => Witness::Both,
                    (true, false) => Witness::AProjectsFromB,
                    _ => Witness::BProjectsFromA,
                };
                out.push(MetricPair {
                    a: pa.clone(),
                    b: pb.clone(),
                    witness,
                });
            }
            Ok(PairSet::Pairs(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(pairs: &[(f64, f64)]) -> CompactSet {
        CompactSet::intervals(pairs).unwrap()
    }

    fn pts(vals: &[f64]) -> CompactSet {
        CompactSet::Cloud(PointCloud::from_scalars(vals, &Tolerance::default()).unwrap())
    }

    #[test]
    fn metric_average_examples() {
        let tol = Tolerance::default();
        let a = iv(&[(0.0, 2.0)]);
        let b = iv(&[(1.0, 1.0)]);
        assert_eq!(metric_average(&a, &b, 0.5, &tol).unwrap(), iv(&[(0.5, 1.5)]));
        assert_eq!(metric_average(&a, &b, 1.0, &tol).unwrap(), a);
        assert_eq!(metric_average(&a, &b, 0.0, &tol).unwrap(), b);
        let c = iv(&[(0.0, 1.0)]);
        let d = iv(&[(4.0, 5.0)]);
        assert_eq!(metric_average(&c, &d, 0.5, &tol).unwrap(), iv(&[(2.0, 3.0)]));
        assert!(matches!(
            metric_average(&c, &d, 1.5, &tol),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn metric_pairs_examples() {
        let tol = Tolerance::default();
        let a = iv(&[(0.0, 2.0)]);
        let b = iv(&[(1.0, 1.0)]);
        let PairSet::Segments(segs) = metric_pairs(&a, &b, &tol).unwrap() else {
            panic!("exact engine expected")
        };
        for s in &segs {
            for t in [s.tau.lo(), s.tau.hi()] {
                assert_eq!(s.b.eval(t), 1.0);
                assert!((0.0..=2.0).contains(&s.a.eval(t)));
            }
        }
        let covered: Vec<f64> = segs
            .iter()
            .flat_map(|s| [s.a.eval(s.tau.lo()), s.a.eval(s.tau.hi())])
            .collect();
        assert!(covered.contains(&0.0) && covered.contains(&2.0));

        let PairSet::Pairs(pairs) = metric_pairs(&pts(&[0.0, 10.0]), &pts(&[4.0]), &tol).unwrap() else {
            panic!("discrete engine expected")
        };
        let got: Vec<(f64, f64)> = pairs.iter().map(|p| (p.a[0], p.b[0])).collect();
        assert_eq!(got, vec![(0.0, 4.0), (10.0, 4.0)]);
        assert_eq!(pairs[0].witness, Witness::Both);
        assert_eq!(pairs[1].witness, Witness::BProjectsFromA);
    }

    #[test]
    fn self_pairing_is_diagonal() {
        let tol = Tolerance::default();
        let a = iv(&[(0.0, 1.0), (3.0, 4.0)]);
        let PairSet::Segments(segs) = metric_pairs(&a, &a, &tol).unwrap() else {
            panic!()
        };
        assert!(segs.iter().all(|s| s.a == s.b && s.witness == Witness::Both));
    }

    #[test]
    fn chain_example_pivot_sweep() {
        let tol = Tolerance::default();
        let sets = [iv(&[(0.0, 0.0)]), iv(&[(0.0, 1.0)]), iv(&[(2.0, 2.0)])];
        let ch = metric_chains(&sets, &tol).unwrap();
        for c in ch.sample(3) {
            assert!(c.validate(&sets, &tol).unwrap());
            assert_eq!(c.points[0], vec![0.0]);
            assert_eq!(c.points[2], vec![2.0]);
        }
        let r = ch.combine(&[1.0 / 3.0; 3], &tol).unwrap();
        let r = r.as_intervals().unwrap();
        assert!((r.min() - 2.0 / 3.0).abs() < 1e-15 && (r.max() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_set_chains_are_points() {
        let tol = Tolerance::default();
        let a = iv(&[(2.0, 4.0), (6.0, 8.0)]);
        let r = metric_linear_combination(&[1.0], std::slice::from_ref(&a), &tol).unwrap();
        assert_eq!(r, a);
    }

    #[test]
    fn errors() {
        let tol = Tolerance::default();
        let a = iv(&[(0.0, 1.0)]);
        assert!(matches!(
            metric_linear_combination(&[1.0, 2.0], std::slice::from_ref(&a), &tol),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(metric_chains(&[], &tol).unwrap_err(), Error::EmptySet);
        assert_eq!(
            metric_chains(&[a, pts(&[0.0])], &tol).unwrap_err(),
            Error::KindMismatch
        );
    }

    #[test]
    fn lagrange_example_set() {
        let tol = Tolerance::default();
        let sets = [iv(&[(2.0, 8.0)]), iv(&[(5.0, 5.0)]), iv(&[(5.0, 5.0)])];
        let r = metric_linear_combination(&[-1.0 / 3.0, 1.0, 1.0 / 3.0], &sets, &tol).unwrap();
        let r = r.as_intervals().unwrap();
        assert!((r.min() - 4.0).abs() < 1e-12 && (r.max() - 6.0).abs() < 1e-12);
    }
}

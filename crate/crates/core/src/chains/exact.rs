//! Exact enumeration of metric chains for interval unions.
//!
//! Chains with pivot `j` are parameterized by the pivot coordinate `τ`,
//! which ranges over one component of `A_j`. Projecting onto a neighbour
//! set is either the identity (inside a component) or a constant (clamped
//! to a component endpoint), so every coordinate is piecewise affine in
//! `τ` with slope 0 or 1. A [`ChainSegment`] is a closed `τ`-interval on
//! which every coordinate is a single affine map. At Voronoi midpoints of
//! a gap the segment is split into two closed pieces sharing the midpoint,
//! so both projections are realized there.

use rayon::prelude::*;

use crate::sets::{Interval, IntervalUnion};
use crate::tolerance::Tolerance;

/// Affine coordinate `a(τ) = offset + slope·τ` with `slope ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordMap {
    pub offset: f64,
    pub slope: f64,
}

impl CoordMap {
    pub const IDENTITY: CoordMap = CoordMap {
        offset: 0.0,
        slope: 1.0,
    };

    pub fn constant(value: f64) -> Self {
        Self {
            offset: value,
            slope: 0.0,
        }
    }

    #[inline]
    pub fn eval(&self, tau: f64) -> f64 {
        self.offset + self.slope * tau
    }

    #[inline]
    pub fn is_constant(&self) -> bool {
        self.slope == 0.0
    }
}

/// A continuum of metric chains `τ ↦ (a_0(τ), …, a_N(τ))` for `τ` in a
/// closed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSegment {
    pub tau: Interval,
    pub coords: Vec<CoordMap>,
}

impl ChainSegment {
    pub fn eval(&self, tau: f64) -> Vec<f64> {
        self.coords.iter().map(|c| c.eval(tau)).collect()
    }

    /// Image of `τ ↦ Σ λ_i a_i(τ)` over the segment. The map is affine in
    /// `τ`, so the image is the interval between its endpoint values.
    pub fn combine(&self, coeffs: &[f64]) -> Interval {
        let (mut offset, mut slope) = (0.0, 0.0);
        for (l, c) in coeffs.iter().zip(&self.coords) {
            if *l != 0.0 {
                offset += l * c.offset;
                slope += l * c.slope;
            }
        }
        let a = offset + slope * self.tau.lo();
        let b = offset + slope * self.tau.hi();
        Interval::spanning(a, b)
    }
}

/// All chains generated by one pivot component.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFamily {
    pub pivot_index: usize,
    pub pivot_component: Interval,
    pub segments: Vec<ChainSegment>,
}

impl ChainFamily {
    /// Sorted segment endpoints in pivot coordinates.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut bp: Vec<f64> = self
            .segments
            .iter()
            .flat_map(|s| [s.tau.lo(), s.tau.hi()])
            .collect();
        bp.sort_by(f64::total_cmp);
        bp.dedup();
        bp
    }
}

#[derive(Debug, Clone, Copy)]
enum RegionMap {
    Identity,
    Constant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TieSide {
    None,
    // region's upper end is a gap midpoint
    Upper,
    // region's lower end is a gap midpoint
    Lower,
}

/// Splits the value range of `g` over `tau` by the projection regions of
/// `target` and returns the resulting pieces with their new coordinate.
fn project_affine(
    g: CoordMap,
    tau: Interval,
    target: &IntervalUnion,
    tol: &Tolerance,
) -> Vec<(Interval, CoordMap)> {
    if g.is_constant() || tau.is_degenerate() {
        let v = g.eval(tau.lo());
        return target
            .project(v, tol)
            .into_iter()
            .map(|p| (tau, CoordMap::constant(p)))
            .collect();
    }
    let u = g.eval(tau.lo());
    let v = g.eval(tau.hi());
    let comps = target.components();
    let mut out = Vec::new();

    let mut emit = |r0: f64, r1: f64, map: RegionMap, tie: TieSide| {
        let lo = u.max(r0);
        let hi = v.min(r1);
        if lo < hi {
            let t0 = (lo - g.offset).max(tau.lo());
            let t1 = (hi - g.offset).min(tau.hi()).max(t0);
            let coord = match map {
                RegionMap::Identity => g,
                RegionMap::Constant(c) => CoordMap::constant(c),
            };
            out.push((Interval::spanning(t0, t1), coord));
            return;
        }
        let RegionMap::Constant(c) = map else { return };
        match tie {
            TieSide::Upper if (u - r1).abs() <= tol.tie_eps => {
                out.push((Interval::spanning(tau.lo(), tau.lo()), CoordMap::constant(c)));
            }
            TieSide::Lower if (v - r0).abs() <= tol.tie_eps => {
                out.push((Interval::spanning(tau.hi(), tau.hi()), CoordMap::constant(c)));
            }
            _ => {}
        }
    };

    let first = comps[0];
    emit(
        f64::NEG_INFINITY,
        first.lo(),
        RegionMap::Constant(first.lo()),
        TieSide::None,
    );
    for (k, c) in comps.iter().enumerate() {
        emit(c.lo(), c.hi(), RegionMap::Identity, TieSide::None);
        if let Some(next) = comps.get(k + 1) {
            let m = 0.5 * (c.hi() + next.lo());
            emit(c.hi(), m, RegionMap::Constant(c.hi()), TieSide::Upper);
            emit(m, next.lo(), RegionMap::Constant(next.lo()), TieSide::Lower);
        }
    }
    let last = comps[comps.len() - 1];
    emit(
        last.hi(),
        f64::INFINITY,
        RegionMap::Constant(last.hi()),
        TieSide::None,
    );
    out
}

fn family_for(sets: &[IntervalUnion], pivot: usize, component: Interval, tol: &Tolerance) -> ChainFamily {
    let n = sets.len();
    let mut coords = vec![CoordMap::constant(f64::NAN); n];
    coords[pivot] = CoordMap::IDENTITY;
    let mut segments = vec![ChainSegment {
        tau: component,
        coords,
    }];
    let step = |segments: Vec<ChainSegment>, from: usize, to: usize| -> Vec<ChainSegment> {
        let mut next = Vec::with_capacity(segments.len());
        for seg in segments {
            for (tau, coord) in project_affine(seg.coords[from], seg.tau, &sets[to], tol) {
                let mut coords = seg.coords.clone();
                coords[to] = coord;
                next.push(ChainSegment { tau, coords });
            }
        }
        next
    };
    for i in (0..pivot).rev() {
        segments = step(segments, i + 1, i);
    }
    for i in pivot + 1..n {
        segments = step(segments, i - 1, i);
    }
    ChainFamily {
        pivot_index: pivot,
        pivot_component: component,
        segments,
    }
}

/// Every metric chain of `sets`, grouped by pivot component.
pub fn chain_families(sets: &[IntervalUnion], tol: &Tolerance) -> Vec<ChainFamily> {
    let jobs: Vec<(usize, Interval)> = sets
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.components().iter().map(move |c| (j, *c)))
        .collect();
    jobs.into_par_iter()
        .map(|(j, c)| family_for(sets, j, c, tol))
        .collect()
}

/// `⊕ λ_i A_i` from precomputed chain families.
pub fn combine_families(families: &[ChainFamily], coeffs: &[f64], tol: &Tolerance) -> IntervalUnion {
    let raw: Vec<Interval> = families
        .iter()
        .flat_map(|f| f.segments.iter().map(|s| s.combine(coeffs)))
        .collect();
    IntervalUnion::normalize(raw, tol).expect("every pivot yields at least one chain")
}

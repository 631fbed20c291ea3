//! Brute-force metric chains over finite point clouds.
//!
//! For every pivot point the chain is grown leftwards and rightwards by
//! nearest-point projection, branching on every tie. Left and right
//! continuations are independent given the pivot, so the chains through a
//! pivot are their cartesian product.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::sets::PointCloud;
use crate::tolerance::Tolerance;

/// Chains as index tuples into the clouds, canonically sorted.
pub fn chain_indices(sets: &[PointCloud], tol: &Tolerance) -> Vec<(usize, Vec<usize>)> {
    let jobs: Vec<(usize, usize)> = sets
        .iter()
        .enumerate()
        .flat_map(|(j, s)| (0..s.len()).map(move |p| (j, p)))
        .collect();
    let per_pivot: Vec<Vec<(usize, Vec<usize>)>> = jobs
        .into_par_iter()
        .map(|(j, p)| {
            let left = grow(sets, j, p, Direction::Left, tol);
            let right = grow(sets, j, p, Direction::Right, tol);
            let mut chains = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    // l holds indices j-1, …, 0; r holds j+1, …, N
                    let mut idx = Vec::with_capacity(sets.len());
                    idx.extend(l.iter().rev());
                    idx.push(p);
                    idx.extend(r.iter());
                    chains.push((j, idx));
                }
            }
            chains
        })
        .collect();

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (pivot, idx) in per_pivot.into_iter().flatten() {
        if seen.insert(idx.clone()) {
            out.push((pivot, idx));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

#[derive(Clone, Copy)]
enum Direction {
    Left,
    Right,
}

/// All projection paths from `(j, p)` to the end of the sequence in the
/// given direction; each path lists indices in visiting order.
fn grow(sets: &[PointCloud], j: usize, p: usize, dir: Direction, tol: &Tolerance) -> Vec<Vec<usize>> {
    let order: Vec<usize> = match dir {
        Direction::Left => (0..j).rev().collect(),
        Direction::Right => (j + 1..sets.len()).collect(),
    };
    let mut paths: Vec<(usize, usize, Vec<usize>)> = vec![(j, p, Vec::new())];
    for &i in &order {
        let mut next = Vec::with_capacity(paths.len());
        for (from_set, from_idx, path) in paths {
            let a = &sets[from_set].points()[from_idx];
            for q in sets[i].project_indices(a, tol) {
                let mut path = path.clone();
                path.push(q);
                next.push((i, q, path));
            }
        }
        paths = next;
    }
    paths.into_iter().map(|(_, _, path)| path).collect()
}

//! Brute-force reference: the affine symmetric group enumerated by breadth
//! first search over right multiplication by simple reflections.
//!
//! Nothing here uses abacus coordinates or polyhedra, so it serves as an
//! independent check of the cell-based pipeline.

use std::collections::HashSet;

use crate::affine::{AffinePermutation, Pattern};

/// `layers[l]` holds every element at distance `l` from the identity in the
/// Cayley graph, for `l <= max_len`.
pub fn elements_by_length(n: usize, max_len: usize) -> Vec<Vec<AffinePermutation>> {
    let id = AffinePermutation::identity(n);
    let mut seen: HashSet<AffinePermutation> = HashSet::from([id.clone()]);
    let mut layers = vec![vec![id]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            for i in 0..n {
                let u = w.times_simple(i);
                if seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    layers
}

pub fn length_counts(n: usize, max_len: usize) -> Vec<u64> {
    elements_by_length(n, max_len).iter().map(|l| l.len() as u64).collect()
}

/// Per-length counts of a brute-force scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub total: Vec<u64>,
    pub avoiders: Vec<u64>,
    pub containers: Vec<u64>,
}

/// Count avoiders and containers of `p` layer by layer using the direct
/// containment search.
pub fn avoidance_counts(p: &Pattern, n: usize, max_len: usize) -> OracleCounts {
    let layers = elements_by_length(n, max_len);
    let mut out = OracleCounts {
        total: Vec::new(),
        avoiders: Vec::new(),
        containers: Vec::new(),
    };
    for layer in &layers {
        let avoid = layer.iter().filter(|w| w.avoids(p)).count() as u64;
        out.total.push(layer.len() as u64);
        out.avoiders.push(avoid);
        out.containers.push(layer.len() as u64 - avoid);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_layers() {
        assert_eq!(length_counts(2, 5), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(length_counts(3, 6), vec![1, 3, 6, 9, 12, 15, 18]);
    }

    #[test]
    fn bfs_distance_is_coxeter_length() {
        for (l, layer) in elements_by_length(3, 8).iter().enumerate() {
            for w in layer {
                assert_eq!(w.coxeter_length(), l as u64, "{w}");
            }
        }
    }

    #[test]
    fn simple_reflections_contain_an_inversion() {
        let counts = avoidance_counts(&"21".parse().unwrap(), 3, 1);
        assert_eq!(counts.containers, vec![0, 3]);
    }
}

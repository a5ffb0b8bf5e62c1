//! Cross-checks of the cell pipeline against brute force.

use affine_avoid_core::abacus::{cells, cone_coords, cone_weights};
use affine_avoid_core::enumeration::{container_counts, pattern_series};
use affine_avoid_core::oracle::{avoidance_counts, elements_by_length};
use affine_avoid_core::{AffinePermutation, Pattern};
use num_bigint::BigInt;

/// Shi's formula: the sum over `i < j` in the window of
/// `|floor((w(j) - w(i)) / n)|`.
fn shi_length(w: &AffinePermutation) -> u64 {
    let n = w.n() as i64;
    let win = w.window();
    let mut total = 0;
    for i in 0..win.len() {
        for j in i + 1..win.len() {
            total += (win[j] - win[i]).div_euclid(n).unsigned_abs();
        }
    }
    total
}

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

#[test]
fn shi_formula_matches_length_and_distance() {
    for n in 2..=5 {
        for (l, layer) in elements_by_length(n, 8).iter().enumerate() {
            for w in layer {
                assert_eq!(shi_length(w), l as u64, "{w}");
                assert_eq!(w.coxeter_length(), l as u64, "{w}");
            }
        }
    }
}

#[test]
fn cell_elements_have_graded_length() {
    for n in 2..=4 {
        let weights = cone_weights(n);
        for cell in cells(n) {
            for t in [vec![0; n - 1], vec![1; n - 1], (0..n as u64 - 1).collect::<Vec<_>>()] {
                let w = cell.element(&t).unwrap();
                let graded: u64 = cell.length_constant() + t.iter().zip(&weights).map(|(a, b)| a * b).sum::<u64>();
                assert_eq!(shi_length(&w), graded, "{cell} {t:?}");
            }
        }
    }
}

#[test]
fn container_counts_match_at_n4() {
    for s in ["321", "2431", "3412", "4321", "1324"] {
        let p = pat(s);
        let oracle = avoidance_counts(&p, 4, 9);
        assert_eq!(container_counts(&p, 4, 9), oracle.containers, "{s}");
    }
}

#[test]
fn fitted_series_match_brute_force() {
    for (s, n, len) in [
        ("321", 3, 16),
        ("2431", 3, 16),
        ("4321", 3, 16),
        ("321", 4, 10),
        ("2431", 4, 10),
    ] {
        let p = pat(s);
        let oracle = avoidance_counts(&p, n, len);
        let want: Vec<BigInt> = oracle.avoiders.iter().map(|&a| BigInt::from(a)).collect();
        let series = pattern_series(&p, n).unwrap();
        assert_eq!(series.avoiders.expand(len), want, "{s} at n = {n}");
    }
}

#[test]
fn no_affine_permutation_of_size_two_has_three_strands() {
    let oracle = avoidance_counts(&pat("321"), 2, 12);
    assert_eq!(oracle.avoiders, oracle.total);
}

/// Window boundaries between `w(i + 1)` and `w(i + jn)` for the largest
/// `j >= 0` with `w(i + 1) > w(i + jn)`; zero when only `j = 0` qualifies.
fn boundary_count(w: &AffinePermutation, i: i64) -> u64 {
    let n = w.n() as i64;
    let mut j = 0;
    while w.value_at(i + 1) > w.value_at(i + (j + 1) * n) {
        j += 1;
    }
    if j == 0 {
        return 0;
    }
    let window = |pos: i64| (pos - 1).div_euclid(n);
    (window(i + j * n) - window(i + 1)) as u64
}

#[test]
fn cone_coordinates_count_window_boundaries() {
    let worked = AffinePermutation::new(vec![-9, 4, 11]).unwrap();
    assert_eq!((boundary_count(&worked, 1), boundary_count(&worked, 2)), (4, 2));
    for n in 3..=4 {
        for w in elements_by_length(n, 12).iter().flatten().filter(|w| w.is_sorted()) {
            let t = cone_coords(w).unwrap().t;
            let counted: Vec<u64> = (1..n as i64).map(|i| boundary_count(w, i)).collect();
            assert_eq!(t, counted, "{w}");
        }
    }
}

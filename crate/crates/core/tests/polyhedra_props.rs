//! Randomized checks of elimination, generators and counting against
//! brute-force oracles.

use affine_avoid_core::polyhedra::{Constraint, Grading, Polyhedron};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const DIM: usize = 3;
const BOX: i64 = 4;

fn rows() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, DIM), -4i64..=4), 1..5)
}

/// Random rows inside the box `0 <= x <= BOX`, so the polyhedron is bounded.
fn boxed(rows: &[(Vec<i64>, i64)]) -> Polyhedron {
    let mut p = Polyhedron::with_dim(DIM);
    for i in 0..DIM {
        let mut e = vec![0; DIM];
        e[i] = 1;
        p.push(Constraint::ge(&e, 0)).unwrap();
        p.push(Constraint::le(&e, BOX)).unwrap();
    }
    for (a, b) in rows {
        p.push(Constraint::ge(a, *b)).unwrap();
    }
    p
}

fn solve3(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..DIM {
        let piv = (col..DIM).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = BigRational::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..DIM {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[DIM].clone()).collect())
}

/// Vertices of a bounded polyhedron by trying every triple of constraints.
fn brute_vertices(p: &Polyhedron) -> Vec<Vec<BigRational>> {
    let cs = p.constraints();
    let mut out = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            for k in j + 1..cs.len() {
                let m: Vec<Vec<BigRational>> = [i, j, k]
                    .iter()
                    .map(|&r| cs[r].coeffs().iter().map(|c| BigRational::from(c.clone())).collect())
                    .collect();
                let rhs: Vec<BigRational> = [i, j, k]
                    .iter()
                    .map(|&r| BigRational::from(cs[r].bound().clone()))
                    .collect();
                if let Some(x) = solve3(&m, &rhs) {
                    if p.contains_rational(&x) && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

fn lattice(p: &Polyhedron) -> Vec<Vec<i64>> {
    let mut pts = Vec::new();
    for x in 0..=BOX {
        for y in 0..=BOX {
            for z in 0..=BOX {
                if p.contains_i64(&[x, y, z]) {
                    pts.push(vec![x, y, z]);
                }
            }
        }
    }
    pts
}

proptest! {
    #[test]
    fn elimination_preserves_rational_feasibility(r in rows()) {
        let p = boxed(&r);
        let feasible = !brute_vertices(&p).is_empty();
        prop_assert_eq!(p.is_rationally_feasible(), feasible);
        for v in 0..DIM {
            prop_assert_eq!(p.eliminate(&[v]).is_rationally_feasible(), feasible);
        }
        let all = p.eliminate(&[0, 1, 2]);
        prop_assert_eq!(all.constraints().iter().any(|c| c.is_contradiction()), !feasible);
    }

    #[test]
    fn projections_contain_shadows(r in rows()) {
        let p = boxed(&r);
        let q = p.eliminate(&[2]);
        for x in lattice(&p) {
            let shadow: Vec<BigInt> = vec![x[0].into(), x[1].into(), 0.into()];
            prop_assert!(q.constraints().iter().all(|c| c.satisfied_by(&shadow)));
        }
    }

    #[test]
    fn generators_match_brute_vertices(r in rows()) {
        let p = boxed(&r);
        let mut want = brute_vertices(&p);
        want.sort();
        let g = p.vertices_and_rays().unwrap();
        let mut got = g.vertices.clone();
        got.sort();
        prop_assert_eq!(got, want);
        prop_assert!(g.rays.is_empty());
    }

    #[test]
    fn integer_search_matches_scan(r in rows()) {
        let p = boxed(&r);
        let pts = lattice(&p);
        prop_assert_eq!(p.integer_point_exists(), !pts.is_empty());
        if let Some(x) = p.find_integer_point() {
            prop_assert!(p.contains(&x));
        }
    }

    #[test]
    fn orthant_counts_are_geometric(lower in prop::collection::vec(0i64..3, 2), weights in prop::collection::vec(1i64..4, 2)) {
        let mut p = Polyhedron::with_dim(2);
        p.push(Constraint::ge(&[1, 0], lower[0])).unwrap();
        p.push(Constraint::ge(&[0, 1], lower[1])).unwrap();
        let got = p.count_by_weight(&Grading { weights: weights.clone(), constant: 0 }, 15).unwrap();
        let mut want = vec![0u64; 16];
        for a in lower[0]..=15 {
            for b in lower[1]..=15 {
                let w = a * weights[0] + b * weights[1];
                if w <= 15 {
                    want[w as usize] += 1;
                }
            }
        }
        prop_assert_eq!(got, want);
    }
}

//! Invariants over randomly drawn cells, coordinates and patterns.

use affine_avoid_core::abacus::{
    cells, cone_coords, cone_weights, enumerate_biases, gap_vector, AbacusCoords, GapVector,
};
use affine_avoid_core::geometry::{build_system, member, strand_assignments};
use affine_avoid_core::{AffinePermutation, Pattern};
use proptest::prelude::*;

fn gaps() -> impl Strategy<Value = Vec<u64>> {
    (2usize..7).prop_flat_map(|n| prop::collection::vec(0u64..6, n - 1))
}

fn patterns() -> impl Strategy<Value = Pattern> {
    prop::sample::select(vec!["21", "321", "2431", "24351", "3412", "4321", "1324", "3142"])
        .prop_map(|s| s.parse::<Pattern>().unwrap())
}

proptest! {
    #[test]
    fn gap_vector_round_trip(g in gaps()) {
        let gv = GapVector::new(g.clone()).unwrap();
        let u = gv.to_affine();
        prop_assert!(u.is_sorted());
        let back = gap_vector(&u).unwrap();
        prop_assert_eq!(back.gaps(), &g[..]);
        prop_assert_eq!(gv.coxeter_length(), u.coxeter_length());
    }

    #[test]
    fn cone_coords_round_trip(n in 2usize..6, pick in any::<prop::sample::Index>(), t in prop::collection::vec(0u64..5, 5)) {
        let biases = enumerate_biases(n);
        let bias = pick.get(&biases).clone();
        let coords = AbacusCoords::new(bias, t[..n - 1].to_vec()).unwrap();
        let u = coords.to_affine();
        prop_assert_eq!(cone_coords(&u).unwrap(), coords);
    }

    #[test]
    fn length_is_graded_plus_inversions(n in 2usize..5, pick in any::<prop::sample::Index>(), t in prop::collection::vec(0u64..5, 4)) {
        let all = cells(n);
        let cell = pick.get(&all);
        let t = &t[..n - 1];
        let w = cell.element(t).unwrap();
        let graded: u64 = t.iter().zip(cone_weights(n)).map(|(a, b)| a * b).sum();
        prop_assert_eq!(w.coxeter_length(), cell.bias.length_offset() + graded + cell.flattening.inversions());
        let (u, v) = w.parabolic_decompose();
        prop_assert_eq!(&v, &cell.flattening);
        prop_assert_eq!(AffinePermutation::compose_parabolic(&u, &v).unwrap(), w);
    }

    #[test]
    fn found_instances_are_instances(n in 2usize..5, pick in any::<prop::sample::Index>(), t in prop::collection::vec(0u64..4, 4), p in patterns()) {
        let all = cells(n);
        let w = pick.get(&all).element(&t[..n - 1]).unwrap();
        if let Some(inst) = w.contains_pattern(&p) {
            prop_assert!(inst.is_instance_of(&w, &p));
            prop_assert!(inst.translated(3, n).is_instance_of(&w, &p));
        }
    }

    #[test]
    fn containment_matches_cell_membership(pick in any::<prop::sample::Index>(), t in prop::collection::vec(0u64..7, 2), p in patterns()) {
        let all = cells(3);
        let cell = pick.get(&all);
        let w = cell.element(&t).unwrap();
        let (u, v) = w.parabolic_decompose();
        let coords = cone_coords(&u).unwrap();
        let via_cells = strand_assignments(&p, 3).iter().any(|pi| member(&coords, &p, pi, &v).unwrap());
        prop_assert_eq!(w.contains_pattern(&p).is_some(), via_cells);
    }

    #[test]
    fn integer_and_rational_projections_agree(pick in any::<prop::sample::Index>(), t in prop::collection::vec(0i64..7, 2), p in patterns()) {
        let all = cells(3);
        let cell = pick.get(&all);
        let coords = AbacusCoords::new(cell.bias.clone(), t.iter().map(|&x| x as u64).collect()).unwrap();
        for pi in strand_assignments(&p, 3) {
            let projected = build_system(&p, &pi, &cell.bias, &cell.flattening).unwrap().project_t();
            prop_assert_eq!(projected.contains_i64(&t), member(&coords, &p, &pi, &cell.flattening).unwrap(), "{} {}", pi, cell);
        }
    }
}

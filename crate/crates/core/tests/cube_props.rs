mod common;

use nbcube::cube::{build_cube, check_02_property, common_neighbor_count, counting_sweep, CubeSpec, SubcubePartition};
use proptest::prelude::*;

#[test]
fn cube_matches_digit_rule() {
    for (n, k) in [(1, 2), (1, 7), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 2), (2, 11)] {
        let spec = CubeSpec::new(n, k).unwrap();
        let g = build_cube(&spec);
        let naive = common::naive_torus(n, k);
        assert_eq!(common::adjacency(&g), common::adjacency(&naive), "{spec}");
    }
}

#[test]
fn common_neighbor_lemma_matches_oracle() {
    for (n, k) in [(2, 3), (3, 3), (2, 4), (3, 2), (4, 2), (2, 5)] {
        let spec = CubeSpec::new(n, k).unwrap();
        let g = build_cube(&spec);
        let report = check_02_property(&spec);
        assert!(report.passed(), "{spec}");
        for x in 0..spec.vertex_count() {
            for y in x + 1..spec.vertex_count() {
                let c = common::brute_common_neighbors(x, y, n, k);
                assert_eq!(common_neighbor_count(&g, x, y).unwrap(), c);
                if k == 2 || k == 4 {
                    assert!(c == 0 || c == 2);
                }
                if k == 3 {
                    assert_eq!(c == 1, common::torus_adjacent(x, y, n, k));
                }
            }
        }
    }
}

#[test]
fn five_ary_single_common_neighbors_are_at_distance_two() {
    let spec = CubeSpec::new(2, 5).unwrap();
    let report = check_02_property(&spec);
    assert!(report.nonadjacent_with_one > 0);
    assert_eq!(report.adjacent_with_one, 0);
}

#[test]
fn counting_sweep_small() {
    let spec = CubeSpec::new(3, 3).unwrap();
    let sweep = counting_sweep(&spec, 1).unwrap();
    assert!(sweep.failures.is_empty());
    assert_eq!(sweep.fault_sets, 1 + 27);
}

proptest! {
    #[test]
    fn outer_neighbors_differ_only_in_split_digit(n in 2usize..5, k in 2usize..6, v in any::<usize>(), d in 0usize..4, j in 0usize..6) {
        let spec = CubeSpec::new(n, k).unwrap();
        let (v, d, j) = (v % spec.vertex_count(), d % n, j % k);
        let p = SubcubePartition::new(&spec, d).unwrap();
        let w = p.outer(v, j);
        prop_assert_eq!(p.block_of(w), j);
        let (dv, dw) = (common::digits(v, n, k), common::digits(w, n, k));
        for i in 0..n {
            if i != d {
                prop_assert_eq!(dv[i], dw[i]);
            }
        }
        prop_assert_eq!(p.project(v), p.project(w));
    }

    #[test]
    fn labels_round_trip(n in 1usize..5, k in 2usize..14, v in any::<usize>()) {
        let spec = CubeSpec::new(n, k).unwrap();
        let v = v % spec.vertex_count();
        prop_assert_eq!(spec.parse_vertex(&spec.label(v)).unwrap(), v);
    }
}

//! Randomized and exhaustive checks of the valid-move constructions.

use std::sync::LazyLock;

use proptest::prelude::*;
use sigma_core::bits;
use sigma_core::constructive::{
    make_states_differ, path_normalize, PendantPlant, realize_up_to_outside, solve_planted_tree, solve_rake, solve_tree,
    PlantedPartition, PlantedSetup, RakeView,
};
use sigma_core::moves::{apply_move_set, move_set_effect, replay};
use sigma_core::search::{ml_regular, ml_table};
use sigma_core::survey::{enumerate_planted, enumerate_trees};
use sigma_core::{family, Configuration, Error, Graph};

/// Random recursive tree: vertex i > 0 hangs below `parents[i-1] % i`.
fn tree_from(parents: &[usize], loops: u64) -> Graph {
    let n = parents.len() + 1;
    let edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p % (i + 1), i + 1)).collect();
    Graph::from_edges(n, &edges, &[]).unwrap().with_loops(loops)
}

static PLANTED: LazyLock<Vec<(Graph, PendantPlant)>> = LazyLock::new(|| enumerate_planted(9).unwrap());

fn mask(n: usize, b: u64) -> u64 {
    b & bits::full(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tree_certificates_meet_ml_plus_two(parents in prop::collection::vec(any::<usize>(), 0..16), l in any::<u64>(), xb in any::<u64>()) {
        let g = tree_from(&parents, l);
        let x = Configuration::new(g.n(), mask(g.n(), xb)).unwrap();
        let c = solve_tree(&g, &x).unwrap();
        prop_assert_eq!(replay(&g, &x, &c.sequence, true).unwrap(), c.final_config);
        prop_assert_eq!(c.ml, ml_regular(&g, &x, 24).unwrap().value);
        prop_assert!(c.final_light() <= c.ml + 2);
    }

    #[test]
    fn path_normalize_leaves_one_light(n in 1usize..30, l in any::<u64>(), xb in any::<u64>()) {
        let g = family::path(n).unwrap().with_loops(l);
        let x = Configuration::new(n, mask(n, xb)).unwrap();
        let path: Vec<usize> = (0..n).collect();
        let (seq, z) = path_normalize(&g, &path, &x).unwrap();
        prop_assert!(z.light_number() <= 1);
        prop_assert!(!seq.vertices().contains(&0));
        prop_assert_eq!(replay(&g, &x, &seq, true).unwrap(), z);
    }

    #[test]
    fn differ_splits_states(parents in prop::collection::vec(any::<usize>(), 1..12), l in any::<u64>(), xb in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let g = tree_from(&parents, l);
        let n = g.n();
        let (a, b) = (a % n, b % n);
        let x = Configuration::new(n, mask(n, xb)).unwrap();
        let r = make_states_differ(&g, &x, a, b);
        if x.is_zero() && x.get(a) == x.get(b) || g.nbhd(a) == g.nbhd(b) && x.get(a) == x.get(b) {
            prop_assert!(matches!(r, Err(Error::Precondition(_))));
        } else {
            let (seq, y) = r.unwrap();
            prop_assert_ne!(y.get(a), y.get(b));
            prop_assert_eq!(replay(&g, &x, &seq, true).unwrap(), y);
        }
    }

    #[test]
    fn rake_certificates_meet_ml_plus_one(n in 1usize..8, k in 1usize..8, l in any::<u64>(), xb in any::<u64>()) {
        let g = family::rake(n, k).unwrap().with_loops(l);
        let x = Configuration::new(n + k, mask(n + k, xb)).unwrap();
        let c = solve_rake(&g, &RakeView::standard(n, k), &x).unwrap();
        prop_assert!(c.final_light() <= c.ml + 1);
        prop_assert_eq!(replay(&g, &x, &c.sequence, true).unwrap(), c.final_config);
    }

    #[test]
    fn realize_contract_on_planted_shapes(pick in any::<usize>(), l in any::<u64>(), xb in any::<u64>(), mb in any::<u64>()) {
        let (g, plant) = &PLANTED[pick % PLANTED.len()];
        let g = g.with_loops(l);
        let n = g.n();
        let setup = PlantedSetup { a: plant.p1[0], b: plant.p2[0], c: plant.v, s: plant.core_mask(&g) & !(1 << plant.v) };
        let x = Configuration::new(n, mask(n, xb)).unwrap();
        let y = apply_move_set(&g, &x, mask(n, mb)).unwrap();
        match realize_up_to_outside(&g, &x, &setup, &y) {
            Ok((seq, r)) => {
                prop_assert_eq!(r & setup.zone(), 0);
                let got = replay(&g, &x, &seq, true).unwrap();
                prop_assert_eq!(got.bits(), y.bits() ^ move_set_effect(&g, r));
            }
            Err(Error::Precondition(_)) => {
                prop_assert!(x.get(setup.a) == x.get(setup.b));
                prop_assert!(x.is_zero() || g.nbhd(setup.a) == g.nbhd(setup.b));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

/// Trees with at least three branch vertices, every pivot, small cores
/// glued at the pivot, loops on the core, every configuration.
#[test]
fn planted_trees_meet_ml_plus_two() {
    let cores: [&[(usize, usize)]; 3] = [&[(0, 1)], &[(0, 1), (1, 2)], &[(0, 1), (1, 2), (0, 2)]];
    let mut checked = 0;
    for n in 8..=9 {
        for t in enumerate_trees(n).unwrap() {
            if t.branch_vertices().count_ones() < 3 {
                continue;
            }
            for v in 0..n {
                for (ci, core) in cores.iter().enumerate() {
                    let extra = if ci == 0 { 1 } else { 2 };
                    let total = n + extra;
                    let mut g = Graph::new(total).unwrap();
                    for (a, b) in t.edges() {
                        g.add_edge(a, b).unwrap();
                    }
                    // core vertex 0 is the pivot, the rest are new
                    let id = |c: usize| if c == 0 { v } else { n + c - 1 };
                    for &(a, b) in core.iter() {
                        g.add_edge(id(a), id(b)).unwrap();
                    }
                    let v2 = (n..total).fold(1u64 << v, |m, w| m | 1 << w);
                    let part = PlantedPartition { v1: bits::full(n), v2, v };
                    for loops in [0, v2, bits::full(total)] {
                        let g = g.with_loops(loops);
                        let table = ml_table(&g, 24).unwrap();
                        for xb in 0u64..1 << total {
                            let x = Configuration::new(total, xb).unwrap();
                            let c = solve_planted_tree(&g, &part, &x).unwrap_or_else(|e| panic!("{g:?} {x}: {e}"));
                            assert_eq!(c.ml, table[xb as usize] as usize);
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

//! Exact search checked against naive oracles that share no code with it:
//! neighborhoods are rebuilt from `has_edge`/`has_loop`, ML is a sweep over
//! all move subsets, and ML* is a hash-set BFS.

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use sigma_core::moves::replay;
use sigma_core::search::{litonly_reachable, ml_litonly, ml_regular, ml_table, mlstar_table};
use sigma_core::{Configuration, Graph};

fn nbhd(g: &Graph, v: usize) -> u64 {
    (0..g.n())
        .filter(|&u| (u == v && g.has_loop(v)) || (u != v && g.has_edge(u, v)))
        .fold(0, |m, u| m | 1 << u)
}

fn brute_ml(g: &Graph, x: u64) -> usize {
    let n = g.n();
    let nb: Vec<u64> = (0..n).map(|v| nbhd(g, v)).collect();
    (0u64..1 << n)
        .map(|m| {
            let eff = (0..n).filter(|&v| m >> v & 1 == 1).fold(0, |a, v| a ^ nb[v]);
            (x ^ eff).count_ones() as usize
        })
        .min()
        .unwrap()
}

fn bfs_reach(g: &Graph, x: u64) -> HashSet<u64> {
    let nb: Vec<u64> = (0..g.n()).map(|v| nbhd(g, v)).collect();
    let mut seen = HashSet::from([x]);
    let mut q = VecDeque::from([x]);
    while let Some(s) = q.pop_front() {
        for (v, &m) in nb.iter().enumerate() {
            if s >> v & 1 == 1 && seen.insert(s ^ m) {
                q.push_back(s ^ m);
            }
        }
    }
    seen
}

fn brute_mlstar(g: &Graph, x: u64) -> usize {
    bfs_reach(g, x).iter().map(|s| s.count_ones() as usize).min().unwrap()
}

fn graph_from(n: usize, edges: u64, loops: u64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if edges >> (k % 64) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g.with_loops(loops)
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, e, l)| graph_from(n, e, l))
}

/// Every graph on up to four vertices, every loop mask.
fn all_tiny_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let pairs = n * (n - 1) / 2;
        for e in 0u64..1 << pairs {
            for l in 0u64..1 << n {
                out.push(graph_from(n, e, l));
            }
        }
    }
    out
}

#[test]
fn tables_match_oracles_on_all_tiny_graphs() {
    for g in all_tiny_graphs() {
        let ml = ml_table(&g, 24).unwrap();
        let star = mlstar_table(&g, 24).unwrap();
        for x in 0u64..1 << g.n() {
            assert_eq!(ml[x as usize] as usize, brute_ml(&g, x), "{g:?} x={x:b}");
            assert_eq!(star[x as usize] as usize, brute_mlstar(&g, x), "{g:?} x={x:b}");
        }
    }
}

#[test]
fn loopless_lit_only_reach_is_symmetric() {
    for g in all_tiny_graphs().into_iter().filter(|g| g.loop_mask() == 0) {
        for x in 0u64..1 << g.n() {
            for y in bfs_reach(&g, x) {
                assert!(bfs_reach(&g, y).contains(&x), "{g:?}: {x:b} -> {y:b}");
            }
        }
    }
}

#[test]
fn loops_everywhere_break_symmetry() {
    // a looped vertex switches itself off and can never switch back on
    let g = Graph::from_edges(1, &[], &[0]).unwrap();
    assert!(bfs_reach(&g, 1).contains(&0));
    assert!(!bfs_reach(&g, 0).contains(&1));
    let g = sigma_core::family::complete(3).unwrap().with_loops(0b111);
    let r = litonly_reachable(&g, &Configuration::ones(3), 24).unwrap();
    assert!(r.contains(&Configuration::zeros(3)));
    assert_eq!(litonly_reachable(&g, &Configuration::zeros(3), 24).unwrap().len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ml_regular_matches_subset_sweep(g in arb_graph(10), xb in any::<u64>()) {
        let x = Configuration::new(g.n(), xb & ((1u64 << g.n()) - 1)).unwrap();
        let r = ml_regular(&g, &x, 24).unwrap();
        prop_assert_eq!(r.value, brute_ml(&g, x.bits()));
        prop_assert_eq!(r.witness_config.light_number(), r.value);
        let moved = sigma_core::moves::apply_move_set(&g, &x, r.move_set).unwrap();
        prop_assert_eq!(moved, r.witness_config);
    }

    #[test]
    fn mlstar_table_matches_bfs(g in arb_graph(9)) {
        let star = mlstar_table(&g, 24).unwrap();
        let ml = ml_table(&g, 24).unwrap();
        for x in 0u64..1 << g.n() {
            prop_assert_eq!(star[x as usize] as usize, brute_mlstar(&g, x));
            prop_assert!(ml[x as usize] <= star[x as usize]);
        }
    }

    #[test]
    fn lit_only_witness_replays(g in arb_graph(10), xb in any::<u64>()) {
        let x = Configuration::new(g.n(), xb & ((1u64 << g.n()) - 1)).unwrap();
        let r = ml_litonly(&g, &x, 24).unwrap();
        prop_assert_eq!(r.value, brute_mlstar(&g, x.bits()));
        prop_assert_eq!(replay(&g, &x, &r.witness_sequence, true).unwrap(), r.witness_config);
        prop_assert_eq!(r.witness_config.light_number(), r.value);
    }

    #[test]
    fn reachable_set_matches_bfs(g in arb_graph(8), xb in any::<u64>()) {
        let x = Configuration::new(g.n(), xb & ((1u64 << g.n()) - 1)).unwrap();
        let r = litonly_reachable(&g, &x, 24).unwrap();
        let oracle = bfs_reach(&g, x.bits());
        prop_assert_eq!(r.len(), oracle.len());
        for y in r.members() {
            prop_assert!(oracle.contains(&y.bits()));
            let w = r.witness(&y).unwrap();
            prop_assert_eq!(replay(&g, &x, &w, true).unwrap(), y);
        }
    }

    #[test]
    fn loopless_valid_moves_undo_themselves(g in arb_graph(10), xb in any::<u64>(), v in 0usize..10) {
        let g = g.with_loops(0);
        let v = v % g.n();
        let x = Configuration::new(g.n(), xb & ((1u64 << g.n()) - 1) | 1 << v).unwrap();
        let seq = sigma_core::MoveSequence::lit_only([v, v]);
        prop_assert_eq!(replay(&g, &x, &seq, true).unwrap(), x);
    }
}

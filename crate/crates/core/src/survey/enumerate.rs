//! Graph families for exhaustive sweeps, one representative per
//! isomorphism class where that matters.

use std::collections::BTreeMap;

use crate::bits;
use crate::constructive::{PendantPlant, RakeView};
use crate::error::{Error, Result};
use crate::family;
use crate::graph::Graph;

pub const MAX_TREE_ORDER: usize = 12;
pub const MAX_UNICYCLIC_ORDER: usize = 10;
pub const MAX_ALL_GRAPHS_ORDER: usize = 6;

/// Canonical code of a tree: the smaller of the rooted encodings at its
/// center(s). Each vertex encodes as `(` + sorted child codes + `)`.
pub fn tree_code(g: &Graph) -> Result<Vec<u8>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(centers(g).into_iter().map(|c| rooted_code(g, c, usize::MAX)).min().unwrap())
}

fn centers(g: &Graph) -> Vec<usize> {
    let mut alive = g.vertex_mask();
    loop {
        if alive.count_ones() <= 2 {
            return bits::ones(alive).collect();
        }
        let leaves = bits::of(bits::ones(alive).filter(|&v| (g.adjacent(v) & alive).count_ones() <= 1));
        alive &= !leaves;
    }
}

fn rooted_code(g: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = bits::ones(g.adjacent(v))
        .filter(|&u| u != parent)
        .map(|u| rooted_code(g, u, v))
        .collect();
    kids.sort();
    let mut out = vec![b'('];
    for k in kids {
        out.extend(k);
    }
    out.push(b')');
    out
}

/// Builds a tree from a rooted encoding, numbering vertices in preorder.
fn tree_from_code(code: &[u8]) -> Graph {
    let n = code.iter().filter(|&&c| c == b'(').count();
    let mut g = Graph::new(n).expect("order within limits");
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for &c in code {
        if c == b'(' {
            if let Some(&p) = stack.last() {
                g.add_edge(p, next).unwrap();
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    g
}

/// All trees on `n` vertices up to isomorphism, in ascending canonical
/// code order. Representatives are numbered in preorder from a center.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::InvalidFamily(format!(
            "trees need 1 <= n <= {MAX_TREE_ORDER}, got {n}"
        )));
    }
    let mut codes = vec![b"()".to_vec()];
    for m in 2..=n {
        let mut next = std::collections::BTreeSet::new();
        for code in &codes {
            let t = tree_from_code(code);
            for v in 0..m - 1 {
                let mut g = Graph::new(m).unwrap();
                for (a, b) in t.edges() {
                    g.add_edge(a, b).unwrap();
                }
                g.add_edge(v, m - 1).unwrap();
                next.insert(tree_code(&g).unwrap());
            }
        }
        codes = next.into_iter().collect();
    }
    Ok(codes.iter().map(|c| tree_from_code(c)).collect())
}

/// Isomorphism-invariant key of a loopless graph: sorted vertex invariants
/// plus the smallest adjacency code over labellings that list vertices in
/// invariant order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    invariants: Vec<(usize, Vec<usize>)>,
    code: u64,
}

/// Canonical key and the labelling (position -> vertex) attaining it.
/// Intended for small graphs (the search permutes within invariant
/// classes).
pub fn canonical_form(g: &Graph) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    assert!(n <= 11, "canonical forms are limited to 11 vertices");
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = bits::ones(g.adjacent(v)).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = (u64::MAX, Vec::new());
    let mut perm = Vec::with_capacity(n);
    search_labellings(g, &classes, 0, &mut vec![false; n], &mut perm, &mut best);
    let mut invariants: Vec<_> = inv;
    invariants.sort();
    (
        CanonicalKey {
            invariants,
            code: best.0,
        },
        best.1,
    )
}

fn adjacency_code(g: &Graph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(perm[i], perm[j]) as u64;
        }
    }
    code
}

fn search_labellings(
    g: &Graph,
    classes: &[Vec<usize>],
    ci: usize,
    used: &mut Vec<bool>,
    perm: &mut Vec<usize>,
    best: &mut (u64, Vec<usize>),
) {
    if ci == classes.len() {
        let code = adjacency_code(g, perm);
        if code < best.0 {
            *best = (code, perm.clone());
        }
        return;
    }
    let class = &classes[ci];
    let placed_in_class = class.iter().filter(|&&v| used[v]).count();
    if placed_in_class == class.len() {
        search_labellings(g, classes, ci + 1, used, perm, best);
        return;
    }
    for &v in class {
        if !used[v] {
            used[v] = true;
            perm.push(v);
            search_labellings(g, classes, ci, used, perm, best);
            perm.pop();
            used[v] = false;
        }
    }
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut pos = vec![0; g.n()];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (pos[a], pos[b])).collect();
    let loops: Vec<usize> = bits::ones(g.loop_mask()).map(|v| pos[v]).collect();
    Graph::from_edges(g.n(), &edges, &loops).unwrap()
}

fn dedup(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for g in graphs {
        let (key, perm) = canonical_form(&g);
        seen.entry(key).or_insert_with(|| relabel(&g, &perm));
    }
    seen.into_values().collect()
}

/// Connected graphs on `n` vertices with exactly one cycle, up to
/// isomorphism.
pub fn enumerate_unicyclic(n: usize) -> Result<Vec<Graph>> {
    if !(3..=MAX_UNICYCLIC_ORDER).contains(&n) {
        return Err(Error::InvalidFamily(format!(
            "unicyclic graphs need 3 <= n <= {MAX_UNICYCLIC_ORDER}, got {n}"
        )));
    }
    let mut out = Vec::new();
    for t in enumerate_trees(n)? {
        for u in 0..n {
            for v in u + 1..n {
                if !t.has_edge(u, v) {
                    let mut g = t.clone();
                    g.add_edge(u, v).unwrap();
                    out.push(g);
                }
            }
        }
    }
    Ok(dedup(out))
}

/// Every loopless simple graph on `n` vertices up to isomorphism.
pub fn enumerate_all_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_ALL_GRAPHS_ORDER).contains(&n) {
        return Err(Error::InvalidFamily(format!(
            "all graphs need 1 <= n <= {MAX_ALL_GRAPHS_ORDER}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let all = (0u64..1 << pairs.len()).map(|m| {
        let edges: Vec<_> = bits::ones(m).map(|i| pairs[i]).collect();
        Graph::from_edges(n, &edges, &[]).unwrap()
    });
    let mut out = dedup(all);
    out.sort_by_key(|g| g.edge_count());
    Ok(out)
}

/// Grids `r x c` with `2 <= r <= c` and `r * c <= max_n`.
pub fn enumerate_grids(max_n: usize) -> Vec<(usize, usize, Graph)> {
    let mut out = Vec::new();
    for r in 2..=max_n {
        for c in r..=max_n {
            if r * c <= max_n {
                out.push((r, c, family::grid(r, c).unwrap()));
            }
        }
    }
    out
}

/// Rakes `P_{n,k}` with `n, k >= 1` and `n + k <= max_n`.
pub fn enumerate_rakes(max_n: usize) -> Vec<(Graph, RakeView)> {
    let mut out = Vec::new();
    for size in 2..=max_n {
        for n in 1..size {
            out.push((family::rake(n, size - n).unwrap(), RakeView::standard(n, size - n)));
        }
    }
    out
}

/// Connected cores with a pivot and two pendant paths `n1 >= n2 >= 1`,
/// on at most `max_n` vertices. Cores run over connected graphs up to
/// isomorphism; the core occupies the low ids, then path 1, then path 2.
pub fn enumerate_planted(max_n: usize) -> Result<Vec<(Graph, PendantPlant)>> {
    let mut out = Vec::new();
    for core_n in 1..=max_n.saturating_sub(2).min(MAX_ALL_GRAPHS_ORDER) {
        let cores: Vec<Graph> = enumerate_all_graphs(core_n)?.into_iter().filter(|g| g.is_connected()).collect();
        for core in &cores {
            for v in 0..core_n {
                for n1 in 1..=max_n - core_n - 1 {
                    for n2 in 1..=n1.min(max_n - core_n - n1) {
                        let total = core_n + n1 + n2;
                        let mut g = Graph::new(total)?;
                        for (a, b) in core.edges() {
                            g.add_edge(a, b)?;
                        }
                        let p1: Vec<usize> = (core_n..core_n + n1).collect();
                        let p2: Vec<usize> = (core_n + n1..total).collect();
                        for p in [&p1, &p2] {
                            g.add_edge(v, p[0])?;
                            for w in p.windows(2) {
                                g.add_edge(w[0], w[1])?;
                            }
                        }
                        out.push((g, PendantPlant { v, p1, p2 }));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All loop masks on `g`'s vertices, ascending.
pub fn decorate_loops(g: &Graph) -> impl Iterator<Item = u64> {
    0..=bits::full(g.n())
}

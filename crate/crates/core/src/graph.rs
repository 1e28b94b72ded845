use std::collections::VecDeque;
use std::fmt;

use crate::bits;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A simple graph that may carry loops.
///
/// Vertices are `0..n`. Simple edges are kept as adjacency masks without
/// self bits; loops live in a separate mask, so [`Graph::degree`] counts
/// only non-loop edges while [`Graph::neighbors`] includes a looped vertex
/// in its own neighborhood.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    loops: u64,
}

impl Graph {
    /// Edgeless, loopless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            loops: 0,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        for &v in loops {
            g.check(v)?;
            g.loops |= 1 << v;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfPair(u));
        }
        if bits::has(self.adj[u], v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn set_loop(&mut self, v: usize, on: bool) -> Result<()> {
        self.check(v)?;
        if on {
            self.loops |= 1 << v;
        } else {
            self.loops &= !(1 << v);
        }
        Ok(())
    }

    /// Same simple edges, loops replaced by `mask`.
    pub fn with_loops(&self, mask: u64) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            loops: mask & bits::full(self.n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_mask(&self) -> u64 {
        bits::full(self.n)
    }

    pub fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// N(v), including `v` itself iff it carries a loop.
    pub fn neighbors(&self, v: usize) -> Result<u64> {
        self.check(v)?;
        Ok(self.nbhd(v))
    }

    /// Unchecked variant of [`Graph::neighbors`].
    #[inline]
    pub fn nbhd(&self, v: usize) -> u64 {
        self.adj[v] | (self.loops & (1 << v))
    }

    /// Non-loop neighbors of `v`.
    #[inline]
    pub fn adjacent(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        bits::has(self.loops, v)
    }

    pub fn loop_mask(&self) -> u64 {
        self.loops
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bits::has(self.adj[u], v)
    }

    /// Number of non-loop edges at `v`.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Simple edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits::ones(self.adj[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighborhood masks for every vertex, in vertex order.
    pub fn neighborhood_masks(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.nbhd(v)).collect()
    }

    pub fn leaves(&self) -> u64 {
        bits::of((0..self.n).filter(|&v| self.degree(v) == 1))
    }

    pub fn branch_vertices(&self) -> u64 {
        bits::of((0..self.n).filter(|&v| self.degree(v) >= 3))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        if !bits::has(within, start) {
            return 0;
        }
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits::ones(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Whether `G[mask]` is connected (the empty set counts as connected).
    pub fn induces_connected(&self, mask: u64) -> bool {
        match bits::min(mask) {
            None => true,
            Some(s) => self.reach(s, mask) == mask,
        }
    }

    /// Whether the underlying loopless graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Components of `G[within]` as masks, ordered by smallest vertex.
    pub fn components(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(s) = bits::min(rest) {
            let c = self.reach(s, within);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// BFS distances from `src` inside `within`; `None` when unreachable.
    pub fn distances(&self, src: usize, within: u64) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        if !bits::has(within, src) {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in bits::ones(self.adj[v] & within) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// A shortest path `from, ..., to` inside `within`. Among shortest
    /// paths, each step prefers the smallest vertex id.
    pub fn shortest_path(&self, from: usize, to: usize, within: u64) -> Option<Vec<usize>> {
        // distances from the target so the walk from `from` can go greedy
        let dist = self.distances(to, within);
        dist[from]?;
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let d = dist[cur].unwrap();
            cur = bits::ones(self.adj[cur] & within)
                .find(|&u| dist[u] == Some(d - 1))
                .expect("BFS layers are consistent");
            path.push(cur);
        }
        Some(path)
    }

    /// Subgraph induced by `mask`, relabelled in ascending order. Returns the
    /// subgraph and the map from new ids to old ids.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = bits::ones(mask & self.vertex_mask()).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::new(verts.len()).expect("subgraph is no larger");
        for (i, &v) in verts.iter().enumerate() {
            for u in bits::ones(self.adj[v] & mask) {
                g.adj[i] |= 1 << pos[u];
            }
            if self.has_loop(v) {
                g.loops |= 1 << i;
            }
        }
        (g, verts)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        let loops: Vec<usize> = bits::ones(self.loops).map(|v| v + 1).collect();
        write!(f, "Graph(n={}, edges=[{}], loops={:?})", self.n, edges.join(" "), loops)
    }
}

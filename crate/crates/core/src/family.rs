//! Standard graph families and the worked instances from the literature.

use std::fmt;
use std::str::FromStr;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Path v1 ... vn.
    Path(usize),
    /// Rake with an `handle`-vertex handle v1..vn and `teeth` teeth at vn.
    Rake { handle: usize, teeth: usize },
    /// Loopless complete graph.
    Complete(usize),
    /// Complete tripartite graph with parts of size `m`.
    CompleteTripartite(usize),
    Grid(usize, usize),
    /// Tree on 8 vertices: path v1v2v3v4v6v7v8 with v5 pendant at v4.
    Fig1,
    /// Path v1..v5 with the path v3v6v7 attached.
    Fig2,
    /// Complete graph with a loop at every vertex.
    LoopyExample(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// Loops to add on top of the family's own loops.
    pub loops: Option<u64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec { kind, loops: None }
    }

    pub fn with_loops(kind: FamilyKind, mask: u64) -> Self {
        FamilySpec {
            kind,
            loops: Some(mask),
        }
    }
}

/// Builds the graph, plus the distinguished configuration for families
/// that come with one (Fig. 1, Fig. 2, the tripartite example and the loopy
/// example).
pub fn build_family(spec: &FamilySpec) -> Result<(Graph, Option<Configuration>)> {
    let positive = |v: usize, what: &str| {
        if v == 0 {
            Err(Error::InvalidFamily(format!("{what} must be positive")))
        } else {
            Ok(v)
        }
    };
    let (g, x) = match spec.kind {
        FamilyKind::Path(n) => (path(positive(n, "path length")?)?, None),
        FamilyKind::Rake { handle, teeth } => (
            rake(positive(handle, "rake handle")?, positive(teeth, "rake teeth")?)?,
            None,
        ),
        FamilyKind::Complete(n) => (complete(positive(n, "complete graph order")?)?, None),
        FamilyKind::CompleteTripartite(m) => {
            let m = positive(m, "part size")?;
            let g = complete_multipartite(&[m, m, m])?;
            let x = Configuration::new(3 * m, crate::bits::full(3 * m) & !crate::bits::full(m))?;
            (g, Some(x))
        }
        FamilyKind::Grid(r, c) => (grid(positive(r, "grid rows")?, positive(c, "grid columns")?)?, None),
        FamilyKind::Fig1 => {
            let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 5), (5, 6), (6, 7), (3, 4)], &[])?;
            (g, Some(Configuration::indicator(8, &[0, 7])?))
        }
        FamilyKind::Fig2 => {
            let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], &[])?;
            (g, Some(Configuration::indicator(7, &[1, 3])?))
        }
        FamilyKind::LoopyExample(n) => {
            let n = positive(n, "order")?;
            let g = complete(n)?.with_loops(crate::bits::full(n));
            (g, Some(Configuration::ones(n)))
        }
    };
    let g = match spec.loops {
        Some(mask) => {
            if mask & !g.vertex_mask() != 0 {
                return Err(Error::InvalidFamily(format!(
                    "loop mask {mask:#x} exceeds {} vertices",
                    g.n()
                )));
            }
            g.with_loops(g.loop_mask() | mask)
        }
        None => g,
    };
    Ok((g, x))
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges, &[])
}

/// P_{n,k}: handle ids `0..n` (top is 0), teeth ids `n..n+k`.
pub fn rake(n: usize, k: usize) -> Result<Graph> {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.extend((0..k).map(|j| (n - 1, n + j)));
    Graph::from_edges(n + k, &edges, &[])
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `r x c` lattice, vertex `(i, j)` has id `i * c + j`.
pub fn grid(r: usize, c: usize) -> Result<Graph> {
    let mut g = Graph::new(r * c)?;
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                g.add_edge(v, v + 1)?;
            }
            if i + 1 < r {
                g.add_edge(v, v + c)?;
            }
        }
    }
    Ok(g)
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Path(n) => write!(f, "path:{n}"),
            FamilyKind::Rake { handle, teeth } => write!(f, "rake:{handle},{teeth}"),
            FamilyKind::Complete(n) => write!(f, "complete:{n}"),
            FamilyKind::CompleteTripartite(m) => write!(f, "tripartite:{m}"),
            FamilyKind::Grid(r, c) => write!(f, "grid:{r},{c}"),
            FamilyKind::Fig1 => f.write_str("fig1"),
            FamilyKind::Fig2 => f.write_str("fig2"),
            FamilyKind::LoopyExample(n) => write!(f, "loopy:{n}"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// Accepts `path:5`, `rake:2,3`, `complete:4`, `tripartite:2`,
    /// `grid:2,3`, `fig1`, `fig2`, `loopy:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(s.to_string());
        let (name, args) = match s.split_once(':') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        let kind = match (name, nums.as_slice()) {
            ("path", [n]) => FamilyKind::Path(*n),
            ("rake", [n, k]) => FamilyKind::Rake { handle: *n, teeth: *k },
            ("complete", [n]) => FamilyKind::Complete(*n),
            ("tripartite", [m]) => FamilyKind::CompleteTripartite(*m),
            ("grid", [r, c]) => FamilyKind::Grid(*r, *c),
            ("fig1", []) => FamilyKind::Fig1,
            ("fig2", []) => FamilyKind::Fig2,
            ("loopy", [n]) => FamilyKind::LoopyExample(*n),
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

//! Paths through two leaves with at most one branch vertex.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::walk_path;

/// A Nylen path split at its branch vertex. `arms` run outward from the
/// center. Without a center the whole path is `arms.0` and `arms.1` is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NylenParts {
    pub center: Option<usize>,
    pub arms: (Vec<usize>, Vec<usize>),
}

impl NylenParts {
    pub fn vertices(&self) -> Vec<usize> {
        match self.center {
            None => self.arms.0.clone(),
            Some(c) => {
                let mut out: Vec<usize> = self.arms.0.iter().rev().copied().collect();
                out.push(c);
                out.extend_from_slice(&self.arms.1);
                out
            }
        }
    }
}

/// A path of `h` containing two distinct leaves and at most one branch
/// vertex. With `avoid`, the path also misses that leaf (this needs at
/// least three leaves).
///
/// The path runs from a leaf through an end vertex of the smallest subtree
/// spanning all branch vertices, to another leaf. End vertices are tried in
/// ascending order and its two eligible arms with the smallest vertices win.
pub fn nylen_path(h: &Graph, avoid: Option<usize>) -> Result<Vec<usize>> {
    if !h.is_tree() {
        return Err(Error::NotATree);
    }
    if h.n() < 2 {
        return Err(Error::Precondition("a Nylen path needs at least two vertices".into()));
    }
    Ok(nylen_in(h, h.vertex_mask(), avoid)?.vertices())
}

/// [`nylen_path`] on the subtree `h[within]`, with degrees taken inside it.
pub(crate) fn nylen_in(h: &Graph, within: u64, avoid: Option<usize>) -> Result<NylenParts> {
    let deg = |v: usize, mask: u64| (h.adjacent(v) & mask).count_ones();
    let leaves = bits::of(bits::ones(within).filter(|&v| deg(v, within) == 1));
    if let Some(u) = avoid {
        h.check(u)?;
        if !bits::has(leaves, u) {
            return Err(Error::Precondition(format!("v{} is not a leaf", u + 1)));
        }
        if leaves.count_ones() < 3 {
            return Err(Error::Precondition(
                "avoiding a leaf needs at least three leaves".into(),
            ));
        }
    }
    let branch = bits::of(bits::ones(within).filter(|&v| deg(v, within) >= 3));
    if branch == 0 {
        let start = bits::min(leaves).ok_or_else(|| Error::Precondition("no leaves".into()))?;
        return Ok(NylenParts {
            center: None,
            arms: (walk_path(h, start, within), Vec::new()),
        });
    }
    // smallest connected set containing every branch vertex
    let mut core = within;
    loop {
        let prune = bits::of(bits::ones(core).filter(|&v| deg(v, core) <= 1 && !bits::has(branch, v)));
        if prune == 0 {
            break;
        }
        core &= !prune;
    }
    for e in bits::ones(core).filter(|&v| deg(v, core) <= 1) {
        let arms: Vec<u64> = h
            .components(within & !(1 << e))
            .into_iter()
            .filter(|&c| c & core == 0 && avoid.is_none_or(|u| !bits::has(c, u)))
            .take(2)
            .collect();
        if let [a, b] = arms[..] {
            let attach = |c: u64| (h.adjacent(e) & c).trailing_zeros() as usize;
            return Ok(NylenParts {
                center: Some(e),
                arms: (walk_path(h, attach(a), a), walk_path(h, attach(b), b)),
            });
        }
    }
    Err(Error::Precondition("no end vertex with two eligible arms".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{self, build_family, FamilyKind, FamilySpec};

    /// The defining property: two distinct leaves, at most one branch vertex,
    /// consecutive vertices adjacent, no repeats.
    fn is_nylen(h: &Graph, p: &[usize]) -> bool {
        let leaves = h.leaves();
        let branch = h.branch_vertices();
        let distinct = bits::of(p.iter().copied()).count_ones() as usize == p.len();
        distinct
            && p.windows(2).all(|w| h.has_edge(w[0], w[1]))
            && p.iter().filter(|&&v| bits::has(leaves, v)).count() >= 2
            && p.iter().filter(|&&v| bits::has(branch, v)).count() <= 1
    }

    #[test]
    fn path_graph_is_its_own_nylen_path() {
        let g = family::path(5).unwrap();
        assert_eq!(nylen_path(&g, None).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(nylen_path(&g, Some(0)).is_err());
    }

    #[test]
    fn fig1_nylen_path() {
        let (g, _) = build_family(&FamilySpec::new(FamilyKind::Fig1)).unwrap();
        let p = nylen_path(&g, None).unwrap();
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
        assert!(is_nylen(&g, &p));
        let p = nylen_path(&g, Some(0)).unwrap();
        assert!(is_nylen(&g, &p) && !p.contains(&0));
    }

    #[test]
    fn double_star() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)], &[]).unwrap();
        let p = nylen_path(&g, None).unwrap();
        assert_eq!(p, vec![2, 0, 3]);
        let p = nylen_path(&g, Some(2)).unwrap();
        assert_eq!(p, vec![4, 1, 5]);
    }

    #[test]
    fn every_small_tree_has_one() {
        for n in 2..=9 {
            for g in crate::survey::enumerate_trees(n).unwrap() {
                let p = nylen_path(&g, None).unwrap();
                assert!(is_nylen(&g, &p), "{g:?} {p:?}");
                if g.leaves().count_ones() >= 3 {
                    for u in bits::ones(g.leaves()) {
                        let p = nylen_path(&g, Some(u)).unwrap();
                        assert!(is_nylen(&g, &p) && !p.contains(&u), "{g:?} avoid {u}: {p:?}");
                    }
                }
            }
        }
    }
}

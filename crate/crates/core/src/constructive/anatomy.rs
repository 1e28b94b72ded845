//! Branch vertices, good components and appropriate vertices of a
//! decorated tree.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A component of `G - v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub mask: u64,
    /// The unique vertex of the component adjacent to `v`.
    pub attach: usize,
    /// Contains no branch vertex of the whole graph. In a tree such a
    /// component is a path with `attach` at one end.
    pub good: bool,
}

impl Component {
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeAnatomy {
    pub branch: u64,
    pub leaves: u64,
    /// `components[v]`: components of `G - v`, smallest vertex first.
    pub components: Vec<Vec<Component>>,
    pub appropriate: u64,
}

impl TreeAnatomy {
    pub fn good_components(&self, v: usize) -> impl Iterator<Item = &Component> {
        self.components[v].iter().filter(|c| c.good)
    }

    pub fn is_appropriate(&self, v: usize) -> bool {
        bits::has(self.appropriate, v)
    }
}

pub fn tree_anatomy(g: &Graph) -> Result<TreeAnatomy> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let all = g.vertex_mask();
    let branch = g.branch_vertices();
    let mut appropriate = 0;
    let components: Vec<Vec<Component>> = (0..g.n())
        .map(|v| {
            let comps: Vec<Component> = g
                .components(all & !(1 << v))
                .into_iter()
                .map(|mask| Component {
                    mask,
                    attach: (g.adjacent(v) & mask).trailing_zeros() as usize,
                    good: mask & branch == 0,
                })
                .collect();
            if comps.iter().filter(|c| c.good).count() >= 2 {
                appropriate |= 1 << v;
            }
            comps
        })
        .collect();
    Ok(TreeAnatomy {
        branch,
        leaves: g.leaves(),
        components,
        appropriate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{self, build_family, FamilyKind, FamilySpec};

    /// Appropriateness straight from the definition, via induced subgraphs.
    fn oracle_appropriate(g: &Graph, v: usize) -> bool {
        let rest = g.vertex_mask() & !(1 << v);
        let (h, map) = g.induced(rest);
        let branch = g.branch_vertices();
        let mut good = 0;
        let mut seen = vec![false; h.n()];
        for s in 0..h.n() {
            if seen[s] {
                continue;
            }
            let comp = h.reach(s, h.vertex_mask());
            let mut has_branch = false;
            for i in bits::ones(comp) {
                seen[i] = true;
                has_branch |= bits::has(branch, map[i]);
            }
            if !has_branch {
                good += 1;
            }
        }
        good >= 2
    }

    #[test]
    fn path_anatomy() {
        let g = family::path(5).unwrap();
        let a = tree_anatomy(&g).unwrap();
        assert_eq!(a.branch, 0);
        assert_eq!(a.appropriate, 0b01110);
        assert!(!a.is_appropriate(0) && !a.is_appropriate(4));
    }

    #[test]
    fn fig2_anatomy() {
        let (g, _) = build_family(&FamilySpec::new(FamilyKind::Fig2)).unwrap();
        let a = tree_anatomy(&g).unwrap();
        assert_eq!(a.branch, 1 << 2);
        let good: Vec<u64> = a.good_components(2).map(|c| c.mask).collect();
        assert_eq!(good, vec![0b11, 0b11000, 0b1100000]);
        for v in 0..7 {
            assert_eq!(a.is_appropriate(v), oracle_appropriate(&g, v), "v{}", v + 1);
        }
    }

    #[test]
    fn fig1_anatomy() {
        let (g, _) = build_family(&FamilySpec::new(FamilyKind::Fig1)).unwrap();
        let a = tree_anatomy(&g).unwrap();
        assert_eq!(a.branch, 1 << 3);
        assert!(a.is_appropriate(3));
        for v in 0..8 {
            assert_eq!(a.is_appropriate(v), oracle_appropriate(&g, v));
        }
    }

    #[test]
    fn rejects_non_tree() {
        assert_eq!(tree_anatomy(&family::complete(3).unwrap()), Err(Error::NotATree));
    }
}

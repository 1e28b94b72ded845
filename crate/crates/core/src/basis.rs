//! Row-reduced basis of the span of the neighborhood vectors over GF(2).
//!
//! Two configurations are related by regular moves exactly when their sum
//! lies in this span, so membership and coset sweeps here drive every
//! exact sigma-game computation.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisRow {
    pub bits: u64,
    /// Lowest set column; no other row has this column set.
    pub pivot: usize,
    /// Generating move set: the neighborhoods of these vertices sum to `bits`.
    pub moves: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodBasis {
    n: usize,
    rows: Vec<BasisRow>,
    pivots: u64,
}

impl NeighborhoodBasis {
    /// Basis of span{chi_{N(v)} : v in V}.
    pub fn new(g: &Graph) -> Self {
        Self::from_generators(g, g.vertex_mask())
    }

    /// Basis of span{chi_{N(v)} : v in `generators`}.
    pub fn from_generators(g: &Graph, generators: u64) -> Self {
        let mut basis = NeighborhoodBasis {
            n: g.n(),
            rows: Vec::new(),
            pivots: 0,
        };
        for v in bits::ones(generators & g.vertex_mask()) {
            basis.insert(g.nbhd(v), 1 << v);
        }
        basis.rows.sort_by_key(|r| r.pivot);
        basis
    }

    fn insert(&mut self, mut row: u64, mut moves: u64) {
        for r in &self.rows {
            if bits::has(row, r.pivot) {
                row ^= r.bits;
                moves ^= r.moves;
            }
        }
        if row == 0 {
            return;
        }
        let pivot = row.trailing_zeros() as usize;
        for r in &mut self.rows {
            if bits::has(r.bits, pivot) {
                r.bits ^= row;
                r.moves ^= moves;
            }
        }
        self.rows.push(BasisRow {
            bits: row,
            pivot,
            moves,
        });
        self.pivots |= 1 << pivot;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BasisRow] {
        &self.rows
    }

    pub fn pivot_mask(&self) -> u64 {
        self.pivots
    }

    /// Clears every pivot column of `z`. Returns the residue and the move
    /// set whose neighborhoods were added.
    pub fn reduce(&self, mut z: u64) -> (u64, u64) {
        let mut moves = 0;
        for r in &self.rows {
            if bits::has(z, r.pivot) {
                z ^= r.bits;
                moves ^= r.moves;
            }
        }
        (z, moves)
    }

    /// A move set `M` with `sum_{v in M} chi_{N(v)} = z`, if `z` is in the span.
    pub fn membership(&self, z: u64) -> Option<u64> {
        match self.reduce(z) {
            (0, moves) => Some(moves),
            _ => None,
        }
    }

    pub fn contains(&self, z: u64) -> bool {
        self.reduce(z).0 == 0
    }

    /// Minimum-weight member of the coset `x + span`, visiting all
    /// `2^rank` members in Gray-code order. Ties go to the lexicographically
    /// smallest bitstring. Returns the member and a move set reaching it.
    pub fn coset_min(&self, x: u64, rank_cap: usize) -> Result<(u64, u64)> {
        let k = self.rank();
        if k > rank_cap {
            return Err(Error::CapExceeded {
                what: "neighborhood rank",
                value: k,
                cap: rank_cap,
            });
        }
        let n = self.n;
        let mut cur = x;
        let mut moves = 0u64;
        let mut best = (cur.count_ones(), bits::lex_key(cur, n), cur, moves);
        for i in 1u64..(1u64 << k) {
            let r = &self.rows[i.trailing_zeros() as usize];
            cur ^= r.bits;
            moves ^= r.moves;
            let w = cur.count_ones();
            if w <= best.0 {
                let key = bits::lex_key(cur, n);
                if w < best.0 || key < best.1 {
                    best = (w, key, cur, moves);
                }
            }
        }
        Ok((best.2, best.3))
    }

    /// Linear map sending a configuration to a dense index of its coset.
    /// Returns per-vertex images; the image of `z` is the XOR of the images
    /// of its on vertices, in `0..2^(n - rank)`.
    pub fn syndrome_images(&self) -> Vec<u64> {
        let free = bits::full(self.n) & !self.pivots;
        let compress = |z: u64| -> u64 {
            let mut out = 0u64;
            for (j, c) in bits::ones(free).enumerate() {
                if bits::has(z, c) {
                    out |= 1 << j;
                }
            }
            out
        };
        let mut pivot_row = vec![None; self.n];
        for r in &self.rows {
            pivot_row[r.pivot] = Some(r.bits);
        }
        (0..self.n)
            .map(|i| match pivot_row[i] {
                Some(row) => compress(row & free),
                None => compress(1 << i),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    /// Rank by plain elimination on a copy of the rows, without pivot
    /// bookkeeping.
    fn oracle_rank(rows: &[u64]) -> usize {
        let mut rows = rows.to_vec();
        let mut rank = 0;
        for col in 0..64 {
            if let Some(i) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) {
                rows.swap(rank, i);
                for j in 0..rows.len() {
                    if j != rank && rows[j] >> col & 1 == 1 {
                        rows[j] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn ranks_of_small_graphs() {
        let p3 = family::path(3).unwrap();
        assert_eq!(oracle_rank(&p3.neighborhood_masks()), 2);
        assert_eq!(NeighborhoodBasis::new(&p3).rank(), 2);

        let k4 = family::complete(4).unwrap();
        assert_eq!(oracle_rank(&k4.neighborhood_masks()), 4);
        assert_eq!(NeighborhoodBasis::new(&k4).rank(), 4);

        let star = family::rake(1, 3).unwrap();
        assert_eq!(oracle_rank(&star.neighborhood_masks()), 2);
        assert_eq!(NeighborhoodBasis::new(&star).rank(), 2);
    }

    #[test]
    fn membership_returns_generating_moves() {
        let g = family::rake(2, 3).unwrap();
        let b = NeighborhoodBasis::new(&g);
        for m in 0u64..(1 << g.n()) {
            let z = crate::moves::move_set_effect(&g, m);
            let found = b.membership(z).expect("in span");
            assert_eq!(crate::moves::move_set_effect(&g, found), z);
        }
        for r in b.rows() {
            assert_eq!(crate::moves::move_set_effect(&g, r.moves), r.bits);
            assert_eq!(r.bits.trailing_zeros() as usize, r.pivot);
        }
    }

    #[test]
    fn syndrome_separates_cosets() {
        let g = family::path(5).unwrap().with_loops(0b00100);
        let b = NeighborhoodBasis::new(&g);
        let img = b.syndrome_images();
        let syn = |z: u64| bits::ones(z).fold(0, |a, v| a ^ img[v]);
        for x in 0u64..32 {
            for y in 0u64..32 {
                assert_eq!(syn(x) == syn(y), b.contains(x ^ y));
            }
        }
    }

    #[test]
    fn rank_cap_is_reported() {
        let k4 = family::complete(4).unwrap();
        let b = NeighborhoodBasis::new(&k4);
        assert!(matches!(
            b.coset_min(0b1, 3),
            Err(Error::CapExceeded { value: 4, cap: 3, .. })
        ));
    }
}

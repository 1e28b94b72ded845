//! Regular and lit-only moves, and deterministic replay of move sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Regular,
    LitOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub vertex: usize,
    pub kind: MoveKind,
}

/// Ordered moves with a total, deterministic replay semantics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence {
    moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lit_only(vertices: impl IntoIterator<Item = usize>) -> Self {
        MoveSequence {
            moves: vertices
                .into_iter()
                .map(|vertex| Move {
                    vertex,
                    kind: MoveKind::LitOnly,
                })
                .collect(),
        }
    }

    pub fn regular(vertices: impl IntoIterator<Item = usize>) -> Self {
        MoveSequence {
            moves: vertices
                .into_iter()
                .map(|vertex| Move {
                    vertex,
                    kind: MoveKind::Regular,
                })
                .collect(),
        }
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn push_lit(&mut self, vertex: usize) {
        self.moves.push(Move {
            vertex,
            kind: MoveKind::LitOnly,
        });
    }

    pub fn extend(&mut self, other: &MoveSequence) {
        self.moves.extend_from_slice(&other.moves);
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.vertex).collect()
    }

    /// 1-based vertex labels, in order.
    pub fn labels(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.vertex + 1).collect()
    }

    /// Vertices moved an odd number of times.
    pub fn parity_mask(&self) -> u64 {
        self.moves.iter().fold(0, |m, mv| m ^ (1 << mv.vertex))
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .moves
            .iter()
            .map(|m| match m.kind {
                MoveKind::LitOnly => format!("v{}", m.vertex + 1),
                MoveKind::Regular => format!("v{}!", m.vertex + 1),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn check_len(g: &Graph, x: &Configuration) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `x + chi_{N(v)}`.
pub fn regular_move(g: &Graph, x: &Configuration, v: usize) -> Result<Configuration> {
    check_len(g, x)?;
    Ok(x.toggled(g.neighbors(v)?))
}

/// `x + x(v) chi_{N(v)}`: a no-op when `v` is off.
pub fn lit_only_move(g: &Graph, x: &Configuration, v: usize) -> Result<Configuration> {
    check_len(g, x)?;
    let nb = g.neighbors(v)?;
    Ok(if x.get(v) { x.toggled(nb) } else { *x })
}

/// Folds `seq` over `x` left to right. In strict mode a lit-only move at an
/// off vertex is reported as [`Error::InvalidMove`] instead of being skipped.
pub fn replay(g: &Graph, x: &Configuration, seq: &MoveSequence, strict: bool) -> Result<Configuration> {
    check_len(g, x)?;
    let mut cur = x.bits();
    for (index, m) in seq.moves().iter().enumerate() {
        g.check(m.vertex)?;
        match m.kind {
            MoveKind::Regular => cur ^= g.nbhd(m.vertex),
            MoveKind::LitOnly => {
                if bits::has(cur, m.vertex) {
                    cur ^= g.nbhd(m.vertex);
                } else if strict {
                    return Err(Error::InvalidMove {
                        index,
                        vertex: m.vertex,
                    });
                }
            }
        }
    }
    Ok(Configuration::raw(g.n(), cur))
}

/// `x + sum_{v in mask} chi_{N(v)}`.
pub fn apply_move_set(g: &Graph, x: &Configuration, mask: u64) -> Result<Configuration> {
    check_len(g, x)?;
    if mask & !g.vertex_mask() != 0 {
        let v = (mask & !g.vertex_mask()).trailing_zeros() as usize;
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(x.toggled(move_set_effect(g, mask)))
}

/// Applies a multiset of regular moves. Order is irrelevant, so the multiset
/// is reduced by parity first.
pub fn apply_move_multiset(g: &Graph, x: &Configuration, vertices: &[usize]) -> Result<Configuration> {
    for &v in vertices {
        g.check(v)?;
    }
    let mask = vertices.iter().fold(0u64, |m, &v| m ^ (1 << v));
    apply_move_set(g, x, mask)
}

/// `sum_{v in mask} chi_{N(v)}`.
#[inline]
pub fn move_set_effect(g: &Graph, mask: u64) -> u64 {
    bits::ones(mask).fold(0, |acc, v| acc ^ g.nbhd(v))
}

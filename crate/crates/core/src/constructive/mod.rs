//! Constructive lit-only solvers.
//!
//! Every routine here emits valid moves only. The building blocks are
//! state splitting ([`differ`]), zone realization ([`realize`]), path and
//! rake normalization ([`path`], [`rake`]); [`solve`] chains them into
//! certified solvers for planted paths, decorated trees and planted trees.

pub mod anatomy;
pub mod differ;
pub mod nylen;
pub mod path;
pub mod rake;
pub mod realize;
pub mod solve;

pub use anatomy::{tree_anatomy, Component, TreeAnatomy};
pub use differ::make_states_differ;
pub use nylen::nylen_path;
pub use path::path_normalize;
pub use rake::{rake_normalize, RakeView};
pub use realize::{realize_up_to_outside, PlantedSetup};
pub use solve::{
    solve_planted_tree, solve_rake, solve_theorem8, solve_tree, PendantPlant, PlantedPartition, Reference,
    SolveCertificate, TreeSolver,
};

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

/// A configuration being driven by valid moves, with the moves recorded.
pub(crate) struct Walk<'g> {
    pub g: &'g Graph,
    pub cur: u64,
    pub seq: Vec<usize>,
}

impl<'g> Walk<'g> {
    pub fn new(g: &'g Graph, start: u64) -> Self {
        Walk {
            g,
            cur: start,
            seq: Vec::new(),
        }
    }

    #[inline]
    pub fn on(&self, v: usize) -> bool {
        bits::has(self.cur, v)
    }

    /// A valid move at `v`. Planning a move at an off vertex is a bug in
    /// the caller, never a property of the input.
    #[inline]
    pub fn mv(&mut self, v: usize) -> Result<()> {
        if !self.on(v) {
            return Err(Error::Internal(format!(
                "planned move {} at v{} while it is off",
                self.seq.len(),
                v + 1
            )));
        }
        self.cur ^= self.g.nbhd(v);
        self.seq.push(v);
        Ok(())
    }

    pub fn sequence(&self) -> MoveSequence {
        MoveSequence::lit_only(self.seq.iter().copied())
    }

    pub fn config(&self) -> Configuration {
        Configuration::raw(self.g.n(), self.cur)
    }
}

pub(crate) fn check_len(g: &Graph, x: &Configuration) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    Ok(())
}

/// Walks a path component outward from `attach`, which must be one of its
/// ends.
pub(crate) fn walk_path(g: &Graph, attach: usize, comp: u64) -> Vec<usize> {
    let mut out = vec![attach];
    let mut seen = 1u64 << attach;
    let mut cur = attach;
    while let Some(next) = bits::min(g.adjacent(cur) & comp & !seen) {
        seen |= 1 << next;
        out.push(next);
        cur = next;
    }
    out
}

//! Exact minimum light numbers.
//!
//! ML comes from a Gray-code sweep of the coset `x + span{chi_{N(v)}}`.
//! ML* needs the lit-only state graph, which is directed and may contain
//! cycles once loops are present: single queries use forward BFS from `x`
//! (so a witness sequence can be read off the predecessor links) and
//! whole-graph tables solve the fixpoint
//! `ML*(x) = min(L(x), min over valid moves x -> y of ML*(y))`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::basis::NeighborhoodBasis;
use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

pub const DEFAULT_RANK_CAP: usize = 24;
pub const DEFAULT_STATE_CAP: usize = 24;
/// Dense state tables index by `u32`.
pub const MAX_STATE_BITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub rank: usize,
    pub states: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            rank: DEFAULT_RANK_CAP,
            states: DEFAULT_STATE_CAP,
        }
    }
}

fn check_states(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_STATE_BITS);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertex count for a state sweep",
            value: n,
            cap,
        });
    }
    Ok(())
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

fn one_based(mask: u64) -> Vec<usize> {
    bits::ones(mask).map(|v| v + 1).collect()
}

/// ML_G(x) with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MlResult {
    pub value: usize,
    pub witness_config: Configuration,
    /// Regular moves, as a set, taking the query to `witness_config`.
    #[serde(serialize_with = "ser_mask_1based")]
    pub move_set: u64,
}

/// ML*_G(x) with a valid-move witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MlStarResult {
    pub value: usize,
    pub witness_config: Configuration,
    #[serde(rename = "sequence", serialize_with = "ser_seq_1based")]
    pub witness_sequence: MoveSequence,
}

fn ser_mask_1based<S: serde::Serializer>(m: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(one_based(*m))
}

fn ser_seq_1based<S: serde::Serializer>(m: &MoveSequence, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.labels())
}

pub fn neighborhood_basis(g: &Graph) -> NeighborhoodBasis {
    NeighborhoodBasis::new(g)
}

/// A move set `M` with `x + sum_{v in M} chi_{N(v)} = y`, or `None` when
/// `y` is not reachable from `x` by regular moves.
pub fn regular_reach_decompose(g: &Graph, x: &Configuration, y: &Configuration) -> Result<Option<u64>> {
    check_len(g, x)?;
    check_len(g, y)?;
    Ok(NeighborhoodBasis::new(g).membership(x.bits() ^ y.bits()))
}

/// Exact ML_G(x). The witness is the lexicographically smallest
/// minimum-weight member of the coset.
pub fn ml_regular(g: &Graph, x: &Configuration, rank_cap: usize) -> Result<MlResult> {
    check_len(g, x)?;
    ml_regular_with(&NeighborhoodBasis::new(g), x, rank_cap)
}

pub fn ml_regular_with(basis: &NeighborhoodBasis, x: &Configuration, rank_cap: usize) -> Result<MlResult> {
    let (best, moves) = basis.coset_min(x.bits(), rank_cap)?;
    Ok(MlResult {
        value: best.count_ones() as usize,
        witness_config: Configuration::raw(x.len(), best),
        move_set: moves,
    })
}

/// Everything reachable from a start configuration by valid moves, with
/// BFS predecessor links.
#[derive(Clone, Debug)]
pub struct LitOnlyReach {
    start: u32,
    /// Indexed by state; `u32::MAX` marks unvisited.
    parent: Vec<u32>,
    /// Visited states in BFS order (the start first).
    order: Vec<u32>,
    nbhd: Vec<u64>,
    n: usize,
}

const UNSEEN: u32 = u32::MAX;

impl LitOnlyReach {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, y: &Configuration) -> bool {
        (y.bits() as usize) < self.parent.len() && self.parent[y.bits() as usize] != UNSEEN
    }

    /// Members in BFS order.
    pub fn members(&self) -> impl Iterator<Item = Configuration> + '_ {
        self.order.iter().map(|&s| Configuration::raw(self.n, s as u64))
    }

    /// A valid-move sequence from the start to `y` (a shortest one).
    pub fn witness(&self, y: &Configuration) -> Option<MoveSequence> {
        if !self.contains(y) {
            return None;
        }
        let mut cur = y.bits() as u32;
        let mut rev = Vec::new();
        while cur != self.start {
            let p = self.parent[cur as usize];
            let diff = (p ^ cur) as u64;
            // smallest valid vertex whose move produced this edge, which is
            // also the one BFS used since it scans vertices in ascending order
            let v = (0..self.n)
                .find(|&v| bits::has(p as u64, v) && self.nbhd[v] == diff)
                .expect("parent link corresponds to a valid move");
            rev.push(v);
            cur = p;
        }
        rev.reverse();
        Some(MoveSequence::lit_only(rev))
    }
}

/// `{y : x *-> y}` by forward BFS, moves tried in ascending vertex order.
pub fn litonly_reachable(g: &Graph, x: &Configuration, state_cap: usize) -> Result<LitOnlyReach> {
    check_len(g, x)?;
    let n = g.n();
    check_states(n, state_cap)?;
    let nbhd = g.neighborhood_masks();
    let mut parent = vec![UNSEEN; 1usize << n];
    let start = x.bits() as u32;
    parent[start as usize] = start;
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let s = order[head];
        head += 1;
        for v in bits::ones(s as u64) {
            let t = s ^ nbhd[v] as u32;
            if parent[t as usize] == UNSEEN {
                parent[t as usize] = s;
                order.push(t);
            }
        }
    }
    Ok(LitOnlyReach {
        start,
        parent,
        order,
        nbhd,
        n,
    })
}

/// Exact ML*_G(x). Among minimum-light reachable states the first one
/// found by BFS wins.
pub fn ml_litonly(g: &Graph, x: &Configuration, state_cap: usize) -> Result<MlStarResult> {
    let reach = litonly_reachable(g, x, state_cap)?;
    let best = reach
        .order
        .iter()
        .copied()
        .min_by_key(|s| s.count_ones())
        .expect("start is reachable");
    let witness_config = Configuration::raw(g.n(), best as u64);
    let witness_sequence = reach.witness(&witness_config).expect("member");
    Ok(MlStarResult {
        value: best.count_ones() as usize,
        witness_config,
        witness_sequence,
    })
}

/// ML_G(x) for every configuration, indexed by the configuration's bits.
pub fn ml_table(g: &Graph, state_cap: usize) -> Result<Vec<u8>> {
    check_states(g.n(), state_cap)?;
    Ok(ml_table_with(&NeighborhoodBasis::new(g)))
}

pub(crate) fn ml_table_with(basis: &NeighborhoodBasis) -> Vec<u8> {
    let n = basis.n();
    let img = basis.syndrome_images();
    let mut best = vec![u8::MAX; 1usize << (n - basis.rank())];
    let mut syn = vec![0u32; 1usize << n];
    let mut s = 0u64;
    for z in 0u64..(1u64 << n) {
        if z != 0 {
            // Gray step: bit i flips between gray(z-1) and gray(z)
            s ^= img[z.trailing_zeros() as usize];
        }
        let gray = z ^ (z >> 1);
        syn[gray as usize] = s as u32;
        let w = gray.count_ones() as u8;
        let slot = &mut best[s as usize];
        if w < *slot {
            *slot = w;
        }
    }
    syn.iter().map(|&s| best[s as usize]).collect()
}

/// ML*_G(x) for every configuration.
///
/// The fixpoint of `ML*(x) = min(L(x), min_{x -> y valid} ML*(y))` is found
/// by settling states in ascending light order: each unsettled state with
/// light `k` seeds a backward search over valid-move predecessors, all of
/// which can reach light `k` and nothing smaller.
pub fn mlstar_table(g: &Graph, state_cap: usize) -> Result<Vec<u8>> {
    let n = g.n();
    check_states(n, state_cap)?;
    let nbhd = g.neighborhood_masks();
    let size = 1usize << n;
    let mut value = vec![u8::MAX; size];
    let mut by_weight: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 0..size as u32 {
        by_weight[s.count_ones() as usize].push(s);
    }
    let mut queue = VecDeque::new();
    for (k, states) in by_weight.iter().enumerate() {
        for &s in states {
            if value[s as usize] != u8::MAX {
                continue;
            }
            value[s as usize] = k as u8;
            queue.push_back(s);
            while let Some(t) = queue.pop_front() {
                // p -> t by a valid move at v iff p = t + N(v) and p(v) = 1
                for (v, &nb) in nbhd.iter().enumerate() {
                    let p = t ^ nb as u32;
                    if p >> v & 1 == 1 && value[p as usize] == u8::MAX {
                        value[p as usize] = k as u8;
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    Ok(value)
}

/// Per-configuration ML and ML* over a whole graph.
#[derive(Clone, Debug, Serialize)]
pub struct GapProfile {
    #[serde(skip)]
    pub ml: Vec<u8>,
    #[serde(skip)]
    pub mlstar: Vec<u8>,
    pub graph_ml: usize,
    pub graph_mlstar: usize,
    pub max_config_gap: usize,
    /// First configuration (ascending bits) attaining each maximum.
    pub argmax_ml: Configuration,
    pub argmax_mlstar: Configuration,
    pub argmax_gap: Configuration,
    /// Replayable witnesses at `argmax_gap`.
    pub gap_ml_witness: MlResult,
    pub gap_mlstar_witness: MlStarResult,
}

impl GapProfile {
    pub fn gap_at(&self, x: &Configuration) -> usize {
        let i = x.bits() as usize;
        (self.mlstar[i] - self.ml[i]) as usize
    }

    pub fn graph_gap(&self) -> usize {
        self.graph_mlstar - self.graph_ml
    }
}

pub fn gap_profile(g: &Graph, caps: Caps) -> Result<GapProfile> {
    let n = g.n();
    let basis = NeighborhoodBasis::new(g);
    check_states(n, caps.states)?;
    let ml = ml_table_with(&basis);
    let mlstar = mlstar_table(g, caps.states)?;
    let argmax = |f: &dyn Fn(usize) -> u8| -> usize {
        let mut best = 0;
        for i in 0..ml.len() {
            if f(i) > f(best) {
                best = i;
            }
        }
        best
    };
    let i_ml = argmax(&|i| ml[i]);
    let i_star = argmax(&|i| mlstar[i]);
    let i_gap = argmax(&|i| mlstar[i] - ml[i]);
    let x_gap = Configuration::raw(n, i_gap as u64);
    let gap_ml_witness = ml_regular_with(&basis, &x_gap, caps.rank.max(basis.rank()))?;
    let gap_mlstar_witness = ml_litonly(g, &x_gap, caps.states)?;
    Ok(GapProfile {
        graph_ml: ml[i_ml] as usize,
        graph_mlstar: mlstar[i_star] as usize,
        max_config_gap: (mlstar[i_gap] - ml[i_gap]) as usize,
        argmax_ml: Configuration::raw(n, i_ml as u64),
        argmax_mlstar: Configuration::raw(n, i_star as u64),
        argmax_gap: x_gap,
        gap_ml_witness,
        gap_mlstar_witness,
        ml,
        mlstar,
    })
}

//! Realizing regular moves inside a zone by valid moves, up to junk moves
//! outside it.

use crate::basis::NeighborhoodBasis;
use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

use super::differ::differ_in;
use super::{check_len, Walk};

/// Two non-adjacent vertices `a`, `b` with a common neighbor `c`, and a
/// set `s` out of reach of both such that `s + c` induces a connected
/// subgraph (the zone).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantedSetup {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub s: u64,
}

impl PlantedSetup {
    pub fn zone(&self) -> u64 {
        self.s | 1 << self.c
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        g.check(self.a)?;
        g.check(self.b)?;
        g.check(self.c)?;
        if self.s & !g.vertex_mask() != 0 {
            return bad("zone set has out-of-range vertices");
        }
        if self.a == self.b || g.has_edge(self.a, self.b) {
            return bad("a and b must be distinct and non-adjacent");
        }
        let (na, nb) = (g.nbhd(self.a), g.nbhd(self.b));
        if !bits::has(na & nb, self.c) {
            return bad("c must be a common neighbor of a and b");
        }
        if self.s & (na | nb) != 0 {
            return bad("S meets N(a) or N(b)");
        }
        let zone = self.zone();
        if bits::has(zone, self.a) || bits::has(zone, self.b) {
            return bad("a and b must lie outside the zone");
        }
        if !g.induces_connected(zone) {
            return bad("the zone must induce a connected subgraph");
        }
        Ok(())
    }
}

/// Valid moves from `x` to `y + sum_{v in R} chi_{N(v)}` with `R` outside
/// the zone. Returns the sequence and `R`.
///
/// A decomposition `M` of `x -> y` is split into the target `M & zone` and
/// junk `M - zone`. When `x(a) = x(b)` the states are split first, which
/// requires `N(a) != N(b)`, a connected graph and `x != 0`.
pub fn realize_up_to_outside(
    g: &Graph,
    x: &Configuration,
    setup: &PlantedSetup,
    y: &Configuration,
) -> Result<(MoveSequence, u64)> {
    check_len(g, x)?;
    check_len(g, y)?;
    setup.validate(g)?;
    let m = NeighborhoodBasis::new(g)
        .membership(x.bits() ^ y.bits())
        .ok_or(Error::Unreachable)?;
    if m & setup.zone() != 0 && x.get(setup.a) == x.get(setup.b) && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut walk = Walk::new(g, x.bits());
    let r = realize_in(&mut walk, setup, m)?;
    Ok((walk.sequence(), r))
}

/// Core of [`realize_up_to_outside`] for an already validated setup and a
/// move set `m` with `walk.cur + sum_m chi_N = y`.
pub(crate) fn realize_in(walk: &mut Walk, setup: &PlantedSetup, m: u64) -> Result<u64> {
    let g = walk.g;
    let zone = setup.zone();
    let mut target = m & zone;
    let mut junk = m & !zone;
    if target == 0 {
        return Ok(junk);
    }
    let toggle = |v: usize, target: &mut u64, junk: &mut u64| {
        if bits::has(zone, v) {
            *target ^= 1 << v;
        } else {
            *junk ^= 1 << v;
        }
    };
    let start = walk.seq.len();
    differ_in(walk, setup.a, setup.b)?;
    for i in start..walk.seq.len() {
        toggle(walk.seq[i], &mut target, &mut junk);
    }
    let dist = g.distances(setup.c, zone);
    while target != 0 {
        let d = bits::ones(target)
            .max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))
            .expect("nonempty");
        let mut path = g.shortest_path(setup.c, d, zone).expect("zone is connected");
        let v0 = if walk.on(setup.a) { setup.a } else { setup.b };
        path.insert(0, v0);
        let t = (0..path.len()).rev().find(|&i| walk.on(path[i])).expect("v0 is on");
        let plan: Vec<usize> = if t > 0 || !g.has_loop(v0) {
            path[t..].to_vec()
        } else {
            let mut p = path.clone();
            p.push(v0);
            p
        };
        for v in plan {
            walk.mv(v)?;
            toggle(v, &mut target, &mut junk);
        }
    }
    Ok(junk)
}

//! Splitting the states of two vertices with different neighborhoods.

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

use super::{check_len, Walk};

/// Valid moves after which `a` and `b` are in different states.
///
/// Takes `c` = the smallest vertex of `N(a) xor N(b)`. If `c` is off, an on
/// state is pushed along a shortest path from the nearest on vertex; then
/// one move at `c`, if still needed, toggles exactly one of `a`, `b`.
pub fn make_states_differ(g: &Graph, x: &Configuration, a: usize, b: usize) -> Result<(MoveSequence, Configuration)> {
    check_len(g, x)?;
    g.check(a)?;
    g.check(b)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut walk = Walk::new(g, x.bits());
    differ_in(&mut walk, a, b)?;
    Ok((walk.sequence(), walk.config()))
}

pub(crate) fn differ_in(walk: &mut Walk, a: usize, b: usize) -> Result<()> {
    let g = walk.g;
    if walk.on(a) != walk.on(b) {
        return Ok(());
    }
    if walk.cur == 0 {
        return Err(Error::Precondition("the configuration is zero".into()));
    }
    let c = bits::min(g.nbhd(a) ^ g.nbhd(b))
        .ok_or_else(|| Error::Precondition(format!("N(v{}) = N(v{})", a + 1, b + 1)))?;
    if !walk.on(c) {
        let dist = g.distances(c, g.vertex_mask());
        let d = bits::ones(walk.cur)
            .filter(|&v| dist[v].is_some())
            .min_by_key(|&v| (dist[v], v))
            .ok_or(Error::Disconnected)?;
        let path = g.shortest_path(d, c, g.vertex_mask()).ok_or(Error::Disconnected)?;
        let t = path.len() - 1;
        let q = (0..t).rev().find(|&i| walk.on(path[i])).expect("path starts on");
        for &w in &path[q..t] {
            walk.mv(w)?;
        }
    }
    if walk.on(a) == walk.on(b) {
        walk.mv(c)?;
    }
    Ok(())
}

//! Rakes: a handle `v1 .. vn` with teeth hanging at `vn`, topped at `v1`.

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

use super::{check_len, Walk};

/// A rake inside a host graph. The top is `handle[0]`; all other vertices
/// are common vertices. Handle vertex `i` is at distance `i` from the top,
/// teeth at distance `handle.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RakeView {
    handle: Vec<usize>,
    teeth: Vec<usize>,
}

impl RakeView {
    /// Validates the rake shape inside `g`: the handle is a path, every
    /// tooth hangs at the last handle vertex, there are no other edges
    /// among these vertices, and common vertices have no outside neighbors.
    pub fn new(g: &Graph, handle: Vec<usize>, teeth: Vec<usize>) -> Result<Self> {
        let r = RakeView { handle, teeth };
        r.validate(g)?;
        Ok(r)
    }

    /// The rake `P_{n,k}` as built by [`crate::family::rake`].
    pub fn standard(n: usize, k: usize) -> Self {
        RakeView {
            handle: (0..n).collect(),
            teeth: (n..n + k).collect(),
        }
    }

    pub(crate) fn unchecked(handle: Vec<usize>, teeth: Vec<usize>) -> Self {
        RakeView { handle, teeth }
    }

    /// Reads the rake with top `top` spanning `top + within`: the handle
    /// follows single continuations away from the top, and the first
    /// vertex with several continuations (or a lone leaf continuation)
    /// carries the teeth.
    pub fn detect(g: &Graph, top: usize, within: u64) -> Result<Self> {
        g.check(top)?;
        let w = within | 1 << top;
        let mut handle = vec![top];
        let mut seen = 1u64 << top;
        let mut cur = top;
        let teeth = loop {
            let next = g.adjacent(cur) & w & !seen;
            let leafy = |v: usize| g.adjacent(v) & w & !(1 << cur) == 0;
            match next.count_ones() {
                0 => break Vec::new(),
                1 if !leafy(next.trailing_zeros() as usize) => {
                    cur = next.trailing_zeros() as usize;
                    seen |= next;
                    handle.push(cur);
                }
                _ => break bits::ones(next).collect(),
            }
        };
        Self::new(g, handle, teeth)
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("not a rake: {m}")));
        if self.handle.is_empty() {
            return bad("empty handle");
        }
        for &v in self.handle.iter().chain(&self.teeth) {
            g.check(v)?;
        }
        let mask = self.mask();
        if mask.count_ones() as usize != self.handle.len() + self.teeth.len() {
            return bad("repeated vertex");
        }
        let last = *self.handle.last().unwrap();
        let n = self.handle.len();
        for (i, &v) in self.handle.iter().enumerate() {
            let mut expect = 0u64;
            if i > 0 {
                expect |= 1 << self.handle[i - 1];
            }
            if i + 1 < n {
                expect |= 1 << self.handle[i + 1];
            }
            if i + 1 == n {
                expect |= bits::of(self.teeth.iter().copied());
            }
            if g.adjacent(v) & mask != expect {
                return bad("handle adjacency");
            }
        }
        for &t in &self.teeth {
            if g.adjacent(t) & mask != 1 << last {
                return bad("a tooth must hang at the last handle vertex only");
            }
        }
        if bits::ones(self.common_mask()).any(|v| g.adjacent(v) & !mask != 0) {
            return bad("a common vertex has a neighbor outside the rake");
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.handle[0]
    }

    pub fn handle(&self) -> &[usize] {
        &self.handle
    }

    pub fn teeth(&self) -> &[usize] {
        &self.teeth
    }

    pub fn mask(&self) -> u64 {
        bits::of(self.handle.iter().chain(&self.teeth).copied())
    }

    pub fn common_mask(&self) -> u64 {
        self.mask() & !(1 << self.top())
    }
}

/// Valid moves inside the common vertices reaching `z` with
/// `L(z) <= L(y) + 1`, where `y = x + sum_{v in moves} chi_{N(v)}`.
pub fn rake_normalize(g: &Graph, r: &RakeView, x: &Configuration, moves: u64) -> Result<(MoveSequence, Configuration)> {
    check_len(g, x)?;
    r.validate(g)?;
    if moves & !r.common_mask() != 0 {
        return Err(Error::Precondition(
            "the move set must lie inside the common vertices".into(),
        ));
    }
    let mut walk = Walk::new(g, x.bits());
    rake_engine(&mut walk, r, moves, false)?;
    Ok((walk.sequence(), walk.config()))
}

/// Drives `walk.cur` toward `walk.cur + sum_{residual} chi_N`.
///
/// Each round takes the residual vertices nearest the top. On the handle,
/// the nearest on vertex at or beyond that distance is pushed back to it
/// (through the last handle vertex when only a tooth is on); the residual
/// distance then strictly grows. Once only teeth remain, an on residual
/// tooth simply moves, shrinking the residual. The loop stops when nothing
/// beyond the nearest residual vertex is on, which leaves at most one
/// extra light next to it. With `allow_top` the residual may contain the
/// top itself.
pub(crate) fn rake_engine(walk: &mut Walk, r: &RakeView, mut residual: u64, allow_top: bool) -> Result<()> {
    debug_assert!(allow_top || !bits::has(residual, r.top()));
    let n = r.handle.len();
    while residual != 0 {
        let chain: Vec<usize> = match (0..n).find(|&i| bits::has(residual, r.handle[i])) {
            Some(dmin) => {
                if let Some(i) = (dmin..n).find(|&i| walk.on(r.handle[i])) {
                    (dmin..=i).rev().map(|j| r.handle[j]).collect()
                } else if let Some(&w) = r.teeth.iter().find(|&&w| walk.on(w)) {
                    std::iter::once(w).chain((dmin..n).rev().map(|j| r.handle[j])).collect()
                } else {
                    break;
                }
            }
            None => match r.teeth.iter().find(|&&w| bits::has(residual, w) && walk.on(w)) {
                Some(&w) => vec![w],
                None => break,
            },
        };
        for v in chain {
            walk.mv(v)?;
            residual ^= 1 << v;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;
    use crate::moves::{apply_move_set, replay};

    #[test]
    fn empty_move_set_keeps_x() {
        let g = family::rake(2, 2).unwrap();
        let r = RakeView::standard(2, 2);
        let x = Configuration::new(4, 0b1010).unwrap();
        let (seq, z) = rake_normalize(&g, &r, &x, 0).unwrap();
        assert!(seq.is_empty());
        assert_eq!(z, x);
    }

    #[test]
    fn star_tooth_move() {
        let g = family::rake(1, 3).unwrap();
        let r = RakeView::standard(1, 3);
        let x = Configuration::new(4, 0b1110).unwrap();
        let y = apply_move_set(&g, &x, 0b10).unwrap();
        let (seq, z) = rake_normalize(&g, &r, &x, 0b10).unwrap();
        assert_eq!(replay(&g, &x, &seq, true).unwrap(), z);
        assert!(z.light_number() <= y.light_number() + 1);
    }

    #[test]
    fn exhaustive_small_rakes() {
        for size in 2..=6usize {
            for n in 1..size {
                let k = size - n;
                let g0 = family::rake(n, k).unwrap();
                let r = RakeView::standard(n, k);
                let common = r.common_mask();
                for loops in 0u64..1 << size {
                    let g = g0.with_loops(loops);
                    for xb in 0u64..1 << size {
                        let x = Configuration::new(size, xb).unwrap();
                        let mut m = common;
                        loop {
                            let y = apply_move_set(&g, &x, m).unwrap();
                            let (seq, z) = rake_normalize(&g, &r, &x, m).unwrap();
                            assert!(z.light_number() <= y.light_number() + 1);
                            assert!(!seq.vertices().contains(&0), "top never moves");
                            assert_eq!(replay(&g, &x, &seq, true).unwrap(), z);
                            if m == 0 {
                                break;
                            }
                            m = (m - 1) & common;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn detect_reads_shapes() {
        let g = family::rake(3, 2).unwrap();
        let r = RakeView::detect(&g, 0, g.vertex_mask()).unwrap();
        assert_eq!(r, RakeView::standard(3, 2));
        let p = family::path(3).unwrap();
        let r = RakeView::detect(&p, 0, 0b111).unwrap();
        assert_eq!((r.handle(), r.teeth()), (&[0, 1][..], &[2][..]));
        assert!(RakeView::detect(&family::complete(3).unwrap(), 0, 0b111).is_err());
    }

    #[test]
    fn rejects_top_moves() {
        let g = family::rake(2, 2).unwrap();
        let r = RakeView::standard(2, 2);
        assert!(rake_normalize(&g, &r, &Configuration::zeros(4), 0b1).is_err());
    }
}

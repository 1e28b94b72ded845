//! Normalizing a pendant path to at most one light.

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::MoveSequence;

use super::{check_len, Walk};

/// Valid moves inside `path[1..]` after which at most one vertex of `path`
/// is on.
///
/// `path` must induce a path in `g` and only `path[0]` may have neighbors
/// off the path. Each round takes the first on vertex `t_y` and the next on
/// vertex `t`, and moves at `t, t-1, ..., t_y+1`; the first on index grows
/// strictly every round.
pub fn path_normalize(g: &Graph, path: &[usize], x: &Configuration) -> Result<(MoveSequence, Configuration)> {
    check_len(g, x)?;
    validate_path(g, path)?;
    let mut walk = Walk::new(g, x.bits());
    path_normalize_in(&mut walk, path)?;
    Ok((walk.sequence(), walk.config()))
}

fn validate_path(g: &Graph, path: &[usize]) -> Result<()> {
    let not_path = |m: &str| Err(Error::Precondition(format!("not a pendant path: {m}")));
    if path.is_empty() {
        return not_path("empty");
    }
    for &v in path {
        g.check(v)?;
    }
    let mask = bits::of(path.iter().copied());
    if mask.count_ones() as usize != path.len() {
        return not_path("repeated vertex");
    }
    for (i, &v) in path.iter().enumerate() {
        let mut expect = 0u64;
        if i > 0 {
            expect |= 1 << path[i - 1];
        }
        if i + 1 < path.len() {
            expect |= 1 << path[i + 1];
        }
        let adj = g.adjacent(v);
        if adj & mask != expect {
            return not_path("consecutive vertices must be exactly the adjacent pairs");
        }
        if i > 0 && adj & !mask != 0 {
            return not_path("an inner vertex has a neighbor off the path");
        }
    }
    Ok(())
}

pub(crate) fn path_normalize_in(walk: &mut Walk, path: &[usize]) -> Result<()> {
    loop {
        let mut on = (0..path.len()).filter(|&i| walk.on(path[i]));
        let (Some(ty), Some(t)) = (on.next(), on.next()) else {
            return Ok(());
        };
        for i in (ty + 1..=t).rev() {
            walk.mv(path[i])?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;
    use crate::moves::replay;

    fn cfg(s: &str) -> Configuration {
        Configuration::from_bitstring(s).unwrap()
    }

    #[test]
    fn trivial_inputs() {
        let g = family::path(4).unwrap();
        let p = [0, 1, 2, 3];
        for x in ["0000", "1000", "0010"] {
            let (seq, z) = path_normalize(&g, &p, &cfg(x)).unwrap();
            assert!(seq.is_empty());
            assert_eq!(z, cfg(x));
        }
    }

    #[test]
    fn p4_example() {
        let g = family::path(4).unwrap();
        let (seq, z) = path_normalize(&g, &[0, 1, 2, 3], &cfg("0101")).unwrap();
        assert_eq!(seq.vertices(), vec![3, 2]);
        assert_eq!(z, cfg("0010"));
    }

    #[test]
    fn all_decorated_paths_up_to_seven() {
        for n in 1..=7 {
            let g0 = family::path(n).unwrap();
            let p: Vec<usize> = (0..n).collect();
            for loops in 0u64..1 << n {
                let g = g0.with_loops(loops);
                for b in 0u64..1 << n {
                    let x = Configuration::new(n, b).unwrap();
                    let (seq, z) = path_normalize(&g, &p, &x).unwrap();
                    assert!(z.light_number() <= 1);
                    assert!(!seq.vertices().contains(&0));
                    assert_eq!(replay(&g, &x, &seq, true).unwrap(), z);
                }
            }
        }
    }

    #[test]
    fn rejects_non_paths() {
        let star = family::rake(1, 3).unwrap();
        assert!(path_normalize(&star, &[1, 0, 2], &cfg("0000")).is_err());
        let g = family::path(4).unwrap();
        assert!(path_normalize(&g, &[0, 2, 1], &cfg("0000")).is_err());
    }
}

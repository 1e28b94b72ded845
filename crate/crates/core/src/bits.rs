//! Helpers for vertex sets packed into a `u64`.

/// Iterates over the set bits of `mask` in ascending order.
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Mask of the first `n` vertices.
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn of(vertices: impl IntoIterator<Item = usize>) -> u64 {
    vertices.into_iter().fold(0, |m, v| m | (1u64 << v))
}

#[inline]
pub fn has(mask: u64, v: usize) -> bool {
    mask >> v & 1 == 1
}

/// Smallest vertex in `mask`.
pub fn min(mask: u64) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize)
}

/// Sort key under which a smaller value is a lexicographically smaller
/// bitstring (vertex 0 is the first character).
#[inline]
pub fn lex_key(mask: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_ascending() {
        assert_eq!(ones(0b1010_0110).collect::<Vec<_>>(), vec![1, 2, 5, 7]);
        assert_eq!(ones(0).count(), 0);
        assert_eq!(ones(u64::MAX).count(), 64);
    }

    #[test]
    fn lex_key_orders_bitstrings() {
        // "100" vs "010": vertex 0 on is lexicographically larger.
        assert!(lex_key(0b001, 3) > lex_key(0b010, 3));
        assert!(lex_key(0b100, 3) < lex_key(0b010, 3));
    }
}

use std::fmt;
use std::ops::BitXor;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;

/// An on/off assignment to the vertices of a graph: a vector over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    bits: u64,
}

impl Configuration {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if bits & !bits::full(n) != 0 {
            return Err(Error::Precondition(format!(
                "bits {bits:#x} set beyond vertex {n}"
            )));
        }
        Ok(Configuration { n, bits })
    }

    /// Caller guarantees `n <= 64` and no stray bits.
    #[inline]
    pub(crate) fn raw(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !bits::full(n) == 0);
        Configuration { n, bits }
    }

    pub fn zeros(n: usize) -> Self {
        Configuration { n, bits: 0 }
    }

    pub fn ones(n: usize) -> Self {
        Configuration {
            n,
            bits: bits::full(n),
        }
    }

    /// Indicator vector of `vertices`.
    pub fn indicator(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut bits = 0;
        for &v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1 << v;
        }
        Configuration::new(n, bits)
    }

    /// Parses `"1010"`, where character `i` is the state of vertex `i`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        let n = s.chars().count();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("bad configuration character {other:?}"),
                    })
                }
            }
        }
        Ok(Configuration { n, bits })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.n)
            .map(|i| if bits::has(self.bits, i) { '1' } else { '0' })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, v: usize) -> bool {
        bits::has(self.bits, v)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// L(x): number of on vertices.
    pub fn light_number(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// `x + chi_S` for the vertex set `mask`.
    pub fn toggled(&self, mask: u64) -> Self {
        Configuration {
            n: self.n,
            bits: self.bits ^ (mask & bits::full(self.n)),
        }
    }

    pub fn on_vertices(&self) -> Vec<usize> {
        bits::ones(self.bits).collect()
    }
}

impl BitXor for Configuration {
    type Output = Configuration;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "configurations of different length");
        Configuration {
            n: self.n,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({})", self.to_bitstring())
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Configuration::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

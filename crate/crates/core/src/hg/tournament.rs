use serde::{Deserialize, Serialize};

use super::bitmap;
use super::colex::binom;
use super::MAX_VERTICES;
use crate::error::{invalid, Result};

/// Orientation of K_n. `out[i]` has bit j set iff the arc is i→j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

/// Pair bits in colex order of {i<j}; set ⇔ i→j.
#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    encoding: String,
    arcs: String,
}

impl TryFrom<Wire> for Tournament {
    type Error = crate::Error;

    fn try_from(w: Wire) -> Result<Self> {
        if w.encoding != bitmap::ENCODING {
            return invalid(format!("unknown encoding {:?}", w.encoding));
        }
        if w.n > MAX_VERTICES {
            return invalid(format!("{} vertices exceeds the limit of {MAX_VERTICES}", w.n));
        }
        let bits = bitmap::decode(&w.arcs, binom(w.n, 2))?;
        Tournament::from_fn(w.n, |i, j| {
            let r = pair_rank(i, j);
            bits[r / 64] >> (r % 64) & 1 == 1
        })
    }
}

impl From<Tournament> for Wire {
    fn from(t: Tournament) -> Wire {
        let len = binom(t.n, 2);
        let mut words = vec![0u64; (len as usize).div_ceil(64)];
        for j in 0..t.n {
            for i in 0..j {
                if t.has_arc(i, j) {
                    let r = pair_rank(i, j);
                    words[r / 64] |= 1 << (r % 64);
                }
            }
        }
        Wire { n: t.n, encoding: bitmap::ENCODING.to_string(), arcs: bitmap::encode(&words, len) }
    }
}

fn pair_rank(i: usize, j: usize) -> usize {
    i + j * (j - 1) / 2
}

impl Tournament {
    /// `forward(i, j)` for i<j says whether the arc is i→j.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Tournament> {
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        let mut out = vec![0u64; n];
        for j in 0..n {
            for i in 0..j {
                if forward(i, j) {
                    out[i] |= 1 << j;
                } else {
                    out[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament { n, out })
    }

    pub fn from_out_masks(out: Vec<u64>) -> Result<Tournament> {
        let n = out.len();
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        for i in 0..n {
            if out[i] >> i & 1 == 1 || (n < 64 && out[i] >> n != 0) {
                return invalid(format!("vertex {i} has an arc to itself or outside the range"));
            }
            for j in i + 1..n {
                if (out[i] >> j & 1) == (out[j] >> i & 1) {
                    return invalid(format!("pair {{{i},{j}}} is not oriented exactly once"));
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// TT_n with arcs i→j for i<j.
    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |_, _| true).expect("size checked by caller")
    }

    /// C₃: 0→1→2→0.
    pub fn cyclic_triangle() -> Tournament {
        Tournament::from_fn(3, |i, j| !(i == 0 && j == 2)).expect("three vertices")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    #[inline]
    pub fn out_mask(&self, i: usize) -> u64 {
        self.out[i]
    }

    pub fn out_masks(&self) -> &[u64] {
        &self.out
    }

    /// Arcs (i, j) meaning i→j, i<j-major order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut a = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_arc(i, j) {
                    a.push((i, j));
                }
            }
        }
        a
    }

    pub fn score(&self, i: usize) -> u32 {
        self.out[i].count_ones()
    }
}

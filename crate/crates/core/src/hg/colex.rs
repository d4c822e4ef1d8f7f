use std::sync::OnceLock;

use crate::error::{invalid, Result};

const TABLE: usize = 65;

fn table() -> &'static [[u64; TABLE]; TABLE] {
    static T: OnceLock<Box<[[u64; TABLE]; TABLE]>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = Box::new([[0u64; TABLE]; TABLE]);
        for n in 0..TABLE {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// Binomial coefficient, zero when `k > n`.
#[inline]
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    if n < TABLE {
        return table()[n][k];
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(r).unwrap_or(u64::MAX)
}

/// Colex rank of a sorted set: Σ C(aᵢ, i).
pub fn colex_rank(s: &[u32]) -> Result<u64> {
    for w in s.windows(2) {
        if w[0] >= w[1] {
            return invalid(format!("subset {s:?} is not strictly increasing"));
        }
    }
    Ok(s.iter().enumerate().map(|(i, &a)| binom(a as usize, i + 1)).sum())
}

/// Inverse of [`colex_rank`] on the k-subsets of `0..n`.
pub fn colex_unrank(r: u64, k: usize, n: usize) -> Result<Vec<u32>> {
    if r >= binom(n, k) {
        return invalid(format!("rank {r} out of range for C({n},{k})"));
    }
    let mut out = vec![0u32; k];
    let mut r = r;
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest a < hi with C(a, i) <= r
        let mut a = hi - 1;
        while binom(a, i) > r {
            a -= 1;
        }
        out[i - 1] = a as u32;
        r -= binom(a, i);
        hi = a;
    }
    Ok(out)
}

#[inline]
pub fn mask_of(s: &[u32]) -> u64 {
    s.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

pub fn vertices_of(mut m: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Colex rank of the set encoded by a mask.
#[inline]
pub fn rank_of_mask(mut m: u64) -> u64 {
    let t = table();
    let mut r = 0;
    let mut i = 1;
    while m != 0 {
        let a = m.trailing_zeros() as usize;
        r += t[a][i];
        i += 1;
        m &= m - 1;
    }
    r
}

/// All k-subsets of `0..n` as masks, in colex order.
pub struct KSets {
    cur: Option<u64>,
    limit: u64,
}

impl KSets {
    pub fn new(n: usize, k: usize) -> KSets {
        let cur = if k <= n && n <= 64 {
            Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
        } else {
            None
        };
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        KSets { cur, limit }
    }
}

impl Iterator for KSets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let c = self.cur?;
        if c == 0 {
            // k = 0: the empty set once
            self.cur = None;
            return Some(0);
        }
        // Gosper's hack enumerates same-popcount masks in increasing order,
        // which is colex order on sets.
        let lo = c & c.wrapping_neg();
        let ripple = c.wrapping_add(lo);
        self.cur = if ripple == 0 {
            None
        } else {
            let next = ripple | (((c ^ ripple) >> 2) / lo);
            (next & !self.limit == 0).then_some(next)
        };
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(colex_rank(&[0, 1, 2]).unwrap(), 0);
        assert_eq!(colex_rank(&[1, 2, 3]).unwrap(), 3);
        assert!(colex_rank(&[2, 1]).is_err());
        assert!(colex_unrank(20, 3, 6).is_err());
    }

    #[test]
    fn ksets_follow_rank_order() {
        for n in 0..=9 {
            for k in 0..=n.min(5) {
                let all: Vec<u64> = KSets::new(n, k).collect();
                assert_eq!(all.len() as u64, binom(n, k));
                for (r, &m) in all.iter().enumerate() {
                    assert_eq!(rank_of_mask(m), r as u64);
                    assert_eq!(colex_unrank(r as u64, k, n).unwrap(), vertices_of(m));
                }
            }
        }
    }

    #[test]
    fn big_binomials() {
        assert_eq!(binom(64, 32), 1832624140942590534);
        assert_eq!(binom(70, 3), 54740);
    }
}

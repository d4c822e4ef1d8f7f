use serde::{Deserialize, Serialize};

use super::bitmap;
use super::colex::{binom, mask_of, rank_of_mask, vertices_of, KSets};
use super::MAX_VERTICES;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Red/blue coloring of all k-subsets of `0..n`, one bit per colex rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct TwoColoring {
    k: usize,
    n: usize,
    red: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    k: usize,
    n: usize,
    encoding: String,
    red_bitmap: String,
}

impl TryFrom<Wire> for TwoColoring {
    type Error = crate::Error;

    fn try_from(w: Wire) -> Result<Self> {
        if w.encoding != bitmap::ENCODING {
            return invalid(format!("unknown encoding {:?}", w.encoding));
        }
        check_dims(w.k, w.n)?;
        let red = bitmap::decode(&w.red_bitmap, binom(w.n, w.k))?;
        Ok(TwoColoring { k: w.k, n: w.n, red })
    }
}

impl From<TwoColoring> for Wire {
    fn from(c: TwoColoring) -> Wire {
        Wire {
            k: c.k,
            n: c.n,
            encoding: bitmap::ENCODING.to_string(),
            red_bitmap: bitmap::encode(&c.red, c.len()),
        }
    }
}

fn check_dims(k: usize, n: usize) -> Result<()> {
    if k < 1 {
        return invalid("uniformity must be positive");
    }
    if n > MAX_VERTICES {
        return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
    }
    Ok(())
}

impl TwoColoring {
    /// Every k-set gets `color`.
    pub fn uniform(k: usize, n: usize, color: Color) -> Result<TwoColoring> {
        check_dims(k, n)?;
        let len = binom(n, k);
        let mut red = vec![0u64; (len as usize).div_ceil(64)];
        if color == Color::Red {
            for r in 0..len {
                red[(r / 64) as usize] |= 1 << (r % 64);
            }
        }
        Ok(TwoColoring { k, n, red })
    }

    /// Colors each k-set (given as a mask) by `f`.
    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(u64) -> Color) -> Result<TwoColoring> {
        let mut c = TwoColoring::uniform(k, n, Color::Blue)?;
        for (r, m) in KSets::new(n, k).enumerate() {
            if f(m) == Color::Red {
                c.red[r / 64] |= 1 << (r % 64);
            }
        }
        Ok(c)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of k-sets, C(n,k).
    pub fn len(&self) -> u64 {
        binom(self.n, self.k)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn color_of_rank(&self, r: u64) -> Color {
        if self.red[(r / 64) as usize] >> (r % 64) & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Color of the k-set `m`; the caller guarantees `m` has k bits below n.
    #[inline]
    pub fn color_of_mask(&self, m: u64) -> Color {
        self.color_of_rank(rank_of_mask(m))
    }

    #[inline]
    pub fn is(&self, m: u64, color: Color) -> bool {
        self.color_of_mask(m) == color
    }

    pub fn color_of(&self, s: &[u32]) -> Result<Color> {
        let m = mask_of(s);
        if s.len() != self.k || m.count_ones() as usize != self.k || (self.n < 64 && m >> self.n != 0) {
            return invalid(format!("{s:?} is not a {}-subset of 0..{}", self.k, self.n));
        }
        Ok(self.color_of_mask(m))
    }

    pub fn set_rank(&mut self, r: u64, color: Color) {
        let (w, b) = ((r / 64) as usize, r % 64);
        match color {
            Color::Red => self.red[w] |= 1 << b,
            Color::Blue => self.red[w] &= !(1 << b),
        }
    }

    pub fn set_mask(&mut self, m: u64, color: Color) {
        self.set_rank(rank_of_mask(m), color);
    }

    pub fn count(&self, color: Color) -> u64 {
        let red: u64 = self.red.iter().map(|w| w.count_ones() as u64).sum();
        match color {
            Color::Red => red,
            Color::Blue => self.len() - red,
        }
    }

    /// Raw red bitmap words (bit r = rank r).
    pub fn words(&self) -> &[u64] {
        &self.red
    }

    /// Red and blue swapped.
    pub fn inverted(&self) -> TwoColoring {
        let mut c = self.clone();
        let len = self.len();
        for r in 0..len {
            c.red[(r / 64) as usize] ^= 1 << (r % 64);
        }
        c
    }

    /// The coloring induced on `verts`, relabelled to `0..verts.len()` in the
    /// given order.
    pub fn induced(&self, verts: &[u32]) -> Result<TwoColoring> {
        if mask_of(verts).count_ones() as usize != verts.len() {
            return invalid("induced vertex list repeats a vertex");
        }
        if let Some(&v) = verts.iter().find(|&&v| v as usize >= self.n) {
            return invalid(format!("vertex {v} out of range"));
        }
        TwoColoring::from_fn(self.k, verts.len(), |m| {
            let image = vertices_of(m).iter().fold(0u64, |a, &v| a | 1 << verts[v as usize]);
            self.color_of_mask(image)
        })
    }

    /// `result(π(S)) = self(S)`: vertex v is renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[u32]) -> Result<TwoColoring> {
        if perm.len() != self.n || mask_of(perm).count_ones() as usize != self.n {
            return invalid("not a permutation of the vertex set");
        }
        let mut inv = vec![0u32; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p as usize] = v as u32;
        }
        self.induced(&inv)
    }

    /// Red k-sets as a hypergraph.
    pub fn graph(&self, color: Color) -> super::Hypergraph {
        let masks = KSets::new(self.n, self.k).filter(|&m| self.is(m, color)).collect();
        super::Hypergraph::from_masks(self.k, self.n, masks).expect("k-sets of a coloring are valid edges")
    }

    /// (hits, total) of `color` over the given k-sets.
    pub fn count_in(&self, masks: impl IntoIterator<Item = u64>, color: Color) -> (u64, u64) {
        let mut hit = 0;
        let mut total = 0;
        for m in masks {
            total += 1;
            if self.is(m, color) {
                hit += 1;
            }
        }
        (hit, total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_round_trip() {
        let c = TwoColoring::from_fn(3, 5, |m| if m & 1 == 1 { Color::Red } else { Color::Blue }).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"k":3,"n":5,"encoding":"colex-v1","red_bitmap":""#));
        let back: TwoColoring = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        // {0,1,2},{0,1,3},{0,2,3},{0,1,4},{0,2,4},{0,3,4} have ranks 0,1,2,4,5,7
        assert_eq!(c.words()[0], 0b10110111);
    }

    #[test]
    fn rejects_wrong_length_or_encoding() {
        assert!(serde_json::from_str::<TwoColoring>(r#"{"k":3,"n":5,"encoding":"colex-v1","red_bitmap":"AA=="}"#).is_err());
        assert!(serde_json::from_str::<TwoColoring>(r#"{"k":3,"n":3,"encoding":"lex","red_bitmap":"AA=="}"#).is_err());
        assert!(serde_json::from_str::<TwoColoring>(r#"{"k":3,"n":3,"encoding":"colex-v1","red_bitmap":"AQ=="}"#).is_ok());
    }

    #[test]
    fn permutation_moves_colors() {
        let c = TwoColoring::from_fn(2, 3, |m| if m == 0b011 { Color::Red } else { Color::Blue }).unwrap();
        let p = c.permuted(&[2, 1, 0]).unwrap();
        assert_eq!(p.color_of(&[1, 2]).unwrap(), Color::Red);
        assert_eq!(p.color_of(&[0, 1]).unwrap(), Color::Blue);
        assert_eq!(c.inverted().count(Color::Red), 2);
    }
}

use serde::{Deserialize, Serialize};

use super::colex::{mask_of, rank_of_mask, vertices_of};
use super::MAX_VERTICES;
use crate::error::{invalid, Result};

/// A k-uniform hypergraph on `0..n`. Edges are sorted vertex lists kept in
/// colex order, without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Raw")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct Raw {
    k: usize,
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl TryFrom<Raw> for Hypergraph {
    type Error = crate::Error;

    fn try_from(r: Raw) -> Result<Self> {
        Hypergraph::new(r.k, r.n, r.edges)
    }
}

impl Hypergraph {
    /// Sorts each edge and the edge list; rejects malformed or repeated edges.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<u32>>) -> Result<Hypergraph> {
        if k < 1 {
            return invalid("uniformity must be positive");
        }
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        let mut masks = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.len() != k {
                return invalid(format!("edge {e:?} does not have {k} vertices"));
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return invalid(format!("vertex {v} out of range 0..{n}"));
            }
            let m = mask_of(e);
            if m.count_ones() as usize != k {
                return invalid(format!("edge {e:?} repeats a vertex"));
            }
            masks.push(m);
        }
        Self::from_masks(k, n, masks)
    }

    pub fn from_masks(k: usize, n: usize, mut masks: Vec<u64>) -> Result<Hypergraph> {
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        masks.sort_by_key(|&m| rank_of_mask(m));
        for w in masks.windows(2) {
            if w[0] == w[1] {
                return invalid(format!("duplicate edge {:?}", vertices_of(w[0])));
            }
        }
        let edges = masks.into_iter().map(vertices_of).collect();
        Ok(Hypergraph { k, n, edges })
    }

    pub fn empty(k: usize, n: usize) -> Hypergraph {
        Hypergraph { k, n, edges: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_masks(&self) -> Vec<u64> {
        self.edges.iter().map(|e| mask_of(e)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// No edge lies inside `set`.
    pub fn is_independent(&self, set: u64) -> bool {
        self.edges.iter().all(|e| mask_of(e) & !set != 0)
    }

    /// Disjoint union, `other` shifted past our vertices.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.k != other.k {
            return invalid("disjoint union of different uniformities");
        }
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| e.iter().map(|v| v + shift).collect()));
        Hypergraph::new(self.k, self.n + other.n, edges)
    }

    /// Connected components by shared vertices; isolated vertices are
    /// singleton components.
    pub fn components(&self) -> Vec<u64> {
        let masks = self.edge_masks();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            loop {
                let grown = masks.iter().filter(|&&m| m & comp != 0).fold(comp, |a, &m| a | m);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_edges() {
        let h = Hypergraph::new(3, 5, vec![vec![4, 2, 3], vec![2, 1, 0]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
    }

    #[test]
    fn json_contract() {
        let h: Hypergraph = serde_json::from_str(r#"{"k":3,"n":7,"edges":[[0,1,3],[1,2,4]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"k":3,"n":7,"edges":[[0,1,3],[1,2,4]]}"#);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"k":3,"n":2,"edges":[[0,1,3]]}"#).is_err());
    }

    #[test]
    fn components_split() {
        let h = Hypergraph::new(2, 5, vec![vec![0, 1], vec![3, 4]]).unwrap();
        assert_eq!(h.components(), vec![0b11, 0b100, 0b11000]);
    }
}

use serde::{Deserialize, Serialize};

use super::SearchStats;
use crate::error::{Error, Result};
use crate::hg::{mask_of, Color, Hypergraph, Tournament, TwoColoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    RedPath,
    RedCycle,
    BlueEmbedding,
    Free,
    IndependentSet,
    TtEmbedding,
}

/// A search outcome that can be re-checked without searching.
///
/// Path kinds carry a vertex sequence, embedding kinds a map indexed by
/// pattern vertex. The path and embedding kinds are named after the colors
/// they usually come in; `color` is what gets checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    pub witness: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Hypergraph>,
    pub exact: bool,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub enum Host<'a> {
    Coloring(&'a TwoColoring),
    Hypergraph(&'a Hypergraph),
    Tournament(&'a Tournament),
}

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Certificate(msg.into()))
}

/// Edges of the ℓ-path (or ℓ-cycle) traced by `seq`, as masks.
pub fn path_edges(seq: &[u32], k: usize, ell: usize, closed: bool) -> Result<Vec<u64>> {
    if ell == 0 || ell >= k {
        return bad(format!("ell={ell} out of range for k={k}"));
    }
    let step = k - ell;
    let p = seq.len();
    if mask_of(seq).count_ones() as usize != p || seq.iter().any(|&v| v >= 64) {
        return bad("sequence repeats a vertex");
    }
    if closed {
        if p < k || p % step != 0 {
            return bad(format!("cycle length {p} incompatible with k={k}, ell={ell}"));
        }
        let edges: Vec<u64> =
            (0..p / step).map(|i| (0..k).fold(0u64, |m, j| m | 1 << seq[(i * step + j) % p])).collect();
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            return bad("cycle repeats an edge");
        }
        Ok(edges)
    } else {
        if p < ell || (p - ell) % step != 0 {
            return bad(format!("path length {p} incompatible with k={k}, ell={ell}"));
        }
        Ok((0..(p - ell) / step).map(|i| mask_of(&seq[i * step..i * step + k])).collect())
    }
}

impl Certificate {
    pub fn new(kind: CertKind, witness: Vec<u32>, exact: bool, stats: SearchStats) -> Certificate {
        Certificate { kind, color: None, ell: None, witness, pattern: None, exact, stats, notes: Vec::new() }
    }

    pub fn with_color(mut self, c: Color) -> Self {
        self.color = Some(c);
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_pattern(mut self, h: Hypergraph) -> Self {
        self.pattern = Some(h);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// One pass over the witness. Freeness attestations are accepted here as
    /// long as they carry no witness; re-deriving them needs a search.
    pub fn validate(&self, host: Host) -> Result<()> {
        match (self.kind, host) {
            (CertKind::RedPath | CertKind::RedCycle, Host::Coloring(c)) => {
                let ell = self.ell.ok_or_else(|| Error::Certificate("path certificate without ell".into()))?;
                let color = self.color.unwrap_or(Color::Red);
                if self.witness.iter().any(|&v| v as usize >= c.n()) {
                    return bad("path vertex out of range");
                }
                let edges = path_edges(&self.witness, c.k(), ell, self.kind == CertKind::RedCycle)?;
                for e in edges {
                    if !c.is(e, color) {
                        return bad(format!("path edge {:?} is not {color}", crate::hg::vertices_of(e)));
                    }
                }
                Ok(())
            }
            (CertKind::BlueEmbedding, Host::Coloring(c)) => {
                let h = self.pattern.as_ref().ok_or_else(|| Error::Certificate("embedding without pattern".into()))?;
                let color = self.color.unwrap_or(Color::Blue);
                if h.k() != c.k() {
                    return bad("pattern and host have different uniformity");
                }
                check_injective(&self.witness, h.n(), c.n())?;
                for e in h.edges() {
                    let img = e.iter().fold(0u64, |m, &v| m | 1 << self.witness[v as usize]);
                    if !c.is(img, color) {
                        return bad(format!("image of edge {e:?} is not {color}"));
                    }
                }
                Ok(())
            }
            (CertKind::IndependentSet, Host::Hypergraph(h)) => {
                check_injective(&self.witness, self.witness.len(), h.n())?;
                if !h.is_independent(mask_of(&self.witness)) {
                    return bad("independent set contains an edge");
                }
                Ok(())
            }
            (CertKind::TtEmbedding, Host::Tournament(t)) => {
                check_injective(&self.witness, self.witness.len(), t.n())?;
                for (i, &a) in self.witness.iter().enumerate() {
                    for &b in &self.witness[i + 1..] {
                        if !t.has_arc(a as usize, b as usize) {
                            return bad(format!("arc {b}->{a} goes backwards"));
                        }
                    }
                }
                Ok(())
            }
            (CertKind::Free, _) => {
                if self.witness.is_empty() {
                    Ok(())
                } else {
                    bad("freeness attestation carries a witness")
                }
            }
            _ => bad("certificate kind does not match the host object"),
        }
    }
}

fn check_injective(map: &[u32], len: usize, n: usize) -> Result<()> {
    if map.len() != len {
        return bad(format!("witness has {} entries, expected {len}", map.len()));
    }
    if map.iter().any(|&v| v as usize >= n) {
        return bad("witness vertex out of range");
    }
    if mask_of(map).count_ones() as usize != map.len() {
        return bad("witness is not injective");
    }
    Ok(())
}

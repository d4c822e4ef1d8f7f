use serde::{Deserialize, Serialize};

use super::Hypergraph;
use crate::error::{invalid, Error, Result};

pub const DEFAULT_PROFILE_GUARD: usize = 16;

/// χ(H), σ(H) and an optimal proper coloring witnessing σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyProfile {
    pub chi: usize,
    pub sigma: usize,
    /// Class label of every vertex, labels numbered by first occurrence.
    pub witness: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl RamseyProfile {
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.chi];
        for (v, &c) in self.witness.iter().enumerate() {
            out[c].push(v as u32);
        }
        out
    }
}

struct Colorer<'a> {
    v: usize,
    colors: usize,
    /// edges grouped by their largest vertex
    closing: &'a [Vec<u64>],
    label: Vec<usize>,
    class: Vec<u64>,
    count: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
    minimise: bool,
}

impl Colorer<'_> {
    fn run(&mut self, v: usize, used: usize) -> bool {
        if v == self.v {
            if used < self.colors {
                return false;
            }
            let sigma = *self.count.iter().min().unwrap_or(&0);
            if self.best.as_ref().map_or(true, |(s, _)| sigma < *s) {
                self.best = Some((sigma, self.label.clone()));
            }
            return !self.minimise;
        }
        if self.minimise {
            if let Some((s, _)) = &self.best {
                // class counts only grow
                if self.count.iter().min().is_some_and(|m| m >= s) {
                    return false;
                }
            }
        }
        // remaining vertices must be able to open the unused colors
        if self.colors - used > self.v - v {
            return false;
        }
        let top = (used + 1).min(self.colors);
        for c in 0..top {
            let cls = self.class[c] | 1 << v;
            if self.closing[v].iter().any(|&e| e & cls == e) {
                continue;
            }
            self.class[c] = cls;
            self.count[c] += 1;
            self.label[v] = c;
            let done = self.run(v + 1, used.max(c + 1));
            self.class[c] &= !(1 << v);
            self.count[c] -= 1;
            if done {
                return true;
            }
        }
        false
    }
}

/// Exact χ and σ by backtracking over proper colorings, vertex by vertex.
pub fn ramsey_profile(h: &Hypergraph, guard: usize) -> Result<RamseyProfile> {
    let v = h.n();
    if v == 0 {
        return invalid("hypergraph has no vertices");
    }
    if v > guard {
        return Err(Error::Guard(format!("profile search limited to {guard} vertices, H has {v}")));
    }
    if h.num_edges() == 0 {
        return Ok(RamseyProfile {
            chi: 1,
            sigma: v,
            witness: vec![0; v],
            flags: vec!["edgeless: sigma set to v(H)".into()],
        });
    }
    if h.k() == 1 {
        return invalid("a 1-uniform hypergraph with edges has no proper coloring");
    }
    let mut closing = vec![Vec::new(); v];
    for e in h.edge_masks() {
        closing[63 - e.leading_zeros() as usize].push(e);
    }
    let mut chi = 2;
    loop {
        let mut c = Colorer {
            v,
            colors: chi,
            closing: &closing,
            label: vec![0; v],
            class: vec![0; chi],
            count: vec![0; chi],
            best: None,
            minimise: false,
        };
        if c.run(0, 0) {
            c.minimise = true;
            c.best = None;
            c.run(0, 0);
            let (sigma, witness) = c.best.expect("a proper coloring was found");
            return Ok(RamseyProfile { chi, sigma, witness, flags: Vec::new() });
        }
        chi += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurrBound {
    pub value: usize,
    /// v(G) ≥ σ(H); the bound is only claimed under this hypothesis.
    pub hypothesis_ok: bool,
}

/// (v(G)−1)(χ(H)−1)+σ(H).
pub fn burr_bound(v_g: usize, profile: &RamseyProfile) -> BurrBound {
    BurrBound {
        value: v_g.saturating_sub(1) * (profile.chi - 1) + profile.sigma,
        hypothesis_ok: v_g >= profile.sigma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg::{clique, fano, tournament_hypergraph, Tournament};

    #[test]
    fn k4() {
        let p = ramsey_profile(&clique(3, 4).unwrap(), 16).unwrap();
        assert_eq!((p.chi, p.sigma), (2, 2));
        assert_eq!(burr_bound(4, &p), BurrBound { value: 5, hypothesis_ok: true });
    }

    #[test]
    fn fano_and_tth() {
        assert_eq!(ramsey_profile(&fano(), 16).unwrap().chi, 3);
        let (h, _) = tournament_hypergraph(&Tournament::transitive(2), 3).unwrap();
        assert_eq!(ramsey_profile(&h, 16).unwrap().chi, 2);
    }

    #[test]
    fn edgeless_and_guard() {
        let p = ramsey_profile(&Hypergraph::empty(3, 5), 16).unwrap();
        assert_eq!((p.chi, p.sigma, p.flags.len()), (1, 5, 1));
        assert_eq!(burr_bound(9, &p).value, 5);
        assert!(matches!(ramsey_profile(&clique(3, 17).unwrap(), 16), Err(Error::Guard(_))));
        assert!(!burr_bound(1, &ramsey_profile(&clique(3, 4).unwrap(), 16).unwrap()).hypothesis_ok);
    }
}

use serde::{Deserialize, Serialize};

use crate::constructions::tau_lower_construction;
use crate::error::{invalid, Result};
use crate::hg::{binom, Hypergraph, KSets};
use crate::search::{has_two_edge_loose_path, independence_number, Limits, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauOptions {
    pub n_cap: usize,
    /// Largest C(n,k) enumerated; the family bitsets hold 128 sets.
    pub max_sets: u64,
    pub max_nodes: u64,
}

impl Default for TauOptions {
    fn default() -> Self {
        TauOptions { n_cap: 16, max_sets: 128, max_nodes: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauResult {
    pub k: usize,
    pub alpha: usize,
    pub value: Option<usize>,
    /// [lower, upper]; equal when exact.
    pub bracket: (usize, usize),
    pub witness: Option<Hypergraph>,
    pub lower_construction: usize,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// τ(k, α): largest order of a k-graph with independence number below α
/// and no two edges meeting in exactly one vertex.
///
/// Any such graph extends to a maximal family of pairwise compatible k-sets
/// (meeting in 0 or at least 2 vertices) without raising its independence
/// number, so it is enough to scan maximal families. Orders are tried from
/// the upper bound 2α−2 downwards.
pub fn tau_exact(k: usize, alpha: usize, opts: &TauOptions) -> Result<TauResult> {
    if k < 2 || alpha < 1 {
        return invalid("need k >= 2 and alpha >= 1");
    }
    let lower = tau_lower_construction(k, alpha)?;
    let lo_n = lower.graph.n();
    let upper = 2 * alpha - 2;
    let mut flags = Vec::new();
    if alpha == 1 {
        flags.push("alpha = 1: only the empty graph has independence number 0; reporting 0".into());
    }
    let mut stats = SearchStats::default();
    let top = upper.min(opts.n_cap);
    if top < upper {
        flags.push(format!("n_cap {} is below the upper bound {upper}", opts.n_cap));
    }
    for n in (0..=top).rev() {
        if binom(n, k) > opts.max_sets {
            flags.push(format!("C({n},{k}) exceeds the enumeration budget"));
            return Ok(bracketed(k, alpha, lo_n, upper, stats, flags));
        }
        let found = search_order(k, n, alpha, opts.max_nodes, &mut stats)?;
        match found {
            Search::Found(g) => {
                if n < upper && top < upper {
                    flags.push("orders above n_cap were not examined".into());
                    let mut r = bracketed(k, alpha, n, upper, stats, flags);
                    r.witness = Some(g);
                    return Ok(r);
                }
                return Ok(TauResult {
                    k,
                    alpha,
                    value: Some(n),
                    bracket: (n, n),
                    witness: Some(g),
                    lower_construction: lo_n,
                    stats,
                    flags,
                });
            }
            Search::None => {}
            Search::Budget => {
                flags.push(format!("node budget exhausted at order {n}"));
                return Ok(bracketed(k, alpha, lo_n, upper, stats, flags));
            }
        }
    }
    unreachable!("order 0 always has the empty graph")
}

fn bracketed(k: usize, alpha: usize, lo: usize, hi: usize, stats: SearchStats, flags: Vec<String>) -> TauResult {
    TauResult { k, alpha, value: None, bracket: (lo, hi), witness: None, lower_construction: lo, stats, flags }
}

enum Search {
    Found(Hypergraph),
    None,
    Budget,
}

/// Bron–Kerbosch with pivoting over the compatibility graph on k-sets.
fn search_order(k: usize, n: usize, alpha: usize, max_nodes: u64, stats: &mut SearchStats) -> Result<Search> {
    let sets: Vec<u64> = KSets::new(n, k).collect();
    let m = sets.len();
    let compat: Vec<u128> = (0..m)
        .map(|i| {
            (0..m).filter(|&j| j != i && (sets[i] & sets[j]).count_ones() != 1).fold(0u128, |a, j| a | 1 << j)
        })
        .collect();
    let all = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    let mut bk = Bk { k, n, alpha, sets: &sets, compat: &compat, budget: max_nodes, stats, out: None, over: false };
    bk.run(0, all, 0);
    if let Some(g) = bk.out {
        return Ok(Search::Found(g));
    }
    Ok(if bk.over { Search::Budget } else { Search::None })
}

struct Bk<'a> {
    k: usize,
    n: usize,
    alpha: usize,
    sets: &'a [u64],
    compat: &'a [u128],
    budget: u64,
    stats: &'a mut SearchStats,
    out: Option<Hypergraph>,
    over: bool,
}

impl Bk<'_> {
    fn run(&mut self, r: u128, p: u128, x: u128) {
        if self.out.is_some() || self.over {
            return;
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.over = true;
            return;
        }
        if p == 0 && x == 0 {
            self.leaf(r);
            return;
        }
        let px = p | x;
        let pivot = (0..128).filter(|&u| px >> u & 1 == 1).max_by_key(|&u| (self.compat[u] & p).count_ones()).unwrap();
        let mut cand = p & !self.compat[pivot];
        let (mut p, mut x) = (p, x);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.run(r | 1 << v, p & self.compat[v], x & self.compat[v]);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    fn leaf(&mut self, r: u128) {
        let masks: Vec<u64> = (0..self.sets.len()).filter(|&i| r >> i & 1 == 1).map(|i| self.sets[i]).collect();
        let g = Hypergraph::from_masks(self.k, self.n, masks).expect("k-sets are valid edges");
        let lim = Limits { independence: 64, ..Limits::default() };
        let a = independence_number(&g, &lim).expect("guard raised to the vertex limit").alpha;
        if a < self.alpha {
            debug_assert!(has_two_edge_loose_path(&g).is_none());
            self.out = Some(g);
        } else {
            self.stats.prunes += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs_are_matchings() {
        for alpha in 2..=5 {
            let r = tau_exact(2, alpha, &TauOptions::default()).unwrap();
            assert_eq!(r.value, Some(2 * alpha - 2));
        }
    }

    #[test]
    fn small_alpha() {
        assert_eq!(tau_exact(3, 2, &TauOptions::default()).unwrap().value, Some(1));
        let one = tau_exact(3, 1, &TauOptions::default()).unwrap();
        assert_eq!((one.value, one.flags.len()), (Some(0), 1));
    }
}

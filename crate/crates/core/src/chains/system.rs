//! Path systems: a forest on the red cliques whose every edge carries two
//! vertex-disjoint red ℓ-paths between its end cliques.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::connect::{find_ell_path, for_each_ell_path, PathQuery};
use crate::error::{invalid, Result};
use crate::hg::{mask_of, vertices_of, Color, KSets, TwoColoring};
use crate::par;
use crate::search::SearchStats;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemOptions {
    pub alpha: usize,
    pub epsilon: f64,
    /// Node budget per connector search.
    pub budget: u64,
}

impl Default for SystemOptions {
    fn default() -> Self {
        SystemOptions { alpha: 2, epsilon: 0.5, budget: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub k: usize,
    pub ell: usize,
    pub blocks: Vec<Vec<u32>>,
    pub forest: Vec<(usize, usize)>,
    /// Two paths per forest edge (x, y), each starting in V_x and ending in V_y.
    pub paths: Vec<[Vec<u32>; 2]>,
}

impl PathSystem {
    pub fn used(&self) -> u64 {
        self.paths.iter().flatten().fold(0, |m, p| m | mask_of(p))
    }

    /// Forest components as sorted block lists, ordered by smallest block.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = Dsu::new(self.blocks.len());
        for &(a, b) in &self.forest {
            uf.union(a, b);
        }
        uf.groups()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemOutcome {
    pub system: PathSystem,
    /// Set when the merging phase could not reduce the component count
    /// below α.
    pub stalled: Option<String>,
    /// Path vertices per block.
    pub usage: Vec<usize>,
    pub usage_ok: bool,
    /// No two components still admit two disjoint short connectors; `None`
    /// if the final check ran out of budget.
    pub property_d: Option<bool>,
    pub stats: SearchStats,
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }

    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut g: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            g.entry(r).or_default().push(x);
        }
        g.into_values().collect()
    }
}

/// Builds the system for ℓ ∈ {1, k−1}: merge components through repeated
/// connectors while there are at least α of them, then add edges while two
/// components still have two disjoint connectors of order ≤ 2k.
pub fn build_path_system(c: &TwoColoring, blocks: &[Vec<u32>], ell: usize, opts: &SystemOptions) -> Result<SystemOutcome> {
    let k = c.k();
    if ell != 1 && ell + 1 != k {
        return invalid(format!("path systems need ell = 1 or ell = k-1, got ell={ell}, k={k}"));
    }
    let mut seen = 0u64;
    for (i, b) in blocks.iter().enumerate() {
        let m = mask_of(b);
        if m.count_ones() as usize != b.len() || m & seen != 0 || b.iter().any(|&v| v as usize >= c.n()) {
            return invalid(format!("block {i} repeats or shares vertices"));
        }
        seen |= m;
        let verts = vertices_of(m);
        if let Some(bad) = KSets::new(verts.len(), k).find(|&s| {
            let e = vertices_of(s).iter().fold(0u64, |a, &j| a | 1 << verts[j as usize]);
            !c.is(e, Color::Red)
        }) {
            let e: Vec<u32> = vertices_of(bad).iter().map(|&j| verts[j as usize]).collect();
            return invalid(format!("block {i} is not a red clique: {e:?} is blue"));
        }
    }
    let bmask: Vec<u64> = blocks.iter().map(|b| mask_of(b)).collect();
    let mut sys = PathSystem { k, ell, blocks: blocks.iter().map(|b| vertices_of(mask_of(b))).collect(), forest: vec![], paths: vec![] };
    let mut stats = SearchStats::default();
    let mut stalled = None;

    loop {
        let comps = sys.components();
        if comps.len() < opts.alpha.max(2) {
            break;
        }
        let used = sys.used();
        let usage = |i: usize| (bmask[i] & used).count_ones();
        // least-used block per component
        let chosen: Vec<usize> = comps.iter().map(|g| *g.iter().min_by_key(|&&i| (usage(i), i)).unwrap()).collect();
        let merged = if ell == 1 {
            merge_matching(c, &bmask, &chosen, used, &mut sys)
        } else {
            merge_tight(c, &bmask, &chosen, used, opts.budget, &mut sys, &mut stats)
        };
        if let Err(why) = merged {
            stalled = Some(format!("merging stalled with {} components (alpha={}): {why}", comps.len(), opts.alpha));
            break;
        }
    }

    // augmentation until no pair of components has two disjoint connectors
    let max_order = 2 * k;
    let property_d = loop {
        let comps = sys.components();
        let mut comp_of = vec![0; blocks.len()];
        for (ci, g) in comps.iter().enumerate() {
            for &i in g {
                comp_of[i] = ci;
            }
        }
        let pairs: Vec<(usize, usize)> =
            (0..blocks.len()).flat_map(|i| (i + 1..blocks.len()).map(move |j| (i, j))).filter(|&(i, j)| comp_of[i] != comp_of[j]).collect();
        let used = sys.used();
        let all = if c.n() == 64 { u64::MAX } else { (1u64 << c.n()) - 1 };
        let out = par::first_success(&pairs, |&(i, j), _| {
            let mut st = SearchStats::default();
            let q = PathQuery {
                ell,
                color: Color::Red,
                starts: bmask[i] & !used,
                ends: bmask[j] & !used,
                allowed: all & !used,
                orders: PathQuery::up_to(k, ell, max_order),
                budget: opts.budget,
            };
            let (hit, complete) = two_disjoint(c, &q, &mut st);
            (hit, (st, complete))
        });
        for (s, _) in &out.side {
            stats.add(*s);
        }
        match out.hit {
            Some((idx, (p1, p2))) => {
                sys.forest.push(pairs[idx]);
                sys.paths.push([p1, p2]);
            }
            None => break out.side.iter().all(|(_, complete)| *complete).then_some(true),
        }
    };

    let used = sys.used();
    let usage: Vec<usize> = bmask.iter().map(|m| (m & used).count_ones() as usize).collect();
    let usage_ok = usage.iter().zip(&sys.blocks).all(|(&u, b)| u as f64 <= opts.epsilon * b.len() as f64);
    Ok(SystemOutcome { system: sys, stalled, usage, usage_ok, property_d, stats })
}

/// First pair (lexicographic in the first path) of vertex-disjoint matches.
fn two_disjoint(c: &TwoColoring, q: &PathQuery, stats: &mut SearchStats) -> (Option<(Vec<u32>, Vec<u32>)>, bool) {
    let mut hit = None;
    let mut inner_ok = true;
    let mut inner = SearchStats::default();
    let complete = for_each_ell_path(c, q, stats, |p1| {
        let m = mask_of(p1);
        let q2 = PathQuery { starts: q.starts & !m, ends: q.ends & !m, allowed: q.allowed & !m, ..q.clone() };
        let mut st = SearchStats::default();
        let r = find_ell_path(c, &q2, &mut st);
        if st.nodes >= q.budget {
            inner_ok = false;
        }
        inner.add(st);
        match r {
            Some(p2) => {
                hit = Some((p1.to_vec(), p2));
                false
            }
            None => true,
        }
    });
    stats.add(inner);
    (hit, complete && inner_ok)
}

/// ℓ = k−1: greedily collect disjoint connectors of order 2k−2 between the
/// chosen blocks; the first pair to receive two becomes a forest edge.
fn merge_tight(
    c: &TwoColoring,
    bmask: &[u64],
    chosen: &[usize],
    used: u64,
    budget: u64,
    sys: &mut PathSystem,
    stats: &mut SearchStats,
) -> std::result::Result<(), String> {
    let k = c.k();
    let mut taken = used;
    let mut count: BTreeMap<(usize, usize), Vec<Vec<u32>>> = BTreeMap::new();
    let mut found = 0;
    loop {
        let mut progress = false;
        for (a, &x) in chosen.iter().enumerate() {
            for &y in &chosen[a + 1..] {
                let q = PathQuery {
                    ell: k - 1,
                    color: Color::Red,
                    starts: bmask[x] & !taken,
                    ends: bmask[y] & !taken,
                    allowed: (bmask[x] | bmask[y]) & !taken,
                    orders: vec![2 * k - 2],
                    budget,
                };
                if let Some(p) = find_ell_path(c, &q, stats) {
                    taken |= mask_of(&p);
                    found += 1;
                    progress = true;
                    let list = count.entry((x, y)).or_default();
                    list.push(p);
                    if list.len() == 2 {
                        let p2 = list.pop().unwrap();
                        let p1 = list.pop().unwrap();
                        sys.forest.push((x, y));
                        sys.paths.push([p1, p2]);
                        return Ok(());
                    }
                }
            }
        }
        if !progress {
            return Err(format!("{found} disjoint connectors found, no pair of blocks received two"));
        }
    }
}

/// ℓ = 1: a greedy red matching across the chosen blocks, grouped by how
/// each edge meets them; a group of 2(|I′|−1) edges touching the blocks I′
/// supplies a path-shaped tree on I′.
fn merge_matching(c: &TwoColoring, bmask: &[u64], chosen: &[usize], used: u64, sys: &mut PathSystem) -> std::result::Result<(), String> {
    let k = c.k();
    let pool = chosen.iter().fold(0u64, |m, &i| m | bmask[i]) & !used;
    let verts = vertices_of(pool);
    let mut taken = 0u64;
    let mut groups: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for s in KSets::new(verts.len(), k) {
        let e = vertices_of(s).iter().fold(0u64, |a, &j| a | 1 << verts[j as usize]);
        if e & taken != 0 || !c.is(e, Color::Red) {
            continue;
        }
        let profile: Vec<usize> = chosen.iter().map(|&i| (e & bmask[i]).count_ones() as usize).collect();
        if profile.iter().filter(|&&p| p > 0).count() < 2 {
            continue;
        }
        taken |= e;
        groups.entry(profile).or_default().push(e);
    }
    let total: usize = groups.values().map(Vec::len).sum();
    for (profile, edges) in &groups {
        let touched: Vec<usize> = chosen.iter().zip(profile).filter(|(_, &p)| p > 0).map(|(&i, _)| i).collect();
        let need = 2 * (touched.len() - 1);
        if edges.len() < need {
            continue;
        }
        for (t, w) in touched.windows(2).enumerate() {
            let (x, y) = (w[0], w[1]);
            let orient = |e: u64| {
                let first = vertices_of(e & bmask[x])[0];
                let last = vertices_of(e & bmask[y])[0];
                let mut seq = vec![first];
                seq.extend(vertices_of(e & !(1 << first) & !(1 << last)));
                seq.push(last);
                seq
            };
            sys.forest.push((x, y));
            sys.paths.push([orient(edges[2 * t]), orient(edges[2 * t + 1])]);
        }
        return Ok(());
    }
    Err(format!("matching of {total} crossing edges has no profile class large enough"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two red K_7 joined by red edges {0,1,7}, {2,3,8}; everything else blue.
    fn two_blocks() -> (TwoColoring, Vec<Vec<u32>>) {
        let a = mask_of(&(0..7).collect::<Vec<_>>());
        let b = a << 7;
        let c = TwoColoring::from_fn(3, 14, |m| {
            if m & !a == 0 || m & !b == 0 || m == mask_of(&[0, 1, 7]) || m == mask_of(&[2, 3, 8]) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .unwrap();
        (c, vec![(0..7).collect(), (7..14).collect()])
    }

    #[test]
    fn loose_system_joins_two_blocks() {
        let (c, blocks) = two_blocks();
        let out = build_path_system(&c, &blocks, 1, &SystemOptions { alpha: 2, epsilon: 0.5, budget: 1 << 22 }).unwrap();
        assert!(out.stalled.is_none());
        assert_eq!(out.system.forest, vec![(0, 1)]);
        assert_eq!(out.system.paths[0], [vec![0, 1, 7], vec![2, 3, 8]]);
        assert_eq!(out.property_d, Some(true));
        assert_eq!(out.usage, vec![4, 2]);
        assert!(!out.usage_ok);
    }

    #[test]
    fn stall_is_reported() {
        let (c, blocks) = two_blocks();
        let out = build_path_system(&c, &blocks, 2, &SystemOptions { alpha: 2, epsilon: 0.5, budget: 1 << 22 }).unwrap();
        assert!(out.stalled.is_some());
        assert!(out.system.forest.is_empty());
    }

    #[test]
    fn rejects_middle_ell() {
        let c = TwoColoring::uniform(4, 8, Color::Red).unwrap();
        assert!(build_path_system(&c, &[vec![0, 1, 2, 3]], 2, &SystemOptions::default()).is_err());
    }
}

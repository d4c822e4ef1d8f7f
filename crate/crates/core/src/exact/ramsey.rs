use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canon::canonical_coloring;
use crate::error::{invalid, Result};
use crate::hg::{binom, rank_of_mask, Color, Hypergraph, KSets, TwoColoring};
use crate::par;
use crate::pattern::Pattern;
use crate::search::{AnchoredEmbedder, HostView, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyOptions {
    /// Largest C(n,k) the search will take on.
    pub max_sets: u64,
    /// Keep one coloring per isomorphism class at every level.
    pub canonical: bool,
}

impl Default for RamseyOptions {
    fn default() -> Self {
        RamseyOptions { max_sets: 36, canonical: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub n: usize,
    /// Free colorings kept at this level (classes in canonical mode).
    pub free: usize,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub red: String,
    pub blue: String,
    /// Exact value when the search ran to exhaustion.
    pub value: Option<usize>,
    /// Proven lower bound: the value itself, or one past the largest order
    /// with a known free coloring.
    pub lower_bound: usize,
    /// Free coloring on lower_bound − 1 vertices.
    pub lower_witness: Option<TwoColoring>,
    /// Exhaustion record, one entry per order examined.
    pub levels: Vec<LevelStats>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RamseyResult {
    /// A bound coming only from a verified free coloring.
    pub fn from_lower_witness(red: &str, blue: &str, witness: TwoColoring) -> RamseyResult {
        RamseyResult {
            red: red.into(),
            blue: blue.into(),
            value: None,
            lower_bound: witness.n() + 1,
            lower_witness: Some(witness),
            levels: Vec::new(),
            notes: vec!["lower bound from a construction".into()],
        }
    }
}

pub fn ramsey_exact(g: &Pattern, h: &Hypergraph, n_cap: usize, opts: &RamseyOptions) -> Result<RamseyResult> {
    let mut r = ramsey_exact_graphs(&g.hypergraph()?, h, n_cap, opts)?;
    r.red = g.descriptor();
    Ok(r)
}

/// R(G,H) for two fixed hypergraphs, growing free colorings one vertex at a
/// time. Every free coloring on n vertices restricts to a free coloring on
/// n−1, so extending each free coloring of the previous level by all
/// colorings of the new sets finds them all.
pub fn ramsey_exact_graphs(g: &Hypergraph, h: &Hypergraph, n_cap: usize, opts: &RamseyOptions) -> Result<RamseyResult> {
    let k = g.k();
    if h.k() != k {
        return invalid(format!("red pattern is {k}-uniform, blue is {}-uniform", h.k()));
    }
    if n_cap > 64 {
        return invalid("n_cap above 64");
    }
    let red_emb = AnchoredEmbedder::new(g);
    let blue_emb = AnchoredEmbedder::new(h);
    let mut level: BTreeMap<Vec<u64>, TwoColoring> = BTreeMap::new();
    let empty = TwoColoring::uniform(k, 0, Color::Blue)?;
    level.insert(empty.words().to_vec(), empty);
    let mut levels = Vec::new();
    let mut notes = Vec::new();
    for n in 1..=n_cap {
        if binom(n, k) > opts.max_sets {
            notes.push(format!("stopped before {n} vertices: C({n},{k}) exceeds the budget of {}", opts.max_sets));
            return Ok(bracket(g, h, level, levels, notes));
        }
        // an edgeless pattern appears as soon as it fits
        if (g.num_edges() == 0 && n >= g.n()) || (h.num_edges() == 0 && n >= h.n()) {
            levels.push(LevelStats { n, free: 0, stats: SearchStats::default() });
            return Ok(done(g, h, n, level, levels, notes));
        }
        let parents: Vec<&TwoColoring> = level.values().collect();
        let grown = par::map(&parents, |p| extend(p, &red_emb, &blue_emb));
        let mut next = BTreeMap::new();
        let mut stats = SearchStats::default();
        for (children, s) in grown {
            stats.add(s);
            for c in children {
                let (key, rep) = if opts.canonical { canonical_coloring(&c) } else { (c.words().to_vec(), c) };
                next.entry(key).or_insert(rep);
            }
        }
        levels.push(LevelStats { n, free: next.len(), stats });
        if next.is_empty() {
            return Ok(done(g, h, n, level, levels, notes));
        }
        level = next;
    }
    notes.push(format!("free colorings exist on n_cap = {n_cap} vertices"));
    Ok(bracket(g, h, level, levels, notes))
}

fn first(level: BTreeMap<Vec<u64>, TwoColoring>) -> Option<TwoColoring> {
    level.into_values().next()
}

fn done(
    g: &Hypergraph,
    h: &Hypergraph,
    n: usize,
    prev: BTreeMap<Vec<u64>, TwoColoring>,
    levels: Vec<LevelStats>,
    notes: Vec<String>,
) -> RamseyResult {
    RamseyResult {
        red: describe(g),
        blue: describe(h),
        value: Some(n),
        lower_bound: n,
        lower_witness: first(prev),
        levels,
        notes,
    }
}

fn bracket(
    g: &Hypergraph,
    h: &Hypergraph,
    level: BTreeMap<Vec<u64>, TwoColoring>,
    levels: Vec<LevelStats>,
    notes: Vec<String>,
) -> RamseyResult {
    let w = first(level).expect("a nonempty level");
    RamseyResult { red: describe(g), blue: describe(h), value: None, lower_bound: w.n() + 1, lower_witness: Some(w), levels, notes }
}

fn describe(h: &Hypergraph) -> String {
    format!("{}-graph on {} vertices with {} edges", h.k(), h.n(), h.num_edges())
}

/// Parent coloring plus the partially colored sets through the new vertex.
struct Partial<'a> {
    parent: &'a TwoColoring,
    x: u32,
    /// 0 unassigned, else 1 + color index
    state: &'a [u8],
    want: u8,
}

const RED: u8 = 1;
const BLUE: u8 = 2;

impl HostView for Partial<'_> {
    fn n(&self) -> usize {
        self.x as usize + 1
    }

    fn is_edge(&self, m: u64) -> bool {
        if m >> self.x & 1 == 1 {
            self.state[rank_of_mask(m & !(1 << self.x)) as usize] == self.want
        } else {
            let c = if self.want == RED { Color::Red } else { Color::Blue };
            self.parent.is(m, c)
        }
    }
}

/// All free one-vertex extensions of `p`, in DFS order.
fn extend(p: &TwoColoring, red: &AnchoredEmbedder, blue: &AnchoredEmbedder) -> (Vec<TwoColoring>, SearchStats) {
    let (k, n) = (p.k(), p.n() + 1);
    let x = p.n() as u32;
    let sets: Vec<u64> = KSets::new(n - 1, k - 1).map(|s| s | 1 << x).collect();
    let mut state = vec![0u8; sets.len()];
    let mut out = Vec::new();
    let mut stats = SearchStats::default();
    dfs(p, x, &sets, 0, &mut state, red, blue, &mut out, &mut stats);
    (out, stats)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    p: &TwoColoring,
    x: u32,
    sets: &[u64],
    i: usize,
    state: &mut Vec<u8>,
    red: &AnchoredEmbedder,
    blue: &AnchoredEmbedder,
    out: &mut Vec<TwoColoring>,
    stats: &mut SearchStats,
) {
    stats.nodes += 1;
    if i == sets.len() {
        let base = binom(x as usize, p.k());
        let mut c = TwoColoring::uniform(p.k(), x as usize + 1, Color::Blue).expect("dimensions checked by caller");
        for r in 0..base {
            if p.color_of_rank(r) == Color::Red {
                c.set_rank(r, Color::Red);
            }
        }
        for (j, &s) in state.iter().enumerate() {
            if s == RED {
                c.set_rank(base + j as u64, Color::Red);
            }
        }
        out.push(c);
        return;
    }
    for (want, emb) in [(RED, red), (BLUE, blue)] {
        state[i] = want;
        let view = Partial { parent: p, x, state, want };
        if emb.through(&view, sets[i], stats) {
            stats.prunes += 1;
        } else {
            dfs(p, x, sets, i + 1, state, red, blue, out, stats);
        }
    }
    state[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg::{clique, single_edge};

    #[test]
    fn single_edges() {
        let e = single_edge(3).unwrap();
        let r = ramsey_exact_graphs(&e, &e, 6, &RamseyOptions::default()).unwrap();
        assert_eq!(r.value, Some(3));
        assert_eq!(r.lower_witness.unwrap().n(), 2);
    }

    #[test]
    fn edge_versus_clique() {
        let e = single_edge(3).unwrap();
        let k4 = clique(3, 4).unwrap();
        let r = ramsey_exact_graphs(&e, &k4, 6, &RamseyOptions::default()).unwrap();
        assert_eq!(r.value, Some(4));
        let w = r.lower_witness.unwrap();
        assert_eq!(w.count(Color::Red), 0);
    }

    #[test]
    fn budget_gives_bracket() {
        let k4 = clique(3, 4).unwrap();
        let opts = RamseyOptions { max_sets: 4, canonical: true };
        let r = ramsey_exact_graphs(&k4, &k4, 8, &opts).unwrap();
        assert_eq!((r.value, r.lower_bound), (None, 5));
    }
}

use serde::{Deserialize, Serialize};

use super::absorb::{absorbing_block, pair_density, random_embed, AbsorbParams};
use super::dichotomy::{butterfly_dichotomy, ButterflyOutcome};
use super::{cycle_of, elements, embed_on, open_chain, path_prefix, shrink_closed, EngineReport};
use crate::chains::{assemble_chains, build_path_system, clique_partition, cut_open, validate_chain, CliqueChain, SystemOptions};
use crate::error::{invalid, Result};
use crate::hg::{mask_of, tournament_hypergraph, vertices_of, Color, Tournament, TwoColoring};
use crate::pattern::Pattern;
use crate::search::{find_mono_copy, find_mono_copy_in, path_edges, red_copy, CertKind, Limits, SearchStats};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightParams {
    pub n: usize,
    #[serde(default)]
    pub cycle: bool,
    #[serde(default = "default_block")]
    pub block: usize,
    #[serde(default = "default_alpha")]
    pub alpha: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Absorbing-block parameter d.
    #[serde(default = "default_d")]
    pub d: usize,
    /// Density threshold; `None` uses (χ²m³)⁻¹.
    #[serde(default)]
    pub gamma: Option<f64>,
    /// Class size of the blue H(TT_{χ−1}, q) hosting the absorbing blocks.
    #[serde(default = "default_q")]
    pub q: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "yes")]
    pub fallback: bool,
}

fn default_block() -> usize {
    5
}
fn default_alpha() -> usize {
    2
}
fn default_epsilon() -> f64 {
    0.5
}
fn default_d() -> usize {
    1
}
fn default_q() -> usize {
    2
}
fn default_trials() -> usize {
    20
}
fn default_budget() -> u64 {
    200_000
}
fn yes() -> bool {
    true
}

impl TightParams {
    pub fn path(n: usize) -> TightParams {
        TightParams {
            n,
            cycle: false,
            block: default_block(),
            alpha: default_alpha(),
            epsilon: default_epsilon(),
            d: default_d(),
            gamma: None,
            q: default_q(),
            trials: default_trials(),
            seed: 0,
            budget: default_budget(),
            fallback: true,
        }
    }
}

/// Known values of the tournament Ramsey numbers.
fn known_directed(chi: usize) -> Option<usize> {
    [1, 1, 2, 4, 8].get(chi).copied()
}

/// Red tight path (or cycle) on `p.n` vertices versus blue H(TT_χ, m).
pub fn tight_witness_engine(c: &TwoColoring, chi: usize, m: usize, p: &TightParams) -> Result<EngineReport> {
    if c.k() != 3 {
        return invalid("the tight engine is 3-uniform");
    }
    if chi < 1 || m < 1 {
        return invalid("chi and m must be positive");
    }
    if p.cycle { crate::hg::ell_cycle(3, 2, p.n)? } else { crate::hg::ell_path(3, 2, p.n)? };
    let (h, _) = tournament_hypergraph(&Tournament::transitive(chi), m)?;
    let gamma = p.gamma.unwrap_or(1.0 / (chi * chi * m * m * m) as f64);
    let mut rep = EngineReport::new("tight");
    rep.keep("n_target", p.n);
    rep.keep("host_vertices", c.n());
    rep.keep("gamma", gamma);
    if let Some(r) = known_directed(chi) {
        rep.keep("directed_ramsey", r);
        let need = if chi <= 2 { (1.0 + p.epsilon) * p.n as f64 } else { (2.0 / 3.0 + p.epsilon) * (r - 1) as f64 * p.n as f64 };
        rep.keep("required_host", need);
        rep.keep("host_meets_requirement", c.n() as f64 >= need);
    }

    if h.num_edges() == 0 && h.n() <= c.n() {
        rep.note("blue target has no edges");
        return rep.emit(c, embed_on(&h, &(0..c.n() as u32).collect::<Vec<_>>()));
    }
    let block = p.block.max(3);
    let part = clique_partition(c, block, h.n())?;
    rep.note(format!(
        "partition: {} red K_{block}, {} blue K_{}, {} left over",
        part.blocks.iter().filter(|b| b.color == Color::Red).count(),
        part.blocks.iter().filter(|b| b.color == Color::Blue).count(),
        h.n(),
        part.leftover.len()
    ));
    if let Some(b) = part.blocks.iter().find(|b| b.color == Color::Blue) {
        rep.note("blue clique holds the blue target");
        return rep.emit(c, embed_on(&h, &b.vertices));
    }

    let reds = part.red_blocks();
    let mut chains: Vec<CliqueChain> = Vec::new();
    if !reds.is_empty() {
        let opts = SystemOptions { alpha: p.alpha, epsilon: p.epsilon, budget: p.budget };
        let sys = build_path_system(c, &reds, 2, &opts)?;
        if let Some(why) = &sys.stalled {
            rep.note(format!("path system: {why}"));
            let used = sys.system.used();
            let ws: Vec<Vec<u32>> = reds.iter().map(|b| vertices_of(mask_of(b) & !used)).collect();
            match butterfly_dichotomy(c, &ws, chi, m)? {
                ButterflyOutcome::Blue { certificate, .. } => {
                    rep.note("butterfly: blue branch");
                    return rep.emit(c, certificate);
                }
                ButterflyOutcome::Red { pair, .. } => rep.note(format!("butterfly: red connector between blocks {pair:?}")),
                ButterflyOutcome::ScaleTooSmall { diagnostic } => rep.note(format!("butterfly: {diagnostic}")),
            }
        }
        let asm = assemble_chains(c, &sys.system)?;
        for n in &asm.notes {
            rep.note(format!("assembly: {n}"));
        }
        chains = asm.chains;
        chains.sort_by_key(|ch| std::cmp::Reverse(ch.len()));
        rep.note(format!("assembly: chains of sizes {:?}", chains.iter().map(CliqueChain::len).collect::<Vec<_>>()));
    }

    if p.cycle {
        for ch in &chains {
            if let Some(s) = shrink_closed(ch, p.n) {
                rep.note(format!("closed chain on {} vertices shrunk to {}", ch.len(), p.n));
                return rep.emit(c, cycle_of(&s));
            }
        }
        rep.note("no closed chain shrinks to the target cycle");
    } else if let Some(first) = chains.first() {
        let mut q = cut_open(first)?;
        if q.len() < p.n {
            let others = chains[1..].iter().fold(0u64, |a, ch| a | mask_of(&ch.vertices));
            q = absorb(c, q, others, chi, m, gamma, p, &mut rep)?;
            if let Some(cert) = rep.certificate.take() {
                return rep.emit(c, cert);
            }
        }
        if q.len() >= p.n {
            return rep.emit(c, path_prefix(&q, p.n));
        }
        rep.note(format!("largest chain reaches {} vertices, target {}", q.len(), p.n));
    }

    if !p.fallback {
        return Ok(rep.stall("chains"));
    }
    let limits = Limits::default();
    let blue = find_mono_copy(c, &h, Color::Blue, &limits)?;
    if blue.map.is_some() {
        rep.note("exact search: blue target found");
        return rep.emit(c, blue.certificate(&h, Color::Blue));
    }
    let target = if p.cycle { Pattern::Cycle { k: 3, ell: 2, n: p.n } } else { Pattern::Path { k: 3, ell: 2, n: p.n } };
    let red = red_copy(c, &target, Color::Red, &limits)?;
    if matches!(red.kind, CertKind::RedPath | CertKind::RedCycle) {
        rep.note("exact search: red target found");
        return rep.emit(c, red);
    }
    let exact = blue.exact && red.exact;
    rep.note(if exact { "exact search: neither target is present" } else { "exact search: neither target found within the guards" });
    rep.flags.push(if exact { "free".into() } else { "inexact".into() });
    Ok(rep.stall("exact search"))
}

/// Replaces flexible elements one at a time by x₁x₂ P′ y₁y₂, where P is a
/// red tight path through the element's interior I and unused vertices,
/// grown by absorbing blocks, and P′ appends the rest of I. A blue witness
/// met on the way is left in `rep.certificate`.
#[allow(clippy::too_many_arguments)]
fn absorb(
    c: &TwoColoring,
    chain: CliqueChain,
    others: u64,
    chi: usize,
    m: usize,
    gamma: f64,
    p: &TightParams,
    rep: &mut EngineReport,
) -> Result<CliqueChain> {
    let all = if c.n() == 64 { u64::MAX } else { (1u64 << c.n()) - 1 };
    let mut els = elements(&chain);
    let mut j = 0;
    while j < els.len() {
        let s = els[j].clone();
        if s.len() <= 4 {
            j += 1;
            continue;
        }
        let d_el = els.len();
        let x: &[u32] = if j > 0 { &s[..2] } else { &[] };
        let y: &[u32] = if j + 1 < d_el { &s[s.len() - 2..] } else { &[] };
        let interior = mask_of(&s) & !mask_of(x) & !mask_of(y);
        let in_chain = els.iter().fold(0u64, |a, e| a | mask_of(e));
        let outside = all & !in_chain & !others;
        let (mut path, relaxed) = longest_balanced(c, interior, outside, p.d, p.budget);
        if relaxed {
            if !rep.flags.iter().any(|f| f == "ratio_relaxed") {
                rep.flags.push("ratio_relaxed".into());
            }
        }
        // absorbing rounds while too little of I is covered
        loop {
            let covered = (mask_of(&path) & interior).count_ones() as f64;
            if covered >= (1.0 - p.epsilon) * s.len() as f64 {
                break;
            }
            let a = vertices_of(interior & !mask_of(&path));
            let free = outside & !mask_of(&path);
            let ys = match blue_classes(c, chi, p.q, free)? {
                Some(ys) => ys,
                None => {
                    rep.note(format!("absorption: no blue H(TT{}, {}) outside the chain", chi - 1, p.q));
                    break;
                }
            };
            let dens: Vec<f64> = ys.iter().map(|y| pair_density(c, &a, y, Color::Blue)).collect();
            if dens.iter().all(|&db| db >= 1.0 - gamma) {
                let mut classes = vec![a.clone()];
                classes.extend(ys.iter().cloned());
                match random_embed(c, &classes, m, gamma, p.trials, p.seed) {
                    Ok(r) => {
                        if let Some(cert) = r.certificate {
                            rep.note("absorption: random embedding gives the blue target");
                            rep.certificate = Some(cert);
                            return Ok(chain);
                        }
                        rep.note(format!("absorption: random embedding failed in {} trials", r.trials_used));
                    }
                    Err(e) => rep.note(format!("absorption: random embedding not applicable: {e}")),
                }
                break;
            }
            let Some(yj) = ys.iter().position(|y| pair_density(c, &a, y, Color::Red) >= gamma) else {
                rep.note("absorption: densities fit neither branch");
                break;
            };
            let ap = AbsorbParams { d: p.d, eta: gamma, size_scale: 0.0, budget: p.budget };
            let seg = match absorbing_block(c, &a, &ys[yj], &ap) {
                Ok(out) => match out.certificate {
                    Some(cert) => cert.witness,
                    None => {
                        rep.note(format!("absorption: {}", out.diagnostic.unwrap_or_default()));
                        break;
                    }
                },
                Err(e) => {
                    rep.note(format!("absorption: absorbing block not applicable: {e}"));
                    break;
                }
            };
            let mut longer = path.clone();
            longer.extend_from_slice(&seg);
            if !is_red_tight(c, &longer) {
                break;
            }
            rep.note(format!("absorption: block of {} vertices attached", seg.len()));
            path = longer;
        }
        let gained = (mask_of(&path) & !interior).count_ones() as usize;
        if gained == 0 {
            j += 1;
            continue;
        }
        let mut seg: Vec<u32> = x.to_vec();
        seg.extend_from_slice(&path);
        seg.extend(vertices_of(interior & !mask_of(&path)));
        seg.extend_from_slice(y);
        let windows: Vec<Vec<u32>> = seg.windows(3).map(<[u32]>::to_vec).collect();
        let mut next = els[..j].to_vec();
        next.extend(windows.iter().cloned());
        next.extend_from_slice(&els[j + 1..]);
        let cand = open_chain(3, 2, &next);
        if validate_chain(&cand, c).is_valid() {
            rep.note(format!("absorption: element {j} of size {} absorbed {gained} outside vertices", s.len()));
            j += windows.len();
            els = next;
        } else {
            j += 1;
        }
    }
    Ok(open_chain(3, 2, &els))
}

fn is_red_tight(c: &TwoColoring, seq: &[u32]) -> bool {
    path_edges(seq, 3, 2, false).map(|es| es.iter().all(|&e| c.is(e, Color::Red))).unwrap_or(false)
}

/// Classes of a blue H(TT_{χ−1}, q) inside `free`; for χ = 2 any q
/// vertices do.
fn blue_classes(c: &TwoColoring, chi: usize, q: usize, free: u64) -> Result<Option<Vec<Vec<u32>>>> {
    if chi < 2 {
        return Ok(None);
    }
    if chi == 2 {
        let v = vertices_of(free);
        return Ok((v.len() >= q).then(|| vec![v[..q].to_vec()]));
    }
    let (h, classes) = tournament_hypergraph(&Tournament::transitive(chi - 1), q)?;
    if h.n() > free.count_ones() as usize {
        return Ok(None);
    }
    let found = find_mono_copy_in(c, &h, Color::Blue, free, &Limits::default())?;
    Ok(found.map.map(|map| classes.iter().map(|cl| cl.iter().map(|&u| map[u as usize]).collect()).collect()))
}

/// Longest red tight path in I ∪ W whose first two and last two vertices
/// lie in I and with (2d+2)|P∖I| ≤ d|P∩I|, preferring more outside
/// vertices. The flag is set when the best path misses the exact ratio.
fn longest_balanced(c: &TwoColoring, inner: u64, outside: u64, d: usize, budget: u64) -> (Vec<u32>, bool) {
    let mut best: (usize, usize, Vec<u32>) = (0, 0, Vec::new());
    let mut stats = SearchStats::default();
    let starts = vertices_of(inner);
    let mut seq = Vec::new();
    'outer: for &a in &starts {
        for &b in &starts {
            if a == b {
                continue;
            }
            seq.clear();
            seq.extend([a, b]);
            if !grow(c, inner, outside, d, budget, &mut seq, 1 << a | 1 << b, &mut best, &mut stats) {
                break 'outer;
            }
        }
    }
    let (out, ins, path) = best;
    let relaxed = !path.is_empty() && (2 * d + 2) * out != d * ins;
    (path, relaxed)
}

#[allow(clippy::too_many_arguments)]
fn grow(
    c: &TwoColoring,
    inner: u64,
    outside: u64,
    d: usize,
    budget: u64,
    seq: &mut Vec<u32>,
    used: u64,
    best: &mut (usize, usize, Vec<u32>),
    stats: &mut SearchStats,
) -> bool {
    stats.nodes += 1;
    if stats.nodes > budget {
        return false;
    }
    let l = seq.len();
    if l >= 3 && inner >> seq[l - 1] & 1 == 1 && inner >> seq[l - 2] & 1 == 1 {
        let ins = (used & inner).count_ones() as usize;
        let out = l - ins;
        if (2 * d + 2) * out <= d * ins && (out, ins) > (best.0, best.1) {
            *best = (out, ins, seq.clone());
        }
    }
    let (u, v) = (seq[l - 2], seq[l - 1]);
    for w in vertices_of((inner | outside) & !used) {
        if !c.is(1 << u | 1 << v | 1 << w, Color::Red) {
            continue;
        }
        seq.push(w);
        let ok = grow(c, inner, outside, d, budget, seq, used | 1 << w, best, stats);
        seq.pop();
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Outcome;

    #[test]
    fn nearly_red_gives_tight_path() {
        let c = TwoColoring::from_fn(3, 12, |m| if m == 0b111 { Color::Blue } else { Color::Red }).unwrap();
        let rep = tight_witness_engine(&c, 2, 2, &TightParams::path(10)).unwrap();
        assert_eq!(rep.outcome, Outcome::Red);
        assert_eq!(rep.certificate.unwrap().witness.len(), 10);
    }

    #[test]
    fn all_blue_gives_blue_target() {
        let c = TwoColoring::uniform(3, 9, Color::Blue).unwrap();
        let rep = tight_witness_engine(&c, 3, 2, &TightParams::path(6)).unwrap();
        assert_eq!(rep.outcome, Outcome::Blue);
    }
}

use serde::{Deserialize, Serialize};

use super::{cycle_of, elements, embed_on, open_chain, path_prefix, shrink_closed, EngineReport};
use crate::chains::{
    assemble_chains, build_path_system, clique_partition, cut_open, for_each_ell_path, validate_chain, CliqueChain, PathQuery,
    SystemOptions,
};
use crate::error::{invalid, Result};
use crate::exact::{tau_exact, TauOptions};
use crate::hg::{ell_cycle, ell_path, mask_of, ramsey_profile, vertices_of, Color, Hypergraph, TwoColoring};
use crate::pattern::Pattern;
use crate::search::{find_mono_copy, red_copy, CertKind, Limits, SearchStats};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LooseParams {
    /// Order of the red target.
    pub n: usize,
    #[serde(default)]
    pub cycle: bool,
    /// Size of the red cliques the partition looks for.
    #[serde(default = "default_block")]
    pub block: usize,
    #[serde(default = "default_alpha")]
    pub alpha: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Node budget per connector or insertion search.
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Finish with exact searches for both targets.
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
fn default_budget() -> u64 {
    200_000
}
fn yes() -> bool {
    true
}

impl LooseParams {
    pub fn path(n: usize) -> LooseParams {
        LooseParams {
            n,
            cycle: false,
            block: default_block(),
            alpha: default_alpha(),
            epsilon: default_epsilon(),
            budget: default_budget(),
            fallback: true,
        }
    }
}

/// Red loose path (or cycle) on `p.n` vertices versus blue `h`.
pub fn loose_witness_engine(c: &TwoColoring, h: &Hypergraph, p: &LooseParams) -> Result<EngineReport> {
    let k = c.k();
    if k < 3 || h.k() != k {
        return invalid("the loose engine needs k >= 3 and a k-uniform blue target");
    }
    if p.cycle { ell_cycle(k, 1, p.n)? } else { ell_path(k, 1, p.n)? };
    let mut rep = EngineReport::new("loose");
    rep.keep("n_target", p.n);
    rep.keep("host_vertices", c.n());
    bookkeeping(&mut rep, c, h, p)?;

    if h.num_edges() == 0 && h.n() <= c.n() {
        rep.note("blue target has no edges");
        let verts: Vec<u32> = (0..c.n() as u32).collect();
        return rep.emit(c, embed_on(h, &verts));
    }
    let block = p.block.max(k);
    let part = clique_partition(c, block, h.n().max(k))?;
    rep.note(format!(
        "partition: {} red K_{block}, {} blue K_{}, {} left over",
        part.blocks.iter().filter(|b| b.color == Color::Red).count(),
        part.blocks.iter().filter(|b| b.color == Color::Blue).count(),
        h.n().max(k),
        part.leftover.len()
    ));
    if let Some(b) = part.blocks.iter().find(|b| b.color == Color::Blue) {
        rep.note("blue clique holds the blue target");
        return rep.emit(c, embed_on(h, &b.vertices));
    }

    let reds = part.red_blocks();
    let mut chains: Vec<CliqueChain> = Vec::new();
    if !reds.is_empty() {
        let opts = SystemOptions { alpha: p.alpha, epsilon: p.epsilon, budget: p.budget };
        let sys = build_path_system(c, &reds, 1, &opts)?;
        if let Some(why) = &sys.stalled {
            rep.note(format!("path system: {why}"));
        }
        rep.note(format!("path system: {} forest edges, property (d) {:?}", sys.system.forest.len(), sys.property_d));
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
    } else {
        let mut open: Vec<CliqueChain> = chains.iter().map(cut_open).collect::<Result<_>>()?;
        let mut grown = true;
        while grown {
            grown = false;
            let taken = open.iter().fold(0u64, |a, ch| a | mask_of(&ch.vertices));
            let all = if c.n() == 64 { u64::MAX } else { (1u64 << c.n()) - 1 };
            for i in 0..open.len() {
                if let Some((ch, gain)) = extend_once(c, &open[i], all & !taken, p.budget) {
                    rep.note(format!("extension: chain {i} grew by {gain} to {} vertices", ch.len()));
                    open[i] = ch;
                    grown = true;
                    break;
                }
            }
        }
        if let Some(ch) = open.iter().find(|ch| ch.len() >= p.n) {
            return rep.emit(c, path_prefix(ch, p.n));
        }
        rep.note(format!(
            "chains top out at {} vertices, target {}",
            open.iter().map(CliqueChain::len).max().unwrap_or(0),
            p.n
        ));
    }

    if !p.fallback {
        return Ok(rep.stall("chains"));
    }
    let limits = Limits::default();
    let blue = find_mono_copy(c, h, Color::Blue, &limits)?;
    if blue.map.is_some() {
        rep.note("exact search: blue target found");
        return rep.emit(c, blue.certificate(h, Color::Blue));
    }
    let target = if p.cycle { Pattern::Cycle { k, ell: 1, n: p.n } } else { Pattern::Path { k, ell: 1, n: p.n } };
    let red = red_copy(c, &target, Color::Red, &limits)?;
    if matches!(red.kind, CertKind::RedPath | CertKind::RedCycle) {
        rep.note("exact search: red target found");
        return rep.emit(c, red);
    }
    let exact = blue.exact && red.exact;
    rep.note(if exact {
        "exact search: neither target is present"
    } else {
        "exact search: neither target found within the guards"
    });
    rep.flags.push(if exact { "free".into() } else { "inexact".into() });
    Ok(rep.stall("exact search"))
}

/// One improving move: replace a flexible element by a red loose path
/// through unused vertices, with the element's spare vertices regrouped
/// around it. At the last element the path may simply run off the end.
fn extend_once(c: &TwoColoring, chain: &CliqueChain, free: u64, budget: u64) -> Option<(CliqueChain, usize)> {
    let k = c.k();
    for flip in [false, true] {
        let ch = if flip { reversed(chain) } else { chain.clone() };
        let els = elements(&ch);
        let d = els.len();
        for j in 0..d {
            let s = &els[j];
            let prev: &[u32] = if j > 0 { &s[..1] } else { &[] };
            let next: &[u32] = if j + 1 < d { &s[s.len() - 1..] } else { &[] };
            let inner = mask_of(s) & !mask_of(prev) & !mask_of(next);
            for open_end in [false, true] {
                if open_end && j + 1 != d {
                    continue;
                }
                let q = PathQuery {
                    ell: 1,
                    color: Color::Red,
                    starts: inner,
                    ends: if open_end { free } else { inner },
                    allowed: inner | free,
                    orders: PathQuery::up_to(k, 1, 3 * k),
                    budget,
                };
                let mut best: Option<CliqueChain> = None;
                for_each_ell_path(c, &q, &mut SearchStats::default(), |r| {
                    if mask_of(r) & free == 0 {
                        return true;
                    }
                    if let Some(new) = regroup(k, &els, j, r, inner, open_end, prev, next) {
                        if new.len() > ch.len() && validate_chain(&new, c).is_valid() {
                            best = Some(new);
                            return false;
                        }
                    }
                    true
                });
                if let Some(new) = best {
                    let gain = new.len() - ch.len();
                    return Some((new, gain));
                }
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn regroup(k: usize, els: &[Vec<u32>], j: usize, r: &[u32], inner: u64, open_end: bool, prev: &[u32], next: &[u32]) -> Option<CliqueChain> {
    let step = k - 1;
    let spare = vertices_of(inner & !mask_of(r));
    let fits = |len: usize| len >= k && len % step == 1 % step;
    // S_a = prev + fa spare + x, S_b = y + fb spare + next; either may be
    // left out at a free end of the chain
    let (x, y) = (r[0], *r.last().unwrap());
    let a_options: Vec<Option<usize>> = {
        let mut v: Vec<Option<usize>> = (0..=spare.len()).filter(|&f| fits(prev.len() + f + 1)).map(Some).collect();
        if j == 0 {
            v.push(None);
        }
        v
    };
    let b_options: Vec<Option<usize>> = if open_end {
        vec![None]
    } else {
        let mut v: Vec<Option<usize>> = (0..=spare.len()).filter(|&f| fits(1 + f + next.len())).map(Some).collect();
        if j + 1 == els.len() {
            v.push(None);
        }
        v
    };
    let mut best: Option<(usize, Option<usize>, Option<usize>)> = None;
    for &fa in &a_options {
        for &fb in &b_options {
            let used = fa.unwrap_or(0) + fb.unwrap_or(0);
            if used <= spare.len() && best.is_none_or(|(u, _, _)| used > u) {
                best = Some((used, fa, fb));
            }
        }
    }
    let (_, fa, fb) = best?;
    let mut out: Vec<Vec<u32>> = els[..j].to_vec();
    let mut rest = spare.into_iter();
    if let Some(fa) = fa {
        let mut sa = prev.to_vec();
        sa.extend(rest.by_ref().take(fa));
        sa.push(x);
        out.push(sa);
    } else if !prev.is_empty() {
        return None;
    }
    for i in 0..(r.len() - 1) / step {
        out.push(r[i * step..i * step + k].to_vec());
    }
    if let Some(fb) = fb {
        let mut sb = vec![y];
        sb.extend(rest.by_ref().take(fb));
        sb.extend_from_slice(next);
        out.push(sb);
    } else if !next.is_empty() {
        return None;
    }
    out.extend_from_slice(&els[j + 1..]);
    Some(open_chain(k, 1, &out))
}

fn reversed(ch: &CliqueChain) -> CliqueChain {
    let mut els = elements(ch);
    els.reverse();
    for e in &mut els {
        e.reverse();
    }
    open_chain(ch.k, ch.ell, &els)
}

/// σ, τ(k−1, σ), c = max{τ − 2k + 3, σ} and the host size the argument
/// asks for, (χ−1)(n−1) + c.
fn bookkeeping(rep: &mut EngineReport, c: &TwoColoring, h: &Hypergraph, p: &LooseParams) -> Result<()> {
    let k = c.k();
    let Ok(prof) = ramsey_profile(h, Limits::default().profile) else {
        rep.note("bookkeeping: blue target too large for its profile");
        return Ok(());
    };
    rep.keep("chi", prof.chi);
    rep.keep("sigma", prof.sigma);
    let tau = if prof.sigma >= 1 { tau_exact(k - 1, prof.sigma, &TauOptions::default()).ok().and_then(|t| t.value) } else { None };
    if let Some(t) = tau {
        rep.keep("tau", t);
    }
    if let Some(t) = tau {
        let cc = (t as i64 - 2 * k as i64 + 3).max(prof.sigma as i64);
        let need = (prof.chi as i64 - 1) * (p.n as i64 - 1) + cc;
        rep.keep("c", cc);
        rep.keep("required_host", need);
        rep.keep("host_meets_requirement", c.n() as i64 >= need);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Outcome;
    use crate::hg::clique;

    #[test]
    fn all_blue_gives_blue_target() {
        let c = TwoColoring::uniform(3, 8, Color::Blue).unwrap();
        let rep = loose_witness_engine(&c, &clique(3, 4).unwrap(), &LooseParams::path(7)).unwrap();
        assert_eq!(rep.outcome, Outcome::Blue);
    }

    #[test]
    fn all_red_gives_red_path() {
        let c = TwoColoring::uniform(3, 13, Color::Red).unwrap();
        let rep = loose_witness_engine(&c, &clique(3, 4).unwrap(), &LooseParams::path(13)).unwrap();
        assert_eq!(rep.outcome, Outcome::Red);
        assert_eq!(rep.certificate.unwrap().witness.len(), 13);
    }
}

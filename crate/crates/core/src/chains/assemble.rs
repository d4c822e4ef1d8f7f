//! Closed clique chains from a path system: walk each tree of the forest
//! twice over, join consecutive connectors inside the blocks, then inflate
//! one in-block join per block with the block's unused vertices.

use serde::{Deserialize, Serialize};

use super::system::PathSystem;
use super::walk::double_tree_walk;
use super::{validate_chain, ChainKind, CliqueChain};
use crate::error::{Error, Result};
use crate::hg::{mask_of, vertices_of, TwoColoring};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub chains: Vec<CliqueChain>,
    /// Block vertices that ended up in no chain.
    pub leftover: usize,
    pub notes: Vec<String>,
}

pub fn assemble_chains(c: &TwoColoring, sys: &PathSystem) -> Result<Assembly> {
    let (k, ell) = (sys.k, sys.ell);
    let step = k - ell;
    let q0 = ell.div_ceil(step);
    let fresh_per_join = (ell + q0 * step).saturating_sub(2 * ell);
    let bmask: Vec<u64> = sys.blocks.iter().map(|b| mask_of(b)).collect();
    let used = sys.used();
    // components only draw on their own blocks, so they are independent
    let built = par::map(&sys.components(), |comp| {
        assemble_component(c, sys, &bmask, comp, used, fresh_per_join)
    });
    let mut chains = Vec::new();
    let mut notes = Vec::new();
    for r in built {
        match r? {
            Ok(ch) => chains.push(ch),
            Err(note) => notes.push(note),
        }
    }
    let all = bmask.iter().fold(0u64, |a, m| a | m);
    let covered = chains.iter().fold(0u64, |a, ch| a | mask_of(&ch.vertices));
    Ok(Assembly { chains, leftover: (all & !covered).count_ones() as usize, notes })
}

fn assemble_component(
    c: &TwoColoring,
    sys: &PathSystem,
    bmask: &[u64],
    comp: &[usize],
    mut reserved: u64,
    fresh_per_join: usize,
) -> Result<std::result::Result<CliqueChain, String>> {
    let (k, ell) = (sys.k, sys.ell);
    let step = k - ell;
    let local = |g: usize| comp.iter().position(|&x| x == g).unwrap();
    let edges: Vec<usize> = (0..sys.forest.len()).filter(|&e| comp.contains(&sys.forest[e].0)).collect();
    if edges.is_empty() {
        let i = comp[0];
        return Ok(single_block(k, ell, &vertices_of(bmask[i] & !reserved))
            .ok_or_else(|| format!("block {i} is too small for a closed chain on its own")));
    }
    let tree: Vec<(usize, usize)> = edges.iter().map(|&e| (local(sys.forest[e].0), local(sys.forest[e].1))).collect();
    let walk: Vec<usize> = double_tree_walk(comp.len(), &tree)?.into_iter().map(|l| comp[l]).collect();
    let b = walk.len() - 1;
    let mut crossed = vec![0usize; sys.forest.len()];
    let mut legs: Vec<Vec<u32>> = Vec::with_capacity(b);
    for j in 0..b {
        let (from, to) = (walk[j], walk[j + 1]);
        let e = *edges.iter().find(|&&e| sys.forest[e] == (from, to) || sys.forest[e] == (to, from)).unwrap();
        let mut p = sys.paths[e][crossed[e]].clone();
        crossed[e] += 1;
        if sys.forest[e].0 != from {
            p.reverse();
        }
        legs.push(p);
    }
    // join j sits in block walk[j], after leg j-1 and before leg j
    let mut joins: Vec<Vec<u32>> = vec![Vec::new(); b];
    for j in 0..b {
        let avail = vertices_of(bmask[walk[j]] & !reserved);
        if avail.len() < fresh_per_join {
            return Ok(Err(format!(
                "block {} has too few unused vertices to join its connectors; component {comp:?} skipped",
                walk[j]
            )));
        }
        joins[j] = avail[..fresh_per_join].to_vec();
        reserved |= mask_of(&joins[j]);
    }
    for &i in comp {
        let j = walk.iter().position(|&w| w == i).unwrap();
        let spare = vertices_of(bmask[i] & !reserved);
        let extra = spare.len() - spare.len() % step;
        joins[j].extend_from_slice(&spare[..extra]);
        reserved |= mask_of(&spare[..extra]);
    }
    let mut seq = Vec::new();
    let mut lens = Vec::new();
    for j in 0..b {
        lens.push(2 * ell + joins[j].len());
        seq.extend_from_slice(&joins[j]);
        seq.extend_from_slice(&legs[j]);
        lens.extend(std::iter::repeat_n(k, (legs[j].len() - ell) / step));
    }
    // start at the tail of the last leg, where the first join begins
    seq.rotate_right(ell);
    let chain = CliqueChain::with_lengths(ChainKind::Closed, k, ell, seq, &lens);
    let check = validate_chain(&chain, c);
    if !check.is_valid() {
        return Err(Error::Certificate(format!("assembled chain is invalid: {}", check.violations.join("; "))));
    }
    Ok(Ok(chain))
}

/// A whole clique as a two-element closed chain, on as many vertices as the
/// residues allow.
fn single_block(k: usize, ell: usize, avail: &[u32]) -> Option<CliqueChain> {
    let step = k - ell;
    for m in (k + 1..=avail.len()).rev().filter(|m| m % step == 0) {
        let split = (k..=m).find_map(|l2| {
            let l1 = (m + 2 * ell).checked_sub(l2)?;
            (l1 >= l2 && l1 <= m && l2 % step == ell % step).then_some((l1, l2))
        });
        if let Some((l1, l2)) = split {
            return Some(CliqueChain::with_lengths(ChainKind::Closed, k, ell, avail[..m].to_vec(), &[l1, l2]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{build_path_system, spanning_path, SystemOptions};
    use super::*;
    use crate::hg::Color;
    use crate::search::Host;

    #[test]
    fn two_blocks_two_cross_edges() {
        let a = mask_of(&(0..7).collect::<Vec<_>>());
        let b = a << 7;
        let cross = [mask_of(&[0, 1, 7]), mask_of(&[2, 3, 8])];
        let c = TwoColoring::from_fn(3, 14, |m| {
            if m & !a == 0 || m & !b == 0 || cross.contains(&m) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .unwrap();
        let blocks: Vec<Vec<u32>> = vec![(0..7).collect(), (7..14).collect()];
        let out = build_path_system(&c, &blocks, 1, &SystemOptions::default()).unwrap();
        let asm = assemble_chains(&c, &out.system).unwrap();
        assert_eq!(asm.chains.len(), 1);
        assert!(asm.chains[0].len() >= 14 - 4);
        let cert = spanning_path(&asm.chains[0]).unwrap();
        cert.validate(Host::Coloring(&c)).unwrap();
    }

    #[test]
    fn lone_block_closes_on_itself() {
        let c = TwoColoring::uniform(3, 7, Color::Red).unwrap();
        let sys = PathSystem { k: 3, ell: 1, blocks: vec![(0..7).collect()], forest: vec![], paths: vec![] };
        let asm = assemble_chains(&c, &sys).unwrap();
        assert_eq!(asm.chains[0].len(), 6);
        assert_eq!(asm.leftover, 1);
        assert!(validate_chain(&asm.chains[0], &c).is_valid());
    }
}

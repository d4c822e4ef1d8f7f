use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hg::{mask_of, vertices_of, Color, TwoColoring};
use crate::search::{find_mono_clique, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub color: Color,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePartition {
    pub a: usize,
    pub b: usize,
    pub blocks: Vec<Block>,
    /// Contains neither a red K_a nor a blue K_b.
    pub leftover: Vec<u32>,
    pub stats: SearchStats,
}

impl CliquePartition {
    pub fn red_blocks(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().filter(|b| b.color == Color::Red).map(|b| b.vertices.clone()).collect()
    }
}

/// Greedily removes red K_a (preferred) or blue K_b until neither is left.
pub fn clique_partition(c: &TwoColoring, a: usize, b: usize) -> Result<CliquePartition> {
    let k = c.k();
    if a < k || b < k {
        return invalid(format!("clique sizes must be at least k={k}"));
    }
    let mut rest = if c.n() == 64 { u64::MAX } else { (1u64 << c.n()) - 1 };
    let mut blocks = Vec::new();
    let mut stats = SearchStats::default();
    loop {
        let (red, s) = find_mono_clique(c, a, Color::Red, rest);
        stats.add(s);
        let found = match red {
            Some(v) => Some(Block { color: Color::Red, vertices: v }),
            None => {
                let (blue, s) = find_mono_clique(c, b, Color::Blue, rest);
                stats.add(s);
                blue.map(|v| Block { color: Color::Blue, vertices: v })
            }
        };
        match found {
            Some(block) => {
                rest &= !mask_of(&block.vertices);
                blocks.push(block);
            }
            None => break,
        }
    }
    Ok(CliquePartition { a, b, blocks, leftover: vertices_of(rest), stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monochromatic_hosts() {
        let blue = TwoColoring::uniform(3, 7, Color::Blue).unwrap();
        let p = clique_partition(&blue, 4, 7).unwrap();
        assert_eq!(p.blocks, vec![Block { color: Color::Blue, vertices: (0..7).collect() }]);
        let red = TwoColoring::uniform(3, 9, Color::Red).unwrap();
        let p = clique_partition(&red, 3, 3).unwrap();
        assert_eq!(p.blocks.len(), 3);
        assert!(p.leftover.is_empty());
    }
}

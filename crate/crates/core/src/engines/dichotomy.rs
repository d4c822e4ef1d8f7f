use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hg::{mask_of, tournament_hypergraph, vertices_of, Color, KSets, Tournament, TwoColoring};
use crate::search::{find_transitive_subtournament, CertKind, Certificate, Host, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CrossingOutcome {
    RedCrossEdge { edge: Vec<u32> },
    /// Every k-set meeting two blocks is blue.
    AllBlue { checked: u64 },
}

/// First red k-set (colex) not inside a single block.
pub fn independence_dichotomy(c: &TwoColoring, blocks: &[Vec<u32>]) -> Result<CrossingOutcome> {
    let masks = disjoint_masks(c, blocks)?;
    if let Some(m) = blocks.first().map(Vec::len) {
        if blocks.iter().any(|b| b.len() != m) {
            return invalid("blocks must have equal size");
        }
    }
    let union = masks.iter().fold(0u64, |a, m| a | m);
    let verts = vertices_of(union);
    let mut checked = 0;
    for s in KSets::new(verts.len(), c.k()) {
        let e = vertices_of(s).iter().fold(0u64, |a, &i| a | 1 << verts[i as usize]);
        if masks.iter().any(|&b| e & !b == 0) {
            continue;
        }
        checked += 1;
        if c.is(e, Color::Red) {
            return Ok(CrossingOutcome::RedCrossEdge { edge: vertices_of(e) });
        }
    }
    Ok(CrossingOutcome::AllBlue { checked })
}

fn disjoint_masks(c: &TwoColoring, blocks: &[Vec<u32>]) -> Result<Vec<u64>> {
    let mut seen = 0u64;
    let mut out = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        let m = mask_of(b);
        if b.iter().any(|&v| v as usize >= c.n()) || m.count_ones() as usize != b.len() || m & seen != 0 {
            return invalid(format!("block {i} repeats a vertex, leaves the host, or meets another block"));
        }
        seen |= m;
        out.push(m);
    }
    Ok(out)
}

/// Two-coloured complete bipartite graph; bit r of `rows[l]` set means the
/// edge (l, r) is black.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub rows: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub black: bool,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

/// Monochromatic K_{t,t}: black first, left t-subsets in colex order, the
/// right side cut down to the common neighbourhood.
pub fn monochromatic_biclique(g: &Bipartite, t: usize) -> Option<Biclique> {
    if t == 0 || t > g.left || t > g.right || g.left > 64 || g.right > 64 {
        return None;
    }
    let full = if g.right == 64 { u64::MAX } else { (1u64 << g.right) - 1 };
    for black in [true, false] {
        let row = |l: usize| if black { g.rows[l] & full } else { !g.rows[l] & full };
        for s in KSets::new(g.left, t) {
            let left = vertices_of(s);
            let common = left.iter().fold(full, |a, &l| a & row(l as usize));
            if common.count_ones() as usize >= t {
                let right = vertices_of(common).into_iter().take(t).collect();
                return Some(Biclique { black, left, right });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ButterflyOutcome {
    /// Red tight path w a b w′ with w, a in W_i and b, w′ in W_j.
    Red { certificate: Certificate, pair: (usize, usize) },
    Blue { certificate: Certificate, classes: Vec<Vec<u32>> },
    ScaleTooSmall { diagnostic: String },
}

/// Either two of the sets are joined by a red tight path of length two, or
/// the pair structure yields a blue H(TT_χ, m).
pub fn butterfly_dichotomy(c: &TwoColoring, ws: &[Vec<u32>], chi: usize, m: usize) -> Result<ButterflyOutcome> {
    if c.k() != 3 {
        return invalid("the butterfly dichotomy is 3-uniform");
    }
    if chi < 1 || m < 1 {
        return invalid("chi and m must be positive");
    }
    let masks = disjoint_masks(c, ws)?;
    let r = ws.len();
    let red_with = |a: u32, b: u32, w: u64| vertices_of(w & !(1 << a) & !(1 << b)).into_iter().find(|&x| c.is(1 << a | 1 << b | 1 << x, Color::Red));
    for i in 0..r {
        for j in i + 1..r {
            for &a in &ws[i] {
                for &b in &ws[j] {
                    if let (Some(w), Some(w2)) = (red_with(a, b, masks[i]), red_with(a, b, masks[j])) {
                        let cert = Certificate::new(CertKind::RedPath, vec![w, a, b, w2], true, SearchStats::default())
                            .with_color(Color::Red)
                            .with_ell(2);
                        cert.validate(Host::Coloring(c))?;
                        return Ok(ButterflyOutcome::Red { certificate: cert, pair: (i, j) });
                    }
                }
            }
        }
    }
    // every cross pair has a blue side; shrink to monochromatic pair blocks
    let mut cur: Vec<Vec<u32>> = ws.to_vec();
    let mut black = vec![vec![false; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let g = Bipartite {
                left: cur[i].len(),
                right: cur[j].len(),
                rows: cur[i]
                    .iter()
                    .map(|&a| {
                        cur[j].iter().enumerate().fold(0u64, |row, (y, &b)| {
                            let blue = red_with(a, b, masks[j]).is_none();
                            row | (blue as u64) << y
                        })
                    })
                    .collect(),
            };
            let top = g.left.min(g.right);
            let found = (m..=top).rev().find_map(|t| monochromatic_biclique(&g, t));
            let Some(bc) = found else {
                return Ok(ButterflyOutcome::ScaleTooSmall {
                    diagnostic: format!(
                        "no monochromatic K_{{{m},{m}}} between sets {i} and {j} (sizes {} and {}) after earlier shrinking",
                        g.left, g.right
                    ),
                });
            };
            cur[i] = bc.left.iter().map(|&l| cur[i][l as usize]).collect();
            cur[j] = bc.right.iter().map(|&y| cur[j][y as usize]).collect();
            black[i][j] = bc.black;
        }
    }
    for s in &mut cur {
        s.truncate(m);
    }
    // black (i<j): E(a,b,W_j) blue, i.e. pairs in j with one vertex in i,
    // which is the arc j→i in H(T, m)
    let t = Tournament::from_fn(r, |i, j| !black[i][j])?;
    let tt = find_transitive_subtournament(&t, chi);
    if tt.kind != CertKind::TtEmbedding {
        return Ok(ButterflyOutcome::ScaleTooSmall {
            diagnostic: format!("the {r}-vertex pair tournament has no transitive subtournament on {chi} vertices"),
        });
    }
    let classes: Vec<Vec<u32>> = tt.witness.iter().map(|&i| cur[i as usize].clone()).collect();
    let (h, _) = tournament_hypergraph(&Tournament::transitive(chi), m)?;
    let witness: Vec<u32> = classes.iter().flatten().copied().collect();
    let cert = Certificate::new(CertKind::BlueEmbedding, witness, true, SearchStats::default()).with_color(Color::Blue).with_pattern(h);
    cert.validate(Host::Coloring(c))?;
    Ok(ButterflyOutcome::Blue { certificate: cert, classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_scan() {
        let c = TwoColoring::from_fn(3, 6, |m| if m == 0b1011 { Color::Red } else { Color::Blue }).unwrap();
        let out = independence_dichotomy(&c, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(out, CrossingOutcome::RedCrossEdge { edge: vec![0, 1, 3] });
        let out = independence_dichotomy(&c, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(out, CrossingOutcome::AllBlue { checked: 0 });
    }

    #[test]
    fn planted_white_square() {
        let mut rows = vec![0b1111u64; 4];
        rows[1] &= !0b0110;
        rows[2] &= !0b0110;
        let g = Bipartite { left: 4, right: 4, rows };
        let b = monochromatic_biclique(&g, 2).unwrap();
        assert!(b.black);
        let white = Bipartite { left: 4, right: 4, rows: vec![0, 0, 0b1000, 0] };
        let b = monochromatic_biclique(&white, 3).unwrap();
        assert!(!b.black);
        assert_eq!((b.left, b.right), (vec![0, 1, 2], vec![0, 1, 2]));
    }

    #[test]
    fn butterfly_red_branch() {
        let a = 0b000111u64;
        let b = 0b111000u64;
        let c = TwoColoring::from_fn(3, 6, |m| {
            if m & !a == 0 || m & !b == 0 || m == 0b001011 || m == 0b011010 {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .unwrap();
        match butterfly_dichotomy(&c, &[vec![0, 1, 2], vec![3, 4, 5]], 2, 2).unwrap() {
            ButterflyOutcome::Red { certificate, pair } => {
                assert_eq!(pair, (0, 1));
                assert_eq!(certificate.witness, vec![0, 1, 3, 4]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn butterfly_blue_branch_when_crossings_blue() {
        let cl = [0b000111u64, 0b111000];
        let c = TwoColoring::from_fn(3, 6, |m| if cl.iter().any(|&b| m & !b == 0) { Color::Red } else { Color::Blue }).unwrap();
        match butterfly_dichotomy(&c, &[vec![0, 1, 2], vec![3, 4, 5]], 2, 3).unwrap() {
            ButterflyOutcome::Blue { classes, .. } => assert_eq!(classes.len(), 2),
            o => panic!("{o:?}"),
        }
        assert!(matches!(butterfly_dichotomy(&c, &[vec![0, 1, 2]], 2, 3).unwrap(), ButterflyOutcome::ScaleTooSmall { .. }));
    }
}

//! Explicit lower-bound colorings and the extremal graphs behind τ.
//!
//! Blocks always occupy consecutive vertex ranges in the order listed, so
//! the bitmaps are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hg::{binom, clique, colex_unrank, mask_of, Color, Hypergraph, Tournament, TwoColoring, MAX_VERTICES};
use crate::search::{has_two_edge_loose_path, independence_number, Limits};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundInstance {
    pub name: String,
    pub coloring: TwoColoring,
    pub claimed_red_free: String,
    pub claimed_blue_free: String,
    pub partition: Vec<Vec<u32>>,
    pub parameters: Params,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// The sidecar record: everything but the coloring itself.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceManifest<'a> {
    pub name: &'a str,
    pub vertices: usize,
    pub claimed_red_free: &'a str,
    pub claimed_blue_free: &'a str,
    pub partition: &'a [Vec<u32>],
    pub parameters: &'a Params,
    pub flags: &'a [String],
}

impl LowerBoundInstance {
    pub fn n(&self) -> usize {
        self.coloring.n()
    }

    pub fn manifest(&self) -> InstanceManifest<'_> {
        InstanceManifest {
            name: &self.name,
            vertices: self.coloring.n(),
            claimed_red_free: &self.claimed_red_free,
            claimed_blue_free: &self.claimed_blue_free,
            partition: &self.partition,
            parameters: &self.parameters,
            flags: &self.flags,
        }
    }
}

/// Consecutive blocks of the given sizes plus a vertex→block table.
fn layout(sizes: &[usize]) -> Result<(Vec<Vec<u32>>, Vec<usize>)> {
    let total: usize = sizes.iter().sum();
    if total > MAX_VERTICES {
        return invalid(format!("construction needs {total} vertices, over the limit of {MAX_VERTICES}"));
    }
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut owner = Vec::with_capacity(total);
    let mut next = 0u32;
    for (i, &s) in sizes.iter().enumerate() {
        blocks.push((next..next + s as u32).collect());
        owner.extend(std::iter::repeat(i).take(s));
        next += s as u32;
    }
    Ok((blocks, owner))
}

/// Per-block counts of the vertices of `m`.
fn profile(m: u64, owner: &[usize], blocks: usize) -> Vec<usize> {
    let mut cnt = vec![0; blocks];
    let mut rest = m;
    while rest != 0 {
        cnt[owner[rest.trailing_zeros() as usize]] += 1;
        rest &= rest - 1;
    }
    cnt
}

fn red_if(b: bool) -> Color {
    if b {
        Color::Red
    } else {
        Color::Blue
    }
}

/// χ red cliques: χ−1 of order v(G)−1 and one of order σ−1.
pub fn burr_coloring(k: usize, chi: usize, sigma: usize, v_g: usize) -> Result<LowerBoundInstance> {
    if chi < 1 || sigma < 1 {
        return invalid("chi and sigma must be at least 1");
    }
    if v_g < sigma {
        return invalid(format!("v(G)={v_g} is below sigma={sigma}"));
    }
    let mut sizes = vec![v_g - 1; chi - 1];
    sizes.push(sigma - 1);
    let (blocks, owner) = layout(&sizes)?;
    let n = owner.len();
    let coloring = TwoColoring::from_fn(k, n, |m| red_if(profile(m, &owner, chi).contains(&k)))?;
    let mut flags = Vec::new();
    if n < k {
        flags.push(format!("{n} vertices hold no {k}-sets"));
    }
    Ok(LowerBoundInstance {
        name: "burr".into(),
        coloring,
        claimed_red_free: format!("connected G on {v_g} vertices"),
        claimed_blue_free: format!("H with chi={chi}, sigma={sigma}"),
        partition: blocks,
        parameters: Params { k, chi: Some(chi), sigma: Some(sigma), v_g: Some(v_g), ..Params::default() },
        flags,
    })
}

/// ℓ-path construction for ℓ ≥ 2.
pub fn ell_path_lb(k: usize, ell: usize, n: usize, chi: usize) -> Result<LowerBoundInstance> {
    if ell < 2 || ell >= k {
        return invalid(format!("ell={ell} must satisfy 2 <= ell <= k-1"));
    }
    if n < k || (n - ell) % (k - ell) != 0 {
        return invalid(format!("n={n} must be at least k and congruent to ell mod k-ell"));
    }
    if chi < 2 {
        return invalid("chi must be at least 2");
    }
    let mut sizes = vec![n - 1; chi - 1];
    sizes.push((n / k).saturating_sub(1));
    let (blocks, owner) = layout(&sizes)?;
    let last = chi - 1;
    let coloring = TwoColoring::from_fn(k, owner.len(), |m| {
        let p = profile(m, &owner, chi);
        red_if(p.contains(&k) || (p[last] > 0 && p[..last].iter().all(|&c| c < ell)))
    })?;
    Ok(LowerBoundInstance {
        name: "ell_path".into(),
        coloring,
        claimed_red_free: format!("P({k},{ell},{n})"),
        claimed_blue_free: format!("H with chi={chi} whose every color class meets an edge hitting the others in at most {} vertices", ell - 1),
        partition: blocks,
        parameters: Params { k, ell: Some(ell), n: Some(n), chi: Some(chi), ..Params::default() },
        flags: Vec::new(),
    })
}

/// Checks the two hypotheses on J: independence below t and no two-edge
/// loose path.
pub fn check_j(j: &Hypergraph, k: usize, t: usize) -> Result<()> {
    if j.k() + 1 != k {
        return invalid(format!("J must be {}-uniform, got {}", k - 1, j.k()));
    }
    if let Some((a, b)) = has_two_edge_loose_path(j) {
        return invalid(format!("J has a two-edge loose path {a:?}, {b:?}"));
    }
    let alpha = independence_number(j, &Limits::default())?.alpha;
    if alpha >= t {
        return invalid(format!("J has independence number {alpha}, needs less than {t}"));
    }
    Ok(())
}

/// The target of the loose lower bounds: classes of the given sizes, edges
/// the k-sets meeting some class in exactly k−1 vertices.
pub fn loose_lb_target(k: usize, class_sizes: &[usize]) -> Result<Hypergraph> {
    let (_, owner) = layout(class_sizes)?;
    let masks = crate::hg::KSets::new(owner.len(), k)
        .filter(|&m| profile(m, &owner, class_sizes.len()).contains(&(k - 1)))
        .collect();
    Hypergraph::from_masks(k, owner.len(), masks)
}

/// Red iff inside one of the first χ−1 blocks, or one vertex in block χ−1
/// and the rest an edge of J placed on block χ.
fn loose_coloring(k: usize, owner: &[usize], chi: usize, j: &Hypergraph, offset: u32) -> Result<TwoColoring> {
    let j_edges: std::collections::HashSet<u64> = j.edge_masks().into_iter().map(|m| m << offset).collect();
    let (a, b) = (chi - 2, chi - 1);
    let am = block_mask(owner, a);
    TwoColoring::from_fn(k, owner.len(), |m| {
        let p = profile(m, owner, chi);
        let inside = p[..b].contains(&k);
        let joined = p[a] == 1 && p[b] == k - 1 && j_edges.contains(&(m & !am));
        red_if(inside || joined)
    })
}

fn block_mask(owner: &[usize], b: usize) -> u64 {
    owner.iter().enumerate().filter(|&(_, &o)| o == b).fold(0u64, |m, (v, _)| m | 1 << v)
}

/// Loose-path construction around a (k−1)-graph J.
pub fn loose_path_lb(k: usize, chi: usize, n: usize, t: usize, j: &Hypergraph) -> Result<LowerBoundInstance> {
    if k < 3 || chi < 2 {
        return invalid("need k >= 3 and chi >= 2");
    }
    if n % (k - 1) != 1 % (k - 1) || n < 2 * k {
        return invalid(format!("n={n} must be congruent to 1 mod k-1 and at least 2k"));
    }
    check_j(j, k, t)?;
    let mut sizes = vec![n - 1; chi - 2];
    sizes.push(n - 2 * k + 1);
    sizes.push(j.n());
    let (blocks, owner) = layout(&sizes)?;
    let offset = blocks[chi - 1].first().copied().unwrap_or(0);
    let coloring = loose_coloring(k, &owner, chi, j, offset)?;
    Ok(LowerBoundInstance {
        name: "loose_path".into(),
        coloring,
        claimed_red_free: format!("P({k},1,{n})"),
        claimed_blue_free: format!("class hypergraph with chi={chi}, last class {t}"),
        partition: blocks,
        parameters: Params { k, n: Some(n), chi: Some(chi), t: Some(t), ..Params::default() },
        flags: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleVariant {
    /// Last block carries J, as in the path construction.
    Tau(Hypergraph),
    /// Last block has q vertices; its (k−1)-subsets are handed out one per
    /// earlier block.
    Pencil { q: usize },
}

pub fn loose_cycle_lb(k: usize, chi: usize, n: usize, t: usize, variant: &CycleVariant) -> Result<LowerBoundInstance> {
    if k < 3 || chi < 2 {
        return invalid("need k >= 3 and chi >= 2");
    }
    if n % (k - 1) != 0 || n < 2 * k {
        return invalid(format!("n={n} must be divisible by k-1 and at least 2k"));
    }
    let mut sizes = vec![n - 1; chi - 1];
    let mut flags = Vec::new();
    let (coloring, blocks, q) = match variant {
        CycleVariant::Tau(j) => {
            check_j(j, k, t)?;
            sizes.push(j.n());
            let (blocks, owner) = layout(&sizes)?;
            let offset = blocks[chi - 1].first().copied().unwrap_or(0);
            flags.push("reconstructed: red rule copied from the loose-path construction".into());
            (loose_coloring(k, &owner, chi, j, offset)?, blocks, None)
        }
        CycleVariant::Pencil { q } => {
            let q = *q;
            if q < k - 1 || (chi as u64) <= binom(q, k - 1) {
                return invalid(format!("pencil needs q >= k-1 and chi > C(q,k-1) = {}", binom(q, k - 1)));
            }
            sizes.push(q);
            let (blocks, owner) = layout(&sizes)?;
            let base = blocks[chi - 1].first().copied().unwrap_or(0);
            let pencils: Vec<u64> = (0..binom(q, k - 1))
                .map(|r| {
                    let s = colex_unrank(r, k - 1, q).expect("rank in range");
                    mask_of(&s) << base
                })
                .collect();
            let bm: Vec<u64> = (0..chi).map(|b| block_mask(&owner, b)).collect();
            let coloring = TwoColoring::from_fn(k, owner.len(), |m| {
                let p = profile(m, &owner, chi);
                let inside = p[..chi - 1].contains(&k);
                let pencil = pencils.iter().enumerate().any(|(i, &s)| p[i] == 1 && m & !bm[i] == s);
                red_if(inside || pencil)
            })?;
            (coloring, blocks, Some(q))
        }
    };
    Ok(LowerBoundInstance {
        name: match variant {
            CycleVariant::Tau(_) => "loose_cycle_tau".into(),
            CycleVariant::Pencil { .. } => "loose_cycle_pencil".into(),
        },
        coloring,
        claimed_red_free: format!("C({k},1,{n})"),
        claimed_blue_free: format!("class hypergraph with chi={chi}, last class {t}"),
        partition: blocks,
        parameters: Params { k, n: Some(n), chi: Some(chi), t: Some(t), q, ..Params::default() },
        flags,
    })
}

/// V_iV_iV_j red for i ≤ j, everything else blue; 3-uniform.
pub fn non_transitive_lb(m: usize, t: usize) -> Result<LowerBoundInstance> {
    if m < 2 || t < 1 {
        return invalid("need m >= 2 and t >= 1");
    }
    let (blocks, owner) = layout(&vec![t; m - 1])?;
    let coloring = TwoColoring::from_fn(3, owner.len(), |mask| {
        let v = crate::hg::vertices_of(mask);
        let mut b: Vec<usize> = v.iter().map(|&x| owner[x as usize]).collect();
        b.sort_unstable();
        // sorted block indices (i, i, j) with i ≤ j
        red_if(b[0] == b[1])
    })?;
    Ok(LowerBoundInstance {
        name: "non_transitive".into(),
        coloring,
        claimed_red_free: format!("P(3,2,n) for n > {}", 3 * t / 2 + 1),
        claimed_blue_free: format!("H(T,{m}) for non-transitive T"),
        partition: blocks,
        parameters: Params { k: 3, m: Some(m), t: Some(t), ..Params::default() },
        flags: Vec::new(),
    })
}

/// V_iV_iV_i red, V_iV_iV_j red for arcs (i,j), everything else blue.
pub fn transitive_lb(tour: &Tournament, n: usize) -> Result<LowerBoundInstance> {
    let size = (2 * n / 3).saturating_sub(2);
    if size < 1 {
        return invalid(format!("n={n} gives empty blocks"));
    }
    let chi = tour.n();
    let (blocks, owner) = layout(&vec![size; chi])?;
    let coloring = TwoColoring::from_fn(3, owner.len(), |mask| {
        let v = crate::hg::vertices_of(mask);
        let b: Vec<usize> = v.iter().map(|&x| owner[x as usize]).collect();
        let (i, j) = if b[0] == b[1] {
            (b[0], b[2])
        } else if b[1] == b[2] {
            (b[1], b[0])
        } else if b[0] == b[2] {
            (b[0], b[1])
        } else {
            return Color::Blue;
        };
        red_if(i == j || tour.has_arc(i, j))
    })?;
    Ok(LowerBoundInstance {
        name: "transitive".into(),
        coloring,
        claimed_red_free: format!("P(3,2,{n})"),
        claimed_blue_free: format!("H(TT_chi,m) for TT_chi not in the {chi}-vertex tournament"),
        partition: blocks,
        parameters: Params { k: 3, n: Some(n), chi: Some(chi), t: Some(size), ..Params::default() },
        flags: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauConstruction {
    pub graph: Hypergraph,
    /// copies of K_{2k−2}
    pub r: usize,
    /// isolated vertices
    pub s: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// r disjoint copies of K_{2k−2}^(k) and s isolated vertices, α−1 = r(k−1)+s.
pub fn tau_lower_construction(k: usize, alpha: usize) -> Result<TauConstruction> {
    if k < 2 || alpha < 1 {
        return invalid("need k >= 2 and alpha >= 1");
    }
    if alpha < k {
        return Ok(TauConstruction {
            graph: Hypergraph::empty(k, alpha - 1),
            r: 0,
            s: alpha - 1,
            flags: vec![format!("alpha < k: the extremal graph is {} isolated vertices", alpha - 1)],
        });
    }
    let (r, s) = ((alpha - 1) / (k - 1), (alpha - 1) % (k - 1));
    let block = clique(k, 2 * k - 2)?;
    let mut g = Hypergraph::empty(k, 0);
    for _ in 0..r {
        g = g.disjoint_union(&block)?;
    }
    g = g.disjoint_union(&Hypergraph::empty(k, s))?;
    Ok(TauConstruction { graph: g, r, s, flags: Vec::new() })
}

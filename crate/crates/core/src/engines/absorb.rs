use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hg::{binom, mask_of, tournament_hypergraph, vertices_of, Color, KSets, Tournament, TwoColoring};
use crate::search::{CertKind, Certificate, Host, SearchStats};

/// Fraction of the triples {a, a′, b} (a ≠ a′ in `a`, b in `b`) that are
/// `color`, counted exactly.
pub fn pair_density(c: &TwoColoring, a: &[u32], b: &[u32], color: Color) -> f64 {
    let (mut hit, mut all) = (0u64, 0u64);
    for (x, &a1) in a.iter().enumerate() {
        for &a2 in &a[x + 1..] {
            for &y in b {
                if y == a1 || y == a2 {
                    continue;
                }
                all += 1;
                hit += c.is(1 << a1 | 1 << a2 | 1 << y, color) as u64;
            }
        }
    }
    if all == 0 {
        0.0
    } else {
        hit as f64 / all as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomEmbed {
    pub certificate: Option<Certificate>,
    pub trials_used: usize,
    /// C(χ,2)·m³·2γ; below 1 means a single trial succeeds with positive
    /// probability.
    pub union_bound: f64,
    /// Blue density of every arc (i, j), i < j.
    pub densities: Vec<((usize, usize), f64)>,
}

/// Samples m vertices per class with repetition, rejecting repeats, until
/// the classes carry a blue H(TT_χ, m). `classes` are in transitive order:
/// class i sends pairs to every later class.
pub fn random_embed(c: &TwoColoring, classes: &[Vec<u32>], m: usize, gamma: f64, trials: usize, seed: u64) -> Result<RandomEmbed> {
    if c.k() != 3 {
        return invalid("random embedding is 3-uniform");
    }
    let chi = classes.len();
    if chi == 0 || m == 0 || !(gamma > 0.0) {
        return invalid("need at least one class, m >= 1 and gamma > 0");
    }
    let all = classes.iter().fold(0u64, |a, v| a | mask_of(v));
    if all.count_ones() as usize != classes.iter().map(Vec::len).sum::<usize>() {
        return invalid("classes must be disjoint and repeat-free");
    }
    for (i, v) in classes.iter().enumerate() {
        if (v.len() as f64) < 1.0 / gamma {
            return invalid(format!("class {i} has {} vertices, below 1/gamma = {:.3}", v.len(), 1.0 / gamma));
        }
    }
    let mut densities = Vec::new();
    for i in 0..chi {
        for j in i + 1..chi {
            let d = pair_density(c, &classes[i], &classes[j], Color::Blue);
            if d < 1.0 - gamma {
                return invalid(format!("blue density {d:.4} on arc ({i},{j}) is below 1 - gamma"));
            }
            densities.push(((i, j), d));
        }
    }
    let union_bound = binom(chi, 2) as f64 * (m * m * m) as f64 * 2.0 * gamma;
    let (h, _) = tournament_hypergraph(&Tournament::transitive(chi), m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let picks: Vec<u32> = classes.iter().flat_map(|v| (0..m).map(|_| v[rng.gen_range(0..v.len())]).collect::<Vec<_>>()).collect();
        if mask_of(&picks).count_ones() as usize != picks.len() {
            continue;
        }
        let ok = h.edges().iter().all(|e| c.is(e.iter().fold(0u64, |a, &u| a | 1 << picks[u as usize]), Color::Blue));
        if ok {
            let cert = Certificate::new(CertKind::BlueEmbedding, picks, true, SearchStats::default())
                .with_color(Color::Blue)
                .with_pattern(h.clone())
                .with_note(format!("random embedding, trial {trial}, seed {seed}"));
            cert.validate(Host::Coloring(c))?;
            return Ok(RandomEmbed { certificate: Some(cert), trials_used: trial, union_bound, densities });
        }
    }
    Ok(RandomEmbed { certificate: None, trials_used: trials, union_bound, densities })
}

/// Path with `len` edges in a simple graph given by adjacency masks,
/// lexicographically first. Exceeding `budget` nodes is a guard error.
pub fn erdos_gallai_path(adj: &[u64], len: usize, budget: u64) -> Result<Option<Vec<u32>>> {
    let n = adj.len();
    if n > 64 {
        return invalid("graphs are limited to 64 vertices");
    }
    for (v, &a) in adj.iter().enumerate() {
        if a >> v & 1 == 1 || vertices_of(a).iter().any(|&w| w as usize >= n || adj[w as usize] >> v & 1 == 0) {
            return invalid("adjacency is not a simple undirected graph");
        }
    }
    if len + 1 > n {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(len + 1);
    let mut nodes = 0u64;
    for s in 0..n as u32 {
        path.push(s);
        match extend(adj, len, &mut path, 1 << s, &mut nodes, budget) {
            Some(true) => return Ok(Some(path)),
            Some(false) => {}
            None => return Err(Error::Guard(format!("path search exceeded {budget} nodes"))),
        }
        path.pop();
    }
    Ok(None)
}

fn extend(adj: &[u64], len: usize, path: &mut Vec<u32>, used: u64, nodes: &mut u64, budget: u64) -> Option<bool> {
    if path.len() == len + 1 {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let last = *path.last().unwrap() as usize;
    for w in vertices_of(adj[last] & !used) {
        path.push(w);
        if extend(adj, len, path, used | 1 << w, nodes, budget)? {
            return Some(true);
        }
        path.pop();
    }
    Some(false)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsorbParams {
    pub d: usize,
    pub eta: f64,
    /// Require |A| ≥ scale·4d·e^d/η^d and |B| ≥ scale·d/η.
    pub size_scale: f64,
    pub budget: u64,
}

impl Default for AbsorbParams {
    fn default() -> Self {
        AbsorbParams { d: 1, eta: 0.5, size_scale: 0.0, budget: 5_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsorbOutcome {
    /// a₁a₂b₁a₃a₄…b_d a_{2d+1}a_{2d+2}
    pub certificate: Option<Certificate>,
    pub chosen_b: Vec<u32>,
    /// Edges of the auxiliary graph on A.
    pub aux_edges: usize,
    /// e(G) > d|A|.
    pub bound_holds: bool,
    pub red_density: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Picks the d-subset of B supported by the most pairs of A, joins the
/// supporting pairs into a graph on A, and threads B through a path of
/// length 2d+1 in that graph.
pub fn absorbing_block(c: &TwoColoring, a: &[u32], b: &[u32], p: &AbsorbParams) -> Result<AbsorbOutcome> {
    if c.k() != 3 {
        return invalid("absorbing blocks are 3-uniform");
    }
    let (am, bm) = (mask_of(a), mask_of(b));
    if am.count_ones() as usize != a.len() || bm.count_ones() as usize != b.len() || am & bm != 0 {
        return invalid("A and B must be repeat-free and disjoint");
    }
    if a.iter().chain(b).any(|&v| v as usize >= c.n()) || p.d == 0 || !(p.eta > 0.0) {
        return invalid("vertices out of range, d = 0, or eta not positive");
    }
    let d = p.d;
    let e = std::f64::consts::E;
    if (a.len() as f64) < p.size_scale * 4.0 * d as f64 * (e / p.eta).powi(d as i32) || (b.len() as f64) < p.size_scale * d as f64 / p.eta {
        return invalid("A or B is below the scaled size thresholds");
    }
    if let Some(s) = KSets::new(a.len(), 3).find(|&s| !c.is(vertices_of(s).iter().fold(0u64, |m, &i| m | 1 << a[i as usize]), Color::Red)) {
        let bad: Vec<u32> = vertices_of(s).iter().map(|&i| a[i as usize]).collect();
        return invalid(format!("A is not a red clique: {bad:?} is blue"));
    }
    let red_density = pair_density(c, a, b, Color::Red);
    if red_density < p.eta {
        return invalid(format!("red density {red_density:.4} of (A,A,B) is below eta"));
    }
    if b.len() < d {
        return invalid("B has fewer than d vertices");
    }
    // support[x] = B-vertices completing pair x to a red edge, as a mask over B
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (x + 1..a.len()).map(move |y| (x, y))).collect();
    let support: Vec<u64> = pairs
        .iter()
        .map(|&(x, y)| (0..b.len()).fold(0u64, |s, j| s | (c.is(1 << a[x] | 1 << a[y] | 1 << b[j], Color::Red) as u64) << j))
        .collect();
    let mut best = (0usize, 0u64);
    for s in KSets::new(b.len(), d) {
        let n = support.iter().filter(|&&sup| sup & s == s).count();
        if n > best.0 {
            best = (n, s);
        }
    }
    if best.0 == 0 {
        best.1 = KSets::new(b.len(), d).next().unwrap_or(0);
    }
    let chosen: Vec<u32> = vertices_of(best.1).iter().map(|&j| b[j as usize]).collect();
    let mut adj = vec![0u64; a.len()];
    for (&(x, y), &sup) in pairs.iter().zip(&support) {
        if sup & best.1 == best.1 {
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
    }
    let aux_edges = best.0;
    let bound_holds = aux_edges > d * a.len();
    let path = erdos_gallai_path(&adj, 2 * d + 1, p.budget)?;
    let Some(path) = path else {
        return Ok(AbsorbOutcome {
            certificate: None,
            chosen_b: chosen,
            aux_edges,
            bound_holds,
            red_density,
            diagnostic: Some(format!("auxiliary graph has {aux_edges} edges and no path of length {}", 2 * d + 1)),
        });
    };
    let av: Vec<u32> = path.iter().map(|&i| a[i as usize]).collect();
    let mut seq = vec![av[0], av[1]];
    for i in 0..d {
        seq.extend([chosen[i], av[2 * i + 2], av[2 * i + 3]]);
    }
    let cert = Certificate::new(CertKind::RedPath, seq, true, SearchStats::default()).with_color(Color::Red).with_ell(2);
    cert.validate(Host::Coloring(c))?;
    Ok(AbsorbOutcome { certificate: Some(cert), chosen_b: chosen, aux_edges, bound_holds, red_density, diagnostic: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_in_small_graphs() {
        let k5: Vec<u64> = (0..5).map(|v| 0b11111 & !(1 << v)).collect();
        assert_eq!(erdos_gallai_path(&k5, 4, 1000).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        let star = vec![0b11110, 1, 1, 1, 1];
        assert_eq!(erdos_gallai_path(&star, 3, 1000).unwrap(), None);
        assert!(erdos_gallai_path(&star, 2, 1000).unwrap().is_some());
    }

    #[test]
    fn absorbing_in_all_red() {
        let c = TwoColoring::uniform(3, 9, Color::Red).unwrap();
        let out = absorbing_block(&c, &[0, 1, 2, 3, 4, 5], &[6, 7, 8], &AbsorbParams::default()).unwrap();
        assert_eq!(out.certificate.unwrap().witness, vec![0, 1, 6, 2, 3]);
        assert!(out.bound_holds);
        let out = absorbing_block(&c, &[0, 1, 2, 3, 4, 5], &[6, 7, 8], &AbsorbParams { d: 2, ..AbsorbParams::default() }).unwrap();
        assert_eq!(out.certificate.unwrap().witness.len(), 8);
    }

    #[test]
    fn blue_classes_embed_first_try() {
        let c = TwoColoring::uniform(3, 12, Color::Blue).unwrap();
        let classes = vec![(0..6).collect(), (6..12).collect()];
        let out = random_embed(&c, &classes, 2, 0.2, 10, 0).unwrap();
        assert!(out.certificate.is_some());
        assert!((out.union_bound - 3.2).abs() < 1e-12);
    }
}

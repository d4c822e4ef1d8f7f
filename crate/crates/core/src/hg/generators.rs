use super::colex::KSets;
use super::{Hypergraph, Tournament, MAX_VERTICES};
use crate::error::{invalid, Result};

fn check_ell(k: usize, ell: usize) -> Result<()> {
    if k < 2 || ell < 1 || ell >= k {
        return invalid(format!("need 1 <= ell <= k-1, got k={k}, ell={ell}"));
    }
    Ok(())
}

/// The ℓ-path on `0..n` in natural order.
pub fn ell_path(k: usize, ell: usize, n: usize) -> Result<Hypergraph> {
    check_ell(k, ell)?;
    if n < k {
        return invalid(format!("an {ell}-path needs at least {k} vertices, got {n}"));
    }
    if (n - ell) % (k - ell) != 0 {
        return invalid(format!("n={n} is not congruent to {ell} mod {}", k - ell));
    }
    let q = (n - ell) / (k - ell);
    let edges = (0..q)
        .map(|i| {
            let s = (i * (k - ell)) as u32;
            (s..s + k as u32).collect()
        })
        .collect();
    Hypergraph::new(k, n, edges)
}

/// The ℓ-cycle on `0..n` with indices taken mod n.
pub fn ell_cycle(k: usize, ell: usize, n: usize) -> Result<Hypergraph> {
    check_ell(k, ell)?;
    if n < k {
        return invalid(format!("an {ell}-cycle needs at least {k} vertices, got {n}"));
    }
    if n % (k - ell) != 0 {
        return invalid(format!("n={n} is not divisible by {}", k - ell));
    }
    let q = n / (k - ell);
    let edges: Vec<Vec<u32>> =
        (0..q).map(|i| (0..k).map(|j| ((i * (k - ell) + j) % n) as u32).collect()).collect();
    Hypergraph::new(k, n, edges).map_err(|e| crate::Error::Invalid(format!("degenerate wrap: {e}")))
}

/// Tournament hypergraph H(T, m) with classes `i*m..(i+1)*m`.
pub fn tournament_hypergraph(t: &Tournament, m: usize) -> Result<(Hypergraph, Vec<Vec<u32>>)> {
    if m < 1 {
        return invalid("class size must be at least 1");
    }
    let n = t.n() * m;
    if n > MAX_VERTICES {
        return invalid(format!("H(T,{m}) has {n} vertices, over the limit"));
    }
    let class = |i: usize| (i * m) as u32..((i + 1) * m) as u32;
    let mut edges = Vec::new();
    for (i, j) in t.arcs() {
        for x in class(i) {
            for y in x + 1..class(i).end {
                for z in class(j) {
                    edges.push(vec![x, y, z]);
                }
            }
        }
    }
    let classes = (0..t.n()).map(|i| class(i).collect()).collect();
    Ok((Hypergraph::new(3, n, edges)?, classes))
}

/// Fano plane from the difference set {0,1,3} mod 7.
pub fn fano() -> Hypergraph {
    let lines = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    let h = Hypergraph::new(3, 7, lines).expect("seven distinct lines");
    for pair in KSets::new(7, 2) {
        let hits = h.edge_masks().iter().filter(|&&e| e & pair == pair).count();
        assert_eq!(hits, 1, "pair coverage fails for the Fano line set");
    }
    h
}

/// K_n^(k).
pub fn clique(k: usize, n: usize) -> Result<Hypergraph> {
    if n > MAX_VERTICES {
        return invalid(format!("{n} vertices exceeds the limit"));
    }
    Hypergraph::from_masks(k, n, KSets::new(n, k).collect())
}

/// One edge on k vertices.
pub fn single_edge(k: usize) -> Result<Hypergraph> {
    clique(k, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(h: &Hypergraph) -> Vec<Vec<u32>> {
        h.edges().to_vec()
    }

    #[test]
    fn paths() {
        assert_eq!(edges(&ell_path(3, 2, 4).unwrap()), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(edges(&ell_path(3, 1, 5).unwrap()), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(edges(&ell_path(4, 3, 4).unwrap()), vec![vec![0, 1, 2, 3]]);
        assert!(ell_path(3, 1, 6).is_err());
        assert!(ell_path(3, 3, 6).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(edges(&ell_cycle(3, 1, 4).unwrap()), vec![vec![0, 1, 2], vec![0, 2, 3]]);
        let c = ell_cycle(3, 2, 4).unwrap();
        assert_eq!(c.num_edges(), 4);
        assert!(ell_cycle(3, 1, 3).is_err());
        assert!(ell_cycle(3, 2, 3).is_err());
    }

    #[test]
    fn tournament_hypergraphs() {
        let (h, classes) = tournament_hypergraph(&Tournament::transitive(2), 2).unwrap();
        assert_eq!(classes, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(edges(&h), vec![vec![0, 1, 2], vec![0, 1, 3]]);
        assert_eq!(tournament_hypergraph(&Tournament::transitive(3), 2).unwrap().0.num_edges(), 6);
        assert_eq!(tournament_hypergraph(&Tournament::cyclic_triangle(), 1).unwrap().0.num_edges(), 0);
    }

    #[test]
    fn fano_plane() {
        let f = fano();
        assert_eq!((f.k(), f.n(), f.num_edges()), (3, 7, 7));
        assert!(f.degrees().iter().all(|&d| d == 3));
    }
}

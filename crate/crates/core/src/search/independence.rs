use super::{CertKind, Certificate, Limits, SearchStats};
use crate::error::{Error, Result};
use crate::hg::{vertices_of, Hypergraph};

#[derive(Clone, Debug)]
pub struct Independence {
    pub alpha: usize,
    pub certificate: Certificate,
}

/// Exact independence number by branch and bound on vertex inclusion.
pub fn independence_number(h: &Hypergraph, limits: &Limits) -> Result<Independence> {
    let n = h.n();
    if n > limits.independence {
        return Err(Error::Guard(format!("independence search limited to {} vertices, got {n}", limits.independence)));
    }
    let mut b = Bnb { edges: h.edge_masks(), best: 0, stats: SearchStats::default() };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    b.run(0, all);
    let witness = vertices_of(b.best);
    let alpha = witness.len();
    let cert = Certificate::new(CertKind::IndependentSet, witness, true, b.stats).with_pattern(h.clone());
    Ok(Independence { alpha, certificate: cert })
}

struct Bnb {
    edges: Vec<u64>,
    best: u64,
    stats: SearchStats,
}

impl Bnb {
    fn run(&mut self, set: u64, cand: u64) {
        self.stats.nodes += 1;
        if cand == 0 {
            if set.count_ones() > self.best.count_ones() {
                self.best = set;
            }
            return;
        }
        if set.count_ones() + cand.count_ones() <= self.best.count_ones() {
            self.stats.prunes += 1;
            return;
        }
        let v = cand.trailing_zeros();
        let rest = cand & !(1 << v);
        let with = set | 1 << v;
        // drop candidates that would now close an edge
        let mut next = rest;
        for &e in &self.edges {
            if e >> v & 1 == 1 {
                let missing = e & !with;
                if missing.count_ones() == 1 {
                    next &= !missing;
                }
            }
        }
        if self.edges.iter().all(|&e| e & !with != 0) {
            self.run(with, next);
        }
        self.run(set, rest);
    }
}

/// Two edges meeting in exactly one vertex, if any.
pub fn has_two_edge_loose_path(h: &Hypergraph) -> Option<(Vec<u32>, Vec<u32>)> {
    let m = h.edge_masks();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if (m[i] & m[j]).count_ones() == 1 {
                return Some((h.edges()[i].clone(), h.edges()[j].clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg::clique;
    use crate::search::Host;

    #[test]
    fn small_values() {
        let lim = Limits::default();
        let k4 = clique(3, 4).unwrap();
        let r = independence_number(&k4, &lim).unwrap();
        assert_eq!(r.alpha, 2);
        r.certificate.validate(Host::Hypergraph(&k4)).unwrap();
        assert_eq!(independence_number(&Hypergraph::empty(3, 6), &lim).unwrap().alpha, 6);
    }

    #[test]
    fn two_edge_paths() {
        let h = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert!(has_two_edge_loose_path(&h).is_some());
        assert!(has_two_edge_loose_path(&clique(3, 4).unwrap()).is_none());
        assert!(has_two_edge_loose_path(&clique(4, 6).unwrap()).is_none());
        let m = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(has_two_edge_loose_path(&m).is_none());
    }

    #[test]
    fn guard_is_hard() {
        let lim = Limits { independence: 5, ..Limits::default() };
        assert!(matches!(independence_number(&Hypergraph::empty(3, 6), &lim), Err(Error::Guard(_))));
    }
}

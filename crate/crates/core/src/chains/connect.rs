//! Short monochromatic ℓ-paths between prescribed end sets.

use crate::hg::{vertices_of, Color, TwoColoring};
use crate::search::SearchStats;

#[derive(Clone, Debug)]
pub struct PathQuery {
    pub ell: usize,
    pub color: Color,
    /// Allowed vertices for the first ℓ positions.
    pub starts: u64,
    /// Allowed vertices for the last ℓ positions.
    pub ends: u64,
    /// Every vertex of the path lies here.
    pub allowed: u64,
    /// Path orders to try, in the given order.
    pub orders: Vec<usize>,
    pub budget: u64,
}

impl PathQuery {
    /// Paths of every order ≤ `max_order` with at least one edge.
    pub fn up_to(k: usize, ell: usize, max_order: usize) -> Vec<usize> {
        (1..).map(|q| ell + q * (k - ell)).take_while(|&o| o <= max_order).collect()
    }
}

/// Calls `f` on each matching sequence in lexicographic order per order;
/// `f` returns false to stop. Returns false if the budget ran out.
pub fn for_each_ell_path(c: &TwoColoring, q: &PathQuery, stats: &mut SearchStats, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut seq = Vec::new();
    for &order in &q.orders {
        if order < c.k() || order > 64 {
            continue;
        }
        match walk(c, q, order, &mut seq, 0, stats, &mut f) {
            Step::Go => {}
            Step::Stop => return true,
            Step::Budget => return false,
        }
    }
    true
}

pub fn find_ell_path(c: &TwoColoring, q: &PathQuery, stats: &mut SearchStats) -> Option<Vec<u32>> {
    let mut hit = None;
    for_each_ell_path(c, q, stats, |s| {
        hit = Some(s.to_vec());
        false
    });
    hit
}

enum Step {
    Go,
    Stop,
    Budget,
}

fn walk(
    c: &TwoColoring,
    q: &PathQuery,
    order: usize,
    seq: &mut Vec<u32>,
    used: u64,
    stats: &mut SearchStats,
    f: &mut impl FnMut(&[u32]) -> bool,
) -> Step {
    let k = c.k();
    let step = k - q.ell;
    let i = seq.len();
    if i == order {
        return if f(seq) { Step::Go } else { Step::Stop };
    }
    if stats.nodes >= q.budget {
        return Step::Budget;
    }
    stats.nodes += 1;
    let mut cand = q.allowed & !used;
    if i < q.ell {
        cand &= q.starts;
    }
    if i + q.ell >= order {
        cand &= q.ends;
    }
    let closes = i + 1 >= k && (i + 1 - k) % step == 0;
    for v in vertices_of(cand) {
        seq.push(v);
        if closes {
            let e = seq[i + 1 - k..].iter().fold(0u64, |m, &x| m | 1 << x);
            if !c.is(e, q.color) {
                seq.pop();
                stats.prunes += 1;
                continue;
            }
        }
        let r = walk(c, q, order, seq, used | 1 << v, stats, f);
        seq.pop();
        if !matches!(r, Step::Go) {
            return r;
        }
    }
    Step::Go
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::path_edges;

    #[test]
    fn finds_tight_connector() {
        let c = TwoColoring::uniform(3, 6, Color::Red).unwrap();
        let q = PathQuery {
            ell: 2,
            color: Color::Red,
            starts: 0b000111,
            ends: 0b111000,
            allowed: 0b111111,
            orders: PathQuery::up_to(3, 2, 6),
            budget: 1 << 20,
        };
        let p = find_ell_path(&c, &q, &mut SearchStats::default()).unwrap();
        assert_eq!(p, vec![0, 1, 3, 4]);
        assert_eq!(path_edges(&p, 3, 2, false).unwrap().len(), 2);
    }

    #[test]
    fn respects_colour() {
        let c = TwoColoring::uniform(3, 6, Color::Blue).unwrap();
        let q = PathQuery {
            ell: 1,
            color: Color::Red,
            starts: 1,
            ends: 1 << 5,
            allowed: 63,
            orders: PathQuery::up_to(3, 1, 6),
            budget: 1 << 20,
        };
        assert!(find_ell_path(&c, &q, &mut SearchStats::default()).is_none());
    }
}

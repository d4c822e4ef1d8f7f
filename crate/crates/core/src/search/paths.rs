use std::collections::HashMap;

use super::{CertKind, Certificate, Limits, SearchStats};
use crate::error::{invalid, Error, Result};
use crate::hg::{mask_of, Color, TwoColoring};

#[derive(Clone, Debug)]
pub struct PathSearch {
    /// Vertex count of the best path; a path without edges counts its bare
    /// window of ell vertices.
    pub vertices: usize,
    pub edges: usize,
    pub certificate: Certificate,
}

const UNKNOWN: u8 = u8::MAX;
const DENSE_LIMIT: u64 = 1 << 26;

/// Longest monochromatic ℓ-path.
///
/// State is (last ℓ vertices, used set). When ℓ ≤ k−ℓ the whole window is
/// replaced at the next step, so it is kept as a sorted set; otherwise its
/// order decides which vertices drop out first and it stays ordered.
pub fn longest_mono_ell_path(c: &TwoColoring, ell: usize, color: Color, limits: &Limits) -> Result<PathSearch> {
    let (k, n) = (c.k(), c.n());
    if ell == 0 || ell >= k {
        return invalid(format!("ell={ell} must satisfy 1 <= ell <= k-1 = {}", k - 1));
    }
    let guard = if ell == 1 && k > 2 { limits.loose_path } else { limits.tight_path };
    let exact = n <= guard;
    if !exact && !limits.soft {
        return Err(Error::Guard(format!("path search limited to {guard} vertices, coloring has {n}")));
    }
    let dp = Dp::new(c, ell, color, exact);
    let (seq, stats) = if n < k { (Vec::new(), SearchStats::default()) } else { dp.solve(limits.path_nodes) };
    let (seq, edges) = if seq.len() < k {
        ((0..ell.min(n) as u32).collect::<Vec<_>>(), 0)
    } else {
        let e = (seq.len() - ell) / (k - ell);
        (seq, e)
    };
    let mut cert = Certificate::new(CertKind::RedPath, seq.clone(), exact, stats).with_color(color).with_ell(ell);
    if !exact {
        cert = cert.with_note(format!("inexact: {n} vertices exceeds the guard of {guard}; best found within budget"));
    }
    Ok(PathSearch { vertices: seq.len(), edges, certificate: cert })
}

struct Dp<'a> {
    c: &'a TwoColoring,
    color: Color,
    n: usize,
    k: usize,
    ell: usize,
    step: usize,
    set_mode: bool,
    memo: Option<Memo>,
    stats: SearchStats,
}

enum Memo {
    Dense(Vec<u8>),
    Sparse(HashMap<(u64, u64), u8>),
}

impl<'a> Dp<'a> {
    fn new(c: &'a TwoColoring, ell: usize, color: Color, exact: bool) -> Dp<'a> {
        let (n, k) = (c.n(), c.k());
        let step = k - ell;
        let memo = exact.then(|| {
            let states = (n as u64).checked_pow(ell as u32).and_then(|w| w.checked_mul(1u64 << n.min(63)));
            match states {
                Some(s) if s <= DENSE_LIMIT => Memo::Dense(vec![UNKNOWN; s as usize]),
                _ => Memo::Sparse(HashMap::new()),
            }
        });
        Dp { c, color, n, k, ell, step, set_mode: ell <= step, memo, stats: SearchStats::default() }
    }

    fn key(&self, w: &[u32], used: u64) -> (u64, u64) {
        let code = w.iter().rev().fold(0u64, |a, &v| a * self.n as u64 + v as u64);
        (code, used)
    }

    fn memo_get(&self, w: &[u32], used: u64) -> u8 {
        let (code, used) = self.key(w, used);
        match &self.memo {
            Some(Memo::Dense(t)) => t[((code << self.n) | used) as usize],
            Some(Memo::Sparse(m)) => *m.get(&(code, used)).unwrap_or(&UNKNOWN),
            None => UNKNOWN,
        }
    }

    fn memo_put(&mut self, w: &[u32], used: u64, v: u8) {
        let (code, u) = self.key(w, used);
        let n = self.n;
        match &mut self.memo {
            Some(Memo::Dense(t)) => t[((code << n) | u) as usize] = v,
            Some(Memo::Sparse(m)) => {
                m.insert((code, u), v);
            }
            None => {}
        }
    }

    /// Successor states from window `w`, in canonical order. Each item is
    /// (vertices appended to the sequence, next window).
    fn moves(&self, w: &[u32], used: u64) -> Vec<(Vec<u32>, Vec<u32>)> {
        let free: Vec<u32> = (0..self.n as u32).filter(|v| used >> v & 1 == 0).collect();
        let wmask = mask_of(w);
        let mut out = Vec::new();
        if self.set_mode {
            for t in combos(&free, self.step) {
                if !self.c.is(wmask | mask_of(&t), self.color) {
                    continue;
                }
                for nw in combos(&t, self.ell) {
                    let mut app: Vec<u32> = t.iter().copied().filter(|v| !nw.contains(v)).collect();
                    app.extend_from_slice(&nw);
                    out.push((app, nw));
                }
            }
        } else {
            for t in combos(&free, self.step) {
                if !self.c.is(wmask | mask_of(&t), self.color) {
                    continue;
                }
                for app in perms(&t) {
                    let mut nw: Vec<u32> = w[self.step..].to_vec();
                    nw.extend_from_slice(&app);
                    out.push((app, nw));
                }
            }
        }
        out
    }

    fn best(&mut self, w: &[u32], used: u64) -> u8 {
        let m = self.memo_get(w, used);
        if m != UNKNOWN {
            return m;
        }
        self.stats.nodes += 1;
        let cap = ((self.n - used.count_ones() as usize) / self.step) as u8;
        let mut best = 0u8;
        for (app, nw) in self.moves(w, used) {
            if best == cap {
                self.stats.prunes += 1;
                break;
            }
            let v = 1 + self.best(&nw, used | mask_of(&app));
            best = best.max(v);
        }
        self.memo_put(w, used, best);
        best
    }

    fn starts(&self) -> Vec<Vec<u32>> {
        let all: Vec<u32> = (0..self.n as u32).collect();
        if self.set_mode {
            combos(&all, self.ell)
        } else {
            combos(&all, self.ell).iter().flat_map(|s| perms(s)).collect()
        }
    }

    fn solve(mut self, budget: u64) -> (Vec<u32>, SearchStats) {
        let cap = ((self.n - self.ell) / self.step) as u8;
        if self.memo.is_none() {
            return self.solve_bounded(budget);
        }
        let mut top: Option<(u8, Vec<u32>)> = None;
        for s in self.starts() {
            let v = self.best(&s, mask_of(&s));
            if top.as_ref().map_or(true, |(b, _)| v > *b) {
                top = Some((v, s));
            }
            if v == cap {
                self.stats.prunes += 1;
                break;
            }
        }
        let Some((len, start)) = top else { return (Vec::new(), self.stats) };
        if len == 0 {
            return (Vec::new(), self.stats);
        }
        // walk the memo back down, taking the first optimal move
        let mut seq = start.clone();
        let mut w = start;
        let mut used = mask_of(&seq);
        let mut left = len;
        while left > 0 {
            let (app, nw) = self
                .moves(&w, used)
                .into_iter()
                .find(|(app, nw)| self.best(nw, used | mask_of(app)) + 1 == left)
                .expect("memo is consistent");
            used |= mask_of(&app);
            seq.extend_from_slice(&app);
            w = nw;
            left -= 1;
        }
        (seq, self.stats)
    }

    /// Plain branch and bound without memo, for instances past the guard.
    fn solve_bounded(mut self, budget: u64) -> (Vec<u32>, SearchStats) {
        let mut best: Vec<u32> = Vec::new();
        for s in self.starts() {
            let mut seq = s.clone();
            self.dfs(&s, mask_of(&s), &mut seq, &mut best, budget);
            if self.stats.nodes >= budget {
                break;
            }
        }
        (best, self.stats)
    }

    fn dfs(&mut self, w: &[u32], used: u64, seq: &mut Vec<u32>, best: &mut Vec<u32>, budget: u64) {
        self.stats.nodes += 1;
        if seq.len() > best.len() && seq.len() >= self.k {
            *best = seq.clone();
        }
        if self.stats.nodes >= budget {
            return;
        }
        let room = seq.len() + (self.n - used.count_ones() as usize) / self.step * self.step;
        if room <= best.len() {
            self.stats.prunes += 1;
            return;
        }
        for (app, nw) in self.moves(w, used) {
            let len = seq.len();
            seq.extend_from_slice(&app);
            self.dfs(&nw, used | mask_of(&app), seq, best, budget);
            seq.truncate(len);
            if self.stats.nodes >= budget {
                return;
            }
        }
    }
}

/// r-subsets of `items` in colex order of positions.
fn combos(items: &[u32], r: usize) -> Vec<Vec<u32>> {
    crate::hg::KSets::new(items.len(), r)
        .map(|m| crate::hg::vertices_of(m).iter().map(|&i| items[i as usize]).collect())
        .collect()
}

/// All orderings, lexicographic by position.
fn perms(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in perms(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Host;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn complete_colorings() {
        let red = TwoColoring::uniform(3, 5, Color::Red).unwrap();
        let r = longest_mono_ell_path(&red, 2, Color::Red, &lim()).unwrap();
        assert_eq!((r.vertices, r.edges), (5, 3));
        r.certificate.validate(Host::Coloring(&red)).unwrap();
        let r = longest_mono_ell_path(&red, 2, Color::Blue, &lim()).unwrap();
        assert_eq!((r.vertices, r.edges), (2, 0));
        let r = longest_mono_ell_path(&red, 1, Color::Red, &lim()).unwrap();
        assert_eq!((r.vertices, r.edges), (5, 2));
    }

    #[test]
    fn k4_uniform_paths() {
        let red = TwoColoring::uniform(4, 9, Color::Red).unwrap();
        for ell in 1..4 {
            let r = longest_mono_ell_path(&red, ell, Color::Red, &lim()).unwrap();
            let step = 4 - ell;
            assert_eq!(r.vertices, ell + (9 - ell) / step * step);
            r.certificate.validate(Host::Coloring(&red)).unwrap();
        }
    }

    #[test]
    fn strict_guard_errors() {
        let red = TwoColoring::uniform(3, 18, Color::Red).unwrap();
        let strict = Limits { soft: false, ..Limits::default() };
        assert!(matches!(longest_mono_ell_path(&red, 2, Color::Red, &strict), Err(Error::Guard(_))));
        let r = longest_mono_ell_path(&red, 2, Color::Red, &lim()).unwrap();
        assert!(!r.certificate.exact);
        assert_eq!(r.vertices, 18);
    }
}

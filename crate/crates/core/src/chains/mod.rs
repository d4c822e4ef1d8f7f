//! Clique chains and the machinery that assembles them from red cliques.

mod assemble;
mod connect;
mod partition;
mod system;
mod walk;

pub use assemble::{assemble_chains, Assembly};
pub use connect::{find_ell_path, for_each_ell_path, PathQuery};
pub use partition::{clique_partition, Block, CliquePartition};
pub use system::{build_path_system, PathSystem, SystemOptions, SystemOutcome};
pub use walk::double_tree_walk;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hg::{mask_of, Color, KSets, TwoColoring};
use crate::search::{path_edges, CertKind, Certificate, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Open,
    Closed,
}

/// Index range `start..start+len`, taken mod the vertex count when closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
}

/// Intervals are positional: I₁ starts at 0 and each next interval starts
/// ℓ before the previous one ends. In a closed chain the last interval runs
/// ℓ past the end, back onto the start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueChain {
    pub kind: ChainKind,
    pub k: usize,
    pub ell: usize,
    pub vertices: Vec<u32>,
    pub intervals: Vec<Interval>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub violations: Vec<String>,
    /// Per element.
    pub flexible: Vec<bool>,
    /// Per vertex position.
    pub spine: Vec<bool>,
}

impl ChainCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<ChainCheck> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(Error::Certificate(self.violations.join("; ")))
        }
    }
}

impl CliqueChain {
    /// Chain from consecutive elements given as vertex lists. Consecutive
    /// elements must share exactly ℓ vertices and no others may meet; each
    /// element's private vertices keep their listed order.
    pub fn from_elements(kind: ChainKind, k: usize, ell: usize, elements: &[Vec<u32>]) -> Result<CliqueChain> {
        let d = elements.len();
        if d == 0 {
            return invalid("a chain needs at least one element");
        }
        let masks: Vec<u64> = elements.iter().map(|e| mask_of(e)).collect();
        let shared = |j: usize| -> u64 {
            match kind {
                ChainKind::Open if j + 1 >= d => 0,
                _ => masks[j] & masks[(j + 1) % d],
            }
        };
        let mut vertices = Vec::new();
        let mut intervals = Vec::new();
        // closed chains open with the overlap of the last and first element
        let head = if kind == ChainKind::Closed && d > 1 { shared(d - 1) } else { 0 };
        let mut start = 0usize;
        for (j, e) in elements.iter().enumerate() {
            let prev = if j == 0 { head } else { shared(j - 1) };
            let next = if kind == ChainKind::Closed && j + 1 == d { head } else { shared(j) };
            if j == 0 {
                vertices.extend(e.iter().copied().filter(|&v| prev >> v & 1 == 1));
            }
            vertices.extend(e.iter().copied().filter(|&v| (prev | next) >> v & 1 == 0));
            if !(kind == ChainKind::Closed && j + 1 == d) {
                vertices.extend(e.iter().copied().filter(|&v| next >> v & 1 == 1 && prev >> v & 1 == 0));
            }
            intervals.push(Interval { start, len: e.len() });
            start += e.len().saturating_sub(ell);
        }
        let chain = CliqueChain { kind, k, ell, vertices, intervals };
        let elems: Vec<u64> = (0..d).map(|j| mask_of(&chain.element(j))).collect();
        if elems != masks {
            return invalid("elements do not overlap consecutively in exactly ell vertices");
        }
        Ok(chain)
    }

    /// Intervals of the given sizes laid out from index 0, each starting ℓ
    /// before the previous one ends.
    pub fn with_lengths(kind: ChainKind, k: usize, ell: usize, vertices: Vec<u32>, lens: &[usize]) -> CliqueChain {
        let mut start = 0;
        let intervals = lens
            .iter()
            .map(|&len| {
                let iv = Interval { start, len };
                start += len.saturating_sub(ell);
                iv
            })
            .collect();
        CliqueChain { kind, k, ell, vertices, intervals }
    }

    /// An ℓ-path or ℓ-cycle viewed as a chain of single edges.
    pub fn from_path(seq: &[u32], k: usize, ell: usize, closed: bool) -> Result<CliqueChain> {
        path_edges(seq, k, ell, closed).map_err(|e| Error::Invalid(e.to_string()))?;
        let step = k - ell;
        let q = if closed { seq.len() / step } else { (seq.len() - ell) / step };
        let intervals = (0..q).map(|i| Interval { start: i * step, len: k }).collect();
        let kind = if closed { ChainKind::Closed } else { ChainKind::Open };
        Ok(CliqueChain { kind, k, ell, vertices: seq.to_vec(), intervals })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices of element j (wrapping when closed).
    pub fn element(&self, j: usize) -> Vec<u32> {
        let p = self.vertices.len();
        let iv = self.intervals[j];
        (iv.start..iv.start + iv.len).map(|i| self.vertices[if p == 0 { 0 } else { i % p }]).collect()
    }

    pub fn is_flexible(&self, j: usize) -> bool {
        self.intervals[j].len > self.k.max(2 * self.ell)
    }
}

/// Checks the three chain conditions, structural consistency, and redness
/// of every k-set inside every element.
pub fn validate_chain(chain: &CliqueChain, c: &TwoColoring) -> ChainCheck {
    let mut v = Vec::new();
    let (k, ell, p) = (chain.k, chain.ell, chain.vertices.len());
    let d = chain.intervals.len();
    if k != c.k() {
        v.push(format!("chain is {k}-uniform, coloring is {}-uniform", c.k()));
    }
    if ell == 0 || ell >= k {
        v.push(format!("ell={ell} out of range"));
        return ChainCheck { violations: v, ..ChainCheck::default() };
    }
    let step = k - ell;
    if mask_of(&chain.vertices).count_ones() as usize != p || chain.vertices.iter().any(|&x| x as usize >= c.n()) {
        v.push("vertex list repeats a vertex or leaves the host".into());
        return ChainCheck { violations: v, ..ChainCheck::default() };
    }
    if d == 0 {
        v.push("no intervals".into());
        return ChainCheck { violations: v, ..ChainCheck::default() };
    }
    for (j, iv) in chain.intervals.iter().enumerate() {
        if iv.len < k || iv.len % step != ell % step {
            v.push(format!("interval {j} ({}..{}): size {} is below k or not ell mod k-ell", iv.start, iv.start + iv.len, iv.len));
        }
        if iv.len > p {
            v.push(format!("interval {j}: longer than the chain"));
        }
    }
    if chain.intervals[0].start != 0 {
        v.push("interval 0 does not start at index 0".into());
    }
    for j in 0..d.saturating_sub(1) {
        let (a, b) = (chain.intervals[j], chain.intervals[j + 1]);
        if b.start + ell != a.start + a.len {
            v.push(format!(
                "intervals {j} and {} overlap in {} indices, not {ell}",
                j + 1,
                (a.start + a.len).saturating_sub(b.start)
            ));
        }
    }
    let last = chain.intervals[d - 1];
    match chain.kind {
        ChainKind::Open => {
            if last.start + last.len != p {
                v.push(format!("intervals cover 0..{}, not all {p} indices", last.start + last.len));
            }
        }
        ChainKind::Closed => {
            if last.start + last.len != p + ell {
                v.push(format!("last interval wraps {} indices onto the first, not {ell}", (last.start + last.len) as i64 - p as i64));
            }
            if d == 1 {
                v.push("a closed chain needs at least two elements".into());
            }
            // on exactly k vertices every element is the whole chain
            if p <= k {
                v.push(format!("a closed chain needs more than k={k} vertices, has {p}"));
            }
        }
    }
    if !v.is_empty() {
        return ChainCheck { violations: v, ..ChainCheck::default() };
    }
    for j in 0..d {
        let e = chain.element(j);
        let m = mask_of(&e);
        if m.count_ones() as usize != e.len() {
            v.push(format!("element {j} repeats a vertex"));
            continue;
        }
        if let Some(bad) = KSets::new(e.len(), k).find(|&s| {
            let set = crate::hg::vertices_of(s).iter().fold(0u64, |a, &i| a | 1 << e[i as usize]);
            !c.is(set, Color::Red)
        }) {
            let set: Vec<u32> = crate::hg::vertices_of(bad).iter().map(|&i| e[i as usize]).collect();
            v.push(format!("element {j} ({}..{}) is not a red clique: {set:?} is blue", chain.intervals[j].start, chain.intervals[j].start + chain.intervals[j].len));
        }
    }
    let flexible = (0..d).map(|j| chain.is_flexible(j)).collect();
    let mut spine = vec![false; p];
    let bound = if chain.kind == ChainKind::Closed { d } else { d - 1 };
    for j in 0..bound {
        let a = chain.intervals[j];
        for i in a.start + a.len - ell..a.start + a.len {
            spine[i % p] = true;
        }
    }
    ChainCheck { violations: v, flexible, spine }
}

/// The chain's vertex order is itself a spanning ℓ-path (ℓ-cycle if
/// closed): path edges start at multiples of k−ℓ, interval starts do too,
/// so every edge fits inside one interval.
pub fn spanning_path(chain: &CliqueChain) -> Result<Certificate> {
    let closed = chain.kind == ChainKind::Closed;
    path_edges(&chain.vertices, chain.k, chain.ell, closed)?;
    let kind = if closed { CertKind::RedCycle } else { CertKind::RedPath };
    Ok(Certificate::new(kind, chain.vertices.clone(), true, SearchStats::default()).with_color(Color::Red).with_ell(chain.ell))
}

/// Opens a closed chain by splitting its largest flexible element near the
/// median; vertices trimmed from the new free ends to restore the residues
/// leave the chain. Without a splittable element, the largest element is
/// dropped except for its overlaps.
pub fn cut_open(chain: &CliqueChain) -> Result<CliqueChain> {
    if chain.kind == ChainKind::Open {
        return Ok(chain.clone());
    }
    let (k, ell) = (chain.k, chain.ell);
    let step = k - ell;
    let d = chain.intervals.len();
    let fits = |x: usize| x >= k && x % step == ell % step;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(chain.intervals[j].len), j));
    for &j in &order {
        let e = chain.element(j);
        let len = e.len();
        // keep a prefix of size a (its first ell overlap the previous
        // element) and a suffix of size b (its last ell overlap the next)
        let mid = len / 2;
        let mut best: Option<(usize, usize)> = None;
        for a in (k..=mid.max(k)).rev().chain(mid + 1..len) {
            if !fits(a) || a > len {
                continue;
            }
            let rest = len - a;
            if let Some(b) = (k..=rest).rev().find(|&b| fits(b)) {
                let score = a.min(b);
                if best.is_none_or(|(x, y)| score > x.min(y) || (score == x.min(y) && a + b > x + y)) {
                    best = Some((a, b));
                }
            }
        }
        let Some((a, b)) = best else { continue };
        let first = e[len - b..].to_vec();
        let last = e[..a].to_vec();
        let mut elements = vec![first];
        for t in 1..d {
            elements.push(chain.element((j + t) % d));
        }
        elements.push(last);
        return CliqueChain::from_elements(ChainKind::Open, k, ell, &elements);
    }
    // no element splits: drop the largest one, keeping its neighbours
    let j = order[0];
    let elements: Vec<Vec<u32>> = (1..d).map(|t| chain.element((j + t) % d)).collect();
    CliqueChain::from_elements(ChainKind::Open, k, ell, &elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_red(n: usize) -> TwoColoring {
        TwoColoring::uniform(3, n, Color::Red).unwrap()
    }

    #[test]
    fn bare_path_is_a_rigid_chain() {
        let ch = CliqueChain::from_path(&[0, 1, 2, 3, 4], 3, 1, false).unwrap();
        let chk = validate_chain(&ch, &all_red(5));
        assert!(chk.is_valid());
        assert_eq!(chk.flexible, vec![false, false]);
        assert_eq!(chk.spine, vec![false, false, true, false, false]);
    }

    #[test]
    fn overlap_too_large_is_rejected() {
        let ch = CliqueChain {
            kind: ChainKind::Open,
            k: 3,
            ell: 1,
            vertices: (0..5).collect(),
            intervals: vec![Interval { start: 0, len: 3 }, Interval { start: 1, len: 3 }],
        };
        let chk = validate_chain(&ch, &all_red(5));
        assert!(!chk.is_valid());
        assert!(chk.violations[0].contains("overlap in 2"));
    }

    #[test]
    fn single_element_spans() {
        let ch = CliqueChain {
            kind: ChainKind::Open,
            k: 3,
            ell: 1,
            vertices: (0..9).collect(),
            intervals: vec![Interval { start: 0, len: 9 }],
        };
        let chk = validate_chain(&ch, &all_red(9));
        assert_eq!(chk.flexible, vec![true]);
        let p = spanning_path(&ch).unwrap();
        assert_eq!(path_edges(&p.witness, 3, 1, false).unwrap().len(), 4);
    }

    #[test]
    fn two_element_closed_tight_chain() {
        let ch = CliqueChain {
            kind: ChainKind::Closed,
            k: 3,
            ell: 2,
            vertices: vec![0, 1, 2, 3],
            intervals: vec![Interval { start: 0, len: 4 }, Interval { start: 2, len: 4 }],
        };
        let c = all_red(4);
        assert!(validate_chain(&ch, &c).is_valid());
        let cert = spanning_path(&ch).unwrap();
        cert.validate(crate::search::Host::Coloring(&c)).unwrap();
        let flat = CliqueChain::with_lengths(ChainKind::Closed, 3, 2, vec![0, 1, 2], &[3, 3, 3]);
        assert!(!validate_chain(&flat, &c).is_valid());
    }

    #[test]
    fn elements_round_trip() {
        let els = vec![vec![0, 1, 2, 3, 4], vec![4, 5, 6, 7, 8]];
        let ch = CliqueChain::from_elements(ChainKind::Open, 3, 1, &els).unwrap();
        assert_eq!(ch.vertices, (0..9).collect::<Vec<u32>>());
        assert_eq!(ch.intervals[1], Interval { start: 4, len: 5 });
        let cyc = vec![vec![0, 1, 2, 3, 4], vec![4, 5, 6], vec![6, 7, 0]];
        let ch = CliqueChain::from_elements(ChainKind::Closed, 3, 1, &cyc).unwrap();
        assert!(validate_chain(&ch, &all_red(8)).is_valid());
        let open = cut_open(&ch).unwrap();
        assert!(validate_chain(&open, &all_red(8)).is_valid());
        assert_eq!(open.kind, ChainKind::Open);
    }
}

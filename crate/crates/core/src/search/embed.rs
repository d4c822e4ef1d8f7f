use super::{CertKind, Certificate, Limits, SearchStats};
use crate::error::{invalid, Result};
use crate::hg::{binom, mask_of, Color, Hypergraph, TwoColoring};
use crate::par::{self, Cancel};

/// The edge relation an embedding is checked against.
pub(crate) trait HostView: Sync {
    fn n(&self) -> usize;
    fn is_edge(&self, m: u64) -> bool;
    /// For 3-uniform hosts: all z with {x,y,z} an edge.
    fn link(&self, _x: u32, _y: u32) -> Option<u64> {
        None
    }
}

/// One color class of a coloring, with a pair-link table when k = 3.
pub(crate) struct ColorView<'a> {
    c: &'a TwoColoring,
    color: Color,
    link: Vec<u64>,
}

impl<'a> ColorView<'a> {
    pub(crate) fn new(c: &'a TwoColoring, color: Color) -> ColorView<'a> {
        let n = c.n();
        let mut link = Vec::new();
        if c.k() == 3 {
            link = vec![0u64; n * n];
            for x in 0..n {
                for y in x + 1..n {
                    let mut m = 0u64;
                    for z in 0..n {
                        if z != x && z != y && c.is(1 << x | 1 << y | 1 << z, color) {
                            m |= 1 << z;
                        }
                    }
                    link[x * n + y] = m;
                    link[y * n + x] = m;
                }
            }
        }
        ColorView { c, color, link }
    }
}

impl HostView for ColorView<'_> {
    fn n(&self) -> usize {
        self.c.n()
    }

    fn is_edge(&self, m: u64) -> bool {
        self.c.is(m, self.color)
    }

    fn link(&self, x: u32, y: u32) -> Option<u64> {
        (!self.link.is_empty()).then(|| self.link[x as usize * self.c.n() + y as usize])
    }
}

/// Placement order for pattern vertices with the edges each step closes.
#[derive(Clone, Debug)]
struct Plan {
    k: usize,
    order: Vec<u32>,
    /// closing[i]: edges whose last placed vertex is order[i], given by the
    /// steps of their other vertices
    closing: Vec<Vec<Vec<usize>>>,
    degree: Vec<usize>,
}

impl Plan {
    /// Greedy most-constrained-first order, starting with `prefix`.
    fn new(h: &Hypergraph, prefix: &[u32]) -> Plan {
        let v = h.n();
        let masks = h.edge_masks();
        let deg = h.degrees();
        let mut placed = 0u64;
        let mut order: Vec<u32> = Vec::with_capacity(v);
        for &p in prefix {
            order.push(p);
            placed |= 1 << p;
        }
        while order.len() < v {
            let mut pick: Option<(usize, usize, usize, u32)> = None;
            for u in 0..v as u32 {
                if placed >> u & 1 == 1 {
                    continue;
                }
                let closes = masks.iter().filter(|&&e| e >> u & 1 == 1 && e & !(placed | 1 << u) == 0).count();
                let touches = masks.iter().filter(|&&e| e >> u & 1 == 1 && e & placed != 0).count();
                let key = (closes, touches, deg[u as usize], u);
                let better = match pick {
                    None => true,
                    Some((c, t, d, _)) => (key.0, key.1, key.2) > (c, t, d),
                };
                if better {
                    pick = Some(key);
                }
            }
            let u = pick.expect("an unplaced vertex remains").3;
            order.push(u);
            placed |= 1 << u;
        }
        let mut pos = vec![0usize; v];
        for (i, &u) in order.iter().enumerate() {
            pos[u as usize] = i;
        }
        let mut closing = vec![Vec::new(); v];
        for e in h.edges() {
            let steps: Vec<usize> = e.iter().map(|&u| pos[u as usize]).collect();
            let last = *steps.iter().max().expect("edges are nonempty");
            closing[last].push(steps.into_iter().filter(|&s| s != last).collect());
        }
        let degree = order.iter().map(|&u| deg[u as usize]).collect();
        Plan { k: h.k(), order, closing, degree }
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Run<'a, V: HostView> {
    view: &'a V,
    plan: &'a Plan,
    host_deg: &'a [usize],
    allowed: u64,
    budget: Option<u64>,
    cancel: &'a Cancel<'a>,
    stats: SearchStats,
    img: Vec<u32>,
}

impl<V: HostView> Run<'_, V> {
    fn candidates(&mut self, step: usize, used: u64) -> u64 {
        let mut cand = self.allowed & !used;
        let need = self.plan.degree[step];
        for e in &self.plan.closing[step] {
            if self.plan.k == 3 {
                if let Some(l) = self.view.link(self.img[e[0]], self.img[e[1]]) {
                    cand &= l;
                    continue;
                }
            }
            let base = e.iter().fold(0u64, |m, &s| m | 1 << self.img[s]);
            let mut keep = 0u64;
            let mut rest = cand;
            while rest != 0 {
                let z = rest.trailing_zeros();
                rest &= rest - 1;
                if self.view.is_edge(base | 1 << z) {
                    keep |= 1 << z;
                }
            }
            cand = keep;
        }
        let mut rest = cand;
        while rest != 0 {
            let z = rest.trailing_zeros();
            rest &= rest - 1;
            if self.host_deg[z as usize] < need {
                cand &= !(1 << z);
                self.stats.prunes += 1;
            }
        }
        cand
    }

    fn extend(&mut self, step: usize, used: u64) -> Step {
        if step == self.plan.order.len() {
            return Step::Found;
        }
        self.stats.nodes += 1;
        if self.budget.is_some_and(|b| self.stats.nodes > b) || self.cancel.cancelled() {
            return Step::Aborted;
        }
        let mut cand = self.candidates(step, used);
        if cand == 0 {
            self.stats.prunes += 1;
        }
        while cand != 0 {
            let z = cand.trailing_zeros();
            cand &= cand - 1;
            self.img[step] = z;
            match self.extend(step + 1, used | 1 << z) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn host_degrees<V: HostView>(view: &V, k: usize, allowed: u64) -> Vec<usize> {
    let n = view.n();
    let mut deg = vec![0usize; n];
    let allowed_n = crate::hg::vertices_of(allowed);
    for m in crate::hg::KSets::new(allowed_n.len(), k) {
        let set = crate::hg::vertices_of(m).iter().fold(0u64, |a, &i| a | 1 << allowed_n[i as usize]);
        if view.is_edge(set) {
            let mut s = set;
            while s != 0 {
                deg[s.trailing_zeros() as usize] += 1;
                s &= s - 1;
            }
        }
    }
    deg
}

#[derive(Clone, Debug)]
pub struct CopySearch {
    /// Pattern vertex i ↦ host vertex `map[i]`.
    pub map: Option<Vec<u32>>,
    pub stats: SearchStats,
    /// False when a node budget cut the search short without a hit.
    pub exact: bool,
}

impl CopySearch {
    /// Embedding certificate, or a freeness attestation when absent.
    pub fn certificate(&self, h: &Hypergraph, color: Color) -> Certificate {
        match &self.map {
            Some(m) => Certificate::new(CertKind::BlueEmbedding, m.clone(), true, self.stats)
                .with_color(color)
                .with_pattern(h.clone()),
            None => Certificate::new(CertKind::Free, Vec::new(), self.exact, self.stats)
                .with_color(color)
                .with_pattern(h.clone())
                .with_note(format!("no {color} copy of the pattern")),
        }
    }
}

/// Monochromatic copy of `h` anywhere in the coloring.
pub fn find_mono_copy(c: &TwoColoring, h: &Hypergraph, color: Color, limits: &Limits) -> Result<CopySearch> {
    let all = if c.n() == 64 { u64::MAX } else { (1u64 << c.n()) - 1 };
    find_mono_copy_in(c, h, color, all, limits)
}

/// Monochromatic copy of `h` using only vertices in `allowed`.
pub fn find_mono_copy_in(
    c: &TwoColoring,
    h: &Hypergraph,
    color: Color,
    allowed: u64,
    limits: &Limits,
) -> Result<CopySearch> {
    if h.k() != c.k() {
        return invalid(format!("pattern is {}-uniform, coloring is {}-uniform", h.k(), c.k()));
    }
    if h.n() > allowed.count_ones() as usize {
        return Ok(CopySearch { map: None, stats: SearchStats::default(), exact: true });
    }
    if h.n() == 0 {
        return Ok(CopySearch { map: Some(Vec::new()), stats: SearchStats::default(), exact: true });
    }
    if h.n() >= h.k() && h.num_edges() as u64 == binom(h.n(), h.k()) {
        let (hit, stats) = find_mono_clique(c, h.n(), color, allowed);
        return Ok(CopySearch { map: hit, stats, exact: true });
    }
    let view = ColorView::new(c, color);
    let plan = Plan::new(h, &[]);
    let host_deg = host_degrees(&view, c.k(), allowed);
    let need = plan.degree[0];
    let firsts: Vec<u32> =
        crate::hg::vertices_of(allowed).into_iter().filter(|&z| host_deg[z as usize] >= need).collect();
    let out = par::first_success(&firsts, |&z, cancel| {
        let mut run = Run {
            view: &view,
            plan: &plan,
            host_deg: &host_deg,
            allowed,
            budget: limits.embed_nodes,
            cancel,
            stats: SearchStats::default(),
            img: vec![0; plan.order.len()],
        };
        run.img[0] = z;
        run.stats.nodes += 1;
        let step = run.extend(1, 1 << z);
        let hit = matches!(step, Step::Found).then(|| run.img.clone());
        (hit, (run.stats, matches!(step, Step::Aborted)))
    });
    let stats = SearchStats::sum(out.side.iter().map(|(s, _)| s));
    let aborted = out.side.iter().any(|&(_, a)| a);
    let map = out.hit.map(|(_, img)| {
        let mut map = vec![0u32; plan.order.len()];
        for (i, &u) in plan.order.iter().enumerate() {
            map[u as usize] = img[i];
        }
        map
    });
    let exact = map.is_some() || !aborted;
    Ok(CopySearch { map, stats, exact })
}

/// Monochromatic K_size^(k) inside `allowed`, vertices in increasing order.
pub fn find_mono_clique(c: &TwoColoring, size: usize, color: Color, allowed: u64) -> (Option<Vec<u32>>, SearchStats) {
    let k = c.k();
    if size < k {
        let verts: Vec<u32> = crate::hg::vertices_of(allowed).into_iter().take(size).collect();
        return ((verts.len() == size).then_some(verts), SearchStats::default());
    }
    let view = ColorView::new(c, color);
    let firsts = crate::hg::vertices_of(allowed);
    let out = par::first_success(&firsts, |&x, cancel| {
        let mut stats = SearchStats::default();
        let mut clique = vec![x];
        let above = allowed & !((2u64 << x) - 1);
        let hit = grow_clique(&view, k, size, &mut clique, above, &mut stats, cancel);
        (hit.then(|| clique.clone()), stats)
    });
    (out.hit.map(|(_, c)| c), SearchStats::sum(out.side.iter()))
}

/// `cand` holds the vertices above the last clique vertex that extend the
/// clique; adding one filters the rest against it.
fn grow_clique(
    view: &ColorView,
    k: usize,
    size: usize,
    clique: &mut Vec<u32>,
    cand: u64,
    stats: &mut SearchStats,
    cancel: &Cancel,
) -> bool {
    stats.nodes += 1;
    if clique.len() == size {
        return true;
    }
    if clique.len() + cand.count_ones() as usize <= size - 1 || cancel.cancelled() {
        stats.prunes += 1;
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        // survivors: z > v with every k-set of clique ∪ {v, z} through v and z colored
        let mut next = rest;
        if clique.len() + 1 >= k - 1 {
            let mut keep = 0u64;
            let mut zs = next;
            while zs != 0 {
                let z = zs.trailing_zeros();
                zs &= zs - 1;
                if through_pair_ok(view, k, clique, v, z) {
                    keep |= 1 << z;
                }
            }
            next = keep;
        }
        clique.push(v);
        if grow_clique(view, k, size, clique, next, stats, cancel) {
            return true;
        }
        clique.pop();
    }
    false
}

fn through_pair_ok(view: &ColorView, k: usize, clique: &[u32], v: u32, z: u32) -> bool {
    if k == 3 {
        if let Some(l) = view.link(v, z) {
            return clique.iter().all(|&u| l >> u & 1 == 1);
        }
    }
    if k == 2 {
        return view.is_edge(1 << v | 1 << z);
    }
    let base = 1u64 << v | 1u64 << z;
    crate::hg::KSets::new(clique.len(), k - 2).all(|m| {
        let s = crate::hg::vertices_of(m).iter().fold(base, |a, &i| a | 1 << clique[i as usize]);
        view.is_edge(s)
    })
}

/// Copies of a fixed pattern that pass through a given host edge; the exact
/// Ramsey search calls this once per newly colored edge.
pub(crate) struct AnchoredEmbedder {
    plans: Vec<Plan>,
}

impl AnchoredEmbedder {
    pub(crate) fn new(h: &Hypergraph) -> AnchoredEmbedder {
        let plans = h.edges().iter().map(|e| Plan::new(h, e)).collect();
        AnchoredEmbedder { plans }
    }

    /// Is there a copy in `view` using host edge `e`?
    pub(crate) fn through<V: HostView>(&self, view: &V, e: u64, stats: &mut SearchStats) -> bool {
        let n = view.n();
        let host_deg = vec![usize::MAX; n];
        let verts = crate::hg::vertices_of(e);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let never = Cancel::never();
        for plan in &self.plans {
            let k = verts.len();
            for perm in permutations(&verts) {
                let mut run = Run {
                    view,
                    plan,
                    host_deg: &host_deg,
                    allowed: all,
                    budget: None,
                    cancel: &never,
                    stats: SearchStats::default(),
                    img: vec![0; plan.order.len()],
                };
                run.img[..k].copy_from_slice(&perm);
                // host degrees are meaningless on a partial coloring
                let found = matches!(run.extend_unpruned(k, mask_of(&perm)), Step::Found);
                stats.add(run.stats);
                if found {
                    return true;
                }
            }
        }
        false
    }
}

impl<V: HostView> Run<'_, V> {
    fn extend_unpruned(&mut self, step: usize, used: u64) -> Step {
        if step == self.plan.order.len() {
            return Step::Found;
        }
        self.stats.nodes += 1;
        let mut cand = self.allowed & !used;
        for e in &self.plan.closing[step] {
            let base = e.iter().fold(0u64, |m, &s| m | 1 << self.img[s]);
            let mut keep = 0u64;
            let mut rest = cand;
            while rest != 0 {
                let z = rest.trailing_zeros();
                rest &= rest - 1;
                if self.view.is_edge(base | 1 << z) {
                    keep |= 1 << z;
                }
            }
            cand = keep;
        }
        while cand != 0 {
            let z = cand.trailing_zeros();
            cand &= cand - 1;
            self.img[step] = z;
            if let Step::Found = self.extend_unpruned(step + 1, used | 1 << z) {
                return Step::Found;
            }
        }
        Step::Exhausted
    }
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg::{clique, fano, single_edge};
    use crate::search::Host;

    #[test]
    fn trivial_hosts() {
        let lim = Limits::default();
        let blue = TwoColoring::uniform(3, 7, Color::Blue).unwrap();
        let r = find_mono_copy(&blue, &fano(), Color::Blue, &lim).unwrap();
        r.certificate(&fano(), Color::Blue).validate(Host::Coloring(&blue)).unwrap();
        assert!(find_mono_copy(&blue, &fano(), Color::Red, &lim).unwrap().map.is_none());
        let mut one = TwoColoring::uniform(3, 5, Color::Red).unwrap();
        one.set_mask(0b10101, Color::Blue);
        let e = single_edge(3).unwrap();
        assert_eq!(find_mono_copy(&one, &e, Color::Blue, &lim).unwrap().map, Some(vec![0, 2, 4]));
    }

    #[test]
    fn cliques_respect_allowed_set() {
        let red = TwoColoring::uniform(3, 9, Color::Red).unwrap();
        let (hit, _) = find_mono_clique(&red, 3, Color::Red, 0b111000000);
        assert_eq!(hit, Some(vec![6, 7, 8]));
        let lim = Limits::default();
        let r = find_mono_copy_in(&red, &clique(3, 4).unwrap(), Color::Red, 0b111, &lim).unwrap();
        assert!(r.map.is_none() && r.exact);
    }
}

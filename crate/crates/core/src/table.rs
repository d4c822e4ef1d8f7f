//! The desk-scale reproduction table: one row per checked claim, grouped by
//! acceptance criterion. Rows carry no timings, so a table is a pure
//! function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chains::{
    clique_partition, double_tree_walk, spanning_path, validate_chain, ChainKind, CliqueChain,
};
use crate::check::{check_bundle, Bundle};
use crate::constructions::{
    burr_coloring, ell_path_lb, loose_cycle_lb, loose_lb_target, loose_path_lb, non_transitive_lb,
    tau_lower_construction, transitive_lb, CycleVariant,
};
use crate::engines::{
    absorbing_block, loose_witness_engine, tight_witness_engine, AbsorbParams, EngineReport, LooseParams, Outcome,
    TightParams,
};
use crate::error::Result;
use crate::exact::{consecutive_gap_check, directed_ramsey_exact, ramsey_exact, tau_exact, RamseyOptions, TauOptions};
use crate::hg::{
    burr_bound, clique, mask_of, ramsey_profile, tournament_hypergraph, vertices_of, Color, Hypergraph, KSets,
    Tournament, TwoColoring,
};
use crate::par;
use crate::pattern::Pattern;
use crate::search::{
    find_mono_copy, find_transitive_subtournament, has_two_edge_loose_path, independence_number,
    longest_mono_ell_path, red_copy, verify_free, CertKind, Certificate, Host, Limits,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub criterion: u8,
    pub item: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn criterion_passed(&self, c: u8) -> bool {
        self.rows.iter().filter(|r| r.criterion == c).all(|r| r.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("reproduction table, seed {}\n", self.seed);
        let mut last = 0;
        for r in &self.rows {
            if r.criterion != last {
                s.push_str(&format!("\ncriterion {}\n", r.criterion));
                last = r.criterion;
            }
            let mark = if r.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("  {mark}  {}: {} (expected {})\n", r.item, r.observed, r.expected));
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        s.push_str(&format!("\n{} rows, {failed} failed\n", self.rows.len()));
        s
    }
}

fn row(criterion: u8, item: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Row {
    Row { criterion, item: item.into(), expected: expected.into(), observed: observed.into(), pass }
}

/// Independent stream per (criterion, instance).
fn rng(seed: u64, criterion: u8, i: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream((criterion as u64) << 32 | i as u64);
    r
}

fn random_coloring(r: &mut ChaCha8Rng, k: usize, n: usize, red: f64) -> TwoColoring {
    TwoColoring::from_fn(k, n, |_| if r.gen_bool(red) { Color::Red } else { Color::Blue }).expect("small host")
}

fn shuffled(r: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        v.swap(i, r.gen_range(0..=i));
    }
    v
}

pub fn build_table(seed: u64) -> Result<Table> {
    let mut rows = rows_1_to_7(seed)?;
    rows.extend(criterion_8(seed)?);
    Ok(Table { seed, rows })
}

fn rows_1_to_7(seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    rows.extend(criterion_1()?);
    rows.extend(criterion_2()?);
    rows.extend(criterion_3()?);
    rows.extend(criterion_4()?);
    rows.extend(criterion_5(seed)?);
    rows.extend(criterion_6(seed)?);
    rows.extend(criterion_7(seed)?);
    Ok(rows)
}

/// Rows 1 to 7 run inside a pool of the given size.
#[cfg(feature = "parallel")]
fn rows_with_threads(seed: u64, threads: usize) -> Result<Vec<Row>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Invalid(format!("thread pool: {e}")))?;
    pool.install(|| rows_1_to_7(seed))
}

#[cfg(not(feature = "parallel"))]
fn rows_with_threads(seed: u64, _threads: usize) -> Result<Vec<Row>> {
    rows_1_to_7(seed)
}

/// The other rows rebuilt with one worker and with eight, compared as JSON.
pub fn criterion_8(seed: u64) -> Result<Vec<Row>> {
    let one = serde_json::to_string(&rows_with_threads(seed, 1)?).expect("rows serialize");
    let eight = serde_json::to_string(&rows_with_threads(seed, 8)?).expect("rows serialize");
    let same = one == eight;
    Ok(vec![row(8, "rows 1-7 with 1 worker vs 8 workers", "byte-identical", if same { "identical" } else { "differ" }, same)])
}

/// Exact Ramsey values against the Burr bound, and the Burr coloring one
/// below the bound checked free.
pub fn criterion_1() -> Result<Vec<Row>> {
    let reds = ["path:3:2:4", "path:3:1:5", "edge:3"];
    let blues = ["clique:3:4", "tth:2:2", "edge:3"];
    let mut rows = Vec::new();
    let lim = Limits::default();
    for r in reds {
        for b in blues {
            let g = Pattern::parse(r)?;
            let h = Pattern::parse(b)?.hypergraph()?;
            let res = ramsey_exact(&g, &h, 8, &RamseyOptions::default())?;
            let prof = ramsey_profile(&h, lim.profile)?;
            let bound = burr_bound(g.order(), &prof);
            let item = format!("R({}, {})", g.descriptor(), Pattern::parse(b)?.descriptor());
            let pass = res.value.is_some_and(|v| v >= bound.value);
            rows.push(row(1, item.clone(), format!(">= burr bound {}", bound.value), format!("{:?}", res.value), pass));
            let inst = burr_coloring(3, prof.chi, prof.sigma, g.order())?;
            let free = verify_free(&inst.coloring, &g, &h, &lim)?;
            rows.push(row(
                1,
                format!("{item} burr coloring"),
                format!("free on {} vertices", bound.value - 1),
                format!("{} vertices, free={}, exact={}", inst.n(), free.free, free.exact),
                inst.n() == bound.value - 1 && free.free && free.exact,
            ));
        }
    }
    Ok(rows)
}

fn tau_properties(g: &Hypergraph, alpha: usize) -> Result<(usize, bool)> {
    let ind = independence_number(g, &Limits::default())?.alpha;
    Ok((ind, ind < alpha && has_two_edge_loose_path(g).is_none()))
}

pub fn criterion_2() -> Result<Vec<Row>> {
    let opts = TauOptions::default();
    let mut rows = Vec::new();
    for alpha in 2..=6 {
        let t = tau_exact(2, alpha, &opts)?;
        rows.push(row(2, format!("tau(2,{alpha})"), format!("{}", 2 * alpha - 2), format!("{:?}", t.value), t.value == Some(2 * alpha - 2)));
    }
    let t = tau_exact(3, 2, &opts)?;
    rows.push(row(2, "tau(3,2)", "1", format!("{:?}", t.value), t.value == Some(1)));
    let t = tau_exact(3, 4, &opts)?;
    let inside = t.value.is_some_and(|v| (5..=6).contains(&v));
    rows.push(row(2, "tau(3,4)", "exact, inside [5,6]", format!("{:?}", t.value), inside));
    let (ind, ok) = match &t.witness {
        Some(w) if Some(w.n()) == t.value => tau_properties(w, 4)?,
        _ => (0, false),
    };
    rows.push(row(2, "tau(3,4) extremal witness", "independence < 4, no two-edge loose path", format!("independence {ind}, ok={ok}"), ok));
    let lower = tau_lower_construction(3, 4)?;
    let (ind, ok) = tau_properties(&lower.graph, 4)?;
    rows.push(row(
        2,
        "tau(3,4) lower construction",
        "5 vertices, independence < 4, no two-edge loose path",
        format!("{} vertices, independence {ind}, ok={ok}", lower.graph.n()),
        ok && lower.graph.n() == 5,
    ));
    Ok(rows)
}

pub fn criterion_3() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (chi, want) in [(2, 2), (3, 4), (4, 8)] {
        let r = directed_ramsey_exact(chi, 8)?;
        rows.push(row(3, format!("directed R({chi})"), want.to_string(), format!("{:?}", r.value), r.value == Some(want)));
        if chi == 3 {
            let (free, cyclic) = match &r.witness {
                Some(w) => (
                    w.n() == 3 && find_transitive_subtournament(w, 3).kind == CertKind::Free,
                    (0..w.n()).all(|v| w.score(v) == 1),
                ),
                None => (false, false),
            };
            rows.push(row(3, "directed R(3) witness", "TT3-free cyclic triangle", format!("free={free}, cyclic={cyclic}"), free && cyclic));
        }
    }
    for chi in [3, 4] {
        let g = consecutive_gap_check(chi, 8)?;
        rows.push(row(
            3,
            format!("gap at chi={chi}"),
            format!("R({chi}) >= R({}) + 2, augmented witness TT{chi}-free", chi - 1),
            format!("{} vs {}, augmented free={}", g.value, g.previous, g.augmented_is_free),
            g.holds && g.augmented_is_free,
        ));
    }
    Ok(rows)
}

fn freeness_row(item: &str, c: &TwoColoring, red: &Pattern, blue: &Hypergraph) -> Result<Row> {
    let f = verify_free(c, red, blue, &Limits::default())?;
    Ok(row(
        4,
        item,
        format!("no red {}, no blue target, exhaustive", red.descriptor()),
        format!("{} vertices, free={}, exact={}", c.n(), f.free, f.exact),
        f.free && f.exact,
    ))
}

pub fn matching_j() -> Hypergraph {
    Hypergraph::new(2, 4, vec![vec![0, 1], vec![2, 3]]).expect("two disjoint pairs")
}

pub fn criterion_4() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let a = ell_path_lb(3, 2, 8, 2)?;
    rows.push(freeness_row("ell_path_lb(3,2,8,2) vs K(3,4)", &a.coloring, &Pattern::parse("path:3:2:8")?, &clique(3, 4)?)?);

    let b = non_transitive_lb(3, 6)?;
    let lim = Limits::default();
    let p = longest_mono_ell_path(&b.coloring, 2, Color::Red, &lim)?;
    rows.push(row(
        4,
        "non_transitive_lb(3,6) longest red tight path",
        "<= 10 vertices, exhaustive",
        format!("{} vertices, exact={}", p.vertices, p.certificate.exact),
        p.vertices <= 10 && p.certificate.exact,
    ));
    let (hc3, _) = tournament_hypergraph(&Tournament::cyclic_triangle(), 3)?;
    let blue = find_mono_copy(&b.coloring, &hc3, Color::Blue, &lim)?;
    rows.push(row(
        4,
        "non_transitive_lb(3,6) vs H(C3,3)",
        "no blue copy, exhaustive",
        format!("found={}, exact={}", blue.map.is_some(), blue.exact),
        blue.map.is_none() && blue.exact,
    ));

    let c = loose_path_lb(3, 2, 11, 3, &matching_j())?;
    rows.push(freeness_row("loose_path_lb(3,2,11,3,matching) vs classes 6,3", &c.coloring, &Pattern::parse("path:3:1:11")?, &loose_lb_target(3, &[6, 3])?)?);

    let d = loose_cycle_lb(3, 2, 6, 2, &CycleVariant::Pencil { q: 2 })?;
    rows.push(freeness_row("loose_cycle_lb pencil(3,2,6,q=2) vs classes 4,2", &d.coloring, &Pattern::parse("cycle:3:1:6")?, &loose_lb_target(3, &[4, 2])?)?);
    Ok(rows)
}

/// A valid chain with random lengths on a random host, red inside every
/// element and random elsewhere.
pub fn random_chain(r: &mut ChaCha8Rng) -> (CliqueChain, TwoColoring) {
    loop {
        let k = r.gen_range(3..=4);
        let ell = r.gen_range(1..k);
        let step = k - ell;
        let kind = if r.gen_bool(0.5) { ChainKind::Open } else { ChainKind::Closed };
        let d = r.gen_range(if kind == ChainKind::Closed { 2 } else { 1 }..=4);
        // smallest size at least k that is ell mod step
        let base = (k..).find(|s| s % step == ell % step).expect("residue exists");
        let lens: Vec<usize> = (0..d).map(|_| base + step * r.gen_range(0..=2)).collect();
        let total: usize = lens.iter().sum();
        let p = match kind {
            ChainKind::Open => total - (d - 1) * ell,
            ChainKind::Closed => total - d * ell,
        };
        let n = p + r.gen_range(0..=2);
        if n > if k == 3 { 22 } else { 16 } {
            continue;
        }
        let labels = shuffled(r, n);
        let chain = CliqueChain::with_lengths(kind, k, ell, labels[..p].to_vec(), &lens);
        let inside: Vec<u64> = (0..d).map(|j| mask_of(&chain.element(j))).collect();
        let c = TwoColoring::from_fn(k, n, |m| {
            if inside.iter().any(|&e| m & e == m) || r.gen_bool(0.5) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .expect("small host");
        if validate_chain(&chain, &c).is_valid() {
            return (chain, c);
        }
    }
}

/// Uniform random labelled tree: each vertex after the first hangs off an
/// earlier one, then labels and edge order are shuffled.
pub fn random_tree(r: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let n = r.gen_range(1..=12);
    let labels = shuffled(r, n);
    let mut edges: Vec<(usize, usize)> =
        (1..n).map(|v| (labels[r.gen_range(0..v)] as usize, labels[v] as usize)).collect();
    for i in (1..edges.len()).rev() {
        edges.swap(i, r.gen_range(0..=i));
    }
    (n, edges)
}

/// Closed walk using every tree edge once in each direction.
pub fn walk_is_double_cover(n: usize, edges: &[(usize, usize)], walk: &[usize]) -> bool {
    if walk.len() != 2 * edges.len() + 1 || walk.first() != walk.last() || walk.iter().any(|&v| v >= n) {
        return false;
    }
    let mut seen = std::collections::BTreeMap::new();
    for w in walk.windows(2) {
        *seen.entry((w[0], w[1])).or_insert(0) += 1;
    }
    edges.iter().all(|&(a, b)| seen.get(&(a, b)) == Some(&1) && seen.get(&(b, a)) == Some(&1)) && seen.len() == 2 * edges.len()
}

fn has_mono_clique(c: &TwoColoring, verts: &[u32], size: usize, color: Color) -> bool {
    KSets::new(verts.len(), size).any(|s| {
        let set: Vec<u32> = vertices_of(s).iter().map(|&i| verts[i as usize]).collect();
        KSets::new(size, c.k()).all(|e| {
            let m = vertices_of(e).iter().fold(0u64, |m, &i| m | 1 << set[i as usize]);
            c.is(m, color)
        })
    })
}

pub fn criterion_5(seed: u64) -> Result<Vec<Row>> {
    let chains = par::map_range(1000, |i| {
        let (chain, c) = random_chain(&mut rng(seed, 5, i));
        let ok = spanning_path(&chain).and_then(|cert| {
            cert.validate(Host::Coloring(&c))?;
            Ok(mask_of(&cert.witness) == mask_of(&chain.vertices) && cert.witness.len() == chain.len())
        });
        matches!(ok, Ok(true))
    });
    let good = chains.iter().filter(|&&b| b).count();
    let mut rows = vec![row(5, "spanning_path on 1000 random chains", "1000 valid red spanning paths", format!("{good} valid"), good == 1000)];

    let walks = par::map_range(1000, |i| {
        let (n, edges) = random_tree(&mut rng(seed, 50, i));
        double_tree_walk(n, &edges).is_ok_and(|w| walk_is_double_cover(n, &edges, &w))
    });
    let good = walks.iter().filter(|&&b| b).count();
    rows.push(row(5, "double_tree_walk on 1000 random trees", "every edge twice, closed", format!("{good} valid"), good == 1000));

    let parts = par::map_range(200, |i| {
        let mut r = rng(seed, 51, i);
        let n = r.gen_range(5..=10);
        let (a, b) = (r.gen_range(3..=5), r.gen_range(3..=5));
        let red = r.gen_range(0.2..0.8);
        let c = random_coloring(&mut r, 3, n, red);
        let Ok(p) = clique_partition(&c, a, b) else { return false };
        let blocks_ok = p.blocks.iter().all(|blk| {
            let want = if blk.color == Color::Red { a } else { b };
            blk.vertices.len() == want && has_mono_clique(&c, &blk.vertices, want, blk.color)
        });
        let mut cover: Vec<u32> = p.blocks.iter().flat_map(|b| b.vertices.clone()).chain(p.leftover.clone()).collect();
        cover.sort_unstable();
        blocks_ok
            && cover == (0..n as u32).collect::<Vec<_>>()
            && !has_mono_clique(&c, &p.leftover, a, Color::Red)
            && !has_mono_clique(&c, &p.leftover, b, Color::Blue)
    });
    let good = parts.iter().filter(|&&b| b).count();
    rows.push(row(5, "clique_partition on 200 random colorings", "leftover holds no target clique", format!("{good} valid"), good == 200));
    Ok(rows)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    red: usize,
    blue: usize,
    stall: usize,
    invalid: usize,
    errors: usize,
}

impl Tally {
    fn add(&mut self, o: Tally) {
        self.red += o.red;
        self.blue += o.blue;
        self.stall += o.stall;
        self.invalid += o.invalid;
        self.errors += o.errors;
    }

    fn text(&self) -> String {
        format!("{} red, {} blue, {} stalls, {} invalid, {} errors", self.red, self.blue, self.stall, self.invalid, self.errors)
    }
}

/// Re-checks an engine's witness through the certificate checker and
/// against the requested target.
fn audit(c: &TwoColoring, report: Result<EngineReport>, red: &Pattern, blue: &Hypergraph) -> Tally {
    let mut t = Tally::default();
    let report = match report {
        Ok(r) => r,
        Err(_) => {
            t.errors = 1;
            return t;
        }
    };
    let Some(cert) = report.certificate.as_ref() else {
        t.stall = 1;
        return t;
    };
    let bundle = Bundle { certificate: cert.clone(), coloring: Some(c.clone()), hypergraph: None, tournament: None, target: None };
    let valid = check_bundle(&bundle, &Limits::default()).is_ok() && matches_target(cert, report.outcome, red, blue);
    match (valid, report.outcome) {
        (false, _) => t.invalid = 1,
        (true, Outcome::Red) => t.red = 1,
        (true, _) => t.blue = 1,
    }
    t
}

fn matches_target(cert: &Certificate, outcome: Outcome, red: &Pattern, blue: &Hypergraph) -> bool {
    match (outcome, red) {
        (Outcome::Red, Pattern::Path { ell, n, .. }) => cert.kind == CertKind::RedPath && cert.ell == Some(*ell) && cert.witness.len() == *n,
        (Outcome::Red, Pattern::Cycle { ell, n, .. }) => cert.kind == CertKind::RedCycle && cert.ell == Some(*ell) && cert.witness.len() == *n,
        (Outcome::Blue, _) => cert.kind == CertKind::BlueEmbedding && cert.pattern.as_ref() == Some(blue),
        _ => false,
    }
}

const DENSITIES: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95];

pub fn criterion_6(seed: u64) -> Result<Vec<Row>> {
    let k4 = clique(3, 4)?;
    let (tth, _) = tournament_hypergraph(&Tournament::transitive(2), 2)?;
    let runs = par::map_range(500, |i| {
        let mut r = rng(seed, 6, i);
        let n = 8 + (i / DENSITIES.len()) % 6;
        let c = random_coloring(&mut r, 3, n, DENSITIES[i % DENSITIES.len()]);
        let cycle = i % 3 == 2;
        let (lp, loose) = if cycle {
            let t = if n >= 10 { 8 } else { 6 };
            (LooseParams { cycle: true, ..LooseParams::path(t) }, Pattern::Cycle { k: 3, ell: 1, n: t })
        } else {
            let t = if n >= 11 { 9 } else { 7 };
            (LooseParams::path(t), Pattern::Path { k: 3, ell: 1, n: t })
        };
        let a = audit(&c, loose_witness_engine(&c, &k4, &lp), &loose, &k4);
        let t = n - 1 - i % 3;
        let (tp, tight) = if cycle {
            (TightParams { cycle: true, seed: i as u64, ..TightParams::path(t) }, Pattern::Cycle { k: 3, ell: 2, n: t })
        } else {
            (TightParams { seed: i as u64, ..TightParams::path(t) }, Pattern::Path { k: 3, ell: 2, n: t })
        };
        let b = audit(&c, tight_witness_engine(&c, 2, 2, &tp), &tight, &tth);
        (a, b)
    });
    let (mut lt, mut tt) = (Tally::default(), Tally::default());
    for (a, b) in runs {
        lt.add(a);
        tt.add(b);
    }
    let mut rows = vec![
        row(6, "loose engine on 500 random colorings", "0 invalid, 0 errors", lt.text(), lt.invalid == 0 && lt.errors == 0),
        row(6, "tight engine on 500 random colorings", "0 invalid, 0 errors", tt.text(), tt.invalid == 0 && tt.errors == 0),
    ];

    // lower-bound instances: the engine may only report what exists
    let lim = Limits::default();
    let mut cases: Vec<(String, TwoColoring, Pattern, Hypergraph, Result<EngineReport>)> = Vec::new();
    let lp = loose_path_lb(3, 2, 11, 3, &matching_j())?;
    let h = loose_lb_target(3, &[6, 3])?;
    let rep = loose_witness_engine(&lp.coloring, &h, &LooseParams::path(11));
    cases.push(("loose engine on loose_path_lb(3,2,11,3)".into(), lp.coloring, Pattern::parse("path:3:1:11")?, h, rep));
    let lc = loose_cycle_lb(3, 2, 6, 2, &CycleVariant::Pencil { q: 2 })?;
    let h = loose_lb_target(3, &[4, 2])?;
    let rep = loose_witness_engine(&lc.coloring, &h, &LooseParams { cycle: true, ..LooseParams::path(6) });
    cases.push(("loose engine on pencil loose_cycle_lb(3,2,6)".into(), lc.coloring, Pattern::parse("cycle:3:1:6")?, h, rep));
    let tl = transitive_lb(&Tournament::cyclic_triangle(), 9)?;
    let (h, _) = tournament_hypergraph(&Tournament::transitive(3), 2)?;
    let rep = tight_witness_engine(&tl.coloring, 3, 2, &TightParams::path(9));
    cases.push(("tight engine on transitive_lb(C3,9)".into(), tl.coloring, Pattern::parse("path:3:2:9")?, h, rep));
    for (item, c, red, blue, rep) in cases {
        let red_cert = red_copy(&c, &red, Color::Red, &lim)?;
        let blue_cert = red_copy(&c, &Pattern::graph("blue target", blue.clone()), Color::Blue, &lim)?;
        let red_free = red_cert.kind == CertKind::Free && red_cert.exact;
        let blue_free = blue_cert.kind == CertKind::Free && blue_cert.exact;
        let outcome = rep.as_ref().map(|r| r.outcome).ok();
        let t = audit(&c, rep, &red, &blue);
        let consistent = t.invalid == 0 && t.errors == 0 && !(red_free && t.red > 0) && !(blue_free && t.blue > 0);
        rows.push(row(
            6,
            item,
            "no witness contradicting verified freeness",
            format!("red free={red_free}, blue free={blue_free}, engine {:?}", outcome),
            consistent,
        ));
    }
    Ok(rows)
}

/// Random 3-coloring with a red clique A = 0..a and B = a..a+b; triples of
/// shape AAB are red with a random probability.
pub fn absorb_instance(r: &mut ChaCha8Rng) -> (TwoColoring, Vec<u32>, Vec<u32>, usize) {
    let a = r.gen_range(4..=14);
    let b = r.gen_range(1..=5);
    let d = r.gen_range(1..=3);
    let p = r.gen_range(0.15..0.9);
    let am = (1u64 << a) - 1;
    let c = TwoColoring::from_fn(3, a + b, |m| {
        let in_a = (m & am).count_ones();
        if in_a == 3 || (in_a == 2 && r.gen_bool(p)) || (in_a < 2 && r.gen_bool(0.5)) {
            Color::Red
        } else {
            Color::Blue
        }
    })
    .expect("small host");
    (c, (0..a as u32).collect(), (a as u32..(a + b) as u32).collect(), d)
}

/// a a b a a b … a a
pub fn interleaved(w: &[u32], a: &[u32], b: &[u32], d: usize) -> bool {
    let (am, bm) = (mask_of(a), mask_of(b));
    w.len() == 3 * d + 2 && w.iter().enumerate().all(|(i, &v)| if i % 3 == 2 { bm >> v & 1 == 1 } else { am >> v & 1 == 1 })
}

pub fn criterion_7(seed: u64) -> Result<Vec<Row>> {
    let runs = par::map_range(500, |i| {
        let (c, a, b, d) = absorb_instance(&mut rng(seed, 7, i));
        let eta = crate::engines::pair_density(&c, &a, &b, Color::Red);
        if eta <= 0.0 || b.len() < d {
            return (false, true);
        }
        let p = AbsorbParams { d, eta, ..AbsorbParams::default() };
        match absorbing_block(&c, &a, &b, &p) {
            Ok(out) if out.bound_holds => {
                let ok = out.certificate.as_ref().is_some_and(|cert| {
                    cert.validate(Host::Coloring(&c)).is_ok()
                        && cert.kind == CertKind::RedPath
                        && cert.ell == Some(2)
                        && interleaved(&cert.witness, &a, &b, d)
                });
                (true, ok)
            }
            Ok(out) => (false, out.certificate.as_ref().is_none_or(|cert| cert.validate(Host::Coloring(&c)).is_ok())),
            Err(_) => (false, false),
        }
    });
    let holds = runs.iter().filter(|r| r.0).count();
    let good = runs.iter().filter(|r| r.0 && r.1).count();
    let sound = runs.iter().all(|r| r.1);
    Ok(vec![row(
        7,
        "absorbing_block on 500 random instances",
        "every instance with e(G) > d|A| yields a valid interleaved tight path",
        format!("bound held in {holds}, path found in {good}, no invalid output={sound}"),
        good == holds && sound,
    )])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_walk_checker_rejects_a_single_pass() {
        let edges = [(0, 1), (1, 2)];
        assert!(walk_is_double_cover(3, &edges, &[0, 1, 2, 1, 0]));
        assert!(!walk_is_double_cover(3, &edges, &[0, 1, 2, 0]));
        assert!(!walk_is_double_cover(3, &edges, &[1, 0, 1, 2, 2]));
    }

    #[test]
    fn interleaving_shape() {
        assert!(interleaved(&[0, 1, 9, 2, 3], &[0, 1, 2, 3], &[9], 1));
        assert!(!interleaved(&[0, 9, 1, 2, 3], &[0, 1, 2, 3], &[9], 1));
    }

    #[test]
    fn random_chains_are_valid() {
        for i in 0..20 {
            let (chain, c) = random_chain(&mut rng(3, 5, i));
            assert!(validate_chain(&chain, &c).is_valid());
        }
    }
}

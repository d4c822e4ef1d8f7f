//! Brute-force oracles for the computed values, with the values frozen.
//! The oracles index triples their own way and search by plain recursion,
//! sharing nothing with the library beyond the final comparison.

use std::collections::BTreeSet;

use hgood::constructions::{ell_path_lb, loose_lb_target, loose_path_lb, non_transitive_lb, transitive_lb};
use hgood::exact::{directed_ramsey_exact, ramsey_exact, tau_exact, RamseyOptions, TauOptions};
use hgood::hg::{fano, ramsey_profile, tournament_hypergraph};
use hgood::search::{find_mono_copy, longest_mono_ell_path, Limits};
use hgood::{Color, Hypergraph, Pattern, Tournament, TwoColoring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 3-uniform coloring as a dense cube, true = red.
struct Cube {
    n: usize,
    red: Vec<bool>,
}

impl Cube {
    fn is_red(&self, a: usize, b: usize, c: usize) -> bool {
        self.red[(a * self.n + b) * self.n + c]
    }

    fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Cube {
        let mut red = vec![false; n * n * n];
        for (a, b, c) in triples(n) {
            let r = f(a, b, c);
            for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                red[(x * n + y) * n + z] = r;
            }
        }
        Cube { n, red }
    }

    fn from_lib(c: &TwoColoring) -> Cube {
        Cube::from_fn(c.n(), |a, b, x| c.is(1 << a | 1 << b | 1 << x, Color::Red))
    }
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut t = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                t.push((a, b, c));
            }
        }
    }
    t
}

/// Is there an injective map of the pattern with every edge in `want`?
fn has_copy(c: &Cube, want: bool, pn: usize, edges: &[[usize; 3]]) -> bool {
    fn go(c: &Cube, want: bool, edges: &[[usize; 3]], img: &mut Vec<usize>, pn: usize) -> bool {
        let v = img.len();
        if v == pn {
            return true;
        }
        for x in 0..c.n {
            if img.contains(&x) {
                continue;
            }
            img.push(x);
            let ok = edges
                .iter()
                .filter(|e| e.iter().all(|&u| u <= v) && e.contains(&v))
                .all(|e| c.is_red(img[e[0]], img[e[1]], img[e[2]]) == want);
            if ok && go(c, want, edges, img, pn) {
                return true;
            }
            img.pop();
        }
        false
    }
    go(c, want, edges, &mut Vec::new(), pn)
}

fn edges_of(h: &Hypergraph) -> Vec<[usize; 3]> {
    h.edges().iter().map(|e| [e[0] as usize, e[1] as usize, e[2] as usize]).collect()
}

/// Smallest n with no coloring free of red G and blue H.
fn oracle_ramsey(g: (usize, &[[usize; 3]]), h: (usize, &[[usize; 3]])) -> usize {
    'n: for n in 3.. {
        let t = triples(n);
        for bits in 0u64..1 << t.len() {
            let c = Cube::from_fn(n, |a, b, x| {
                let i = t.iter().position(|&s| s == (a, b, x)).unwrap();
                bits >> i & 1 == 1
            });
            if !has_copy(&c, true, g.0, g.1) && !has_copy(&c, false, h.0, h.1) {
                continue 'n;
            }
        }
        return n;
    }
    unreachable!()
}

#[test]
fn ramsey_values_match_full_enumeration() {
    let p324: &[[usize; 3]] = &[[0, 1, 2], [1, 2, 3]];
    let p315: &[[usize; 3]] = &[[0, 1, 2], [2, 3, 4]];
    let edge: &[[usize; 3]] = &[[0, 1, 2]];
    let k4: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let tth22: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3]];
    let reds = [("path:3:2:4", 4, p324), ("path:3:1:5", 5, p315), ("edge:3", 3, edge)];
    let blues = [("clique:3:4", 4, k4), ("tth:2:2", 4, tth22), ("edge:3", 3, edge)];
    // rows: red target; columns: blue target
    let frozen = [[5, 4, 4], [6, 5, 5], [4, 4, 3]];
    for (i, (rs, rn, re)) in reds.iter().enumerate() {
        for (j, (bs, bn, be)) in blues.iter().enumerate() {
            let want = frozen[i][j];
            assert_eq!(oracle_ramsey((*rn, re), (*bn, be)), want, "oracle {rs} vs {bs}");
            let g = Pattern::parse(rs).unwrap();
            let h = Pattern::parse(bs).unwrap().hypergraph().unwrap();
            assert_eq!(edges_of(&h), be.to_vec(), "{bs} layout");
            let lib = ramsey_exact(&g, &h, 8, &RamseyOptions::default()).unwrap();
            assert_eq!(lib.value, Some(want), "{rs} vs {bs}");
        }
    }
}

/// Smallest independent-set size bound: is every `alpha`-set hit by an edge?
fn independence_below(n: usize, edges: &[Vec<usize>], alpha: usize) -> bool {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == alpha).all(|s| edges.iter().any(|e| e.iter().all(|&v| s >> v & 1 == 1)))
}

fn no_two_edge_loose_path(edges: &[Vec<usize>]) -> bool {
    edges.iter().enumerate().all(|(i, a)| edges[i + 1..].iter().all(|b| a.iter().filter(|v| b.contains(v)).count() != 1))
}

/// Largest n ≤ cap with a k-graph meeting both τ conditions.
fn oracle_tau(k: usize, alpha: usize, cap: usize) -> usize {
    let mut best = 0;
    for n in 0..=cap {
        let sets: Vec<Vec<usize>> =
            (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|v| s >> v & 1 == 1).collect()).collect();
        let found = (0u64..1 << sets.len()).any(|bits| {
            let edges: Vec<Vec<usize>> = sets.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, s)| s.clone()).collect();
            no_two_edge_loose_path(&edges) && independence_below(n, &edges, alpha)
        });
        if found {
            best = n;
        }
    }
    best
}

#[test]
fn tau_values_match_full_enumeration() {
    let opts = TauOptions::default();
    for (alpha, want) in [(2, 2), (3, 4), (4, 6)] {
        assert_eq!(oracle_tau(2, alpha, 7), want);
        assert_eq!(tau_exact(2, alpha, &opts).unwrap().value, Some(want));
    }
    assert_eq!(oracle_tau(3, 2, 5), 1);
    assert_eq!(oracle_tau(3, 4, 6), 5);
    assert_eq!(tau_exact(3, 2, &opts).unwrap().value, Some(1));
    assert_eq!(tau_exact(3, 4, &opts).unwrap().value, Some(5));
}

#[test]
fn fano_profile_by_enumeration() {
    let lines = edges_of(&fano());
    let mut best: Option<(usize, usize)> = None;
    for colors in 1..=3usize {
        let mut label = [0usize; 7];
        for code in 0..colors.pow(7) {
            let mut x = code;
            for l in label.iter_mut() {
                *l = x % colors;
                x /= colors;
            }
            if lines.iter().any(|e| label[e[0]] == label[e[1]] && label[e[1]] == label[e[2]]) {
                continue;
            }
            let used: BTreeSet<usize> = label.iter().copied().collect();
            if used.len() != colors {
                continue;
            }
            let smallest = (0..colors).map(|c| label.iter().filter(|&&l| l == c).count()).min().unwrap();
            best = Some(best.map_or((colors, smallest), |(c, s)| (c, s.min(smallest))));
        }
        if best.is_some() {
            break;
        }
    }
    assert_eq!(best, Some((3, 1)));
    let p = ramsey_profile(&fano(), 16).unwrap();
    assert_eq!((p.chi, p.sigma), (3, 1));
}

fn tournaments(n: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |bits| {
        let mut arc = vec![vec![false; n]; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if bits >> b & 1 == 1 {
                arc[i][j] = true;
            } else {
                arc[j][i] = true;
            }
        }
        arc
    })
}

/// A tournament on s vertices is transitive iff its scores are 0..s.
fn has_tt(arc: &[Vec<bool>], chi: usize) -> bool {
    let n = arc.len();
    (0u32..1 << n).filter(|s| s.count_ones() as usize == chi).any(|s| {
        let vs: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
        let scores: BTreeSet<usize> = vs.iter().map(|&a| vs.iter().filter(|&&b| arc[a][b]).count()).collect();
        scores.len() == chi
    })
}

fn canonical(arc: &[Vec<bool>]) -> Vec<bool> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = arc.len();
    perms(n)
        .iter()
        .map(|p| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| arc[p[i]][p[j]]).collect::<Vec<bool>>())
        .min()
        .unwrap()
}

#[test]
fn tournament_classes_by_labelled_enumeration() {
    // TT3: the only free tournaments on three vertices are the two cyclic ones
    assert_eq!(tournaments(3).filter(|t| !has_tt(t, 3)).count(), 2);
    assert_eq!(tournaments(4).filter(|t| !has_tt(t, 3)).count(), 0);
    let r3 = directed_ramsey_exact(3, 6).unwrap();
    assert_eq!(r3.value, Some(4));

    let frozen = [1usize, 1, 1, 2, 3, 3, 1, 1];
    let lib = directed_ramsey_exact(4, 8).unwrap();
    for (n, &want) in frozen.iter().enumerate() {
        let classes: BTreeSet<Vec<bool>> = tournaments(n).filter(|t| !has_tt(t, 4)).map(|t| canonical(&t)).collect();
        assert_eq!(classes.len(), want, "TT4-free classes on {n} vertices");
        assert_eq!(lib.classes[n], want);
    }
    assert_eq!(lib.value, Some(8));
}

/// Longest sequence whose consecutive ℓ-windows give red edges, by DFS
/// over every extension.
fn oracle_longest_path(c: &Cube, ell: usize) -> usize {
    let step = 3 - ell;
    fn go(c: &Cube, step: usize, seq: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(seq.len());
        let n = c.n;
        let tail: Vec<usize> = seq[seq.len() + step - 3..].to_vec();
        let free: Vec<usize> = (0..n).filter(|v| !seq.contains(v)).collect();
        let adds: Vec<Vec<usize>> = if step == 1 {
            free.iter().map(|&x| vec![x]).collect()
        } else {
            free.iter().flat_map(|&x| free.iter().filter(move |&&y| y != x).map(move |&y| vec![x, y])).collect()
        };
        for a in adds {
            let e: Vec<usize> = tail.iter().chain(&a).copied().collect();
            if c.is_red(e[0], e[1], e[2]) {
                let len = seq.len();
                seq.extend(&a);
                go(c, step, seq, best);
                seq.truncate(len);
            }
        }
    }
    let mut best = ell.min(c.n);
    let n = c.n;
    for s in 0..n.pow(ell as u32) {
        let start: Vec<usize> = if ell == 1 { vec![s] } else { vec![s / n, s % n] };
        if start.len() == 2 && start[0] == start[1] {
            continue;
        }
        let mut seq = start;
        let mut found = 0;
        // only count sequences with at least one edge
        go(c, step, &mut seq, &mut found);
        if found >= 3 {
            best = best.max(found);
        }
    }
    best
}

fn random_lib_coloring(r: &mut ChaCha8Rng, n: usize, p: f64) -> TwoColoring {
    TwoColoring::from_fn(3, n, |_| if r.gen_bool(p) { Color::Red } else { Color::Blue }).unwrap()
}

#[test]
fn longest_paths_match_naive_enumeration() {
    let lim = Limits::default();
    for i in 0..60 {
        let mut r = ChaCha8Rng::seed_from_u64(i);
        let n = 5 + (i as usize) % 3;
        let c = random_lib_coloring(&mut r, n, 0.3 + 0.1 * (i % 5) as f64);
        let cube = Cube::from_lib(&c);
        for ell in [1, 2] {
            let lib = longest_mono_ell_path(&c, ell, Color::Red, &lim).unwrap();
            assert_eq!(lib.vertices, oracle_longest_path(&cube, ell), "seed {i}, ell {ell}");
        }
    }
}

#[test]
fn construction_path_lengths_frozen() {
    let lim = Limits::default();
    let cases = [
        (ell_path_lb(3, 2, 8, 2).unwrap().coloring, 7),
        (non_transitive_lb(3, 6).unwrap().coloring, 10),
        (transitive_lb(&Tournament::cyclic_triangle(), 9).unwrap().coloring, 7),
    ];
    for (c, want) in cases {
        assert_eq!(oracle_longest_path(&Cube::from_lib(&c), 2), want);
        assert_eq!(longest_mono_ell_path(&c, 2, Color::Red, &lim).unwrap().vertices, want);
    }
}

/// H(T, m) from the definition: classes i*m..(i+1)*m, two vertices of
/// class i and one of class j for each arc i→j.
fn tournament_pattern(arcs: &[(usize, usize)], m: usize) -> Vec<[usize; 3]> {
    let mut e = Vec::new();
    for &(i, j) in arcs {
        for a in 0..m {
            for b in a + 1..m {
                for x in 0..m {
                    let mut t = [i * m + a, i * m + b, j * m + x];
                    t.sort_unstable();
                    e.push(t);
                }
            }
        }
    }
    e.sort_unstable();
    e
}

/// k-sets meeting some class in exactly two vertices.
fn class_pattern(sizes: &[usize]) -> (usize, Vec<[usize; 3]>) {
    let owner: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let n = owner.len();
    let e = triples(n)
        .into_iter()
        .filter(|&(a, b, c)| (0..sizes.len()).any(|cl| [a, b, c].iter().filter(|&&v| owner[v] == cl).count() == 2))
        .map(|(a, b, c)| [a, b, c])
        .collect();
    (n, e)
}

#[test]
fn blue_embeddings_match_naive_search() {
    let lim = Limits::default();
    let mut pats: Vec<(usize, Vec<[usize; 3]>)> = vec![
        (4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
        (4, tournament_pattern(&[(0, 1)], 2)),
        (5, vec![[0, 1, 2], [2, 3, 4]]),
        (7, edges_of(&fano())),
    ];
    pats.push(class_pattern(&[3, 2]));
    for (pn, pe) in &pats {
        let h = Hypergraph::new(3, *pn, pe.iter().map(|e| e.iter().map(|&v| v as u32).collect()).collect()).unwrap();
        for i in 0..25u64 {
            let mut r = ChaCha8Rng::seed_from_u64(1000 + i);
            let n = 6 + (i as usize) % 3;
            let c = random_lib_coloring(&mut r, n, 0.2 + 0.03 * i as f64);
            let cube = Cube::from_lib(&c);
            for (color, want) in [(Color::Red, true), (Color::Blue, false)] {
                let lib = find_mono_copy(&c, &h, color, &lim).unwrap();
                assert_eq!(lib.map.is_some(), has_copy(&cube, want, *pn, pe), "pattern on {pn}, seed {i}, {color:?}");
            }
        }
    }
}

#[test]
fn construction_blue_freeness_frozen() {
    let lim = Limits::default();
    // H(C3, 3) against the non-transitive construction
    let c3 = tournament_pattern(&[(0, 1), (1, 2), (2, 0)], 3);
    let (lib_h, _) = tournament_hypergraph(&Tournament::cyclic_triangle(), 3).unwrap();
    let mut lib_edges = edges_of(&lib_h);
    lib_edges.sort_unstable();
    assert_eq!(lib_edges, c3);
    let nt = non_transitive_lb(3, 6).unwrap().coloring;
    assert!(!has_copy(&Cube::from_lib(&nt), false, 9, &c3));
    assert!(find_mono_copy(&nt, &lib_h, Color::Blue, &lim).unwrap().map.is_none());

    // classes 6 and 3 against the loose-path construction
    let (n, e) = class_pattern(&[6, 3]);
    let lib_t = loose_lb_target(3, &[6, 3]).unwrap();
    let mut lib_edges = edges_of(&lib_t);
    lib_edges.sort_unstable();
    assert_eq!(lib_edges, e);
    let j = Hypergraph::new(2, 4, vec![vec![0, 1], vec![2, 3]]).unwrap();
    let lp = loose_path_lb(3, 2, 11, 3, &j).unwrap().coloring;
    assert!(!has_copy(&Cube::from_lib(&lp), false, n, &e));
    assert!(find_mono_copy(&lp, &lib_t, Color::Blue, &lim).unwrap().map.is_none());
}

//! Canonical forms under vertex relabelling.
//!
//! Vertices are split into cells by an invariant; only relabellings that
//! keep the cells in invariant order are tried, and the smallest image wins.

use crate::hg::{rank_of_mask, vertices_of, Color, KSets, Tournament, TwoColoring};

/// Canonical labels: `perm[v]` is the new name of v.
pub(crate) fn cell_perms(invariant: &[u64], mut visit: impl FnMut(&[u32])) {
    let n = invariant.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (invariant[v], v));
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && invariant[order[j]] == invariant[order[i]] {
            j += 1;
        }
        cells.push((i, j));
        i = j;
    }
    let mut perm = vec![0u32; n];
    let mut used = vec![false; n];
    assign(&order, &cells, 0, 0, &mut perm, &mut used, &mut visit);
}

fn assign(
    order: &[usize],
    cells: &[(usize, usize)],
    cell: usize,
    pos: usize,
    perm: &mut [u32],
    used: &mut [bool],
    visit: &mut impl FnMut(&[u32]),
) {
    if cell == cells.len() {
        visit(perm);
        return;
    }
    let (lo, hi) = cells[cell];
    if pos == hi {
        assign(order, cells, cell + 1, hi, perm, used, visit);
        return;
    }
    for label in lo..hi {
        if used[label] {
            continue;
        }
        used[label] = true;
        perm[order[pos]] = label as u32;
        assign(order, cells, cell, pos + 1, perm, used, visit);
        used[label] = false;
    }
}

fn map_mask(m: u64, perm: &[u32]) -> u64 {
    vertices_of(m).iter().fold(0u64, |a, &v| a | 1 << perm[v as usize])
}

/// Canonical representative of a coloring and its bitmap words.
pub(crate) fn canonical_coloring(c: &TwoColoring) -> (Vec<u64>, TwoColoring) {
    let (n, k) = (c.n(), c.k());
    let red: Vec<u64> = KSets::new(n, k).filter(|&m| c.is(m, Color::Red)).collect();
    let mut deg = vec![0u64; n];
    for &m in &red {
        for v in vertices_of(m) {
            deg[v as usize] += 1;
        }
    }
    let mut inv = vec![0u64; n];
    for &m in &red {
        let s: u64 = vertices_of(m).iter().map(|&v| deg[v as usize]).sum();
        for v in vertices_of(m) {
            inv[v as usize] += s;
        }
    }
    let key: Vec<u64> = (0..n).map(|v| deg[v] << 32 | inv[v]).collect();
    let words = c.words().len();
    let mut best: Option<(Vec<u64>, Vec<u32>)> = None;
    let mut img = vec![0u64; words];
    cell_perms(&key, |perm| {
        img.iter_mut().for_each(|w| *w = 0);
        for &m in &red {
            let r = rank_of_mask(map_mask(m, perm));
            img[(r / 64) as usize] |= 1 << (r % 64);
        }
        if best.as_ref().is_none_or(|(b, _)| lex_less(&img, b)) {
            best = Some((img.clone(), perm.to_vec()));
        }
    });
    let (key, perm) = best.expect("at least the identity-ordered labelling is visited");
    let canon = c.permuted(&perm).expect("cell labelling is a permutation");
    debug_assert_eq!(canon.words(), &key[..]);
    (key, canon)
}

/// Compares from the highest word down so the order matches the integer
/// value of the bitmap.
fn lex_less(a: &[u64], b: &[u64]) -> bool {
    a.iter().rev().cmp(b.iter().rev()) == std::cmp::Ordering::Less
}

/// Arcs of a tournament packed by pair rank i + j(j−1)/2, bit set for i→j.
pub(crate) fn arc_code(t: &Tournament, perm: &[u32]) -> u64 {
    let n = t.n();
    let mut code = 0u64;
    for a in 0..n {
        let mut out = t.out_mask(a);
        while out != 0 {
            let b = out.trailing_zeros() as usize;
            out &= out - 1;
            let (i, j) = (perm[a] as usize, perm[b] as usize);
            if i < j {
                code |= 1 << (i + j * (j - 1) / 2);
            }
        }
    }
    code
}

/// Canonical code and representative of a tournament (n ≤ 11).
pub(crate) fn canonical_tournament(t: &Tournament) -> (u64, Tournament) {
    let n = t.n();
    let score: Vec<u64> = (0..n).map(|v| t.score(v) as u64).collect();
    let key: Vec<u64> = (0..n)
        .map(|v| {
            let mut out = t.out_mask(v);
            let mut s = 0u64;
            while out != 0 {
                s += score[out.trailing_zeros() as usize];
                out &= out - 1;
            }
            score[v] << 32 | s
        })
        .collect();
    let mut best: Option<(u64, Vec<u32>)> = None;
    cell_perms(&key, |perm| {
        let c = arc_code(t, perm);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, perm.to_vec()));
        }
    });
    let (code, perm) = best.expect("some labelling is visited");
    let mut out = vec![0u64; n];
    for a in 0..n {
        out[perm[a] as usize] = map_mask(t.out_mask(a), &perm);
    }
    (code, Tournament::from_out_masks(out).expect("relabelled tournament stays valid"))
}

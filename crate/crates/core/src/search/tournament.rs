use super::{CertKind, Certificate, SearchStats};
use crate::hg::Tournament;

/// Transitive subtournament on `chi` vertices, listed source first. Absence
/// comes back as a `free` certificate with the search totals.
pub fn find_transitive_subtournament(t: &Tournament, chi: usize) -> Certificate {
    let n = t.n();
    let mut stats = SearchStats::default();
    let mut chain = Vec::with_capacity(chi);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if chi <= n && grow(t, chi, all, &mut chain, &mut stats) {
        Certificate::new(CertKind::TtEmbedding, chain, true, stats)
    } else {
        Certificate::new(CertKind::Free, Vec::new(), true, stats).with_note(format!("no transitive subtournament on {chi} vertices"))
    }
}

/// `cand` are the vertices dominated by everything in `chain`.
fn grow(t: &Tournament, chi: usize, cand: u64, chain: &mut Vec<u32>, stats: &mut SearchStats) -> bool {
    stats.nodes += 1;
    if chain.len() == chi {
        return true;
    }
    if chain.len() + (cand.count_ones() as usize) < chi {
        stats.prunes += 1;
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        chain.push(v);
        if grow(t, chi, cand & t.out_mask(v as usize), chain, stats) {
            return true;
        }
        chain.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Host;

    #[test]
    fn small_tournaments() {
        let c3 = Tournament::cyclic_triangle();
        assert_eq!(find_transitive_subtournament(&c3, 2).kind, CertKind::TtEmbedding);
        assert_eq!(find_transitive_subtournament(&c3, 3).kind, CertKind::Free);
        let tt = Tournament::transitive(6);
        let cert = find_transitive_subtournament(&tt, 6);
        cert.validate(Host::Tournament(&tt)).unwrap();
    }

    #[test]
    fn every_four_vertex_tournament_has_tt3() {
        for bits in 0u32..64 {
            let mut idx = 0;
            let t = Tournament::from_fn(4, |_, _| {
                idx += 1;
                bits >> (idx - 1) & 1 == 1
            })
            .unwrap();
            let cert = find_transitive_subtournament(&t, 3);
            assert_eq!(cert.kind, CertKind::TtEmbedding);
            cert.validate(Host::Tournament(&t)).unwrap();
        }
    }
}

use super::{find_mono_copy, longest_mono_ell_path, CertKind, Certificate, Limits, SearchStats};
use crate::error::{invalid, Result};
use crate::hg::{Color, Hypergraph, TwoColoring};
use crate::pattern::Pattern;

/// Copy of `pattern` in the given color, or a freeness attestation.
///
/// Paths go through the longest-path search and come back as a vertex
/// sequence. Cycles are embedded and also come back as a sequence, since
/// the cycle generator lays its vertices out in cyclic order. Everything
/// else is an embedding map.
pub fn red_copy(c: &TwoColoring, pattern: &Pattern, color: Color, limits: &Limits) -> Result<Certificate> {
    if pattern.k() != c.k() {
        return invalid(format!("pattern {} is {}-uniform, coloring is {}-uniform", pattern.descriptor(), pattern.k(), c.k()));
    }
    let desc = pattern.descriptor();
    match pattern {
        Pattern::Path { ell, n, .. } => {
            let r = longest_mono_ell_path(c, *ell, color, limits)?;
            let cert = r.certificate;
            if r.edges > 0 && r.vertices >= *n {
                let mut hit = cert;
                hit.witness.truncate(*n);
                hit.exact = true;
                hit.notes.clear();
                Ok(hit)
            } else {
                let mut free = Certificate::new(CertKind::Free, Vec::new(), cert.exact, cert.stats)
                    .with_color(color)
                    .with_ell(*ell)
                    .with_note(format!("no {color} {desc}; longest {color} path has {} vertices", r.vertices));
                free.notes.extend(cert.notes);
                Ok(free)
            }
        }
        Pattern::Cycle { ell, .. } => {
            let h = pattern.hypergraph()?;
            let r = find_mono_copy(c, &h, color, limits)?;
            Ok(match r.map {
                Some(seq) => Certificate::new(CertKind::RedCycle, seq, true, r.stats).with_color(color).with_ell(*ell),
                None => Certificate::new(CertKind::Free, Vec::new(), r.exact, r.stats)
                    .with_color(color)
                    .with_note(format!("no {color} {desc}")),
            })
        }
        Pattern::Graph { graph, .. } => {
            let r = find_mono_copy(c, graph, color, limits)?;
            let mut cert = r.certificate(graph, color);
            if cert.kind == CertKind::Free {
                cert.notes = vec![format!("no {color} {desc}")];
            }
            Ok(cert)
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeCheck {
    pub free: bool,
    /// Both sides were searched exhaustively.
    pub exact: bool,
    pub red: Certificate,
    pub blue: Certificate,
}

impl FreeCheck {
    /// The red witness, else the blue one, else a combined attestation.
    pub fn certificate(&self) -> Certificate {
        if self.red.kind != CertKind::Free {
            return self.red.clone();
        }
        if self.blue.kind != CertKind::Free {
            return self.blue.clone();
        }
        let stats = SearchStats::sum([&self.red.stats, &self.blue.stats]);
        let mut cert = Certificate::new(CertKind::Free, Vec::new(), self.exact, stats);
        cert.notes = self.red.notes.iter().chain(&self.blue.notes).cloned().collect();
        cert
    }
}

/// Is the coloring free of a red `g` and a blue `h`?
pub fn verify_free(c: &TwoColoring, g: &Pattern, h: &Hypergraph, limits: &Limits) -> Result<FreeCheck> {
    let red = red_copy(c, g, Color::Red, limits)?;
    let blue_pattern = Pattern::graph("blue target", h.clone());
    let blue = red_copy(c, &blue_pattern, Color::Blue, limits)?;
    let free = red.kind == CertKind::Free && blue.kind == CertKind::Free;
    let exact = if free { red.exact && blue.exact } else { true };
    Ok(FreeCheck { free, exact, red, blue })
}

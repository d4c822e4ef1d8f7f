//! Re-validation of certificates shipped together with their host.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hg::{Color, Hypergraph, Tournament, TwoColoring};
use crate::pattern::Pattern;
use crate::search::{find_transitive_subtournament, red_copy, CertKind, Certificate, Host, Limits};

/// A certificate and the host it speaks about. Freeness attestations also
/// name the absent target: a pattern spec for colorings, `tt:χ` for
/// tournaments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<TwoColoring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<Hypergraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tournament: Option<Tournament>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub kind: CertKind,
    /// `witness` for a direct check, `search` when absence was re-derived.
    pub method: String,
    pub detail: String,
}

/// Ok when the certificate holds; `Error::Certificate` when it does not.
pub fn check_bundle(b: &Bundle, limits: &Limits) -> Result<CheckReport> {
    let cert = &b.certificate;
    let host = match (&b.coloring, &b.hypergraph, &b.tournament) {
        (Some(c), None, None) => Host::Coloring(c),
        (None, Some(h), None) => Host::Hypergraph(h),
        (None, None, Some(t)) => Host::Tournament(t),
        _ => return invalid("a bundle carries exactly one of coloring, hypergraph, tournament"),
    };
    if cert.kind != CertKind::Free {
        cert.validate(host)?;
        return Ok(CheckReport { kind: cert.kind, method: "witness".into(), detail: format!("{} witness vertices checked", cert.witness.len()) });
    }
    if !cert.witness.is_empty() {
        return Err(Error::Certificate("a freeness attestation carries no witness".into()));
    }
    let target = b.target.as_deref().ok_or_else(|| Error::Invalid("freeness attestation without a target".into()))?;
    match host {
        Host::Coloring(c) => {
            let color = cert.color.unwrap_or(Color::Red);
            let pattern = Pattern::parse(target)?;
            let found = red_copy(c, &pattern, color, limits)?;
            if found.kind != CertKind::Free {
                return Err(Error::Certificate(format!("a {color} copy of {target} exists: {:?}", found.witness)));
            }
            if !found.exact {
                return Err(Error::Guard(format!("absence of {target} could not be re-derived within the guards")));
            }
            Ok(CheckReport { kind: cert.kind, method: "search".into(), detail: format!("no {color} {}", pattern.descriptor()) })
        }
        Host::Tournament(t) => {
            let chi: usize = target
                .strip_prefix("tt:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Invalid(format!("tournament target must be tt:CHI, got {target:?}")))?;
            let found = find_transitive_subtournament(t, chi);
            if found.kind != CertKind::Free {
                return Err(Error::Certificate(format!("TT{chi} present on {:?}", found.witness)));
            }
            Ok(CheckReport { kind: cert.kind, method: "search".into(), detail: format!("no TT{chi}") })
        }
        Host::Hypergraph(_) => invalid("freeness attestations are checked against colorings or tournaments"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::SearchStats;

    #[test]
    fn tampered_path_fails() {
        let mut c = TwoColoring::uniform(3, 7, Color::Red).unwrap();
        let cert = Certificate::new(CertKind::RedPath, vec![0, 1, 2, 3, 4], true, SearchStats::default()).with_ell(1).with_color(Color::Red);
        let mut b = Bundle { certificate: cert, coloring: Some(c.clone()), hypergraph: None, tournament: None, target: None };
        assert!(check_bundle(&b, &Limits::default()).is_ok());
        c.set_mask(0b11100, Color::Blue);
        b.coloring = Some(c);
        assert!(matches!(check_bundle(&b, &Limits::default()), Err(Error::Certificate(_))));
    }

    #[test]
    fn freeness_is_searched() {
        let t = Tournament::cyclic_triangle();
        let cert = Certificate::new(CertKind::Free, vec![], true, SearchStats::default());
        let mut b = Bundle { certificate: cert, coloring: None, hypergraph: None, tournament: Some(t), target: Some("tt:3".into()) };
        assert!(check_bundle(&b, &Limits::default()).is_ok());
        b.target = Some("tt:2".into());
        assert!(matches!(check_bundle(&b, &Limits::default()), Err(Error::Certificate(_))));
    }
}

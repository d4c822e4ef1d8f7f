//! Target structures named by a small mini-language:
//! `path:k:ell:n`, `cycle:k:ell:n`, `clique:k:n`, `fano`, `tth:chi:m`, `edge:k`.

use crate::error::{invalid, Result};
use crate::hg::{self, Hypergraph, Tournament};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Path { k: usize, ell: usize, n: usize },
    Cycle { k: usize, ell: usize, n: usize },
    Graph { name: String, graph: Hypergraph },
}

fn num(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| crate::Error::Invalid(format!("bad {what} {s:?} in pattern")))
}

impl Pattern {
    pub fn parse(spec: &str) -> Result<Pattern> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["path", k, ell, n] => {
                let (k, ell, n) = (num(k, "k")?, num(ell, "ell")?, num(n, "n")?);
                hg::ell_path(k, ell, n)?;
                Ok(Pattern::Path { k, ell, n })
            }
            ["cycle", k, ell, n] => {
                let (k, ell, n) = (num(k, "k")?, num(ell, "ell")?, num(n, "n")?);
                hg::ell_cycle(k, ell, n)?;
                Ok(Pattern::Cycle { k, ell, n })
            }
            ["clique", k, n] => {
                let (k, n) = (num(k, "k")?, num(n, "n")?);
                Ok(Pattern::graph(format!("K({k},{n})"), hg::clique(k, n)?))
            }
            ["fano"] => Ok(Pattern::graph("Fano", hg::fano())),
            ["tth", chi, m] => {
                let (chi, m) = (num(chi, "chi")?, num(m, "m")?);
                let t = Tournament::transitive(chi);
                Ok(Pattern::graph(format!("H(TT{chi},{m})"), hg::tournament_hypergraph(&t, m)?.0))
            }
            ["edge", k] => {
                let k = num(k, "k")?;
                Ok(Pattern::graph(format!("E({k})"), hg::single_edge(k)?))
            }
            _ => invalid(format!("unrecognised pattern {spec:?}")),
        }
    }

    pub fn graph(name: impl Into<String>, graph: Hypergraph) -> Pattern {
        Pattern::Graph { name: name.into(), graph }
    }

    pub fn k(&self) -> usize {
        match self {
            Pattern::Path { k, .. } | Pattern::Cycle { k, .. } => *k,
            Pattern::Graph { graph, .. } => graph.k(),
        }
    }

    /// Number of vertices of the pattern.
    pub fn order(&self) -> usize {
        match self {
            Pattern::Path { n, .. } | Pattern::Cycle { n, .. } => *n,
            Pattern::Graph { graph, .. } => graph.n(),
        }
    }

    pub fn hypergraph(&self) -> Result<Hypergraph> {
        match self {
            Pattern::Path { k, ell, n } => hg::ell_path(*k, *ell, *n),
            Pattern::Cycle { k, ell, n } => hg::ell_cycle(*k, *ell, *n),
            Pattern::Graph { graph, .. } => Ok(graph.clone()),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Pattern::Path { k, ell, n } => format!("P({k},{ell},{n})"),
            Pattern::Cycle { k, ell, n } => format!("C({k},{ell},{n})"),
            Pattern::Graph { name, .. } => name.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mini_language() {
        assert_eq!(Pattern::parse("path:3:2:8").unwrap(), Pattern::Path { k: 3, ell: 2, n: 8 });
        assert_eq!(Pattern::parse("cycle:3:1:6").unwrap().order(), 6);
        assert_eq!(Pattern::parse("clique:3:4").unwrap().hypergraph().unwrap().num_edges(), 4);
        assert_eq!(Pattern::parse("fano").unwrap().descriptor(), "Fano");
        assert_eq!(Pattern::parse("tth:2:2").unwrap().hypergraph().unwrap().num_edges(), 2);
        assert_eq!(Pattern::parse("edge:3").unwrap().order(), 3);
        assert!(Pattern::parse("path:3:1:6").is_err());
        assert!(Pattern::parse("star:3").is_err());
    }
}

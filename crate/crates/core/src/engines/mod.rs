//! Witness engines: drive the chain machinery toward a red ℓ-path or
//! ℓ-cycle, or extract a blue copy of the other target, or stop with a
//! report of the step that did not go through.
//!
//! Every certificate an engine returns has been re-validated against the
//! coloring; an engine may stall but never returns a bad witness.

mod absorb;
mod dichotomy;
mod loose;
mod tight;

pub use absorb::{absorbing_block, erdos_gallai_path, pair_density, random_embed, AbsorbOutcome, AbsorbParams, RandomEmbed};
pub use dichotomy::{
    butterfly_dichotomy, independence_dichotomy, monochromatic_biclique, Biclique, Bipartite, ButterflyOutcome, CrossingOutcome,
};
pub use loose::{loose_witness_engine, LooseParams};
pub use tight::{tight_witness_engine, TightParams};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chains::{ChainKind, CliqueChain};
use crate::error::Result;
use crate::hg::{Color, Hypergraph, TwoColoring};
use crate::search::{CertKind, Certificate, Host, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Red,
    Blue,
    Stall,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineReport {
    pub engine: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Stage at which the run stopped without a witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stalled_at: Option<String>,
    /// One line per stage.
    pub trace: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    /// Quantities from the upper-bound argument, with whether each
    /// inequality holds on this input.
    pub bookkeeping: BTreeMap<String, serde_json::Value>,
}

impl EngineReport {
    fn new(engine: &str) -> EngineReport {
        EngineReport {
            engine: engine.into(),
            outcome: Outcome::Stall,
            certificate: None,
            stalled_at: None,
            trace: Vec::new(),
            flags: Vec::new(),
            bookkeeping: BTreeMap::new(),
        }
    }

    /// Validates, then records the witness.
    fn emit(mut self, c: &TwoColoring, cert: Certificate) -> Result<EngineReport> {
        cert.validate(Host::Coloring(c))?;
        self.outcome = match cert.kind {
            CertKind::BlueEmbedding => Outcome::Blue,
            _ => Outcome::Red,
        };
        self.certificate = Some(cert);
        Ok(self)
    }

    fn stall(mut self, stage: &str) -> EngineReport {
        self.stalled_at = Some(stage.into());
        self
    }

    fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    fn keep(&mut self, key: &str, v: impl Serialize) {
        self.bookkeeping.insert(key.into(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null));
    }
}

/// Blue copy of `h` on the given vertices, in order.
fn embed_on(h: &Hypergraph, verts: &[u32]) -> Certificate {
    Certificate::new(CertKind::BlueEmbedding, verts[..h.n()].to_vec(), true, SearchStats::default())
        .with_color(Color::Blue)
        .with_pattern(h.clone())
}

/// Elements of a chain as ordered lists: the last ℓ of one are the first ℓ
/// of the next.
fn elements(chain: &CliqueChain) -> Vec<Vec<u32>> {
    (0..chain.intervals.len()).map(|j| chain.element(j)).collect()
}

fn open_chain(k: usize, ell: usize, els: &[Vec<u32>]) -> CliqueChain {
    let mut seq = els[0].clone();
    for e in &els[1..] {
        seq.extend_from_slice(&e[ell..]);
    }
    let lens: Vec<usize> = els.iter().map(Vec::len).collect();
    CliqueChain::with_lengths(ChainKind::Open, k, ell, seq, &lens)
}

/// Removes interior vertices, k−ℓ at a time, until the closed chain has
/// `n` vertices.
fn shrink_closed(chain: &CliqueChain, n: usize) -> Option<CliqueChain> {
    let (k, ell) = (chain.k, chain.ell);
    let step = k - ell;
    let p = chain.len();
    if p < n || (p - n) % step != 0 {
        return None;
    }
    let mut els = elements(chain);
    let mut excess = p - n;
    for e in els.iter_mut() {
        while excess > 0 && e.len() >= k + step && e.len() >= 2 * ell + step {
            e.drain(ell..ell + step);
            excess -= step;
        }
    }
    if excess > 0 {
        return None;
    }
    // rebuild: element 0 starts with the overlap it shares with the last one
    let mut seq: Vec<u32> = Vec::new();
    for e in &els {
        seq.extend_from_slice(&e[..e.len() - ell]);
    }
    let lens: Vec<usize> = els.iter().map(Vec::len).collect();
    Some(CliqueChain::with_lengths(ChainKind::Closed, k, ell, seq, &lens))
}

/// First `n` vertices of the chain's spanning path as a path certificate.
fn path_prefix(chain: &CliqueChain, n: usize) -> Certificate {
    Certificate::new(CertKind::RedPath, chain.vertices[..n].to_vec(), true, SearchStats::default())
        .with_color(Color::Red)
        .with_ell(chain.ell)
}

fn cycle_of(chain: &CliqueChain) -> Certificate {
    Certificate::new(CertKind::RedCycle, chain.vertices.clone(), true, SearchStats::default())
        .with_color(Color::Red)
        .with_ell(chain.ell)
}

use serde::{Deserialize, Serialize};

use super::RamseyResult;
use crate::hg::{burr_bound, RamseyProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Good,
    NotGood,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub burr_bound: usize,
    pub hypothesis_ok: bool,
    pub value: Option<usize>,
    pub lower_bound: usize,
    /// value − burr bound, when the value is known.
    pub gap: Option<i64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Compares a Ramsey result with the Burr bound.
pub fn goodness_gap(v_g: usize, profile: &RamseyProfile, ramsey: &RamseyResult) -> GoodnessReport {
    let b = burr_bound(v_g, profile);
    let mut notes = Vec::new();
    if !b.hypothesis_ok {
        notes.push(format!("v(G)={v_g} is below sigma={}; the bound is not claimed", profile.sigma));
    }
    let (gap, verdict) = match ramsey.value {
        Some(v) => {
            let gap = v as i64 - b.value as i64;
            let verdict = match gap {
                0 => Verdict::Good,
                g if g > 0 => Verdict::NotGood,
                _ => {
                    notes.push("value below the Burr bound: the bound's hypotheses fail for this pair".into());
                    Verdict::Undecided
                }
            };
            (Some(gap), verdict)
        }
        None if ramsey.lower_bound > b.value => (None, Verdict::NotGood),
        None => (None, Verdict::Undecided),
    };
    GoodnessReport {
        burr_bound: b.value,
        hypothesis_ok: b.hypothesis_ok,
        value: ramsey.value,
        lower_bound: ramsey.lower_bound,
        gap,
        verdict,
        notes,
    }
}

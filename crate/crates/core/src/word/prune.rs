//! Syntactic criteria that certify a word has no constant varied coset map,
//! so that the word needs no group computation.

use serde::Serialize;

use super::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum PruneReason {
    /// Some variable occurs exactly once.
    SingleOccurrence { var: usize },
    /// Some variable occurs exactly twice, either with equal signs or with
    /// opposite signs around an inner word that is itself certified.
    DoubleOccurrence { var: usize },
    /// Length at most 8 and not the eighth power of a single letter.
    Short { length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PruneVerdict {
    Certified { reason: PruneReason },
    NeedsCheck,
}

impl PruneVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, PruneVerdict::Certified { .. })
    }
}

/// Checks the single-occurrence, short-word and double-occurrence rules in
/// that order.
pub fn vsmb_prune(w: &Word) -> PruneVerdict {
    match reason(w.letters()) {
        Some(reason) => PruneVerdict::Certified { reason },
        None => PruneVerdict::NeedsCheck,
    }
}

fn multiplicities(letters: &[Letter]) -> Vec<usize> {
    let rank = letters.iter().map(|l| l.var + 1).max().unwrap_or(0);
    let mut mu = vec![0; rank];
    for l in letters {
        mu[l.var] += 1;
    }
    mu
}

fn reason(letters: &[Letter]) -> Option<PruneReason> {
    if letters.is_empty() {
        return None;
    }
    let mu = multiplicities(letters);
    if let Some(var) = mu.iter().position(|&m| m == 1) {
        return Some(PruneReason::SingleOccurrence { var });
    }
    if letters.len() <= 8 && !is_eighth_power(letters) {
        return Some(PruneReason::Short { length: letters.len() });
    }
    for (var, _) in mu.iter().enumerate().filter(|(_, &m)| m == 2) {
        let pos: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(_, l)| l.var == var)
            .map(|(i, _)| i)
            .collect();
        let (a, b) = (letters[pos[0]], letters[pos[1]]);
        if a.inv == b.inv || reason(&letters[pos[0] + 1..pos[1]]).is_some() {
            return Some(PruneReason::DoubleOccurrence { var });
        }
    }
    None
}

fn is_eighth_power(letters: &[Letter]) -> bool {
    letters.len() == 8 && letters.iter().all(|&l| l == letters[0])
}

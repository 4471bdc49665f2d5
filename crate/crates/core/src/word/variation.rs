//! Variations: each occurrence of a variable receives a second index, which
//! splits the variable into several. Labelings that differ only by renaming
//! second indices within a variable give the same map up to permuting
//! arguments, so the stream lists each set partition of the occurrences
//! once, in restricted-growth form (labels appear in first-use order).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{Letter, Word};
use crate::error::{Error, Result};

/// Bell numbers, exact.
pub fn bell(n: usize) -> BigUint {
    // Bell triangle.
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Number of canonical variations, `Π_i Bell(μ_i)`.
pub fn variation_count(w: &Word) -> BigUint {
    w.multiplicities().iter().map(|&m| bell(m)).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct Variation {
    /// Position in the full canonical stream.
    pub id: usize,
    #[serde(skip)]
    base: Word,
    /// Second index (0-based) of each letter of the base word.
    pub labels: Vec<u8>,
    /// Number of blocks per original variable.
    pub blocks: Vec<usize>,
    /// Original variable of each variable of the induced word.
    #[serde(skip)]
    origin: Vec<usize>,
    pub word: Word,
}

impl Variation {
    fn new(id: usize, base: &Word, labels: Vec<u8>, blocks: Vec<usize>) -> Self {
        let mut offset = Vec::with_capacity(blocks.len());
        let mut origin = Vec::new();
        for (v, &b) in blocks.iter().enumerate() {
            offset.push(origin.len());
            origin.extend(std::iter::repeat_n(v, b));
        }
        let word = Word::from_letters(
            base.letters()
                .iter()
                .zip(&labels)
                .map(|(l, &k)| Letter::new(offset[l.var] + k as usize, l.inv)),
        );
        Variation {
            id,
            base: base.clone(),
            labels,
            blocks,
            origin,
            word,
        }
    }

    /// The unvaried labeling of `w`.
    pub fn identity(w: &Word) -> Self {
        let blocks = w.multiplicities().iter().map(|&m| m.min(1)).collect();
        Variation::new(0, w, vec![0; w.len()], blocks)
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    /// The word over the split variables.
    pub fn induced(&self) -> &Word {
        &self.word
    }

    /// Original variable behind each induced variable.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|&b| b <= 1)
    }
}

/// All restricted growth strings of length `n`, lexicographic.
fn growth_strings(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for k in 0..=limit {
            prefix.push(k);
            rec(prefix, max.max(k), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n, &mut out);
    out
}

/// Canonical variation stream. The first variable is the most significant
/// digit; the identity variation comes first.
#[derive(Debug)]
pub struct VariationStream {
    base: Word,
    per_var: Vec<Vec<Vec<u8>>>,
    digits: Vec<usize>,
    next_id: usize,
    done: bool,
}

impl Iterator for VariationStream {
    type Item = Variation;

    fn next(&mut self) -> Option<Variation> {
        if self.done {
            return None;
        }
        let mut cursor = vec![0usize; self.per_var.len()];
        let mut labels = vec![0u8; self.base.len()];
        for (pos, l) in self.base.letters().iter().enumerate() {
            let rgs = &self.per_var[l.var][self.digits[l.var]];
            labels[pos] = rgs[cursor[l.var]];
            cursor[l.var] += 1;
        }
        let blocks = self
            .per_var
            .iter()
            .zip(&self.digits)
            .map(|(opts, &d)| opts[d].iter().map(|&k| k as usize + 1).max().unwrap_or(0))
            .collect();
        let v = Variation::new(self.next_id, &self.base, labels, blocks);
        self.next_id += 1;
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.per_var[k].len() {
                break;
            }
            self.digits[k] = 0;
        }
        Some(v)
    }
}

/// The canonical variations of `w`, refusing if there are more than `budget`.
pub fn variations(w: &Word, budget: u128) -> Result<VariationStream> {
    let count = variation_count(w);
    if count > BigUint::from(budget) {
        return Err(Error::Budget {
            required: count.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }
    Ok(VariationStream {
        base: w.clone(),
        per_var: w.multiplicities().iter().map(|&m| growth_strings(m)).collect(),
        digits: vec![0; w.rank()],
        next_id: 0,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let b: Vec<u64> = (0..8).map(|n| bell(n).to_u64().unwrap()).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn comm_has_four() {
        let vs: Vec<_> = variations(&Word::comm(), 100).unwrap().collect();
        assert_eq!(vs.len(), 4);
        assert!(vs[0].is_identity());
        assert_eq!(vs[0].induced(), &Word::comm());
        assert_eq!(vs[3].induced().to_string(), "x1'x3'x2x4");
        assert_eq!(vs[3].origin(), &[0, 0, 1, 1]);
    }

    #[test]
    fn engel2_count() {
        assert_eq!(variation_count(&Word::engel2()).to_u64(), Some(3045));
        assert_eq!(variations(&Word::engel2(), 10_000).unwrap().count(), 3045);
        assert!(variations(&Word::engel2(), 3044).unwrap_err().is_budget());
    }

    #[test]
    fn single_occurrence_has_one_labeling() {
        let w = super::super::parse("x1 x2 x2").unwrap();
        assert_eq!(variations(&w, 10).unwrap().count(), 2);
    }
}

//! Reduced words in the free group on `x1..x9`.
//!
//! Surface syntax:
//!
//! ```text
//! word  := term*                      concatenation
//! term  := atom "'"*                  each ' inverts
//! atom  := "x" digit | "(" word ")" | "[" word ("," word)+ "]" | "1"
//! ```
//!
//! `[u,v]` is `u' v' u v` and `[u,v,w]` is `[[u,v],w]`. Named words:
//!
//! | name       | word                              |
//! |------------|-----------------------------------|
//! | `comm`     | `[x1,x2]`                         |
//! | `engel2`   | `[x1,x2,x2]`                      |
//! | `metab`    | `[[x1,x2],[x3,x4]]`               |
//! | `gamma:d`  | `[x1,x2,...,xd]` (left-normed)    |
//! | `gammaR:d` | `[x1,[x2,[...,xd]]]` (right-nested) |
//! | `power:n`  | `x1` repeated n times             |

mod parse;
mod prune;
mod variation;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::group::{Elem, FiniteGroup};
pub use parse::parse;
pub use prune::{vsmb_prune, PruneReason, PruneVerdict};
pub use variation::{bell, variation_count, variations, Variation, VariationStream};

pub const MAX_RANK: usize = 9;
pub const MAX_LENGTH: usize = 64;

/// One letter `x_{var+1}^{±1}`; `var` is 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub var: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(var: usize, inv: bool) -> Self {
        Letter { var, inv }
    }

    pub fn inverse(self) -> Self {
        Letter {
            var: self.var,
            inv: !self.inv,
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Freely reduces `letters`.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn var(i: usize) -> Self {
        Word {
            letters: vec![Letter::new(i, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest variable index used, i.e. the number of arguments needed.
    pub fn rank(&self) -> usize {
        self.letters.iter().map(|l| l.var + 1).max().unwrap_or(0)
    }

    /// Occurrence count of each variable `x1..x_rank`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mu = vec![0; self.rank()];
        for l in &self.letters {
            mu[l.var] += 1;
        }
        mu
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    /// `[u, v] = u^-1 v^-1 u v`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Left-normed `[w1, ..., wk]`.
    pub fn commutator_n(parts: &[Word]) -> Word {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = Word::commutator(&acc, p);
        }
        acc
    }

    pub fn comm() -> Word {
        Word::commutator(&Word::var(0), &Word::var(1))
    }

    pub fn engel2() -> Word {
        Word::commutator_n(&[Word::var(0), Word::var(1), Word::var(1)])
    }

    pub fn metab() -> Word {
        Word::commutator(&Word::comm(), &Word::commutator(&Word::var(2), &Word::var(3)))
    }

    /// Left-normed `[x1, ..., xd]`.
    pub fn gamma(d: usize) -> Word {
        let vars: Vec<Word> = (0..d).map(Word::var).collect();
        Word::commutator_n(&vars)
    }

    /// Right-nested `[x1, [x2, [..., xd]]]`.
    pub fn gamma_right(d: usize) -> Word {
        let mut acc = Word::var(d - 1);
        for i in (0..d - 1).rev() {
            acc = Word::commutator(&Word::var(i), &acc);
        }
        acc
    }

    /// `x1^n`
    pub fn power(n: usize) -> Word {
        Word::from_letters(std::iter::repeat_n(Letter::new(0, false), n))
    }

    /// Substitutes `args` into the word.
    #[inline]
    pub fn evaluate(&self, g: &FiniteGroup, args: &[Elem]) -> Elem {
        let mut acc = Elem::IDENTITY;
        for l in &self.letters {
            let x = args[l.var];
            acc = g.mul(acc, if l.inv { g.inv(x) } else { x });
        }
        acc
    }

    /// Evaluation with a precomputed table of `(x, x^-1)` per argument.
    #[inline]
    pub fn evaluate_pairs(&self, g: &FiniteGroup, args: &[(Elem, Elem)]) -> Elem {
        let mut acc = Elem::IDENTITY;
        for l in &self.letters {
            let (x, xi) = args[l.var];
            acc = g.mul(acc, if l.inv { xi } else { x });
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "x{}{}", l.var + 1, if l.inv { "'" } else { "" })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

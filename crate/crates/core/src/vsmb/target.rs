//! Groups of automorphisms acting on a target group, and evaluation of coset
//! word maps `(s_1, ..., s_d) ↦ w(s_1 g_1, ..., s_d g_d)` inside `Aut(S)`.
//!
//! An element `inn_s ∘ α` of `Aut(S)` is stored as the pair `(s, α)`, with
//! product `(s, α)(t, β) = (s·α(t), α∘β)` and inverse
//! `(s, α)⁻¹ = (α⁻¹(s⁻¹), α⁻¹)`. For centreless S and a fixed automorphism
//! part, distinct S-parts are distinct automorphisms, so a coset map is
//! constant exactly when the S-part of its value is.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{named, Automorphism, Elem, FiniteGroup};
use crate::psl2::{Psl2, Psl2Aut};
use crate::word::Word;

/// A finite group of automorphisms with its multiplication table.
#[derive(Clone, Debug)]
pub struct AutGroup {
    tables: Vec<Automorphism>,
    compose: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl AutGroup {
    /// `members` must be closed under composition, identity first.
    pub fn new(members: Vec<Automorphism>, labels: Vec<String>) -> Result<Self> {
        let k = members.len();
        let index: HashMap<&Automorphism, u32> = members.iter().enumerate().map(|(i, a)| (a, i as u32)).collect();
        if index.len() != k || !members[0].is_identity() {
            return Err(Error::consistency("automorphism list must be distinct, identity first"));
        }
        let mut compose = vec![0u32; k * k];
        for (i, a) in members.iter().enumerate() {
            for (j, b) in members.iter().enumerate() {
                compose[i * k + j] = *index
                    .get(&a.compose(b))
                    .ok_or_else(|| Error::consistency("automorphism list is not closed under composition"))?;
            }
        }
        let inverse = (0..k)
            .map(|i| (0..k as u32).find(|&j| compose[i * k + j as usize] == 0).unwrap())
            .collect();
        Ok(AutGroup {
            tables: members,
            compose,
            inverse,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    #[inline]
    pub fn apply(&self, a: usize, x: Elem) -> Elem {
        self.tables[a].apply(x)
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.compose[a * self.tables.len() + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self, a: usize) -> &Automorphism {
        &self.tables[a]
    }
}

/// Which variations of a word a target is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Only the word itself.
    BaseOnly,
    /// The variation stream.
    Variations,
}

/// A group S together with the automorphisms allowed in coset tuples.
#[derive(Clone, Debug)]
pub struct CosetTarget {
    pub name: String,
    pub group: FiniteGroup,
    pub auts: AutGroup,
    /// Indices into `auts` that tuple entries range over.
    pub choices: Vec<usize>,
    pub scope: Scope,
    pub psl2: Option<Psl2>,
}

impl CosetTarget {
    /// `psl2:q` with q > 2 uses the diagonal and field automorphisms
    /// `σ^i D^j`; any other spec (including `psl2:2` and `sz:2`) uses the full
    /// automorphism group, found by generator images, with tuples over a
    /// transversal of the inner automorphisms and only the plain word in
    /// scope.
    pub fn from_spec(spec: &str) -> Result<Self> {
        if let Some(q) = spec.strip_prefix("psl2:").and_then(|s| s.parse::<usize>().ok()) {
            if q > 2 {
                return Self::psl2(q);
            }
        }
        let group = named(spec)?;
        Ok(Self::full_automorphisms(spec, group))
    }

    pub fn psl2(q: usize) -> Result<Self> {
        let s = Psl2::new(q)?;
        let group = s.to_group()?;
        let reps = s.outer_coset_reps();
        let tables: Vec<Automorphism> = reps.iter().map(|a| s.automorphism_table(a)).collect();
        let labels = reps.iter().map(aut_label).collect();
        let auts = AutGroup::new(tables, labels)?;
        Ok(CosetTarget {
            name: format!("psl2:{q}"),
            choices: (0..auts.len()).collect(),
            group,
            auts,
            scope: Scope::Variations,
            psl2: Some(s),
        })
    }

    pub fn full_automorphisms(name: &str, group: FiniteGroup) -> Self {
        let all = group.automorphisms();
        let choices = group
            .outer_transversal(&all)
            .iter()
            .map(|r| all.iter().position(|a| a == r).unwrap())
            .collect();
        let labels = (0..all.len()).map(|i| format!("a{i}")).collect();
        let auts = AutGroup::new(all, labels).expect("Aut(G) is a group");
        CosetTarget {
            name: name.to_string(),
            choices,
            group,
            auts,
            scope: Scope::BaseOnly,
            psl2: None,
        }
    }
}

pub fn aut_label(a: &Psl2Aut) -> String {
    match (a.i, a.j) {
        (0, 0) => "1".to_string(),
        (0, j) => format!("D^{j}"),
        (i, 0) => format!("s^{i}"),
        (i, j) => format!("s^{i} D^{j}"),
    }
}

/// A coset word map with its automorphism parts folded into per-letter
/// prefix automorphisms.
#[derive(Clone, Debug)]
pub struct CosetMap<'a> {
    group: &'a FiniteGroup,
    auts: &'a AutGroup,
    /// Per letter: variable, inverse flag, prefix automorphism.
    letters: Vec<(usize, bool, usize)>,
    /// Automorphism part inverse per variable.
    inv_parts: Vec<usize>,
    aut_part: usize,
    rank: usize,
}

impl<'a> CosetMap<'a> {
    pub fn new(group: &'a FiniteGroup, auts: &'a AutGroup, w: &Word, tuple: &[usize]) -> Self {
        assert_eq!(tuple.len(), w.rank(), "one automorphism per variable");
        let inv_parts: Vec<usize> = tuple.iter().map(|&a| auts.inverse(a)).collect();
        let mut prefix = 0usize;
        let mut letters = Vec::with_capacity(w.len());
        for l in w.letters() {
            letters.push((l.var, l.inv, prefix));
            let step = if l.inv { inv_parts[l.var] } else { tuple[l.var] };
            prefix = auts.compose(prefix, step);
        }
        CosetMap {
            group,
            auts,
            letters,
            inv_parts,
            aut_part: prefix,
            rank: w.rank(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Index of the automorphism part shared by every value.
    pub fn aut_part(&self) -> usize {
        self.aut_part
    }

    /// S-part of `w(s_1 g_1, ..., s_d g_d)`.
    #[inline]
    pub fn value(&self, s: &[Elem]) -> Elem {
        let g = self.group;
        let mut acc = Elem::IDENTITY;
        for &(v, inv, prefix) in &self.letters {
            let t = if inv {
                self.auts.apply(self.inv_parts[v], g.inv(s[v]))
            } else {
                s[v]
            };
            acc = g.mul(acc, self.auts.apply(prefix, t));
        }
        acc
    }
}

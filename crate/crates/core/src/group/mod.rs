//! Small finite groups with elements indexed `0..order`.
//!
//! Every group is immutable after construction. Element `0` is always the
//! identity. Groups built from generators list their elements breadth-first:
//! identity first, then each element in turn multiplied on the right by each
//! generator in the order given, new elements appended as they appear. This
//! makes all counts and outputs independent of hashing or thread schedule.
//!
//! Multiplication is table-backed up to [`TABLE_LIMIT`] elements and
//! permutation-backed above that; both sit behind [`FiniteGroup::mul`].

mod automorphism;
mod input;
mod named;
pub mod perm;
mod structure;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use automorphism::Automorphism;
pub use input::{resolve_group, GroupFile, GroupKind};
pub use named::named;
use perm::Perm;
pub use structure::Quotient;
pub use subgroup::Subgroup;

/// Largest order stored as a full Cayley table.
pub const TABLE_LIMIT: usize = 4096;

/// Default refusal threshold for closures.
pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

/// Index of an element inside its owning group. The identity is `Elem(0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
enum Backing {
    Table(Vec<u16>),
    Perm {
        perms: Vec<Perm>,
        lookup: HashMap<Perm, u32>,
    },
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    backing: Backing,
    inv: Vec<u32>,
    generators: Vec<Elem>,
    factors: Vec<Subgroup>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub(crate) fn closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<T, ()> = HashMap::new();
    seen.insert(identity, ());
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let x = mul(&elements[i], g);
            if !seen.contains_key(&x) {
                if elements.len() >= cap {
                    return Err(Error::OrderCap { cap });
                }
                seen.insert(x.clone(), ());
                elements.push(x);
            }
        }
        i += 1;
    }
    Ok(elements)
}

impl FiniteGroup {
    /// Closure of permutation generators on `0..degree`.
    pub fn from_generators(degree: usize, generators: &[Perm]) -> Result<Self> {
        Self::from_generators_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(degree: usize, generators: &[Perm], cap: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !perm::is_bijection(g, degree) {
                return Err(Error::contract(format!(
                    "generator {i} is not a bijection on 0..{degree}"
                )));
            }
        }
        let id = perm::identity(degree);
        let elements = closure(id, generators, |a, b| perm::compose(a, b), cap)?;
        Ok(Self::from_perm_elements(format!("perm{degree}"), elements, generators))
    }

    /// Builds a group from a breadth-first element list of permutations.
    pub(crate) fn from_perm_elements(name: String, elements: Vec<Perm>, gens: &[Perm]) -> Self {
        let order = elements.len();
        let lookup: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let generators = gen_indices(gens, |g| lookup.get(g).copied());
        let inv: Vec<u32> = elements.iter().map(|p| lookup[&perm::invert(p)]).collect();
        let backing = if order <= TABLE_LIMIT {
            let mut table = vec![0u16; order * order];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    table[i * order + j] = lookup[&perm::compose(a, b)] as u16;
                }
            }
            Backing::Table(table)
        } else {
            Backing::Perm {
                perms: elements,
                lookup,
            }
        };
        FiniteGroup {
            name,
            order,
            backing,
            inv,
            generators,
            factors: Vec::new(),
        }
    }

    /// Builds a table-backed group from a breadth-first element list of any
    /// hashable representation.
    pub(crate) fn from_elements<T, F>(name: String, elements: &[T], gens: &[T], mul: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let order = elements.len();
        if order > TABLE_LIMIT {
            return Err(Error::OrderCap { cap: TABLE_LIMIT });
        }
        let lookup: HashMap<&T, u32> = elements.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let mut table = vec![0u16; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                table[i * order + j] = *lookup
                    .get(&c)
                    .ok_or_else(|| Error::consistency("element list is not closed under multiplication"))?
                    as u16;
            }
        }
        let generators = gen_indices(gens, |g| lookup.get(g).copied());
        Ok(Self::from_table_unchecked(name, order, table, generators))
    }

    pub(crate) fn from_table_unchecked(name: String, order: usize, table: Vec<u16>, generators: Vec<Elem>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inv[a] = row
                .iter()
                .position(|&x| x == 0)
                .expect("group table row lacks identity") as u32;
        }
        let mut g = FiniteGroup {
            name,
            order,
            backing: Backing::Table(table),
            inv,
            generators,
            factors: Vec::new(),
        };
        if g.generators.is_empty() && order > 1 {
            g.generators = g.greedy_generators();
        }
        g
    }

    /// Builds a group from a 0-based Cayley table with identity at index 0.
    pub fn from_cayley_table(name: impl Into<String>, rows: &[Vec<u32>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::contract("empty Cayley table"));
        }
        if order > TABLE_LIMIT {
            return Err(Error::OrderCap { cap: TABLE_LIMIT });
        }
        let mut table = vec![0u16; order * order];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::contract(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if !perm::is_bijection(row, order) {
                return Err(Error::contract(format!("row {i} is not a permutation of 0..{order}")));
            }
            for (j, &x) in row.iter().enumerate() {
                table[i * order + j] = x as u16;
            }
        }
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::contract("index 0 is not a two-sided identity"));
            }
            let column: Vec<u32> = (0..order).map(|r| table[r * order + i] as u32).collect();
            if !perm::is_bijection(&column, order) {
                return Err(Error::contract(format!(
                    "column {i} is not a permutation of 0..{order}"
                )));
            }
        }
        let g = Self::from_table_unchecked(name.into(), order, table, Vec::new());
        g.check_associativity()
            .map_err(|(a, b, c)| Error::contract(format!("not associative at ({a}, {b}, {c})")))?;
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_factors(mut self, factors: Vec<Subgroup>) -> Self {
        self.factors = factors;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Direct factors of a group built by `product:`, if any.
    pub fn factor(&self, k: usize) -> Option<&Subgroup> {
        self.factors.get(k)
    }

    pub fn is_table_backed(&self) -> bool {
        matches!(self.backing, Backing::Table(_))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order as u32).map(Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.backing {
            Backing::Table(t) => Elem(t[a.index() * self.order + b.index()] as u32),
            Backing::Perm { perms, lookup } => {
                let c = perm::compose(&perms[a.index()], &perms[b.index()]);
                Elem(lookup[&c])
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inv[a.index()])
    }

    /// `a^g = g^-1 a g`
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Left-normed commutator `[a1, a2, ..., ak]`.
    pub fn comm_n(&self, xs: &[Elem]) -> Elem {
        let mut acc = xs[0];
        for &x in &xs[1..] {
            acc = self.comm(acc, x);
        }
        acc
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while !x.is_identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: scan elements in index order, keep any element
    /// not yet in the subgroup generated so far.
    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut sub = self.trivial_subgroup();
        for x in self.elements() {
            if !sub.contains(x) {
                gens.push(x);
                sub = self.subgroup_generated(&gens);
                if sub.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// Returns the first triple violating associativity, if any. Exhaustive
    /// up to order 256, otherwise 10^5 seeded random triples.
    pub fn check_associativity(&self) -> std::result::Result<(), (Elem, Elem, Elem)> {
        let check = |a: Elem, b: Elem, c: Elem| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err((a, b, c))
            }
        };
        if self.order <= 256 {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.order as u64);
            let n = self.order as u32;
            for _ in 0..100_000 {
                let a = Elem(rng.gen_range(0..n));
                let b = Elem(rng.gen_range(0..n));
                let c = Elem(rng.gen_range(0..n));
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// Identity, inverse and associativity laws.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for g in self.elements() {
            if self.mul(Elem::IDENTITY, g) != g || self.mul(g, Elem::IDENTITY) != g {
                return Err(format!("identity law fails at {g}"));
            }
            if !self.mul(g, self.inv(g)).is_identity() || !self.mul(self.inv(g), g).is_identity() {
                return Err(format!("inverse law fails at {g}"));
            }
        }
        self.check_associativity()
            .map_err(|(a, b, c)| format!("associativity fails at ({a}, {b}, {c})"))
    }
}

fn gen_indices<T>(gens: &[T], find: impl Fn(&T) -> Option<u32>) -> Vec<Elem> {
    let mut out: Vec<Elem> = Vec::new();
    for g in gens {
        if let Some(i) = find(g) {
            let e = Elem(i);
            if !e.is_identity() && !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> FiniteGroup {
        let r = perm::from_cycles(3, &[&[0, 1, 2]]);
        let s = perm::from_cycles(3, &[&[0, 1]]);
        FiniteGroup::from_generators(3, &[r, s]).unwrap()
    }

    #[test]
    fn sym3_has_order_6() {
        let g = sym3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        g.check_axioms().unwrap();
    }

    #[test]
    fn trivial_group_from_no_generators() {
        let g = FiniteGroup::from_generators(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn alt5_from_two_generators() {
        let a = perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]);
        let b = perm::from_cycles(5, &[&[0, 1, 2]]);
        let g = FiniteGroup::from_generators(5, &[a, b]).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn order_cap_is_enforced() {
        let a = perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]);
        let b = perm::from_cycles(5, &[&[0, 1]]);
        let err = FiniteGroup::from_generators_capped(5, &[a, b], 100).unwrap_err();
        assert!(matches!(err, Error::OrderCap { cap: 100 }));
    }

    #[test]
    fn non_bijective_generator_is_rejected() {
        let err = FiniteGroup::from_generators(3, &[vec![0, 0, 1]]).unwrap_err();
        assert!(err.to_string().contains("generator 0"));
    }

    #[test]
    fn breadth_first_order_is_canonical() {
        let g = sym3();
        // identity, r, s, then r*r, r*s, ...
        let r = g.generators()[0];
        let s = g.generators()[1];
        assert_eq!((r, s), (Elem(1), Elem(2)));
        assert_eq!(g.mul(r, r), Elem(3));
    }

    #[test]
    fn cayley_table_validation() {
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_cayley_table("z3", &z3).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_cayley_table("bad", &bad).is_err());
        let wrong_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_cayley_table("bad", &wrong_identity).is_err());
    }

    #[test]
    fn pow_and_order() {
        let a = perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]);
        let g = FiniteGroup::from_generators(6, &[a]).unwrap();
        let x = g.generators()[0];
        assert_eq!(g.element_order(x), 6);
        assert_eq!(g.pow(x, 6), Elem::IDENTITY);
        assert_eq!(g.pow(x, -1), g.inv(x));
        assert_eq!(g.pow(x, 0), Elem::IDENTITY);
    }
}

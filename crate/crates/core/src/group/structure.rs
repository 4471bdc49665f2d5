use rand::{Rng, SeedableRng};

use super::{Elem, FiniteGroup, Subgroup, TABLE_LIMIT};
use crate::error::{Error, Result};

/// A quotient group together with its projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<u32>,
    /// Smallest member of each coset, indexed by coset.
    pub reps: Vec<Elem>,
}

impl Quotient {
    #[inline]
    pub fn project(&self, g: Elem) -> Elem {
        Elem(self.projection[g.index()])
    }

    #[inline]
    pub fn lift(&self, c: Elem) -> Elem {
        self.reps[c.index()]
    }

    /// Preimage of a subgroup of the quotient.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.projection.iter().map(|&c| h.contains(Elem(c))).collect())
    }

    /// Image of a subgroup of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.group.order()];
        for x in h.elements() {
            mask[self.projection[x.index()] as usize] = true;
        }
        Subgroup::from_mask(mask)
    }

    /// Checks `π(ab) = π(a)π(b)`: exhaustive up to 10^4 pairs, otherwise
    /// 10^4 seeded random pairs.
    pub fn check_homomorphism(&self, parent: &FiniteGroup) -> bool {
        let check =
            |a: Elem, b: Elem| self.project(parent.mul(a, b)) == self.group.mul(self.project(a), self.project(b));
        let n = parent.order();
        if n * n <= 10_000 {
            parent.elements().all(|a| parent.elements().all(|b| check(a, b)))
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
            (0..10_000).all(|_| {
                let a = Elem(rng.gen_range(0..n as u32));
                let b = Elem(rng.gen_range(0..n as u32));
                check(a, b)
            })
        }
    }
}

impl FiniteGroup {
    /// `G/N` with cosets ordered by their smallest member.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if n.mask().len() != self.order || !self.is_normal(n) {
            return Err(Error::contract("quotient by a subgroup that is not normal"));
        }
        let k = self.order / n.order();
        if k > TABLE_LIMIT {
            return Err(Error::OrderCap { cap: TABLE_LIMIT });
        }
        let members = n.elements();
        let mut projection = vec![u32::MAX; self.order];
        let mut reps = Vec::with_capacity(k);
        for g in self.elements() {
            if projection[g.index()] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g);
            for &m in &members {
                projection[self.mul(m, g).index()] = c;
            }
        }
        let mut table = vec![0u16; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * k + j] = projection[self.mul(a, b).index()] as u16;
            }
        }
        let mut gens = Vec::new();
        for &g in &self.generators {
            let c = Elem(projection[g.index()]);
            if !c.is_identity() && !gens.contains(&c) {
                gens.push(c);
            }
        }
        let name = format!("{}/N{}", self.name, n.order());
        let group = FiniteGroup::from_table_unchecked(name, k, table, gens);
        Ok(Quotient {
            group,
            projection,
            reps,
        })
    }

    /// `A × B`, with the two factors recorded as normal subgroups.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let total = a.order() * b.order();
        if total > TABLE_LIMIT {
            return Err(Error::OrderCap { cap: TABLE_LIMIT });
        }
        let mut gens: Vec<(Elem, Elem)> = a.generators().iter().map(|&x| (x, Elem::IDENTITY)).collect();
        gens.extend(b.generators().iter().map(|&y| (Elem::IDENTITY, y)));
        let mul = |p: &(Elem, Elem), q: &(Elem, Elem)| (a.mul(p.0, q.0), b.mul(p.1, q.1));
        let elements = super::closure((Elem::IDENTITY, Elem::IDENTITY), &gens, mul, total)?;
        let name = format!("product:{},{}", wrap(a.name()), wrap(b.name()));
        let g = FiniteGroup::from_elements(name, &elements, &gens, mul)?;
        let first = Subgroup::from_mask(elements.iter().map(|p| p.1.is_identity()).collect());
        let second = Subgroup::from_mask(elements.iter().map(|p| p.0.is_identity()).collect());
        Ok(g.with_factors(vec![first, second]))
    }
}

fn wrap(name: &str) -> String {
    if name.contains(',') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

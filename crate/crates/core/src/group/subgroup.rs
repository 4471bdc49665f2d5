use super::{Elem, FiniteGroup};

/// A subgroup stored as a membership mask over the owning group's elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    mask: Vec<bool>,
    order: usize,
}

impl Subgroup {
    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let order = mask.iter().filter(|&&b| b).count();
        Subgroup { mask, order }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x.index()]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.mask.len()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> Vec<Elem> {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Elem(i as u32))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect())
    }
}

impl FiniteGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        Subgroup { mask, order: 1 }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            mask: vec![true; self.order],
            order: self.order,
        }
    }

    /// Subgroup generated by `gens`, by closure under right multiplication.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y.index()] {
                    mask[y.index()] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        Subgroup {
            mask,
            order: queue.len(),
        }
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[Elem]) -> Subgroup {
        let mut gens: Vec<Elem> = set.iter().copied().filter(|x| !x.is_identity()).collect();
        let mut sub = self.subgroup_generated(&gens);
        let mut k = 0;
        while k < gens.len() {
            let t = gens[k];
            for &g in &self.generators {
                let c = self.conj(t, g);
                if !sub.contains(c) {
                    gens.push(c);
                    sub = self.subgroup_generated(&gens);
                }
            }
            k += 1;
        }
        sub
    }

    pub fn centralizer(&self, set: &[Elem]) -> Subgroup {
        Subgroup::from_mask(
            self.elements()
                .map(|x| set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
                .collect(),
        )
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.generators)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for (i, &a) in self.generators.iter().enumerate() {
            for &b in &self.generators[i + 1..] {
                comms.push(self.comm(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    /// `[H, K]` for normal subgroups `H` and `K`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let hg = self.generators_of(h);
        let kg = self.generators_of(k);
        let mut comms = Vec::new();
        for &a in &hg {
            for &b in &kg {
                comms.push(self.comm(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    /// Greedy generating set of a subgroup in increasing index order.
    pub fn generators_of(&self, h: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut sub = self.trivial_subgroup();
        for x in h.elements() {
            if !sub.contains(x) {
                gens.push(x);
                sub = self.subgroup_generated(&gens);
                if sub.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators_of(h)
            .iter()
            .all(|&x| self.generators.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// Exhaustive closure check of a membership mask.
    pub fn is_closed(&self, h: &Subgroup) -> bool {
        let members = h.elements();
        h.contains(Elem::IDENTITY)
            && members
                .iter()
                .all(|&a| h.contains(self.inv(a)) && members.iter().all(|&b| h.contains(self.mul(a, b))))
    }

    /// Conjugacy classes sorted by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x.index()] {
                continue;
            }
            seen[x.index()] = true;
            let mut class = vec![x];
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                for &g in &self.generators {
                    let z = self.conj(y, g);
                    if !seen[z.index()] {
                        seen[z.index()] = true;
                        class.push(z);
                    }
                }
                i += 1;
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    /// All minimal normal subgroups, sorted by order then by member list.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut candidates: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes().into_iter().skip(1) {
            let n = self.normal_closure(&class[..1]);
            if !candidates.contains(&n) {
                candidates.push(n);
            }
        }
        let mut minimal: Vec<Subgroup> = candidates
            .iter()
            .filter(|n| !candidates.iter().any(|m| m.order() < n.order() && m.is_subset_of(n)))
            .cloned()
            .collect();
        minimal.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(&b.elements())));
        minimal
    }

    /// `G = G^(0) > G' > G'' > ...` until it stabilises.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// `G = γ1 > γ2 > ...` until it stabilises.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, &whole);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_trivial()
    }

    /// Length of the derived series for solvable groups.
    pub fn derived_length(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last().unwrap().is_trivial().then(|| s.len() - 1)
    }

    /// Nilpotency class for nilpotent groups.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_trivial().then(|| s.len() - 1)
    }

    /// `{g : [g, x] ∈ N for all x ∈ H}`, the preimage of the centralizer
    /// of `H` modulo the normal subgroup `N`.
    pub fn centralizer_mod(&self, h: &Subgroup, n: &Subgroup) -> Subgroup {
        let hg = self.generators_of(h);
        Subgroup::from_mask(
            self.elements()
                .map(|g| hg.iter().all(|&x| n.contains(self.comm(g, x))))
                .collect(),
        )
    }
}

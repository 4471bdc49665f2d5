use std::collections::HashSet;

use super::{Elem, FiniteGroup};

/// An automorphism stored as its full image table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    images: Vec<Elem>,
}

impl Automorphism {
    pub(crate) fn from_images(images: Vec<Elem>) -> Self {
        Automorphism { images }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn identity(order: usize) -> Self {
        Automorphism {
            images: (0..order as u32).map(Elem).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x.index()]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![Elem(0); self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y.index()] = Elem(i as u32);
        }
        Automorphism { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, x)| x.index() == i)
    }
}

impl FiniteGroup {
    /// `x ↦ g x g^-1`.
    pub fn inner_automorphism(&self, g: Elem) -> Automorphism {
        let gi = self.inv(g);
        Automorphism {
            images: self.elements().map(|x| self.mul(self.mul(g, x), gi)).collect(),
        }
    }

    /// Extends generator images to a map on all of G, returning it only if
    /// it is a bijective homomorphism.
    fn extend_generator_images(&self, spanning: &[(u32, usize)], images: &[Elem]) -> Option<Automorphism> {
        let mut map = vec![Elem::IDENTITY; self.order];
        for (x, &(parent, k)) in spanning.iter().enumerate().skip(1) {
            map[x] = self.mul(map[parent as usize], images[k]);
        }
        let mut hit = vec![false; self.order];
        for y in &map {
            if std::mem::replace(&mut hit[y.index()], true) {
                return None;
            }
        }
        for x in self.elements() {
            for (k, &g) in self.generators.iter().enumerate() {
                if map[self.mul(x, g).index()] != self.mul(map[x.index()], images[k]) {
                    return None;
                }
            }
        }
        Some(Automorphism { images: map })
    }

    /// Breadth-first spanning tree: `(parent, generator)` per element.
    fn spanning_tree(&self) -> Vec<(u32, usize)> {
        let mut tree = vec![(u32::MAX, 0usize); self.order];
        tree[0] = (0, 0);
        let mut queue = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if tree[y.index()].0 == u32::MAX && !y.is_identity() {
                    tree[y.index()] = (x.0, k);
                    queue.push(y);
                }
            }
            i += 1;
        }
        tree
    }

    /// Every automorphism, found by trying all order-preserving generator
    /// images. The identity comes first; the rest follow in lexicographic
    /// order of generator images. Intended for small groups only.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let spanning = self.spanning_tree();
        let candidates: Vec<Vec<Elem>> = self
            .generators
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                self.elements().filter(|&x| self.element_order(x) == o).collect()
            })
            .collect();
        let mut out = vec![Automorphism::identity(self.order)];
        let mut idx = vec![0usize; candidates.len()];
        if candidates.iter().any(|c| c.is_empty()) {
            return out;
        }
        loop {
            let images: Vec<Elem> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(a) = self.extend_generator_images(&spanning, &images) {
                if !a.is_identity() {
                    out.push(a);
                }
            }
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < candidates[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// One representative per coset `α·Inn(G)`, the first in list order.
    pub fn outer_transversal(&self, all: &[Automorphism]) -> Vec<Automorphism> {
        let inner: Vec<Automorphism> = {
            let mut seen = HashSet::new();
            self.elements()
                .map(|g| self.inner_automorphism(g))
                .filter(|a| seen.insert(a.clone()))
                .collect()
        };
        let mut covered: HashSet<Automorphism> = HashSet::new();
        let mut reps = Vec::new();
        for a in all {
            if covered.contains(a) {
                continue;
            }
            for i in &inner {
                covered.insert(a.compose(i));
            }
            reps.push(a.clone());
        }
        reps
    }
}

//! PSL(2, q) as 2×2 matrices of determinant one modulo ±I, together with
//! the diagonal and field automorphisms.
//!
//! A matrix is stored in canonical form: for odd q it is negated when its
//! first nonzero entry (row-major) has discrete logarithm ≥ (q−1)/2, so each
//! class {A, −A} has exactly one stored representative.
//!
//! Elements are listed breadth-first from `u = [[1,1],[0,1]]`,
//! `v = [[1,0],[1,1]]` and `h = diag(ω, ω⁻¹)`. Groups of order above the
//! table limit are realised as permutations of the projective line, with
//! matrices acting on row vectors from the right.

mod aut;
mod field;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

pub use aut::{lemma_bound_holds, lemma_bound_value, FixRow, Psl2Aut};
pub use field::Fq;

use crate::error::Result;
use crate::group::{closure, perm, Automorphism, Elem, FiniteGroup, DEFAULT_ORDER_CAP, TABLE_LIMIT};

/// Entries `[a, b, c, d]` for `[[a, b], [c, d]]`, as field codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Mat2(pub [u32; 4]);

/// PSL(2, q) with its element list.
#[derive(Clone, Debug)]
pub struct Psl2 {
    field: Fq,
    elements: Vec<Mat2>,
    gens: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
}

impl Psl2 {
    pub fn new(q: usize) -> Result<Self> {
        let field = Fq::new(q)?;
        let mut s = Psl2 {
            field,
            elements: Vec::new(),
            gens: Vec::new(),
            index: HashMap::new(),
        };
        let f = &s.field;
        let w = f.omega();
        let u = s.canonical(Mat2([1, 1, 0, 1]));
        let v = s.canonical(Mat2([1, 0, 1, 1]));
        let h = s.canonical(Mat2([w, 0, 0, f.inv(w)]));
        let gens = vec![u, v, h];
        let elements = closure(s.identity(), &gens, |a, b| s.mul(a, b), DEFAULT_ORDER_CAP)?;
        s.index = elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        s.elements = elements;
        s.gens = gens;
        Ok(s)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, x: Elem) -> Mat2 {
        self.elements[x.index()]
    }

    /// Index of a matrix of determinant one, in any sign.
    pub fn index_of(&self, m: Mat2) -> Elem {
        Elem(self.index[&self.canonical(m)])
    }

    pub fn identity(&self) -> Mat2 {
        Mat2([1, 0, 0, 1])
    }

    pub fn canonical(&self, m: Mat2) -> Mat2 {
        let f = &self.field;
        if f.p() == 2 {
            return m;
        }
        let first = m.0.iter().copied().find(|&x| x != 0).expect("zero matrix");
        if f.log(first).unwrap() >= (f.q() - 1) / 2 {
            Mat2(m.0.map(|x| f.neg(x)))
        } else {
            m
        }
    }

    /// Raw product, not canonicalised.
    pub fn mul_raw(&self, x: Mat2, y: Mat2) -> Mat2 {
        let f = &self.field;
        let [a, b, c, d] = x.0;
        let [e, g, h, k] = y.0;
        Mat2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    pub fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        self.canonical(self.mul_raw(*x, *y))
    }

    /// Inverse of a determinant-one matrix, not canonicalised.
    pub fn inv_raw(&self, x: Mat2) -> Mat2 {
        let f = &self.field;
        let [a, b, c, d] = x.0;
        Mat2([d, f.neg(b), f.neg(c), a])
    }

    pub fn det(&self, x: Mat2) -> u32 {
        let f = &self.field;
        let [a, b, c, d] = x.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    /// The points of the projective line: `(x : 1)` for each x, then `(1 : 0)`.
    fn line_point(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        if y == 0 {
            f.q()
        } else {
            f.mul(x, f.inv(y))
        }
    }

    fn line_perm(&self, m: Mat2) -> Vec<u32> {
        let f = &self.field;
        let [a, b, c, d] = m.0;
        (0..=f.q())
            .map(|pt| {
                let (x, y) = if pt == f.q() { (1, 0) } else { (pt, 1) };
                self.line_point(f.add(f.mul(x, a), f.mul(y, c)), f.add(f.mul(x, b), f.mul(y, d)))
            })
            .collect()
    }

    /// The group on element indices; table-backed up to the table limit,
    /// otherwise acting on the projective line.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        let name = format!("psl2:{}", self.q());
        if self.order() <= TABLE_LIMIT {
            FiniteGroup::from_elements(name, &self.elements, &self.gens, |a, b| self.mul(a, b))
        } else {
            let perms: Vec<Vec<u32>> = self.elements.par_iter().map(|&m| self.line_perm(m)).collect();
            let gens: Vec<Vec<u32>> = self.gens.iter().map(|&m| self.line_perm(m)).collect();
            debug_assert!(gens.iter().all(|g| perm::is_bijection(g, self.q() as usize + 1)));
            Ok(FiniteGroup::from_perm_elements(name, perms, &gens))
        }
    }

    /// Applies `α` to every element, as an index table.
    pub fn automorphism_table(&self, alpha: &Psl2Aut) -> Automorphism {
        Automorphism::from_images(
            self.elements
                .par_iter()
                .map(|&m| self.index_of(alpha.apply(self, m)))
                .collect(),
        )
    }

    /// `|{x ∈ S : α(x) = x}|` by enumeration.
    pub fn fixed_points(&self, alpha: &Psl2Aut) -> usize {
        self.elements
            .par_iter()
            .filter(|&&m| self.canonical(alpha.apply(self, m)) == m)
            .count()
    }

    /// Elements fixed by `α`, as indices.
    pub fn fixed_subgroup(&self, alpha: &Psl2Aut) -> Vec<Elem> {
        (0..self.order() as u32)
            .map(Elem)
            .filter(|&x| self.canonical(alpha.apply(self, self.element(x))) == self.element(x))
            .collect()
    }

    /// `|{a^-1 α(a) : a ∈ S}|` by enumeration.
    pub fn ad_image_size(&self, alpha: &Psl2Aut) -> usize {
        let mut seen = vec![false; self.order()];
        for &m in &self.elements {
            let y = self.mul_raw(self.inv_raw(m), alpha.apply(self, m));
            seen[self.index_of(y).index()] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }
}

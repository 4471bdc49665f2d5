//! Automorphisms `inn_m ∘ σ^i ∘ D^j` of PSL(2, q).
//!
//! `D` conjugates by `diag(ω, 1)`, so `D^j` sends `[[a,b],[c,d]]` to
//! `[[a, ω^j b], [ω^-j c, d]]`. `σ` raises every entry to the p-th power.
//! `inn_m` sends `X` to `m X m⁻¹`.
//!
//! Composition is function composition. It rests on two rules:
//! `D^j ∘ σ^k = σ^k ∘ D^(j·p^(n−k))` and `β ∘ inn_m = inn_β(m) ∘ β`.

use serde::Serialize;

use super::{Mat2, Psl2};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Psl2Aut {
    /// Conjugating matrix, applied last.
    pub inner: Option<Mat2>,
    /// Field power, in `[0, n)`.
    pub i: u32,
    /// Diagonal power, in `[0, q−1)`.
    pub j: u32,
    #[serde(skip)]
    p: u32,
    #[serde(skip)]
    n: u32,
    #[serde(skip)]
    q: u32,
}

impl Psl2Aut {
    pub fn identity(s: &Psl2) -> Self {
        Self::normal_form(s, 0, 0)
    }

    /// `σ^i ∘ D^j`, with both exponents reduced.
    pub fn normal_form(s: &Psl2, i: i64, j: i64) -> Self {
        let f = s.field();
        Psl2Aut {
            inner: None,
            i: i.rem_euclid(f.n() as i64) as u32,
            j: j.rem_euclid(f.q() as i64 - 1) as u32,
            p: f.p(),
            n: f.n(),
            q: f.q(),
        }
    }

    pub fn frobenius(s: &Psl2) -> Self {
        Self::normal_form(s, 1, 0)
    }

    /// Conjugation by `diag(ω, 1)`; only an outer automorphism for odd q.
    pub fn diagonal(s: &Psl2) -> Result<Self> {
        if s.field().p() == 2 {
            return Err(Error::contract("the diagonal automorphism needs odd q"));
        }
        Ok(Self::normal_form(s, 0, 1))
    }

    /// `X ↦ m X m⁻¹` for a determinant-one `m`.
    pub fn inner(s: &Psl2, m: Mat2) -> Self {
        let mut a = Self::identity(s);
        let m = s.canonical(m);
        a.inner = (m != s.identity()).then_some(m);
        a
    }

    pub fn is_identity_form(&self) -> bool {
        self.inner.is_none() && self.i == 0 && self.j == 0
    }

    pub fn apply(&self, s: &Psl2, x: Mat2) -> Mat2 {
        let f = s.field();
        let [a, b, c, d] = x.0;
        let y = Mat2([
            a,
            f.mul(f.omega_pow(self.j as i64), b),
            f.mul(f.omega_pow(-(self.j as i64)), c),
            d,
        ]);
        let y = Mat2(y.0.map(|e| f.frobenius(e, self.i)));
        let y = match self.inner {
            Some(m) => s.mul_raw(s.mul_raw(m, y), s.inv_raw(m)),
            None => y,
        };
        s.canonical(y)
    }

    fn outer_part(&self) -> Psl2Aut {
        Psl2Aut { inner: None, ..*self }
    }

    /// `self ∘ other`
    pub fn compose(&self, s: &Psl2, other: &Psl2Aut) -> Psl2Aut {
        let (n, q1) = (self.n as i64, self.q as i64 - 1);
        let gamma = self.outer_part();
        let k = other.i as i64;
        let twist = (self.p as i64).pow(((n - k).rem_euclid(n)) as u32) % q1;
        let j = (self.j as i64 * twist + other.j as i64).rem_euclid(q1);
        let mut out = Self::normal_form(s, self.i as i64 + k, j);
        let moved = other.inner.map(|m| gamma.apply(s, m));
        let m = match (self.inner, moved) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(s.mul(&a, &b)),
        };
        out.inner = m.filter(|&m| m != s.identity());
        out
    }

    pub fn inverse(&self, s: &Psl2) -> Psl2Aut {
        let i = self.i as i64;
        let q1 = self.q as i64 - 1;
        let twist = (self.p as i64).pow(self.i) % q1;
        let mut gamma_inv = Self::normal_form(s, -i, -(self.j as i64) * twist);
        if let Some(m) = self.inner {
            let m_inv = s.canonical(s.inv_raw(m));
            gamma_inv.inner = Some(gamma_inv.apply(s, m_inv)).filter(|&x| x != s.identity());
        }
        gamma_inv
    }

    /// Whether two automorphisms agree on every element.
    pub fn same_map(&self, s: &Psl2, other: &Psl2Aut) -> bool {
        s.elements().iter().all(|&x| self.apply(s, x) == other.apply(s, x))
    }
}

impl Psl2 {
    /// The normal forms `σ^i D^j` with `i ∈ [0, n)`, `j ∈ [0, q−1)`; for even
    /// q only the field powers. Ordered by `(i, j)`.
    pub fn outer_coset_reps(&self) -> Vec<Psl2Aut> {
        let f = self.field();
        let js = if f.p() == 2 { 1 } else { f.q() as i64 - 1 };
        let mut out = Vec::new();
        for i in 0..f.n() as i64 {
            for j in 0..js {
                out.push(Psl2Aut::normal_form(self, i, j));
            }
        }
        out
    }

    /// One row per nontrivial `σ^i D^j`.
    pub fn fix_report(&self) -> Vec<FixRow> {
        let f = self.field();
        self.outer_coset_reps()
            .into_iter()
            .filter(|a| !a.is_identity_form())
            .map(|a| {
                let fix = self.fixed_points(&a);
                FixRow {
                    alpha_i: a.i,
                    alpha_j: a.j,
                    fix_count: fix,
                    lemma_bound: lemma_bound_value(f.p(), f.n()),
                    within_bound: lemma_bound_holds(fix as u64, f.p(), f.n()),
                    ad_image_size: self.ad_image_size(&a),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixRow {
    pub alpha_i: u32,
    pub alpha_j: u32,
    pub fix_count: usize,
    /// `p^(n/2) (p^n − 1) / 2`; irrational when n is odd.
    pub lemma_bound: f64,
    /// Exact comparison `4·fix² ≤ p^n (p^n − 1)²`.
    pub within_bound: bool,
    pub ad_image_size: usize,
}

pub fn lemma_bound_value(p: u32, n: u32) -> f64 {
    let q = (p as f64).powi(n as i32);
    q.sqrt() * (q - 1.0) / 2.0
}

/// `fix ≤ p^(n/2) (p^n − 1) / 2`, compared exactly after squaring.
pub fn lemma_bound_holds(fix: u64, p: u32, n: u32) -> bool {
    let q = (p as u128).pow(n);
    4 * (fix as u128) * (fix as u128) <= q * (q - 1) * (q - 1)
}

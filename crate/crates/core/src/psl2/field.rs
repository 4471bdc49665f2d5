//! The finite field of order `q = p^n`.
//!
//! Elements are coded as integers `Σ a_i p^i` for the residue
//! `Σ a_i x^i` modulo the modulus. The modulus is the monic irreducible of
//! degree n with the smallest code among its lower coefficients (for n = 1
//! this is `x`, so codes are plain residues mod p). The fixed generator ω
//! of the multiplicative group is the primitive element with the smallest
//! code. Multiplication goes through exp/log tables relative to ω.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct Fq {
    p: u32,
    n: u32,
    q: u32,
    /// Lower coefficients `a_0..a_{n-1}` of the monic modulus.
    modulus: Vec<u32>,
    omega: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn factor_prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut m = q;
    let mut n = 0;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p as u32, n))
}

/// Polynomial helpers over F_p with coefficient vectors, lowest first.
fn poly_mod(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    // b monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        for (k, &c) in b.iter().enumerate() {
            let t = (a[shift + k] + p * p - lead * c % p) % p;
            a[shift + k] = t;
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.len() <= db {
            break;
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn digits(code: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    let mut c = code;
    for _ in 0..n {
        out.push(c % p);
        c /= p;
    }
    out
}

fn is_irreducible(lower: &[u32], p: u32) -> bool {
    let n = lower.len();
    let mut f = lower.to_vec();
    f.push(1);
    for d in 1..=n / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut g = digits(code as u32, p, d as u32);
            g.push(1);
            if poly_mod(f.clone(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Fq {
    pub fn new(q: usize) -> Result<Self> {
        let (p, n) = factor_prime_power(q).ok_or_else(|| Error::contract(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::contract(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let q = q as u32;
        let modulus = (0..p.pow(n - 1).max(1) * p)
            .map(|c| digits(c, p, n))
            .find(|lower| is_irreducible(lower, p))
            .expect("an irreducible polynomial exists in every degree");
        let mut f = Fq {
            p,
            n,
            q,
            modulus,
            omega: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let omega = (1..q)
            .find(|&g| f.slow_order(g) == q - 1)
            .expect("the multiplicative group is cyclic");
        f.omega = omega;
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1;
        for (k, e) in exp.iter_mut().enumerate() {
            *e = x;
            log[x as usize] = k as u32;
            x = f.slow_mul(x, omega);
        }
        f.exp = exp;
        f.log = log;
        Ok(f)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, n) = (self.p, self.n);
        let da = digits(a, p, n);
        let db = digits(b, p, n);
        let mut prod = vec![0u32; 2 * n as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut m = self.modulus.clone();
        m.push(1);
        let r = poly_mod(prod, &m, p);
        r.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn slow_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    /// Lower coefficients of the monic modulus, `a_0` first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.n == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    /// Discrete logarithm to base ω.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `ω^k` for any integer k.
    pub fn omega_pow(&self, k: i64) -> u32 {
        self.exp[k.rem_euclid((self.q - 1) as i64) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    /// `x ↦ x^(p^i)`
    pub fn frobenius(&self, a: u32, i: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(i % self.n))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(2), Some((2, 1)));
        assert_eq!(factor_prime_power(64), Some((2, 6)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
        assert!(Fq::new(6).is_err());
    }

    #[test]
    fn f9_modulus_and_generator() {
        let f = Fq::new(9).unwrap();
        // x^2 + 1, ω = x + 1
        assert_eq!(f.modulus(), &[1, 0]);
        assert_eq!(f.omega(), 4);
    }

    #[test]
    fn prime_fields_use_residues() {
        let f = Fq::new(7).unwrap();
        assert_eq!(f.omega(), 3);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.add(4, 5), 2);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81] {
            let f = Fq::new(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                assert_eq!(f.frobenius(a, f.n()), a);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius is additive
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    if q <= 27 {
                        for &c in &els {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        }
                    }
                }
            }
        }
    }
}

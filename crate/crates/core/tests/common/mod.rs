//! Brute-force oracle that shares no code with the engine: groups are closed
//! from raw permutations into private Cayley tables, words are closures, and
//! PSL(2, q) is rebuilt from 2×2 matrices over a hand-rolled field.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::Path;

pub struct Table {
    pub n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Table {
    pub fn from_perms(degree: usize, gens: &[Vec<u32>]) -> Table {
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<u32> = elems[i].iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                // apply a, then b
                let p: Vec<u32> = elems[a].iter().map(|&x| elems[b][x as usize]).collect();
                mul[a * n + b] = index[&p] as u32;
            }
        }
        Table::from_mul(n, mul)
    }

    fn from_mul(n: usize, mul: Vec<u32>) -> Table {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
        }
        Table { n, mul, inv }
    }

    /// Direct product with componentwise multiplication.
    pub fn product(a: &Table, b: &Table) -> Table {
        let n = a.n * b.n;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b.n, x % b.n);
                let (y1, y2) = (y / b.n, y % b.n);
                mul[x * n + y] = (a.m(x1, y1) * b.n + b.m(x2, y2)) as u32;
            }
        }
        Table::from_mul(n, mul)
    }

    #[inline]
    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn i(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a⁻¹b⁻¹ab`
    #[inline]
    pub fn c(&self, a: usize, b: usize) -> usize {
        self.m(self.m(self.i(a), self.i(b)), self.m(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.m(a, b) == self.m(b, a)))
    }

    /// Number of `d`-tuples sent to the identity by `f`.
    pub fn count(&self, d: usize, f: impl Fn(&Table, &[usize]) -> usize) -> u64 {
        let mut args = vec![0usize; d];
        let mut hits = 0u64;
        loop {
            if f(self, &args) == 0 {
                hits += 1;
            }
            let mut k = d;
            loop {
                if k == 0 {
                    return hits;
                }
                k -= 1;
                args[k] += 1;
                if args[k] < self.n {
                    break;
                }
                args[k] = 0;
            }
        }
    }

    pub fn conjugacy_classes(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut k = 0;
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            k += 1;
            for g in 0..self.n {
                seen[self.m(self.m(self.i(g), a), g)] = true;
            }
        }
        k
    }

    /// Subgroup generated by `set` as a membership mask.
    pub fn generated(&self, set: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            for &s in set {
                let x = self.m(members[i], s);
                if !mask[x] {
                    mask[x] = true;
                    members.push(x);
                }
            }
            i += 1;
        }
        mask
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur: Vec<usize> = (0..self.n).collect();
        loop {
            let comms: Vec<usize> = cur
                .iter()
                .flat_map(|&a| cur.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.c(a, b))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            let next: Vec<usize> = self
                .generated(&comms)
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| i)
                .collect();
            if next.len() == 1 {
                return true;
            }
            if next.len() == cur.len() {
                return false;
            }
            cur = next;
        }
    }
}

pub fn comm(t: &Table, a: &[usize]) -> usize {
    t.c(a[0], a[1])
}

pub fn engel2(t: &Table, a: &[usize]) -> usize {
    t.c(t.c(a[0], a[1]), a[1])
}

pub fn metab(t: &Table, a: &[usize]) -> usize {
    t.c(t.c(a[0], a[1]), t.c(a[2], a[3]))
}

/// Right-nested `[x1, [x2, x3]]`.
pub fn gamma_right3(t: &Table, a: &[usize]) -> usize {
    t.c(a[0], t.c(a[1], a[2]))
}

/// Exact fraction in lowest terms.
pub fn frac(hits: u64, total: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(hits, total);
    (hits / g, total / g)
}

pub fn probability(t: &Table, d: usize, f: impl Fn(&Table, &[usize]) -> usize) -> (u64, u64) {
    frac(t.count(d, f), (t.n as u64).pow(d as u32))
}

/// Reads a permutation group file with plain JSON access.
pub fn load(path: &Path) -> Table {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let degree = v["degree"].as_u64().unwrap() as usize;
    let gens: Vec<Vec<u32>> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| {
            g.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as u32)
                .collect()
        })
        .collect();
    Table::from_perms(degree, &gens)
}

pub fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_file(name: &str) -> std::path::PathBuf {
    let dir = if name.starts_with("sg243") || name.starts_with("sg729") {
        "extra"
    } else {
        "small"
    };
    corpus_dir().join(dir).join(format!("{name}.json"))
}

pub fn cyclic(n: usize) -> Table {
    let g: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    Table::from_perms(n, &[g])
}

/// Dihedral group of order `n`, acting on `n/2` points.
pub fn dihedral(n: usize) -> Table {
    let m = n / 2;
    let r: Vec<u32> = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
    let s: Vec<u32> = (0..m as u32).map(|i| (m as u32 - i) % m as u32).collect();
    Table::from_perms(m, &[r, s])
}

pub fn symmetric(n: usize) -> Table {
    let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    Table::from_perms(n, &[cycle, swap])
}

pub fn alternating(n: usize) -> Table {
    // 3-cycles (0 1 k) generate Alt(n)
    let gens: Vec<Vec<u32>> = (2..n)
        .map(|k| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p[0] = 1;
            p[1] = k as u32;
            p[k] = 0;
            p
        })
        .collect();
    Table::from_perms(n, &gens)
}

/// `F_p` or `F_9 = F_3[i]/(i² + 1)`, elements coded `a + 3b`.
#[derive(Clone, Copy)]
pub struct Field {
    pub p: u32,
    pub n: u32,
}

impl Field {
    pub fn new(q: u32) -> Field {
        match q {
            9 => Field { p: 3, n: 2 },
            _ => Field { p: q, n: 1 },
        }
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.n)
    }

    fn parts(&self, x: u32) -> (u32, u32) {
        (x % self.p, x / self.p)
    }

    fn join(&self, a: u32, b: u32) -> u32 {
        a % self.p + self.p * (b % self.p)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let ((a, b), (c, d)) = (self.parts(x), self.parts(y));
        self.join(a + c, b + d)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let (a, b) = self.parts(x);
        self.join(self.p - a, self.p - b)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let ((a, b), (c, d)) = (self.parts(x), self.parts(y));
        let p = self.p;
        // (a + bi)(c + di) with i² = -1
        self.join(a * c + (p - b * d % p), a * d + b * c)
    }

    pub fn frobenius(&self, x: u32) -> u32 {
        let (a, b) = self.parts(x);
        self.join(a, self.p - b)
    }

    pub fn inv(&self, x: u32) -> u32 {
        (1..self.q()).find(|&y| self.mul(x, y) == 1).unwrap()
    }

    /// Least element generating the multiplicative group.
    pub fn primitive(&self) -> u32 {
        (2..self.q())
            .find(|&w| {
                let mut x = 1;
                let mut k = 0;
                loop {
                    x = self.mul(x, w);
                    k += 1;
                    if x == 1 {
                        return k == self.q() - 1;
                    }
                }
            })
            .unwrap_or(1)
    }
}

/// PSL(2, q) as the set of ±-pairs of determinant-one matrices.
pub struct Psl {
    pub f: Field,
    pub elems: Vec<[u32; 4]>,
    index: HashMap<[u32; 4], usize>,
}

impl Psl {
    pub fn new(q: u32) -> Psl {
        let f = Field::new(q);
        let mut elems = Vec::new();
        let mut index = HashMap::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = [a, b, c, d];
                        let det = f.add(f.mul(a, d), f.neg(f.mul(b, c)));
                        if det != 1 {
                            continue;
                        }
                        let key = Self::canon(&f, m);
                        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                            e.insert(elems.len());
                            elems.push(key);
                        }
                    }
                }
            }
        }
        Psl { f, elems, index }
    }

    fn canon(f: &Field, m: [u32; 4]) -> [u32; 4] {
        let n = m.map(|x| f.neg(x));
        m.min(n)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, m: [u32; 4]) -> usize {
        self.index[&Self::canon(&self.f, m)]
    }

    pub fn mul(&self, x: [u32; 4], y: [u32; 4]) -> [u32; 4] {
        let f = &self.f;
        let e = |a: u32, b: u32, c: u32, d: u32| f.add(f.mul(a, b), f.mul(c, d));
        [
            e(x[0], y[0], x[1], y[2]),
            e(x[0], y[1], x[1], y[3]),
            e(x[2], y[0], x[3], y[2]),
            e(x[2], y[1], x[3], y[3]),
        ]
    }

    pub fn inv(&self, x: [u32; 4]) -> [u32; 4] {
        let f = &self.f;
        [x[3], f.neg(x[1]), f.neg(x[2]), x[0]]
    }

    /// `σ^i` then conjugation by `diag(ω^j, 1)`.
    pub fn aut(&self, i: u32, j: u32, m: [u32; 4]) -> [u32; 4] {
        let f = &self.f;
        let mut m = m;
        for _ in 0..i {
            m = m.map(|x| f.frobenius(x));
        }
        let w = f.primitive();
        let mut wj = 1;
        for _ in 0..j {
            wj = f.mul(wj, w);
        }
        let wi = f.inv(wj);
        [m[0], f.mul(wj, m[1]), f.mul(wi, m[2]), m[3]]
    }

    pub fn fixed(&self, i: u32, j: u32) -> usize {
        self.elems
            .iter()
            .filter(|&&m| self.idx(self.aut(i, j, m)) == self.idx(m))
            .count()
    }

    /// `|{a⁻¹ α(a)}|`
    pub fn ad_image(&self, i: u32, j: u32) -> usize {
        self.elems
            .iter()
            .map(|&m| self.idx(self.mul(self.inv(m), self.aut(i, j, m))))
            .collect::<HashSet<_>>()
            .len()
    }
}

//! Permutations on `0..degree` stored as image vectors.
//!
//! Products act on the right: `compose(a, b)` applies `a` first, then `b`.

pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

pub fn is_bijection(p: &[u32], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        let x = x as usize;
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Builds a permutation from disjoint cycles.
pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Perm {
    let mut p = identity(degree);
    for cycle in cycles {
        for (k, &x) in cycle.iter().enumerate() {
            p[x as usize] = cycle[(k + 1) % cycle.len()];
        }
    }
    p
}

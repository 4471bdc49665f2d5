//! Constructors for the group specs accepted on the command line.
//!
//! | spec            | group                                      |
//! |-----------------|--------------------------------------------|
//! | `cyclic:n`      | cyclic group of order n                    |
//! | `dihedral:n`    | dihedral group of ORDER n (n even, n ≥ 4)  |
//! | `quaternion:n`  | generalized quaternion group of order n = 2^k ≥ 8 |
//! | `sym:n`, `alt:n`| symmetric / alternating group on n points  |
//! | `psl2:q`        | PSL(2, q) for a prime power q              |
//! | `sz:2`          | Sz(2), the Frobenius group of order 20     |
//! | `product:A,B`   | direct product; parenthesise nested specs  |
//!
//! `dihedral:n` always names the group of order n, so `dihedral:8` is the
//! symmetry group of the square.

use super::{perm, FiniteGroup};
use crate::error::{Error, Result};

pub fn named(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let bad = |msg: &str| Error::GroupSpec {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected `<family>:<parameter>`"))?;
    if kind == "product" {
        let (left, right) = split_product(arg).ok_or_else(|| bad("expected `product:A,B`"))?;
        let a = named(left)?;
        let b = named(right)?;
        return Ok(FiniteGroup::direct_product(&a, &b)?.with_name(spec));
    }
    let n: usize = arg.parse().map_err(|_| bad("parameter is not a positive integer"))?;
    if n == 0 {
        return Err(bad("parameter must be positive"));
    }
    let g = match kind {
        "cyclic" => cyclic(n)?,
        "dihedral" => {
            if n < 4 || !n.is_multiple_of(2) {
                return Err(bad("dihedral order must be even and at least 4"));
            }
            dihedral(n)?
        }
        "quaternion" => {
            if n < 8 || !n.is_power_of_two() {
                return Err(bad("quaternion order must be a power of two, at least 8"));
            }
            quaternion(n)?
        }
        "sym" => symmetric(n)?,
        "alt" => alternating(n)?,
        "psl2" => crate::psl2::Psl2::new(n).map_err(|e| bad(&e.to_string()))?.to_group()?,
        "sz" => {
            if n != 2 {
                return Err(bad("only sz:2 is supported"));
            }
            FiniteGroup::from_generators(
                5,
                &[
                    perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
                    perm::from_cycles(5, &[&[1, 2, 4, 3]]),
                ],
            )?
        }
        _ => return Err(bad("unknown family")),
    };
    Ok(g.with_name(spec))
}

/// Splits `A,B` at the first comma outside parentheses, stripping one layer
/// of parentheses from each side.
fn split_product(arg: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in arg.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                return Some((unwrap_parens(&arg[..i])?, unwrap_parens(&arg[i + 1..])?));
            }
            _ => {}
        }
    }
    None
}

fn unwrap_parens(s: &str) -> Option<&str> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.strip_prefix('(') {
        Some(inner) => inner.strip_suffix(')'),
        None => Some(s),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    let cycle: Vec<u32> = (0..n as u32).collect();
    let gens = if n > 1 {
        vec![perm::from_cycles(n, &[&cycle])]
    } else {
        vec![]
    };
    FiniteGroup::from_generators(n, &gens)
}

fn dihedral(order: usize) -> Result<FiniteGroup> {
    let m = order / 2;
    if m == 2 {
        // Klein four group: the action on two points is not faithful.
        let a = perm::from_cycles(4, &[&[0, 1], &[2, 3]]);
        let b = perm::from_cycles(4, &[&[0, 2], &[1, 3]]);
        return FiniteGroup::from_generators(4, &[a, b]);
    }
    let rotation: Vec<u32> = (0..m as u32).map(|x| (x + 1) % m as u32).collect();
    let reflection: Vec<u32> = (0..m as u32).map(|x| (m as u32 - x) % m as u32).collect();
    FiniteGroup::from_generators(m, &[rotation, reflection])
}

fn quaternion(order: usize) -> Result<FiniteGroup> {
    // a^i b^e with a of order 2m, b^2 = a^m, b^-1 a b = a^-1.
    let m2 = (order / 2) as i64;
    let m = m2 / 2;
    let mul = |x: &(i64, u8), y: &(i64, u8)| -> (i64, u8) {
        match (x.1, y.1) {
            (0, f) => ((x.0 + y.0).rem_euclid(m2), f),
            (_, 0) => ((x.0 - y.0).rem_euclid(m2), 1),
            _ => ((x.0 - y.0 + m).rem_euclid(m2), 0),
        }
    };
    let gens = [(1, 0), (0, 1)];
    let elements = super::closure((0, 0), &gens, mul, order)?;
    FiniteGroup::from_elements(format!("quaternion:{order}"), &elements, &gens, mul)
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        let cycle: Vec<u32> = (0..n as u32).collect();
        gens.push(perm::from_cycles(n, &[&cycle]));
        if n > 2 {
            gens.push(perm::from_cycles(n, &[&[0, 1]]));
        }
    }
    FiniteGroup::from_generators(n, &gens)
}

fn alternating(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(perm::from_cycles(n, &[&[0, 1, 2]]));
        if n > 3 {
            let cycle: Vec<u32> = if n % 2 == 1 {
                (0..n as u32).collect()
            } else {
                (1..n as u32).collect()
            };
            gens.push(perm::from_cycles(n, &[&cycle]));
        }
    }
    FiniteGroup::from_generators(n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            ("cyclic:1", 1),
            ("cyclic:12", 12),
            ("dihedral:4", 4),
            ("dihedral:16", 16),
            ("quaternion:8", 8),
            ("quaternion:32", 32),
            ("sym:1", 1),
            ("sym:2", 2),
            ("sym:5", 120),
            ("alt:4", 12),
            ("alt:6", 360),
            ("sz:2", 20),
            ("product:cyclic:2,sym:3", 12),
            ("product:(product:cyclic:2,cyclic:2),cyclic:3", 12),
        ];
        for (spec, order) in cases {
            let g = named(spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.name(), spec);
        }
    }

    #[test]
    fn sz2_is_nonabelian_and_solvable() {
        let g = named("sz:2").unwrap();
        assert!(!g.is_abelian());
        assert!(g.is_solvable());
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let g = named("quaternion:16").unwrap();
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!g.is_abelian());
    }

    #[test]
    fn malformed_specs() {
        for spec in [
            "dihedral:7",
            "dihedral:2",
            "quaternion:12",
            "cyclic:x",
            "foo:3",
            "cyclic",
            "sz:8",
            "product:cyclic:2",
            "cyclic:0",
        ] {
            assert!(matches!(named(spec), Err(Error::GroupSpec { .. })), "{spec}");
        }
    }
}

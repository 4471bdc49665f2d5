//! Frozen values, each reproduced twice: once by the brute-force oracle in
//! `common` and once by the engine.

mod common;

use common::*;
use wordgap::prob::{coset_probability, sample_probability};
use wordgap::psl2::{Psl2, Psl2Aut};
use wordgap::solvable::{gamma_recursion_check, reduce_to_minimal_verbal};
use wordgap::word::variation_count;
use wordgap::{named, parse, resolve_group, word_probability, Elem, EnumConfig, ExactProbability, FiniteGroup, Word};

fn engine(g: &FiniteGroup, w: &Word) -> (u64, u64) {
    let p = word_probability(g, w, Elem::IDENTITY, &EnumConfig::default()).unwrap();
    let (n, d) = p.reduced();
    (n.try_into().unwrap(), d.try_into().unwrap())
}

fn corpus(name: &str) -> FiniteGroup {
    resolve_group(corpus_file(name).to_str().unwrap()).unwrap()
}

const COMM: &[(&str, (u64, u64))] = &[
    ("sym:3", (1, 2)),
    ("dihedral:8", (5, 8)),
    ("sym:4", (5, 24)),
    ("alt:5", (1, 12)),
    ("product:alt:5,cyclic:2", (1, 12)),
    ("product:alt:5,sym:3", (1, 24)),
];

#[test]
fn commuting_probabilities() {
    let oracle = [
        symmetric(3),
        dihedral(8),
        symmetric(4),
        alternating(5),
        Table::product(&alternating(5), &cyclic(2)),
        Table::product(&alternating(5), &symmetric(3)),
    ];
    for ((spec, frozen), t) in COMM.iter().zip(&oracle) {
        assert_eq!(probability(t, 2, comm), *frozen, "oracle {spec}");
        assert_eq!(engine(&named(spec).unwrap(), &Word::comm()), *frozen, "engine {spec}");
        // commuting probability is also k(G)/|G|
        assert_eq!(
            frac(t.conjugacy_classes() as u64, t.n as u64),
            *frozen,
            "class count {spec}"
        );
    }
}

#[test]
fn engel_probabilities() {
    let frozen = [
        ("dihedral:16", dihedral(16), (3, 4)),
        ("sym:4", symmetric(4), (5, 12)),
        ("sg024_003", load(&corpus_file("sg024_003")), (1, 3)),
        ("sg064_138", load(&corpus_file("sg064_138")), (13, 16)),
        ("sg064_139", load(&corpus_file("sg064_139")), (13, 16)),
    ];
    for (name, t, value) in &frozen {
        assert_eq!(probability(t, 2, engel2), *value, "oracle {name}");
        let g = if name.starts_with("sg") {
            corpus(name)
        } else {
            named(name).unwrap()
        };
        assert_eq!(engine(&g, &Word::engel2()), *value, "engine {name}");
    }
}

#[test]
fn metabelian_probabilities() {
    let frozen = [
        ("sym:4", symmetric(4), (25, 48)),
        ("sg024_003", load(&corpus_file("sg024_003")), (19, 27)),
    ];
    for (name, t, value) in &frozen {
        assert_eq!(probability(t, 4, metab), *value, "oracle {name}");
        let g = if name.starts_with("sg") {
            corpus(name)
        } else {
            named(name).unwrap()
        };
        assert_eq!(engine(&g, &Word::metab()), *value, "engine {name}");
    }
}

#[test]
fn long_commutator_on_dihedral_groups() {
    let frozen = [(6, (3, 4)), (8, (1, 1)), (16, (13, 16))];
    for (n, value) in frozen {
        assert_eq!(probability(&dihedral(n), 3, gamma_right3), value, "oracle D{n}");
        assert_eq!(
            engine(&named(&format!("dihedral:{n}")).unwrap(), &Word::gamma_right(3)),
            value
        );
    }
    let r = gamma_recursion_check(&named("dihedral:16").unwrap(), 3, &EnumConfig::default()).unwrap();
    assert!(r.levels[1].sharp);
}

#[test]
fn psl2_orders() {
    for (q, order) in [(3u32, 12usize), (5, 60), (7, 168), (9, 360)] {
        assert_eq!(Psl::new(q).order(), order);
        assert_eq!(Psl2::new(q as usize).unwrap().order(), order);
        assert_eq!(named(&format!("psl2:{q}")).unwrap().order(), order);
    }
}

/// `(i, j, |Fix(σ^i D^j)|, |im ad|)` on PSL(2, 9).
const PSL9_FIX: [(u32, u32, usize, usize); 16] = [
    (0, 0, 360, 1),
    (0, 1, 4, 90),
    (0, 2, 4, 90),
    (0, 3, 4, 90),
    (0, 4, 8, 45),
    (0, 5, 4, 90),
    (0, 6, 4, 90),
    (0, 7, 4, 90),
    (1, 0, 24, 15),
    (1, 1, 2, 180),
    (1, 2, 24, 15),
    (1, 3, 2, 180),
    (1, 4, 24, 15),
    (1, 5, 2, 180),
    (1, 6, 24, 15),
    (1, 7, 2, 180),
];

#[test]
fn psl9_fixed_points() {
    let oracle = Psl::new(9);
    let s = Psl2::new(9).unwrap();
    for (i, j, fix, ad) in PSL9_FIX {
        assert_eq!(
            (oracle.fixed(i, j), oracle.ad_image(i, j)),
            (fix, ad),
            "oracle σ^{i} D^{j}"
        );
        let a = Psl2Aut::normal_form(&s, i as i64, j as i64);
        assert_eq!(
            (s.fixed_points(&a), s.ad_image_size(&a)),
            (fix, ad),
            "engine σ^{i} D^{j}"
        );
    }
}

#[test]
fn small_psl_diagonal_fixed_points() {
    for (q, frozen) in [
        (3u32, vec![(12, 1), (2, 6)]),
        (5, vec![(60, 1), (2, 30), (4, 15), (2, 30)]),
    ] {
        let oracle = Psl::new(q);
        let s = Psl2::new(q as usize).unwrap();
        for (j, &(fix, ad)) in frozen.iter().enumerate() {
            assert_eq!((oracle.fixed(0, j as u32), oracle.ad_image(0, j as u32)), (fix, ad));
            let a = Psl2Aut::normal_form(&s, 0, j as i64);
            assert_eq!((s.fixed_points(&a), s.ad_image_size(&a)), (fix, ad));
        }
    }
}

#[test]
fn structure_values() {
    let d16 = named("dihedral:16").unwrap();
    assert_eq!(d16.derived_subgroup().order(), 4);
    assert_eq!(d16.center().order(), 2);
    assert_eq!(d16.quotient(&d16.center()).unwrap().group.order(), 8);
    assert!(d16.is_nilpotent());
    let s4 = named("sym:4").unwrap();
    assert_eq!(s4.quotient(&s4.derived_subgroup()).unwrap().group.order(), 2);
    let c12 = named("cyclic:12").unwrap();
    let mut orders: Vec<usize> = c12.minimal_normal_subgroups().iter().map(|m| m.order()).collect();
    orders.sort();
    assert_eq!(orders, vec![2, 3]);
    let a5 = FiniteGroup::from_generators(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap();
    assert_eq!(a5.order(), 60);
    assert_eq!(dihedral(16).conjugacy_classes(), 7);
}

#[test]
fn long_commutator_smoke_value() {
    let g = named("dihedral:16").unwrap();
    let r = g.elements().find(|&x| g.element_order(x) == 8).unwrap();
    let rot = g.subgroup_generated(&[r]);
    let s = g.elements().find(|&x| !rot.contains(x)).unwrap();
    let z = g.center();
    assert!(!z.contains(g.comm(s, r)));
    // [r, s] is a rotation, so it commutes with r but not with s
    assert!(Word::gamma(3).evaluate(&g, &[r, s, r]).is_identity());
    let v = Word::gamma(3).evaluate(&g, &[r, s, s]);
    assert!(!v.is_identity());
    assert!(z.contains(v));
}

#[test]
fn variation_counts() {
    assert_eq!(variation_count(&Word::comm()), 4u32.into());
    assert_eq!(variation_count(&Word::engel2()), 3045u32.into());
    assert_eq!(variation_count(&parse("[x1,x2,x2]").unwrap()), 3045u32.into());
}

#[test]
fn coset_probability_splits_direct_products() {
    let g = named("product:alt:5,cyclic:2").unwrap();
    let n = g.factor(0).unwrap().clone();
    let cfg = EnumConfig::default();
    let p = coset_probability(&g, &n, &Word::comm(), &[Elem::IDENTITY, Elem::IDENTITY], &cfg).unwrap();
    let a5 = word_probability(&named("alt:5").unwrap(), &Word::comm(), Elem::IDENTITY, &cfg).unwrap();
    assert_eq!(p.ratio(), a5.ratio());
    assert_eq!(p.ratio(), ExactProbability::new(1u32, 12u32).ratio());
}

#[test]
fn sampled_estimates_cover_exact_values() {
    for (spec, seed, exact) in [("sym:3", 42, 0.5), ("dihedral:8", 7, 0.625)] {
        let e = sample_probability(&named(spec).unwrap(), &Word::comm(), Elem::IDENTITY, 1_000_000, seed).unwrap();
        assert!(
            (e.estimate - exact).abs() <= e.radius,
            "{spec}: {} ± {}",
            e.estimate,
            e.radius
        );
    }
}

#[test]
fn reduced_contexts() {
    let cfg = EnumConfig::default();
    let ctx = reduce_to_minimal_verbal(&named("dihedral:16").unwrap(), &Word::engel2(), &cfg).unwrap();
    assert_eq!((ctx.verbal.order(), ctx.p, ctx.dim), (2, 2, 1));
    let ctx = reduce_to_minimal_verbal(&named("sym:4").unwrap(), &Word::metab(), &cfg).unwrap();
    assert_eq!((ctx.verbal.order(), ctx.p, ctx.dim), (4, 2, 2));
}

#[test]
fn corpus_matches_manifest() {
    for dir in ["small", "extra"] {
        let path = corpus_dir().join(dir);
        let manifest = std::fs::read_to_string(path.join("manifest.csv")).unwrap();
        let rows: Vec<&str> = manifest.lines().skip(1).filter(|l| !l.is_empty()).collect();
        let groups = wordgap::survey::ingest(&path).unwrap();
        assert_eq!(groups.len(), rows.len(), "{dir}");
        for row in rows {
            let mut cols = row.split(',');
            let name = cols.next().unwrap();
            let order: usize = cols.next().unwrap().parse().unwrap();
            let g = groups.iter().find(|g| g.name() == name).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }
}

//! Structural invariants of the engine, as property tests over the corpus
//! and random words.

mod common;

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use proptest::prelude::*;
use wordgap::prob::{
    decomposition_check, distribution, reduction_check, word_distribution, EnumConfig, Strategy as EnumStrategy,
};
use wordgap::psl2::Psl2;
use wordgap::solvable::{derive_operators, reduce_to_minimal_verbal, verbal_subgroup};
use wordgap::vsmb::{check_word, inner_invariance_check, CosetTarget, VsmbConfig};
use wordgap::word::{bell, parse, variations, Letter};
use wordgap::{named, word_probability, Elem, FiniteGroup, Subgroup, Word};

/// Corpus groups of order at most 32.
fn small_groups() -> &'static [FiniteGroup] {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let all = wordgap::survey::ingest(&common::corpus_dir().join("small")).unwrap();
        all.into_iter().filter(|g| g.order() <= 32).collect()
    })
}

fn arb_word(max_rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..max_rank, any::<bool>()), 1..=max_len)
        .prop_map(|ls| ls.into_iter().map(|(v, inv)| Letter::new(v, inv)).collect())
}

/// Evaluates a letter list without free reduction.
fn evaluate_raw(g: &FiniteGroup, letters: &[Letter], args: &[Elem]) -> Elem {
    letters.iter().fold(Elem::IDENTITY, |acc, l| {
        let x = args[l.var];
        g.mul(acc, if l.inv { g.inv(x) } else { x })
    })
}

fn subgroups_of(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out = vec![g.center(), g.derived_subgroup(), g.trivial_subgroup(), g.whole()];
    out.extend(g.minimal_normal_subgroups());
    out.extend(g.lower_central_series());
    out
}

fn mask_closed(g: &FiniteGroup, h: &Subgroup) -> bool {
    let m = h.elements();
    m.iter()
        .all(|&a| h.contains(g.inv(a)) && m.iter().all(|&b| h.contains(g.mul(a, b))))
}

#[test]
fn psl2_order_formula() {
    for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        let s = Psl2::new(q).unwrap();
        let g = if q % 2 == 0 { 1 } else { 2 };
        assert_eq!(s.order(), q * (q * q - 1) / g, "q = {q}");
    }
}

#[test]
fn subgroup_masks_are_closed() {
    for g in small_groups() {
        for h in subgroups_of(g) {
            assert!(mask_closed(g, &h), "{}", g.name());
        }
    }
}

#[test]
fn quotient_projections_are_homomorphisms() {
    for g in small_groups() {
        for n in g
            .minimal_normal_subgroups()
            .iter()
            .chain([g.center(), g.derived_subgroup()].iter())
        {
            let q = g.quotient(n).unwrap();
            assert!(q.check_homomorphism(g), "{}", g.name());
            assert_eq!(q.group.order() * n.order(), g.order());
        }
    }
}

#[test]
fn psl2_automorphism_laws() {
    for q in [3usize, 4, 5, 7, 8, 9] {
        let s = Psl2::new(q).unwrap();
        let reps = s.outer_coset_reps();
        let forms: HashSet<(u32, u32)> = reps.iter().map(|a| (a.i, a.j)).collect();
        assert_eq!(forms.len(), reps.len(), "normal forms are distinct for q = {q}");
        for a in &reps {
            let fix = s.fixed_subgroup(a);
            let set: HashSet<_> = fix.iter().copied().collect();
            let g = s.to_group().unwrap();
            assert!(fix.iter().all(|&x| fix.iter().all(|&y| set.contains(&g.mul(x, y)))));
            assert_eq!(s.ad_image_size(a) * s.fixed_points(a), s.order(), "q = {q}");
            for b in &reps {
                let ab = a.compose(&s, b);
                for &x in s.elements() {
                    let lhs = s.index_of(ab.apply(&s, x));
                    assert_eq!(lhs, s.index_of(a.apply(&s, b.apply(&s, x))));
                }
            }
        }
        // distinct forms act differently
        for (k, a) in reps.iter().enumerate() {
            for b in &reps[k + 1..] {
                assert!(!a.same_map(&s, b));
            }
        }
    }
}

#[test]
fn variation_streams_have_no_duplicates() {
    for spec in ["comm", "engel2", "metab", "gamma:3", "[x1 x2 x1, x2']"] {
        let w = parse(spec).unwrap();
        let vs: Vec<_> = variations(&w, 1_000_000).unwrap().collect();
        let distinct: HashSet<Vec<u8>> = vs.iter().map(|v| v.labels.clone()).collect();
        assert_eq!(distinct.len(), vs.len(), "{spec}");
        let expected: BigUint = w.multiplicities().iter().map(|&m| bell(m)).product();
        assert_eq!(BigUint::from(vs.len()), expected, "{spec}");
    }
}

#[test]
fn parallel_and_single_threaded_counts_agree() {
    let g = named("sym:4").unwrap();
    let w = Word::metab();
    let cfg = EnumConfig::default();
    let par = word_distribution(&g, &w, &cfg).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| word_distribution(&g, &w, &cfg).unwrap());
    assert_eq!(par.counts, single.counts);
}

#[test]
fn operators_verify_on_every_context() {
    let cfg = EnumConfig::default();
    for g in small_groups().iter().filter(|g| g.is_solvable()) {
        for w in [Word::engel2(), Word::metab()] {
            let Ok(ctx) = reduce_to_minimal_verbal(g, &w, &cfg) else {
                continue;
            };
            let reps = ctx.reps().to_vec();
            let d = w.rank();
            // first and last representative in every coordinate
            for mask in 0..(1u32 << d) {
                let r: Vec<Elem> = (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            *reps.last().unwrap()
                        } else {
                            reps[0]
                        }
                    })
                    .collect();
                let ops = derive_operators(&ctx, &r).unwrap();
                assert_eq!(ops.operators.iter().all(|o| o.is_zero()), ctx.is_bad(&r));
            }
        }
    }
}

#[test]
fn vsmb_reports_are_deterministic_and_verified() {
    let cfg = VsmbConfig::default();
    let groups = vec!["psl2:3".to_string(), "sz:2".to_string()];
    let a = check_word(&Word::engel2(), &groups, &cfg).unwrap();
    let b = check_word(&Word::engel2(), &groups, &cfg).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.witnesses_verified);
    assert!(a.instances.iter().all(|i| i.witness_verified != Some(false)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_reduction_preserves_values(letters in arb_word(3, 10), gi in 0usize..1000, seed in any::<u64>()) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters.clone());
        let mut x = seed;
        let mut args = Vec::new();
        for _ in 0..3 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            args.push(Elem(((x >> 33) % g.order() as u64) as u32));
        }
        prop_assert_eq!(w.evaluate(g, &args), evaluate_raw(g, &letters, &args));
    }

    #[test]
    fn evaluation_commutes_with_projections(letters in arb_word(3, 8), gi in 0usize..1000, a in any::<[u32; 3]>()) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let args: Vec<Elem> = a.iter().map(|&x| Elem(x % g.order() as u32)).collect();
        for n in [g.center(), g.derived_subgroup()] {
            let q = g.quotient(&n).unwrap();
            let projected: Vec<Elem> = args.iter().map(|&x| q.project(x)).collect();
            prop_assert_eq!(q.project(w.evaluate(g, &args)), w.evaluate(&q.group, &projected));
        }
    }

    #[test]
    fn variations_collapse_to_the_base_word(letters in arb_word(2, 6), gi in 0usize..1000, a in any::<[u32; 2]>()) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        prop_assume!(w.rank() > 0);
        let args: Vec<Elem> = a.iter().take(w.rank()).map(|&x| Elem(x % g.order() as u32)).collect();
        let base = w.evaluate(g, &args);
        for v in variations(&w, 10_000).unwrap() {
            let spread: Vec<Elem> = v.origin().iter().map(|&o| args[o]).collect();
            prop_assert_eq!(v.induced().evaluate(g, &spread), base);
        }
    }

    #[test]
    fn distributions_sum_to_the_tuple_count(letters in arb_word(3, 8), gi in 0usize..1000) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let d = word_distribution(g, &w, &EnumConfig::default()).unwrap();
        let sum: u128 = d.counts.iter().sum();
        prop_assert_eq!(BigUint::from(sum), BigUint::from(g.order()).pow(w.rank() as u32));
    }

    #[test]
    fn strategies_agree(letters in arb_word(3, 8), gi in 0usize..1000) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let domains = vec![g.elements().collect::<Vec<_>>(); w.rank()];
        let a = distribution(g, &w, &domains, &EnumConfig::with_strategy(EnumStrategy::Exhaustive)).unwrap();
        let b = distribution(g, &w, &domains, &EnumConfig::with_strategy(EnumStrategy::Factored)).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn identity_iff_verbal_subgroup_trivial(letters in arb_word(3, 8), gi in 0usize..1000) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let cfg = EnumConfig::default();
        let p = word_probability(g, &w, Elem::IDENTITY, &cfg).unwrap();
        prop_assert_eq!(p.is_one(), verbal_subgroup(g, &w, &cfg).unwrap().is_trivial());
    }

    #[test]
    fn probabilities_do_not_drop_in_quotients(letters in arb_word(2, 8), gi in 0usize..1000, ti in any::<u32>()) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let target = Elem(ti % g.order() as u32);
        let cfg = EnumConfig::default();
        for n in g.minimal_normal_subgroups() {
            prop_assert!(reduction_check(g, &n, &w, target, &cfg).unwrap().holds);
        }
    }

    #[test]
    fn coset_decomposition_is_exact(letters in arb_word(2, 6), gi in 0usize..1000) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let w = Word::from_letters(letters);
        let cfg = EnumConfig::default();
        for n in [g.center(), g.derived_subgroup()] {
            prop_assert!(decomposition_check(g, &n, &w, &cfg).unwrap().holds);
        }
    }

    #[test]
    fn inner_twists_do_not_change_images(t in any::<[u32; 2]>(), tuple in any::<[usize; 2]>()) {
        let target = CosetTarget::psl2(3).unwrap();
        let n = target.group.order() as u32;
        let twist = [Elem(t[0] % n), Elem(t[1] % n)];
        let tuple: Vec<usize> = tuple.iter().map(|&k| target.choices[k % target.choices.len()]).collect();
        let r = inner_invariance_check(&target, &Word::comm(), &tuple, &twist, 0, 0).unwrap();
        prop_assert!(r.agrees && r.exhaustive);
    }

    #[test]
    fn axioms_hold_on_products(a in 0usize..1000, b in 0usize..1000) {
        let groups = small_groups();
        let (x, y) = (&groups[a % groups.len()], &groups[b % groups.len()]);
        prop_assume!(x.order() * y.order() <= 256);
        let p = FiniteGroup::direct_product(x, y).unwrap();
        prop_assert!(p.check_axioms().is_ok());
        prop_assert_eq!(p.order(), x.order() * y.order());
    }
}

#[test]
fn sampled_twist_agrees_on_psl2_9() {
    let target = CosetTarget::psl2(9).unwrap();
    let w = Word::metab();
    let tuple = vec![
        target.choices[3],
        target.choices[9],
        target.choices[1],
        target.choices[12],
    ];
    let twist = [Elem(17), Elem(101), Elem(5), Elem(240)];
    let r = inner_invariance_check(&target, &w, &tuple, &twist, 10_000, 5).unwrap();
    assert!(r.agrees && !r.exhaustive);
}

//! The metabelian word `[[X1, X2], [X3, X4]]`: bad representatives when `G'`
//! acts nontrivially on `V`, and the sets `S_{z,t}`, ugly pairs and their
//! primed variants when it acts trivially.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{fiber_bound_check, FiberSummary};
use super::{sum_over_tuples, tuple_space, Ratio, VerbalContext};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::prob::{word_probability, EnumConfig, ExactProbability};
use crate::word::Word;

/// `a ↦ [[a, y], c]` as a value table, with `c` usually `[z, t]`.
pub fn metab_phi(g: &FiniteGroup, y: Elem, c: Elem) -> Vec<Elem> {
    g.elements().map(|a| g.comm(g.comm(a, y), c)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NontrivialMetab {
    pub centralizer_order: usize,
    pub reps: usize,
    pub tuples: u64,
    pub bad: u64,
    pub ugly: u64,
    /// Every bad `(x, y, z, t)` has `y ∈ Y_{[z,t]}`.
    pub y_inclusion: bool,
    /// Each `Y_{[z,t]}` is a subgroup of `G/V`.
    pub y_closed: bool,
    /// `Y_{[z,t]}` is proper whenever `(z, t)` is not ugly.
    pub y_proper: bool,
    pub bad_ratio: Ratio,
    pub ugly_ratio: Ratio,
    /// Commuting probability of `G/C_G(V)`.
    pub quotient_commuting: ExactProbability,
    pub ugly_matches_commuting: bool,
    /// `1/2 + ugly_ratio/2`
    pub bad_bound: Ratio,
    /// `1/p + (1 - 1/p)·bad_ratio`
    pub bound: Ratio,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrivialMetab {
    /// `[G', G, G'] = 1`.
    pub nice: bool,
    /// Distinct values of `[z, t]`.
    pub commutator_values: usize,
    pub bad: u64,
    pub ugly: u64,
    /// Each `S_{z,t}` is a subgroup of `G`.
    pub s_closed: bool,
    /// `S_{z,t} = G` exactly when `[z, t] ∈ C_G(G')`.
    pub ugly_characterized: bool,
    pub quotient_commuting: ExactProbability,
    pub ugly_matches_commuting: bool,
    pub bad_within: bool,
    pub bad_prime: Option<u64>,
    pub ugly_prime: Option<u64>,
    pub bad_prime_within: Option<bool>,
    /// Checked when `|G| ≤ 256`.
    pub expansion_law: Option<bool>,
    /// `φ(gh) = φ(g)φ(h)` for `h ∈ G'`.
    pub restricted_claim: bool,
    pub fibers: FiberSummary,
    /// `(13/16)|G|^3`
    pub bad_limit: Ratio,
    /// `1/2 + |B|/(2|G|^3)` for the applicable bad set `B`.
    pub bound: Ratio,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum MetabBranch {
    NontrivialAction(NontrivialMetab),
    TrivialAction(TrivialMetab),
}

#[derive(Clone, Debug, Serialize)]
pub struct MetabBadness {
    pub group: String,
    pub order: usize,
    pub reduced_order: usize,
    pub p: u32,
    pub dim: usize,
    pub probability: ExactProbability,
    pub reduced_probability: ExactProbability,
    #[serde(flatten)]
    pub branch: MetabBranch,
    pub holds: bool,
}

pub fn metab_badness(ctx: &VerbalContext, cfg: &EnumConfig) -> Result<MetabBadness> {
    if ctx.word != Word::metab() {
        return Err(Error::contract("metab_badness needs the metabelian word"));
    }
    let probability = word_probability(&ctx.original, &ctx.word, Elem::IDENTITY, cfg)?;
    let reduced_probability = word_probability(&ctx.group, &ctx.word, Elem::IDENTITY, cfg)?;
    let c = ctx.centralizer();
    let derived = ctx.group.derived_subgroup();
    let (branch, bound, ok) = if derived.is_subset_of(&c) {
        let b = trivial(ctx, &derived, cfg)?;
        let ok = b.s_closed
            && b.ugly_characterized
            && b.ugly_matches_commuting
            && b.bad_within
            && b.bad_prime_within != Some(false)
            && b.expansion_law != Some(false)
            && b.restricted_claim
            && b.fibers.all_held();
        let bound = b.bound.clone();
        (MetabBranch::TrivialAction(b), bound, ok)
    } else {
        let b = nontrivial(ctx, &c, cfg)?;
        let five_eighths = Ratio::new(5u32, 8u32);
        let ok = b.y_inclusion
            && b.y_closed
            && b.y_proper
            && b.ugly_matches_commuting
            && b.bad_ratio <= b.bad_bound
            && b.ugly_ratio <= five_eighths;
        let bound = b.bound.clone();
        (MetabBranch::NontrivialAction(b), bound, ok)
    };
    let holds = ok && probability.ratio() <= reduced_probability.ratio() && reduced_probability.ratio() <= bound.0;
    Ok(MetabBadness {
        group: ctx.original.name().to_string(),
        order: ctx.original.order(),
        reduced_order: ctx.group.order(),
        p: ctx.p,
        dim: ctx.dim,
        probability,
        reduced_probability,
        branch,
        holds,
    })
}

fn commuting_probability(g: &FiniteGroup, n: &Subgroup, cfg: &EnumConfig) -> Result<ExactProbability> {
    let q = g.quotient(n)?;
    word_probability(&q.group, &Word::comm(), Elem::IDENTITY, cfg)
}

fn nontrivial(ctx: &VerbalContext, c: &Subgroup, cfg: &EnumConfig) -> Result<NontrivialMetab> {
    let g = &ctx.group;
    let reps = ctx.reps();
    let v = ctx.verbal.elements();
    let tuples = tuple_space(reps.len(), 4, cfg.budget)?;
    let mut rep_index = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        rep_index[r.index()] = i;
    }
    // Y_c over representatives, for every commutator of two representatives.
    let mut ys: BTreeMap<Elem, Vec<bool>> = BTreeMap::new();
    let mut ugly = 0u64;
    for &z in reps {
        for &t in reps {
            let k = g.comm(z, t);
            ugly += c.contains(k) as u64;
            ys.entry(k).or_insert_with(|| {
                reps.iter()
                    .map(|&y| v.iter().all(|&a| g.comm(g.comm(a, y), k).is_identity()))
                    .collect()
            });
        }
    }
    let mv = &ctx.modv;
    let y_closed = ys.values().all(|mask| {
        let cosets: Vec<Elem> = reps
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(&y, _)| mv.project(y))
            .collect();
        let mut member = vec![false; mv.group.order()];
        for &x in &cosets {
            member[x.index()] = true;
        }
        cosets
            .iter()
            .all(|&a| cosets.iter().all(|&b| member[mv.group.mul(a, b).index()]))
    });
    let y_proper = ys.iter().all(|(k, mask)| c.contains(*k) || mask.iter().any(|&m| !m));
    let counts: Vec<u64> = [false, true]
        .iter()
        .map(|&violations| {
            sum_over_tuples(reps, 4, |r| {
                if !ctx.is_bad(r) {
                    return 0;
                }
                if !violations {
                    return 1;
                }
                let k = g.comm(r[2], r[3]);
                !ys[&k][rep_index[r[1].index()]] as u64
            })
        })
        .collect();
    let bad = counts[0];
    let pairs = (reps.len() * reps.len()) as u64;
    let bad_ratio = Ratio::new(bad, tuples);
    let ugly_ratio = Ratio::new(ugly, pairs);
    let quotient_commuting = commuting_probability(g, c, cfg)?;
    let pr = BigRational::new(1.into(), BigInt::from(ctx.p));
    Ok(NontrivialMetab {
        centralizer_order: c.order(),
        reps: reps.len(),
        tuples,
        bad,
        ugly,
        y_inclusion: counts[1] == 0,
        y_closed,
        y_proper,
        ugly_matches_commuting: quotient_commuting.ratio() == ugly_ratio.0,
        quotient_commuting,
        bad_bound: Ratio::half_plus_half(&ugly_ratio),
        bound: Ratio(&pr + (BigRational::from_integer(1.into()) - &pr) * &bad_ratio.0),
        bad_ratio,
        ugly_ratio,
    })
}

/// Largest order for which the expansion law is checked over all pairs.
const EXPANSION_LIMIT: usize = 256;

fn trivial(ctx: &VerbalContext, derived: &Subgroup, cfg: &EnumConfig) -> Result<TrivialMetab> {
    let g = &ctx.group;
    let n = g.order();
    let whole = g.whole();
    let gg = g.commutator_subgroup(derived, &whole);
    let nice = g.commutator_subgroup(&gg, derived).is_trivial();
    let c_derived = g.centralizer(&derived.elements());
    let c_gg = g.centralizer(&gg.elements());
    let mut mult: BTreeMap<Elem, u64> = BTreeMap::new();
    for z in g.elements() {
        for t in g.elements() {
            *mult.entry(g.comm(z, t)).or_default() += 1;
        }
    }
    let values: Vec<Elem> = mult.keys().copied().collect();
    let ds = derived.elements();
    struct PerC {
        s: Subgroup,
        s_prime: Subgroup,
        law: Option<bool>,
        restricted: bool,
        fibers: FiberSummary,
    }
    let per_c: Vec<PerC> = values
        .par_iter()
        .map(|&k| {
            let phis: Vec<Vec<Elem>> = g.elements().map(|y| metab_phi(g, y, k)).collect();
            let s = Subgroup::from_mask(phis.iter().map(|p| p.iter().all(|x| x.is_identity())).collect());
            let s_prime = Subgroup::from_mask(
                phis.iter()
                    .map(|p| ds.iter().all(|h| p[h.index()].is_identity()))
                    .collect(),
            );
            let law = (n <= EXPANSION_LIMIT).then(|| {
                g.elements().zip(&phis).all(|(y, phi)| {
                    g.elements().all(|a| {
                        let ay = g.comm(a, y);
                        g.elements().all(|b| {
                            let extra = g.comm(g.comm(ay, b), k);
                            phi[g.mul(a, b).index()] == g.mul(g.mul(phi[a.index()], phi[b.index()]), extra)
                        })
                    })
                })
            });
            let restricted = phis.iter().all(|phi| {
                g.elements().all(|a| {
                    ds.iter()
                        .all(|&h| phi[g.mul(a, h).index()] == g.mul(phi[a.index()], phi[h.index()]))
                })
            });
            let mut fibers = FiberSummary::default();
            for (y, phi) in g.elements().zip(&phis) {
                if nice && !s.contains(y) {
                    fibers.record(&fiber_bound_check(g, phi, &whole));
                } else if !nice && !s_prime.contains(y) {
                    fibers.record(&fiber_bound_check(g, phi, derived));
                }
            }
            PerC {
                s,
                s_prime,
                law,
                restricted,
                fibers,
            }
        })
        .collect();
    let mut bad = 0u64;
    let mut ugly = 0u64;
    let mut bad_prime = 0u64;
    let mut ugly_prime = 0u64;
    let mut s_closed = true;
    let mut ugly_characterized = true;
    let mut fibers = FiberSummary::default();
    for (k, pc) in values.iter().zip(&per_c) {
        let m = mult[k];
        bad += m * pc.s.order() as u64;
        bad_prime += m * pc.s_prime.order() as u64;
        ugly += if c_derived.contains(*k) { m } else { 0 };
        ugly_prime += if c_gg.contains(*k) { m } else { 0 };
        s_closed &= g.is_closed(&pc.s) && g.is_closed(&pc.s_prime);
        ugly_characterized &= pc.s.is_whole() == c_derived.contains(*k);
        fibers.checked += pc.fibers.checked;
        fibers.held += pc.fibers.held;
        fibers.violated += pc.fibers.violated;
        fibers.hypothesis_failed += pc.fibers.hypothesis_failed;
        fibers.max_fiber = fibers.max_fiber.max(pc.fibers.max_fiber);
    }
    let cube = (n as u64).pow(3);
    let within = |b: u64| 16 * b as u128 <= 13 * cube as u128;
    let quotient_commuting = commuting_probability(g, &c_derived, cfg)?;
    let ugly_ratio = Ratio::new(ugly, (n * n) as u64);
    let counted = if nice { bad } else { bad_prime };
    Ok(TrivialMetab {
        nice,
        commutator_values: values.len(),
        bad,
        ugly,
        s_closed,
        ugly_characterized,
        ugly_matches_commuting: quotient_commuting.ratio() == ugly_ratio.0,
        quotient_commuting,
        bad_within: within(bad),
        bad_prime: (!nice).then_some(bad_prime),
        ugly_prime: (!nice).then_some(ugly_prime),
        bad_prime_within: (!nice).then_some(within(bad_prime)),
        expansion_law: per_c
            .iter()
            .map(|p| p.law)
            .collect::<Option<Vec<bool>>>()
            .map(|v| v.iter().all(|&x| x)),
        restricted_claim: per_c.iter().all(|p| p.restricted),
        fibers,
        bad_limit: Ratio(BigRational::new(BigInt::from(13u64 * cube), BigInt::from(16))),
        bound: Ratio::half_plus_half(&Ratio::new(counted, BigUint::from(cube))),
    })
}

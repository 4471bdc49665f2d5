//! The 2-Engel word `[X1, X2, X2]`: the map `φ_y(a) = [a, y, y]`, bad
//! representatives under a nontrivial action on `V`, and the two kinds of
//! bad elements when `V` is central.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{fiber_bound_check, FiberSummary};
use super::{sum_over_tuples, tuple_space, Ratio, VerbalContext};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::prob::{word_probability, EnumConfig, ExactProbability};
use crate::word::Word;

/// `a ↦ [a, y, y]` as a value table.
#[derive(Clone, Debug)]
pub struct EngelPhi {
    pub y: Elem,
    pub values: Vec<Elem>,
}

pub fn engel_phi(g: &FiniteGroup, y: Elem) -> EngelPhi {
    EngelPhi {
        y,
        values: g.elements().map(|a| g.comm(g.comm(a, y), y)).collect(),
    }
}

impl EngelPhi {
    pub fn value(&self, a: Elem) -> Elem {
        self.values[a.index()]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|x| x.is_identity())
    }

    pub fn is_trivial_on(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|&x| self.value(x).is_identity())
    }

    /// `φ_y(ab) = φ_y(a)·φ_y(b)·[a, y, b, y]` for all `a, b`.
    pub fn check_expansion(&self, g: &FiniteGroup) -> Result<()> {
        for a in g.elements() {
            let ay = g.comm(a, self.y);
            for b in g.elements() {
                let extra = g.comm(g.comm(ay, b), self.y);
                let rhs = g.mul(g.mul(self.value(a), self.value(b)), extra);
                if self.value(g.mul(a, b)) != rhs {
                    return Err(Error::consistency(format!(
                        "2-Engel expansion law fails in {} at y = {}, a = {a}, b = {b}",
                        g.name(),
                        self.y
                    )));
                }
            }
        }
        Ok(())
    }

    /// `φ_y(gh) = φ_y(g)·φ_y(h)` for all `g ∈ G`, `h ∈ H`.
    pub fn multiplicative_on(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        let hs = h.elements();
        g.elements().all(|a| {
            hs.iter()
                .all(|&b| self.value(g.mul(a, b)) == g.mul(self.value(a), self.value(b)))
        })
    }
}

/// Whether `y` acts quadratically on `V` and whether `y^p` then centralizes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticAction {
    pub quadratic: bool,
    pub power_centralizes: bool,
}

pub fn acts_quadratically(ctx: &VerbalContext, y: Elem) -> QuadraticAction {
    let g = &ctx.group;
    let v = ctx.verbal.elements();
    let yp = g.pow(y, ctx.p as i64);
    QuadraticAction {
        quadratic: v.iter().all(|&a| g.comm(g.comm(a, y), y).is_identity()),
        power_centralizes: v.iter().all(|&a| g.comm(a, yp).is_identity()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NontrivialEngel {
    pub centralizer_order: usize,
    pub reps: usize,
    pub pairs: u64,
    pub bad: u64,
    /// Every bad `(x, y)` has `y^p ∈ C_G(V)`.
    pub quadratic_inclusion: bool,
    /// Preimage of the Sylow `p`-subgroup of `G/C_G(V)`.
    pub sylow_order: usize,
    pub sylow_is_subgroup: bool,
    /// Every bad `(x, y)` has `y` in that preimage.
    pub sylow_inclusion: bool,
    pub sylow_index: usize,
    pub bad_ratio: Ratio,
    /// `1/|G : P|`
    pub sylow_bound: Ratio,
    /// `1/p + (1 - 1/p)·bad_ratio`
    pub bound: Ratio,
}

#[derive(Clone, Debug, Serialize)]
pub struct P3Claim {
    /// `[G, y, G, y] = 1` for all `y`.
    pub nice: bool,
    /// `[G', y, y] = 1` for all `y`.
    pub derived_quadratic: bool,
    pub equivalent: bool,
    /// `γ_3(G) ≤ V`, required when `nice`.
    pub gamma3_in_verbal: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralEngel {
    pub p_group: bool,
    /// `[G, y, G, y] = 1` for all `y`.
    pub all_nice: bool,
    pub expansion_law: bool,
    /// `φ_y(gh) = φ_y(g)φ_y(h)` for all `y`, `g` and `h ∈ G'`.
    pub restricted_claim: bool,
    pub claim: Option<P3Claim>,
    /// `|{y : φ_y ≡ 1}|`
    pub bad: u64,
    pub bad_limit: Ratio,
    pub bad_within: bool,
    /// `|{y : φ_y(G') = 1}|`, when some `y` is not nice.
    pub bad_prime: Option<u64>,
    pub bad_prime_within: Option<bool>,
    pub fibers: FiberSummary,
    /// `1/2 + |B|/(2|G|)` for the applicable bad set `B`.
    pub bound: Ratio,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum EngelBranch {
    NontrivialAction(NontrivialEngel),
    CentralVerbal(CentralEngel),
}

#[derive(Clone, Debug, Serialize)]
pub struct EngelBadness {
    pub group: String,
    pub order: usize,
    pub reduced_order: usize,
    pub p: u32,
    pub dim: usize,
    pub probability: ExactProbability,
    pub reduced_probability: ExactProbability,
    #[serde(flatten)]
    pub branch: EngelBranch,
    pub holds: bool,
}

/// Runs the branch matching the action of `G` on `V`.
pub fn engel_badness(ctx: &VerbalContext, cfg: &EnumConfig) -> Result<EngelBadness> {
    if ctx.word != Word::engel2() {
        return Err(Error::contract("engel_badness needs the 2-Engel word"));
    }
    let probability = word_probability(&ctx.original, &ctx.word, Elem::IDENTITY, cfg)?;
    let reduced_probability = word_probability(&ctx.group, &ctx.word, Elem::IDENTITY, cfg)?;
    let c = ctx.centralizer();
    let (branch, bound, ok) = if c.is_whole() {
        let b = central(ctx)?;
        let ok = b.p_group
            && b.expansion_law
            && b.restricted_claim
            && b.claim.as_ref().is_none_or(|c| c.holds)
            && b.bad_within
            && b.bad_prime_within != Some(false)
            && b.fibers.all_held();
        let bound = b.bound.clone();
        (EngelBranch::CentralVerbal(b), bound, ok)
    } else {
        let b = nontrivial(ctx, &c, cfg)?;
        let ok = b.quadratic_inclusion
            && b.sylow_is_subgroup
            && b.sylow_inclusion
            && b.bad_ratio <= b.sylow_bound
            && b.sylow_index >= 2;
        let bound = b.bound.clone();
        (EngelBranch::NontrivialAction(b), bound, ok)
    };
    let holds = ok && probability.ratio() <= reduced_probability.ratio() && reduced_probability.ratio() <= bound.0;
    Ok(EngelBadness {
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

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn nontrivial(ctx: &VerbalContext, c: &Subgroup, cfg: &EnumConfig) -> Result<NontrivialEngel> {
    let g = &ctx.group;
    let p = ctx.p as usize;
    let q = g.quotient(c)?;
    let sylow_mask: Vec<bool> = q
        .group
        .elements()
        .map(|x| is_power_of(q.group.element_order(x), p))
        .collect();
    let sylow_q = Subgroup::from_mask(sylow_mask);
    let sylow_is_subgroup = q.group.is_closed(&sylow_q);
    let sylow = q.preimage(&sylow_q);
    let reps = ctx.reps();
    let pairs = tuple_space(reps.len(), 2, cfg.budget)?;
    let counts: Vec<u64> = [0u8, 1, 2]
        .iter()
        .map(|&kind| {
            sum_over_tuples(reps, 2, |r| {
                if !ctx.is_bad(r) {
                    return 0;
                }
                match kind {
                    0 => 1,
                    1 => !c.contains(g.pow(r[1], p as i64)) as u64,
                    _ => !sylow.contains(r[1]) as u64,
                }
            })
        })
        .collect();
    let bad = counts[0];
    let sylow_index = g.order() / sylow.order();
    let bad_ratio = Ratio::new(bad, pairs);
    let pr = BigRational::new(1.into(), BigInt::from(ctx.p));
    let bound = Ratio(&pr + (BigRational::from_integer(1.into()) - &pr) * &bad_ratio.0);
    Ok(NontrivialEngel {
        centralizer_order: c.order(),
        reps: reps.len(),
        pairs,
        bad,
        quadratic_inclusion: counts[1] == 0,
        sylow_order: sylow.order(),
        sylow_is_subgroup,
        sylow_inclusion: counts[2] == 0,
        sylow_index,
        bad_ratio,
        sylow_bound: Ratio::new(1u32, sylow_index),
        bound,
    })
}

struct PerY {
    phi: EngelPhi,
    nice: bool,
    law: bool,
}

fn central(ctx: &VerbalContext) -> Result<CentralEngel> {
    let g = &ctx.group;
    let n = g.order();
    let derived = g.derived_subgroup();
    let per_y: Vec<PerY> = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&y| {
            let phi = engel_phi(g, y);
            let mut nice = true;
            let mut law = true;
            for a in g.elements() {
                let ay = g.comm(a, y);
                for b in g.elements() {
                    let extra = g.comm(g.comm(ay, b), y);
                    nice &= extra.is_identity();
                    law &= phi.value(g.mul(a, b)) == g.mul(g.mul(phi.value(a), phi.value(b)), extra);
                }
            }
            PerY { phi, nice, law }
        })
        .collect();
    let all_nice = per_y.iter().all(|s| s.nice);
    let expansion_law = per_y.iter().all(|s| s.law);
    let restricted_claim = per_y.par_iter().all(|s| s.phi.multiplicative_on(g, &derived));
    let claim = (ctx.p == 3).then(|| {
        let derived_quadratic = per_y.iter().all(|s| s.phi.is_trivial_on(&derived));
        let gamma3 = g
            .lower_central_series()
            .get(2)
            .cloned()
            .unwrap_or_else(|| g.trivial_subgroup());
        let gamma3_in_verbal = gamma3.is_subset_of(&ctx.verbal);
        let equivalent = all_nice == derived_quadratic;
        P3Claim {
            nice: all_nice,
            derived_quadratic,
            equivalent,
            gamma3_in_verbal,
            holds: equivalent && (!all_nice || gamma3_in_verbal),
        }
    });
    let bad = per_y.iter().filter(|s| s.phi.is_trivial()).count() as u64;
    let (limit_num, limit_den) = if ctx.p == 2 { (n, 2) } else { (2 * n, 3) };
    let bad_limit = Ratio::new(limit_num, limit_den);
    let bad_within = bad as usize * limit_den <= limit_num;
    let mut fibers = FiberSummary::default();
    let (bad_prime, bad_prime_within, counted) = if all_nice {
        for s in per_y.iter().filter(|s| !s.phi.is_trivial()) {
            fibers.record(&fiber_bound_check(g, &s.phi.values, &g.whole()));
        }
        (None, None, bad)
    } else {
        let bp = per_y.iter().filter(|s| s.phi.is_trivial_on(&derived)).count() as u64;
        for s in per_y.iter().filter(|s| !s.phi.is_trivial_on(&derived)) {
            fibers.record(&fiber_bound_check(g, &s.phi.values, &derived));
        }
        (Some(bp), Some(3 * bp as usize <= 2 * n), bp)
    };
    Ok(CentralEngel {
        p_group: is_power_of(n, ctx.p as usize),
        all_nice,
        expansion_law,
        restricted_claim,
        claim,
        bad,
        bad_limit,
        bad_within,
        bad_prime,
        bad_prime_within,
        fibers,
        bound: Ratio::half_plus_half(&Ratio::new(counted, n)),
    })
}

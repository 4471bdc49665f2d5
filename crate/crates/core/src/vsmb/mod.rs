//! Non-constancy of varied coset word maps on small simple groups, decided
//! by seeded witness search with an exhaustive fallback.

mod target;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use target::{aut_label, AutGroup, CosetMap, CosetTarget, Scope};

use crate::error::{Error, Result};
use crate::group::{Automorphism, Elem};
use crate::prob::advance;
use crate::word::{variations, vsmb_prune, Variation, Word};

/// Default per-instance evaluation budget.
pub const DEFAULT_INSTANCE_BUDGET: u128 = 10_000_000;

/// Random draws tried before an affordable exhaustive sweep.
const PHASE_ONE_DRAWS: u128 = 256;

/// Default groups for a word check.
pub const DEFAULT_GROUPS: [&str; 4] = ["psl2:2", "sz:2", "psl2:3", "psl2:9"];

#[derive(Clone, Debug)]
pub struct VsmbConfig {
    /// Evaluations allowed per instance.
    pub budget: u128,
    pub seed: u64,
    /// Use every canonical variation instead of the reduced set.
    pub full_stream: bool,
    /// Largest variation stream accepted.
    pub variation_budget: u128,
}

impl Default for VsmbConfig {
    fn default() -> Self {
        VsmbConfig {
            budget: DEFAULT_INSTANCE_BUDGET,
            seed: 0,
            full_stream: false,
            variation_budget: 1_000_000,
        }
    }
}

/// Two argument tuples with distinct values of the coset map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub base_args: Vec<Elem>,
    pub base_value: Elem,
    pub args: Vec<Elem>,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstancyVerdict {
    NonConstant {
        witness: Witness,
    },
    /// Only produced by a full sweep.
    Constant {
        value: Elem,
        method: &'static str,
    },
    Unknown {
        budget_spent: u128,
    },
}

impl ConstancyVerdict {
    pub fn is_non_constant(&self) -> bool {
        matches!(self, ConstancyVerdict::NonConstant { .. })
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, ConstancyVerdict::Constant { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ConstancyVerdict::Unknown { .. })
    }
}

/// One coset map: a word over the target with one automorphism per variable.
#[derive(Clone, Debug)]
pub struct CosetMapInstance<'a> {
    pub target: &'a CosetTarget,
    pub variation_id: usize,
    pub word: Word,
    /// Indices into the target's automorphism group.
    pub tuple: Vec<usize>,
}

impl CosetMapInstance<'_> {
    fn map(&self) -> CosetMap<'_> {
        CosetMap::new(&self.target.group, &self.target.auts, &self.word, &self.tuple)
    }

    /// Stable across runs and platforms.
    fn hash(&self, seed: u64) -> u64 {
        let mut h = Fnv::new();
        h.write(self.target.name.as_bytes());
        h.write(&(self.variation_id as u64).to_le_bytes());
        h.write(self.word.to_string().as_bytes());
        for &a in &self.tuple {
            h.write(&(a as u64).to_le_bytes());
        }
        h.write(&seed.to_le_bytes());
        h.finish()
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

/// Verdict plus the number of map evaluations spent.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceOutcome {
    pub verdict: ConstancyVerdict,
    pub evals_used: u128,
}

/// Random search against the value at the identity tuple, then a full sweep
/// when `|S|^d` fits in the budget.
pub fn check_instance(inst: &CosetMapInstance<'_>, budget: u128, seed: u64) -> Result<InstanceOutcome> {
    if budget < 2 {
        return Err(Error::contract("instance budget must be at least 2"));
    }
    let map = inst.map();
    let d = map.rank();
    let order = inst.target.group.order();
    let base_args = vec![Elem::IDENTITY; d];
    let base_value = map.value(&base_args);
    let mut evals: u128 = 1;
    let witness = |args: Vec<Elem>, value: Elem| ConstancyVerdict::NonConstant {
        witness: Witness {
            base_args: base_args.clone(),
            base_value,
            args,
            value,
        },
    };
    let space = (order as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let sweep = space <= budget;
    let draws = if sweep {
        PHASE_ONE_DRAWS.min(budget - 1)
    } else {
        budget - 1
    };
    let mut rng = ChaCha8Rng::seed_from_u64(inst.hash(seed));
    let mut args = vec![Elem::IDENTITY; d];
    for _ in 0..draws {
        for a in args.iter_mut() {
            *a = Elem(rng.gen_range(0..order as u32));
        }
        evals += 1;
        let v = map.value(&args);
        if v != base_value {
            return Ok(InstanceOutcome {
                verdict: witness(args, v),
                evals_used: evals,
            });
        }
    }
    if !sweep {
        return Ok(InstanceOutcome {
            verdict: ConstancyVerdict::Unknown { budget_spent: evals },
            evals_used: evals,
        });
    }
    let mut idx = vec![0usize; d];
    loop {
        let args: Vec<Elem> = idx.iter().map(|&i| Elem(i as u32)).collect();
        evals += 1;
        let v = map.value(&args);
        if v != base_value {
            return Ok(InstanceOutcome {
                verdict: witness(args, v),
                evals_used: evals,
            });
        }
        if !advance(&mut idx, order) {
            break;
        }
    }
    Ok(InstanceOutcome {
        verdict: ConstancyVerdict::Constant {
            value: base_value,
            method: "exhaustive",
        },
        evals_used: evals,
    })
}

/// Re-evaluates both witness tuples from scratch and checks the values
/// differ and match the recorded ones.
pub fn verify_witness(inst: &CosetMapInstance<'_>, w: &Witness) -> bool {
    let map = inst.map();
    let d = map.rank();
    if w.base_args.len() != d || w.args.len() != d {
        return false;
    }
    let a = map.value(&w.base_args);
    let b = map.value(&w.args);
    a == w.base_value && b == w.value && a != b
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub group: String,
    pub variation_id: usize,
    pub variation: String,
    pub tuple: Vec<String>,
    /// Whether the reduction argument for this group needs this instance.
    pub required: bool,
    pub verdict: ConstancyVerdict,
    pub evals_used: u128,
    /// Witness re-evaluated after the search; null for other verdicts.
    pub witness_verified: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub order: usize,
    pub variations_checked: usize,
    pub variations_pruned: usize,
    pub instances: usize,
    pub non_constant: usize,
    pub constant: usize,
    pub unknown: usize,
    pub required_constant: usize,
    pub required_unknown: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VsmbReport {
    pub word: String,
    pub stream: &'static str,
    pub seed: u64,
    pub budget: u128,
    pub groups: Vec<GroupSummary>,
    pub constant: usize,
    pub unknown: usize,
    /// Every instance non-constant and none unknown.
    pub supported: bool,
    /// The same restricted to required instances.
    pub required_supported: bool,
    pub witnesses_verified: bool,
    pub instances: Vec<InstanceReport>,
}

/// Variations of `w` to check: the identity only for the metabelian word;
/// for the 2-Engel word the unvaried first variable with the second split
/// into at most two blocks; otherwise (or with `full_stream`) all of them.
pub fn variation_set(w: &Word, cfg: &VsmbConfig) -> Result<Vec<Variation>> {
    let stream = variations(w, cfg.variation_budget)?;
    if cfg.full_stream {
        return Ok(stream.collect());
    }
    if *w == Word::metab() {
        return Ok(vec![Variation::identity(w)]);
    }
    if *w == Word::engel2() {
        return Ok(stream.filter(|v| v.blocks[0] == 1 && v.blocks[1] <= 2).collect());
    }
    Ok(stream.collect())
}

fn is_prime_field(target: &CosetTarget) -> bool {
    target.psl2.as_ref().is_some_and(|s| s.field().n() == 1)
}

fn required(target: &CosetTarget, variation: &Variation, tuple: &[usize]) -> bool {
    match target.scope {
        Scope::BaseOnly => tuple.iter().all(|&a| a == 0),
        Scope::Variations => is_prime_field(target) || variation.is_identity(),
    }
}

/// Checks every surviving variation of `w` against every automorphism tuple
/// on each group.
pub fn check_word(w: &Word, groups: &[String], cfg: &VsmbConfig) -> Result<VsmbReport> {
    let targets = groups
        .iter()
        .map(|g| CosetTarget::from_spec(g))
        .collect::<Result<Vec<_>>>()?;
    check_word_on(w, &targets, cfg)
}

pub fn check_word_on(w: &Word, targets: &[CosetTarget], cfg: &VsmbConfig) -> Result<VsmbReport> {
    let all_variations = variation_set(w, cfg)?;
    let mut summaries = Vec::new();
    let mut instances = Vec::new();
    for target in targets {
        let mut summary = GroupSummary {
            group: target.name.clone(),
            order: target.group.order(),
            ..Default::default()
        };
        let mut jobs = Vec::new();
        for v in &all_variations {
            if target.scope == Scope::BaseOnly && !v.is_identity() {
                continue;
            }
            if !v.is_identity() && vsmb_prune(v.induced()).is_certified() {
                summary.variations_pruned += 1;
                continue;
            }
            summary.variations_checked += 1;
            let d = v.induced().rank();
            let k = target.choices.len();
            let mut idx = vec![0usize; d];
            loop {
                let tuple: Vec<usize> = idx.iter().map(|&i| target.choices[i]).collect();
                jobs.push((v, tuple));
                if !advance(&mut idx, k) {
                    break;
                }
            }
        }
        let results: Vec<InstanceReport> = jobs
            .par_iter()
            .map(|(v, tuple)| {
                let inst = CosetMapInstance {
                    target,
                    variation_id: v.id,
                    word: v.induced().clone(),
                    tuple: tuple.clone(),
                };
                let out = check_instance(&inst, cfg.budget, cfg.seed)?;
                let witness_verified = match &out.verdict {
                    ConstancyVerdict::NonConstant { witness } => Some(verify_witness(&inst, witness)),
                    _ => None,
                };
                Ok(InstanceReport {
                    group: target.name.clone(),
                    variation_id: v.id,
                    variation: v.induced().to_string(),
                    tuple: tuple.iter().map(|&a| target.auts.label(a).to_string()).collect(),
                    required: required(target, v, tuple),
                    verdict: out.verdict,
                    evals_used: out.evals_used,
                    witness_verified,
                })
            })
            .collect::<Result<_>>()?;
        for r in &results {
            summary.instances += 1;
            match r.verdict {
                ConstancyVerdict::NonConstant { .. } => summary.non_constant += 1,
                ConstancyVerdict::Constant { .. } => {
                    summary.constant += 1;
                    summary.required_constant += r.required as usize;
                }
                ConstancyVerdict::Unknown { .. } => {
                    summary.unknown += 1;
                    summary.required_unknown += r.required as usize;
                }
            }
        }
        summaries.push(summary);
        instances.extend(results);
    }
    let constant = summaries.iter().map(|s| s.constant).sum();
    let unknown = summaries.iter().map(|s| s.unknown).sum();
    let required_bad: usize = summaries.iter().map(|s| s.required_constant + s.required_unknown).sum();
    Ok(VsmbReport {
        word: w.to_string(),
        stream: if cfg.full_stream { "full" } else { "restricted" },
        seed: cfg.seed,
        budget: cfg.budget,
        supported: constant == 0 && unknown == 0,
        required_supported: required_bad == 0,
        witnesses_verified: instances.iter().all(|r| r.witness_verified != Some(false)),
        groups: summaries,
        constant,
        unknown,
        instances,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceCheck {
    pub agrees: bool,
    pub exhaustive: bool,
    pub points: u64,
}

/// Largest argument space compared exhaustively by [`inner_invariance_check`].
pub const INVARIANCE_EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// Twists each tuple entry `g_i` to `inn(t_i) ∘ g_i` and evaluates the new
/// coset map by composing automorphism tables directly. Small argument
/// spaces compare image sets; larger ones compare the twisted map at `s`
/// with the original at `s·t` on `samples` seeded points.
pub fn inner_invariance_check(
    target: &CosetTarget,
    w: &Word,
    tuple: &[usize],
    twist: &[Elem],
    samples: u64,
    seed: u64,
) -> Result<InvarianceCheck> {
    let d = w.rank();
    if tuple.len() != d || twist.len() != d {
        return Err(Error::contract("tuple and twist must have one entry per variable"));
    }
    let g = &target.group;
    let map = CosetMap::new(g, &target.auts, w, tuple);
    let aut_part = target.auts.table(map.aut_part());
    let original = |s: &[Elem]| g.inner_automorphism(map.value(s)).compose(aut_part);
    let twisted_parts: Vec<Automorphism> = tuple
        .iter()
        .zip(twist)
        .map(|(&a, &t)| g.inner_automorphism(t).compose(target.auts.table(a)))
        .collect();
    let twisted = |s: &[Elem]| evaluate_in_aut(g, w, s, &twisted_parts);
    let space = (g.order() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if space <= INVARIANCE_EXHAUSTIVE_LIMIT {
        let mut a = HashSet::new();
        let mut b = HashSet::new();
        let mut idx = vec![0usize; d];
        loop {
            let s: Vec<Elem> = idx.iter().map(|&i| Elem(i as u32)).collect();
            a.insert(original(&s));
            b.insert(twisted(&s));
            if !advance(&mut idx, g.order()) {
                break;
            }
        }
        return Ok(InvarianceCheck {
            agrees: a == b,
            exhaustive: true,
            points: space as u64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agrees = true;
    for _ in 0..samples {
        let s: Vec<Elem> = (0..d).map(|_| Elem(rng.gen_range(0..g.order() as u32))).collect();
        let shifted: Vec<Elem> = s.iter().zip(twist).map(|(&x, &t)| g.mul(x, t)).collect();
        if twisted(&s) != original(&shifted) {
            agrees = false;
            break;
        }
    }
    Ok(InvarianceCheck {
        agrees,
        exhaustive: false,
        points: samples,
    })
}

/// `w(inn(s_1) ∘ h_1, ..., inn(s_d) ∘ h_d)` in `Aut(S)`, multiplying by
/// composition.
fn evaluate_in_aut(g: &crate::group::FiniteGroup, w: &Word, s: &[Elem], parts: &[Automorphism]) -> Automorphism {
    let args: Vec<Automorphism> = s
        .iter()
        .zip(parts)
        .map(|(&x, h)| g.inner_automorphism(x).compose(h))
        .collect();
    let inverses: Vec<Automorphism> = args.iter().map(Automorphism::inverse).collect();
    let mut acc = Automorphism::identity(g.order());
    for l in w.letters() {
        let f = if l.inv { &inverses[l.var] } else { &args[l.var] };
        acc = acc.compose(f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn engel_is_non_constant_on_small_groups() {
        let r = check_word(&Word::engel2(), &names(&["psl2:2", "sz:2"]), &VsmbConfig::default()).unwrap();
        let base: Vec<_> = r.instances.iter().filter(|i| i.required).collect();
        assert_eq!(base.len(), 2);
        assert!(base.iter().all(|i| i.verdict.is_non_constant()));
        assert!(r.witnesses_verified);
    }

    #[test]
    fn empty_word_is_constant() {
        let t = CosetTarget::from_spec("psl2:3").unwrap();
        let inst = CosetMapInstance {
            target: &t,
            variation_id: 0,
            word: Word::empty(),
            tuple: vec![],
        };
        let out = check_instance(&inst, 100, 1).unwrap();
        assert!(out.verdict.is_constant());
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = VsmbConfig::default();
        let a = check_word(&Word::engel2(), &names(&["psl2:3"]), &cfg).unwrap();
        let b = check_word(&Word::engel2(), &names(&["psl2:3"]), &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn restricted_engel_stream_has_thirty_two() {
        let vs = variation_set(&Word::engel2(), &VsmbConfig::default()).unwrap();
        assert_eq!(vs.len(), 32);
        assert!(vs[0].is_identity());
    }

    #[test]
    fn unknown_when_budget_too_small() {
        let t = CosetTarget::from_spec("psl2:3").unwrap();
        let inst = CosetMapInstance {
            target: &t,
            variation_id: 0,
            word: Word::power(12),
            tuple: vec![0],
        };
        // x^12 is constant on A4 but the budget cannot afford the sweep
        let out = check_instance(&inst, 5, 1).unwrap();
        assert!(out.verdict.is_unknown());
        let out = check_instance(&inst, 100, 1).unwrap();
        assert!(out.verdict.is_constant());
    }

    #[test]
    fn trivial_twist_is_identical() {
        let t = CosetTarget::from_spec("psl2:3").unwrap();
        let c = inner_invariance_check(&t, &Word::comm(), &[1, 0], &[Elem(0), Elem(0)], 0, 0).unwrap();
        assert!(c.agrees && c.exhaustive);
    }
}

//! Word probabilities `P_{w=g}(G) = |w⁻¹(g)| / |G|^d` as exact counts,
//! coset probabilities, and the quotient and coset-sum identities they obey.

mod enumerate;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

pub use enumerate::{distribution, Distribution, EnumConfig, Strategy, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::word::Word;

/// `hits / total`, kept unreduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactProbability {
    pub hits: BigUint,
    pub total: BigUint,
}

impl ExactProbability {
    pub fn new(hits: impl Into<BigUint>, total: impl Into<BigUint>) -> Self {
        let (hits, total) = (hits.into(), total.into());
        assert!(!total.is_zero() && hits <= total, "probability out of range");
        ExactProbability { hits, total }
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.hits.clone().into(), self.total.clone().into())
    }

    /// Numerator and denominator in lowest terms.
    pub fn reduced(&self) -> (BigUint, BigUint) {
        let g = self.hits.gcd(&self.total);
        (&self.hits / &g, &self.total / &g)
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_one(&self) -> bool {
        self.hits == self.total
    }

    /// `self ≤ num/den`, exactly.
    pub fn at_most(&self, num: u64, den: u64) -> bool {
        &self.hits * BigUint::from(den) <= &self.total * BigUint::from(num)
    }

    pub fn equals(&self, num: u64, den: u64) -> bool {
        &self.hits * BigUint::from(den) == &self.total * BigUint::from(num)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        write!(f, "{n}/{d}")
    }
}

impl Serialize for ExactProbability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactProbability", 4)?;
        st.serialize_field("hits", &self.hits.to_string())?;
        st.serialize_field("total", &self.total.to_string())?;
        st.serialize_field("reduced", &self.to_string())?;
        st.serialize_field("float", &self.to_f64())?;
        st.end()
    }
}

fn whole_domains(g: &FiniteGroup, d: usize) -> Vec<Vec<Elem>> {
    vec![g.elements().collect(); d]
}

fn from_distribution(d: &Distribution, target: Elem) -> ExactProbability {
    ExactProbability::new(d.counts[target.index()], d.total.clone())
}

/// Full value histogram of the word map on `G^d`.
pub fn word_distribution(g: &FiniteGroup, w: &Word, cfg: &EnumConfig) -> Result<Distribution> {
    distribution(g, w, &whole_domains(g, w.rank()), cfg)
}

pub fn word_probability(g: &FiniteGroup, w: &Word, target: Elem, cfg: &EnumConfig) -> Result<ExactProbability> {
    if target.index() >= g.order() {
        return Err(Error::contract(format!(
            "target {target} is not an element of {}",
            g.name()
        )));
    }
    Ok(from_distribution(&word_distribution(g, w, cfg)?, target))
}

/// `|{(n_i) ∈ N^d : w(n_1 g_1, ..., n_d g_d) = 1}| / |N|^d`.
pub fn coset_probability(
    g: &FiniteGroup,
    n: &Subgroup,
    w: &Word,
    reps: &[Elem],
    cfg: &EnumConfig,
) -> Result<ExactProbability> {
    if !g.is_normal(n) {
        return Err(Error::contract("coset probability needs a normal subgroup"));
    }
    if reps.len() != w.rank() {
        return Err(Error::contract(format!(
            "word has rank {} but {} representatives were given",
            w.rank(),
            reps.len()
        )));
    }
    let members = n.elements();
    let domains: Vec<Vec<Elem>> = reps
        .iter()
        .map(|&r| members.iter().map(|&m| g.mul(m, r)).collect())
        .collect();
    Ok(from_distribution(&distribution(g, w, &domains, cfg)?, Elem::IDENTITY))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    pub holds: bool,
    /// `P_{w=g}(G)`
    pub group: ExactProbability,
    /// `P_{w=gN}(G/N)`
    pub quotient: ExactProbability,
}

/// Compares `P_{w=g}(G)` with `P_{w=gN}(G/N)`.
pub fn reduction_check(
    g: &FiniteGroup,
    n: &Subgroup,
    w: &Word,
    target: Elem,
    cfg: &EnumConfig,
) -> Result<ReductionCheck> {
    let q = g.quotient(n)?;
    let group = word_probability(g, w, target, cfg)?;
    let quotient = word_probability(&q.group, w, q.project(target), cfg)?;
    Ok(ReductionCheck {
        holds: group.ratio() <= quotient.ratio(),
        group,
        quotient,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub direct: ExactProbability,
    /// `|G|^-d Σ_r |N|^d P^r(N)` as a reduced fraction.
    pub summed: String,
    pub cosets: usize,
}

/// Checks `P_{w=1}(G) = |G|^-d Σ_{r ∈ R^d} |N|^d · P^{(r)}_{w=1}(N)` over coset
/// representatives `R` of `N`.
pub fn decomposition_check(g: &FiniteGroup, n: &Subgroup, w: &Word, cfg: &EnumConfig) -> Result<DecompositionCheck> {
    let q = g.quotient(n)?;
    let d = w.rank();
    let direct = word_probability(g, w, Elem::IDENTITY, cfg)?;
    let k = q.reps.len();
    let combos = (k as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let per_coset = (n.order() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if combos.saturating_mul(per_coset) > cfg.budget {
        return Err(Error::Budget {
            required: combos.saturating_mul(per_coset),
            budget: cfg.budget,
        });
    }
    let nd = BigRational::from_integer(BigUint::from(n.order()).pow(d as u32).into());
    let mut sum = BigRational::zero();
    let mut idx = vec![0usize; d];
    loop {
        let reps: Vec<Elem> = idx.iter().map(|&i| q.reps[i]).collect();
        let p = coset_probability(g, n, w, &reps, cfg)?;
        sum += &nd * p.ratio();
        if !advance(&mut idx, k) {
            break;
        }
    }
    let gd = BigRational::from_integer(BigUint::from(g.order()).pow(d as u32).into());
    let summed = sum / gd;
    Ok(DecompositionCheck {
        holds: summed == direct.ratio(),
        direct,
        summed: summed.to_string(),
        cosets: combos as usize,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleEstimate {
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    /// 99% Hoeffding radius `sqrt(ln(2/0.01) / (2 samples))`.
    pub radius: f64,
}

/// Monte Carlo estimate of `P_{w=g}(G)`; deterministic for a given seed.
pub fn sample_probability(g: &FiniteGroup, w: &Word, target: Elem, samples: u64, seed: u64) -> Result<SampleEstimate> {
    if samples == 0 {
        return Err(Error::contract("at least one sample is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order() as u32;
    let mut args = vec![Elem::IDENTITY; w.rank()];
    let mut hits = 0;
    for _ in 0..samples {
        for a in args.iter_mut() {
            *a = Elem(rng.gen_range(0..n));
        }
        if w.evaluate(g, &args) == target {
            hits += 1;
        }
    }
    Ok(SampleEstimate {
        hits,
        samples,
        seed,
        estimate: hits as f64 / samples as f64,
        radius: hoeffding_radius(samples),
    })
}

/// Steps a mixed-radix counter with every digit below `radix`; returns
/// false after wrapping around to all zeros.
pub(crate) fn advance(idx: &mut [usize], radix: usize) -> bool {
    for digit in idx.iter_mut().rev() {
        *digit += 1;
        if *digit < radix {
            return true;
        }
        *digit = 0;
    }
    false
}

pub fn hoeffding_radius(samples: u64) -> f64 {
    ((2.0f64 / 0.01).ln() / (2.0 * samples as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn commuting_probabilities() {
        let cfg = EnumConfig::default();
        let s3 = named("sym:3").unwrap();
        let p = word_probability(&s3, &Word::comm(), Elem::IDENTITY, &cfg).unwrap();
        assert_eq!((p.hits.to_u64(), p.total.to_u64()), (Some(18), Some(36)));
        let d8 = named("dihedral:8").unwrap();
        let p = word_probability(&d8, &Word::comm(), Elem::IDENTITY, &cfg).unwrap();
        assert_eq!((p.hits.to_u64(), p.total.to_u64()), (Some(40), Some(64)));
        assert_eq!(p.to_string(), "5/8");
    }

    #[test]
    fn serialization_shape() {
        let p = ExactProbability::new(40u32, 64u32);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["hits"], "40");
        assert_eq!(v["total"], "64");
        assert_eq!(v["reduced"], "5/8");
        assert_eq!(v["float"], 0.625);
    }

    #[test]
    fn decomposition_trivial_case() {
        let g = named("sym:4").unwrap();
        let c = decomposition_check(&g, &g.whole(), &Word::comm(), &EnumConfig::default()).unwrap();
        assert!(c.holds);
        assert_eq!(c.cosets, 1);
    }

    #[test]
    fn sampling_on_abelian_group_is_exact() {
        let g = named("cyclic:6").unwrap();
        let s = sample_probability(&g, &Word::comm(), Elem::IDENTITY, 1000, 7).unwrap();
        assert_eq!(s.estimate, 1.0);
        assert!((s.radius - hoeffding_radius(1000)).abs() < 1e-15);
    }
}

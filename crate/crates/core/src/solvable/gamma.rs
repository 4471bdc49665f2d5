//! The right-nested long commutator `γ_k = [X1, γ_{k-1}(X2, ..., Xk)]`: exact
//! probabilities against `δ_k = 1 - 3/2^(k+1)` and the bad set of tuples
//! whose inner commutator is central.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::Ratio;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::prob::{word_distribution, word_probability, EnumConfig, ExactProbability};
use crate::word::Word;

#[derive(Clone, Debug, Serialize)]
pub struct GammaLevel {
    pub k: usize,
    pub probability: ExactProbability,
    /// `δ_k = 1 - 3/2^(k+1)`
    pub bound: Ratio,
    pub within: bool,
    /// Probability equals `δ_k`.
    pub sharp: bool,
    /// Tuples in `G^(k-1)` with `γ_{k-1}` central.
    #[serde(serialize_with = "as_decimal")]
    pub bad: BigUint,
    /// `|{tuples in (G/Z)^(k-1) : γ_{k-1} = 1}| · |Z|^(k-1)`
    #[serde(serialize_with = "as_decimal")]
    pub bad_expected: BigUint,
    pub bad_identity: bool,
    /// `1/2 + |BAD|/(2|G|^(k-1))`
    pub principle_bound: Ratio,
    pub principle_within: bool,
}

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRecursion {
    pub group: String,
    pub order: usize,
    pub d: usize,
    pub levels: Vec<GammaLevel>,
    pub holds: bool,
}

/// `δ_k = 1 - 3/2^(k+1)`
pub fn delta(k: usize) -> Ratio {
    let den = BigInt::from(1u8) << (k + 1);
    Ratio(BigRational::new(&den - BigInt::from(3u8), den))
}

pub fn gamma_recursion_check(g: &FiniteGroup, d: usize, cfg: &EnumConfig) -> Result<GammaRecursion> {
    if d < 2 {
        return Err(Error::contract("long commutator needs at least two variables"));
    }
    if word_probability(g, &Word::gamma_right(d), Elem::IDENTITY, cfg)?.is_one() {
        return Err(Error::contract(format!(
            "{} satisfies the right-nested gamma_{d} law",
            g.name()
        )));
    }
    let z = g.center();
    let q = g.quotient(&z)?;
    let mut levels = Vec::with_capacity(d - 1);
    for k in 2..=d {
        let probability = word_probability(g, &Word::gamma_right(k), Elem::IDENTITY, cfg)?;
        let inner = Word::gamma_right(k - 1);
        let dist = word_distribution(g, &inner, cfg)?;
        let bad: BigUint = z.elements().iter().map(|c| BigUint::from(dist.counts[c.index()])).sum();
        let quotient_hits = word_distribution(&q.group, &inner, cfg)?.counts[0];
        let bad_expected = BigUint::from(quotient_hits) * BigUint::from(z.order()).pow((k - 1) as u32);
        let bound = delta(k);
        let ratio = probability.ratio();
        let principle_bound =
            Ratio::half_plus_half(&Ratio::new(bad.clone(), BigUint::from(g.order()).pow((k - 1) as u32)));
        levels.push(GammaLevel {
            k,
            within: ratio <= bound.0,
            sharp: ratio == bound.0,
            bad_identity: bad == bad_expected,
            principle_within: ratio <= principle_bound.0,
            probability,
            bound,
            bad,
            bad_expected,
            principle_bound,
        });
    }
    let holds = levels.iter().all(|l| l.within && l.bad_identity && l.principle_within);
    Ok(GammaRecursion {
        group: g.name().to_string(),
        order: g.order(),
        d,
        levels,
        holds,
    })
}

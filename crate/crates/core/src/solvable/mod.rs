//! Badness counting for solvable groups: reduction to a minimal verbal
//! subgroup, exponent operators on it, and the bad/good/ugly tuple sets for
//! the 2-Engel, metabelian and long commutator words.

mod engel;
mod fiber;
mod gamma;
mod metab;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use engel::{
    acts_quadratically, engel_badness, engel_phi, CentralEngel, EngelBadness, EngelBranch, EngelPhi, NontrivialEngel,
    P3Claim,
};
pub use fiber::{fiber_bound_check, FiberCheck, FiberSummary, HypothesisFailure};
pub use gamma::{gamma_recursion_check, GammaLevel, GammaRecursion};
pub use metab::{metab_badness, metab_phi, MetabBadness, MetabBranch, NontrivialMetab, TrivialMetab};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Quotient, Subgroup};
use crate::prob::{advance, word_distribution, word_probability, EnumConfig, ExactProbability};
use crate::word::Word;

/// An exact fraction, serialized as decimal numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Self {
        Ratio(BigRational::new(BigInt::from(num.into()), BigInt::from(den.into())))
    }

    pub fn integer(n: impl Into<BigUint>) -> Self {
        Ratio::new(n, 1u32)
    }

    pub fn half_plus_half(x: &Ratio) -> Ratio {
        let half = BigRational::new(1.into(), 2.into());
        Ratio(&half + &half * &x.0)
    }
}

impl From<&ExactProbability> for Ratio {
    fn from(p: &ExactProbability) -> Self {
        Ratio(p.ratio())
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ratio", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

/// The subgroup generated by all values of `w`.
pub fn verbal_subgroup(g: &FiniteGroup, w: &Word, cfg: &EnumConfig) -> Result<Subgroup> {
    let support = word_distribution(g, w, cfg)?.support();
    Ok(g.normal_closure(&support))
}

/// A group whose verbal subgroup `V` is its unique minimal normal subgroup,
/// elementary abelian of order `p^dim`, with coordinates on `V`.
#[derive(Clone, Debug)]
pub struct VerbalContext {
    pub original: FiniteGroup,
    pub group: FiniteGroup,
    pub word: Word,
    pub verbal: Subgroup,
    pub p: u32,
    pub dim: usize,
    pub basis: Vec<Elem>,
    /// Orders of the minimal normal subgroups factored out, in order.
    pub steps: Vec<usize>,
    /// `G/V` with one representative per coset.
    pub modv: Quotient,
    coords: Vec<Option<Vec<u32>>>,
}

/// Repeatedly factors out the smallest minimal normal subgroup (ties broken
/// by element list) that does not contain the verbal subgroup.
pub fn reduce_to_minimal_verbal(g: &FiniteGroup, w: &Word, cfg: &EnumConfig) -> Result<VerbalContext> {
    let mut v = verbal_subgroup(g, w, cfg)?;
    if v.is_trivial() {
        return Err(Error::contract(format!("`{w}` is an identity in {}", g.name())));
    }
    if !g.is_solvable() {
        return Err(Error::contract(format!("{} is not solvable", g.name())));
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some(n) = cur.minimal_normal_subgroups().into_iter().find(|n| !v.is_subset_of(n)) {
        let q = cur.quotient(&n)?;
        v = q.image(&v);
        steps.push(n.order());
        cur = q.group;
    }
    VerbalContext::new(g.clone(), cur, w.clone(), v, steps)
}

impl VerbalContext {
    fn new(original: FiniteGroup, group: FiniteGroup, word: Word, verbal: Subgroup, steps: Vec<usize>) -> Result<Self> {
        let order = verbal.order();
        let p = smallest_prime_factor(order);
        let mut dim = 0;
        let mut n = order;
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
            dim += 1;
        }
        if n != 1 {
            return Err(Error::consistency(format!(
                "minimal verbal subgroup has order {order}, not a prime power"
            )));
        }
        let members = verbal.elements();
        for &a in &members {
            if group.pow(a, p as i64) != Elem::IDENTITY || members.iter().any(|&b| group.mul(a, b) != group.mul(b, a)) {
                return Err(Error::consistency("minimal verbal subgroup is not elementary abelian"));
            }
        }
        // Grow a basis greedily, spanning as we go.
        let mut span: Vec<(Elem, Vec<u32>)> = vec![(Elem::IDENTITY, Vec::new())];
        let mut in_span = vec![false; group.order()];
        in_span[0] = true;
        let mut basis = Vec::new();
        for &b in &members {
            if in_span[b.index()] {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * p as usize);
            for (s, c) in &span {
                let mut x = *s;
                for k in 0..p {
                    let mut cc = c.clone();
                    cc.push(k);
                    next.push((x, cc));
                    x = group.mul(x, b);
                }
            }
            for (x, _) in &next {
                in_span[x.index()] = true;
            }
            span = next;
            basis.push(b);
        }
        debug_assert_eq!(basis.len(), dim);
        let mut coords = vec![None; group.order()];
        for (x, c) in span {
            coords[x.index()] = Some(c);
        }
        let modv = group.quotient(&verbal)?;
        Ok(VerbalContext {
            original,
            group,
            word,
            verbal,
            p,
            dim,
            basis,
            steps,
            modv,
            coords,
        })
    }

    /// Coset representatives of `V`, one per coset.
    pub fn reps(&self) -> &[Elem] {
        &self.modv.reps
    }

    pub fn coords(&self, x: Elem) -> Option<&[u32]> {
        self.coords[x.index()].as_deref()
    }

    pub fn from_coords(&self, c: &[u32]) -> Elem {
        c.iter().zip(&self.basis).fold(Elem::IDENTITY, |acc, (&k, &b)| {
            self.group.mul(acc, self.group.pow(b, k as i64))
        })
    }

    /// `C_G(V)`.
    pub fn centralizer(&self) -> Subgroup {
        self.group.centralizer(&self.verbal.elements())
    }

    fn eval(&self, args: &[Elem]) -> Elem {
        self.word.evaluate(&self.group, args)
    }

    /// Whether every exponent operator at `r` vanishes, by checking basis
    /// vectors only.
    pub fn is_bad(&self, r: &[Elem]) -> bool {
        let base = self.eval(r);
        let mut args = r.to_vec();
        for i in 0..r.len() {
            for &b in &self.basis {
                args[i] = self.group.mul(b, r[i]);
                if self.eval(&args) != base {
                    return false;
                }
            }
            args[i] = r[i];
        }
        true
    }
}

fn smallest_prime_factor(n: usize) -> u32 {
    (2..=n).find(|k| n.is_multiple_of(*k)).unwrap_or(1) as u32
}

/// A `dim × dim` matrix over `F_p` acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentOperator {
    pub p: u32,
    pub rows: Vec<Vec<u32>>,
}

impl ExponentOperator {
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn apply(&self, c: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| (row.iter().zip(c).map(|(&m, &x)| (m * x) as u64).sum::<u64>() % self.p as u64) as u32)
            .collect()
    }
}

/// Operators `w_i(r)` with `w(a_1 r_1, ..., a_d r_d) = Π a_i^{w_i(r)} · w(r)`.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorSet {
    pub operators: Vec<ExponentOperator>,
    pub base: Elem,
}

/// Samples used to check the product display when `|V|^d` is larger.
pub const PRODUCT_SAMPLES: usize = 1000;

/// Extracts the operators from basis substitutions, then verifies each is
/// linear on all of `V` (up to 256 elements, else a seeded sample of 256)
/// and the product display on up to [`PRODUCT_SAMPLES`] tuples.
pub fn derive_operators(ctx: &VerbalContext, r: &[Elem]) -> Result<OperatorSet> {
    let g = &ctx.group;
    let d = ctx.word.rank();
    if r.len() != d {
        return Err(Error::contract(format!(
            "expected {d} representatives, got {}",
            r.len()
        )));
    }
    let base = ctx.eval(r);
    let base_inv = g.inv(base);
    let shifted = |i: usize, a: Elem| {
        let mut args = r.to_vec();
        args[i] = g.mul(a, r[i]);
        g.mul(ctx.eval(&args), base_inv)
    };
    let coords_of = |x: Elem| {
        ctx.coords(x)
            .map(<[u32]>::to_vec)
            .ok_or_else(|| Error::consistency(format!("{x} is outside the verbal subgroup")))
    };
    let mut operators = Vec::with_capacity(d);
    for i in 0..d {
        let mut rows = vec![vec![0u32; ctx.dim]; ctx.dim];
        for (k, &b) in ctx.basis.iter().enumerate() {
            let col = coords_of(shifted(i, b))?;
            for (row, x) in rows.iter_mut().zip(col) {
                row[k] = x;
            }
        }
        operators.push(ExponentOperator { p: ctx.p, rows });
    }
    let members = ctx.verbal.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let probe: Vec<Elem> = if members.len() <= 256 {
        members.clone()
    } else {
        (0..256).map(|_| members[rng.gen_range(0..members.len())]).collect()
    };
    for (i, op) in operators.iter().enumerate() {
        for &a in &probe {
            let direct = coords_of(shifted(i, a))?;
            if direct != op.apply(ctx.coords(a).unwrap()) {
                return Err(Error::consistency(format!("operator {} is not linear at {a}", i + 1)));
            }
        }
    }
    let check = |a: &[Elem]| -> bool {
        let args: Vec<Elem> = a.iter().zip(r).map(|(&x, &ri)| g.mul(x, ri)).collect();
        let mut expected = Elem::IDENTITY;
        for (op, &x) in operators.iter().zip(a) {
            expected = g.mul(expected, ctx.from_coords(&op.apply(ctx.coords(x).unwrap())));
        }
        ctx.eval(&args) == g.mul(expected, base)
    };
    let space = (members.len() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let ok = if space <= PRODUCT_SAMPLES as u128 {
        let mut idx = vec![0usize; d];
        let mut ok = true;
        loop {
            let a: Vec<Elem> = idx.iter().map(|&i| members[i]).collect();
            ok &= check(&a);
            if !ok || !advance(&mut idx, members.len()) {
                break;
            }
        }
        ok
    } else {
        (0..PRODUCT_SAMPLES).all(|_| {
            let a: Vec<Elem> = (0..d).map(|_| members[rng.gen_range(0..members.len())]).collect();
            check(&a)
        })
    };
    if !ok {
        return Err(Error::consistency("product display for the exponent operators fails"));
    }
    Ok(OperatorSet { operators, base })
}

/// Counts of bad tuples of representatives with the two resulting bounds.
#[derive(Clone, Debug, Serialize)]
pub struct BadnessReport {
    pub group: String,
    pub order: usize,
    pub reduced_order: usize,
    pub word: String,
    pub p: u32,
    pub dim: usize,
    pub reps: usize,
    pub tuples: u64,
    pub bad: u64,
    pub good: u64,
    pub bad_ratio: Ratio,
    /// `P_{w=1}` of the original group.
    pub probability: ExactProbability,
    /// `P_{w=1}` of the reduced group.
    pub reduced_probability: ExactProbability,
    /// `1/p + (1 - 1/p)·bad_ratio`
    pub bound_sharp: Ratio,
    /// `(1 + bad_ratio)/2`
    pub bound_half: Ratio,
    pub holds: bool,
}

/// Number of tuples in `R^d`, refusing above the budget.
pub(crate) fn tuple_space(reps: usize, d: usize, budget: u128) -> Result<u64> {
    let n = (reps as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if n > budget || n > u64::MAX as u128 {
        return Err(Error::Budget { required: n, budget });
    }
    Ok(n as u64)
}

/// Calls `f` on every tuple in `R^d`, in parallel over the first entry,
/// summing the results.
pub(crate) fn sum_over_tuples<F>(reps: &[Elem], d: usize, f: F) -> u64
where
    F: Fn(&[Elem]) -> u64 + Sync,
{
    if d == 0 {
        return f(&[]);
    }
    reps.par_iter()
        .map(|&first| {
            let mut idx = vec![0usize; d - 1];
            let mut args = vec![first; d];
            let mut total = 0;
            loop {
                for (a, &i) in args[1..].iter_mut().zip(&idx) {
                    *a = reps[i];
                }
                total += f(&args);
                if !advance(&mut idx, reps.len()) {
                    break;
                }
            }
            total
        })
        .sum()
}

/// Enumerates `R^d`, counting tuples whose operators all vanish, and checks
/// `P_{w=1}(G) ≤ P_{w=1}(Ḡ) ≤ 1/p + (1 - 1/p)|BAD|/|R|^d ≤ (1 + |BAD|/|R|^d)/2`.
pub fn badness_report(ctx: &VerbalContext, cfg: &EnumConfig) -> Result<BadnessReport> {
    let d = ctx.word.rank();
    let reps = ctx.reps();
    let tuples = tuple_space(reps.len(), d, cfg.budget)?;
    let bad = sum_over_tuples(reps, d, |r| ctx.is_bad(r) as u64);
    let bad_ratio = Ratio::new(bad, tuples);
    let p = BigRational::new(1.into(), BigInt::from(ctx.p));
    let bound_sharp = Ratio(&p + (BigRational::from_integer(1.into()) - &p) * &bad_ratio.0);
    let bound_half = Ratio::half_plus_half(&bad_ratio);
    let probability = word_probability(&ctx.original, &ctx.word, Elem::IDENTITY, cfg)?;
    let reduced_probability = word_probability(&ctx.group, &ctx.word, Elem::IDENTITY, cfg)?;
    let holds = probability.ratio() <= reduced_probability.ratio()
        && reduced_probability.ratio() <= bound_sharp.0
        && bound_sharp <= bound_half;
    Ok(BadnessReport {
        group: ctx.original.name().to_string(),
        order: ctx.original.order(),
        reduced_order: ctx.group.order(),
        word: ctx.word.to_string(),
        p: ctx.p,
        dim: ctx.dim,
        reps: reps.len(),
        tuples,
        bad,
        good: tuples - bad,
        bad_ratio,
        probability,
        reduced_probability,
        bound_sharp,
        bound_half,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    fn ctx(spec: &str, w: Word) -> VerbalContext {
        reduce_to_minimal_verbal(&named(spec).unwrap(), &w, &EnumConfig::default()).unwrap()
    }

    #[test]
    fn dihedral_engel_context() {
        let c = ctx("dihedral:16", Word::engel2());
        assert_eq!((c.verbal.order(), c.p, c.dim), (2, 2, 1));
        assert_eq!(c.group.order(), 16);
    }

    #[test]
    fn sym4_metab_context() {
        let c = ctx("sym:4", Word::metab());
        assert_eq!((c.verbal.order(), c.p, c.dim), (4, 2, 2));
        assert!(c.steps.is_empty());
        assert_eq!(c.reps().len(), 6);
    }

    #[test]
    fn identity_word_is_refused() {
        let g = named("dihedral:8").unwrap();
        let e = reduce_to_minimal_verbal(&g, &Word::engel2(), &EnumConfig::default()).unwrap_err();
        assert!(matches!(e, Error::Contract(_)));
    }

    #[test]
    fn trivial_reps_give_zero_commutator_operators() {
        let c = ctx("sym:4", Word::comm());
        let ops = derive_operators(&c, &[Elem::IDENTITY, Elem::IDENTITY]).unwrap();
        assert!(ops.operators.iter().all(ExponentOperator::is_zero));
    }

    #[test]
    fn metab_operators_verify_for_all_tuples() {
        let c = ctx("sym:4", Word::metab());
        let reps = c.reps().to_vec();
        let mut idx = vec![0usize; 4];
        loop {
            let r: Vec<Elem> = idx.iter().map(|&i| reps[i]).collect();
            let ops = derive_operators(&c, &r).unwrap();
            assert_eq!(ops.operators.len(), 4);
            assert_eq!(ops.operators.iter().all(ExponentOperator::is_zero), c.is_bad(&r));
            if !advance(&mut idx, reps.len()) {
                break;
            }
        }
    }

    #[test]
    fn badness_bounds_hold() {
        let cfg = EnumConfig::default();
        let r = badness_report(&ctx("dihedral:16", Word::engel2()), &cfg).unwrap();
        assert!(r.holds);
        assert_eq!(r.probability.to_string(), "3/4");
        let r = badness_report(&ctx("sym:4", Word::metab()), &cfg).unwrap();
        assert!(r.holds);
    }
}

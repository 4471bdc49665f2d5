//! Exact counting of word values over a product of element sets.
//!
//! Two strategies give identical counts:
//!
//! * exhaustive: every tuple is substituted, split across threads by the
//!   value of the first variable;
//! * factored: the variables are split into two sides, the word into maximal
//!   runs of letters from one side. Each side is enumerated on its own and
//!   reduced to a histogram of its run values; the histograms are then
//!   combined pairwise. For words like `[[x1,x2],[x3,x4]]` the histograms are
//!   far smaller than the full tuple space.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::word::Word;

pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Factored when at least three variables occur, exhaustive otherwise.
    #[default]
    Auto,
    Exhaustive,
    Factored,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    /// Largest tuple count accepted for exact enumeration.
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Auto,
        }
    }
}

impl EnumConfig {
    pub fn with_budget(budget: u128) -> Self {
        EnumConfig {
            budget,
            ..Self::default()
        }
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        EnumConfig {
            strategy,
            ..Self::default()
        }
    }
}

/// Counts of word values over `domains[0] × domains[1] × ...`, indexed by
/// group element. `domains` has one entry per variable up to the word's rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub counts: Vec<u128>,
    pub total: BigUint,
}

impl Distribution {
    pub fn support(&self) -> Vec<Elem> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| Elem(i as u32))
            .collect()
    }
}

pub(crate) fn tuple_count(domains: &[Vec<Elem>]) -> BigUint {
    domains.iter().map(|d| BigUint::from(d.len())).product()
}

pub fn distribution(g: &FiniteGroup, w: &Word, domains: &[Vec<Elem>], cfg: &EnumConfig) -> Result<Distribution> {
    if domains.len() < w.rank() {
        return Err(Error::contract(format!(
            "word of rank {} needs {} argument sets, got {}",
            w.rank(),
            w.rank(),
            domains.len()
        )));
    }
    let domains = &domains[..w.rank()];
    let total = tuple_count(domains);
    if total > BigUint::from(cfg.budget) {
        return Err(Error::Budget {
            required: u128::try_from(&total).unwrap_or(u128::MAX),
            budget: cfg.budget,
        });
    }
    if total == BigUint::from(0u8) {
        return Ok(Distribution {
            counts: vec![0; g.order()],
            total,
        });
    }
    let mu = w.multiplicities();
    let occurring: Vec<usize> = (0..w.rank()).filter(|&v| mu[v] > 0).collect();
    let unused: u128 = (0..w.rank())
        .filter(|&v| mu[v] == 0)
        .map(|v| domains[v].len() as u128)
        .product();
    let mut counts = if occurring.is_empty() {
        let mut c = vec![0u128; g.order()];
        c[0] = 1;
        c
    } else {
        let job = Job::new(g, w, domains, &occurring);
        let factored = match cfg.strategy {
            Strategy::Exhaustive => false,
            Strategy::Factored => occurring.len() >= 2,
            Strategy::Auto => occurring.len() >= 3,
        };
        if factored {
            job.factored()
        } else {
            job.exhaustive()
        }
    };
    if unused != 1 {
        for c in counts.iter_mut() {
            *c *= unused;
        }
    }
    Ok(Distribution { counts, total })
}

/// The word rewritten over the occurring variables `0..k`.
struct Job<'a> {
    g: &'a FiniteGroup,
    letters: Vec<(usize, bool)>,
    /// `(x, x^-1)` pairs per occurring variable.
    doms: Vec<Vec<(Elem, Elem)>>,
}

impl<'a> Job<'a> {
    fn new(g: &'a FiniteGroup, w: &Word, domains: &[Vec<Elem>], occurring: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; w.rank()];
        for (k, &v) in occurring.iter().enumerate() {
            pos[v] = k;
        }
        Job {
            g,
            letters: w.letters().iter().map(|l| (pos[l.var], l.inv)).collect(),
            doms: occurring
                .iter()
                .map(|&v| domains[v].iter().map(|&x| (x, g.inv(x))).collect())
                .collect(),
        }
    }

    #[inline]
    fn eval(&self, letters: &[(usize, bool)], args: &[(Elem, Elem)]) -> Elem {
        let mut acc = Elem::IDENTITY;
        for &(v, inv) in letters {
            let (x, xi) = args[v];
            acc = self.g.mul(acc, if inv { xi } else { x });
        }
        acc
    }

    /// Runs `f` on every assignment of `vars` whose first variable is fixed
    /// to `first`, with `args` holding the current assignment.
    fn for_each_assignment(
        &self,
        vars: &[usize],
        first: usize,
        args: &mut [(Elem, Elem)],
        mut f: impl FnMut(&[(Elem, Elem)]),
    ) {
        args[vars[0]] = self.doms[vars[0]][first];
        let rest = &vars[1..];
        let mut idx = vec![0usize; rest.len()];
        for &v in rest {
            args[v] = self.doms[v][0];
        }
        loop {
            f(args);
            let mut k = rest.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                let v = rest[k];
                idx[k] += 1;
                if idx[k] < self.doms[v].len() {
                    args[v] = self.doms[v][idx[k]];
                    break;
                }
                idx[k] = 0;
                args[v] = self.doms[v][0];
            }
        }
    }

    fn exhaustive(&self) -> Vec<u128> {
        let n = self.g.order();
        let k = self.doms.len();
        let vars: Vec<usize> = (0..k).collect();
        (0..self.doms[0].len())
            .into_par_iter()
            .fold(
                || vec![0u128; n],
                |mut acc, first| {
                    let mut args = vec![(Elem::IDENTITY, Elem::IDENTITY); k];
                    self.for_each_assignment(&vars, first, &mut args, |a| {
                        acc[self.eval(&self.letters, a).index()] += 1;
                    });
                    acc
                },
            )
            .reduce(|| vec![0u128; n], add_vectors)
    }

    /// Splits the letters into maximal runs from one side of `in_a`.
    fn segments(&self, in_a: &[bool]) -> Vec<(bool, Vec<(usize, bool)>)> {
        let mut segs: Vec<(bool, Vec<(usize, bool)>)> = Vec::new();
        for &(v, inv) in &self.letters {
            let side = in_a[v];
            match segs.last_mut() {
                Some((s, run)) if *s == side => run.push((v, inv)),
                _ => segs.push((side, vec![(v, inv)])),
            }
        }
        segs
    }

    /// Bipartition with the fewest runs, then the smaller larger side.
    fn choose_partition(&self) -> Vec<bool> {
        let k = self.doms.len();
        let size = |mask: u32, side: bool| -> f64 {
            (0..k)
                .filter(|&v| ((mask >> v) & 1 == 1) == side)
                .map(|v| (self.doms[v].len() as f64).ln())
                .sum()
        };
        let mut best: Option<(usize, f64, u32)> = None;
        // variable 0 always on side A
        for mask in (1u32..(1 << k)).filter(|m| m & 1 == 1 && *m != (1 << k) - 1) {
            let in_a: Vec<bool> = (0..k).map(|v| (mask >> v) & 1 == 1).collect();
            let runs = self.segments(&in_a).len();
            let cost = size(mask, true).max(size(mask, false));
            let better = match best {
                None => true,
                Some((r, c, _)) => runs < r || (runs == r && cost < c - 1e-9),
            };
            if better {
                best = Some((runs, cost, mask));
            }
        }
        let mask = best.expect("at least two variables").2;
        (0..k).map(|v| (mask >> v) & 1 == 1).collect()
    }

    fn side_histogram(&self, vars: &[usize], runs: &[&[(usize, bool)]]) -> Vec<(Vec<u32>, u128)> {
        let k = self.doms.len();
        let map = (0..self.doms[vars[0]].len())
            .into_par_iter()
            .fold(HashMap::<Vec<u32>, u128>::new, |mut acc, first| {
                let mut args = vec![(Elem::IDENTITY, Elem::IDENTITY); k];
                self.for_each_assignment(vars, first, &mut args, |a| {
                    let key: Vec<u32> = runs.iter().map(|r| self.eval(r, a).0).collect();
                    *acc.entry(key).or_insert(0) += 1;
                });
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (key, c) in b {
                    *a.entry(key).or_insert(0) += c;
                }
                a
            });
        let mut v: Vec<(Vec<u32>, u128)> = map.into_iter().collect();
        v.sort_unstable();
        v
    }

    fn factored(&self) -> Vec<u128> {
        let n = self.g.order();
        let in_a = self.choose_partition();
        let segs = self.segments(&in_a);
        let k = self.doms.len();
        let a_vars: Vec<usize> = (0..k).filter(|&v| in_a[v]).collect();
        let b_vars: Vec<usize> = (0..k).filter(|&v| !in_a[v]).collect();
        let a_runs: Vec<&[(usize, bool)]> = segs.iter().filter(|s| s.0).map(|s| s.1.as_slice()).collect();
        let b_runs: Vec<&[(usize, bool)]> = segs.iter().filter(|s| !s.0).map(|s| s.1.as_slice()).collect();
        let ha = self.side_histogram(&a_vars, &a_runs);
        let hb = self.side_histogram(&b_vars, &b_runs);
        let sides: Vec<bool> = segs.iter().map(|s| s.0).collect();
        ha.par_iter()
            .fold(
                || vec![0u128; n],
                |mut acc, (ka, ca)| {
                    for (kb, cb) in &hb {
                        let (mut ia, mut ib) = (0, 0);
                        let mut x = Elem::IDENTITY;
                        for &side in &sides {
                            let y = if side {
                                ia += 1;
                                ka[ia - 1]
                            } else {
                                ib += 1;
                                kb[ib - 1]
                            };
                            x = self.g.mul(x, Elem(y));
                        }
                        acc[x.index()] += ca * cb;
                    }
                    acc
                },
            )
            .reduce(|| vec![0u128; n], add_vectors)
    }
}

fn add_vectors(mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

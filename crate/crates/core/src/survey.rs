//! Batch surveys: load a corpus, compute one exact word probability per
//! group, and report the largest value below 1.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{named, Elem, FiniteGroup, GroupFile};
use crate::prob::{word_probability, EnumConfig, ExactProbability};
use crate::solvable::reduce_to_minimal_verbal;
use crate::word::Word;

/// Loads every `*.json` group file in `dir`, ordered by `(order, name)`.
pub fn ingest(dir: &Path) -> Result<Vec<FiniteGroup>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut groups = paths
        .par_iter()
        .map(|p| GroupFile::load(p))
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut groups);
    Ok(groups)
}

fn sort_canonical(groups: &mut [FiniteGroup]) {
    groups.sort_by(|a, b| (a.order(), a.name()).cmp(&(b.order(), b.name())));
}

/// Named families up to `max_order`: `cyclic`, `dihedral`, `quaternion`,
/// `sym`, `alt`, and `abelian` (one group per invariant-factor list).
pub fn family(name: &str, max_order: usize) -> Result<Vec<FiniteGroup>> {
    let specs: Vec<String> = match name {
        "cyclic" => (1..=max_order).map(|n| format!("cyclic:{n}")).collect(),
        "dihedral" => (4..=max_order).step_by(2).map(|n| format!("dihedral:{n}")).collect(),
        "quaternion" => (3..usize::BITS)
            .map(|k| 1usize << k)
            .take_while(|&n| n <= max_order)
            .map(|n| format!("quaternion:{n}"))
            .collect(),
        "sym" => (1..)
            .take_while(|&n| factorial(n) <= max_order)
            .map(|n| format!("sym:{n}"))
            .collect(),
        "alt" => (1..)
            .take_while(|&n| factorial(n) / 2 <= max_order.max(1))
            .map(|n| format!("alt:{n}"))
            .collect(),
        "abelian" => {
            let mut out = Vec::new();
            invariant_factors(1, max_order, &mut Vec::new(), &mut out);
            out
        }
        _ => {
            return Err(Error::GroupSpec {
                spec: name.to_string(),
                msg: "unknown family".to_string(),
            })
        }
    };
    let mut groups = specs.iter().map(|s| named(s)).collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut groups);
    Ok(groups)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lists `n_1 | n_2 | ... | n_k` with all `n_i > 1` and product at most
/// `max`, as nested product specs.
fn invariant_factors(min: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<String>) {
    let product: usize = prefix.iter().product();
    out.push(abelian_spec(prefix));
    let last = prefix.last().copied().unwrap_or(1);
    let mut n = min.max(2);
    while product * n <= max {
        if n.is_multiple_of(last) {
            prefix.push(n);
            invariant_factors(n, max, prefix, out);
            prefix.pop();
        }
        n += 1;
    }
}

fn abelian_spec(factors: &[usize]) -> String {
    match factors {
        [] => "cyclic:1".to_string(),
        [n] => format!("cyclic:{n}"),
        [n, rest @ ..] => format!("product:cyclic:{n},({})", abelian_spec(rest)),
    }
}

/// Which groups a survey keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyFilter {
    #[default]
    All,
    Solvable,
    Nonsolvable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub group: String,
    pub order: usize,
    pub word: String,
    pub hits: String,
    pub total: String,
    pub reduced: String,
    pub float: f64,
    pub is_identity: bool,
    /// `solvable` or `nonsolvable`.
    pub solvability: &'static str,
    /// Action on the minimal verbal subgroup after reduction: `trivial`,
    /// `nontrivial`, or `none` when the word is an identity or the group is
    /// not solvable.
    pub action: &'static str,
}

impl SurveyRow {
    pub fn probability(&self) -> ExactProbability {
        ExactProbability::new(
            self.hits.parse::<num_bigint::BigUint>().expect("decimal hits"),
            self.total.parse::<num_bigint::BigUint>().expect("decimal total"),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyFailure {
    pub group: String,
    pub error: String,
    pub budget: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveySummary {
    pub word: String,
    pub groups: usize,
    pub rows: usize,
    pub identity_rows: usize,
    /// Largest probability strictly below 1.
    pub max: Option<ExactProbability>,
    /// First group in `(order, name)` order attaining `max`.
    pub argmax: Option<String>,
    pub failures: Vec<SurveyFailure>,
}

#[derive(Clone, Debug)]
pub struct Survey {
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

/// Whether `G'` (for the metabelian word) or `G` (otherwise) centralizes the
/// minimal verbal subgroup of the reduced quotient.
fn action_label(g: &FiniteGroup, w: &Word, cfg: &EnumConfig) -> Result<&'static str> {
    let ctx = reduce_to_minimal_verbal(g, w, cfg)?;
    let c = ctx.centralizer();
    let acting = if *w == Word::metab() {
        ctx.group.derived_subgroup()
    } else {
        ctx.group.whole()
    };
    Ok(if acting.is_subset_of(&c) {
        "trivial"
    } else {
        "nontrivial"
    })
}

fn survey_row(g: &FiniteGroup, w: &Word, word_name: &str, cfg: &EnumConfig) -> Result<SurveyRow> {
    let p = word_probability(g, w, Elem::IDENTITY, cfg)?;
    let is_identity = p.is_one();
    let solvable = g.is_solvable();
    let action = if is_identity || !solvable {
        "none"
    } else {
        action_label(g, w, cfg)?
    };
    Ok(SurveyRow {
        group: g.name().to_string(),
        order: g.order(),
        word: word_name.to_string(),
        hits: p.hits.to_string(),
        total: p.total.to_string(),
        reduced: p.to_string(),
        float: p.to_f64(),
        is_identity,
        solvability: if solvable { "solvable" } else { "nonsolvable" },
        action,
    })
}

/// One row per kept group, computed in parallel and emitted in input order.
pub fn survey(groups: &[FiniteGroup], w: &Word, word_name: &str, filter: SurveyFilter, cfg: &EnumConfig) -> Survey {
    let kept: Vec<&FiniteGroup> = groups
        .iter()
        .filter(|g| match filter {
            SurveyFilter::All => true,
            SurveyFilter::Solvable => g.is_solvable(),
            SurveyFilter::Nonsolvable => !g.is_solvable(),
        })
        .collect();
    let results: Vec<Result<SurveyRow>> = kept.par_iter().map(|g| survey_row(g, w, word_name, cfg)).collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (g, r) in kept.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push(SurveyFailure {
                group: g.name().to_string(),
                budget: matches!(e, Error::Budget { .. }),
                error: e.to_string(),
            }),
        }
    }
    let mut max: Option<ExactProbability> = None;
    let mut argmax = None;
    for row in rows.iter().filter(|r| !r.is_identity) {
        let p = row.probability();
        if max.as_ref().is_none_or(|m| p.ratio() > m.ratio()) {
            max = Some(p);
            argmax = Some(row.group.clone());
        }
    }
    let summary = SurveySummary {
        word: word_name.to_string(),
        groups: kept.len(),
        rows: rows.len(),
        identity_rows: rows.iter().filter(|r| r.is_identity).count(),
        max,
        argmax,
        failures,
    };
    Survey { rows, summary }
}

pub fn write_csv<W: Write>(rows: &[SurveyRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

//! Normal-subgroup specs for `prob --coset`:
//! `center | derived | whole | trivial | factor:k | normal-closure:i,j,...`.

use wordgap::{Elem, Error, FiniteGroup, Result, Subgroup};

pub fn parse_normal(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    let bad = |msg: String| Error::GroupSpec {
        spec: spec.to_string(),
        msg,
    };
    let spec = spec.trim();
    match spec {
        "center" => return Ok(g.center()),
        "derived" => return Ok(g.derived_subgroup()),
        "whole" => return Ok(g.whole()),
        "trivial" => return Ok(g.trivial_subgroup()),
        _ => {}
    }
    if let Some(k) = spec.strip_prefix("factor:") {
        let k: usize = k.parse().map_err(|_| bad("factor index is not an integer".into()))?;
        return g
            .factor(k)
            .cloned()
            .ok_or_else(|| bad(format!("{} has no direct factor {k}", g.name())));
    }
    if let Some(list) = spec.strip_prefix("normal-closure:") {
        let elems = parse_elements(g, list).map_err(bad)?;
        return Ok(g.normal_closure(&elems));
    }
    Err(bad(
        "expected center, derived, whole, trivial, factor:k or normal-closure:i,j".into(),
    ))
}

/// Comma-separated element indices, each below `|G|`.
pub fn parse_elements(g: &FiniteGroup, list: &str) -> std::result::Result<Vec<Elem>, String> {
    list.split(',')
        .map(|s| {
            let i: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not an element index"))?;
            if i as usize >= g.order() {
                return Err(format!("element {i} is out of range for order {}", g.order()));
            }
            Ok(Elem(i))
        })
        .collect()
}

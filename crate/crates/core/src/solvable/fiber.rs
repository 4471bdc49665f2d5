//! Fibers of maps that are multiplicative on a subgroup.

use serde::Serialize;

use crate::group::{Elem, FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum HypothesisFailure {
    /// `φ(gh) ≠ φ(g)φ(h)` for this `g ∈ G`, `h ∈ H`.
    NotMultiplicative { g: Elem, h: Elem },
    /// `φ(H) = {1}`.
    TrivialOnSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FiberCheck {
    Holds { fiber: usize, order: usize },
    Violated { fiber: usize, order: usize },
    HypothesisFailed { reason: HypothesisFailure },
}

impl FiberCheck {
    pub fn holds(&self) -> bool {
        matches!(self, FiberCheck::Holds { .. })
    }
}

/// With `phi` given as a value table, checks `φ(gh) = φ(g)φ(h)` for all
/// `g ∈ G, h ∈ H` and `φ(H) ≠ 1`, then `|φ⁻¹(1)| ≤ |G|/2`.
pub fn fiber_bound_check(g: &FiniteGroup, phi: &[Elem], h: &Subgroup) -> FiberCheck {
    assert_eq!(phi.len(), g.order(), "one value per element");
    let members = h.elements();
    if members.iter().all(|x| phi[x.index()].is_identity()) {
        return FiberCheck::HypothesisFailed {
            reason: HypothesisFailure::TrivialOnSubgroup,
        };
    }
    for a in g.elements() {
        for &b in &members {
            if phi[g.mul(a, b).index()] != g.mul(phi[a.index()], phi[b.index()]) {
                return FiberCheck::HypothesisFailed {
                    reason: HypothesisFailure::NotMultiplicative { g: a, h: b },
                };
            }
        }
    }
    let fiber = phi.iter().filter(|x| x.is_identity()).count();
    let order = g.order();
    if 2 * fiber <= order {
        FiberCheck::Holds { fiber, order }
    } else {
        FiberCheck::Violated { fiber, order }
    }
}

/// Tally of many fiber checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub checked: usize,
    pub held: usize,
    pub violated: usize,
    pub hypothesis_failed: usize,
    /// Largest fiber among checks that held or were violated.
    pub max_fiber: usize,
}

impl FiberSummary {
    pub fn record(&mut self, c: &FiberCheck) {
        self.checked += 1;
        match c {
            FiberCheck::Holds { fiber, .. } => {
                self.held += 1;
                self.max_fiber = self.max_fiber.max(*fiber);
            }
            FiberCheck::Violated { fiber, .. } => {
                self.violated += 1;
                self.max_fiber = self.max_fiber.max(*fiber);
            }
            FiberCheck::HypothesisFailed { .. } => self.hypothesis_failed += 1,
        }
    }

    pub fn all_held(&self) -> bool {
        self.held == self.checked
    }
}

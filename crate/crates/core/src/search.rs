//! Bounded enumeration of plans.
//!
//! Plans are enumerated in canonical order: shorter plans first, then
//! lexicographically by action, where ground actions are ordered by action
//! name and then argument names. All minimality notions built on top of this
//! module are relative to the horizon.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::GroundedAxioms;
use crate::error::EngineError;
use crate::explain::{Distance, DistanceMetric, PlanFeatures};
use crate::model::{ActionKind, Formula, Plan};
use crate::semantics::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modality {
    Objective,
    /// `K`
    Know,
    /// `B`
    Possible,
}

impl Modality {
    pub fn as_str(self) -> &'static str {
        match self {
            Modality::Objective => "objective",
            Modality::Know => "K",
            Modality::Possible => "B",
        }
    }

    /// Wraps `f` in this modality's operator; objective leaves it alone.
    pub fn apply(self, f: Formula) -> Formula {
        match self {
            Modality::Objective => f,
            Modality::Know => Formula::know(f),
            Modality::Possible => Formula::possible(f),
        }
    }

    /// Removes a leading operator of this modality, so that a goal written
    /// `K φ` under modality `K` means `φ`.
    pub fn strip(self, f: &Formula) -> Formula {
        match (self, f) {
            (Modality::Know, Formula::Know(inner)) | (Modality::Possible, Formula::Possible(inner)) => {
                (**inner).clone()
            }
            _ => f.clone(),
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Modality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "objective" => Ok(Modality::Objective),
            "K" | "k" => Ok(Modality::Know),
            "B" | "b" => Ok(Modality::Possible),
            other => Err(format!("unknown modality `{other}` (expected objective, K or B)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub horizon: usize,
    pub modality: Modality,
    pub require_real_exec: bool,
    pub require_known_exec: bool,
    pub max_candidates: usize,
    /// Let objective searches use sensing actions too.
    pub include_sensing: bool,
}

impl SearchConfig {
    pub fn new(horizon: usize, modality: Modality) -> Self {
        Self {
            horizon,
            modality,
            require_real_exec: true,
            require_known_exec: modality != Modality::Objective,
            max_candidates: usize::MAX,
            include_sensing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub plan: Plan,
    pub verdict: bool,
    pub checked_formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanSearch {
    pub candidates: Vec<Candidate>,
    /// Set when the whole space up to the horizon was searched without a hit.
    pub horizon_exhausted: bool,
}

/// The entailment a plan must satisfy:
/// objective `Exec(δ) ∧ [δ]φ`; epistemic `Exec(δ) ∧ [δ]Mφ ∧ M Exec(δ)`, with
/// the outer conjuncts present as configured.
pub fn goal_formula(plan: &Plan, phi: &Formula, cfg: &SearchConfig) -> Result<Formula, EngineError> {
    match cfg.modality {
        Modality::Objective => {
            if phi.has_epistemic() {
                return Err(EngineError::ModalityMismatch(
                    "objective planning with an epistemic goal".into(),
                ));
            }
            let mut parts = Vec::new();
            if cfg.require_real_exec {
                parts.push(Formula::exec(plan));
            }
            parts.push(Formula::after_plan(plan, phi.clone()));
            Ok(Formula::conjunction(parts))
        }
        m => {
            let mut parts = Vec::new();
            if cfg.require_real_exec {
                parts.push(Formula::exec(plan));
            }
            parts.push(Formula::after_plan(plan, m.apply(phi.clone())));
            if cfg.require_known_exec {
                parts.push(m.apply(Formula::exec(plan)));
            }
            Ok(Formula::conjunction(parts))
        }
    }
}

/// Canonical action indices usable in a search: sensing actions only when
/// asked for.
pub fn alphabet(ax: &GroundedAxioms, include_sensing: bool) -> Vec<usize> {
    (0..ax.actions().len())
        .filter(|&i| include_sensing || ax.kind(i) == ActionKind::Physical)
        .collect()
}

/// Every plan over `alphabet` of length at most `horizon`, in canonical order.
pub fn enumerate_plans(alphabet: &[usize], horizon: usize) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = vec![Vec::new()];
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..horizon {
        let mut next = Vec::with_capacity(level.len() * alphabet.len());
        for prefix in &level {
            for &a in alphabet {
                let mut p = prefix.clone();
                p.push(a as u16);
                next.push(p);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn to_plan(ax: &GroundedAxioms, ids: &[u16]) -> Plan {
    ids.iter().map(|&i| ax.actions()[i as usize].clone()).collect()
}

/// Breadth-first search for plans whose goal formula is entailed.
///
/// Extensions of a prefix that already violates a required executability
/// conjunct are pruned: `Exec(δ·a)` implies `Exec(δ)`, and likewise under `K`
/// and `B`.
pub fn find_plans(model: &Model, phi: &Formula, cfg: &SearchConfig) -> Result<PlanSearch, EngineError> {
    let ax = model.axioms();
    let phi = cfg.modality.strip(phi);
    let letters = alphabet(ax, cfg.include_sensing || cfg.modality != Modality::Objective);
    let mut found = Vec::new();
    let mut level: Vec<Plan> = vec![Plan::empty()];
    for length in 0..=cfg.horizon {
        let mut next = Vec::new();
        for plan in &level {
            let goal = goal_formula(plan, &phi, cfg)?;
            if model.entails(&goal)?.verdict {
                found.push(Candidate {
                    plan: plan.clone(),
                    verdict: true,
                    checked_formula: goal,
                });
                if found.len() >= cfg.max_candidates {
                    return Ok(PlanSearch {
                        candidates: found,
                        horizon_exhausted: false,
                    });
                }
            }
            if length == cfg.horizon {
                continue;
            }
            for &a in &letters {
                let extended = plan.then(ax.actions()[a].clone());
                if prefix_viable(model, &extended, cfg)? {
                    next.push(extended);
                }
            }
        }
        level = next;
    }
    let exhausted = found.is_empty();
    Ok(PlanSearch {
        candidates: found,
        horizon_exhausted: exhausted,
    })
}

fn prefix_viable(model: &Model, plan: &Plan, cfg: &SearchConfig) -> Result<bool, EngineError> {
    let mut parts = Vec::new();
    if cfg.require_real_exec {
        parts.push(Formula::exec(plan));
    }
    if cfg.require_known_exec && cfg.modality != Modality::Objective {
        parts.push(cfg.modality.apply(Formula::exec(plan)));
    }
    if parts.is_empty() {
        return Ok(true);
    }
    Ok(model.entails(&Formula::conjunction(parts))?.verdict)
}

/// All plans over `alphabet` up to `horizon`, grouped by ascending distance
/// from `plan` and canonically ordered within a group. `radius` bounds the
/// distance (both components, for the pair metric).
pub fn neighbors_by_distance(
    ax: &GroundedAxioms,
    plan: &Plan,
    metric: DistanceMetric,
    alphabet: &[usize],
    horizon: usize,
    radius: Option<usize>,
) -> Vec<(Distance, Plan)> {
    let features = PlanFeatures::new(ax.theory());
    let origin = features.of_plan(plan);
    let mut out: Vec<(Distance, Vec<u16>)> = enumerate_plans(alphabet, horizon)
        .into_iter()
        .map(|ids| {
            let f = features.of_indices(ax, &ids);
            (metric.between(&origin, &f), ids)
        })
        .filter(|(d, _)| radius.is_none_or(|r| d.within(r)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter()
        .map(|(d, ids)| (d, to_plan(ax, &ids)))
        .collect()
}

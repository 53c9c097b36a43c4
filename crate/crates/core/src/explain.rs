//! Plan distances and explanation synthesis.
//!
//! Every procedure searches candidates in a fixed order (distance, then
//! canonical plan order, then belief-change size) and stops at the first one
//! whose certifying entailment holds, so "minimal" always means minimal
//! within the configured horizon.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::dynamics::{satisfiable, GroundedAxioms};
use crate::error::{EngineError, ExplainError};
use crate::model::{ActionKind, ActionTerm, Formula, Plan, PredId, PredicateKind, Theory};
use crate::search::{alphabet, neighbors_by_distance, Modality};
use crate::semantics::{Model, QueryReport};

/// Conjunct sets of `Σ₀ − Σ₀′` larger than this are only searched up to
/// `MAX_CONJUNCTS` elements.
const FULL_SUBSET_LIMIT: usize = 12;
const MAX_CONJUNCTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceMetric {
    Length,
    Fluent,
    /// `(length distance, fluent distance)`, compared lexicographically.
    PlanEffect,
}

impl DistanceMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMetric::Length => "length",
            DistanceMetric::Fluent => "fluent",
            DistanceMetric::PlanEffect => "plan-effect",
        }
    }

    pub fn between(self, a: &Features, b: &Features) -> Distance {
        let len = a.len.abs_diff(b.len);
        let fluents = a.fluents.abs_diff(b.fluents);
        match self {
            DistanceMetric::Length => Distance::Scalar(len),
            DistanceMetric::Fluent => Distance::Scalar(fluents),
            DistanceMetric::PlanEffect => Distance::Pair(len, fluents),
        }
    }

    pub fn distance(self, theory: &Theory, a: &Plan, b: &Plan) -> Distance {
        let features = PlanFeatures::new(theory);
        self.between(&features.of_plan(a), &features.of_plan(b))
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistanceMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "length" => Ok(DistanceMetric::Length),
            "fluent" => Ok(DistanceMetric::Fluent),
            "plan-effect" => Ok(DistanceMetric::PlanEffect),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Scalar(usize),
    Pair(usize, usize),
}

impl Distance {
    /// Every component is at most `radius`.
    pub fn within(self, radius: usize) -> bool {
        match self {
            Distance::Scalar(d) => d <= radius,
            Distance::Pair(a, b) => a <= radius && b <= radius,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Scalar(d) => write!(f, "{d}"),
            Distance::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// The plan features the metrics compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Features {
    pub len: usize,
    pub fluents: usize,
}

/// Per action symbol, the fluents an occurrence of the action brings into a
/// plan's fluent set.
#[derive(Clone, Debug)]
pub struct PlanFeatures {
    masks: Vec<FixedBitSet>,
    predicates: usize,
}

impl PlanFeatures {
    pub fn new(theory: &Theory) -> Self {
        let predicates = theory.predicates().len();
        let mut masks = vec![FixedBitSet::with_capacity(predicates); theory.actions().len()];
        for ssa in theory.ssas() {
            let mut mentioned = BTreeSet::new();
            action_symbols(&ssa.body, &mut mentioned);
            for a in mentioned {
                masks[a].insert(ssa.fluent.index());
            }
        }
        for (a, decl) in theory.actions().iter().enumerate() {
            let mut preds = BTreeSet::new();
            predicate_symbols(&decl.poss, &mut preds);
            for p in preds {
                if theory.predicates()[p].kind == PredicateKind::Fluent {
                    masks[a].insert(p);
                }
            }
        }
        PlanFeatures { masks, predicates }
    }

    fn union(&self, symbols: impl Iterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.predicates);
        for a in symbols {
            set.union_with(&self.masks[a]);
        }
        set
    }

    pub fn fluent_set(&self, plan: &Plan) -> BTreeSet<PredId> {
        self.union(plan.iter().map(|a| a.action.index()))
            .ones()
            .map(|p| PredId(p as u16))
            .collect()
    }

    pub fn of_plan(&self, plan: &Plan) -> Features {
        Features {
            len: plan.len(),
            fluents: self.union(plan.iter().map(|a| a.action.index())).count_ones(..),
        }
    }

    /// Features of a plan given as indices into the grounded action list.
    pub fn of_indices(&self, ax: &GroundedAxioms, ids: &[u16]) -> Features {
        let symbols = ids.iter().map(|&i| ax.actions()[i as usize].action.index());
        Features {
            len: ids.len(),
            fluents: self.union(symbols).count_ones(..),
        }
    }
}

fn action_symbols(f: &Formula, out: &mut BTreeSet<usize>) {
    let term = |t: &ActionTerm, out: &mut BTreeSet<usize>| {
        if let ActionTerm::App { action, .. } = t {
            out.insert(action.index());
        }
    };
    use Formula::*;
    match f {
        True | False | Atom { .. } | Eq(..) => {}
        ActionEq(a, b) => {
            term(a, out);
            term(b, out);
        }
        Poss(a) | Sf(a) => term(a, out),
        Exec(actions) => actions.iter().for_each(|a| term(a, out)),
        After(a, g) => {
            term(a, out);
            action_symbols(g, out);
        }
        Not(g) | Forall(_, g) | Exists(_, g) | Know(g) | Possible(g) | OnlyKnow(g) => {
            action_symbols(g, out)
        }
        And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
            action_symbols(a, out);
            action_symbols(b, out);
        }
    }
}

fn predicate_symbols(f: &Formula, out: &mut BTreeSet<usize>) {
    use Formula::*;
    match f {
        Atom { pred, .. } => {
            out.insert(pred.index());
        }
        True | False | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) | Exec(_) => {}
        Not(g) | Forall(_, g) | Exists(_, g) | Know(g) | Possible(g) | OnlyKnow(g) | After(_, g) => {
            predicate_symbols(g, out)
        }
        And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
            predicate_symbols(a, out);
            predicate_symbols(b, out);
        }
    }
}

pub fn length_dist(a: &Plan, b: &Plan) -> usize {
    a.len().abs_diff(b.len())
}

/// Fluents whose successor state axiom mentions an action of the plan, plus
/// the fluents in the preconditions of the plan's actions.
pub fn fluent_set(plan: &Plan, theory: &Theory) -> BTreeSet<PredId> {
    PlanFeatures::new(theory).fluent_set(plan)
}

pub fn fluent_dist(a: &Plan, b: &Plan, theory: &Theory) -> usize {
    fluent_set(a, theory).len().abs_diff(fluent_set(b, theory).len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExplanationKind {
    CfPlan,
    DiverseSet,
    EpistemicCf,
    MissingActions,
    MissingKnowledge,
    MissingBoth,
    FalseBelief,
    /// A reconciliation under `B`: the agent need only consider the outcome
    /// possible.
    Credulous,
}

impl ExplanationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExplanationKind::CfPlan => "cf-plan",
            ExplanationKind::DiverseSet => "diverse-set",
            ExplanationKind::EpistemicCf => "epistemic-cf",
            ExplanationKind::MissingActions => "missing-actions",
            ExplanationKind::MissingKnowledge => "missing-knowledge",
            ExplanationKind::MissingBoth => "missing-both",
            ExplanationKind::FalseBelief => "false-belief",
            ExplanationKind::Credulous => "credulous",
        }
    }
}

impl fmt::Display for ExplanationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explanation {
    pub kind: ExplanationKind,
    pub modality: Modality,
    pub plan: Option<Plan>,
    /// `α`: formulas added to what the agent believes.
    pub added: Vec<Formula>,
    /// `β`: formulas removed from what the agent believes.
    pub removed: Vec<Formula>,
    pub distance: Option<Distance>,
    /// Minimality is relative to this horizon.
    pub horizon: usize,
    /// The entailment that certifies the explanation ...
    pub certificate: Formula,
    /// ... checked under these believed initial axioms.
    pub beliefs: Vec<Formula>,
    pub verification: QueryReport,
}

/// Re-checks an explanation's certificate from scratch.
pub fn verify(ax: &GroundedAxioms, e: &Explanation, cap: u64) -> Result<QueryReport, EngineError> {
    let model = Model::build(ax, ax.theory().sigma0(), &e.beliefs, cap)?;
    model.entails(&e.certificate)
}

/// `(α, β)` candidates of a belief change, with their model and size.
struct BeliefChange<'ax> {
    added: Vec<Formula>,
    removed: Vec<Formula>,
    beliefs: Vec<Formula>,
    model: Model<'ax>,
}

pub struct Explainer<'ax> {
    ax: &'ax GroundedAxioms,
    model: Model<'ax>,
    horizon: usize,
    cap: u64,
    include_sensing: bool,
}

impl<'ax> Explainer<'ax> {
    pub fn new(ax: &'ax GroundedAxioms, horizon: usize, cap: u64) -> Result<Self, EngineError> {
        Ok(Explainer {
            ax,
            model: Model::new(ax, cap)?,
            horizon,
            cap,
            include_sensing: false,
        })
    }

    /// Let the objective procedures use sensing actions too.
    pub fn include_sensing(mut self, yes: bool) -> Self {
        self.include_sensing = yes;
        self
    }

    pub fn model(&self) -> &Model<'ax> {
        &self.model
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    fn theory(&self) -> &'ax Theory {
        self.ax.theory()
    }

    fn entails(&self, f: &Formula) -> Result<bool, EngineError> {
        Ok(self.model.entails(f)?.verdict)
    }

    fn require(&self, f: &Formula, condition: &str) -> Result<(), ExplainError> {
        if self.entails(f)? {
            Ok(())
        } else {
            Err(ExplainError::PreconditionFailed(condition.to_string()))
        }
    }

    fn neighbors(&self, plan: &Plan, metric: DistanceMetric, sensing: bool) -> Vec<(Distance, Plan)> {
        let letters = alphabet(self.ax, sensing);
        neighbors_by_distance(self.ax, plan, metric, &letters, self.horizon, None)
    }

    fn explanation(
        &self,
        kind: ExplanationKind,
        modality: Modality,
        plan: Option<Plan>,
        distance: Option<Distance>,
        certificate: Formula,
    ) -> Result<Explanation, EngineError> {
        let verification = self.model.entails(&certificate)?;
        Ok(Explanation {
            kind,
            modality,
            plan,
            added: Vec::new(),
            removed: Vec::new(),
            distance,
            horizon: self.horizon,
            certificate,
            beliefs: self.theory().sigma0_believed().to_vec(),
            verification,
        })
    }

    /// The closest `δ′` with `Σ ⊨ Exec(δ′) ∧ [δ′]¬φ`, given that
    /// `Σ ⊨ Exec(δ) ∧ [δ]φ`.
    pub fn cf_explain(&self, plan: &Plan, phi: &Formula, metric: DistanceMetric) -> Result<Explanation, ExplainError> {
        objective(phi)?;
        self.require(
            &Formula::and(Formula::exec(plan), Formula::after_plan(plan, phi.clone())),
            "Σ ⊨ Exec(δ) ∧ [δ]φ does not hold",
        )?;
        let neg = Formula::not(phi.clone());
        for (d, cand) in self.neighbors(plan, metric, self.include_sensing) {
            let cert = Formula::and(Formula::exec(&cand), Formula::after_plan(&cand, neg.clone()));
            if self.entails(&cert)? {
                return Ok(self.explanation(ExplanationKind::CfPlan, Modality::Objective, Some(cand), Some(d), cert)?);
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// Every `δᵢ` within distance `k` of `δ` with `Σ ⊨ Exec(δᵢ) ∧ [δᵢ](α ∧ ¬φ)`.
    pub fn diverse_cf(
        &self,
        plan: &Plan,
        phi: &Formula,
        alpha: &Formula,
        k: usize,
        metric: DistanceMetric,
    ) -> Result<Vec<Explanation>, ExplainError> {
        objective(alpha)?;
        objective(phi)?;
        self.diverse_target(plan, &Formula::and(alpha.clone(), Formula::not(phi.clone())), k, metric)
    }

    /// As [`Explainer::diverse_cf`] with `α ∧ ¬φ` given as a single target.
    pub fn diverse_target(
        &self,
        plan: &Plan,
        target: &Formula,
        k: usize,
        metric: DistanceMetric,
    ) -> Result<Vec<Explanation>, ExplainError> {
        objective(target)?;
        let mut found: Vec<(Distance, Plan, Formula)> = Vec::new();
        for (d, cand) in self.neighbors(plan, metric, self.include_sensing) {
            if !d.within(k) {
                continue;
            }
            let cert = Formula::and(Formula::exec(&cand), Formula::after_plan(&cand, target.clone()));
            if self.entails(&cert)? {
                found.push((d, cand, cert));
            }
        }
        if found.is_empty() {
            return Err(ExplainError::NotFound { horizon: self.horizon });
        }
        let index = |p: &Plan| -> Vec<usize> { p.iter().map(|a| self.ax.action_index(a)).collect() };
        found.sort_by_key(|(_, p, _)| (p.len(), index(p)));
        found.dedup_by(|a, b| a.1 == b.1);
        found
            .into_iter()
            .map(|(d, p, cert)| {
                Ok(self.explanation(ExplanationKind::DiverseSet, Modality::Objective, Some(p), Some(d), cert)?)
            })
            .collect()
    }

    /// The closest `δ′` after which the agent knows `¬φ`, given that it
    /// knows `φ` after `δ`.
    pub fn epistemic_cf(&self, plan: &Plan, phi: &Formula, metric: DistanceMetric) -> Result<Explanation, ExplainError> {
        let phi = Modality::Know.strip(phi);
        self.require(
            &known_outcome(plan, &phi, Modality::Know),
            "Σ ⊨ [δ]Kφ ∧ K Exec(δ) does not hold",
        )?;
        let neg = Formula::not(phi);
        for (d, cand) in self.neighbors(plan, metric, true) {
            let cert = known_outcome(&cand, &neg, Modality::Know);
            if self.entails(&cert)? {
                return Ok(self.explanation(ExplanationKind::EpistemicCf, Modality::Know, Some(cand), Some(d), cert)?);
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// The agent cannot know `φ` after `δ` because actions are missing: the
    /// closest `δ′` that achieves `φ` and lets the agent know it. At equal
    /// distance, plans that only add sensing to `δ` come first.
    pub fn missing_actions(&self, plan: &Plan, phi: &Formula, metric: DistanceMetric) -> Result<Explanation, ExplainError> {
        let phi = Modality::Know.strip(phi);
        self.require(
            &Formula::and(Formula::exec(plan), Formula::know(Formula::exec(plan))),
            "Σ ⊨ Exec(δ) ∧ K Exec(δ) does not hold",
        )?;
        if self.entails(&Formula::after_plan(plan, Formula::know(phi.clone())))? {
            return Err(ExplainError::PreconditionFailed("Σ ⊭ [δ]Kφ does not hold".into()));
        }
        let mut candidates = self.neighbors(plan, metric, true);
        candidates.sort_by_key(|(d, cand)| (*d, !self.sensing_augmentation(plan, cand)));
        for (d, cand) in candidates {
            let cert = full_outcome(&cand, &phi, Modality::Know);
            if self.entails(&cert)? {
                return Ok(self.explanation(ExplanationKind::MissingActions, Modality::Know, Some(cand), Some(d), cert)?);
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// `cand` is `plan` with only sensing actions inserted.
    pub fn sensing_augmentation(&self, plan: &Plan, cand: &Plan) -> bool {
        cand.len() > plan.len()
            && cand
                .iter()
                .filter(|a| self.ax.kind(self.ax.action_index(a)) == ActionKind::Physical)
                .eq(plan.iter())
    }

    /// `δ` achieves `φ` but the agent cannot know it: the smallest
    /// conjunction `α` of truths the agent lacks such that only-knowing
    /// `Θ₀′ ∧ α` makes the outcome known.
    pub fn missing_knowledge(&self, plan: &Plan, phi: &Formula) -> Result<Explanation, ExplainError> {
        let phi = Modality::Know.strip(phi);
        self.require(&Formula::exec(plan), "Σ ⊨ Exec(δ) does not hold")?;
        self.require(&Formula::after_plan(plan, phi.clone()), "Σ ⊨ [δ]φ does not hold")?;
        let cert = known_outcome(plan, &phi, Modality::Know);
        if self.entails(&cert)? {
            return Err(ExplainError::PreconditionFailed(
                "Σ ⊭ [δ]Kφ ∧ K Exec(δ) does not hold".into(),
            ));
        }
        for change in self.additions(false)? {
            let report = change.model.entails(&cert)?;
            if report.verdict {
                return Ok(Explanation {
                    kind: ExplanationKind::MissingKnowledge,
                    modality: Modality::Know,
                    plan: None,
                    added: change.added,
                    removed: Vec::new(),
                    distance: None,
                    horizon: self.horizon,
                    certificate: cert,
                    beliefs: change.beliefs,
                    verification: report,
                });
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// Both actions and knowledge may be missing: the jointly minimal
    /// `(δ′, α)`, closest `δ′` first and smallest `α` second. When `δ`
    /// already achieves `φ` and adding sensing to it suffices, no knowledge
    /// is added.
    pub fn missing_both(
        &self,
        plan: &Plan,
        phi: &Formula,
        metric: DistanceMetric,
        modality: Modality,
    ) -> Result<Explanation, ExplainError> {
        epistemic_modality(modality)?;
        let phi = modality.strip(phi);
        self.require(&Formula::exec(plan), "Σ ⊨ Exec(δ) does not hold")?;
        let achieved = self.entails(&Formula::after_plan(plan, phi.clone()))?;
        let known = self.entails(&Formula::after_plan(plan, modality.apply(phi.clone())))?;
        if achieved && known {
            return Err(ExplainError::PreconditionFailed(
                "Σ ⊭ [δ]φ or Σ ⊭ [δ]Mφ does not hold".into(),
            ));
        }
        let kind = reconcile_kind(ExplanationKind::MissingBoth, modality);
        let candidates = self.neighbors(plan, metric, true);

        if achieved {
            for (d, cand) in candidates.iter().filter(|(_, c)| self.sensing_augmentation(plan, c)) {
                let cert = full_outcome(cand, &phi, modality);
                if self.entails(&cert)? {
                    return Ok(self.explanation(kind, modality, Some(cand.clone()), Some(*d), cert)?);
                }
            }
        }

        let changes = self.additions(true)?;
        for (d, cand) in candidates {
            if !self.entails(&real_outcome(&cand, &phi))? {
                continue;
            }
            let cert = full_outcome(&cand, &phi, modality);
            for change in &changes {
                let report = change.model.entails(&cert)?;
                if report.verdict {
                    return Ok(Explanation {
                        kind,
                        modality,
                        plan: Some(cand),
                        added: change.added.clone(),
                        removed: Vec::new(),
                        distance: Some(d),
                        horizon: self.horizon,
                        certificate: cert,
                        beliefs: change.beliefs.clone(),
                        verification: report,
                    });
                }
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// The agent believes something false: swap one believed formula `β` for
    /// a truth `α` (under `B`, `α` may be omitted), together with the
    /// closest `δ′` that then achieves `φ` and lets the agent know it.
    pub fn false_belief(
        &self,
        plan: &Plan,
        phi: &Formula,
        metric: DistanceMetric,
        modality: Modality,
    ) -> Result<Explanation, ExplainError> {
        epistemic_modality(modality)?;
        let phi = modality.strip(phi);
        let t = self.theory();
        let truths = normalized(t.sigma0());
        let beliefs = normalized(t.sigma0_believed());
        if beliefs.iter().all(|b| truths.contains(b)) {
            return Err(ExplainError::PreconditionFailed("Θ₀′ ⊄ Θ₀ does not hold".into()));
        }
        let counter = Formula::and(
            Formula::conjunction(t.sigma0().iter().cloned()),
            Formula::not(Formula::conjunction(t.sigma0_believed().iter().cloned())),
        );
        if !satisfiable(&self.ax.ground(&counter)?) {
            return Err(ExplainError::PreconditionFailed("Θ₀ ⊭ Θ₀′ does not hold".into()));
        }
        self.require(&Formula::exec(plan), "Σ ⊨ Exec(δ) does not hold")?;
        if self.entails(&full_outcome(plan, &phi, modality))? {
            return Err(ExplainError::PreconditionFailed(
                "Σ ⊭ [δ](φ ∧ Mφ) ∧ M Exec(δ) does not hold".into(),
            ));
        }

        let changes = self.swaps(modality == Modality::Possible)?;
        if changes.is_empty() {
            return Err(ExplainError::InconsistentBelief);
        }
        let kind = reconcile_kind(ExplanationKind::FalseBelief, modality);
        for (d, cand) in self.neighbors(plan, metric, true) {
            if !self.entails(&real_outcome(&cand, &phi))? {
                continue;
            }
            let cert = full_outcome(&cand, &phi, modality);
            for change in &changes {
                let report = change.model.entails(&cert)?;
                if report.verdict {
                    return Ok(Explanation {
                        kind,
                        modality,
                        plan: Some(cand),
                        added: change.added.clone(),
                        removed: change.removed.clone(),
                        distance: Some(d),
                        horizon: self.horizon,
                        certificate: cert,
                        beliefs: change.beliefs.clone(),
                        verification: report,
                    });
                }
            }
        }
        Err(ExplainError::NotFound { horizon: self.horizon })
    }

    /// Conjunctions of `Σ₀ − Σ₀′` in search order: ground-atom size, then
    /// number of conjuncts, then position. Conjunctions that leave nothing
    /// believable are skipped.
    fn additions(&self, with_empty: bool) -> Result<Vec<BeliefChange<'ax>>, EngineError> {
        let t = self.theory();
        let missing = belief_gap(t);
        let names = t.object_count();
        let mut subsets: Vec<(usize, Vec<usize>)> = subsets(missing.len())
            .into_iter()
            .filter(|s| with_empty || !s.is_empty())
            .map(|s| (s.iter().map(|&i| missing[i].atom_size(names)).sum(), s))
            .collect();
        subsets.sort_by(|(sa, a), (sb, b)| (sa, a.len(), a).cmp(&(sb, b.len(), b)));
        let mut out = Vec::new();
        for (_, subset) in subsets {
            let added: Vec<Formula> = subset.iter().map(|&i| missing[i].clone()).collect();
            let model = self.model.restrict_epistemic(&Formula::conjunction(added.iter().cloned()))?;
            if model.epistemic().is_clear() {
                continue;
            }
            let mut beliefs = t.sigma0_believed().to_vec();
            beliefs.extend(added.iter().cloned());
            out.push(BeliefChange {
                added,
                removed: Vec::new(),
                beliefs,
                model,
            });
        }
        Ok(out)
    }

    /// Single swaps `(Θ₀′ − {β}) ∪ {α}` with `α ∈ Θ₀ − Θ₀′` and `β ∈ Θ₀′`,
    /// ordered by `|α| + |β|` and then position. Unsatisfiable belief sets
    /// are skipped.
    fn swaps(&self, allow_no_addition: bool) -> Result<Vec<BeliefChange<'ax>>, EngineError> {
        let t = self.theory();
        let names = t.object_count();
        let gap = belief_gap(t);
        let mut additions: Vec<Option<&Formula>> = gap.iter().map(Some).collect();
        if allow_no_addition {
            additions.insert(0, None);
        }
        let mut keyed = Vec::new();
        for (ai, alpha) in additions.iter().enumerate() {
            for (bi, beta) in t.sigma0_believed().iter().enumerate() {
                let size = alpha.map_or(0, |a| a.atom_size(names)) + beta.atom_size(names);
                keyed.push((size, ai, bi, *alpha, beta));
            }
        }
        keyed.sort_by_key(|&(size, ai, bi, _, _)| (size, ai, bi));
        let mut out = Vec::new();
        for (_, _, bi, alpha, beta) in keyed {
            let mut beliefs: Vec<Formula> = t
                .sigma0_believed()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != bi)
                .map(|(_, f)| f.clone())
                .collect();
            beliefs.extend(alpha.cloned());
            let model = Model::build(self.ax, t.sigma0(), &beliefs, self.cap)?;
            if model.epistemic().is_clear() {
                continue;
            }
            out.push(BeliefChange {
                added: alpha.cloned().into_iter().collect(),
                removed: vec![beta.clone()],
                beliefs,
                model,
            });
        }
        Ok(out)
    }
}

fn objective(f: &Formula) -> Result<(), EngineError> {
    if f.is_objective() {
        Ok(())
    } else {
        Err(EngineError::NonObjective(
            "counterfactual goals must be objective".into(),
        ))
    }
}

fn epistemic_modality(m: Modality) -> Result<(), EngineError> {
    if m == Modality::Objective {
        Err(EngineError::ModalityMismatch(
            "reconciliation needs modality K or B".into(),
        ))
    } else {
        Ok(())
    }
}

fn reconcile_kind(kind: ExplanationKind, m: Modality) -> ExplanationKind {
    if m == Modality::Possible {
        ExplanationKind::Credulous
    } else {
        kind
    }
}

/// `[δ]Mφ ∧ M Exec(δ)`
fn known_outcome(plan: &Plan, phi: &Formula, m: Modality) -> Formula {
    Formula::and(
        Formula::after_plan(plan, m.apply(phi.clone())),
        m.apply(Formula::exec(plan)),
    )
}

/// `Exec(δ) ∧ [δ]φ`
fn real_outcome(plan: &Plan, phi: &Formula) -> Formula {
    Formula::and(Formula::exec(plan), Formula::after_plan(plan, phi.clone()))
}

/// `[δ](φ ∧ Mφ) ∧ Exec(δ) ∧ M Exec(δ)`
fn full_outcome(plan: &Plan, phi: &Formula, m: Modality) -> Formula {
    Formula::conjunction([
        Formula::after_plan(plan, Formula::and(phi.clone(), m.apply(phi.clone()))),
        Formula::exec(plan),
        m.apply(Formula::exec(plan)),
    ])
}

fn normalized(fs: &[Formula]) -> Vec<Formula> {
    fs.iter().map(Formula::normalize).collect()
}

/// `Σ₀ − Σ₀′`, compared after normalization.
pub fn belief_gap(t: &Theory) -> Vec<Formula> {
    let believed = normalized(t.sigma0_believed());
    t.sigma0()
        .iter()
        .filter(|f| !believed.contains(&f.normalize()))
        .cloned()
        .collect()
}

/// Index subsets of `0..n`; all of them for small `n`, otherwise those of
/// at most `MAX_CONJUNCTS` elements.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    if n <= FULL_SUBSET_LIMIT {
        return (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
    }
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..MAX_CONJUNCTS {
        let mut next = Vec::new();
        for s in &level {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

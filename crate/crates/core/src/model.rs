//! The language: object names, predicate and action symbols, formulas, plans,
//! and the basic action theory container every other module reads from.
//!
//! Quantifiers range over the finitely many object names declared by a
//! theory. Names are interned as small indices, so two distinct names always
//! denote distinct objects.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::SourceSpan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectName(pub(crate) u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredId(pub(crate) u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionId(pub(crate) u16);

impl ObjectName {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl PredId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateKind {
    Fluent,
    Rigid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateSymbol {
    pub name: String,
    pub arity: usize,
    pub kind: PredicateKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: PredId,
    pub args: Vec<ObjectName>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Physical,
    Sensing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAction {
    pub action: ActionId,
    pub args: Vec<ObjectName>,
}

/// A finite sequence of ground actions. The empty plan is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plan {
    actions: Vec<GroundAction>,
}

impl Plan {
    pub fn new(actions: Vec<GroundAction>) -> Self {
        Self { actions }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroundAction> {
        self.actions.iter()
    }

    /// `δ·a`
    pub fn then(&self, action: GroundAction) -> Plan {
        let mut actions = self.actions.clone();
        actions.push(action);
        Plan { actions }
    }

    /// `δ·δ′`
    pub fn concat(&self, other: &Plan) -> Plan {
        let mut actions = self.actions.clone();
        actions.extend(other.actions.iter().cloned());
        Plan { actions }
    }
}

impl FromIterator<GroundAction> for Plan {
    fn from_iter<I: IntoIterator<Item = GroundAction>>(iter: I) -> Self {
        Plan::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Name(ObjectName),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionTerm {
    /// The action variable of a successor state axiom.
    Var(String),
    App { action: ActionId, args: Vec<Term> },
}

impl ActionTerm {
    pub fn ground(action: &GroundAction) -> Self {
        ActionTerm::App {
            action: action.action,
            args: action.args.iter().map(|&n| Term::Name(n)).collect(),
        }
    }

    /// The ground action denoted by this term, if it contains no variables.
    pub fn as_ground(&self) -> Option<GroundAction> {
        match self {
            ActionTerm::Var(_) => None,
            ActionTerm::App { action, args } => {
                let args = args
                    .iter()
                    .map(|t| match t {
                        Term::Name(n) => Some(*n),
                        Term::Var(_) => None,
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(GroundAction {
                    action: *action,
                    args,
                })
            }
        }
    }
}

/// Formulas of the modal language.
///
/// `Or`, `Implies`, `Iff`, `Exists`, `False` and `Exec` are abbreviations;
/// [`Formula::normalize`] rewrites them into the core connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom { pred: PredId, args: Vec<Term> },
    Eq(Term, Term),
    ActionEq(ActionTerm, ActionTerm),
    Poss(ActionTerm),
    Sf(ActionTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `[a]α`
    After(ActionTerm, Box<Formula>),
    Know(Box<Formula>),
    /// `B α`: α holds in some compatible world of the epistemic state.
    Possible(Box<Formula>),
    OnlyKnow(Box<Formula>),
    Exec(Vec<ActionTerm>),
}

impl Formula {
    pub fn atom(pred: PredId, args: Vec<Term>) -> Formula {
        Formula::Atom { pred, args }
    }

    pub fn ground_atom(atom: &GroundAtom) -> Formula {
        Formula::Atom {
            pred: atom.pred,
            args: atom.args.iter().map(|&n| Term::Name(n)).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(f))
    }

    pub fn exists(var: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(f))
    }

    pub fn know(f: Formula) -> Formula {
        Formula::Know(Box::new(f))
    }

    pub fn possible(f: Formula) -> Formula {
        Formula::Possible(Box::new(f))
    }

    pub fn after(action: &GroundAction, f: Formula) -> Formula {
        Formula::After(ActionTerm::ground(action), Box::new(f))
    }

    /// `[δ]α`, nesting one `[a]` per action.
    pub fn after_plan(plan: &Plan, f: Formula) -> Formula {
        plan.iter()
            .rev()
            .fold(f, |acc, a| Formula::after(a, acc))
    }

    pub fn exec(plan: &Plan) -> Formula {
        Formula::Exec(plan.iter().map(ActionTerm::ground).collect())
    }

    pub fn poss(action: &GroundAction) -> Formula {
        Formula::Poss(ActionTerm::ground(action))
    }

    pub fn sf(action: &GroundAction) -> Formula {
        Formula::Sf(ActionTerm::ground(action))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::True,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// Rewrites abbreviations into `{¬, ∧, ∀, =, atoms, [a], K, B, O}` and
    /// unfolds `Exec(δ)`.
    pub fn normalize(&self) -> Formula {
        use Formula::*;
        match self {
            True => True,
            False => Formula::not(True),
            Atom { .. } | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) => self.clone(),
            Not(f) => Formula::not(f.normalize()),
            And(a, b) => Formula::and(a.normalize(), b.normalize()),
            Or(a, b) => Formula::not(Formula::and(
                Formula::not(a.normalize()),
                Formula::not(b.normalize()),
            )),
            Implies(a, b) => Formula::not(Formula::and(a.normalize(), Formula::not(b.normalize()))),
            Iff(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                Formula::and(
                    Formula::not(Formula::and(a.clone(), Formula::not(b.clone()))),
                    Formula::not(Formula::and(b, Formula::not(a))),
                )
            }
            Forall(x, f) => Formula::forall(x.clone(), f.normalize()),
            Exists(x, f) => Formula::not(Formula::forall(x.clone(), Formula::not(f.normalize()))),
            After(a, f) => After(a.clone(), Box::new(f.normalize())),
            Know(f) => Formula::know(f.normalize()),
            Possible(f) => Formula::possible(f.normalize()),
            OnlyKnow(f) => OnlyKnow(Box::new(f.normalize())),
            Exec(actions) => exec_unfold(actions).normalize(),
        }
    }

    /// Replaces every free occurrence of `var` by `name`.
    pub fn substitute(&self, var: &str, name: ObjectName) -> Formula {
        use Formula::*;
        let term = |t: &Term| match t {
            Term::Var(v) if v == var => Term::Name(name),
            other => other.clone(),
        };
        let action = |a: &ActionTerm| match a {
            ActionTerm::Var(v) => ActionTerm::Var(v.clone()),
            ActionTerm::App { action, args } => ActionTerm::App {
                action: *action,
                args: args.iter().map(term).collect(),
            },
        };
        let rec = |f: &Formula| Box::new(f.substitute(var, name));
        match self {
            True | False => self.clone(),
            Atom { pred, args } => Atom {
                pred: *pred,
                args: args.iter().map(term).collect(),
            },
            Eq(a, b) => Eq(term(a), term(b)),
            ActionEq(a, b) => ActionEq(action(a), action(b)),
            Poss(a) => Poss(action(a)),
            Sf(a) => Sf(action(a)),
            Not(f) => Not(rec(f)),
            And(a, b) => And(rec(a), rec(b)),
            Or(a, b) => Or(rec(a), rec(b)),
            Implies(a, b) => Implies(rec(a), rec(b)),
            Iff(a, b) => Iff(rec(a), rec(b)),
            Forall(x, _) | Exists(x, _) if x == var => self.clone(),
            Forall(x, f) => Forall(x.clone(), rec(f)),
            Exists(x, f) => Exists(x.clone(), rec(f)),
            After(a, f) => After(action(a), rec(f)),
            Know(f) => Know(rec(f)),
            Possible(f) => Possible(rec(f)),
            OnlyKnow(f) => OnlyKnow(rec(f)),
            Exec(actions) => Exec(actions.iter().map(action).collect()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        use Formula::*;
        let term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        let action = |a: &ActionTerm, bound: &Vec<String>, out: &mut BTreeSet<String>| match a {
            ActionTerm::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            ActionTerm::App { args, .. } => {
                for t in args {
                    term(t, bound, out);
                }
            }
        };
        match self {
            True | False => {}
            Atom { args, .. } => {
                for t in args {
                    term(t, bound, out);
                }
            }
            Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            ActionEq(a, b) => {
                action(a, bound, out);
                action(b, bound, out);
            }
            Poss(a) | Sf(a) => action(a, bound, out),
            Not(f) | Know(f) | Possible(f) | OnlyKnow(f) => f.collect_free(bound, out),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Forall(x, f) | Exists(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            After(a, f) => {
                action(a, bound, out);
                f.collect_free(bound, out);
            }
            Exec(actions) => {
                for a in actions {
                    action(a, bound, out);
                }
            }
        }
    }

    /// Universal closure over the free variables, outermost variable first in sorted order.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::forall(v, acc))
    }

    /// No `K`, `B`, `O`, `[a]` or `Exec`.
    pub fn is_objective(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Atom { .. } | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) => true,
            Not(f) | Forall(_, f) | Exists(_, f) => f.is_objective(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.is_objective() && b.is_objective(),
            After(..) | Know(_) | Possible(_) | OnlyKnow(_) | Exec(_) => false,
        }
    }

    /// Whether any of `K`, `B`, `O` occurs.
    pub fn has_epistemic(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Atom { .. } | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) | Exec(_) => false,
            Know(_) | Possible(_) | OnlyKnow(_) => true,
            Not(f) | Forall(_, f) | Exists(_, f) | After(_, f) => f.has_epistemic(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.has_epistemic() || b.has_epistemic(),
        }
    }

    /// Nesting depth of `K`, `B` and `[a]` operators.
    pub fn modal_depth(&self) -> usize {
        use Formula::*;
        match self {
            True | False | Atom { .. } | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) => 0,
            Exec(actions) => actions.len(),
            Not(f) | Forall(_, f) | Exists(_, f) => f.modal_depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.modal_depth().max(b.modal_depth()),
            After(_, f) | Know(f) | Possible(f) | OnlyKnow(f) => 1 + f.modal_depth(),
        }
    }

    /// Ground-atom occurrences, with each quantifier multiplying its body by
    /// the number of names it ranges over.
    pub fn atom_size(&self, names: usize) -> usize {
        use Formula::*;
        match self {
            True | False | Eq(..) | ActionEq(..) => 0,
            Atom { .. } | Poss(_) | Sf(_) => 1,
            Exec(actions) => actions.len(),
            Not(f) | After(_, f) | Know(f) | Possible(f) | OnlyKnow(f) => f.atom_size(names),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.atom_size(names) + b.atom_size(names),
            Forall(_, f) | Exists(_, f) => names * f.atom_size(names),
        }
    }
}

/// `Exec(⟨⟩) = true`, `Exec(a) = Poss(a)`, `Exec(a·δ) = Poss(a) ∧ [a]Exec(δ)`.
pub fn exec_formula(plan: &Plan) -> Formula {
    exec_unfold(&plan.iter().map(ActionTerm::ground).collect::<Vec<_>>())
}

fn exec_unfold(actions: &[ActionTerm]) -> Formula {
    match actions {
        [] => Formula::True,
        [a] => Formula::Poss(a.clone()),
        [a, rest @ ..] => Formula::and(
            Formula::Poss(a.clone()),
            Formula::After(a.clone(), Box::new(exec_unfold(rest))),
        ),
    }
}

#[derive(Clone, Debug)]
pub struct ActionDecl {
    pub name: String,
    pub params: Vec<String>,
    pub poss: Formula,
    pub sense: Option<Formula>,
    pub span: SourceSpan,
}

impl ActionDecl {
    pub fn kind(&self) -> ActionKind {
        match &self.sense {
            Some(f) if *f != Formula::True => ActionKind::Sensing,
            _ => ActionKind::Physical,
        }
    }
}

impl PartialEq for ActionDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.poss == other.poss
            && self.sense == other.sense
    }
}

impl Eq for ActionDecl {}

/// `□[a] F(x⃗) ≡ body`, with `action_var` naming `a` inside the body.
#[derive(Clone, Debug)]
pub struct SsaDecl {
    pub fluent: PredId,
    pub params: Vec<String>,
    pub action_var: String,
    pub body: Formula,
    pub span: SourceSpan,
}

impl PartialEq for SsaDecl {
    fn eq(&self, other: &Self) -> bool {
        self.fluent == other.fluent
            && self.params == other.params
            && self.action_var == other.action_var
            && self.body == other.body
    }
}

impl Eq for SsaDecl {}

/// A basic action theory over a finite set of object names.
///
/// `sigma0` is what is true initially, `sigma0_believed` what the agent
/// only-knows initially; both share the dynamic axioms.
#[derive(Clone, Debug)]
pub struct Theory {
    name: String,
    objects: Vec<String>,
    predicates: Vec<PredicateSymbol>,
    actions: Vec<ActionDecl>,
    ssas: Vec<SsaDecl>,
    sigma0: Vec<Formula>,
    sigma0_believed: Vec<Formula>,
    object_index: HashMap<String, ObjectName>,
    predicate_index: HashMap<String, PredId>,
    action_index: HashMap<String, ActionId>,
}

impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.objects == other.objects
            && self.predicates == other.predicates
            && self.actions == other.actions
            && self.ssas == other.ssas
            && self.sigma0 == other.sigma0
            && self.sigma0_believed == other.sigma0_believed
    }
}

impl Eq for Theory {}

impl Theory {
    /// Assembles a theory without validation; the parser is the validating entry point.
    pub fn from_parts(
        name: String,
        objects: Vec<String>,
        predicates: Vec<PredicateSymbol>,
        actions: Vec<ActionDecl>,
        ssas: Vec<SsaDecl>,
        sigma0: Vec<Formula>,
        sigma0_believed: Vec<Formula>,
    ) -> Self {
        let object_index = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjectName(i as u16)))
            .collect();
        let predicate_index = predicates
            .iter()
            .enumerate()
            .map(|(i, p)| (p.name.clone(), PredId(i as u16)))
            .collect();
        let action_index = actions
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ActionId(i as u16)))
            .collect();
        Self {
            name,
            objects,
            predicates,
            actions,
            ssas,
            sigma0,
            sigma0_believed,
            object_index,
            predicate_index,
            action_index,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjectName> + '_ {
        (0..self.objects.len()).map(|i| ObjectName(i as u16))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, n: ObjectName) -> &str {
        &self.objects[n.index()]
    }

    pub fn object(&self, name: &str) -> Option<ObjectName> {
        self.object_index.get(name).copied()
    }

    pub fn predicates(&self) -> &[PredicateSymbol] {
        &self.predicates
    }

    pub fn predicate(&self, name: &str) -> Option<PredId> {
        self.predicate_index.get(name).copied()
    }

    pub fn predicate_symbol(&self, p: PredId) -> &PredicateSymbol {
        &self.predicates[p.index()]
    }

    pub fn actions(&self) -> &[ActionDecl] {
        &self.actions
    }

    pub fn action(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    pub fn action_decl(&self, a: ActionId) -> &ActionDecl {
        &self.actions[a.index()]
    }

    pub fn ssas(&self) -> &[SsaDecl] {
        &self.ssas
    }

    pub fn ssa_for(&self, fluent: PredId) -> Option<&SsaDecl> {
        self.ssas.iter().find(|s| s.fluent == fluent)
    }

    pub fn sigma0(&self) -> &[Formula] {
        &self.sigma0
    }

    pub fn sigma0_believed(&self) -> &[Formula] {
        &self.sigma0_believed
    }

    /// Same dynamics and truths, different initial beliefs.
    pub fn with_beliefs(&self, believed: Vec<Formula>) -> Theory {
        let mut t = self.clone();
        t.sigma0_believed = believed;
        t
    }

    pub fn fluents(&self) -> impl Iterator<Item = PredId> + '_ {
        self.predicates
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind == PredicateKind::Fluent)
            .map(|(i, _)| PredId(i as u16))
    }

    pub fn rigids(&self) -> impl Iterator<Item = PredId> + '_ {
        self.predicates
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind == PredicateKind::Rigid)
            .map(|(i, _)| PredId(i as u16))
    }

    /// All argument tuples of the given arity, in name order.
    pub fn tuples(&self, arity: usize) -> Vec<Vec<ObjectName>> {
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    self.objects().map(move |n| {
                        let mut t = prefix.clone();
                        t.push(n);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn ground_atoms(&self, pred: PredId) -> Vec<GroundAtom> {
        self.tuples(self.predicate_symbol(pred).arity)
            .into_iter()
            .map(|args| GroundAtom { pred, args })
            .collect()
    }

    /// Ground actions sorted by action name, then argument names.
    pub fn ground_actions(&self) -> Vec<GroundAction> {
        let mut out: Vec<GroundAction> = self
            .actions
            .iter()
            .enumerate()
            .flat_map(|(i, decl)| {
                self.tuples(decl.params.len())
                    .into_iter()
                    .map(move |args| GroundAction {
                        action: ActionId(i as u16),
                        args,
                    })
            })
            .collect();
        out.sort_by(|a, b| self.action_sort_key(a).cmp(&self.action_sort_key(b)));
        out
    }

    fn action_sort_key<'a>(&'a self, a: &GroundAction) -> (&'a str, Vec<&'a str>) {
        (
            self.action_decl(a.action).name.as_str(),
            a.args.iter().map(|&n| self.object_name(n)).collect(),
        )
    }

    pub fn show<'a>(&'a self, f: &'a Formula) -> crate::parser::print::FormulaDisplay<'a> {
        crate::parser::print::FormulaDisplay::new(self, f)
    }

    pub fn show_action(&self, a: &GroundAction) -> String {
        let decl = self.action_decl(a.action);
        let args: Vec<&str> = a.args.iter().map(|&n| self.object_name(n)).collect();
        format!("{}({})", decl.name, args.join(","))
    }

    pub fn show_atom(&self, a: &GroundAtom) -> String {
        let sym = self.predicate_symbol(a.pred);
        if sym.arity == 0 {
            return sym.name.clone();
        }
        let args: Vec<&str> = a.args.iter().map(|&n| self.object_name(n)).collect();
        format!("{}({})", sym.name, args.join(","))
    }

    /// Canonical wire form `a1(args);a2(args)`.
    pub fn show_plan(&self, plan: &Plan) -> String {
        plan.iter()
            .map(|a| self.show_action(a))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parser::print::write_theory(self, f)
    }
}

//! Grounding of action theories and forward progression of states.
//!
//! Axiom schemas are instantiated once over the declared names. A state is
//! a complete valuation of the ground atoms, packed into two words; the
//! value of a fluent after an action is the grounded successor state axiom
//! body evaluated in the state before it.

use std::collections::HashMap;

use crate::error::EngineError;
use crate::model::{
    ActionKind, ActionTerm, Formula, GroundAction, GroundAtom, ObjectName, Plan, PredicateKind,
    Term, Theory,
};

/// Maximum number of ground atoms of each kind a [`State`] can hold.
pub const MAX_ATOMS_PER_KIND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomRef {
    Fluent(u32),
    Rigid(u32),
}

/// Numbering of the ground atoms of a theory: fluent atoms and rigid atoms
/// each get dense indices in predicate-then-argument order.
#[derive(Clone, Debug)]
pub struct AtomTable {
    fluents: Vec<GroundAtom>,
    rigids: Vec<GroundAtom>,
    index: HashMap<GroundAtom, AtomRef>,
}

impl AtomTable {
    pub fn new(theory: &Theory) -> Self {
        let mut table = AtomTable {
            fluents: Vec::new(),
            rigids: Vec::new(),
            index: HashMap::new(),
        };
        for (i, sym) in theory.predicates().iter().enumerate() {
            let pred = crate::model::PredId(i as u16);
            for atom in theory.ground_atoms(pred) {
                let r = match sym.kind {
                    PredicateKind::Fluent => {
                        table.fluents.push(atom.clone());
                        AtomRef::Fluent(table.fluents.len() as u32 - 1)
                    }
                    PredicateKind::Rigid => {
                        table.rigids.push(atom.clone());
                        AtomRef::Rigid(table.rigids.len() as u32 - 1)
                    }
                };
                table.index.insert(atom, r);
            }
        }
        table
    }

    pub fn fluent_count(&self) -> usize {
        self.fluents.len()
    }

    pub fn rigid_count(&self) -> usize {
        self.rigids.len()
    }

    pub fn len(&self) -> usize {
        self.fluents.len() + self.rigids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lookup(&self, atom: &GroundAtom) -> AtomRef {
        self.index[atom]
    }

    pub fn atom(&self, r: AtomRef) -> &GroundAtom {
        match r {
            AtomRef::Fluent(i) => &self.fluents[i as usize],
            AtomRef::Rigid(i) => &self.rigids[i as usize],
        }
    }

    pub fn fluent_atoms(&self) -> &[GroundAtom] {
        &self.fluents
    }

    pub fn rigid_atoms(&self) -> &[GroundAtom] {
        &self.rigids
    }
}

/// A ground objective formula over atom indices, kept constant-folded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroundExpr {
    Const(bool),
    Atom(AtomRef),
    Not(Box<GroundExpr>),
    And(Vec<GroundExpr>),
    Or(Vec<GroundExpr>),
}

impl GroundExpr {
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: GroundExpr) -> GroundExpr {
        match e {
            GroundExpr::Const(b) => GroundExpr::Const(!b),
            GroundExpr::Not(inner) => *inner,
            other => GroundExpr::Not(Box::new(other)),
        }
    }

    pub fn and(items: impl IntoIterator<Item = GroundExpr>) -> GroundExpr {
        Self::junction(items, true)
    }

    pub fn or(items: impl IntoIterator<Item = GroundExpr>) -> GroundExpr {
        Self::junction(items, false)
    }

    /// `unit` is the neutral constant: true for conjunction, false for disjunction.
    fn junction(items: impl IntoIterator<Item = GroundExpr>, unit: bool) -> GroundExpr {
        let mut out = Vec::new();
        for item in items {
            match item {
                GroundExpr::Const(b) if b == unit => {}
                GroundExpr::Const(_) => return GroundExpr::Const(!unit),
                GroundExpr::And(inner) if unit => out.extend(inner),
                GroundExpr::Or(inner) if !unit => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => GroundExpr::Const(unit),
            1 => out.pop().unwrap(),
            _ if unit => GroundExpr::And(out),
            _ => GroundExpr::Or(out),
        }
    }

    pub fn eval(&self, value: &impl Fn(AtomRef) -> bool) -> bool {
        match self {
            GroundExpr::Const(b) => *b,
            GroundExpr::Atom(r) => value(*r),
            GroundExpr::Not(e) => !e.eval(value),
            GroundExpr::And(es) => es.iter().all(|e| e.eval(value)),
            GroundExpr::Or(es) => es.iter().any(|e| e.eval(value)),
        }
    }

    pub fn eval_state(&self, s: &State) -> bool {
        self.eval(&|r| s.get(r))
    }

    /// Partially evaluates with one atom fixed.
    pub fn assign(&self, atom: AtomRef, value: bool) -> GroundExpr {
        match self {
            GroundExpr::Const(b) => GroundExpr::Const(*b),
            GroundExpr::Atom(r) if *r == atom => GroundExpr::Const(value),
            GroundExpr::Atom(r) => GroundExpr::Atom(*r),
            GroundExpr::Not(e) => GroundExpr::not(e.assign(atom, value)),
            GroundExpr::And(es) => GroundExpr::and(es.iter().map(|e| e.assign(atom, value))),
            GroundExpr::Or(es) => GroundExpr::or(es.iter().map(|e| e.assign(atom, value))),
        }
    }

    pub fn first_atom(&self) -> Option<AtomRef> {
        match self {
            GroundExpr::Const(_) => None,
            GroundExpr::Atom(r) => Some(*r),
            GroundExpr::Not(e) => e.first_atom(),
            GroundExpr::And(es) | GroundExpr::Or(es) => es.iter().find_map(|e| e.first_atom()),
        }
    }

    pub fn atoms(&self, out: &mut Vec<AtomRef>) {
        match self {
            GroundExpr::Const(_) => {}
            GroundExpr::Atom(r) => {
                if !out.contains(r) {
                    out.push(*r)
                }
            }
            GroundExpr::Not(e) => e.atoms(out),
            GroundExpr::And(es) | GroundExpr::Or(es) => es.iter().for_each(|e| e.atoms(out)),
        }
    }
}

/// Whether a ground expression has a satisfying assignment, by splitting on
/// atoms and simplifying.
pub fn satisfiable(e: &GroundExpr) -> bool {
    match e {
        GroundExpr::Const(b) => *b,
        _ => {
            let atom = e.first_atom().expect("non-constant expression mentions an atom");
            satisfiable(&e.assign(atom, true)) || satisfiable(&e.assign(atom, false))
        }
    }
}

/// A complete valuation of the ground atoms at one point of a world's history.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub fluents: u64,
    pub rigids: u64,
}

impl State {
    pub fn get(&self, r: AtomRef) -> bool {
        match r {
            AtomRef::Fluent(i) => self.fluents >> i & 1 == 1,
            AtomRef::Rigid(i) => self.rigids >> i & 1 == 1,
        }
    }

    pub fn set(&mut self, r: AtomRef, value: bool) {
        let (word, i) = match r {
            AtomRef::Fluent(i) => (&mut self.fluents, i),
            AtomRef::Rigid(i) => (&mut self.rigids, i),
        };
        if value {
            *word |= 1 << i;
        } else {
            *word &= !(1 << i);
        }
    }
}

/// Variable bindings used while grounding: innermost binding wins.
struct Env<'a> {
    objects: Vec<(&'a str, ObjectName)>,
    action: Option<(&'a str, &'a GroundAction)>,
}

impl<'a> Env<'a> {
    fn empty() -> Self {
        Env {
            objects: Vec::new(),
            action: None,
        }
    }

    fn term(&self, t: &Term) -> Result<ObjectName, EngineError> {
        match t {
            Term::Name(n) => Ok(*n),
            Term::Var(v) => self
                .objects
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|(_, n)| *n)
                .ok_or_else(|| EngineError::FreeVariable(v.clone())),
        }
    }

    fn action(&self, a: &ActionTerm) -> Result<GroundAction, EngineError> {
        match a {
            ActionTerm::Var(v) => match self.action {
                Some((name, action)) if name == v => Ok(action.clone()),
                _ => Err(EngineError::FreeVariable(v.clone())),
            },
            ActionTerm::App { action, args } => Ok(GroundAction {
                action: *action,
                args: args.iter().map(|t| self.term(t)).collect::<Result<_, _>>()?,
            }),
        }
    }
}

/// Precondition and sensing expressions available to `Poss`/`SF` atoms.
trait Distinguished {
    fn poss(&self, a: &GroundAction) -> GroundExpr;
    fn sf(&self, a: &GroundAction) -> GroundExpr;
}

struct NoDistinguished;

impl Distinguished for NoDistinguished {
    fn poss(&self, _: &GroundAction) -> GroundExpr {
        unreachable!("Poss is rejected before grounding")
    }
    fn sf(&self, _: &GroundAction) -> GroundExpr {
        unreachable!("SF is rejected before grounding")
    }
}

fn ground_in<'a>(
    theory: &'a Theory,
    table: &AtomTable,
    dist: &dyn Distinguished,
    f: &'a Formula,
    env: &mut Env<'a>,
) -> Result<GroundExpr, EngineError> {
    use Formula::*;
    let rec = |f: &'a Formula, env: &mut Env<'a>| ground_in(theory, table, dist, f, env);
    Ok(match f {
        True => GroundExpr::Const(true),
        False => GroundExpr::Const(false),
        Atom { pred, args } => {
            let atom = GroundAtom {
                pred: *pred,
                args: args.iter().map(|t| env.term(t)).collect::<Result<_, _>>()?,
            };
            GroundExpr::Atom(table.lookup(&atom))
        }
        Eq(a, b) => GroundExpr::Const(env.term(a)? == env.term(b)?),
        ActionEq(a, b) => GroundExpr::Const(env.action(a)? == env.action(b)?),
        Poss(a) => dist.poss(&env.action(a)?),
        Sf(a) => dist.sf(&env.action(a)?),
        Not(g) => GroundExpr::not(rec(g, env)?),
        And(a, b) => GroundExpr::and([rec(a, env)?, rec(b, env)?]),
        Or(a, b) => GroundExpr::or([rec(a, env)?, rec(b, env)?]),
        Implies(a, b) => GroundExpr::or([GroundExpr::not(rec(a, env)?), rec(b, env)?]),
        Iff(a, b) => {
            let (a, b) = (rec(a, env)?, rec(b, env)?);
            GroundExpr::or([
                GroundExpr::and([a.clone(), b.clone()]),
                GroundExpr::and([GroundExpr::not(a), GroundExpr::not(b)]),
            ])
        }
        Forall(x, g) | Exists(x, g) => {
            let mut parts = Vec::with_capacity(theory.object_count());
            for n in theory.objects() {
                env.objects.push((x.as_str(), n));
                let part = rec(g, env);
                env.objects.pop();
                parts.push(part?);
            }
            if matches!(f, Forall(..)) {
                GroundExpr::and(parts)
            } else {
                GroundExpr::or(parts)
            }
        }
        After(..) => return Err(EngineError::NonObjective("[a]".into())),
        Know(_) => return Err(EngineError::NonObjective("K".into())),
        Possible(_) => return Err(EngineError::NonObjective("B".into())),
        OnlyKnow(_) => return Err(EngineError::NonObjective("O".into())),
        Exec(actions) if actions.is_empty() => GroundExpr::Const(true),
        Exec(_) => return Err(EngineError::NonObjective("Exec".into())),
    })
}

/// Grounds a closed objective formula that mentions no `Poss`/`SF`.
pub fn ground_closed(
    theory: &Theory,
    table: &AtomTable,
    f: &Formula,
) -> Result<GroundExpr, EngineError> {
    ground_in(theory, table, &NoDistinguished, f, &mut Env::empty())
}

/// The result of running a plan from a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub state: State,
    pub sensing: Vec<bool>,
    pub executable: bool,
}

/// The action theory instantiated over its names: preconditions, sensing
/// results and successor state bodies for every ground action.
#[derive(Clone, Debug)]
pub struct GroundedAxioms {
    theory: Theory,
    table: AtomTable,
    actions: Vec<GroundAction>,
    action_index: HashMap<GroundAction, usize>,
    kinds: Vec<ActionKind>,
    poss: Vec<GroundExpr>,
    sf: Vec<GroundExpr>,
    /// `ssa[action][fluent atom]`
    ssa: Vec<Vec<GroundExpr>>,
    /// Fluent atoms whose successor body is not just their own current value.
    effects: Vec<Vec<(u32, GroundExpr)>>,
}

impl Distinguished for GroundedAxioms {
    fn poss(&self, a: &GroundAction) -> GroundExpr {
        self.poss[self.action_index[a]].clone()
    }
    fn sf(&self, a: &GroundAction) -> GroundExpr {
        self.sf[self.action_index[a]].clone()
    }
}

pub fn ground_axioms(theory: &Theory) -> GroundedAxioms {
    GroundedAxioms::new(theory)
}

impl GroundedAxioms {
    pub fn new(theory: &Theory) -> Self {
        let table = AtomTable::new(theory);
        let actions = theory.ground_actions();
        let action_index = actions
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();

        let bind_params = |params: &'_ [String], args: &[ObjectName]| -> Vec<(String, ObjectName)> {
            params.iter().cloned().zip(args.iter().copied()).collect()
        };
        let ground_body = |f: &Formula, binds: &[(String, ObjectName)], action: Option<(&str, &GroundAction)>| {
            let mut env = Env {
                objects: binds.iter().map(|(v, n)| (v.as_str(), *n)).collect(),
                action,
            };
            ground_in(theory, &table, &NoDistinguished, f, &mut env)
                .expect("axiom bodies are objective and closed over their parameters")
        };

        let mut kinds = Vec::new();
        let mut poss = Vec::new();
        let mut sf = Vec::new();
        for a in &actions {
            let decl = theory.action_decl(a.action);
            let binds = bind_params(&decl.params, &a.args);
            kinds.push(decl.kind());
            poss.push(ground_body(&decl.poss, &binds, None));
            sf.push(match &decl.sense {
                Some(body) => ground_body(body, &binds, None),
                None => GroundExpr::Const(true),
            });
        }

        let mut ssa = Vec::new();
        let mut effects = Vec::new();
        for a in &actions {
            let mut row = Vec::with_capacity(table.fluent_count());
            let mut changed = Vec::new();
            for (i, atom) in table.fluent_atoms().iter().enumerate() {
                let decl = theory
                    .ssa_for(atom.pred)
                    .expect("every fluent has a successor state axiom");
                let binds = bind_params(&decl.params, &atom.args);
                let body = ground_body(&decl.body, &binds, Some((decl.action_var.as_str(), a)));
                if body != GroundExpr::Atom(AtomRef::Fluent(i as u32)) {
                    changed.push((i as u32, body.clone()));
                }
                row.push(body);
            }
            ssa.push(row);
            effects.push(changed);
        }

        GroundedAxioms {
            theory: theory.clone(),
            table,
            actions,
            action_index,
            kinds,
            poss,
            sf,
            ssa,
            effects,
        }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.table
    }

    /// Ground actions in canonical order (action name, then argument names).
    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn action_index(&self, a: &GroundAction) -> usize {
        self.action_index[a]
    }

    pub fn kind(&self, action: usize) -> ActionKind {
        self.kinds[action]
    }

    pub fn poss_expr(&self, action: usize) -> &GroundExpr {
        &self.poss[action]
    }

    pub fn sf_expr(&self, action: usize) -> &GroundExpr {
        &self.sf[action]
    }

    pub fn ssa_expr(&self, fluent: &GroundAtom, action: &GroundAction) -> &GroundExpr {
        let AtomRef::Fluent(i) = self.table.lookup(fluent) else {
            panic!("successor state bodies exist only for fluents");
        };
        &self.ssa[self.action_index(action)][i as usize]
    }

    /// Grounds a closed objective formula; `Poss` and `SF` atoms are
    /// replaced by the corresponding axiom bodies.
    pub fn ground(&self, f: &Formula) -> Result<GroundExpr, EngineError> {
        ground_in(&self.theory, &self.table, self, f, &mut Env::empty())
    }

    pub fn eval_objective(&self, s: &State, f: &Formula) -> Result<bool, EngineError> {
        Ok(self.ground(f)?.eval_state(s))
    }

    pub fn poss_at(&self, s: &State, action: usize) -> bool {
        self.poss[action].eval_state(s)
    }

    pub fn sf_at(&self, s: &State, action: usize) -> bool {
        self.sf[action].eval_state(s)
    }

    pub fn progress_at(&self, s: &State, action: usize) -> State {
        let mut next = *s;
        for (i, body) in &self.effects[action] {
            next.set(AtomRef::Fluent(*i), body.eval_state(s));
        }
        next
    }

    pub fn poss(&self, s: &State, a: &GroundAction) -> bool {
        self.poss_at(s, self.action_index(a))
    }

    pub fn sf(&self, s: &State, a: &GroundAction) -> bool {
        self.sf_at(s, self.action_index(a))
    }

    /// Total: also defined when `a` is not executable in `s`.
    pub fn progress(&self, s: &State, a: &GroundAction) -> State {
        self.progress_at(s, self.action_index(a))
    }

    pub fn run(&self, s: &State, plan: &Plan) -> RunOutcome {
        let mut state = *s;
        let mut sensing = Vec::with_capacity(plan.len());
        let mut executable = true;
        for a in plan.iter() {
            let i = self.action_index(a);
            executable &= self.poss_at(&state, i);
            sensing.push(self.sf_at(&state, i));
            state = self.progress_at(&state, i);
        }
        RunOutcome {
            state,
            sensing,
            executable,
        }
    }

    /// Whether states fit the packed representation.
    pub fn check_size(&self) -> Result<(), EngineError> {
        let (nf, nr) = (self.table.fluent_count(), self.table.rigid_count());
        if nf > MAX_ATOMS_PER_KIND || nr > MAX_ATOMS_PER_KIND {
            return Err(EngineError::DomainTooLarge {
                atoms: nf + nr,
                worlds: 1u128.checked_shl((nf + nr) as u32).unwrap_or(u128::MAX),
                cap: 1 << 63,
            });
        }
        Ok(())
    }
}

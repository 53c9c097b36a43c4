//! Reference implementations used to cross-check the engine.
//!
//! Nothing here goes through the engine's grounding, progression or frame
//! machinery: formulas are evaluated by direct recursion over the syntax,
//! fluents after a trace are obtained by regressing through the successor
//! state axioms, and knowledge quantifies over an explicitly enumerated set
//! of believed valuations.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use cfplanner::model::{ActionTerm, Term};
use cfplanner::{
    parse_theory, Formula, GroundAction, GroundAtom, GroundedAxioms, ObjectName, Plan, PredicateKind,
    State, Theory,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const BLOCKS: &str = include_str!("../../fixtures/blocks.theory");
pub const BLOCKS_INTACT: &str = include_str!("../../fixtures/blocks_intact.theory");
pub const METAL_QUENCH: &str = include_str!("../../fixtures/metal_quench.theory");
pub const WEAKENED: &str = include_str!("../../fixtures/weakened.theory");
pub const FALSE_BELIEF: &str = include_str!("../../fixtures/false_belief.theory");

/// One object, one rigid and one fluent: four initial valuations.
pub const TINY: &str = "
domain tiny {
  objects: o;
  rigids: R/1;
  fluents: F/1;
  action flip(x) { poss: R(x) | F(x); }
  sense look(x) { sf: R(x); }
  ssa F(x): (a == flip(x) & !F(x)) | (F(x) & a != flip(x));
  init-true { R(o); }
  init-known { R(o) | F(o); }
}
";

pub type Valuation = HashMap<GroundAtom, bool>;

#[derive(Clone, Default)]
struct Env {
    objects: Vec<(String, ObjectName)>,
    action: Option<(String, GroundAction)>,
}

impl Env {
    fn bind(&self, var: &str, name: ObjectName) -> Env {
        let mut e = self.clone();
        e.objects.push((var.to_string(), name));
        e
    }

    fn object(&self, var: &str) -> ObjectName {
        self.objects
            .iter()
            .rev()
            .find(|(v, _)| v == var)
            .map(|(_, n)| *n)
            .unwrap_or_else(|| panic!("unbound variable {var}"))
    }
}

/// Every ground atom of the theory, in a fixed order.
pub fn all_atoms(t: &Theory) -> Vec<GroundAtom> {
    t.predicates()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            let pred = t.predicate(&p.name).unwrap();
            debug_assert_eq!(pred.index(), i);
            t.ground_atoms(pred)
        })
        .collect()
}

/// Every valuation of the theory's ground atoms.
pub fn all_valuations(t: &Theory) -> Vec<Valuation> {
    let atoms = all_atoms(t);
    (0u64..1 << atoms.len())
        .map(|bits| {
            atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), bits & (1 << i) != 0))
                .collect()
        })
        .collect()
}

/// Reads an engine state as a valuation.
pub fn valuation_of(ax: &GroundedAxioms, s: &State) -> Valuation {
    all_atoms(ax.theory())
        .into_iter()
        .map(|a| {
            let v = s.get(ax.atoms().lookup(&a));
            (a, v)
        })
        .collect()
}

/// Knowledge subformula, trace, variable bindings and the sensing results
/// of the evaluating world along the trace, which fix its compatible set.
type KnowledgeKey = (Formula, Vec<GroundAction>, Vec<(String, ObjectName)>, Vec<bool>);

/// Naive model of `Σ₀ ∧ Σdyn ∧ O(Σ₀′ ∧ Σdyn)` that materializes traces by
/// regression.
pub struct Oracle<'t> {
    pub theory: &'t Theory,
    /// Models of `Σ₀′`: the epistemic state.
    pub believed: Vec<Valuation>,
    /// Models of `Σ₀`.
    pub real: Vec<Valuation>,
    names: Vec<ObjectName>,
    knowledge: RefCell<HashMap<KnowledgeKey, bool>>,
}

impl<'t> Oracle<'t> {
    pub fn new(theory: &'t Theory) -> Self {
        Self::with_beliefs(theory, theory.sigma0_believed())
    }

    pub fn with_beliefs(theory: &'t Theory, beliefs: &[Formula]) -> Self {
        let mut o = Oracle::empty(theory);
        for v in all_valuations(theory) {
            if beliefs.iter().all(|f| o.holds(&v, &[], f)) {
                o.believed.push(v.clone());
            }
            if theory.sigma0().iter().all(|f| o.holds(&v, &[], f)) {
                o.real.push(v);
            }
        }
        o
    }

    fn empty(theory: &'t Theory) -> Self {
        Oracle {
            theory,
            believed: Vec::new(),
            real: Vec::new(),
            names: theory.objects().collect(),
            knowledge: RefCell::new(HashMap::new()),
        }
    }

    /// Truth of a closed formula at world `w` after trace `z`.
    pub fn holds(&self, w: &Valuation, z: &[GroundAction], f: &Formula) -> bool {
        self.eval(w, z, f, &Env::default())
    }

    /// `Σ ⊨ f`: truth at every real world, initially.
    pub fn entails(&self, f: &Formula) -> bool {
        self.real.iter().all(|w| self.holds(w, &[], f))
    }

    fn term(&self, t: &Term, env: &Env) -> ObjectName {
        match t {
            Term::Name(n) => *n,
            Term::Var(v) => env.object(v),
        }
    }

    fn action(&self, a: &ActionTerm, env: &Env) -> GroundAction {
        match a {
            ActionTerm::Var(v) => match &env.action {
                Some((name, g)) if name == v => g.clone(),
                _ => panic!("unbound action variable {v}"),
            },
            ActionTerm::App { action, args } => GroundAction {
                action: *action,
                args: args.iter().map(|t| self.term(t, env)).collect(),
            },
        }
    }

    fn params_env(params: &[String], args: &[ObjectName]) -> Env {
        Env {
            objects: params.iter().cloned().zip(args.iter().copied()).collect(),
            action: None,
        }
    }

    fn atom_at(&self, w: &Valuation, z: &[GroundAction], atom: &GroundAtom) -> bool {
        let kind = self.theory.predicate_symbol(atom.pred).kind;
        match (kind, z.split_last()) {
            (PredicateKind::Rigid, _) | (_, None) => w[atom],
            (PredicateKind::Fluent, Some((a, before))) => {
                let ssa = self.theory.ssa_for(atom.pred).expect("fluent without axiom");
                let mut env = Self::params_env(&ssa.params, &atom.args);
                env.action = Some((ssa.action_var.clone(), a.clone()));
                self.eval(w, before, &ssa.body, &env)
            }
        }
    }

    pub fn poss(&self, w: &Valuation, z: &[GroundAction], a: &GroundAction) -> bool {
        let decl = self.theory.action_decl(a.action);
        self.eval(w, z, &decl.poss, &Self::params_env(&decl.params, &a.args))
    }

    pub fn sf(&self, w: &Valuation, z: &[GroundAction], a: &GroundAction) -> bool {
        let decl = self.theory.action_decl(a.action);
        match &decl.sense {
            Some(f) => self.eval(w, z, f, &Self::params_env(&decl.params, &a.args)),
            None => true,
        }
    }

    /// `w′` agrees with `w` on every sensing result along `z`.
    pub fn compatible(&self, w2: &Valuation, w: &Valuation, z: &[GroundAction]) -> bool {
        (0..z.len()).all(|i| self.sf(w2, &z[..i], &z[i]) == self.sf(w, &z[..i], &z[i]))
    }

    fn eval(&self, w: &Valuation, z: &[GroundAction], f: &Formula, env: &Env) -> bool {
        use Formula::*;
        let names = &self.names;
        match f {
            True => true,
            False => false,
            Atom { pred, args } => {
                let atom = GroundAtom {
                    pred: *pred,
                    args: args.iter().map(|t| self.term(t, env)).collect(),
                };
                self.atom_at(w, z, &atom)
            }
            Eq(a, b) => self.term(a, env) == self.term(b, env),
            ActionEq(a, b) => self.action(a, env) == self.action(b, env),
            Poss(a) => self.poss(w, z, &self.action(a, env)),
            Sf(a) => self.sf(w, z, &self.action(a, env)),
            Not(g) => !self.eval(w, z, g, env),
            And(a, b) => self.eval(w, z, a, env) && self.eval(w, z, b, env),
            Or(a, b) => self.eval(w, z, a, env) || self.eval(w, z, b, env),
            Implies(a, b) => !self.eval(w, z, a, env) || self.eval(w, z, b, env),
            Iff(a, b) => self.eval(w, z, a, env) == self.eval(w, z, b, env),
            Forall(x, g) => names.iter().all(|&n| self.eval(w, z, g, &env.bind(x, n))),
            Exists(x, g) => names.iter().any(|&n| self.eval(w, z, g, &env.bind(x, n))),
            After(a, g) => {
                let mut z2 = z.to_vec();
                z2.push(self.action(a, env));
                self.eval(w, &z2, g, env)
            }
            Know(g) | Possible(g) => {
                let signature = (0..z.len()).map(|i| self.sf(w, &z[..i], &z[i])).collect();
                let key = (f.clone(), z.to_vec(), env.objects.clone(), signature);
                if let Some(&v) = self.knowledge.borrow().get(&key) {
                    return v;
                }
                let mut compatible = self.believed.iter().filter(|w2| self.compatible(w2, w, z));
                let v = if matches!(f, Know(_)) {
                    compatible.all(|w2| self.eval(w2, z, g, env))
                } else {
                    compatible.any(|w2| self.eval(w2, z, g, env))
                };
                self.knowledge.borrow_mut().insert(key, v);
                v
            }
            OnlyKnow(_) => panic!("only-knowing is not evaluated by the oracle"),
            Exec(actions) => {
                let mut trace = z.to_vec();
                for a in actions {
                    let a = self.action(a, env);
                    if !self.poss(w, &trace, &a) {
                        return false;
                    }
                    trace.push(a);
                }
                true
            }
        }
    }
}

/// Classical truth-table entailment between objective formulas.
pub fn classically_entails(t: &Theory, alpha: &Formula, beta: &Formula) -> bool {
    let o = Oracle::empty(t);
    all_valuations(t)
        .iter()
        .all(|v| !o.holds(v, &[], alpha) || o.holds(v, &[], beta))
}

/// All plans over `actions` of length at most `horizon`, shortest first.
pub fn all_plans(actions: &[GroundAction], horizon: usize) -> Vec<Plan> {
    let mut out = vec![Plan::empty()];
    let mut level = vec![Plan::empty()];
    for _ in 0..horizon {
        level = level
            .iter()
            .flat_map(|p| actions.iter().map(move |a| p.then(a.clone())))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Fluent set of a plan computed from the theory text: fluents whose axiom
/// body mentions the action's name, plus fluents in its precondition.
pub fn fluent_names(t: &Theory, plan: &Plan) -> std::collections::BTreeSet<String> {
    let mut out = std::collections::BTreeSet::new();
    for a in plan.iter() {
        let decl = t.action_decl(a.action);
        for ssa in t.ssas() {
            let body = t.show(&ssa.body).to_string();
            if mentions(&body, &decl.name) {
                out.insert(t.predicate_symbol(ssa.fluent).name.clone());
            }
        }
        let poss = t.show(&decl.poss).to_string();
        for fluent in t.fluents() {
            let name = &t.predicate_symbol(fluent).name;
            if mentions(&poss, name) {
                out.insert(name.clone());
            }
        }
    }
    out
}

fn mentions(text: &str, word: &str) -> bool {
    text.match_indices(word).any(|(i, _)| {
        let before = text[..i].chars().last();
        let after = text[i + word.len()..].chars().next();
        !before.is_some_and(|c| c.is_alphanumeric() || c == '_') && after == Some('(')
    })
}

/// A random small theory in the surface language. `max_atoms` bounds the
/// number of ground atoms; at least two are always present.
pub fn random_theory_source(rng: &mut StdRng, min_atoms: usize, max_atoms: usize) -> String {
    let (objects, preds) = loop {
        let objects = rng.gen_range(1..=2usize);
        let preds = rng.gen_range(1..=4usize);
        let atoms = objects * preds;
        if (min_atoms..=max_atoms).contains(&atoms) {
            break (objects, preds);
        }
    };
    let object_names: Vec<String> = (0..objects).map(|i| format!("o{i}")).collect();
    let mut fluents = Vec::new();
    let mut rigids = Vec::new();
    for i in 0..preds {
        if i == 0 || rng.gen_bool(0.6) {
            fluents.push(format!("F{i}"));
        } else {
            rigids.push(format!("R{i}"));
        }
    }
    let all: Vec<String> = fluents.iter().chain(&rigids).cloned().collect();
    let literal = |rng: &mut StdRng, var: &str| -> String {
        let p = all.choose(rng).unwrap();
        if rng.gen_bool(0.5) {
            format!("{p}({var})")
        } else {
            format!("!{p}({var})")
        }
    };

    let mut src = String::from("domain random {\n");
    src += &format!("  objects: {};\n", object_names.join(", "));
    let decl = |names: &[String]| names.iter().map(|n| format!("{n}/1")).collect::<Vec<_>>().join(", ");
    src += &format!("  fluents: {};\n", decl(&fluents));
    if !rigids.is_empty() {
        src += &format!("  rigids: {};\n", decl(&rigids));
    }
    let physical = rng.gen_range(1..=2usize);
    for i in 0..physical {
        let poss = if rng.gen_bool(0.3) { "true".to_string() } else { literal(rng, "x") };
        src += &format!("  action act{i}(x) {{ poss: {poss}; }}\n");
    }
    src += &format!("  sense look(x) {{ sf: {}; }}\n", all.choose(rng).unwrap().clone() + "(x)");
    for f in &fluents {
        let on = rng.gen_range(0..physical);
        let off = rng.gen_range(0..physical);
        let cond = literal(rng, "x");
        src += &format!(
            "  ssa {f}(x): (a == act{on}(x) & {cond}) | ({f}(x) & a != act{off}(x));\n"
        );
    }
    let mut truths = Vec::new();
    for p in &all {
        for o in &object_names {
            if rng.gen_bool(0.5) {
                truths.push(if rng.gen_bool(0.5) { format!("{p}({o})") } else { format!("!{p}({o})") });
            }
        }
    }
    let known: Vec<String> = truths.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    let body = |fs: &[String]| fs.iter().map(|f| format!("{f}; ")).collect::<String>();
    src += &format!("  init-true {{ {}}}\n", body(&truths));
    src += &format!("  init-known {{ {}}}\n", body(&known));
    src += "}\n";
    src
}

pub fn random_theory(rng: &mut StdRng, min_atoms: usize, max_atoms: usize) -> Theory {
    let src = random_theory_source(rng, min_atoms, max_atoms);
    parse_theory(&src).unwrap_or_else(|e| panic!("{e}\n{src}"))
}

/// Ground atoms and ground actions of a theory as surface text.
pub struct Vocabulary {
    pub atoms: Vec<String>,
    pub actions: Vec<String>,
    pub unary: Vec<String>,
}

impl Vocabulary {
    pub fn of(t: &Theory) -> Self {
        Vocabulary {
            atoms: all_atoms(t).iter().map(|a| t.show_atom(a)).collect(),
            actions: t.ground_actions().iter().map(|a| t.show_action(a)).collect(),
            unary: t
                .predicates()
                .iter()
                .filter(|p| p.arity == 1)
                .map(|p| p.name.clone())
                .collect(),
        }
    }
}

/// Random objective formula text over ground atoms.
pub fn random_objective(rng: &mut StdRng, v: &Vocabulary, depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return v.atoms.choose(rng).unwrap().clone();
    }
    match rng.gen_range(0..4) {
        0 => format!("!({})", random_objective(rng, v, depth - 1)),
        1 => format!("({} & {})", random_objective(rng, v, depth - 1), random_objective(rng, v, depth - 1)),
        2 => format!("({} | {})", random_objective(rng, v, depth - 1), random_objective(rng, v, depth - 1)),
        _ => format!("({} -> {})", random_objective(rng, v, depth - 1), random_objective(rng, v, depth - 1)),
    }
}

/// Random formula text with knowledge, belief, actions and quantifiers.
pub fn random_modal(rng: &mut StdRng, v: &Vocabulary, depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.2) {
        return v.atoms.choose(rng).unwrap().clone();
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => format!("!({})", random_modal(rng, v, d)),
        1 => format!("({} & {})", random_modal(rng, v, d), random_modal(rng, v, d)),
        2 => format!("({} | {})", random_modal(rng, v, d), random_modal(rng, v, d)),
        3 => format!("K ({})", random_modal(rng, v, d)),
        4 => format!("B ({})", random_modal(rng, v, d)),
        5 | 6 => format!("[{}] ({})", v.actions.choose(rng).unwrap(), random_modal(rng, v, d)),
        7 => format!("Poss({})", v.actions.choose(rng).unwrap()),
        _ => match v.unary.choose(rng) {
            Some(p) => {
                let q = if rng.gen_bool(0.5) { "forall" } else { "exists" };
                format!("{q} y. ({p}(y) -> {})", random_modal(rng, v, d))
            }
            None => random_modal(rng, v, d),
        },
    }
}

/// Formulas built with ¬, ∧, K, B and the given actions from `atoms`, with
/// at most `size` nodes, as surface text.
pub fn all_formulas(atoms: &[&str], actions: &[&str], size: usize) -> Vec<String> {
    let mut by_size: Vec<Vec<String>> = vec![Vec::new(); size + 1];
    by_size[1] = atoms.iter().map(|a| a.to_string()).chain(["true".to_string()]).collect();
    for n in 2..=size {
        let mut level = Vec::new();
        for f in &by_size[n - 1] {
            level.push(format!("!({f})"));
            level.push(format!("K ({f})"));
            level.push(format!("B ({f})"));
            for a in actions {
                level.push(format!("[{a}] ({f})"));
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(format!("({a}) & ({b})"));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

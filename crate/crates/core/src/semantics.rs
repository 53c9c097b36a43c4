//! Possible-worlds semantics for knowledge, sensing and action.
//!
//! Every world that matters for entailment respects the dynamics, so a world
//! is fully described by its initial valuation and its future is obtained by
//! progression. A [`Model`] fixes a universe of such worlds, the real worlds
//! (models of what is true initially) and the epistemic state `e` (models of
//! what is only-known initially).
//!
//! Formulas are evaluated for all worlds of the universe at once: the result
//! of evaluating `α` at trace `z` is the set of worlds `w` with `e,w,z ⊨ α`.
//! The states reached after `z` and the partition of worlds into sensing
//! compatibility classes are cached per trace.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use crate::dynamics::{GroundExpr, GroundedAxioms, State};
use crate::error::EngineError;
use crate::model::{ActionKind, Formula, Plan};

/// Default upper bound on the number of initial valuations enumerated.
pub const DEFAULT_MAX_WORLDS: u64 = 1 << 22;

/// State entries kept in the trace cache before it is flushed.
const CACHE_BUDGET: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct World {
    /// The initial valuation read as a number: rigid bits above fluent bits.
    pub id: u64,
    pub initial: State,
}

/// Outcome of an entailment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryReport {
    pub verdict: bool,
    pub models_checked: usize,
    /// Lowest-id real world where the formula fails, when it does.
    pub witness: Option<u64>,
}

/// All initial valuations of a theory, restricted to those that matter:
/// models of what is true or of what is believed.
#[derive(Clone, Debug)]
pub struct WorldEnumeration {
    pub total: u128,
    pub worlds: Vec<World>,
    pub real: Vec<bool>,
    pub believed: Vec<bool>,
}

fn world_count(ax: &GroundedAxioms, cap: u64) -> Result<u64, EngineError> {
    ax.check_size()?;
    let atoms = ax.atoms().len();
    let total = 1u128.checked_shl(atoms as u32).unwrap_or(u128::MAX);
    if atoms >= 64 || total > cap as u128 {
        return Err(EngineError::DomainTooLarge {
            atoms,
            worlds: total,
            cap,
        });
    }
    Ok(total as u64)
}

fn decode(ax: &GroundedAxioms, id: u64) -> State {
    let nf = ax.atoms().fluent_count();
    let mask = if nf == 64 { u64::MAX } else { (1u64 << nf) - 1 };
    State {
        fluents: id & mask,
        rigids: id.checked_shr(nf as u32).unwrap_or(0),
    }
}

pub fn enumerate_worlds(
    ax: &GroundedAxioms,
    cap: u64,
) -> Result<WorldEnumeration, EngineError> {
    let t = ax.theory();
    let truth = ax.ground(&Formula::conjunction(t.sigma0().iter().cloned()))?;
    let belief = ax.ground(&Formula::conjunction(t.sigma0_believed().iter().cloned()))?;
    let total = world_count(ax, cap)?;
    let mut out = WorldEnumeration {
        total: total as u128,
        worlds: Vec::new(),
        real: Vec::new(),
        believed: Vec::new(),
    };
    for id in 0..total {
        let initial = decode(ax, id);
        let (r, b) = (truth.eval_state(&initial), belief.eval_state(&initial));
        if r || b {
            out.worlds.push(World { id, initial });
            out.real.push(r);
            out.believed.push(b);
        }
    }
    Ok(out)
}

/// `w′ ∼z w`: both worlds get the same sensing results along `z`.
pub fn compatible(ax: &GroundedAxioms, w_prime: &State, w: &State, z: &Plan) -> bool {
    let (mut a, mut b) = (*w_prime, *w);
    for action in z.iter() {
        let i = ax.action_index(action);
        if ax.sf_at(&a, i) != ax.sf_at(&b, i) {
            return false;
        }
        a = ax.progress_at(&a, i);
        b = ax.progress_at(&b, i);
    }
    true
}

/// States of every universe world after a trace, with worlds partitioned
/// into sensing-compatibility classes.
#[derive(Debug)]
struct Frame {
    states: Vec<State>,
    class: Vec<u32>,
    classes: u32,
}

#[derive(Debug)]
pub struct Model<'ax> {
    ax: &'ax GroundedAxioms,
    worlds: Vec<World>,
    real: FixedBitSet,
    epistemic: FixedBitSet,
    cache: RefCell<HashMap<Vec<u32>, Rc<Frame>>>,
    cached_entries: RefCell<usize>,
}

impl<'ax> Model<'ax> {
    /// The models of `Σ₀ ∧ Σdyn ∧ O(Σ₀′ ∧ Σdyn)` for the theory's own
    /// initial axioms.
    pub fn new(ax: &'ax GroundedAxioms, cap: u64) -> Result<Self, EngineError> {
        let t = ax.theory();
        Self::build(ax, t.sigma0(), t.sigma0_believed(), cap)
    }

    /// Universe restricted to models of `truth` or of `believed`.
    pub fn build(
        ax: &'ax GroundedAxioms,
        truth: &[Formula],
        believed: &[Formula],
        cap: u64,
    ) -> Result<Self, EngineError> {
        Self::enumerate(ax, truth, believed, cap, false)
    }

    /// Universe of every initial valuation.
    pub fn full(
        ax: &'ax GroundedAxioms,
        truth: &[Formula],
        believed: &[Formula],
        cap: u64,
    ) -> Result<Self, EngineError> {
        Self::enumerate(ax, truth, believed, cap, true)
    }

    fn enumerate(
        ax: &'ax GroundedAxioms,
        truth: &[Formula],
        believed: &[Formula],
        cap: u64,
        keep_all: bool,
    ) -> Result<Self, EngineError> {
        let truth = ax.ground(&Formula::conjunction(truth.iter().cloned()))?;
        let belief = ax.ground(&Formula::conjunction(believed.iter().cloned()))?;
        let total = world_count(ax, cap)?;
        let mut worlds = Vec::new();
        let mut flags = Vec::new();
        for id in 0..total {
            let initial = decode(ax, id);
            let (r, b) = (truth.eval_state(&initial), belief.eval_state(&initial));
            if keep_all || r || b {
                worlds.push(World { id, initial });
                flags.push((r, b));
            }
        }
        let mut real = FixedBitSet::with_capacity(worlds.len());
        let mut epistemic = FixedBitSet::with_capacity(worlds.len());
        for (i, (r, b)) in flags.into_iter().enumerate() {
            real.set(i, r);
            epistemic.set(i, b);
        }
        Ok(Self::from_parts(ax, worlds, real, epistemic))
    }

    fn from_parts(
        ax: &'ax GroundedAxioms,
        worlds: Vec<World>,
        real: FixedBitSet,
        epistemic: FixedBitSet,
    ) -> Self {
        Model {
            ax,
            worlds,
            real,
            epistemic,
            cache: RefCell::new(HashMap::new()),
            cached_entries: RefCell::new(0),
        }
    }

    /// Same universe and real worlds; `e` shrinks to the worlds that also
    /// satisfy `extra`.
    pub fn restrict_epistemic(&self, extra: &Formula) -> Result<Model<'ax>, EngineError> {
        let expr = self.ax.ground(&extra.universal_closure())?;
        let mut epistemic = self.epistemic.clone();
        for i in self.epistemic.ones() {
            if !expr.eval_state(&self.worlds[i].initial) {
                epistemic.set(i, false);
            }
        }
        Ok(Self::from_parts(
            self.ax,
            self.worlds.clone(),
            self.real.clone(),
            epistemic,
        ))
    }

    pub fn axioms(&self) -> &'ax GroundedAxioms {
        self.ax
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn real(&self) -> &FixedBitSet {
        &self.real
    }

    pub fn epistemic(&self) -> &FixedBitSet {
        &self.epistemic
    }

    pub fn is_real(&self, world: usize) -> bool {
        self.real.contains(world)
    }

    pub fn in_epistemic(&self, world: usize) -> bool {
        self.epistemic.contains(world)
    }

    /// Position of the world with the given id in the universe.
    pub fn world_index(&self, id: u64) -> Option<usize> {
        self.worlds.binary_search_by_key(&id, |w| w.id).ok()
    }

    /// `Σ ⊨ α`: α holds at every real world with the empty trace.
    pub fn entails(&self, f: &Formula) -> Result<QueryReport, EngineError> {
        let holds = self.eval_set(f)?;
        let witness = self
            .real
            .ones()
            .find(|&i| !holds.contains(i))
            .map(|i| self.worlds[i].id);
        Ok(QueryReport {
            verdict: witness.is_none(),
            models_checked: self.real.count_ones(..),
            witness,
        })
    }

    /// The universe worlds `w` with `e,w,⟨⟩ ⊨ α`, after closing and normalizing α.
    pub fn eval_set(&self, f: &Formula) -> Result<FixedBitSet, EngineError> {
        self.eval_set_at(f, &Plan::empty())
    }

    /// The universe worlds `w` with `e,w,z ⊨ α`.
    pub fn eval_set_at(&self, f: &Formula, z: &Plan) -> Result<FixedBitSet, EngineError> {
        let f = f.universal_closure().normalize();
        let mut trace: Vec<u32> = z
            .iter()
            .map(|a| self.ax.action_index(a) as u32)
            .collect();
        self.eval(&f, &mut trace)
    }

    /// `e,w,z ⊨ α` for one universe world.
    pub fn holds(&self, world: usize, f: &Formula, z: &Plan) -> Result<bool, EngineError> {
        Ok(self.eval_set_at(f, z)?.contains(world))
    }

    /// Indices of the universe worlds `w′` with `w′ ∼z w`.
    pub fn compatible_set(&self, world: usize, z: &Plan) -> FixedBitSet {
        let trace: Vec<u32> = z
            .iter()
            .map(|a| self.ax.action_index(a) as u32)
            .collect();
        let frame = self.frame(&trace);
        let mut out = FixedBitSet::with_capacity(self.worlds.len());
        let c = frame.class[world];
        for (i, &k) in frame.class.iter().enumerate() {
            if k == c {
                out.insert(i);
            }
        }
        out
    }

    /// The state of a universe world after `z`.
    pub fn state_after(&self, world: usize, z: &Plan) -> State {
        let trace: Vec<u32> = z
            .iter()
            .map(|a| self.ax.action_index(a) as u32)
            .collect();
        self.frame(&trace).states[world]
    }

    fn all(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.worlds.len());
        s.insert_range(..);
        s
    }

    fn frame(&self, trace: &[u32]) -> Rc<Frame> {
        if let Some(f) = self.cache.borrow().get(trace) {
            return f.clone();
        }
        let frame = match trace.split_last() {
            None => Frame {
                states: self.worlds.iter().map(|w| w.initial).collect(),
                class: vec![0; self.worlds.len()],
                classes: 1,
            },
            Some((&last, prefix)) => {
                let parent = self.frame(prefix);
                self.step(&parent, last as usize)
            }
        };
        let frame = Rc::new(frame);
        let mut entries = self.cached_entries.borrow_mut();
        let mut cache = self.cache.borrow_mut();
        if *entries + self.worlds.len() > CACHE_BUDGET {
            cache.clear();
            *entries = 0;
        }
        *entries += self.worlds.len();
        cache.insert(trace.to_vec(), frame.clone());
        frame
    }

    fn step(&self, parent: &Frame, action: usize) -> Frame {
        let states = parent
            .states
            .iter()
            .map(|s| self.ax.progress_at(s, action))
            .collect();
        if self.ax.kind(action) == ActionKind::Physical {
            return Frame {
                states,
                class: parent.class.clone(),
                classes: parent.classes,
            };
        }
        // Split each class by the sensing result at the state before the action.
        let mut renumber: HashMap<(u32, bool), u32> = HashMap::new();
        let mut class = Vec::with_capacity(parent.class.len());
        for (s, &c) in parent.states.iter().zip(&parent.class) {
            let key = (c, self.ax.sf_at(s, action));
            let next = renumber.len() as u32;
            class.push(*renumber.entry(key).or_insert(next));
        }
        Frame {
            states,
            class,
            classes: renumber.len() as u32,
        }
    }

    fn objective(&self, f: &Formula, trace: &[u32]) -> Result<FixedBitSet, EngineError> {
        let expr = self.ax.ground(f)?;
        let mut out = FixedBitSet::with_capacity(self.worlds.len());
        match expr {
            GroundExpr::Const(true) => out.insert_range(..),
            GroundExpr::Const(false) => {}
            expr => {
                let frame = self.frame(trace);
                for (i, s) in frame.states.iter().enumerate() {
                    if expr.eval_state(s) {
                        out.insert(i);
                    }
                }
            }
        }
        Ok(out)
    }

    fn eval(&self, f: &Formula, trace: &mut Vec<u32>) -> Result<FixedBitSet, EngineError> {
        use Formula::*;
        if f.is_objective() {
            return self.objective(f, trace);
        }
        Ok(match f {
            Not(g) => {
                let mut s = self.eval(g, trace)?;
                s.toggle_range(..);
                s
            }
            And(a, b) => {
                let mut s = self.eval(a, trace)?;
                s.intersect_with(&self.eval(b, trace)?);
                s
            }
            Or(a, b) => {
                let mut s = self.eval(a, trace)?;
                s.union_with(&self.eval(b, trace)?);
                s
            }
            Implies(a, b) => self.eval(&Formula::or(Formula::not((**a).clone()), (**b).clone()), trace)?,
            Iff(a, b) => self.eval(&Formula::iff((**a).clone(), (**b).clone()).normalize(), trace)?,
            Forall(x, g) | Exists(x, g) => {
                let universal = matches!(f, Forall(..));
                let mut acc = if universal {
                    self.all()
                } else {
                    FixedBitSet::with_capacity(self.worlds.len())
                };
                for n in self.ax.theory().objects() {
                    let part = self.eval(&g.substitute(x, n), trace)?;
                    if universal {
                        acc.intersect_with(&part);
                    } else {
                        acc.union_with(&part);
                    }
                }
                acc
            }
            After(a, g) => {
                let action = a
                    .as_ground()
                    .ok_or_else(|| EngineError::FreeVariable(format!("{a:?}")))?;
                trace.push(self.ax.action_index(&action) as u32);
                let out = self.eval(g, trace);
                trace.pop();
                out?
            }
            Know(g) | Possible(g) => {
                let inner = self.eval(g, trace)?;
                let frame = self.frame(trace);
                let know = matches!(f, Know(_));
                // K: every e-world of the class satisfies g; B: some does.
                let mut class_ok = vec![know; frame.classes as usize];
                for w in self.epistemic.ones() {
                    if inner.contains(w) != know {
                        class_ok[frame.class[w] as usize] = !know;
                    }
                }
                let mut out = FixedBitSet::with_capacity(self.worlds.len());
                for (w, &c) in frame.class.iter().enumerate() {
                    if class_ok[c as usize] {
                        out.insert(w);
                    }
                }
                out
            }
            Exec(_) => self.eval(&f.normalize(), trace)?,
            OnlyKnow(_) => return Err(EngineError::UnsupportedOperator("O")),
            True | False | Atom { .. } | Eq(..) | ActionEq(..) | Poss(_) | Sf(_) => {
                unreachable!("objective formulas are handled above")
            }
        })
    }
}

/// `Oα ⊨ Kβ` for objective α, β: `e` is exactly the models of α.
pub fn check_only_knowing(
    ax: &GroundedAxioms,
    alpha: &Formula,
    beta: &Formula,
    cap: u64,
) -> Result<bool, EngineError> {
    only_knowing_entails(ax, alpha, &Formula::know(beta.clone()), cap)
}

/// `Oα ⊨ φ`, checked at every world with `e = Mods(α)`.
pub fn only_knowing_entails(
    ax: &GroundedAxioms,
    alpha: &Formula,
    query: &Formula,
    cap: u64,
) -> Result<bool, EngineError> {
    if !alpha.is_objective() {
        return Err(EngineError::NonObjective("only-known formula".into()));
    }
    let model = Model::full(ax, &[Formula::True], &[alpha.clone()], cap)?;
    Ok(model.entails(query)?.verdict)
}

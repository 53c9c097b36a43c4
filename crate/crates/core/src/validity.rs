//! Bounded checks of the validities of the logic: closure of knowledge under
//! modus ponens, positive and negative introspection, the two Barcan
//! formulas, and the successor state property of knowledge.
//!
//! The leading `□` of each schema is realized by checking every trace up to
//! a depth bound whose prefixes are executable in some world of the model.
//! Schema instances are drawn from formulas built from the theory's ground
//! atoms with `¬` and `∧`; small theories get every such formula, larger ones
//! an evenly spaced deterministic sample.

use std::fmt;

use crate::error::EngineError;
use crate::model::{Formula, GroundAction, Plan, Term};
use crate::semantics::Model;

/// Singles used when the formula pool is larger than this.
const SINGLE_SAMPLE: usize = 24;
/// Pair components used when the formula pool is larger than this.
const PAIR_SAMPLE: usize = 12;
/// Node count bound for pool formulas.
const POOL_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schema {
    KClosure,
    PosIntrospection,
    NegIntrospection,
    BarcanForall,
    BarcanExists,
    KSsa,
}

impl Schema {
    pub const ALL: [Schema; 6] = [
        Schema::KClosure,
        Schema::PosIntrospection,
        Schema::NegIntrospection,
        Schema::BarcanForall,
        Schema::BarcanExists,
        Schema::KSsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::KClosure => "k-closure",
            Schema::PosIntrospection => "pos-introspection",
            Schema::NegIntrospection => "neg-introspection",
            Schema::BarcanForall => "barcan-forall",
            Schema::BarcanExists => "barcan-exists",
            Schema::KSsa => "k-ssa",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaReport {
    pub schema: Schema,
    pub verdict: bool,
    pub instances: usize,
    pub traces: usize,
    /// Number of (instance, trace, world) triples evaluated.
    pub models_checked: usize,
    /// Failing instance, trace and world id, if any.
    pub counterexample: Option<(Formula, Plan, u64)>,
}

/// Traces up to `depth` every prefix of which is executable in some
/// universe world, in canonical order.
pub fn executable_traces(model: &Model, depth: usize) -> Vec<Plan> {
    let ax = model.axioms();
    let mut out = vec![Plan::empty()];
    let mut frontier = vec![Plan::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for z in &frontier {
            for (i, a) in ax.actions().iter().enumerate() {
                let possible = (0..model.worlds().len())
                    .any(|w| ax.poss_at(&model.state_after(w, z), i));
                if possible {
                    next.push(z.then(a.clone()));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Closed formulas built from ground atoms with `¬` and `∧`, up to
/// `POOL_SIZE` nodes, in a fixed order.
pub fn formula_pool(model: &Model) -> Vec<Formula> {
    let t = model.axioms().theory();
    let atoms: Vec<Formula> = t
        .predicates()
        .iter()
        .enumerate()
        .flat_map(|(i, _)| t.ground_atoms(crate::model::PredId(i as u16)))
        .map(|a| Formula::ground_atom(&a))
        .collect();
    closure_pool(&atoms)
}

/// Open formulas in `x` for the Barcan schemas: the same closure applied to
/// the atoms of unary predicates with argument `x`.
fn open_pool(model: &Model) -> Vec<Formula> {
    let t = model.axioms().theory();
    let atoms: Vec<Formula> = t
        .predicates()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.arity == 1)
        .map(|(i, _)| {
            Formula::atom(crate::model::PredId(i as u16), vec![Term::Var("x".into())])
        })
        .collect();
    closure_pool(&atoms)
}

fn closure_pool(atoms: &[Formula]) -> Vec<Formula> {
    // by_size[n] holds the formulas with exactly n nodes.
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); POOL_SIZE + 1];
    by_size[1] = atoms.to_vec();
    for n in 2..=POOL_SIZE {
        let mut level: Vec<Formula> = by_size[n - 1].iter().cloned().map(Formula::not).collect();
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(Formula::and(a.clone(), b.clone()));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

fn spaced<T: Clone>(items: &[T], count: usize) -> Vec<T> {
    if items.len() <= count {
        return items.to_vec();
    }
    (0..count)
        .map(|i| items[i * items.len() / count].clone())
        .collect()
}

fn instances(model: &Model, schema: Schema) -> Vec<Formula> {
    let k = Formula::know;
    let pool = formula_pool(model);
    let mut singles = spaced(&pool, SINGLE_SAMPLE);
    // Nested knowledge gives introspection something to bite on.
    for f in spaced(&pool, 4) {
        singles.push(k(f.clone()));
        singles.push(Formula::not(k(f)));
    }
    let pairs = spaced(&pool, PAIR_SAMPLE);
    match schema {
        Schema::KClosure => {
            let mut out = Vec::new();
            for a in &pairs {
                for b in &pairs {
                    out.push(Formula::implies(
                        Formula::and(k(a.clone()), k(Formula::implies(a.clone(), b.clone()))),
                        k(b.clone()),
                    ));
                }
            }
            out
        }
        Schema::PosIntrospection => singles
            .into_iter()
            .map(|a| Formula::implies(k(a.clone()), k(k(a))))
            .collect(),
        Schema::NegIntrospection => singles
            .into_iter()
            .map(|a| {
                let nk = Formula::not(k(a));
                Formula::implies(nk.clone(), k(nk))
            })
            .collect(),
        Schema::BarcanForall | Schema::BarcanExists => {
            let open = spaced(&open_pool(model), SINGLE_SAMPLE);
            open.into_iter()
                .map(|a| {
                    if schema == Schema::BarcanForall {
                        Formula::implies(
                            Formula::forall("x", k(a.clone())),
                            k(Formula::forall("x", a)),
                        )
                    } else {
                        Formula::implies(
                            Formula::exists("x", k(a.clone())),
                            k(Formula::exists("x", a)),
                        )
                    }
                })
                .collect()
        }
        Schema::KSsa => {
            let actions: Vec<GroundAction> = model.axioms().actions().to_vec();
            let alphas = spaced(&pool, PAIR_SAMPLE);
            let mut out = Vec::new();
            for a in &actions {
                for alpha in &alphas {
                    out.push(k_ssa_instance(a, alpha));
                }
            }
            out
        }
    }
}

/// `[a]K(α) ≡ (SF(a) ∧ K(SF(a) ⊃ [a]α)) ∨ (¬SF(a) ∧ K(¬SF(a) ⊃ [a]α))`
pub fn k_ssa_instance(a: &GroundAction, alpha: &Formula) -> Formula {
    let sf = Formula::sf(a);
    let after = Formula::after(a, alpha.clone());
    Formula::iff(
        Formula::after(a, Formula::know(alpha.clone())),
        Formula::or(
            Formula::and(
                sf.clone(),
                Formula::know(Formula::implies(sf.clone(), after.clone())),
            ),
            Formula::and(
                Formula::not(sf.clone()),
                Formula::know(Formula::implies(Formula::not(sf), after)),
            ),
        ),
    )
}

/// Checks one schema at every universe world and every executable trace up
/// to `depth`.
pub fn check_validity_schema(
    model: &Model,
    schema: Schema,
    depth: usize,
) -> Result<SchemaReport, EngineError> {
    let traces = executable_traces(model, depth);
    let instances = instances(model, schema);
    let worlds = model.worlds().len();
    let mut report = SchemaReport {
        schema,
        verdict: true,
        instances: instances.len(),
        traces: traces.len(),
        models_checked: 0,
        counterexample: None,
    };
    for z in &traces {
        for f in &instances {
            let holds = model.eval_set_at(f, z)?;
            report.models_checked += worlds;
            if let Some(w) = (0..worlds).find(|&w| !holds.contains(w)) {
                report.verdict = false;
                report.counterexample = Some((f.clone(), z.clone(), model.worlds()[w].id));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

pub fn check_all(model: &Model, depth: usize) -> Result<Vec<SchemaReport>, EngineError> {
    Schema::ALL
        .iter()
        .map(|&s| check_validity_schema(model, s, depth))
        .collect()
}

//! Shared helpers for unit tests.

use crate::dynamics::{GroundedAxioms, State};
use crate::model::{Formula, Plan, Theory};
use crate::parser::{parse_formula, parse_plan, parse_theory};

pub const BLOCKS: &str = include_str!("../fixtures/blocks.theory");
pub const BLOCKS_INTACT: &str = include_str!("../fixtures/blocks_intact.theory");
pub const METAL_QUENCH: &str = include_str!("../fixtures/metal_quench.theory");
pub const WEAKENED: &str = include_str!("../fixtures/weakened.theory");
pub const FALSE_BELIEF: &str = include_str!("../fixtures/false_belief.theory");

pub fn blocks() -> Theory {
    parse_theory(BLOCKS).unwrap()
}

pub fn theory(src: &str) -> Theory {
    parse_theory(src).unwrap()
}

pub fn query(t: &Theory, src: &str) -> Formula {
    parse_formula(src, t).unwrap()
}

pub fn plan(t: &Theory, src: &str) -> Plan {
    parse_plan(src, t).unwrap()
}

/// A state where exactly the listed ground atoms are true.
pub fn state_from(ax: &GroundedAxioms, atoms: &[&str]) -> State {
    let t = ax.theory();
    let mut s = State::default();
    for src in atoms {
        match query(t, src) {
            Formula::Atom { pred, args } => {
                let args = args
                    .into_iter()
                    .map(|a| match a {
                        crate::model::Term::Name(n) => n,
                        crate::model::Term::Var(v) => panic!("variable {v}"),
                    })
                    .collect();
                let r = ax.atoms().lookup(&crate::model::GroundAtom { pred, args });
                s.set(r, true);
            }
            other => panic!("not an atom: {other:?}"),
        }
    }
    s
}

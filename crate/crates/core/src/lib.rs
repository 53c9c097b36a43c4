//! Finite-domain reasoning about knowledge, sensing and action, with plan
//! search and counterfactual explanations.
//!
//! The pipeline is: [`parser`] reads a basic action theory, [`dynamics`]
//! grounds it and progresses states, [`semantics`] decides entailment over
//! the possible-worlds models, [`search`] enumerates plans, and [`explain`]
//! builds explanations on top of all of them.

pub mod dynamics;
pub mod error;
pub mod explain;
pub mod model;
pub mod parser;
pub mod search;
pub mod semantics;
pub mod validity;

#[cfg(test)]
pub(crate) mod testing;

pub use dynamics::{ground_axioms, GroundedAxioms, RunOutcome, State};
pub use explain::{Distance, DistanceMetric, Explainer, Explanation, ExplanationKind};
pub use error::{EngineError, ExplainError, ParseError, ParseErrorKind, SourceSpan};
pub use model::{
    exec_formula, ActionKind, Formula, GroundAction, GroundAtom, ObjectName, Plan,
    PredicateKind, Theory,
};
pub use parser::{parse_formula, parse_plan, parse_query, parse_theory, parse_theory_file};
pub use search::{find_plans, Modality, SearchConfig};
pub use semantics::{Model, QueryReport, DEFAULT_MAX_WORLDS};
pub use validity::{check_all, Schema, SchemaReport};

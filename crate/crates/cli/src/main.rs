//! `cfplanner`: entailment checks, plan search and counterfactual
//! explanations over a theory file.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use cfplanner::explain::verify;
use cfplanner::{
    check_all, find_plans, parse_formula, parse_plan, parse_query, parse_theory_file, DistanceMetric,
    EngineError, ExplainError, Explainer, Explanation, Formula, GroundedAxioms, Model, Modality,
    ParseError, Plan, SearchConfig, Theory, DEFAULT_MAX_WORLDS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "cfplanner", version, about = "Reason about knowledge, plans and counterfactual explanations")]
struct Cli {
    /// Theory file to load
    #[arg(long, global = true)]
    theory: Option<PathBuf>,
    /// Longest plan considered by searches
    #[arg(long, global = true, default_value_t = 4)]
    horizon: usize,
    #[arg(long, global = true, value_enum, default_value_t = MetricArg::PlanEffect)]
    metric: MetricArg,
    #[arg(long, global = true, value_enum, default_value_t = ModalityArg::Objective)]
    modality: ModalityArg,
    /// Refuse theories with more initial valuations than this
    #[arg(long, global = true, env = "CFPLANNER_MAX_WORLDS", default_value_t = DEFAULT_MAX_WORLDS)]
    max_worlds: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Let objective plan searches use sensing actions
    #[arg(long, global = true)]
    include_sensing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the theory entails a query
    Check { query: String },
    /// Search for plans achieving a goal
    Plan {
        goal: String,
        /// Report at most this many plans
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Closest plan that makes the goal false (known false under --modality K)
    ExplainCf(PlanGoal),
    /// Every plan within distance k reaching a diversity target
    ExplainDiverse {
        #[command(flatten)]
        base: PlanGoal,
        /// Diversity constraint α; the target is α ∧ ¬goal
        #[arg(long, requires = "goal")]
        alpha: Option<String>,
        /// Use this formula as the whole target instead of α ∧ ¬goal
        #[arg(long, conflicts_with_all = ["alpha"])]
        target: Option<String>,
        #[arg(long)]
        k: usize,
    },
    /// Reconcile what the agent knows with what it should have known
    ExplainReconcile {
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        base: PlanGoal,
    },
    /// Check the validities of the logic on the theory's models
    ValidateLogic {
        /// Trace depth
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Args, Debug)]
struct PlanGoal {
    /// Plan as `a(x);b(y)`
    #[arg(long)]
    plan: String,
    #[arg(long)]
    goal: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    Length,
    Fluent,
    PlanEffect,
}

impl From<MetricArg> for DistanceMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Length => DistanceMetric::Length,
            MetricArg::Fluent => DistanceMetric::Fluent,
            MetricArg::PlanEffect => DistanceMetric::PlanEffect,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModalityArg {
    Objective,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<ModalityArg> for Modality {
    fn from(m: ModalityArg) -> Self {
        match m {
            ModalityArg::Objective => Modality::Objective,
            ModalityArg::K => Modality::Know,
            ModalityArg::B => Modality::Possible,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    MissingActions,
    MissingKnowledge,
    MissingBoth,
    FalseBelief,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Explain(#[from] ExplainError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Explain(ExplainError::PreconditionFailed(_))
            | CliError::Explain(ExplainError::NotFound { .. })
            | CliError::Explain(ExplainError::InconsistentBelief) => 1,
            _ => 2,
        }
    }
}

/// Outcome of a command: what to print and whether it counts as success.
struct Report {
    text: String,
    success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let path = cli
        .theory
        .as_ref()
        .ok_or_else(|| CliError::Usage("--theory is required".into()))?;
    let theory = parse_theory_file(path)?;
    let ax = GroundedAxioms::new(&theory);
    match &cli.command {
        Command::Check { query } => cmd_check(cli, &ax, query),
        Command::Plan { goal, limit } => cmd_plan(cli, &ax, goal, *limit),
        Command::ExplainCf(pg) => {
            let ex = explainer(cli, &ax)?;
            let (plan, goal) = plan_goal(&theory, pg)?;
            let e = match cli.modality {
                ModalityArg::Objective => ex.cf_explain(&plan, &goal, cli.metric.into())?,
                ModalityArg::K => ex.epistemic_cf(&plan, &goal, cli.metric.into())?,
                ModalityArg::B => {
                    return Err(CliError::Usage("explain-cf supports --modality objective or K".into()))
                }
            };
            Ok(explanations(cli, &ax, &[e])?)
        }
        Command::ExplainDiverse { base, alpha, target, k } => {
            let ex = explainer(cli, &ax)?;
            let plan = parse_plan(&base.plan, &theory)?;
            let set = match (target, alpha) {
                (Some(target), _) => ex.diverse_target(&plan, &formula(&theory, target)?, *k, cli.metric.into())?,
                (None, Some(alpha)) => {
                    let goal = base
                        .goal
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("--alpha needs --goal".into()))?;
                    ex.diverse_cf(&plan, &formula(&theory, goal)?, &formula(&theory, alpha)?, *k, cli.metric.into())?
                }
                (None, None) => return Err(CliError::Usage("give --alpha with --goal, or --target".into())),
            };
            Ok(explanations(cli, &ax, &set)?)
        }
        Command::ExplainReconcile { mode, base } => {
            let ex = explainer(cli, &ax)?;
            let (plan, goal) = plan_goal(&theory, base)?;
            // Reconciliation is about what the agent knows; objective means K.
            let modality = match cli.modality {
                ModalityArg::B => Modality::Possible,
                _ => Modality::Know,
            };
            let metric = cli.metric.into();
            let e = match mode {
                Mode::MissingActions => ex.missing_actions(&plan, &goal, metric)?,
                Mode::MissingKnowledge => ex.missing_knowledge(&plan, &goal)?,
                Mode::MissingBoth => ex.missing_both(&plan, &goal, metric, modality)?,
                Mode::FalseBelief => ex.false_belief(&plan, &goal, metric, modality)?,
            };
            Ok(explanations(cli, &ax, &[e])?)
        }
        Command::ValidateLogic { depth } => cmd_validate(cli, &ax, *depth),
    }
}

fn explainer<'ax>(cli: &Cli, ax: &'ax GroundedAxioms) -> Result<Explainer<'ax>, CliError> {
    Ok(Explainer::new(ax, cli.horizon, cli.max_worlds)?.include_sensing(cli.include_sensing))
}

/// Goals keep their surface shape so that a leading `K` can be recognized.
fn formula(theory: &Theory, src: &str) -> Result<Formula, CliError> {
    Ok(parse_formula(src, theory)?.universal_closure())
}

fn plan_goal(theory: &Theory, pg: &PlanGoal) -> Result<(Plan, Formula), CliError> {
    let goal = pg
        .goal
        .as_ref()
        .ok_or_else(|| CliError::Usage("--goal is required".into()))?;
    Ok((parse_plan(&pg.plan, theory)?, formula(theory, goal)?))
}

fn cmd_check(cli: &Cli, ax: &GroundedAxioms, query: &str) -> Result<Report, CliError> {
    let f = parse_query(query, ax.theory())?;
    let model = Model::new(ax, cli.max_worlds)?;
    let r = model.entails(&f)?;
    let mut text = String::new();
    writeln!(text, "verdict: {}", r.verdict).unwrap();
    writeln!(text, "models_checked: {}", r.models_checked).unwrap();
    match r.witness {
        Some(id) => writeln!(text, "countermodel: world {id}").unwrap(),
        None if cli.output == Output::Structured => writeln!(text, "countermodel: (none)").unwrap(),
        None => {}
    }
    Ok(Report {
        text,
        success: r.verdict,
    })
}

fn cmd_plan(cli: &Cli, ax: &GroundedAxioms, goal: &str, limit: usize) -> Result<Report, CliError> {
    let t = ax.theory();
    let goal = formula(t, goal)?;
    let model = Model::new(ax, cli.max_worlds)?;
    let mut cfg = SearchConfig::new(cli.horizon, cli.modality.into());
    cfg.max_candidates = limit;
    cfg.include_sensing = cli.include_sensing;
    let result = find_plans(&model, &goal, &cfg)?;
    let mut text = String::new();
    if result.candidates.is_empty() {
        match cli.output {
            Output::Text => writeln!(text, "no plan within horizon {}", cli.horizon).unwrap(),
            Output::Structured => {
                writeln!(text, "result: not-found\nhorizon: {}", cli.horizon).unwrap()
            }
        }
    }
    for (i, c) in result.candidates.iter().enumerate() {
        match cli.output {
            Output::Text => writeln!(text, "{}", t.show_plan(&c.plan)).unwrap(),
            Output::Structured => {
                if i > 0 {
                    text.push('\n');
                }
                writeln!(text, "index: {i}").unwrap();
                writeln!(text, "plan: {}", t.show_plan(&c.plan)).unwrap();
                writeln!(text, "length: {}", c.plan.len()).unwrap();
                writeln!(text, "certificate: {}", t.show(&c.checked_formula)).unwrap();
            }
        }
    }
    Ok(Report {
        text,
        success: !result.candidates.is_empty(),
    })
}

fn explanations(cli: &Cli, ax: &GroundedAxioms, set: &[Explanation]) -> Result<Report, CliError> {
    let t = ax.theory();
    let list = |fs: &[Formula]| -> String {
        if fs.is_empty() {
            "(none)".into()
        } else {
            fs.iter().map(|f| t.show(f).to_string()).collect::<Vec<_>>().join("; ")
        }
    };
    let mut text = String::new();
    let mut success = true;
    for (i, e) in set.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        let check = verify(ax, e, cli.max_worlds)?;
        success &= check.verdict;
        let plan = e.plan.as_ref().map_or("(unchanged)".into(), |p| t.show_plan(p));
        let distance = e.distance.map_or("(none)".into(), |d| d.to_string());
        writeln!(text, "kind: {}", e.kind).unwrap();
        writeln!(text, "modality: {}", e.modality).unwrap();
        writeln!(text, "plan: {plan}").unwrap();
        writeln!(text, "added: {}", list(&e.added)).unwrap();
        writeln!(text, "removed: {}", list(&e.removed)).unwrap();
        writeln!(text, "distance: {distance}").unwrap();
        if cli.output == Output::Structured {
            writeln!(text, "metric: {}", DistanceMetric::from(cli.metric)).unwrap();
        }
        writeln!(text, "horizon: {}", e.horizon).unwrap();
        writeln!(text, "certificate: {}", t.show(&e.certificate)).unwrap();
        writeln!(text, "verified: {}", check.verdict).unwrap();
        writeln!(text, "models_checked: {}", check.models_checked).unwrap();
    }
    Ok(Report { text, success })
}

fn cmd_validate(cli: &Cli, ax: &GroundedAxioms, depth: usize) -> Result<Report, CliError> {
    let t = ax.theory();
    let model = Model::new(ax, cli.max_worlds)?;
    let reports = check_all(&model, depth)?;
    let mut text = String::new();
    for (i, r) in reports.iter().enumerate() {
        let verdict = if r.verdict { "pass" } else { "fail" };
        match cli.output {
            Output::Text => {
                write!(
                    text,
                    "{:<18} {verdict}  ({} instances, {} traces, {} checks)",
                    r.schema.name(),
                    r.instances,
                    r.traces,
                    r.models_checked
                )
                .unwrap();
                text.push('\n');
            }
            Output::Structured => {
                if i > 0 {
                    text.push('\n');
                }
                writeln!(text, "schema: {}", r.schema.name()).unwrap();
                writeln!(text, "verdict: {verdict}").unwrap();
                writeln!(text, "depth: {depth}").unwrap();
                writeln!(text, "instances: {}", r.instances).unwrap();
                writeln!(text, "traces: {}", r.traces).unwrap();
                writeln!(text, "models_checked: {}", r.models_checked).unwrap();
            }
        }
        if let Some((f, z, w)) = &r.counterexample {
            writeln!(text, "counterexample: {} after [{}] at world {w}", t.show(f), t.show_plan(z)).unwrap();
        }
    }
    Ok(Report {
        text,
        success: reports.iter().all(|r| r.verdict),
    })
}

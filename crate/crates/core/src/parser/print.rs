//! Renders formulas and theories back into the DSL. The output reparses to
//! a structurally identical value.

use std::fmt::{self, Write};

use crate::model::{ActionTerm, Formula, PredicateKind, Term, Theory};

const QUANT: u8 = 0;
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

pub struct FormulaDisplay<'a> {
    theory: &'a Theory,
    formula: &'a Formula,
}

impl<'a> FormulaDisplay<'a> {
    pub fn new(theory: &'a Theory, formula: &'a Formula) -> Self {
        Self { theory, formula }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer { theory: self.theory }.formula(f, self.formula, QUANT)
    }
}

struct Printer<'a> {
    theory: &'a Theory,
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(inner) if matches!(**inner, Formula::Eq(..) | Formula::ActionEq(..)) => ATOM,
        Formula::Not(_)
        | Formula::After(..)
        | Formula::Know(_)
        | Formula::Possible(_)
        | Formula::OnlyKnow(_) => UNARY,
        _ => ATOM,
    }
}

impl Printer<'_> {
    fn term(&self, out: &mut dyn Write, t: &Term) -> fmt::Result {
        match t {
            Term::Var(v) => out.write_str(v),
            Term::Name(n) => out.write_str(self.theory.object_name(*n)),
        }
    }

    fn terms(&self, out: &mut dyn Write, name: &str, args: &[Term]) -> fmt::Result {
        out.write_str(name)?;
        if args.is_empty() {
            return Ok(());
        }
        out.write_char('(')?;
        for (i, t) in args.iter().enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            self.term(out, t)?;
        }
        out.write_char(')')
    }

    fn action(&self, out: &mut dyn Write, a: &ActionTerm) -> fmt::Result {
        match a {
            ActionTerm::Var(v) => out.write_str(v),
            ActionTerm::App { action, args } => {
                self.terms(out, &self.theory.action_decl(*action).name, args)
            }
        }
    }

    fn actions(&self, out: &mut dyn Write, actions: &[&ActionTerm]) -> fmt::Result {
        for (i, a) in actions.iter().enumerate() {
            if i > 0 {
                out.write_char(';')?;
            }
            self.action(out, a)?;
        }
        Ok(())
    }

    fn formula(&self, out: &mut dyn Write, f: &Formula, min: u8) -> fmt::Result {
        let parens = precedence(f) < min;
        if parens {
            out.write_char('(')?;
        }
        self.bare(out, f)?;
        if parens {
            out.write_char(')')?;
        }
        Ok(())
    }

    fn bare(&self, out: &mut dyn Write, f: &Formula) -> fmt::Result {
        match f {
            Formula::True => out.write_str("true"),
            Formula::False => out.write_str("false"),
            Formula::Atom { pred, args } => {
                self.terms(out, &self.theory.predicate_symbol(*pred).name, args)
            }
            Formula::Eq(a, b) => {
                self.term(out, a)?;
                out.write_str(" == ")?;
                self.term(out, b)
            }
            Formula::ActionEq(a, b) => {
                self.action(out, a)?;
                out.write_str(" == ")?;
                self.action(out, b)
            }
            Formula::Not(inner) => match &**inner {
                Formula::Eq(a, b) => {
                    self.term(out, a)?;
                    out.write_str(" != ")?;
                    self.term(out, b)
                }
                Formula::ActionEq(a, b) => {
                    self.action(out, a)?;
                    out.write_str(" != ")?;
                    self.action(out, b)
                }
                other => {
                    out.write_char('!')?;
                    self.formula(out, other, UNARY)
                }
            },
            Formula::Poss(a) => {
                out.write_str("Poss(")?;
                self.action(out, a)?;
                out.write_char(')')
            }
            Formula::Sf(a) => {
                out.write_str("SF(")?;
                self.action(out, a)?;
                out.write_char(')')
            }
            Formula::Exec(actions) => {
                out.write_str("Exec(")?;
                self.actions(out, &actions.iter().collect::<Vec<_>>())?;
                out.write_char(')')
            }
            Formula::And(a, b) => self.binary(out, a, " & ", b, AND, UNARY),
            Formula::Or(a, b) => self.binary(out, a, " | ", b, OR, AND),
            Formula::Implies(a, b) => self.binary(out, a, " -> ", b, OR, IMPLIES),
            Formula::Iff(a, b) => self.binary(out, a, " <-> ", b, IFF, IMPLIES),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let word = if matches!(f, Formula::Forall(..)) {
                    "forall"
                } else {
                    "exists"
                };
                write!(out, "{word} {x}. ")?;
                self.formula(out, body, QUANT)
            }
            Formula::After(..) => {
                let mut chain = Vec::new();
                let mut cur = f;
                while let Formula::After(a, inner) = cur {
                    chain.push(a);
                    cur = inner;
                }
                out.write_char('[')?;
                self.actions(out, &chain)?;
                out.write_str("] ")?;
                self.formula(out, cur, UNARY)
            }
            Formula::Know(inner) => {
                out.write_str("K ")?;
                self.formula(out, inner, UNARY)
            }
            Formula::Possible(inner) => {
                out.write_str("B ")?;
                self.formula(out, inner, UNARY)
            }
            Formula::OnlyKnow(inner) => {
                out.write_str("O ")?;
                self.formula(out, inner, UNARY)
            }
        }
    }

    fn binary(
        &self,
        out: &mut dyn Write,
        a: &Formula,
        op: &str,
        b: &Formula,
        left_min: u8,
        right_min: u8,
    ) -> fmt::Result {
        self.formula(out, a, left_min)?;
        out.write_str(op)?;
        self.formula(out, b, right_min)
    }
}

fn show(theory: &Theory, f: &Formula) -> String {
    FormulaDisplay::new(theory, f).to_string()
}

fn signature(name: &str, params: &[String]) -> String {
    if params.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", params.join(", "))
    }
}

pub fn write_theory(theory: &Theory, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(out, "domain {} {{", theory.name())?;
    if theory.object_count() > 0 {
        let names: Vec<&str> = theory.objects().map(|n| theory.object_name(n)).collect();
        writeln!(out, "  objects: {};", names.join(", "))?;
    }

    // Consecutive runs of the same kind keep predicate indices stable on reparse.
    let preds = theory.predicates();
    let mut i = 0;
    while i < preds.len() {
        let kind = preds[i].kind;
        let mut run = Vec::new();
        while i < preds.len() && preds[i].kind == kind {
            run.push(format!("{}/{}", preds[i].name, preds[i].arity));
            i += 1;
        }
        let word = match kind {
            PredicateKind::Rigid => "rigids",
            PredicateKind::Fluent => "fluents",
        };
        writeln!(out, "  {word}: {};", run.join(", "))?;
    }

    for decl in theory.actions() {
        let word = if decl.sense.is_some() { "sense" } else { "action" };
        write!(
            out,
            "  {word} {} {{ poss: {};",
            signature(&decl.name, &decl.params),
            show(theory, &decl.poss)
        )?;
        if let Some(sf) = &decl.sense {
            write!(out, " sf: {};", show(theory, sf))?;
        }
        writeln!(out, " }}")?;
    }

    for ssa in theory.ssas() {
        let name = &theory.predicate_symbol(ssa.fluent).name;
        writeln!(
            out,
            "  ssa {}: {};",
            signature(name, &ssa.params),
            show(theory, &ssa.body)
        )?;
    }

    for (word, axioms) in [
        ("init-true", theory.sigma0()),
        ("init-known", theory.sigma0_believed()),
    ] {
        writeln!(out, "  {word} {{")?;
        for f in axioms {
            writeln!(out, "    {};", show(theory, f))?;
        }
        writeln!(out, "  }}")?;
    }
    writeln!(out, "}}")
}

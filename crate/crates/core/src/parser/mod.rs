//! Theory files and query strings.
//!
//! Parsing happens in two passes: a recursive-descent pass builds a raw tree
//! of identifiers, then resolution maps identifiers to declared symbols and
//! variables. The split lets successor state axioms mention actions that are
//! declared later in the file.

mod lexer;
pub mod print;

use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::dynamics::{ground_closed, satisfiable, AtomTable};
use crate::error::{ParseError, ParseErrorKind, SourceSpan};
use crate::model::{
    ActionDecl, ActionId, ActionTerm, Formula, GroundAction, ObjectName, Plan, PredId,
    PredicateKind, PredicateSymbol, SsaDecl, Term, Theory,
};
use lexer::{tokenize, Tok, Token};

const RESERVED: &[&str] = &[
    "K", "B", "O", "Poss", "SF", "Exec", "forall", "exists", "true", "false",
];

/// The variable naming the action under consideration in successor state axioms.
pub const ACTION_VAR: &str = "a";

pub fn parse_theory(source: &str) -> Result<Theory, ParseError> {
    let tokens = tokenize(source)?;
    let raw = Parser::new(tokens).theory()?;
    resolve_theory(raw)
}

pub fn parse_theory_file(path: &Path) -> Result<Theory, ParseError> {
    let file = Some(path.to_path_buf());
    let source = std::fs::read_to_string(path).map_err(|e| {
        ParseError::new(ParseErrorKind::Syntax, SourceSpan::new(0, 0), e.to_string())
            .with_file(file.clone())
    })?;
    parse_theory(&source).map_err(|e| e.with_file(file))
}

/// Parses a query formula as written, without normalizing. Identifiers that
/// are neither declared names nor bound by a quantifier are rejected, so the
/// result is closed.
pub fn parse_formula(source: &str, theory: &Theory) -> Result<Formula, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser::new(tokens);
    let raw = parser.formula()?;
    parser.expect_eof()?;
    let symbols = Symbols::of_theory(theory);
    let mut scope = Scope::new(&symbols, Context::Query);
    scope.formula(&raw)
}

/// Parses a query and returns it closed and normalized.
pub fn parse_query(source: &str, theory: &Theory) -> Result<Formula, ParseError> {
    Ok(parse_formula(source, theory)?.universal_closure().normalize())
}

/// Parses the canonical plan form `a1(args);a2(args)`. Blank input is the empty plan.
pub fn parse_plan(source: &str, theory: &Theory) -> Result<Plan, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser::new(tokens);
    let terms = if parser.peek() == &Tok::Eof {
        Vec::new()
    } else {
        parser.plan_terms(&Tok::Eof)?
    };
    parser.expect_eof()?;
    let symbols = Symbols::of_theory(theory);
    let scope = Scope::new(&symbols, Context::Query);
    terms
        .iter()
        .map(|t| {
            let term = scope.action_term(t)?;
            term.as_ground().ok_or_else(|| {
                ParseError::new(ParseErrorKind::Syntax, t.span.clone(), "plan actions must be ground")
            })
        })
        .collect::<Result<Vec<GroundAction>, _>>()
        .map(Plan::new)
}

// ---------------------------------------------------------------------------
// Raw syntax

#[derive(Clone, Debug)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
enum RawNode {
    True,
    False,
    App(RawTerm),
    Eq(RawTerm, RawTerm),
    Neq(RawTerm, RawTerm),
    Poss(RawTerm),
    Sf(RawTerm),
    Exec(Vec<RawTerm>),
    Not(Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
    Implies(Box<Raw>, Box<Raw>),
    Iff(Box<Raw>, Box<Raw>),
    Forall(Vec<String>, Box<Raw>),
    Exists(Vec<String>, Box<Raw>),
    After(Vec<RawTerm>, Box<Raw>),
    Know(Box<Raw>),
    Possible(Box<Raw>),
    /// `O` is parsed only to be rejected with a precise message.
    OnlyKnow,
}

#[derive(Clone, Debug)]
struct Raw {
    node: RawNode,
    span: SourceSpan,
}

struct RawAction {
    name: String,
    params: Vec<String>,
    poss: Option<Raw>,
    sense: Option<Raw>,
    span: SourceSpan,
}

struct RawSsa {
    fluent: String,
    params: Vec<String>,
    body: Raw,
    span: SourceSpan,
}

struct RawSymbol {
    name: String,
    arity: usize,
    kind: PredicateKind,
    span: SourceSpan,
}

struct RawTheory {
    name: String,
    objects: Vec<(String, SourceSpan)>,
    predicates: Vec<RawSymbol>,
    actions: Vec<RawAction>,
    ssas: Vec<RawSsa>,
    init_true: Vec<Raw>,
    init_true_span: Option<SourceSpan>,
    init_known: Vec<Raw>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Self { tokens, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, self.span(), message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<SourceSpan, ParseError> {
        if self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Result<SourceSpan, ParseError> {
        if self.is_keyword(word) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    // -- theory ------------------------------------------------------------

    fn theory(&mut self) -> Result<RawTheory, ParseError> {
        self.keyword("domain")?;
        let (name, _) = self.ident()?;
        self.expect(&Tok::LBrace)?;
        let mut theory = RawTheory {
            name,
            objects: Vec::new(),
            predicates: Vec::new(),
            actions: Vec::new(),
            ssas: Vec::new(),
            init_true: Vec::new(),
            init_true_span: None,
            init_known: Vec::new(),
        };
        while !self.eat(&Tok::RBrace) {
            let (word, span) = self.ident()?;
            match word.as_str() {
                "objects" => {
                    self.expect(&Tok::Colon)?;
                    loop {
                        theory.objects.push(self.ident()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::Semi)?;
                }
                "rigids" | "fluents" => {
                    let kind = if word == "rigids" {
                        PredicateKind::Rigid
                    } else {
                        PredicateKind::Fluent
                    };
                    self.expect(&Tok::Colon)?;
                    loop {
                        let (name, span) = self.ident()?;
                        self.expect(&Tok::Slash)?;
                        let arity = match self.peek() {
                            Tok::Number(n) => *n,
                            _ => return Err(self.unexpected("an arity")),
                        };
                        self.bump();
                        theory.predicates.push(RawSymbol {
                            name,
                            arity,
                            kind,
                            span,
                        });
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::Semi)?;
                }
                "action" | "sense" => theory.actions.push(self.action(span)?),
                "ssa" => {
                    let (fluent, _) = self.ident()?;
                    let params = self.params()?;
                    self.expect(&Tok::Colon)?;
                    let body = self.formula()?;
                    self.expect(&Tok::Semi)?;
                    theory.ssas.push(RawSsa {
                        fluent,
                        params,
                        body,
                        span,
                    });
                }
                "init-true" => {
                    theory.init_true_span.get_or_insert(span);
                    let mut block = self.axiom_block()?;
                    theory.init_true.append(&mut block);
                }
                "init-known" => {
                    let mut block = self.axiom_block()?;
                    theory.init_known.append(&mut block);
                }
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        span,
                        format!("unknown section `{other}`"),
                    ))
                }
            }
        }
        self.expect_eof()?;
        Ok(theory)
    }

    fn params(&mut self) -> Result<Vec<String>, ParseError> {
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            if !self.eat(&Tok::RParen) {
                loop {
                    params.push(self.ident()?.0);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::RParen)?;
            }
        }
        Ok(params)
    }

    fn action(&mut self, span: SourceSpan) -> Result<RawAction, ParseError> {
        let (name, _) = self.ident()?;
        let params = self.params()?;
        self.expect(&Tok::LBrace)?;
        let mut action = RawAction {
            name,
            params,
            poss: None,
            sense: None,
            span,
        };
        while !self.eat(&Tok::RBrace) {
            let (field, span) = self.ident()?;
            self.expect(&Tok::Colon)?;
            let body = self.formula()?;
            self.expect(&Tok::Semi)?;
            let slot = match field.as_str() {
                "poss" => &mut action.poss,
                "sf" => &mut action.sense,
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        span,
                        format!("unknown action field `{other}`"),
                    ))
                }
            };
            if slot.replace(body).is_some() {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    span,
                    format!("field `{field}` given twice"),
                ));
            }
        }
        Ok(action)
    }

    fn axiom_block(&mut self) -> Result<Vec<Raw>, ParseError> {
        self.expect(&Tok::LBrace)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrace) {
            out.push(self.formula()?);
            self.expect(&Tok::Semi)?;
        }
        Ok(out)
    }

    // -- formulas ----------------------------------------------------------

    fn formula(&mut self) -> Result<Raw, ParseError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Raw, ParseError> {
        let mut left = self.implies()?;
        while self.peek() == &Tok::Iff {
            let span = self.bump().span;
            let right = self.implies()?;
            left = Raw {
                node: RawNode::Iff(Box::new(left), Box::new(right)),
                span,
            };
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Raw, ParseError> {
        let left = self.or()?;
        if self.peek() == &Tok::Implies {
            let span = self.bump().span;
            let right = self.implies()?;
            return Ok(Raw {
                node: RawNode::Implies(Box::new(left), Box::new(right)),
                span,
            });
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Raw, ParseError> {
        let mut left = self.and()?;
        while self.peek() == &Tok::Or {
            let span = self.bump().span;
            let right = self.and()?;
            left = Raw {
                node: RawNode::Or(Box::new(left), Box::new(right)),
                span,
            };
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Raw, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == &Tok::And {
            let span = self.bump().span;
            let right = self.unary()?;
            left = Raw {
                node: RawNode::And(Box::new(left), Box::new(right)),
                span,
            };
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        let span = self.span();
        let wrap = |node| Ok(Raw { node, span: span.clone() });
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                let inner = self.unary()?;
                wrap(RawNode::Not(Box::new(inner)))
            }
            Tok::LBracket => {
                self.bump();
                let plan = if self.peek() == &Tok::RBracket {
                    Vec::new()
                } else {
                    self.plan_terms(&Tok::RBracket)?
                };
                self.expect(&Tok::RBracket)?;
                let inner = self.unary()?;
                if plan.is_empty() {
                    return Ok(inner);
                }
                wrap(RawNode::After(plan, Box::new(inner)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(word) => match word.as_str() {
                "K" | "B" | "O" => {
                    self.bump();
                    let inner = Box::new(self.unary()?);
                    wrap(match word.as_str() {
                        "K" => RawNode::Know(inner),
                        "B" => RawNode::Possible(inner),
                        _ => RawNode::OnlyKnow,
                    })
                }
                "forall" | "exists" => {
                    self.bump();
                    let mut vars = vec![self.ident()?.0];
                    while self.eat(&Tok::Comma) {
                        vars.push(self.ident()?.0);
                    }
                    self.expect(&Tok::Dot)?;
                    let body = Box::new(self.formula()?);
                    wrap(if word == "forall" {
                        RawNode::Forall(vars, body)
                    } else {
                        RawNode::Exists(vars, body)
                    })
                }
                "true" => {
                    self.bump();
                    wrap(RawNode::True)
                }
                "false" => {
                    self.bump();
                    wrap(RawNode::False)
                }
                "Poss" | "SF" => {
                    self.bump();
                    self.expect(&Tok::LParen)?;
                    let action = self.term()?;
                    self.expect(&Tok::RParen)?;
                    wrap(if word == "Poss" {
                        RawNode::Poss(action)
                    } else {
                        RawNode::Sf(action)
                    })
                }
                "Exec" => {
                    self.bump();
                    self.expect(&Tok::LParen)?;
                    let plan = if self.peek() == &Tok::RParen {
                        Vec::new()
                    } else {
                        self.plan_terms(&Tok::RParen)?
                    };
                    self.expect(&Tok::RParen)?;
                    wrap(RawNode::Exec(plan))
                }
                _ => {
                    let left = self.term()?;
                    match self.peek() {
                        Tok::EqEq => {
                            self.bump();
                            let right = self.term()?;
                            wrap(RawNode::Eq(left, right))
                        }
                        Tok::NotEq => {
                            self.bump();
                            let right = self.term()?;
                            wrap(RawNode::Neq(left, right))
                        }
                        _ => wrap(RawNode::App(left)),
                    }
                }
            },
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let (name, span) = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                span,
                format!("`{name}` is reserved and cannot be used as a term"),
            ));
        }
        let args = if self.peek() == &Tok::LParen {
            self.bump();
            let mut args = Vec::new();
            if !self.eat(&Tok::RParen) {
                loop {
                    args.push(self.term()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(&Tok::RParen)?;
            }
            Some(args)
        } else {
            None
        };
        Ok(RawTerm { name, args, span })
    }

    /// `t1;t2;...`, stopping before `end`. A trailing `;` is tolerated.
    fn plan_terms(&mut self, end: &Tok) -> Result<Vec<RawTerm>, ParseError> {
        let mut out = vec![self.term()?];
        while self.eat(&Tok::Semi) {
            if self.peek() == end {
                break;
            }
            out.push(self.term()?);
        }
        // Guard against ambiguous input like `[a b]`.
        if self.peek() != end && matches!(self.peek_at(0), Tok::Ident(_)) {
            return Err(self.unexpected("`;`"));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Resolution

struct Symbols {
    objects: HashMap<String, ObjectName>,
    predicates: HashMap<String, (PredId, usize)>,
    actions: HashMap<String, (ActionId, usize)>,
}

impl Symbols {
    fn of_theory(theory: &Theory) -> Self {
        Self {
            objects: theory
                .objects()
                .map(|n| (theory.object_name(n).to_string(), n))
                .collect(),
            predicates: theory
                .predicates()
                .iter()
                .enumerate()
                .map(|(i, p)| (p.name.clone(), (PredId(i as u16), p.arity)))
                .collect(),
            actions: theory
                .actions()
                .iter()
                .enumerate()
                .map(|(i, a)| (a.name.clone(), (ActionId(i as u16), a.params.len())))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    /// Precondition, sensing and successor state bodies: objective, with
    /// only parameters (and the action variable) free.
    Body,
    /// Initial axioms: objective; unknown identifiers are implicitly
    /// universally quantified variables.
    Initial,
    /// Query position: any modality except `O`; everything must be declared or bound.
    Query,
}

struct Scope<'a> {
    symbols: &'a Symbols,
    context: Context,
    bound: Vec<String>,
    action_var: Option<&'a str>,
}

impl<'a> Scope<'a> {
    fn new(symbols: &'a Symbols, context: Context) -> Self {
        Self {
            symbols,
            context,
            bound: Vec::new(),
            action_var: None,
        }
    }

    fn is_bound(&self, name: &str) -> bool {
        self.bound.iter().any(|b| b == name)
    }

    fn is_action_var(&self, t: &RawTerm) -> bool {
        t.args.is_none() && self.action_var == Some(t.name.as_str()) && !self.is_bound(&t.name)
    }

    fn is_action_term(&self, t: &RawTerm) -> bool {
        if self.is_action_var(t) {
            return true;
        }
        if self.is_bound(&t.name) && t.args.is_none() {
            return false;
        }
        self.symbols.actions.contains_key(&t.name)
            && !(t.args.is_none() && self.symbols.objects.contains_key(&t.name))
    }

    fn object_term(&self, t: &RawTerm) -> Result<Term, ParseError> {
        if t.args.is_some() {
            let kind = if self.symbols.actions.contains_key(&t.name) {
                "an action cannot appear as an object argument"
            } else {
                "function symbols are not supported"
            };
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                t.span.clone(),
                format!("`{}`: {kind}", t.name),
            ));
        }
        if self.is_bound(&t.name) {
            return Ok(Term::Var(t.name.clone()));
        }
        if let Some(&n) = self.symbols.objects.get(&t.name) {
            return Ok(Term::Name(n));
        }
        if self.context == Context::Initial {
            return Ok(Term::Var(t.name.clone()));
        }
        Err(ParseError::new(
            ParseErrorKind::UnknownSymbol,
            t.span.clone(),
            format!("unknown object or variable `{}`", t.name),
        ))
    }

    fn action_term(&self, t: &RawTerm) -> Result<ActionTerm, ParseError> {
        if self.is_action_var(t) {
            return Ok(ActionTerm::Var(t.name.clone()));
        }
        let Some(&(action, arity)) = self.symbols.actions.get(&t.name) else {
            return Err(ParseError::new(
                ParseErrorKind::UnknownSymbol,
                t.span.clone(),
                format!("unknown action `{}`", t.name),
            ));
        };
        let raw_args = t.args.as_deref().unwrap_or(&[]);
        if raw_args.len() != arity {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                t.span.clone(),
                format!(
                    "action `{}` takes {arity} argument(s), got {}",
                    t.name,
                    raw_args.len()
                ),
            ));
        }
        let args = raw_args
            .iter()
            .map(|a| self.object_term(a))
            .collect::<Result<_, _>>()?;
        Ok(ActionTerm::App { action, args })
    }

    fn forbid_modal(&self, raw: &Raw, what: &str) -> Result<(), ParseError> {
        match self.context {
            Context::Query => Ok(()),
            Context::Body | Context::Initial => Err(ParseError::new(
                ParseErrorKind::ModalInAxiom,
                raw.span.clone(),
                format!("{what} may not appear in an axiom"),
            )),
        }
    }

    fn forbid_distinguished(&self, raw: &Raw, what: &str) -> Result<(), ParseError> {
        match self.context {
            Context::Query => Ok(()),
            Context::Body | Context::Initial => Err(ParseError::new(
                ParseErrorKind::Syntax,
                raw.span.clone(),
                format!("{what} may not appear in an axiom"),
            )),
        }
    }

    fn formula(&mut self, raw: &Raw) -> Result<Formula, ParseError> {
        use RawNode::*;
        let boxed = |f: Formula| Box::new(f);
        Ok(match &raw.node {
            True => Formula::True,
            False => Formula::False,
            App(t) => self.atom(t)?,
            Eq(l, r) => self.equality(l, r)?,
            Neq(l, r) => Formula::not(self.equality(l, r)?),
            Poss(t) => {
                self.forbid_distinguished(raw, "Poss")?;
                Formula::Poss(self.action_term(t)?)
            }
            Sf(t) => {
                self.forbid_distinguished(raw, "SF")?;
                Formula::Sf(self.action_term(t)?)
            }
            Exec(ts) => {
                self.forbid_modal(raw, "Exec")?;
                Formula::Exec(
                    ts.iter()
                        .map(|t| self.action_term(t))
                        .collect::<Result<_, _>>()?,
                )
            }
            Not(f) => Formula::Not(boxed(self.formula(f)?)),
            And(a, b) => Formula::And(boxed(self.formula(a)?), boxed(self.formula(b)?)),
            Or(a, b) => Formula::Or(boxed(self.formula(a)?), boxed(self.formula(b)?)),
            Implies(a, b) => Formula::Implies(boxed(self.formula(a)?), boxed(self.formula(b)?)),
            Iff(a, b) => Formula::Iff(boxed(self.formula(a)?), boxed(self.formula(b)?)),
            Forall(vars, body) | Exists(vars, body) => {
                let depth = self.bound.len();
                self.bound.extend(vars.iter().cloned());
                let inner = self.formula(body);
                self.bound.truncate(depth);
                let mut f = inner?;
                for v in vars.iter().rev() {
                    f = if matches!(raw.node, Forall(..)) {
                        Formula::forall(v.clone(), f)
                    } else {
                        Formula::exists(v.clone(), f)
                    };
                }
                f
            }
            After(plan, body) => {
                self.forbid_modal(raw, "[a]")?;
                let actions = plan
                    .iter()
                    .map(|t| self.action_term(t))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut f = self.formula(body)?;
                for a in actions.into_iter().rev() {
                    f = Formula::After(a, Box::new(f));
                }
                f
            }
            Know(f) => {
                self.forbid_modal(raw, "K")?;
                Formula::know(self.formula(f)?)
            }
            Possible(f) => {
                self.forbid_modal(raw, "B")?;
                Formula::possible(self.formula(f)?)
            }
            OnlyKnow => {
                self.forbid_modal(raw, "O")?;
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    raw.span.clone(),
                    "O is only allowed in theory position, not in queries",
                ));
            }
        })
    }

    fn atom(&self, t: &RawTerm) -> Result<Formula, ParseError> {
        let Some(&(pred, arity)) = self.symbols.predicates.get(&t.name) else {
            let message = if self.symbols.actions.contains_key(&t.name)
                || self.symbols.objects.contains_key(&t.name)
            {
                format!("`{}` is not a predicate", t.name)
            } else {
                format!("unknown predicate `{}`", t.name)
            };
            return Err(ParseError::new(
                ParseErrorKind::UnknownSymbol,
                t.span.clone(),
                message,
            ));
        };
        let raw_args = t.args.as_deref().unwrap_or(&[]);
        if raw_args.len() != arity {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                t.span.clone(),
                format!(
                    "predicate `{}` takes {arity} argument(s), got {}",
                    t.name,
                    raw_args.len()
                ),
            ));
        }
        let args = raw_args
            .iter()
            .map(|a| self.object_term(a))
            .collect::<Result<_, _>>()?;
        Ok(Formula::Atom { pred, args })
    }

    fn equality(&self, l: &RawTerm, r: &RawTerm) -> Result<Formula, ParseError> {
        if self.is_action_term(l) || self.is_action_term(r) {
            Ok(Formula::ActionEq(self.action_term(l)?, self.action_term(r)?))
        } else {
            Ok(Formula::Eq(self.object_term(l)?, self.object_term(r)?))
        }
    }
}

fn check_name(name: &str, span: &SourceSpan, seen: &mut HashSet<String>) -> Result<(), ParseError> {
    if RESERVED.contains(&name) {
        return Err(ParseError::new(
            ParseErrorKind::Syntax,
            span.clone(),
            format!("`{name}` is reserved"),
        ));
    }
    if !seen.insert(name.to_string()) {
        return Err(ParseError::new(
            ParseErrorKind::Syntax,
            span.clone(),
            format!("`{name}` is declared twice"),
        ));
    }
    Ok(())
}

fn check_params(params: &[String], span: &SourceSpan) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for p in params {
        if RESERVED.contains(&p.as_str()) || !seen.insert(p) {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                span.clone(),
                format!("bad or repeated parameter `{p}`"),
            ));
        }
    }
    Ok(())
}

fn resolve_theory(raw: RawTheory) -> Result<Theory, ParseError> {
    let mut seen = HashSet::new();
    for (name, span) in &raw.objects {
        check_name(name, span, &mut seen)?;
    }
    for p in &raw.predicates {
        check_name(&p.name, &p.span, &mut seen)?;
    }
    for a in &raw.actions {
        check_name(&a.name, &a.span, &mut seen)?;
        check_params(&a.params, &a.span)?;
    }

    let objects: Vec<String> = raw.objects.iter().map(|(n, _)| n.clone()).collect();
    let predicates: Vec<PredicateSymbol> = raw
        .predicates
        .iter()
        .map(|p| PredicateSymbol {
            name: p.name.clone(),
            arity: p.arity,
            kind: p.kind,
        })
        .collect();
    let symbols = Symbols {
        objects: objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjectName(i as u16)))
            .collect(),
        predicates: predicates
            .iter()
            .enumerate()
            .map(|(i, p)| (p.name.clone(), (PredId(i as u16), p.arity)))
            .collect(),
        actions: raw
            .actions
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), (ActionId(i as u16), a.params.len())))
            .collect(),
    };

    let body = |f: &Raw, params: &[String], action_var: Option<&'static str>| {
        let mut scope = Scope::new(&symbols, Context::Body);
        scope.bound = params.to_vec();
        scope.action_var = action_var;
        scope.formula(f)
    };

    let mut actions = Vec::new();
    for a in &raw.actions {
        let poss = match &a.poss {
            Some(f) => body(f, &a.params, None)?,
            None => Formula::True,
        };
        let sense = a
            .sense
            .as_ref()
            .map(|f| body(f, &a.params, None))
            .transpose()?;
        actions.push(ActionDecl {
            name: a.name.clone(),
            params: a.params.clone(),
            poss,
            sense,
            span: a.span.clone(),
        });
    }

    let mut ssas: Vec<SsaDecl> = Vec::new();
    for s in &raw.ssas {
        let Some(&(fluent, arity)) = symbols.predicates.get(&s.fluent) else {
            return Err(ParseError::new(
                ParseErrorKind::UnknownSymbol,
                s.span.clone(),
                format!("unknown fluent `{}`", s.fluent),
            ));
        };
        if predicates[fluent.index()].kind == PredicateKind::Rigid {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                s.span.clone(),
                format!("`{}` is rigid and takes no successor state axiom", s.fluent),
            ));
        }
        if s.params.len() != arity {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                s.span.clone(),
                format!(
                    "fluent `{}` takes {arity} argument(s), got {}",
                    s.fluent,
                    s.params.len()
                ),
            ));
        }
        check_params(&s.params, &s.span)?;
        if s.params.iter().any(|p| p == ACTION_VAR) {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                s.span.clone(),
                format!("`{ACTION_VAR}` names the action and cannot be a parameter"),
            ));
        }
        if ssas.iter().any(|d| d.fluent == fluent) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateSsa,
                s.span.clone(),
                format!("second successor state axiom for `{}`", s.fluent),
            ));
        }
        ssas.push(SsaDecl {
            fluent,
            params: s.params.clone(),
            action_var: ACTION_VAR.to_string(),
            body: body(&s.body, &s.params, Some(ACTION_VAR))?,
            span: s.span.clone(),
        });
    }
    for (i, p) in predicates.iter().enumerate() {
        if p.kind == PredicateKind::Fluent && !ssas.iter().any(|s| s.fluent.index() == i) {
            let span = raw.predicates[i].span.clone();
            return Err(ParseError::new(
                ParseErrorKind::MissingSsa,
                span,
                format!("fluent `{}` has no successor state axiom", p.name),
            ));
        }
    }

    let initial = |fs: &[Raw]| -> Result<Vec<Formula>, ParseError> {
        fs.iter()
            .map(|f| {
                let mut scope = Scope::new(&symbols, Context::Initial);
                Ok(scope.formula(f)?.universal_closure())
            })
            .collect()
    };
    let sigma0 = initial(&raw.init_true)?;
    let sigma0_believed = initial(&raw.init_known)?;

    let theory = Theory::from_parts(
        raw.name,
        objects,
        predicates,
        actions,
        ssas,
        sigma0,
        sigma0_believed,
    );

    let table = AtomTable::new(&theory);
    let init = ground_closed(&theory, &table, &Formula::conjunction(theory.sigma0().iter().cloned()))
        .expect("initial axioms are objective and closed");
    if !satisfiable(&init) {
        return Err(ParseError::new(
            ParseErrorKind::UnsatInit,
            raw.init_true_span.unwrap_or_else(|| SourceSpan::new(1, 1)),
            "init-true has no model over the declared objects",
        ));
    }
    Ok(theory)
}

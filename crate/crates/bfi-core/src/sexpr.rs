//! The canonical text syntax.
//!
//! Types: `0`, `(-> s t)` (n-ary accepted, right associated). Terms: a bare
//! identifier is a variable, `(c name)` a constant, `(ap f a ...)` an
//! application. Formulas: `bot`, `(atom P t ...)`, `(maj t q)`, `(leq t q)`,
//! `(not A)`, `(and A B)`, `(or A B)`, `(imp A B)`, `(all x ty A)`,
//! `(ex x ty A)`, `(allb x ty t A)`, `(exb x ty t A)`. `(eq t q)` is sugar
//! for `(and (leq t q) (leq q t))`. Comments run from `;` to end of line.
//!
//! Binders carry the variable's type; a free variable has no annotation in
//! this syntax and defaults to type `0`. Constant names resolve against a
//! signature: decimal numerals are base-type, `succ` and `max` are built in,
//! and a model may contribute more.

use crate::error::ParseError;
use crate::syntax::{FinType, Formula, Term, Var};
use std::collections::BTreeMap;

/// Constant name → type resolution for the parser.
#[derive(Debug, Clone)]
pub struct ConstSignature {
    named: BTreeMap<String, FinType>,
}

impl ConstSignature {
    /// Numerals plus `succ : 0 -> 0` and `max : 0 -> 0 -> 0`.
    pub fn builtin() -> ConstSignature {
        let base = FinType::Base;
        let mut named = BTreeMap::new();
        named.insert(
            "succ".to_string(),
            FinType::arrow(base.clone(), base.clone()),
        );
        named.insert(
            "max".to_string(),
            FinType::arrow(base.clone(), FinType::arrow(base.clone(), base)),
        );
        ConstSignature { named }
    }

    pub fn with(mut self, name: impl Into<String>, ty: FinType) -> ConstSignature {
        self.named.insert(name.into(), ty);
        self
    }

    pub fn lookup(&self, name: &str) -> Option<FinType> {
        if !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit()) {
            return Some(FinType::Base);
        }
        self.named.get(name).cloned()
    }
}

impl Default for ConstSignature {
    fn default() -> Self {
        ConstSignature::builtin()
    }
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom {
        text: String,
        line: usize,
        col: usize,
    },
    List {
        items: Vec<Sexp>,
        line: usize,
        col: usize,
    },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, col, .. } => (*line, *col),
            Sexp::List { line, col, .. } => (*line, *col),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
enum Token {
    LParen(usize, usize),
    RParen(usize, usize),
    Atom(String, usize, usize),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Vec<Token> {
        let mut out = Vec::new();
        loop {
            match self.chars.peek().copied() {
                None => break,
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('(') => {
                    out.push(Token::LParen(self.line, self.col));
                    self.bump();
                }
                Some(')') => {
                    out.push(Token::RParen(self.line, self.col));
                    self.bump();
                }
                Some(_) => {
                    let (line, col) = (self.line, self.col);
                    let mut text = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                            break;
                        }
                        text.push(c);
                        self.bump();
                    }
                    out.push(Token::Atom(text, line, col));
                }
            }
        }
        out
    }
}

fn parse_sexps(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let tokens = Lexer::new(text).tokens();
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let mut last = (1, 1);
    for tok in tokens {
        match tok {
            Token::LParen(line, col) => {
                stack.push((std::mem::take(&mut top), line, col));
                last = (line, col);
            }
            Token::RParen(line, col) => match stack.pop() {
                Some((outer, l, c)) => {
                    let list = Sexp::List {
                        items: std::mem::replace(&mut top, outer),
                        line: l,
                        col: c,
                    };
                    top.push(list);
                    last = (line, col);
                }
                None => return Err(ParseError::new(line, col, "unmatched `)`")),
            },
            Token::Atom(text, line, col) => {
                top.push(Sexp::Atom { text, line, col });
                last = (line, col);
            }
        }
    }
    if let Some((_, line, col)) = stack.pop() {
        return Err(ParseError::new(
            line,
            col,
            format!(
                "unclosed `(` (syntax error at end of input, last token at {}:{})",
                last.0, last.1
            ),
        ));
    }
    Ok(top)
}

struct Scope {
    stack: Vec<Var>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Option<&Var> {
        self.stack.iter().rev().find(|v| v.name == name)
    }
}

fn err(sexp: &Sexp, message: impl Into<String>) -> ParseError {
    let (line, col) = sexp.pos();
    ParseError::new(line, col, message)
}

fn atom_text<'s>(sexp: &'s Sexp, what: &str) -> Result<&'s str, ParseError> {
    match sexp {
        Sexp::Atom { text, .. } => Ok(text),
        Sexp::List { .. } => Err(err(sexp, format!("expected {what}, found a list"))),
    }
}

fn parse_type_sexp(sexp: &Sexp) -> Result<FinType, ParseError> {
    match sexp {
        Sexp::Atom { text, .. } if text == "0" => Ok(FinType::Base),
        Sexp::Atom { text, .. } => Err(err(
            sexp,
            format!("unknown type `{text}`, expected `0` or `(-> s t)`"),
        )),
        Sexp::List { items, .. } => {
            match items.first() {
                Some(head) if atom_text(head, "type head").ok() == Some("->") => {}
                _ => return Err(err(sexp, "expected a type: `0` or `(-> s t)`")),
            }
            if items.len() < 3 {
                return Err(err(sexp, "`->` needs at least two arguments"));
            }
            let parts: Result<Vec<FinType>, ParseError> =
                items[1..].iter().map(parse_type_sexp).collect();
            let mut parts = parts?;
            let mut ty = parts.pop().expect("at least two parts");
            while let Some(d) = parts.pop() {
                ty = FinType::arrow(d, ty);
            }
            Ok(ty)
        }
    }
}

/// Parse a type written in the canonical syntax.
pub fn parse_type(text: &str) -> Result<FinType, ParseError> {
    let sexps = parse_sexps(text)?;
    match sexps.as_slice() {
        [one] => parse_type_sexp(one),
        [] => Err(ParseError::new(1, 1, "empty input, expected a type")),
        [_, extra, ..] => Err(err(extra, "trailing input after type")),
    }
}

fn parse_term(sexp: &Sexp, scope: &Scope, sig: &ConstSignature) -> Result<Term, ParseError> {
    match sexp {
        Sexp::Atom { text, .. } => match scope.lookup(text) {
            Some(v) => Ok(Term::Var(v.clone())),
            // free variables carry no annotation in this syntax
            None => Ok(Term::Var(Var::new(text.clone(), FinType::Base))),
        },
        Sexp::List { items, .. } => {
            let head = items
                .first()
                .ok_or_else(|| err(sexp, "empty list in term position"))?;
            match atom_text(head, "term head")? {
                "c" => {
                    if items.len() != 2 {
                        return Err(err(sexp, "`c` takes exactly one name"));
                    }
                    let name = atom_text(&items[1], "constant name")?;
                    match sig.lookup(name) {
                        Some(ty) => Ok(Term::Const(name.to_string(), ty)),
                        None => Err(err(&items[1], format!("unknown constant `{name}`"))),
                    }
                }
                "ap" => {
                    if items.len() < 3 {
                        return Err(err(sexp, "`ap` needs a function and at least one argument"));
                    }
                    let mut term = parse_term(&items[1], scope, sig)?;
                    for arg in &items[2..] {
                        term = Term::app(term, parse_term(arg, scope, sig)?);
                    }
                    Ok(term)
                }
                other => Err(err(sexp, format!("unknown term constructor `{other}`"))),
            }
        }
    }
}

fn parse_binder(
    items: &[Sexp],
    sexp: &Sexp,
    scope: &mut Scope,
    sig: &ConstSignature,
    bounded: bool,
) -> Result<(Var, Option<Term>, Formula), ParseError> {
    let expected = if bounded { 5 } else { 4 };
    if items.len() != expected {
        let head = atom_text(&items[0], "head").unwrap_or("?");
        return Err(err(
            sexp,
            format!(
                "`{head}` takes {} arguments: variable, type{}, body",
                expected - 1,
                if bounded { ", bound term" } else { "" }
            ),
        ));
    }
    let name = atom_text(&items[1], "variable name")?;
    let ty = parse_type_sexp(&items[2])?;
    let var = Var::new(name.to_string(), ty);
    // the bound term sits outside the binder scope
    let bound = if bounded {
        Some(parse_term(&items[3], scope, sig)?)
    } else {
        None
    };
    scope.stack.push(var.clone());
    let body = parse_formula_sexp(items.last().expect("checked length"), scope, sig);
    scope.stack.pop();
    Ok((var, bound, body?))
}

fn parse_formula_sexp(
    sexp: &Sexp,
    scope: &mut Scope,
    sig: &ConstSignature,
) -> Result<Formula, ParseError> {
    match sexp {
        Sexp::Atom { text, .. } if text == "bot" => Ok(Formula::Bot),
        Sexp::Atom { text, .. } => Err(err(
            sexp,
            format!("expected a formula, found bare atom `{text}`"),
        )),
        Sexp::List { items, .. } => {
            let head = items
                .first()
                .ok_or_else(|| err(sexp, "empty list in formula position"))?;
            let head_text = atom_text(head, "formula head")?;
            let need = |n: usize| -> Result<(), ParseError> {
                if items.len() != n + 1 {
                    Err(err(
                        sexp,
                        format!(
                            "`{head_text}` takes {n} arguments, found {}",
                            items.len() - 1
                        ),
                    ))
                } else {
                    Ok(())
                }
            };
            match head_text {
                "atom" => {
                    if items.len() < 2 {
                        return Err(err(sexp, "`atom` needs a predicate symbol"));
                    }
                    let p = atom_text(&items[1], "predicate symbol")?;
                    let args: Result<Vec<Term>, ParseError> = items[2..]
                        .iter()
                        .map(|s| parse_term(s, scope, sig))
                        .collect();
                    Ok(Formula::Atom(p.to_string(), args?))
                }
                "maj" => {
                    need(2)?;
                    Ok(Formula::Maj(
                        parse_term(&items[1], scope, sig)?,
                        parse_term(&items[2], scope, sig)?,
                    ))
                }
                "leq" => {
                    need(2)?;
                    Ok(Formula::Leq0(
                        parse_term(&items[1], scope, sig)?,
                        parse_term(&items[2], scope, sig)?,
                    ))
                }
                "eq" => {
                    need(2)?;
                    let t = parse_term(&items[1], scope, sig)?;
                    let q = parse_term(&items[2], scope, sig)?;
                    Ok(Formula::Leq0(t.clone(), q.clone()).and(Formula::Leq0(q, t)))
                }
                "not" => {
                    need(1)?;
                    Ok(parse_formula_sexp(&items[1], scope, sig)?.not())
                }
                "and" => {
                    need(2)?;
                    Ok(parse_formula_sexp(&items[1], scope, sig)?
                        .and(parse_formula_sexp(&items[2], scope, sig)?))
                }
                "or" => {
                    need(2)?;
                    Ok(parse_formula_sexp(&items[1], scope, sig)?
                        .or(parse_formula_sexp(&items[2], scope, sig)?))
                }
                "imp" => {
                    need(2)?;
                    Ok(parse_formula_sexp(&items[1], scope, sig)?
                        .imp(parse_formula_sexp(&items[2], scope, sig)?))
                }
                "all" => {
                    let (v, _, body) = parse_binder(items, sexp, scope, sig, false)?;
                    Ok(Formula::forall(v, body))
                }
                "ex" => {
                    let (v, _, body) = parse_binder(items, sexp, scope, sig, false)?;
                    Ok(Formula::exists(v, body))
                }
                "allb" => {
                    let (v, bound, body) = parse_binder(items, sexp, scope, sig, true)?;
                    Ok(Formula::bforall(v, bound.expect("bounded"), body))
                }
                "exb" => {
                    let (v, bound, body) = parse_binder(items, sexp, scope, sig, true)?;
                    Ok(Formula::bexists(v, bound.expect("bounded"), body))
                }
                other => Err(err(sexp, format!("unknown formula constructor `{other}`"))),
            }
        }
    }
}

/// Parse every formula in the input (one per s-expression).
pub fn parse_formulas(text: &str, sig: &ConstSignature) -> Result<Vec<Formula>, ParseError> {
    let sexps = parse_sexps(text)?;
    let mut scope = Scope { stack: Vec::new() };
    sexps
        .iter()
        .map(|s| parse_formula_sexp(s, &mut scope, sig))
        .collect()
}

/// Parse exactly one formula.
pub fn parse_formula(text: &str, sig: &ConstSignature) -> Result<Formula, ParseError> {
    let mut formulas = parse_formulas(text, sig)?;
    match formulas.len() {
        1 => Ok(formulas.pop().expect("checked length")),
        0 => Err(ParseError::new(1, 1, "empty input, expected a formula")),
        n => Err(ParseError::new(
            1,
            1,
            format!("expected one formula, found {n}"),
        )),
    }
}

//! Abstract syntax: finite types, typed variables, terms and formulas.
//!
//! One formula enum carries both languages. The classical fragment is
//! `¬, ∨, ∧, ∀⊴, ∀` over atoms; the intuitionistic fragment additionally has
//! `⊥, →, ∃⊴, ∃`. Negation is a primitive node in both.

use crate::error::SyntaxError;
use std::collections::BTreeSet;
use std::fmt;

/// Finite types: the base type `0` and arrow types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinType {
    Base,
    Arrow(Box<FinType>, Box<FinType>),
}

impl FinType {
    pub fn arrow(domain: FinType, codomain: FinType) -> FinType {
        FinType::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// The curried type `a_1 -> ... -> a_n -> result`.
    pub fn curry(args: &[FinType], result: &FinType) -> FinType {
        args.iter()
            .rev()
            .fold(result.clone(), |acc, a| FinType::arrow(a.clone(), acc))
    }

    /// `level(0) = 0`, `level(d -> c) = max(level(d) + 1, level(c))`.
    pub fn level(&self) -> u32 {
        match self {
            FinType::Base => 0,
            FinType::Arrow(d, c) => (d.level() + 1).max(c.level()),
        }
    }
}

impl fmt::Display for FinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinType::Base => write!(f, "0"),
            FinType::Arrow(d, c) => write!(f, "(-> {d} {c})"),
        }
    }
}

/// A typed variable. Equality is (name, type) equality; the well-formedness
/// check rejects formulas using one name at two types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub ty: FinType,
}

impl Var {
    pub fn new(name: impl Into<String>, ty: FinType) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

/// An ordered, possibly empty tuple of pairwise-distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarTuple {
    items: Vec<Var>,
}

impl VarTuple {
    pub fn empty() -> VarTuple {
        VarTuple::default()
    }

    pub fn new(items: Vec<Var>) -> Result<VarTuple, SyntaxError> {
        let mut seen = BTreeSet::new();
        for v in &items {
            if !seen.insert(v.clone()) {
                return Err(SyntaxError::DuplicateInTuple(v.name.clone()));
            }
        }
        Ok(VarTuple { items })
    }

    pub fn items(&self) -> &[Var] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Var> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn types(&self) -> Vec<FinType> {
        self.items.iter().map(|v| v.ty.clone()).collect()
    }

    /// The tuple read back as a list of variable terms.
    pub fn terms(&self) -> Vec<Term> {
        self.items.iter().map(|v| Term::Var(v.clone())).collect()
    }

    pub fn concat(&self, other: &VarTuple) -> Result<VarTuple, SyntaxError> {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        VarTuple::new(items)
    }
}

impl<'a> IntoIterator for &'a VarTuple {
    type Item = &'a Var;
    type IntoIter = std::slice::Iter<'a, Var>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl fmt::Display for VarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Terms: variables, typed constants, and application.
///
/// There is no lambda; the translations only ever emit variables, constants
/// and iterated applications.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Const(String, FinType),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn constant(name: impl Into<String>, ty: FinType) -> Term {
        Term::Const(name.into(), ty)
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `head x_1 ... x_n` as iterated application.
    pub fn apply_to_vars<'a>(head: Term, args: impl IntoIterator<Item = &'a Var>) -> Term {
        args.into_iter()
            .fold(head, |acc, v| Term::app(acc, Term::Var(v.clone())))
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(..) => {}
            Term::App(f, a) => {
                f.free_vars_into(out);
                a.free_vars_into(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn mentions_name(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v.name == name,
            Term::Const(..) => false,
            Term::App(f, a) => f.mentions_name(name) || a.mentions_name(name),
        }
    }
}

impl fmt::Display for Term {
    /// The canonical text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v.name),
            Term::Const(name, _) => write!(f, "(c {name})"),
            Term::App(fun, arg) => write!(f, "(ap {fun} {arg})"),
        }
    }
}

/// The formula language. `Maj` is the majorizability atom `t ⊴ q`, `Leq0` the
/// base-type inequality `t ≤₀ q`; `BForall`/`BExists` are the bounded
/// quantifiers `∀x⊴t` / `∃x⊴t` whose bound term is outside the binder scope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Atom(String, Vec<Term>),
    Maj(Term, Term),
    Leq0(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    BForall(Var, Term, Box<Formula>),
    BExists(Var, Term, Box<Formula>),
}

/// The two languages the translations operate on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    Classical,
    Intuitionistic,
}

impl Formula {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(name.into(), args)
    }

    pub fn maj(left: Term, right: Term) -> Formula {
        Formula::Maj(left, right)
    }

    pub fn leq0(left: Term, right: Term) -> Formula {
        Formula::Leq0(left, right)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn imp(self, rhs: Formula) -> Formula {
        Formula::Imp(Box::new(self), Box::new(rhs))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn bforall(v: Var, bound: Term, body: Formula) -> Formula {
        Formula::BForall(v, bound, Box::new(body))
    }

    pub fn bexists(v: Var, bound: Term, body: Formula) -> Formula {
        Formula::BExists(v, bound, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, args) => {
                for t in args {
                    t.free_vars_into(out);
                }
            }
            Formula::Maj(t, q) | Formula::Leq0(t, q) => {
                t.free_vars_into(out);
                q.free_vars_into(out);
            }
            Formula::Not(a) => a.free_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let mut body = BTreeSet::new();
                a.free_vars_into(&mut body);
                body.remove(v);
                out.extend(body);
            }
            Formula::BForall(v, bound, a) | Formula::BExists(v, bound, a) => {
                bound.free_vars_into(out);
                let mut body = BTreeSet::new();
                a.free_vars_into(&mut body);
                body.remove(v);
                out.extend(body);
            }
        }
    }

    /// Every variable name occurring anywhere: free, bound, or in bound terms.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        fn term_names(t: &Term, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(v) => {
                    out.insert(v.name.clone());
                }
                Term::Const(..) => {}
                Term::App(f, a) => {
                    term_names(f, out);
                    term_names(a, out);
                }
            }
        }
        fn walk(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                Formula::Bot => {}
                Formula::Atom(_, args) => {
                    for t in args {
                        term_names(t, out);
                    }
                }
                Formula::Maj(t, q) | Formula::Leq0(t, q) => {
                    term_names(t, out);
                    term_names(q, out);
                }
                Formula::Not(a) => walk(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Formula::Forall(v, a) | Formula::Exists(v, a) => {
                    out.insert(v.name.clone());
                    walk(a, out);
                }
                Formula::BForall(v, bound, a) | Formula::BExists(v, bound, a) => {
                    out.insert(v.name.clone());
                    term_names(bound, out);
                    walk(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    /// True iff the formula contains no unbounded quantifier.
    pub fn is_bounded(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => true,
            Formula::Not(a) => a.is_bounded(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_bounded() && b.is_bounded()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::BForall(_, _, a) | Formula::BExists(_, _, a) => a.is_bounded(),
        }
    }

    /// The first constructor outside the classical language, if any.
    pub fn classical_violation(&self) -> Option<&'static str> {
        match self {
            Formula::Bot => Some("bot"),
            Formula::Imp(..) => Some("imp"),
            Formula::Exists(..) => Some("ex"),
            Formula::BExists(..) => Some("exb"),
            Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => None,
            Formula::Not(a) => a.classical_violation(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.classical_violation().or_else(|| b.classical_violation())
            }
            Formula::Forall(_, a) | Formula::BForall(_, _, a) => a.classical_violation(),
        }
    }

    pub fn conforms_to(&self, lang: Language) -> bool {
        match lang {
            Language::Classical => self.classical_violation().is_none(),
            Language::Intuitionistic => true,
        }
    }

    /// Nesting depth of the formula tree.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => 1,
            Formula::Not(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::BForall(_, _, a)
            | Formula::BExists(_, _, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FinType {
        FinType::Base
    }

    #[test]
    fn levels() {
        assert_eq!(base().level(), 0);
        assert_eq!(FinType::arrow(base(), base()).level(), 1);
        // (0 -> 0) -> 0 is level 2, 0 -> (0 -> 0) is level 1
        assert_eq!(
            FinType::arrow(FinType::arrow(base(), base()), base()).level(),
            2
        );
        assert_eq!(
            FinType::arrow(base(), FinType::arrow(base(), base())).level(),
            1
        );
    }

    #[test]
    fn curry_builds_right_associated_arrows() {
        let t = FinType::curry(&[base(), base()], &base());
        assert_eq!(t, FinType::arrow(base(), FinType::arrow(base(), base())));
        assert_eq!(FinType::curry(&[], &base()), base());
    }

    #[test]
    fn tuple_rejects_duplicates() {
        let x = Var::new("x", base());
        assert!(VarTuple::new(vec![x.clone(), x]).is_err());
        // same name at a different type is a distinct variable
        let x0 = Var::new("x", base());
        let x1 = Var::new("x", FinType::arrow(base(), base()));
        assert!(VarTuple::new(vec![x0, x1]).is_ok());
    }

    #[test]
    fn free_vars_respect_binders_and_bound_terms() {
        let x = Var::new("x", base());
        let v = Var::new("v", base());
        // forall x <= v. P(x) has exactly v free; the bound term is outside the scope
        let f = Formula::bforall(
            x.clone(),
            Term::Var(v.clone()),
            Formula::atom("P", vec![Term::Var(x.clone())]),
        );
        let fv = f.free_vars();
        assert!(fv.contains(&v));
        assert!(!fv.contains(&x));
    }

    #[test]
    fn bounded_recognizer() {
        let x = Var::new("x", base());
        let p = Formula::atom("P", vec![Term::Var(x.clone())]);
        assert!(p.is_bounded());
        assert!(Formula::bforall(x.clone(), Term::constant("1", base()), p.clone()).is_bounded());
        assert!(!Formula::forall(x, p).is_bounded());
    }

    #[test]
    fn classical_fragment() {
        let q = Formula::atom("Q", vec![]);
        assert!(q.clone().not().conforms_to(Language::Classical));
        assert_eq!(q.clone().imp(q.clone()).classical_violation(), Some("imp"));
        assert_eq!(Formula::Bot.classical_violation(), Some("bot"));
        let z = Var::new("z", base());
        assert_eq!(Formula::exists(z, q).classical_violation(), Some("ex"));
    }
}

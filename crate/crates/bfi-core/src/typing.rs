//! Well-formedness checking. Violations are data, not failures: the report
//! lists everything wrong with a formula.

use crate::syntax::{FinType, Formula, Term, Var};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeViolation {
    /// An application whose function part is not an arrow or whose argument
    /// type does not match the arrow domain.
    BadApplication { term: Term, detail: String },
    /// Type mismatch in a majorizability atom `t ⊴ q`.
    MajMismatch { left: FinType, right: FinType },
    /// A `≤₀` atom over a non-base term.
    LeqNotBase { term: Term, found: FinType },
    /// The bound variable of a bounded quantifier occurs in its bound term.
    BoundVarInBoundTerm { var: Var, bound: Term },
    /// The bound term of a bounded quantifier has the wrong type.
    BoundTypeMismatch {
        var: Var,
        bound: Term,
        found: FinType,
    },
    /// One name used at two types somewhere in the formula.
    NameAtTwoTypes {
        name: String,
        first: FinType,
        second: FinType,
    },
}

impl fmt::Display for TypeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeViolation::BadApplication { term, detail } => {
                write!(f, "ill-typed application in `{term:?}`: {detail}")
            }
            TypeViolation::MajMismatch { left, right } => {
                write!(f, "type mismatch in ⊴: {left} vs {right}")
            }
            TypeViolation::LeqNotBase { found, .. } => {
                write!(f, "≤₀ argument has type {found}, expected 0")
            }
            TypeViolation::BoundVarInBoundTerm { var, .. } => {
                write!(f, "bound variable `{}` occurs in its bound term", var.name)
            }
            TypeViolation::BoundTypeMismatch { var, found, .. } => {
                write!(
                    f,
                    "bound term for `{}` has type {found}, expected {}",
                    var.name, var.ty
                )
            }
            TypeViolation::NameAtTwoTypes {
                name,
                first,
                second,
            } => {
                write!(f, "name `{name}` used at two types: {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeReport {
    pub violations: Vec<TypeViolation>,
}

impl TypeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TypeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Compute the type of a term, or a violation for the first ill-typed
/// application encountered.
pub fn term_type(t: &Term) -> Result<FinType, TypeViolation> {
    match t {
        Term::Var(v) => Ok(v.ty.clone()),
        Term::Const(_, ty) => Ok(ty.clone()),
        Term::App(fun, arg) => {
            let fun_ty = term_type(fun)?;
            let arg_ty = term_type(arg)?;
            match fun_ty {
                FinType::Arrow(d, c) if *d == arg_ty => Ok(*c),
                FinType::Arrow(d, _) => Err(TypeViolation::BadApplication {
                    term: t.clone(),
                    detail: format!("argument has type {arg_ty}, function expects {d}"),
                }),
                other => Err(TypeViolation::BadApplication {
                    term: t.clone(),
                    detail: format!("function part has non-arrow type {other}"),
                }),
            }
        }
    }
}

/// Full well-formedness check: every term well-typed, atoms obey their type
/// constraints, bounded quantifiers keep their variable out of the bound
/// term, and no name is used at two types.
pub fn well_typed(f: &Formula) -> TypeReport {
    let mut report = TypeReport::default();
    let mut names: BTreeMap<String, FinType> = BTreeMap::new();
    walk(f, &mut report, &mut names);
    report
}

/// True iff all quantifications in `f` are bounded.
pub fn is_bounded(f: &Formula) -> bool {
    f.is_bounded()
}

fn note_var(v: &Var, report: &mut TypeReport, names: &mut BTreeMap<String, FinType>) {
    match names.get(&v.name) {
        None => {
            names.insert(v.name.clone(), v.ty.clone());
        }
        Some(ty) if *ty == v.ty => {}
        Some(ty) => {
            let violation = TypeViolation::NameAtTwoTypes {
                name: v.name.clone(),
                first: ty.clone(),
                second: v.ty.clone(),
            };
            if !report.violations.contains(&violation) {
                report.violations.push(violation);
            }
        }
    }
}

fn check_term(t: &Term, report: &mut TypeReport, names: &mut BTreeMap<String, FinType>) {
    match t {
        Term::Var(v) => note_var(v, report, names),
        Term::Const(..) => {}
        Term::App(fun, arg) => {
            check_term(fun, report, names);
            check_term(arg, report, names);
        }
    }
    // report the application error only at the outermost term
    if let Term::App(..) = t {
        if let Err(v) = term_type(t) {
            if !report.violations.contains(&v) {
                report.violations.push(v);
            }
        }
    }
}

fn walk(f: &Formula, report: &mut TypeReport, names: &mut BTreeMap<String, FinType>) {
    match f {
        Formula::Bot => {}
        Formula::Atom(_, args) => {
            for t in args {
                check_term(t, report, names);
            }
        }
        Formula::Maj(t, q) => {
            check_term(t, report, names);
            check_term(q, report, names);
            if let (Ok(lt), Ok(rt)) = (term_type(t), term_type(q)) {
                if lt != rt {
                    report.violations.push(TypeViolation::MajMismatch {
                        left: lt,
                        right: rt,
                    });
                }
            }
        }
        Formula::Leq0(t, q) => {
            check_term(t, report, names);
            check_term(q, report, names);
            for side in [t, q] {
                if let Ok(ty) = term_type(side) {
                    if ty != FinType::Base {
                        report.violations.push(TypeViolation::LeqNotBase {
                            term: side.clone(),
                            found: ty,
                        });
                    }
                }
            }
        }
        Formula::Not(a) => walk(a, report, names),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            walk(a, report, names);
            walk(b, report, names);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            note_var(v, report, names);
            walk(a, report, names);
        }
        Formula::BForall(v, bound, a) | Formula::BExists(v, bound, a) => {
            note_var(v, report, names);
            check_term(bound, report, names);
            if bound.mentions_name(&v.name) {
                report.violations.push(TypeViolation::BoundVarInBoundTerm {
                    var: v.clone(),
                    bound: bound.clone(),
                });
            }
            if let Ok(ty) = term_type(bound) {
                if ty != v.ty {
                    report.violations.push(TypeViolation::BoundTypeMismatch {
                        var: v.clone(),
                        bound: bound.clone(),
                        found: ty,
                    });
                }
            }
            walk(a, report, names);
        }
    }
}

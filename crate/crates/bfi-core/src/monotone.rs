//! Monotone-quantifier desugaring and relativization of bounded quantifiers.
//!
//! The monotone quantifiers abbreviate, for a tuple `x = x_1, ..., x_n`:
//!
//! ```text
//! ∀̃x A        :=  ∀x_1 ... ∀x_n (x_1⊴x_1 ∧ ... ∧ x_n⊴x_n → A)
//! ∃̃x A        :=  ∃x_1 ... ∃x_n (x_1⊴x_1 ∧ ... ∧ x_n⊴x_n ∧ A)
//! ∀̃x ⊴ t A   :=  ∀x_1⊴t_1 ... ∀x_n⊴t_n (x_1⊴x_1 ∧ ... → A)
//! ∃̃x ⊴ t A   :=  ∃x_1⊴t_1 ... ∃x_n⊴t_n (x_1⊴x_1 ∧ ... ∧ A)
//! ```
//!
//! Over the empty tuple each of these is the identity on formulas.

use crate::error::SyntaxError;
use crate::syntax::{Formula, Term, VarTuple};

/// `x_1⊴x_1 ∧ ... ∧ x_n⊴x_n`, right associated. None for the empty tuple.
fn self_maj_conj(xs: &VarTuple) -> Option<Formula> {
    let mut iter = xs.iter().rev();
    let last = iter.next()?;
    let mut acc = Formula::maj(Term::Var(last.clone()), Term::Var(last.clone()));
    for v in iter {
        acc = Formula::maj(Term::Var(v.clone()), Term::Var(v.clone())).and(acc);
    }
    Some(acc)
}

pub fn monotone_forall(xs: &VarTuple, body: Formula) -> Formula {
    match self_maj_conj(xs) {
        None => body,
        Some(conj) => xs
            .iter()
            .rev()
            .fold(conj.imp(body), |acc, v| Formula::forall(v.clone(), acc)),
    }
}

pub fn monotone_exists(xs: &VarTuple, body: Formula) -> Formula {
    match self_maj_conj(xs) {
        None => body,
        Some(conj) => xs
            .iter()
            .rev()
            .fold(conj.and(body), |acc, v| Formula::exists(v.clone(), acc)),
    }
}

pub fn bounded_monotone_forall(
    xs: &VarTuple,
    bounds: &[Term],
    body: Formula,
) -> Result<Formula, SyntaxError> {
    if xs.len() != bounds.len() {
        return Err(SyntaxError::LengthMismatch {
            left: xs.len(),
            right: bounds.len(),
        });
    }
    Ok(match self_maj_conj(xs) {
        None => body,
        Some(conj) => xs
            .iter()
            .zip(bounds)
            .rev()
            .fold(conj.imp(body), |acc, (v, t)| {
                Formula::bforall(v.clone(), t.clone(), acc)
            }),
    })
}

pub fn bounded_monotone_exists(
    xs: &VarTuple,
    bounds: &[Term],
    body: Formula,
) -> Result<Formula, SyntaxError> {
    if xs.len() != bounds.len() {
        return Err(SyntaxError::LengthMismatch {
            left: xs.len(),
            right: bounds.len(),
        });
    }
    Ok(match self_maj_conj(xs) {
        None => body,
        Some(conj) => xs
            .iter()
            .zip(bounds)
            .rev()
            .fold(conj.and(body), |acc, (v, t)| {
                Formula::bexists(v.clone(), t.clone(), acc)
            }),
    })
}

/// Eliminate bounded quantifiers by the governing axioms:
/// `∀x⊴t A  ↔  ∀x (x⊴t → A)` and `∃x⊴t A  ↔  ∃x (x⊴t ∧ A)`.
pub fn relativize_bounded(f: &Formula) -> Formula {
    match f {
        Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => f.clone(),
        Formula::Not(a) => relativize_bounded(a).not(),
        Formula::And(a, b) => relativize_bounded(a).and(relativize_bounded(b)),
        Formula::Or(a, b) => relativize_bounded(a).or(relativize_bounded(b)),
        Formula::Imp(a, b) => relativize_bounded(a).imp(relativize_bounded(b)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), relativize_bounded(a)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), relativize_bounded(a)),
        Formula::BForall(v, bound, a) => Formula::forall(
            v.clone(),
            Formula::maj(Term::Var(v.clone()), bound.clone()).imp(relativize_bounded(a)),
        ),
        Formula::BExists(v, bound, a) => Formula::exists(
            v.clone(),
            Formula::maj(Term::Var(v.clone()), bound.clone()).and(relativize_bounded(a)),
        ),
    }
}

//! Capture-avoiding substitution.

use crate::error::SubstError;
use crate::fresh::NamePool;
use crate::syntax::{Formula, Term, Var};
use crate::typing::term_type;
use std::collections::BTreeMap;

/// Substitute `replacement` for every free occurrence of `var`.
pub fn substitute(f: &Formula, var: &Var, replacement: &Term) -> Result<Formula, SubstError> {
    let mut map = BTreeMap::new();
    map.insert(var.clone(), replacement.clone());
    substitute_map(f, &map)
}

/// Simultaneous capture-avoiding substitution. Every replacement term must
/// have its variable's type.
pub fn substitute_map(f: &Formula, map: &BTreeMap<Var, Term>) -> Result<Formula, SubstError> {
    for (var, term) in map {
        match term_type(term) {
            Ok(ty) if ty == var.ty => {}
            Ok(ty) => {
                return Err(SubstError::TypeMismatch {
                    var: var.clone(),
                    term: term.clone(),
                    found: ty,
                })
            }
            Err(_) => {
                return Err(SubstError::IllTypedReplacement {
                    var: var.clone(),
                    term: term.clone(),
                })
            }
        }
    }
    Ok(apply(f, map))
}

/// Rename `from` to `to` positionally (both read as variable terms).
pub fn rename_tuple(
    f: &Formula,
    from: &crate::syntax::VarTuple,
    to: &crate::syntax::VarTuple,
) -> Result<Formula, SubstError> {
    let map = from
        .iter()
        .zip(to.iter())
        .map(|(a, b)| (a.clone(), Term::Var(b.clone())))
        .collect();
    substitute_map(f, &map)
}

fn subst_term(t: &Term, map: &BTreeMap<Var, Term>) -> Term {
    match t {
        Term::Var(v) => match map.get(v) {
            Some(replacement) => replacement.clone(),
            None => t.clone(),
        },
        Term::Const(..) => t.clone(),
        Term::App(fun, arg) => Term::app(subst_term(fun, map), subst_term(arg, map)),
    }
}

fn apply(f: &Formula, map: &BTreeMap<Var, Term>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|t| subst_term(t, map)).collect())
        }
        Formula::Maj(t, q) => Formula::Maj(subst_term(t, map), subst_term(q, map)),
        Formula::Leq0(t, q) => Formula::Leq0(subst_term(t, map), subst_term(q, map)),
        Formula::Not(a) => apply(a, map).not(),
        Formula::And(a, b) => apply(a, map).and(apply(b, map)),
        Formula::Or(a, b) => apply(a, map).or(apply(b, map)),
        Formula::Imp(a, b) => apply(a, map).imp(apply(b, map)),
        Formula::Forall(v, a) => {
            let (v, a) = binder(v, a, map, None);
            Formula::forall(v, a)
        }
        Formula::Exists(v, a) => {
            let (v, a) = binder(v, a, map, None);
            Formula::exists(v, a)
        }
        Formula::BForall(v, bound, a) => {
            // the bound term sits outside the binder scope
            let bound = subst_term(bound, map);
            let (v, a) = binder(v, a, map, Some(&bound));
            Formula::bforall(v, bound, a)
        }
        Formula::BExists(v, bound, a) => {
            let bound = subst_term(bound, map);
            let (v, a) = binder(v, a, map, Some(&bound));
            Formula::bexists(v, bound, a)
        }
    }
}

/// Handle one binder: drop the shadowed variable from the map and rename the
/// binder when a replacement term would capture it.
fn binder(
    v: &Var,
    body: &Formula,
    map: &BTreeMap<Var, Term>,
    new_bound: Option<&Term>,
) -> (Var, Formula) {
    let mut active: BTreeMap<Var, Term> = map
        .iter()
        .filter(|(key, _)| *key != v)
        .map(|(key, term)| (key.clone(), term.clone()))
        .collect();

    // only keep entries for variables actually free in the body
    let body_free = body.free_vars();
    active.retain(|key, _| body_free.contains(key));

    if active.is_empty() {
        return (v.clone(), body.clone());
    }

    let captures = active
        .values()
        .any(|term| term.free_vars().iter().any(|fv| fv == v));
    if !captures {
        return (v.clone(), apply(body, &active));
    }

    // rename the binder away from everything in sight
    let mut pool = NamePool::seeded_from_formula(body);
    for term in active.values() {
        for fv in term.free_vars() {
            pool.insert(fv.name);
        }
    }
    if let Some(b) = new_bound {
        for fv in b.free_vars() {
            pool.insert(fv.name);
        }
    }
    let renamed = pool.fresh_var(&v.name, v.ty.clone());
    active.insert(v.clone(), Term::Var(renamed.clone()));
    (renamed, apply(body, &active))
}

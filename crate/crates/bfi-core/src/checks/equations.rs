//! The three factorization equations, checked pointwise by brute force.
//!
//! With `r_U = A_U` (outer x, inner y) and `r_B = (A_K)_B` (outer x', inner
//! y'), the checks verify, over all self-majorizing assignments:
//!
//! - eq5: `A_U(x, y)  ↔  ¬ ∀̃ỹ⊴y (A_K)_B(x, ỹ)`
//! - eq3: `A_U(x, Yx)  ↔  (A^K)_B(Y, x)`
//! - eq4: `A^U  ↔  (A^K)^B` (fully assembled, closed formulas)
//!
//! The tuples of the two routes are matched positionally, which is only
//! well-posed when their type signatures agree; a signature mismatch is
//! reported as a distinct structural failure before anything is evaluated.

use super::{settle, Check, CheckAbort, Outcome};
use crate::bounded::{bfi, bfi_core, sbfi, sbfi_core};
use crate::fresh::{cap, tilde, NamePool};
use crate::krivine::{krivine, krivine_inner};
use crate::model::eval::Assignments;
use crate::model::{Element, Env, FiniteModel};
use crate::monotone::bounded_monotone_forall;
use crate::printer::{format_formula, Style};
use crate::subst::substitute_map;
use crate::syntax::{FinType, Formula, Term, Var, VarTuple};
use std::collections::BTreeMap;

fn sig_string(sig: &(Vec<FinType>, Vec<FinType>)) -> String {
    let fmt = |tys: &[FinType]| {
        let parts: Vec<String> = tys.iter().map(|t| t.to_string()).collect();
        format!("({})", parts.join(", "))
    };
    format!("outer {} inner {}", fmt(&sig.0), fmt(&sig.1))
}

fn require_closed(f: &Formula) -> Result<(), CheckAbort> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(CheckAbort::Model(
            crate::error::ModelError::UnboundVariable(v),
        ));
    }
    Ok(())
}

fn self_maj_pools(m: &FiniteModel, tuple: &VarTuple) -> Result<Vec<Vec<Element>>, CheckAbort> {
    tuple
        .iter()
        .map(|v| m.self_majorizing(&v.ty).map_err(CheckAbort::from))
        .collect()
}

fn env_of(vars: &VarTuple, elems: &[Element]) -> Env {
    vars.iter().cloned().zip(elems.iter().cloned()).collect()
}

/// Compare two formulas over every self-majorizing assignment to `vars`.
fn pointwise_equal(
    m: &FiniteModel,
    vars: &VarTuple,
    lhs: &Formula,
    rhs: &Formula,
    label: &str,
) -> Result<Outcome, CheckAbort> {
    let pools = self_maj_pools(m, vars)?;
    for assignment in Assignments::new(pools) {
        let env = env_of(vars, &assignment);
        let left = m.eval_formula(&env, lhs)?;
        let right = m.eval_formula(&env, rhs)?;
        if left != right {
            return Ok(Outcome::Fail {
                witness: env,
                detail: Some(format!("{label}: sides evaluate to {left} vs {right}")),
            });
        }
    }
    Ok(Outcome::Pass)
}

/// The pointwise step `eq5`: `A_U(x,y) ↔ ¬ ∀̃ỹ⊴y (A_K)_B(x,ỹ)` for all
/// self-majorizing x, y.
pub struct CheckEq5;

impl Check for CheckEq5 {
    fn name(&self) -> &'static str {
        "eq5"
    }

    fn describe(&self) -> &'static str {
        "pointwise step: A_U(x,y) iff not forall-mono y~<=y (A_K)_B(x,y~)"
    }

    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome {
        settle(eq5(formula, model))
    }
}

fn eq5(f: &Formula, m: &FiniteModel) -> Result<Outcome, CheckAbort> {
    require_closed(f)?;
    let ru = sbfi_core(f)?;
    let rb = bfi_core(&krivine_inner(f)?)?;
    if ru.signature() != rb.signature() {
        return Ok(Outcome::fail_with(format!(
            "tuple signature mismatch: U has {}, K-then-B has {}",
            sig_string(&ru.signature()),
            sig_string(&rb.signature()),
        )));
    }

    let mut pool = NamePool::seeded_from_formula(f);
    pool.insert_names_of(&ru.matrix);
    pool.insert_names_of(&rb.matrix);
    for v in ru.outer.iter().chain(ru.inner.iter()) {
        pool.insert(v.name.clone());
    }
    let fresh_inner = pool.fresh_tuple_like(&ru.inner, tilde);

    // move the B-route matrix onto the U-route tuple variables
    let map: BTreeMap<Var, Term> = rb
        .outer
        .iter()
        .zip(ru.outer.iter())
        .chain(rb.inner.iter().zip(fresh_inner.iter()))
        .map(|(from, to)| (from.clone(), Term::Var(to.clone())))
        .collect();
    let relocated = substitute_map(&rb.matrix, &map)?;
    let rhs = bounded_monotone_forall(&fresh_inner, &ru.inner.terms(), relocated)?.not();

    let shared = ru.outer.concat(&ru.inner)?;
    pointwise_equal(m, &shared, &ru.matrix, &rhs, "eq5")
}

/// The pointwise factorization `eq3`: `A_U(x, Yx) ↔ (A^K)_B(Y, x)` for all
/// self-majorizing Y, x.
pub struct CheckEq3;

impl Check for CheckEq3 {
    fn name(&self) -> &'static str {
        "eq3"
    }

    fn describe(&self) -> &'static str {
        "pointwise factorization: A_U(x,Yx) iff (A^K)_B(Y,x)"
    }

    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome {
        settle(eq3(formula, model))
    }
}

/// The tuple types eq3 quantifies over: the bounding functionals
/// `Y` (curried from the U outer tuple into each U inner type) and the U
/// outer tuple itself.
pub fn eq3_tuple_types(
    f: &Formula,
) -> Result<(Vec<FinType>, Vec<FinType>), crate::error::TranslateError> {
    let ru = sbfi_core(f)?;
    let outer_types = ru.outer.types();
    let y_types = ru
        .inner
        .iter()
        .map(|v| FinType::curry(&outer_types, &v.ty))
        .collect();
    Ok((y_types, outer_types))
}

fn eq3(f: &Formula, m: &FiniteModel) -> Result<Outcome, CheckAbort> {
    require_closed(f)?;
    let ru = sbfi_core(f)?;
    let rkb = bfi_core(&krivine(f)?)?;

    let mut pool = NamePool::seeded_from_formula(f);
    pool.insert_names_of(&ru.matrix);
    pool.insert_names_of(&rkb.matrix);
    for v in ru.outer.iter().chain(ru.inner.iter()) {
        pool.insert(v.name.clone());
    }
    let outer_types = ru.outer.types();
    let y_vars = VarTuple::new(
        ru.inner
            .iter()
            .map(|v| pool.fresh_var(&cap(&v.name), FinType::curry(&outer_types, &v.ty)))
            .collect(),
    )?;

    let expected = (y_vars.types(), outer_types);
    if rkb.signature() != expected {
        return Ok(Outcome::fail_with(format!(
            "tuple signature mismatch: expected {} from U, K-then-B has {}",
            sig_string(&expected),
            sig_string(&rkb.signature()),
        )));
    }

    // lhs: A_U(x, Yx), each inner variable replaced by its applied functional
    let lhs_map: BTreeMap<Var, Term> = ru
        .inner
        .iter()
        .zip(y_vars.iter())
        .map(|(v, y)| {
            (
                v.clone(),
                Term::apply_to_vars(Term::Var(y.clone()), ru.outer.iter()),
            )
        })
        .collect();
    let lhs = substitute_map(&ru.matrix, &lhs_map)?;

    // rhs: (A^K)_B(Y, x) on the same variables
    let rhs_map: BTreeMap<Var, Term> = rkb
        .outer
        .iter()
        .zip(y_vars.iter())
        .chain(rkb.inner.iter().zip(ru.outer.iter()))
        .map(|(from, to)| (from.clone(), Term::Var(to.clone())))
        .collect();
    let rhs = substitute_map(&rkb.matrix, &rhs_map)?;

    let shared = y_vars.concat(&ru.outer)?;
    pointwise_equal(m, &shared, &lhs, &rhs, "eq3")
}

/// The assembled factorization `eq4`: `A^U ↔ (A^K)^B` under classical evaluation of the
/// assembled, monotone-desugared formulas.
pub struct CheckEq4;

impl Check for CheckEq4 {
    fn name(&self) -> &'static str {
        "eq4"
    }

    fn describe(&self) -> &'static str {
        "factorization: A^U iff (A^K)^B"
    }

    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome {
        settle(eq4(formula, model))
    }
}

fn eq4(f: &Formula, m: &FiniteModel) -> Result<Outcome, CheckAbort> {
    require_closed(f)?;
    let lhs = sbfi(f)?;
    let rhs = bfi(&krivine(f)?)?;
    let left = m.eval_formula(&Env::new(), &lhs)?;
    let right = m.eval_formula(&Env::new(), &rhs)?;
    if left == right {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail {
            witness: Env::new(),
            detail: Some(format!(
                "A^U = {left} but (A^K)^B = {right}; A^U is {}",
                format_formula(&lhs, Style::Unicode)
            )),
        })
    }
}

//! Classical term and formula evaluation, plus the falsifying-assignment
//! search.

use super::{Element, FiniteModel};
use crate::error::ModelError;
use crate::syntax::{FinType, Formula, Term, Var, VarTuple};
use crate::typing::term_type;
use std::collections::BTreeMap;

/// A variable assignment.
pub type Env = BTreeMap<Var, Element>;

impl FiniteModel {
    /// Apply a function element to an argument element.
    pub fn apply(
        &self,
        fun_ty: &FinType,
        fun: &Element,
        arg: &Element,
    ) -> Result<Element, ModelError> {
        let FinType::Arrow(d, _) = fun_ty else {
            return Err(ModelError::ElementOutsideType(fun_ty.clone()));
        };
        let Element::Table(entries) = fun else {
            return Err(ModelError::ElementOutsideType(fun_ty.clone()));
        };
        let idx = self.index_of(d, arg)?;
        Ok(entries[idx as usize].clone())
    }

    /// Standard applicative evaluation of a term.
    pub fn eval_term(&self, env: &Env, t: &Term) -> Result<Element, ModelError> {
        match t {
            Term::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| ModelError::UnboundVariable(v.clone())),
            Term::Const(name, ty) => {
                let c = self
                    .constants()
                    .get(name)
                    .ok_or_else(|| ModelError::UnknownConstant(name.clone()))?;
                if c.ty != *ty {
                    return Err(ModelError::ElementOutsideType(ty.clone()));
                }
                Ok(c.value.clone())
            }
            Term::App(fun, arg) => {
                let fun_ty = term_type(fun).map_err(ModelError::IllTypedTerm)?;
                let fv = self.eval_term(env, fun)?;
                let av = self.eval_term(env, arg)?;
                self.apply(&fun_ty, &fv, &av)
            }
        }
    }

    /// Classical Tarski evaluation. Unbounded quantifiers range over the full
    /// domain; bounded quantifiers range over the elements majorized by the
    /// evaluated bound term.
    pub fn eval_formula(&self, env: &Env, f: &Formula) -> Result<bool, ModelError> {
        let mut scope = env.clone();
        self.eval_rec(&mut scope, f)
    }

    fn eval_rec(&self, env: &mut Env, f: &Formula) -> Result<bool, ModelError> {
        match f {
            Formula::Bot => Ok(false),
            Formula::Atom(p, args) => {
                let mut evaluated = Vec::with_capacity(args.len());
                for t in args {
                    let ty = term_type(t).map_err(ModelError::IllTypedTerm)?;
                    let e = self.eval_term(env, t)?;
                    evaluated.push((ty, e));
                }
                self.predicate_value(p, &evaluated)
            }
            Formula::Maj(t, q) => {
                let ty = term_type(t).map_err(ModelError::IllTypedTerm)?;
                let a = self.eval_term(env, t)?;
                let b = self.eval_term(env, q)?;
                self.majorizes(&ty, &a, &b)
            }
            Formula::Leq0(t, q) => {
                let a = self.eval_term(env, t)?;
                let b = self.eval_term(env, q)?;
                match (a.as_num(), b.as_num()) {
                    (Some(x), Some(y)) => Ok(x <= y),
                    _ => Err(ModelError::ElementOutsideType(FinType::Base)),
                }
            }
            Formula::Not(a) => Ok(!self.eval_rec(env, a)?),
            Formula::And(a, b) => Ok(self.eval_rec(env, a)? && self.eval_rec(env, b)?),
            Formula::Or(a, b) => Ok(self.eval_rec(env, a)? || self.eval_rec(env, b)?),
            Formula::Imp(a, b) => Ok(!self.eval_rec(env, a)? || self.eval_rec(env, b)?),
            Formula::Forall(v, a) => self.quantify(env, v, None, a, true),
            Formula::Exists(v, a) => self.quantify(env, v, None, a, false),
            Formula::BForall(v, bound, a) => {
                let b = self.eval_term(env, bound)?;
                self.quantify(env, v, Some(b), a, true)
            }
            Formula::BExists(v, bound, a) => {
                let b = self.eval_term(env, bound)?;
                self.quantify(env, v, Some(b), a, false)
            }
        }
    }

    fn quantify(
        &self,
        env: &mut Env,
        v: &Var,
        bound: Option<Element>,
        body: &Formula,
        universal: bool,
    ) -> Result<bool, ModelError> {
        let domain = self.domain(&v.ty)?;
        let saved = env.get(v).cloned();
        let mut result = universal;
        for e in domain {
            if let Some(b) = &bound {
                if !self.majorizes(&v.ty, &e, b)? {
                    continue;
                }
            }
            env.insert(v.clone(), e);
            let value = self.eval_rec(env, body)?;
            if value != universal {
                result = value;
                break;
            }
        }
        match saved {
            Some(old) => env.insert(v.clone(), old),
            None => env.remove(v),
        };
        Ok(result)
    }

    /// The first environment (enumeration order, first variable most
    /// significant) over `free` making `f` false, or `None`.
    pub fn find_countermodel(
        &self,
        f: &Formula,
        free: &VarTuple,
    ) -> Result<Option<Env>, ModelError> {
        for v in f.free_vars() {
            if !free.iter().any(|fv| *fv == v) {
                return Err(ModelError::UnboundVariable(v));
            }
        }
        let pools = free
            .iter()
            .map(|v| self.domain(&v.ty))
            .collect::<Result<Vec<_>, _>>()?;
        for assignment in Assignments::new(pools) {
            let env: Env = free
                .iter()
                .cloned()
                .zip(assignment.iter().cloned())
                .collect();
            if !self.eval_formula(&env, f)? {
                return Ok(Some(env));
            }
        }
        Ok(None)
    }
}

/// Odometer over a list of pools: yields every combination, first position
/// most significant, in enumeration order. Zero pools yield one empty
/// assignment.
pub struct Assignments {
    pools: Vec<Vec<Element>>,
    state: Vec<usize>,
    done: bool,
}

impl Assignments {
    pub fn new(pools: Vec<Vec<Element>>) -> Assignments {
        let done = pools.iter().any(|p| p.is_empty());
        let state = vec![0; pools.len()];
        Assignments { pools, state, done }
    }
}

impl Iterator for Assignments {
    type Item = Vec<Element>;

    fn next(&mut self) -> Option<Vec<Element>> {
        if self.done {
            return None;
        }
        let current: Vec<Element> = self
            .state
            .iter()
            .zip(&self.pools)
            .map(|(&i, pool)| pool[i].clone())
            .collect();
        // advance, least significant position last
        let mut pos = self.state.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.state[pos] += 1;
            if self.state[pos] < self.pools[pos].len() {
                break;
            }
            self.state[pos] = 0;
        }
        Some(current)
    }
}

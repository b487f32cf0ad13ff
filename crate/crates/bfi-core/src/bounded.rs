//! The bounded functional interpretations.
//!
//! `B` interprets the intuitionistic language as `∃̃x ∀̃y A_B(x, y)`; the
//! Shoenfield-like interpretation `U` interprets the classical language as
//! `∀̃x ∃̃y A_U(x, y)`. Both are computed as a [`TranslationResult`]: the
//! two witness tuples plus the bounded matrix, with the monotone
//! quantifiers attached only on demand.
//!
//! Tuple application is curried componentwise: a functional tuple `Y`
//! applied to argument tuples `x`, `y'` stands for the tuple with components
//! `Y_i x_1 ... x_m y'_1 ... y'_k`.

use crate::error::TranslateError;
use crate::fresh::{cap, tilde, NamePool};
use crate::monotone::{
    bounded_monotone_exists, bounded_monotone_forall, monotone_exists, monotone_forall,
};
use crate::printer::{format_formula, Style};
use crate::subst::{rename_tuple, substitute_map};
use crate::syntax::{FinType, Formula, Term, Var, VarTuple};
use crate::typing::well_typed;
use std::collections::BTreeMap;

/// Which interpretation a result belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpKind {
    /// `∃̃outer ∀̃inner matrix`
    B,
    /// `∀̃outer ∃̃inner matrix`
    U,
}

/// An unassembled interpretation: witness tuples plus bounded matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationResult {
    pub kind: InterpKind,
    pub outer: VarTuple,
    pub inner: VarTuple,
    pub matrix: Formula,
}

impl TranslationResult {
    fn atomic(kind: InterpKind, matrix: Formula) -> TranslationResult {
        TranslationResult {
            kind,
            outer: VarTuple::empty(),
            inner: VarTuple::empty(),
            matrix,
        }
    }

    /// Attach the monotone quantifier prefix.
    pub fn assemble(&self) -> Formula {
        match self.kind {
            InterpKind::B => monotone_exists(
                &self.outer,
                monotone_forall(&self.inner, self.matrix.clone()),
            ),
            InterpKind::U => monotone_forall(
                &self.outer,
                monotone_exists(&self.inner, self.matrix.clone()),
            ),
        }
    }

    /// The ordered type lists of the outer and inner tuples.
    pub fn signature(&self) -> (Vec<FinType>, Vec<FinType>) {
        (self.outer.types(), self.inner.types())
    }
}

/// The ordered type lists of a result's tuples.
pub fn tuple_signature(r: &TranslationResult) -> (Vec<FinType>, Vec<FinType>) {
    r.signature()
}

fn check_well_typed(f: &Formula) -> Result<(), TranslateError> {
    let report = well_typed(f);
    match report.violations.into_iter().next() {
        None => Ok(()),
        Some(v) => Err(TranslateError::IllTyped(v)),
    }
}

/// `A_B`: the bounded functional interpretation, unassembled.
pub fn bfi_core(f: &Formula) -> Result<TranslationResult, TranslateError> {
    check_well_typed(f)?;
    let mut pool = NamePool::seeded_from_formula(f);
    let mut sink = None;
    b_rec(f, &mut pool, 0, &mut sink)
}

/// `A^B := ∃̃x ∀̃y A_B(x, y)`.
pub fn bfi(f: &Formula) -> Result<Formula, TranslateError> {
    Ok(bfi_core(f)?.assemble())
}

/// `A_B` with a clause-by-clause trace.
pub fn bfi_explain(f: &Formula) -> Result<(TranslationResult, Vec<String>), TranslateError> {
    check_well_typed(f)?;
    let mut pool = NamePool::seeded_from_formula(f);
    let mut sink = Some(Vec::new());
    let r = b_rec(f, &mut pool, 0, &mut sink)?;
    let mut lines = sink.unwrap_or_default();
    lines.push(format!(
        "B result: A^B = {}",
        format_formula(&r.assemble(), Style::Unicode)
    ));
    Ok((r, lines))
}

/// `A_U`: the Shoenfield-like bounded functional interpretation, unassembled.
pub fn sbfi_core(f: &Formula) -> Result<TranslationResult, TranslateError> {
    check_well_typed(f)?;
    let mut pool = NamePool::seeded_from_formula(f);
    let mut sink = None;
    u_rec(f, &mut pool, 0, &mut sink)
}

/// `A^U := ∀̃x ∃̃y A_U(x, y)`.
pub fn sbfi(f: &Formula) -> Result<Formula, TranslateError> {
    Ok(sbfi_core(f)?.assemble())
}

/// `A_U` with a clause-by-clause trace.
pub fn sbfi_explain(f: &Formula) -> Result<(TranslationResult, Vec<String>), TranslateError> {
    check_well_typed(f)?;
    let mut pool = NamePool::seeded_from_formula(f);
    let mut sink = Some(Vec::new());
    let r = u_rec(f, &mut pool, 0, &mut sink)?;
    let mut lines = sink.unwrap_or_default();
    lines.push(format!(
        "U result: A^U = {}",
        format_formula(&r.assemble(), Style::Unicode)
    ));
    Ok((r, lines))
}

fn log(sink: &mut Option<Vec<String>>, depth: usize, label: &str, r: &TranslationResult) {
    if let Some(lines) = sink.as_mut() {
        lines.push(format!(
            "{:indent$}{label}: outer = {}, inner = {}, matrix = {}",
            "",
            r.outer,
            r.inner,
            format_formula(&r.matrix, Style::Unicode),
            indent = 2 * depth
        ));
    }
}

fn child_sink(sink: &Option<Vec<String>>) -> Option<Vec<String>> {
    sink.as_ref().map(|_| Vec::new())
}

fn merge(sink: &mut Option<Vec<String>>, child: Option<Vec<String>>) {
    if let (Some(lines), Some(extra)) = (sink.as_mut(), child) {
        lines.extend(extra);
    }
}

/// Fresh functionals bounding `over`, curried over the types of `args`:
/// one fresh capitalized variable of type `args -> v.ty` per `v` in `over`.
fn bounding_tuple(pool: &mut NamePool, over: &VarTuple, args: &[FinType]) -> VarTuple {
    let items = over
        .iter()
        .map(|v| pool.fresh_var(&cap(&v.name), FinType::curry(args, &v.ty)))
        .collect();
    VarTuple::new(items).expect("pool names are unique")
}

/// The tuple application `heads args`: one term `head_i args_1 ... args_n`
/// per component.
fn applied_terms<'a>(
    heads: &VarTuple,
    args: impl IntoIterator<Item = &'a Var> + Clone,
) -> Vec<Term> {
    heads
        .iter()
        .map(|h| Term::apply_to_vars(Term::Var(h.clone()), args.clone()))
        .collect()
}

fn b_rec(
    f: &Formula,
    pool: &mut NamePool,
    depth: usize,
    sink: &mut Option<Vec<String>>,
) -> Result<TranslationResult, TranslateError> {
    match f {
        // clause 1: atomic formulas carry empty tuples (⊥ counts as atomic)
        Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => {
            let r = TranslationResult::atomic(InterpKind::B, f.clone());
            log(sink, depth, "B clause 1 (atomic)", &r);
            Ok(r)
        }
        // clause 2: (A ∧ B)_B(x,x',y,y') := A_B(x,y) ∧ B_B(x',y')
        Formula::And(a, b) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let rb = b_rec(b, pool, depth + 1, &mut cb)?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: ra.outer.concat(&rb.outer)?,
                inner: ra.inner.concat(&rb.inner)?,
                matrix: ra.matrix.and(rb.matrix),
            };
            log(sink, depth, "B clause 2 (A ∧ B)", &r);
            merge(sink, ca);
            merge(sink, cb);
            Ok(r)
        }
        // clause 3: (A ∨ B)_B(x,x',y,y') := ∀̃ỹ⊴y A_B(x,ỹ) ∨ ∀̃ỹ'⊴y' B_B(x',ỹ')
        Formula::Or(a, b) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let rb = b_rec(b, pool, depth + 1, &mut cb)?;
            let ta = pool.fresh_tuple_like(&ra.inner, tilde);
            let tb = pool.fresh_tuple_like(&rb.inner, tilde);
            let left = bounded_monotone_forall(
                &ta,
                &ra.inner.terms(),
                rename_tuple(&ra.matrix, &ra.inner, &ta)?,
            )?;
            let right = bounded_monotone_forall(
                &tb,
                &rb.inner.terms(),
                rename_tuple(&rb.matrix, &rb.inner, &tb)?,
            )?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: ra.outer.concat(&rb.outer)?,
                inner: ra.inner.concat(&rb.inner)?,
                matrix: left.or(right),
            };
            log(sink, depth, "B clause 3 (A ∨ B)", &r);
            merge(sink, ca);
            merge(sink, cb);
            Ok(r)
        }
        // clause 4: (A → B)_B(X',Y,x,y') := ∀̃y⊴Yxy' A_B(x,y) → B_B(X'x,y')
        Formula::Imp(a, b) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let rb = b_rec(b, pool, depth + 1, &mut cb)?;
            let xp = bounding_tuple(pool, &rb.outer, &ra.outer.types());
            let arg_types: Vec<FinType> = ra
                .outer
                .types()
                .into_iter()
                .chain(rb.inner.types())
                .collect();
            let yy = bounding_tuple(pool, &ra.inner, &arg_types);
            let bound_args: Vec<&Var> = ra.outer.iter().chain(rb.inner.iter()).collect();
            let bounds = applied_terms(&yy, bound_args);
            let premise = bounded_monotone_forall(&ra.inner, &bounds, ra.matrix)?;
            let conclusion = {
                let map: BTreeMap<Var, Term> = rb
                    .outer
                    .iter()
                    .zip(xp.iter())
                    .map(|(v, x)| {
                        (
                            v.clone(),
                            Term::apply_to_vars(Term::Var(x.clone()), ra.outer.iter()),
                        )
                    })
                    .collect();
                substitute_map(&rb.matrix, &map)?
            };
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: xp.concat(&yy)?,
                inner: ra.outer.concat(&rb.inner)?,
                matrix: premise.imp(conclusion),
            };
            log(sink, depth, "B clause 4 (A → B)", &r);
            merge(sink, ca);
            merge(sink, cb);
            Ok(r)
        }
        // clause 5: (∀z⊴t A)_B(x,y) := ∀z⊴t A_B(x,y)
        Formula::BForall(z, t, a) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: ra.outer,
                inner: ra.inner,
                matrix: Formula::bforall(z.clone(), t.clone(), ra.matrix),
            };
            log(sink, depth, "B clause 5 (∀z⊴t A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 6: (∃z⊴t A)_B(x,y) := ∃z⊴t ∀̃ỹ⊴y A_B(x,ỹ)
        Formula::BExists(z, t, a) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let ta = pool.fresh_tuple_like(&ra.inner, tilde);
            let body = bounded_monotone_forall(
                &ta,
                &ra.inner.terms(),
                rename_tuple(&ra.matrix, &ra.inner, &ta)?,
            )?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: ra.outer,
                inner: ra.inner,
                matrix: Formula::bexists(z.clone(), t.clone(), body),
            };
            log(sink, depth, "B clause 6 (∃z⊴t A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 7: (∀z A)_B(X,w,y) := ∀z⊴w A_B(Xw,y)
        Formula::Forall(z, a) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let xx = bounding_tuple(pool, &ra.outer, std::slice::from_ref(&z.ty));
            let w = pool.fresh_var("w", z.ty.clone());
            let matrix = {
                let map: BTreeMap<Var, Term> = ra
                    .outer
                    .iter()
                    .zip(xx.iter())
                    .map(|(v, x)| {
                        (
                            v.clone(),
                            Term::app(Term::Var(x.clone()), Term::Var(w.clone())),
                        )
                    })
                    .collect();
                substitute_map(&ra.matrix, &map)?
            };
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: xx,
                inner: VarTuple::new(vec![w.clone()])?.concat(&ra.inner)?,
                matrix: Formula::bforall(z.clone(), Term::Var(w), matrix),
            };
            log(sink, depth, "B clause 7 (∀z A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 8: (∃z A)_B(w,x,y) := ∃z⊴w ∀̃ỹ⊴y A_B(x,ỹ)
        Formula::Exists(z, a) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let w = pool.fresh_var("w", z.ty.clone());
            let ta = pool.fresh_tuple_like(&ra.inner, tilde);
            let body = bounded_monotone_forall(
                &ta,
                &ra.inner.terms(),
                rename_tuple(&ra.matrix, &ra.inner, &ta)?,
            )?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: VarTuple::new(vec![w.clone()])?.concat(&ra.outer)?,
                inner: ra.inner,
                matrix: Formula::bexists(z.clone(), Term::Var(w), body),
            };
            log(sink, depth, "B clause 8 (∃z A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // negation composite: (¬A)_B(Y,x) := ¬∀̃y⊴Yx A_B(x,y)
        Formula::Not(a) => {
            let mut ca = child_sink(sink);
            let ra = b_rec(a, pool, depth + 1, &mut ca)?;
            let yy = bounding_tuple(pool, &ra.inner, &ra.outer.types());
            let bounds = applied_terms(&yy, ra.outer.iter());
            let body = bounded_monotone_forall(&ra.inner, &bounds, ra.matrix)?;
            let r = TranslationResult {
                kind: InterpKind::B,
                outer: yy,
                inner: ra.outer,
                matrix: body.not(),
            };
            log(sink, depth, "B negation remark (¬A)", &r);
            merge(sink, ca);
            Ok(r)
        }
    }
}

fn u_rec(
    f: &Formula,
    pool: &mut NamePool,
    depth: usize,
    sink: &mut Option<Vec<String>>,
) -> Result<TranslationResult, TranslateError> {
    match f {
        // clause 1: atomic formulas carry empty tuples
        Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => {
            let r = TranslationResult::atomic(InterpKind::U, f.clone());
            log(sink, depth, "U clause 1 (atomic)", &r);
            Ok(r)
        }
        // clause 2: (¬A)_U(Y,x) := ∃̃x̃⊴x ¬A_U(x̃, Yx̃)
        Formula::Not(a) => {
            let mut ca = child_sink(sink);
            let ra = u_rec(a, pool, depth + 1, &mut ca)?;
            let yy = bounding_tuple(pool, &ra.inner, &ra.outer.types());
            let xt = pool.fresh_tuple_like(&ra.outer, tilde);
            let map: BTreeMap<Var, Term> = ra
                .outer
                .iter()
                .zip(xt.iter())
                .map(|(v, x)| (v.clone(), Term::Var(x.clone())))
                .chain(
                    ra.inner
                        .iter()
                        .zip(applied_terms(&yy, xt.iter()))
                        .map(|(v, term)| (v.clone(), term)),
                )
                .collect();
            let negated = substitute_map(&ra.matrix, &map)?.not();
            let body = bounded_monotone_exists(&xt, &ra.outer.terms(), negated)?;
            let r = TranslationResult {
                kind: InterpKind::U,
                outer: yy,
                inner: ra.outer,
                matrix: body,
            };
            log(sink, depth, "U clause 2 (¬A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 3: (A ∨ B)_U(x,x',y,y') := A_U(x,y) ∨ B_U(x',y')
        Formula::Or(a, b) => {
            let mut ca = child_sink(sink);
            let ra = u_rec(a, pool, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let rb = u_rec(b, pool, depth + 1, &mut cb)?;
            let r = TranslationResult {
                kind: InterpKind::U,
                outer: ra.outer.concat(&rb.outer)?,
                inner: ra.inner.concat(&rb.inner)?,
                matrix: ra.matrix.or(rb.matrix),
            };
            log(sink, depth, "U clause 3 (A ∨ B)", &r);
            merge(sink, ca);
            merge(sink, cb);
            Ok(r)
        }
        // clause 4: (∀z⊴t A)_U(x,y) := ∀z⊴t A_U(x,y)
        Formula::BForall(z, t, a) => {
            let mut ca = child_sink(sink);
            let ra = u_rec(a, pool, depth + 1, &mut ca)?;
            let r = TranslationResult {
                kind: InterpKind::U,
                outer: ra.outer,
                inner: ra.inner,
                matrix: Formula::bforall(z.clone(), t.clone(), ra.matrix),
            };
            log(sink, depth, "U clause 4 (∀z⊴t A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 5: (∀z A)_U(w,x,y) := ∀z⊴w A_U(x,y)
        Formula::Forall(z, a) => {
            let mut ca = child_sink(sink);
            let ra = u_rec(a, pool, depth + 1, &mut ca)?;
            let w = pool.fresh_var("w", z.ty.clone());
            let r = TranslationResult {
                kind: InterpKind::U,
                outer: VarTuple::new(vec![w.clone()])?.concat(&ra.outer)?,
                inner: ra.inner,
                matrix: Formula::bforall(z.clone(), Term::Var(w), ra.matrix),
            };
            log(sink, depth, "U clause 5 (∀z A)", &r);
            merge(sink, ca);
            Ok(r)
        }
        // clause 6: (A ∧ B)_U(x,x',y,y') := A_U(x,y) ∧ B_U(x',y')
        Formula::And(a, b) => {
            let mut ca = child_sink(sink);
            let ra = u_rec(a, pool, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let rb = u_rec(b, pool, depth + 1, &mut cb)?;
            let r = TranslationResult {
                kind: InterpKind::U,
                outer: ra.outer.concat(&rb.outer)?,
                inner: ra.inner.concat(&rb.inner)?,
                matrix: ra.matrix.and(rb.matrix),
            };
            log(sink, depth, "U clause 6 (A ∧ B)", &r);
            merge(sink, ca);
            merge(sink, cb);
            Ok(r)
        }
        Formula::Bot => Err(TranslateError::NotClassical("bot")),
        Formula::Imp(..) => Err(TranslateError::NotClassical("imp")),
        Formula::Exists(..) => Err(TranslateError::NotClassical("ex")),
        Formula::BExists(..) => Err(TranslateError::NotClassical("exb")),
    }
}

//! Krivine's negative translation, extended to arithmetic with
//! majorizability: a total function from the classical language
//! (`¬, ∨, ∧, ∀⊴, ∀` over atoms) into the intuitionistic one.
//!
//! The inner translation `A_K` negates atoms, swaps `∨`/`∧`, turns both
//! universal quantifiers into the matching existentials and preserves `¬`;
//! the full translation is `A^K := ¬A_K`.

use crate::error::TranslateError;
use crate::printer::{format_formula, Style};
use crate::syntax::Formula;

/// The inner translation `A_K`.
pub fn krivine_inner(f: &Formula) -> Result<Formula, TranslateError> {
    let mut sink = None;
    inner_rec(f, 0, &mut sink)
}

/// The full translation `A^K := ¬A_K`.
pub fn krivine(f: &Formula) -> Result<Formula, TranslateError> {
    Ok(krivine_inner(f)?.not())
}

/// `A^K` together with a clause-by-clause trace of the inner translation.
pub fn krivine_explain(f: &Formula) -> Result<(Formula, Vec<String>), TranslateError> {
    let mut sink = Some(Vec::new());
    let inner = inner_rec(f, 0, &mut sink)?;
    let result = inner.not();
    let mut lines = sink.unwrap_or_default();
    lines.push(format!(
        "K result: A^K := ¬A_K = {}",
        format_formula(&result, Style::Unicode)
    ));
    Ok((result, lines))
}

fn log(sink: &mut Option<Vec<String>>, depth: usize, line: impl FnOnce() -> String) {
    if let Some(lines) = sink.as_mut() {
        lines.push(format!("{:indent$}{}", "", line(), indent = 2 * depth));
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

fn inner_rec(
    f: &Formula,
    depth: usize,
    sink: &mut Option<Vec<String>>,
) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => {
            let out = f.clone().not();
            log(sink, depth, || {
                format!(
                    "K clause 1 (atomic): A_K := ¬A = {}",
                    format_formula(&out, Style::Unicode)
                )
            });
            Ok(out)
        }
        Formula::Not(a) => {
            let mut cs = child_sink(sink);
            let inner = inner_rec(a, depth + 1, &mut cs)?;
            let out = inner.not();
            log(sink, depth, || {
                format!(
                    "K clause 2 (¬A): (¬A)_K := ¬A_K = {}",
                    format_formula(&out, Style::Unicode)
                )
            });
            merge(sink, cs);
            Ok(out)
        }
        Formula::Or(a, b) => {
            let mut ca = child_sink(sink);
            let left = inner_rec(a, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let right = inner_rec(b, depth + 1, &mut cb)?;
            let out = left.and(right);
            log(sink, depth, || {
                format!(
                    "K clause 3 (A ∨ B): (A ∨ B)_K := A_K ∧ B_K = {}",
                    format_formula(&out, Style::Unicode)
                )
            });
            merge(sink, ca);
            merge(sink, cb);
            Ok(out)
        }
        Formula::BForall(v, bound, a) => {
            let mut cs = child_sink(sink);
            let inner = inner_rec(a, depth + 1, &mut cs)?;
            let out = Formula::bexists(v.clone(), bound.clone(), inner);
            log(sink, depth, || {
                format!(
                    "K clause 4 (∀{}⊴t A): (∀x⊴t A)_K := ∃x⊴t A_K = {}",
                    v.name,
                    format_formula(&out, Style::Unicode)
                )
            });
            merge(sink, cs);
            Ok(out)
        }
        Formula::Forall(v, a) => {
            let mut cs = child_sink(sink);
            let inner = inner_rec(a, depth + 1, &mut cs)?;
            let out = Formula::exists(v.clone(), inner);
            log(sink, depth, || {
                format!(
                    "K clause 5 (∀{} A): (∀x A)_K := ∃x A_K = {}",
                    v.name,
                    format_formula(&out, Style::Unicode)
                )
            });
            merge(sink, cs);
            Ok(out)
        }
        Formula::And(a, b) => {
            let mut ca = child_sink(sink);
            let left = inner_rec(a, depth + 1, &mut ca)?;
            let mut cb = child_sink(sink);
            let right = inner_rec(b, depth + 1, &mut cb)?;
            let out = left.or(right);
            log(sink, depth, || {
                format!(
                    "K clause 6 (A ∧ B): (A ∧ B)_K := A_K ∨ B_K = {}",
                    format_formula(&out, Style::Unicode)
                )
            });
            merge(sink, ca);
            merge(sink, cb);
            Ok(out)
        }
        Formula::Bot => Err(TranslateError::NotClassical("bot")),
        Formula::Imp(..) => Err(TranslateError::NotClassical("imp")),
        Formula::Exists(..) => Err(TranslateError::NotClassical("ex")),
        Formula::BExists(..) => Err(TranslateError::NotClassical("exb")),
    }
}

//! The remaining checks: monotonicity of `A_U` in its second tuple,
//! boundedness of the matrices, tuple type agreement between the one-step
//! and two-step routes, and the semantic characterization `A ↔ A^K`.

use super::{settle, Check, CheckAbort, Outcome};
use crate::bounded::{bfi_core, sbfi_core, tuple_signature};
use crate::fresh::{tilde, NamePool};
use crate::krivine::{krivine, krivine_inner};
use crate::model::eval::Assignments;
use crate::model::{Element, Env, FiniteModel};
use crate::subst::rename_tuple;
use crate::syntax::{FinType, Formula, Language, VarTuple};
use crate::typing::is_bounded;

/// Monotonicity of `A_U` on the second tuple: for all x, y and all ỹ ⊴ y
/// (componentwise), `A_U(x, ỹ) → A_U(x, y)`. The quantifiers here are
/// unrestricted, so the check ranges full domains, not only self-majorizing
/// elements.
pub struct CheckMono;

impl Check for CheckMono {
    fn name(&self) -> &'static str {
        "mono"
    }

    fn describe(&self) -> &'static str {
        "A_U is monotone on its second tuple"
    }

    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome {
        settle(mono(formula, model))
    }
}

fn mono(f: &Formula, m: &FiniteModel) -> Result<Outcome, CheckAbort> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(CheckAbort::Model(
            crate::error::ModelError::UnboundVariable(v),
        ));
    }
    let ru = sbfi_core(f)?;
    let mut pool = NamePool::seeded_from_formula(f);
    pool.insert_names_of(&ru.matrix);
    for v in ru.outer.iter().chain(ru.inner.iter()) {
        pool.insert(v.name.clone());
    }
    let shrunk = pool.fresh_tuple_like(&ru.inner, tilde);
    let lowered = rename_tuple(&ru.matrix, &ru.inner, &shrunk)?;
    let implication = lowered.imp(ru.matrix.clone());

    let outer_pools: Vec<Vec<Element>> = ru
        .outer
        .iter()
        .map(|v| m.domain(&v.ty))
        .collect::<Result<_, _>>()?;
    let inner_domains: Vec<Vec<Element>> = ru
        .inner
        .iter()
        .map(|v| m.domain(&v.ty))
        .collect::<Result<_, _>>()?;

    for xs in Assignments::new(outer_pools.clone()) {
        for ys in Assignments::new(inner_domains.clone()) {
            // pools for ỹ: everything majorized by the matching y component
            let mut shrunk_pools = Vec::with_capacity(ys.len());
            for ((v, pool_elems), y) in ru.inner.iter().zip(&inner_domains).zip(&ys) {
                let mut filtered = Vec::new();
                for e in pool_elems {
                    if m.majorizes(&v.ty, e, y)? {
                        filtered.push(e.clone());
                    }
                }
                shrunk_pools.push(filtered);
            }
            for yts in Assignments::new(shrunk_pools) {
                let mut env: Env = ru.outer.iter().cloned().zip(xs.iter().cloned()).collect();
                env.extend(ru.inner.iter().cloned().zip(ys.iter().cloned()));
                env.extend(shrunk.iter().cloned().zip(yts.iter().cloned()));
                if !m.eval_formula(&env, &implication)? {
                    return Ok(Outcome::Fail {
                        witness: env,
                        detail: Some("A_U(x, y~) holds but A_U(x, y) does not".to_string()),
                    });
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Both matrices are bounded formulas. Purely syntactic.
pub struct CheckBounded;

impl Check for CheckBounded {
    fn name(&self) -> &'static str {
        "bounded"
    }

    fn describe(&self) -> &'static str {
        "translation matrices are bounded formulas"
    }

    fn run(&self, formula: &Formula, _model: &FiniteModel) -> Outcome {
        settle(bounded(formula))
    }
}

fn bounded(f: &Formula) -> Result<Outcome, CheckAbort> {
    let rb = bfi_core(f)?;
    if !is_bounded(&rb.matrix) {
        return Ok(Outcome::fail_with(
            "B matrix contains an unbounded quantifier",
        ));
    }
    if f.conforms_to(Language::Classical) {
        let ru = sbfi_core(f)?;
        if !is_bounded(&ru.matrix) {
            return Ok(Outcome::fail_with(
                "U matrix contains an unbounded quantifier",
            ));
        }
    }
    Ok(Outcome::Pass)
}

/// Tuple signatures of the one-step route `A_U` and the two-step route
/// `(A_K)_B` coincide componentwise. Purely syntactic.
pub struct CheckTypes;

impl Check for CheckTypes {
    fn name(&self) -> &'static str {
        "types"
    }

    fn describe(&self) -> &'static str {
        "witness tuple types of U and K-then-B agree"
    }

    fn run(&self, formula: &Formula, _model: &FiniteModel) -> Outcome {
        settle(types_agree(formula))
    }
}

fn types_agree(f: &Formula) -> Result<Outcome, CheckAbort> {
    let ru = sbfi_core(f)?;
    let rb = bfi_core(&krivine_inner(f)?)?;
    let (u_sig, b_sig) = (tuple_signature(&ru), tuple_signature(&rb));
    if u_sig == b_sig {
        Ok(Outcome::Pass)
    } else {
        let fmt = |sig: &(Vec<FinType>, Vec<FinType>)| {
            let list = |tys: &[FinType]| {
                tys.iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            format!("outer ({}) inner ({})", list(&sig.0), list(&sig.1))
        };
        Ok(Outcome::fail_with(format!(
            "signatures differ: U {} vs K-then-B {}",
            fmt(&u_sig),
            fmt(&b_sig)
        )))
    }
}

/// The semantic characterization of K: `A` and `A^K` evaluate alike in every
/// environment for the free variables.
pub struct CheckChar;

impl Check for CheckChar {
    fn name(&self) -> &'static str {
        "char"
    }

    fn describe(&self) -> &'static str {
        "A and A^K evaluate alike (characterization of K)"
    }

    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome {
        settle(characterization(formula, model))
    }
}

fn characterization(f: &Formula, m: &FiniteModel) -> Result<Outcome, CheckAbort> {
    let translated = krivine(f)?;
    let free: Vec<_> = f.free_vars().into_iter().collect();
    let tuple = VarTuple::new(free).expect("free-variable sets are duplicate-free");
    let pools: Vec<Vec<Element>> = tuple
        .iter()
        .map(|v| m.domain(&v.ty))
        .collect::<Result<_, _>>()?;
    for assignment in Assignments::new(pools) {
        let env: Env = tuple
            .iter()
            .cloned()
            .zip(assignment.iter().cloned())
            .collect();
        let original = m.eval_formula(&env, f)?;
        let image = m.eval_formula(&env, &translated)?;
        if original != image {
            return Ok(Outcome::Fail {
                witness: env,
                detail: Some(format!("A = {original} but A^K = {image}")),
            });
        }
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DEFAULT_SIZE_CAP;
    use crate::syntax::{Term, Var};

    fn base() -> FinType {
        FinType::Base
    }

    fn model() -> FiniteModel {
        FiniteModel::new(1, DEFAULT_SIZE_CAP)
            .with_predicate("P", vec![base()], vec![true, false])
            .unwrap()
            .with_predicate("Q", vec![], vec![false])
            .unwrap()
    }

    fn forall_p() -> Formula {
        let z = Var::new("z", base());
        Formula::forall(z.clone(), Formula::atom("P", vec![Term::Var(z)]))
    }

    #[test]
    fn mono_vacuous_cases_pass() {
        let m = model();
        assert!(CheckMono.run(&Formula::atom("Q", vec![]), &m).is_pass());
        assert!(CheckMono.run(&forall_p(), &m).is_pass());
    }

    #[test]
    fn mono_negated_forall_is_upward_closed() {
        let m = model();
        assert!(CheckMono.run(&forall_p().not(), &m).is_pass());
    }

    #[test]
    fn boundedness_of_classical_and_intuitionistic_inputs() {
        let m = model();
        assert!(CheckBounded
            .run(&Formula::atom("P", vec![Term::constant("0", base())]), &m)
            .is_pass());
        assert!(CheckBounded.run(&forall_p().not(), &m).is_pass());
        // intuitionistic input: only the B side applies
        let z = Var::new("z", base());
        let u = Var::new("u", base());
        let nested = Formula::forall(
            z.clone(),
            Formula::exists(
                u.clone(),
                Formula::atom("R", vec![Term::Var(z.clone()), Term::Var(u)]),
            ),
        );
        assert!(CheckBounded.run(&nested, &m).is_pass());
    }

    #[test]
    fn type_agreement_spec_examples() {
        let m = model();
        assert!(CheckTypes.run(&Formula::atom("Q", vec![]), &m).is_pass());
        assert!(CheckTypes.run(&forall_p(), &m).is_pass());
        assert!(CheckTypes.run(&forall_p().not(), &m).is_pass());
    }

    #[test]
    fn characterization_of_k() {
        let m = model();
        let z = Var::new("z", base());
        let lem = Formula::forall(
            z.clone(),
            Formula::atom("P", vec![Term::Var(z.clone())]).or(Formula::atom(
                "P",
                vec![Term::Var(z)],
            )
            .not()),
        );
        assert!(CheckChar.run(&lem, &m).is_pass());
        assert!(CheckChar.run(&forall_p(), &m).is_pass());
        // open formulas are ranged over their free variables
        let open = Formula::atom("P", vec![Term::Var(Var::new("x", base()))]);
        assert!(CheckChar.run(&open, &m).is_pass());
    }
}

//! Verify that the structure satisfies the majorizability framework: at base
//! type `⊴` coincides with `≤₀`, at arrow types the majorizability axiom
//! holds, and the converse direction (the semantic content of the
//! majorizability rule) is admissible. All three are evaluated as formulas,
//! exercising the same evaluation pipeline the corpus checks use.

use super::{Env, FiniteModel};
use crate::syntax::{FinType, Formula, Term, Var};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail,
    Skip(String),
}

impl fmt::Display for AxiomOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomOutcome::Pass => write!(f, "pass"),
            AxiomOutcome::Fail => write!(f, "fail"),
            AxiomOutcome::Skip(reason) => write!(f, "skip ({reason})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomEntry {
    pub ty: FinType,
    pub axiom: &'static str,
    pub outcome: AxiomOutcome,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub base_size: u32,
    pub max_level: u32,
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    /// True when nothing failed (skips are allowed).
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.outcome, AxiomOutcome::Fail))
    }

    pub fn passed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.outcome == AxiomOutcome::Pass)
            .count()
    }
}

/// All types of level at most `max_level` whose domain (and every
/// subdomain) fits the model's cap, sorted by (level, cardinality, display).
pub fn admitted_types(m: &FiniteModel, max_level: u32) -> Vec<FinType> {
    let cap = m.size_cap();
    let fits = |ty: &FinType| matches!(m.cardinality(ty), Some(c) if c <= cap);
    let mut admitted: BTreeSet<FinType> = BTreeSet::new();
    if fits(&FinType::Base) {
        admitted.insert(FinType::Base);
    }
    // closure under arrow formation, bounded by level and cap
    loop {
        let snapshot: Vec<FinType> = admitted.iter().cloned().collect();
        let mut grew = false;
        for d in &snapshot {
            for c in &snapshot {
                let ty = FinType::arrow(d.clone(), c.clone());
                if ty.level() <= max_level && fits(&ty) && !admitted.contains(&ty) {
                    admitted.insert(ty);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<FinType> = admitted.into_iter().collect();
    out.sort_by_key(|ty| (ty.level(), m.cardinality(ty), ty.to_string()));
    out
}

/// `∀x ∀y (x ⊴ y ↔ x ≤₀ y)` at base type.
fn base_axiom() -> Formula {
    let x = Var::new("x", FinType::Base);
    let y = Var::new("y", FinType::Base);
    let maj = Formula::maj(Term::Var(x.clone()), Term::Var(y.clone()));
    let leq = Formula::leq0(Term::Var(x.clone()), Term::Var(y.clone()));
    Formula::forall(
        x,
        Formula::forall(y, maj.clone().imp(leq.clone()).and(leq.imp(maj))),
    )
}

/// `∀x ∀y ∀v (x ⊴ y → ∀u⊴v (xu ⊴ yv ∧ yu ⊴ yv))` at an arrow type.
fn arrow_axiom(ty: &FinType, dom: &FinType) -> Formula {
    let x = Var::new("x", ty.clone());
    let y = Var::new("y", ty.clone());
    let u = Var::new("u", dom.clone());
    let v = Var::new("v", dom.clone());
    let xu = Term::app(Term::Var(x.clone()), Term::Var(u.clone()));
    let yu = Term::app(Term::Var(y.clone()), Term::Var(u.clone()));
    let yv = Term::app(Term::Var(y.clone()), Term::Var(v.clone()));
    let body = Formula::maj(xu, yv.clone()).and(Formula::maj(yu, yv));
    let inner = Formula::bforall(u, Term::Var(v.clone()), body);
    Formula::forall(
        x.clone(),
        Formula::forall(
            y.clone(),
            Formula::forall(v, Formula::maj(Term::Var(x), Term::Var(y)).imp(inner)),
        ),
    )
}

/// The converse direction, the semantic content of the majorizability rule:
/// `∀x ∀y ((∀u ∀v (u ⊴ v → xu ⊴ yv ∧ yu ⊴ yv)) → x ⊴ y)`.
fn arrow_rule(ty: &FinType, dom: &FinType) -> Formula {
    let x = Var::new("x", ty.clone());
    let y = Var::new("y", ty.clone());
    let u = Var::new("u", dom.clone());
    let v = Var::new("v", dom.clone());
    let xu = Term::app(Term::Var(x.clone()), Term::Var(u.clone()));
    let yu = Term::app(Term::Var(y.clone()), Term::Var(u.clone()));
    let yv = Term::app(Term::Var(y.clone()), Term::Var(v.clone()));
    let pointwise = Formula::maj(Term::Var(u.clone()), Term::Var(v.clone()))
        .imp(Formula::maj(xu, yv.clone()).and(Formula::maj(yu, yv)));
    let premise = Formula::forall(u, Formula::forall(v, pointwise));
    Formula::forall(
        x.clone(),
        Formula::forall(
            y.clone(),
            premise.imp(Formula::maj(Term::Var(x), Term::Var(y))),
        ),
    )
}

fn run_axiom(m: &FiniteModel, f: &Formula) -> AxiomOutcome {
    match m.eval_formula(&Env::new(), f) {
        Ok(true) => AxiomOutcome::Pass,
        Ok(false) => AxiomOutcome::Fail,
        Err(e) if e.is_domain_too_large() => AxiomOutcome::Skip(e.to_string()),
        Err(e) => AxiomOutcome::Skip(format!("evaluation error: {e}")),
    }
}

/// Check the framework axioms at every admitted type up to `max_level`.
pub fn check_model_axioms(m: &FiniteModel, max_level: u32) -> AxiomReport {
    let mut entries = Vec::new();
    for ty in admitted_types(m, max_level) {
        match &ty {
            FinType::Base => entries.push(AxiomEntry {
                ty: ty.clone(),
                axiom: "base: ⊴₀ coincides with ≤₀",
                outcome: run_axiom(m, &base_axiom()),
            }),
            FinType::Arrow(d, _) => {
                entries.push(AxiomEntry {
                    ty: ty.clone(),
                    axiom: "arrow: x⊴y → ∀u⊴v (xu⊴yv ∧ yu⊴yv)",
                    outcome: run_axiom(m, &arrow_axiom(&ty, d)),
                });
                entries.push(AxiomEntry {
                    ty: ty.clone(),
                    axiom: "arrow rule: pointwise domination implies ⊴",
                    outcome: run_axiom(m, &arrow_rule(&ty, d)),
                });
            }
        }
    }
    AxiomReport {
        base_size: m.base_size(),
        max_level,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_respects_cap_and_level() {
        let m = FiniteModel::new(1, 16);
        let types = admitted_types(&m, 2);
        // 0 (2), 0->0 (4), 0->0->0 (16), (0->0)->0 (16); everything else
        // exceeds 16 elements
        assert_eq!(types.len(), 4);
        assert_eq!(types[0], FinType::Base);
        let level1 = FinType::arrow(FinType::Base, FinType::Base);
        assert!(types.contains(&level1));
        assert!(types.contains(&FinType::arrow(level1.clone(), FinType::Base)));
        // level filter
        let only_level1 = admitted_types(&m, 1);
        assert!(only_level1.iter().all(|t| t.level() <= 1));
    }

    #[test]
    fn axioms_hold_at_n1_level1() {
        let m = FiniteModel::new(1, 256);
        let report = check_model_axioms(&m, 1);
        assert!(report.all_pass());
        assert!(report.passed() >= 3);
    }

    #[test]
    fn axioms_hold_at_n2_level1() {
        let m = FiniteModel::new(2, 32);
        let report = check_model_axioms(&m, 1);
        assert!(report.all_pass());
        assert!(report.passed() >= 3);
    }
}

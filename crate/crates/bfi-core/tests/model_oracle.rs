//! Semantic invariants of the finite structure, checked by brute force at
//! desk scale.

use bfi_core::bounded::sbfi_core;
use bfi_core::model::{Assignments, Env, FiniteModel};
use bfi_core::monotone::relativize_bounded;
use bfi_core::sexpr::{parse_formulas, ConstSignature};
use bfi_core::syntax::{FinType, Formula};

fn base() -> FinType {
    FinType::Base
}

fn arrow(d: FinType, c: FinType) -> FinType {
    FinType::arrow(d, c)
}

fn model() -> FiniteModel {
    FiniteModel::new(1, 4096)
        .with_predicate("P", vec![base()], vec![true, false])
        .unwrap()
        .with_predicate("Q", vec![], vec![false])
        .unwrap()
        .with_predicate("R", vec![base(), base()], vec![false, true, true, false])
        .unwrap()
        .with_predicate(
            "F",
            vec![arrow(base(), base())],
            vec![true, false, true, false],
        )
        .unwrap()
}

fn corpus() -> Vec<Formula> {
    let root = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let sig = ConstSignature::builtin();
    let mut files: Vec<_> = std::fs::read_dir(root)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "fml"))
        .collect();
    files.sort();
    files
        .iter()
        .flat_map(|f| parse_formulas(&std::fs::read_to_string(f).unwrap(), &sig).unwrap())
        .collect()
}

#[test]
fn majorizes_is_reflexive_exactly_on_self_majorizing_elements() {
    let m = model();
    for ty in [
        base(),
        arrow(base(), base()),
        arrow(arrow(base(), base()), base()),
        arrow(base(), arrow(base(), base())),
    ] {
        let self_maj = m.self_majorizing(&ty).unwrap();
        for e in m.domain(&ty).unwrap() {
            assert_eq!(
                m.majorizes(&ty, &e, &e).unwrap(),
                self_maj.contains(&e),
                "reflexivity mismatch at {ty}"
            );
        }
    }
}

#[test]
fn majorizes_is_transitive_on_self_majorizing_triples() {
    let m = model();
    for ty in [
        base(),
        arrow(base(), base()),
        arrow(arrow(base(), base()), base()),
    ] {
        let sm = m.self_majorizing(&ty).unwrap();
        for a in &sm {
            for b in &sm {
                if !m.majorizes(&ty, a, b).unwrap() {
                    continue;
                }
                for c in &sm {
                    if m.majorizes(&ty, b, c).unwrap() {
                        assert!(
                            m.majorizes(&ty, a, c).unwrap(),
                            "transitivity fails at {ty}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn relativization_preserves_evaluation_over_the_corpus() {
    let m = model();
    for f in corpus() {
        let relativized = relativize_bounded(&f);
        assert_eq!(
            m.eval_formula(&Env::new(), &f).unwrap(),
            m.eval_formula(&Env::new(), &relativized).unwrap(),
            "relativization changed the value of {f:?}"
        );
    }
}

#[test]
fn bounded_excluded_middle_holds_for_corpus_matrices() {
    // evaluation is two-valued, so A_b or not A_b comes out true for every
    // bounded matrix under every tuple assignment
    let m = model();
    for f in corpus() {
        let r = sbfi_core(&f).unwrap();
        assert!(r.matrix.is_bounded());
        let lem = r.matrix.clone().or(r.matrix.clone().not());
        let pools: Vec<_> = r
            .outer
            .iter()
            .chain(r.inner.iter())
            .map(|v| m.domain(&v.ty).unwrap())
            .collect();
        let vars: Vec<_> = r.outer.iter().chain(r.inner.iter()).cloned().collect();
        for assignment in Assignments::new(pools).take(64) {
            let env: Env = vars.iter().cloned().zip(assignment).collect();
            assert!(m.eval_formula(&env, &lem).unwrap());
        }
    }
}

#[test]
fn domain_enumeration_is_stable_across_model_instances() {
    let ty = arrow(arrow(base(), base()), base());
    let a = model().domain(&ty).unwrap();
    let b = model().domain(&ty).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 16);
}

//! Property tests: random well-typed formulas drive the syntactic
//! invariants of the translations and their semantic behaviour in a small
//! structure. The evaluator acts as the independent oracle throughout.

use bfi_core::bounded::{bfi, bfi_core, sbfi, sbfi_core, tuple_signature};
use bfi_core::checks::Check;
use bfi_core::checks::{CheckEq3, CheckEq4, CheckEq5, CheckMono};
use bfi_core::fresh::fresh_tuple;
use bfi_core::krivine::{krivine, krivine_inner};
use bfi_core::model::{Env, FiniteModel};
use bfi_core::monotone::relativize_bounded;
use bfi_core::printer::{format_formula, Style};
use bfi_core::sexpr::{parse_formula, ConstSignature};
use bfi_core::subst::substitute;
use bfi_core::syntax::{FinType, Formula, Term, Var};
use bfi_core::typing::well_typed;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn base() -> FinType {
    FinType::Base
}

fn arrow() -> FinType {
    FinType::arrow(base(), base())
}

/// Variable names are partitioned by type so one name never occurs at two
/// types: a, b, e at base; g, h at 0 -> 0.
fn names_for(ty: &FinType) -> &'static [&'static str] {
    if *ty == FinType::Base {
        &["a", "b", "e"]
    } else {
        &["g", "h"]
    }
}

fn vars_of<'s>(scope: &'s [Var], ty: &FinType) -> Vec<&'s Var> {
    scope.iter().filter(|v| v.ty == *ty).collect()
}

/// A base-type term: a scoped variable, a numeral, or an application of a
/// function-typed variable / succ.
fn base_term(scope: Vec<Var>) -> BoxedStrategy<Term> {
    let consts = prop_oneof![
        Just(Term::constant("0", base())),
        Just(Term::constant("1", base())),
    ];
    let vars: Vec<Term> = vars_of(&scope, &base())
        .into_iter()
        .map(|v| Term::Var(v.clone()))
        .collect();
    let heads: Vec<Term> = vars_of(&scope, &arrow())
        .into_iter()
        .map(|v| Term::Var(v.clone()))
        .chain([Term::constant("succ", arrow())])
        .collect();
    let simple = if vars.is_empty() {
        consts.boxed()
    } else {
        prop_oneof![2 => proptest::sample::select(vars), 1 => consts].boxed()
    };
    let applied =
        (proptest::sample::select(heads), simple.clone()).prop_map(|(f, x)| Term::app(f, x));
    prop_oneof![4 => simple, 1 => applied].boxed()
}

fn fn_term(scope: Vec<Var>) -> BoxedStrategy<Term> {
    let mut choices: Vec<Term> = vars_of(&scope, &arrow())
        .into_iter()
        .map(|v| Term::Var(v.clone()))
        .collect();
    choices.push(Term::constant("succ", arrow()));
    proptest::sample::select(choices).boxed()
}

fn atom_formula(scope: Vec<Var>) -> BoxedStrategy<Formula> {
    let b1 = base_term(scope.clone());
    let b2 = base_term(scope.clone());
    let b3 = base_term(scope.clone());
    let b4 = base_term(scope.clone());
    let b5 = base_term(scope.clone());
    let b6 = base_term(scope.clone());
    let f1 = fn_term(scope.clone());
    let f2 = fn_term(scope);
    prop_oneof![
        Just(Formula::atom("Q", vec![])),
        b1.prop_map(|t| Formula::atom("P", vec![t])),
        (b2, b3).prop_map(|(t, q)| Formula::atom("R", vec![t, q])),
        (b4, b5).prop_map(|(t, q)| Formula::leq0(t, q)),
        b6.prop_map(|t| Formula::maj(t.clone(), t)),
        (f1, f2).prop_map(|(t, q)| Formula::maj(t, q)),
    ]
    .boxed()
}

fn quantifier_type() -> BoxedStrategy<FinType> {
    prop_oneof![3 => Just(base()), 1 => Just(arrow())].boxed()
}

/// A bound term of the given type built from constants only, so the bound
/// can never mention the bound variable.
fn bound_term(ty: &FinType) -> BoxedStrategy<Term> {
    if *ty == FinType::Base {
        prop_oneof![
            Just(Term::constant("0", base())),
            Just(Term::constant("1", base())),
        ]
        .boxed()
    } else {
        Just(Term::constant("succ", arrow())).boxed()
    }
}

fn classical_formula(depth: u32, scope: Vec<Var>) -> BoxedStrategy<Formula> {
    if depth == 0 {
        return atom_formula(scope);
    }
    let atoms = atom_formula(scope.clone());
    let not = classical_formula(depth - 1, scope.clone()).prop_map(Formula::not);
    let or = (
        classical_formula(depth - 1, scope.clone()),
        classical_formula(depth - 1, scope.clone()),
    )
        .prop_map(|(a, b)| a.or(b));
    let and = (
        classical_formula(depth - 1, scope.clone()),
        classical_formula(depth - 1, scope.clone()),
    )
        .prop_map(|(a, b)| a.and(b));
    let scope_all = scope.clone();
    let forall = (quantifier_type(), 0usize..3).prop_flat_map(move |(ty, pick)| {
        let names = names_for(&ty);
        let v = Var::new(names[pick % names.len()], ty);
        let mut inner = scope_all.clone();
        inner.push(v.clone());
        classical_formula(depth - 1, inner).prop_map(move |body| Formula::forall(v.clone(), body))
    });
    let scope_b = scope;
    let bounded = (quantifier_type(), 0usize..3).prop_flat_map(move |(ty, pick)| {
        let names = names_for(&ty);
        let v = Var::new(names[pick % names.len()], ty.clone());
        let mut inner = scope_b.clone();
        inner.push(v.clone());
        (bound_term(&ty), classical_formula(depth - 1, inner))
            .prop_map(move |(t, body)| Formula::bforall(v.clone(), t, body))
    });
    prop_oneof![
        3 => atoms,
        2 => not,
        2 => or,
        2 => and,
        2 => forall,
        1 => bounded,
    ]
    .boxed()
}

/// Closed classical formulas.
fn closed_classical() -> BoxedStrategy<Formula> {
    classical_formula(3, Vec::new())
}

/// The intuitionistic language adds bot, implication and the existentials.
fn intuitionistic_formula(depth: u32, scope: Vec<Var>) -> BoxedStrategy<Formula> {
    if depth == 0 {
        return prop_oneof![9 => atom_formula(scope), 1 => Just(Formula::Bot)].boxed();
    }
    let classical = classical_formula(depth, scope.clone());
    let imp = (
        intuitionistic_formula(depth - 1, scope.clone()),
        intuitionistic_formula(depth - 1, scope.clone()),
    )
        .prop_map(|(a, b)| a.imp(b));
    let scope_ex = scope.clone();
    let exists = (quantifier_type(), 0usize..3).prop_flat_map(move |(ty, pick)| {
        let names = names_for(&ty);
        let v = Var::new(names[pick % names.len()], ty);
        let mut inner = scope_ex.clone();
        inner.push(v.clone());
        intuitionistic_formula(depth - 1, inner)
            .prop_map(move |body| Formula::exists(v.clone(), body))
    });
    let scope_bex = scope;
    let bexists = (quantifier_type(), 0usize..3).prop_flat_map(move |(ty, pick)| {
        let names = names_for(&ty);
        let v = Var::new(names[pick % names.len()], ty.clone());
        let mut inner = scope_bex.clone();
        inner.push(v.clone());
        (bound_term(&ty), intuitionistic_formula(depth - 1, inner))
            .prop_map(move |(t, body)| Formula::bexists(v.clone(), t, body))
    });
    prop_oneof![
        4 => classical,
        2 => imp,
        2 => exists,
        1 => bexists,
        1 => Just(Formula::Bot),
    ]
    .boxed()
}

fn closed_intuitionistic() -> BoxedStrategy<Formula> {
    intuitionistic_formula(3, Vec::new())
}

fn oracle_model() -> FiniteModel {
    FiniteModel::new(1, 4096)
        .with_predicate("P", vec![base()], vec![true, false])
        .unwrap()
        .with_predicate("Q", vec![], vec![false])
        .unwrap()
        .with_predicate("R", vec![base(), base()], vec![false, true, true, false])
        .unwrap()
}

fn has_quantifier(f: &Formula) -> bool {
    match f {
        Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => false,
        Formula::Not(a) => has_quantifier(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            has_quantifier(a) || has_quantifier(b)
        }
        Formula::Forall(..) | Formula::Exists(..) | Formula::BForall(..) | Formula::BExists(..) => {
            true
        }
    }
}

fn count_bounded_nodes(f: &Formula) -> usize {
    match f {
        Formula::Bot | Formula::Atom(..) | Formula::Maj(..) | Formula::Leq0(..) => 0,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => count_bounded_nodes(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            count_bounded_nodes(a) + count_bounded_nodes(b)
        }
        Formula::BForall(_, _, a) | Formula::BExists(_, _, a) => 1 + count_bounded_nodes(a),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_formulas_are_well_typed(f in closed_intuitionistic()) {
        prop_assert!(well_typed(&f).is_ok(), "{f:?}");
    }

    #[test]
    fn sexpr_roundtrip_is_identity(f in closed_intuitionistic()) {
        let printed = format_formula(&f, Style::Sexpr);
        let reparsed = parse_formula(&printed, &ConstSignature::builtin()).unwrap();
        prop_assert_eq!(f, reparsed, "printed: {}", printed);
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(
        f in classical_formula(3, vec![Var::new("a", FinType::Base)])
    ) {
        let a = Var::new("a", FinType::Base);
        let got = substitute(&f, &a, &Term::Var(a.clone())).unwrap();
        prop_assert_eq!(got, f);
    }

    #[test]
    fn relativize_removes_bounded_quantifiers_and_preserves_free_vars(
        f in closed_intuitionistic()
    ) {
        let r = relativize_bounded(&f);
        prop_assert_eq!(count_bounded_nodes(&r), 0);
        prop_assert_eq!(r.free_vars(), f.free_vars());
    }

    #[test]
    fn fresh_tuple_avoids_the_avoid_set(
        names in proptest::collection::vec("[a-e]", 1..4)
    ) {
        let avoid: BTreeSet<Var> = names
            .iter()
            .map(|n| Var::new(n.clone(), FinType::Base))
            .collect();
        let bases: Vec<&str> = names.iter().map(String::as_str).collect();
        let types = vec![FinType::Base; bases.len()];
        let t = fresh_tuple(&bases, &types, &avoid).unwrap();
        for v in t.iter() {
            prop_assert!(!avoid.contains(v));
        }
        // and a second call is identical
        prop_assert_eq!(t.clone(), fresh_tuple(&bases, &types, &avoid).unwrap());
    }

    #[test]
    fn b_matrix_is_bounded_with_disjoint_fresh_tuples(f in closed_intuitionistic()) {
        let r = bfi_core(&f).unwrap();
        prop_assert!(r.matrix.is_bounded(), "matrix: {:?}", r.matrix);
        let free = f.free_vars();
        let mut seen = BTreeSet::new();
        for v in r.outer.iter().chain(r.inner.iter()) {
            prop_assert!(!free.contains(v), "tuple var {v} is free in the source");
            prop_assert!(seen.insert(v.clone()), "tuple var {v} repeated");
        }
        // free variables of the matrix stay inside source free vars + tuples
        let allowed: BTreeSet<Var> = free
            .into_iter()
            .chain(r.outer.iter().cloned())
            .chain(r.inner.iter().cloned())
            .collect();
        for v in r.matrix.free_vars() {
            prop_assert!(allowed.contains(&v), "unexpected free variable {v}");
        }
        // deterministic
        prop_assert_eq!(r, bfi_core(&f).unwrap());
    }

    #[test]
    fn quantifier_free_formulas_translate_to_themselves(f in closed_intuitionistic()) {
        prop_assume!(!has_quantifier(&f));
        let rb = bfi_core(&f).unwrap();
        prop_assert!(rb.outer.is_empty() && rb.inner.is_empty());
        prop_assert_eq!(&rb.matrix, &f);
        if f.classical_violation().is_none() {
            let ru = sbfi_core(&f).unwrap();
            prop_assert!(ru.outer.is_empty() && ru.inner.is_empty());
            prop_assert_eq!(&ru.matrix, &f);
        }
    }

    #[test]
    fn u_matrix_is_bounded_with_disjoint_fresh_tuples(f in closed_classical()) {
        let r = sbfi_core(&f).unwrap();
        prop_assert!(r.matrix.is_bounded(), "matrix: {:?}", r.matrix);
        let mut seen = BTreeSet::new();
        for v in r.outer.iter().chain(r.inner.iter()) {
            prop_assert!(seen.insert(v.clone()), "tuple var {v} repeated");
        }
        let allowed: BTreeSet<Var> = r
            .outer
            .iter()
            .cloned()
            .chain(r.inner.iter().cloned())
            .collect();
        for v in r.matrix.free_vars() {
            prop_assert!(allowed.contains(&v), "unexpected free variable {v}");
        }
        prop_assert_eq!(r, sbfi_core(&f).unwrap());
    }

    #[test]
    fn type_agreement_between_u_and_k_then_b(f in closed_classical()) {
        let u = sbfi_core(&f).unwrap();
        let kb = bfi_core(&krivine_inner(&f).unwrap()).unwrap();
        prop_assert_eq!(
            tuple_signature(&u),
            tuple_signature(&kb),
            "formula: {}",
            format_formula(&f, Style::Sexpr)
        );
    }

    #[test]
    fn b_negation_clause_matches_implication_into_bot(f in closed_classical()) {
        let via_not = bfi_core(&f.clone().not()).unwrap();
        let via_imp = bfi_core(&f.imp(Formula::Bot)).unwrap();
        prop_assert_eq!(via_not.signature(), via_imp.signature());
        match (&via_not.matrix, &via_imp.matrix) {
            (Formula::Not(body), Formula::Imp(premise, bot)) => {
                prop_assert_eq!(body.as_ref(), premise.as_ref());
                prop_assert_eq!(bot.as_ref(), &Formula::Bot);
            }
            other => prop_assert!(false, "unexpected shapes: {other:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn k_is_semantically_transparent(f in closed_classical()) {
        let m = oracle_model();
        let k = krivine(&f).unwrap();
        let left = m.eval_formula(&Env::new(), &f).unwrap();
        let right = m.eval_formula(&Env::new(), &k).unwrap();
        prop_assert_eq!(left, right, "formula: {}", format_formula(&f, Style::Sexpr));
    }

    #[test]
    fn assembled_interpretations_are_transparent_in_the_full_structure(
        f in closed_intuitionistic()
    ) {
        // in a finite full structure every element has a monotone majorant
        // and upper bounds exist, so the assembled interpretations agree
        // with their source under classical evaluation; this drives every
        // B clause semantically, the implication clause included
        let m = oracle_model();
        let direct = m.eval_formula(&Env::new(), &f).unwrap();
        match m.eval_formula(&Env::new(), &bfi(&f).unwrap()) {
            Ok(value) => prop_assert_eq!(
                value,
                direct,
                "A^B diverges on {}",
                format_formula(&f, Style::Sexpr)
            ),
            Err(e) if e.is_domain_too_large() => {}
            Err(e) => prop_assert!(false, "evaluation error: {e}"),
        }
        if f.classical_violation().is_none() {
            match m.eval_formula(&Env::new(), &sbfi(&f).unwrap()) {
                Ok(value) => prop_assert_eq!(
                    value,
                    direct,
                    "A^U diverges on {}",
                    format_formula(&f, Style::Sexpr)
                ),
                Err(e) if e.is_domain_too_large() => {}
                Err(e) => prop_assert!(false, "evaluation error: {e}"),
            }
        }
    }

    #[test]
    fn factorization_checks_never_fail_on_random_formulas(f in closed_classical()) {
        let m = oracle_model();
        for check in [
            &CheckEq3 as &dyn Check,
            &CheckEq4,
            &CheckEq5,
            &CheckMono,
        ] {
            let outcome = check.run(&f, &m);
            prop_assert!(
                !outcome.is_fail(),
                "{} failed on {}: {:?}",
                check.name(),
                format_formula(&f, Style::Sexpr),
                outcome
            );
        }
    }
}

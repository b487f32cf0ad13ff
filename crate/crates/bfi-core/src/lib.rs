//! A workbench for bounded functional interpretations over arithmetic in all
//! finite types with majorizability.
//!
//! The library provides:
//!
//! - the shared syntax (types, terms, formulas) with typing, substitution
//!   and monotone-quantifier desugaring ([`syntax`], [`typing`], [`subst`],
//!   [`monotone`]);
//! - Krivine's negative translation `K` from the classical into the
//!   intuitionistic language ([`krivine`]);
//! - the bounded functional interpretation `B` and the Shoenfield-like
//!   bounded functional interpretation `U`, computed as witness tuples plus
//!   bounded matrix ([`bounded`]);
//! - full finite type structures over base `{0, ..., N}` with recursively
//!   computed majorizability, used as a brute-force semantic oracle
//!   ([`model`]);
//! - a registry of theorem-level checks (the factorization equations
//!   relating `U` and `K∘B`, monotonicity, boundedness, tuple type
//!   agreement and the characterization of `K`), runnable over a formula
//!   corpus ([`checks`]);
//! - the canonical text syntax and pretty printers ([`sexpr`], [`printer`])
//!   and named translator strategies for front ends ([`translate`]).
//!
//! The checks establish truth in finite structures that validate the
//! relevant principles (verified by [`model::check_model_axioms`]); they are
//! semantic evidence, not derivations in a formal system.

pub mod bounded;
pub mod checks;
pub mod error;
pub mod fresh;
pub mod krivine;
pub mod model;
pub mod monotone;
pub mod printer;
pub mod sexpr;
pub mod subst;
pub mod syntax;
pub mod translate;
pub mod typing;

pub use bounded::{bfi, bfi_core, sbfi, sbfi_core, tuple_signature, InterpKind, TranslationResult};
pub use checks::{find_check, registry, run_corpus, Check, CheckReport, CorpusEntry, Outcome};
pub use error::{ModelError, ParseError, SubstError, SyntaxError, TranslateError};
pub use fresh::{fresh_tuple, NamePool};
pub use krivine::{krivine, krivine_inner};
pub use model::{
    check_model_axioms, model_from_json, Element, Env, FiniteModel, ModelParams, DEFAULT_SIZE_CAP,
};
pub use monotone::{
    bounded_monotone_exists, bounded_monotone_forall, monotone_exists, monotone_forall,
    relativize_bounded,
};
pub use printer::{format_formula, format_term, format_type, Style};
pub use sexpr::{parse_formula, parse_formulas, parse_type, ConstSignature};
pub use subst::{substitute, substitute_map};
pub use syntax::{FinType, Formula, Language, Term, Var, VarTuple};
pub use translate::{find_translator, translators, Translated, Translator};
pub use typing::{is_bounded, well_typed, TypeReport, TypeViolation};

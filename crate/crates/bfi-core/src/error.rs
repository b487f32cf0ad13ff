//! Error types shared across the crate.

use crate::syntax::{FinType, Term, Var};
use crate::typing::TypeViolation;
use thiserror::Error;

/// Structural errors raised when building syntax values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("variable `{0}` occurs twice in one tuple")]
    DuplicateInTuple(String),
    #[error("tuple length mismatch: {left} variables vs {right} companions")]
    LengthMismatch { left: usize, right: usize },
}

/// Errors raised by the capture-avoiding substitution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("cannot substitute `{term}` (type {found}) for `{var}`")]
    TypeMismatch {
        var: Var,
        term: Term,
        found: FinType,
    },
    #[error("cannot substitute ill-typed term `{term}` for `{var}`")]
    IllTypedReplacement { var: Var, term: Term },
}

/// Errors raised by the translations K, B and U.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula is outside the classical language: contains `{0}`")]
    NotClassical(&'static str),
    #[error("ill-typed input: {0}")]
    IllTyped(TypeViolation),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Subst(#[from] SubstError),
}

/// Errors raised by finite-model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain too large: type {ty} has {} elements, cap is {cap}", display_card(.cardinality))]
    DomainTooLarge {
        ty: FinType,
        cardinality: Option<u64>,
        cap: u64,
    },
    #[error("unbound variable `{0}`")]
    UnboundVariable(Var),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{name}` applied to {found} arguments, expected {expected}")]
    PredicateArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("predicate `{name}`: argument {position} has type {found}, expected {expected}")]
    PredicateArgType {
        name: String,
        position: usize,
        expected: FinType,
        found: FinType,
    },
    #[error("ill-typed term: {0}")]
    IllTypedTerm(TypeViolation),
    #[error("element does not inhabit type {0}")]
    ElementOutsideType(FinType),
    #[error("predicate `{name}`: table has {found} entries, expected {expected}")]
    TableSize {
        name: String,
        expected: u64,
        found: usize,
    },
}

impl ModelError {
    pub fn is_domain_too_large(&self) -> bool {
        matches!(self, ModelError::DomainTooLarge { .. })
    }
}

fn display_card(c: &Option<u64>) -> String {
    match c {
        Some(n) => n.to_string(),
        None => "more than 2^64".to_string(),
    }
}

/// Syntax errors from the canonical text format, with source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

/// Errors raised when reading a model description file.
#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("model file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad type string `{text}`: {error}")]
    BadType { text: String, error: ParseError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("constant `{name}`: {message}")]
    BadConstant { name: String, message: String },
}

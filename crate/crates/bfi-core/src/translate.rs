//! Named translator strategies: `k`, `b`, `u` and the composition `kb`,
//! selected by name at runtime. Front ends stay thin adapters over these.

use crate::bounded::{bfi_core, bfi_explain, sbfi_core, sbfi_explain, TranslationResult};
use crate::error::TranslateError;
use crate::krivine::{krivine, krivine_explain};
use crate::syntax::Formula;

/// A translation output: the assembled formula plus, for the tuple-based
/// interpretations, the unassembled result.
#[derive(Debug, Clone)]
pub struct Translated {
    pub formula: Formula,
    pub result: Option<TranslationResult>,
}

pub trait Translator: Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn translate(&self, f: &Formula) -> Result<Translated, TranslateError>;
    /// Clause-by-clause trace of the translation.
    fn explain(&self, f: &Formula) -> Result<Vec<String>, TranslateError>;
}

struct KrivineT;

impl Translator for KrivineT {
    fn name(&self) -> &'static str {
        "k"
    }
    fn describe(&self) -> &'static str {
        "Krivine negative translation A^K"
    }
    fn translate(&self, f: &Formula) -> Result<Translated, TranslateError> {
        Ok(Translated {
            formula: krivine(f)?,
            result: None,
        })
    }
    fn explain(&self, f: &Formula) -> Result<Vec<String>, TranslateError> {
        Ok(krivine_explain(f)?.1)
    }
}

struct BoundedT;

impl Translator for BoundedT {
    fn name(&self) -> &'static str {
        "b"
    }
    fn describe(&self) -> &'static str {
        "bounded functional interpretation A^B"
    }
    fn translate(&self, f: &Formula) -> Result<Translated, TranslateError> {
        let r = bfi_core(f)?;
        Ok(Translated {
            formula: r.assemble(),
            result: Some(r),
        })
    }
    fn explain(&self, f: &Formula) -> Result<Vec<String>, TranslateError> {
        Ok(bfi_explain(f)?.1)
    }
}

struct ShoenfieldLikeT;

impl Translator for ShoenfieldLikeT {
    fn name(&self) -> &'static str {
        "u"
    }
    fn describe(&self) -> &'static str {
        "Shoenfield-like bounded functional interpretation A^U"
    }
    fn translate(&self, f: &Formula) -> Result<Translated, TranslateError> {
        let r = sbfi_core(f)?;
        Ok(Translated {
            formula: r.assemble(),
            result: Some(r),
        })
    }
    fn explain(&self, f: &Formula) -> Result<Vec<String>, TranslateError> {
        Ok(sbfi_explain(f)?.1)
    }
}

struct ComposedT;

impl Translator for ComposedT {
    fn name(&self) -> &'static str {
        "kb"
    }
    fn describe(&self) -> &'static str {
        "composition (A^K)^B"
    }
    fn translate(&self, f: &Formula) -> Result<Translated, TranslateError> {
        let r = bfi_core(&krivine(f)?)?;
        Ok(Translated {
            formula: r.assemble(),
            result: Some(r),
        })
    }
    fn explain(&self, f: &Formula) -> Result<Vec<String>, TranslateError> {
        let (k, mut lines) = krivine_explain(f)?;
        lines.extend(bfi_explain(&k)?.1);
        Ok(lines)
    }
}

static TRANSLATORS: &[&dyn Translator] = &[&KrivineT, &BoundedT, &ShoenfieldLikeT, &ComposedT];

pub fn translators() -> &'static [&'static dyn Translator] {
    TRANSLATORS
}

pub fn find_translator(name: &str) -> Option<&'static dyn Translator> {
    TRANSLATORS.iter().copied().find(|t| t.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{FinType, Term, Var};

    #[test]
    fn registry_resolves_names() {
        assert_eq!(translators().len(), 4);
        assert!(find_translator("kb").is_some());
        assert!(find_translator("d").is_none());
    }

    #[test]
    fn strategies_match_direct_calls() {
        let z = Var::new("z", FinType::Base);
        let f = Formula::forall(z.clone(), Formula::atom("P", vec![Term::Var(z)]));
        let via_registry = find_translator("u").unwrap().translate(&f).unwrap();
        assert_eq!(via_registry.formula, crate::bounded::sbfi(&f).unwrap());
        let kb = find_translator("kb").unwrap().translate(&f).unwrap();
        assert_eq!(
            kb.formula,
            crate::bounded::bfi(&crate::krivine::krivine(&f).unwrap()).unwrap()
        );
    }

    #[test]
    fn explain_traces_cite_clauses_in_preorder() {
        let z = Var::new("z", FinType::Base);
        let f = Formula::forall(z.clone(), Formula::atom("P", vec![Term::Var(z.clone())])).not();
        let lines = find_translator("u").unwrap().explain(&f).unwrap();
        let clause_of = |line: &String| {
            line.trim_start()
                .split(':')
                .next()
                .unwrap_or_default()
                .to_string()
        };
        assert!(clause_of(&lines[0]).starts_with("U clause 2"));
        assert!(clause_of(&lines[1]).starts_with("U clause 5"));
        assert!(clause_of(&lines[2]).starts_with("U clause 1"));

        let k_lines = find_translator("k")
            .unwrap()
            .explain(&Formula::forall(z, Formula::atom("P", vec![])))
            .unwrap();
        assert!(k_lines[0].contains("K clause 5"));
        assert!(k_lines[1].contains("K clause 1"));
    }

    #[test]
    fn b_explain_cites_the_implication_clause_and_the_remark() {
        let q = Formula::atom("Q", vec![]);
        let z = Var::new("z", FinType::Base);
        let f = Formula::exists(z.clone(), Formula::atom("P", vec![Term::Var(z)])).imp(q.clone());
        let lines = find_translator("b").unwrap().explain(&f).unwrap();
        assert!(lines[0].contains("B clause 4"), "{lines:?}");
        assert!(lines.iter().any(|l| l.contains("B clause 8")));
        let not_lines = find_translator("b").unwrap().explain(&q.not()).unwrap();
        assert!(not_lines[0].contains("B negation remark"), "{not_lines:?}");
    }
}

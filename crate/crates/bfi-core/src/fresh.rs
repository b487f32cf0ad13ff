//! Deterministic fresh-name generation.
//!
//! Scheme: keep the base name when unused, otherwise append the smallest
//! unused counter (`y`, `y1`, `y2`, ...). The translations decorate base
//! names the way the clauses display them: a tilde suffix for the re-bound
//! copies (`w` -> `w~`) and a capitalized head for bounding functionals
//! (`w` -> `W`).

use crate::error::SyntaxError;
use crate::syntax::{FinType, Formula, Var, VarTuple};
use std::collections::BTreeSet;

/// A pool of used names handing out fresh ones deterministically.
#[derive(Debug, Clone, Default)]
pub struct NamePool {
    used: BTreeSet<String>,
}

impl NamePool {
    pub fn new() -> NamePool {
        NamePool::default()
    }

    pub fn from_names<I, S>(names: I) -> NamePool
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NamePool {
            used: names.into_iter().map(Into::into).collect(),
        }
    }

    /// Seed with every variable name occurring in the formula, bound or free.
    pub fn seeded_from_formula(f: &Formula) -> NamePool {
        NamePool {
            used: f.all_var_names(),
        }
    }

    pub fn insert_names_of(&mut self, f: &Formula) {
        self.used.extend(f.all_var_names());
    }

    pub fn insert(&mut self, name: impl Into<String>) {
        self.used.insert(name.into());
    }

    /// The base name if unused, else `base1`, `base2`, ... (smallest unused).
    pub fn fresh(&mut self, base: &str) -> String {
        let name = if !self.used.contains(base) {
            base.to_string()
        } else {
            let mut k = 1u64;
            loop {
                let candidate = format!("{base}{k}");
                if !self.used.contains(&candidate) {
                    break candidate;
                }
                k += 1;
            }
        };
        self.used.insert(name.clone());
        name
    }

    pub fn fresh_var(&mut self, base: &str, ty: FinType) -> Var {
        Var::new(self.fresh(base), ty)
    }

    /// A fresh tuple mirroring `like`, with each base name decorated.
    pub fn fresh_tuple_like(
        &mut self,
        like: &VarTuple,
        decorate: impl Fn(&str) -> String,
    ) -> VarTuple {
        let items = like
            .iter()
            .map(|v| self.fresh_var(&decorate(&v.name), v.ty.clone()))
            .collect();
        VarTuple::new(items).expect("pool names are unique")
    }
}

/// `name~`, the re-bound copy of a tuple variable.
pub fn tilde(name: &str) -> String {
    format!("{name}~")
}

/// Capitalize the leading ASCII letter: the conventional name for a
/// functional bounding the variable it is named after.
pub fn cap(name: &str) -> String {
    let mut out = name.to_string();
    if let Some(first) = out.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    out
}

/// Build a tuple of pairwise-distinct variables avoiding `avoid`.
/// Deterministic: equal inputs give equal outputs.
pub fn fresh_tuple(
    base_names: &[&str],
    types: &[FinType],
    avoid: &BTreeSet<Var>,
) -> Result<VarTuple, SyntaxError> {
    if base_names.len() != types.len() {
        return Err(SyntaxError::LengthMismatch {
            left: base_names.len(),
            right: types.len(),
        });
    }
    let mut pool = NamePool::from_names(avoid.iter().map(|v| v.name.clone()));
    let items = base_names
        .iter()
        .zip(types)
        .map(|(base, ty)| pool.fresh_var(base, ty.clone()))
        .collect();
    VarTuple::new(items)
}

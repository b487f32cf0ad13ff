//! Full finite type structures over base `{0, ..., N}`.
//!
//! Every arrow type is interpreted by *all* functions between the interpreted
//! types, represented as dense tables indexed by the deterministic domain
//! enumeration (numbers ascending; tables in lexicographic order of their
//! value sequences). Majorizability is computed by the recursive definition:
//! at base type it is `≤`, at arrow type `a ⊴ b` iff for all `u ⊴ v` both
//! `a(u) ⊴ b(v)` and `b(u) ⊴ b(v)`.
//!
//! Models are immutable after construction; the memo caches fill idempotently
//! and are safe to populate from several threads.

mod axioms;
pub mod eval;
mod file;

pub use axioms::{admitted_types, check_model_axioms, AxiomEntry, AxiomOutcome, AxiomReport};
pub use eval::{Assignments, Env};
pub use file::{model_from_json, model_to_json};

use crate::error::ModelError;
use crate::syntax::FinType;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Default cap on the cardinality of any materialized domain.
pub const DEFAULT_SIZE_CAP: u64 = 65_536;

/// An element of the structure: a number at base type, a total table at
/// arrow type. A table holds one codomain element per domain element, in
/// domain enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Num(u32),
    Table(Vec<Element>),
}

impl Element {
    pub fn as_num(&self) -> Option<u32> {
        match self {
            Element::Num(n) => Some(*n),
            Element::Table(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Element::Num(n) => serde_json::Value::from(*n),
            Element::Table(entries) => {
                serde_json::Value::Array(entries.iter().map(Element::to_json).collect())
            }
        }
    }
}

/// The identifying parameters of a model, carried by check reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModelParams {
    pub base_size: u32,
    pub size_cap: u64,
}

/// A boolean table for one predicate symbol, indexed row-major over the
/// argument domains in enumeration order.
#[derive(Debug, Clone)]
pub struct PredicateTable {
    pub arg_types: Vec<FinType>,
    pub values: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct Constant {
    pub ty: FinType,
    pub value: Element,
}

struct Domain {
    elems: Vec<Element>,
    index: HashMap<Element, u32>,
    maj: RwLock<HashMap<(u32, u32), bool>>,
}

/// A full finite type structure with predicate and constant tables.
pub struct FiniteModel {
    base_size: u32,
    size_cap: u64,
    predicates: BTreeMap<String, PredicateTable>,
    constants: BTreeMap<String, Constant>,
    domains: RwLock<HashMap<FinType, Arc<Domain>>>,
    self_maj: RwLock<HashMap<FinType, Arc<Vec<u32>>>>,
}

impl FiniteModel {
    /// A model over base `{0, ..., base_size}` with the built-in constants:
    /// numerals, the truncated successor and binary max.
    pub fn new(base_size: u32, size_cap: u64) -> FiniteModel {
        let mut constants = BTreeMap::new();
        let base = FinType::Base;
        let n = base_size;
        for k in 0..=n {
            constants.insert(
                k.to_string(),
                Constant {
                    ty: base.clone(),
                    value: Element::Num(k),
                },
            );
        }
        constants.insert(
            "succ".to_string(),
            Constant {
                ty: FinType::arrow(base.clone(), base.clone()),
                value: Element::Table((0..=n).map(|k| Element::Num((k + 1).min(n))).collect()),
            },
        );
        constants.insert(
            "max".to_string(),
            Constant {
                ty: FinType::arrow(base.clone(), FinType::arrow(base.clone(), base)),
                value: Element::Table(
                    (0..=n)
                        .map(|a| Element::Table((0..=n).map(|b| Element::Num(a.max(b))).collect()))
                        .collect(),
                ),
            },
        );
        FiniteModel {
            base_size,
            size_cap,
            predicates: BTreeMap::new(),
            constants,
            domains: RwLock::new(HashMap::new()),
            self_maj: RwLock::new(HashMap::new()),
        }
    }

    pub fn base_size(&self) -> u32 {
        self.base_size
    }

    pub fn size_cap(&self) -> u64 {
        self.size_cap
    }

    pub fn params(&self) -> ModelParams {
        ModelParams {
            base_size: self.base_size,
            size_cap: self.size_cap,
        }
    }

    pub fn predicates(&self) -> &BTreeMap<String, PredicateTable> {
        &self.predicates
    }

    pub fn constants(&self) -> &BTreeMap<String, Constant> {
        &self.constants
    }

    /// Add a predicate table. The table must be row-major over the argument
    /// domains in enumeration order.
    pub fn with_predicate(
        mut self,
        name: impl Into<String>,
        arg_types: Vec<FinType>,
        values: Vec<bool>,
    ) -> Result<FiniteModel, ModelError> {
        let name = name.into();
        let mut expected = 1u64;
        for ty in &arg_types {
            let card = self.checked_cardinality(ty)?;
            expected = expected
                .checked_mul(card)
                .ok_or_else(|| ModelError::DomainTooLarge {
                    ty: ty.clone(),
                    cardinality: None,
                    cap: self.size_cap,
                })?;
        }
        if values.len() as u64 != expected {
            return Err(ModelError::TableSize {
                name,
                expected,
                found: values.len(),
            });
        }
        self.predicates
            .insert(name, PredicateTable { arg_types, values });
        Ok(self)
    }

    /// Add (or override) a constant.
    pub fn with_constant(
        mut self,
        name: impl Into<String>,
        ty: FinType,
        value: Element,
    ) -> Result<FiniteModel, ModelError> {
        self.validate_element(&ty, &value)?;
        self.constants.insert(name.into(), Constant { ty, value });
        Ok(self)
    }

    /// Check that an element inhabits a type in this model.
    pub fn validate_element(&self, ty: &FinType, e: &Element) -> Result<(), ModelError> {
        match (ty, e) {
            (FinType::Base, Element::Num(n)) if *n <= self.base_size => Ok(()),
            (FinType::Arrow(d, c), Element::Table(entries)) => {
                let card = self.checked_cardinality(d)?;
                if entries.len() as u64 != card {
                    return Err(ModelError::ElementOutsideType(ty.clone()));
                }
                for entry in entries {
                    self.validate_element(c, entry)?;
                }
                Ok(())
            }
            _ => Err(ModelError::ElementOutsideType(ty.clone())),
        }
    }

    /// Cardinality of a type's domain; `None` when it overflows `u64`.
    pub fn cardinality(&self, ty: &FinType) -> Option<u64> {
        match ty {
            FinType::Base => Some(u64::from(self.base_size) + 1),
            FinType::Arrow(d, c) => {
                let dc = self.cardinality(d)?;
                let cc = self.cardinality(c)?;
                let exp = u32::try_from(dc).ok()?;
                cc.checked_pow(exp)
            }
        }
    }

    fn checked_cardinality(&self, ty: &FinType) -> Result<u64, ModelError> {
        match self.cardinality(ty) {
            Some(card) if card <= self.size_cap => Ok(card),
            card => Err(ModelError::DomainTooLarge {
                ty: ty.clone(),
                cardinality: card,
                cap: self.size_cap,
            }),
        }
    }

    fn domain_data(&self, ty: &FinType) -> Result<Arc<Domain>, ModelError> {
        if let Some(d) = self.domains.read().expect("lock").get(ty) {
            return Ok(Arc::clone(d));
        }
        self.checked_cardinality(ty)?;
        let elems = match ty {
            FinType::Base => (0..=self.base_size).map(Element::Num).collect::<Vec<_>>(),
            FinType::Arrow(d, c) => {
                // children materialize before the lock is taken
                let dd = self.domain_data(d)?;
                let cc = self.domain_data(c)?;
                let dom_len = dd.elems.len();
                let cod_len = cc.elems.len();
                let total = (cod_len as u64)
                    .checked_pow(dom_len as u32)
                    .expect("within cap");
                let mut tables = Vec::with_capacity(total as usize);
                // lexicographic over value sequences: the value at the first
                // domain element is the most significant digit
                for i in 0..total {
                    let mut entries = Vec::with_capacity(dom_len);
                    let mut rest = i;
                    let mut divisor = (cod_len as u64).pow(dom_len.saturating_sub(1) as u32);
                    for _ in 0..dom_len {
                        let digit = (rest / divisor) as usize;
                        rest %= divisor;
                        if divisor > 1 {
                            divisor /= cod_len as u64;
                        }
                        entries.push(cc.elems[digit].clone());
                    }
                    tables.push(Element::Table(entries));
                }
                tables
            }
        };
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let built = Arc::new(Domain {
            elems,
            index,
            maj: RwLock::new(HashMap::new()),
        });
        let mut write = self.domains.write().expect("lock");
        Ok(Arc::clone(write.entry(ty.clone()).or_insert(built)))
    }

    /// The deterministic enumeration of all elements of a type.
    pub fn domain(&self, ty: &FinType) -> Result<Vec<Element>, ModelError> {
        Ok(self.domain_data(ty)?.elems.clone())
    }

    /// Index of an element within its type's enumeration.
    pub fn index_of(&self, ty: &FinType, e: &Element) -> Result<u32, ModelError> {
        let dom = self.domain_data(ty)?;
        dom.index
            .get(e)
            .copied()
            .ok_or_else(|| ModelError::ElementOutsideType(ty.clone()))
    }

    /// The recursive strong-majorizability relation `a ⊴ b` at `ty`.
    pub fn majorizes(&self, ty: &FinType, a: &Element, b: &Element) -> Result<bool, ModelError> {
        let dom = self.domain_data(ty)?;
        let i = *dom
            .index
            .get(a)
            .ok_or_else(|| ModelError::ElementOutsideType(ty.clone()))?;
        let j = *dom
            .index
            .get(b)
            .ok_or_else(|| ModelError::ElementOutsideType(ty.clone()))?;
        self.maj_idx(ty, &dom, i, j)
    }

    fn maj_idx(&self, ty: &FinType, dom: &Domain, i: u32, j: u32) -> Result<bool, ModelError> {
        if let Some(&v) = dom.maj.read().expect("lock").get(&(i, j)) {
            return Ok(v);
        }
        let value = match ty {
            FinType::Base => i <= j,
            FinType::Arrow(d, c) => {
                let dd = self.domain_data(d)?;
                let cc = self.domain_data(c)?;
                let (Element::Table(av), Element::Table(bv)) =
                    (&dom.elems[i as usize], &dom.elems[j as usize])
                else {
                    unreachable!("arrow domain holds tables");
                };
                let mut ok = true;
                'outer: for u in 0..dd.elems.len() as u32 {
                    for v in 0..dd.elems.len() as u32 {
                        if !self.maj_idx(d, &dd, u, v)? {
                            continue;
                        }
                        let au = cc.index[&av[u as usize]];
                        let bu = cc.index[&bv[u as usize]];
                        let bv_ = cc.index[&bv[v as usize]];
                        if !self.maj_idx(c, &cc, au, bv_)? || !self.maj_idx(c, &cc, bu, bv_)? {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                ok
            }
        };
        dom.maj.write().expect("lock").insert((i, j), value);
        Ok(value)
    }

    /// All self-majorizing (monotone) elements of a type, in enumeration
    /// order.
    pub fn self_majorizing(&self, ty: &FinType) -> Result<Vec<Element>, ModelError> {
        let dom = self.domain_data(ty)?;
        let indices = self.self_majorizing_indices(ty, &dom)?;
        Ok(indices
            .iter()
            .map(|&i| dom.elems[i as usize].clone())
            .collect())
    }

    fn self_majorizing_indices(
        &self,
        ty: &FinType,
        dom: &Domain,
    ) -> Result<Arc<Vec<u32>>, ModelError> {
        if let Some(cached) = self.self_maj.read().expect("lock").get(ty) {
            return Ok(Arc::clone(cached));
        }
        let mut indices = Vec::new();
        for i in 0..dom.elems.len() as u32 {
            if self.maj_idx(ty, dom, i, i)? {
                indices.push(i);
            }
        }
        let built = Arc::new(indices);
        let mut write = self.self_maj.write().expect("lock");
        Ok(Arc::clone(write.entry(ty.clone()).or_insert(built)))
    }

    /// The first self-majorizing element (enumeration order) that majorizes
    /// every element of `es`, or `None` when no such element exists.
    pub fn find_upper_bound(
        &self,
        ty: &FinType,
        es: &[Element],
    ) -> Result<Option<Element>, ModelError> {
        let dom = self.domain_data(ty)?;
        let candidates = self.self_majorizing_indices(ty, &dom)?;
        let mut es_idx = Vec::with_capacity(es.len());
        for e in es {
            es_idx.push(
                *dom.index
                    .get(e)
                    .ok_or_else(|| ModelError::ElementOutsideType(ty.clone()))?,
            );
        }
        'candidates: for &b in candidates.iter() {
            for &e in &es_idx {
                if !self.maj_idx(ty, &dom, e, b)? {
                    continue 'candidates;
                }
            }
            return Ok(Some(dom.elems[b as usize].clone()));
        }
        Ok(None)
    }

    /// Look up one predicate-table entry.
    pub(crate) fn predicate_value(
        &self,
        name: &str,
        args: &[(FinType, Element)],
    ) -> Result<bool, ModelError> {
        let table = self
            .predicates
            .get(name)
            .ok_or_else(|| ModelError::UnknownPredicate(name.to_string()))?;
        if table.arg_types.len() != args.len() {
            return Err(ModelError::PredicateArity {
                name: name.to_string(),
                expected: table.arg_types.len(),
                found: args.len(),
            });
        }
        let mut flat: u64 = 0;
        for (position, ((found_ty, element), expected_ty)) in
            args.iter().zip(&table.arg_types).enumerate()
        {
            if found_ty != expected_ty {
                return Err(ModelError::PredicateArgType {
                    name: name.to_string(),
                    position,
                    expected: expected_ty.clone(),
                    found: found_ty.clone(),
                });
            }
            let card = self.checked_cardinality(expected_ty)?;
            let idx = self.index_of(expected_ty, element)?;
            flat = flat * card + u64::from(idx);
        }
        Ok(table.values[flat as usize])
    }
}

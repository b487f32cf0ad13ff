//! The model description file:
//!
//! ```json
//! {
//!   "base_size": 1,
//!   "size_cap": 4096,
//!   "predicates": {
//!     "P": { "argtypes": ["0"], "table": [true, false] }
//!   },
//!   "constants": {
//!     "one": { "type": "0", "value": 1 }
//!   }
//! }
//! ```
//!
//! Predicate tables are flattened row-major over the argument domains in
//! enumeration order. Constant values are value trees: an integer at base
//! type, an array of value trees (one per domain element, enumeration order)
//! at arrow type.

use super::{Element, FiniteModel, DEFAULT_SIZE_CAP};
use crate::error::ModelFileError;
use crate::sexpr::parse_type;
use crate::syntax::FinType;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    base_size: u32,
    #[serde(default = "default_cap")]
    size_cap: u64,
    #[serde(default)]
    predicates: BTreeMap<String, PredicateFile>,
    #[serde(default)]
    constants: BTreeMap<String, ConstantFile>,
}

fn default_cap() -> u64 {
    DEFAULT_SIZE_CAP
}

#[derive(Debug, Serialize, Deserialize)]
struct PredicateFile {
    argtypes: Vec<String>,
    table: Vec<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstantFile {
    #[serde(rename = "type")]
    ty: String,
    value: serde_json::Value,
}

fn type_of(text: &str) -> Result<FinType, ModelFileError> {
    parse_type(text).map_err(|error| ModelFileError::BadType {
        text: text.to_string(),
        error,
    })
}

fn element_from_json(value: &serde_json::Value) -> Option<Element> {
    match value {
        serde_json::Value::Number(n) => Some(Element::Num(u32::try_from(n.as_u64()?).ok()?)),
        serde_json::Value::Array(items) => {
            let entries = items
                .iter()
                .map(element_from_json)
                .collect::<Option<Vec<_>>>()?;
            Some(Element::Table(entries))
        }
        _ => None,
    }
}

/// Build a model from its JSON description.
pub fn model_from_json(text: &str) -> Result<FiniteModel, ModelFileError> {
    let file: ModelFile = serde_json::from_str(text)?;
    let mut model = FiniteModel::new(file.base_size, file.size_cap);
    for (name, pred) in file.predicates {
        let arg_types = pred
            .argtypes
            .iter()
            .map(|t| type_of(t))
            .collect::<Result<Vec<_>, _>>()?;
        model = model.with_predicate(name, arg_types, pred.table)?;
    }
    for (name, constant) in file.constants {
        let ty = type_of(&constant.ty)?;
        let value =
            element_from_json(&constant.value).ok_or_else(|| ModelFileError::BadConstant {
                name: name.clone(),
                message: "value must be an integer or a nested array".to_string(),
            })?;
        model = model.with_constant(name, ty, value)?;
    }
    Ok(model)
}

/// Serialize a model back to its JSON description (built-in constants
/// included).
pub fn model_to_json(m: &FiniteModel) -> serde_json::Value {
    let predicates: BTreeMap<String, serde_json::Value> = m
        .predicates()
        .iter()
        .map(|(name, p)| {
            (
                name.clone(),
                serde_json::json!({
                    "argtypes": p.arg_types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "table": p.values,
                }),
            )
        })
        .collect();
    let constants: BTreeMap<String, serde_json::Value> = m
        .constants()
        .iter()
        .map(|(name, c)| {
            (
                name.clone(),
                serde_json::json!({
                    "type": c.ty.to_string(),
                    "value": c.value.to_json(),
                }),
            )
        })
        .collect();
    serde_json::json!({
        "base_size": m.base_size(),
        "size_cap": m.size_cap(),
        "predicates": predicates,
        "constants": constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_a_small_model() {
        let text = r#"{
            "base_size": 1,
            "size_cap": 256,
            "predicates": {
                "P": { "argtypes": ["0"], "table": [true, false] },
                "R": { "argtypes": ["0", "0"], "table": [true, false, false, true] }
            },
            "constants": {
                "one": { "type": "0", "value": 1 },
                "id": { "type": "(-> 0 0)", "value": [0, 1] }
            }
        }"#;
        let m = model_from_json(text).unwrap();
        assert_eq!(m.base_size(), 1);
        assert_eq!(m.size_cap(), 256);
        assert_eq!(m.constants()["one"].value, Element::Num(1));
        assert_eq!(
            m.constants()["id"].value,
            Element::Table(vec![Element::Num(0), Element::Num(1)])
        );
    }

    #[test]
    fn wrong_table_size_is_rejected() {
        let text = r#"{
            "base_size": 1,
            "predicates": { "P": { "argtypes": ["0"], "table": [true] } }
        }"#;
        assert!(model_from_json(text).is_err());
    }

    #[test]
    fn bad_constant_value_is_rejected() {
        let text = r#"{
            "base_size": 1,
            "constants": { "c": { "type": "0", "value": 7 } }
        }"#;
        // 7 does not inhabit {0, 1}
        assert!(model_from_json(text).is_err());
    }

    #[test]
    fn default_cap_applies() {
        let m = model_from_json(r#"{ "base_size": 1 }"#).unwrap();
        assert_eq!(m.size_cap(), DEFAULT_SIZE_CAP);
    }

    #[test]
    fn json_roundtrip_preserves_the_model() {
        let text = r#"{
            "base_size": 2,
            "size_cap": 64,
            "predicates": { "P": { "argtypes": ["0"], "table": [true, false, true] } },
            "constants": { "two": { "type": "0", "value": 2 } }
        }"#;
        let m = model_from_json(text).unwrap();
        let again = model_from_json(&model_to_json(&m).to_string()).unwrap();
        assert_eq!(again.base_size(), m.base_size());
        assert_eq!(again.size_cap(), m.size_cap());
        assert_eq!(again.predicates()["P"].values, m.predicates()["P"].values);
        assert_eq!(again.constants()["two"].value, Element::Num(2));
    }
}

//! Declarative model files.
//!
//! One JSON document describes a polarized cone: the weight matrix, the
//! relations (free / complete intersection / monomial ideal / explicit
//! numerator), the Krull dimension, optional Gorenstein data, and named Reeb
//! vectors. Exact rationals are strings like `"3/2"`; JSON numbers are float
//! mode. Validation happens here, with errors naming the offending field.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::cone::{ReebVector, WeightMatrix};
use crate::error::{Error, Result};
use crate::hilbert::{HilbertSeries, LaurentPoly, Relations, RingSpec};
use crate::scalar::{Mode, Scalar};
use crate::stability::GorensteinData;

/// A parsed and validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub ring: RingSpec,
    pub gorenstein: Option<GorensteinData>,
    pub reeb_vectors: BTreeMap<String, ReebVector>,
    pub coordinates: Vec<String>,
    pub excluded_coordinates: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: Option<String>,
    torus_rank: usize,
    weights: Vec<Vec<i64>>,
    relations: Option<Value>,
    dimension: usize,
    gorenstein_level: Option<i64>,
    theta_weight: Option<Vec<i64>>,
    coordinates: Option<Vec<String>>,
    excluded_coordinates: Option<Vec<Value>>,
    reeb_vectors: Option<BTreeMap<String, Vec<Scalar>>>,
}

impl Model {
    pub fn weights(&self) -> &WeightMatrix {
        &self.ring.weights
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.ring.hilbert_series()
    }

    pub fn coordinate_index(&self, name: &str) -> Option<usize> {
        self.coordinates.iter().position(|c| c == name)
    }

    /// Gorenstein data or a field-named error.
    pub fn gorenstein(&self) -> Result<&GorensteinData> {
        self.gorenstein.as_ref().ok_or_else(|| {
            Error::validation(
                "theta_weight",
                "this model has no Gorenstein data; supply `theta_weight` (and optionally `gorenstein_level`)",
            )
        })
    }
}

/// Parse a model file.
pub fn parse_model(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_model_str(&text).map(|mut m| {
        if m.name.is_empty() {
            m.name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        m
    })
}

/// Parse a model from JSON text.
pub fn parse_model_str(text: &str) -> Result<Model> {
    let raw: RawModel = serde_json::from_str(text).map_err(|e| Error::Parse {
        message: e.to_string(),
    })?;

    if raw.weights.len() != raw.torus_rank {
        return Err(Error::validation(
            "weights",
            format!(
                "matrix has {} rows but torus_rank is {}",
                raw.weights.len(),
                raw.torus_rank
            ),
        ));
    }
    let weights = WeightMatrix::new(raw.weights)?;
    let relations = parse_relations(raw.relations.as_ref(), &weights)?;
    let ring = RingSpec::new(weights, relations, raw.dimension)?;

    let level = raw.gorenstein_level.unwrap_or(raw.dimension as i64);
    let gorenstein = match (&raw.theta_weight, &ring.relations) {
        (Some(theta), _) => {
            if theta.len() != ring.weights.torus_rank() {
                return Err(Error::validation(
                    "theta_weight",
                    format!(
                        "has {} entries, expected torus rank {}",
                        theta.len(),
                        ring.weights.torus_rank()
                    ),
                ));
            }
            Some(GorensteinData::new(theta.clone(), level)?)
        }
        // Adjunction defaults for the classes where the volume-form weight
        // is determined by the presentation.
        (None, Relations::Free) => Some(GorensteinData::adjunction(&ring.weights, &[], level)?),
        (None, Relations::CompleteIntersection(betas)) => {
            Some(GorensteinData::adjunction(&ring.weights, betas, level)?)
        }
        (None, Relations::Principal(alpha)) => Some(GorensteinData::adjunction(
            &ring.weights,
            std::slice::from_ref(alpha),
            level,
        )?),
        (None, _) => None,
    };

    let coordinates = match raw.coordinates {
        Some(names) => {
            if names.len() != ring.weights.coordinates() {
                return Err(Error::validation(
                    "coordinates",
                    format!(
                        "{} names for {} coordinates",
                        names.len(),
                        ring.weights.coordinates()
                    ),
                ));
            }
            names
        }
        None => (1..=ring.weights.coordinates())
            .map(|i| format!("x{i}"))
            .collect(),
    };

    let excluded_coordinates = match raw.excluded_coordinates {
        None => Vec::new(),
        Some(entries) => {
            let mut out = Vec::new();
            for entry in entries {
                let index = match &entry {
                    Value::Number(n) => n.as_u64().map(|v| v as usize),
                    Value::String(s) => coordinates.iter().position(|c| c == s),
                    _ => None,
                };
                match index {
                    Some(i) if i < coordinates.len() => out.push(i),
                    _ => {
                        return Err(Error::validation(
                            "excluded_coordinates",
                            format!("unknown coordinate {entry}"),
                        ))
                    }
                }
            }
            out
        }
    };

    let mut reeb_vectors = BTreeMap::new();
    for (name, components) in raw.reeb_vectors.unwrap_or_default() {
        if components.len() != ring.weights.torus_rank() {
            return Err(Error::validation(
                format!("reeb_vectors.{name}"),
                format!(
                    "has {} components, expected torus rank {}",
                    components.len(),
                    ring.weights.torus_rank()
                ),
            ));
        }
        let vector = ReebVector::new(components)
            .map_err(|e| Error::validation(format!("reeb_vectors.{name}"), e.to_string()))?;
        reeb_vectors.insert(name, vector);
    }

    Ok(Model {
        name: raw.name.unwrap_or_default(),
        ring,
        gorenstein,
        reeb_vectors,
        coordinates,
        excluded_coordinates,
    })
}

fn parse_relations(value: Option<&Value>, weights: &WeightMatrix) -> Result<Relations> {
    let Some(value) = value else {
        return Ok(Relations::Free);
    };
    let obj = value
        .as_object()
        .ok_or_else(|| Error::validation("relations", "expected an object with a `type` tag"))?;
    let kind = obj
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| Error::validation("relations", "missing `type` tag"))?;
    match kind {
        "none" | "free" => Ok(Relations::Free),
        "ci" => {
            let betas = int_matrix(obj.get("betas"), "relations.betas")?;
            Ok(Relations::CompleteIntersection(betas))
        }
        "monomial" => {
            let gens_signed = int_matrix(obj.get("generators"), "relations.generators")?;
            let mut gens = Vec::with_capacity(gens_signed.len());
            for (i, g) in gens_signed.into_iter().enumerate() {
                let mut exps = Vec::with_capacity(g.len());
                for e in g {
                    if e < 0 {
                        return Err(Error::validation(
                            "relations.generators",
                            format!("generator {i} has a negative exponent"),
                        ));
                    }
                    exps.push(e as u32);
                }
                gens.push(exps);
            }
            Ok(Relations::MonomialIdeal(gens))
        }
        "principal" => {
            let alpha = int_vector(obj.get("weight"), "relations.weight")?;
            Ok(Relations::Principal(alpha))
        }
        "numerator" => {
            let terms = obj.get("terms").and_then(|t| t.as_array()).ok_or_else(|| {
                Error::validation("relations.terms", "expected an array of terms")
            })?;
            let mut poly_terms = Vec::with_capacity(terms.len());
            for term in terms {
                let exponent = int_vector(term.get("exponent"), "relations.terms.exponent")?;
                if exponent.len() != weights.torus_rank() {
                    return Err(Error::validation(
                        "relations.terms.exponent",
                        format!(
                            "has {} entries, expected torus rank {}",
                            exponent.len(),
                            weights.torus_rank()
                        ),
                    ));
                }
                let coefficient = term
                    .get("coefficient")
                    .and_then(|c| c.as_i64())
                    .ok_or_else(|| {
                        Error::validation("relations.terms.coefficient", "expected an integer")
                    })?;
                poly_terms.push((exponent, BigInt::from(coefficient)));
            }
            Ok(Relations::ExplicitNumerator(LaurentPoly::from_terms(
                poly_terms,
            )))
        }
        other => Err(Error::validation(
            "relations.type",
            format!(
                "unsupported relation type `{other}`; general ideals are out of scope -- use \
                 `ci` (a regular sequence of relation weights), `monomial` (generator exponents), \
                 or `numerator` (a precomputed series numerator)"
            ),
        )),
    }
}

fn int_vector(value: Option<&Value>, field: &str) -> Result<Vec<i64>> {
    let arr = value
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::validation(field, "expected an integer array"))?;
    arr.iter()
        .map(|v| {
            v.as_i64()
                .ok_or_else(|| Error::validation(field, format!("non-integer entry {v}")))
        })
        .collect()
}

fn int_matrix(value: Option<&Value>, field: &str) -> Result<Vec<Vec<i64>>> {
    let arr = value
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::validation(field, "expected an array of integer arrays"))?;
    arr.iter().map(|row| int_vector(Some(row), field)).collect()
}

/// Parse `--xi`-style input: a named model vector or a comma-separated list.
pub fn resolve_vector(model: &Model, text: &str) -> Result<ReebVector> {
    if let Some(v) = model.reeb_vectors.get(text) {
        return Ok(v.clone());
    }
    parse_csv_vector(text, model.weights().torus_rank())
}

/// Parse a comma-separated scalar list with mode inference.
pub fn parse_csv_vector(text: &str, expected_len: usize) -> Result<ReebVector> {
    let components = text
        .split(',')
        .map(Scalar::parse)
        .collect::<Result<Vec<_>>>()?;
    if components.len() != expected_len {
        return Err(Error::DimensionMismatch {
            expected: expected_len,
            found: components.len(),
        });
    }
    // Pure-integer entries inherit the mode of any fractional neighbor, so
    // that "1,2.5" parses as a float vector rather than a mode clash.
    if components.iter().any(|c| c.mode() == Mode::Float) {
        let floats: Vec<f64> = components.iter().map(|c| c.to_f64()).collect();
        return Ok(ReebVector::from_f64s(&floats));
    }
    ReebVector::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONIFOLD: &str = r#"{
        "name": "conifold",
        "torus_rank": 3,
        "weights": [[1,0,0,1],[0,1,0,1],[0,0,1,-1]],
        "relations": {"type": "ci", "betas": [[1,1,0]]},
        "dimension": 3,
        "coordinates": ["x","y","z","w"],
        "reeb_vectors": {"default": ["3/2","3/2","3/2"], "start": ["1","2","2"]}
    }"#;

    #[test]
    fn conifold_model_parses() {
        let model = parse_model_str(CONIFOLD).unwrap();
        assert_eq!(model.name, "conifold");
        assert_eq!(model.weights().coordinates(), 4);
        let g = model.gorenstein().unwrap();
        assert_eq!(g.theta, vec![1, 1, 0]);
        assert_eq!(g.level, 3);
        let xi = model.reeb_vectors.get("default").unwrap();
        assert_eq!(xi.mode(), Mode::Exact);
        assert_eq!(xi.component(0), &Scalar::exact(3, 2));
        assert_eq!(model.coordinate_index("w"), Some(3));
    }

    #[test]
    fn malformed_weights_name_the_field() {
        let text = r#"{
            "torus_rank": 2,
            "weights": [[1,0]],
            "dimension": 2
        }"#;
        let err = parse_model_str(text).unwrap_err();
        match err {
            Error::Validation { field, .. } => assert_eq!(field, "weights"),
            other => panic!("expected a validation error, got {other}"),
        }
    }

    #[test]
    fn arbitrary_ideals_are_rejected_with_guidance() {
        let text = r#"{
            "torus_rank": 1,
            "weights": [[1,1]],
            "relations": {"type": "binomial", "generators": ["x^2-y^2"]},
            "dimension": 1
        }"#;
        let err = parse_model_str(text).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("out of scope"), "{message}");
        assert!(message.contains("monomial"), "{message}");
    }

    #[test]
    fn float_vectors_infer_float_mode() {
        let text = r#"{
            "torus_rank": 2,
            "weights": [[1,0],[0,1]],
            "dimension": 2,
            "reeb_vectors": {"irrational": [1.0, 1.4142135623730951]}
        }"#;
        let model = parse_model_str(text).unwrap();
        assert_eq!(
            model.reeb_vectors.get("irrational").unwrap().mode(),
            Mode::Float
        );
    }

    #[test]
    fn mixed_mode_vectors_are_rejected() {
        let text = r#"{
            "torus_rank": 2,
            "weights": [[1,0],[0,1]],
            "dimension": 2,
            "reeb_vectors": {"bad": ["1/2", 0.5]}
        }"#;
        let err = parse_model_str(text).unwrap_err();
        match err {
            Error::Validation { field, .. } => assert_eq!(field, "reeb_vectors.bad"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn numerator_relations_round_trip() {
        let text = r#"{
            "torus_rank": 1,
            "weights": [[1,1]],
            "relations": {"type": "numerator", "terms": [
                {"exponent": [0], "coefficient": 1},
                {"exponent": [2], "coefficient": -1}
            ]},
            "dimension": 1
        }"#;
        let model = parse_model_str(text).unwrap();
        let series = model.hilbert_series().unwrap();
        assert_eq!(series.numerator, LaurentPoly::one_minus_monomial(&[2]));
    }

    #[test]
    fn csv_vectors_unify_modes() {
        let v = parse_csv_vector("1,2.5", 2).unwrap();
        assert_eq!(v.mode(), Mode::Float);
        let v = parse_csv_vector("3/2,2", 2).unwrap();
        assert_eq!(v.mode(), Mode::Exact);
        assert!(parse_csv_vector("1,2,3", 2).is_err());
    }

    #[test]
    fn excluded_coordinates_accept_names_and_indices() {
        let text = r#"{
            "torus_rank": 1,
            "weights": [[2,3,5]],
            "relations": {"type": "monomial", "generators": [[1,1,0]]},
            "dimension": 2,
            "coordinates": ["u","v","t"],
            "excluded_coordinates": ["v", 2]
        }"#;
        let model = parse_model_str(text).unwrap();
        assert_eq!(model.excluded_coordinates, vec![1, 2]);
    }
}

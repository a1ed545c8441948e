//! JSON result documents. Keys are declared in sorted order and reals are
//! printed with exactly nine decimals, so identical runs give identical
//! bytes.

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::geometry::ConvexLayers;

pub fn fixed9<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !v.is_finite() {
        return s.serialize_none();
    }
    // -0.000000000 would differ from 0.000000000 for the same value
    let v = if *v == 0.0 { 0.0 } else { *v };
    RawValue::from_string(format!("{v:.9}"))
        .map_err(S::Error::custom)?
        .serialize(s)
}

pub fn fixed9_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => fixed9(v, s),
        None => s.serialize_none(),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("result serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineDescriptor {
    pub construct: String,
    pub improve: String,
    pub improve_each_merge: bool,
    pub order: Option<String>,
    pub seed: Option<u64>,
    pub start: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    #[serde(serialize_with = "fixed9_opt")]
    pub gap_percent: Option<f64>,
    pub instance_name: String,
    pub layer_count: usize,
    #[serde(serialize_with = "fixed9")]
    pub length: f64,
    #[serde(serialize_with = "fixed9_opt")]
    pub optimum: Option<f64>,
    pub pipeline: PipelineDescriptor,
    /// Canonical order.
    pub tour: Vec<usize>,
    #[serde(serialize_with = "fixed9_opt")]
    pub wall_time_ms: Option<f64>,
}

impl SolveResult {
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayersOutput {
    pub algo: String,
    /// Layer index of each point id.
    pub depth: Vec<usize>,
    pub instance_name: String,
    pub layer_count: usize,
    pub layers: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
}

impl LayersOutput {
    pub fn new(instance_name: &str, algo: &str, layers: &ConvexLayers) -> Self {
        LayersOutput {
            algo: algo.to_string(),
            depth: layers.depth.values().copied().collect(),
            instance_name: instance_name.to_string(),
            layer_count: layers.len(),
            layers: layers.layers.iter().map(|l| l.vertex_ids.clone()).collect(),
            sizes: layers.sizes(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{McmResult, Mode};
use crate::graph::Graph;
use crate::rational::Rational;

/// Digits after the decimal point in human-readable renderings.
pub const DECIMAL_DIGITS: usize = 6;

/// Machine-readable result. Key names are stable; rationals are `{num, den}`
/// pairs in lowest terms and `per_vertex[i]` belongs to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "W")]
    pub max_weight: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u64>,
    pub global: Rational,
    pub global_decimal: String,
    pub per_vertex: Vec<Rational>,
}

impl ResultDocument {
    pub fn new(g: &Graph, result: &McmResult) -> Self {
        let approx = result.approx.as_ref();
        ResultDocument {
            n: g.n(),
            m: g.m(),
            max_weight: g.max_weight(),
            mode: result.mode,
            epsilon: approx.map(|a| a.epsilon),
            t: approx.and_then(|a| a.t),
            precision: approx.and_then(|a| a.precision),
            global: result.global,
            global_decimal: result.global.to_decimal_string(DECIMAL_DIGITS),
            per_vertex: result.per_vertex.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "global {} ({})", self.global, self.global_decimal);
        for (i, v) in self.per_vertex.iter().enumerate() {
            let _ = writeln!(
                out,
                "vertex {} {} ({})",
                i + 1,
                v,
                v.to_decimal_string(DECIMAL_DIGITS)
            );
        }
        out
    }
}

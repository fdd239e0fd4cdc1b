//! Serializable Chern-number reports shared by both backends.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::projector::AxiomReport;
use crate::exact_ring::format_fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Quad,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum C1Value {
    /// Exact value as `"p/q"` or `"p"`.
    Exact(String),
    Float(f64),
}

impl C1Value {
    pub fn exact(q: &BigRational) -> Self {
        if q.is_integer() {
            C1Value::Exact(q.numer().to_string())
        } else {
            C1Value::Exact(format_fraction(q))
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            C1Value::Exact(s) => crate::exact_ring::parse_fraction(s).ok().map(|q| crate::exact_ring::rational_to_f64(&q)),
            C1Value::Float(x) => Some(*x),
        }
    }
}

impl fmt::Display for C1Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C1Value::Exact(s) => f.write_str(s),
            C1Value::Float(x) => write!(f, "{x:.12}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomJson {
    pub idempotent: bool,
    pub hermitian: bool,
    pub trace: String,
}

impl From<&AxiomReport> for AxiomJson {
    fn from(a: &AxiomReport) -> Self {
        AxiomJson { idempotent: a.idempotent, hermitian: a.hermitian, trace: a.trace_text() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernReport {
    pub object: String,
    pub backend: Backend,
    pub c1: C1Value,
    pub axioms: AxiomJson,
    /// How the requested charge was mapped to a ket label, when applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<String>,
    /// Wall time; left out unless asked for so reruns are byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u128>,
}

impl fmt::Display for ChernReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "object = {}", self.object)?;
        if let Some(m) = &self.mapping {
            writeln!(f, "mapping = {m}")?;
        }
        let b = match self.backend {
            Backend::Exact => "exact",
            Backend::Quad => "quad",
        };
        writeln!(f, "backend = {b}")?;
        writeln!(
            f,
            "axioms: idempotent {}, hermitian {}, trace {}",
            pass(self.axioms.idempotent),
            pass(self.axioms.hermitian),
            self.axioms.trace
        )?;
        if let Some(ms) = self.ms {
            writeln!(f, "ms = {ms}")?;
        }
        write!(f, "c1 = {}", self.c1)
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

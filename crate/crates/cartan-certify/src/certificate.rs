//! Serialized certificates (JSON, schema version 1).

use crate::domain::DomainBox;
use crate::CertifyError;
use cartan_exact::rational::parse_rational;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafRecord {
    /// Bisection path from the root, see [`crate::Path`].
    pub path: String,
    /// Leaf box endpoints, redundant with `path`.
    pub bounds: Vec<[String; 2]>,
    /// Index of the margin alternative cleared on this leaf.
    pub alternative: usize,
    /// Minimum Bernstein coefficient over the required conditions.
    pub bernstein_lower: String,
    /// Taylor interval lower bound over the required conditions; the value
    /// that replay must reproduce.
    pub replay_lower: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub kind: String,
    pub fingerprint: String,
    pub vars: Vec<String>,
    pub root: Vec<[String; 2]>,
    /// Margin alternatives, as text.
    pub margins: Vec<String>,
    pub leaves: Vec<LeafRecord>,
    pub leaf_count: usize,
    pub max_depth: usize,
    pub nodes_visited: usize,
    /// Nonnegativity certificate of the radicand, for `s − t√d` goals.
    pub radicand: Option<Box<Certificate>>,
}

impl Certificate {
    pub fn root_box(&self) -> Result<DomainBox, CertifyError> {
        if self.vars.len() != self.root.len() {
            return Err(CertifyError::Malformed("root box and variables differ in length".into()));
        }
        let mut parts = Vec::new();
        for (v, [lo, hi]) in self.vars.iter().zip(&self.root) {
            let p = |s: &str| parse_rational(s).ok_or_else(|| CertifyError::Malformed(format!("bad endpoint {s}")));
            parts.push((v.as_str(), p(lo)?, p(hi)?));
        }
        DomainBox::new(&parts)
    }

    pub fn to_json(&self) -> Result<String, CertifyError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, CertifyError> {
        let c: Certificate = serde_json::from_str(s)?;
        if c.schema != SCHEMA {
            return Err(CertifyError::Malformed(format!("unsupported schema {}", c.schema)));
        }
        Ok(c)
    }
}

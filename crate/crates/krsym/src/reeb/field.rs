//! Scalar fields on mesh vertices. Values keep their decimal tokens (the
//! KR-model heights are compared textually) and get a symbolic
//! perturbation: ties break by vertex index, so all vertex values are
//! distinct in sweep order.

use super::{Mesh, ReebError};

#[derive(Clone, Debug)]
pub struct ScalarField {
    values: Vec<f64>,
    tokens: Vec<String>,
}

impl ScalarField {
    pub fn new(values: Vec<f64>) -> Result<Self, ReebError> {
        for v in &values {
            if !v.is_finite() {
                return Err(ReebError::Malformed("field value is not finite".into()));
            }
        }
        let tokens = values.iter().map(|v| format!("{v}")).collect();
        Ok(ScalarField { values, tokens })
    }

    /// One decimal per line; the count must match the mesh.
    pub fn parse(text: &str, mesh: &Mesh) -> Result<Self, ReebError> {
        let mut values = Vec::new();
        let mut tokens = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 = line
                .parse()
                .map_err(|_| ReebError::Malformed(format!("bad field value {line:?}")))?;
            if !v.is_finite() {
                return Err(ReebError::Malformed(format!("non-finite value {line:?}")));
            }
            values.push(v);
            tokens.push(format!("{v}"));
        }
        if values.len() != mesh.vertex_count() {
            return Err(ReebError::CountMismatch {
                expected: mesh.vertex_count(),
                got: values.len(),
            });
        }
        Ok(ScalarField { values, tokens })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn token(&self, v: usize) -> &str {
        &self.tokens[v]
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(t);
            out.push('\n');
        }
        out
    }
}

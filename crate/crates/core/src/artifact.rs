//! JSON forms of field elements, ring elements and codes.
//!
//! A field element is written as its coefficient list (low-to-high). On input a bare
//! integer is also accepted and read as the base-p encoding Σ c_i p^i, which for a
//! prime field is just the residue.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{CodeKind, QuasiCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Index(u32),
    Coeffs(Vec<u32>),
}

impl ElemRepr {
    pub fn from_elem(f: &Field, a: FieldElement) -> ElemRepr {
        ElemRepr::Coeffs(f.coeffs(a))
    }

    pub fn to_elem(&self, f: &Field) -> Result<FieldElement> {
        match self {
            ElemRepr::Index(i) => f.element(*i),
            ElemRepr::Coeffs(c) => f.from_coeffs(c),
        }
    }
}

/// Parses "3" (element index) or "0,1" / "[0,1]" (coefficients low-to-high).
pub fn parse_elem(f: &Field, s: &str) -> Result<FieldElement> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect();
    let nums = parts
        .iter()
        .map(|x| x.parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidInput(format!("cannot parse field element {s:?}")))?;
    match nums.as_slice() {
        [] => Err(Error::InvalidInput(format!(
            "cannot parse field element {s:?}"
        ))),
        [i] if !t.contains(',') => f.element(*i),
        _ => f.from_coeffs(&nums),
    }
}

pub fn elem_json(f: &Field, a: FieldElement) -> Value {
    json!(f.coeffs(a))
}

/// {"n": int, "lambda": elem, "coeffs": [elem, ...]}
pub fn ring_element_json(a: &RingElement) -> Value {
    let f = a.ctx().field();
    json!({
        "n": a.ctx().n(),
        "lambda": elem_json(f, a.ctx().lambda()),
        "coeffs": a.coeffs().iter().map(|&c| elem_json(f, c)).collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, Deserialize)]
struct RingElementRepr {
    n: usize,
    lambda: ElemRepr,
    coeffs: Vec<ElemRepr>,
}

pub fn ring_element_from_json(f: &Field, v: &Value) -> Result<RingElement> {
    let r: RingElementRepr = serde_json::from_value(v.clone())
        .map_err(|e| Error::InvalidInput(format!("ring element: {e}")))?;
    let ctx = RingContext::new(f, r.n, r.lambda.to_elem(f)?)?;
    ctx.element(
        r.coeffs
            .iter()
            .map(|c| c.to_elem(f))
            .collect::<Result<_>>()?,
    )
}

/// Serialized code: field, length, λ, kind and generator words.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeArtifact {
    pub field: FieldSpec,
    pub n: usize,
    pub lambda: ElemRepr,
    pub kind: CodeKind,
    pub generators: Vec<Vec<ElemRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

impl CodeArtifact {
    /// Writes the RREF basis as generators.
    pub fn from_code(code: &QuasiCode) -> CodeArtifact {
        let f = code.field();
        CodeArtifact {
            field: f.spec().clone(),
            n: code.ctx().n(),
            lambda: ElemRepr::from_elem(f, code.ctx().lambda()),
            kind: code.kind(),
            generators: code
                .words()
                .iter()
                .map(|w| w.iter().map(|&c| ElemRepr::from_elem(f, c)).collect())
                .collect(),
            metadata: None,
        }
    }

    pub fn with_metadata(mut self, metadata: Value) -> CodeArtifact {
        self.metadata = Some(metadata);
        self
    }

    /// The submodule generated by the listed words.
    pub fn to_code(&self) -> Result<QuasiCode> {
        let f = Field::from_spec(&self.field)?;
        let ctx = RingContext::new(&f, self.n, self.lambda.to_elem(&f)?)?;
        let rows = self
            .generators
            .iter()
            .map(|w| w.iter().map(|c| c.to_elem(&f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QuasiCode::generated_by(&ctx, self.kind, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes")
    }

    pub fn from_json(s: &str) -> Result<CodeArtifact> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("code artifact: {e}")))
    }
}

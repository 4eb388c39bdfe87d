//! JSON document format for describing problems to the command-line
//! interface and to batch tooling: an algebra, an element of it, a K0
//! class, a target function, and sampling parameters. Every field is
//! optional; each command states which fields it needs. Exact numbers
//! (class coordinates, breakpoints) travel as strings so nothing is
//! rounded on the way in.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

use crate::algebra::{AlgebraElement, MultiMatrixAlgebra};
use crate::k0::{GroupVariant, K0Class, K0Error};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::stepfn::{ScalarDomain, StepFnError, StepFunction, TargetFunction};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document is missing the `{0}` field required by this command")]
    Missing(&'static str),
    #[error("bad document shape: {0}")]
    Shape(String),
    #[error("bad exact number {0:?}: expected an integer or a fraction like 3/4")]
    BadNumber(String),
    #[error("unknown named target {0:?} (known: one_minus_t)")]
    UnknownTarget(String),
    #[error(transparent)]
    Class(#[from] K0Error),
    #[error(transparent)]
    Step(#[from] StepFnError),
}

/// One matrix entry: a bare number is a real entry, a two-element
/// array is [re, im].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDoc {
    Real(f64),
    Pair([f64; 2]),
}

impl EntryDoc {
    pub fn to_complex(self) -> Complex64 {
        match self {
            EntryDoc::Real(re) => Complex64::new(re, 0.0),
            EntryDoc::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// A K0 class in one of the four supported ordered groups. Exact
/// coordinates travel as canonical strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassDoc {
    /// Coordinates over Z^k, e.g. {"simplicial": [1, 0, 2]}.
    Simplicial(Vec<i64>),
    /// A dyadic rational, e.g. {"dyadic": "3/4"}.
    Dyadic(String),
    /// A rational, e.g. {"rational": "2/3"}.
    Rational(String),
    /// A lexicographic pair, e.g. {"lex": "(1; 0)"}.
    Lex(String),
}

/// A decreasing step function given by exact breakpoints and values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepDoc {
    pub breakpoints: Vec<String>,
    pub values: Vec<f64>,
}

/// A target function: either a named built-in or an explicit step.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetDoc {
    /// {"named": "one_minus_t"}
    Named(String),
    /// {"step": {"breakpoints": ["0", "1/2"], "values": [1.0, 0.0]}}
    Step(StepDoc),
}

/// The top-level input document. Unknown fields are rejected so typos
/// fail loudly instead of being ignored.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    /// Block sizes of the multi-matrix algebra, e.g. [2, 3].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Vec<usize>>,
    /// One square matrix of entries per block.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<Vec<Vec<EntryDoc>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0_class: Option<ClassDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_function: Option<TargetDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

pub fn parse_exact_rational(s: &str) -> Result<BigRational, DocError> {
    BigRational::from_str(s.trim()).map_err(|_| DocError::BadNumber(s.to_string()))
}

impl Document {
    pub fn from_json_str(s: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String, DocError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_algebra(&self) -> Result<MultiMatrixAlgebra, DocError> {
        let sizes = self.algebra.as_ref().ok_or(DocError::Missing("algebra"))?;
        MultiMatrixAlgebra::new(sizes).map_err(|e| DocError::Shape(e.to_string()))
    }

    pub fn to_element(&self) -> Result<AlgebraElement, DocError> {
        let algebra = self.to_algebra()?;
        let blocks_doc = self.element.as_ref().ok_or(DocError::Missing("element"))?;
        let mut blocks = Vec::with_capacity(blocks_doc.len());
        for (index, rows_doc) in blocks_doc.iter().enumerate() {
            let rows: Vec<Vec<Complex64>> = rows_doc
                .iter()
                .map(|row| row.iter().map(|e| e.to_complex()).collect())
                .collect();
            let matrix = ComplexMatrix::from_rows(&rows)
                .map_err(|e| DocError::Shape(format!("block {index}: {e}")))?;
            blocks.push(matrix);
        }
        AlgebraElement::from_blocks(&algebra, blocks).map_err(|e| DocError::Shape(e.to_string()))
    }

    pub fn to_class(&self) -> Result<Option<K0Class>, DocError> {
        let Some(doc) = &self.k0_class else {
            return Ok(None);
        };
        let class = match doc {
            ClassDoc::Simplicial(coords) => {
                K0Class::Simplicial(coords.iter().map(|&v| BigInt::from(v)).collect())
            }
            ClassDoc::Dyadic(s) => {
                K0Class::dyadic_from_rational(parse_exact_rational(s)?)?
            }
            ClassDoc::Rational(s) => K0Class::Rational(parse_exact_rational(s)?),
            ClassDoc::Lex(s) => K0Class::parse(s, &GroupVariant::LexPair)?,
        };
        Ok(Some(class))
    }

    pub fn to_target(&self) -> Result<Option<TargetFunction>, DocError> {
        let Some(doc) = &self.target_function else {
            return Ok(None);
        };
        let target = match doc {
            TargetDoc::Named(name) => match name.as_str() {
                "one_minus_t" => TargetFunction::one_minus_t(),
                other => return Err(DocError::UnknownTarget(other.to_string())),
            },
            TargetDoc::Step(step_doc) => {
                let breakpoints = step_doc
                    .breakpoints
                    .iter()
                    .map(|s| parse_exact_rational(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let step = StepFunction::new(breakpoints, step_doc.values.clone())?;
                TargetFunction::from_step(&step, ScalarDomain::Dyadic)?
            }
        };
        Ok(Some(target))
    }

    /// Snapshot an element (and its algebra) into document form, with
    /// every entry as an explicit [re, im] pair.
    pub fn for_element(a: &AlgebraElement) -> Self {
        let sizes = a.algebra().block_sizes().to_vec();
        let mut blocks = Vec::with_capacity(sizes.len());
        for (b, &n) in sizes.iter().enumerate() {
            let m = a.block(b);
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let z = m.get(i, j);
                    row.push(EntryDoc::Pair([z.re, z.im]));
                }
                rows.push(row);
            }
            blocks.push(rows);
        }
        Document {
            algebra: Some(sizes),
            element: Some(blocks),
            ..Document::default()
        }
    }

    /// Attach a class in document form.
    pub fn with_class(mut self, class: &K0Class) -> Self {
        self.k0_class = Some(class_doc(class));
        self
    }
}

/// Document form of a class, rendering exact coordinates canonically.
pub fn class_doc(class: &K0Class) -> ClassDoc {
    match class {
        K0Class::Simplicial(v) => ClassDoc::Simplicial(
            v.iter()
                .map(|x| i64::try_from(x.clone()).unwrap_or(i64::MAX))
                .collect(),
        ),
        K0Class::Dyadic(_) => ClassDoc::Dyadic(class.render()),
        K0Class::Rational(_) => ClassDoc::Rational(class.render()),
        K0Class::LexPair(_, _) => ClassDoc::Lex(class.render()),
    }
}

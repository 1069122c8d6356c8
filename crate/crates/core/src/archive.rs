//! Versioned JSON archives of cyclic modules.
//!
//! An archive stores exact scalars in the term-list encoding of
//! [`ScalarJson`], so writing, loading and writing again reproduces the same
//! bytes.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cell::json::{poly_from_json, poly_to_json};
use crate::cell::{CPoly, WordTermJson};
use crate::error::{Error, Result};
use crate::linear::Matrix;
use crate::phi::CyclicSubmodule;
use crate::scalar::{ContextJson, Ctx, Scalar, ScalarJson};

pub const ARCHIVE_FORMAT_VERSION: u32 = 1;

/// Which instance and which parameters produced the module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub instance: String,
    pub parameters: BTreeMap<String, String>,
}

impl Descriptor {
    pub fn new(instance: &str, parameters: &[(&str, String)]) -> Self {
        Descriptor {
            instance: instance.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVectorJson {
    pub label: String,
    pub terms: Vec<WordTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepArchive {
    pub version: u32,
    pub descriptor: Descriptor,
    pub context: ContextJson,
    /// Names of the letters used in `basis`.
    pub cell_generators: Vec<String>,
    pub basis: Vec<BasisVectorJson>,
    /// Generator names in the order of the instance.
    pub generators: Vec<String>,
    /// Column `j` holds the image of basis vector `j`.
    pub matrices: BTreeMap<String, Vec<Vec<ScalarJson>>>,
}

fn matrix_json(m: &Matrix) -> Vec<Vec<ScalarJson>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(ScalarJson::from).collect())
        .collect()
}

impl RepArchive {
    pub fn from_module(descriptor: Descriptor, module: &CyclicSubmodule) -> Self {
        let cell = module.cell();
        let gens = module.gens();
        RepArchive {
            version: ARCHIVE_FORMAT_VERSION,
            descriptor,
            context: ContextJson::from(&**gens.ctx()),
            cell_generators: cell.names().to_vec(),
            basis: module
                .basis()
                .iter()
                .map(|b| BasisVectorJson {
                    label: cell.render(b),
                    terms: poly_to_json(b),
                })
                .collect(),
            generators: gens.names().to_vec(),
            matrices: gens
                .names()
                .iter()
                .zip(module.matrices())
                .map(|(n, m)| (n.clone(), matrix_json(m)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("archive serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let a: RepArchive = serde_json::from_str(text).map_err(|e| Error::Parse(format!("archive: {e}")))?;
        if a.version != ARCHIVE_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "archive version {} is not supported (expected {ARCHIVE_FORMAT_VERSION})",
                a.version
            )));
        }
        a.decode()?;
        Ok(a)
    }

    pub fn ctx(&self) -> Result<Ctx> {
        Ok(self.context.to_context()?)
    }

    /// Basis vectors and matrices as exact values.
    pub fn decode(&self) -> Result<(Vec<CPoly>, BTreeMap<String, Matrix>)> {
        let ctx = self.ctx()?;
        let d = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| poly_from_json(&ctx, &b.terms))
            .collect::<Result<Vec<_>>>()?;
        let mut out = BTreeMap::new();
        for name in &self.generators {
            let rows = self
                .matrices
                .get(name)
                .ok_or_else(|| Error::Parse(format!("archive has no matrix for `{name}`")))?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Parse(format!("matrix for `{name}` is not {d}x{d}")));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_scalar(&ctx)).collect::<Result<Vec<Scalar>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            out.insert(name.clone(), Matrix::from_rows(&ctx, rows)?);
        }
        if out.len() != self.matrices.len() {
            return Err(Error::Parse("archive has matrices for unknown generators".into()));
        }
        Ok((basis, out))
    }

    /// Every matrix entry evaluated at a rational `q`.
    pub fn substitute_q(&self, q: &BigRational) -> Result<EvaluatedArchive> {
        let (_, mats) = self.decode()?;
        let mut matrices = BTreeMap::new();
        for (name, m) in mats {
            let rows = m
                .row_vecs()
                .iter()
                .map(|r| r.iter().map(|x| Ok(x.eval_at_q(q)?.to_string())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            matrices.insert(name, rows);
        }
        Ok(EvaluatedArchive {
            version: ARCHIVE_FORMAT_VERSION,
            descriptor: self.descriptor.clone(),
            q: q.to_string(),
            basis: self.basis.iter().map(|b| b.label.clone()).collect(),
            generators: self.generators.clone(),
            matrices,
        })
    }
}

/// An archive evaluated at rational `q`; entries are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluatedArchive {
    pub version: u32,
    pub descriptor: Descriptor,
    pub q: String,
    pub basis: Vec<String>,
    pub generators: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

impl EvaluatedArchive {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("archive serializes");
        s.push('\n');
        s
    }
}

/// A rational such as `3`, `-2/5`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("`{text}` is not a rational number")))
}

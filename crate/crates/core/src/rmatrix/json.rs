//! Matrix and structure-set files.
//!
//! Entries are exact: either the canonical text form (`"q - q^-1"`), an
//! integer, or the term-list encoding. Without a `context` the scalars live
//! in `q = v^2` with no formal parameters.

use serde::{Deserialize, Serialize};

use super::StructureSet;
use crate::error::{Error, Result};
use crate::linear::Matrix;
use crate::scalar::{parse_scalar, ContextJson, Ctx, ParameterContext, Scalar, ScalarJson};

pub const MATRIX_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Int(i64),
    Text(String),
    Exact(ScalarJson),
}

/// `{n, entries}` for an `N² × N²` matrix, rows in pair order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default = "version")]
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextJson>,
    pub entries: Vec<Vec<EntryJson>>,
}

/// An R-matrix with optional `N × N` matrix `C` defining `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    #[serde(default = "version")]
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextJson>,
    pub r: Vec<Vec<EntryJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<EntryJson>>>,
}

fn version() -> u32 {
    MATRIX_FORMAT_VERSION
}

fn context(c: &Option<ContextJson>) -> Result<Ctx> {
    Ok(match c {
        Some(c) => c.to_context()?,
        None => ParameterContext::new(&[])?,
    })
}

fn check_version(v: u32) -> Result<()> {
    if v != MATRIX_FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported matrix format version {v}")));
    }
    Ok(())
}

fn entry(ctx: &Ctx, e: &EntryJson) -> Result<Scalar> {
    Ok(match e {
        EntryJson::Int(k) => Scalar::integer(ctx, *k),
        EntryJson::Text(t) => parse_scalar(ctx, t)?,
        EntryJson::Exact(x) => x.to_scalar(ctx)?,
    })
}

fn matrix(ctx: &Ctx, rows: &[Vec<EntryJson>], size: usize, what: &str) -> Result<Matrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::Parse(format!("{what} must be {size}x{size}")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| entry(ctx, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(ctx, rows)?)
}

fn exact_rows(m: &Matrix) -> Vec<Vec<EntryJson>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| EntryJson::Exact(x.into())).collect())
        .collect()
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let n = super::side(m.rows())?;
        Ok(MatrixJson {
            version: MATRIX_FORMAT_VERSION,
            n,
            context: Some(ContextJson::from(&**m.ctx())),
            entries: exact_rows(m),
        })
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        check_version(self.version)?;
        let ctx = context(&self.context)?;
        matrix(&ctx, &self.entries, self.n * self.n, "entries")
    }

    pub fn parse(text: &str) -> Result<Matrix> {
        let j: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_matrix()
    }
}

impl StructureJson {
    pub fn from_set(s: &StructureSet) -> Self {
        StructureJson {
            version: MATRIX_FORMAT_VERSION,
            n: s.n,
            context: Some(ContextJson::from(&**s.ctx())),
            r: exact_rows(&s.r),
            c: s.c.as_ref().map(exact_rows),
        }
    }

    pub fn to_set(&self) -> Result<StructureSet> {
        check_version(self.version)?;
        let ctx = context(&self.context)?;
        let r = matrix(&ctx, &self.r, self.n * self.n, "r")?;
        let c = match &self.c {
            Some(c) => Some(matrix(&ctx, c, self.n, "c")?),
            None => None,
        };
        StructureSet::from_r(r, c)
    }

    pub fn parse(text: &str) -> Result<StructureSet> {
        let j: StructureJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_set()
    }
}

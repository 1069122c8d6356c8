use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ActionTable, CPoly, CellAlgebra, RewriteRule};
use crate::error::{Error, Result};
use crate::free::GeneratorSet;
use crate::scalar::{ContextJson, Ctx, ScalarJson};
use crate::word::Word;

pub const CELL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTermJson {
    pub word: Vec<u16>,
    pub coeff: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<u16>,
    pub rhs: Vec<WordTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntryJson {
    pub generator: String,
    pub cell: String,
    pub value: Vec<WordTermJson>,
}

/// A cell algebra definition file, optionally with an action table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDefinition {
    pub version: u32,
    pub context: ContextJson,
    pub generators: Vec<String>,
    pub rules: Vec<RuleJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<ActionEntryJson>,
}

pub(crate) fn poly_to_json(p: &CPoly) -> Vec<WordTermJson> {
    p.iter()
        .map(|(w, c)| WordTermJson {
            word: w.letters().to_vec(),
            coeff: ScalarJson::from(c),
        })
        .collect()
}

pub(crate) fn poly_from_json(ctx: &Ctx, terms: &[WordTermJson]) -> Result<CPoly> {
    let mut out = CPoly::zero();
    for t in terms {
        out.add_term(Word::from_slice(&t.word), t.coeff.to_scalar(ctx)?);
    }
    Ok(out)
}

impl CellDefinition {
    pub fn from_cell(cell: &CellAlgebra) -> Self {
        CellDefinition {
            version: CELL_FORMAT_VERSION,
            context: ContextJson::from(&**cell.ctx()),
            generators: cell.names().to_vec(),
            rules: cell
                .rules()
                .iter()
                .map(|r| RuleJson {
                    lhs: r.lhs.letters().to_vec(),
                    rhs: poly_to_json(&r.rhs),
                })
                .collect(),
            action: Vec::new(),
        }
    }

    pub fn with_action(mut self, table: &ActionTable) -> Self {
        let gens = table.gens();
        let cell = table.cell();
        for x in 0..gens.len() as u16 {
            for c in 0..cell.len() as u16 {
                self.action.push(ActionEntryJson {
                    generator: gens.name(x).to_string(),
                    cell: cell.names()[c as usize].clone(),
                    value: poly_to_json(table.entry(x, c)),
                });
            }
        }
        self
    }

    pub fn to_cell(&self) -> Result<CellAlgebra> {
        if self.version != CELL_FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported cell format version {}", self.version)));
        }
        let ctx = self.context.to_context()?;
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(RewriteRule {
                    lhs: Word::from_slice(&r.lhs),
                    rhs: poly_from_json(&ctx, &r.rhs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        CellAlgebra::new(&ctx, &names, rules)
    }

    /// The action table against `gens`, whose context must match the file's.
    pub fn to_action(&self, gens: Arc<GeneratorSet>, cell: Arc<CellAlgebra>) -> Result<ActionTable> {
        let triples = self
            .action
            .iter()
            .map(|e| Ok((e.generator.as_str(), e.cell.as_str(), poly_from_json(gens.ctx(), &e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        ActionTable::from_named(gens, cell, &triples)
    }
}

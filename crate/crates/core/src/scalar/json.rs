use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{Ctx, Laurent, ParameterContext, Scalar, ScalarError};

/// One Laurent term. Exponents are in units of the base variable `v`, so with
/// the default `q = v^2` the power `q^2` is stored as exponent 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub num: String,
    pub den: String,
}

/// A scalar as numerator and denominator term lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}

/// Variables of a [`ParameterContext`], base variable first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub variables: Vec<String>,
    pub base_root: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<AliasJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasJson {
    pub name: String,
    pub exponents: Vec<i32>,
}

impl Laurent {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .iter()
            .map(|(e, c)| TermJson {
                exponents: e.to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_json(ctx: &Ctx, terms: &[TermJson]) -> Result<Self, ScalarError> {
        let mut map = BTreeMap::new();
        for t in terms {
            if t.exponents.len() != ctx.len() {
                return Err(ScalarError::Parse(format!(
                    "term has {} exponents, context has {} variables",
                    t.exponents.len(),
                    ctx.len()
                )));
            }
            let n: BigInt = t
                .num
                .parse()
                .map_err(|_| ScalarError::Parse(format!("bad integer `{}`", t.num)))?;
            let d: BigInt = t
                .den
                .parse()
                .map_err(|_| ScalarError::Parse(format!("bad integer `{}`", t.den)))?;
            if d == BigInt::from(0) {
                return Err(ScalarError::DivisionByZero);
            }
            let e: SmallVec<[i32; 4]> = t.exponents.iter().copied().collect();
            let c = BigRational::new(n, d);
            let slot = map.entry(e).or_insert_with(|| BigRational::from_integer(0.into()));
            *slot += c;
        }
        Ok(Laurent::from_terms(ctx, map))
    }
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson {
            num: s.numer().to_json(),
            den: s.denom().to_json(),
        }
    }
}

impl ScalarJson {
    pub fn to_scalar(&self, ctx: &Ctx) -> Result<Scalar, ScalarError> {
        Scalar::from_parts(Laurent::from_json(ctx, &self.num)?, Laurent::from_json(ctx, &self.den)?)
    }
}

impl From<&ParameterContext> for ContextJson {
    fn from(c: &ParameterContext) -> Self {
        ContextJson {
            variables: c.names().to_vec(),
            base_root: c.base_root(),
            aliases: c
                .aliases()
                .iter()
                .map(|(n, e)| AliasJson {
                    name: n.clone(),
                    exponents: e.to_vec(),
                })
                .collect(),
        }
    }
}

impl ContextJson {
    pub fn to_context(&self) -> Result<Ctx, ScalarError> {
        if self.variables.first().map(String::as_str) != Some("v") {
            return Err(ScalarError::Parse("first variable must be `v`".into()));
        }
        let params: Vec<&str> = self.variables[1..].iter().map(String::as_str).collect();
        let base = ParameterContext::with_base_root(self.base_root, &params)?;
        if self.aliases.is_empty() {
            return Ok(base);
        }
        // only the unimodular alias shape is produced by this crate
        let ctx = match self.aliases.as_slice() {
            [a] if a.exponents.len() == base.len()
                && a.exponents[0] == 0
                && a.exponents[1..].iter().all(|&x| x == -1) =>
            {
                let prefix = a.name.trim_end_matches(|c: char| c.is_ascii_digit());
                let extra: Vec<&str> = params
                    .iter()
                    .copied()
                    .filter(|p| !p.starts_with(prefix))
                    .collect();
                ParameterContext::unimodular_with_base_root(self.base_root, prefix, params.len() - extra.len() + 1, &extra)?
            }
            _ => return Err(ScalarError::Parse("unsupported alias table".into())),
        };
        if ContextJson::from(&*ctx) != *self {
            return Err(ScalarError::Parse("alias table does not round-trip".into()));
        }
        Ok(ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_squared_is_exponent_four() {
        let ctx = ParameterContext::new(&[]).unwrap();
        let j = Scalar::q_pow(&ctx, 2);
        let enc = ScalarJson::from(&j);
        assert_eq!(enc.num[0].exponents, vec![4]);
        assert_eq!(
            serde_json::to_string(&enc).unwrap(),
            r#"{"num":[{"exponents":[4],"num":"1","den":"1"}],"den":[{"exponents":[0],"num":"1","den":"1"}]}"#
        );
    }

    #[test]
    fn context_round_trip() {
        let ctx = ParameterContext::unimodular("d", 3, &[]).unwrap();
        let j = ContextJson::from(&*ctx);
        assert_eq!(*j.to_context().unwrap(), *ctx);
        let plain = ParameterContext::with_base_root(6, &["s"]).unwrap();
        assert_eq!(*ContextJson::from(&*plain).to_context().unwrap(), *plain);
    }
}

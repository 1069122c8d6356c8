use std::sync::Arc;

use smallvec::SmallVec;

use super::ScalarError;

/// Exponent vector of a Laurent monomial. Slot 0 is always the base variable `v`.
pub type Exps = SmallVec<[i32; 4]>;

/// Shared handle to a [`ParameterContext`].
pub type Ctx = Arc<ParameterContext>;

/// The variables a scalar may mention.
///
/// Slot 0 is the base variable `v` with `q = v^base_root` (`base_root` is 2
/// unless a representation needs finer roots of `q`). The remaining slots are
/// invertible formal parameters such as `s = q^(sigma/2)` or the diagonal
/// entries `d1, d2, ...` of a twisting matrix.
///
/// A parameter may also be an *alias*: a name bound to a fixed monomial in the
/// free variables. This is how a unimodular diagonal `d1 d2 ... dN = 1` is kept
/// relation-free: `dN` is an alias for `(d1 ... d(N-1))^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterContext {
    names: Vec<String>,
    base_root: u32,
    aliases: Vec<(String, Exps)>,
}

impl ParameterContext {
    /// Context with `q = v^2` and the given free parameters.
    pub fn new(params: &[&str]) -> Result<Ctx, ScalarError> {
        Self::with_base_root(2, params)
    }

    pub fn with_base_root(base_root: u32, params: &[&str]) -> Result<Ctx, ScalarError> {
        if base_root == 0 {
            return Err(ScalarError::Usage("base root must be positive".into()));
        }
        let mut names = vec!["v".to_string()];
        for p in params {
            let p = p.to_string();
            if p == "q" || names.contains(&p) || !valid_name(&p) {
                return Err(ScalarError::DuplicateVariable(p));
            }
            names.push(p);
        }
        Ok(Arc::new(ParameterContext {
            names,
            base_root,
            aliases: Vec::new(),
        }))
    }

    /// Context for a unimodular diagonal `diag(d1, ..., dn)`: `d1..d(n-1)` are
    /// free and `dn` is eliminated as `(d1 ... d(n-1))^-1`.
    pub fn unimodular(prefix: &str, n: usize, extra: &[&str]) -> Result<Ctx, ScalarError> {
        Self::unimodular_with_base_root(2, prefix, n, extra)
    }

    pub fn unimodular_with_base_root(
        base_root: u32,
        prefix: &str,
        n: usize,
        extra: &[&str],
    ) -> Result<Ctx, ScalarError> {
        if n < 2 {
            return Err(ScalarError::Usage("unimodular diagonal needs n >= 2".into()));
        }
        let free: Vec<String> = (1..n).map(|i| format!("{prefix}{i}")).collect();
        let mut params: Vec<&str> = free.iter().map(String::as_str).collect();
        params.extend_from_slice(extra);
        let mut ctx = (*Self::with_base_root(base_root, &params)?).clone();
        let mut exps: Exps = SmallVec::from_elem(0, ctx.len());
        for i in 1..n {
            exps[i] = -1;
        }
        ctx.aliases.push((format!("{prefix}{n}"), exps));
        Ok(Arc::new(ctx))
    }

    /// Number of exponent slots (including `v`).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base_root(&self) -> u32 {
        self.base_root
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn aliases(&self) -> &[(String, Exps)] {
        &self.aliases
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Exponent vector for a variable or alias name. `q` maps to `v^base_root`.
    pub fn monomial_of(&self, name: &str) -> Result<Exps, ScalarError> {
        let mut exps: Exps = SmallVec::from_elem(0, self.len());
        if name == "q" {
            exps[0] = self.base_root as i32;
            return Ok(exps);
        }
        if let Some(i) = self.index_of(name) {
            exps[i] = 1;
            return Ok(exps);
        }
        if let Some((_, e)) = self.aliases.iter().find(|(n, _)| n == name) {
            return Ok(e.clone());
        }
        Err(ScalarError::UnknownVariable(name.to_string()))
    }

    pub fn zero_exps(&self) -> Exps {
        SmallVec::from_elem(0, self.len())
    }

    pub(crate) fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_alias_is_inverse_product() {
        let ctx = ParameterContext::unimodular("d", 3, &[]).unwrap();
        assert_eq!(ctx.names(), &["v", "d1", "d2"]);
        assert_eq!(ctx.monomial_of("d3").unwrap().as_slice(), &[0, -1, -1]);
        assert_eq!(ctx.monomial_of("q").unwrap().as_slice(), &[2, 0, 0]);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(ParameterContext::new(&["s", "s"]).is_err());
        assert!(ParameterContext::new(&["v"]).is_err());
        assert!(ParameterContext::new(&["q"]).is_err());
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{Ctx, Exps, ParameterContext};
use super::ScalarError;

/// Laurent polynomial with rational coefficients in the variables of a
/// [`ParameterContext`].
///
/// Canonical form: no stored coefficient is zero. Equality is equality of the
/// term maps.
#[derive(Clone)]
pub struct Laurent {
    ctx: Ctx,
    terms: BTreeMap<Exps, BigRational>,
}

impl PartialEq for Laurent {
    fn eq(&self, other: &Self) -> bool {
        ParameterContext::same(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Laurent {}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl Laurent {
    pub fn zero(ctx: &Ctx) -> Self {
        Laurent {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: &Ctx, c: BigRational) -> Self {
        Self::monomial(ctx, ctx.zero_exps(), c)
    }

    pub fn integer(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, BigRational::from_integer(n.into()))
    }

    pub fn monomial(ctx: &Ctx, exps: Exps, c: BigRational) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Laurent {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// A named variable, alias, or `q`.
    pub fn var(ctx: &Ctx, name: &str) -> Result<Self, ScalarError> {
        Ok(Self::monomial(ctx, ctx.monomial_of(name)?, BigRational::one()))
    }

    /// `v^k`.
    pub fn v_pow(ctx: &Ctx, k: i32) -> Self {
        let mut e = ctx.zero_exps();
        e[0] = k;
        Self::monomial(ctx, e, BigRational::one())
    }

    /// `q^k` for integer `k`.
    pub fn q_pow(ctx: &Ctx, k: i32) -> Self {
        Self::v_pow(ctx, k * ctx.base_root() as i32)
    }

    /// `q^(num/den)`; fails if the power is not an integral power of `v`.
    pub fn q_pow_frac(ctx: &Ctx, num: i32, den: i32) -> Result<Self, ScalarError> {
        let scaled = num * ctx.base_root() as i32;
        if den == 0 || scaled % den != 0 {
            return Err(ScalarError::Usage(format!(
                "q^({num}/{den}) is not representable with q = v^{}",
                ctx.base_root()
            )));
        }
        Ok(Self::v_pow(ctx, scaled / den))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exps, BigRational> {
        &self.terms
    }

    pub(crate) fn from_terms(ctx: &Ctx, terms: BTreeMap<Exps, BigRational>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Laurent {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value if this has no variable dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if ParameterContext::same(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(ScalarError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        Ok(Laurent {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                add_term(&mut terms, e, ca * cb);
            }
        }
        Ok(Laurent {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Laurent {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponents `shift` (coefficient 1).
    pub fn shift(&self, shift: &[i32]) -> Self {
        Laurent {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Integer power. Negative powers are defined only for monomials.
    pub fn pow(&self, k: i32) -> Result<Self, ScalarError> {
        if k < 0 {
            let (e, c) = self.single_term().ok_or(ScalarError::NotInvertible)?;
            let e: Exps = e.iter().map(|x| x * k).collect();
            let c = c.recip().pow(-k);
            return Ok(Self::monomial(&self.ctx, e, c));
        }
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub(crate) fn single_term(&self) -> Option<(&Exps, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Replace variable slot `var` by `value`. Negative powers of the variable
    /// require `value` to be a monomial.
    pub fn substitute(&self, var: usize, value: &Laurent) -> Result<Self, ScalarError> {
        self.check(value)?;
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            let k = e[var];
            let mut rest = e.clone();
            rest[var] = 0;
            let base = Self::monomial(&self.ctx, rest, c.clone());
            let factor = value.pow(k)?;
            out = &out + &(&base * &factor);
        }
        Ok(out)
    }

    /// The same polynomial in another context. Parameters are matched by name
    /// (aliases of `to` are expanded) and `v` is rescaled when `to` uses a
    /// finer root of `q`.
    pub fn transport(&self, to: &Ctx) -> Result<Self, ScalarError> {
        let from_root = self.ctx.base_root() as i32;
        let to_root = to.base_root() as i32;
        if to_root % from_root != 0 {
            return Err(ScalarError::Usage(format!(
                "cannot move q = v^{from_root} into a context with q = v^{to_root}"
            )));
        }
        // parameters that never occur need not exist in `to`
        let images: Vec<Option<Exps>> = self.ctx.names()[1..].iter().map(|n| to.monomial_of(n).ok()).collect();
        let mut map = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut out = to.zero_exps();
            out[0] = e[0] * (to_root / from_root);
            for (i, (k, img)) in e[1..].iter().zip(&images).enumerate() {
                if *k == 0 {
                    continue;
                }
                let img = img
                    .as_ref()
                    .ok_or_else(|| ScalarError::UnknownVariable(self.ctx.names()[i + 1].clone()))?;
                for (o, x) in out.iter_mut().zip(img) {
                    *o += k * x;
                }
            }
            let slot = map.entry(out).or_insert_with(BigRational::zero);
            *slot += c;
        }
        Ok(Self::from_terms(to, map))
    }

    /// Substitute a variable (or `q`/`v`) by name.
    pub fn substitute_named(&self, name: &str, value: &Laurent) -> Result<Self, ScalarError> {
        let var = self
            .ctx
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
        self.substitute(var, value)
    }

    /// Exact evaluation with a rational value for every slot.
    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational, ScalarError> {
        if values.len() != self.ctx.len() {
            return Err(ScalarError::Usage("wrong number of values".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in values.iter().zip(e.iter()) {
                if k != 0 {
                    if x.is_zero() && k < 0 {
                        return Err(ScalarError::DivisionByZero);
                    }
                    t *= x.pow(k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
    pub fn qnum(ctx: &Ctx, n: i64) -> Self {
        let m = n.unsigned_abs() as i64;
        let sign = if n < 0 { -1 } else { 1 };
        let mut out = Self::zero(ctx);
        for k in 0..m {
            let e = (m - 1 - 2 * k) as i32;
            out = &out + &Self::q_pow(ctx, e).scale(&BigRational::from_integer(sign.into()));
        }
        out
    }

    /// Evaluate at a rational `q` when only `v` appears and every power of
    /// `v` is a whole power of `q`.
    pub fn eval_at_q(&self, q: &BigRational) -> Result<BigRational, ScalarError> {
        if !self.is_univariate() {
            return Err(ScalarError::Usage(format!("{self} still depends on formal parameters")));
        }
        let root = self.ctx.base_root() as i32;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if e[0] % root != 0 {
                return Err(ScalarError::Usage(format!("{self} involves a fractional power of q")));
            }
            let k = e[0] / root;
            if q.is_zero() && k < 0 {
                return Err(ScalarError::DivisionByZero);
            }
            acc += c * q.pow(k);
        }
        Ok(acc)
    }

    /// Whether only the base variable `v` appears.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|e| e[1..].iter().all(|&x| x == 0))
    }

    /// Least exponent of each slot across all terms (zero for the zero polynomial).
    pub fn min_exponents(&self) -> Exps {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return self.ctx.zero_exps();
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Leading (largest in lex order) term.
    pub fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mono = render_monomial(&self.ctx, e);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", render_rational(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", render_rational(&abs))?,
            }
        }
        Ok(())
    }
}

fn add_term(terms: &mut BTreeMap<Exps, BigRational>, e: Exps, c: BigRational) {
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_monomial(ctx: &ParameterContext, e: &[i32]) -> String {
    let mut parts = Vec::new();
    if e[0] != 0 {
        let root = ctx.base_root() as i32;
        let g = num_integer::gcd(e[0], root);
        let (n, d) = (e[0] / g, root / g);
        parts.push(match (n, d) {
            (1, 1) => "q".to_string(),
            (n, 1) => format!("q^{n}"),
            (n, d) => format!("q^({n}/{d})"),
        });
    }
    for (name, &k) in ctx.names().iter().zip(e.iter()).skip(1) {
        match k {
            0 => {}
            1 => parts.push(name.clone()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.try_add(rhs).expect("scalar context mismatch")
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.try_add(&-rhs).expect("scalar context mismatch")
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.try_mul(rhs).expect("scalar context mismatch")
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        ParameterContext::new(&["s"]).unwrap()
    }

    fn q(ctx: &Ctx, k: i32) -> Laurent {
        Laurent::q_pow(ctx, k)
    }

    #[test]
    fn add_examples() {
        let c = ctx();
        assert_eq!((&q(&c, 1) + &q(&c, -1)).to_string(), "q + q^-1");
        let a = &q(&c, 1) - &q(&c, -1);
        let b = &q(&c, -1) - &q(&c, 1);
        assert!((&a + &b).is_zero());
        // [2] + [1] = q + 1 + q^-1
        let sum = &Laurent::qnum(&c, 2) + &Laurent::qnum(&c, 1);
        assert_eq!(sum, &(&q(&c, 1) + &Laurent::one(&c)) + &q(&c, -1));
    }

    #[test]
    fn mul_examples() {
        let c = ctx();
        assert!((&q(&c, 1) * &q(&c, -1)).is_one());
        let lhs = &Laurent::qnum(&c, 2) * &(&q(&c, 1) - &q(&c, -1));
        assert_eq!(lhs, &q(&c, 2) - &q(&c, -2));
        let s = Laurent::var(&c, "s").unwrap();
        assert!((&s.pow(2).unwrap() * &s.pow(-2).unwrap()).is_one());
    }

    #[test]
    fn qnum_examples() {
        let c = ctx();
        assert!(Laurent::qnum(&c, 0).is_zero());
        assert_eq!(Laurent::qnum(&c, 2), &q(&c, 1) + &q(&c, -1));
        assert_eq!(Laurent::qnum(&c, -1), Laurent::integer(&c, -1));
        for n in 0..=10 {
            // [n+1] = q[n] + q^-n
            let lhs = Laurent::qnum(&c, n + 1);
            let rhs = &(&q(&c, 1) * &Laurent::qnum(&c, n)) + &q(&c, -(n as i32));
            assert_eq!(lhs, rhs);
            assert_eq!(Laurent::qnum(&c, -n), -&Laurent::qnum(&c, n));
        }
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let a = Laurent::one(&ctx());
        let b = Laurent::one(&ParameterContext::new(&["t"]).unwrap());
        assert!(matches!(a.try_add(&b), Err(ScalarError::ContextMismatch)));
        assert!(matches!(a.try_mul(&b), Err(ScalarError::ContextMismatch)));
    }

    #[test]
    fn rendering() {
        let c = ctx();
        let s = Laurent::var(&c, "s").unwrap();
        let x = &(&q(&c, 2) + &Laurent::one(&c)) - &(&q(&c, -1) * &s.pow(2).unwrap()).scale(&big(3));
        assert_eq!(x.to_string(), "q^2 + 1 - 3*q^-1*s^2");
        assert_eq!(Laurent::v_pow(&c, -1).to_string(), "q^(-1/2)");
    }

    #[test]
    fn substitution_of_monomial() {
        let c = ctx();
        let s = Laurent::var(&c, "s").unwrap();
        let x = &s.pow(-2).unwrap() + &q(&c, 1);
        let y = x.substitute_named("s", &Laurent::v_pow(&c, 1)).unwrap();
        assert_eq!(y, &q(&c, -1) + &q(&c, 1));
    }
}

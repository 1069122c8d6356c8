use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::context::{Ctx, Exps};
use super::laurent::Laurent;
use super::upoly::UPoly;
use super::ScalarError;

/// Element of the fraction field of the Laurent ring, restricted to
/// denominators that are polynomials in the base variable alone.
///
/// Canonical form: the denominator is a polynomial in `v` with nonzero
/// constant term, monic in its highest power, and coprime (over `Q[v]`) to
/// the numerator. Every quotient the engine forms (`q - q^-1`, quantum
/// integers, pivots of specialized representations) has this shape; dividing
/// by something that mixes in formal parameters other than as a monomial
/// factor is reported as [`ScalarError::NonUnivariateDivisor`].
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<Laurent> for Scalar {
    fn from(num: Laurent) -> Self {
        let den = Laurent::one(num.ctx());
        Scalar { num, den }
    }
}

impl Scalar {
    pub fn zero(ctx: &Ctx) -> Self {
        Laurent::zero(ctx).into()
    }

    pub fn one(ctx: &Ctx) -> Self {
        Laurent::one(ctx).into()
    }

    pub fn integer(ctx: &Ctx, n: i64) -> Self {
        Laurent::integer(ctx, n).into()
    }

    pub fn rational(ctx: &Ctx, r: BigRational) -> Self {
        Laurent::constant(ctx, r).into()
    }

    pub fn q_pow(ctx: &Ctx, k: i32) -> Self {
        Laurent::q_pow(ctx, k).into()
    }

    pub fn v_pow(ctx: &Ctx, k: i32) -> Self {
        Laurent::v_pow(ctx, k).into()
    }

    pub fn var(ctx: &Ctx, name: &str) -> Result<Self, ScalarError> {
        Ok(Laurent::var(ctx, name)?.into())
    }

    pub fn qnum(ctx: &Ctx, n: i64) -> Self {
        Laurent::qnum(ctx, n).into()
    }

    /// `q - q^-1`.
    pub fn q_diff(ctx: &Ctx) -> Self {
        (&Laurent::q_pow(ctx, 1) - &Laurent::q_pow(ctx, -1)).into()
    }

    /// `[n - sigma] = (q^n p^-2 - q^-n p^2)/(q - q^-1)` where the parameter
    /// `p` stands for `q^(sigma/2)`.
    pub fn qnum_shifted(ctx: &Ctx, n: i64, param: &str) -> Result<Self, ScalarError> {
        let p = Laurent::var(ctx, param)?;
        let n = n as i32;
        let num = &(&Laurent::q_pow(ctx, n) * &p.pow(-2)?) - &(&Laurent::q_pow(ctx, -n) * &p.pow(2)?);
        Scalar::from(num).try_div(&Self::q_diff(ctx))
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// Build `num/den` and bring it to canonical form.
    pub fn from_parts(num: Laurent, den: Laurent) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if !crate::scalar::ParameterContext::same(num.ctx(), den.ctx()) {
            return Err(ScalarError::ContextMismatch);
        }
        // split den = m * u(v) with m a monomial
        let (m, u) = split_divisor(&den)?;
        let num = divide_by_monomial(&num, &m)?;
        Ok(normalize(num, u))
    }

    /// See [`Laurent::transport`].
    pub fn transport(&self, to: &Ctx) -> Result<Self, ScalarError> {
        Scalar::from_parts(self.num.transport(to)?, self.den.transport(to)?)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.den.is_one() && other.den.is_one() {
            return Ok(self.num.try_add(&other.num)?.into());
        }
        if self.den == other.den {
            let num = self.num.try_add(&other.num)?;
            return Ok(normalize(num, to_upoly(&self.den)));
        }
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        let den = &self.den * &other.den;
        Ok(normalize(num, to_upoly(&den)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let num = self.num.try_mul(&other.num)?;
        if self.den.is_one() && other.den.is_one() {
            return Ok(num.into());
        }
        let den = &self.den * &other.den;
        Ok(normalize(num, to_upoly(&den)))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Scalar::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Scalar {
            num: self.num.scale(c),
            den: if c.is_zero() {
                Laurent::one(self.ctx())
            } else {
                self.den.clone()
            },
        }
    }

    /// Integer power; negative powers go through [`Scalar::inv`].
    pub fn pow(&self, k: i32) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.ctx());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Replace a formal parameter by a Laurent value (monomial if it occurs
    /// with negative powers). The base variable cannot be substituted here.
    pub fn substitute(&self, var: usize, value: &Laurent) -> Result<Self, ScalarError> {
        if var == 0 {
            return Err(ScalarError::Usage(
                "the base variable is evaluated with Scalar::eval, not substituted".into(),
            ));
        }
        let num = self.num.substitute(var, value)?;
        Scalar::from_parts(num, self.den.clone())
    }

    pub fn substitute_named(&self, name: &str, value: &Laurent) -> Result<Self, ScalarError> {
        let var = self
            .ctx()
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
        self.substitute(var, value)
    }

    /// Exact rational evaluation.
    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval(values)? / d)
    }

    /// Exact value at a rational `q`; see [`Laurent::eval_at_q`].
    pub fn eval_at_q(&self, q: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval_at_q(q)?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval_at_q(q)? / d)
    }

    /// Evaluate every variable of a context where only `v` may appear.
    pub fn eval_at_v(&self, v: &BigRational) -> Result<BigRational, ScalarError> {
        let mut vals = vec![BigRational::one(); self.ctx().len()];
        vals[0] = v.clone();
        if !self.num.is_univariate() {
            return Err(ScalarError::Usage(format!(
                "scalar {self} still depends on formal parameters"
            )));
        }
        self.eval(&vals)
    }
}

/// `den = m * u(v)`, `m` a monomial (all slots), `u` a polynomial with
/// nonzero constant term.
fn split_divisor(den: &Laurent) -> Result<(Laurent, UPoly), ScalarError> {
    let ctx = den.ctx();
    let mut others: Option<&[i32]> = None;
    for e in den.terms().keys() {
        match others {
            None => others = Some(&e[1..]),
            Some(o) if o == &e[1..] => {}
            Some(_) => return Err(ScalarError::NonUnivariateDivisor(den.to_string())),
        }
    }
    let mins = den.min_exponents();
    let m = Laurent::monomial(ctx, mins.clone(), BigRational::one());
    let neg: Vec<i32> = mins.iter().map(|x| -x).collect();
    let u = to_upoly(&den.shift(&neg));
    Ok((m, u))
}

fn divide_by_monomial(num: &Laurent, m: &Laurent) -> Result<Laurent, ScalarError> {
    let (e, c) = m.single_term().ok_or(ScalarError::NotInvertible)?;
    let neg: Vec<i32> = e.iter().map(|x| -x).collect();
    Ok(num.shift(&neg).scale(&c.recip()))
}

fn to_upoly(p: &Laurent) -> UPoly {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (e, c) in p.terms() {
        debug_assert!(e[0] >= 0 && e[1..].iter().all(|&x| x == 0));
        let k = e[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] = c.clone();
    }
    UPoly(coeffs).trim()
}

fn from_upoly(ctx: &Ctx, p: &UPoly, shift: i32, others: &[i32]) -> BTreeMap<Exps, BigRational> {
    let mut out = BTreeMap::new();
    for (k, c) in p.0.iter().enumerate() {
        if !c.is_zero() {
            let mut e = ctx.zero_exps();
            e[0] = k as i32 + shift;
            e[1..].copy_from_slice(others);
            out.insert(e, c.clone());
        }
    }
    out
}

/// Group a Laurent polynomial by the non-base exponents; each group becomes a
/// polynomial in `v` after removing its least power.
fn groups(num: &Laurent) -> BTreeMap<Vec<i32>, (i32, UPoly)> {
    let mut raw: BTreeMap<Vec<i32>, Vec<(i32, BigRational)>> = BTreeMap::new();
    for (e, c) in num.terms() {
        raw.entry(e[1..].to_vec()).or_default().push((e[0], c.clone()));
    }
    raw.into_iter()
        .map(|(k, ts)| {
            let lo = ts.iter().map(|(e, _)| *e).min().unwrap();
            let hi = ts.iter().map(|(e, _)| *e).max().unwrap();
            let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
            for (e, c) in ts {
                coeffs[(e - lo) as usize] = c;
            }
            (k, (lo, UPoly(coeffs)))
        })
        .collect()
}

/// Canonicalize `num / den`, `den` a nonzero polynomial in `v` with nonzero
/// constant term.
fn normalize(num: Laurent, den: UPoly) -> Scalar {
    let ctx = num.ctx().clone();
    if num.is_zero() {
        return Scalar::zero(&ctx);
    }
    if den.is_constant() {
        let c = den.0[0].clone();
        return Scalar::from(num.scale(&c.recip()));
    }
    // the constant-term invariant may fail after products of shifted inputs
    let low = den.0.iter().take_while(|c| c.is_zero()).count();
    let (den, num) = if low > 0 {
        let mut shift = ctx.zero_exps();
        shift[0] = -(low as i32);
        (UPoly(den.0[low..].to_vec()), num.shift(&shift))
    } else {
        (den, num)
    };
    let grouped = groups(&num);
    let mut g = den.clone();
    for (_, p) in grouped.values() {
        if g.is_constant() {
            break;
        }
        g = UPoly::gcd(&g, p);
    }
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        let (d, _) = den.div_rem(&g);
        let mut terms = BTreeMap::new();
        for (others, (shift, p)) in grouped {
            let (quot, rem) = p.div_rem(&g);
            debug_assert!(rem.is_zero());
            terms.extend(from_upoly(&ctx, &quot, shift, &others));
        }
        (Laurent::from_terms(&ctx, terms), d)
    };
    let lc = den.lead().clone();
    let den = den.monic();
    let num = num.scale(&lc.recip());
    if den.is_constant() {
        return Scalar::from(num);
    }
    let den = Laurent::from_terms(&ctx, from_upoly(&ctx, &den, 0, &vec![0; ctx.len() - 1]));
    Scalar { num, den }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_with(f)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar context mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&-rhs).expect("scalar context mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar context mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParameterContext;

    fn ctx() -> Ctx {
        ParameterContext::new(&["s"]).unwrap()
    }

    #[test]
    fn q_number_fraction_reduces() {
        let c = ctx();
        let num: Scalar = (&Laurent::q_pow(&c, 2) - &Laurent::q_pow(&c, -2)).into();
        let r = num.try_div(&Scalar::q_diff(&c)).unwrap();
        assert!(r.is_laurent());
        assert_eq!(r, Scalar::qnum(&c, 2));
    }

    #[test]
    fn inverse_round_trip() {
        let c = ctx();
        let x = &Scalar::qnum(&c, 3) + &Scalar::var(&c, "s").unwrap();
        let y = Scalar::qnum(&c, 2);
        let z = x.try_div(&y).unwrap();
        assert!(!z.is_laurent());
        assert_eq!(&z * &y, x);
    }

    #[test]
    fn non_univariate_divisor_rejected() {
        let c = ctx();
        let d = &Scalar::var(&c, "s").unwrap() + &Scalar::one(&c);
        assert!(matches!(
            Scalar::one(&c).try_div(&d),
            Err(ScalarError::NonUnivariateDivisor(_))
        ));
        // monomial factors in parameters are fine
        let m = &Scalar::var(&c, "s").unwrap() * &Scalar::q_diff(&c);
        assert!(Scalar::one(&c).try_div(&m).is_ok());
    }

    #[test]
    fn shifted_qnum_specializations() {
        let c = ctx();
        let n0 = Scalar::qnum_shifted(&c, 0, "s").unwrap();
        assert_eq!(n0.to_string(), "(-q*s^2 + q*s^-2)/(q^2 - 1)");
        // sigma = 1: s = q^(1/2); [1 - 1] = 0
        let v = Laurent::v_pow(&c, 1);
        let at1 = Scalar::qnum_shifted(&c, 1, "s").unwrap().substitute_named("s", &v).unwrap();
        assert!(at1.is_zero());
        // sigma = 2: s = q; [1 - 2] = -1
        let qv = Laurent::q_pow(&c, 1);
        let at2 = Scalar::qnum_shifted(&c, 1, "s").unwrap().substitute_named("s", &qv).unwrap();
        assert_eq!(at2, Scalar::integer(&c, -1));
    }

    #[test]
    fn canonical_denominator_is_monic_with_constant_term() {
        let c = ctx();
        let x = Scalar::one(&c).try_div(&Scalar::q_diff(&c).scale(&BigRational::from_integer(3.into()))).unwrap();
        let lead = x.denom().leading().unwrap();
        assert!(lead.1.is_one());
        assert!(x.denom().min_exponents()[0] == 0);
    }
}

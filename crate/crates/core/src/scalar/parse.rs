use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Ctx, Laurent, Scalar, ScalarError};

/// Parse a scalar in the canonical text syntax, e.g. `q^2 + 1 - 3*q^-1*s^2`
/// or `(q*s^-2 - q*s^2)/(q^2 - 1)`. `q^(1/2)` and `v` both denote the base
/// root.
pub fn parse_scalar(ctx: &Ctx, text: &str) -> Result<Scalar, ScalarError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { ctx, tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ScalarError::Parse(format!("trailing input in `{text}`")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ScalarError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Ctx,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ScalarError::Parse(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                acc = acc.try_div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        let (base, is_q) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (num, den) = self.exponent()?;
        if den == 1 {
            return base.pow(num);
        }
        if is_q {
            return Ok(Laurent::q_pow_frac(self.ctx, num, den)?.into());
        }
        Err(ScalarError::Parse("fractional exponents are only allowed on q".into()))
    }

    fn int(&mut self) -> Result<i32, ScalarError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let n: i32 = n
                    .try_into()
                    .map_err(|_| ScalarError::Parse("exponent too large".into()))?;
                Ok(if neg { -n } else { n })
            }
            _ => Err(ScalarError::Parse("expected integer exponent".into())),
        }
    }

    fn exponent(&mut self) -> Result<(i32, i32), ScalarError> {
        if self.eat('(') {
            let n = self.int()?;
            let d = if self.eat('/') { self.int()? } else { 1 };
            self.expect(')')?;
            if d <= 0 {
                return Err(ScalarError::Parse("exponent denominator must be positive".into()));
            }
            let g = num_integer::gcd(n, d);
            Ok((n / g, d / g))
        } else {
            Ok((self.int()?, 1))
        }
    }

    fn atom(&mut self) -> Result<(Scalar, bool), ScalarError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((Scalar::rational(self.ctx, BigRational::from_integer(n)), false))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok((Scalar::var(self.ctx, &name)?, name == "q"))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok((e, false))
            }
            other => Err(ScalarError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

//! The free algebra on a finite generator set, with the coproduct and counit
//! extended multiplicatively from tables on the generators.

mod coideal;
pub(crate) mod text;

use std::collections::HashMap;

pub use coideal::{CertificateTerm, CoidealCertificate, Placement, SearchLimits};

use crate::comb::Comb;
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{Ctx, Scalar};
use crate::word::Word;

pub type FreeElement = Comb<Word>;
pub type TensorElement = Comb<(Word, Word)>;
pub type Tensor3 = Comb<(Word, Word, Word)>;

/// A generator or the unit.
pub type Letter = Option<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductTerm {
    pub left: Letter,
    pub right: Letter,
    pub coeff: Scalar,
}

/// Named generators with coproduct and counit tables.
///
/// Coproducts of generators are restricted to combinations of `a ⊗ b` where
/// each factor is a single generator or the unit.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    ctx: Ctx,
    names: Vec<String>,
    index: HashMap<String, u16>,
    delta: Vec<Vec<CoproductTerm>>,
    epsilon: Vec<Scalar>,
}

fn letter_word(l: Letter) -> Word {
    match l {
        Some(i) => Word::letter(i),
        None => Word::empty(),
    }
}

impl GeneratorSet {
    /// Generators with trivial tables (`Δx = 0`, `ε(x) = 0`) to be filled in.
    pub fn new(ctx: &Ctx, names: &[&str]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) || matches!(*n, "+" | "-" | "1" | "0") {
                return Err(Error::Usage(format!("invalid generator name `{n}`")));
            }
            if n.starts_with('-') || n.starts_with('(') {
                return Err(Error::Usage(format!("generator name `{n}` may not start with `-` or `(`")));
            }
            if index.insert(n.to_string(), i as u16).is_some() {
                return Err(Error::Usage(format!("generator `{n}` declared twice")));
            }
        }
        Ok(GeneratorSet {
            ctx: ctx.clone(),
            names: names.iter().map(|s| s.to_string()).collect(),
            index,
            delta: vec![Vec::new(); names.len()],
            epsilon: vec![Scalar::zero(ctx); names.len()],
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u16) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<u16> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn letter_of(&self, name: &str) -> Result<Letter> {
        if name == "1" {
            Ok(None)
        } else {
            self.index_of(name).map(Some)
        }
    }

    /// Set `Δ(name)`; `"1"` names the unit in either factor.
    pub fn set_coproduct(&mut self, name: &str, terms: &[(&str, &str, Scalar)]) -> Result<()> {
        let i = self.index_of(name)?;
        let mut out: Vec<CoproductTerm> = Vec::new();
        for (l, r, c) in terms {
            let left = self.letter_of(l)?;
            let right = self.letter_of(r)?;
            match out.iter_mut().find(|t| t.left == left && t.right == right) {
                Some(t) => t.coeff = &t.coeff + c,
                None => out.push(CoproductTerm {
                    left,
                    right,
                    coeff: c.clone(),
                }),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        self.delta[i as usize] = out;
        Ok(())
    }

    pub fn set_counit(&mut self, name: &str, value: Scalar) -> Result<()> {
        let i = self.index_of(name)?;
        self.epsilon[i as usize] = value;
        Ok(())
    }

    pub fn coproduct_table(&self, i: u16) -> &[CoproductTerm] {
        &self.delta[i as usize]
    }

    pub fn counit_of(&self, i: u16) -> &Scalar {
        &self.epsilon[i as usize]
    }

    /// `(ε⊗id)Δx = (id⊗ε)Δx = x` on every generator.
    pub fn check_counit_axiom(&self) -> Result<()> {
        for i in 0..self.len() as u16 {
            let x = self.generator(i);
            let d = self.coproduct_word(&Word::letter(i));
            let mut left = FreeElement::zero();
            let mut right = FreeElement::zero();
            for ((a, b), c) in d.iter() {
                left.add_term(b.clone(), c * &self.counit_word(a));
                right.add_term(a.clone(), c * &self.counit_word(b));
            }
            if left != x || right != x {
                let bad = if left != x { left } else { right };
                return Err(Error::Load(format!(
                    "counit axiom fails on `{}`: got {}",
                    self.name(i),
                    self.render(&bad)
                )));
            }
        }
        Ok(())
    }

    pub fn one(&self) -> FreeElement {
        FreeElement::constant(Scalar::one(&self.ctx))
    }

    pub fn generator(&self, i: u16) -> FreeElement {
        FreeElement::word(Word::letter(i), Scalar::one(&self.ctx))
    }

    pub fn named(&self, name: &str) -> Result<FreeElement> {
        Ok(self.generator(self.index_of(name)?))
    }

    pub fn scalar(&self, c: Scalar) -> FreeElement {
        FreeElement::constant(c)
    }

    /// Word from whitespace-separated generator names; `"1"` is the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut w = Vec::new();
        for n in text.split_whitespace() {
            w.push(self.index_of(n)?);
        }
        Ok(Word::from_slice(&w))
    }

    pub fn word_element(&self, text: &str) -> Result<FreeElement> {
        Ok(FreeElement::word(self.word(text)?, Scalar::one(&self.ctx)))
    }

    pub fn coproduct_letter(&self, i: u16) -> TensorElement {
        TensorElement::from_terms(
            self.delta[i as usize]
                .iter()
                .map(|t| ((letter_word(t.left), letter_word(t.right)), t.coeff.clone())),
        )
    }

    /// Multiplicative extension to a word; the empty word maps to `1⊗1`.
    pub fn coproduct_word(&self, w: &Word) -> TensorElement {
        let mut acc = TensorElement::term((Word::empty(), Word::empty()), Scalar::one(&self.ctx));
        for &i in w.letters() {
            acc = acc.mul(&self.coproduct_letter(i));
        }
        acc
    }

    pub fn coproduct(&self, a: &FreeElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in a.iter() {
            out.add_scaled(c, &self.coproduct_word(w));
        }
        out
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one(&self.ctx);
        for &i in w.letters() {
            acc = &acc * &self.epsilon[i as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit(&self, a: &FreeElement) -> Scalar {
        let mut acc = Scalar::zero(&self.ctx);
        for (w, c) in a.iter() {
            acc = &acc + &(c * &self.counit_word(w));
        }
        acc
    }

    /// `(Δ⊗id)Δ(w)`.
    pub fn coproduct_left_twice(&self, w: &Word) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((a, b), c) in self.coproduct_word(w).iter() {
            for ((a1, a2), d) in self.coproduct_word(a).iter() {
                out.add_term((a1.clone(), a2.clone(), b.clone()), c * d);
            }
        }
        out
    }

    /// `(id⊗Δ)Δ(w)`.
    pub fn coproduct_right_twice(&self, w: &Word) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((a, b), c) in self.coproduct_word(w).iter() {
            for ((b1, b2), d) in self.coproduct_word(b).iter() {
                out.add_term((a.clone(), b1.clone(), b2.clone()), c * d);
            }
        }
        out
    }

    pub fn check_coassociativity(&self, words: &[Word]) -> VerificationReport {
        let mut report = VerificationReport::new("coassoc");
        for w in words {
            let l = self.coproduct_left_twice(w);
            let r = self.coproduct_right_twice(w);
            let outcome = if l == r {
                Ok(())
            } else {
                Err(format!("{} differ", self.render_tensor3(&l.minus(&r))))
            };
            report.record(
                format!("coassoc[{}]", self.render_word(w)),
                "(Δ⊗id)Δ(w) = (id⊗Δ)Δ(w)",
                outcome,
            );
        }
        report
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&i| self.name(i)).collect::<Vec<_>>().join(" ")
    }

    pub fn render(&self, a: &FreeElement) -> String {
        text::render_comb(a.iter().map(|(w, c)| (self.render_word(w), w.is_empty(), c)))
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        text::render_comb(t.iter().map(|((a, b), c)| {
            (format!("{} ⊗ {}", self.render_word(a), self.render_word(b)), false, c)
        }))
    }

    pub fn render_tensor3(&self, t: &Tensor3) -> String {
        text::render_comb(t.iter().map(|((a, b, d), c)| {
            (
                format!("{} ⊗ {} ⊗ {}", self.render_word(a), self.render_word(b), self.render_word(d)),
                false,
                c,
            )
        }))
    }

    pub fn parse(&self, input: &str) -> Result<FreeElement> {
        text::parse_comb(&self.ctx, input, |names| {
            let mut w = Vec::with_capacity(names.len());
            for n in names {
                w.push(self.index_of(n)?);
            }
            Ok(Word::from_slice(&w))
        })
    }
}

#[cfg(test)]
mod tests;

//! The module algebra: a finitely presented algebra given by a terminating
//! rewriting system on words, together with the left action of the free
//! algebra on it.

mod action;
pub(crate) mod json;

use std::collections::HashMap;
use std::sync::Mutex;

pub use action::ActionTable;
pub use json::{ActionEntryJson, CellDefinition, RuleJson, WordTermJson};

use crate::comb::Comb;
use crate::error::{Error, Result};
use crate::free::text;
use crate::linear::Echelon;
use crate::report::VerificationReport;
use crate::scalar::{Ctx, Scalar};
use crate::word::Word;

/// An element of the module algebra in normal form.
pub type CPoly = Comb<Word>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: CPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

const DEFAULT_BUDGET: usize = 200_000;

/// Generators and rewrite rules. Every rule replaces a word of length at
/// least two by a combination of strictly smaller words, so rewriting
/// terminates.
#[derive(Debug)]
pub struct CellAlgebra {
    ctx: Ctx,
    names: Vec<String>,
    index: HashMap<String, u16>,
    rules: Vec<RewriteRule>,
    by_lhs: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    budget: usize,
    memo: Mutex<HashMap<Word, CPoly>>,
}

impl Clone for CellAlgebra {
    fn clone(&self) -> Self {
        CellAlgebra::new(&self.ctx, &self.name_refs(), self.rules.clone()).expect("rules were valid")
    }
}

impl CellAlgebra {
    pub fn new(ctx: &Ctx, names: &[&str], rules: Vec<RewriteRule>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '^') || n.starts_with(['-', '(']) {
                return Err(Error::Usage(format!("invalid cell generator name `{n}`")));
            }
            if index.insert(n.to_string(), i as u16).is_some() {
                return Err(Error::Usage(format!("cell generator `{n}` declared twice")));
            }
        }
        let mut by_lhs = HashMap::new();
        for (k, r) in rules.iter().enumerate() {
            if r.lhs.len() < 2 {
                return Err(Error::Load(format!("rule lhs {:?} is shorter than two letters", r.lhs)));
            }
            if r.lhs.letters().iter().chain(r.rhs.keys().flat_map(|w| w.letters())).any(|&i| i as usize >= names.len()) {
                return Err(Error::Load(format!("rule {k} uses an undeclared generator")));
            }
            if let Some(w) = r.rhs.keys().find(|w| **w >= r.lhs) {
                return Err(Error::Load(format!(
                    "rule {k} rewrites {:?} to the larger or equal word {:?}",
                    r.lhs, w
                )));
            }
            if by_lhs.insert(r.lhs.clone(), k).is_some() {
                return Err(Error::Load(format!("two rules share the lhs {:?}", r.lhs)));
            }
        }
        let mut lhs_lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lhs_lengths.sort_unstable();
        lhs_lengths.dedup();
        Ok(CellAlgebra {
            ctx: ctx.clone(),
            names: names.iter().map(|s| s.to_string()).collect(),
            index,
            rules,
            by_lhs,
            lhs_lengths,
            budget: DEFAULT_BUDGET,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Rules read off from relations: each relation is solved for its
    /// largest word after mutual reduction.
    pub fn from_relations(ctx: &Ctx, names: &[&str], relations: &[Comb<Word>]) -> Result<Self> {
        let mut e: Echelon<Word> = Echelon::new();
        for (i, r) in relations.iter().enumerate() {
            e.insert(r.terms().clone(), i)?;
        }
        let mut rules = Vec::new();
        for (pivot, row) in e.reduced_rows() {
            if pivot.len() < 2 {
                let shown = Comb::from_sparse(row);
                return Err(Error::NoLeadingTerm(format!(
                    "{} (leading word has length {})",
                    render_cpoly(names, &shown),
                    pivot.len()
                )));
            }
            let mut rhs = Comb::from_sparse(row);
            rhs = Comb::term(pivot.clone(), Scalar::one(ctx)).minus(&rhs);
            rules.push(RewriteRule { lhs: pivot, rhs });
        }
        Self::new(ctx, names, rules)
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn index_of(&self, name: &str) -> Result<u16> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn one(&self) -> CPoly {
        CPoly::constant(Scalar::one(&self.ctx))
    }

    pub fn generator(&self, i: u16) -> CPoly {
        CPoly::word(Word::letter(i), Scalar::one(&self.ctx))
    }

    pub fn named(&self, name: &str) -> Result<CPoly> {
        Ok(self.generator(self.index_of(name)?))
    }

    pub fn constant(&self, c: Scalar) -> CPoly {
        CPoly::constant(c)
    }

    fn find_redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize, usize)> {
        let n = w.len();
        let starts: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..n),
            Strategy::Rightmost => Box::new((0..n).rev()),
        };
        for s in starts {
            for &l in &self.lhs_lengths {
                if s + l <= n {
                    if let Some(&k) = self.by_lhs.get(&w.slice(s, s + l)) {
                        return Some((s, l, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    fn normalize_word_with(
        &self,
        w: &Word,
        strategy: Strategy,
        memo: &mut HashMap<Word, CPoly>,
        steps: &mut usize,
    ) -> Result<CPoly> {
        if let Some(v) = memo.get(w) {
            return Ok(v.clone());
        }
        let out = match self.find_redex(w, strategy) {
            None => CPoly::word(w.clone(), Scalar::one(&self.ctx)),
            Some((s, l, k)) => {
                *steps += 1;
                if *steps > self.budget {
                    return Err(Error::RewriteBudget(self.render_word(w)));
                }
                let prefix = w.slice(0, s);
                let suffix = w.slice(s + l, w.len());
                let mut acc = CPoly::zero();
                for (m, c) in self.rules[k].rhs.iter() {
                    let next = prefix.concat(m).concat(&suffix);
                    let nf = self.normalize_word_with(&next, strategy, memo, steps)?;
                    acc.add_scaled(c, &nf);
                }
                acc
            }
        };
        memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Normal form of a single word (leftmost strategy, memoized).
    pub fn normalize_word(&self, w: &Word) -> Result<CPoly> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(v.clone());
        }
        let mut local = HashMap::new();
        let mut steps = 0;
        let out = self.normalize_word_with(w, Strategy::Leftmost, &mut local, &mut steps)?;
        self.memo.lock().expect("memo lock").extend(local);
        Ok(out)
    }

    pub fn normalize(&self, x: &Comb<Word>) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for (w, c) in x.iter() {
            out.add_scaled(c, &self.normalize_word(w)?);
        }
        Ok(out)
    }

    /// Product of normal forms.
    pub fn mul(&self, a: &CPoly, b: &CPoly) -> Result<CPoly> {
        if a.is_zero() || b.is_zero() {
            return Ok(CPoly::zero());
        }
        if let Some(c) = a.as_constant() {
            return Ok(b.scale(&c));
        }
        if let Some(c) = b.as_constant() {
            return Ok(a.scale(&c));
        }
        let mut out = CPoly::zero();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                out.add_scaled(&(x * y), &self.normalize_word(&u.concat(v))?);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &CPoly, k: usize) -> Result<CPoly> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// All normal words of length `len`.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        Word::all_of_length(self.len() as u16, len)
            .into_iter()
            .filter(|w| self.is_normal(w))
            .collect()
    }

    /// Rewrite every word up to `max_degree` with the leftmost and the
    /// rightmost strategy and compare the results.
    pub fn confluence_probe(&self, max_degree: usize) -> VerificationReport {
        let mut report = VerificationReport::new("confluence");
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        let mut disagreements = Vec::new();
        let mut count = 0;
        for w in Word::all_up_to(self.len() as u16, max_degree) {
            count += 1;
            let mut s1 = 0;
            let mut s2 = 0;
            let a = self.normalize_word_with(&w, Strategy::Leftmost, &mut left, &mut s1);
            let b = self.normalize_word_with(&w, Strategy::Rightmost, &mut right, &mut s2);
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => disagreements.push(format!(
                    "{}: leftmost {} vs rightmost {}",
                    self.render_word(&w),
                    self.render(&a),
                    self.render(&b)
                )),
                (Err(e), _) | (_, Err(e)) => disagreements.push(format!("{}: {e}", self.render_word(&w))),
            }
        }
        let id = format!("confluence[degree<={max_degree}]");
        let identity = format!("leftmost and rightmost normal forms agree on {count} words");
        if disagreements.is_empty() {
            report.pass(id, identity);
        } else {
            report.fail(id, identity, disagreements.join("; "));
        }
        report
    }

    pub fn render_word(&self, w: &Word) -> String {
        render_word(&self.names, w)
    }

    pub fn render(&self, x: &CPoly) -> String {
        let names: Vec<&str> = self.name_refs();
        render_cpoly(&names, x)
    }

    /// Parse and normalize; `name^k` abbreviates `k` repeated letters.
    pub fn parse(&self, input: &str) -> Result<CPoly> {
        let raw = text::parse_comb(&self.ctx, input, |toks| {
            let mut w = Vec::new();
            for t in toks {
                let (name, k) = match t.rsplit_once('^') {
                    Some((n, e)) if e.chars().all(|c| c.is_ascii_digit()) && !e.is_empty() => {
                        (n, e.parse::<usize>().map_err(|_| Error::Parse(t.to_string()))?)
                    }
                    _ => (*t, 1),
                };
                let i = self.index_of(name)?;
                w.extend(std::iter::repeat_n(i, k));
            }
            Ok(Word::from_slice(&w))
        })?;
        self.normalize(&raw)
    }
}

fn render_word<S: AsRef<str>>(names: &[S], w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let n = names[letters[i] as usize].as_ref();
        if j - i == 1 {
            parts.push(n.to_string());
        } else {
            parts.push(format!("{n}^{}", j - i));
        }
        i = j;
    }
    parts.join(" ")
}

pub(crate) fn render_cpoly<S: AsRef<str>>(names: &[S], x: &CPoly) -> String {
    text::render_comb(x.iter().map(|(w, c)| (render_word(names, w), w.is_empty(), c)))
}

#[cfg(test)]
mod tests;

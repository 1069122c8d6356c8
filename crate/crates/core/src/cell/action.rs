use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::free::{FreeElement, GeneratorSet, Letter};
use crate::report::VerificationReport;
use crate::word::Word;

/// The action of each free-algebra generator on each cell generator,
/// extended to monomials by the Leibniz rule along the coproduct and to words
/// by composition.
#[derive(Debug)]
pub struct ActionTable {
    gens: Arc<GeneratorSet>,
    cell: Arc<CellAlgebra>,
    entries: Vec<Vec<CPoly>>,
    memo: Mutex<HashMap<(u16, Word), CPoly>>,
}

impl Clone for ActionTable {
    fn clone(&self) -> Self {
        ActionTable {
            gens: self.gens.clone(),
            cell: self.cell.clone(),
            entries: self.entries.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl ActionTable {
    /// `entries[x][c]` is the action of generator `x` on cell generator `c`.
    pub fn new(gens: Arc<GeneratorSet>, cell: Arc<CellAlgebra>, entries: Vec<Vec<CPoly>>) -> Result<Self> {
        if entries.len() != gens.len() || entries.iter().any(|row| row.len() != cell.len()) {
            return Err(Error::MissingAction(format!(
                "table must be {} x {}",
                gens.len(),
                cell.len()
            )));
        }
        let entries = entries
            .iter()
            .map(|row| row.iter().map(|p| cell.normalize(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let table = ActionTable {
            gens,
            cell,
            entries,
            memo: Mutex::new(HashMap::new()),
        };
        table.check_unit_law()?;
        Ok(table)
    }

    /// Build from `(generator, cell generator, value)` triples; every pair must
    /// be present. A cell name of `"1"` gives the value on the unit, which is
    /// checked against the counit.
    pub fn from_named(
        gens: Arc<GeneratorSet>,
        cell: Arc<CellAlgebra>,
        triples: &[(&str, &str, CPoly)],
    ) -> Result<Self> {
        let mut slots: Vec<Vec<Option<CPoly>>> = vec![vec![None; cell.len()]; gens.len()];
        let mut units = Vec::new();
        for (x, c, v) in triples {
            let i = gens.index_of(x)? as usize;
            if *c == "1" {
                units.push((i, v.clone()));
                continue;
            }
            let j = cell.index_of(c)? as usize;
            slots[i][j] = Some(v.clone());
        }
        let mut entries = Vec::new();
        for (i, row) in slots.into_iter().enumerate() {
            let mut out = Vec::new();
            for (j, v) in row.into_iter().enumerate() {
                out.push(v.ok_or_else(|| {
                    Error::MissingAction(format!("{} on {}", gens.name(i as u16), cell.names()[j]))
                })?);
            }
            entries.push(out);
        }
        let table = Self::new(gens, cell, entries)?;
        for (i, v) in units {
            let expected = table.cell.constant(table.gens.counit_of(i as u16).clone());
            if table.cell.normalize(&v)? != expected {
                return Err(Error::Load(format!(
                    "action of {} on 1 is {}, expected the counit {}",
                    table.gens.name(i as u16),
                    table.cell.render(&v),
                    table.cell.render(&expected)
                )));
            }
        }
        Ok(table)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn cell(&self) -> &Arc<CellAlgebra> {
        &self.cell
    }

    pub fn entry(&self, x: u16, c: u16) -> &CPoly {
        &self.entries[x as usize][c as usize]
    }

    /// `ξ_x·1 = ε(x)·1` for every generator.
    pub fn check_unit_law(&self) -> Result<()> {
        for x in 0..self.gens.len() as u16 {
            let got = self.act_gen_word(x, &Word::empty())?;
            let want = self.cell.constant(self.gens.counit_of(x).clone());
            if got != want {
                return Err(Error::Load(format!("unit law fails for {}", self.gens.name(x))));
            }
        }
        Ok(())
    }

    /// Action of generator `x` on an arbitrary (not necessarily normal) word
    /// of cell generators, by the Leibniz rule on the leftmost letter.
    pub fn act_gen_word(&self, x: u16, w: &Word) -> Result<CPoly> {
        let key = (x, w.clone());
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let out = if w.is_empty() {
            self.cell.constant(self.gens.counit_of(x).clone())
        } else {
            let head = w.letters()[0];
            let rest = w.slice(1, w.len());
            let mut acc = CPoly::zero();
            for t in self.gens.coproduct_table(x) {
                let a = match t.left {
                    Some(a) => self.entries[a as usize][head as usize].clone(),
                    None => self.cell.generator(head),
                };
                if a.is_zero() {
                    continue;
                }
                let b = self.act_letter_word(t.right, &rest)?;
                acc.add_scaled(&t.coeff, &self.cell.mul(&a, &b)?);
            }
            acc
        };
        self.memo.lock().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }

    fn act_letter_word(&self, l: Letter, w: &Word) -> Result<CPoly> {
        match l {
            Some(x) => self.act_gen_word(x, w),
            None => self.cell.normalize_word(w),
        }
    }

    pub fn act_gen(&self, x: u16, f: &CPoly) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for (w, c) in f.iter() {
            out.add_scaled(c, &self.act_gen_word(x, w)?);
        }
        Ok(out)
    }

    pub fn act_letter(&self, l: Letter, f: &CPoly) -> Result<CPoly> {
        match l {
            Some(x) => self.act_gen(x, f),
            None => Ok(f.clone()),
        }
    }

    /// Words act by composition, rightmost letter first.
    pub fn act_word(&self, w: &Word, f: &CPoly) -> Result<CPoly> {
        let mut cur = f.clone();
        for &x in w.letters().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act_gen(x, &cur)?;
        }
        Ok(cur)
    }

    pub fn act(&self, x: &FreeElement, f: &CPoly) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for (w, c) in x.iter() {
            out.add_scaled(c, &self.act_word(w, f)?);
        }
        Ok(out)
    }

    /// `ξ_x(ξ_y f) = ξ_{xy} f`, with the right side computed from the
    /// coproduct of the whole word `xy` on each monomial of `f`.
    pub fn check_module_law(&self, samples: &[(Word, Word, CPoly)]) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("module-law");
        for (k, (x, y, f)) in samples.iter().enumerate() {
            let lhs = self.act_word(x, &self.act_word(y, f)?)?;
            let rhs = self.act_word_by_coproduct(&x.concat(y), f)?;
            report.record(
                format!("module-law[{k}]"),
                format!(
                    "ξ({})ξ({})·({}) = ξ({} {})·({})",
                    self.gens.render_word(x),
                    self.gens.render_word(y),
                    self.cell.render(f),
                    self.gens.render_word(x),
                    self.gens.render_word(y),
                    self.cell.render(f)
                ),
                diff(&self.cell, &lhs, &rhs),
            );
        }
        Ok(report)
    }

    /// Action of a word through the Leibniz rule on the coproduct of the
    /// whole word: `ξ_w(c·m) = Σ (ξ_{w(1)} c)(ξ_{w(2)} m)`.
    pub fn act_word_by_coproduct(&self, w: &Word, f: &CPoly) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for (m, c) in f.iter() {
            out.add_scaled(c, &self.act_word_on_monomial(w, m)?);
        }
        Ok(out)
    }

    fn act_word_on_monomial(&self, w: &Word, m: &Word) -> Result<CPoly> {
        if m.is_empty() {
            return Ok(self.cell.constant(self.gens.counit_word(w)));
        }
        if w.is_empty() {
            return self.cell.normalize_word(m);
        }
        let head = self.cell.generator(m.letters()[0]);
        let rest = m.slice(1, m.len());
        let mut out = CPoly::zero();
        for ((a, b), c) in self.gens.coproduct_word(w).iter() {
            let left = self.act_word(a, &head)?;
            if left.is_zero() {
                continue;
            }
            let right = self.act_word_on_monomial(b, &rest)?;
            out.add_scaled(c, &self.cell.mul(&left, &right)?);
        }
        Ok(out)
    }

    /// `ξ_x(fg) = Σ (ξ_{x(1)} f)(ξ_{x(2)} g)` for a single generator `x`.
    pub fn check_leibniz(&self, samples: &[(u16, CPoly, CPoly)]) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("leibniz");
        for (k, (x, f, g)) in samples.iter().enumerate() {
            let lhs = self.act_gen(*x, &self.cell.mul(f, g)?)?;
            let mut rhs = CPoly::zero();
            for t in self.gens.coproduct_table(*x) {
                let a = self.act_letter(t.left, f)?;
                let b = self.act_letter(t.right, g)?;
                rhs.add_scaled(&t.coeff, &self.cell.mul(&a, &b)?);
            }
            report.record(
                format!("leibniz[{k}]"),
                format!(
                    "ξ({})·(({})({})) = Σ (ξ·f)(ξ·g)",
                    self.gens.name(*x),
                    self.cell.render(f),
                    self.cell.render(g)
                ),
                diff(&self.cell, &lhs, &rhs),
            );
        }
        Ok(report)
    }

    /// Every relation acts as zero on every probe.
    pub fn check_relations_kill(&self, relations: &[FreeElement], probes: &[CPoly]) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("relations-kill");
        for (i, r) in relations.iter().enumerate() {
            let mut bad = Vec::new();
            for f in probes {
                let v = self.act(r, f)?;
                if !v.is_zero() {
                    bad.push(format!("on {}: {}", self.cell.render(f), self.cell.render(&v)));
                }
            }
            report.record(
                format!("relations-kill[{i}]"),
                format!("ξ({}) = 0 on {} probes", self.gens.render(r), probes.len()),
                if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) },
            );
        }
        Ok(report)
    }

    /// The action respects the cell relations: acting on a raw word agrees
    /// with acting on its normal form.
    pub fn check_cell_compatibility(&self, max_degree: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("cell-compatibility");
        let words = Word::all_up_to(self.cell.len() as u16, max_degree);
        for x in 0..self.gens.len() as u16 {
            let mut bad = Vec::new();
            for w in &words {
                if self.cell.is_normal(w) {
                    continue;
                }
                let raw = self.act_gen_word(x, w)?;
                let nf = self.act_gen(x, &self.cell.normalize_word(w)?)?;
                if raw != nf {
                    bad.push(self.cell.render_word(w));
                }
            }
            report.record(
                format!("cell-compatibility[{}]", self.gens.name(x)),
                format!("ξ({}) preserves the cell relations up to degree {max_degree}", self.gens.name(x)),
                if bad.is_empty() { Ok(()) } else { Err(format!("differs on {}", bad.join(", "))) },
            );
        }
        Ok(report)
    }
}

pub(crate) fn diff(cell: &CellAlgebra, lhs: &CPoly, rhs: &CPoly) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "lhs {} ; rhs {} ; difference {}",
            cell.render(lhs),
            cell.render(rhs),
            cell.render(&lhs.minus(rhs))
        ))
    }
}

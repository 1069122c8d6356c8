use std::sync::Arc;

use super::{PhiMap, RelationSet};
use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::Result;
use crate::free::{FreeElement, GeneratorSet};
use crate::report::VerificationReport;
use crate::word::Word;

/// `x·f = Σ (ξ_{x(1)}·f) φ(x(2))`.
#[derive(Debug, Clone)]
pub struct TwistedAction {
    phi: Arc<PhiMap>,
}

fn outcome(cell: &CellAlgebra, lhs: &CPoly, rhs: &CPoly) -> Result<(), String> {
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

impl TwistedAction {
    pub fn new(phi: Arc<PhiMap>) -> Self {
        TwistedAction { phi }
    }

    pub fn phi(&self) -> &Arc<PhiMap> {
        &self.phi
    }

    pub fn table(&self) -> &Arc<ActionTable> {
        self.phi.table()
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        self.phi.gens()
    }

    pub fn cell(&self) -> &Arc<CellAlgebra> {
        self.phi.cell()
    }

    pub fn act_gen(&self, x: u16, f: &CPoly) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for t in self.gens().coproduct_table(x) {
            let b = match t.right {
                Some(i) => self.phi.value(i).clone(),
                None => self.cell().one(),
            };
            if b.is_zero() {
                continue;
            }
            let a = self.table().act_letter(t.left, f)?;
            out.add_scaled(&t.coeff, &self.cell().mul(&a, &b)?);
        }
        Ok(out)
    }

    /// The defining formula with the coproduct of the whole word.
    pub fn act_word(&self, w: &Word, f: &CPoly) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for ((a, b), c) in self.gens().coproduct_word(w).iter() {
            let right = self.phi.extend_phi(b)?;
            if right.is_zero() {
                continue;
            }
            let left = self.table().act_word(a, f)?;
            out.add_scaled(c, &self.cell().mul(&left, &right)?);
        }
        Ok(out)
    }

    /// Letter by letter, rightmost first.
    pub fn act_word_composed(&self, w: &Word, f: &CPoly) -> Result<CPoly> {
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

    /// `φ(x) = x·1`.
    pub fn extract_phi(&self, x: &FreeElement) -> Result<CPoly> {
        self.act(x, &self.cell().one())
    }

    /// `x·(fg) = Σ (ξ_{x(1)}·f)(x(2)·g)`.
    pub fn check_generalized_leibniz(&self, samples: &[(Word, CPoly, CPoly)]) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("leibniz");
        let cell = self.cell();
        for (k, (x, f, g)) in samples.iter().enumerate() {
            let lhs = self.act_word(x, &cell.mul(f, g)?)?;
            let mut rhs = CPoly::zero();
            for ((a, b), c) in self.gens().coproduct_word(x).iter() {
                let left = self.table().act_word(a, f)?;
                if left.is_zero() {
                    continue;
                }
                let right = self.act_word(b, g)?;
                rhs.add_scaled(c, &cell.mul(&left, &right)?);
            }
            report.record(
                format!("leibniz[{k}]"),
                format!(
                    "{}·(({})({})) = Σ (ξ_(1)·f)(x(2)·g)",
                    self.gens().render_word(x),
                    cell.render(f),
                    cell.render(g)
                ),
                outcome(cell, &lhs, &rhs),
            );
        }
        Ok(report)
    }

    /// `x·(y·f) = (xy)·f`, and every relation acts as zero on every probe.
    pub fn check_twisted_module_law(
        &self,
        samples: &[(Word, Word, CPoly)],
        relations: &RelationSet,
        probes: &[CPoly],
    ) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("module-law");
        let cell = self.cell();
        for (k, (x, y, f)) in samples.iter().enumerate() {
            let lhs = self.act_word(x, &self.act_word(y, f)?)?;
            let rhs = self.act_word(&x.concat(y), f)?;
            report.record(
                format!("module-law[{k}]"),
                format!(
                    "{}·({}·({})) = ({} {})·({})",
                    self.gens().render_word(x),
                    self.gens().render_word(y),
                    cell.render(f),
                    self.gens().render_word(x),
                    self.gens().render_word(y),
                    cell.render(f)
                ),
                outcome(cell, &lhs, &rhs),
            );
        }
        for (i, r) in relations.relations().iter().enumerate() {
            let mut bad = Vec::new();
            for f in probes {
                let v = self.act(r, f)?;
                if !v.is_zero() {
                    bad.push(format!("on {}: {}", cell.render(f), cell.render(&v)));
                }
            }
            report.record(
                format!("relation-acts-as-zero[{i}]"),
                format!("({})·f = 0 on {} probes", self.gens().render(r), probes.len()),
                if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) },
            );
        }
        Ok(report)
    }

    /// `w·1 = φ(w)` for every word up to `max_len`.
    pub fn check_unit_values(&self, max_len: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("unit-values");
        let one = self.cell().one();
        let mut bad = Vec::new();
        let words = Word::all_up_to(self.gens().len() as u16, max_len);
        for w in &words {
            if self.act_word(w, &one)? != self.phi.extend_phi(w)? {
                bad.push(self.gens().render_word(w));
            }
        }
        report.record(
            format!("unit-values[len<={max_len}]"),
            format!("w·1 = φ(w) on {} words", words.len()),
            if bad.is_empty() { Ok(()) } else { Err(bad.join(", ")) },
        );
        Ok(report)
    }
}

/// With the counit as the twisting map the twisted action is the base action.
pub fn check_trivial_character(table: Arc<ActionTable>, samples: &[(Word, CPoly)]) -> Result<VerificationReport> {
    let twisted = TwistedAction::new(Arc::new(PhiMap::trivial(table.clone())));
    let cell = table.cell().clone();
    let mut report = VerificationReport::new("trivial-character");
    for (k, (x, f)) in samples.iter().enumerate() {
        let lhs = twisted.act_word(x, f)?;
        let rhs = table.act_word(x, f)?;
        report.record(
            format!("trivial-character[{k}]"),
            format!("{}·({}) = ξ·f with φ = ε", table.gens().render_word(x), cell.render(f)),
            outcome(&cell, &lhs, &rhs),
        );
    }
    Ok(report)
}

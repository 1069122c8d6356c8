//! Twisting maps from the free algebra into the module algebra, and the
//! twisted module structure they induce.
//!
//! A map is prescribed on generators and extended to words by peeling the
//! leftmost letter `x` of `xy`:
//! `φ(xy) = Σ (ξ_{x(1)}·φ(y)) φ(x(2))`.
//! The twisted action is `x·f = Σ (ξ_{x(1)}·f) φ(x(2))`.

mod cyclic;
mod twisted;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use cyclic::{build_cyclic_submodule, Closure, CyclicSubmodule};
pub use twisted::{check_trivial_character, TwistedAction};

use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::free::{CoidealCertificate, FreeElement, GeneratorSet, Letter};
use crate::report::VerificationReport;
use crate::scalar::{Laurent, Scalar};
use crate::word::Word;

/// A relation set, with coideal certificates once [`RelationSet::certify`]
/// has succeeded. The relations double as the closure set of the
/// certificates.
#[derive(Debug, Clone)]
pub struct RelationSet {
    relations: Vec<FreeElement>,
    certificates: Option<Vec<CoidealCertificate>>,
}

impl RelationSet {
    pub fn uncertified(relations: Vec<FreeElement>) -> Self {
        RelationSet {
            relations,
            certificates: None,
        }
    }

    pub fn certified(gens: &GeneratorSet, relations: Vec<FreeElement>) -> Result<Self> {
        let mut s = Self::uncertified(relations);
        s.certify(gens)?;
        Ok(s)
    }

    pub fn certify(&mut self, gens: &GeneratorSet) -> Result<()> {
        let certs = gens.coideal_certificate(&self.relations, &self.relations)?;
        self.certificates = Some(certs);
        Ok(())
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn certificates(&self) -> Option<&[CoidealCertificate]> {
        self.certificates.as_deref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificates.is_some()
    }

    /// Re-verify each stored certificate.
    pub fn check_certificates(&self, gens: &GeneratorSet) -> VerificationReport {
        let mut report = VerificationReport::new("coideal");
        match &self.certificates {
            None => report.fail("coideal", "certificates present", "relation set is not certified"),
            Some(certs) => {
                let mut earlier = std::collections::BTreeSet::new();
                for c in certs {
                    let late: Vec<usize> = c.suffix_members().into_iter().filter(|m| !earlier.contains(m)).collect();
                    earlier.insert(c.relation);
                    if !late.is_empty() {
                        report.fail(
                            format!("coideal[{}]", c.relation),
                            "suffix terms use earlier certificates only",
                            format!("relations {late:?} are not certified before this one"),
                        );
                        continue;
                    }
                    let ok = c.verify(gens, &self.relations, &self.relations);
                    report.record(
                        format!("coideal[{}]", c.relation),
                        format!(
                            "Δ({}) ∈ I⊗F + F⊗F·S via {} terms",
                            gens.render(&self.relations[c.relation]),
                            c.terms.len()
                        ),
                        if ok { Ok(()) } else { Err("recombination differs from the coproduct".into()) },
                    );
                }
            }
        }
        report
    }
}

/// Values on generators with the memoized extension to words.
#[derive(Debug)]
pub struct PhiMap {
    table: Arc<ActionTable>,
    values: Vec<CPoly>,
    memo: Mutex<HashMap<Word, CPoly>>,
}

impl Clone for PhiMap {
    fn clone(&self) -> Self {
        PhiMap {
            table: self.table.clone(),
            values: self.values.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl PhiMap {
    pub fn new(table: Arc<ActionTable>, values: Vec<CPoly>) -> Result<Self> {
        if values.len() != table.gens().len() {
            return Err(Error::Usage(format!(
                "expected {} generator values, got {}",
                table.gens().len(),
                values.len()
            )));
        }
        let values = values
            .iter()
            .map(|v| table.cell().normalize(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(PhiMap {
            table,
            values,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Values by generator name; every generator must be listed.
    pub fn from_named(table: Arc<ActionTable>, values: &[(&str, CPoly)]) -> Result<Self> {
        let gens = table.gens().clone();
        let mut slots = vec![None; gens.len()];
        for (n, v) in values {
            slots[gens.index_of(n)? as usize] = Some(v.clone());
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Usage(format!("no value for {}", gens.name(i as u16)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, values)
    }

    /// The counit as a map into scalars times the unit.
    pub fn trivial(table: Arc<ActionTable>) -> Self {
        let values = (0..table.gens().len() as u16)
            .map(|i| table.cell().constant(table.gens().counit_of(i).clone()))
            .collect();
        PhiMap {
            table,
            values,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &Arc<ActionTable> {
        &self.table
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        self.table.gens()
    }

    pub fn cell(&self) -> &Arc<CellAlgebra> {
        self.table.cell()
    }

    pub fn value(&self, i: u16) -> &CPoly {
        &self.values[i as usize]
    }

    pub fn values(&self) -> &[CPoly] {
        &self.values
    }

    /// A copy with one generator value replaced.
    pub fn with_value(&self, name: &str, value: CPoly) -> Result<Self> {
        let mut values = self.values.clone();
        values[self.gens().index_of(name)? as usize] = value;
        Self::new(self.table.clone(), values)
    }

    /// A fresh map with `var := value` substituted in every generator value.
    pub fn substitute(&self, var: &str, value: &Laurent) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|p| p.map_coeffs(|c| c.substitute_named(var, value)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.table.clone(), values)
    }

    /// Apply `f` to every coefficient of every generator value.
    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|p| p.map_coeffs(&f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.table.clone(), values)
    }

    fn letter(&self, l: Letter) -> CPoly {
        match l {
            Some(i) => self.values[i as usize].clone(),
            None => self.cell().one(),
        }
    }

    /// The extension to a word, peeling the leftmost letter.
    pub fn extend_phi(&self, w: &Word) -> Result<CPoly> {
        if w.is_empty() {
            return Ok(self.cell().one());
        }
        if w.len() == 1 {
            return Ok(self.values[w.letters()[0] as usize].clone());
        }
        if let Some(v) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(v.clone());
        }
        let x = w.letters()[0];
        let rest = w.slice(1, w.len());
        let phi_rest = self.extend_phi(&rest)?;
        let mut out = CPoly::zero();
        for t in self.gens().coproduct_table(x) {
            let b = self.letter(t.right);
            if b.is_zero() {
                continue;
            }
            let a = self.table.act_letter(t.left, &phi_rest)?;
            out.add_scaled(&t.coeff, &self.cell().mul(&a, &b)?);
        }
        self.memo.lock().expect("memo lock").insert(w.clone(), out.clone());
        Ok(out)
    }

    /// The extension along a split `w = u v` with `u` of any length:
    /// `φ(uv) = Σ (ξ_{u(1)}·φ(v)) φ(u(2))`.
    pub fn extend_phi_split(&self, u: &Word, v: &Word) -> Result<CPoly> {
        let phi_v = self.extend_phi(v)?;
        let mut out = CPoly::zero();
        for ((a, b), c) in self.gens().coproduct_word(u).iter() {
            let right = self.extend_phi(b)?;
            if right.is_zero() {
                continue;
            }
            let left = self.table.act_word(a, &phi_v)?;
            out.add_scaled(c, &self.cell().mul(&left, &right)?);
        }
        Ok(out)
    }

    pub fn extend(&self, x: &FreeElement) -> Result<CPoly> {
        let mut out = CPoly::zero();
        for (w, c) in x.iter() {
            out.add_scaled(c, &self.extend_phi(w)?);
        }
        Ok(out)
    }

    /// Independence of the split point: for every word up to `max_len` and
    /// every split `w = u v`, the split formula agrees with the extension.
    pub fn check_well_defined(&self, max_len: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("phi-well-defined");
        let gens = self.gens().clone();
        let mut bad = Vec::new();
        let mut count = 0;
        for w in Word::all_up_to(gens.len() as u16, max_len) {
            let direct = self.extend_phi(&w)?;
            for s in 1..w.len() {
                count += 1;
                let split = self.extend_phi_split(&w.slice(0, s), &w.slice(s, w.len()))?;
                if split != direct {
                    bad.push(format!("{} at {s}", gens.render_word(&w)));
                }
            }
        }
        report.record(
            format!("phi-well-defined[len<={max_len}]"),
            format!("φ(uv) = Σ (ξ_{{u(1)}}·φ(v)) φ(u(2)) for {count} splits"),
            if bad.is_empty() { Ok(()) } else { Err(bad.join(", ")) },
        );
        Ok(report)
    }
}

/// Evaluate the extension on every relation; refuses an uncertified set.
pub fn check_phi_relations(phi: &PhiMap, relations: &RelationSet) -> Result<VerificationReport> {
    if !relations.is_certified() {
        return Err(Error::CertificateRequired);
    }
    let gens = phi.gens();
    let mut report = VerificationReport::new("phi-relations");
    for (i, r) in relations.relations().iter().enumerate() {
        let v = phi.extend(r)?;
        report.record(
            format!("phi-relations[{i}]"),
            format!("φ({}) = 0", gens.render(r)),
            if v.is_zero() { Ok(()) } else { Err(phi.cell().render(&v)) },
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests;

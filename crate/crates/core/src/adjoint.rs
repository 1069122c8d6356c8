//! Chevalley-style generators `e_i`, `f_i`, `t_i^{±1}` acting on the algebra
//! generated by the `e_i` alone, first by the untwisted action and then twisted
//! by a weight `λ`.
//!
//! The weight enters through one formal parameter `l_i = q^{⟨λ,α_i⟩}` per
//! simple root; integral weights are substituted afterwards.

use std::sync::Arc;

use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::free::{FreeElement, GeneratorSet};
use crate::phi::{build_cyclic_submodule, check_phi_relations, Closure, PhiMap, RelationSet, TwistedAction};
use crate::report::VerificationReport;
use crate::scalar::{Ctx, Laurent, ParameterContext, Scalar};
use crate::word::Word;

/// Rank and symmetrized Cartan pairing `⟨α_i, α_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub name: String,
    pub pairing: Vec<Vec<i32>>,
}

impl CartanData {
    pub fn new(name: &str, pairing: Vec<Vec<i32>>) -> Result<Self> {
        let n = pairing.len();
        if n == 0 || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::Usage("pairing must be a non-empty square matrix".into()));
        }
        for i in 0..n {
            if pairing[i][i] <= 0 || pairing[i][i] % 2 != 0 {
                return Err(Error::Usage(format!("diagonal entry {i} must be a positive even integer")));
            }
            for j in 0..n {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::Usage("pairing must be symmetric".into()));
                }
            }
        }
        Ok(CartanData {
            name: name.to_string(),
            pairing,
        })
    }

    pub fn a1() -> Self {
        Self::new("A1", vec![vec![2]]).expect("A1 pairing")
    }

    pub fn a2() -> Self {
        Self::new("A2", vec![vec![2, -1], vec![-1, 2]]).expect("A2 pairing")
    }

    pub fn from_type(name: &str) -> Result<Self> {
        match name {
            "A1" => Ok(Self::a1()),
            "A2" => Ok(Self::a2()),
            other => Err(Error::Usage(format!("unknown Cartan type `{other}` (expected A1 or A2)"))),
        }
    }

    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    pub fn pair(&self, i: usize, j: usize) -> i32 {
        self.pairing[i][j]
    }
}

pub fn e_name(i: usize) -> String {
    format!("e{}", i + 1)
}

pub fn f_name(i: usize) -> String {
    format!("f{}", i + 1)
}

pub fn t_name(i: usize) -> String {
    format!("t{}", i + 1)
}

pub fn t_inv_name(i: usize) -> String {
    format!("t{}^-1", i + 1)
}

pub fn l_name(i: usize) -> String {
    format!("l{}", i + 1)
}

fn q(ctx: &Ctx, k: i32) -> String {
    format!("({})", Scalar::q_pow(ctx, k))
}

/// Serre relations in the letters `x1, x2, ...`, written as text over
/// `name(i)`. Only simply-laced off-diagonal entries `0` and `-1` are
/// supported.
fn serre_text(c: &CartanData, ctx: &Ctx, name: fn(usize) -> String) -> Result<Vec<String>> {
    let bracket = format!("({})", Scalar::qnum(ctx, 2));
    let mut out = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            if i == j {
                continue;
            }
            let (a, b) = (name(i), name(j));
            match c.pair(i, j) * 2 / c.pair(i, i) {
                0 if i < j => out.push(format!("{a} {b} - {b} {a}")),
                0 => {}
                -1 => out.push(format!("{a} {a} {b} - {bracket}*{a} {b} {a} + {b} {a} {a}")),
                k => {
                    return Err(Error::Load(format!(
                        "no Serre rule for Cartan integer {k} between roots {} and {}",
                        i + 1,
                        j + 1
                    )))
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct AdjointInstance {
    pub cartan: CartanData,
    pub gens: Arc<GeneratorSet>,
    pub cell: Arc<CellAlgebra>,
    pub table: Arc<ActionTable>,
    pub relations: RelationSet,
    /// The twisting map with formal `l_i`.
    pub phi: Arc<PhiMap>,
}

impl AdjointInstance {
    pub fn load(cartan: CartanData) -> Result<Self> {
        let r = cartan.rank();
        let lnames: Vec<String> = (0..r).map(l_name).collect();
        let lrefs: Vec<&str> = lnames.iter().map(String::as_str).collect();
        let ctx = ParameterContext::new(&lrefs)?;
        let one = Scalar::one(&ctx);

        let mut names = Vec::new();
        for make in [e_name, f_name, t_name, t_inv_name] {
            names.extend((0..r).map(make));
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut g = GeneratorSet::new(&ctx, &refs)?;
        for i in 0..r {
            let (e, f, t, ti) = (e_name(i), f_name(i), t_name(i), t_inv_name(i));
            g.set_coproduct(&e, &[(&e, "1", one.clone()), (&t, &e, one.clone())])?;
            g.set_coproduct(&f, &[(&f, &ti, one.clone()), ("1", &f, one.clone())])?;
            g.set_coproduct(&t, &[(&t, &t, one.clone())])?;
            g.set_coproduct(&ti, &[(&ti, &ti, one.clone())])?;
            g.set_counit(&t, one.clone())?;
            g.set_counit(&ti, one.clone())?;
        }
        g.check_counit_axiom()?;
        let gens = Arc::new(g);

        let relations = Self::relation_text(&cartan, &ctx)?
            .iter()
            .map(|t| gens.parse(t))
            .collect::<Result<Vec<_>>>()?;
        let relations = RelationSet::certified(&gens, relations)?;

        let enames: Vec<String> = (0..r).map(e_name).collect();
        let erefs: Vec<&str> = enames.iter().map(String::as_str).collect();
        let letters = GeneratorSet::new(&ctx, &erefs)?;
        let serre = serre_text(&cartan, &ctx, e_name)?
            .iter()
            .map(|t| letters.parse(t))
            .collect::<Result<Vec<_>>>()?;
        let cell = Arc::new(
            CellAlgebra::from_relations(&ctx, &erefs, &serre)
                .map_err(|e| Error::Load(format!("Serre-rule extraction failed: {e}")))?,
        );

        let mut entries: Vec<(String, String, CPoly)> = Vec::new();
        let inv_diff = Scalar::q_diff(&ctx).inv()?;
        for i in 0..r {
            for j in 0..r {
                let a = cartan.pair(i, j);
                let (ei, ej) = (cell.named(&e_name(i))?, cell.named(&e_name(j))?);
                let comm = cell.mul(&ei, &ej)?.minus(&cell.mul(&ej, &ei)?.scale(&Scalar::q_pow(&ctx, a)));
                entries.push((e_name(i), e_name(j), comm));
                let fe = if i == j { cell.constant(inv_diff.clone()) } else { CPoly::zero() };
                entries.push((f_name(i), e_name(j), fe));
                entries.push((t_name(i), e_name(j), ej.scale(&Scalar::q_pow(&ctx, a))));
                entries.push((t_inv_name(i), e_name(j), ej.scale(&Scalar::q_pow(&ctx, -a))));
            }
            entries.push((e_name(i), "1".into(), CPoly::zero()));
            entries.push((f_name(i), "1".into(), CPoly::zero()));
            entries.push((t_name(i), "1".into(), cell.one()));
            entries.push((t_inv_name(i), "1".into(), cell.one()));
        }
        let named: Vec<(&str, &str, CPoly)> =
            entries.iter().map(|(x, c, v)| (x.as_str(), c.as_str(), v.clone())).collect();
        let table = Arc::new(ActionTable::from_named(gens.clone(), cell.clone(), &named)?);

        let mut values = Vec::new();
        for i in 0..r {
            let l = Scalar::var(&ctx, &l_name(i))?;
            let e = cell.named(&e_name(i))?;
            values.push((e_name(i), e.scale(&(&one - &(&l * &l)))));
            values.push((f_name(i), CPoly::zero()));
            values.push((t_name(i), cell.constant(l.clone())));
            values.push((t_inv_name(i), cell.constant(l.inv()?)));
        }
        let values: Vec<(&str, CPoly)> = values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        let phi = PhiMap::from_named(table.clone(), &values)?;

        Ok(AdjointInstance {
            cartan,
            gens,
            cell,
            table,
            relations,
            phi: Arc::new(phi),
        })
    }

    /// Commutation relations, the two-sided inverses of the `t_i`, commuting
    /// tori, and the Serre relations in `e` and in `f`.
    fn relation_text(c: &CartanData, ctx: &Ctx) -> Result<Vec<String>> {
        let r = c.rank();
        let mut out = Vec::new();
        for i in 0..r {
            let (t, ti) = (t_name(i), t_inv_name(i));
            out.push(format!("{t} {ti} - 1"));
            out.push(format!("{ti} {t} - 1"));
        }
        for i in 0..r {
            for j in i + 1..r {
                for a in [t_name(i), t_inv_name(i)] {
                    for b in [t_name(j), t_inv_name(j)] {
                        out.push(format!("{a} {b} - {b} {a}"));
                    }
                }
            }
        }
        let inv_diff = format!("({})", Scalar::q_diff(ctx).inv()?);
        for i in 0..r {
            for j in 0..r {
                let a = c.pair(i, j);
                let (t, ti, e, f) = (t_name(i), t_inv_name(i), e_name(j), f_name(j));
                out.push(format!("{t} {e} - {}*{e} {t}", q(ctx, a)));
                out.push(format!("{ti} {e} - {}*{e} {ti}", q(ctx, -a)));
                out.push(format!("{t} {f} - {}*{f} {t}", q(ctx, -a)));
                out.push(format!("{ti} {f} - {}*{f} {ti}", q(ctx, a)));
                let ei = e_name(i);
                if i == j {
                    out.push(format!("{ei} {f} - {f} {ei} - {inv_diff}*{t} + {inv_diff}*{ti}"));
                } else {
                    out.push(format!("{ei} {f} - {f} {ei}"));
                }
            }
        }
        out.extend(serre_text(c, ctx, e_name)?);
        out.extend(serre_text(c, ctx, f_name)?);
        Ok(out)
    }

    pub fn ctx(&self) -> &Ctx {
        self.gens.ctx()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn twisted(&self) -> TwistedAction {
        TwistedAction::new(self.phi.clone())
    }

    /// The twisting map at integral pairings `⟨λ,α_i⟩ = lambda[i]`.
    pub fn phi_at(&self, lambda: &[i64]) -> Result<PhiMap> {
        if lambda.len() != self.rank() {
            return Err(Error::Usage(format!(
                "expected {} weight entries for {}, got {}",
                self.rank(),
                self.cartan.name,
                lambda.len()
            )));
        }
        let ctx = self.ctx();
        let mut phi = (*self.phi).clone();
        for (i, m) in lambda.iter().enumerate() {
            phi = phi.substitute(&l_name(i), &Laurent::q_pow(ctx, *m as i32))?;
        }
        Ok(phi)
    }

    pub fn twisted_at(&self, lambda: &[i64]) -> Result<TwistedAction> {
        Ok(TwistedAction::new(Arc::new(self.phi_at(lambda)?)))
    }

    pub fn build_rep(&self, lambda: &[i64], dim_cutoff: usize) -> Result<Closure> {
        build_cyclic_submodule(&self.twisted_at(lambda)?, dim_cutoff)
    }

    pub fn index(&self, name: &str) -> Result<u16> {
        self.gens.index_of(name)
    }

    /// Image of a generator under the antipode.
    fn antipode_letter(&self, x: u16) -> Result<FreeElement> {
        let name = self.gens.name(x).to_string();
        let i = (x as usize) % self.rank();
        let minus = -&Scalar::one(self.ctx());
        let w = |a: String, b: String| self.gens.word_element(&format!("{a} {b}"));
        Ok(match (x as usize) / self.rank() {
            0 => w(t_inv_name(i), e_name(i))?.scale(&minus),
            1 => w(f_name(i), t_name(i))?.scale(&minus),
            2 => self.gens.named(&t_inv_name(i))?,
            3 => self.gens.named(&t_name(i))?,
            _ => return Err(Error::UnknownGenerator(name)),
        })
    }

    /// The anti-multiplicative antipode, followed by cancellation of
    /// adjacent `t_i t_i^-1` pairs.
    pub fn antipode(&self, x: &FreeElement) -> Result<FreeElement> {
        let mut out = FreeElement::zero();
        for (w, c) in x.iter() {
            let mut acc = self.gens.one();
            for &l in w.letters().iter().rev() {
                acc = acc.mul(&self.antipode_letter(l)?);
            }
            out.add_scaled(c, &acc);
        }
        Ok(self.cancel_tori(&out))
    }

    /// Delete adjacent `t_i t_i^-1` and `t_i^-1 t_i` until none remain.
    pub fn cancel_tori(&self, x: &FreeElement) -> FreeElement {
        let r = self.rank() as u16;
        let inverse = |a: u16, b: u16| {
            (a / r == 2 && b / r == 3 && a % r == b % r) || (a / r == 3 && b / r == 2 && a % r == b % r)
        };
        let mut out = FreeElement::zero();
        for (w, c) in x.iter() {
            let mut stack: Vec<u16> = Vec::with_capacity(w.len());
            for &l in w.letters() {
                match stack.last() {
                    Some(&top) if inverse(top, l) => {
                        stack.pop();
                    }
                    _ => stack.push(l),
                }
            }
            out.add_term(Word::from_slice(&stack), c.clone());
        }
        out
    }

    /// `ad_x y = x(1) y σ(x(2))`, with tori cancelled.
    pub fn adjoint_act(&self, x: &FreeElement, y: &FreeElement) -> Result<FreeElement> {
        let mut out = FreeElement::zero();
        for ((a, b), c) in self.gens.coproduct(x).iter() {
            let left = FreeElement::word(a.clone(), c.clone()).mul(y);
            let right = self.antipode(&FreeElement::word(b.clone(), Scalar::one(self.ctx())))?;
            out.add_assign(&left.mul(&right));
        }
        Ok(self.cancel_tori(&out))
    }

    /// `x(1) σ(x(2)) = ε(x)·1` on every generator.
    pub fn check_antipode_axiom(&self) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("antipode");
        for x in 0..self.gens.len() as u16 {
            let mut sum = FreeElement::zero();
            for ((a, b), c) in self.gens.coproduct_letter(x).iter() {
                let right = self.antipode(&FreeElement::word(b.clone(), Scalar::one(self.ctx())))?;
                sum.add_assign(&FreeElement::word(a.clone(), c.clone()).mul(&right));
            }
            let sum = self.cancel_tori(&sum);
            let want = self.gens.scalar(self.gens.counit_of(x).clone());
            let name = self.gens.name(x);
            report.record(
                format!("antipode[{name}]"),
                format!("{name}(1) σ({name}(2)) = ε({name})"),
                if sum == want { Ok(()) } else { Err(self.gens.render(&sum)) },
            );
        }
        Ok(report)
    }

    /// Homogeneous probes of the module algebra up to the given degree.
    pub fn probes(&self, max_degree: usize) -> Vec<CPoly> {
        let one = Scalar::one(self.ctx());
        (0..=max_degree)
            .flat_map(|d| self.cell.normal_words(d))
            .map(|w| CPoly::word(w, one.clone()))
            .collect()
    }

    /// The shipped action table against the defining formulas on pairs of
    /// generators.
    pub fn check_action_table(&self) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("action");
        let ctx = self.ctx();
        let c = &self.cell;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let a = self.cartan.pair(i, j);
                let ej = c.named(&e_name(j))?;
                let text = [
                    (
                        e_name(i),
                        format!("{} {} - {}*{} {}", e_name(i), e_name(j), q(ctx, a), e_name(j), e_name(i)),
                    ),
                    (
                        f_name(i),
                        if i == j { format!("({})", Scalar::q_diff(ctx).inv()?) } else { "0".into() },
                    ),
                    (t_name(i), format!("{}*{}", q(ctx, a), e_name(j))),
                ];
                for (x, want) in text {
                    let got = self.table.act_gen(self.index(&x)?, &ej)?;
                    let want = c.parse(&want)?;
                    report.record(
                        format!("action[{x}·{}]", e_name(j)),
                        format!("ξ({x})·{} = {}", e_name(j), c.render(&want)),
                        if got == want { Ok(()) } else { Err(c.render(&got)) },
                    );
                }
            }
        }
        Ok(report)
    }

    /// Everything checked for the instance at formal weight: certificates,
    /// antipode, confluence, the base action killing the relations, the
    /// twisting map on relations, unit values and the `λ = 0` reduction.
    pub fn verify(&self, probe_degree: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(format!("adjoint[{}]", self.cartan.name));
        report.absorb("", self.relations.check_certificates(&self.gens));
        report.absorb("", self.check_antipode_axiom()?);
        report.absorb("", self.cell.confluence_probe(probe_degree));
        report.absorb("", self.check_action_table()?);
        report.absorb("", self.table.check_cell_compatibility(probe_degree)?);
        let probes = self.probes(probe_degree);
        report.absorb("base-", self.table.check_relations_kill(self.relations.relations(), &probes)?);
        report.absorb("", check_phi_relations(&self.phi, &self.relations)?);
        report.absorb("", self.twisted().check_unit_values(2)?);
        report.absorb("", self.check_zero_weight(&probes)?);
        Ok(report)
    }

    /// At `λ = 0` the twisted action is the base action.
    pub fn check_zero_weight(&self, probes: &[CPoly]) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("zero-weight");
        let t = self.twisted_at(&vec![0; self.rank()])?;
        let mut bad = Vec::new();
        for x in 0..self.gens.len() as u16 {
            for f in probes {
                if t.act_gen(x, f)? != self.table.act_gen(x, f)? {
                    bad.push(format!("{} on {}", self.gens.name(x), self.cell.render(f)));
                }
            }
        }
        report.record(
            "zero-weight",
            "λ = 0 gives x·f = ξ(x)·f",
            if bad.is_empty() { Ok(()) } else { Err(bad.join(", ")) },
        );
        Ok(report)
    }

    /// Dimension of the module generated by `1` at integral pairings, the
    /// relations on it, and `t_i·1 = q^{⟨λ,α_i⟩}·1`.
    pub fn verify_rep(&self, lambda: &[i64], dim_cutoff: usize, expected: Option<usize>) -> Result<VerificationReport> {
        let shown: Vec<String> = lambda.iter().map(i64::to_string).collect();
        let mut report = VerificationReport::new(format!("adjoint-rep[{}, λ=({})]", self.cartan.name, shown.join(",")));
        let module = match self.build_rep(lambda, dim_cutoff)? {
            Closure::Finite(m) => m,
            Closure::Infinite { found, .. } => {
                report.fail(
                    "dimension",
                    format!("finite closure within {dim_cutoff}"),
                    format!("more than {found} vectors"),
                );
                return Ok(report);
            }
        };
        if let Some(d) = expected {
            report.record(
                "dimension",
                format!("dim = {d}"),
                if module.dim() == d { Ok(()) } else { Err(format!("dim = {}", module.dim())) },
            );
        }
        report.absorb("", module.check_relations(self.relations.relations()));
        let ctx = self.ctx();
        for (i, m) in lambda.iter().enumerate() {
            let got = module.action_on_unit(&self.gens.named(&t_name(i))?);
            let mut want = vec![Scalar::zero(ctx); module.dim()];
            want[0] = Scalar::q_pow(ctx, *m as i32);
            report.record(
                format!("unit-weight[{}]", i + 1),
                format!("{}·1 = q^{m}·1", t_name(i)),
                if got == want { Ok(()) } else { Err(format!("{got:?}")) },
            );
        }
        Ok(report)
    }
}

/// Compare the `A1` module at `⟨λ,α⟩ = -m` with the sl(2) module at
/// `σ = m` through `t ↔ (q^{H/2})²`, `e ↔ q^{H/2}X+`, `f ↔ X- q^{-H/2}`:
/// dimensions, and spectra of `t^{±1}`, `e f` and `f e` (the last two become
/// `X+X-` and `X-X+`).
pub fn cross_check_sl2(adj: &AdjointInstance, sl2: &crate::sl2::Sl2Instance, m: u32, dim_cutoff: usize) -> Result<VerificationReport> {
    use crate::sl2::{K, K_INV, X_MINUS, X_PLUS};
    if adj.cartan.name != "A1" {
        return Err(Error::Usage("the sl(2) dictionary needs type A1".into()));
    }
    let mut report = VerificationReport::new(format!("adjoint-sl2[m={m}]"));
    let (Closure::Finite(a), Closure::Finite(b)) = (
        adj.build_rep(&[-(m as i64)], dim_cutoff)?,
        sl2.build_rep(m as i64, dim_cutoff)?,
    ) else {
        report.fail("dimension", "both modules are finite", "cutoff exceeded");
        return Ok(report);
    };
    report.record(
        "dimension",
        "dim of the adjoint module = dim of the sl(2) module",
        if a.dim() == b.dim() { Ok(()) } else { Err(format!("{} vs {}", a.dim(), b.dim())) },
    );
    let plain = ParameterContext::new(&[])?;
    let spectrum = |mat: crate::linear::Matrix| -> Result<Vec<String>> {
        if !mat.is_diagonal() {
            return Err(Error::Load("expected a diagonal action".into()));
        }
        let mut d = mat
            .diagonal()
            .iter()
            .map(|x| Ok(x.transport(&plain)?.to_string()))
            .collect::<Result<Vec<_>>>()?;
        d.sort();
        Ok(d)
    };
    let pairs = [
        ("t1", format!("{K} {K}")),
        ("t1^-1", format!("{K_INV} {K_INV}")),
        ("e1 f1", format!("{X_PLUS} {X_MINUS}")),
        ("f1 e1", format!("{X_MINUS} {X_PLUS}")),
    ];
    for (x, y) in pairs {
        let sa = spectrum(a.element_matrix(&adj.gens.word_element(x)?))?;
        let sb = spectrum(b.element_matrix(&sl2.gens.word_element(&y)?))?;
        report.record(
            format!("spectrum[{x}]"),
            format!("spectrum of {x} = spectrum of {y}"),
            if sa == sb { Ok(()) } else { Err(format!("{sa:?} vs {sb:?}")) },
        );
    }
    Ok(report)
}

/// Weyl dimension of the irreducible module with highest weight
/// `(m_1, ..., m_r)` for the shipped types.
pub fn weyl_dimension(cartan: &CartanData, m: &[u64]) -> Option<u64> {
    match (cartan.name.as_str(), m) {
        ("A1", [a]) => Some(a + 1),
        ("A2", [a, b]) => Some((a + 1) * (b + 1) * (a + b + 2) / 2),
        _ => None,
    }
}

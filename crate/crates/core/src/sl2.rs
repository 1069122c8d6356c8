//! Quantized sl(2) acting on polynomials in one variable `zb`.
//!
//! Generators are `q^{H/2}`, `q^{-H/2}`, `X+`, `X-`. The twisting map
//! depends on a complex weight `σ`, carried by the formal parameter
//! `s = q^{σ/2}`.

use std::sync::Arc;

use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::Result;
use crate::free::GeneratorSet;
use crate::phi::{build_cyclic_submodule, check_phi_relations, Closure, PhiMap, RelationSet, TwistedAction};
use crate::report::VerificationReport;
use crate::scalar::{Laurent, ParameterContext, Scalar};

pub const K: &str = "q^{H/2}";
pub const K_INV: &str = "q^{-H/2}";
pub const X_PLUS: &str = "X+";
pub const X_MINUS: &str = "X-";
pub const ZB: &str = "zb";

/// The relation set used for the construction: the usual relations plus
/// the two commutation relations with `q^{-H/2}`, which make the set closed
/// under the coproduct in the required sense.
///
/// One of those two is sometimes printed with `X+` in place of `X-` on the
/// right; the form here is the one obtained by conjugating the `q^{H/2}`
/// relation, and it is the one that holds in the algebra.
pub const RELATIONS: [&str; 7] = [
    "q^{H/2} q^{-H/2} - 1",
    "q^{-H/2} q^{H/2} - 1",
    "q^{H/2} X+ - (q)*X+ q^{H/2}",
    "q^{H/2} X- - (q^-1)*X- q^{H/2}",
    "X+ X- - X- X+ - (1/(q - q^-1))*q^{H/2} q^{H/2} + (1/(q - q^-1))*q^{-H/2} q^{-H/2}",
    "X+ q^{-H/2} - (q)*q^{-H/2} X+",
    "X- q^{-H/2} - (q^-1)*q^{-H/2} X-",
];

#[derive(Debug, Clone)]
pub struct Sl2Instance {
    pub gens: Arc<GeneratorSet>,
    pub cell: Arc<CellAlgebra>,
    pub table: Arc<ActionTable>,
    pub relations: RelationSet,
    /// The twisting map with formal `σ`.
    pub phi: Arc<PhiMap>,
}

/// `[n]` as a scalar.
fn qn(ctx: &crate::scalar::Ctx, n: i64) -> Scalar {
    Scalar::qnum(ctx, n)
}

impl Sl2Instance {
    pub fn load() -> Result<Self> {
        let ctx = ParameterContext::new(&["s"])?;
        let one = Scalar::one(&ctx);
        let mut g = GeneratorSet::new(&ctx, &[K, K_INV, X_PLUS, X_MINUS])?;
        g.set_coproduct(K, &[(K, K, one.clone())])?;
        g.set_coproduct(K_INV, &[(K_INV, K_INV, one.clone())])?;
        g.set_coproduct(X_PLUS, &[(X_PLUS, K_INV, one.clone()), (K, X_PLUS, one.clone())])?;
        g.set_coproduct(X_MINUS, &[(X_MINUS, K_INV, one.clone()), (K, X_MINUS, one.clone())])?;
        g.set_counit(K, one.clone())?;
        g.set_counit(K_INV, one.clone())?;
        g.check_counit_axiom()?;
        let gens = Arc::new(g);

        let cell = Arc::new(CellAlgebra::new(&ctx, &[ZB], vec![])?);
        let z = cell.named(ZB)?;
        let table = Arc::new(ActionTable::from_named(
            gens.clone(),
            cell.clone(),
            &[
                (K, ZB, z.scale(&Scalar::q_pow(&ctx, 1))),
                (K_INV, ZB, z.scale(&Scalar::q_pow(&ctx, -1))),
                (X_PLUS, ZB, cell.mul(&z, &z)?.scale(&qn(&ctx, 1))),
                (X_MINUS, ZB, cell.one().scale(&-&qn(&ctx, 1))),
                (K, "1", cell.one()),
                (K_INV, "1", cell.one()),
                (X_PLUS, "1", CPoly::zero()),
                (X_MINUS, "1", CPoly::zero()),
            ],
        )?);

        let relations = RELATIONS
            .iter()
            .map(|r| gens.parse(r))
            .collect::<Result<Vec<_>>>()?;
        let relations = RelationSet::certified(&gens, relations)?;

        let s = Scalar::var(&ctx, "s")?;
        let s_inv = s.inv()?;
        // -s^-1 [σ] zb, with [σ] = -[0 - σ]
        let sigma_bracket = -&Scalar::qnum_shifted(&ctx, 0, "s")?;
        let phi = PhiMap::from_named(
            table.clone(),
            &[
                (K, cell.constant(s_inv.clone())),
                (K_INV, cell.constant(s.clone())),
                (X_PLUS, z.scale(&-&(&s_inv * &sigma_bracket))),
                (X_MINUS, CPoly::zero()),
            ],
        )?;
        Ok(Sl2Instance {
            gens,
            cell,
            table,
            relations,
            phi: Arc::new(phi),
        })
    }

    pub fn zb_pow(&self, n: usize) -> Result<CPoly> {
        self.cell.pow(&self.cell.named(ZB)?, n)
    }

    pub fn twisted(&self) -> TwistedAction {
        TwistedAction::new(self.phi.clone())
    }

    /// The twisting map at integral `σ`, i.e. with `s = q^{σ/2}`.
    pub fn phi_at(&self, sigma: i64) -> Result<PhiMap> {
        let ctx = self.gens.ctx();
        self.phi.substitute("s", &Laurent::v_pow(ctx, sigma as i32 * (ctx.base_root() as i32) / 2))
    }

    pub fn twisted_at(&self, sigma: i64) -> Result<TwistedAction> {
        Ok(TwistedAction::new(Arc::new(self.phi_at(sigma)?)))
    }

    pub fn build_rep(&self, sigma: i64, dim_cutoff: usize) -> Result<Closure> {
        build_cyclic_submodule(&self.twisted_at(sigma)?, dim_cutoff)
    }

    /// Closed forms of the twisted action on `zb^n` for formal `σ`:
    /// `q^{±H/2}·zbⁿ = s^{∓1} q^{±n} zbⁿ`, `X+·zbⁿ = s⁻¹[n-σ] zb^{n+1}`,
    /// `X-·zbⁿ = -s[n] zb^{n-1}`.
    pub fn expected_action(&self, generator: &str, n: usize) -> Result<CPoly> {
        let ctx = self.gens.ctx();
        let s = Scalar::var(ctx, "s")?;
        let s_inv = s.inv()?;
        let ni = n as i64;
        Ok(match generator {
            K => self.zb_pow(n)?.scale(&(&s_inv * &Scalar::q_pow(ctx, ni as i32))),
            K_INV => self.zb_pow(n)?.scale(&(&s * &Scalar::q_pow(ctx, -(ni as i32)))),
            X_PLUS => self
                .zb_pow(n + 1)?
                .scale(&(&s_inv * &Scalar::qnum_shifted(ctx, ni, "s")?)),
            X_MINUS if n == 0 => CPoly::zero(),
            X_MINUS => self.zb_pow(n - 1)?.scale(&-&(&s * &qn(ctx, ni))),
            other => return Err(crate::Error::UnknownGenerator(other.to_string())),
        })
    }

    /// Compare the engine's twisted action on `zbⁿ`, `n ≤ n_max`, with the
    /// closed forms.
    pub fn verify_closed_forms(&self, n_max: usize) -> Result<VerificationReport> {
        self.verify_closed_forms_at(None, n_max)
    }

    /// As [`Self::verify_closed_forms`], with `σ` formal (`None`) or integral.
    pub fn verify_closed_forms_at(&self, sigma: Option<i64>, n_max: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("eq35");
        let ctx = self.gens.ctx();
        let (act, s_value) = match sigma {
            None => (self.twisted(), None),
            Some(v) => (
                self.twisted_at(v)?,
                Some(Laurent::v_pow(ctx, v as i32 * (ctx.base_root() as i32) / 2)),
            ),
        };
        for name in [K, K_INV, X_PLUS, X_MINUS] {
            let x = self.gens.index_of(name)?;
            for n in 0..=n_max {
                let got = act.act_gen(x, &self.zb_pow(n)?)?;
                let mut want = self.expected_action(name, n)?;
                if let Some(value) = &s_value {
                    want = want.map_coeffs(|c| c.substitute_named("s", value))?;
                }
                report.record(
                    format!("eq35[{name},n={n}]"),
                    format!("{name}·zb^{n} = {}", self.cell.render(&want)),
                    if got == want {
                        Ok(())
                    } else {
                        Err(format!("engine gives {}", self.cell.render(&got)))
                    },
                );
            }
        }
        Ok(report)
    }

    pub fn check_phi_relations(&self) -> Result<VerificationReport> {
        check_phi_relations(&self.phi, &self.relations)
    }

    /// Dimension, relation matrices, lowest-weight vector and weight for the
    /// module generated by `1` at integral `σ`.
    pub fn verify_rep(&self, sigma: i64, dim_cutoff: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(format!("sl2-rep[sigma={sigma}]"));
        let module = match self.build_rep(sigma, dim_cutoff)? {
            Closure::Finite(m) => m,
            Closure::Infinite { found, .. } => {
                report.fail("dimension", format!("dim = {}", sigma + 1), format!("more than {found} vectors"));
                return Ok(report);
            }
        };
        let ctx = self.gens.ctx();
        report.record(
            "dimension",
            format!("dim = {}", sigma + 1),
            if module.dim() as i64 == sigma + 1 { Ok(()) } else { Err(format!("dim = {}", module.dim())) },
        );
        report.absorb("", module.check_relations(self.relations.relations()));
        let lowering = module.action_on_unit(&self.gens.named(X_MINUS)?);
        report.record(
            "lowest-weight-vector",
            "X-·1 = 0",
            if lowering.iter().all(Scalar::is_zero) { Ok(()) } else { Err(format!("{lowering:?}")) },
        );
        let kk = self.gens.word_element(&format!("{K} {K}"))?;
        let weight = module.action_on_unit(&kk);
        let mut want = vec![Scalar::zero(ctx); module.dim()];
        want[0] = Scalar::q_pow(ctx, -(sigma as i32));
        report.record(
            "lowest-weight",
            format!("q^H·1 = q^{}·1", -sigma),
            if weight == want { Ok(()) } else { Err(format!("{weight:?}")) },
        );
        Ok(report)
    }
}

#[cfg(test)]
mod tests;

//! The `L±` presentation for the A-series at `N ∈ {2, 3}` acting on the
//! quantized big cell generated by the entries `z*_{jk}` (`j < k`) of the
//! lower unitriangular matrix `Z*`, with `(Z*)_{kj} = z*_{jk}`.
//!
//! Relations: `R₁₂L±₂L±₁ = L±₁L±₂R₁₂`, `R₁₂L⁺₂L⁻₁ = L⁻₁L⁺₂R₁₂`,
//! `diag(L⁺)diag(L⁻) = diag(L⁻)diag(L⁺) = 1` and `det L⁺ = 1`. The coproduct
//! is `Δ(L±) = L± ⊗̇ L±`. The cell relations are
//! `R₁₂Z*₂QZ*₁Q⁻¹ = Z*₁QZ*₂Q⁻¹R₁₂`, the action is
//! `ξ(L⁺₁)·Z*₂ = R₂₁⁻¹Z*₂Q`, `ξ(L⁻₁)·Z*₂ = Z*₁QZ*₂Q⁻¹(Z*₁)⁻¹`, and the
//! twisting map is `φ(L⁺) = D⁻¹`, `φ(L⁻) = Z*D²(Z*)⁻¹D⁻¹` with a formal
//! unimodular diagonal `D = diag(d1, …, dN)`.
//!
//! # Weights
//!
//! On the unit `diag(L⁺)·1 = D⁻¹`. At `N = 2`, `L⁺₁₁` plays the role of
//! `q^{H/2}`, and the `sl(2)` module of lowest weight `-σ` has
//! `q^{H/2}·1 = q^{-σ/2}`, so `d1 = q^{σ/2}`, `d2 = q^{-σ/2}` and
//! `d1/d2 = q^σ`. In general `d_i = q^{e_i}` with `e_i - e_{i+1} = n_i` for
//! the lowest weight `-Σ n_i ω_i` and `Σ e_i = 0`, which puts `e_i` in
//! `(1/N)Z`; the context therefore uses `q = v^{lcm(2,N)}`.

use std::sync::Arc;

use num_integer::Integer;

use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::free::{FreeElement, GeneratorSet};
use crate::linear::Matrix;
use crate::ncmatrix::NcMatrix;
use crate::phi::{build_cyclic_submodule, check_phi_relations, Closure, PhiMap, RelationSet, TwistedAction};
use crate::report::VerificationReport;
use crate::rmatrix::{build_a_series, embed, pair_index, StructureSet};
use crate::scalar::{Ctx, Laurent, ParameterContext, Scalar};
use crate::word::Word;

pub fn lp_name(a: usize, c: usize) -> String {
    format!("L+_{{{}{}}}", a + 1, c + 1)
}

pub fn lm_name(a: usize, c: usize) -> String {
    format!("L-_{{{}{}}}", a + 1, c + 1)
}

pub fn z_name(j: usize, k: usize) -> String {
    format!("z*_{{{}{}}}", j + 1, k + 1)
}

/// Which of `L⁺`, `L⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct FrtInstance {
    pub n: usize,
    pub structure: StructureSet,
    pub gens: Arc<GeneratorSet>,
    pub cell: Arc<CellAlgebra>,
    pub table: Arc<ActionTable>,
    pub relations: RelationSet,
    /// The twisting map with formal `D`.
    pub phi: Arc<PhiMap>,
    /// `Z*` and its inverse over the cell algebra.
    pub zstar: NcMatrix,
    pub zstar_inv: NcMatrix,
    /// `diag(d1, …, dN)` with `dN = (d1 ⋯ d(N-1))⁻¹`.
    pub d: Matrix,
}

pub fn base_root(n: usize) -> u32 {
    2u32.lcm(&(n as u32))
}

/// Generator index of `L±_{ac}`, or `None` where triangularity forces zero.
fn gen_index(gens: &GeneratorSet, sign: Sign, a: usize, c: usize) -> Option<u16> {
    match sign {
        Sign::Plus if a <= c => gens.index_of(&lp_name(a, c)).ok(),
        Sign::Minus if a >= c => gens.index_of(&lm_name(a, c)).ok(),
        _ => None,
    }
}

fn word2(x: Option<u16>, y: Option<u16>) -> Option<Word> {
    Some(Word::from_slice(&[x?, y?]))
}

/// The free cell algebra on the `z*_{jk}` (no rules) and `Z*` over it.
fn zstar_matrix(cell: &CellAlgebra, n: usize) -> Result<NcMatrix> {
    let mut z = NcMatrix::identity(cell, n);
    for j in 0..n {
        for k in j + 1..n {
            z.set(k, j, cell.named(&z_name(j, k))?);
        }
    }
    Ok(z)
}

fn cell_names(n: usize) -> Vec<String> {
    let mut names = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            names.push(z_name(j, k));
        }
    }
    names
}

impl FrtInstance {
    pub fn load(n: usize) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::Usage(format!("the L± instance is built for N = 2, 3, got {n}")));
        }
        let ctx = ParameterContext::unimodular_with_base_root(base_root(n), "d", n, &[])?;
        let structure = build_a_series(&ctx, n)?;

        let mut names = Vec::new();
        for a in 0..n {
            for c in a..n {
                names.push(lp_name(a, c));
            }
        }
        for a in 0..n {
            for c in 0..=a {
                names.push(lm_name(a, c));
            }
        }
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut g = GeneratorSet::new(&ctx, &name_refs)?;
        let one = Scalar::one(&ctx);
        for (sign, range) in [(Sign::Plus, true), (Sign::Minus, false)] {
            for a in 0..n {
                for c in 0..n {
                    if (range && a > c) || (!range && a < c) {
                        continue;
                    }
                    let nm = |x: usize, y: usize| match sign {
                        Sign::Plus => lp_name(x, y),
                        Sign::Minus => lm_name(x, y),
                    };
                    let ks: Vec<usize> = (a.min(c)..=a.max(c)).collect();
                    let terms: Vec<(String, String)> = ks.iter().map(|&k| (nm(a, k), nm(k, c))).collect();
                    let terms: Vec<(&str, &str, Scalar)> = terms
                        .iter()
                        .map(|(l, r)| (l.as_str(), r.as_str(), one.clone()))
                        .collect();
                    g.set_coproduct(&nm(a, c), &terms)?;
                    if a == c {
                        g.set_counit(&nm(a, c), one.clone())?;
                    }
                }
            }
        }
        g.check_counit_axiom()?;
        let gens = Arc::new(g);

        // cell relations, read off in the free algebra on the z*_{jk}
        let cnames = cell_names(n);
        let crefs: Vec<&str> = cnames.iter().map(String::as_str).collect();
        let free_cell = CellAlgebra::new(&ctx, &crefs, vec![])?;
        let relations = cell_relations(&free_cell, &structure, n)?;
        let cell = Arc::new(CellAlgebra::from_relations(&ctx, &crefs, &relations)?);

        let zstar = zstar_matrix(&cell, n)?;
        let zstar_inv = zstar.invert_unipotent(&cell)?;
        let (plus, minus) = action_rhs(&cell, &structure, &zstar, &zstar_inv, n)?;
        let mut entries = vec![vec![CPoly::zero(); cell.len()]; gens.len()];
        for x in 0..gens.len() as u16 {
            let nm = gens.name(x).to_string();
            let (rhs, a, c) = parse_l_name(&nm, &plus, &minus)?;
            for j in 0..n {
                for k in j + 1..n {
                    let ci = cell.index_of(&z_name(j, k))? as usize;
                    // Z*_{bd} with b = k, d = j
                    entries[x as usize][ci] = rhs.get(pair_index(n, a, k), pair_index(n, c, j)).clone();
                }
            }
        }
        let table = Arc::new(ActionTable::new(gens.clone(), cell.clone(), entries)?);

        let relations = RelationSet::certified(&gens, ell_relations(&gens, &structure, n)?)?;

        let mut d = Matrix::zeros(&ctx, n, n);
        for i in 0..n {
            d.set(i, i, Scalar::var(&ctx, &format!("d{}", i + 1))?);
        }
        let phi = phi_map(&table, &cell, &zstar, &zstar_inv, &d, n)?;
        Ok(FrtInstance {
            n,
            structure,
            gens,
            cell,
            table,
            relations,
            phi: Arc::new(phi),
            zstar,
            zstar_inv,
            d,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        self.gens.ctx()
    }

    pub fn twisted(&self) -> TwistedAction {
        TwistedAction::new(self.phi.clone())
    }

    pub fn generator(&self, sign: Sign, a: usize, c: usize) -> Option<u16> {
        gen_index(&self.gens, sign, a, c)
    }

    fn scalar_nc(&self, m: &Matrix) -> NcMatrix {
        NcMatrix::from_scalar(&self.cell, m)
    }

    /// The entries of `ξ(L±_{ac})·Z*_{bd}` computed by the action table,
    /// arranged as an `N² × N²` matrix, against the defining right sides.
    pub fn check_action_table(&self) -> Result<VerificationReport> {
        let n = self.n;
        let (plus, minus) = action_rhs(&self.cell, &self.structure, &self.zstar, &self.zstar_inv, n)?;
        let mut report = VerificationReport::new("frt-action");
        for (sign, rhs, text) in [
            (Sign::Plus, &plus, "ξ(L+_1)·Z*_2 = R21^-1 Z*_2 Q"),
            (Sign::Minus, &minus, "ξ(L-_1)·Z*_2 = Z*_1 Q Z*_2 Q^-1 (Z*_1)^-1"),
        ] {
            let mut lhs = NcMatrix::zeros(n * n, n * n);
            for a in 0..n {
                for c in 0..n {
                    let Some(x) = self.generator(sign, a, c) else { continue };
                    for b in 0..n {
                        for dd in 0..n {
                            let v = self.table.act_gen(x, self.zstar.get(b, dd))?;
                            lhs.set(pair_index(n, a, b), pair_index(n, c, dd), v);
                        }
                    }
                }
            }
            report.record(
                format!("action[{}]", if sign == Sign::Plus { "L+" } else { "L-" }),
                text,
                lhs.compare(rhs, &self.cell, n, 2),
            );
        }
        Ok(report)
    }

    /// `K₁₂Q⁻¹Z*₁QZ*₂ = K₁₂`. With `K = 0` this is `0 = 0`; it is evaluated
    /// anyway so that the code path is exercised.
    pub fn check_orthogonality(&self) -> Result<VerificationReport> {
        let n = self.n;
        let c = &self.cell;
        let k12 = self.scalar_nc(&self.structure.k);
        let q = self.scalar_nc(&self.structure.q);
        let qi = self.scalar_nc(&self.structure.q.inverse()?);
        let z1 = self.zstar.embed(n, &[1], 2);
        let z2 = self.zstar.embed(n, &[2], 2);
        let lhs = NcMatrix::product(c, &[&k12, &qi, &z1, &q, &z2])?;
        let mut report = VerificationReport::new("orthogonality");
        report.record(
            "k-z",
            "K12 Q^-1 Z*_1 Q Z*_2 = K12 (vacuous for the A-series, K = 0)",
            lhs.compare(&k12, c, n, 2),
        );
        Ok(report)
    }

    /// `φ̃` of a two-letter matrix family: entry `((a,b),(c,d))` is
    /// `φ̃(first(a,c,b,d) · second(…))` as chosen by `pick`.
    fn phi_family(&self, pick: impl Fn(usize, usize, usize, usize) -> Option<Word>) -> Result<NcMatrix> {
        let n = self.n;
        let mut m = NcMatrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if let Some(w) = pick(a, b, c, d) {
                            m.set(pair_index(n, a, b), pair_index(n, c, d), self.phi.extend_phi(&w)?);
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// `φ̃` on the four quadratic families against their closed forms, the
    /// matrix residuals of the defining relations, and `φ̃` on every relation.
    pub fn verify_eq52(&self) -> Result<VerificationReport> {
        let n = self.n;
        let c = &self.cell;
        let s = &self.structure;
        let nc = |m: &Matrix| self.scalar_nc(m);
        let d1 = self.scalar_nc(&embed(&self.d, n, &[1], 2));
        let d2 = self.scalar_nc(&embed(&self.d, n, &[2], 2));
        let dinv = self.d.inverse()?;
        let d1i = nc(&embed(&dinv, n, &[1], 2));
        let d2i = nc(&embed(&dinv, n, &[2], 2));
        let d1sq = d1.mul(&d1, c)?;
        let d2sq = d2.mul(&d2, c)?;
        let r = nc(&s.r);
        let ri = nc(&s.r.inverse()?);
        let q = nc(&s.q);
        let qi = nc(&s.q.inverse()?);
        let z1 = self.zstar.embed(n, &[1], 2);
        let z2 = self.zstar.embed(n, &[2], 2);
        let z1i = self.zstar_inv.embed(n, &[1], 2);
        let z2i = self.zstar_inv.embed(n, &[2], 2);
        let g = |sign, x, y| gen_index(&self.gens, sign, x, y);
        use Sign::{Minus, Plus};

        let pp = self.phi_family(|a, b, cc, d| word2(g(Plus, a, cc), g(Plus, b, d)))?;
        let mm = self.phi_family(|a, b, cc, d| word2(g(Minus, a, cc), g(Minus, b, d)))?;
        let pm = self.phi_family(|a, b, cc, d| word2(g(Plus, b, d), g(Minus, a, cc)))?;
        let mp = self.phi_family(|a, b, cc, d| word2(g(Minus, a, cc), g(Plus, b, d)))?;

        let want_pp = d1i.mul(&d2i, c)?;
        let want_mm = NcMatrix::product(c, &[&z1, &q, &z2, &d1sq, &d2sq, &z2i, &qi, &z1i, &d1i, &d2i])?;
        let want_pm = NcMatrix::product(c, &[&ri, &z1, &d1sq, &z1i, &d1i, &d2i, &r])?;
        let want_mp = NcMatrix::product(c, &[&z1, &d1sq, &z1i, &d1i, &d2i])?;

        let mut report = VerificationReport::new("eq52");
        let fam = [
            ("L+_1 L+_2", "φ(L+_1 L+_2) = D1^-1 D2^-1", &pp, &want_pp),
            (
                "L-_1 L-_2",
                "φ(L-_1 L-_2) = Z*_1 Q Z*_2 D1^2 D2^2 (Z*_2)^-1 Q^-1 (Z*_1)^-1 D1^-1 D2^-1",
                &mm,
                &want_mm,
            ),
            (
                "L+_2 L-_1",
                "φ(L+_2 L-_1) = R12^-1 Z*_1 D1^2 (Z*_1)^-1 D1^-1 D2^-1 R12",
                &pm,
                &want_pm,
            ),
            ("L-_1 L+_2", "φ(L-_1 L+_2) = Z*_1 D1^2 (Z*_1)^-1 D1^-1 D2^-1", &mp, &want_mp),
        ];
        for (id, text, got, want) in fam {
            report.record(format!("eq52[{id}]"), text, got.compare(want, c, n, 2));
        }

        // matrix residuals R12 φ(X2 Y1) - φ(Y1 X2) R12
        let pp21 = self.phi_family(|a, b, cc, d| word2(g(Plus, b, d), g(Plus, a, cc)))?;
        let mm21 = self.phi_family(|a, b, cc, d| word2(g(Minus, b, d), g(Minus, a, cc)))?;
        for (id, x21, x12) in [
            ("L+L+", &pp21, &pp),
            ("L-L-", &mm21, &mm),
            ("L+L-", &pm, &mp),
        ] {
            let lhs = r.mul(x21, c)?;
            let rhs = x12.mul(&r, c)?;
            report.record(
                format!("residual[{id}]"),
                format!("R12 φ(X_2 Y_1) = φ(Y_1 X_2) R12 for {id}"),
                lhs.compare(&rhs, c, n, 2),
            );
        }
        report.absorb("", check_phi_relations(&self.phi, &self.relations)?);
        Ok(report)
    }

    /// `v`-exponents of `d1, …, dN` for the lowest weight `-Σ n_i ω_i`.
    pub fn weight_exponents(n: usize, weights: &[u32]) -> Result<Vec<i32>> {
        if weights.len() != n - 1 {
            return Err(Error::Usage(format!("expected {} weights, got {}", n - 1, weights.len())));
        }
        let root = base_root(n) as i64;
        let nn = n as i64;
        // N e_i = N Σ_{k>=i} n_k - Σ_k k n_k
        let total: i64 = weights.iter().enumerate().map(|(k, &w)| (k as i64 + 1) * w as i64).sum();
        Ok((0..n)
            .map(|i| {
                let tail: i64 = weights[i.min(n - 1)..].iter().map(|&w| w as i64).sum();
                ((nn * tail - total) * root / nn) as i32
            })
            .collect())
    }

    /// The twisting map with `D` fixed by the lowest weight.
    pub fn phi_at(&self, weights: &[u32]) -> Result<PhiMap> {
        let exps = Self::weight_exponents(self.n, weights)?;
        let ctx = self.ctx().clone();
        let mut phi = (*self.phi).clone();
        for (i, e) in exps.iter().enumerate().take(self.n - 1) {
            phi = phi.substitute(&format!("d{}", i + 1), &Laurent::v_pow(&ctx, *e))?;
        }
        Ok(phi)
    }

    pub fn build_rep(&self, weights: &[u32], dim_cutoff: usize) -> Result<Closure> {
        build_cyclic_submodule(&TwistedAction::new(Arc::new(self.phi_at(weights)?)), dim_cutoff)
    }

    /// Dimension against `expected` (when given), relation matrices, and
    /// `diag(L⁺)·1 = D⁻¹`.
    pub fn verify_rep(&self, weights: &[u32], dim_cutoff: usize, expected: Option<usize>) -> Result<VerificationReport> {
        let shown: Vec<String> = weights.iter().map(u32::to_string).collect();
        let mut report = VerificationReport::new(format!("frt-rep[N={},weights={}]", self.n, shown.join(",")));
        let module = match self.build_rep(weights, dim_cutoff)? {
            Closure::Finite(m) => m,
            Closure::Infinite { found, .. } => {
                report.fail("dimension", "the cyclic module is finite", format!("more than {found} vectors"));
                return Ok(report);
            }
        };
        if let Some(e) = expected {
            report.record(
                "dimension",
                format!("dim = {e}"),
                if module.dim() == e { Ok(()) } else { Err(format!("dim = {}", module.dim())) },
            );
        }
        report.absorb("", module.check_relations(self.relations.relations()));
        let exps = Self::weight_exponents(self.n, weights)?;
        let ctx = self.ctx();
        for (i, e) in exps.iter().enumerate() {
            let x = self.generator(Sign::Plus, i, i).expect("diagonal generator");
            let col = module.action_on_unit(&self.gens.generator(x));
            let mut want = vec![Scalar::zero(ctx); module.dim()];
            want[0] = Scalar::v_pow(ctx, -e);
            report.record(
                format!("unit-weight[{}]", i + 1),
                format!("{}·1 = d{}^-1", lp_name(i, i), i + 1),
                if col == want { Ok(()) } else { Err(format!("{col:?}")) },
            );
        }
        Ok(report)
    }
}

/// Compare the `N = 2` module of weight `(σ)` with the `sl(2)` module of
/// lowest weight `-σ`: equal dimension, and equal spectra for the diagonal
/// generators under `L⁺₁₁ ↔ q^{H/2}`, `L⁺₂₂ ↔ q^{-H/2}`, `L⁻₁₁ ↔ q^{-H/2}`,
/// `L⁻₂₂ ↔ q^{H/2}`.
pub fn cross_check_sl2(frt: &FrtInstance, sl2: &crate::sl2::Sl2Instance, sigma: u32, dim_cutoff: usize) -> Result<VerificationReport> {
    use crate::sl2::{K, K_INV};
    if frt.n != 2 {
        return Err(Error::Usage("the sl(2) dictionary needs N = 2".into()));
    }
    let mut report = VerificationReport::new(format!("frt-sl2[sigma={sigma}]"));
    let (Closure::Finite(a), Closure::Finite(b)) = (
        frt.build_rep(&[sigma], dim_cutoff)?,
        sl2.build_rep(sigma as i64, dim_cutoff)?,
    ) else {
        report.fail("dimension", "both modules are finite", "cutoff exceeded");
        return Ok(report);
    };
    report.record(
        "dimension",
        "dim of the L± module = dim of the sl(2) module",
        if a.dim() == b.dim() { Ok(()) } else { Err(format!("{} vs {}", a.dim(), b.dim())) },
    );
    let plain = ParameterContext::new(&[])?;
    let spectrum = |m: &Matrix| -> Result<Vec<String>> {
        if !m.is_diagonal() {
            return Err(Error::Load("diagonal generator acts by a non-diagonal matrix".into()));
        }
        let mut d = m
            .diagonal()
            .iter()
            .map(|x| Ok(x.transport(&plain)?.to_string()))
            .collect::<Result<Vec<_>>>()?;
        d.sort();
        Ok(d)
    };
    for (l, k) in [
        (lp_name(0, 0), K),
        (lp_name(1, 1), K_INV),
        (lm_name(0, 0), K_INV),
        (lm_name(1, 1), K),
    ] {
        let x = spectrum(a.matrix(&l)?)?;
        let y = spectrum(b.matrix(k)?)?;
        report.record(
            format!("spectrum[{l}]"),
            format!("spectrum of {l} = spectrum of {k}"),
            if x == y { Ok(()) } else { Err(format!("{x:?} vs {y:?}")) },
        );
    }
    Ok(report)
}

fn parse_l_name<'a>(nm: &str, plus: &'a NcMatrix, minus: &'a NcMatrix) -> Result<(&'a NcMatrix, usize, usize)> {
    let (m, rest) = if let Some(r) = nm.strip_prefix("L+_{") {
        (plus, r)
    } else if let Some(r) = nm.strip_prefix("L-_{") {
        (minus, r)
    } else {
        return Err(Error::UnknownGenerator(nm.to_string()));
    };
    let digits: Vec<usize> = rest
        .trim_end_matches('}')
        .chars()
        .map(|ch| ch.to_digit(10).map(|d| d as usize - 1))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::UnknownGenerator(nm.to_string()))?;
    match digits[..] {
        [a, c] => Ok((m, a, c)),
        _ => Err(Error::UnknownGenerator(nm.to_string())),
    }
}

/// Entries of `R₁₂Z*₂QZ*₁Q⁻¹ - Z*₁QZ*₂Q⁻¹R₁₂` in the free algebra.
fn cell_relations(cell: &CellAlgebra, s: &StructureSet, n: usize) -> Result<Vec<CPoly>> {
    let z = zstar_matrix(cell, n)?;
    let r = NcMatrix::from_scalar(cell, &s.r);
    let q = NcMatrix::from_scalar(cell, &s.q);
    let qi = NcMatrix::from_scalar(cell, &s.q.inverse()?);
    let z1 = z.embed(n, &[1], 2);
    let z2 = z.embed(n, &[2], 2);
    let lhs = NcMatrix::product(cell, &[&r, &z2, &q, &z1, &qi])?;
    let rhs = NcMatrix::product(cell, &[&z1, &q, &z2, &qi, &r])?;
    let diff = lhs.sub(&rhs);
    let mut out = Vec::new();
    for i in 0..diff.rows() {
        for j in 0..diff.cols() {
            let e = diff.get(i, j);
            if !e.is_zero() {
                out.push(e.clone());
            }
        }
    }
    Ok(out)
}

/// Right sides of the action formulas as `N² × N²` matrices.
fn action_rhs(
    cell: &CellAlgebra,
    s: &StructureSet,
    z: &NcMatrix,
    zi: &NcMatrix,
    n: usize,
) -> Result<(NcMatrix, NcMatrix)> {
    let r21i = NcMatrix::from_scalar(cell, &s.r21().inverse()?);
    let q = NcMatrix::from_scalar(cell, &s.q);
    let qi = NcMatrix::from_scalar(cell, &s.q.inverse()?);
    let z1 = z.embed(n, &[1], 2);
    let z2 = z.embed(n, &[2], 2);
    let z1i = zi.embed(n, &[1], 2);
    let plus = NcMatrix::product(cell, &[&r21i, &z2, &q])?;
    let minus = NcMatrix::product(cell, &[&z1, &q, &z2, &qi, &z1i])?;
    Ok((plus, minus))
}

fn phi_map(
    table: &Arc<ActionTable>,
    cell: &CellAlgebra,
    z: &NcMatrix,
    zi: &NcMatrix,
    d: &Matrix,
    n: usize,
) -> Result<PhiMap> {
    let dinv = d.inverse()?;
    let d2 = d.mul(d);
    let lower = NcMatrix::product(
        cell,
        &[
            z,
            &NcMatrix::from_scalar(cell, &d2),
            zi,
            &NcMatrix::from_scalar(cell, &dinv),
        ],
    )?;
    let gens = table.gens();
    let mut values = vec![CPoly::zero(); gens.len()];
    for a in 0..n {
        for c in 0..n {
            if let Some(x) = gen_index(gens, Sign::Plus, a, c) {
                if a == c {
                    values[x as usize] = cell.constant(dinv.get(a, a).clone());
                }
            }
            if let Some(x) = gen_index(gens, Sign::Minus, a, c) {
                values[x as usize] = lower.get(a, c).clone();
            }
        }
    }
    // φ(L-) must vanish above the diagonal
    for a in 0..n {
        for c in a + 1..n {
            if !lower.get(a, c).is_zero() {
                return Err(Error::Load(format!("φ(L-) has a nonzero entry at ({}, {})", a + 1, c + 1)));
            }
        }
    }
    PhiMap::new(table.clone(), values)
}

/// The relation set: entries of the three `RLL` families, the diagonal
/// inverse relations and `det L⁺ = 1`, with zeros and repeats dropped.
fn ell_relations(gens: &GeneratorSet, s: &StructureSet, n: usize) -> Result<Vec<FreeElement>> {
    use Sign::{Minus, Plus};
    let ctx = gens.ctx();
    let mut out: Vec<FreeElement> = Vec::new();
    let push = |x: FreeElement, out: &mut Vec<FreeElement>| -> Result<()> {
        if x.is_zero() {
            return Ok(());
        }
        let lead = x.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let x = x.scale(&lead.inv()?);
        if !out.contains(&x) {
            out.push(x);
        }
        Ok(())
    };
    let word = |x: Option<u16>, y: Option<u16>, c: &Scalar| -> FreeElement {
        match word2(x, y) {
            Some(w) => FreeElement::word(w, c.clone()),
            None => FreeElement::zero(),
        }
    };
    // R12 A2 B1 = B1 A2 R12
    for (a_sign, b_sign) in [(Plus, Plus), (Minus, Minus), (Plus, Minus)] {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut rel = FreeElement::zero();
                        for e in 0..n {
                            for f in 0..n {
                                let r = s.r.get(pair_index(n, a, b), pair_index(n, e, f));
                                if !r.is_zero() {
                                    // (A2 B1)_{(ef),(cd)} = A_{fd} B_{ec}
                                    rel.add_assign(&word(gen_index(gens, a_sign, f, d), gen_index(gens, b_sign, e, c), r));
                                }
                                let r = s.r.get(pair_index(n, e, f), pair_index(n, c, d));
                                if !r.is_zero() {
                                    // (B1 A2)_{(ab),(ef)} = B_{ae} A_{bf}
                                    rel.add_assign(&word(gen_index(gens, b_sign, a, e), gen_index(gens, a_sign, b, f), &-r));
                                }
                            }
                        }
                        push(rel, &mut out)?;
                    }
                }
            }
        }
    }
    let one = Scalar::one(ctx);
    for i in 0..n {
        let p = gen_index(gens, Plus, i, i).expect("diagonal");
        let m = gen_index(gens, Minus, i, i).expect("diagonal");
        push(word(Some(p), Some(m), &one).minus(&gens.one()), &mut out)?;
        push(word(Some(m), Some(p), &one).minus(&gens.one()), &mut out)?;
    }
    let diag: Vec<u16> = (0..n).map(|i| gen_index(gens, Plus, i, i).expect("diagonal")).collect();
    push(FreeElement::word(Word::from_slice(&diag), one).minus(&gens.one()), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests;

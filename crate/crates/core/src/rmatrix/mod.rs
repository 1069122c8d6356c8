//! R-matrices on `V ⊗ V` and the matrices derived from them.
//!
//! Index convention: the pair `(j, k)` (1-based) is row `N(j-1) + (k-1)`, so
//! the first tensor leg is the slow index. On `V^{⊗3}` the triple
//! `(i, j, k)` is row `N²(i-1) + N(j-1) + (k-1)`.

mod json;

use std::collections::BTreeMap;

pub use json::{EntryJson, MatrixJson, StructureJson, MATRIX_FORMAT_VERSION};

use crate::error::{Error, Result};
use crate::linear::Matrix;
use crate::report::VerificationReport;
use crate::scalar::{Ctx, ParameterContext, Scalar};

/// 0-based row of the pair `(a, b)`.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    n * a + b
}

/// `R`, the flip `P`, `K` and `Q = diag(R)` for one R-matrix.
#[derive(Debug, Clone)]
pub struct StructureSet {
    pub n: usize,
    pub r: Matrix,
    pub p: Matrix,
    pub k: Matrix,
    pub q: Matrix,
    /// Source of `K` when it was given through `K_{jk,st} = C_{kj} (C⁻¹)_{st}`.
    pub c: Option<Matrix>,
}

/// The standard solution for `sl(N)`:
/// `R = q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q - q⁻¹) Σ_{i>j} e_ij⊗e_ji`.
pub fn a_series_r(ctx: &Ctx, n: usize) -> Matrix {
    let mut r = Matrix::zeros(ctx, n * n, n * n);
    let q = Scalar::q_pow(ctx, 1);
    for i in 0..n {
        for j in 0..n {
            let x = pair_index(n, i, j);
            r.set(x, x, if i == j { q.clone() } else { Scalar::one(ctx) });
            if i > j {
                r.set(x, pair_index(n, j, i), Scalar::q_diff(ctx));
            }
        }
    }
    r
}

pub fn build_a_series(ctx: &Ctx, n: usize) -> Result<StructureSet> {
    if n < 2 {
        return Err(Error::Usage(format!("the A-series needs N >= 2, got {n}")));
    }
    StructureSet::from_r(a_series_r(ctx, n), None)
}

pub fn flip(ctx: &Ctx, n: usize) -> Matrix {
    let mut p = Matrix::zeros(ctx, n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            p.set(pair_index(n, a, b), pair_index(n, b, a), Scalar::one(ctx));
        }
    }
    p
}

/// `M₂₁ = P M₁₂ P`.
pub fn swap_legs(m: &Matrix, n: usize) -> Matrix {
    let p = flip(m.ctx(), n);
    p.mul(m).mul(&p)
}

fn side(rows: usize) -> Result<usize> {
    let n = (rows as f64).sqrt().round() as usize;
    if n * n != rows || n < 1 {
        return Err(Error::Usage(format!("size {rows} is not a perfect square")));
    }
    Ok(n)
}

/// Digits of `x` in base `n`, most significant first.
pub(crate) fn digits(mut x: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
    d
}

pub(crate) fn undigits(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// Place `m`, acting on `legs.len()` tensor factors, on the given legs
/// (1-based, in order) of `V^{⊗total}`.
pub fn embed(m: &Matrix, n: usize, legs: &[usize], total: usize) -> Matrix {
    let k = legs.len();
    let ctx = m.ctx();
    let size = n.pow(total as u32);
    let mut out = Matrix::zeros(ctx, size, size);
    let rest: Vec<usize> = (1..=total).filter(|l| !legs.contains(l)).collect();
    let others = n.pow(rest.len() as u32);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            let rd = digits(r, n, k);
            let cd = digits(c, n, k);
            for o in 0..others {
                let od = digits(o, n, rest.len());
                let mut row = vec![0; total];
                let mut col = vec![0; total];
                for (i, &l) in legs.iter().enumerate() {
                    row[l - 1] = rd[i];
                    col[l - 1] = cd[i];
                }
                for (i, &l) in rest.iter().enumerate() {
                    row[l - 1] = od[i];
                    col[l - 1] = od[i];
                }
                out.set(undigits(&row, n), undigits(&col, n), x.clone());
            }
        }
    }
    out
}

/// Render a row index as a tuple of 1-based leg indices.
pub fn label(index: usize, n: usize, legs: usize) -> String {
    let d: Vec<String> = digits(index, n, legs).iter().map(|x| (x + 1).to_string()).collect();
    format!("({})", d.join(","))
}

/// `Ok` if equal, otherwise the first differing entry.
pub fn compare(lhs: &Matrix, rhs: &Matrix, n: usize, legs: usize) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c, a, b)) => Err(format!(
            "first differing entry at row {} col {}: lhs {a}, rhs {b}",
            label(r, n, legs),
            label(c, n, legs)
        )),
    }
}

fn k_from_c(c: &Matrix, n: usize) -> Result<Matrix> {
    let ci = c.inverse()?;
    let ctx = c.ctx();
    let mut k = Matrix::zeros(ctx, n * n, n * n);
    for j in 0..n {
        for kk in 0..n {
            for s in 0..n {
                for t in 0..n {
                    k.set(pair_index(n, j, kk), pair_index(n, s, t), c.get(kk, j) * ci.get(s, t));
                }
            }
        }
    }
    Ok(k)
}

impl StructureSet {
    /// Derive `P`, `Q` and `K`; `K` comes from `c` when given, otherwise from
    /// `R₁₂ - R₂₁⁻¹ = (q - q⁻¹)(P - K₁₂)`.
    pub fn from_r(r: Matrix, c: Option<Matrix>) -> Result<Self> {
        if r.rows() != r.cols() {
            return Err(Error::Usage("R must be square".into()));
        }
        let n = side(r.rows())?;
        let ctx = r.ctx().clone();
        let p = flip(&ctx, n);
        let k = match &c {
            Some(c) => {
                if c.rows() != n || c.cols() != n {
                    return Err(Error::Usage(format!("C must be {n}x{n}")));
                }
                k_from_c(c, n)?
            }
            None => {
                let diff = r.sub(&swap_legs(&r, n).inverse()?);
                p.sub(&diff.scale(&Scalar::q_diff(&ctx).inv()?))
            }
        };
        let mut q = Matrix::zeros(&ctx, n * n, n * n);
        for i in 0..n * n {
            q.set(i, i, r.get(i, i).clone());
        }
        Ok(StructureSet { n, r, p, k, q, c })
    }

    pub fn ctx(&self) -> &Ctx {
        self.r.ctx()
    }

    pub fn r21(&self) -> Matrix {
        swap_legs(&self.r, self.n)
    }

    /// `R₁₂ - R₂₁⁻¹ = (q - q⁻¹)(P - K₁₂)` with the stored `K`.
    pub fn check_k_relation(&self) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("k-relation");
        let lhs = self.r.sub(&self.r21().inverse()?);
        let rhs = self.p.sub(&self.k).scale(&Scalar::q_diff(self.ctx()));
        report.record(
            "r-minus-r21-inverse",
            "R12 - R21^-1 = (q - q^-1)(P - K12)",
            compare(&lhs, &rhs, self.n, 2),
        );
        Ok(report)
    }

    /// Lower triangularity, `R_{jk,jt} = 0` for `k ≠ t`, and `R₁₂ᵗ = R₂₁`.
    pub fn check_triangularity(&self) -> VerificationReport {
        let mut report = VerificationReport::new("triangularity");
        let n = self.n;
        let upper = (0..n * n)
            .flat_map(|r| (r + 1..n * n).map(move |c| (r, c)))
            .find(|&(r, c)| !self.r.get(r, c).is_zero());
        report.record(
            "lower-triangular",
            "R is lower triangular in lexicographic pair order",
            match upper {
                None => Ok(()),
                Some((r, c)) => Err(format!("nonzero entry at row {} col {}", label(r, n, 2), label(c, n, 2))),
            },
        );
        let mut bad = None;
        'outer: for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    if k != t && !self.r.get(pair_index(n, j, k), pair_index(n, j, t)).is_zero() {
                        bad = Some(format!("R_{{{}{},{}{}}} ≠ 0", j + 1, k + 1, j + 1, t + 1));
                        break 'outer;
                    }
                }
            }
        }
        report.record("same-first-index", "R_{jk,jt} = 0 for k ≠ t", bad.map_or(Ok(()), Err));
        report.record(
            "transpose",
            "R12^t = R21",
            compare(&self.r.transpose(), &self.r21(), n, 2),
        );
        report
    }

    /// `P² = 1`, `Q` diagonal and `Q₁₂ = Q₂₁`.
    pub fn check_basic(&self) -> VerificationReport {
        let mut report = VerificationReport::new("structure");
        let n = self.n;
        let id = Matrix::identity(self.ctx(), n * n);
        report.record("flip-involution", "P^2 = 1", compare(&self.p.mul(&self.p), &id, n, 2));
        report.record(
            "q-diagonal",
            "Q = diag(R) is diagonal",
            if self.q.is_diagonal() { Ok(()) } else { Err("off-diagonal entry".into()) },
        );
        report.record(
            "q-symmetric",
            "Q12 = Q21",
            compare(&self.q, &swap_legs(&self.q, n), n, 2),
        );
        report
    }

    /// The identities relating `K`, `R` and `Q` on `V^{⊗3}`, and the
    /// commutation of `R` with `D₁D₂` for diagonal `D` satisfying
    /// `K₁₂D₁D₂ = K₁₂`.
    pub fn k_identities_check(&self) -> Result<VerificationReport> {
        let n = self.n;
        let mut report = VerificationReport::new("k-identities");
        let e = |m: &Matrix, legs: &[usize]| embed(m, n, legs, 3);
        let k12 = e(&self.k, &[1, 2]);
        let r31 = e(&self.r, &[3, 1]);
        let r32 = e(&self.r, &[3, 2]);
        let r23 = e(&self.r, &[2, 3]);
        let r13 = e(&self.r, &[1, 3]);
        let r12 = e(&self.r, &[1, 2]);
        let q13 = e(&self.q, &[1, 3]);
        let q23 = e(&self.q, &[2, 3]);
        report.record(
            "k-r31",
            "K12 R31^-1 = K12 R32",
            compare(&k12.mul(&r31.inverse()?), &k12.mul(&r32), n, 3),
        );
        report.record(
            "k-r23",
            "K12 R23^-1 = K12 R13",
            compare(&k12.mul(&r23.inverse()?), &k12.mul(&r13), n, 3),
        );
        let qq = q13.mul(&q23);
        report.record("k-q", "K12 Q13 Q23 = K12", compare(&k12.mul(&qq), &k12, n, 3));
        report.record("r-q", "R12 Q13 Q23 = Q13 Q23 R12", compare(&r12.mul(&qq), &qq.mul(&r12), n, 3));
        report.absorb("", self.check_basic());
        report.absorb("", self.d_commutation_check()?);
        Ok(report)
    }

    /// Impose `K₁₂D₁D₂ = K₁₂` on a formal diagonal `D` and check
    /// `R₁₂D₁D₂ = D₁D₂R₁₂`.
    ///
    /// With `D = diag(d₁, …, d_N)` the hypothesis says `d_s d_t = 1` for every
    /// column `(s, t)` in which `K` has a nonzero entry. Those constraints
    /// link indices in pairs; each linked class gets one free parameter (with
    /// alternating inverse), and a class containing an odd cycle is forced to
    /// 1. When `K = 0` every `d_i` stays free.
    pub fn d_commutation_check(&self) -> Result<VerificationReport> {
        let n = self.n;
        let mut edges = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let col = pair_index(n, s, t);
                if (0..n * n).any(|r| !self.k.get(r, col).is_zero()) {
                    edges.push((s, t));
                }
            }
        }
        let exps = solve_sign_classes(n, &edges);
        let prefix = fresh_prefix(self.ctx());
        let free: BTreeMap<usize, String> = exps
            .iter()
            .filter_map(|e| e.map(|(root, _)| root))
            .map(|root| (root, format!("{prefix}{}", root + 1)))
            .collect();
        let mut params: Vec<String> = self.ctx().names()[1..].to_vec();
        params.extend(free.values().cloned());
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        let ctx = ParameterContext::with_base_root(self.ctx().base_root(), &names)?;
        let r = self.r.transport(&ctx)?;
        let mut d = Matrix::zeros(&ctx, n, n);
        let mut shown = Vec::new();
        for (i, e) in exps.iter().enumerate() {
            let x = match e {
                None => Scalar::one(&ctx),
                Some((root, sign)) => Scalar::var(&ctx, &free[root])?.pow(*sign)?,
            };
            shown.push(x.to_string());
            d.set(i, i, x);
        }
        let d1 = embed(&d, n, &[1], 2);
        let d2 = embed(&d, n, &[2], 2);
        let dd = d1.mul(&d2);
        let mut report = VerificationReport::new("d-commutation");
        report.record(
            "r-d-commute",
            format!("R12 D1 D2 = D1 D2 R12 for D = diag({})", shown.join(", ")),
            compare(&r.mul(&dd), &dd.mul(&r), n, 2),
        );
        Ok(report)
    }
}

/// For constraints `x_s + x_t = 0`, express each `x_i` as `±x_root` or `0`.
fn solve_sign_classes(n: usize, edges: &[(usize, usize)]) -> Vec<Option<(usize, i32)>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in edges {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut sign = vec![0i32; n];
    let mut root = vec![usize::MAX; n];
    let mut forced = vec![false; n];
    for start in 0..n {
        if root[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        let mut members = vec![start];
        root[start] = start;
        sign[start] = 1;
        let mut odd = false;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if root[y] == usize::MAX {
                    root[y] = start;
                    sign[y] = -sign[x];
                    members.push(y);
                    stack.push(y);
                } else if sign[y] == sign[x] {
                    odd = true;
                }
            }
        }
        if odd {
            for m in members {
                forced[m] = true;
            }
        }
    }
    (0..n)
        .map(|i| if forced[i] { None } else { Some((root[i], sign[i])) })
        .collect()
}

fn fresh_prefix(ctx: &Ctx) -> String {
    let mut p = "d".to_string();
    while ctx.names().iter().any(|x| x.starts_with(&p)) {
        p.push('d');
    }
    p
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `V^{⊗3}`.
pub fn ybe_check(r: &Matrix) -> Result<VerificationReport> {
    if r.rows() != r.cols() {
        return Err(Error::Usage("R must be square".into()));
    }
    let n = side(r.rows())?;
    let r12 = embed(r, n, &[1, 2], 3);
    let r13 = embed(r, n, &[1, 3], 3);
    let r23 = embed(r, n, &[2, 3], 3);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let mut report = VerificationReport::new("ybe");
    report.record(
        format!("ybe[N={n}]"),
        "R12 R13 R23 = R23 R13 R12",
        compare(&lhs, &rhs, n, 3),
    );
    Ok(report)
}

/// Everything checkable for a structure set: YBE, triangularity, the
/// relation defining `K`, and the `K`/`R`/`Q` identities.
pub fn full_suite(s: &StructureSet) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("structure-set");
    report.absorb("", ybe_check(&s.r)?);
    report.absorb("", s.check_triangularity());
    report.absorb("", s.check_k_relation()?);
    report.absorb("", s.k_identities_check()?);
    Ok(report)
}

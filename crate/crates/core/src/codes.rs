//! λ-constacyclic codes (ideals of R_λ) and 2-quasi λ-constacyclic codes
//! (R_λ-submodules of R_λ²), stored as a reduced row echelon generator matrix.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::distance::{self, MinWeightOptions};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    /// Words of length n, closed under the λ-shift.
    Constacyclic,
    /// Words (c, c') of length 2n, closed under the simultaneous λ-shift of both halves.
    TwoQuasi,
}

impl CodeKind {
    pub fn blocks(self) -> usize {
        match self {
            CodeKind::Constacyclic => 1,
            CodeKind::TwoQuasi => 2,
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Constacyclic => "constacyclic",
            CodeKind::TwoQuasi => "two-quasi",
        })
    }
}

/// A linear code with the module structure of R_λ or R_λ².
#[derive(Clone)]
pub struct QuasiCode {
    ctx: RingContext,
    kind: CodeKind,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for QuasiCode {
    /// Equal row spaces of the same kind (RREF is canonical).
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.ctx.field() == other.ctx.field()
            && self.basis == other.basis
    }
}

impl Eq for QuasiCode {}

impl fmt::Debug for QuasiCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuasiCode[{} {:?}, dim {}] {:?}",
            self.kind,
            self.ctx,
            self.dim(),
            self.basis
        )
    }
}

/// Galois p^h inner product Σ u_i v_i^{p^h}.
pub fn galois_inner(
    f: &Field,
    u: &[FieldElement],
    v: &[FieldElement],
    h: u32,
) -> Result<FieldElement> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    f.check_h(h)?;
    let e = f.frobenius_exponent(h);
    Ok(u.iter().zip(v).fold(FieldElement::ZERO, |acc, (&a, &b)| {
        f.add(acc, f.mul(a, f.pow(b, e)))
    }))
}

/// Simultaneous λ-shift of each length-n block of `w`.
pub fn shift_word(
    ctx: &RingContext,
    lambda: FieldElement,
    w: &[FieldElement],
) -> Vec<FieldElement> {
    let n = ctx.n();
    let f = ctx.field();
    let mut out = Vec::with_capacity(w.len());
    for block in w.chunks(n) {
        out.push(f.mul(lambda, block[n - 1]));
        out.extend_from_slice(&block[..n - 1]);
    }
    out
}

impl QuasiCode {
    fn from_matrix(ctx: &RingContext, kind: CodeKind, m: &Matrix) -> QuasiCode {
        let (basis, pivots) = m.rref();
        QuasiCode {
            ctx: ctx.clone(),
            kind,
            basis,
            pivots,
        }
    }

    fn check_rows(ctx: &RingContext, kind: CodeKind, rows: &[Vec<FieldElement>]) -> Result<()> {
        let len = ctx.n() * kind.blocks();
        for r in rows {
            if r.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    found: r.len(),
                });
            }
            if r.iter().any(|c| c.index() as u64 >= ctx.field().order()) {
                return Err(Error::InvalidInput("entry is not a field element".into()));
            }
        }
        Ok(())
    }

    /// The F-span of `rows`; fails with `NotClosed` if it is not shift-invariant.
    pub fn span(
        ctx: &RingContext,
        kind: CodeKind,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<QuasiCode> {
        Self::check_rows(ctx, kind, &rows)?;
        let len = ctx.n() * kind.blocks();
        let c = Self::from_matrix(ctx, kind, &Matrix::from_rows(ctx.field(), len, rows));
        if !c.is_closed_under(ctx.lambda()) {
            return Err(Error::NotClosed);
        }
        Ok(c)
    }

    /// The submodule generated by `rows`: the F-span of all their shifts.
    pub fn generated_by(
        ctx: &RingContext,
        kind: CodeKind,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<QuasiCode> {
        Self::check_rows(ctx, kind, &rows)?;
        let len = ctx.n() * kind.blocks();
        let mut all = Vec::with_capacity(rows.len() * ctx.n());
        for r in rows {
            let mut cur = r;
            for _ in 0..ctx.n() {
                let next = shift_word(ctx, ctx.lambda(), &cur);
                all.push(cur);
                cur = next;
            }
        }
        Ok(Self::from_matrix(
            ctx,
            kind,
            &Matrix::from_rows(ctx.field(), len, all),
        ))
    }

    /// C_{a,a'}: row space of (a(P_λ), a'(P_λ)).
    pub fn from_pair(a: &RingElement, a2: &RingElement) -> Result<QuasiCode> {
        if a.ctx() != a2.ctx() {
            return Err(Error::ContextMismatch);
        }
        let m = a.circulant().hstack(&a2.circulant());
        Ok(Self::from_matrix(a.ctx(), CodeKind::TwoQuasi, &m))
    }

    /// The ideal C_a = R_λ a, as a code in F^n.
    pub fn ideal(a: &RingElement) -> QuasiCode {
        Self::from_matrix(a.ctx(), CodeKind::Constacyclic, &a.circulant())
    }

    pub fn zero(ctx: &RingContext, kind: CodeKind) -> QuasiCode {
        Self::from_matrix(
            ctx,
            kind,
            &Matrix::zeros(ctx.field(), 0, ctx.n() * kind.blocks()),
        )
    }

    pub fn full(ctx: &RingContext, kind: CodeKind) -> QuasiCode {
        Self::from_matrix(
            ctx,
            kind,
            &Matrix::identity(ctx.field(), ctx.n() * kind.blocks()),
        )
    }

    /// A × B for constacyclic codes A, B in the same ring.
    pub fn product(a: &QuasiCode, b: &QuasiCode) -> Result<QuasiCode> {
        if a.kind != CodeKind::Constacyclic || b.kind != CodeKind::Constacyclic || a.ctx != b.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = a.ctx.n();
        let z = vec![FieldElement::ZERO; n];
        let mut rows = Vec::new();
        for r in a.basis.row_vecs() {
            let mut w = r;
            w.extend_from_slice(&z);
            rows.push(w);
        }
        for r in b.basis.row_vecs() {
            let mut w = z.clone();
            w.extend(r);
            rows.push(w);
        }
        Ok(Self::from_matrix(
            &a.ctx,
            CodeKind::TwoQuasi,
            &Matrix::from_rows(a.ctx.field(), 2 * n, rows),
        ))
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn field(&self) -> &Field {
        self.ctx.field()
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn length(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// RREF generator matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The same words viewed in another ring (used for duals and transports).
    pub fn with_ctx(&self, ctx: &RingContext) -> Result<QuasiCode> {
        if ctx.n() != self.ctx.n() || ctx.field() != self.ctx.field() {
            return Err(Error::ContextMismatch);
        }
        let c = QuasiCode {
            ctx: ctx.clone(),
            kind: self.kind,
            basis: self.basis.clone(),
            pivots: self.pivots.clone(),
        };
        if !c.is_closed_under(ctx.lambda()) {
            return Err(Error::NotClosed);
        }
        Ok(c)
    }

    /// Reduces `w` against the basis; zero iff w ∈ C.
    fn residual(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let mut r = w.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(self.basis.row(i)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        r
    }

    pub fn contains(&self, w: &[FieldElement]) -> Result<bool> {
        if w.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                found: w.len(),
            });
        }
        Ok(self.residual(w).iter().all(|c| c.is_zero()))
    }

    /// Whether every basis row stays in C under the λ'-shift.
    pub fn is_closed_under(&self, lambda: FieldElement) -> bool {
        (0..self.dim()).all(|i| {
            let s = shift_word(&self.ctx, lambda, self.basis.row(i));
            self.residual(&s).iter().all(|c| c.is_zero())
        })
    }

    /// C^{⊥h}, living in R_{λ'}² with λ' = λ^{−p^{ℓ−h}}.
    pub fn galois_dual(&self, h: u32) -> Result<QuasiCode> {
        let f = self.field();
        f.check_h(h)?;
        let euclid = if self.dim() == 0 {
            Matrix::identity(f, self.length())
        } else {
            self.basis.nullspace()
        };
        let mut rows = euclid.row_vecs();
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = f.frobenius_inverse(*x, h)?;
            }
        }
        let lam = f.inv(f.frobenius_inverse(self.ctx.lambda(), h)?).unwrap();
        let ctx = if lam == self.ctx.lambda() {
            self.ctx.clone()
        } else {
            RingContext::new(f, self.ctx.n(), lam)?
        };
        let dual = Self::from_matrix(&ctx, self.kind, &Matrix::from_rows(f, self.length(), rows));
        if dual.dim() + self.dim() != self.length() || !dual.is_closed_under(lam) {
            return Err(Error::InvariantViolation(
                "Galois dual lost its module structure".into(),
            ));
        }
        Ok(dual)
    }

    /// C = C^{⊥h}, decided by computing the dual.
    pub fn is_galois_self_dual(&self, h: u32) -> Result<bool> {
        if 2 * self.dim() != self.length() {
            self.field().check_h(h)?;
            return Ok(false);
        }
        Ok(self.galois_dual(h)?.basis == self.basis)
    }

    /// ⟨r_i, r_j⟩_h = 0 for all basis rows.
    pub fn is_self_orthogonal(&self, h: u32) -> Result<bool> {
        let gram = self.basis.mul(&self.basis.galois_transpose(h)?);
        Ok(gram.is_zero())
    }

    fn block(&self, side: usize) -> Matrix {
        let n = self.ctx.n();
        Matrix::from_rows(
            self.field(),
            n,
            (0..self.dim())
                .map(|r| self.basis.row(r)[side * n..(side + 1) * n].to_vec())
                .collect(),
        )
    }

    /// ρ₁(C) (side 0) or ρ₂(C) (side 1) as constacyclic codes.
    pub fn projection(&self, side: usize) -> Result<QuasiCode> {
        self.require_two_quasi()?;
        Ok(Self::from_matrix(
            &self.ctx,
            CodeKind::Constacyclic,
            &self.block(side),
        ))
    }

    /// Kernel of the projection onto `side`, as a code in the other block:
    /// side 0 gives {c' : (0, c') ∈ C}, side 1 gives {c : (c, 0) ∈ C}.
    pub fn kernel(&self, side: usize) -> Result<QuasiCode> {
        self.require_two_quasi()?;
        let this = self.block(side);
        let other = self.block(1 - side);
        let comb = this.transpose().nullspace();
        let rows = comb.row_vecs().iter().map(|x| other.vec_mul(x)).collect();
        Ok(Self::from_matrix(
            &self.ctx,
            CodeKind::Constacyclic,
            &Matrix::from_rows(self.field(), self.ctx.n(), rows),
        ))
    }

    fn require_two_quasi(&self) -> Result<()> {
        if self.kind == CodeKind::TwoQuasi {
            Ok(())
        } else {
            Err(Error::InvalidInput(
                "operation needs a two-quasi code".into(),
            ))
        }
    }

    /// Minimum weight, exact or sampled according to `opts`.
    pub fn metrics(&self, opts: &MinWeightOptions) -> CodeMetrics {
        let mw = distance::min_weight(&self.basis, opts);
        CodeMetrics {
            length: self.length(),
            dim: self.dim(),
            min_weight: mw.weight,
            exact: mw.exact,
        }
    }

    /// |{c ∈ C : w(c) ≤ δ·length}| by exhaustive enumeration.
    pub fn weight_census(&self, delta: Ratio<u64>, budget: u128) -> Result<u128> {
        let dist = distance::weight_distribution(&self.basis, budget)?;
        let len = self.length() as u64;
        Ok(dist
            .iter()
            .enumerate()
            .filter(|(w, _)| (*w as u64) * delta.denom() <= delta.numer() * len)
            .map(|(_, c)| c)
            .sum())
    }

    /// Number of codewords of each weight.
    pub fn weight_distribution(&self, budget: u128) -> Result<Vec<u128>> {
        distance::weight_distribution(&self.basis, budget)
    }

    pub fn words(&self) -> Vec<Vec<FieldElement>> {
        self.basis.row_vecs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeMetrics {
    pub length: usize,
    pub dim: usize,
    pub min_weight: usize,
    pub exact: bool,
}

impl CodeMetrics {
    pub fn rel_distance(&self) -> Ratio<u64> {
        Ratio::new(self.min_weight as u64, self.length as u64)
    }

    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.dim as u64, self.length as u64)
    }
}

/// Rational δ from "0.25", "1/3" or "1".
pub fn parse_delta(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::DeltaOutOfRange(s.to_string());
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a = u64::from_str(a.trim()).map_err(|_| bad())?;
        let b = u64::from_str(b.trim()).map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int = if int.is_empty() {
        0
    } else {
        u64::from_str(int).map_err(|_| bad())?
    };
    let den = 10u64.pow(frac.len() as u32);
    let num = if frac.is_empty() {
        0
    } else {
        u64::from_str(frac).map_err(|_| bad())?
    };
    let total = int
        .checked_mul(den)
        .and_then(|x| x.checked_add(num))
        .ok_or_else(bad)?;
    Ok(Ratio::new(total, den))
}

/// h_q(δ) = δ log_q(q−1) − δ log_q δ − (1−δ) log_q(1−δ), for 0 ≤ δ ≤ 1 − 1/q.
pub fn entropy(q: u64, delta: Ratio<u64>) -> Result<f64> {
    if q < 2 || delta.numer() * q > (q - 1) * delta.denom() {
        return Err(Error::DeltaOutOfRange(format!("{delta}")));
    }
    let d = *delta.numer() as f64 / *delta.denom() as f64;
    if d == 0.0 {
        return Ok(0.0);
    }
    let lq = (q as f64).ln();
    let mut h = d * ((q - 1) as f64).ln() / lq - d * d.ln() / lq;
    if d < 1.0 {
        h -= (1.0 - d) * (1.0 - d).ln() / lq;
    }
    Ok(h)
}

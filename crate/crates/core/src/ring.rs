//! The quotient ring R_λ = F[X]/⟨X^n − λ⟩.
//!
//! Elements are length-n coefficient vectors (the unique representative of degree < n).
//! Multiplication is schoolbook with the wrap X^{n+k} = λX^k folded in.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{gcd, Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::Poly;

struct CtxInner {
    field: Field,
    n: usize,
    lambda: FieldElement,
    t: u64,
}

/// Shared description of R_λ: field, length n > 1, nonzero λ and t = ord(λ).
#[derive(Clone)]
pub struct RingContext {
    inner: Arc<CtxInner>,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n
                && self.inner.lambda == other.inner.lambda
                && self.inner.field == other.inner.field)
    }
}

impl Eq for RingContext {}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R(n={}, lambda={}) over {:?}",
            self.inner.n,
            self.inner.field.format(self.inner.lambda),
            self.inner.field
        )
    }
}

impl RingContext {
    pub fn new(field: &Field, n: usize, lambda: FieldElement) -> Result<RingContext> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("length n = {n} must be > 1")));
        }
        if lambda.index() as u64 >= field.order() {
            return Err(Error::InvalidInput("lambda is not a field element".into()));
        }
        let t = field.order_of(lambda)?;
        Ok(RingContext {
            inner: Arc::new(CtxInner {
                field: field.clone(),
                n,
                lambda,
                t,
            }),
        })
    }

    /// The cyclic ring F[X]/⟨X^n − 1⟩.
    pub fn cyclic(field: &Field, n: usize) -> Result<RingContext> {
        RingContext::new(field, n, FieldElement::ONE)
    }

    pub fn field(&self) -> &Field {
        &self.inner.field
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn lambda(&self) -> FieldElement {
        self.inner.lambda
    }

    /// Multiplicative order of λ.
    pub fn t(&self) -> u64 {
        self.inner.t
    }

    /// gcd(n, q) = 1.
    pub fn is_semisimple(&self) -> bool {
        gcd(self.n() as u64, self.field().order()) == 1
    }

    /// λ^{1+p^h} = 1, the hypothesis under which the * operator exists.
    pub fn star_defined(&self, h: u32) -> Result<bool> {
        let f = self.field();
        f.check_h(h)?;
        Ok(f.pow(self.lambda(), 1 + f.frobenius_exponent(h)) == FieldElement::ONE)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ctx: self.clone(),
            coeffs: vec![FieldElement::ZERO; self.n()],
        }
    }

    pub fn one(&self) -> RingElement {
        self.constant(FieldElement::ONE)
    }

    pub fn constant(&self, c: FieldElement) -> RingElement {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// c·X^k reduced with X^n = λ.
    pub fn monomial(&self, c: FieldElement, k: u64) -> RingElement {
        let n = self.n() as u64;
        let f = self.field();
        let wraps = (k / n) % self.t();
        let mut z = self.zero();
        z.coeffs[(k % n) as usize] = f.mul(c, f.pow(self.lambda(), wraps));
        z
    }

    pub fn x(&self) -> RingElement {
        self.monomial(FieldElement::ONE, 1)
    }

    pub fn element(&self, coeffs: Vec<FieldElement>) -> Result<RingElement> {
        if coeffs.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: coeffs.len(),
            });
        }
        if coeffs
            .iter()
            .any(|c| c.index() as u64 >= self.field().order())
        {
            return Err(Error::InvalidInput(
                "coefficient is not a field element".into(),
            ));
        }
        Ok(RingElement {
            ctx: self.clone(),
            coeffs,
        })
    }

    /// Element from small integers mapped into the prime subfield.
    pub fn from_ints(&self, coeffs: &[i64]) -> Result<RingElement> {
        let f = self.field();
        self.element(coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    /// Reduces an arbitrary polynomial modulo X^n − λ.
    pub fn from_poly(&self, p: &Poly) -> RingElement {
        let f = self.field();
        let mut z = self.zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.monomial(c, k as u64);
            let i = k % self.n();
            z.coeffs[i] = f.add(z.coeffs[i], m.coeffs[i]);
        }
        z
    }

    /// X^n − λ as a polynomial.
    pub fn modulus(&self) -> Poly {
        let f = self.field();
        let mut v = vec![FieldElement::ZERO; self.n() + 1];
        v[0] = f.neg(self.lambda());
        v[self.n()] = FieldElement::ONE;
        Poly::new(v)
    }

    /// The λ-constacyclic permutation matrix P_λ.
    pub fn perm_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(self.field(), n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, FieldElement::ONE);
        }
        m.set(n - 1, 0, self.lambda());
        m
    }

    /// Number of ring elements, q^n, if it fits in u128.
    pub fn size(&self) -> Option<u128> {
        (self.field().order() as u128).checked_pow(self.n() as u32)
    }

    /// The element whose coefficient indices are the base-q digits of `idx`.
    pub fn element_at(&self, mut idx: u128) -> RingElement {
        let q = self.field().order() as u128;
        let coeffs = (0..self.n())
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                crate::gf::element_from_index(c)
            })
            .collect();
        RingElement {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// Every element of R_λ in index order. Panics if q^n overflows u128.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let total = self.size().expect("ring too large to enumerate");
        (0..total).map(move |i| self.element_at(i))
    }

    pub fn random(&self, rng: &mut impl Rng) -> RingElement {
        let q = self.field().order() as u32;
        RingElement {
            ctx: self.clone(),
            coeffs: (0..self.n())
                .map(|_| crate::gf::element_from_index(rng.random_range(0..q)))
                .collect(),
        }
    }
}

/// An element of R_λ tagged with its context.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ctx: RingContext,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.ctx.field();
        let terms: Vec<String> = self.coeffs.iter().map(|&c| fld.format(c)).collect();
        write!(f, "({})", terms.join(", "))
    }
}

impl RingElement {
    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Hamming weight of the coefficient word.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn same_ctx(&self, other: &RingElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let f = self.ctx.field();
        Ok(RingElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let f = self.ctx.field();
        Ok(RingElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let f = self.ctx.field();
        let n = self.ctx.n();
        let lambda = self.ctx.lambda();
        let mut low = vec![FieldElement::ZERO; n];
        let mut high = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                let prod = f.mul(a, b);
                if k < n {
                    low[k] = f.add(low[k], prod);
                } else {
                    high[k - n] = f.add(high[k - n], prod);
                }
            }
        }
        for k in 0..n {
            low[k] = f.add(low[k], f.mul(lambda, high[k]));
        }
        Ok(RingElement {
            ctx: self.ctx.clone(),
            coeffs: low,
        })
    }

    pub fn scale(&self, c: FieldElement) -> RingElement {
        let f = self.ctx.field();
        RingElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut acc = self.ctx.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if the element is a unit of R_λ.
    pub fn inverse(&self) -> Option<RingElement> {
        let f = self.ctx.field();
        Poly::inv_mod(&self.to_poly(), &self.ctx.modulus(), f).map(|p| self.ctx.from_poly(&p))
    }

    /// The λ-constacyclic shift (λa_{n−1}, a_0, …, a_{n−2}), i.e. multiplication by X.
    pub fn shift(&self) -> RingElement {
        let f = self.ctx.field();
        let n = self.ctx.n();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(f.mul(self.ctx.lambda(), self.coeffs[n - 1]));
        coeffs.extend_from_slice(&self.coeffs[..n - 1]);
        RingElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// The λ-consta circulant a(P_λ): row 0 is the coefficient word, each later row the
    /// shift of the one above.
    pub fn circulant(&self) -> Matrix {
        let n = self.ctx.n();
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            let next = cur.shift();
            rows.push(cur.coeffs);
            cur = next;
        }
        Matrix::from_rows(self.ctx.field(), n, rows)
    }

    /// a* = Σ a_i^{p^h} (X^{nt−1})^i mod X^n − λ. Requires λ^{1+p^h} = 1.
    pub fn star(&self, h: u32) -> Result<RingElement> {
        if !self.ctx.star_defined(h)? {
            return Err(Error::LambdaHypothesisViolated { h });
        }
        let f = self.ctx.field();
        let n = self.ctx.n() as u128;
        let t = self.ctx.t() as u128;
        let e = n * t - 1;
        let fe = f.frobenius_exponent(h);
        let mut out = vec![FieldElement::ZERO; n as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = i as u128 * e;
            let wraps = ((k / n) % t) as u64;
            let c = f.mul(f.pow(a, fe), f.pow(self.ctx.lambda(), wraps));
            let idx = (k % n) as usize;
            out[idx] = f.add(out[idx], c);
        }
        Ok(RingElement {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    /// Coefficientwise Frobenius a ↦ Σ a_i^{p^h} X^i.
    pub fn frobenius(&self, h: u32) -> Result<RingElement> {
        let f = self.ctx.field();
        f.check_h(h)?;
        let e = f.frobenius_exponent(h);
        Ok(RingElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.pow(a, e)).collect(),
        })
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring context mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring context mismatch")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring context mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let f = self.ctx.field();
        RingElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}

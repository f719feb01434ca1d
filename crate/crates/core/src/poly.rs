//! Dense univariate polynomials over a [`Field`], plus factorization of square-free
//! polynomials (distinct-degree, then Cantor–Zassenhaus equal-degree splitting).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{element_from_index, Field, FieldElement};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<FieldElement>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![FieldElement::ONE])
    }

    pub fn x() -> Poly {
        Poly(vec![FieldElement::ZERO, FieldElement::ONE])
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    /// c·X^k
    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let mut v = vec![FieldElement::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Builds from raw element indices (for prime fields these are the residues).
    pub fn from_indices(idx: &[u32]) -> Poly {
        // not validated: callers check indices against the field
        Poly::new(idx.iter().map(|&i| element_from_index(i)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    /// Coefficient of X^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.0.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<FieldElement> {
        self.0.last().copied()
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, f: &Field) -> Poly {
        Poly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![FieldElement::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv);
            q[k - dd] = t;
            for (j, &dj) in d.0.iter().enumerate() {
                r[k - dd + j] = f.sub(r[k - dd + j], f.mul(t, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(f.inv(l).unwrap(), f),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns (g, s, t) with s·a + t·b = g, g a (not necessarily monic) gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly, f: &Field) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            let s2 = s0.sub(&q.mul(&s1, f), f);
            let t2 = t0.sub(&q.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    /// Inverse of `a` modulo `m`, if gcd(a, m) = 1.
    pub fn inv_mod(a: &Poly, m: &Poly, f: &Field) -> Option<Poly> {
        let (g, s, _) = Poly::ext_gcd(&a.rem(m, f), m, f);
        if g.degree() != Some(0) {
            return None;
        }
        Some(s.scale(f.inv(g.0[0]).unwrap(), f).rem(m, f))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly, f: &Field) -> Poly {
        self.mul(other, f).rem(m, f)
    }

    pub fn pow_mod(base: &Poly, mut e: u64, m: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let mut b = base.rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m, f);
            }
            b = b.mul_mod(&b, m, f);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: FieldElement, f: &Field) -> FieldElement {
        self.0
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Irreducibility over `f` (Rabin's test with q-power Frobenius).
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = f.order();
        let m = self.monic(f);
        let x = Poly::x();
        let mut pows = vec![x.rem(&m, f)];
        for k in 0..d {
            let next = Poly::pow_mod(&pows[k], q, &m, f);
            pows.push(next);
        }
        if pows[d] != pows[0] {
            return false;
        }
        crate::gf::prime_factors(d as u64).into_iter().all(|r| {
            let h = pows[d / r as usize].sub(&x, f);
            Poly::gcd(&h, &m, f).degree() == Some(0)
        })
    }

    /// Monic irreducible factors of a square-free polynomial, sorted by degree and then
    /// by coefficient indices. Randomized equal-degree splitting is driven by `seed`.
    pub fn factor_squarefree(&self, f: &Field, seed: u64) -> Vec<Poly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.monic(f);
        let mut out = Vec::new();
        for (d, block) in distinct_degree(&m, f) {
            equal_degree(&block, d, f, &mut rng, &mut out);
        }
        out.sort_by(|a, b| {
            a.0.len().cmp(&b.0.len()).then_with(|| {
                let ka: Vec<u32> = a.0.iter().rev().map(|c| c.index()).collect();
                let kb: Vec<u32> = b.0.iter().rev().map(|c| c.index()).collect();
                ka.cmp(&kb)
            })
        });
        out
    }
}

/// Pairs (d, product of all degree-d irreducible factors).
fn distinct_degree(m: &Poly, f: &Field) -> Vec<(usize, Poly)> {
    let q = f.order();
    let mut out = Vec::new();
    let mut rest = m.clone();
    let x = Poly::x();
    let mut xq = x.rem(&rest, f);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((deg, rest.clone()));
            break;
        }
        xq = Poly::pow_mod(&xq, q, &rest, f);
        let g = Poly::gcd(&xq.sub(&x, f), &rest, f);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g, f).0;
            xq = xq.rem(&rest, f);
            out.push((d, g));
        }
    }
    out
}

fn equal_degree(m: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let deg = m.degree().unwrap();
    if deg == d {
        out.push(m.clone());
        return;
    }
    let q = f.order();
    loop {
        let a = Poly::new(
            (0..deg)
                .map(|_| element_from_index(rng.random_range(0..q as u32)))
                .collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q.is_multiple_of(2) {
            // absolute trace a + a^2 + ... + a^{2^{kd-1}}, values in GF(2) on each factor
            let k = f.degree() as usize;
            let mut t = a.rem(m, f);
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = t.mul_mod(&t, m, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^{(q^d - 1)/2} as the product of (a^{(q-1)/2})^{q^i}, i < d
            let c = Poly::pow_mod(&a, (q - 1) / 2, m, f);
            let mut t = c.clone();
            let mut acc = c;
            for _ in 1..d {
                t = Poly::pow_mod(&t, q, m, f);
                acc = acc.mul_mod(&t, m, f);
            }
            acc.sub(&Poly::one(), f)
        };
        let g = Poly::gcd(&b, m, f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let h = m.divrem(&g, f).0;
            equal_degree(&g, d, f, rng, out);
            equal_degree(&h.monic(f), d, f, rng, out);
            return;
        }
    }
}

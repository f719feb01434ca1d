//! Finite fields GF(p^ℓ) in a polynomial basis over GF(p).
//!
//! An element is the residue class of a polynomial c_0 + c_1 X + ... + c_{ℓ-1} X^{ℓ-1}
//! modulo an explicit monic irreducible modulus of degree ℓ. [`FieldElement`] stores the
//! base-p integer Σ c_i p^i of that coefficient tuple, so elements are `Copy` and all
//! arithmetic goes through the shared [`Field`] handle.
//!
//! Fields with q ≤ 2^16 precompute log/antilog tables for multiplication. Larger fields
//! (up to q < 2^32) multiply in the polynomial basis and invert with extended Euclid.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;
/// Fields up to this order get multiplication tables.
pub const TABLE_LIMIT: u64 = 1 << 16;
/// Largest field order for operations that scan every element.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u64 = 256;

/// Serializable description of GF(p^ℓ): characteristic, degree and modulus
/// (coefficients low-to-high, monic, length ℓ + 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub ell: u32,
    pub modulus: Vec<u32>,
}

/// An element of a [`Field`], encoded as Σ c_i p^i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The base-p integer encoding of the coefficient tuple.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
enum Adder {
    Prime,
    Binary,
    Table { add: Vec<u32>, neg: Vec<u32> },
    Digits,
}

#[derive(Debug)]
struct Tables {
    /// exp[i] = g^i for 0 <= i < 2(q-1).
    exp: Vec<u32>,
    /// log[a] for a != 0.
    log: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    pow_p: Vec<u32>,
    adder: Adder,
    tables: Option<Tables>,
    unit_primes: Vec<u64>,
    /// GF(p) itself, used for extended Euclid when there are no tables.
    prime: Option<Field>,
}

/// Runtime handle for GF(p^ℓ). Cheap to clone, immutable and `Send + Sync`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {:?}",
            self.inner.spec.p, self.inner.spec.ell, self.inner.spec.modulus
        )
    }
}

pub(crate) fn element_from_index(i: u32) -> FieldElement {
    FieldElement(i)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Field {
    /// Builds GF(p^ℓ). When `modulus` is `None` the least irreducible monic polynomial
    /// of degree ℓ is chosen, enumerating candidates by increasing Σ c_i p^i.
    pub fn new(p: u32, ell: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::FieldTooLarge(p as u128));
        }
        if ell == 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                found: 0,
            });
        }
        let q = (p as u128).pow(ell);
        if q > u32::MAX as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let prime = if ell == 1 {
            None
        } else {
            Some(Field::prime(p))
        };
        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                while m.len() > 1 && m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != ell as usize + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: ell,
                        found: m.len().saturating_sub(1),
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidInput(format!(
                        "modulus coefficients must lie in [0, {p})"
                    )));
                }
                if m[ell as usize] != 1 {
                    return Err(Error::InvalidInput("modulus must be monic".into()));
                }
                if let Some(fp) = &prime {
                    if !is_irreducible_over_prime(fp, &m) {
                        return Err(Error::NotIrreducible(m, p));
                    }
                }
                m
            }
            None => match &prime {
                None => vec![0, 1],
                Some(fp) => least_irreducible(fp, p, ell),
            },
        };
        Ok(Self::assemble(
            FieldSpec { p, ell, modulus },
            q as u32,
            prime,
        ))
    }

    /// GF(p) with modulus X.
    pub fn prime(p: u32) -> Field {
        assert!(is_prime(p as u64), "{p} is not prime");
        Self::assemble(
            FieldSpec {
                p,
                ell: 1,
                modulus: vec![0, 1],
            },
            p,
            None,
        )
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.ell, Some(&spec.modulus))
    }

    fn assemble(spec: FieldSpec, q: u32, prime: Option<Field>) -> Field {
        let p = spec.p;
        let ell = spec.ell;
        let pow_p = (0..ell).map(|i| p.pow(i)).collect();
        let unit_primes = prime_factors(q as u64 - 1);
        let mut inner = Inner {
            spec,
            q,
            pow_p,
            adder: if ell == 1 {
                Adder::Prime
            } else if p == 2 {
                Adder::Binary
            } else {
                Adder::Digits
            },
            tables: None,
            unit_primes,
            prime,
        };
        if matches!(inner.adder, Adder::Digits) && q as u64 <= ADD_TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            let mut neg = vec![0u32; q as usize];
            for a in 0..q {
                neg[a as usize] = inner.neg_digits(a);
                for b in 0..q {
                    add[(a * q + b) as usize] = inner.add_digits(a, b);
                }
            }
            inner.adder = Adder::Table { add, neg };
        }
        if q as u64 <= TABLE_LIMIT && q > 2 {
            let g = (2..q)
                .find(|&g| inner.is_generator_slow(g))
                .expect("unit group is cyclic");
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..n {
                exp[i] = x;
                exp[i + n] = x;
                log[x as usize] = i as u32;
                x = inner.mul_poly(x, g);
            }
            inner.tables = Some(Tables { exp, log });
        }
        Field {
            inner: Arc::new(inner),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.spec.ell
    }

    /// Number of elements q = p^ℓ.
    pub fn order(&self) -> u64 {
        self.inner.q as u64
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn minus_one(&self) -> FieldElement {
        self.neg(FieldElement::ONE)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.inner.spec.p as i64) as u32)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.inner.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidInput(format!(
                "element index {index} out of range for q = {}",
                self.inner.q
            )))
        }
    }

    /// Element with coefficients c_0, c_1, ... (low-to-high, at most ℓ of them).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let ell = self.inner.spec.ell as usize;
        let p = self.inner.spec.p;
        let mut trimmed = coeffs;
        while trimmed.len() > ell && trimmed.last() == Some(&0) {
            trimmed = &trimmed[..trimmed.len() - 1];
        }
        if trimmed.len() > ell || trimmed.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "{coeffs:?} is not a coefficient tuple of GF({p}^{ell})"
            )));
        }
        Ok(FieldElement(
            trimmed
                .iter()
                .zip(&self.inner.pow_p)
                .map(|(&c, &w)| c * w)
                .sum(),
        ))
    }

    /// Coefficient tuple (length ℓ, low-to-high).
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.spec.p;
        let mut x = a.0;
        (0..self.inner.spec.ell)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        FieldElement(match &inner.adder {
            Adder::Prime => {
                let s = a.0 + b.0;
                if s >= inner.q {
                    s - inner.q
                } else {
                    s
                }
            }
            Adder::Binary => a.0 ^ b.0,
            Adder::Table { add, .. } => add[(a.0 * inner.q + b.0) as usize],
            Adder::Digits => inner.add_digits(a.0, b.0),
        })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        FieldElement(match &inner.adder {
            Adder::Prime => {
                if a.0 == 0 {
                    0
                } else {
                    inner.q - a.0
                }
            }
            Adder::Binary => a.0,
            Adder::Table { neg, .. } => neg[a.0 as usize],
            Adder::Digits => inner.neg_digits(a.0),
        })
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        match &inner.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(inner.mul_poly(a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            let n = inner.q - 1;
            return Some(FieldElement(
                t.exp[((n - t.log[a.0 as usize]) % n) as usize],
            ));
        }
        Some(FieldElement(match &inner.prime {
            None => inv_mod(a.0 as u64, inner.q as u64) as u32,
            Some(fp) => {
                let m = Poly::from_indices(&inner.spec.modulus);
                let x = Poly::from_indices(&self.coeffs(a));
                let (g, s, _) = Poly::ext_gcd(&x, &m, fp);
                debug_assert_eq!(g.degree(), Some(0));
                let s = s.scale(fp.inv(g.coeffs()[0]).unwrap(), fp);
                let digits: Vec<u32> = s.coeffs().iter().map(|c| c.index()).collect();
                return Some(self.from_coeffs(&digits).unwrap());
            }
        }))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            let n = (inner.q - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return FieldElement(t.exp[l as usize]);
        }
        FieldElement(inner.pow_slow(a.0, e))
    }

    /// p^h as an exponent.
    pub fn frobenius_exponent(&self, h: u32) -> u64 {
        (self.inner.spec.p as u64).pow(h)
    }

    /// σ_{p^h}(a) = a^{p^h}, for 0 ≤ h < ℓ.
    pub fn frobenius(&self, a: FieldElement, h: u32) -> Result<FieldElement> {
        self.check_h(h)?;
        Ok(self.pow(a, self.frobenius_exponent(h)))
    }

    /// The inverse automorphism of σ_{p^h}, namely σ_{p^{ℓ-h}}.
    pub fn frobenius_inverse(&self, a: FieldElement, h: u32) -> Result<FieldElement> {
        self.check_h(h)?;
        let ell = self.degree();
        Ok(self.pow(a, self.frobenius_exponent((ell - h) % ell)))
    }

    pub fn check_h(&self, h: u32) -> Result<()> {
        if h < self.degree() {
            Ok(())
        } else {
            Err(Error::HOutOfRange {
                h,
                ell: self.degree(),
            })
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.order() - 1;
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            return Ok(n / gcd(t.log[a.0 as usize] as u64, n));
        }
        let mut ord = n;
        for &r in &inner.unit_primes {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == FieldElement::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// All α ∈ F^× with α^s = -1, by exhaustive scan (q ≤ 2^20).
    pub fn roots_of_power_plus_one(&self, s: u64) -> Result<Vec<FieldElement>> {
        if self.order() > EXHAUSTIVE_LIMIT {
            return Err(Error::FieldTooLarge(self.order() as u128));
        }
        let minus_one = self.minus_one();
        Ok(self
            .elements()
            .skip(1)
            .filter(|&a| self.pow(a, s) == minus_one)
            .collect())
    }

    /// The least element (by index) generating F^×.
    pub fn primitive_element(&self) -> FieldElement {
        if self.order() == 2 {
            return FieldElement::ONE;
        }
        match &self.inner.tables {
            Some(t) => FieldElement(t.exp[1]),
            None => FieldElement(
                (2..self.inner.q)
                    .find(|&g| self.inner.is_generator_slow(g))
                    .expect("unit group is cyclic"),
            ),
        }
    }

    /// Coefficient-list rendering used in diagnostics and JSON.
    pub fn format(&self, a: FieldElement) -> String {
        if self.degree() == 1 {
            a.0.to_string()
        } else {
            format!("{:?}", self.coeffs(a))
        }
    }
}

impl Inner {
    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.spec.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let p = self.spec.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += ((p - a % p) % p) * w;
            a /= p;
        }
        out
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p as u64;
        let ell = self.spec.ell as usize;
        if ell == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let digits = |mut x: u32| {
            let mut d = vec![0u64; ell];
            for c in d.iter_mut() {
                *c = x as u64 % p;
                x /= p as u32;
            }
            d
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * ell - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.spec.modulus;
        for k in (ell..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..ell {
                prod[k - ell + j] = (prod[k - ell + j] + (p - c) * m[j] as u64) % p;
            }
            prod[k] = 0;
        }
        prod[..ell]
            .iter()
            .zip(&self.pow_p)
            .map(|(&c, &w)| c as u32 * w)
            .sum()
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_generator_slow(&self, g: u32) -> bool {
        let n = self.q as u64 - 1;
        self.unit_primes
            .iter()
            .all(|&r| self.pow_slow(g, n / r) != 1)
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(m as i64) as u64
}

fn is_irreducible_over_prime(fp: &Field, modulus: &[u32]) -> bool {
    Poly::from_indices(modulus).is_irreducible(fp)
}

fn least_irreducible(fp: &Field, p: u32, ell: u32) -> Vec<u32> {
    let count = (p as u64).pow(ell);
    (0..count)
        .map(|k| {
            let mut m: Vec<u32> = (0..ell)
                .map(|i| ((k / (p as u64).pow(i)) % p as u64) as u32)
                .collect();
            m.push(1);
            m
        })
        .find(|m| m[0] != 0 && is_irreducible_over_prime(fp, m))
        .expect("irreducible polynomials of every degree exist")
}

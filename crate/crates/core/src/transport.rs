//! The isomorphism η: R_1 → R_λ, a(X) ↦ a(γX), with γ = λ^s and ns ≡ −1 (mod t),
//! and its pair extension on R_1² → R_λ². Requires gcd(n, t) = 1.

use crate::codes::{CodeKind, QuasiCode};
use crate::error::{Error, Result};
use crate::gf::{gcd, FieldElement};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Debug)]
pub struct TransportMap {
    source: RingContext,
    target: RingContext,
    gamma: FieldElement,
    s: u64,
    h: u32,
    /// γ^i for i < n
    powers: Vec<FieldElement>,
    inverse_powers: Vec<FieldElement>,
}

/// Least s ≥ 0 with n·s ≡ −1 (mod t).
fn solve_exponent(n: u64, t: u64) -> Option<u64> {
    if t == 1 {
        return Some(0);
    }
    (0..t).find(|&s| (n % t) * s % t == t - 1)
}

/// Builds η from the cyclic ring of `target`'s length onto `target`.
pub fn make_transport(target: &RingContext, h: u32) -> Result<TransportMap> {
    let f = target.field();
    if !target.star_defined(h)? {
        return Err(Error::LambdaHypothesisViolated { h });
    }
    let n = target.n() as u64;
    let t = target.t();
    if gcd(n, t) != 1 {
        return Err(Error::NotCoprime { n: target.n(), t });
    }
    let s = solve_exponent(n, t).expect("n is invertible mod t");
    let lambda = target.lambda();
    let gamma = f.pow(lambda, s);
    let lambda_inv = f.inv(lambda).unwrap();
    if f.pow(gamma, n) != lambda_inv {
        return Err(Error::InvariantViolation("gamma^n != lambda^-1".into()));
    }
    if f.pow(gamma, 1 + f.frobenius_exponent(h)) != FieldElement::ONE {
        return Err(Error::InvariantViolation("gamma^(1+p^h) != 1".into()));
    }
    let gamma_inv = f.inv(gamma).unwrap();
    let powers = (0..n).map(|i| f.pow(gamma, i)).collect();
    let inverse_powers = (0..n).map(|i| f.pow(gamma_inv, i)).collect();
    Ok(TransportMap {
        source: RingContext::cyclic(f, target.n())?,
        target: target.clone(),
        gamma,
        s,
        h,
        powers,
        inverse_powers,
    })
}

impl TransportMap {
    pub fn source(&self) -> &RingContext {
        &self.source
    }

    pub fn target(&self) -> &RingContext {
        &self.target
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    fn scale_word(&self, w: &[FieldElement], inverse: bool) -> Vec<FieldElement> {
        let f = self.target.field();
        let pw = if inverse {
            &self.inverse_powers
        } else {
            &self.powers
        };
        let n = self.target.n();
        w.iter()
            .enumerate()
            .map(|(i, &c)| f.mul(c, pw[i % n]))
            .collect()
    }

    /// η(a) = Σ a_i γ^i X^i.
    pub fn apply(&self, a: &RingElement) -> Result<RingElement> {
        if a.ctx() != &self.source {
            return Err(Error::ContextMismatch);
        }
        self.target.element(self.scale_word(a.coeffs(), false))
    }

    pub fn apply_inverse(&self, a: &RingElement) -> Result<RingElement> {
        if a.ctx() != &self.target {
            return Err(Error::ContextMismatch);
        }
        self.source.element(self.scale_word(a.coeffs(), true))
    }

    /// η on a word of length n or 2n (blockwise).
    pub fn apply_word(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        self.scale_word(w, false)
    }

    pub fn apply_word_inverse(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        self.scale_word(w, true)
    }

    /// η^{(2)}(C) (or η(C) for a constacyclic code) in the target ring.
    pub fn transport_code(&self, code: &QuasiCode) -> Result<QuasiCode> {
        if code.ctx() != &self.source {
            return Err(Error::ContextMismatch);
        }
        let rows = code.words().iter().map(|w| self.apply_word(w)).collect();
        QuasiCode::span(&self.target, code.kind(), rows)
    }

    /// Inverse image of a target code.
    pub fn transport_code_back(&self, code: &QuasiCode) -> Result<QuasiCode> {
        if code.ctx() != &self.target {
            return Err(Error::ContextMismatch);
        }
        let rows = code
            .words()
            .iter()
            .map(|w| self.apply_word_inverse(w))
            .collect();
        QuasiCode::span(&self.source, code.kind(), rows)
    }
}

/// Convenience: transport of C_{1,g} for g in the cyclic ring.
pub fn transport_pair(map: &TransportMap, g: &RingElement) -> Result<QuasiCode> {
    let c = QuasiCode::from_pair(&map.source().one(), g)?;
    debug_assert_eq!(c.kind(), CodeKind::TwoQuasi);
    map.transport_code(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let f = Field::new(2, 2, None).unwrap();
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let r = RingContext::new(&f, 2, w).unwrap();
        let m = make_transport(&r, 1).unwrap();
        assert_eq!((m.s(), m.gamma()), (1, w));
        let a = m.source().element(vec![f.one(), f.one()]).unwrap();
        assert_eq!(m.apply(&a).unwrap().coeffs(), &[f.one(), w]);

        let r1 = RingContext::cyclic(&f, 5).unwrap();
        let m = make_transport(&r1, 1).unwrap();
        assert_eq!(m.gamma(), f.one());

        let f5 = Field::prime(5);
        let r = RingContext::new(&f5, 3, f5.from_int(4)).unwrap();
        let m = make_transport(&r, 0).unwrap();
        assert_eq!((m.s(), m.gamma()), (1, f5.from_int(4)));
        assert_eq!(f5.pow(m.gamma(), 3), f5.from_int(4));
    }

    #[test]
    fn errors() {
        let f = Field::new(2, 2, None).unwrap();
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let r = RingContext::new(&f, 3, w).unwrap();
        assert_eq!(
            make_transport(&r, 1).unwrap_err(),
            Error::NotCoprime { n: 3, t: 3 }
        );
        let r = RingContext::new(&f, 2, w).unwrap();
        assert_eq!(
            make_transport(&r, 0).unwrap_err(),
            Error::LambdaHypothesisViolated { h: 0 }
        );
    }

    #[test]
    fn homomorphism_and_inverse() {
        let f = Field::new(2, 2, None).unwrap();
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let r = RingContext::new(&f, 4, w).unwrap();
        let m = make_transport(&r, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = m.source().random(&mut rng);
            let b = m.source().random(&mut rng);
            let lhs = m.apply(&(&a * &b)).unwrap();
            let rhs = &m.apply(&a).unwrap() * &m.apply(&b).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(m.apply_inverse(&m.apply(&a).unwrap()).unwrap(), a);
            assert_eq!(m.apply(&a).unwrap().weight(), a.weight());
        }
    }
}

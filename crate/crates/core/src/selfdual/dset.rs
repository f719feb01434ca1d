//! The set D = {g ∈ R : gg* = −1} in the cyclic ring, component by component.
//!
//! With g = Σ g_i over the primitive idempotents, gg* = −1 splits into:
//! * star-fixed e_i: g_i g_i* = −e_i inside the field R e_i. The * operator restricts to
//!   z ↦ z^{p^k} there, so solutions satisfy z^{2(1+p^k)} = 1 and lie in a small cyclic
//!   subgroup, which is enumerated and filtered.
//! * swapped pairs (e_i, e_j): g = z' − (z'*)^{−1} for z' ∈ (R e_i)^×, one solution per unit.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldElement};
use crate::ring::RingElement;
use crate::rng::{stream_rng, streams};
use crate::semisimple::{star_pairing, IdempotentBasis, StarPairing};

/// Largest component field handled when building D.
pub const MAX_COMPONENT_ORDER: u128 = 1 << 40;

#[derive(Clone, Debug)]
pub enum ComponentSet {
    /// Explicit D_i for a star-fixed idempotent.
    Fixed {
        index: usize,
        elements: Vec<RingElement>,
    },
    /// D over the pair (index, partner): z' − (z'*)^{−1} for each unit z' of R e_index.
    Paired {
        index: usize,
        partner: usize,
        count: u128,
    },
}

impl ComponentSet {
    pub fn count(&self) -> u128 {
        match self {
            ComponentSet::Fixed { elements, .. } => elements.len() as u128,
            ComponentSet::Paired { count, .. } => *count,
        }
    }

    /// Idempotent indices covered by this set.
    pub fn indices(&self) -> Vec<usize> {
        match self {
            ComponentSet::Fixed { index, .. } => vec![*index],
            ComponentSet::Paired { index, partner, .. } => vec![*index, *partner],
        }
    }
}

#[derive(Clone, Debug)]
pub struct DSetDescriptor {
    basis: IdempotentBasis,
    h: u32,
    pairing: StarPairing,
    components: Vec<ComponentSet>,
    total_count: u128,
}

/// Builds D for the cyclic ring of `basis`. Requires λ = 1 and * of order ≤ 2
/// (2h ≡ 0 mod ℓ, i.e. the Euclidean or Hermitian product).
pub fn build_d_set(basis: &IdempotentBasis, h: u32) -> Result<DSetDescriptor> {
    let ctx = basis.ctx();
    let f = ctx.field();
    f.check_h(h)?;
    if ctx.lambda() != FieldElement::ONE {
        return Err(Error::WrongRegime(
            "D is defined in the cyclic ring (lambda = 1)".into(),
        ));
    }
    if !(2 * h).is_multiple_of(f.degree()) {
        return Err(Error::WrongRegime(format!(
            "* is not an involution for h = {h}, ell = {}",
            f.degree()
        )));
    }
    let pairing = star_pairing(basis, h)?;
    if !pairing.is_involution() {
        return Err(Error::InvariantViolation(
            "star pairing is not an involution".into(),
        ));
    }
    let mut components = Vec::new();
    for i in 0..basis.len() {
        let j = pairing.image[i];
        let size = basis.component_order(i).unwrap_or(u128::MAX);
        if size > MAX_COMPONENT_ORDER {
            return Err(Error::FieldTooLarge(size));
        }
        if j == i {
            components.push(ComponentSet::Fixed {
                index: i,
                elements: fixed_component(basis, i, h)?,
            });
        } else if j > i {
            components.push(ComponentSet::Paired {
                index: i,
                partner: j,
                count: size - 1,
            });
        }
    }
    let total_count = components
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.count()))
        .ok_or(Error::FieldTooLarge(u128::MAX))?;
    Ok(DSetDescriptor {
        basis: basis.clone(),
        h,
        pairing,
        components,
        total_count,
    })
}

/// Roots of z z* = −e_i in the field R e_i.
fn fixed_component(basis: &IdempotentBasis, i: usize, h: u32) -> Result<Vec<RingElement>> {
    let f = basis.ctx().field();
    let size = basis.component_order(i).unwrap();
    let big_n = (size - 1) as u64;
    let p = f.characteristic() as u64;
    let theta = basis.component_generator(i)?;
    let theta_star = theta.star(h)?;
    let ext = f.degree() as u64 * basis.dims()[i] as u64;
    let mut pk = 1u64;
    let mut found = None;
    for _ in 0..ext {
        if basis.component_pow(i, &theta, pk) == theta_star {
            found = Some(pk);
            break;
        }
        pk *= p;
    }
    let pk = found.ok_or_else(|| {
        Error::InvariantViolation("* does not act as a Frobenius power on a component".into())
    })?;
    let m = 1 + pk;
    let s = gcd(2 * m, big_n);
    if s as u128 > crate::gf::EXHAUSTIVE_LIMIT as u128 {
        return Err(Error::FieldTooLarge(s as u128));
    }
    let zeta = basis.component_pow(i, &theta, big_n / s);
    let e = &basis.idempotents()[i];
    let minus_e = -e;
    let mut out = Vec::new();
    let mut z = e.clone();
    for _ in 0..s {
        if basis.component_pow(i, &z, m) == minus_e {
            out.push(z.clone());
        }
        z = &z * &zeta;
    }
    out.sort_by_key(|x| x.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>());
    Ok(out)
}

impl DSetDescriptor {
    pub fn basis(&self) -> &IdempotentBasis {
        &self.basis
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn pairing(&self) -> &StarPairing {
        &self.pairing
    }

    pub fn components(&self) -> &[ComponentSet] {
        &self.components
    }

    pub fn total_count(&self) -> u128 {
        self.total_count
    }

    /// z' − (z'*)^{−1} for a unit z' of one component; z'* lies in `partner`.
    fn paired_element(&self, partner: usize, z: &RingElement) -> Result<RingElement> {
        let zs = z.star(self.h)?;
        let inv = self
            .basis
            .component_inverse(partner, &zs)
            .ok_or_else(|| Error::InvariantViolation("z'* is not a unit".into()))?;
        Ok(z - &inv)
    }

    /// Draws g uniformly from D and checks gg* = −1.
    pub fn sample_with(&self, rng: &mut impl Rng) -> Result<RingElement> {
        if self.total_count == 0 {
            return Err(Error::InvalidInput("D is empty".into()));
        }
        let ctx = self.basis.ctx();
        let mut g = ctx.zero();
        for c in &self.components {
            let part = match c {
                ComponentSet::Fixed { elements, .. } => {
                    elements[rng.random_range(0..elements.len())].clone()
                }
                ComponentSet::Paired {
                    index,
                    partner,
                    count,
                } => {
                    let k = rng.random_range(1..=*count as u64) as u128;
                    let z = self.basis.component_element(*index, k);
                    self.paired_element(*partner, &z)?
                }
            };
            g = &g + &part;
        }
        if !super::c1g_is_self_dual(&g, self.h)? {
            return Err(Error::InvariantViolation("sampled g has gg* != -1".into()));
        }
        Ok(g)
    }

    pub fn sample(&self, seed: u64) -> Result<RingElement> {
        self.sample_with(&mut stream_rng(seed, streams::SAMPLE_D, 0))
    }

    /// Per-component member lists (paired components expanded over all units).
    fn component_lists(&self) -> Result<Vec<Vec<RingElement>>> {
        self.components
            .iter()
            .map(|c| match c {
                ComponentSet::Fixed { elements, .. } => Ok(elements.clone()),
                ComponentSet::Paired { index, partner, .. } => self
                    .basis
                    .component_elements(*index)?
                    .into_iter()
                    .skip(1)
                    .map(|z| self.paired_element(*partner, &z))
                    .collect(),
            })
            .collect()
    }

    /// Every element of D, if |D| ≤ limit.
    pub fn enumerate(&self, limit: u128) -> Result<Vec<RingElement>> {
        if self.total_count > limit {
            return Err(Error::TooLargeForExhaustive(self.total_count));
        }
        let lists = self.component_lists()?;
        let mut out = vec![self.basis.ctx().zero()];
        for list in &lists {
            let mut next = Vec::with_capacity(out.len() * list.len());
            for g in &out {
                for x in list {
                    next.push(g + x);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// |{g ∈ D : (a, b) ∈ C_{1,g}}| = |{g ∈ D : ag = b}|, by scanning D.
    pub fn count_d_ab(&self, a: &RingElement, b: &RingElement, limit: u128) -> Result<u128> {
        if a.ctx() != self.basis.ctx() || b.ctx() != self.basis.ctx() {
            return Err(Error::ContextMismatch);
        }
        Ok(self
            .enumerate(limit)?
            .iter()
            .filter(|g| &(a * g) == b)
            .count() as u128)
    }

    /// μ(n) ≥ log_p n, the hypothesis of the size estimates for D.
    pub fn mu_hypothesis(&self) -> bool {
        let p = self.basis.ctx().field().characteristic() as u128;
        let mu = self.basis.mu() as u32;
        p.checked_pow(mu)
            .is_none_or(|v| v >= self.basis.ctx().n() as u128)
    }

    /// p^{−2} p^{nℓ/2} ≤ |D| ≤ p^3 p^{nℓ/2}, compared after squaring. `None` when the
    /// hypothesis μ(n) ≥ log_p n fails.
    pub fn sandwich(&self) -> Option<bool> {
        if !self.mu_hypothesis() {
            return None;
        }
        let ctx = self.basis.ctx();
        let f = ctx.field();
        let ell = f.degree();
        Some(sandwich_holds(
            f.characteristic() as u128,
            ctx.n() as u32 * ell,
            self.total_count,
        ))
    }
}

/// p^{-2} p^{e/2} ≤ count ≤ p^3 p^{e/2}, i.e. p^e ≤ p^4 c² and c² ≤ p^{6+e}.
pub fn sandwich_holds(p: u128, e: u32, count: u128) -> bool {
    let exact = (|| {
        let c2 = count.checked_mul(count)?;
        let lower = p.checked_pow(e)? <= p.checked_pow(4)?.checked_mul(c2)?;
        let upper = c2 <= p.checked_pow(6 + e)?;
        Some(lower && upper)
    })();
    exact.unwrap_or_else(|| {
        let lp = (p as f64).ln();
        let lc = (count as f64).ln();
        let half = e as f64 / 2.0 * lp;
        lc >= half - 2.0 * lp && lc <= half + 3.0 * lp
    })
}

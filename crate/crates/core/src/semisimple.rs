//! Semisimple structure of R_λ when gcd(n, q) = 1: irreducible factors of X^n − λ,
//! primitive idempotents, the component fields R e_i, the permutation of idempotents
//! induced by the * operator, and the Goursat decomposition of submodules of R_λ².

use crate::codes::{CodeKind, QuasiCode};
use crate::error::{Error, Result};
use crate::gf::{prime_factors, EXHAUSTIVE_LIMIT};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::{RingContext, RingElement};
use crate::rng::{derive_seed, streams};

fn require_semisimple(ctx: &RingContext) -> Result<()> {
    if ctx.is_semisimple() {
        Ok(())
    } else {
        Err(Error::NotSemisimple {
            n: ctx.n(),
            q: ctx.field().order(),
        })
    }
}

/// Monic irreducible factors of X^n − λ. For λ = 1 the factor X − 1 comes first;
/// the rest are ordered by degree, then by coefficients from the top.
pub fn factor_modulus(ctx: &RingContext) -> Result<Vec<Poly>> {
    require_semisimple(ctx)?;
    let f = ctx.field();
    let mut fs = ctx
        .modulus()
        .factor_squarefree(f, derive_seed(0, streams::FACTOR, 0));
    let x_minus_one = Poly::x().sub(&Poly::one(), f);
    if let Some(pos) = fs.iter().position(|p| *p == x_minus_one) {
        let p = fs.remove(pos);
        fs.insert(0, p);
    }
    Ok(fs)
}

/// Factorization of X^n − 1 for the cyclic ring over the same field and length.
pub fn factor_xn_minus_1(ctx: &RingContext) -> Result<Vec<Poly>> {
    factor_modulus(&RingContext::cyclic(ctx.field(), ctx.n())?)
}

/// Primitive idempotents e_i of R_λ with R e_i ≅ F[X]/⟨φ_i⟩.
#[derive(Clone, Debug)]
pub struct IdempotentBasis {
    ctx: RingContext,
    factors: Vec<Poly>,
    idems: Vec<RingElement>,
    dims: Vec<usize>,
    /// F-basis of each component R e_i.
    component_bases: Vec<Vec<RingElement>>,
}

impl IdempotentBasis {
    /// Builds e_i ≡ 1 mod φ_i, e_i ≡ 0 mod φ_j (j ≠ i) by CRT and checks the axioms.
    pub fn new(ctx: &RingContext) -> Result<IdempotentBasis> {
        let factors = factor_modulus(ctx)?;
        let f = ctx.field();
        let m = ctx.modulus();
        let mut idems = Vec::with_capacity(factors.len());
        for phi in &factors {
            let mi = m.divrem(phi, f).0;
            let u = Poly::inv_mod(&mi, phi, f).ok_or_else(|| {
                Error::InvariantViolation("factors of X^n - lambda are not coprime".into())
            })?;
            idems.push(ctx.from_poly(&u.mul(&mi, f).rem(&m, f)));
        }
        let dims = factors.iter().map(|p| p.degree().unwrap()).collect();
        let component_bases = idems
            .iter()
            .map(|e| {
                let (rref, _) = e.circulant().rref();
                rref.row_vecs()
                    .into_iter()
                    .map(|r| ctx.element(r).unwrap())
                    .collect()
            })
            .collect();
        let basis = IdempotentBasis {
            ctx: ctx.clone(),
            factors,
            idems,
            dims,
            component_bases,
        };
        basis.verify()?;
        Ok(basis)
    }

    fn verify(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolation(m.to_string()));
        let sum = self.idems.iter().fold(self.ctx.zero(), |acc, e| &acc + e);
        if sum != self.ctx.one() {
            return fail("idempotents do not sum to 1");
        }
        for (i, ei) in self.idems.iter().enumerate() {
            for (j, ej) in self.idems.iter().enumerate() {
                let prod = ei * ej;
                let ok = if i == j { prod == *ei } else { prod.is_zero() };
                if !ok {
                    return fail("idempotents are not orthogonal idempotents");
                }
            }
            if self.component_bases[i].len() != self.dims[i] {
                return fail("dim R e_i differs from deg phi_i");
            }
        }
        if self.ctx.lambda() == crate::gf::FieldElement::ONE {
            let f = self.ctx.field();
            let inv_n = f
                .inv(f.from_int(self.ctx.n() as i64))
                .expect("n is invertible in a semisimple context");
            let e0 = self.ctx.element(vec![inv_n; self.ctx.n()])?;
            if self.idems[0] != e0 {
                return fail("e_0 differs from (1/n) sum x^i");
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn idempotents(&self) -> &[RingElement] {
        &self.idems
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.idems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idems.is_empty()
    }

    /// Minimum degree of a factor other than X − 1.
    pub fn mu(&self) -> usize {
        let skip = usize::from(self.ctx.lambda() == crate::gf::FieldElement::ONE);
        self.dims[skip..].iter().copied().min().unwrap_or(0)
    }

    /// |R e_i| = q^{d_i}.
    pub fn component_order(&self, i: usize) -> Option<u128> {
        (self.ctx.field().order() as u128).checked_pow(self.dims[i] as u32)
    }

    pub fn component_basis(&self, i: usize) -> &[RingElement] {
        &self.component_bases[i]
    }

    /// The element of R e_i whose coordinates in the component basis are the base-q
    /// digits of `idx`.
    pub fn component_element(&self, i: usize, mut idx: u128) -> RingElement {
        let q = self.ctx.field().order() as u128;
        let mut z = self.ctx.zero();
        for b in &self.component_bases[i] {
            let c = crate::gf::element_from_index((idx % q) as u32);
            idx /= q;
            if !c.is_zero() {
                z = &z + &b.scale(c);
            }
        }
        z
    }

    /// All elements of R e_i (|R e_i| ≤ 2^20).
    pub fn component_elements(&self, i: usize) -> Result<Vec<RingElement>> {
        let size = self.component_order(i).unwrap_or(u128::MAX);
        if size > EXHAUSTIVE_LIMIT as u128 {
            return Err(Error::FieldTooLarge(size));
        }
        Ok((0..size).map(|k| self.component_element(i, k)).collect())
    }

    /// z^k inside the field R e_i (z^0 = e_i).
    pub fn component_pow(&self, i: usize, z: &RingElement, k: u64) -> RingElement {
        if k == 0 {
            self.idems[i].clone()
        } else {
            z.pow(k)
        }
    }

    /// Inverse in R e_i as z^{|R e_i| − 2}.
    pub fn component_inverse(&self, i: usize, z: &RingElement) -> Option<RingElement> {
        if z.is_zero() {
            return None;
        }
        let size = self.component_order(i)?;
        Some(self.component_pow(i, z, u64::try_from(size - 2).ok()?))
    }

    /// The first element (in component index order) generating (R e_i)^×.
    pub fn component_generator(&self, i: usize) -> Result<RingElement> {
        let size = self.component_order(i).unwrap_or(u128::MAX);
        let order = u64::try_from(size - 1).map_err(|_| Error::FieldTooLarge(size))?;
        let primes = prime_factors(order);
        let e = &self.idems[i];
        for idx in 1..size {
            let z = self.component_element(i, idx);
            if primes
                .iter()
                .all(|&r| self.component_pow(i, &z, order / r) != *e)
            {
                return Ok(z);
            }
        }
        Err(Error::InvariantViolation("component is not a field".into()))
    }

    /// Index i with x ∈ R e_i, x ≠ 0 (None if x is zero or spans several components).
    pub fn component_of(&self, x: &RingElement) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.idems.iter().enumerate() {
            if !(x * e).is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// How the * operator permutes the primitive idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPairing {
    /// e_i* = e_{image[i]}.
    pub image: Vec<usize>,
    pub fixed: Vec<usize>,
    /// Two-cycles (i, j) with i < j.
    pub pairs: Vec<(usize, usize)>,
}

impl StarPairing {
    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &j)| self.image[j] == i)
    }
}

pub fn star_pairing(basis: &IdempotentBasis, h: u32) -> Result<StarPairing> {
    let mut image = Vec::with_capacity(basis.len());
    for e in basis.idempotents() {
        let s = e.star(h)?;
        let j = basis
            .idempotents()
            .iter()
            .position(|x| *x == s)
            .ok_or_else(|| {
                Error::InvariantViolation("star of a primitive idempotent is not primitive".into())
            })?;
        image.push(j);
    }
    let fixed = (0..image.len()).filter(|&i| image[i] == i).collect();
    let pairs = (0..image.len())
        .filter(|&i| image[i] > i && image[image[i]] == i)
        .map(|i| (i, image[i]))
        .collect();
    Ok(StarPairing {
        image,
        fixed,
        pairs,
    })
}

/// C = (C_a × C_{a'}) ⊕ C_{b,bg} with a, a', b sums of primitive idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoursatDecomposition {
    pub a: RingElement,
    pub a2: RingElement,
    pub b: RingElement,
    pub g: RingElement,
}

impl GoursatDecomposition {
    pub fn reconstruct(&self) -> Result<QuasiCode> {
        let ctx = self.a.ctx();
        let z = ctx.zero();
        let parts = [
            (self.a.circulant(), z.circulant()),
            (z.circulant(), self.a2.circulant()),
            (self.b.circulant(), (&self.b * &self.g).circulant()),
        ];
        let mut m = Matrix::zeros(ctx.field(), 0, 2 * ctx.n());
        for (l, r) in parts {
            m = m.stack(&l.hstack(&r))?;
        }
        QuasiCode::generated_by(ctx, CodeKind::TwoQuasi, m.row_vecs())
    }
}

/// What a submodule looks like inside one component plane (R e_i)².
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    Zero,
    Left,
    Right,
    /// {(z, z g_i)} for a unit g_i of R e_i.
    Graph(RingElement),
    Full,
}

/// Per-component classification of a two-quasi code.
pub fn classify(basis: &IdempotentBasis, code: &QuasiCode) -> Result<Vec<ComponentShape>> {
    if code.kind() != CodeKind::TwoQuasi {
        return Err(Error::InvalidInput(
            "decomposition needs a two-quasi code".into(),
        ));
    }
    let ctx = basis.ctx();
    if code.ctx() != ctx {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.n();
    let rows: Vec<(RingElement, RingElement)> = code
        .words()
        .into_iter()
        .map(|w| {
            (
                ctx.element(w[..n].to_vec()).unwrap(),
                ctx.element(w[n..].to_vec()).unwrap(),
            )
        })
        .collect();
    let mut shapes = Vec::with_capacity(basis.len());
    for (i, e) in basis.idempotents().iter().enumerate() {
        let proj: Vec<(RingElement, RingElement)> =
            rows.iter().map(|(x, y)| (x * e, y * e)).collect();
        let mut m = Matrix::zeros(ctx.field(), 0, 2 * n);
        for (x, y) in &proj {
            let mut w = x.coeffs().to_vec();
            w.extend_from_slice(y.coeffs());
            m = m.stack(&Matrix::from_rows(ctx.field(), 2 * n, vec![w]))?;
        }
        let dim = m.rank();
        let d = basis.dims()[i];
        let shape = if dim == 0 {
            ComponentShape::Zero
        } else if dim == 2 * d {
            ComponentShape::Full
        } else if dim == d {
            if proj.iter().all(|(_, y)| y.is_zero()) {
                ComponentShape::Left
            } else if proj.iter().all(|(x, _)| x.is_zero()) {
                ComponentShape::Right
            } else {
                let (x, y) = proj.iter().find(|(x, _)| !x.is_zero()).unwrap();
                let xi = basis.component_inverse(i, x).unwrap();
                ComponentShape::Graph(&xi * y)
            }
        } else {
            return Err(Error::InvariantViolation(
                "component block is not an R e_i-subspace".into(),
            ));
        };
        shapes.push(shape);
    }
    Ok(shapes)
}

/// Assembles (a, a', b, g) from per-component shapes.
pub fn assemble(basis: &IdempotentBasis, shapes: &[ComponentShape]) -> GoursatDecomposition {
    let ctx = basis.ctx();
    let mut d = GoursatDecomposition {
        a: ctx.zero(),
        a2: ctx.zero(),
        b: ctx.zero(),
        g: ctx.zero(),
    };
    for (e, s) in basis.idempotents().iter().zip(shapes) {
        match s {
            ComponentShape::Zero => {}
            ComponentShape::Left => d.a = &d.a + e,
            ComponentShape::Right => d.a2 = &d.a2 + e,
            ComponentShape::Full => {
                d.a = &d.a + e;
                d.a2 = &d.a2 + e;
            }
            ComponentShape::Graph(gi) => {
                d.b = &d.b + e;
                d.g = &d.g + gi;
            }
        }
    }
    d
}

/// Goursat decomposition of a two-quasi code; the result reconstructs C exactly.
pub fn decompose(code: &QuasiCode) -> Result<GoursatDecomposition> {
    let basis = IdempotentBasis::new(code.ctx())?;
    decompose_with(&basis, code)
}

pub fn decompose_with(basis: &IdempotentBasis, code: &QuasiCode) -> Result<GoursatDecomposition> {
    let d = assemble(basis, &classify(basis, code)?);
    if d.reconstruct()? != *code {
        return Err(Error::InvariantViolation(
            "decomposition does not reconstruct the code".into(),
        ));
    }
    Ok(d)
}

/// Every R_λ-submodule of R_λ², built from all per-component shapes.
/// The count is Π (|R e_i| + 3); fails if it exceeds `limit`.
pub fn all_submodules(basis: &IdempotentBasis, limit: u128) -> Result<Vec<QuasiCode>> {
    let mut options: Vec<Vec<ComponentShape>> = Vec::new();
    let mut total: u128 = 1;
    for i in 0..basis.len() {
        let size = basis.component_order(i).unwrap_or(u128::MAX);
        total = total.saturating_mul(size.saturating_add(3));
        if total > limit {
            return Err(Error::TooLargeForExhaustive(total));
        }
        let mut opts = vec![
            ComponentShape::Zero,
            ComponentShape::Left,
            ComponentShape::Right,
            ComponentShape::Full,
        ];
        for z in basis.component_elements(i)?.into_iter().skip(1) {
            opts.push(ComponentShape::Graph(z));
        }
        options.push(opts);
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; options.len()];
    loop {
        let shapes: Vec<ComponentShape> = idx
            .iter()
            .zip(&options)
            .map(|(&k, o)| o[k].clone())
            .collect();
        out.push(assemble(basis, &shapes).reconstruct()?);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn f4() -> Field {
        Field::new(2, 2, None).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f2 = Field::prime(2);
        let r = RingContext::cyclic(&f2, 7).unwrap();
        let fs = factor_xn_minus_1(&r).unwrap();
        let degs: Vec<_> = fs.iter().map(|p| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        assert_eq!(fs[0], Poly::from_indices(&[1, 1]));

        let f = f4();
        let r = RingContext::cyclic(&f, 3).unwrap();
        let fs = factor_xn_minus_1(&r).unwrap();
        assert_eq!(fs.len(), 3);
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let w2 = f.mul(w, w);
        assert!(fs.contains(&Poly::new(vec![w, f.one()])));
        assert!(fs.contains(&Poly::new(vec![w2, f.one()])));

        let r = RingContext::cyclic(&f2, 2).unwrap();
        assert_eq!(
            factor_xn_minus_1(&r).unwrap_err(),
            Error::NotSemisimple { n: 2, q: 2 }
        );
        assert!(RingContext::cyclic(&f2, 1).is_err());
    }

    #[test]
    fn idempotent_examples() {
        let f2 = Field::prime(2);
        let r = RingContext::cyclic(&f2, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        assert_eq!(b.idempotents()[0], r.from_ints(&[1, 1, 1]).unwrap());
        assert_eq!(b.idempotents()[1], r.from_ints(&[0, 1, 1]).unwrap());
        assert_eq!(b.mu(), 2);

        let f = f4();
        let r = RingContext::cyclic(&f, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        assert_eq!(b.dims(), &[1, 1, 1]);
        assert_eq!(b.idempotents()[0], r.from_ints(&[1, 1, 1]).unwrap());
        assert_eq!(b.mu(), 1);

        let r = RingContext::cyclic(&f2, 7).unwrap();
        assert_eq!(IdempotentBasis::new(&r).unwrap().mu(), 3);
    }

    #[test]
    fn twisted_rings_have_idempotents_too() {
        let f = Field::prime(5);
        let r = RingContext::new(&f, 4, f.from_int(2)).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        assert_eq!(b.dims().iter().sum::<usize>(), 4);
    }

    #[test]
    fn star_pairing_examples() {
        let f = f4();
        let r = RingContext::cyclic(&f, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        let sp = star_pairing(&b, 1).unwrap();
        assert_eq!(sp.fixed, vec![0, 1, 2]);
        assert!(sp.pairs.is_empty());

        let f2 = Field::prime(2);
        let r = RingContext::cyclic(&f2, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        let sp = star_pairing(&b, 0).unwrap();
        assert_eq!(sp.image, vec![0, 1]);

        // X^7 − 1 over F_2: x ↦ x^{-1} swaps the two cubic factors
        let r = RingContext::cyclic(&f2, 7).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        let sp = star_pairing(&b, 0).unwrap();
        assert_eq!(sp.fixed, vec![0]);
        assert_eq!(sp.pairs, vec![(1, 2)]);
        assert!(sp.is_involution());
    }

    #[test]
    fn decomposition_examples() {
        let f = f4();
        let r = RingContext::cyclic(&f, 3).unwrap();
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let g0 = r.element(vec![f.one(), f.one(), w]).unwrap();
        assert!(g0.inverse().is_some());
        let c = QuasiCode::from_pair(&r.one(), &g0).unwrap();
        let d = decompose(&c).unwrap();
        assert_eq!((d.a.is_zero(), d.a2.is_zero()), (true, true));
        assert_eq!(d.b, r.one());
        assert_eq!(d.g, g0);

        let b = IdempotentBasis::new(&r).unwrap();
        let ea = b.idempotents()[1].clone();
        let ideal = QuasiCode::ideal(&ea);
        let c = QuasiCode::product(&ideal, &ideal).unwrap();
        let d = decompose(&c).unwrap();
        assert_eq!((d.a.clone(), d.a2.clone()), (ea.clone(), ea));
        assert!(d.b.is_zero() && d.g.is_zero());
    }

    #[test]
    fn right_block_plus_graph_round_trips() {
        let f2 = Field::prime(2);
        let r = RingContext::cyclic(&f2, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        let (e0, e1) = (b.idempotents()[0].clone(), b.idempotents()[1].clone());
        // 0 × R e_1 ⊕ graph of x on R e_0
        let g = &r.x() * &e0;
        let mut rows = QuasiCode::from_pair(&r.zero(), &e1).unwrap().words();
        rows.extend(QuasiCode::from_pair(&e0, &g).unwrap().words());
        let c = QuasiCode::generated_by(&r, CodeKind::TwoQuasi, rows).unwrap();
        assert_eq!(c.kernel(0).unwrap(), QuasiCode::ideal(&e1));
        let d = decompose(&c).unwrap();
        assert_eq!(d.a2, e1);
        assert_eq!(d.b, e0);
        assert_eq!(d.reconstruct().unwrap(), c);
    }

    #[test]
    fn submodule_count_f2_n3() {
        let f2 = Field::prime(2);
        let r = RingContext::cyclic(&f2, 3).unwrap();
        let b = IdempotentBasis::new(&r).unwrap();
        let all = all_submodules(&b, 1000).unwrap();
        assert_eq!(all.len(), 35);
        for c in &all {
            assert!(c.is_closed_under(r.lambda()));
            assert_eq!(&decompose_with(&b, c).unwrap().reconstruct().unwrap(), c);
        }
    }
}

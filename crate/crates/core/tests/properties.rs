use proptest::prelude::*;
use qcc_core::artifact::CodeArtifact;
use qcc_core::codes::galois_inner;
use qcc_core::distance::{min_weight, min_weight_exhaustive, MinWeightOptions};
use qcc_core::selfdual::{build_d_set, c1g_is_self_dual};
use qcc_core::semisimple::IdempotentBasis;
use qcc_core::transport::make_transport;
use qcc_core::{CodeKind, Field, FieldElement, Matrix, QuasiCode, RingContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (p, ℓ, n, λ index)
const CONTEXTS: &[(u32, u32, usize, u32)] = &[
    (2, 1, 3, 1),
    (2, 1, 7, 1),
    (2, 2, 3, 1),
    (2, 2, 2, 2),
    (2, 2, 5, 3),
    (3, 1, 4, 2),
    (3, 2, 2, 1),
    (3, 2, 3, 5),
    (5, 1, 3, 4),
    (5, 1, 2, 2),
    (2, 4, 5, 1),
    (7, 1, 6, 3),
];

fn context(i: usize) -> RingContext {
    let (p, ell, n, lam) = CONTEXTS[i];
    let f = Field::new(p, ell, None).unwrap();
    RingContext::new(&f, n, f.element(lam).unwrap()).unwrap()
}

fn random_code(ctx: &RingContext, rng: &mut ChaCha8Rng) -> QuasiCode {
    let k = rng.random_range(0..=3);
    let gens = (0..k)
        .map(|_| {
            let a = ctx.random(rng);
            let b = ctx.random(rng);
            let mut w = a.coeffs().to_vec();
            w.extend_from_slice(b.coeffs());
            w
        })
        .collect();
    QuasiCode::generated_by(ctx, CodeKind::TwoQuasi, gens).unwrap()
}

fn valid_h(f: &Field, rng: &mut ChaCha8Rng) -> u32 {
    rng.random_range(0..f.degree())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(i in 0..CONTEXTS.len(), seed: u64) {
        let ctx = context(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &ctx.one(), a.clone());
        prop_assert_eq!(a.shift(), &ctx.x() * &a);
        prop_assert_eq!((&a * &b).circulant(), a.circulant().mul(&b.circulant()));
        prop_assert_eq!((&a + &b).circulant(), a.circulant().add(&b.circulant()));
        let circ = a.circulant();
        prop_assert_eq!(circ.row(0), a.coeffs());
    }

    #[test]
    fn frobenius_is_an_automorphism(i in 0..CONTEXTS.len(), x: u32, y: u32, hs: u32) {
        let f = context(i).field().clone();
        let q = f.order() as u32;
        let (a, b) = (f.element(x % q).unwrap(), f.element(y % q).unwrap());
        let h = hs % f.degree();
        let fr = |z| f.frobenius(z, h).unwrap();
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(f.frobenius_inverse(fr(a), h).unwrap(), a);
        let mut z = a;
        for _ in 0..f.degree() {
            z = f.frobenius(z, 1 % f.degree()).unwrap();
        }
        prop_assert_eq!(z, a);
        if !a.is_zero() {
            prop_assert_eq!((f.order() - 1) % f.order_of(a).unwrap(), 0);
        }
    }

    #[test]
    fn duality_dimension_and_closure(i in 0..CONTEXTS.len(), seed: u64) {
        let ctx = context(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ctx.field().clone();
        let h = valid_h(&f, &mut rng);
        let c = random_code(&ctx, &mut rng);
        let d = c.galois_dual(h).unwrap();
        prop_assert_eq!(c.dim() + d.dim(), c.length());
        let p_ell_h = f.frobenius_exponent(f.degree() - h);
        let lam_dual = f.inv(f.pow(ctx.lambda(), p_ell_h)).unwrap();
        prop_assert!(d.is_closed_under(lam_dual));
        for u in c.words() {
            for v in d.words() {
                prop_assert!(galois_inner(&f, &u, &v, h).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn double_dual_for_euclidean_and_hermitian(i in 0..CONTEXTS.len(), seed: u64) {
        let ctx = context(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ctx.field().clone();
        let c = random_code(&ctx, &mut rng);
        let mut hs = vec![0];
        if f.degree().is_multiple_of(2) {
            hs.push(f.degree() / 2);
        }
        for h in hs {
            let dd = c.galois_dual(h).unwrap().galois_dual(h).unwrap();
            prop_assert_eq!(dd.basis().row_vecs(), c.basis().row_vecs());
        }
    }

    #[test]
    fn star_is_semilinear_homomorphism(i in 0..CONTEXTS.len(), seed: u64, xs: u32) {
        let ctx = context(i);
        let f = ctx.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (ctx.random(&mut rng), ctx.random(&mut rng));
        let alpha = f.element(xs % f.order() as u32).unwrap();
        for h in 0..f.degree() {
            if !ctx.star_defined(h).unwrap() {
                prop_assert!(a.star(h).is_err());
                continue;
            }
            let s = |z: &qcc_core::RingElement| z.star(h).unwrap();
            prop_assert_eq!(s(&a.scale(alpha)), s(&a).scale(f.frobenius(alpha, h).unwrap()));
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
            prop_assert_eq!(s(&a).circulant(), a.circulant().galois_transpose(h).unwrap());
        }
    }

    #[test]
    fn artifact_round_trip(i in 0..CONTEXTS.len(), seed: u64) {
        let ctx = context(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(&ctx, &mut rng);
        let back = CodeArtifact::from_json(&CodeArtifact::from_code(&c).to_json()).unwrap().to_code().unwrap();
        prop_assert_eq!(back.basis().row_vecs(), c.basis().row_vecs());
        prop_assert_eq!(back.ctx(), c.ctx());
    }

    #[test]
    fn min_weight_methods_agree(p in prop::sample::select(vec![2u32, 3, 5]), k in 1usize..6, extra in 0usize..8, seed: u64) {
        let f = Field::prime(p);
        let n = k + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..k)
            .map(|_| (0..n).map(|_| f.element(rng.random_range(0..p)).unwrap()).collect())
            .collect();
        let g = Matrix::from_rows(&f, n, rows);
        let brute = min_weight_exhaustive(&g);
        let exact = min_weight(&g, &MinWeightOptions { budget: 1, seed });
        prop_assert!(exact.weight >= brute);
        if exact.exact {
            prop_assert_eq!(exact.weight, brute);
        }
        let full = min_weight(&g, &MinWeightOptions::default());
        prop_assert!(full.exact);
        prop_assert_eq!(full.weight, brute);
    }

    #[test]
    fn transport_preserves_inner_products(seed: u64, pick in 0usize..3) {
        // (p, ℓ, n, λ index, h) with λ^{1+p^h} = 1 and gcd(n, t) = 1
        let (p, ell, n, lam, h) = [(2, 2, 2, 2, 1), (2, 2, 4, 3, 1), (5, 1, 3, 4, 0)][pick];
        let f = Field::new(p, ell, None).unwrap();
        let target = RingContext::new(&f, n, f.element(lam).unwrap()).unwrap();
        let map = make_transport(&target, h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = |rng: &mut ChaCha8Rng| -> Vec<FieldElement> {
            (0..2 * n).map(|_| f.element(rng.random_range(0..f.order() as u32)).unwrap()).collect()
        };
        let (u, v) = (word(&mut rng), word(&mut rng));
        let (eu, ev) = (map.apply_word(&u), map.apply_word(&v));
        prop_assert_eq!(galois_inner(&f, &eu, &ev, h).unwrap(), galois_inner(&f, &u, &v, h).unwrap());
        prop_assert_eq!(map.apply_word_inverse(&eu), u);
        let g = map.source().random(&mut rng);
        let c = QuasiCode::from_pair(&map.source().one(), &g).unwrap();
        let img = map.transport_code(&c).unwrap();
        prop_assert_eq!(img.dim(), c.dim());
        prop_assert_eq!(img.is_galois_self_dual(h).unwrap(), c.is_galois_self_dual(h).unwrap());
        prop_assert_eq!(map.transport_code_back(&img).unwrap(), c);
    }

    #[test]
    fn d_samples_give_self_dual_codes(pick in 0usize..4, seed: u64) {
        let (p, ell, n, h) = [(2, 2, 3, 1), (2, 2, 5, 1), (3, 2, 4, 1), (5, 1, 6, 0)][pick];
        let f = Field::new(p, ell, None).unwrap();
        let ctx = RingContext::cyclic(&f, n).unwrap();
        let d = build_d_set(&IdempotentBasis::new(&ctx).unwrap(), h).unwrap();
        let g = d.sample(seed).unwrap();
        prop_assert!(c1g_is_self_dual(&g, h).unwrap());
        let c = QuasiCode::from_pair(&ctx.one(), &g).unwrap();
        prop_assert!(c.is_galois_self_dual(h).unwrap());
        prop_assert_eq!(d.sample(seed).unwrap(), g);
    }
}

use polyprg::algebra::substitution::{restrict, substitute_sa};
use polyprg::algebra::{parse_poly, resultant, Field, FieldElem, MultiPoly, UniPoly};
use polyprg::oracles::{
    is_decomposable_bruteforce, random_poly, tv_distance, Distribution, PolyConstraint,
    DEFAULT_BUDGET,
};
use polyprg::prg::{choose_params, trace_prg, Prg};
use polyprg::tower::{build_tower_canonical, Extension};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f13() -> Field {
    Field::prime(13).unwrap()
}

fn tower_13_4() -> Extension {
    build_tower_canonical(&f13(), 2).unwrap()
}

fn elems(field: &Field, idx: &[u128]) -> Vec<FieldElem> {
    idx.iter().map(|&i| field.element_at(i % field.size())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tower_field_axioms(a in 0u128..28561, b in 0u128..28561, c in 0u128..28561) {
        let ext = tower_13_4();
        let f = ext.field();
        let (a, b, c) = (f.element_at(a), f.element_at(b), f.element_at(c));
        prop_assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if !a.is_zero() {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.index_of(&a), f.index_of(&f.element_at(f.index_of(&a))));
    }

    #[test]
    fn lift_and_reduce_form_a_homomorphism(a in 0u128..28561, b in 0u128..28561) {
        let ext = tower_13_4();
        let f = ext.field();
        let (a, b) = (f.element_at(a), f.element_at(b));
        prop_assert_eq!(ext.reduce(&ext.lift(&a)).unwrap(), a.clone());
        let prod = ext.lift(&a).mul(&ext.lift(&b));
        prop_assert_eq!(ext.reduce(&prod).unwrap(), f.mul(&a, &b));
        prop_assert_eq!(ext.reduce_by_evaluation(&prod).unwrap(), f.mul(&a, &b));
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), d in 0u32..4) {
        let field = f13();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(3, d, &field, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        let text = f.to_text("x");
        prop_assert_eq!(parse_poly(&field, 3, &text).unwrap(), f);
    }

    #[test]
    fn shear_is_inverted_by_negation(seed in any::<u64>(), a in prop::collection::vec(0u128..13, 2)) {
        let field = f13();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(3, 3, &field, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        let a = elems(&field, &a);
        let neg: Vec<_> = a.iter().map(|x| field.neg(x)).collect();
        let back = substitute_sa(&substitute_sa(&f, &a).unwrap(), &neg).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn restriction_agrees_with_pointwise_substitution(
        seed in any::<u64>(),
        a in prop::collection::vec(0u128..13, 2),
        b in prop::collection::vec(prop::collection::vec(0u128..13, 2), 2),
        pt in prop::collection::vec(0u128..13, 3),
    ) {
        let field = f13();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(3, 2, &field, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        let a = elems(&field, &a);
        // b_i(w) = b_i0 + b_i1 w
        let bs: Vec<MultiPoly> = b.iter().map(|c| {
            let c = elems(&field, c);
            MultiPoly::constant(&field, 1, c[0].clone()).add(&MultiPoly::var(&field, 1, 0).scale(&c[1]))
        }).collect();
        let big = restrict(&f, &bs, &a).unwrap();
        let pt = elems(&field, &pt);
        let (x, y, w) = (&pt[0], &pt[1], &pt[2]);
        let inner: Vec<FieldElem> = (0..2)
            .map(|i| field.add(&field.mul(&bs[i].eval(std::slice::from_ref(w)).unwrap(), x), &field.mul(&a[i], y)))
            .chain(std::iter::once(y.clone()))
            .collect();
        prop_assert_eq!(big.eval(&pt).unwrap(), f.eval(&inner).unwrap());
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_factors(
        fa in prop::collection::vec(0i64..13, 2..6),
        gb in prop::collection::vec(0i64..13, 2..6),
    ) {
        let field = f13();
        let f = UniPoly::from_ints(&field, &fa);
        let g = UniPoly::from_ints(&field, &gb);
        prop_assume!(f.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
        let res = resultant(&f, &g).unwrap();
        let common = f.gcd(&g).degree().unwrap_or(0) >= 1;
        prop_assert_eq!(res.is_zero(), common);
    }

    #[test]
    fn generator_is_deterministic_and_ends_in_u(seed in any::<u64>()) {
        let field = Field::prime(7).unwrap();
        let params = choose_params(2, 2, &field, 0.5, 4.0, 1.0).unwrap().with_k(2).unwrap();
        let prg = Prg::new(&params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = prg.random_seed(&mut rng).unwrap();
        let out = prg.generate(&s).unwrap();
        prop_assert_eq!(out.clone(), prg.generate(&s).unwrap());
        prop_assert_eq!(out.last().unwrap(), &s.u);
    }

    #[test]
    fn composed_polynomials_are_recognized(seed in any::<u64>()) {
        let field = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_poly(2, 1, &field, &mut rng, PolyConstraint::ExactDegree, DEFAULT_BUDGET).unwrap();
        let g = UniPoly::from_ints(&field, &[(seed % 5) as i64, 1, 1 + (seed % 4) as i64]);
        let target = polyprg::oracles::DecompositionWitness { g, h }.compose();
        let w = is_decomposable_bruteforce(&target, DEFAULT_BUDGET).unwrap();
        prop_assert!(w.is_some_and(|w| w.verify(&target)));
    }

    #[test]
    fn tv_is_a_metric(
        a in prop::collection::vec(0u64..20, 5),
        b in prop::collection::vec(0u64..20, 5),
        c in prop::collection::vec(0u64..20, 5),
    ) {
        prop_assume!(a.iter().sum::<u64>() > 0 && b.iter().sum::<u64>() > 0 && c.iter().sum::<u64>() > 0);
        let field = Field::prime(5).unwrap();
        let (a, b, c) = (
            Distribution::from_counts(&field, a).unwrap(),
            Distribution::from_counts(&field, b).unwrap(),
            Distribution::from_counts(&field, c).unwrap(),
        );
        let ab = tv_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, tv_distance(&b, &a).unwrap());
        prop_assert!(ab <= tv_distance(&a, &c).unwrap() + tv_distance(&c, &b).unwrap());
    }
}

#[test]
fn field_axioms_exhaustive_small_primes() {
    for p in [3u64, 7] {
        let f = Field::prime(p).unwrap();
        let all: Vec<_> = f.elements().unwrap().collect();
        for a in &all {
            for b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.sub(&f.add(a, b), b), *a);
                if !b.is_zero() {
                    assert_eq!(f.mul(&f.div(a, b).unwrap(), b), *a);
                }
            }
        }
    }
}

#[test]
fn trace_fibers_are_balanced_over_f169() {
    let ext = build_tower_canonical(&f13(), 1).unwrap();
    let big = ext.field();
    let mut counts = [0u32; 13];
    for x in big.elements().unwrap() {
        let t = big.absolute_trace(&x);
        counts[t.coeffs()[0] as usize] += 1;
    }
    assert!(counts.iter().all(|&c| c == 13));
}

#[test]
fn trace_generator_lands_in_prime_field() {
    let ext = build_tower_canonical(&f13(), 1).unwrap();
    let params = choose_params(2, 2, ext.field(), 0.5, 4.0, 1.0).unwrap();
    let prg = Prg::new(&params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let s = prg.random_seed(&mut rng).unwrap();
        for y in trace_prg(&prg, &s).unwrap() {
            assert_eq!(y.coeffs().len(), 1);
        }
    }
}

use num_rational::Ratio;
use polyprg::algebra::{resultant, Field, FieldElem, MultiPoly, UniPoly};
use polyprg::hitting::{
    hsg_over_extension, BitStream, EvalSet, HsgSpec, IndependentSampler, Phsg, PhsgSeed,
    SamplerParams,
};
use polyprg::oracles::{hsg_empirical_density, random_poly, PolyConstraint, DEFAULT_BUDGET};
use polyprg::tower::{
    build_tower_canonical, build_tower_rejection, samples_for_failure, Extension,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn eval_embedded(f: &MultiPoly, ext: &Extension, point: &[FieldElem]) -> FieldElem {
    let big = ext.field();
    let mut acc = big.zero();
    for (mono, c) in f.terms() {
        let mut term = ext.embed(c);
        for (x, &e) in point.iter().zip(mono.exps()) {
            term = big.mul(&term, &big.pow(x, e as u128));
        }
        acc = big.add(&acc, &term);
    }
    acc
}

#[test]
fn independent_sampler_concentrates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sampler = IndependentSampler::new(10).unwrap();
    let mut good = 0;
    for _ in 0..1000 {
        let mut bits = BitStream::from_rng(&mut rng);
        let xs = sampler.draw(1000, &mut bits).unwrap();
        let mean = xs.iter().filter(|&&x| x < 3).count() as f64 / 1000.0;
        if (mean - 0.3).abs() <= 0.05 {
            good += 1;
        }
    }
    assert!(good >= 990, "{good}");
}

#[test]
fn sampler_consumes_exactly_t_times_m_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let params = SamplerParams::new(4, 0.1, 0.05).unwrap();
    let mut bits = BitStream::from_rng(&mut rng);
    let xs = params.draw(&mut bits).unwrap();
    assert_eq!(xs.len(), params.t);
    assert_eq!(bits.consumed(), params.r);
    let one = IndependentSampler::new(16).unwrap();
    let mut bits = BitStream::from_rng(&mut rng);
    assert_eq!(one.draw(1, &mut bits).unwrap().len(), 1);
}

#[test]
fn tower_failure_rate_respects_delta() {
    let base = Field::prime(13).unwrap();
    let t = samples_for_failure(2, 0.01);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let builds = 10_000;
    let failures = (0..builds)
        .filter(|_| !build_tower_rejection(&base, 2, &mut rng, t).unwrap().is_success())
        .count();
    assert!(failures as f64 / builds as f64 <= 0.01, "{failures}");
}

#[test]
fn lifted_elements_have_degree_at_most_ell() {
    let ext = build_tower_canonical(&Field::prime(3).unwrap(), 2).unwrap();
    let max = ext
        .field()
        .elements()
        .unwrap()
        .map(|a| ext.lift(&a).total_degree().unwrap_or(0))
        .max();
    assert_eq!(max, Some(2));
    assert!(ext.lift(&ext.field().zero()).is_zero());
}

#[test]
fn nonvanishing_transfers_to_the_lifted_point() {
    let base = Field::prime(13).unwrap();
    let phsg = Phsg::new(&base, 2, 2, 1, 0.5).unwrap().with_tower_samples(4);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 100 {
        let f = random_poly(2, 2, &base, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        let tower: Vec<u128> = (0..4).map(|_| rng.gen_range(0..phsg.domain().size())).collect();
        let Some(ext) = phsg.build(&tower).unwrap().extension().cloned() else {
            continue;
        };
        let seed = rng.gen_range(0..phsg.hsg_seed_space().unwrap());
        let pt = phsg.extension_point(&ext, seed).unwrap();
        let lifted = phsg.sample(&PhsgSeed { tower, hsg: seed }).unwrap();
        let composed = lifted.substitute_into(&f).unwrap();
        if !eval_embedded(&f, &ext, &pt).is_zero() {
            assert!(!composed.is_zero());
        }
        assert_eq!(ext.reduce(&composed).unwrap(), eval_embedded(&f, &ext, &pt));
        checked += 1;
    }
}

#[test]
fn base_grid_keeps_its_defect_over_the_extension() {
    let base = Field::prime(13).unwrap();
    let ext = build_tower_canonical(&base, 1).unwrap();
    let spec = HsgSpec::full_grid(&base, 2, 2);
    let lifted = hsg_over_extension(&spec, &ext, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut outside = 0;
    for _ in 0..30 {
        let f = random_poly(2, 2, ext.field(), &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        outside += f.terms().any(|(_, c)| !ext.field().in_prime_subfield(c)) as u32;
        let frac = hsg_empirical_density(&lifted, &f, DEFAULT_BUDGET).unwrap();
        assert!(frac <= Ratio::new(2, 13));
    }
    assert!(outside > 20);
}

#[test]
fn small_explicit_grid_witness() {
    let f5 = Field::prime(5).unwrap();
    let set = (0..3).map(|i| f5.from_u64(i)).collect();
    let spec = HsgSpec::grid(&f5, 2, 2, EvalSet::Explicit(set)).unwrap();
    let f = MultiPoly::from_int_terms(&f5, 2, &[(&[1, 1], 1)]);
    assert_eq!(hsg_empirical_density(&spec, &f, DEFAULT_BUDGET).unwrap(), Ratio::new(5, 9));
}

#[test]
fn trace_over_f9() {
    let ext = build_tower_canonical(&Field::prime(3).unwrap(), 1).unwrap();
    let f9 = ext.field();
    let all: Vec<_> = f9.elements().unwrap().collect();
    for a in &all {
        for b in &all {
            let lhs = f9.absolute_trace(&f9.add(a, b));
            let rhs = f9.prime_subfield().add(&f9.absolute_trace(a), &f9.absolute_trace(b));
            assert_eq!(lhs, rhs);
        }
        if f9.in_prime_subfield(a) {
            let c = a.coeffs()[0];
            assert_eq!(f9.absolute_trace(a).coeffs()[0], (2 * c) % 3);
        }
    }
}

#[test]
fn resultant_swap_and_degree_additivity() {
    let f13 = Field::prime(13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let a: Vec<i64> = (0..4).map(|_| rng.gen_range(0..13)).chain([1]).collect();
        let b: Vec<i64> = (0..3).map(|_| rng.gen_range(0..13)).chain([1]).collect();
        let (f, g) = (UniPoly::from_ints(&f13, &a), UniPoly::from_ints(&f13, &b));
        let (r1, r2) = (resultant(&f, &g).unwrap(), resultant(&g, &f).unwrap());
        assert!(r1 == r2 || r1 == f13.neg(&r2));

        let p = random_poly(3, 3, &f13, &mut rng, PolyConstraint::ExactDegree, DEFAULT_BUDGET).unwrap();
        let q = random_poly(3, 2, &f13, &mut rng, PolyConstraint::ExactDegree, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.mul(&q).total_degree(), Some(5));
    }
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p polyprg --test acceptance`.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use polyprg::algebra::{check_hypothesis_h, Field, FieldElem, Monomial, MultiPoly, UniPoly};
use polyprg::hitting::{HittingSetGenerator, HsgSpec, Phsg};
use polyprg::oracles::{
    equidistribution_check, hsg_empirical_density, is_decomposable_bruteforce,
    phsg_vanishing_exhaustive, prg_tv_sampled, random_poly, random_poly_with_support,
    repeated_root_in, restriction_preservation_stats, tower_success_rate, trace_polynomial,
    PolyConstraint, DEFAULT_BUDGET,
};
use polyprg::prg::{choose_params, log2_big, seed_length, trace_prg, Prg};
use polyprg::tower::{
    build_tower_canonical, is_irreducible_univariate, quadratic_irreducible_fast, Extension,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn prime(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn ratio_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// All monic polynomials of the given degree.
fn monic_polys(field: &Field, deg: usize) -> Vec<UniPoly> {
    let q = field.size();
    let total = q.pow(deg as u32);
    (0..total)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(field.element_at(idx % q));
                idx /= q;
            }
            coeffs.push(field.one());
            UniPoly::new(field, coeffs)
        })
        .collect()
}

fn check_axioms(f: &Field) -> Result<(), String> {
    let all: Vec<FieldElem> = f.elements().map_err(|e| e.to_string())?.collect();
    let zero = f.zero();
    let one = f.one();
    for a in &all {
        ensure(f.add(a, &zero) == *a && f.mul(a, &one) == *a, "identities")?;
        ensure(f.add(a, &f.neg(a)).is_zero(), "additive inverse")?;
        if !a.is_zero() {
            ensure(f.is_one(&f.mul(a, &f.inv(a).unwrap())), "multiplicative inverse")?;
        }
        for b in &all {
            ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), "commutativity")?;
        }
    }
    // triples: exhaustive when Q^3 is small, a fixed stride otherwise
    let stride = if all.len() <= 31 { 1 } else { 3 };
    for a in all.iter().step_by(stride) {
        for b in &all {
            for c in all.iter().step_by(stride) {
                ensure(f.mul(a, &f.mul(b, c)) == f.mul(&f.mul(a, b), c), "associativity")?;
                ensure(f.add(a, &f.add(b, c)) == f.add(&f.add(a, b), c), "additive associativity")?;
                ensure(f.mul(a, &f.add(b, c)) == f.add(&f.mul(a, b), &f.mul(a, c)), "distributivity")?;
            }
        }
    }
    Ok(())
}

fn c1_algebra() -> Outcome {
    let mut checked = 0;
    for p in [3u64, 7, 13, 31] {
        check_axioms(&prime(p)).map_err(|e| format!("F_{p}: {e}"))?;
        checked += 1;
    }
    for ell in 1..=2 {
        let ext = build_tower_canonical(&prime(3), ell).unwrap();
        check_axioms(ext.field()).map_err(|e| format!("F_3 tower ell={ell}: {e}"))?;
        checked += 1;
    }
    let mut roundtrips = 0u64;
    for (p, ell) in [(3u64, 1usize), (3, 2), (13, 1), (13, 2)] {
        let ext = build_tower_canonical(&prime(p), ell).unwrap();
        for a in ext.field().elements().unwrap() {
            ensure(ext.reduce(&ext.lift(&a)).unwrap() == a, format!("pi(phi(a)) != a over {p}, ell={ell}"))?;
            roundtrips += 1;
        }
    }
    Ok(format!("{checked} fields up to Q=81 satisfy the axioms; {roundtrips} lift/reduce round trips exact"))
}

fn divisible_by_lower_degree(f: &UniPoly) -> bool {
    let deg = f.degree().unwrap();
    (1..=deg / 2).any(|k| {
        monic_polys(f.field(), k)
            .iter()
            .any(|g| f.rem(g).unwrap().is_zero())
    })
}

fn c2_irreducibility() -> Outcome {
    let mut compared = 0u64;
    for p in [7u64, 13] {
        let field = prime(p);
        for deg in 1..=3 {
            for f in monic_polys(&field, deg) {
                let fast = is_irreducible_univariate(&f).unwrap();
                let slow = !divisible_by_lower_degree(&f);
                ensure(fast == slow, format!("mismatch on {:?} over F_{p}", f.coeffs()))?;
                compared += 1;
            }
        }
    }
    let ext = build_tower_canonical(&prime(13), 1).unwrap();
    let big = ext.field();
    let inv2 = big.inv(&big.from_u64(2)).unwrap();
    let inv4 = big.mul(&inv2, &inv2);
    for f in monic_polys(big, 2) {
        let (c, b) = (f.coeff(0), f.coeff(1));
        // z^2 + bz + c = (z + b/2)^2 - (b^2/4 - c)
        let h = big.sub(&big.mul(&big.square(&b), &inv4), &c);
        let fast = quadratic_irreducible_fast(big, &h).unwrap();
        let generic = is_irreducible_univariate(&f).unwrap();
        ensure(fast == generic, "quadratic mismatch over F_169")?;
        compared += 1;
    }
    Ok(format!("{compared} polynomials, 0 mismatches"))
}

fn c3_tower_rate() -> Outcome {
    let trials = 10_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ok = tower_success_rate(&prime(13), 2, trials, &mut rng).map_err(|e| e.to_string())?;
    let rate = ok as f64 / trials as f64;
    let sigma = (0.25f64 * 0.75 / trials as f64).sqrt();
    let msg = format!("rate {rate:.4} vs 1/4, |diff| = {:.2} sigma", (rate - 0.25).abs() / sigma);
    ensure((rate - 0.25).abs() <= 3.0 * sigma, msg.clone())?;
    Ok(msg)
}

fn c4_hsg_density() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0f64;
    for q in [7u64, 13] {
        let field = prime(q);
        for d in [2u32, 3] {
            let spec = HsgSpec::full_grid(&field, 2, d);
            let bound = Ratio::new(d as u128, q as u128);
            for _ in 0..100 {
                let f = random_poly(2, d, &field, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
                let frac = hsg_empirical_density(&spec, &f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure(frac <= bound, format!("{} vanishes on {frac} > {bound}", f.to_text("x")))?;
                worst = worst.max(ratio_f64(&frac) / ratio_f64(&bound));
            }
        }
    }
    Ok(format!("400 polynomials within d/q; worst fraction/bound = {worst:.3}"))
}

fn c5_phsg_density() -> Outcome {
    let field = prime(13);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_margin = f64::INFINITY;
    for i in 0..50 {
        let d = 1 + (i % 3) as u32;
        let phsg = Phsg::new(&field, 1, d, 1, 0.5).unwrap().with_tower_samples(4);
        let f = random_poly(1, d, &field, &mut rng, PolyConstraint::Nonzero, DEFAULT_BUDGET).unwrap();
        let dens = phsg_vanishing_exhaustive(&phsg, &f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let bound = Ratio::new(2 * d as u128, 169) + dens.failure_rate;
        let base = Ratio::new(d as u128, 13);
        ensure(dens.vanishing <= bound, format!("{} vanishes with {} > {}", f.to_text("x"), dens.vanishing, bound))?;
        ensure(bound < base, format!("bound {bound} not below d/13 at d={d}"))?;
        worst_margin = worst_margin.min(ratio_f64(&base) - ratio_f64(&dens.vanishing));
    }
    Ok(format!("50 polynomials within 2d/169 + failure (1/16); min gap to d/13 = {worst_margin:.4}"))
}

fn c6_structure() -> Outcome {
    let field = prime(5);
    let params = choose_params(1, 1, &field, 0.5, 4.0, 1.0)
        .unwrap()
        .with_k(2)
        .unwrap()
        .with_tower_samples(1);
    let prg = Prg::new(&params).unwrap();
    let space: u128 = prg.seed_space().unwrap().try_into().unwrap();
    for idx in 0..space {
        let s = prg.seed_at(idx).unwrap();
        let out = prg.generate(&s).unwrap();
        ensure(out.last() == Some(&s.u), format!("seed {idx}: last coordinate is not u"))?;
        if s.u.is_zero() && s.v.is_zero() {
            ensure(out.iter().all(|x| x.is_zero()), format!("seed {idx}: u=v=0 not zero"))?;
        }
        if s.v.is_zero() {
            let a = prg.h2().point(s.s).unwrap();
            for (o, ai) in out.iter().zip(&a) {
                ensure(*o == field.mul(ai, &s.u), format!("seed {idx}: v=0 is not u*a"))?;
            }
        }
    }
    Ok(format!("{space} seeds checked"))
}

fn shape_support() -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=2u32 {
        for j in 0..=2 - i {
            for k in 0..=2 - i - j {
                out.push(Monomial::new(&[i, j, k]));
            }
        }
    }
    out
}

fn c7_fooling() -> Outcome {
    let support = shape_support();
    let pairs = 8;
    let mut medians = Vec::new();
    let mut at_101 = (0, 0);
    for q in [29u64, 53, 101] {
        let field = prime(q);
        let params = choose_params(2, 2, &field, 0.5, 4.0, 1.0).unwrap();
        let prg = Prg::new(&params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tvs = Vec::new();
        for _ in 0..50 {
            let f = random_poly_with_support(3, &support, &field, &mut rng).unwrap();
            let tv = prg_tv_sampled(&prg, &f, pairs, &mut rng, 1 << 30).map_err(|e| e.to_string())?;
            tvs.push(ratio_f64(&tv));
        }
        if q == 101 {
            at_101 = (tvs.iter().filter(|&&t| t <= 0.35).count(), tvs.len());
        }
        medians.push(median(&mut tvs));
    }
    let msg = format!(
        "medians {:.4}/{:.4}/{:.4} at q=29/53/101; {}/{} within 0.35 at q=101 ({pairs} seed pairs each)",
        medians[0], medians[1], medians[2], at_101.0, at_101.1
    );
    ensure(at_101.0 * 100 >= 95 * at_101.1, msg.clone())?;
    ensure(medians.windows(2).all(|w| w[1] <= w[0]), msg.clone())?;
    Ok(msg)
}

fn c8_equidistribution() -> Outcome {
    let qs = [29u64, 53, 101];
    let shapes: [&[(&[u32], i64)]; 3] = [
        &[(&[1, 1], 1)],
        &[(&[2, 0], 1), (&[0, 2], 1)],
        &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1), (&[1, 0], 1), (&[0, 1], 2)],
    ];
    let mut report = Vec::new();
    for shape in shapes {
        let mut prev = f64::INFINITY;
        let mut row = Vec::new();
        for q in qs {
            let field = prime(q);
            let f = MultiPoly::from_int_terms(&field, 2, shape);
            ensure(is_decomposable_bruteforce(&f, DEFAULT_BUDGET).unwrap().is_none(), "shape is decomposable")?;
            let tv = ratio_f64(&equidistribution_check(&f, DEFAULT_BUDGET).unwrap());
            let bound = 4.0 * 4.0 / (q as f64).sqrt();
            ensure(tv <= bound, format!("{} at q={q}: {tv} > {bound}", f.to_text("x")))?;
            ensure(tv < prev, format!("{} not decreasing at q={q}", f.to_text("x")))?;
            prev = tv;
            row.push(format!("{tv:.4}"));
        }
        report.push(row.join("/"));
    }
    let mut medians = Vec::new();
    for q in qs {
        let field = prime(q);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut tvs = Vec::new();
        for _ in 0..20 {
            let f = random_poly(2, 2, &field, &mut rng, PolyConstraint::Indecomposable, DEFAULT_BUDGET).unwrap();
            let tv = ratio_f64(&equidistribution_check(&f, DEFAULT_BUDGET).unwrap());
            ensure(tv <= 16.0 / (q as f64).sqrt(), format!("random f at q={q}: {tv}"))?;
            tvs.push(tv);
        }
        medians.push(median(&mut tvs));
    }
    ensure(medians.windows(2).all(|w| w[1] < w[0]), format!("random medians not decreasing: {medians:?}"))?;
    Ok(format!(
        "fixed shapes {}; random medians {:.4}/{:.4}/{:.4}",
        report.join(", "),
        medians[0],
        medians[1],
        medians[2]
    ))
}

fn c9_preservation() -> Outcome {
    let field = prime(13);
    let params = choose_params(2, 2, &field, 0.5, 4.0, 1.0).unwrap().with_k(2).unwrap();
    let prg = Prg::new(&params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let stats = restriction_preservation_stats(&prg, 200, &mut rng, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let msg = format!(
        "{}/{} preserved ({:.3}), Wilson 95% [{:.3}, {:.3}]",
        stats.preserved, stats.trials, stats.fraction, stats.wilson.0, stats.wilson.1
    );
    ensure(stats.fraction >= 0.9 && stats.wilson.0 > 0.8, msg.clone())?;
    Ok(msg)
}

fn c10_trace() -> Outcome {
    let ext = build_tower_canonical(&prime(13), 1).unwrap();
    let big = ext.field();
    let params = choose_params(2, 2, big, 0.5, 4.0, 1.0).unwrap();
    let prg = Prg::new(&params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let seeds = 200;
    for _ in 0..seeds {
        let s = prg.random_seed(&mut rng).unwrap();
        for y in trace_prg(&prg, &s).map_err(|e| e.to_string())? {
            ensure(y.coeffs().len() == 1 && y.coeffs()[0] < 13, "trace output outside F_13")?;
        }
    }
    let tr = trace_polynomial(big, DEFAULT_BUDGET).unwrap();
    let deg = tr.degree();
    ensure(deg == Some(13), format!("trace polynomial degree {deg:?}"))?;
    let mut coeffs = vec![big.zero(); 14];
    coeffs[1] = big.one();
    coeffs[13] = big.one();
    ensure(tr == UniPoly::new(big, coeffs), "trace polynomial is not x + x^13")?;
    Ok(format!("{seeds} seeds land in F_13; x1 composed with the trace has degree 13"))
}

fn c11_seed_length() -> Outcome {
    let mut configs = 0;
    for (p, n, d, k) in [(13u64, 2usize, 2u32, None), (13, 3, 4, None), (101, 2, 2, None), (13, 2, 2, Some(2usize))] {
        let field = prime(p);
        let mut params = choose_params(n, d, &field, 0.3, 4.0, 1.0).unwrap();
        if let Some(k) = k {
            params = params.with_k(k).unwrap();
        }
        let prg = Prg::new(&params).unwrap();
        let sl = seed_length(&prg).unwrap();
        let q = BigUint::from(p);
        let ell = params.ell as u32;
        ensure(sl.space == &sl.t1_size * &sl.t2_size * q.pow(ell + 2), "space is not |T1||T2|q^(l+2)")?;
        ensure(sl.space == prg.seed_space().unwrap(), "space disagrees with the generator")?;
        let lq = (p as f64).log2();
        let sum = sl.log_t1 + sl.log_t2 + ell as f64 * lq + 2.0 * lq;
        ensure((sl.total - sum).abs() < 1e-9, "total is not the itemized sum")?;
        ensure((log2_big(&sl.space) - sl.total).abs() < 1e-6, "total disagrees with log2 of the space")?;
        ensure((sl.tower_bits + sl.phsg_grid_bits - sl.log_t1).abs() < 1e-6, "log|T1| itemization")?;
        configs += 1;
    }
    Ok(format!("{configs} configurations: total = log|T1| + log|T2| + (l+2) log q"))
}

fn c12_hypothesis() -> Outcome {
    let f7 = prime(7);
    let hand = [
        (MultiPoly::from_int_terms(&f7, 2, &[(&[0, 2], 1), (&[1, 0], 1)]), false),
        (MultiPoly::from_int_terms(&f7, 2, &[(&[0, 2], 1), (&[1, 1], 1), (&[0, 0], 1)]), true),
        (MultiPoly::from_int_terms(&f7, 2, &[(&[1, 1], 1)]), false),
    ];
    for (f, want) in &hand {
        ensure(check_hypothesis_h(f, 1, None).unwrap() == *want, format!("hand case {}", f.to_text("x")))?;
    }
    let f13 = prime(13);
    let ext: Extension = build_tower_canonical(&f13, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut holds = 0;
    for i in 0..100 {
        let d = 2 + (i % 3) as u32;
        let f = random_hypothesis_candidate(&f13, d, &mut rng);
        let got = check_hypothesis_h(&f, 1, None).unwrap();
        let want = ground_truth(&f, d, &ext);
        ensure(got == want, format!("mismatch on {}", f.to_text("x")))?;
        holds += got as u32;
    }
    Ok(format!("3 hand cases and 100 random cases agree ({holds} satisfy H)"))
}

/// `P(y) + x·Q(x, y)` with leading `y^d` coefficient 1, or occasionally 2,
/// and `P` given a forced double root about a third of the time.
fn random_hypothesis_candidate(field: &Field, d: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..13)).collect();
    if rng.gen_bool(0.35) {
        let r: i64 = rng.gen_range(0..13);
        let mut rest: Vec<i64> = (0..d - 2).map(|_| rng.gen_range(0..13)).collect();
        rest.push(1);
        let sq = UniPoly::from_ints(field, &[-r, 1]);
        let prod = sq.mul(&sq).mul(&UniPoly::from_ints(field, &rest));
        p = prod.coeffs()[..d as usize].iter().map(|c| c.coeffs()[0] as i64).collect();
    }
    let lead = if rng.gen_bool(0.1) { 2 } else { 1 };
    let mut f = MultiPoly::zero(field, 2);
    for (j, c) in p.iter().enumerate() {
        f = f.add(&MultiPoly::from_int_terms(field, 2, &[(&[0, j as u32], *c)]));
    }
    f = f.add(&MultiPoly::from_int_terms(field, 2, &[(&[0, d], lead)]));
    for a in 1..=d {
        for b in 0..=d - a {
            if rng.gen_bool(0.5) {
                f = f.add(&MultiPoly::from_int_terms(field, 2, &[(&[a, b], rng.gen_range(1..13))]));
            }
        }
    }
    f
}

fn ground_truth(f: &MultiPoly, d: u32, ext: &Extension) -> bool {
    let field = f.field();
    if f.total_degree() != Some(d) || f.degree_in(1) != Some(d) || !field.is_one(&f.coeff(&Monomial::new(&[0, d]))) {
        return false;
    }
    let f0 = UniPoly::new(field, (0..=d).map(|j| f.coeff(&Monomial::new(&[0, j]))).collect());
    // a repeated root of a degree <= 5 polynomial over F_13 lies in F_169
    !repeated_root_in(&f0, ext).unwrap()
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "algebra exactness", 10, c1_algebra),
        (2, "irreducibility testers", 30, c2_irreducibility),
        (3, "tower success rate", 60, c3_tower_rate),
        (4, "HSG density", 60, c4_hsg_density),
        (5, "PHSG density gain", 300, c5_phsg_density),
        (6, "PRG structural identities", 10, c6_structure),
        (7, "fooling trend", 900, c7_fooling),
        (8, "equidistribution", 300, c8_equidistribution),
        (9, "indecomposability preservation", 1200, c9_preservation),
        (10, "trace reduction", 60, c10_trace),
        (11, "seed-length accounting", 1, c11_seed_length),
        (12, "hypothesis (H) checker", 60, c12_hypothesis),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s limit")),
            Err(e) => (false, e),
        };
        failed += (!ok) as u32;
        println!(
            "criterion {id:>2} {} {name}: {detail} [{:.2} s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Exit criteria. Runs every criterion, prints one line each, and exits
//! non-zero if any failed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use petrie_core::algebra::{gf2_mul, invariant_factors, minpoly, similar, IntMatrix, IntPoly, RatMatrix, RatPoly};
use petrie_core::certificates::{build_thm12, build_thm13, build_thm7, lift_thm5, verify_conjugacy, BlockExtension};
use petrie_core::extensions::{decompose_left, decompose_right, decompose_two_sided, right_specs};
use petrie_core::families::{family_sigma_nk, family_thm12, family_thm13};
use petrie_core::perm::{compose, parse_permutation, Permutation};
use petrie_core::petrie::{petrie_matrix, petrie_matrix_gf2};
use petrie_core::sim::{check_pair, classify, ExtensionBound, Mode, Strength};
use petrie_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn p(s: &str) -> Permutation {
    parse_permutation(s).unwrap()
}

fn pm(s: &Permutation) -> IntMatrix {
    petrie_matrix(s).unwrap()
}

fn cyc(points: &[usize]) -> Permutation {
    Permutation::from_cycle(points, points.len()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn sigma7_charpoly() -> Check {
    let got = pm(&p("(1 6 5 7 2 3 4)")).charpoly();
    let want = IntPoly::from_i64s(&[1, -1, -3, 5, -1, -3, 1]);
    ensure(got == want, || format!("got {got}"))?;
    Ok(format!("{got}"))
}

fn determinant_law() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=7 {
        for s in Permutation::all(n) {
            let d = pm(&s).det();
            ensure(d == BigInt::from(1) || d == BigInt::from(-1), || format!("det {d} for {}", s.cycle_string(true)))?;
            count += 1;
        }
    }
    ensure(count == 5910, || format!("enumerated {count} permutations"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{count} permutations in {:.2?}", start.elapsed()))
}

fn gf2_functoriality() -> Check {
    let perms: Vec<_> = Permutation::all(5).collect();
    let (mut pairs, mut failures) = (0, 0);
    for s in &perms {
        let ms = petrie_matrix_gf2(s).unwrap();
        for r in &perms {
            let Ok(composite) = compose(r, s) else { continue };
            pairs += 1;
            if gf2_mul(&ms, &petrie_matrix_gf2(r).unwrap()).unwrap() != petrie_matrix_gf2(&composite).unwrap() {
                failures += 1;
            }
        }
    }
    ensure(failures == 0, || format!("{failures} failures in {pairs} pairs"))?;
    Ok(format!("{pairs} pairs"))
}

fn odd_coefficients() -> Check {
    let mut cyclic = 0;
    for n in 3..=7 {
        for s in Permutation::all(n).filter(Permutation::is_cyclic) {
            let c = pm(&s).charpoly();
            ensure(c.coeffs().iter().all(|x| x.is_odd()), || format!("{} has charpoly {c}", s.cycle_string(true)))?;
            cyclic += 1;
        }
    }
    Ok(format!("{cyclic} cyclic permutations"))
}

fn minpoly_regression() -> Check {
    let a = minpoly(&pm(&p("(3 4 5)@5")));
    let b = minpoly(&pm(&p("(1 2)(3 4 5)")));
    ensure(a == RatPoly::from_i64s(&[1, 0, -2, 1]), || format!("(345): {a}"))?;
    ensure(b == RatPoly::from_i64s(&[-1, 1, 2, -3, 1]), || format!("(12)(345): {b}"))?;
    Ok(format!("{a} and {b}"))
}

type Classes = BTreeSet<BTreeSet<String>>;

fn classes(n: usize, mode: Mode, strength: Strength) -> Classes {
    let report = classify(n, mode, strength, &ExtensionBound::default_for(mode)).unwrap();
    report.nontrivial().map(|c| c.members.iter().map(|q| q.cycle_string(true)).collect()).collect()
}

fn expect(groups: &[&[&str]]) -> Classes {
    groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()
}

fn compare(label: &str, got: Classes, want: Classes) -> Result<(), String> {
    ensure(got == want, || format!("{label}: got {got:?}, expected {want:?}"))
}

fn classification_s3() -> Check {
    let mut errors = Vec::new();
    for mode in [Mode::Right, Mode::Left] {
        for st in [Strength::Similar, Strength::WeaklySimilar] {
            if let Err(e) = compare(&format!("{mode} {}", st.short()), classes(3, mode, st), Classes::new()) {
                errors.push(e);
            }
        }
    }
    for st in [Strength::Similar, Strength::WeaklySimilar] {
        if let Err(e) = compare(&format!("two-sided {}", st.short()), classes(3, Mode::TwoSided, st), expect(&[&["(123)", "(132)"]])) {
            errors.push(e);
        }
    }
    ensure(errors.is_empty(), || errors.join("; "))?;
    Ok("all listings match".into())
}

fn classification_s4() -> Check {
    let start = Instant::now();
    let right_sim: &[&[&str]] = &[&["(12)", "(23)"], &["(123)", "(132)"], &["(1342)", "(1432)"]];
    let right_weak_only: &[&[&str]] = &[&["(34)", "(12)(34)"], &["(142)", "(243)"], &["(14)(23)", "(14)", "(24)"]];
    let left_sim: &[&[&str]] = &[&["(23)", "(34)"], &["(234)", "(243)"], &["(1342)", "(1234)"]];
    let two_sim: &[&[&str]] = &[&["(134)", "(142)"], &["(1234)", "(1432)", "(1342)"]];
    let two_weak_only: &[&[&str]] = &[&["(23)", "(14)(23)"]];
    let union = |a: &[&[&str]], b: &[&[&str]]| -> Classes { expect(a).into_iter().chain(expect(b)).collect() };

    let mut errors = Vec::new();
    let mut push = |r: Result<(), String>| {
        if let Err(e) = r {
            errors.push(e)
        }
    };
    push(compare("right sim", classes(4, Mode::Right, Strength::Similar), expect(right_sim)));
    push(compare("right weak", classes(4, Mode::Right, Strength::WeaklySimilar), union(right_sim, right_weak_only)));
    push(compare("left sim", classes(4, Mode::Left, Strength::Similar), expect(left_sim)));
    push(compare("two-sided sim", classes(4, Mode::TwoSided, Strength::Similar), expect(two_sim)));
    push(compare("two-sided weak", classes(4, Mode::TwoSided, Strength::WeaklySimilar), union(two_sim, two_weak_only)));
    push(within(start, Duration::from_secs(300)));
    ensure(errors.is_empty(), || errors.join("; "))?;
    Ok(format!("all listings match in {:.2?}", start.elapsed()))
}

fn basic_lift_sweep() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut built = 0;
    for m in 1..=3 {
        for n in 0..=3 {
            let ts: Vec<Option<usize>> = if n == 0 { vec![None] } else { (m + 5..=m + n + 4).map(Some).collect() };
            for s in 1..=m {
                for &t in &ts {
                    for _ in 0..10 {
                        let mut low: Vec<usize> = (1..=m).collect();
                        let mut high: Vec<usize> = (m + 5..=m + n + 4).collect();
                        low.shuffle(&mut rng);
                        high.shuffle(&mut rng);
                        let (sigma, rho, w) = build_thm7(m, n, s, t, &low, &high).map_err(|e| format!("m={m} n={n} s={s} t={t:?}: {e}"))?;
                        let ok = verify_conjugacy(&w.h, &pm(&sigma), &pm(&rho)).unwrap() && w.det() != BigRational::from_integer(0.into());
                        ensure(ok, || format!("m={m} n={n} s={s} t={t:?} low={low:?} high={high:?}"))?;
                        built += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{built} witnesses verified"))
}

fn shift_family() -> Check {
    for k in 4..=8 {
        let mats: Vec<IntMatrix> = (2..=k).map(|n| pm(&family_sigma_nk(n, k).unwrap())).collect();
        let at = |n: usize| &mats[n - 2];
        for a in 3..k {
            for b in a + 1..k {
                ensure(similar(at(a), at(b)).unwrap(), || format!("k={k}: σ_{a} and σ_{b} not similar"))?;
            }
            ensure(!similar(at(2), at(a)).unwrap(), || format!("k={k}: σ_2 similar to σ_{a}"))?;
            ensure(at(2).trace() != at(a).trace(), || format!("k={k}: σ_2 and σ_{a} share a trace"))?;

            let c1 = cyc(&(1..=k + 1).collect::<Vec<_>>());
            let c2 = cyc(&[1].into_iter().chain(a..=k + 1).chain((2..a).rev()).collect::<Vec<_>>());
            let (b1, s1) = decompose_right(&c1, k).ok_or("first extension is not a right extension")?;
            let (b2, s2) = decompose_right(&c2, k).ok_or("second extension is not a right extension")?;
            ensure(b1 == family_sigma_nk(2, k).unwrap() && b2 == family_sigma_nk(a, k).unwrap() && s1 == s2, || {
                format!("k={k} n={a}: extensions are not synchronized over the family")
            })?;
            let (t1, t2) = (pm(&c1).trace(), pm(&c2).trace());
            ensure(t1 == BigInt::from(1) && t2 == BigInt::from(3), || format!("k={k} n={a}: traces {t1} vs {t2}"))?;
        }
        ensure(similar(at(2), at(k)).unwrap(), || format!("k={k}: σ_2 and σ_k not similar"))?;
    }
    Ok("k = 4..=8".into())
}

fn alpha_theta() -> Check {
    let base = build_thm12(5, None).map_err(|e| e.to_string())?;
    ensure(base.verified, || "n = 0 witness".into())?;
    let mut count = 1;
    for n in 1..=2 {
        for spec in right_specs(5, n) {
            ensure(build_thm12(5, Some(&spec)).map_err(|e| e.to_string())?.verified, || format!("spec {spec:?}"))?;
            count += 1;
        }
    }
    let (a5, t5) = family_thm12(5).unwrap();
    ensure(similar(&pm(&a5), &pm(&t5)).unwrap(), || "α₅ and θ₅ not similar".into())?;
    for k in 6..=8 {
        let (a, t) = family_thm12(k).unwrap();
        ensure(pm(&a).trace() != pm(&t).trace(), || format!("k={k}: equal traces"))?;
    }
    for k in 5..=7 {
        let (a, t) = family_thm12(k).unwrap();
        let mu = cyc(&[1, 4, 3].into_iter().chain(6..=k + 2).chain([5, 2]).collect::<Vec<_>>());
        let nu = cyc(&[1, k + 1, k + 2].into_iter().chain((6..=k).rev()).chain([3, 4, 5, 2]).collect::<Vec<_>>());
        let (bm, sm) = decompose_two_sided(&mu, 1, 1).ok_or("μ is not a two-sided extension")?;
        let (bn, sn) = decompose_two_sided(&nu, 1, 1).ok_or("ν is not a two-sided extension")?;
        ensure(bm == a && bn == t && sm == sn, || format!("k={k}: μ, ν not synchronized over α, θ"))?;
        let sign = |e: usize| BigInt::from(if e % 2 == 0 { 1 } else { -1 });
        let (dm, dn) = (pm(&mu).det(), pm(&nu).det());
        ensure(dm == sign(k + 1) && dn == sign(k), || format!("k={k}: det μ = {dm}, det ν = {dn}"))?;
    }
    Ok(format!("{count} witnesses, traces and determinants as stated"))
}

fn beta_delta() -> Check {
    let mut count = 0;
    for k in 5..=7 {
        for n in 1..=2 {
            for spec in right_specs(k, n) {
                ensure(build_thm13(k, &spec).map_err(|e| e.to_string())?.verified, || format!("k={k} spec {spec:?}"))?;
                count += 1;
            }
        }
        let (b, d) = family_thm13(k).unwrap();
        let mu = cyc(&[1, 4, 3].into_iter().chain(5..=k + 1).chain([2]).collect::<Vec<_>>());
        let nu = cyc(&[1].into_iter().chain((6..=k + 1).rev()).chain([4, 3, 5, 2]).collect::<Vec<_>>());
        let (bm, sm) = decompose_left(&mu, 1).ok_or("left extension expected")?;
        let (bn, sn) = decompose_left(&nu, 1).ok_or("left extension expected")?;
        ensure(bm == b && bn == d && sm == sn, || format!("k={k}: not a synchronized left extension of β, δ"))?;
        let (tm, tn) = (pm(&mu).trace(), pm(&nu).trace());
        ensure(tm == BigInt::from(5) && tn == BigInt::from(3), || format!("k={k}: traces {tm} vs {tn}"))?;
    }
    Ok(format!("{count} witnesses, left traces 5 vs 3"))
}

fn eigenvalue_one_counterexample() -> Check {
    let (s4, r4) = (p("(1 3)@4"), p("(1 3)(2 4)"));
    ensure(similar(&pm(&s4), &pm(&r4)).unwrap(), || "base matrices not similar".into())?;
    let (s6, r6) = (p("(1 3)(5 6)"), p("(1 3)(2 4)(5 6)"));
    let (ms, mr) = (minpoly(&pm(&s6)), minpoly(&pm(&r6)));
    ensure(ms != mr, || format!("equal minimal polynomials {ms}"))?;
    ensure(!similar(&pm(&s6), &pm(&r6)).unwrap(), || "extended matrices similar".into())?;

    let (s5, r5) = (p("(1 3)@5"), p("(1 3)(2 4)@5"));
    let weak = check_pair(&s5, &r5, Mode::Right, Strength::WeaklySimilar, &ExtensionBound::uniform(3)).unwrap();
    let sim = check_pair(&s5, &r5, Mode::Right, Strength::Similar, &ExtensionBound::uniform(3)).unwrap();
    ensure(!weak.is_refuted() && sim.is_refuted(), || "expected weak-but-not-similar on P_5".into())?;

    let g = RatMatrix::from_rows(
        [[1, 0, 0], [0, 0, 1], [1, 1, 1]].iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect(),
    )
    .unwrap();
    ensure(verify_conjugacy(&g, &pm(&r4), &pm(&s4)).unwrap(), || "base change does not conjugate".into())?;
    let lifted = lift_thm5(&s4, &r4, &g, &BlockExtension { left: None, right: Some(p("(1 2)")) });
    ensure(matches!(lifted, Err(Error::EigenvalueOne)), || format!("lift returned {lifted:?}"))?;
    Ok(format!("minimal polynomials {ms} vs {mr}"))
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(dim);
    for _ in 0..3 * dim {
        let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        for col in 0..dim {
            let v = u.get(i, col) + &c * u.get(j, col);
            u.set(i, col, v);
        }
    }
    let inv = u.to_rat().inverse().unwrap().to_int().expect("unimodular inverse is integral");
    (u, inv)
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..200 {
        let dim = rng.gen_range(1..=6);
        let a = common::random_01(&mut rng, dim);
        let want: Vec<BigInt> = common::cofactor_charpoly(&a).into_iter().map(BigInt::from).collect();
        let got = to_matrix(&a).charpoly();
        ensure(got.coeffs() == want.as_slice(), || format!("trial {trial}: {a:?} gives {got}"))?;
    }

    let mut bases: Vec<IntMatrix> = ["(1 3)(5 6)", "(1 3)(2 4)(5 6)", "(1 2)(3 4 5)", "()@5", "(1 6 5 7 2 3 4)"].iter().map(|s| pm(&p(s))).collect();
    bases.extend((0..5).map(|_| {
        let dim = rng.gen_range(2..=5);
        to_matrix(&common::random_01(&mut rng, dim))
    }));
    for a in &bases {
        let want = invariant_factors(a);
        for _ in 0..100 {
            let (u, inv) = random_unimodular(&mut rng, a.dim());
            let b = u.mul(a).unwrap().mul(&inv).unwrap();
            ensure(invariant_factors(&b) == want, || format!("invariant factors moved for {:?}", a.rows()))?;
        }
    }

    let mut count = 0;
    for s in Permutation::all(6) {
        let r = IntMatrix::reversal(5);
        ensure(pm(&s.dual()) == r.mul(&pm(&s)).unwrap().mul(&r).unwrap(), || format!("dual of {}", s.cycle_string(true)))?;
        count += 1;
    }
    Ok(format!("200 charpolys, {} matrices x 100 conjugations, {count} duals", bases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("sigma7 characteristic polynomial", sigma7_charpoly),
        ("determinant is a unit on S_3..S_7", determinant_law),
        ("GF(2) functoriality on S_5", gf2_functoriality),
        ("odd coefficients for cyclic permutations", odd_coefficients),
        ("minimal polynomial regression", minpoly_regression),
        ("S_3 classification at default bounds", classification_s3),
        ("S_4 classification at default bounds", classification_s4),
        ("basic-lift certificate sweep", basic_lift_sweep),
        ("interval-shift family k <= 8", shift_family),
        ("alpha-theta witnesses and refutations", alpha_theta),
        ("beta-delta witnesses and refutations", beta_delta),
        ("eigenvalue-one counterexample", eigenvalue_one_counterexample),
        ("oracle property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

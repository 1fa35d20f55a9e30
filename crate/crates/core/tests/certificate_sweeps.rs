use petrie_core::algebra::similar;
use petrie_core::certificates::{
    build_thm10, build_thm7, build_two_sided_134_142, certify, detect_thm10, detect_thm7, sigma_nk_chain, ConjugacyWitness,
};
use petrie_core::extensions::{right_extend, right_specs, spec_count, two_sided_specs};
use petrie_core::families::{family_cor11, family_sigma_nk};
use petrie_core::perm::parse_permutation;
use petrie_core::petrie::petrie_matrix;
use petrie_core::sim::{ExtensionBound, Mode};

#[test]
fn shift_family_chains_verify() {
    for k in 5..=8 {
        for to in 4..k {
            let w = sigma_nk_chain(k, 3, to).unwrap();
            assert!(w.check().unwrap(), "k={k} to={to}");
            assert_eq!(w.sigma, family_sigma_nk(3, k).unwrap());
            assert_eq!(w.rho, family_sigma_nk(to, k).unwrap());
        }
    }
}

#[test]
fn interval_shift_witnesses_over_both_seeds() {
    for seed in ["1 -> 3 -> 2 -> 5 -> 4 -> 1", "1 -> 5 -> 2 -> 3 -> 4 -> 1"] {
        let pi = parse_permutation(seed).unwrap();
        let (sigma, _, mu, _) = family_cor11(&pi, 7).unwrap();
        let j = detect_thm10(&sigma, &mu).expect("pair has the interval-shift shape");
        for n in 1..=2 {
            for spec in right_specs(7, n) {
                let w = build_thm10(&sigma, &mu, j, &spec).unwrap();
                assert!(w.check().unwrap());
                assert_eq!(w.sigma, right_extend(&sigma, &spec).unwrap());
            }
        }
    }
}

#[test]
fn two_sided_134_142_within_3x3() {
    for m in 1..=3 {
        for n in 1..=3 {
            for spec in two_sided_specs(4, m, n) {
                let w = build_two_sided_134_142(&spec).unwrap();
                assert!(w.check().unwrap() && w.verified);
                let (a, b) = (petrie_matrix(&w.sigma).unwrap(), petrie_matrix(&w.rho).unwrap());
                assert!(similar(&a, &b).unwrap());
            }
        }
    }
}

#[test]
fn degree_four_right_pair_is_certified_within_bound() {
    let s = parse_permutation("(1342)").unwrap();
    let r = parse_permutation("(1432)").unwrap();
    let cert = certify(&s, &r, Mode::Right, &ExtensionBound::uniform(3)).unwrap().expect("certificate");
    assert_eq!(cert.name, "interval-shift");
    assert_eq!(cert.extensions_verified, (1..=3).map(spec_count).sum::<usize>());
    assert!(detect_thm7(&s, &r).is_none());
    assert!(certify(&s, &r, Mode::Left, &ExtensionBound::uniform(3)).unwrap().is_none());
}

#[test]
fn basic_lift_pairs_are_recognised() {
    let (s, r, _) = build_thm7(2, 1, 1, Some(7), &[2, 1], &[7]).unwrap();
    assert_eq!(detect_thm7(&s, &r).map(|d| (d.m, d.n, d.s, d.t)), Some((2, 1, 1, Some(7))));
    let cert = certify(&s, &r, Mode::Right, &ExtensionBound::uniform(2)).unwrap().expect("certificate");
    assert_eq!(cert.name, "basic-lift");
}

#[test]
fn witnesses_survive_json_and_tampering_is_caught() {
    let w = sigma_nk_chain(6, 3, 5).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert!(value.get("H").is_some());
    let back: ConjugacyWitness = serde_json::from_str(&text).unwrap();
    assert!(back.check().unwrap());

    let mut bad = back.clone();
    let v = bad.h.get(0, 0) + num_rational::BigRational::from_integer(1.into());
    bad.h.set(0, 0, v);
    assert!(!bad.check().unwrap());
}

//! Desk-scale oracle checks for the embedding primitives: CA1 against
//! independent brute-force oracles, CA2 soundness and completeness by
//! factorization probes, and minimal extension.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use eqgb::{
    ca1_extends, ca2_presentation, extend_local, DomainExpr, Element, LocalEmbedding,
};

fn rand_map(rng: &mut impl Rng, d: &DomainExpr, size: usize, bound: u64) -> LocalEmbedding {
    // arbitrary finite maps, valid or not
    let mut pairs = vec![];
    let mut sources = BTreeSet::new();
    for _ in 0..size {
        let k = rand_element(rng, d, bound);
        if sources.insert(k.clone()) {
            pairs.push((k, rand_element(rng, d, bound)));
        }
    }
    LocalEmbedding::from_pairs(pairs).unwrap()
}

#[test]
fn ca1_matches_box_completion_over_omega() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut positives = 0;
    for _ in 0..120 {
        let size = rng.gen_range(0..=3);
        let map = rand_map(&mut rng, &omega(), size, 4);
        let got = ca1_extends(&omega(), &map).unwrap();
        assert_eq!(got, omega_ca1_oracle(&map), "map {map}");
        positives += got as usize;
    }
    assert!(positives > 10, "sampling produced too few positives");
}

#[test]
fn ca1_matches_interval_type_oracle_over_omega_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut positives = 0;
    for _ in 0..80 {
        let size = rng.gen_range(0..=3);
        let map = rand_map(&mut rng, &omega2(), size, 4);
        let got = ca1_extends(&omega2(), &map).unwrap();
        assert_eq!(got, omega2_ca1_oracle(&map), "map {map}");
        positives += got as usize;
    }
    assert!(positives > 5, "sampling produced too few positives");
}

#[test]
fn ca1_adversarial_omega_squared_cases() {
    // Cases where a naive monotone completion in a finite box would exist
    // although no embedding of ω² does: the source interval has a larger
    // order type than its image interval.
    let e = |a: u64, b: u64| Element::ord(&[a, b]);
    let cases: Vec<(Vec<((u64, u64), (u64, u64))>, bool)> = vec![
        (vec![((0, 4), (1, 0)), ((1, 3), (2, 2))], false), // ω+3 into ω+2
        (vec![((0, 4), (1, 0)), ((1, 3), (2, 3))], true),
        (vec![((0, 0), (0, 0)), ((2, 0), (1, 0))], false), // ω·2 into ω
        (vec![((0, 0), (0, 0)), ((2, 0), (2, 0))], true),
        (vec![((1, 0), (0, 5))], false),                   // below a limit
        (vec![((0, 2), (1, 0)), ((1, 1), (1, 2))], false), // infinite into finite
    ];
    for (pairs, want) in cases {
        let map = LocalEmbedding::from_pairs(
            pairs.iter().map(|&((a, b), (c, d))| (e(a, b), e(c, d))),
        )
        .unwrap();
        assert_eq!(ca1_extends(&omega2(), &map).unwrap(), want, "map {map}");
        assert_eq!(omega2_ca1_oracle(&map), want, "oracle on {map}");
    }
}

#[test]
fn ca2_components_are_local_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let domains = [
        omega(),
        omega2(),
        DomainExpr::Fin(3),
        DomainExpr::lex(omega(), DomainExpr::Fin(2)),
        DomainExpr::lex(omega(), omega()),
    ];
    for _ in 0..40 {
        let d = &domains[rng.gen_range(0..domains.len())];
        let ls = rng.gen_range(0..=2);
        let rs = rng.gen_range(0..=2);
        let left = rand_element_set(&mut rng, d, ls, 3);
        let right = rand_element_set(&mut rng, d, rs, 3);
        for (l, r) in ca2_presentation(d, &left, &right).unwrap() {
            assert!(ca1_extends(d, &l).unwrap(), "left {l} over {d}");
            assert!(ca1_extends(d, &r).unwrap(), "right {r} over {d}");
            assert_eq!(l.domain_set(), left);
            assert_eq!(r.domain_set(), right);
        }
    }
}

/// Does `(pi, pi2)` factor through `(base_l, base_r)` via one common
/// embedding applied after both?
fn factors_through(
    d: &DomainExpr,
    base: &(LocalEmbedding, LocalEmbedding),
    pi: &LocalEmbedding,
    pi2: &LocalEmbedding,
) -> bool {
    let mut pairs: Vec<(Element, Element)> = vec![];
    for (k, v) in base.0.iter() {
        pairs.push((v.clone(), pi.get(k).unwrap().clone()));
    }
    for (k, v) in base.1.iter() {
        pairs.push((v.clone(), pi2.get(k).unwrap().clone()));
    }
    pairs.sort();
    pairs.dedup();
    let mut sources = BTreeSet::new();
    for (k, _) in &pairs {
        if !sources.insert(k.clone()) {
            return false; // inconsistent correspondence
        }
    }
    let kappa = LocalEmbedding::from_pairs(pairs).unwrap();
    ca1_extends(d, &kappa).unwrap()
}

#[test]
fn ca2_completeness_probes() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let domains = [omega(), omega2(), DomainExpr::lex(omega(), DomainExpr::Fin(2))];
    for probe in 0..50 {
        let d = &domains[probe % domains.len()];
        let ls = rng.gen_range(0..=3);
        let rs = rng.gen_range(0..=3);
        let left = rand_element_set(&mut rng, d, ls, 3);
        let right = rand_element_set(&mut rng, d, rs, 3);
        let pi = rand_local_embedding(&mut rng, d, &left, 2);
        let pi2 = rand_local_embedding(&mut rng, d, &right, 2);
        assert!(ca1_extends(d, &pi).unwrap());
        assert!(ca1_extends(d, &pi2).unwrap());
        let pres = ca2_presentation(d, &left, &right).unwrap();
        assert!(
            pres.iter().any(|base| factors_through(d, base, &pi, &pi2)),
            "({pi}, {pi2}) over {d} does not factor through any of {} pairs",
            pres.len()
        );
    }
}

#[test]
fn extension_restricts_and_extends() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let domains = [omega(), omega2(), DomainExpr::lex(omega(), DomainExpr::Fin(2))];
    for _ in 0..60 {
        let d = &domains[rng.gen_range(0..domains.len())];
        let ds = rng.gen_range(0..=3);
        let dom = rand_element_set(&mut rng, d, ds, 3);
        let p = rand_local_embedding(&mut rng, d, &dom, 2);
        let mut target = dom.clone();
        let ts = rng.gen_range(0..=3);
        target.extend(rand_element_set(&mut rng, d, ts, 5));
        let ext = extend_local(d, &p, &target).unwrap();
        assert!(ca1_extends(d, &ext).unwrap(), "{p} extended to {ext} over {d}");
        assert_eq!(ext.domain_set(), target);
        for (k, v) in p.iter() {
            assert_eq!(ext.get(k), Some(v));
        }
    }
}

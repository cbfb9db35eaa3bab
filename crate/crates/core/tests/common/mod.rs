//! Shared helpers for the integration tests: seeded random generators for
//! domain values and polynomials, and independent desk-scale oracles for
//! the embedding primitives.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;

use eqgb::ordinal::{ord_add, Ordinal};
use eqgb::{DomainExpr, Element, Field, FieldElem, LocalEmbedding, Monomial, Polynomial};

pub fn q(n: i64) -> FieldElem {
    Field::Q.from_int(n)
}

pub fn nat(n: u64) -> Element {
    Element::ord(&[n])
}

pub fn omega() -> DomainExpr {
    DomainExpr::Ord(1)
}

pub fn omega2() -> DomainExpr {
    DomainExpr::Ord(2)
}

/// A random element with all numeric parts bounded by `bound`.
pub fn rand_element(rng: &mut impl Rng, d: &DomainExpr, bound: u64) -> Element {
    match d {
        DomainExpr::Ord(k) => Element::Ord(Ordinal::new(
            (0..*k).map(|_| rng.gen_range(0..=bound)).collect(),
        )),
        DomainExpr::Fin(n) => Element::Fin(rng.gen_range(0..*n)),
        DomainExpr::Lex(l, r) => Element::pair(
            rand_element(rng, l, bound),
            rand_element(rng, r, bound),
        ),
        DomainExpr::Rat | DomainExpr::Eq => Element::rat_int(rng.gen_range(0..=bound as i64)),
    }
}

pub fn rand_element_set(
    rng: &mut impl Rng,
    d: &DomainExpr,
    size: usize,
    bound: u64,
) -> BTreeSet<Element> {
    let mut out = BTreeSet::new();
    for _ in 0..size {
        out.insert(rand_element(rng, d, bound));
    }
    out
}

pub fn rand_monomial(rng: &mut impl Rng, d: &DomainExpr, max_vars: usize, bound: u64) -> Monomial {
    let nvars = rng.gen_range(0..=max_vars);
    Monomial::from_degrees(
        (0..nvars).map(|_| (rand_element(rng, d, bound), rng.gen_range(1..=3u64))),
    )
}

pub fn rand_poly(rng: &mut impl Rng, d: &DomainExpr, max_terms: usize, bound: u64) -> Polynomial {
    let nterms = rng.gen_range(0..=max_terms);
    Polynomial::from_terms((0..nterms).map(|_| {
        (
            rand_monomial(rng, d, 3, bound),
            q(rng.gen_range(-5..=5)),
        )
    }))
}

pub fn rand_nonzero_poly(
    rng: &mut impl Rng,
    d: &DomainExpr,
    max_terms: usize,
    bound: u64,
) -> Polynomial {
    loop {
        let f = rand_poly(rng, d, max_terms, bound);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random local embedding over `dom`: the minimal extension plus random
/// slack at each point, which keeps every gap condition satisfied.
pub fn rand_local_embedding(
    rng: &mut impl Rng,
    d: &DomainExpr,
    dom: &BTreeSet<Element>,
    slack: u64,
) -> LocalEmbedding {
    match d {
        DomainExpr::Ord(k) => {
            let mut prev: Option<(Ordinal, Ordinal)> = None;
            let mut pairs = vec![];
            for e in dom {
                let Element::Ord(pt) = e else { unreachable!() };
                let lb = match &prev {
                    Some((p, img)) => {
                        let gap = eqgb::ordinal::ord_sub(pt, p).unwrap();
                        ord_add(img, &gap).unwrap()
                    }
                    None => pt.clone(),
                };
                let extra = Ordinal::new(
                    (0..*k).map(|_| rng.gen_range(0..=slack)).collect(),
                );
                let img = ord_add(&lb, &extra).unwrap();
                pairs.push((e.clone(), Element::Ord(img.clone())));
                prev = Some((pt.clone(), img));
            }
            LocalEmbedding::from_pairs(pairs).unwrap()
        }
        DomainExpr::Fin(_) => LocalEmbedding::identity(dom.iter()),
        DomainExpr::Lex(l, r) => {
            let firsts: BTreeSet<Element> = dom
                .iter()
                .map(|e| match e {
                    Element::Pair(a, _) => a.as_ref().clone(),
                    _ => unreachable!(),
                })
                .collect();
            let fmap = rand_local_embedding(rng, l, &firsts, slack);
            let mut pairs = vec![];
            for a in &firsts {
                let fiber: BTreeSet<Element> = dom
                    .iter()
                    .filter_map(|e| match e {
                        Element::Pair(x, b) if x.as_ref() == a => Some(b.as_ref().clone()),
                        _ => None,
                    })
                    .collect();
                let fmap_b = rand_local_embedding(rng, r, &fiber, slack);
                for b in &fiber {
                    pairs.push((
                        Element::pair(a.clone(), b.clone()),
                        Element::pair(
                            fmap.get(a).unwrap().clone(),
                            fmap_b.get(b).unwrap().clone(),
                        ),
                    ));
                }
            }
            LocalEmbedding::from_pairs(pairs).unwrap()
        }
        DomainExpr::Rat | DomainExpr::Eq => unimplemented!("not needed"),
    }
}

/// Formula-free CA1 oracle for ω: does a strictly monotone total map on
/// the initial segment `{0..max dom}` extend the given finite map? Any
/// such map is the restriction of an embedding and vice versa.
pub fn omega_ca1_oracle(map: &LocalEmbedding) -> bool {
    let pairs: Vec<(u64, u64)> = map
        .iter()
        .map(|(k, v)| match (k, v) {
            (Element::Ord(a), Element::Ord(b)) => (a.coeffs()[0], b.coeffs()[0]),
            _ => unreachable!(),
        })
        .collect();
    if pairs.is_empty() {
        return true;
    }
    let max_dom = pairs.iter().map(|p| p.0).max().unwrap();
    let max_val = pairs.iter().map(|p| p.1).max().unwrap();
    let cap = max_dom + max_val + 1;
    fn search(pos: u64, min_val: u64, cap: u64, max_dom: u64, pairs: &[(u64, u64)]) -> bool {
        if pos > max_dom {
            return true;
        }
        if let Some(&(_, v)) = pairs.iter().find(|(p, _)| *p == pos) {
            return v >= min_val && search(pos + 1, v + 1, cap, max_dom, pairs);
        }
        (min_val..=cap).any(|v| search(pos + 1, v + 1, cap, max_dom, pairs))
    }
    search(0, 0, cap, max_dom, &pairs)
}

/// Order type of the ordinal interval `[beta, gamma)` inside ω², computed
/// by counting rather than CNF arithmetic: the number of limit points in
/// the interval gives the ω-coefficient, the points above the last limit
/// give the constant.
fn interval_type_omega2(beta: (u64, u64), gamma: (u64, u64)) -> (u64, u64) {
    assert!(beta <= gamma);
    // block boundaries crossed: each contributes a full copy of ω
    let crossings = (beta.0 + 1..=gamma.0).count() as u64;
    if crossings == 0 {
        // same block: a finite interval, counted directly
        (0, (beta.1..gamma.1).count() as u64)
    } else {
        // ω·crossings followed by the points below gamma in its block
        (crossings, (0..gamma.1).count() as u64)
    }
}

/// CA1 oracle for ω²: strictly monotone, the least point does not
/// decrease, and every consecutive interval embeds into its image
/// interval; interval types are compared as ordinals. Independent of the
/// CNF add/sub implementation.
pub fn omega2_ca1_oracle(map: &LocalEmbedding) -> bool {
    let pairs: Vec<((u64, u64), (u64, u64))> = map
        .iter()
        .map(|(k, v)| match (k, v) {
            (Element::Ord(a), Element::Ord(b)) => {
                ((a.coeffs()[0], a.coeffs()[1]), (b.coeffs()[0], b.coeffs()[1]))
            }
            _ => unreachable!(),
        })
        .collect();
    if pairs.is_empty() {
        return true;
    }
    // strictly monotone (sorted by source already)
    for w in pairs.windows(2) {
        if w[1].1 <= w[0].1 {
            return false;
        }
    }
    // min condition: [0, b) embeds into [0, p(b))
    let (b0, v0) = pairs[0];
    if interval_type_omega2((0, 0), b0) > interval_type_omega2((0, 0), v0) {
        return false;
    }
    // gap conditions
    for w in pairs.windows(2) {
        let ((b1, v1), (b2, v2)) = (w[0], w[1]);
        if interval_type_omega2(b1, b2) > interval_type_omega2(v1, v2) {
            return false;
        }
    }
    true
}

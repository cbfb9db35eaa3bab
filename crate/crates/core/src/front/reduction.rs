//! Translation of membership instances over rational-order and equality
//! variables into instances over ordinals.
//!
//! The translation implements a two-round profile-matching strategy: per
//! rational coordinate, basis-variable values map monotonically onto an
//! initial fragment `<0,0>, ..., <0,s-1>` of `ω²` and query-variable
//! values onto positive multiples `<1,0>, <2,0>, ...` of `ω`. Multiples of
//! `ω` are arbitrarily separated, which is what makes the profiles agree;
//! variables shared between basis and query are deliberately renamed
//! differently. Equality atoms are first reduced to the rational order by
//! symmetrizing each generator over the permutations of its variables.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::rational::BigRational;

use crate::domain::{DomainExpr, Element};
use crate::error::{Error, Result};
use crate::gb::Basis;
use crate::ordinal::Ordinal;
use crate::poly::Polynomial;

/// A membership instance over a `q`/`eq` shape.
#[derive(Debug, Clone)]
pub struct QInstance {
    pub domain: DomainExpr,
    pub basis: Basis,
    pub poly: Polynomial,
}

/// The accepted rational/equality shapes: `q^⊗l` or `q^⊗l ⊗ fin[d]` with
/// `l >= 1`, or `eq` or `eq ⊗ fin[d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub rational_coords: usize,
    pub equality: bool,
    pub fin: Option<u64>,
}

/// Flattens the associative lexicographic product into its spine.
fn flatten_domain(d: &DomainExpr) -> Vec<DomainExpr> {
    match d {
        DomainExpr::Lex(l, r) => {
            let mut out = flatten_domain(l);
            out.extend(flatten_domain(r));
            out
        }
        other => vec![other.clone()],
    }
}

fn flatten_element(d: &DomainExpr, e: &Element) -> Vec<Element> {
    match (d, e) {
        (DomainExpr::Lex(l, r), Element::Pair(a, b)) => {
            let mut out = flatten_element(l, a);
            out.extend(flatten_element(r, b));
            out
        }
        _ => vec![e.clone()],
    }
}

fn build_domain(atoms: &[DomainExpr]) -> DomainExpr {
    match atoms {
        [one] => one.clone(),
        [head, rest @ ..] => DomainExpr::lex(head.clone(), build_domain(rest)),
        [] => unreachable!("domains have at least one atom"),
    }
}

fn build_element(vals: &[Element]) -> Element {
    match vals {
        [one] => one.clone(),
        [head, rest @ ..] => Element::pair(head.clone(), build_element(rest)),
        [] => unreachable!(),
    }
}

/// Checks the domain against the accepted shapes.
pub fn accepted_shape(d: &DomainExpr) -> Result<Shape> {
    let atoms = flatten_domain(d);
    let (prefix, fin) = match atoms.split_last() {
        Some((DomainExpr::Fin(n), prefix)) if !prefix.is_empty() => (prefix, Some(*n)),
        _ => (&atoms[..], None),
    };
    if prefix.iter().all(|a| matches!(a, DomainExpr::Rat)) && !prefix.is_empty() {
        return Ok(Shape { rational_coords: prefix.len(), equality: false, fin });
    }
    if prefix.len() == 1 && matches!(prefix[0], DomainExpr::Eq) {
        return Ok(Shape { rational_coords: 1, equality: true, fin });
    }
    Err(Error::Shape(format!(
        "domain {d} is not one of the accepted shapes q^l, q^l⊗fin[d], eq, eq⊗fin[d]"
    )))
}

fn as_rat(e: &Element) -> &BigRational {
    match e {
        Element::Rat(r) => r,
        _ => unreachable!("shape checked"),
    }
}

/// Replaces each generator by its renamings under all permutations of its
/// own first-coordinate values. Over equality atoms every injection
/// factors as a permutation of a finite set followed by a monotone map,
/// so the equivariant ideal over equality atoms equals the one generated
/// over the rational order by the symmetrized set.
pub fn symmetrize_equality(basis: &Basis) -> Result<Basis> {
    symmetrize_equality_bounded(basis, 7)
}

pub fn symmetrize_equality_bounded(basis: &Basis, max_vars: usize) -> Result<Basis> {
    let shape = accepted_shape(basis.domain())?;
    if !shape.equality {
        return Err(Error::Shape(format!(
            "symmetrization applies to eq shapes, domain is {}",
            basis.domain()
        )));
    }
    let atoms = flatten_domain(basis.domain());
    let new_atoms: Vec<DomainExpr> = atoms
        .iter()
        .map(|a| match a {
            DomainExpr::Eq => DomainExpr::Rat,
            other => other.clone(),
        })
        .collect();
    let new_domain = build_domain(&new_atoms);

    let mut out: Vec<Polynomial> = vec![];
    for g in basis.gens() {
        let values: BTreeSet<BigRational> = g
            .vars()
            .iter()
            .map(|v| as_rat(&flatten_element(basis.domain(), v)[0]).clone())
            .collect();
        if values.len() > max_vars {
            return Err(Error::Resource(format!(
                "generator uses {} distinct data values; symmetrization bound is {max_vars}",
                values.len()
            )));
        }
        let values: Vec<BigRational> = values.into_iter().collect();
        for perm in values.iter().permutations(values.len()) {
            let table: BTreeMap<&BigRational, &BigRational> =
                values.iter().zip(perm).collect();
            let renamed = Polynomial::from_terms(g.terms().iter().map(|(m, c)| {
                let m = crate::monomial::Monomial::from_degrees(m.iter().map(|(v, d)| {
                    let mut flat = flatten_element(basis.domain(), v);
                    flat[0] = Element::Rat((*table[as_rat(&flat[0])]).clone());
                    (build_element(&flat), *d)
                }));
                (m, c.clone())
            }));
            if !out.contains(&renamed) {
                out.push(renamed);
            }
        }
    }
    Basis::new(new_domain, basis.field(), out)
}

/// Translates a `q`/`eq` instance into an equivalent one over ordinals:
/// membership is preserved and reflected.
pub fn reduce_instance(inst: &QInstance) -> Result<(Basis, Polynomial)> {
    let shape = accepted_shape(&inst.domain)?;
    let (basis, domain) = if shape.equality {
        let b = symmetrize_equality(&inst.basis)?;
        let d = b.domain().clone();
        (b, d)
    } else {
        (inst.basis.clone(), inst.domain.clone())
    };
    inst.poly.vars().iter().try_for_each(|v| domain.check_element(v))?;

    let coords = shape.rational_coords;
    let atoms = flatten_domain(&domain);

    // per-coordinate value pools
    let mut basis_vals: Vec<BTreeSet<BigRational>> = vec![BTreeSet::new(); coords];
    let mut query_vals: Vec<BTreeSet<BigRational>> = vec![BTreeSet::new(); coords];
    for g in basis.gens() {
        for v in g.vars() {
            let flat = flatten_element(&domain, &v);
            for i in 0..coords {
                basis_vals[i].insert(as_rat(&flat[i]).clone());
            }
        }
    }
    for v in inst.poly.vars() {
        let flat = flatten_element(&domain, &v);
        for i in 0..coords {
            query_vals[i].insert(as_rat(&flat[i]).clone());
        }
    }

    // basis values onto the initial fragment, query values onto multiples of ω
    let sigma: Vec<BTreeMap<BigRational, Element>> = basis_vals
        .iter()
        .map(|pool| {
            pool.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), Element::Ord(Ordinal::new(vec![0, i as u64]))))
                .collect()
        })
        .collect();
    let tau: Vec<BTreeMap<BigRational, Element>> = query_vals
        .iter()
        .map(|pool| {
            pool.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), Element::Ord(Ordinal::new(vec![i as u64 + 1, 0]))))
                .collect()
        })
        .collect();

    let new_atoms: Vec<DomainExpr> = atoms
        .iter()
        .map(|a| match a {
            DomainExpr::Rat => DomainExpr::Ord(2),
            other => other.clone(),
        })
        .collect();
    let new_domain = build_domain(&new_atoms);

    let map_var = |v: &Element, table: &[BTreeMap<BigRational, Element>]| -> Element {
        let mut flat = flatten_element(&domain, v);
        for (i, slot) in flat.iter_mut().enumerate().take(coords) {
            *slot = table[i][as_rat(slot)].clone();
        }
        build_element(&flat)
    };
    let map_poly = |f: &Polynomial, table: &[BTreeMap<BigRational, Element>]| -> Polynomial {
        Polynomial::from_terms(f.terms().iter().map(|(m, c)| {
            (
                crate::monomial::Monomial::from_degrees(
                    m.iter().map(|(v, d)| (map_var(v, table), *d)),
                ),
                c.clone(),
            )
        }))
    };

    let new_gens: Vec<Polynomial> = basis.gens().iter().map(|g| map_poly(g, &sigma)).collect();
    let new_poly = map_poly(&inst.poly, &tau);
    Ok((Basis::new(new_domain, basis.field(), new_gens)?, new_poly))
}

//! Canonical tuple forms and orbit representatives.
//!
//! Over a well-ordered domain, every length-`n` tuple is the image of its
//! rank collapse under some embedding (collapsed gaps are 1, so the gap
//! conditions hold), and two distinct collapses have different order
//! patterns, so they lie in different orbits. For products the first
//! coordinates collapse first and then every fiber collapses
//! independently; ties in first coordinates keep their fiber grouping.

use std::collections::BTreeMap;

use crate::domain::{DomainExpr, Element};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// The unique representative whose orbit contains `t`. Idempotent.
pub fn canonical_tuple(d: &DomainExpr, t: &[Element]) -> Result<Vec<Element>> {
    for e in t {
        d.check_element(e)?;
    }
    canonical_unchecked(d, t)
}

fn canonical_unchecked(d: &DomainExpr, t: &[Element]) -> Result<Vec<Element>> {
    match d {
        DomainExpr::Ord(k) => {
            let mut distinct: Vec<&Element> = t.iter().collect();
            distinct.sort();
            distinct.dedup();
            let rank: BTreeMap<&Element, u64> = distinct
                .iter()
                .enumerate()
                .map(|(i, e)| (*e, i as u64))
                .collect();
            Ok(t.iter()
                .map(|e| Element::Ord(Ordinal::finite(*k, rank[e])))
                .collect())
        }
        DomainExpr::Fin(_) => Ok(t.to_vec()),
        DomainExpr::Lex(dl, dr) => {
            let firsts: Vec<Element> = t
                .iter()
                .map(|e| match e {
                    Element::Pair(a, _) => a.as_ref().clone(),
                    _ => unreachable!(),
                })
                .collect();
            let cfirsts = canonical_unchecked(dl, &firsts)?;
            // positions grouped by (original) first coordinate
            let mut groups: BTreeMap<&Element, Vec<usize>> = BTreeMap::new();
            for (i, a) in firsts.iter().enumerate() {
                groups.entry(a).or_default().push(i);
            }
            let mut out: Vec<Option<Element>> = vec![None; t.len()];
            for (_, positions) in groups {
                let seconds: Vec<Element> = positions
                    .iter()
                    .map(|&i| match &t[i] {
                        Element::Pair(_, b) => b.as_ref().clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                let cseconds = canonical_unchecked(dr, &seconds)?;
                for (&i, b) in positions.iter().zip(cseconds) {
                    out[i] = Some(Element::pair(cfirsts[i].clone(), b));
                }
            }
            Ok(out.into_iter().map(Option::unwrap).collect())
        }
        DomainExpr::Rat | DomainExpr::Eq => Err(Error::Domain(
            "canonical tuples are only defined over well-ordered domains".into(),
        )),
    }
}

/// A finite set of pairwise non-equivalent canonical `n`-tuples whose
/// orbits cover all of `D^n`.
pub fn tuple_orbit_reps(d: &DomainExpr, n: usize) -> Result<Vec<Vec<Element>>> {
    match d {
        DomainExpr::Ord(k) => {
            // tuples over {0..n-1} whose value set is an initial segment
            let mut out = vec![];
            let mut cur = vec![0u64; n];
            loop {
                let mut seen: Vec<u64> = cur.clone();
                seen.sort();
                seen.dedup();
                if seen.iter().enumerate().all(|(i, &v)| v == i as u64) {
                    out.push(
                        cur.iter()
                            .map(|&v| Element::Ord(Ordinal::finite(*k, v)))
                            .collect(),
                    );
                }
                if !bump(&mut cur, n as u64) {
                    break;
                }
            }
            Ok(out)
        }
        DomainExpr::Fin(dd) => {
            let mut out = vec![];
            let mut cur = vec![0u64; n];
            loop {
                out.push(cur.iter().map(|&v| Element::Fin(v)).collect());
                if !bump(&mut cur, *dd) {
                    break;
                }
            }
            Ok(out)
        }
        DomainExpr::Lex(dl, dr) => {
            let mut out = vec![];
            for firsts in tuple_orbit_reps(dl, n)? {
                let mut groups: BTreeMap<&Element, Vec<usize>> = BTreeMap::new();
                for (i, a) in firsts.iter().enumerate() {
                    groups.entry(a).or_default().push(i);
                }
                let groups: Vec<&Vec<usize>> = groups.values().collect();
                let mut partials: Vec<Vec<Option<Element>>> = vec![vec![None; n]];
                for positions in groups {
                    let fibers = tuple_orbit_reps(dr, positions.len())?;
                    let mut next = vec![];
                    for partial in &partials {
                        for fiber in &fibers {
                            let mut p = partial.clone();
                            for (&i, b) in positions.iter().zip(fiber) {
                                p[i] = Some(Element::pair(firsts[i].clone(), b.clone()));
                            }
                            next.push(p);
                        }
                    }
                    partials = next;
                }
                for p in partials {
                    out.push(p.into_iter().map(Option::unwrap).collect());
                }
            }
            Ok(out)
        }
        DomainExpr::Rat | DomainExpr::Eq => Err(Error::Domain(
            "orbit representatives are only defined over well-ordered domains".into(),
        )),
    }
}

/// Odometer over `{0..base-1}^n`; returns false after the last tuple.
fn bump(cur: &mut [u64], base: u64) -> bool {
    for digit in cur.iter_mut().rev() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emb::{ca1_extends, LocalEmbedding};

    fn omega() -> DomainExpr {
        DomainExpr::Ord(1)
    }

    fn nat(n: u64) -> Element {
        Element::ord(&[n])
    }

    #[test]
    fn omega_reps_small() {
        assert_eq!(tuple_orbit_reps(&omega(), 1).unwrap(), vec![vec![nat(0)]]);
        let reps = tuple_orbit_reps(&omega(), 2).unwrap();
        let want = vec![
            vec![nat(0), nat(0)],
            vec![nat(0), nat(1)],
            vec![nat(1), nat(0)],
        ];
        assert_eq!(reps, want);
    }

    #[test]
    fn fin_reps_are_all_tuples() {
        let reps = tuple_orbit_reps(&DomainExpr::Fin(2), 1).unwrap();
        assert_eq!(reps, vec![vec![Element::Fin(0)], vec![Element::Fin(1)]]);
        assert_eq!(tuple_orbit_reps(&DomainExpr::Fin(3), 2).unwrap().len(), 9);
    }

    #[test]
    fn canonical_examples() {
        let t = [nat(5), nat(9), nat(5)];
        assert_eq!(
            canonical_tuple(&omega(), &t).unwrap(),
            vec![nat(0), nat(1), nat(0)]
        );
        let u = [nat(0), nat(1)];
        assert_eq!(canonical_tuple(&omega(), &u).unwrap(), u.to_vec());
        let d = DomainExpr::Fin(3);
        let v = [Element::Fin(2), Element::Fin(0)];
        assert_eq!(canonical_tuple(&d, &v).unwrap(), v.to_vec());
    }

    #[test]
    fn collapse_map_is_local_embedding() {
        let t = [nat(5), nat(9), nat(5), nat(11)];
        let c = canonical_tuple(&omega(), &t).unwrap();
        let map =
            LocalEmbedding::from_pairs(c.iter().cloned().zip(t.iter().cloned()).collect::<std::collections::BTreeMap<_,_>>())
                .unwrap();
        assert!(ca1_extends(&omega(), &map).unwrap());
    }

    #[test]
    fn canonical_idempotent_lex() {
        let d = DomainExpr::lex(DomainExpr::Ord(1), DomainExpr::Ord(1));
        let t = [
            Element::pair(nat(3), nat(7)),
            Element::pair(nat(3), nat(2)),
            Element::pair(nat(8), nat(7)),
        ];
        let c = canonical_tuple(&d, &t).unwrap();
        assert_eq!(
            c,
            vec![
                Element::pair(nat(0), nat(1)),
                Element::pair(nat(0), nat(0)),
                Element::pair(nat(1), nat(0)),
            ]
        );
        assert_eq!(canonical_tuple(&d, &c).unwrap(), c);
    }

    #[test]
    fn reps_contain_canonical_forms() {
        let d = DomainExpr::lex(DomainExpr::Ord(1), DomainExpr::Fin(2));
        let reps = tuple_orbit_reps(&d, 2).unwrap();
        for rep in &reps {
            assert_eq!(&canonical_tuple(&d, rep).unwrap(), rep);
        }
        // all distinct
        let set: std::collections::BTreeSet<_> = reps.iter().collect();
        assert_eq!(set.len(), reps.len());
    }
}

//! Monomials over domain elements and the lexicographic term order.
//!
//! A monomial is a finite map from variables (domain elements) to positive
//! degrees; the unit monomial is the empty map. Comparison looks at the
//! largest variable whose degrees differ, which is a term order and is
//! well founded whenever the domain is well ordered.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::domain::{DomainExpr, Element};
use crate::emb::{ca1_extends, LocalEmbedding};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degrees: BTreeMap<Element, u64>,
}

impl Monomial {
    /// The unit monomial.
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn var(e: Element) -> Self {
        Monomial::var_pow(e, 1)
    }

    pub fn var_pow(e: Element, deg: u64) -> Self {
        let mut degrees = BTreeMap::new();
        if deg > 0 {
            degrees.insert(e, deg);
        }
        Monomial { degrees }
    }

    pub fn from_degrees(pairs: impl IntoIterator<Item = (Element, u64)>) -> Self {
        let mut degrees: BTreeMap<Element, u64> = BTreeMap::new();
        for (e, d) in pairs {
            if d > 0 {
                *degrees.entry(e).or_insert(0) += d;
            }
        }
        Monomial { degrees }
    }

    pub fn is_unit(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn deg(&self, e: &Element) -> u64 {
        self.degrees.get(e).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.degrees.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Element> {
        self.degrees.keys()
    }

    pub fn var_set(&self) -> BTreeSet<Element> {
        self.degrees.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &u64)> {
        self.degrees.iter()
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut degrees = self.degrees.clone();
        for (e, d) in &other.degrees {
            *degrees.entry(e.clone()).or_insert(0) += d;
        }
        Monomial { degrees }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degrees.iter().all(|(e, d)| other.deg(e) >= *d)
    }

    /// The quotient `self / other`; errors when `other` does not divide.
    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        if !other.divides(self) {
            return Err(Error::Domain(format!("{other} does not divide {self}")));
        }
        let mut degrees = self.degrees.clone();
        for (e, d) in &other.degrees {
            let nd = degrees[e] - d;
            if nd == 0 {
                degrees.remove(e);
            } else {
                degrees.insert(e.clone(), nd);
            }
        }
        Ok(Monomial { degrees })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut degrees = self.degrees.clone();
        for (e, d) in &other.degrees {
            let cur = degrees.entry(e.clone()).or_insert(0);
            *cur = (*cur).max(*d);
        }
        Monomial { degrees }
    }

    /// Renames variables; the map must cover every variable.
    pub(crate) fn rename_unchecked(&self, p: &LocalEmbedding) -> Monomial {
        Monomial {
            degrees: self
                .degrees
                .iter()
                .map(|(e, d)| (p.get(e).expect("variable covered").clone(), *d))
                .collect(),
        }
    }
}

impl Ord for Monomial {
    /// Decided by the largest variable at which the degrees differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.degrees.iter().rev().peekable();
        let mut b = other.degrees.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ka, da)), Some((kb, db))) => match ka.cmp(kb) {
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => {
                        if da != db {
                            return da.cmp(db);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (i, (e, d)) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{{{e}}}")?;
            if *d > 1 {
                write!(f, "^{d}")?;
            }
        }
        Ok(())
    }
}

/// Lexicographic comparison as a checked public operation: validates both
/// monomials against the domain first.
pub fn mono_cmp_lex(d: &DomainExpr, m: &Monomial, m2: &Monomial) -> Result<Ordering> {
    for e in m.vars().chain(m2.vars()) {
        d.check_element(e)?;
    }
    Ok(m.cmp(m2))
}

/// The relaxed divisibility order: does some renamed copy of `m` divide
/// `m2`? Returns a witness restricted to `vars(m)`, chosen pointwise
/// smallest. Only order-preserving injections can extend to embeddings of
/// a totally ordered domain, so the search ranges over those.
pub fn mono_wqo_leq(
    d: &DomainExpr,
    m: &Monomial,
    m2: &Monomial,
) -> Result<Option<LocalEmbedding>> {
    for e in m.vars().chain(m2.vars()) {
        d.check_element(e)?;
    }
    let sources: Vec<&Element> = m.vars().collect();
    let targets: Vec<&Element> = m2.vars().collect();
    if sources.len() > targets.len() {
        return Ok(None);
    }
    for combo in targets.iter().combinations(sources.len()) {
        if sources
            .iter()
            .zip(&combo)
            .any(|(s, t)| m.deg(s) > m2.deg(t))
        {
            continue;
        }
        let map = LocalEmbedding::from_pairs(
            sources
                .iter()
                .zip(&combo)
                .map(|(s, t)| ((*s).clone(), (**t).clone())),
        )?;
        if ca1_extends(d, &map)? {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Element {
        Element::ord(&[n])
    }

    fn m(pairs: &[(u64, u64)]) -> Monomial {
        Monomial::from_degrees(pairs.iter().map(|&(v, d)| (nat(v), d)))
    }

    fn omega() -> DomainExpr {
        DomainExpr::Ord(1)
    }

    #[test]
    fn lex_order_examples() {
        // x0*x1^2 < x1*x2: largest differing variable is 2
        assert_eq!(
            mono_cmp_lex(&omega(), &m(&[(0, 1), (1, 2)]), &m(&[(1, 1), (2, 1)])).unwrap(),
            Ordering::Less
        );
        let a = m(&[(0, 1), (3, 2)]);
        assert_eq!(mono_cmp_lex(&omega(), &a, &a).unwrap(), Ordering::Equal);
        assert_eq!(
            mono_cmp_lex(&omega(), &m(&[(0, 2)]), &m(&[(0, 1)])).unwrap(),
            Ordering::Greater
        );
        // any variable beats the unit monomial
        assert!(m(&[(0, 1)]) > Monomial::unit());
    }

    #[test]
    fn divisibility_and_lcm() {
        assert_eq!(m(&[(0, 1)]).lcm(&m(&[(1, 1)])), m(&[(0, 1), (1, 1)]));
        let x = m(&[(1, 1), (2, 2)]);
        assert!(m(&[(1, 1)]).divides(&x));
        assert_eq!(x.div(&m(&[(1, 1)])).unwrap(), m(&[(2, 2)]));
        assert_eq!(x.div(&x).unwrap(), Monomial::unit());
        assert!(x.div(&m(&[(5, 1)])).is_err());
    }

    #[test]
    fn wqo_witnesses() {
        // x0 fits into x0*x1 via the identity on {0}
        let w = mono_wqo_leq(&omega(), &m(&[(0, 1)]), &m(&[(0, 1), (1, 1)]))
            .unwrap()
            .unwrap();
        assert!(w.is_identity());
        // x0*x2^2 fits into x1*x3^2*x5 via 0->1, 2->3
        let w = mono_wqo_leq(&omega(), &m(&[(0, 1), (2, 2)]), &m(&[(1, 1), (3, 2), (5, 1)]))
            .unwrap()
            .unwrap();
        assert_eq!(w.get(&nat(0)), Some(&nat(1)));
        assert_eq!(w.get(&nat(2)), Some(&nat(3)));
        // degree shortfall
        assert!(mono_wqo_leq(&omega(), &m(&[(0, 2)]), &m(&[(1, 1)]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn wqo_respects_gap_conditions() {
        // x1*x2 cannot renaming-divide x1*x2 shifted into a gap of 0:
        // over fin only the identity, over omega {1->2,2->3} works
        let d = DomainExpr::Fin(3);
        let src = Monomial::from_degrees([(Element::Fin(1), 1)]);
        let tgt = Monomial::from_degrees([(Element::Fin(2), 1)]);
        assert!(mono_wqo_leq(&d, &src, &tgt).unwrap().is_none());
        assert!(mono_wqo_leq(&d, &src, &src).unwrap().is_some());
    }
}

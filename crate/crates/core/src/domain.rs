//! Variable domains and their elements.
//!
//! A domain expression denotes a totally ordered countable structure whose
//! elements serve as polynomial variables:
//!
//! - `ord[k]`: the ordinal `ω^k` in Cantor normal form,
//! - `fin[d]`: the finite chain `0 < ... < d-1` (only the identity embeds),
//! - `lex(D1,D2)`: lexicographic product,
//! - `q`: the rational order,
//! - `eq`: the equality structure on rationals (a reduct of `q`).
//!
//! The Groebner engine accepts only `q`/`eq`-free expressions (those are
//! well ordered); the rational and equality cases exist for the front-end
//! translations.

use std::cmp::Ordering;
use std::fmt;

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DomainExpr {
    /// `ω^k`, k >= 1.
    Ord(usize),
    /// Finite chain with d >= 1 points.
    Fin(u64),
    /// Lexicographic product.
    Lex(Box<DomainExpr>, Box<DomainExpr>),
    /// The rational order.
    Rat,
    /// Equality structure (rational carrier, order forgotten).
    Eq,
}

impl DomainExpr {
    pub fn lex(left: DomainExpr, right: DomainExpr) -> DomainExpr {
        DomainExpr::Lex(Box::new(left), Box::new(right))
    }

    /// True when the expression contains no `q`/`eq` atom, i.e. denotes a
    /// well-ordered structure the engine can complete bases over.
    pub fn is_well_ordered(&self) -> bool {
        match self {
            DomainExpr::Ord(_) | DomainExpr::Fin(_) => true,
            DomainExpr::Lex(l, r) => l.is_well_ordered() && r.is_well_ordered(),
            DomainExpr::Rat | DomainExpr::Eq => false,
        }
    }

    /// Checks that `e` is a well-formed element of this domain.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        if self.fits(e) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "element {e} is not well-formed in domain {self}"
            )))
        }
    }

    pub fn fits(&self, e: &Element) -> bool {
        match (self, e) {
            (DomainExpr::Ord(k), Element::Ord(o)) => o.len() == *k,
            (DomainExpr::Fin(d), Element::Fin(n)) => n < d,
            (DomainExpr::Lex(l, r), Element::Pair(a, b)) => l.fits(a) && r.fits(b),
            (DomainExpr::Rat, Element::Rat(_)) => true,
            (DomainExpr::Eq, Element::Rat(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for DomainExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainExpr::Ord(k) => write!(f, "ord[{k}]"),
            DomainExpr::Fin(d) => write!(f, "fin[{d}]"),
            DomainExpr::Lex(l, r) => write!(f, "lex({l},{r})"),
            DomainExpr::Rat => write!(f, "q"),
            DomainExpr::Eq => write!(f, "eq"),
        }
    }
}

/// A value of some domain. The intrinsic `Ord` implements the domain's
/// definable total order (for `eq` this is the order of the underlying
/// rational carrier, which is fine: it is only used for canonical sorting,
/// never as an embedding-invariant there).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Ord(Ordinal),
    Fin(u64),
    Pair(Box<Element>, Box<Element>),
    Rat(BigRational),
}

impl Element {
    pub fn ord(coeffs: &[u64]) -> Element {
        Element::Ord(Ordinal::new(coeffs.to_vec()))
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn rat_int(n: i64) -> Element {
        Element::Rat(BigRational::from_integer(n.into()))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        fn tag(e: &Element) -> u8 {
            match e {
                Element::Ord(_) => 0,
                Element::Fin(_) => 1,
                Element::Pair(_, _) => 2,
                Element::Rat(_) => 3,
            }
        }
        match (self, other) {
            (Element::Ord(a), Element::Ord(b)) => a.cmp(b),
            (Element::Fin(a), Element::Fin(b)) => a.cmp(b),
            (Element::Pair(a, b), Element::Pair(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            (Element::Rat(a), Element::Rat(b)) => a.cmp(b),
            (a, b) => tag(a).cmp(&tag(b)),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Ord(o) => write!(f, "{o}"),
            Element::Fin(n) => write!(f, "{n}"),
            Element::Pair(a, b) => write!(f, "({a}|{b})"),
            Element::Rat(r) => {
                if r.denom() == &num::BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_well_formedness() {
        let d = DomainExpr::lex(DomainExpr::Ord(2), DomainExpr::Fin(3));
        let good = Element::pair(Element::ord(&[1, 0]), Element::Fin(2));
        let bad_fin = Element::pair(Element::ord(&[1, 0]), Element::Fin(3));
        let bad_len = Element::pair(Element::ord(&[1]), Element::Fin(0));
        assert!(d.fits(&good));
        assert!(!d.fits(&bad_fin));
        assert!(!d.fits(&bad_len));
        assert!(d.check_element(&bad_fin).is_err());
    }

    #[test]
    fn lex_order_on_pairs() {
        let a = Element::pair(Element::Fin(0), Element::Fin(5));
        let b = Element::pair(Element::Fin(1), Element::Fin(0));
        assert!(a < b);
    }

    #[test]
    fn well_ordered_flags() {
        assert!(DomainExpr::lex(DomainExpr::Ord(2), DomainExpr::Fin(4)).is_well_ordered());
        assert!(!DomainExpr::lex(DomainExpr::Rat, DomainExpr::Fin(4)).is_well_ordered());
        assert!(!DomainExpr::Eq.is_well_ordered());
    }
}

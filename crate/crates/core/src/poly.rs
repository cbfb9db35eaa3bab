//! Sparse polynomials with exact coefficients over domain variables.
//!
//! Terms are stored strictly descending in the lexicographic term order,
//! so the leading term is the first entry. Every constructor restores
//! that canonical form and drops zero coefficients; equality is
//! structural on canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::domain::{DomainExpr, Element};
use crate::emb::{ca1_extends, LocalEmbedding};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    /// `(monomial, coefficient)` strictly descending by monomial.
    terms: Vec<(Monomial, FieldElem)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(cur) => *cur = cur.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn term(m: Monomial, c: FieldElem) -> Self {
        Polynomial::from_terms([(m, c)])
    }

    pub fn constant(c: FieldElem) -> Self {
        Polynomial::term(Monomial::unit(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading monomial and coefficient of a nonzero polynomial.
    pub fn leading(&self) -> Result<(&Monomial, &FieldElem)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or_else(|| Error::Domain("zero polynomial has no leading term".into()))
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn vars(&self) -> BTreeSet<Element> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            out.extend(m.vars().cloned());
        }
        out
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|(_, c)| c.field())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        // merge of two descending term lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiplication by a single term. Multiplying by a monomial
    /// preserves the descending order of the term list.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(cur) => *cur = cur.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Polynomial> {
        let (_, lc) = self.leading()?;
        Ok(self.scale(&lc.inv()?))
    }

    pub(crate) fn rename_unchecked(&self, p: &LocalEmbedding) -> Polynomial {
        // The renamed terms stay distinct (injective renaming) but their
        // relative order can change, so re-sort.
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.rename_unchecked(p), c.clone())),
        )
    }
}

/// Applies a variable renaming to a polynomial; the map must cover the
/// polynomial's variables and must be a local embedding of the domain.
pub fn rename(d: &DomainExpr, p: &LocalEmbedding, f: &Polynomial) -> Result<Polynomial> {
    for v in f.vars() {
        if p.get(&v).is_none() {
            return Err(Error::Domain(format!("renaming does not cover variable {v}")));
        }
    }
    if !ca1_extends(d, p)? {
        return Err(Error::Domain(format!(
            "{p} is not the restriction of an embedding of {d}"
        )));
    }
    Ok(f.rename_unchecked(p))
}

/// Same, for a single monomial.
pub fn rename_monomial(d: &DomainExpr, p: &LocalEmbedding, m: &Monomial) -> Result<Monomial> {
    for v in m.vars() {
        if p.get(v).is_none() {
            return Err(Error::Domain(format!("renaming does not cover variable {v}")));
        }
    }
    if !ca1_extends(d, p)? {
        return Err(Error::Domain(format!(
            "{p} is not the restriction of an embedding of {d}"
        )));
    }
    Ok(m.rename_unchecked(p))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = matches!(c, FieldElem::Q(r) if r < &num::rational::BigRational::from_integer(0.into()));
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Element {
        Element::ord(&[n])
    }

    fn omega() -> DomainExpr {
        DomainExpr::Ord(1)
    }

    fn q(n: i64) -> FieldElem {
        Field::Q.from_int(n)
    }

    fn xv(n: u64) -> Polynomial {
        Polynomial::term(Monomial::var(nat(n)), q(1))
    }

    fn cst(n: i64) -> Polynomial {
        Polynomial::constant(q(n))
    }

    #[test]
    fn leading_data() {
        // x0*x1^2 - x1*x2 has leading monomial x1*x2 with coefficient -1
        let f = Polynomial::from_terms([
            (Monomial::from_degrees([(nat(0), 1), (nat(1), 2)]), q(1)),
            (Monomial::from_degrees([(nat(1), 1), (nat(2), 1)]), q(-1)),
        ]);
        let (lm, lc) = f.leading().unwrap();
        assert_eq!(*lm, Monomial::from_degrees([(nat(1), 1), (nat(2), 1)]));
        assert_eq!(*lc, q(-1));
        // x0 - 1: the variable beats the unit monomial
        let g = xv(0).sub(&cst(1));
        assert_eq!(*g.leading().unwrap().0, Monomial::var(nat(0)));
        assert_eq!(*g.leading().unwrap().1, q(1));
        assert!(Polynomial::zero().leading().is_err());
    }

    #[test]
    fn ring_arithmetic() {
        let f = xv(0).sub(&cst(1));
        let g = xv(0).add(&cst(1));
        let x0sq = Polynomial::term(Monomial::var_pow(nat(0), 2), q(1));
        assert_eq!(f.mul(&g), x0sq.sub(&cst(1)));
        assert_eq!(f.mul(&Polynomial::constant(q(1))), f);
        assert_eq!(f.sub(&f), Polynomial::zero());
    }

    #[test]
    fn decomposition_of_ab2_minus_bc() {
        // (x1-1)*(x0x1 + x0 - x2) + (x0-1) - (x2-1) = x0*x1^2 - x1*x2
        let h = Polynomial::from_terms([
            (Monomial::from_degrees([(nat(0), 1), (nat(1), 1)]), q(1)),
            (Monomial::var(nat(0)), q(1)),
            (Monomial::var(nat(2)), q(-1)),
        ]);
        let lhs = xv(1)
            .sub(&cst(1))
            .mul(&h)
            .add(&xv(0).sub(&cst(1)))
            .sub(&xv(2).sub(&cst(1)));
        let want = Polynomial::from_terms([
            (Monomial::from_degrees([(nat(0), 1), (nat(1), 2)]), q(1)),
            (Monomial::from_degrees([(nat(1), 1), (nat(2), 1)]), q(-1)),
        ]);
        assert_eq!(lhs, want);
    }

    #[test]
    fn rename_acts_on_polynomials() {
        let f = xv(0).sub(&xv(1));
        let p = LocalEmbedding::from_pairs([(nat(0), nat(1)), (nat(1), nat(2))]).unwrap();
        let got = rename(&omega(), &p, &f).unwrap();
        assert_eq!(got, xv(1).sub(&xv(2)));
        let id = LocalEmbedding::identity(f.vars().iter());
        assert_eq!(rename(&omega(), &id, &f).unwrap(), f);
        // uncovered variable
        let narrow = LocalEmbedding::from_pairs([(nat(0), nat(1))]).unwrap();
        assert!(rename(&omega(), &narrow, &f).is_err());
        // a non-embedding map is rejected
        let bad = LocalEmbedding::from_pairs([(nat(0), nat(3)), (nat(1), nat(1))]).unwrap();
        assert!(rename(&omega(), &bad, &f).is_err());
    }

    #[test]
    fn rename_over_omega_squared() {
        let d = DomainExpr::Ord(2);
        let e = |c1: u64, c0: u64| Element::ord(&[c1, c0]);
        // x0*x2^2 - x1^3 with variables sent to <1,0>, <2,0>, <3,0>
        let f = Polynomial::from_terms([
            (Monomial::from_degrees([(e(0, 0), 1), (e(0, 2), 2)]), q(1)),
            (Monomial::var_pow(e(0, 1), 3), q(-1)),
        ]);
        let p = LocalEmbedding::from_pairs([
            (e(0, 0), e(1, 0)),
            (e(0, 1), e(2, 0)),
            (e(0, 2), e(3, 0)),
        ])
        .unwrap();
        let got = rename(&d, &p, &f).unwrap();
        let want = Polynomial::from_terms([
            (Monomial::from_degrees([(e(1, 0), 1), (e(3, 0), 2)]), q(1)),
            (Monomial::var_pow(e(2, 0), 3), q(-1)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn display_canonical() {
        let f = Polynomial::from_terms([
            (Monomial::from_degrees([(nat(0), 1), (nat(1), 2)]), q(1)),
            (Monomial::from_degrees([(nat(1), 1), (nat(2), 1)]), q(-1)),
        ]);
        assert_eq!(f.to_string(), "-x{1}*x{2} + x{0}*x{1}^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(cst(-2).to_string(), "-2");
    }
}

//! Orbit-finite systems of linear equations, solved through ideal
//! membership of encoded vectors.
//!
//! A `d`-tuple is encoded as the monomial in which position `i` (1-based)
//! contributes exponent `2^(i-1)` to its variable; repeated variables sum
//! their position exponents. Distinct subset sums of powers of two make
//! the encoding injective, and every encoding has total degree `2^d - 1`.
//! A target vector is a combination of the family exactly when its
//! encoding lies in the equivariant ideal of the entry encodings; the
//! degree uniformity lets a spanning combination be read off a membership
//! certificate by dropping all non-unit monomial multipliers.

use std::collections::{BTreeMap, BTreeSet};

use crate::domain::{DomainExpr, Element};
use crate::emb::{ca1_extends, ca2_presentation, extend_local, LocalEmbedding};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::front::reduction::{reduce_instance, QInstance};
use crate::gb::{member_with, member_with_expansion, Basis, EngineOptions, Membership};
use crate::monomial::Monomial;
use crate::orbits::canonical_tuple;
use crate::poly::Polynomial;

/// A formal sum of `d`-tuples with field coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VecSum {
    terms: BTreeMap<Vec<Element>, FieldElem>,
}

impl VecSum {
    pub fn zero() -> Self {
        VecSum::default()
    }

    pub fn add_term(&mut self, tuple: Vec<Element>, coeff: FieldElem) {
        match self.terms.get_mut(&tuple) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                if !coeff.is_zero() {
                    self.terms.insert(tuple, coeff);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Element>, &FieldElem)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &VecSum) -> VecSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> VecSum {
        let mut out = VecSum::zero();
        for (t, k) in &self.terms {
            out.add_term(t.clone(), k.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &VecSum) -> VecSum {
        self.add(&other.scale(&other.field_one_neg()))
    }

    fn field_one_neg(&self) -> FieldElem {
        self.terms
            .values()
            .next()
            .map(|c| c.field().one().neg())
            .unwrap_or_else(|| Field::Q.one().neg())
    }

    /// Renames every tuple entry; the map must cover all of them.
    fn rename(&self, p: &LocalEmbedding) -> VecSum {
        let mut out = VecSum::zero();
        for (t, c) in &self.terms {
            out.add_term(
                t.iter().map(|e| p.get(e).expect("covered").clone()).collect(),
                c.clone(),
            );
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<Element> {
        self.terms.keys().flatten().cloned().collect()
    }
}

/// An equivariant family of vectors given on finitely many index tuples;
/// its meaning is the closure of the entries under renaming.
#[derive(Debug, Clone)]
pub struct VectorFamily {
    domain: DomainExpr,
    dim: usize,
    arity: usize,
    field: Field,
    entries: Vec<(Vec<Element>, VecSum)>,
}

impl VectorFamily {
    pub fn new(
        domain: DomainExpr,
        dim: usize,
        arity: usize,
        field: Field,
        entries: Vec<(Vec<Element>, VecSum)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (index, vector) in &entries {
            if index.len() != arity {
                return Err(Error::Validation(format!(
                    "index tuple has {} entries, arity is {arity}",
                    index.len()
                )));
            }
            if !seen.insert(index.clone()) {
                return Err(Error::Validation("duplicate index tuple".into()));
            }
            for e in index {
                domain.check_element(e)?;
            }
            for (t, c) in vector.iter() {
                if t.len() != dim {
                    return Err(Error::Validation(format!(
                        "vector tuple has {} entries, dim is {dim}",
                        t.len()
                    )));
                }
                for e in t {
                    domain.check_element(e)?;
                }
                if c.field() != field {
                    return Err(Error::Validation("coefficient outside the family field".into()));
                }
            }
        }
        Ok(VectorFamily { domain, dim, arity, field, entries })
    }

    pub fn domain(&self) -> &DomainExpr {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[(Vec<Element>, VecSum)] {
        &self.entries
    }
}

/// Position `i` (1-based) contributes exponent `2^(i-1)`.
pub fn encode_tuple(dim: usize, t: &[Element]) -> Result<Monomial> {
    if t.len() != dim {
        return Err(Error::Domain(format!(
            "tuple length {} does not match dimension {dim}",
            t.len()
        )));
    }
    if dim >= 60 {
        return Err(Error::Resource("dimension too large to encode in u64 degrees".into()));
    }
    Ok(Monomial::from_degrees(
        t.iter().enumerate().map(|(i, e)| (e.clone(), 1u64 << i)),
    ))
}

/// Linear extension of the tuple encoding.
pub fn encode_vector(dim: usize, v: &VecSum) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for (t, c) in v.iter() {
        acc = acc.add(&Polynomial::term(encode_tuple(dim, t)?, c.clone()));
    }
    Ok(acc)
}

/// Finite equivariance check: the closure of the entries is well defined
/// exactly when, for every pair of entries and every presentation pair of
/// their variable sets, equal renamed indices imply equal renamed
/// vectors. The condition is invariant under post-composition with
/// embeddings, so checking presentation pairs suffices.
pub fn validate_family(fam: &VectorFamily) -> Result<bool> {
    if !fam.domain.is_well_ordered() {
        return Err(Error::Domain(format!(
            "family validation needs a well-ordered domain, got {}",
            fam.domain
        )));
    }
    for (index, _) in &fam.entries {
        if &canonical_tuple(&fam.domain, index)? != index {
            return Err(Error::Validation(format!(
                "index tuple ({}) is not canonical",
                index.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            )));
        }
    }
    for (t1, v1) in &fam.entries {
        for (t2, v2) in &fam.entries {
            let mut vars1: BTreeSet<Element> = t1.iter().cloned().collect();
            vars1.extend(v1.vars());
            let mut vars2: BTreeSet<Element> = t2.iter().cloned().collect();
            vars2.extend(v2.vars());
            for (pl, pr) in ca2_presentation(&fam.domain, &vars1, &vars2)? {
                let li: Vec<Element> =
                    t1.iter().map(|e| pl.get(e).unwrap().clone()).collect();
                let ri: Vec<Element> =
                    t2.iter().map(|e| pr.get(e).unwrap().clone()).collect();
                if li == ri && v1.rename(&pl) != v2.rename(&pr) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The family's vector at an arbitrary index tuple, when the index lies
/// in the orbit of some entry.
pub fn family_vector_at(fam: &VectorFamily, index: &[Element]) -> Result<Option<VecSum>> {
    for (t, v) in &fam.entries {
        // the entry's index forces the renaming on its own variables
        let mut forced: BTreeMap<Element, Element> = BTreeMap::new();
        let mut consistent = index.len() == t.len();
        for (src, dst) in t.iter().zip(index) {
            match forced.get(src) {
                None => {
                    forced.insert(src.clone(), dst.clone());
                }
                Some(prev) if prev == dst => {}
                Some(_) => {
                    consistent = false;
                    break;
                }
            }
        }
        if !consistent {
            continue;
        }
        let map = LocalEmbedding::from_pairs(forced)?;
        if !ca1_extends(&fam.domain, &map)? {
            continue;
        }
        let mut all_vars: BTreeSet<Element> = t.iter().cloned().collect();
        all_vars.extend(v.vars());
        let full = extend_local(&fam.domain, &map, &all_vars)?;
        return Ok(Some(v.rename(&full)));
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct LinsolveOutcome {
    pub solvable: bool,
    pub membership: Membership,
    /// On success over a well-ordered domain: a spanning combination
    /// `Σ coeff · M[index]` that evaluates exactly to the target.
    pub combination: Option<Vec<(FieldElem, Vec<Element>)>>,
}

/// Is the target vector a linear combination of the family?
pub fn linsolve(fam: &VectorFamily, target: &VecSum, opts: EngineOptions) -> Result<LinsolveOutcome> {
    for (t, c) in target.iter() {
        if t.len() != fam.dim {
            return Err(Error::Domain("target tuple has the wrong dimension".into()));
        }
        for e in t {
            fam.domain.check_element(e)?;
        }
        if c.field() != fam.field {
            return Err(Error::Domain("target coefficients outside the family field".into()));
        }
    }
    let mut gens = vec![];
    let mut sources = vec![]; // basis index -> entry index
    for (i, (_, v)) in fam.entries.iter().enumerate() {
        let g = encode_vector(fam.dim, v)?;
        if !g.is_zero() {
            gens.push(g);
            sources.push(i);
        }
    }
    let f = encode_vector(fam.dim, target)?;
    let basis = Basis::new(fam.domain.clone(), fam.field, gens)?;

    if !fam.domain.is_well_ordered() {
        let inst = QInstance { domain: fam.domain.clone(), basis, poly: f };
        let (b2, f2) = reduce_instance(&inst)?;
        let membership = member_with(&b2, &f2, opts)?;
        return Ok(LinsolveOutcome {
            solvable: membership.answer,
            membership,
            combination: None,
        });
    }

    let (membership, expansion) = member_with_expansion(&basis, &f, opts)?;
    let combination = match (membership.answer, expansion) {
        (true, Some(exp)) => {
            let mut acc: BTreeMap<Vec<Element>, FieldElem> = BTreeMap::new();
            for term in exp {
                if !term.multiplier.is_unit() {
                    // degree uniformity: these cancel among themselves
                    continue;
                }
                let entry = &fam.entries[sources[term.source]];
                let mut needed = term.renaming.domain_set();
                needed.extend(entry.0.iter().cloned());
                let full = extend_local(&fam.domain, &term.renaming, &needed)?;
                let index: Vec<Element> =
                    entry.0.iter().map(|e| full.get(e).unwrap().clone()).collect();
                match acc.get_mut(&index) {
                    Some(c) => *c = c.add(&term.coeff),
                    None => {
                        acc.insert(index, term.coeff);
                    }
                }
            }
            Some(
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (c, i))
                    .collect(),
            )
        }
        _ => None,
    };
    Ok(LinsolveOutcome { solvable: membership.answer, membership, combination })
}

//! Textbook Buchberger over a fixed finite variable set, with the same
//! lexicographic order. Cross-validation oracle for the equivariant
//! engine; deliberately shares no division or completion code with it.

use std::collections::BTreeSet;

use crate::domain::Element;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

fn check_vars(vars: &BTreeSet<Element>, polys: &[&Polynomial]) -> Result<()> {
    for p in polys {
        for v in p.vars() {
            if !vars.contains(&v) {
                return Err(Error::Domain(format!(
                    "variable {v} outside the fixed variable set"
                )));
            }
        }
    }
    Ok(())
}

/// Remainder of classical multivariate division of `f` by `gens`.
pub fn classical_reduce(gens: &[Polynomial], f: &Polynomial) -> Polynomial {
    let mut cur = f.clone();
    'outer: loop {
        for (m, coeff) in cur.terms() {
            for g in gens {
                let (lm, lc) = g.leading().expect("nonzero generators");
                if lm.divides(m) {
                    let h = m.div(lm).unwrap();
                    let r = coeff.div(lc).unwrap();
                    cur = cur.sub(&g.mul_term(&h, &r));
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

fn classical_spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lm_f, lc_f) = f.leading().unwrap();
    let (lm_g, lc_g) = g.leading().unwrap();
    let h = lm_f.lcm(lm_g);
    let left = f.mul_term(&h.div(lm_f).unwrap(), &lc_f.inv().unwrap());
    let right = g.mul_term(&h.div(lm_g).unwrap(), &lc_g.inv().unwrap());
    left.sub(&right)
}

/// Classical Groebner basis of the ideal generated by `gens` inside the
/// polynomial ring over exactly `vars`.
pub fn classical_gb(vars: &BTreeSet<Element>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_vars(vars, &gens.iter().collect::<Vec<_>>())?;
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut queue: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .collect();
    while let Some((i, j)) = queue.pop() {
        let s = classical_spoly(&basis[i], &basis[j]);
        let r = classical_reduce(&basis, &s);
        if !r.is_zero() {
            let r = r.monic()?;
            let k = basis.len();
            queue.extend((0..k).map(|i| (i, k)));
            basis.push(r);
        }
    }
    Ok(basis)
}

/// Classical ideal membership over a fixed variable set.
pub fn classical_member(
    vars: &BTreeSet<Element>,
    gens: &[Polynomial],
    f: &Polynomial,
) -> Result<bool> {
    check_vars(vars, &[f])?;
    let gb = classical_gb(vars, gens)?;
    Ok(classical_reduce(&gb, f).is_zero())
}

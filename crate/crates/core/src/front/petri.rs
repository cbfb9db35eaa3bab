//! Reachability in reversible Petri nets with data, via binomial ideal
//! membership.
//!
//! A net is monomial rewriting over `data ⊗ fin[places]`: markings are
//! monomials, a rule `(h, h')` enables transitions `g·h -> g·h'` for all
//! renamings of the rule. For reversible nets, `s` reaches `t` exactly
//! when `t - s` lies in the equivariant ideal generated by the rule
//! binomials over the rationals. Without reversibility membership is only
//! an upper approximation of reachability.

use itertools::Itertools;

use crate::domain::{DomainExpr, Element};
use crate::emb::{ca1_extends, LocalEmbedding};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::front::reduction::{reduce_instance, QInstance};
use crate::gb::{member_with, Basis, EngineOptions, Membership};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct PetriNet {
    data_domain: DomainExpr,
    places: u64,
    rules: Vec<(Monomial, Monomial)>,
    reversible: bool,
}

impl PetriNet {
    pub fn new(
        data_domain: DomainExpr,
        places: u64,
        rules: Vec<(Monomial, Monomial)>,
    ) -> Result<Self> {
        if places == 0 {
            return Err(Error::Validation("a net needs at least one place".into()));
        }
        let full = DomainExpr::lex(data_domain.clone(), DomainExpr::Fin(places));
        for (h, h2) in &rules {
            for v in h.vars().chain(h2.vars()) {
                full.check_element(v)?;
            }
        }
        Ok(PetriNet { data_domain, places, rules, reversible: false })
    }

    pub fn data_domain(&self) -> &DomainExpr {
        &self.data_domain
    }

    pub fn places(&self) -> u64 {
        self.places
    }

    pub fn rules(&self) -> &[(Monomial, Monomial)] {
        &self.rules
    }

    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    /// The domain markings live over.
    pub fn full_domain(&self) -> DomainExpr {
        DomainExpr::lex(self.data_domain.clone(), DomainExpr::Fin(self.places))
    }
}

/// Validates reversibility: for every rule, the reversed rule must be an
/// embedding-image of some rule. With `symmetrize`, missing inverses are
/// added first.
pub fn petri_validate(net: &PetriNet, symmetrize: bool) -> Result<PetriNet> {
    let full = net.full_domain();
    let mut rules = net.rules.clone();
    if symmetrize {
        let mut extra = vec![];
        for (h, h2) in &rules {
            if !covered(&full, &rules, (h2, h))? {
                extra.push((h2.clone(), h.clone()));
            }
        }
        rules.extend(extra);
    }
    for (h, h2) in &rules {
        if !covered(&full, &rules, (h2, h))? {
            return Err(Error::Validation(format!(
                "rule {h} -> {h2} has no inverse in the net; pass --symmetrize to add inverses"
            )));
        }
    }
    Ok(PetriNet {
        data_domain: net.data_domain.clone(),
        places: net.places,
        rules,
        reversible: true,
    })
}

/// Is the pair `target` an embedding-image of some rule in `rules`?
fn covered(
    full: &DomainExpr,
    rules: &[(Monomial, Monomial)],
    target: (&Monomial, &Monomial),
) -> Result<bool> {
    let mut tset = target.0.var_set();
    tset.extend(target.1.var_set());
    let tgt_vars: Vec<Element> = tset.into_iter().collect();
    for (k, k2) in rules {
        let mut sset = k.var_set();
        sset.extend(k2.var_set());
        let src_vars: Vec<Element> = sset.into_iter().collect();
        if src_vars.len() != tgt_vars.len() {
            continue;
        }
        for perm in tgt_vars.iter().permutations(src_vars.len()) {
            let map = LocalEmbedding::from_pairs(
                src_vars.iter().cloned().zip(perm.iter().map(|e| (*e).clone())),
            )?;
            if !ca1_extends(full, &map)? {
                continue;
            }
            if k.rename_unchecked(&map) == *target.0 && k2.rename_unchecked(&map) == *target.1 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Debug, Clone)]
pub struct ReachOutcome {
    pub reachable: bool,
    pub membership: Membership,
}

/// Decides reachability `s ->* t` for a validated reversible net.
pub fn petri_reach(
    net: &PetriNet,
    source: &Monomial,
    target: &Monomial,
    opts: EngineOptions,
) -> Result<ReachOutcome> {
    if !net.reversible {
        return Err(Error::Validation(
            "net has not been validated reversible; validate first or use the upper bound".into(),
        ));
    }
    reach_membership(net, source, target, opts)
}

/// Membership of `t - s` for a net that need not be reversible: a `false`
/// answer refutes reachability, a `true` answer is only necessary.
pub fn petri_reach_upper(
    net: &PetriNet,
    source: &Monomial,
    target: &Monomial,
    opts: EngineOptions,
) -> Result<ReachOutcome> {
    reach_membership(net, source, target, opts)
}

fn reach_membership(
    net: &PetriNet,
    source: &Monomial,
    target: &Monomial,
    opts: EngineOptions,
) -> Result<ReachOutcome> {
    let full = net.full_domain();
    for v in source.vars().chain(target.vars()) {
        full.check_element(v)?;
    }
    let field = Field::Q;
    let one = field.one();
    let poly = Polynomial::term(target.clone(), one.clone())
        .sub(&Polynomial::term(source.clone(), one.clone()));
    let gens: Vec<Polynomial> = net
        .rules
        .iter()
        .map(|(h, h2)| {
            Polynomial::term(h2.clone(), one.clone()).sub(&Polynomial::term(h.clone(), one.clone()))
        })
        .filter(|g| !g.is_zero())
        .collect();
    let basis = Basis::new(full.clone(), field, gens)?;
    let membership = if full.is_well_ordered() {
        member_with(&basis, &poly, opts)?
    } else {
        let inst = QInstance { domain: full, basis, poly };
        let (b2, f2) = reduce_instance(&inst)?;
        member_with(&b2, &f2, opts)?
    };
    Ok(ReachOutcome { reachable: membership.answer, membership })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin_var(data: u64, place: u64) -> Element {
        Element::pair(Element::Fin(data), Element::Fin(place))
    }

    fn m(pairs: &[((u64, u64), u64)]) -> Monomial {
        Monomial::from_degrees(pairs.iter().map(|&((d, p), deg)| (fin_var(d, p), deg)))
    }

    fn growing_net() -> PetriNet {
        // rules x -> x^2 and x^2 -> x over one data value, one place
        let x = m(&[((0, 0), 1)]);
        let xx = m(&[((0, 0), 2)]);
        PetriNet::new(DomainExpr::Fin(1), 1, vec![(x.clone(), xx.clone()), (xx, x)]).unwrap()
    }

    #[test]
    fn validate_reversible() {
        let net = petri_validate(&growing_net(), false).unwrap();
        assert!(net.is_reversible());
    }

    #[test]
    fn validate_rejects_one_way() {
        let x = m(&[((0, 0), 1)]);
        let xx = m(&[((0, 0), 2)]);
        let net = PetriNet::new(DomainExpr::Fin(1), 1, vec![(x.clone(), xx.clone())]).unwrap();
        assert!(matches!(petri_validate(&net, false), Err(Error::Validation(_))));
        let fixed = petri_validate(&net, true).unwrap();
        assert_eq!(fixed.rules().len(), 2);
        assert!(fixed.is_reversible());
    }

    #[test]
    fn inverse_detected_up_to_renaming() {
        let v = |n: u64, p: u64| Element::pair(Element::ord(&[n]), Element::Fin(p));
        let rule = |a: u64, from: u64, to: u64| (Monomial::var(v(a, from)), Monomial::var(v(a, to)));
        // the reverse of the move at 5 is covered by the move at 3 via 3 -> 5
        let net = PetriNet::new(
            DomainExpr::Ord(1),
            2,
            vec![rule(5, 0, 1), rule(3, 1, 0), rule(3, 0, 1)],
        )
        .unwrap();
        assert!(petri_validate(&net, false).unwrap().is_reversible());
        // over a well order the coverage is directional: a down-move
        // known only at 5 cannot invert the up-moves at 3 and 4
        let oneway = PetriNet::new(
            DomainExpr::Ord(1),
            2,
            vec![rule(3, 0, 1), (Monomial::var(v(5, 1)), Monomial::var(v(5, 0)))],
        )
        .unwrap();
        assert!(matches!(petri_validate(&oneway, false), Err(Error::Validation(_))));
    }

    #[test]
    fn reach_positive_and_negative() {
        let net = petri_validate(&growing_net(), false).unwrap();
        let x = m(&[((0, 0), 1)]);
        let xxx = m(&[((0, 0), 3)]);
        let got = petri_reach(&net, &x, &xxx, EngineOptions::default()).unwrap();
        assert!(got.reachable);
        let no = petri_reach(&net, &x, &Monomial::unit(), EngineOptions::default()).unwrap();
        assert!(!no.reachable);
        // s = t is always reachable
        let same = petri_reach(&net, &x, &x, EngineOptions::default()).unwrap();
        assert!(same.reachable);
    }

    #[test]
    fn upper_bound_is_one_sided() {
        // non-reversible growth x -> x^2: x is not reachable from x^2,
        // but the ideal cannot tell the directions apart.
        let x = m(&[((0, 0), 1)]);
        let xx = m(&[((0, 0), 2)]);
        let net = PetriNet::new(DomainExpr::Fin(1), 1, vec![(x.clone(), xx.clone())]).unwrap();
        let up = petri_reach_upper(&net, &xx, &x, EngineOptions::default()).unwrap();
        assert!(up.reachable); // inconclusive for a non-reversible net
        assert!(petri_reach(&net, &x, &xx, EngineOptions::default()).is_err());
    }
}

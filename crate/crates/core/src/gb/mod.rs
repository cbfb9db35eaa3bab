//! The equivariant division step, certified reduction, S-polynomial
//! presentations, the completion loop, and ideal membership.
//!
//! A basis presents an equivariant ideal: its closure under addition,
//! multiplication by polynomials, and variable renaming. A division step
//! subtracts `r·h·ι(g)` so that a chosen head monomial cancels; reduction
//! iterates division steps and terminates because the term order is well
//! founded over well-ordered domains. Completion repeatedly reduces the
//! finitely presented S-polynomials of renamed generator pairs and adjoins
//! nonzero remainders until every presented S-polynomial reduces to zero.
//! Everything is deterministic; every reduction is replayable from its
//! certificate.

mod classical;

pub use classical::{classical_gb, classical_member, classical_reduce};

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::domain::{DomainExpr, Element};
use crate::emb::{ca1_extends, ca2_presentation, compose, extend_local, LocalEmbedding};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::{mono_wqo_leq, Monomial};
use crate::poly::Polynomial;

/// A finite list of nonzero generators over a fixed domain and field.
/// Generator indices are stable; certificates refer to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    domain: DomainExpr,
    field: Field,
    gens: Vec<Polynomial>,
}

impl Basis {
    pub fn new(domain: DomainExpr, field: Field, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.is_zero() {
                return Err(Error::Domain("zero polynomial cannot be a generator".into()));
            }
            if let Some(f) = g.field() {
                if f != field {
                    return Err(Error::Domain(format!(
                        "generator coefficients in {f}, basis field is {field}"
                    )));
                }
            }
            for v in g.vars() {
                domain.check_element(&v)?;
            }
        }
        Ok(Basis { domain, field, gens })
    }

    pub fn domain(&self) -> &DomainExpr {
        &self.domain
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if let Some(field) = f.field() {
            if field != self.field {
                return Err(Error::Domain(format!(
                    "polynomial coefficients in {field}, basis field is {}",
                    self.field
                )));
            }
        }
        for v in f.vars() {
            self.domain.check_element(&v)?;
        }
        Ok(())
    }
}

/// One division step `f = r·h·ι(g) + f'`. The head `h·ι(lm g)` occurs in
/// the pre-step polynomial with coefficient `r·lc(g)` and is the largest
/// monomial that disappears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionStep {
    pub gen_index: usize,
    pub r: FieldElem,
    pub h: Monomial,
    /// Renaming over all of `vars(g)`, minimally extended from the match
    /// on `vars(lm g)`.
    pub renaming: LocalEmbedding,
    pub head: Monomial,
}

/// A replayable record of a reduction: the steps and the final remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<DivisionStep>,
    pub remainder: Polynomial,
}

#[derive(Debug, Clone, Copy)]
pub struct FuelConfig {
    pub max_steps: u64,
    pub max_passes: u64,
}

impl Default for FuelConfig {
    fn default() -> Self {
        FuelConfig { max_steps: 1_000_000, max_passes: 1_000 }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineOptions {
    pub fuel: FuelConfig,
    /// Skip S-pairs whose renamed leading monomials share no variable.
    /// Off by default: classically sound, but conservative here.
    pub coprime_filter: bool,
    /// Interreduce the completed basis.
    pub autoreduce: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub steps: u64,
    pub passes: u64,
    pub added: u64,
    /// `(pass, generators added in that pass)`.
    pub pass_log: Vec<(u64, u64)>,
}

/// Result of a membership query: the answer, the reduction certificate
/// against the completed basis, the completed basis itself, and counters.
#[derive(Debug, Clone)]
pub struct Membership {
    pub answer: bool,
    pub certificate: Certificate,
    pub basis: Basis,
    pub stats: RunStats,
}

/// One term of an expansion `Σ coeff·multiplier·renaming(B[source])` over
/// the original input basis. Used to recover spanning combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTerm {
    pub coeff: FieldElem,
    pub multiplier: Monomial,
    pub renaming: LocalEmbedding,
    pub source: usize,
}

pub type Expansion = Vec<ExpTerm>;

/// Finds the division step chosen by the determinism policy, or `None`
/// when `f` is reduced: pick the largest reducible monomial, then the
/// smallest generator index, then the pointwise-smallest matching map.
pub fn divide_step(basis: &Basis, f: &Polynomial) -> Result<Option<(DivisionStep, Polynomial)>> {
    basis.check_poly(f)?;
    choose_division_step(&basis.domain, &basis.gens, f)
}

fn choose_division_step(
    domain: &DomainExpr,
    gens: &[Polynomial],
    f: &Polynomial,
) -> Result<Option<(DivisionStep, Polynomial)>> {
    for (m, coeff) in f.terms() {
        let m_vars: Vec<&Element> = m.vars().collect();
        for (gi, g) in gens.iter().enumerate() {
            let (lm_g, lc_g) = g.leading()?;
            let sources: Vec<&Element> = lm_g.vars().collect();
            if sources.len() > m_vars.len() {
                continue;
            }
            for combo in m_vars.iter().combinations(sources.len()) {
                if sources
                    .iter()
                    .zip(&combo)
                    .any(|(s, t)| lm_g.deg(s) > m.deg(t))
                {
                    continue;
                }
                let map = LocalEmbedding::from_pairs(
                    sources
                        .iter()
                        .zip(&combo)
                        .map(|(s, t)| ((*s).clone(), (**t).clone())),
                )?;
                if !ca1_extends(domain, &map)? {
                    continue;
                }
                let renaming = extend_local(domain, &map, &g.vars())?;
                let renamed_lm = lm_g.rename_unchecked(&renaming);
                let h = m.div(&renamed_lm)?;
                let r = coeff.div(lc_g)?;
                let renamed_g = g.rename_unchecked(&renaming);
                let next = f.sub(&renamed_g.mul_term(&h, &r));
                let step = DivisionStep {
                    gen_index: gi,
                    r,
                    h,
                    renaming,
                    head: m.clone(),
                };
                return Ok(Some((step, next)));
            }
        }
    }
    Ok(None)
}

/// Reduces `f` by iterated division; the certificate replays exactly.
pub fn reduce(basis: &Basis, f: &Polynomial) -> Result<Certificate> {
    reduce_with_fuel(basis, f, &FuelConfig::default())
}

pub fn reduce_with_fuel(basis: &Basis, f: &Polynomial, fuel: &FuelConfig) -> Result<Certificate> {
    basis.check_poly(f)?;
    let mut used = 0;
    reduce_inner(&basis.domain, &basis.gens, f, fuel.max_steps, &mut used)
}

fn reduce_inner(
    domain: &DomainExpr,
    gens: &[Polynomial],
    f: &Polynomial,
    max_steps: u64,
    steps_used: &mut u64,
) -> Result<Certificate> {
    let mut cur = f.clone();
    let mut steps = vec![];
    while let Some((step, next)) = choose_division_step(domain, gens, &cur)? {
        *steps_used += 1;
        if *steps_used > max_steps {
            return Err(Error::Internal(format!(
                "division-step budget of {max_steps} exhausted; reduction must terminate"
            )));
        }
        steps.push(step);
        cur = next;
    }
    Ok(Certificate { steps, remainder: cur })
}

/// The S-polynomial of two distinct nonzero polynomials: both are scaled
/// onto the lcm of their leading monomials and subtracted, cancelling it.
pub fn spoly(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f == g {
        return Err(Error::Domain("S-polynomial of two equal polynomials".into()));
    }
    let (lm_f, lc_f) = f.leading()?;
    let (lm_g, lc_g) = g.leading()?;
    let h = lm_f.lcm(lm_g);
    let left = f.mul_term(&h.div(lm_f)?, &lc_f.inv()?);
    let right = g.mul_term(&h.div(lm_g)?, &lc_g.inv()?);
    Ok(left.sub(&right))
}

/// An S-pair drawn from the presentation of `embsetprod` over a pair of
/// generators (self-pairs with distinct renamings included).
#[derive(Debug, Clone)]
struct SPair {
    i: usize,
    j: usize,
    left: LocalEmbedding,
    right: LocalEmbedding,
    spoly: Polynomial,
}

type Ca2Cache = BTreeMap<(Vec<Element>, Vec<Element>), Vec<(LocalEmbedding, LocalEmbedding)>>;

fn presentation_pairs(
    domain: &DomainExpr,
    gens: &[Polynomial],
    cache: &mut Ca2Cache,
) -> Result<Vec<SPair>> {
    let mut out = vec![];
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            let vi: Vec<Element> = gi.vars().into_iter().collect();
            let vj: Vec<Element> = gj.vars().into_iter().collect();
            let key = (vi.clone(), vj.clone());
            if !cache.contains_key(&key) {
                let pres = ca2_presentation(
                    domain,
                    &vi.iter().cloned().collect(),
                    &vj.iter().cloned().collect(),
                )?;
                cache.insert(key.clone(), pres);
            }
            for (pl, pr) in &cache[&key] {
                let fi = gi.rename_unchecked(pl);
                let fj = gj.rename_unchecked(pr);
                if fi == fj {
                    continue;
                }
                out.push(SPair {
                    i,
                    j,
                    left: pl.clone(),
                    right: pr.clone(),
                    spoly: spoly(&fi, &fj)?,
                });
            }
        }
    }
    // normal strategy: ascending leading monomial, full tiebreaks
    out.sort_by(|a, b| {
        (&a.spoly, a.i, a.j, &a.left, &a.right).cmp(&(&b.spoly, b.i, b.j, &b.left, &b.right))
    });
    Ok(out)
}

/// Presentation of the S-polynomials of all renamed generator pairs: the
/// full set of S-polynomials equals the renaming closure of this one.
pub fn pres(basis: &Basis) -> Result<Vec<Polynomial>> {
    let mut cache = Ca2Cache::new();
    let pairs = presentation_pairs(&basis.domain, &basis.gens, &mut cache)?;
    let mut out: Vec<Polynomial> = pairs.into_iter().map(|p| p.spoly).collect();
    out.dedup();
    Ok(out)
}

struct Completion {
    domain: DomainExpr,
    field: Field,
    gens: Vec<Polynomial>,
    /// When tracking, `expansions[i]` presents `gens[i]` over the input basis.
    expansions: Option<Vec<Expansion>>,
    cache: Ca2Cache,
    handled: BTreeSet<Polynomial>,
    opts: EngineOptions,
    stats: RunStats,
}

impl Completion {
    fn new(basis: &Basis, opts: EngineOptions, track: bool) -> Self {
        let expansions = track.then(|| {
            basis
                .gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    vec![ExpTerm {
                        coeff: basis.field.one(),
                        multiplier: Monomial::unit(),
                        renaming: LocalEmbedding::identity(g.vars().iter()),
                        source: i,
                    }]
                })
                .collect()
        });
        Completion {
            domain: basis.domain.clone(),
            field: basis.field,
            gens: basis.gens.clone(),
            expansions,
            cache: Ca2Cache::new(),
            handled: BTreeSet::new(),
            opts,
            stats: RunStats::default(),
        }
    }

    fn reduce(&mut self, f: &Polynomial) -> Result<Certificate> {
        reduce_inner(
            &self.domain,
            &self.gens,
            f,
            self.opts.fuel.max_steps,
            &mut self.stats.steps,
        )
    }

    /// Expansion of the polynomial consumed by the steps of `cert` applied
    /// to a start polynomial with expansion `base`, i.e. of
    /// `start - remainder`; passing the start's expansion gives the
    /// remainder's by subtraction.
    fn steps_expansion(&self, cert: &Certificate) -> Result<Expansion> {
        let exps = self.expansions.as_ref().expect("tracking enabled");
        let mut total = Expansion::new();
        for step in &cert.steps {
            let composed = compose_expansion(&self.domain, &step.renaming, &exps[step.gen_index])?;
            total.extend(scale_expansion(&composed, &step.r, &step.h));
        }
        Ok(normalize_expansion(total))
    }

    fn run(&mut self) -> Result<()> {
        loop {
            self.stats.passes += 1;
            if self.stats.passes > self.opts.fuel.max_passes {
                return Err(Error::Resource(format!(
                    "completion pass budget of {} exhausted; partial basis has {} generators:\n{}",
                    self.opts.fuel.max_passes,
                    self.gens.len(),
                    self.gens.iter().map(|g| format!("gen {g}")).join("\n")
                )));
            }
            let pairs = presentation_pairs(&self.domain, &self.gens, &mut self.cache)?;
            let mut added_this_pass = 0;
            for pair in pairs {
                if self.handled.contains(&pair.spoly) {
                    continue;
                }
                if self.opts.coprime_filter && self.coprime(&pair)? {
                    continue;
                }
                self.handled.insert(pair.spoly.clone());
                let cert = self.reduce(&pair.spoly)?;
                if cert.remainder.is_zero() {
                    continue;
                }
                let (_, lc) = cert.remainder.leading()?;
                let lc_inv = lc.inv()?;
                let monic = cert.remainder.scale(&lc_inv);
                if self.expansions.is_some() {
                    let exp = self.expansion_of_remainder(&pair, &cert)?;
                    let exp = exp
                        .into_iter()
                        .map(|t| ExpTerm { coeff: t.coeff.mul(&lc_inv), ..t })
                        .collect();
                    self.expansions.as_mut().unwrap().push(exp);
                }
                self.gens.push(monic);
                added_this_pass += 1;
                self.stats.added += 1;
            }
            self.stats.pass_log.push((self.stats.passes, added_this_pass));
            if added_this_pass == 0 {
                return Ok(());
            }
        }
    }

    /// Expansion of a reduced S-polynomial remainder over the input basis.
    fn expansion_of_remainder(&self, pair: &SPair, cert: &Certificate) -> Result<Expansion> {
        let exps = self.expansions.as_ref().expect("tracking enabled");
        // S(fi, fj) = (h/lt fi)·fi - (h/lt fj)·fj
        let fi = self.gens[pair.i].rename_unchecked(&pair.left);
        let fj = self.gens[pair.j].rename_unchecked(&pair.right);
        let (lm_i, lc_i) = fi.leading()?;
        let (lm_j, lc_j) = fj.leading()?;
        let h = lm_i.lcm(lm_j);
        let mut start = scale_expansion(
            &compose_expansion(&self.domain, &pair.left, &exps[pair.i])?,
            &lc_i.inv()?,
            &h.div(lm_i)?,
        );
        start.extend(scale_expansion(
            &compose_expansion(&self.domain, &pair.right, &exps[pair.j])?,
            &lc_j.inv()?.neg(),
            &h.div(lm_j)?,
        ));
        // remainder = spoly - (consumed by steps)
        let consumed = self.steps_expansion(cert)?;
        start.extend(consumed.into_iter().map(|t| ExpTerm { coeff: t.coeff.neg(), ..t }));
        Ok(normalize_expansion(start))
    }

    fn coprime(&self, pair: &SPair) -> Result<bool> {
        let lm_i = self.gens[pair.i].leading()?.0.rename_unchecked(&pair.left);
        let lm_j = self.gens[pair.j].leading()?.0.rename_unchecked(&pair.right);
        let coprime = lm_i.vars().all(|v| lm_j.deg(v) == 0);
        Ok(coprime)
    }

    fn into_basis(self) -> (Basis, Option<Vec<Expansion>>, RunStats) {
        (
            Basis {
                domain: self.domain,
                field: self.field,
                gens: self.gens,
            },
            self.expansions,
            self.stats,
        )
    }
}

fn scale_expansion(exp: &[ExpTerm], coeff: &FieldElem, mono: &Monomial) -> Expansion {
    exp.iter()
        .map(|t| ExpTerm {
            coeff: t.coeff.mul(coeff),
            multiplier: t.multiplier.mul(mono),
            renaming: t.renaming.clone(),
            source: t.source,
        })
        .collect()
}

fn compose_expansion(
    domain: &DomainExpr,
    outer: &LocalEmbedding,
    exp: &[ExpTerm],
) -> Result<Expansion> {
    let mut needed: BTreeSet<Element> = outer.domain_set();
    for t in exp {
        needed.extend(t.multiplier.vars().cloned());
        needed.extend(t.renaming.range().cloned());
    }
    let outer = extend_local(domain, outer, &needed)?;
    exp.iter()
        .map(|t| {
            Ok(ExpTerm {
                coeff: t.coeff.clone(),
                multiplier: t.multiplier.rename_unchecked(&outer),
                renaming: compose(domain, &outer, &t.renaming)?,
                source: t.source,
            })
        })
        .collect()
}

fn normalize_expansion(exp: Expansion) -> Expansion {
    let mut acc: BTreeMap<(Monomial, LocalEmbedding, usize), FieldElem> = BTreeMap::new();
    for t in exp {
        let key = (t.multiplier, t.renaming, t.source);
        match acc.get_mut(&key) {
            Some(c) => *c = c.add(&t.coeff),
            None => {
                acc.insert(key, t.coeff);
            }
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((multiplier, renaming, source), coeff)| ExpTerm {
            coeff,
            multiplier,
            renaming,
            source,
        })
        .collect()
}

/// Evaluates an expansion against the basis it refers to. Test helper and
/// certificate consumer.
pub fn evaluate_expansion(basis: &Basis, exp: &[ExpTerm]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for t in exp {
        let renamed = basis.gens[t.source].rename_unchecked(&t.renaming);
        acc = acc.add(&renamed.mul_term(&t.multiplier, &t.coeff));
    }
    acc
}

/// The equivariant completion: repeatedly reduce every presented
/// S-polynomial, adjoining nonzero remainders monic, until a full pass
/// adds nothing.
pub fn buchberger(basis: &Basis) -> Result<(Basis, RunStats)> {
    buchberger_with(basis, EngineOptions::default())
}

pub fn buchberger_with(basis: &Basis, opts: EngineOptions) -> Result<(Basis, RunStats)> {
    if !basis.domain.is_well_ordered() {
        return Err(Error::Domain(format!(
            "completion needs a well-ordered domain, got {}",
            basis.domain
        )));
    }
    let mut completion = Completion::new(basis, opts, false);
    completion.run()?;
    let (out, _, stats) = completion.into_basis();
    let out = if opts.autoreduce { autoreduce(&out)? } else { out };
    Ok((out, stats))
}

/// Decides membership of `f` in the equivariant ideal generated by
/// `basis`: completes the basis and reduces; the answer is whether the
/// remainder vanishes.
pub fn member(basis: &Basis, f: &Polynomial) -> Result<Membership> {
    member_with(basis, f, EngineOptions::default())
}

pub fn member_with(basis: &Basis, f: &Polynomial, opts: EngineOptions) -> Result<Membership> {
    Ok(member_impl(basis, f, opts, false)?.0)
}

/// Membership plus, on a positive answer, a decomposition of `f` over the
/// original input basis (coefficients, monomial multipliers, renamings).
pub fn member_with_expansion(
    basis: &Basis,
    f: &Polynomial,
    opts: EngineOptions,
) -> Result<(Membership, Option<Expansion>)> {
    member_impl(basis, f, opts, true)
}

fn member_impl(
    basis: &Basis,
    f: &Polynomial,
    opts: EngineOptions,
    track: bool,
) -> Result<(Membership, Option<Expansion>)> {
    basis.check_poly(f)?;
    if !basis.domain.is_well_ordered() {
        return Err(Error::Domain(format!(
            "membership needs a well-ordered domain, got {}",
            basis.domain
        )));
    }
    let mut completion = Completion::new(basis, opts, track);
    completion.run()?;
    let cert = completion.reduce(f)?;
    let answer = cert.remainder.is_zero();
    let expansion = if track && answer {
        Some(completion.steps_expansion(&cert)?)
    } else {
        None
    };
    let (out, _, stats) = completion.into_basis();
    Ok((
        Membership { answer, certificate: cert, basis: out, stats },
        expansion,
    ))
}

/// Interreduction: drops every generator whose leading monomial is a
/// renamed multiple of another retained generator's, then normalizes the
/// rest monic. The result generates the same equivariant ideal and is
/// still a Groebner basis when the input was one.
pub fn autoreduce(basis: &Basis) -> Result<Basis> {
    let mut order: Vec<usize> = (0..basis.gens.len()).collect();
    order.sort_by(|&a, &b| basis.gens[a].cmp(&basis.gens[b]).then(a.cmp(&b)));
    let mut kept: Vec<usize> = vec![];
    for &i in &order {
        let lm_i = basis.gens[i].leading()?.0;
        let mut dominated = false;
        for &k in &kept {
            let lm_k = basis.gens[k].leading()?.0;
            if mono_wqo_leq(&basis.domain, lm_k, lm_i)?.is_some() {
                dominated = true;
                break;
            }
        }
        if !dominated {
            kept.push(i);
        }
    }
    let gens = kept
        .into_iter()
        .map(|i| basis.gens[i].monic())
        .collect::<Result<Vec<_>>>()?;
    Ok(Basis { domain: basis.domain.clone(), field: basis.field, gens })
}

/// Replays a certificate with exact arithmetic: every step must be a
/// genuine division step against `basis`, the replay must end in the
/// stated remainder, and the remainder must be reduced.
pub fn verify_certificate(basis: &Basis, f: &Polynomial, cert: &Certificate) -> bool {
    let mut cur = f.clone();
    for step in &cert.steps {
        let Some(g) = basis.gens.get(step.gen_index) else {
            return false;
        };
        let Ok((lm_g, lc_g)) = g.leading() else {
            return false;
        };
        if step.renaming.domain_set() != g.vars() {
            return false;
        }
        if !matches!(ca1_extends(&basis.domain, &step.renaming), Ok(true)) {
            return false;
        }
        if step.head != step.h.mul(&lm_g.rename_unchecked(&step.renaming)) {
            return false;
        }
        let expected = step.r.mul(lc_g);
        if expected.is_zero() {
            return false;
        }
        if cur.coeff_of(&step.head) != Some(&expected) {
            return false;
        }
        cur = cur.sub(&g.rename_unchecked(&step.renaming).mul_term(&step.h, &step.r));
    }
    if cur != cert.remainder {
        return false;
    }
    matches!(
        choose_division_step(&basis.domain, &basis.gens, &cert.remainder),
        Ok(None)
    )
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

    fn basis(gens: Vec<Polynomial>) -> Basis {
        Basis::new(omega(), Field::Q, gens).unwrap()
    }

    fn pmono(pairs: &[(u64, u64)]) -> Monomial {
        Monomial::from_degrees(pairs.iter().map(|&(v, d)| (nat(v), d)))
    }

    #[test]
    fn divide_step_follows_policy() {
        // f = x0*x1^2 - x1*x2 over {x0 - 1}: head x1*x2 via 0 -> 1
        let f = Polynomial::from_terms([
            (pmono(&[(0, 1), (1, 2)]), q(1)),
            (pmono(&[(1, 1), (2, 1)]), q(-1)),
        ]);
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let (step, next) = divide_step(&b, &f).unwrap().unwrap();
        assert_eq!(step.head, pmono(&[(1, 1), (2, 1)]));
        assert_eq!(step.renaming.get(&nat(0)), Some(&nat(1)));
        assert_eq!(step.r, q(-1));
        let want = Polynomial::from_terms([
            (pmono(&[(0, 1), (1, 2)]), q(1)),
            (pmono(&[(2, 1)]), q(-1)),
        ]);
        assert_eq!(next, want);
        // reduced polynomial: x0 over {x0^2 - 1}
        let b2 = basis(vec![Polynomial::term(Monomial::var_pow(nat(0), 2), q(1)).sub(&cst(1))]);
        assert!(divide_step(&b2, &xv(0)).unwrap().is_none());
        // zero has no monomials
        assert!(divide_step(&b, &Polynomial::zero()).unwrap().is_none());
    }

    #[test]
    fn reduce_example_to_zero() {
        let f = Polynomial::from_terms([
            (pmono(&[(0, 1), (1, 2)]), q(1)),
            (pmono(&[(1, 1), (2, 1)]), q(-1)),
        ]);
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let cert = reduce(&b, &f).unwrap();
        assert!(cert.remainder.is_zero());
        assert!(verify_certificate(&b, &f, &cert));
    }

    #[test]
    fn reduce_nonmember_leaves_constant() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let cert = reduce(&b, &xv(0).sub(&cst(2))).unwrap();
        assert_eq!(cert.remainder, cst(-1));
        assert!(verify_certificate(&b, &xv(0).sub(&cst(2)), &cert));
        // zero reduces to zero with no steps
        let z = reduce(&b, &Polynomial::zero()).unwrap();
        assert!(z.remainder.is_zero() && z.steps.is_empty());
    }

    #[test]
    fn spoly_examples() {
        // S(x0-1, x1-1) = x0 - x1, cancelling x0*x1
        let s = spoly(&xv(0).sub(&cst(1)), &xv(1).sub(&cst(1))).unwrap();
        assert_eq!(s, xv(0).sub(&xv(1)));
        // proportional polynomials cancel completely
        let f = xv(0).sub(&cst(1));
        let s = spoly(&f, &f.scale(&q(3))).unwrap();
        assert!(s.is_zero());
        assert!(spoly(&f, &f).is_err());
    }

    #[test]
    fn spoly_of_binomials_from_paper_pattern() {
        // f = x1^2 - x0*x2 and g = x3^2 - x2*x4 have leading monomials
        // x0*x2 and x2*x4 (largest differing variable decides), so the
        // cancelled monomial is x0*x2*x4.
        let f = Polynomial::from_terms([
            (pmono(&[(1, 2)]), q(1)),
            (pmono(&[(0, 1), (2, 1)]), q(-1)),
        ]);
        let g = Polynomial::from_terms([
            (pmono(&[(3, 2)]), q(1)),
            (pmono(&[(2, 1), (4, 1)]), q(-1)),
        ]);
        assert_eq!(*f.leading().unwrap().0, pmono(&[(0, 1), (2, 1)]));
        let s = spoly(&f, &g).unwrap();
        let want = Polynomial::from_terms([
            (pmono(&[(0, 1), (3, 2)]), q(1)),
            (pmono(&[(1, 2), (4, 1)]), q(-1)),
        ]);
        assert_eq!(s, want);
        assert!(s.coeff_of(&pmono(&[(0, 1), (2, 1), (4, 1)])).is_none());
    }

    #[test]
    fn pres_of_single_shift_generator() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let ps = pres(&b).unwrap();
        let want: BTreeSet<Polynomial> =
            [xv(0).sub(&xv(1)), xv(1).sub(&xv(0))].into_iter().collect();
        assert_eq!(ps.iter().cloned().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn pres_over_fin_excludes_identity_selfpair() {
        let d = DomainExpr::Fin(1);
        let g = Polynomial::term(Monomial::var(Element::Fin(0)), q(1)).sub(&cst(1));
        let b = Basis::new(d, Field::Q, vec![g]).unwrap();
        assert!(pres(&b).unwrap().is_empty());
    }

    #[test]
    fn buchberger_shift_ideal_is_already_groebner() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let (g, stats) = buchberger(&b).unwrap();
        assert_eq!(g.gens(), b.gens());
        assert!(stats.passes >= 1);
        // the empty basis stays empty
        let empty = basis(vec![]);
        let (g, _) = buchberger(&empty).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn member_accepts_and_rejects() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let f = Polynomial::from_terms([
            (pmono(&[(0, 1), (1, 2)]), q(1)),
            (pmono(&[(1, 1), (2, 1)]), q(-1)),
        ]);
        let yes = member(&b, &f).unwrap();
        assert!(yes.answer);
        assert!(verify_certificate(&yes.basis, &f, &yes.certificate));
        let no = member(&b, &xv(0).sub(&cst(2))).unwrap();
        assert!(!no.answer);
        // zero ideal: only the zero polynomial is a member
        let empty = basis(vec![]);
        assert!(member(&empty, &Polynomial::zero()).unwrap().answer);
        assert!(!member(&empty, &cst(1)).unwrap().answer);
    }

    #[test]
    fn member_rejects_rational_domains() {
        let b = Basis::new(DomainExpr::Rat, Field::Q, vec![]).unwrap();
        assert!(member(&b, &Polynomial::zero()).is_err());
    }

    #[test]
    fn autoreduce_examples() {
        let b = basis(vec![xv(0).sub(&cst(1)), xv(1).sub(&xv(0))]);
        let reduced = autoreduce(&b).unwrap();
        assert_eq!(reduced.gens(), &[xv(0).sub(&cst(1))]);
        // and the removed generator is a member of what remains
        assert!(member(&reduced, &xv(1).sub(&xv(0))).unwrap().answer);

        let single = basis(vec![xv(0).sub(&cst(1))]);
        assert_eq!(autoreduce(&single).unwrap().gens(), single.gens());

        let scaled = basis(vec![xv(0).scale(&q(2)).sub(&cst(2))]);
        assert_eq!(autoreduce(&scaled).unwrap().gens(), &[xv(0).sub(&cst(1))]);
    }

    #[test]
    fn tampered_certificates_fail() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let f = xv(0).sub(&cst(2));
        let mut cert = reduce(&b, &f).unwrap();
        assert!(verify_certificate(&b, &f, &cert));
        cert.steps[0].r = q(2);
        assert!(!verify_certificate(&b, &f, &cert));
        // empty-steps certificate: accepted exactly for reduced remainders
        let trivial = Certificate { steps: vec![], remainder: cst(-1) };
        assert!(verify_certificate(&b, &cst(-1), &trivial));
        let unreduced = Certificate { steps: vec![], remainder: xv(5) };
        assert!(!verify_certificate(&b, &xv(5), &unreduced));
    }

    #[test]
    fn member_expansion_reconstructs_input() {
        let b = basis(vec![xv(0).sub(&cst(1))]);
        let f = Polynomial::from_terms([
            (pmono(&[(0, 1), (1, 2)]), q(1)),
            (pmono(&[(1, 1), (2, 1)]), q(-1)),
        ]);
        let (m, exp) = member_with_expansion(&b, &f, EngineOptions::default()).unwrap();
        assert!(m.answer);
        let exp = exp.unwrap();
        assert_eq!(evaluate_expansion(&b, &exp), f);
    }

    #[test]
    fn expansion_tracks_through_added_generators() {
        // x1^2 - x0*x2 pattern: completion adds generators, and the
        // decomposition must still be over the original basis.
        let d = DomainExpr::Ord(2);
        let e = |c1: u64, c0: u64| Element::ord(&[c1, c0]);
        let g = Polynomial::from_terms([
            (Monomial::var_pow(e(0, 1), 2), q(1)),
            (
                Monomial::from_degrees([(e(0, 0), 1), (e(0, 2), 1)]),
                q(-1),
            ),
        ]);
        let b = Basis::new(d, Field::Q, vec![g]).unwrap();
        let f = Polynomial::from_terms([
            (
                Monomial::from_degrees([(e(1, 0), 1), (e(3, 0), 2)]),
                q(1),
            ),
            (Monomial::var_pow(e(2, 0), 3), q(-1)),
        ]);
        let (m, exp) = member_with_expansion(&b, &f, EngineOptions::default()).unwrap();
        assert!(m.answer);
        assert_eq!(evaluate_expansion(&b, &exp.unwrap()), f);
    }
}

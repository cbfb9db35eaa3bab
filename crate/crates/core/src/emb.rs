//! Local embeddings and the two computability primitives.
//!
//! A local embedding is a finite partial variable renaming that is the
//! restriction of some embedding of the domain. `ca1_extends` decides
//! whether a finite map is such a restriction; `ca2_presentation` computes
//! a finite presentation of all pairs of local embeddings of two finite
//! sets, up to post-composition with a common embedding; `extend_local`
//! grows a local embedding to a larger domain set deterministically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::domain::{DomainExpr, Element};
use crate::error::{Error, Result};
use crate::ordinal::{ord_add, ord_sub, Ordinal};

/// A finite map between domain elements, kept sorted by source.
///
/// Injectivity and order preservation are not enforced by construction;
/// they are exactly what `ca1_extends` checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LocalEmbedding {
    map: BTreeMap<Element, Element>,
}

impl LocalEmbedding {
    pub fn empty() -> Self {
        LocalEmbedding::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Element, Element)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::Domain(format!("duplicate source element {k}")));
            }
        }
        Ok(LocalEmbedding { map })
    }

    pub fn identity<'a>(dom: impl IntoIterator<Item = &'a Element>) -> Self {
        LocalEmbedding {
            map: dom.into_iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn get(&self, e: &Element) -> Option<&Element> {
        self.map.get(e)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Element> {
        self.map.keys()
    }

    pub fn range(&self) -> impl Iterator<Item = &Element> {
        self.map.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Element)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain_set(&self) -> BTreeSet<Element> {
        self.map.keys().cloned().collect()
    }

    pub fn is_injective(&self) -> bool {
        let values: BTreeSet<_> = self.map.values().collect();
        values.len() == self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn restrict<'a>(&self, dom: impl IntoIterator<Item = &'a Element>) -> Self {
        LocalEmbedding {
            map: dom
                .into_iter()
                .filter_map(|k| self.map.get(k).map(|v| (k.clone(), v.clone())))
                .collect(),
        }
    }
}

impl fmt::Display for LocalEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}->{v}")?;
        }
        write!(f, "}}")
    }
}

fn as_ordinal(e: &Element) -> &Ordinal {
    match e {
        Element::Ord(o) => o,
        _ => unreachable!("well-formedness checked before"),
    }
}

/// Splits a map over a lexicographic product into the induced map on first
/// coordinates and the per-fiber maps on second coordinates. Returns `None`
/// when the map does not preserve and reflect equality of first
/// coordinates (then it is not a restriction of any product embedding).
fn split_lex_map(
    p: &LocalEmbedding,
) -> Option<(LocalEmbedding, BTreeMap<Element, LocalEmbedding>)> {
    let mut first = BTreeMap::new();
    let mut fibers: BTreeMap<Element, BTreeMap<Element, Element>> = BTreeMap::new();
    for (k, v) in p.iter() {
        let (Element::Pair(ka, kb), Element::Pair(va, vb)) = (k, v) else {
            unreachable!("well-formedness checked before");
        };
        match first.get(ka.as_ref()) {
            None => {
                first.insert(ka.as_ref().clone(), va.as_ref().clone());
            }
            Some(prev) if prev == va.as_ref() => {}
            Some(_) => return None, // equal firsts mapped apart
        }
        fibers
            .entry(ka.as_ref().clone())
            .or_default()
            .insert(kb.as_ref().clone(), vb.as_ref().clone());
    }
    // Reflect equality: distinct firsts must stay distinct.
    let images: BTreeSet<_> = first.values().collect();
    if images.len() != first.len() {
        return None;
    }
    Some((
        LocalEmbedding { map: first },
        fibers
            .into_iter()
            .map(|(a, m)| (a, LocalEmbedding { map: m }))
            .collect(),
    ))
}

fn check_map_elements(d: &DomainExpr, p: &LocalEmbedding) -> Result<()> {
    for (k, v) in p.iter() {
        d.check_element(k)?;
        d.check_element(v)?;
    }
    Ok(())
}

/// Decides whether `p` is the restriction of some embedding of `d`.
///
/// For `ord[k]` the conditions are: the minimum does not decrease, strict
/// monotonicity, and for consecutive points the ordinal gap does not
/// shrink. For `fin[d]` only the identity embeds. For products the map
/// must preserve and reflect equality of first coordinates, the induced
/// first-coordinate map must extend in the left factor, and every fiber
/// map must extend in the right factor. Over `q` any strictly monotone
/// map extends, over `eq` any injective one.
pub fn ca1_extends(d: &DomainExpr, p: &LocalEmbedding) -> Result<bool> {
    check_map_elements(d, p)?;
    Ok(ca1_unchecked(d, p))
}

fn ca1_unchecked(d: &DomainExpr, p: &LocalEmbedding) -> bool {
    if !p.is_injective() {
        return false;
    }
    match d {
        DomainExpr::Ord(_) => {
            let pts: Vec<(&Ordinal, &Ordinal)> = p
                .iter()
                .map(|(k, v)| (as_ordinal(k), as_ordinal(v)))
                .collect();
            if pts.is_empty() {
                return true;
            }
            if pts[0].0 > pts[0].1 {
                return false; // min condition
            }
            for w in pts.windows(2) {
                let ((b1, v1), (b2, v2)) = (w[0], w[1]);
                if v2 <= v1 {
                    return false;
                }
                let gap = ord_sub(b2, b1).unwrap();
                let img_gap = ord_sub(v2, v1).unwrap();
                if gap > img_gap {
                    return false;
                }
            }
            true
        }
        DomainExpr::Fin(_) => p.is_identity(),
        DomainExpr::Lex(dl, dr) => match split_lex_map(p) {
            None => false,
            Some((first, fibers)) => {
                ca1_unchecked(dl, &first)
                    && fibers.values().all(|fiber| ca1_unchecked(dr, fiber))
            }
        },
        DomainExpr::Rat => {
            // Strict monotonicity; any such finite map extends since the
            // rational order is homogeneous.
            p.iter()
                .zip(p.iter().skip(1))
                .all(|((_, v1), (_, v2))| v1 < v2)
        }
        DomainExpr::Eq => true, // injective already checked
    }
}

/// Deterministic minimal extension of a local embedding to a superset `c`
/// of its domain. New points receive, in increasing order, the least value
/// compatible with being a restriction of an embedding.
pub fn extend_local(
    d: &DomainExpr,
    p: &LocalEmbedding,
    c: &BTreeSet<Element>,
) -> Result<LocalEmbedding> {
    for e in c {
        d.check_element(e)?;
    }
    if !p.domain().all(|k| c.contains(k)) {
        return Err(Error::Domain(
            "extension target does not contain the map's domain".into(),
        ));
    }
    if !ca1_extends(d, p)? {
        return Err(Error::Domain(
            "map is not a local embedding, cannot extend".into(),
        ));
    }
    extend_unchecked(d, p, c)
}

fn extend_unchecked(
    d: &DomainExpr,
    p: &LocalEmbedding,
    c: &BTreeSet<Element>,
) -> Result<LocalEmbedding> {
    match d {
        DomainExpr::Ord(_) => {
            let mut map = p.map.clone();
            for point in c {
                if map.contains_key(point) {
                    continue;
                }
                let pt = as_ordinal(point);
                let value = match map.range(..point.clone()).next_back() {
                    Some((prev, img)) => {
                        let gap = ord_sub(pt, as_ordinal(prev)).unwrap();
                        ord_add(as_ordinal(img), &gap).unwrap()
                    }
                    None => pt.clone(),
                };
                map.insert(point.clone(), Element::Ord(value));
            }
            Ok(LocalEmbedding { map })
        }
        DomainExpr::Fin(_) => {
            if !p.is_identity() {
                return Err(Error::Domain(
                    "only the identity embeds a finite chain".into(),
                ));
            }
            Ok(LocalEmbedding::identity(c.iter()))
        }
        DomainExpr::Lex(dl, dr) => {
            let (first, mut fibers) = split_lex_map(p).expect("checked by ca1");
            let mut first_targets: BTreeSet<Element> = BTreeSet::new();
            let mut fiber_targets: BTreeMap<Element, BTreeSet<Element>> = BTreeMap::new();
            for e in c {
                let Element::Pair(a, b) = e else { unreachable!() };
                first_targets.insert(a.as_ref().clone());
                fiber_targets
                    .entry(a.as_ref().clone())
                    .or_default()
                    .insert(b.as_ref().clone());
            }
            let first_ext = extend_unchecked(dl, &first, &first_targets)?;
            let mut map = BTreeMap::new();
            for (a, bs) in &fiber_targets {
                let fiber = fibers.remove(a).unwrap_or_default();
                let fiber_ext = extend_unchecked(dr, &fiber, bs)?;
                let fa = first_ext.get(a).unwrap().clone();
                for b in bs {
                    map.insert(
                        Element::pair(a.clone(), b.clone()),
                        Element::pair(fa.clone(), fiber_ext.get(b).unwrap().clone()),
                    );
                }
            }
            Ok(LocalEmbedding { map })
        }
        DomainExpr::Rat | DomainExpr::Eq => Err(Error::Domain(
            "deterministic extension is only defined over well-ordered domains".into(),
        )),
    }
}

/// Composition `outer ∘ inner` as a local embedding over `inner`'s domain.
/// `outer` is minimally extended wherever it misses a value of `inner`.
pub fn compose(
    d: &DomainExpr,
    outer: &LocalEmbedding,
    inner: &LocalEmbedding,
) -> Result<LocalEmbedding> {
    let mut needed = outer.domain_set();
    needed.extend(inner.range().cloned());
    let outer = extend_local(d, outer, &needed)?;
    LocalEmbedding::from_pairs(
        inner
            .iter()
            .map(|(k, v)| (k.clone(), outer.get(v).unwrap().clone())),
    )
}

/// A presentation of `embsetprod(B, B')`: a finite set of pairs of local
/// embeddings through which every pair of local embeddings of `B` and `B'`
/// factors via post-composition with a single embedding. Output is sorted
/// canonically.
pub fn ca2_presentation(
    d: &DomainExpr,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
) -> Result<Vec<(LocalEmbedding, LocalEmbedding)>> {
    for e in left.iter().chain(right.iter()) {
        d.check_element(e)?;
    }
    let mut out = ca2_unchecked(d, left, right)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn ca2_unchecked(
    d: &DomainExpr,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
) -> Result<Vec<(LocalEmbedding, LocalEmbedding)>> {
    match d {
        DomainExpr::Ord(k) => Ok(ca2_ordinal(*k, left, right)),
        DomainExpr::Fin(_) => Ok(vec![(
            LocalEmbedding::identity(left.iter()),
            LocalEmbedding::identity(right.iter()),
        )]),
        DomainExpr::Lex(dl, dr) => ca2_lex(dl, dr, left, right),
        DomainExpr::Rat | DomainExpr::Eq => Err(Error::Domain(
            "presentations are only computed over well-ordered domains".into(),
        )),
    }
}

/// Dynamic algorithm over pairs of initial segments of the two sets.
///
/// A cell holds image vectors for the two prefixes. Cells grow by three
/// procedures: extend both prefixes by their next points sharing one
/// minimal common value; or extend one prefix only, placing the new value
/// in every possible position relative to the partner's values, minimally
/// within each position and outside the partner's range.
fn ca2_ordinal(
    k: usize,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
) -> Vec<(LocalEmbedding, LocalEmbedding)> {
    let lpts: Vec<Ordinal> = left.iter().map(|e| as_ordinal(e).clone()).collect();
    let rpts: Vec<Ordinal> = right.iter().map(|e| as_ordinal(e).clone()).collect();
    type Cell = BTreeSet<(Vec<Ordinal>, Vec<Ordinal>)>;
    let mut table: Vec<Vec<Cell>> = vec![vec![Cell::new(); rpts.len() + 1]; lpts.len() + 1];
    table[0][0].insert((vec![], vec![]));

    // Least admissible value for appending `point` after the prefix
    // carrying `imgs`: predecessor image plus the ordinal gap, or the
    // point itself when the prefix is empty.
    let lower_bound = |pts: &[Ordinal], imgs: &[Ordinal], point: &Ordinal| -> Ordinal {
        match imgs.last() {
            Some(last_img) => {
                let gap = ord_sub(point, &pts[imgs.len() - 1]).unwrap();
                ord_add(last_img, &gap).unwrap()
            }
            None => point.clone(),
        }
    };

    // Minimal values >= lb realizing each possible position strictly
    // between, below or above the partner's (sorted) values.
    let slot_candidates = |lb: &Ordinal, partner: &[Ordinal]| -> Vec<Ordinal> {
        let one = Ordinal::finite(k, 1);
        let mut cands = vec![];
        if partner.is_empty() {
            return vec![lb.clone()];
        }
        if lb < &partner[0] {
            cands.push(lb.clone());
        }
        for w in partner.windows(2) {
            let v = std::cmp::max(lb.clone(), ord_add(&w[0], &one).unwrap());
            if v < w[1] {
                cands.push(v);
            }
        }
        let top = ord_add(partner.last().unwrap(), &one).unwrap();
        cands.push(std::cmp::max(lb.clone(), top));
        cands
    };

    for i in 0..=lpts.len() {
        for j in 0..=rpts.len() {
            if i == 0 && j == 0 {
                continue;
            }
            let mut cell = Cell::new();
            if i > 0 && j > 0 {
                for (li, ri) in &table[i - 1][j - 1] {
                    let v = std::cmp::max(
                        lower_bound(&lpts, li, &lpts[i - 1]),
                        lower_bound(&rpts, ri, &rpts[j - 1]),
                    );
                    let mut li = li.clone();
                    let mut ri = ri.clone();
                    li.push(v.clone());
                    ri.push(v);
                    cell.insert((li, ri));
                }
            }
            if i > 0 {
                for (li, ri) in &table[i - 1][j] {
                    let lb = lower_bound(&lpts, li, &lpts[i - 1]);
                    for v in slot_candidates(&lb, ri) {
                        let mut li = li.clone();
                        li.push(v);
                        cell.insert((li, ri.clone()));
                    }
                }
            }
            if j > 0 {
                for (li, ri) in &table[i][j - 1] {
                    let lb = lower_bound(&rpts, ri, &rpts[j - 1]);
                    for v in slot_candidates(&lb, li) {
                        let mut ri = ri.clone();
                        ri.push(v);
                        cell.insert((li.clone(), ri));
                    }
                }
            }
            table[i][j] = cell;
        }
    }

    let to_emb = |pts: &[Ordinal], imgs: &[Ordinal]| -> LocalEmbedding {
        LocalEmbedding {
            map: pts
                .iter()
                .zip(imgs)
                .map(|(p, v)| (Element::Ord(p.clone()), Element::Ord(v.clone())))
                .collect(),
        }
    };
    table[lpts.len()][rpts.len()]
        .iter()
        .map(|(li, ri)| (to_emb(&lpts, li), to_emb(&rpts, ri)))
        .collect()
}

/// Product case: a presentation of `embsetprod(V, W)` over `lex(dl, dr)`
/// is obtained by restricting a presentation over the rectangle `X x Y`,
/// where `X`, `Y` collect the first and second coordinates of `V ∪ W`.
/// Pairs over the rectangle combine a first-factor presentation pair with
/// an independent choice of a second-factor presentation pair on every
/// shared first-coordinate image.
fn ca2_lex(
    dl: &DomainExpr,
    dr: &DomainExpr,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
) -> Result<Vec<(LocalEmbedding, LocalEmbedding)>> {
    let mut xs: BTreeSet<Element> = BTreeSet::new();
    let mut ys: BTreeSet<Element> = BTreeSet::new();
    for e in left.iter().chain(right.iter()) {
        let Element::Pair(a, b) = e else { unreachable!() };
        xs.insert(a.as_ref().clone());
        ys.insert(b.as_ref().clone());
    }
    let first_pres = ca2_unchecked(dl, &xs, &xs)?;
    let second_pres = ca2_unchecked(dr, &ys, &ys)?;
    let id_y = LocalEmbedding::identity(ys.iter());

    let mut out = BTreeSet::new();
    for (s1, s2) in &first_pres {
        let shared: Vec<Element> = s1
            .range()
            .filter(|v| s2.range().any(|w| w == *v))
            .cloned()
            .collect();
        // One independent second-factor choice per shared image; images
        // hit by only one side always carry the identity on that side.
        let mut choices: Vec<BTreeMap<Element, (LocalEmbedding, LocalEmbedding)>> =
            vec![BTreeMap::new()];
        for a in &shared {
            let mut next = Vec::new();
            for partial in &choices {
                for t in &second_pres {
                    let mut m = partial.clone();
                    m.insert(a.clone(), t.clone());
                    next.push(m);
                }
            }
            choices = next;
        }
        for assignment in &choices {
            let build = |s: &LocalEmbedding, side: usize, set: &BTreeSet<Element>| {
                LocalEmbedding {
                    map: set
                        .iter()
                        .map(|e| {
                            let Element::Pair(a, b) = e else { unreachable!() };
                            let fa = s.get(a).unwrap().clone();
                            let fiber = match assignment.get(&fa) {
                                Some((t1, t2)) => {
                                    if side == 0 {
                                        t1
                                    } else {
                                        t2
                                    }
                                }
                                None => &id_y,
                            };
                            let fb = fiber.get(b).unwrap().clone();
                            (e.clone(), Element::pair(fa, fb))
                        })
                        .collect(),
                }
            };
            out.insert((build(s1, 0, left), build(s2, 1, right)));
        }
    }
    Ok(out.into_iter().collect())
}

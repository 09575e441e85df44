//! Finitely generated MFCE-relations with exact per-degree closure.
//!
//! A relation is stored as its homogeneous generator pairs. The closure restricted
//! to one degree is computed by multiplying every generator into that degree and
//! taking the transitive closure there; the multiplied pair set is already closed
//! under multiplication, so nothing outside the slice can add identifications.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::ambient::{Ambient, AmbientElement};
use crate::error::{Error, Result};
use crate::ghost::GhostValue;
use crate::monomial::Monomial;
use crate::union_find::UnionFind;

/// A generator of an MFCE-relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorPair {
    /// `Eq(z1, z2)`: identify two tangibles of equal degree.
    Identify(Monomial, Monomial),
    /// `Eq(z, ez)`: identify a tangible with its ghost.
    Ghostify(Monomial),
}

impl GeneratorPair {
    fn monomials(&self) -> Vec<&Monomial> {
        match self {
            GeneratorPair::Identify(a, b) => vec![a, b],
            GeneratorPair::Ghostify(z) => vec![z],
        }
    }

    fn lead(&self) -> &Monomial {
        match self {
            GeneratorPair::Identify(a, _) | GeneratorPair::Ghostify(a) => a,
        }
    }

    pub fn format(&self, ambient: &Ambient) -> String {
        match self {
            GeneratorPair::Identify(a, b) => {
                format!("{} = {}", ambient.format_monomial(a), ambient.format_monomial(b))
            }
            GeneratorPair::Ghostify(z) => {
                let z = ambient.format_monomial(z);
                format!("{z} = e*{z}")
            }
        }
    }
}

/// The partition of one degree of the ambient induced by a relation.
///
/// Class 0 is always the ghost class (it may contain no monomials).
#[derive(Clone)]
pub struct Slice {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    class: Vec<usize>,
    class_count: usize,
}

impl Slice {
    fn from_union_find(degree: u32, monomials: Vec<Monomial>, uf: &mut UnionFind) -> Slice {
        let ghost = monomials.len();
        let ghost_root = uf.find(ghost);
        let mut ids: HashMap<usize, usize> = HashMap::from([(ghost_root, 0)]);
        let mut class = Vec::with_capacity(monomials.len());
        for i in 0..monomials.len() {
            let root = uf.find(i);
            let next = ids.len();
            class.push(*ids.entry(root).or_insert(next));
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, z)| (z, i)).collect();
        Slice {
            degree,
            monomials,
            index,
            class,
            class_count: ids.len(),
        }
    }

    /// Slice whose classes are the fibers of `keys` (`None` meaning ghost).
    pub(crate) fn from_keys<K: Eq + Hash>(degree: u32, monomials: Vec<Monomial>, keys: &[Option<K>]) -> Slice {
        let ghost = monomials.len();
        let mut uf = UnionFind::new(ghost + 1);
        let mut first: HashMap<&K, usize> = HashMap::new();
        for (i, key) in keys.iter().enumerate() {
            match key {
                None => {
                    uf.union(i, ghost);
                }
                Some(k) => {
                    let j = *first.entry(k).or_insert(i);
                    uf.union(i, j);
                }
            }
        }
        Slice::from_union_find(degree, monomials, &mut uf)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The carrier: tangible monomials of this degree (within the exponent bound), sorted.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn contains(&self, z: &Monomial) -> bool {
        self.index.contains_key(z)
    }

    /// Class number of `z`; 0 means ghost.
    pub fn class_id(&self, z: &Monomial) -> Option<usize> {
        self.index.get(z).map(|&i| self.class[i])
    }

    pub fn is_ghost(&self, z: &Monomial) -> Option<bool> {
        self.class_id(z).map(|c| c == 0)
    }

    pub fn ghost_members(&self) -> Vec<Monomial> {
        self.members(0)
    }

    pub fn members(&self, class: usize) -> Vec<Monomial> {
        self.monomials
            .iter()
            .zip(&self.class)
            .filter(|(_, &c)| c == class)
            .map(|(z, _)| z.clone())
            .collect()
    }

    /// Tangible classes, each sorted, ordered by least member.
    pub fn tangible_classes(&self) -> Vec<Vec<Monomial>> {
        let mut classes = vec![Vec::new(); self.class_count];
        for (z, &c) in self.monomials.iter().zip(&self.class) {
            classes[c].push(z.clone());
        }
        classes.into_iter().skip(1).filter(|c| !c.is_empty()).collect()
    }

    pub fn all_ghost(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }

    /// True when every class is a tangible singleton.
    pub fn is_diagonal(&self) -> bool {
        self.class_count == self.monomials.len() + 1
    }

    /// Common refinement of two slices over the same carrier.
    pub fn meet(&self, other: &Slice) -> Result<Slice> {
        if self.monomials != other.monomials {
            return Err(Error::AmbientMismatch);
        }
        let n = self.monomials.len();
        let mut uf = UnionFind::new(n + 1);
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..n {
            let key = (self.class[i], other.class[i]);
            if key == (0, 0) {
                uf.union(i, n);
            } else if let Some(&j) = seen.get(&key) {
                uf.union(i, j);
            } else {
                seen.insert(key, i);
            }
        }
        Ok(Slice::from_union_find(self.degree, self.monomials.clone(), &mut uf))
    }
}

impl PartialEq for Slice {
    fn eq(&self, other: &Slice) -> bool {
        self.degree == other.degree && self.monomials == other.monomials && self.class == other.class
    }
}

impl Eq for Slice {}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Slice")
            .field("degree", &self.degree)
            .field("ghost", &self.ghost_members())
            .field("classes", &self.tangible_classes())
            .finish()
    }
}

struct RelationInner {
    ambient: Arc<Ambient>,
    pairs: Vec<GeneratorPair>,
    explicit_bound: Option<u32>,
    cache: RwLock<BTreeMap<u32, Arc<Slice>>>,
}

/// A finitely generated multiplicative fiber-conserving equivalence on an ambient.
///
/// Cloning is cheap and clones share the slice cache.
#[derive(Clone)]
pub struct MfceRelation {
    inner: Arc<RelationInner>,
}

impl fmt::Debug for MfceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amb = &self.inner.ambient;
        let pairs: Vec<String> = self.inner.pairs.iter().map(|p| p.format(amb)).collect();
        f.debug_struct("MfceRelation").field("pairs", &pairs).finish()
    }
}

impl MfceRelation {
    /// Validates and stores a generator set. Trivial pairs `Eq(z, z)` are dropped
    /// and duplicates removed.
    pub fn from_pairs(ambient: Arc<Ambient>, pairs: Vec<GeneratorPair>) -> Result<Self> {
        let mut kept = Vec::with_capacity(pairs.len());
        for pair in pairs {
            for z in pair.monomials() {
                if z.rank() != ambient.rank() {
                    return Err(Error::AmbientMismatch);
                }
                if !ambient.is_tangible(z) {
                    return Err(Error::NotTangible(ambient.format_monomial(z)));
                }
            }
            let pair = match pair {
                GeneratorPair::Identify(a, b) => {
                    let (da, db) = (ambient.degree(&a), ambient.degree(&b));
                    if da != db {
                        return Err(Error::DegreeMismatch {
                            left: ambient.format_monomial(&a),
                            left_degree: da,
                            right: ambient.format_monomial(&b),
                            right_degree: db,
                        });
                    }
                    match a.cmp(&b) {
                        std::cmp::Ordering::Equal => continue,
                        std::cmp::Ordering::Less => GeneratorPair::Identify(a, b),
                        std::cmp::Ordering::Greater => GeneratorPair::Identify(b, a),
                    }
                }
                ghost => ghost,
            };
            if !kept.contains(&pair) {
                kept.push(pair);
            }
        }
        Ok(MfceRelation {
            inner: Arc::new(RelationInner {
                ambient,
                pairs: kept,
                explicit_bound: None,
                cache: RwLock::new(BTreeMap::new()),
            }),
        })
    }

    pub fn diagonal(ambient: Arc<Ambient>) -> Self {
        MfceRelation::from_pairs(ambient, Vec::new()).expect("empty generator set is valid")
    }

    /// `Eq(z1, z2)`.
    pub fn equalizer(ambient: Arc<Ambient>, z1: Monomial, z2: Monomial) -> Result<Self> {
        MfceRelation::from_pairs(ambient, vec![GeneratorPair::Identify(z1, z2)])
    }

    /// `Eq(z, ez)`.
    pub fn ghost_equalizer(ambient: Arc<Ambient>, z: Monomial) -> Result<Self> {
        MfceRelation::from_pairs(ambient, vec![GeneratorPair::Ghostify(z)])
    }

    /// `Feq(S) = ⋁_{z ∈ S} Eq(z, ez)`, keeping every listed monomial as a generator.
    pub fn fiberwise_equalizer(ambient: Arc<Ambient>, set: &[Monomial]) -> Result<Self> {
        MfceRelation::from_pairs(ambient, set.iter().cloned().map(GeneratorPair::Ghostify).collect())
    }

    /// `Eq(S) = ⋁_{i<j} Eq(z_i, z_j)` for a set of equal-degree monomials.
    pub fn set_equalizer(ambient: Arc<Ambient>, set: &[Monomial]) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, a) in set.iter().enumerate() {
            for b in &set[i + 1..] {
                pairs.push(GeneratorPair::Identify(a.clone(), b.clone()));
            }
        }
        MfceRelation::from_pairs(ambient, pairs)
    }

    /// `E(𝔞)`: ghostify the ideal generated by `generators`, using only its minimal generators.
    pub fn ideal_compression(ambient: Arc<Ambient>, generators: &[Monomial]) -> Result<Self> {
        for z in generators {
            if !ambient.is_tangible(z) {
                return Err(Error::NotTangible(ambient.format_monomial(z)));
            }
        }
        let minimal = minimal_ideal_generators(&ambient, generators);
        MfceRelation::fiberwise_equalizer(ambient, &minimal)
    }

    /// Replaces the exponent bound used for weight-0 generators.
    pub fn with_exponent_bound(&self, bound: u32) -> Self {
        MfceRelation {
            inner: Arc::new(RelationInner {
                ambient: self.inner.ambient.clone(),
                pairs: self.inner.pairs.clone(),
                explicit_bound: Some(bound),
                cache: RwLock::new(BTreeMap::new()),
            }),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.inner.ambient
    }

    pub fn pairs(&self) -> &[GeneratorPair] {
        &self.inner.pairs
    }

    /// Exponent cap for weight-0 generators; `None` when the ambient has none.
    pub fn exponent_bound(&self) -> Option<u32> {
        if !self.inner.ambient.has_weightless_generator() {
            return None;
        }
        Some(self.inner.explicit_bound.unwrap_or_else(|| {
            let max = self
                .inner
                .pairs
                .iter()
                .flat_map(|p| p.monomials())
                .map(Monomial::max_exponent)
                .max()
                .unwrap_or(0);
            max + 2
        }))
    }

    pub fn explicit_exponent_bound(&self) -> Option<u32> {
        self.inner.explicit_bound
    }

    /// Largest degree among the generator pairs.
    pub fn max_pair_degree(&self) -> u32 {
        self.inner
            .pairs
            .iter()
            .map(|p| self.inner.ambient.degree(p.lead()))
            .max()
            .unwrap_or(0)
    }

    pub fn slice(&self, k: u32) -> Result<Arc<Slice>> {
        if let Some(s) = self.inner.cache.read().expect("slice cache poisoned").get(&k) {
            return Ok(s.clone());
        }
        let slice = Arc::new(closure_slice(
            &self.inner.ambient,
            &self.inner.pairs,
            k,
            self.exponent_bound(),
        )?);
        let mut cache = self.inner.cache.write().expect("slice cache poisoned");
        Ok(cache.entry(k).or_insert(slice).clone())
    }

    fn slice_of(&self, z: &Monomial) -> Result<Arc<Slice>> {
        let slice = self.slice(self.inner.ambient.degree(z))?;
        if !slice.contains(z) {
            return Err(self.out_of_bound(z));
        }
        Ok(slice)
    }

    fn out_of_bound(&self, z: &Monomial) -> Error {
        let amb = &self.inner.ambient;
        if !amb.is_tangible(z) {
            return Error::NotTangible(amb.format_monomial(z));
        }
        Error::OutOfBound {
            element: amb.format_monomial(z),
            reason: format!("exponent bound {}", self.exponent_bound().unwrap_or(0)),
        }
    }

    /// True when `z` is identified with its ghost.
    pub fn is_ghostified(&self, z: &Monomial) -> Result<bool> {
        Ok(self.slice_of(z)?.is_ghost(z) == Some(true))
    }

    pub fn related(&self, a: &AmbientElement, b: &AmbientElement) -> Result<bool> {
        let amb = &self.inner.ambient;
        if amb.nu(a) != amb.nu(b) {
            return Ok(false);
        }
        match (a, b) {
            (AmbientElement::Ghost(_), AmbientElement::Ghost(_)) => Ok(true),
            (AmbientElement::Tangible(z), AmbientElement::Ghost(g))
            | (AmbientElement::Ghost(g), AmbientElement::Tangible(z)) => {
                Ok(*g != GhostValue::Zero && self.is_ghostified(z)?)
            }
            (AmbientElement::Tangible(x), AmbientElement::Tangible(y)) => {
                let slice = self.slice_of(x)?;
                if !slice.contains(y) {
                    return Err(self.out_of_bound(y));
                }
                Ok(slice.class_id(x) == slice.class_id(y))
            }
        }
    }

    pub fn related_monomials(&self, a: &Monomial, b: &Monomial) -> Result<bool> {
        self.related(
            &AmbientElement::Tangible(a.clone()),
            &AmbientElement::Tangible(b.clone()),
        )
    }

    /// Whether a single generator pair lies in this relation.
    pub fn contains_pair(&self, pair: &GeneratorPair) -> Result<bool> {
        match pair {
            GeneratorPair::Identify(a, b) => self.related_monomials(a, b),
            GeneratorPair::Ghostify(z) => self.is_ghostified(z),
        }
    }

    /// Smallest MFCE-relation containing both.
    pub fn join(&self, other: &MfceRelation) -> Result<MfceRelation> {
        if self.inner.ambient != other.inner.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut pairs = self.inner.pairs.clone();
        pairs.extend(other.inner.pairs.iter().cloned());
        let joined = MfceRelation::from_pairs(self.inner.ambient.clone(), pairs)?;
        let explicit = self.inner.explicit_bound.is_some() || other.inner.explicit_bound.is_some();
        Ok(match self.exponent_bound().max(other.exponent_bound()) {
            Some(bound) if explicit => joined.with_exponent_bound(bound),
            _ => joined,
        })
    }

    pub fn join_all<'a>(
        ambient: Arc<Ambient>,
        relations: impl IntoIterator<Item = &'a MfceRelation>,
    ) -> Result<MfceRelation> {
        relations
            .into_iter()
            .try_fold(MfceRelation::diagonal(ambient), |acc, r| acc.join(r))
    }

    /// `self ⊆ other`: every generator of `self` is related under `other`.
    pub fn is_subrelation(&self, other: &MfceRelation) -> Result<bool> {
        if self.inner.ambient != other.inner.ambient {
            return Err(Error::AmbientMismatch);
        }
        for pair in &self.inner.pairs {
            if !other.contains_pair(pair)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as relations (mutual inclusion).
    pub fn equivalent(&self, other: &MfceRelation) -> Result<bool> {
        Ok(self.is_subrelation(other)? && other.is_subrelation(self)?)
    }

    /// Slice-by-slice equality for all degrees up to `max_degree`.
    pub fn same_slices(&self, other: &MfceRelation, max_degree: u32) -> Result<bool> {
        for k in 0..=max_degree {
            if self.slice(k)? != other.slice(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Builds the relation whose classes in each degree `≤ window_end` are the fibers of
    /// `classify` (`None` meaning ghost). Every monomial in the degrees
    /// `window_end + 1 − max_weight ..= window_end` must classify as ghost, so that
    /// all higher degrees are ghost as well. Fails if the classes are not those of an
    /// MFCE-relation.
    pub fn from_classifier<K, F>(ambient: Arc<Ambient>, window_end: u32, mut classify: F) -> Result<MfceRelation>
    where
        K: Eq + Hash,
        F: FnMut(&Monomial) -> Result<Option<K>>,
    {
        if ambient.has_weightless_generator() || ambient.max_weight() == 0 {
            return Err(Error::Precondition(
                "classifier relations need positive generator weights".into(),
            ));
        }
        let top_window = window_end + 1 - ambient.max_weight().min(window_end + 1);
        let mut pairs: Vec<GeneratorPair> = Vec::new();
        let mut expected: Vec<(u32, Vec<Option<K>>)> = Vec::new();
        for k in 0..=window_end {
            let monomials = ambient.monomials_of_degree(k, None)?;
            let keys = monomials.iter().map(&mut classify).collect::<Result<Vec<_>>>()?;
            if k >= top_window {
                if let Some(i) = keys.iter().position(Option::is_some) {
                    return Err(Error::Precondition(format!(
                        "`{}` is tangible in degree {k}, inside the closing window",
                        ambient.format_monomial(&monomials[i])
                    )));
                }
            }
            let (monos, mut uf) = closure_union_find(&ambient, &pairs, k, None)?;
            let ghost = monos.len();
            let mut first: HashMap<&K, usize> = HashMap::new();
            for (i, key) in keys.iter().enumerate() {
                match key {
                    None => {
                        if uf.union(i, ghost) {
                            pairs.push(GeneratorPair::Ghostify(monos[i].clone()));
                        }
                    }
                    Some(key) => match first.get(key) {
                        Some(&j) => {
                            if uf.union(i, j) {
                                pairs.push(GeneratorPair::Identify(monos[j].clone(), monos[i].clone()));
                            }
                        }
                        None => {
                            first.insert(key, i);
                        }
                    },
                }
            }
            expected.push((k, keys));
        }
        let relation = MfceRelation::from_pairs(ambient, pairs)?;
        for (k, keys) in expected {
            let slice = relation.slice(k)?;
            let mut seen: HashMap<&K, usize> = HashMap::new();
            for (z, key) in slice.monomials().iter().zip(&keys) {
                let class = slice.class_id(z).expect("carrier member");
                let consistent = match key {
                    None => class == 0,
                    Some(key) => class != 0 && *seen.entry(key).or_insert(class) == class,
                };
                if !consistent {
                    return Err(Error::InvalidRelation(format!(
                        "classes are not multiplicative at `{}`",
                        relation.ambient().format_monomial(z)
                    )));
                }
            }
            let distinct = seen.len();
            if distinct != slice.tangible_classes().len() {
                return Err(Error::InvalidRelation(format!(
                    "classes in degree {k} are not multiplicative"
                )));
            }
        }
        Ok(relation)
    }
}

/// Minimal generators of the ideal generated by `generators` (mode-aware divisibility).
pub fn minimal_ideal_generators(ambient: &Ambient, generators: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = generators.to_vec();
    sorted.sort();
    sorted.dedup();
    let divides_in_mode = |g: &Monomial, z: &Monomial| z.checked_div(g).is_some_and(|q| ambient.is_tangible(&q));
    sorted
        .iter()
        .filter(|z| !sorted.iter().any(|g| g != *z && divides_in_mode(g, z)))
        .cloned()
        .collect()
}

fn closure_union_find(
    ambient: &Ambient,
    pairs: &[GeneratorPair],
    k: u32,
    bound: Option<u32>,
) -> Result<(Vec<Monomial>, UnionFind)> {
    let monomials = ambient.monomials_of_degree(k, bound)?;
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let ghost = monomials.len();
    let mut uf = UnionFind::new(ghost + 1);
    let mut multipliers: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for pair in pairs {
        let d = ambient.degree(pair.lead());
        if d > k {
            continue;
        }
        if let std::collections::hash_map::Entry::Vacant(e) = multipliers.entry(k - d) {
            e.insert(ambient.monomials_of_degree(k - d, bound)?);
        }
        for w in &multipliers[&(k - d)] {
            match pair {
                GeneratorPair::Identify(p, q) => {
                    if let (Some(&i), Some(&j)) = (index.get(&p.mul(w)), index.get(&q.mul(w))) {
                        uf.union(i, j);
                    }
                }
                GeneratorPair::Ghostify(z) => {
                    if let Some(&i) = index.get(&z.mul(w)) {
                        uf.union(i, ghost);
                    }
                }
            }
        }
    }
    Ok((monomials, uf))
}

/// Exact partition of degree `k` under the closure of `pairs`.
pub fn closure_slice(ambient: &Ambient, pairs: &[GeneratorPair], k: u32, bound: Option<u32>) -> Result<Slice> {
    let (monomials, mut uf) = closure_union_find(ambient, pairs, k, bound)?;
    Ok(Slice::from_union_find(k, monomials, &mut uf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{AmbientMode, Generator};

    fn x1x2() -> Arc<Ambient> {
        Arc::new(Ambient::uniform(&["x1", "x2"]).unwrap())
    }

    fn mono(a: &Ambient, s: &str) -> Monomial {
        a.parse_monomial(s).unwrap()
    }

    #[test]
    fn equalizer_slice_in_degree_three() {
        let a = x1x2();
        let e = MfceRelation::equalizer(a.clone(), mono(&a, "x1^2"), mono(&a, "x1*x2")).unwrap();
        let s = e.slice(3).unwrap();
        assert_eq!(
            s.tangible_classes(),
            vec![
                vec![mono(&a, "x1^3"), mono(&a, "x1^2*x2"), mono(&a, "x1*x2^2")],
                vec![mono(&a, "x2^3")]
            ]
        );
        assert!(s.ghost_members().is_empty());
        assert!(e.related_monomials(&mono(&a, "x1^3"), &mono(&a, "x1*x2^2")).unwrap());
    }

    #[test]
    fn ghost_equalizer_propagates() {
        let a = Arc::new(Ambient::uniform(&["x"]).unwrap());
        let e = MfceRelation::ghost_equalizer(a.clone(), mono(&a, "x")).unwrap();
        assert!(e.slice(2).unwrap().all_ghost());
        assert!(e
            .related(
                &AmbientElement::Tangible(mono(&a, "x^2")),
                &AmbientElement::Ghost(GhostValue::Power(2))
            )
            .unwrap());
        assert!(!e
            .related(
                &AmbientElement::Tangible(mono(&a, "x^2")),
                &AmbientElement::Ghost(GhostValue::Power(3))
            )
            .unwrap());
        assert!(MfceRelation::diagonal(a).slice(4).unwrap().is_diagonal());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let a = x1x2();
        assert!(matches!(
            MfceRelation::equalizer(a.clone(), mono(&a, "x1"), mono(&a, "x1*x2")),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn ideal_compression_keeps_minimal_generators() {
        let a =
            Arc::new(Ambient::new(vec![Generator::new("u", 0), Generator::new("x", 1)], AmbientMode::Full).unwrap());
        let ideal: Vec<Monomial> = ["u^4", "u^3*x", "u^2*x^2", "u*x^3", "x^4", "u^5", "u^4*x"]
            .iter()
            .map(|s| mono(&a, s))
            .collect();
        let e = MfceRelation::ideal_compression(a.clone(), &ideal).unwrap();
        assert_eq!(e.pairs().len(), 5);
        assert_eq!(e.exponent_bound(), Some(6));
    }

    #[test]
    fn joins_and_inclusions() {
        let a = x1x2();
        let big = MfceRelation::equalizer(a.clone(), mono(&a, "x1^2"), mono(&a, "x1*x2")).unwrap();
        let small = MfceRelation::equalizer(a.clone(), mono(&a, "x1^3"), mono(&a, "x1^2*x2")).unwrap();
        assert!(big.join(&small).unwrap().same_slices(&big, 6).unwrap());
        assert!(small.is_subrelation(&big).unwrap());
        assert!(!big.is_subrelation(&small).unwrap());
        assert!(big.is_subrelation(&big).unwrap());
        let g = MfceRelation::ghost_equalizer(a.clone(), mono(&a, "x1^2")).unwrap();
        let d = MfceRelation::diagonal(a.clone());
        assert!(g.join(&d).unwrap().equivalent(&g).unwrap());
    }

    #[test]
    fn divisor_relation_ghostifies_powers() {
        let a = Arc::new(Ambient::uniform(&["t1", "t2"]).unwrap());
        let e = MfceRelation::fiberwise_equalizer(a.clone(), &[mono(&a, "t1^3"), mono(&a, "t2^2")]).unwrap();
        assert!(e.is_ghostified(&mono(&a, "t1^3")).unwrap());
        assert!(e.is_ghostified(&mono(&a, "t2^2")).unwrap());
        assert!(!e.is_ghostified(&mono(&a, "t1^2*t2")).unwrap());
    }

    #[test]
    fn slice_meet_refines() {
        let a = x1x2();
        let e1 = MfceRelation::equalizer(a.clone(), mono(&a, "x1^2"), mono(&a, "x1*x2")).unwrap();
        let e2 = MfceRelation::equalizer(a.clone(), mono(&a, "x1*x2"), mono(&a, "x2^2")).unwrap();
        let m = e1.slice(2).unwrap().meet(&e2.slice(2).unwrap()).unwrap();
        assert!(m.is_diagonal());
    }

    #[test]
    fn classifier_recovers_kernel() {
        let a = x1x2();
        // collapse x1 and x2 to one letter truncated at degree 3
        let r = MfceRelation::from_classifier(a.clone(), 3, |z| {
            let d = z.total_degree();
            Ok((d < 3).then_some(d))
        })
        .unwrap();
        assert!(r.related_monomials(&mono(&a, "x1"), &mono(&a, "x2")).unwrap());
        assert!(r.is_ghostified(&mono(&a, "x1^3")).unwrap());
        let bad = MfceRelation::from_classifier(a.clone(), 2, |z| Ok((z.total_degree() < 2).then(|| z.clone())));
        assert!(bad.is_ok());
        let not_mult = MfceRelation::from_classifier(a, 3, |z| {
            let d = z.total_degree();
            Ok((d < 3).then(|| if d == 1 { 0 } else { z.exponent(0) + 10 }))
        });
        assert!(matches!(not_mult, Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn relations_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<MfceRelation>();
        check::<Slice>();
    }
}

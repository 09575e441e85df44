//! Covers W = 𝔄/E_W of a tangibly finite U (E_W ⊆ E_U), compared by relation inclusion.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::partition::{all_partitions, common_refinement, is_partition_of, normalize, refines};
use crate::quotients::{QuotientElement, QuotientPresentation};
use crate::relations::{GeneratorPair, MfceRelation, Slice};

/// A cover of `base`. `interval_form` is the partition of T_U cut out by E_W when
/// Ẽ_U ⊆ E_W.
#[derive(Clone, Debug)]
pub struct CoverHandle {
    base: QuotientPresentation,
    relation: MfceRelation,
    interval_form: Option<Vec<Vec<Monomial>>>,
}

pub(crate) fn require_base(base: &QuotientPresentation) -> Result<()> {
    base.require_finite()?;
    if !base.ambient().all_unit_weights() {
        return Err(Error::Precondition("covers need unit-weight generators".into()));
    }
    if !base.properties()?.hold() {
        return Err(Error::Precondition("the monoid lacks properties (A) and (B)".into()));
    }
    Ok(())
}

/// Ẽ_U: ghostify G_U, keep every monomial of T_U apart.
pub fn tilde_relation(base: &QuotientPresentation) -> Result<MfceRelation> {
    let finite = base.require_finite()?;
    MfceRelation::ideal_compression(base.ambient().clone(), finite.ghost_generators())
}

fn chain_pairs(blocks: &[Vec<Monomial>]) -> Vec<GeneratorPair> {
    blocks
        .iter()
        .flat_map(|b| {
            b.windows(2)
                .map(|w| GeneratorPair::Identify(w[0].clone(), w[1].clone()))
        })
        .collect()
}

impl CoverHandle {
    pub fn new(base: &QuotientPresentation, relation: MfceRelation) -> Result<Self> {
        require_base(base)?;
        if relation.ambient() != base.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if !relation.is_subrelation(base.relation())? {
            return Err(Error::Precondition("relation is not contained in E_U".into()));
        }
        let finite = base.require_finite()?;
        let interval_form = if tilde_relation(base)?.is_subrelation(&relation)? {
            let mut blocks = Vec::new();
            for k in 0..finite.max_degree() {
                let slice = relation.slice(k)?;
                blocks.extend(slice.tangible_classes());
            }
            Some(normalize(&blocks))
        } else {
            None
        };
        Ok(CoverHandle {
            base: base.clone(),
            relation,
            interval_form,
        })
    }

    /// The interval cover Ẽ_U ∨ Q for a multiplicative partition Q of T_U refining P_U.
    pub fn from_interval(base: &QuotientPresentation, partition: &[Vec<Monomial>]) -> Result<Self> {
        require_base(base)?;
        let finite = base.require_finite()?;
        let q = normalize(partition);
        if !is_partition_of(&q, finite.tangibles()) {
            return Err(Error::InvalidRelation("not a partition of T_U".into()));
        }
        if !refines(&q, finite.blocks()) {
            return Err(Error::InvalidRelation("partition does not refine P_U".into()));
        }
        if !is_multiplicative_partition(base, &q) {
            return Err(Error::InvalidRelation("partition is not multiplicative".into()));
        }
        let mut pairs = tilde_relation(base)?.pairs().to_vec();
        pairs.extend(chain_pairs(&q));
        let relation = MfceRelation::from_pairs(base.ambient().clone(), pairs)?;
        Ok(CoverHandle {
            base: base.clone(),
            relation,
            interval_form: Some(q),
        })
    }

    pub fn base(&self) -> &QuotientPresentation {
        &self.base
    }

    pub fn relation(&self) -> &MfceRelation {
        &self.relation
    }

    pub fn interval_form(&self) -> Option<&[Vec<Monomial>]> {
        self.interval_form.as_deref()
    }

    fn same_base(&self, other: &CoverHandle) -> Result<()> {
        if self.base.ambient() != other.base.ambient() || !self.base.relation().equivalent(other.base.relation())? {
            return Err(Error::Precondition("covers of different monoids".into()));
        }
        Ok(())
    }

    /// E_self ⊆ E_other.
    pub fn leq(&self, other: &CoverHandle) -> Result<bool> {
        self.same_base(other)?;
        self.relation.is_subrelation(&other.relation)
    }

    pub fn equivalent(&self, other: &CoverHandle) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    pub fn join(&self, other: &CoverHandle) -> Result<CoverHandle> {
        self.same_base(other)?;
        CoverHandle::new(&self.base, self.relation.join(&other.relation)?)
    }

    /// Relation intersection, available inside the interval [Ẽ_U, E_U].
    pub fn meet(&self, other: &CoverHandle) -> Result<CoverHandle> {
        self.same_base(other)?;
        match (&self.interval_form, &other.interval_form) {
            (Some(a), Some(b)) => CoverHandle::from_interval(&self.base, &common_refinement(&[a.clone(), b.clone()])),
            _ => Err(Error::Precondition(
                "meet is only available between interval covers".into(),
            )),
        }
    }

    fn slice_of(&self, z: &Monomial) -> Result<Arc<Slice>> {
        self.relation.slice(self.base.ambient().degree(z))
    }

    /// True when the class of `z` in W is the tangible singleton {z}.
    pub fn is_singleton(&self, z: &Monomial) -> Result<bool> {
        let slice = self.slice_of(z)?;
        Ok(match slice.class_id(z) {
            Some(id) if slice.is_ghost(z) == Some(false) => slice.members(id).len() == 1,
            _ => false,
        })
    }

    /// Partition of `set` by the classes of W.
    pub fn induced_partition(&self, set: &[Monomial]) -> Result<Vec<Vec<Monomial>>> {
        let mut classes: BTreeMap<(u32, usize), Vec<Monomial>> = BTreeMap::new();
        for z in set {
            let k = self.base.ambient().degree(z);
            let id = self.relation.slice(k)?.class_id(z).ok_or_else(|| Error::OutOfBound {
                element: self.base.format_monomial(z),
                reason: "not in its slice".into(),
            })?;
            classes.entry((k, id)).or_default().push(z.clone());
        }
        Ok(normalize(&classes.into_values().collect::<Vec<_>>()))
    }

    /// Whether W splits none of the fibers of `zetas`.
    pub fn is_alien(&self, zetas: &[QuotientElement]) -> Result<bool> {
        for z in fibers(&self.base, zetas)? {
            if self.is_singleton(&z)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn has_uf(&self) -> Result<bool> {
        Ok(self
            .interval_form
            .as_ref()
            .is_some_and(|q| q.iter().all(|b| b.len() == 1)))
    }
}

/// Every Q-block multiplied by a generator lands in one Q-block or leaves T_U.
pub fn is_multiplicative_partition(base: &QuotientPresentation, q: &[Vec<Monomial>]) -> bool {
    let amb = base.ambient();
    let owner: BTreeMap<&Monomial, usize> = q
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |z| (z, i)))
        .collect();
    q.iter().all(|block| {
        (0..amb.rank()).all(|i| {
            let g = amb.generator(i);
            let first = owner.get(&block[0].mul(&g)).copied();
            block[1..].iter().all(|z| owner.get(&z.mul(&g)).copied() == first)
        })
    })
}

fn fibers(base: &QuotientPresentation, zetas: &[QuotientElement]) -> Result<Vec<Monomial>> {
    let mut out = BTreeSet::new();
    for zeta in zetas {
        out.extend(base.fiber_of(zeta)?);
    }
    Ok(out.into_iter().collect())
}

/// Ũ and the slice-level view of U′, with the checks of their lattice relations.
#[derive(Clone, Debug)]
pub struct UfReport {
    pub has_uf: bool,
    pub tilde: CoverHandle,
    pub prime: PrimeCover,
}

/// E′_U: identify monomials in the same tangible class of U, nothing else.
/// Not multiplicative in general, so it is kept as per-degree partitions.
#[derive(Clone, Debug)]
pub struct PrimeCover {
    base: QuotientPresentation,
}

impl PrimeCover {
    pub fn slice(&self, k: u32) -> Result<Slice> {
        let finite = self.base.require_finite()?;
        let monomials = self.base.ambient().monomials_of_degree(k, None)?;
        let offset = finite.blocks().len();
        let keys: Vec<Option<usize>> = monomials
            .iter()
            .enumerate()
            .map(|(i, z)| Some(finite.block_index(z).unwrap_or(offset + i)))
            .collect();
        Ok(Slice::from_keys(k, monomials, &keys))
    }

    /// The MFCE-relation generated by E′_U.
    pub fn generated(&self) -> Result<MfceRelation> {
        let finite = self.base.require_finite()?;
        MfceRelation::from_pairs(self.base.ambient().clone(), chain_pairs(finite.blocks()))
    }

    /// Whether E′_U is itself multiplicative (compared up to degree `D`).
    pub fn is_multiplicative(&self) -> Result<bool> {
        let generated = self.generated()?;
        for k in 0..=self.base.require_finite()?.max_degree() {
            if generated.slice(k)?.as_ref() != &self.slice(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ẽ_U ∪ E′_U = E_U and Ẽ_U ∩ E′_U = diagonal, slice by slice up to degree D.
    pub fn check_decomposition(&self, tilde: &MfceRelation) -> Result<bool> {
        let d = self.base.require_finite()?.max_degree();
        for k in 0..=d {
            let u = self.base.relation().slice(k)?;
            let t = tilde.slice(k)?;
            let p = self.slice(k)?;
            if !t.meet(&p)?.is_diagonal() {
                return Ok(false);
            }
            let ms = u.monomials();
            for (i, a) in ms.iter().enumerate() {
                for b in &ms[i + 1..] {
                    let in_u = u.class_id(a) == u.class_id(b);
                    let in_union = t.class_id(a) == t.class_id(b) || p.class_id(a) == p.class_id(b);
                    if in_u != in_union {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn uf_and_covers(base: &QuotientPresentation) -> Result<UfReport> {
    require_base(base)?;
    Ok(UfReport {
        has_uf: base.has_uf(),
        tilde: CoverHandle::new(base, tilde_relation(base)?)?,
        prime: PrimeCover { base: base.clone() },
    })
}

/// Outcome of testing a triple (z1, u, z2).
#[derive(Clone, Debug)]
pub struct Confluence {
    pub confluent: bool,
    /// π_U(z1·u).
    pub zeta: QuotientElement,
    /// Con(z1, u, z2) = 𝔄/Eq(z1u, z2u), when confluent.
    pub cover: Option<CoverHandle>,
    /// Divisor-minimal v | u with (z1, v, z2) confluent.
    pub minimal_initial: Vec<Monomial>,
    /// The least initial divisor, when it is unique.
    pub u0: Option<Monomial>,
}

fn is_confluent(base: &QuotientPresentation, z1: &Monomial, v: &Monomial, z2: &Monomial) -> Result<bool> {
    let a = base.project(&z1.mul(v))?;
    Ok(a.is_tangible() && a == base.project(&z2.mul(v))?)
}

pub fn confluence(base: &QuotientPresentation, z1: &Monomial, u: &Monomial, z2: &Monomial) -> Result<Confluence> {
    require_base(base)?;
    let amb = base.ambient();
    let (d1, d2) = (amb.degree(z1), amb.degree(z2));
    if d1 != d2 {
        return Err(Error::DegreeMismatch {
            left: amb.format_monomial(z1),
            left_degree: d1,
            right: amb.format_monomial(z2),
            right_degree: d2,
        });
    }
    if z1 == z2 {
        return Err(Error::Precondition("a confluence needs z1 ≠ z2".into()));
    }
    let confluent = is_confluent(base, z1, u, z2)?;
    let zeta = base.project(&z1.mul(u))?;
    if !confluent {
        return Ok(Confluence {
            confluent,
            zeta,
            cover: None,
            minimal_initial: Vec::new(),
            u0: None,
        });
    }
    let relation = MfceRelation::equalizer(amb.clone(), z1.mul(u), z2.mul(u))?;
    let cover = CoverHandle::new(base, relation)?;
    let mut confluent_divisors = Vec::new();
    for v in u.divisors() {
        if is_confluent(base, z1, &v, z2)? {
            confluent_divisors.push(v);
        }
    }
    let minimal_initial: Vec<Monomial> = confluent_divisors
        .iter()
        .filter(|v| !confluent_divisors.iter().any(|w| w != *v && w.divides(v)))
        .cloned()
        .collect();
    let u0 = (minimal_initial.len() == 1).then(|| minimal_initial[0].clone());
    Ok(Confluence {
        confluent,
        zeta,
        cover: Some(cover),
        minimal_initial,
        u0,
    })
}

/// U_Z = 𝔄/⋁ Eq(z_i, z_j) over the pairs inside each fiber.
pub fn alien_core(base: &QuotientPresentation, zetas: &[QuotientElement]) -> Result<CoverHandle> {
    require_base(base)?;
    let amb = base.ambient().clone();
    let mut relations = Vec::new();
    for zeta in zetas {
        let fiber = base.fiber_of(zeta)?;
        if fiber.len() < 2 {
            return Err(Error::NoAlienCover(format!(
                "the fiber of `{}` is a single monomial",
                base.format_element(zeta)
            )));
        }
        relations.push(MfceRelation::set_equalizer(amb.clone(), &fiber)?);
    }
    CoverHandle::new(base, MfceRelation::join_all(amb, &relations)?)
}

/// Whether W ∨ U_Z (relation intersection) is still alien to Z, checked on the fibers.
pub fn alien_meet_stays_alien(w: &CoverHandle, zetas: &[QuotientElement]) -> Result<bool> {
    let core = alien_core(w.base(), zetas)?;
    for z in fibers(w.base(), zetas)? {
        let k = w.base().ambient().degree(&z);
        let meet = w.relation().slice(k)?.meet(core.relation().slice(k)?.as_ref())?;
        let id = meet.class_id(&z).expect("fiber monomial lies in its slice");
        if meet.is_ghost(&z) == Some(false) && meet.members(id).len() == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cover W_S of a set S inside the fibers of Z.
#[derive(Clone, Debug)]
pub struct WsCover {
    pub set: Vec<Monomial>,
    /// Fiber monomials that stay singletons under E*.
    pub singletons: Vec<Monomial>,
    pub in_psigma: bool,
    pub cover: CoverHandle,
}

/// E* = Ẽ_U joined with every pair inside a P_U block whose equalizer leaves S alone.
pub fn w_s_cover(base: &QuotientPresentation, zetas: &[QuotientElement], set: &[Monomial]) -> Result<WsCover> {
    require_base(base)?;
    let universe = fibers(base, zetas)?;
    let mut s: Vec<Monomial> = set.to_vec();
    s.sort();
    s.dedup();
    if let Some(z) = s.iter().find(|z| universe.binary_search(z).is_err()) {
        return Err(Error::Precondition(format!(
            "`{}` is not in the fibers",
            base.format_monomial(z)
        )));
    }
    let cover = e_star(base, &s)?;
    let mut singletons = Vec::new();
    for z in &universe {
        if cover.is_singleton(z)? {
            singletons.push(z.clone());
        }
    }
    Ok(WsCover {
        in_psigma: singletons == s,
        set: s,
        singletons,
        cover,
    })
}

fn e_star(base: &QuotientPresentation, s: &[Monomial]) -> Result<CoverHandle> {
    let finite = base.require_finite()?;
    let allowed: Vec<Vec<Monomial>> = finite
        .blocks()
        .iter()
        .map(|b| b.iter().filter(|a| !s.iter().any(|t| a.divides(t))).cloned().collect())
        .collect();
    let mut pairs = tilde_relation(base)?.pairs().to_vec();
    pairs.extend(chain_pairs(&allowed));
    CoverHandle::new(base, MfceRelation::from_pairs(base.ambient().clone(), pairs)?)
}

/// PΣ_U(Z), ordered by size then lexicographically.
#[derive(Clone, Debug)]
pub struct PSigmaFamily {
    pub universe: Vec<Monomial>,
    pub members: Vec<Vec<Monomial>>,
    pub least: Vec<Monomial>,
    pub closed_under_intersection: bool,
}

pub const DEFAULT_FIBER_LIMIT: usize = 12;

pub fn psigma_family(base: &QuotientPresentation, zetas: &[QuotientElement], limit: usize) -> Result<PSigmaFamily> {
    require_base(base)?;
    let universe = fibers(base, zetas)?;
    let n = universe.len();
    if n > limit {
        return Err(Error::LimitExceeded(format!("{n} fiber monomials, limit {limit}")));
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), (0..n).map(|i| m & (1 << i) == 0).collect::<Vec<_>>()));
    let subset = |m: u32| -> Vec<Monomial> {
        (0..n)
            .filter(|i| m & (1 << i) != 0)
            .map(|i| universe[i].clone())
            .collect()
    };
    let mut member_masks = Vec::new();
    for m in masks {
        if w_s_cover(base, zetas, &subset(m))?.in_psigma {
            member_masks.push(m);
        }
    }
    let closed = member_masks
        .iter()
        .all(|a| member_masks.iter().all(|b| member_masks.contains(&(a & b))));
    let least = member_masks.iter().fold(u32::MAX >> (32 - n.max(1)), |acc, m| acc & m);
    let least = if n == 0 { Vec::new() } else { subset(least) };
    let members = member_masks.into_iter().map(subset).collect();
    Ok(PSigmaFamily {
        universe,
        members,
        least,
        closed_under_intersection: closed,
    })
}

/// A partition of the fiber of `zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPartition {
    pub zeta: QuotientElement,
    pub blocks: Vec<Vec<Monomial>>,
}

impl FiberPartition {
    pub fn new(base: &QuotientPresentation, zeta: QuotientElement, blocks: Vec<Vec<Monomial>>) -> Result<Self> {
        let fiber = base.fiber_of(&zeta)?;
        let blocks = normalize(&blocks);
        if !is_partition_of(&blocks, &fiber) || blocks.iter().map(Vec::len).sum::<usize>() != fiber.len() {
            return Err(Error::Precondition("blocks do not partition the fiber".into()));
        }
        Ok(FiberPartition { zeta, blocks })
    }
}

/// How a cover treats the blocks of a fiber partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adaptation {
    /// Each block goes to a single tangible.
    pub collapses: bool,
    /// Distinct blocks go to distinct tangibles, so the block is the whole W-fiber.
    pub separates: bool,
}

impl Adaptation {
    pub fn adapted(&self) -> bool {
        self.collapses && self.separates
    }
}

pub fn adaptation(w: &CoverHandle, partition: &FiberPartition) -> Result<Adaptation> {
    let fiber: Vec<Monomial> = partition.blocks.iter().flatten().cloned().collect();
    let induced = w.induced_partition(&fiber)?;
    let mut collapses = true;
    for b in &partition.blocks {
        let slice = w.relation().slice(w.base().ambient().degree(&b[0]))?;
        collapses &= slice.is_ghost(&b[0]) == Some(false);
        collapses &= b.iter().all(|z| slice.class_id(z) == slice.class_id(&b[0]));
    }
    Ok(Adaptation {
        collapses,
        separates: refines(&induced, &partition.blocks),
    })
}

/// E_Π = ⋁_j Eq(S_j).
pub fn partition_relation(base: &QuotientPresentation, partition: &FiberPartition) -> Result<MfceRelation> {
    let amb = base.ambient().clone();
    let parts: Vec<MfceRelation> = partition
        .blocks
        .iter()
        .map(|b| MfceRelation::set_equalizer(amb.clone(), b))
        .collect::<Result<_>>()?;
    MfceRelation::join_all(amb, &parts)
}

#[derive(Clone, Debug)]
pub struct PartitionCover {
    pub adaptation: Adaptation,
    pub cover: CoverHandle,
}

impl PartitionCover {
    pub fn adapted(&self) -> bool {
        self.adaptation.adapted()
    }
}

pub fn partition_covers(base: &QuotientPresentation, partition: &FiberPartition) -> Result<PartitionCover> {
    require_base(base)?;
    let cover = CoverHandle::new(base, partition_relation(base, partition)?)?;
    Ok(PartitionCover {
        adaptation: adaptation(&cover, partition)?,
        cover,
    })
}

/// Σ_U(ζ): the fiber partitions whose W_Π is adapted.
pub fn sigma_family(base: &QuotientPresentation, zeta: &QuotientElement, limit: usize) -> Result<Vec<FiberPartition>> {
    let fiber = base.fiber_of(zeta)?;
    if fiber.len() > limit {
        return Err(Error::LimitExceeded(format!(
            "{} fiber monomials, limit {limit}",
            fiber.len()
        )));
    }
    let mut out = Vec::new();
    for blocks in all_partitions(&fiber) {
        let p = FiberPartition {
            zeta: zeta.clone(),
            blocks,
        };
        if partition_covers(base, &p)?.adapted() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Least common refinement of a family of adapted partitions and the relation checks around it.
#[derive(Clone, Debug)]
pub struct FamilyAssembly {
    pub pi0: Vec<Vec<Monomial>>,
    pub w0: CoverHandle,
    pub pi0_adapted: bool,
    /// E_{Π0} equals the relation join of the E_{Πλ}.
    pub join_identity: bool,
    /// E_{Π0} equals the intersection of the E_{Πλ}, compared slice by slice up to degree 2D.
    pub meet_identity: bool,
    /// For each block of Π0, the index of the block of each Πλ containing it.
    pub projections: Vec<Vec<usize>>,
}

pub fn assemble_family(base: &QuotientPresentation, partitions: &[FiberPartition]) -> Result<FamilyAssembly> {
    require_base(base)?;
    let first = partitions
        .first()
        .ok_or_else(|| Error::Precondition("empty family".into()))?;
    let mut relations = Vec::new();
    for p in partitions {
        if p.zeta != first.zeta {
            return Err(Error::Precondition("partitions of different fibers".into()));
        }
        let pc = partition_covers(base, p)?;
        if !pc.adapted() {
            return Err(Error::Precondition("a partition of the family is not adapted".into()));
        }
        relations.push(pc.cover.relation().clone());
    }
    let blocks: Vec<Vec<Vec<Monomial>>> = partitions.iter().map(|p| p.blocks.clone()).collect();
    let pi0 = common_refinement(&blocks);
    let p0 = FiberPartition {
        zeta: first.zeta.clone(),
        blocks: pi0.clone(),
    };
    let w0 = partition_covers(base, &p0)?;
    let join = MfceRelation::join_all(base.ambient().clone(), &relations)?;
    let join_identity = join.equivalent(w0.cover.relation())?;
    let top = 2 * base.require_finite()?.max_degree();
    let mut meet_identity = true;
    for k in 0..=top {
        let mut meet = relations[0].slice(k)?.as_ref().clone();
        for r in &relations[1..] {
            meet = meet.meet(r.slice(k)?.as_ref())?;
        }
        if &meet != w0.cover.relation().slice(k)?.as_ref() {
            meet_identity = false;
            break;
        }
    }
    let projections = pi0
        .iter()
        .map(|b| {
            partitions
                .iter()
                .map(|p| p.blocks.iter().position(|s| s.contains(&b[0])).expect("Π0 refines Πλ"))
                .collect()
        })
        .collect();
    Ok(FamilyAssembly {
        pi0,
        pi0_adapted: w0.adapted(),
        w0: w0.cover,
        join_identity,
        meet_identity,
        projections,
    })
}

/// Every multiplicative partition of T_U refining P_U (the interval [Ẽ_U, E_U]).
pub fn interval_partitions(base: &QuotientPresentation, limit: usize) -> Result<Vec<Vec<Vec<Monomial>>>> {
    require_base(base)?;
    let finite = base.require_finite()?;
    if finite.tangibles().len() > limit {
        return Err(Error::LimitExceeded(format!(
            "{} tangibles, limit {limit}",
            finite.tangibles().len()
        )));
    }
    let per_block: Vec<Vec<Vec<Vec<Monomial>>>> = finite.blocks().iter().map(|b| all_partitions(b)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_block.len()];
    loop {
        let q: Vec<Vec<Monomial>> = choice
            .iter()
            .zip(&per_block)
            .flat_map(|(&c, parts)| parts[c].iter().cloned())
            .collect();
        if is_multiplicative_partition(base, &q) {
            out.push(normalize(&q));
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_block[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn interval_covers(base: &QuotientPresentation, limit: usize) -> Result<Vec<CoverHandle>> {
    interval_partitions(base, limit)?
        .iter()
        .map(|q| CoverHandle::from_interval(base, q))
        .collect()
}

//! Fates, the equal-fate relation, sons and tyrants, and staircases of U′_T.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::ambient::{Ambient, AmbientMode};
use crate::error::{Error, Result};
use crate::ghost::GhostValue;
use crate::monomial::Monomial;
use crate::quotients::{FormRequest, NormalForm, QuotientElement, QuotientPresentation};
use crate::relations::{GeneratorPair, MfceRelation};

/// Kind of a product: tangible (`1`), nonzero ghost (`e`) or zero (`0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Tangible,
    Ghost,
    Zero,
}

impl Kind {
    pub fn of(a: &QuotientElement) -> Kind {
        match a {
            QuotientElement::Tangible(_) => Kind::Tangible,
            QuotientElement::Ghost(GhostValue::Zero) => Kind::Zero,
            QuotientElement::Ghost(_) => Kind::Ghost,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tangible => "1",
            Kind::Ghost => "e",
            Kind::Zero => "0",
        })
    }
}

/// `Fate(x) = (ex, F_x)` over a fixed probe list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FateRecord {
    pub birthday: GhostValue,
    pub outcomes: Vec<Kind>,
}

/// Probe tangibles: all of 𝒯(U) when tangibly finite, else the tangibles inside the
/// exponent box of [`probe_bound`].
pub fn probes(u: &QuotientPresentation) -> Result<Vec<Monomial>> {
    match u.form() {
        NormalForm::TangiblyFinite(f) => Ok(f.blocks().iter().map(|b| b[0].clone()).collect()),
        NormalForm::IdealPresented { .. } => box_tangibles(u, probe_bound(u)),
    }
}

/// Componentwise exponent bound for probes of an ideal-presented monoid:
/// one more than the largest exponent among the ideal's minimal generators.
pub fn probe_bound(u: &QuotientPresentation) -> u32 {
    u.ghost_generators()
        .iter()
        .map(Monomial::max_exponent)
        .max()
        .unwrap_or(0)
        + 1
}

/// Tangibles of an ideal-presented monoid with every exponent at most `bound`.
pub fn box_tangibles(u: &QuotientPresentation, bound: u32) -> Result<Vec<Monomial>> {
    let amb = u.ambient();
    let mut out = vec![Vec::new()];
    for _ in 0..amb.rank() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    let mut tangibles = Vec::new();
    for exps in out {
        let z = Monomial::from_exponents(exps);
        if amb.is_tangible(&z) && u.project(&z)?.is_tangible() {
            tangibles.push(z);
        }
    }
    tangibles.sort();
    Ok(tangibles)
}

fn tangible_rep(u: &QuotientPresentation, x: &QuotientElement) -> Result<Monomial> {
    match x {
        QuotientElement::Tangible(z) => Ok(z.clone()),
        QuotientElement::Ghost(g) => Err(Error::Precondition(format!("`{g}` is not tangible"))),
    }
    .and_then(|z| match u.project(&z)? {
        QuotientElement::Tangible(_) => Ok(z),
        _ => Err(Error::Precondition(format!(
            "`{}` is not tangible",
            u.format_monomial(&z)
        ))),
    })
}

fn record_with(u: &QuotientPresentation, x: &QuotientElement, probes: &[Monomial]) -> Result<FateRecord> {
    let z = tangible_rep(u, x)?;
    let outcomes = probes
        .iter()
        .map(|p| u.project(&z.mul(p)).map(|r| Kind::of(&r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FateRecord {
        birthday: u.nu(x),
        outcomes,
    })
}

pub fn fate_of(u: &QuotientPresentation, x: &QuotientElement) -> Result<FateRecord> {
    record_with(u, x, &probes(u)?)
}

/// Def 8.1(a): equal birthdays and the same kind of product with every probe.
pub fn same_fate(u: &QuotientPresentation, a: &QuotientElement, b: &QuotientElement) -> Result<bool> {
    Ok(fate_witness(u, a, b)?.is_none() && u.nu(a) == u.nu(b))
}

/// First probe on which the two fates differ (`None` when the records agree).
pub fn fate_witness(u: &QuotientPresentation, a: &QuotientElement, b: &QuotientElement) -> Result<Option<Monomial>> {
    let probes = probes(u)?;
    let (ra, rb) = (record_with(u, a, &probes)?, record_with(u, b, &probes)?);
    Ok(probes
        .into_iter()
        .zip(ra.outcomes.iter().zip(&rb.outcomes))
        .find(|(_, (x, y))| x != y)
        .map(|(p, _)| p))
}

/// Kind of `a·probe`.
pub fn kind_of_product(u: &QuotientPresentation, a: &QuotientElement, probe: &Monomial) -> Result<Kind> {
    Ok(Kind::of(&u.mul(a, &u.project(probe)?)?))
}

/// Tangibles under consideration: 𝒯(U), or the probe box when ideal-presented.
fn universe(u: &QuotientPresentation) -> Result<Vec<QuotientElement>> {
    Ok(probes(u)?.into_iter().map(QuotientElement::Tangible).collect())
}

/// The result of grouping tangibles by fate.
#[derive(Clone, Debug)]
pub struct FateQuotient {
    /// Fate classes of the tangibles considered (each sorted, ordered by least member).
    pub classes: Vec<Vec<QuotientElement>>,
    /// E_U joined with the identifications of each class.
    pub relation: MfceRelation,
    /// U/F, built when U is tangibly finite.
    pub quotient: Option<QuotientPresentation>,
}

/// The equal-fate relation F. For an ideal-presented U, classes are reported on the
/// tangibles with exponents at most `window` (default: the probe bound plus one).
pub fn equal_fate_quotient(u: &QuotientPresentation, window: Option<u32>) -> Result<FateQuotient> {
    let probes = probes(u)?;
    let members: Vec<QuotientElement> = match u.form() {
        NormalForm::TangiblyFinite(_) => universe(u)?,
        NormalForm::IdealPresented { .. } => {
            let w = window.unwrap_or(probe_bound(u) + 1);
            box_tangibles(u, w)?
                .into_iter()
                .map(QuotientElement::Tangible)
                .collect()
        }
    };
    let mut groups: BTreeMap<(GhostValue, Vec<Kind>), Vec<QuotientElement>> = BTreeMap::new();
    for m in members {
        let r = record_with(u, &m, &probes)?;
        groups.entry((r.birthday, r.outcomes)).or_default().push(m);
    }
    let mut classes: Vec<Vec<QuotientElement>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    let mut pairs = Vec::new();
    for c in &classes {
        for other in &c[1..] {
            let (QuotientElement::Tangible(a), QuotientElement::Tangible(b)) = (&c[0], other) else {
                unreachable!("fate classes hold tangibles")
            };
            pairs.push(GeneratorPair::Identify(a.clone(), b.clone()));
        }
    }
    let extra = MfceRelation::from_pairs(u.ambient().clone(), pairs)?;
    let relation = u.relation().join(&extra)?;
    let quotient = match u.finite() {
        Some(f) => Some(QuotientPresentation::build(
            relation.clone(),
            FormRequest::TangiblyFinite {
                max_degree: Some(f.max_degree()),
            },
        )?),
        None => None,
    };
    Ok(FateQuotient {
        classes,
        relation,
        quotient,
    })
}

/// A pair of distinct equal-degree tangibles with the same fate, if any.
pub fn fate_distinction_failure(u: &QuotientPresentation) -> Result<Option<(QuotientElement, QuotientElement)>> {
    let probes = probes(u)?;
    let mut seen: HashMap<FateRecord, QuotientElement> = HashMap::new();
    for t in universe(u)? {
        let r = record_with(u, &t, &probes)?;
        if let Some(prev) = seen.get(&r) {
            return Ok(Some((prev.clone(), t)));
        }
        seen.insert(r, t);
    }
    Ok(None)
}

pub fn has_fate_distinction(u: &QuotientPresentation) -> Result<bool> {
    Ok(fate_distinction_failure(u)?.is_none())
}

/// All sons of `x`: tangible products `x·t` with `t` ranging over the tangibles
/// considered, grouped by ghost.
pub fn all_sons(
    u: &QuotientPresentation,
    x: &QuotientElement,
) -> Result<BTreeMap<GhostValue, BTreeSet<QuotientElement>>> {
    tangible_rep(u, x)?;
    let mut sons: BTreeMap<GhostValue, BTreeSet<QuotientElement>> = BTreeMap::new();
    for t in universe(u)? {
        let p = u.mul(x, &t)?;
        if p.is_tangible() {
            sons.entry(u.nu(&p)).or_default().insert(p);
        }
    }
    Ok(sons)
}

pub fn sons_of(u: &QuotientPresentation, x: &QuotientElement, c: GhostValue) -> Result<Vec<QuotientElement>> {
    Ok(all_sons(u, x)?
        .remove(&c)
        .map(|s| s.into_iter().collect())
        .unwrap_or_default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangibleClassification {
    /// At most one son over each ghost.
    pub tyrant: bool,
    /// No son other than itself.
    pub lonely: bool,
    /// No son other than itself over its own ghost.
    pub isolated: bool,
}

impl TangibleClassification {
    pub fn lonely_tyrant(&self) -> bool {
        self.tyrant && self.lonely
    }
}

pub fn classify_tangible(u: &QuotientPresentation, x: &QuotientElement) -> Result<TangibleClassification> {
    let sons = all_sons(u, x)?;
    let own = u.nu(x);
    Ok(TangibleClassification {
        tyrant: sons.values().all(|s| s.len() <= 1),
        lonely: sons.values().flatten().all(|s| s == x),
        isolated: sons.get(&own).is_none_or(|s| s.iter().all(|z| z == x)),
    })
}

/// Tyrants among the tangibles considered, with their classification.
pub fn tyrants(u: &QuotientPresentation) -> Result<Vec<(QuotientElement, TangibleClassification)>> {
    let mut out = Vec::new();
    for t in universe(u)? {
        let c = classify_tangible(u, &t)?;
        if c.tyrant {
            out.push((t, c));
        }
    }
    Ok(out)
}

/// One row `u^i x^j` (j ≥ 1, plus `1` in row 0) of the staircase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseRow {
    pub u_exponent: u32,
    /// Tangibles of the row, by increasing x-exponent; truncated when the row is infinite.
    pub tangibles: Vec<Monomial>,
    pub infinite: bool,
    /// Last tangible of a finite row.
    pub border: Option<Monomial>,
    /// Whether each column of this row has the same fate as in the next row (and the
    /// next row has the same columns).
    pub same_fate_as_next: bool,
}

#[derive(Clone, Debug)]
pub struct StaircaseReport {
    pub ambient: Arc<Ambient>,
    pub basic: Vec<Monomial>,
    pub superfluous: Vec<Monomial>,
    pub border_tangibles: Vec<Monomial>,
    pub rows: Vec<StaircaseRow>,
    /// Least row p ≥ 1 from which every row has the same fates as the next one, within the rows shown.
    pub same_fate_from_row: Option<u32>,
}

/// Staircase analysis of U′_T = 𝔄′/Feq(T) over 𝔄′(u:0, x:1).
pub fn staircase(ambient: Arc<Ambient>, t: &[Monomial], max_row: Option<u32>) -> Result<StaircaseReport> {
    let gens = ambient.generators();
    let shape_ok = ambient.mode() == AmbientMode::PositiveWeightRequired
        && gens.len() == 2
        && gens.iter().filter(|g| g.weight == 0).count() == 1
        && gens.iter().filter(|g| g.weight == 1).count() == 1;
    if !shape_ok {
        return Err(Error::Precondition(
            "staircases live over the restricted ambient with one weight-0 and one weight-1 letter".into(),
        ));
    }
    let ui = gens.iter().position(|g| g.weight == 0).expect("checked");
    let xi = 1 - ui;
    let mono = |i: u32, j: u32| {
        let mut e = vec![0; 2];
        e[ui] = i;
        e[xi] = j;
        Monomial::from_exponents(e)
    };
    for z in t {
        if z.exponent(xi) <= 1 {
            return Err(Error::Precondition(format!(
                "`{}` lies in {{1}} ∪ {{u^i x}}",
                ambient.format_monomial(z)
            )));
        }
    }
    let u = QuotientPresentation::build(
        MfceRelation::fiberwise_equalizer(ambient.clone(), t)?,
        FormRequest::Ideal,
    )?;
    let tangible = |z: &Monomial| -> Result<bool> { Ok(u.project(z)?.is_tangible()) };
    let mut basic = Vec::new();
    let mut superfluous = Vec::new();
    for z in t {
        let below = mono(z.exponent(ui), z.exponent(xi) - 1);
        if tangible(&below)? {
            basic.push(z.clone());
        } else {
            superfluous.push(z.clone());
        }
    }
    basic.sort_by_key(|z| z.exponent(ui));
    superfluous.sort();
    let last_u = t.iter().map(|z| z.exponent(ui)).max().unwrap_or(0);
    let widest = t.iter().map(|z| z.exponent(xi)).max().unwrap_or(1);
    let rows_to = max_row.unwrap_or(last_u + 2);
    let mut rows = Vec::new();
    for i in 0..=rows_to + 1 {
        let start = if i == 0 { 0 } else { 1 };
        let mut tangibles = Vec::new();
        let mut j = start;
        let mut infinite = false;
        loop {
            let z = mono(i, j);
            if !tangible(&z)? {
                break;
            }
            tangibles.push(z);
            if j > widest {
                infinite = true;
                break;
            }
            j += 1;
        }
        let border = (!infinite).then(|| tangibles.last().cloned()).flatten();
        rows.push(StaircaseRow {
            u_exponent: i,
            tangibles,
            infinite,
            border,
            same_fate_as_next: false,
        });
    }
    for i in 1..rows.len() - 1 {
        let (a, b) = (&rows[i], &rows[i + 1]);
        let mut same = a.tangibles.len() == b.tangibles.len() && a.infinite == b.infinite;
        if same {
            for (za, zb) in a.tangibles.iter().zip(&b.tangibles) {
                if !same_fate(
                    &u,
                    &QuotientElement::Tangible(za.clone()),
                    &QuotientElement::Tangible(zb.clone()),
                )? {
                    same = false;
                    break;
                }
            }
        }
        rows[i].same_fate_as_next = same;
    }
    rows.truncate(rows_to as usize + 1);
    let same_fate_from_row = (1..=rows_to).find(|&p| rows[p as usize..].iter().all(|r| r.same_fate_as_next));
    let border_tangibles = rows.iter().filter_map(|r| r.border.clone()).collect();
    Ok(StaircaseReport {
        ambient,
        basic,
        superfluous,
        border_tangibles,
        rows,
        same_fate_from_row,
    })
}

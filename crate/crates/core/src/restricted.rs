//! Restricted factorization: the monoids U_w, maps between them, and the
//! classification of tangibly finite monoids as contractions of some U_w.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::covers::{require_base, tilde_relation};
use crate::divisor::{project_p, DivisorMonoid};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::quotients::{FormRequest, QuotientElement, QuotientPresentation};
use crate::relations::{GeneratorPair, MfceRelation};

/// U_w = 𝔄/⋁_i Eq(x_i^{r_i+1}, c^{r_i+1}) ∨ Ẽ_U, together with A_w.
#[derive(Clone, Debug)]
pub struct RestrictedMonoid {
    base: QuotientPresentation,
    w: Monomial,
    a_w: DivisorMonoid,
    u_w: QuotientPresentation,
}

fn truncation_pairs(base: &QuotientPresentation, w: &Monomial) -> Vec<GeneratorPair> {
    let amb = base.ambient();
    (0..amb.rank())
        .map(|i| GeneratorPair::Ghostify(amb.generator(i).pow(w.exponent(i) + 1)))
        .collect()
}

impl RestrictedMonoid {
    pub fn new(base: &QuotientPresentation, w: &Monomial) -> Result<Self> {
        require_base(base)?;
        let amb = base.ambient().clone();
        if w.rank() != amb.rank() {
            return Err(Error::AmbientMismatch);
        }
        let a_w = DivisorMonoid::new(amb.clone(), w.clone())?;
        let mut pairs = truncation_pairs(base, w);
        pairs.extend(tilde_relation(base)?.pairs().iter().cloned());
        let relation = MfceRelation::from_pairs(amb.clone(), pairs)?;
        let u_w = QuotientPresentation::build(
            relation,
            FormRequest::TangiblyFinite {
                max_degree: Some(amb.degree(w) + 1),
            },
        )?;
        Ok(RestrictedMonoid {
            base: base.clone(),
            w: w.clone(),
            a_w,
            u_w,
        })
    }

    pub fn base(&self) -> &QuotientPresentation {
        &self.base
    }

    pub fn w(&self) -> &Monomial {
        &self.w
    }

    pub fn a_w(&self) -> &DivisorMonoid {
        &self.a_w
    }

    pub fn u_w(&self) -> &QuotientPresentation {
        &self.u_w
    }

    /// π_w: A_w → U_w, fixing ghosts.
    pub fn pi_w(&self, v: &QuotientElement) -> Result<QuotientElement> {
        match v {
            QuotientElement::Ghost(g) => Ok(QuotientElement::Ghost(*g)),
            QuotientElement::Tangible(z) => self.u_w.project(z),
        }
    }

    /// Whether w is tangible in U, in which case A_w and U_w coincide.
    pub fn w_tangible_in_base(&self) -> Result<bool> {
        Ok(self.base.project(&self.w)?.is_tangible())
    }

    /// The same monoid built from Ũ instead of U.
    pub fn over_tilde(&self) -> Result<RestrictedMonoid> {
        let tilde = QuotientPresentation::build(
            tilde_relation(&self.base)?,
            FormRequest::TangiblyFinite {
                max_degree: Some(self.base.require_finite()?.max_degree()),
            },
        )?;
        RestrictedMonoid::new(&tilde, &self.w)
    }

    /// Checks π_w(z) = π_Ũ(z) on every tangible of A_w.
    pub fn agrees_with_tilde(&self) -> Result<bool> {
        let tilde = tilde_relation(&self.base)?;
        for z in self.a_w.divisors() {
            let via_tilde = !tilde.is_ghostified(z)?;
            if self.u_w.project(z)?.is_tangible() != via_tilde {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn restrict_map(&self, w_small: &Monomial) -> Result<RestrictMap> {
        if !w_small.divides(&self.w) {
            return Err(Error::Precondition("w′ must divide w".into()));
        }
        Ok(RestrictMap {
            source: self.clone(),
            target: RestrictedMonoid::new(&self.base, w_small)?,
        })
    }
}

/// r_{w,w′}: U_w → U_{w′}, defined on tangibles through their unique preimage in A_w.
#[derive(Clone, Debug)]
pub struct RestrictMap {
    source: RestrictedMonoid,
    target: RestrictedMonoid,
}

impl RestrictMap {
    pub fn source(&self) -> &RestrictedMonoid {
        &self.source
    }

    pub fn target(&self) -> &RestrictedMonoid {
        &self.target
    }

    pub fn apply(&self, a: &QuotientElement) -> Result<QuotientElement> {
        match a {
            QuotientElement::Ghost(g) => Ok(QuotientElement::Ghost(*g)),
            QuotientElement::Tangible(z) => {
                let p = project_p(
                    &self.source.a_w,
                    &self.target.a_w,
                    &QuotientElement::Tangible(z.clone()),
                )?;
                self.target.pi_w(&p)
            }
        }
    }

    /// Tangibles v of A_w where r(π_w(v)) ≠ π_{w′}(p(v)).
    pub fn square_failures(&self) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for z in self.source.a_w.divisors() {
            let v = QuotientElement::Tangible(z.clone());
            let top = self.apply(&self.source.pi_w(&v)?)?;
            let bottom = self.target.pi_w(&project_p(&self.source.a_w, &self.target.a_w, &v)?)?;
            if top != bottom {
                out.push(z.clone());
            }
        }
        Ok(out)
    }

    /// π_{w′}(z) = π_w(z) for every z | w′.
    pub fn agrees_on_small(&self) -> Result<bool> {
        for z in self.target.a_w.divisors() {
            if self.source.u_w.project(z)? != self.target.u_w.project(z)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pairs of tangibles of U_w on which r is not multiplicative.
    pub fn multiplicativity_failures(&self) -> Result<Vec<(Monomial, Monomial)>> {
        let u = &self.source.u_w;
        let tangibles = u.tangibles()?;
        let mut out = Vec::new();
        for (i, a) in tangibles.iter().enumerate() {
            for b in &tangibles[i..] {
                let lhs = self.apply(&u.mul(a, b)?)?;
                let rhs = self.target.u_w.mul(&self.apply(a)?, &self.apply(b)?)?;
                if lhs != rhs {
                    out.push((
                        a.representative().cloned().unwrap(),
                        b.representative().cloned().unwrap(),
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// w read off W by the first-ghost rule, with the factor map U_w ↠ W.
#[derive(Clone, Debug)]
pub struct Classification {
    pub w: Monomial,
    pub restricted: RestrictedMonoid,
    /// Image in W of each tangible of U_w.
    pub factor_map: BTreeMap<Monomial, QuotientElement>,
    /// Every tangible of U_w stays tangible in W.
    pub tangible: bool,
}

/// Exhibits W as a fiber contraction of U_w. The U_w is built over `base` when
/// given, otherwise over W itself.
pub fn classify_finite(w_monoid: &QuotientPresentation, base: Option<&QuotientPresentation>) -> Result<Classification> {
    require_base(w_monoid)?;
    let amb = w_monoid.ambient();
    let mut exps = Vec::with_capacity(amb.rank());
    for i in 0..amb.rank() {
        let x = amb.generator(i);
        let mut r = 0;
        while w_monoid.project(&x.pow(r + 1))?.is_tangible() {
            r += 1;
        }
        exps.push(r);
    }
    let w = Monomial::from_exponents(exps);
    let restricted = RestrictedMonoid::new(base.unwrap_or(w_monoid), &w)?;
    let u_w = restricted.u_w();
    if !u_w.relation().is_subrelation(w_monoid.relation())? {
        return Err(Error::IllDefined("E_{U_w} is not contained in E_W".into()));
    }
    let mut factor_map = BTreeMap::new();
    for t in u_w.tangibles()? {
        let z = t.representative().expect("tangible").clone();
        factor_map.insert(z.clone(), w_monoid.project(&z)?);
    }
    let image = |a: &QuotientElement| -> QuotientElement {
        match a {
            QuotientElement::Tangible(z) => factor_map[z].clone(),
            QuotientElement::Ghost(g) => QuotientElement::Ghost(*g),
        }
    };
    let tangibles = u_w.tangibles()?;
    for (i, a) in tangibles.iter().enumerate() {
        for b in &tangibles[i..] {
            if image(&u_w.mul(a, b)?) != w_monoid.mul(&image(a), &image(b))? {
                return Err(Error::IllDefined(format!(
                    "factor map is not multiplicative at ({}, {})",
                    u_w.format_element(a),
                    u_w.format_element(b)
                )));
            }
        }
    }
    let hit: BTreeSet<QuotientElement> = factor_map.values().filter(|v| v.is_tangible()).cloned().collect();
    if hit.len() != w_monoid.tangible_count()? {
        return Err(Error::IllDefined("factor map misses tangibles of W".into()));
    }
    let tangible = factor_map.values().all(QuotientElement::is_tangible);
    Ok(Classification {
        w,
        restricted,
        factor_map,
        tangible,
    })
}

/// A vertical edge: two distinct tangibles of U_w in the same degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub Monomial, pub Monomial);

impl Edge {
    pub fn new(a: Monomial, b: Monomial) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdgeDependency {
    pub edge: Edge,
    /// The edge lies in the closure of the other marked edges.
    pub implied_by_others: bool,
    /// Indices of marked edges contained in the closure of this edge alone.
    pub implies: Vec<usize>,
}

/// W = U_w modulo the marked edges, with the closure bookkeeping.
#[derive(Clone, Debug)]
pub struct EdgeQuotient {
    pub quotient: QuotientPresentation,
    pub marked: Vec<Edge>,
    /// Same-degree tangible pairs of U_w identified in W but not marked.
    pub implied: Vec<Edge>,
    /// Tangibles of U_w that become ghost in W.
    pub forced_ghosts: Vec<Monomial>,
    pub dependencies: Vec<EdgeDependency>,
}

impl EdgeQuotient {
    pub fn is_tangible_contraction(&self) -> bool {
        self.forced_ghosts.is_empty()
    }
}

fn check_edge(r: &RestrictedMonoid, e: &Edge) -> Result<()> {
    let u = r.u_w();
    let amb = u.ambient();
    let ok = e.0 != e.1
        && amb.degree(&e.0) == amb.degree(&e.1)
        && u.project(&e.0)?.is_tangible()
        && u.project(&e.1)?.is_tangible();
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidRelation(format!(
            "edge ({}, {}) must join distinct tangibles of U_w in one degree",
            amb.format_monomial(&e.0),
            amb.format_monomial(&e.1)
        )))
    }
}

fn closure(r: &RestrictedMonoid, edges: &[Edge]) -> Result<MfceRelation> {
    let mut pairs = r.u_w().relation().pairs().to_vec();
    pairs.extend(edges.iter().map(|e| GeneratorPair::Identify(e.0.clone(), e.1.clone())));
    MfceRelation::from_pairs(r.u_w().ambient().clone(), pairs)
}

fn contains_edge(rel: &MfceRelation, e: &Edge) -> Result<bool> {
    rel.related_monomials(&e.0, &e.1)
}

pub fn edge_quotient(r: &RestrictedMonoid, edges: &[Edge]) -> Result<EdgeQuotient> {
    for e in edges {
        check_edge(r, e)?;
    }
    let mut marked: Vec<Edge> = edges.to_vec();
    marked.sort();
    marked.dedup();
    let relation = closure(r, &marked)?;
    let d = r.u_w().require_finite()?.max_degree();
    let quotient = QuotientPresentation::build(relation.clone(), FormRequest::TangiblyFinite { max_degree: Some(d) })?;
    let tangibles = r.u_w().require_finite()?.tangibles().to_vec();
    let amb = r.u_w().ambient();
    let mut implied = Vec::new();
    let mut forced_ghosts = Vec::new();
    for (i, a) in tangibles.iter().enumerate() {
        if !quotient.project(a)?.is_tangible() {
            forced_ghosts.push(a.clone());
            continue;
        }
        for b in &tangibles[i + 1..] {
            if amb.degree(a) == amb.degree(b) && quotient.project(a)? == quotient.project(b)? {
                let e = Edge::new(a.clone(), b.clone());
                if !marked.contains(&e) {
                    implied.push(e);
                }
            }
        }
    }
    let mut dependencies = Vec::new();
    for (i, e) in marked.iter().enumerate() {
        let others: Vec<Edge> = marked
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let implied_by_others = contains_edge(&closure(r, &others)?, e)?;
        let alone = closure(r, std::slice::from_ref(e))?;
        let mut implies = Vec::new();
        for (j, f) in marked.iter().enumerate() {
            if j != i && contains_edge(&alone, f)? {
                implies.push(j);
            }
        }
        dependencies.push(EdgeDependency {
            edge: e.clone(),
            implied_by_others,
            implies,
        });
    }
    Ok(EdgeQuotient {
        quotient,
        marked,
        implied,
        forced_ghosts,
        dependencies,
    })
}

/// Result of erasing edges: every edge whose equalizer contains an erased edge goes too.
#[derive(Clone, Debug)]
pub struct Erasure {
    pub erased: Vec<Edge>,
    pub remaining: Vec<Edge>,
    /// No erased edge lies in the closure of the remaining ones.
    pub consistent: bool,
    /// The resulting cover W′ equals U_w.
    pub is_u_w: bool,
}

pub fn erase_edges(r: &RestrictedMonoid, edges: &[Edge], erase: &[Edge]) -> Result<Erasure> {
    let mut erased: BTreeSet<Edge> = erase.iter().cloned().collect();
    let mut remaining: Vec<Edge> = edges.iter().filter(|e| !erased.contains(*e)).cloned().collect();
    remaining.sort();
    loop {
        let mut forced = Vec::new();
        for f in &remaining {
            let alone = closure(r, std::slice::from_ref(f))?;
            for e in &erased {
                if contains_edge(&alone, e)? {
                    forced.push(f.clone());
                    break;
                }
            }
        }
        if forced.is_empty() {
            break;
        }
        remaining.retain(|f| !forced.contains(f));
        erased.extend(forced);
    }
    let rest = closure(r, &remaining)?;
    let mut consistent = true;
    for e in &erased {
        consistent &= !contains_edge(&rest, e)?;
    }
    let is_u_w = rest.equivalent(r.u_w().relation())?;
    Ok(Erasure {
        erased: erased.into_iter().collect(),
        remaining,
        consistent,
        is_u_w,
    })
}

/// Same-degree pairs of tangibles of U_w, sorted by degree then lexicographically.
pub fn admissible_edges(r: &RestrictedMonoid) -> Result<Vec<Edge>> {
    let u = r.u_w();
    let amb = u.ambient();
    let tangibles = u.require_finite()?.tangibles();
    let mut out = Vec::new();
    for (i, a) in tangibles.iter().enumerate() {
        for b in &tangibles[i + 1..] {
            if amb.degree(a) == amb.degree(b) {
                out.push(Edge::new(a.clone(), b.clone()));
            }
        }
    }
    out.sort_by(|x, y| amb.degree(&x.0).cmp(&amb.degree(&y.0)).then(x.cmp(y)));
    Ok(out)
}

/// The signature of an edge quotient on 𝒯(U_w): classes and ghosts.
fn signature(q: &QuotientPresentation, tangibles: &[Monomial]) -> Result<Vec<QuotientElement>> {
    tangibles.iter().map(|z| q.project(z)).collect()
}

/// Every distinct quotient of U_w by edges, found breadth first from U_w itself.
pub fn enumerate_edge_quotients(r: &RestrictedMonoid, budget: usize) -> Result<Vec<EdgeQuotient>> {
    let edges = admissible_edges(r)?;
    let tangibles = r.u_w().require_finite()?.tangibles().to_vec();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<Vec<Edge>> = VecDeque::from([Vec::new()]);
    while let Some(marked) = queue.pop_front() {
        let q = edge_quotient(r, &marked)?;
        if !seen.insert(signature(&q.quotient, &tangibles)?) {
            continue;
        }
        if out.len() == budget {
            return Err(Error::LimitExceeded(format!("more than {budget} edge quotients")));
        }
        for e in &edges {
            let (a, b) = (q.quotient.project(&e.0)?, q.quotient.project(&e.1)?);
            if a.is_tangible() && b.is_tangible() && a != b {
                let mut next = marked.clone();
                next.push(e.clone());
                queue.push_back(next);
            }
        }
        out.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;
    use std::sync::Arc;

    fn plane() -> Arc<Ambient> {
        Arc::new(Ambient::uniform(&["x1", "x2"]).unwrap())
    }

    fn m(amb: &Ambient, s: &str) -> Monomial {
        amb.parse_monomial(s).unwrap()
    }

    fn a_w(amb: &Arc<Ambient>, w: &str) -> QuotientPresentation {
        DivisorMonoid::new(amb.clone(), m(amb, w))
            .unwrap()
            .presentation()
            .clone()
    }

    fn edge(amb: &Ambient, a: &str, b: &str) -> Edge {
        Edge::new(m(amb, a), m(amb, b))
    }

    fn diagram_edges(amb: &Ambient) -> Vec<Edge> {
        vec![
            edge(amb, "x1^2", "x1*x2"),
            edge(amb, "x1^3", "x1^2*x2"),
            edge(amb, "x1*x2^2", "x2^3"),
            edge(amb, "x1^3*x2", "x1^2*x2^2"),
            edge(amb, "x1^2*x2^2", "x1*x2^3"),
        ]
    }

    #[test]
    fn u_w_over_a_w_is_a_w() {
        let amb = plane();
        let u = a_w(&amb, "x1^3*x2^3");
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1^3*x2^3")).unwrap();
        assert!(r.w_tangible_in_base().unwrap());
        assert_eq!(r.u_w().tangible_count().unwrap(), 16);
        assert!(r.u_w().has_uf());
        assert!(r.agrees_with_tilde().unwrap());
    }

    #[test]
    fn ghost_w_shrinks_the_tangibles() {
        let amb = plane();
        let rel =
            MfceRelation::fiberwise_equalizer(amb.clone(), &[m(&amb, "x1^4"), m(&amb, "x2^4"), m(&amb, "x1^3*x2^3")])
                .unwrap();
        let u = QuotientPresentation::tangibly_finite(rel).unwrap();
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1^3*x2^3")).unwrap();
        assert!(!r.w_tangible_in_base().unwrap());
        assert_eq!(r.u_w().tangible_count().unwrap(), 15);
        let t = r.over_tilde().unwrap();
        assert!(t.u_w().relation().equivalent(r.u_w().relation()).unwrap());
    }

    #[test]
    fn erasure_verdicts_of_the_chart() {
        let amb = plane();
        let u = a_w(&amb, "x1^3*x2^3");
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1^3*x2^3")).unwrap();
        let edges = diagram_edges(&amb);
        let q = edge_quotient(&r, &edges).unwrap();
        assert_eq!(q.marked.len(), 5);

        let first = erase_edges(&r, &edges, &[edges[0].clone()]).unwrap();
        assert_eq!(first.erased, vec![edges[0].clone()]);

        let second = erase_edges(&r, &edges, &[edges[1].clone()]).unwrap();
        let want: BTreeSet<Edge> = [edges[0].clone(), edges[1].clone()].into();
        assert_eq!(second.erased.iter().cloned().collect::<BTreeSet<_>>(), want);

        let right = erase_edges(&r, &edges, &edges[3..]).unwrap();
        assert!(right.remaining.is_empty());
        assert!(right.is_u_w);
    }

    #[test]
    fn classification_round_trip() {
        let amb = plane();
        let u = a_w(&amb, "x1^3*x2^3");
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1^3*x2^3")).unwrap();
        let q = edge_quotient(&r, &diagram_edges(&amb)).unwrap();
        let c = classify_finite(&q.quotient, None).unwrap();
        assert_eq!(c.w, m(&amb, "x1^3*x2^3"));
        assert!(c.tangible);
        let via_chart = classify_finite(&q.quotient, Some(&u)).unwrap();
        assert_eq!(via_chart.tangible, q.is_tangible_contraction());
        let same = classify_finite(r.u_w(), None).unwrap();
        assert!(same
            .factor_map
            .iter()
            .all(|(z, v)| v == &QuotientElement::Tangible(z.clone())));
    }

    #[test]
    fn restrict_map_identity_and_square() {
        let amb = plane();
        let u = a_w(&amb, "x1^3*x2^3");
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1^3*x2^3")).unwrap();
        let id = r.restrict_map(&m(&amb, "x1^3*x2^3")).unwrap();
        for t in r.u_w().tangibles().unwrap() {
            assert_eq!(id.apply(&t).unwrap(), t);
        }
        let small = r.restrict_map(&m(&amb, "x1*x2")).unwrap();
        assert!(small.square_failures().unwrap().is_empty());
        assert!(small.agrees_on_small().unwrap());
        assert!(r.restrict_map(&m(&amb, "x1^4")).is_err());
    }

    #[test]
    fn enumeration_of_a_small_chart() {
        let amb = plane();
        let u = a_w(&amb, "x1*x2");
        let r = RestrictedMonoid::new(&u, &m(&amb, "x1*x2")).unwrap();
        let all = enumerate_edge_quotients(&r, 100).unwrap();
        assert_eq!(all.len(), 2);
        for q in &all {
            assert!(classify_finite(&q.quotient, None).is_ok());
        }
    }
}

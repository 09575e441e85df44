//! Supertropical monoids U = 𝔄/E_U in normal form.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::ambient::{Ambient, AmbientMode, Generator};
use crate::error::{Error, Result};
use crate::ghost::GhostValue;
use crate::monomial::Monomial;
use crate::relations::{minimal_ideal_generators, GeneratorPair, MfceRelation};

/// An element of a quotient: a tangible class (named by its least monomial) or a ghost.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientElement {
    Tangible(Monomial),
    Ghost(GhostValue),
}

impl QuotientElement {
    pub fn is_tangible(&self) -> bool {
        matches!(self, QuotientElement::Tangible(_))
    }

    pub fn representative(&self) -> Option<&Monomial> {
        match self {
            QuotientElement::Tangible(z) => Some(z),
            QuotientElement::Ghost(_) => None,
        }
    }
}

/// Which normal form to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormRequest {
    /// Ghostify stanzas only; tangible classes are singletons.
    Ideal,
    /// Finite tangible set; `None` searches for the first all-ghost degree.
    TangiblyFinite { max_degree: Option<u32> },
}

/// Data of a tangibly finite quotient.
#[derive(Clone, Debug)]
pub struct FiniteForm {
    max_degree: u32,
    tangibles: Vec<Monomial>,
    blocks: Vec<Vec<Monomial>>,
    block_of: HashMap<Monomial, usize>,
    ghost_generators: Vec<Monomial>,
}

impl FiniteForm {
    /// Every monomial of degree at least this is ghost.
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// T_U: the monomials outside the ghostified ideal, sorted.
    pub fn tangibles(&self) -> &[Monomial] {
        &self.tangibles
    }

    /// P_U: the tangible classes, each sorted, ordered by representative.
    pub fn blocks(&self) -> &[Vec<Monomial>] {
        &self.blocks
    }

    pub fn block_index(&self, z: &Monomial) -> Option<usize> {
        self.block_of.get(z).copied()
    }

    /// G_min: minimal generators of the ghostified ideal.
    pub fn ghost_generators(&self) -> &[Monomial] {
        &self.ghost_generators
    }
}

#[derive(Clone, Debug)]
pub enum NormalForm {
    IdealPresented { ghost_generators: Vec<Monomial> },
    TangiblyFinite(FiniteForm),
}

/// Properties (A) and (B): irreducibles are 𝒯_c, 𝒯_e = {1}, and 𝒯_c generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbProperties {
    pub tangible_units_trivial: bool,
    pub generated_by_degree_one: bool,
    pub irreducibles_are_degree_one: bool,
}

impl AbProperties {
    pub fn hold(&self) -> bool {
        self.tangible_units_trivial && self.generated_by_degree_one && self.irreducibles_are_degree_one
    }
}

struct QuotientInner {
    relation: MfceRelation,
    form: NormalForm,
}

/// A supertropical monoid over M presented as ambient modulo an MFCE-relation.
#[derive(Clone)]
pub struct QuotientPresentation {
    inner: Arc<QuotientInner>,
}

impl fmt::Debug for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientPresentation")
            .field("ambient", &self.ambient().to_string())
            .field("relation", &self.inner.relation)
            .finish()
    }
}

/// The core submonoid {1} ∪ ⟨𝒯_c(U)⟩ ∪ M, presented over fresh letters `y1, y2, …`.
#[derive(Clone, Debug)]
pub struct CoreSubmonoid {
    pub presentation: QuotientPresentation,
    /// Image in U of each fresh letter.
    pub letters: Vec<QuotientElement>,
    /// Tangibles of U lying in the core.
    pub tangibles: Vec<QuotientElement>,
}

impl QuotientPresentation {
    pub fn build(relation: MfceRelation, request: FormRequest) -> Result<Self> {
        let form = match request {
            FormRequest::Ideal => {
                let mut ghosts = Vec::new();
                for pair in relation.pairs() {
                    match pair {
                        GeneratorPair::Ghostify(z) => ghosts.push(z.clone()),
                        GeneratorPair::Identify(..) => {
                            return Err(Error::Undecidable(
                                "ideal-presented form takes ghostify generators only".into(),
                            ))
                        }
                    }
                }
                NormalForm::IdealPresented {
                    ghost_generators: minimal_ideal_generators(relation.ambient(), &ghosts),
                }
            }
            FormRequest::TangiblyFinite { max_degree } => {
                NormalForm::TangiblyFinite(finite_form(&relation, max_degree)?)
            }
        };
        Ok(QuotientPresentation {
            inner: Arc::new(QuotientInner { relation, form }),
        })
    }

    pub fn tangibly_finite(relation: MfceRelation) -> Result<Self> {
        QuotientPresentation::build(relation, FormRequest::TangiblyFinite { max_degree: None })
    }

    pub fn ideal(relation: MfceRelation) -> Result<Self> {
        QuotientPresentation::build(relation, FormRequest::Ideal)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        self.inner.relation.ambient()
    }

    pub fn relation(&self) -> &MfceRelation {
        &self.inner.relation
    }

    pub fn form(&self) -> &NormalForm {
        &self.inner.form
    }

    pub fn finite(&self) -> Option<&FiniteForm> {
        match &self.inner.form {
            NormalForm::TangiblyFinite(f) => Some(f),
            NormalForm::IdealPresented { .. } => None,
        }
    }

    pub fn require_finite(&self) -> Result<&FiniteForm> {
        self.finite()
            .ok_or_else(|| Error::Precondition("the monoid must be tangibly finite".into()))
    }

    pub fn ghost_generators(&self) -> &[Monomial] {
        match &self.inner.form {
            NormalForm::TangiblyFinite(f) => &f.ghost_generators,
            NormalForm::IdealPresented { ghost_generators } => ghost_generators,
        }
    }

    /// π_U(z).
    pub fn project(&self, z: &Monomial) -> Result<QuotientElement> {
        let amb = self.ambient();
        if z.rank() != amb.rank() {
            return Err(Error::AmbientMismatch);
        }
        if !amb.is_tangible(z) {
            return Err(Error::NotTangible(amb.format_monomial(z)));
        }
        let ghost = QuotientElement::Ghost(amb.ghost_of(z));
        Ok(match &self.inner.form {
            NormalForm::TangiblyFinite(f) => match f.block_of.get(z) {
                Some(&b) => QuotientElement::Tangible(f.blocks[b][0].clone()),
                None => ghost,
            },
            NormalForm::IdealPresented { ghost_generators } => {
                let in_ideal = ghost_generators
                    .iter()
                    .any(|g| z.checked_div(g).is_some_and(|q| amb.is_tangible(&q)));
                if in_ideal {
                    ghost
                } else {
                    QuotientElement::Tangible(z.clone())
                }
            }
        })
    }

    /// ν(a) = e·a.
    pub fn nu(&self, a: &QuotientElement) -> GhostValue {
        match a {
            QuotientElement::Tangible(z) => self.ambient().ghost_of(z),
            QuotientElement::Ghost(g) => *g,
        }
    }

    pub fn mul(&self, a: &QuotientElement, b: &QuotientElement) -> Result<QuotientElement> {
        match (a, b) {
            (QuotientElement::Tangible(x), QuotientElement::Tangible(y)) => self.project(&x.mul(y)),
            _ => Ok(QuotientElement::Ghost(self.nu(a) * self.nu(b))),
        }
    }

    pub fn one(&self) -> QuotientElement {
        self.project(&self.ambient().one())
            .expect("1 is tangible in every ambient")
    }

    /// The tangible elements, in representative order.
    pub fn tangibles(&self) -> Result<Vec<QuotientElement>> {
        Ok(self
            .require_finite()?
            .blocks
            .iter()
            .map(|b| QuotientElement::Tangible(b[0].clone()))
            .collect())
    }

    pub fn tangible_count(&self) -> Result<usize> {
        Ok(self.require_finite()?.blocks.len())
    }

    /// Tangibles with ghost `g`.
    pub fn tangibles_over(&self, g: GhostValue) -> Result<Vec<QuotientElement>> {
        Ok(self.tangibles()?.into_iter().filter(|t| self.nu(t) == g).collect())
    }

    /// π_U⁻¹(ζ) ∩ 𝒯(𝔄).
    pub fn fiber_of(&self, zeta: &QuotientElement) -> Result<Vec<Monomial>> {
        let QuotientElement::Tangible(z) = zeta else {
            return Err(Error::Precondition("fibers are taken over tangibles".into()));
        };
        match &self.inner.form {
            NormalForm::TangiblyFinite(f) => f
                .block_of
                .get(z)
                .map(|&b| f.blocks[b].clone())
                .ok_or_else(|| Error::Precondition(format!("`{}` is not tangible", self.format_monomial(z)))),
            NormalForm::IdealPresented { .. } => match self.project(z)? {
                QuotientElement::Tangible(_) => Ok(vec![z.clone()]),
                QuotientElement::Ghost(_) => Err(Error::Precondition(format!(
                    "`{}` is not tangible",
                    self.format_monomial(z)
                ))),
            },
        }
    }

    pub fn has_uf(&self) -> bool {
        match &self.inner.form {
            NormalForm::TangiblyFinite(f) => f.blocks.iter().all(|b| b.len() == 1),
            NormalForm::IdealPresented { .. } => true,
        }
    }

    /// Tangibles ≠ 1 that are not products of two non-unit tangibles.
    pub fn irreducibles(&self) -> Result<Vec<QuotientElement>> {
        let amb = self.ambient();
        match &self.inner.form {
            NormalForm::TangiblyFinite(_) => {
                let one = self.one();
                let nonunits: Vec<QuotientElement> = self.tangibles()?.into_iter().filter(|t| *t != one).collect();
                let mut products = BTreeSet::new();
                for (i, a) in nonunits.iter().enumerate() {
                    for b in &nonunits[i..] {
                        let p = self.mul(a, b)?;
                        if p.is_tangible() {
                            products.insert(p);
                        }
                    }
                }
                Ok(nonunits.into_iter().filter(|t| !products.contains(t)).collect())
            }
            NormalForm::IdealPresented { .. } => {
                if amb.has_weightless_generator() {
                    return Err(Error::Undecidable(
                        "irreducibles of an ideal-presented monoid with weight-0 letters".into(),
                    ));
                }
                let mut out = Vec::new();
                for i in 0..amb.rank() {
                    let t = self.project(&amb.generator(i))?;
                    if t.is_tangible() {
                        out.push(t);
                    }
                }
                out.sort();
                Ok(out)
            }
        }
    }

    pub fn properties(&self) -> Result<AbProperties> {
        let amb = self.ambient();
        match &self.inner.form {
            NormalForm::TangiblyFinite(_) => {
                let one = self.one();
                let units = self.tangibles_over(GhostValue::E)?;
                let degree_one = self.tangibles_over(GhostValue::C)?;
                let mut generated: BTreeSet<QuotientElement> = BTreeSet::new();
                if one.is_tangible() {
                    generated.insert(one.clone());
                }
                let mut frontier: Vec<QuotientElement> = degree_one.clone();
                while let Some(t) = frontier.pop() {
                    if !generated.insert(t.clone()) {
                        continue;
                    }
                    for l in &degree_one {
                        let p = self.mul(&t, l)?;
                        if p.is_tangible() && !generated.contains(&p) {
                            frontier.push(p);
                        }
                    }
                }
                let irreducibles: BTreeSet<QuotientElement> = self.irreducibles()?.into_iter().collect();
                let degree_one: BTreeSet<QuotientElement> = degree_one.into_iter().collect();
                Ok(AbProperties {
                    tangible_units_trivial: units == vec![one],
                    generated_by_degree_one: generated.len() == self.tangible_count()?,
                    irreducibles_are_degree_one: irreducibles == degree_one,
                })
            }
            NormalForm::IdealPresented { .. } => {
                let one_tangible = self.one().is_tangible();
                let mut weightless_tangible = false;
                let mut heavy_tangible = false;
                for (i, g) in amb.generators().iter().enumerate() {
                    let z = amb.generator(i);
                    let tangible = amb.is_tangible(&z) && self.project(&z)?.is_tangible();
                    weightless_tangible |= g.weight == 0 && tangible;
                    heavy_tangible |= g.weight > 1 && tangible;
                }
                let uniform = one_tangible && !amb.has_weightless_generator() && !heavy_tangible;
                Ok(AbProperties {
                    tangible_units_trivial: one_tangible && !weightless_tangible,
                    generated_by_degree_one: uniform,
                    irreducibles_are_degree_one: uniform,
                })
            }
        }
    }

    /// {1} ∪ ⟨𝒯_c(U)⟩ ∪ M as a presentation over fresh unit-weight letters.
    pub fn core_submonoid(&self) -> Result<CoreSubmonoid> {
        let finite = self.require_finite()?;
        let letters = self.tangibles_over(GhostValue::C)?;
        if letters.is_empty() {
            return Err(Error::Precondition("no tangibles of degree c".into()));
        }
        let names: Vec<String> = (1..=letters.len()).map(|i| format!("y{i}")).collect();
        let ambient = Arc::new(Ambient::new(
            names.iter().map(|n| Generator::new(n.clone(), 1)).collect(),
            AmbientMode::Full,
        )?);
        let image = |z: &Monomial| -> Result<QuotientElement> {
            let mut acc = self.one();
            for (i, l) in letters.iter().enumerate() {
                for _ in 0..z.exponent(i) {
                    acc = self.mul(&acc, l)?;
                }
            }
            Ok(acc)
        };
        let window = finite.max_degree.max(1);
        let relation = MfceRelation::from_classifier(ambient, window, |z| {
            Ok(match image(z)? {
                QuotientElement::Tangible(r) => Some(r),
                QuotientElement::Ghost(_) => None,
            })
        })?;
        let presentation = QuotientPresentation::build(
            relation,
            FormRequest::TangiblyFinite {
                max_degree: Some(window),
            },
        )?;
        let mut tangibles = Vec::new();
        for b in presentation.require_finite()?.blocks() {
            tangibles.push(image(&b[0])?);
        }
        tangibles.sort();
        Ok(CoreSubmonoid {
            presentation,
            letters,
            tangibles,
        })
    }

    pub fn format_monomial(&self, z: &Monomial) -> String {
        self.ambient().format_monomial(z)
    }

    pub fn format_element(&self, a: &QuotientElement) -> String {
        match a {
            QuotientElement::Tangible(z) => self.format_monomial(z),
            QuotientElement::Ghost(g) => g.to_string(),
        }
    }

    /// Parses a ghost or a monomial and projects it.
    pub fn parse_element(&self, text: &str) -> Result<QuotientElement> {
        match GhostValue::parse_with(text, 'c') {
            Ok(g) => Ok(QuotientElement::Ghost(g)),
            Err(_) => self.project(&self.ambient().parse_monomial(text)?),
        }
    }
}

fn finite_form(relation: &MfceRelation, max_degree: Option<u32>) -> Result<FiniteForm> {
    let amb = relation.ambient().clone();
    if amb.mode() != AmbientMode::Full {
        return Err(Error::Precondition(
            "the tangibly-finite form needs a full ambient".into(),
        ));
    }
    let maxw = amb.max_weight();
    if maxw == 0 {
        return Err(Error::Precondition("some generator needs positive weight".into()));
    }
    let window_ghost = |k: u32| -> Result<bool> {
        for j in k..k + maxw {
            if !relation.slice(j)?.all_ghost() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let d = match max_degree {
        Some(d) => {
            if !window_ghost(d)? {
                return Err(Error::NotTangiblyFinite(d));
            }
            d
        }
        None => {
            let cap = (2 * relation.max_pair_degree() + 2).max(24);
            let mut found = None;
            for k in 0..=cap {
                if window_ghost(k)? {
                    found = Some(k);
                    break;
                }
            }
            found.ok_or(Error::NotTangiblyFinite(cap))?
        }
    };
    if let Some(bound) = relation.exponent_bound() {
        for k in 0..d {
            let slice = relation.slice(k)?;
            for z in slice.monomials() {
                let at_bound = z
                    .exponents()
                    .iter()
                    .enumerate()
                    .any(|(i, &e)| amb.weight(i) == 0 && e == bound);
                if at_bound && slice.is_ghost(z) == Some(false) {
                    return Err(Error::NotTangiblyFinite(k));
                }
            }
        }
    }
    let mut tangibles = Vec::new();
    let mut blocks = Vec::new();
    for k in 0..d {
        let slice = relation.slice(k)?;
        for class in slice.tangible_classes() {
            tangibles.extend(class.iter().cloned());
            blocks.push(class);
        }
    }
    tangibles.sort();
    blocks.sort_by(|a, b| a[0].cmp(&b[0]));
    let block_of: HashMap<Monomial, usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |z| (z.clone(), i)))
        .collect();
    let mut ghost_generators = Vec::new();
    for k in 0..d + maxw {
        for m in relation.slice(k)?.ghost_members() {
            let minimal = m.support().all(|i| {
                let q = m.checked_div(&amb.generator(i)).expect("support index");
                block_of.contains_key(&q)
            });
            if minimal {
                ghost_generators.push(m);
            }
        }
    }
    ghost_generators.sort();
    let image = |z: &Monomial| block_of.get(z).copied();
    for block in &blocks {
        for i in 0..amb.rank() {
            let g = amb.generator(i);
            let first = image(&block[0].mul(&g));
            if block[1..].iter().any(|z| image(&z.mul(&g)) != first) {
                return Err(Error::InvalidRelation(format!(
                    "class of `{}` is not multiplicative",
                    amb.format_monomial(&block[0])
                )));
            }
        }
    }
    Ok(FiniteForm {
        max_degree: d,
        tangibles,
        blocks,
        block_of,
        ghost_generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Generator;

    fn u3() -> QuotientPresentation {
        let a =
            Arc::new(Ambient::new(vec![Generator::new("u", 0), Generator::new("x", 1)], AmbientMode::Full).unwrap());
        let ideal: Vec<Monomial> = (0..=4).map(|i| Monomial::from_exponents(vec![i, 4 - i])).collect();
        let e = MfceRelation::ideal_compression(a, &ideal).unwrap();
        QuotientPresentation::tangibly_finite(e).unwrap()
    }

    fn el(u: &QuotientPresentation, s: &str) -> QuotientElement {
        u.parse_element(s).unwrap()
    }

    #[test]
    fn u3_has_ten_singleton_tangibles() {
        let u = u3();
        let f = u.finite().unwrap();
        assert_eq!(f.tangibles().len(), 10);
        assert!(u.has_uf());
        assert_eq!(f.ghost_generators().len(), 5);
        assert_eq!(
            u.mul(&el(&u, "x^2"), &el(&u, "x^2")).unwrap(),
            QuotientElement::Ghost(GhostValue::Power(4))
        );
        assert_eq!(u.mul(&el(&u, "u"), &el(&u, "x")).unwrap(), el(&u, "u*x"));
        assert_eq!(u.fiber_of(&el(&u, "u*x")).unwrap().len(), 1);
        assert_eq!(u.irreducibles().unwrap(), vec![el(&u, "u"), el(&u, "x")]);
    }

    #[test]
    fn u3_core_is_generated_by_degree_one() {
        let u = u3();
        assert!(!u.properties().unwrap().tangible_units_trivial);
        let core = u.core_submonoid().unwrap();
        let names: Vec<String> = core.tangibles.iter().map(|t| u.format_element(t)).collect();
        assert_eq!(names, ["1", "x", "u*x", "x^2", "u^2*x", "u*x^2", "x^3"]);
        assert!(core.presentation.properties().unwrap().hold());
    }

    #[test]
    fn diagram_twelve_six_chart() {
        let a = Arc::new(Ambient::uniform(&["x1", "x2"]).unwrap());
        let e = MfceRelation::fiberwise_equalizer(
            a.clone(),
            &[a.parse_monomial("x1^4").unwrap(), a.parse_monomial("x2^4").unwrap()],
        )
        .unwrap();
        let u = QuotientPresentation::tangibly_finite(e).unwrap();
        assert_eq!(u.tangible_count().unwrap(), 16);
        assert_eq!(u.irreducibles().unwrap(), vec![el(&u, "x1"), el(&u, "x2")]);
        assert!(u.properties().unwrap().hold());
        let core = u.core_submonoid().unwrap();
        assert_eq!(core.tangibles, u.tangibles().unwrap());
    }

    #[test]
    fn identified_fiber() {
        let a = Arc::new(Ambient::uniform(&["x1", "x2"]).unwrap());
        let m = |s: &str| a.parse_monomial(s).unwrap();
        let e = MfceRelation::from_pairs(
            a.clone(),
            vec![
                GeneratorPair::Ghostify(m("x1^4")),
                GeneratorPair::Ghostify(m("x2^4")),
                GeneratorPair::Identify(m("x1^2"), m("x1*x2")),
            ],
        )
        .unwrap();
        let w = QuotientPresentation::tangibly_finite(e).unwrap();
        assert_eq!(w.project(&m("x1*x2")).unwrap(), w.project(&m("x1^2")).unwrap());
        assert_eq!(w.fiber_of(&el(&w, "x1^2")).unwrap(), vec![m("x1^2"), m("x1*x2")]);
        assert!(!w.has_uf());
    }

    #[test]
    fn free_ambient_is_not_tangibly_finite() {
        let a = Arc::new(Ambient::uniform(&["x"]).unwrap());
        let r = QuotientPresentation::build(
            MfceRelation::diagonal(a),
            FormRequest::TangiblyFinite { max_degree: Some(6) },
        );
        assert_eq!(r.unwrap_err(), Error::NotTangiblyFinite(6));
    }

    #[test]
    fn ideal_form_projects_by_divisibility() {
        let a = Arc::new(
            Ambient::new(
                vec![Generator::new("u", 0), Generator::new("x", 1)],
                AmbientMode::PositiveWeightRequired,
            )
            .unwrap(),
        );
        let m = |s: &str| a.parse_monomial(s).unwrap();
        let e = MfceRelation::fiberwise_equalizer(a.clone(), &[m("u^2*x^2"), m("u^3*x")]).unwrap();
        let u = QuotientPresentation::ideal(e).unwrap();
        assert!(u.project(&m("u*x^3")).unwrap().is_tangible());
        assert!(!u.project(&m("u^2*x^4")).unwrap().is_tangible());
        // u^6 is not in the restricted ambient, so u^9*x stays outside the ideal
        assert!(u.project(&m("u^9*x")).unwrap().is_tangible());
        assert!(!u.project(&m("u^4*x^2")).unwrap().is_tangible());
        assert!(u.project(&m("u")).is_err());
    }

    #[test]
    fn projection_is_multiplicative_up_to_degree_eight() {
        let u = u3();
        let a = u.ambient();
        let monos: Vec<Monomial> = (0..=4)
            .flat_map(|k| a.monomials_of_degree(k, Some(6)).unwrap())
            .collect();
        for x in &monos {
            for y in &monos {
                let lhs = u.project(&x.mul(y)).unwrap();
                let rhs = u.mul(&u.project(x).unwrap(), &u.project(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
